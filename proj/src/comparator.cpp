#include "qcmp/comparator.hpp"

namespace qcmp {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::LT: return "lt";
    case Relation::LE: return "le";
    case Relation::GT: return "gt";
    case Relation::GE: return "ge";
    case Relation::EQ: return "eq";
    case Relation::NE: return "ne";
  }
  return "?";
}

Relation parse_relation(const std::string& s) {
  if (s == "lt") return Relation::LT;
  if (s == "le") return Relation::LE;
  if (s == "gt") return Relation::GT;
  if (s == "ge") return Relation::GE;
  if (s == "eq") return Relation::EQ;
  if (s == "ne") return Relation::NE;
  throw InputError("unknown relation '" + s + "'");
}

bool satisfies(Relation r, int c) {
  switch (r) {
    case Relation::LT: return c < 0;
    case Relation::LE: return c <= 0;
    case Relation::GT: return c > 0;
    case Relation::GE: return c >= 0;
    case Relation::EQ: return c == 0;
    case Relation::NE: return c != 0;
  }
  return false;
}

BuchiAutomaton swap_tracks(const BuchiAutomaton& a) { return project(a, Projection{{1, 0}}); }

namespace {

// Union over k of the blocks "A settles at k forever-ish". For limsup the
// block requires, after the guessed cutoff, a <= k with a = k infinitely often
// and b in [lo(k), hi(k)]; liminf mirrors it with a >= k.
BuchiAutomaton limit_dominance(int mu, bool sup, bool strict) {
  AutomatonBuilder b(Alphabet::uniform(2, mu));
  const int s = b.add_state(true, false, "s");
  std::vector<int> f(static_cast<std::size_t>(mu + 1)), g(static_cast<std::size_t>(mu + 1));
  for (int k = 0; k <= mu; ++k) {
    f[k] = b.add_state(false, true, "f" + std::to_string(k));
    g[k] = b.add_state(false, false, "s" + std::to_string(k));
  }
  for (int x = 0; x <= mu; ++x)
    for (int y = 0; y <= mu; ++y) {
      b.add_transition(s, {x, y}, s);
      for (int k = 0; k <= mu; ++k) b.add_transition(s, {x, y}, f[k]);
    }
  for (int k = 0; k <= mu; ++k) {
    // Allowed b values after the cutoff.
    int lo = 0, hi = mu;
    if (sup) hi = strict ? k - 1 : k;
    else lo = strict ? k + 1 : k;
    for (int y = lo; y <= hi; ++y) {
      for (int from : {f[k], g[k]}) b.add_transition(from, {k, y}, f[k]);
      for (int x = 0; x <= mu; ++x) {
        bool stay = sup ? x < k : x > k;
        if (stay)
          for (int from : {f[k], g[k]}) b.add_transition(from, {x, y}, g[k]);
      }
    }
  }
  return trim(b.build());
}

BuchiAutomaton derive(Relation rel, const BuchiAutomaton& le, const BuchiAutomaton& lt) {
  switch (rel) {
    case Relation::LE: return le;
    case Relation::LT: return lt;
    case Relation::GE: return swap_tracks(le);
    case Relation::GT: return swap_tracks(lt);
    case Relation::EQ: return intersect(le, swap_tracks(le));
    case Relation::NE: return union_of(lt, swap_tracks(lt));
  }
  throw InputError("bad relation");
}

}  // namespace

BuchiAutomaton limsup_component(int mu, int k) {
  if (mu < 1 || k < 0 || k > mu) throw InputError("limsup_component: need 0 <= k <= mu, mu >= 1");
  AutomatonBuilder b(Alphabet::uniform(2, mu));
  const int s = b.add_state(true, false, "s");
  const int f = b.add_state(false, true, "f" + std::to_string(k));
  const int g = b.add_state(false, false, "s" + std::to_string(k));
  for (int x = 0; x <= mu; ++x)
    for (int y = 0; y <= mu; ++y) b.add_transition(s, {x, y}, s);
  for (int y = 0; y <= k; ++y) {
    b.add_transition(s, {k, y}, f);
    b.add_transition(f, {k, y}, f);
    b.add_transition(g, {k, y}, f);
    for (int x = 0; x < k; ++x) {
      b.add_transition(f, {x, y}, g);
      b.add_transition(g, {x, y}, g);
    }
  }
  return trim(b.build());
}

BuchiAutomaton limsup_comparator(int mu, Relation rel) {
  if (mu < 1) throw InputError("limsup comparator: mu must be >= 1");
  // Built: GE (non-strict) and GT (strict); the rest by swapping tracks.
  auto ge = limit_dominance(mu, true, false);
  auto gt = limit_dominance(mu, true, true);
  return derive(rel, swap_tracks(ge), swap_tracks(gt));
}

BuchiAutomaton liminf_comparator(int mu, Relation rel) {
  if (mu < 1) throw InputError("liminf comparator: mu must be >= 1");
  auto le = limit_dominance(mu, false, false);
  auto lt = limit_dominance(mu, false, true);
  return derive(rel, le, lt);
}

BuchiAutomaton build_comparator(const ComparatorSpec& spec) {
  switch (spec.kind) {
    case AggKind::LimSup: return limsup_comparator(spec.mu, spec.rel);
    case AggKind::LimInf: return liminf_comparator(spec.mu, spec.rel);
    case AggKind::DiscountedSum: return ds_comparator(spec.mu, spec.d, spec.rel);
    case AggKind::PrefixAverage:
      throw InputError("prefix-average comparison is not omega-regular; use the pushdown comparator");
  }
  throw InputError("bad aggregate");
}

}  // namespace qcmp
