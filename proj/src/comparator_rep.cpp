#include <array>
#include <deque>
#include <map>

#include "qcmp/comparator.hpp"

namespace qcmp {

LassoWord rep_lasso(const Rational& x, int beta) {
  if (beta < 2) throw InputError("base must be >= 2");
  Rational ax = abs(x);
  mpz_class ip = ax.get_num() / ax.get_den();
  mpz_class num = ax.get_num() - ip * ax.get_den();
  const mpz_class den = ax.get_den();

  std::vector<int> ints;
  for (mpz_class t = ip; t > 0; t /= beta) ints.push_back(static_cast<int>(mpz_class(t % beta).get_si()));

  std::vector<int> fracs;
  std::map<mpz_class, std::size_t> seen;
  mpz_class r = num;
  while (!seen.count(r)) {
    seen[r] = fracs.size();
    mpz_class t = r * beta;
    fracs.push_back(static_cast<int>(mpz_class(t / den).get_si()));
    r = t % den;
  }
  const std::size_t pre = seen[r], period = fracs.size() - pre;
  const std::size_t stem_digits = std::max(ints.size(), pre);
  auto frac_at = [&](std::size_t i) { return i < pre ? fracs[i] : fracs[pre + (i - pre) % period]; };
  auto int_at = [&](std::size_t i) { return i < ints.size() ? ints[i] : 0; };

  LassoWord w;
  w.stem.push_back({beta, sgn(x) < 0 ? 1 : 0});
  for (std::size_t i = 0; i < stem_digits; ++i) w.stem.push_back({int_at(i), frac_at(i)});
  for (std::size_t i = 0; i < period; ++i) w.loop.push_back({0, frac_at(stem_digits + i)});
  return w.canonical();
}

std::optional<Rational> decode_rep(const LassoWord& w, int beta) {
  if (w.arity() != 2) return std::nullopt;
  LassoWord u = unroll(w, std::max<std::size_t>(1, w.stem.size()), w.loop.size());
  const Symbol& sign = u.stem.front();
  if (sign[0] != beta || (sign[1] != 0 && sign[1] != 1)) return std::nullopt;
  auto digit = [&](const Symbol& s) { return 0 <= s[0] && s[0] < beta && 0 <= s[1] && s[1] < beta; };
  for (std::size_t i = 1; i < u.stem.size(); ++i)
    if (!digit(u.stem[i])) return std::nullopt;
  bool all_top = true;
  for (const auto& s : u.loop) {
    if (!digit(s) || s[0] != 0) return std::nullopt;
    all_top = all_top && s[1] == beta - 1;
  }
  if (all_top) return std::nullopt;

  Rational value = 0, place = 1;  // place = beta^-(i) for frac digit i-1
  mpz_class ipow = 1;
  for (std::size_t i = 1; i < u.stem.size(); ++i) {
    value += Rational(u.stem[i][0]) * Rational(ipow);
    ipow *= beta;
    place /= beta;
    value += Rational(u.stem[i][1]) * place;
  }
  Rational loop_sum = 0, lp = 1;
  for (const auto& s : u.loop) {
    lp /= beta;
    loop_sum += Rational(s[1]) * lp;
  }
  value += place * loop_sum / (Rational(1) - lp);
  value.canonicalize();
  if (sign[1] == 1) value = -value;
  return value;
}

namespace {

Alphabet pair_rep_alphabet(int beta) { return Alphabet{4, {beta, beta - 1, beta, beta - 1}}; }

template <class F>
void digit_pairs(int beta, F&& f) {
  for (int mz = 0; mz < beta; ++mz)
    for (int mf = 0; mf < beta; ++mf)
      for (int nz = 0; nz < beta; ++nz)
        for (int nf = 0; nf < beta; ++nf) f(Symbol{mz, mf, nz, nf});
}

}  // namespace

BuchiAutomaton base_rep_comparator(int beta) {
  if (beta < 2) throw InputError("base must be >= 2");
  AutomatonBuilder b(pair_rep_alphabet(beta));
  const int init = b.add_state(true, false, "init");
  const int pos_neg = b.add_state(false, true, "+-");
  // For each sign, a branch deciding on the integer part and a branch on the
  // fraction once the integer parts agree.
  struct Branch {
    int int_wait, int_done, eq, frac_done;
  };
  Branch br[2];
  for (int sg = 0; sg < 2; ++sg) {
    std::string t = sg == 0 ? "+" : "-";
    br[sg] = {b.add_state(false, false, t + "int?"), b.add_state(false, true, t + "int"), b.add_state(false, false, t + "eq"),
              b.add_state(false, true, t + "frac")};
  }
  b.add_transition(init, {beta, 0, beta, 1}, pos_neg);
  for (int sg = 0; sg < 2; ++sg) {
    b.add_transition(init, {beta, sg, beta, sg}, br[sg].int_wait);
    b.add_transition(init, {beta, sg, beta, sg}, br[sg].eq);
  }
  digit_pairs(beta, [&](const Symbol& s) {
    const int mz = s[0], mf = s[1], nz = s[2], nf = s[3];
    b.add_transition(pos_neg, s, pos_neg);
    for (int sg = 0; sg < 2; ++sg) {
      // a > b: larger magnitude when positive, smaller when negative.
      auto bigger = [&](int m, int n) { return sg == 0 ? m > n : m < n; };
      const Branch& r = br[sg];
      b.add_transition(r.int_wait, s, r.int_wait);
      if (bigger(mz, nz)) b.add_transition(r.int_wait, s, r.int_done);
      if (mz == nz) {
        b.add_transition(r.int_done, s, r.int_done);
        b.add_transition(r.frac_done, s, r.frac_done);
        if (mf == nf) b.add_transition(r.eq, s, r.eq);
        if (bigger(mf, nf)) b.add_transition(r.eq, s, r.frac_done);
      }
    }
  });
  return trim(b.build());
}

BuchiAutomaton rep_equality(int beta) {
  AutomatonBuilder b(pair_rep_alphabet(beta));
  const int init = b.add_state(true, false, "init");
  const int eq = b.add_state(false, true, "eq");
  for (int sg = 0; sg < 2; ++sg) b.add_transition(init, {beta, sg, beta, sg}, eq);
  digit_pairs(beta, [&](const Symbol& s) {
    if (s[0] == s[2] && s[1] == s[3]) b.add_transition(eq, s, eq);
  });
  return trim(b.build());
}

BuchiAutomaton comparator_from_function_automaton(const BuchiAutomaton& f, int beta, Relation rel) {
  const int k = f.alphabet().arity - 2;
  if (k < 1) throw InputError("function automaton must carry input components and a representation track");
  if (f.alphabet().bounds[k] != beta || f.alphabet().bounds[k + 1] != beta - 1)
    throw InputError("function automaton alphabet does not match base " + std::to_string(beta));

  const Projection swap{{2, 3, 0, 1}};
  BuchiAutomaton gt = base_rep_comparator(beta);
  BuchiAutomaton r;
  switch (rel) {
    case Relation::GT: r = gt; break;
    case Relation::LT: r = project(gt, swap); break;
    case Relation::EQ: r = rep_equality(beta); break;
    case Relation::GE: r = union_of(gt, rep_equality(beta)); break;
    case Relation::LE: r = union_of(project(gt, swap), rep_equality(beta)); break;
    case Relation::NE: r = union_of(gt, project(gt, swap)); break;
  }

  Alphabet al;
  al.arity = 2 * k;
  for (int rep = 0; rep < 2; ++rep)
    for (int i = 0; i < k; ++i) al.bounds.push_back(f.alphabet().bounds[i]);
  AutomatonBuilder out(al);

  // Generalized Büchi with three conditions (two copies of f, one of r),
  // degeneralized by a counter; conditions on all-accepting parts are skipped.
  const bool need_f = !f.all_accepting();
  auto acc = [&](int which, int p, int q, int c) {
    if (which == 0) return !need_f || f.is_accepting(p);
    if (which == 1) return !need_f || f.is_accepting(q);
    return r.is_accepting(c);
  };
  using Key = std::array<int, 4>;
  std::map<Key, int> ids;
  std::deque<Key> todo;
  auto get = [&](const Key& key, bool init) {
    auto [it, fresh] = ids.try_emplace(key, 0);
    if (fresh) {
      it->second = out.add_state(init, key[3] == 3);
      todo.push_back(key);
    }
    return it->second;
  };
  for (int p : f.initial())
    for (int q : f.initial())
      for (int c : r.initial()) get({p, q, c, 0}, true);

  auto split = [&](const Symbol& s) {
    return std::pair{Symbol(s.begin(), s.begin() + k), Symbol{s[k], s[k + 1]}};
  };
  while (!todo.empty()) {
    Key cur = todo.front();
    todo.pop_front();
    const int src = ids.at(cur);
    for (const auto& e1 : f.out(cur[0])) {
      auto [x, m] = split(f.letter(e1.letter));
      for (const auto& e2 : f.out(cur[1])) {
        auto [y, n] = split(f.letter(e2.letter));
        Symbol mn = m;
        mn.insert(mn.end(), n.begin(), n.end());
        int rl = r.letter_index(mn);
        if (rl < 0) continue;
        Symbol xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        for (const auto& er : r.out(cur[2], rl)) {
          int g = cur[3] == 3 ? 0 : cur[3];
          while (g < 3 && acc(g, e1.dst, e2.dst, er.dst)) ++g;
          out.add_transition(src, xy, get({e1.dst, e2.dst, er.dst, g}, false));
        }
      }
    }
  }
  return trim(out.build());
}

}  // namespace qcmp
