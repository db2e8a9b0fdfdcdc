#include <algorithm>
#include <map>

#include "qcmp/comparator.hpp"

namespace qcmp {

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

DsParams DsParams::make(int mu, int d) {
  if (mu < 1) throw InputError("ds comparator: mu must be >= 1");
  if (d < 2) throw InputError("ds comparator: d must be an integer >= 2");
  return DsParams{mu, d, ceil_div(mu * d, d - 1), 1 + ceil_div(mu, d - 1)};
}

BuchiAutomaton ds_lt_untrimmed(int mu, int d) {
  const auto p = DsParams::make(mu, d);
  // c-components also carry C[i] < d for i >= 1, which can exceed max_c when
  // mu is small relative to d.
  const int X = p.max_x, C = std::max(p.max_c, d - 1);
  AutomatonBuilder b(Alphabet::uniform(2, mu));
  const int s = b.add_state(true, false, "s");
  auto fid = [&](int x, int c) { return 1 + (x + X) * (C + 1) + c; };
  auto bid = [&](int x) { return 1 + (2 * X + 1) * (C + 1) + (x + X); };
  for (int x = -X; x <= X; ++x)
    for (int c = 0; c <= C; ++c) b.add_state(false, true, std::to_string(x) + ":" + std::to_string(c));
  for (int x = -X; x <= X; ++x) b.add_state(false, false, std::to_string(x) + ":_");
  auto in_x = [&](int x) { return -X <= x && x <= X; };

  for (int a = 0; a <= mu; ++a)
    for (int bb = 0; bb <= mu; ++bb) {
      const Symbol sym{a, bb};
      // a + x + c = b with c != 0
      for (int c = 1; c <= C; ++c)
        if (in_x(bb - a - c)) b.add_transition(s, sym, fid(bb - a - c, c));
      // a + x = b
      if (in_x(bb - a)) b.add_transition(s, sym, bid(bb - a));
      for (int x = -X; x <= X; ++x) {
        // a + x' = b + d x inside the bottom part
        int xb = bb + d * x - a;
        if (in_x(xb)) b.add_transition(bid(x), sym, bid(xb));
        // a + x' + c' = b + d x with c' < d
        for (int c2 = 0; c2 < d; ++c2) {
          int x2 = bb + d * x - a - c2;
          if (!in_x(x2)) continue;
          for (int c = 0; c <= C; ++c) b.add_transition(fid(x, c), sym, fid(x2, c2));
          if (c2 > 0) b.add_transition(bid(x), sym, fid(x2, c2));
        }
      }
    }
  return b.build();
}

namespace {

BuchiAutomaton ds_eq(int mu, int d) {
  const auto p = DsParams::make(mu, d);
  const int X = p.max_x;
  AutomatonBuilder b(Alphabet::uniform(2, mu));
  const int s = b.add_state(true, true, "s");
  for (int x = -X; x <= X; ++x) b.add_state(false, true, std::to_string(x));
  auto id = [&](int x) { return 1 + x + X; };
  for (int a = 0; a <= mu; ++a)
    for (int bb = 0; bb <= mu; ++bb) {
      if (-X <= bb - a && bb - a <= X) b.add_transition(s, {a, bb}, id(bb - a));
      for (int x = -X; x <= X; ++x) {
        int x2 = bb + d * x - a;
        if (-X <= x2 && x2 <= X) b.add_transition(id(x), {a, bb}, id(x2));
      }
    }
  return trim(b.build());
}

}  // namespace

BuchiAutomaton ds_comparator(int mu, int d, Relation rel) {
  auto lt = trim(ds_lt_untrimmed(mu, d));
  switch (rel) {
    case Relation::LT: return lt;
    case Relation::GT: return swap_tracks(lt);
    case Relation::EQ: return ds_eq(mu, d);
    case Relation::LE: return union_of(lt, ds_eq(mu, d));
    case Relation::GE: return swap_tracks(union_of(lt, ds_eq(mu, d)));
    case Relation::NE: return union_of(lt, swap_tracks(lt));
  }
  throw InputError("bad relation");
}

BuchiAutomaton ds_function_automaton(int mu, int d) {
  const auto p = DsParams::make(mu, d);
  // Second track: B[0] in [0, max_c], later B[i] in [0, d-1].
  const int X = 1 + ceil_div(std::max(mu, d - 1), d - 1);
  const int C = p.max_c;
  AutomatonBuilder b(Alphabet{3, {mu, d, d - 1}});
  const int init = b.add_state(true, false, "init");
  std::map<std::tuple<int, int, int>, int> ids;
  auto id = [&](int x, int r, int fl) {
    auto [it, fresh] = ids.try_emplace({x, r, fl}, 0);
    if (fresh)
      it->second = b.add_state(false, fl == 1, std::to_string(x) + "/" + std::to_string(r) + "/" + std::to_string(fl));
    return it->second;
  };
  for (int x = -X; x <= X; ++x)
    for (int r = 0; r <= C; ++r)
      for (int fl = 0; fl < 2; ++fl) id(x, r, fl);
  for (int a = 0; a <= mu; ++a) {
    // Sign letter '+' paired with A[0]; guess B[0].
    for (int b0 = 0; b0 <= C; ++b0)
      if (-X <= b0 - a && b0 - a <= X) b.add_transition(init, {a, d, 0}, id(b0 - a, b0, 0));
    for (int x = -X; x <= X; ++x)
      for (int r = 0; r <= C; ++r)
        for (int fl = 0; fl < 2; ++fl)
          for (int f = 0; f < d; ++f) {
            int x2 = f + d * x - a;
            if (x2 < -X || x2 > X) continue;
            b.add_transition(id(x, r, fl), {a, r % d, f}, id(x2, r / d, f < d - 1 ? 1 : 0));
          }
  }
  return trim(b.build());
}

}  // namespace qcmp
