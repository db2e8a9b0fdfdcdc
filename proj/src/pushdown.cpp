#include "qcmp/pushdown.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "qcmp/symbol.hpp"

namespace qcmp {

namespace {
constexpr int kN = 0, kP = 1, kF = 2;
}

BuchiPDA prefix_average_comparator(int mu) {
  if (mu < 1) throw InputError("prefix-average comparator: mu must be >= 1");
  BuchiPDA p;
  p.mu = mu;
  p.names = {"sN", "sP", "sF"};
  p.initial = kN;
  p.accepting = {false, false, true};
  auto add = [&](int from, int a, int b, int to, int pop, StackTop top, int push) {
    p.transitions.push_back({from, Symbol{a, b}, to, pop, top, push});
  };
  for (int a = 0; a <= mu; ++a)
    for (int b = 0; b <= mu; ++b) {
      const int delta = a - b;
      // s_N holds -S tokens.
      if (delta <= 0) {
        add(kN, a, b, kN, 0, StackTop::Any, -delta);
      } else {
        add(kN, a, b, kN, delta, StackTop::Any, 0);
        for (int j = 0; j < delta; ++j) add(kN, a, b, kP, j, StackTop::Bottom, delta - j);
      }
      // s_P holds S > 0 tokens; s_F is s_P without the way back.
      if (delta >= 0) {
        add(kP, a, b, kP, 0, StackTop::Any, delta);
        add(kP, a, b, kF, 0, StackTop::Any, delta);
        add(kF, a, b, kF, 0, StackTop::Any, delta);
      } else {
        const int m = -delta;
        add(kP, a, b, kP, m, StackTop::Token, 0);
        add(kP, a, b, kF, m, StackTop::Token, 0);
        add(kF, a, b, kF, m, StackTop::Token, 0);
        for (int j = 1; j <= m; ++j) add(kP, a, b, kN, j, StackTop::Bottom, m - j);
      }
    }
  return p;
}

std::vector<std::int64_t> PrefixDiffProfile::periodic() const {
  return std::vector<std::int64_t>(s.begin() + static_cast<std::ptrdiff_t>(stem),
                                   s.begin() + static_cast<std::ptrdiff_t>(stem + loop));
}

bool PrefixDiffProfile::accepts() const {
  if (delta != 0) return delta > 0;
  auto per = periodic();
  return *std::min_element(per.begin(), per.end()) > 0;
}

bool PrefixDiffProfile::tie() const {
  if (delta != 0) return false;
  auto per = periodic();
  return *std::min_element(per.begin(), per.end()) == 0;
}

PrefixDiffProfile prefix_diff_profile(const LassoWord& w) {
  if (w.arity() != 2) throw InputError("prefix-average comparison reads pairs (a, b)");
  PrefixDiffProfile pr;
  pr.stem = w.stem.size();
  pr.loop = w.loop.size();
  pr.s.push_back(0);
  for (std::size_t i = 0; i < w.length(); ++i) pr.s.push_back(pr.s.back() + w.at(i)[0] - w.at(i)[1]);
  pr.delta = pr.s.back() - pr.s[pr.stem];
  return pr;
}

bool pda_accepts_lasso(const BuchiPDA& p, const LassoWord& w) {
  if (!(p == prefix_average_comparator(p.mu)))
    throw InputError("pda_accepts_lasso: only the counter-shaped prefix-average comparator is supported");
  for (std::size_t i = 0; i < w.length(); ++i) {
    const auto& s = w.at(i);
    if (s.size() != 2 || s[0] < 0 || s[1] < 0 || s[0] > p.mu || s[1] > p.mu)
      throw InputError("pda_accepts_lasso: letter " + format_symbol(s) + " outside [0, mu]^2");
  }
  return prefix_diff_profile(w).accepts();
}

namespace {

bool fires(const PdaTransition& t, std::int64_t tokens) {
  if (tokens < t.pop) return false;
  std::int64_t left = tokens - t.pop;
  if (t.after_pop == StackTop::Bottom) return left == 0;
  if (t.after_pop == StackTop::Token) return left > 0;
  return true;
}

}  // namespace

std::vector<std::vector<PdaConfig>> simulate(const BuchiPDA& p, const LassoWord& w, std::size_t steps) {
  std::vector<std::vector<PdaConfig>> out;
  std::set<PdaConfig> cur{{p.initial, 0}};
  out.emplace_back(cur.begin(), cur.end());
  for (std::size_t i = 0; i < steps; ++i) {
    const Symbol& sym = w.at(i);
    std::set<PdaConfig> nxt;
    for (const auto& c : cur)
      for (const auto& t : p.transitions)
        if (t.from == c.state && t.input == sym && fires(t, c.tokens)) nxt.insert({t.to, c.tokens - t.pop + t.push});
    cur = std::move(nxt);
    out.emplace_back(cur.begin(), cur.end());
  }
  return out;
}

bool pda_pumpable_run(const BuchiPDA& p, const LassoWord& w) {
  const std::size_t stem = w.stem.size(), loop = w.loop.size();
  const std::size_t periods = 2 + (stem + loop) * static_cast<std::size_t>(p.mu);
  auto configs = simulate(p, w, stem + periods * loop);
  // Deterministic replay of one period from an accepting configuration.
  auto replay = [&](int state, std::int64_t tokens, std::size_t start) -> std::optional<std::int64_t> {
    for (std::size_t i = 0; i < loop; ++i) {
      const Symbol& sym = w.at(start + i);
      bool moved = false;
      for (const auto& t : p.transitions)
        if (t.from == state && t.to == state && t.input == sym && fires(t, tokens)) {
          tokens = tokens - t.pop + t.push;
          moved = true;
          break;
        }
      if (!moved) return std::nullopt;
    }
    return tokens;
  };
  for (std::size_t k = 0; k < periods; ++k) {
    const std::size_t t = stem + k * loop;
    for (const auto& c : configs[t]) {
      if (!p.accepting[c.state]) continue;
      auto end = replay(c.state, c.tokens, t);
      if (end && *end >= c.tokens) return true;
    }
  }
  return false;
}

}  // namespace qcmp
