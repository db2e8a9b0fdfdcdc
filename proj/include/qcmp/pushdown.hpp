#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcmp/lasso.hpp"

namespace qcmp {

// Stack alphabet is {Z0, token}; a stack is Z0 token^k, so a configuration is
// (state, k).
enum class StackTop { Bottom, Token, Any };

// Pops `pop` tokens (failing if fewer are present), checks the exposed top
// against `after_pop`, then pushes `push` tokens.
struct PdaTransition {
  int from;
  Symbol input;
  int to;
  int pop;
  StackTop after_pop;
  int push;
  friend bool operator==(const PdaTransition&, const PdaTransition&) = default;
};

struct BuchiPDA {
  int mu = 1;
  std::vector<std::string> names;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<PdaTransition> transitions;

  int num_states() const { return static_cast<int>(names.size()); }
  friend bool operator==(const BuchiPDA&, const BuchiPDA&) = default;
};

// States s_N (difference <= 0), s_P (> 0), s_F (committed: stays > 0).
BuchiPDA prefix_average_comparator(int mu);

struct PrefixDiffProfile {
  std::vector<std::int64_t> s;  // S(0) .. S(stem + loop)
  std::size_t stem = 0, loop = 0;
  std::int64_t delta = 0;

  // S over one eventual period: S(stem) .. S(stem + loop - 1).
  std::vector<std::int64_t> periodic() const;
  bool accepts() const;
  // Drift zero and the period touches zero: the tie cases of the definition.
  bool tie() const;
};

// w is a pair lasso over (a, b).
PrefixDiffProfile prefix_diff_profile(const LassoWord& w);

bool pda_accepts_lasso(const BuchiPDA& p, const LassoWord& w);

struct PdaConfig {
  int state;
  std::int64_t tokens;
  friend auto operator<=>(const PdaConfig&, const PdaConfig&) = default;
};

// Configurations reachable after each of the first `steps` letters (index 0 is
// the initial configuration).
std::vector<std::vector<PdaConfig>> simulate(const BuchiPDA& p, const LassoWord& w, std::size_t steps);

// Finds a reachable accepting configuration at a period boundary from which
// one more period stays accepting without losing tokens, i.e. a pumpable
// accepting run. Sufficient for acceptance.
bool pda_pumpable_run(const BuchiPDA& p, const LassoWord& w);

}  // namespace qcmp
