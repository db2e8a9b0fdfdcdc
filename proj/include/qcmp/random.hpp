#pragma once

#include <cstdint>
#include <random>

#include "qcmp/buchi.hpp"
#include "qcmp/lasso.hpp"
#include "qcmp/weighted.hpp"

namespace qcmp {

using Rng = std::mt19937_64;

// Uniform integer in [lo, hi].
int uniform(Rng& rng, int lo, int hi);

// Lasso over arity-many components each in [0, bound].
LassoWord random_lasso(Rng& rng, int arity, int bound, int max_stem, int max_loop);
// Pair lasso (a, b) with both tracks in [0, mu].
LassoWord random_pair(Rng& rng, int mu, int max_stem, int max_loop);

// Each (state, letter, state) triple is an edge with probability density.
BuchiAutomaton random_buchi(Rng& rng, int states, const Alphabet& alphabet, double density, double accepting = 0.4);

// Every state gets between 1 and max_out outgoing transitions.
WeightedAutomaton random_weighted(Rng& rng, int states, const Alphabet& alphabet, int mu, int max_out);

}  // namespace qcmp
