#pragma once

#include <cstddef>

#include "qcmp/lasso.hpp"
#include "qcmp/rational.hpp"
#include "qcmp/weighted.hpp"

namespace qcmp {

// Value sequences are unary lassos (arity-1 symbols).
Rational ds_lasso(const LassoWord& w, int d);
int limsup_lasso(const LassoWord& w);
int liminf_lasso(const LassoWord& w);
Rational limit_average_lasso(const LassoWord& w);
bool prefix_average_ge_lasso(const LassoWord& a, const LassoWord& b);

// f(a) - f(b) sign for the aggregate (not prefix average).
int compare_aggregate(const AggSpec& agg, const LassoWord& a, const LassoWord& b);

// sup (or inf, per agg.semantics) of f over the runs of W on w; nullopt when
// there is no run.
Weight word_weight(const WeightedAutomaton& W, const LassoWord& w, const AggSpec& agg);

// Enumerates lassos over the letters of P and Q. Under sup semantics words
// without a run in P are vacuous and a word of P without a run in Q violates
// (its Q weight is -infinity). Inf semantics is the dual: words of Q only, a
// missing P run counts as +infinity.
InclusionVerdict brute_force_inclusion(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg,
                                       bool strict, std::size_t stem_bound, std::size_t loop_bound);
InclusionVerdict brute_force_inclusion_serial(const WeightedAutomaton& P, const WeightedAutomaton& Q,
                                              const AggSpec& agg, bool strict, std::size_t stem_bound,
                                              std::size_t loop_bound);

// Does the pair (wP, wQ) satisfy the inclusion condition at one word?
bool inclusion_holds_at(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg, bool strict,
                        const LassoWord& w);

}  // namespace qcmp
