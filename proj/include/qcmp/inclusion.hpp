#pragma once

#include <cstddef>
#include <vector>

#include "qcmp/buchi.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/weighted.hpp"

namespace qcmp {

// Intermediate automata of the sup-semantics pipeline, kept for inspection.
struct InclusionPipeline {
  BuchiAutomaton p_hat, q_hat, product, comparator, dom_proof, dom;
};

// Both automata lifted to a common weight bound (the larger mu).
std::pair<WeightedAutomaton, WeightedAutomaton> common_bound(const WeightedAutomaton& P, const WeightedAutomaton& Q);

InclusionPipeline inclusion_pipeline(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg,
                                     bool strict);

// Runs of P (as augmented words) dominated by some run of Q on the same word.
BuchiAutomaton dominated_runs_automaton(const WeightedAutomaton& P, const WeightedAutomaton& Q,
                                        const BuchiAutomaton& cmp);

// Sup semantics: for every word w of P, wt_P(w) <= wt_Q(w) (< when strict).
// Inf semantics in agg dispatches to inclusion_inf_semantics.
InclusionVerdict inclusion(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg, bool strict);
InclusionVerdict inclusion_inf_semantics(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg,
                                         bool strict);
bool equivalence(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg);

// Words of P having a run not dominated by Q, over the base alphabet. Empty
// iff the inclusion holds.
BuchiAutomaton counterexample_automaton(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg,
                                        bool strict);

// Up to n accepted lassos, shortest first, one per denoted word.
std::vector<LassoWord> sample_words(const BuchiAutomaton& a, std::size_t n, std::size_t max_frame = 6);

}  // namespace qcmp
