#include "qcmp/inclusion.hpp"

#include <algorithm>
#include <exception>
#include <set>

namespace qcmp {

namespace {

int base_arity(const WeightedAutomaton& P, const WeightedAutomaton& Q) {
  if (!(P.alphabet == Q.alphabet)) throw InputError("P and Q must share the same alphabet");
  return P.alphabet.arity;
}

void check_agg(const AggSpec& agg) {
  agg.validate();
  if (agg.kind == AggKind::PrefixAverage)
    throw InputError("prefix average is not supported by the inclusion procedure (no Büchi comparator exists)");
}

BuchiAutomaton comparator_for(const AggSpec& agg, int mu, bool strict) {
  return build_comparator({agg.kind, strict ? Relation::LT : Relation::LE, mu, std::max(agg.d, 2)});
}

int comparator_mu(const BuchiAutomaton& cmp) {
  const auto& b = cmp.alphabet().bounds;
  if (cmp.alphabet().arity != 2 || !b[0] || !b[1] || *b[0] != *b[1])
    throw InputError("comparator must read pairs over [0, mu]^2");
  return *b[0];
}

// Runs of `first` dominated (per cmp on (n_first, n_second), after projecting
// pair_order) by some run of `second`.
BuchiAutomaton dominated(const BuchiAutomaton& first_hat, const BuchiAutomaton& second_hat, const BuchiAutomaton& cmp,
                         int k, const Projection& pair_order) {
  const auto prod = make_product(first_hat, second_hat);
  return project(intersect_on(prod, cmp, pair_order), augmented_projection(k));
}

}  // namespace

std::pair<WeightedAutomaton, WeightedAutomaton> common_bound(const WeightedAutomaton& P, const WeightedAutomaton& Q) {
  auto p = P, q = Q;
  p.mu = q.mu = std::max(P.mu, Q.mu);
  return {p, q};
}

InclusionPipeline inclusion_pipeline(const WeightedAutomaton& P0, const WeightedAutomaton& Q0, const AggSpec& agg,
                                     bool strict) {
  check_agg(agg);
  const int k = base_arity(P0, Q0);
  const auto [P, Q] = common_bound(P0, Q0);
  P.validate();
  Q.validate();
  InclusionPipeline r{augment_wt_and_label(P), augment_wt_and_label(Q), {}, comparator_for(agg, P.mu, strict), {}, {}};
  r.product = make_product(r.p_hat, r.q_hat);
  r.dom_proof = intersect_on(r.product, r.comparator, weight_pair_projection(k));
  r.dom = project(r.dom_proof, augmented_projection(k));
  return r;
}

BuchiAutomaton dominated_runs_automaton(const WeightedAutomaton& P, const WeightedAutomaton& Q,
                                        const BuchiAutomaton& cmp) {
  const int k = base_arity(P, Q);
  const int mu = comparator_mu(cmp);
  if (P.mu > mu || Q.mu > mu) throw InputError("comparator bound is smaller than the weight bound of the inputs");
  auto p = P, q = Q;
  p.mu = q.mu = mu;
  return dominated(augment_wt_and_label(p), augment_wt_and_label(q), cmp, k, weight_pair_projection(k));
}

InclusionVerdict inclusion(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg, bool strict) {
  if (agg.semantics == Semantics::Inf) return inclusion_inf_semantics(P, Q, agg, strict);
  check_agg(agg);
  base_arity(P, Q);
  if (auto w = difference_witness(P.base(), Q.base())) return {false, w->canonical(), WitnessKind::WordNotInQ};
  const auto pipe = inclusion_pipeline(P, Q, agg, strict);
  // Dom is contained in P-hat by construction, one direction suffices.
  if (auto w = difference_witness(pipe.p_hat, pipe.dom))
    return {false, project(*w, base_projection(P.alphabet.arity)).canonical(), WitnessKind::NotDominated};
  return {};
}

InclusionVerdict inclusion_inf_semantics(const WeightedAutomaton& P0, const WeightedAutomaton& Q0, const AggSpec& agg,
                                         bool strict) {
  check_agg(agg);
  const int k = base_arity(P0, Q0);
  const auto [P, Q] = common_bound(P0, Q0);
  P.validate();
  Q.validate();
  if (auto w = difference_witness(Q.base(), P.base())) return {false, w->canonical(), WitnessKind::WordNotInP};
  // Every run of Q must be matched by a run of P that is no heavier.
  const auto q_hat = augment_wt_and_label(Q);
  const auto dom = dominated(q_hat, augment_wt_and_label(P), comparator_for(agg, P.mu, strict), k,
                             Projection{{k + 2, k}});
  if (auto w = difference_witness(q_hat, dom)) return {false, project(*w, base_projection(k)).canonical(), WitnessKind::NotDominated};
  return {};
}

bool equivalence(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg) {
  bool forward = false, backward = false;
  std::exception_ptr err;
#pragma omp parallel sections
  {
#pragma omp section
    {
      try {
        forward = inclusion(P, Q, agg, false).holds;
      } catch (...) {
#pragma omp critical(qcmp_equivalence_error)
        err = std::current_exception();
      }
    }
#pragma omp section
    {
      try {
        backward = inclusion(Q, P, agg, false).holds;
      } catch (...) {
#pragma omp critical(qcmp_equivalence_error)
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return forward && backward;
}

BuchiAutomaton counterexample_automaton(const WeightedAutomaton& P0, const WeightedAutomaton& Q0, const AggSpec& agg,
                                        bool strict) {
  check_agg(agg);
  const int k = base_arity(P0, Q0);
  if (agg.semantics == Semantics::Inf) {
    const auto [P, Q] = common_bound(P0, Q0);
    P.validate();
    Q.validate();
    const auto q_hat = augment_wt_and_label(Q);
    const auto dom = dominated(q_hat, augment_wt_and_label(P), comparator_for(agg, P.mu, strict), k,
                               Projection{{k + 2, k}});
    return project(difference(q_hat, dom), base_projection(k));
  }
  // Words of P missing from Q have no partner run, so they land in the
  // difference as well.
  const auto pipe = inclusion_pipeline(P0, Q0, agg, strict);
  return project(difference(pipe.p_hat, pipe.dom), base_projection(k));
}

std::vector<LassoWord> sample_words(const BuchiAutomaton& a, std::size_t n, std::size_t max_frame) {
  std::vector<LassoWord> out;
  if (n == 0) return out;
  const auto first = is_empty(a);
  if (!first) return out;
  std::set<std::pair<std::size_t, std::size_t>> done;
  for (std::size_t f = 1; f <= max_frame && out.size() < n; ++f) {
    for (const auto& w : enumerate_lassos(a.letters(), f, f)) {
      if (w.stem.size() < f && w.loop.size() < f) continue;  // seen in an earlier round
      if (accepts_lasso(a, w)) {
        out.push_back(w);
        if (out.size() == n) break;
      }
    }
  }
  if (out.empty()) out.push_back(first->canonical());
  std::stable_sort(out.begin(), out.end(), [](const LassoWord& x, const LassoWord& y) { return x.length() < y.length(); });
  return out;
}

}  // namespace qcmp
