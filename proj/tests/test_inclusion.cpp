#include "doctest.h"
#include "helpers.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/inclusion.hpp"
#include "qcmp/oracle.hpp"
#include "qcmp/random.hpp"

using namespace qcmp;
using testing::chain;
using testing::L;

namespace {

const AggSpec kLimsup{};
const AggSpec kDs{AggKind::DiscountedSum, 2, Semantics::Sup};

}  // namespace

TEST_CASE("worked example") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  const auto pipe = inclusion_pipeline(P, Q, kLimsup, false);
  CHECK(isomorphic(pipe.p_hat, testing::load_buchi("example_p_hat.json")));
  CHECK(isomorphic(pipe.q_hat, testing::load_buchi("example_q_hat.json")));
  CHECK(isomorphic(pipe.product, testing::load_buchi("example_product.json")));

  // Restricted to the relevant part of the comparator, the intermediate
  // automata are exactly the expected ones.
  const auto snippet = testing::load_buchi("example_comparator_part.json");
  const auto dom_proof = intersect_on(pipe.product, snippet, weight_pair_projection(1));
  CHECK(isomorphic(dom_proof, testing::load_buchi("example_dom_proof.json")));
  CHECK(isomorphic(project(dom_proof, augmented_projection(1)), testing::load_buchi("example_dom.json")));

  // The full comparator also admits the other run pair, which adds a path
  // but no new run of P.
  CHECK(contains(testing::load_buchi("example_dom_proof.json"), pipe.dom_proof));
  CHECK(equivalent(pipe.dom, testing::load_buchi("example_dom.json")));
  CHECK(equivalent(pipe.dom, pipe.p_hat));
  CHECK(accepts_lasso(pipe.dom, L("0:1:1;0:1:2")));

  const auto v = inclusion(P, Q, kLimsup, false);
  CHECK(v.holds);
  CHECK(!v.witness);
}

TEST_CASE("strict inclusion fails on equal weights") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  const auto v = inclusion(P, Q, kLimsup, true);
  CHECK(!v.holds);
  REQUIRE(v.witness);
  CHECK(*v.witness == L(";0"));
  CHECK(word_weight(P, *v.witness, kLimsup) == word_weight(Q, *v.witness, kLimsup));
}

TEST_CASE("dominated runs") {
  const auto P = testing::load_weighted("example_p.json");
  const auto heavy = chain({}, {2}, 2), light = chain({}, {1}, 2);
  CHECK(is_empty(dominated_runs_automaton(heavy, light, limsup_comparator(2, Relation::LE))) == std::nullopt);
  const auto self = dominated_runs_automaton(P, P, limsup_comparator(1, Relation::LE));
  CHECK(equivalent(self, augment_wt_and_label(P)));
  CHECK_THROWS_AS(dominated_runs_automaton(heavy, light, limsup_comparator(1, Relation::LE)), InputError);
}

TEST_CASE("inclusion examples") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  CHECK(inclusion(chain({}, {1}, 2), chain({}, {2}, 2), kDs, false).holds);
  CHECK(equivalence(P, P, kLimsup));
  CHECK(equivalence(P, Q, kLimsup));
  CHECK(!equivalence(chain({}, {1}, 2), chain({}, {2}, 2), kLimsup));
  CHECK_THROWS_AS(inclusion(P, Q, AggSpec{AggKind::PrefixAverage, 0, Semantics::Sup}, false), InputError);
}

TEST_CASE("counterexample automata") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  CHECK(!is_empty(counterexample_automaton(P, Q, kLimsup, false)));
  CHECK(!is_empty(counterexample_automaton(P, P, kLimsup, false)));

  const auto heavy = chain({}, {2}, 2), light = chain({}, {1}, 2);
  const auto c = counterexample_automaton(heavy, light, kLimsup, false);
  const auto words = sample_words(c, 5);
  REQUIRE(!words.empty());
  for (const auto& w : words) CHECK(compare(word_weight(heavy, w, kLimsup), word_weight(light, w, kLimsup)) > 0);
}

TEST_CASE("words of P missing from Q") {
  WeightedAutomaton P;
  P.alphabet = Alphabet::uniform(1, 1);
  P.num_states = 1;
  P.initial = {0};
  P.mu = 1;
  P.transitions = {{0, {0}, 0, 0}, {0, {1}, 0, 0}};
  WeightedAutomaton Q = P;
  Q.transitions = {{0, {0}, 0, 1}};
  const auto v = inclusion(P, Q, kLimsup, false);
  CHECK(!v.holds);
  CHECK(v.kind == WitnessKind::WordNotInQ);
  CHECK(!word_weight(Q, *v.witness, kLimsup));
  // the counterexample automaton contains those words too
  CHECK(accepts_lasso(counterexample_automaton(P, Q, kLimsup, false), *v.witness));
  // under infimum semantics the missing words are vacuous
  CHECK(inclusion(P, Q, AggSpec{AggKind::LimSup, 0, Semantics::Inf}, false).holds);
}

TEST_CASE("infimum semantics") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  const AggSpec inf{AggKind::LimSup, 0, Semantics::Inf};
  CHECK(inclusion_inf_semantics(P, P, inf, false).holds);
  CHECK(inclusion_inf_semantics(P, Q, inf, false).holds);
  // a branch of Q with a lighter loop pulls its infimum below P's
  auto Q0 = Q;
  Q0.num_states = 3;
  if (!Q0.names.empty()) Q0.names.push_back("q3");
  Q0.transitions.push_back({0, {0}, 2, 0});
  Q0.transitions.push_back({2, {0}, 2, 0});
  const auto v = inclusion_inf_semantics(P, Q0, inf, false);
  CHECK(!v.holds);
  CHECK(v.witness == L(";0"));
  CHECK(!brute_force_inclusion(P, Q0, inf, false, 2, 2).holds);
  CHECK(compare(word_weight(P, L(";0"), inf), word_weight(Q0, L(";0"), inf)) > 0);
}

TEST_CASE("random instances against brute force") {
  Rng rng(51);
  int fails = 0;
  for (int i = 0; i < 40; ++i) {
    const Alphabet al = Alphabet::uniform(1, uniform(rng, 0, 1));
    const int mu = uniform(rng, 1, 3);
    const auto P = random_weighted(rng, uniform(rng, 1, 3), al, mu, 3);
    const auto Q = random_weighted(rng, uniform(rng, 1, 3), al, mu, 4);
    for (const AggSpec& base : {kLimsup, kDs})
      for (Semantics sem : {Semantics::Sup, Semantics::Inf}) {
        AggSpec agg = base;
        agg.semantics = sem;
        const auto strict = inclusion(P, Q, agg, true), loose = inclusion(P, Q, agg, false);
        if (strict.holds) CHECK(loose.holds);
        for (const auto* v : {&strict, &loose}) {
          const bool is_strict = v == &strict;
          const auto b = brute_force_inclusion(P, Q, agg, is_strict, 3, 3);
          CHECK(v->holds == b.holds);
          CHECK(v->witness.has_value() == !v->holds);
          if (v->witness) {
            ++fails;
            CHECK(!inclusion_holds_at(P, Q, agg, is_strict, *v->witness));
          }
        }
        const auto pipe = inclusion_pipeline(P, Q, {agg.kind, agg.d, Semantics::Sup}, false);
        CHECK(contains(pipe.dom, pipe.p_hat));
      }
  }
  CHECK(fails > 20);
}
