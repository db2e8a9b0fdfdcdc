#include "doctest.h"
#include "helpers.hpp"
#include "qcmp/inclusion.hpp"
#include "qcmp/random.hpp"

using namespace qcmp;
using testing::L;

TEST_CASE("augmentation of the worked example") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  const auto ph = augment_wt_and_label(P), qh = augment_wt_and_label(Q);
  CHECK(ph.letters() == std::vector<Symbol>{{0, 1, 1}, {0, 1, 2}});
  CHECK(qh.letters() == std::vector<Symbol>{{0, 0, 1}, {0, 1, 3}, {0, 2, 2}});
  CHECK(isomorphic(ph, testing::load_buchi("example_p_hat.json")));
  CHECK(isomorphic(qh, testing::load_buchi("example_q_hat.json")));
  CHECK(isomorphic(make_product(ph, qh), testing::load_buchi("example_product.json")));

  const auto single = testing::chain({}, {3}, 3);
  const auto sh = augment_wt_and_label(single);
  CHECK(sh.num_states() == 1);
  CHECK(sh.letters() == std::vector<Symbol>{{0, 3, 1}});
}

TEST_CASE("augmented automata are unambiguous") {
  Rng rng(21);
  const Alphabet al = Alphabet::uniform(1, 1);
  for (int i = 0; i < 30; ++i) {
    const auto W = random_weighted(rng, uniform(rng, 1, 4), al, 2, 3);
    const auto h = augment_wt_and_label(W);
    // labels determine the transition, so every state has at most one
    // successor per letter and the initial state is unique
    CHECK(h.initial().size() == 1);
    for (int s = 0; s < h.num_states(); ++s)
      for (int l = 0; l < static_cast<int>(h.letters().size()); ++l) CHECK(h.out(s, l).size() <= 1);

    // run prefixes of W on a word correspond to accepted word prefixes of h
    const auto w = random_lasso(rng, 1, 1, 2, 3);
    std::vector<std::size_t> count(static_cast<std::size_t>(W.num_states), 0);
    count[static_cast<std::size_t>(W.initial[0])] = 1;
    std::vector<std::size_t> hcount(static_cast<std::size_t>(h.num_states()), 0);
    hcount[static_cast<std::size_t>(h.initial()[0])] = 1;
    for (std::size_t k = 0; k < 8; ++k) {
      std::vector<std::size_t> next(count.size(), 0), hnext(hcount.size(), 0);
      for (const auto& t : W.transitions)
        if (t.sym == w.at(k)) next[static_cast<std::size_t>(t.dst)] += count[static_cast<std::size_t>(t.src)];
      for (int s = 0; s < h.num_states(); ++s)
        for (const auto& e : h.out(s))
          if (Symbol{h.letter(e.letter)[0]} == w.at(k)) hnext[static_cast<std::size_t>(e.dst)] += hcount[static_cast<std::size_t>(s)];
      count = next;
      hcount = hnext;
      std::size_t total = 0, htotal = 0;
      for (auto c : count) total += c;
      for (auto c : hcount) htotal += c;
      CHECK(total == htotal);
    }
  }
}

TEST_CASE("product words project to both factors") {
  Rng rng(22);
  const Alphabet al = Alphabet::uniform(1, 1);
  for (int i = 0; i < 20; ++i) {
    const auto P = random_weighted(rng, uniform(rng, 1, 3), al, 2, 3), Q = random_weighted(rng, uniform(rng, 1, 3), al, 2, 3);
    const auto ph = augment_wt_and_label(P), qh = augment_wt_and_label(Q);
    const auto prod = make_product(ph, qh);
    for (const auto& w : sample_words(prod, 20, 3)) {
      CHECK(accepts_lasso(ph, project(w, augmented_projection(1))));
      CHECK(accepts_lasso(qh, project(w, other_augmented_projection(1))));
    }
    // swapping the factors swaps the (n, l) pairs
    const auto back = project(make_product(qh, ph), Projection{{0, 3, 4, 1, 2}});
    CHECK(equivalent(back, prod));
  }
  const auto self = make_product(augment_wt_and_label(testing::load_weighted("example_q.json")),
                                 augment_wt_and_label(testing::load_weighted("example_q.json")));
  CHECK(accepts_lasso(self, L("0:2:2:2:2;0:1:3:1:3")));
}

TEST_CASE("weight normalization") {
  const auto P = testing::load_weighted("example_p.json"), Q = testing::load_weighted("example_q.json");
  CHECK(normalize_weights(P, 0, 1) == P);
  const auto P2 = normalize_weights(P, 0, 2), Q2 = normalize_weights(Q, 0, 2);
  CHECK(P2.transitions[0].weight == 2);
  CHECK(Q2.mu == 4);
  for (auto agg : {AggSpec{AggKind::LimSup, 0, Semantics::Sup}, AggSpec{AggKind::DiscountedSum, 2, Semantics::Sup}}) {
    CHECK(inclusion(P, Q, agg, false).holds == inclusion(P2, Q2, agg, false).holds);
    CHECK(inclusion(P, Q, agg, true).holds == inclusion(P2, Q2, agg, true).holds);
  }
  CHECK_THROWS_AS(normalize_weights(Q, -1, 1), InputError);
  CHECK_THROWS_AS(normalize_weights(Q, 0, 0), InputError);

  // weights {-1, 1} shifted into {0, 2}
  auto raw = testing::chain({-1}, {1}, 1);
  raw.transitions[0].weight = -1;
  const auto shifted = normalize_weights(raw, 1, 1);
  CHECK(shifted.transitions[0].weight == 0);
  CHECK(shifted.transitions[1].weight == 2);
  // limsup -1 against 1 before the shift, 0 against 2 after it
  const auto other = testing::chain({}, {0}, 2);
  const AggSpec ls{};
  CHECK(inclusion(other, shifted, ls, false).holds);
  CHECK(!inclusion(shifted, other, ls, false).holds);
}

TEST_CASE("weighted automaton validation") {
  auto P = testing::load_weighted("example_p.json");
  P.transitions[0].weight = 5;
  CHECK_THROWS_AS(P.validate(), InputError);
  P = testing::load_weighted("example_p.json");
  P.transitions[0].dst = 9;
  CHECK_THROWS_AS(P.validate(), InputError);
  P = testing::load_weighted("example_p.json");
  P.agg = {AggKind::DiscountedSum, 1, Semantics::Sup};
  CHECK_THROWS_AS(P.validate(), InputError);
}
