#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/oracle.hpp"
#include "qcmp/random.hpp"

using namespace qcmp;
using testing::L;

namespace {

const std::vector<Relation> kRelations{Relation::LT, Relation::LE, Relation::GT, Relation::GE, Relation::EQ, Relation::NE};

LassoWord track(const LassoWord& w, int i) { return project(w, Projection{{i}}); }

bool oracle(AggKind kind, int d, Relation rel, const LassoWord& w) {
  return satisfies(rel, compare_aggregate({kind, d, Semantics::Sup}, track(w, 0), track(w, 1)));
}

}  // namespace

TEST_CASE("limsup comparator examples") {
  CHECK(accepts_lasso(limsup_comparator(1, Relation::GE), L(";1:0")));
  CHECK(accepts_lasso(limsup_comparator(1, Relation::EQ), L(";0:0")));
  CHECK(accepts_lasso(limsup_comparator(2, Relation::GT), L(";2:1,0:1")));
  CHECK(!accepts_lasso(limsup_comparator(2, Relation::LE), L(";2:1,0:1")));
  // the stem is irrelevant
  CHECK(accepts_lasso(limsup_comparator(2, Relation::LT), L("2:0,2:0;0:1")));
}

TEST_CASE("union of the building blocks is the GE comparator") {
  for (int mu = 1; mu <= 3; ++mu) {
    BuchiAutomaton u = limsup_component(mu, 0);
    for (int k = 1; k <= mu; ++k) u = union_of(u, limsup_component(mu, k));
    CHECK(equivalent(u, limsup_comparator(mu, Relation::GE)));
    for (int k = 0; k <= mu; ++k) {
      Rng rng(static_cast<std::uint64_t>(40 + k));
      for (int i = 0; i < 100; ++i) {
        const auto w = random_pair(rng, mu, 3, 4);
        const int a = limsup_lasso(track(w, 0)), b = limsup_lasso(track(w, 1));
        CHECK(accepts_lasso(limsup_component(mu, k), w) == (a == k && b <= k));
      }
    }
  }
}

TEST_CASE("liminf comparator examples") {
  CHECK(accepts_lasso(liminf_comparator(1, Relation::EQ), L(";1:1")));
  CHECK(accepts_lasso(liminf_comparator(1, Relation::LT), L(";0:1,1:1")));
  CHECK(accepts_lasso(liminf_comparator(2, Relation::GT), L(";2:0,2:2")));
  CHECK(!accepts_lasso(liminf_comparator(2, Relation::LE), L(";2:0,2:2")));
}

TEST_CASE("discounted-sum comparator examples") {
  CHECK(accepts_lasso(ds_comparator(1, 2, Relation::LT), L(";0:1")));
  CHECK(accepts_lasso(ds_comparator(1, 2, Relation::EQ), L("1:0;0:1")));
  CHECK(!accepts_lasso(ds_comparator(1, 2, Relation::LT), L("1:0;0:1")));
  CHECK(accepts_lasso(ds_comparator(3, 3, Relation::GT), L("3:0;0:1")));  // 3 > 3/2
}

TEST_CASE("discounted-sum construction size") {
  const auto p = DsParams::make(5, 2);
  CHECK(p.max_c == 10);
  CHECK(p.max_x == 6);
  const auto a = ds_lt_untrimmed(5, 2);
  CHECK(a.num_states() == 157);
  int f = 0, bottom = 0;
  for (int s = 0; s < a.num_states(); ++s) {
    if (a.name(s).ends_with(":_")) ++bottom;
    else if (a.is_accepting(s)) ++f;
  }
  CHECK(f == 143);
  CHECK(bottom == 13);
}

TEST_CASE("comparators agree with the oracle") {
  for (AggKind kind : {AggKind::LimSup, AggKind::LimInf, AggKind::DiscountedSum}) {
    Rng rng(static_cast<std::uint64_t>(kind) + 100);
    std::map<std::tuple<int, int, Relation>, BuchiAutomaton> cache;
    for (int i = 0; i < 300; ++i) {
      const int mu = uniform(rng, 1, 3), d = uniform(rng, 2, 3);
      const Relation rel = kRelations[static_cast<std::size_t>(uniform(rng, 0, 5))];
      const auto w = random_pair(rng, mu, 5, 5);
      auto key = std::make_tuple(mu, d, rel);
      if (!cache.count(key)) cache.emplace(key, build_comparator({kind, rel, mu, d}));
      INFO(to_string(kind), " ", to_string(rel), " mu=", mu, " d=", d, " ", format_lasso(w));
      CHECK(accepts_lasso(cache.at(key), w) == oracle(kind, d, rel, w));
    }
  }
}

TEST_CASE("trichotomy and derived relations") {
  for (AggKind kind : {AggKind::LimSup, AggKind::LimInf, AggKind::DiscountedSum}) {
    const int mu = 2, d = 2;
    std::map<Relation, BuchiAutomaton> c;
    for (auto r : kRelations) c.emplace(r, build_comparator({kind, r, mu, d}));
    Rng rng(static_cast<std::uint64_t>(kind) + 200);
    for (int i = 0; i < 150; ++i) {
      const auto w = random_pair(rng, mu, 4, 4);
      const auto swapped = zip(track(w, 1), track(w, 0));
      const bool lt = accepts_lasso(c.at(Relation::LT), w), eq = accepts_lasso(c.at(Relation::EQ), w),
                 gt = accepts_lasso(c.at(Relation::GT), w);
      CHECK(lt + eq + gt == 1);
      CHECK(gt == accepts_lasso(c.at(Relation::LT), swapped));
      CHECK(accepts_lasso(c.at(Relation::GE), w) == !lt);
      CHECK(accepts_lasso(c.at(Relation::NE), w) == !eq);
    }
  }
}

TEST_CASE("discounted sum is monotone") {
  Rng rng(300);
  const auto le = ds_comparator(3, 2, Relation::LE);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_lasso(rng, 1, 2, 3, 3);
    LassoWord b = a;
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(b.loop.size()) - 1));
    b.loop[k][0] += 1;
    CHECK(accepts_lasso(le, zip(a, b)));
  }
}

TEST_CASE("accepting LT runs carry the residual sequences") {
  Rng rng(400);
  int checked = 0;
  for (int mu : {1, 2, 3})
    for (int d : {2, 3}) {
      const auto a = ds_lt_untrimmed(mu, d);
      const auto p = DsParams::make(mu, d);
      const int C = std::max(p.max_c, d - 1);
      for (int i = 0; i < 40; ++i) {
        const auto w = random_pair(rng, mu, 3, 3);
        const std::size_t len = w.stem.size() + 2 * w.loop.size();
        const auto run = accepting_run(a, w, len);
        REQUIRE(run.has_value() == oracle(AggKind::DiscountedSum, d, Relation::LT, w));
        if (!run) continue;
        ++checked;
        // state after letter i names (X[i], C[i]); C is 0 until F is entered
        std::vector<long> X, Cs;
        for (std::size_t k = 1; k <= len; ++k) {
          const auto& n = a.name((*run)[k]);
          const auto colon = n.find(':');
          X.push_back(std::stol(n.substr(0, colon)));
          Cs.push_back(n.substr(colon + 1) == "_" ? 0 : std::stol(n.substr(colon + 1)));
        }
        CHECK(w.at(0)[0] + Cs[0] + X[0] == w.at(0)[1]);
        for (std::size_t k = 1; k < len; ++k) CHECK(w.at(k)[0] + Cs[k] + X[k] == w.at(k)[1] + d * X[k - 1]);
        for (std::size_t k = 0; k < len; ++k) {
          CHECK(std::abs(X[k]) <= p.max_x);
          CHECK(Cs[k] >= 0);
          CHECK(Cs[k] <= (k == 0 ? C : d - 1));
        }
      }
    }
  CHECK(checked > 50);
}

TEST_CASE("base representation comparator") {
  const auto gt = base_rep_comparator(2);
  auto pair = [](const Rational& a, const Rational& b, int beta) {
    auto [x, y] = align(rep_lasso(a, beta), rep_lasso(b, beta));
    return zip(x, y);
  };
  CHECK(accepts_lasso(gt, pair(2, 1, 2)));
  CHECK(!accepts_lasso(gt, pair(1, 1, 2)));
  CHECK(!accepts_lasso(gt, pair(-1, 1, 2)));
  CHECK(accepts_lasso(gt, pair(1, -1, 2)));

  Rng rng(500);
  for (int beta : {2, 3}) {
    const auto g = base_rep_comparator(beta), e = rep_equality(beta);
    for (int i = 0; i < 150; ++i) {
      Rational a(uniform(rng, -20, 20), static_cast<unsigned long>(uniform(rng, 1, 7)));
      Rational b(uniform(rng, -20, 20), static_cast<unsigned long>(uniform(rng, 1, 7)));
      a.canonicalize();
      b.canonicalize();
      if (i % 5 == 0) b = a;
      CHECK(decode_rep(rep_lasso(a, beta), beta) == a);
      const auto w = pair(a, b, beta);
      INFO(a.get_str(), " vs ", b.get_str(), " base ", beta);
      CHECK(accepts_lasso(g, w) == (a > b));
      CHECK(accepts_lasso(e, w) == (a == b));
    }
  }
  // a fraction tail of all top digits is not a representation
  CHECK(!decode_rep(L("2:0;0:1"), 2).has_value());
}

namespace {

LassoWord with_rep(const LassoWord& a, const LassoWord& rep) {
  auto [x, y] = align(a, rep);
  return zip(x, y);
}

}  // namespace

TEST_CASE("discounted-sum function automaton") {
  const auto f = ds_function_automaton(1, 2);
  CHECK(rep_lasso(2, 2) == L("2:0,0:0,1:0;0:0"));
  CHECK(accepts_lasso(f, with_rep(L(";1"), rep_lasso(2, 2))));
  CHECK(accepts_lasso(f, with_rep(L(";0"), rep_lasso(0, 2))));
  CHECK(!accepts_lasso(f, with_rep(L(";1"), rep_lasso(1, 2))));

  Rng rng(600);
  for (int mu : {1, 2, 3})
    for (int d : {2, 3}) {
      const auto fa = ds_function_automaton(mu, d);
      for (int i = 0; i < 30; ++i) {
        const auto a = random_lasso(rng, 1, mu, 3, 3);
        const Rational v = ds_lasso(a, d);
        CHECK(accepts_lasso(fa, with_rep(a, rep_lasso(v, d))));
        CHECK(!accepts_lasso(fa, with_rep(a, rep_lasso(v + 1, d))));
      }
    }
}

TEST_CASE("comparator from a function automaton") {
  const auto f = ds_function_automaton(1, 2);
  Rng rng(700);
  for (Relation rel : kRelations) {
    const auto c = comparator_from_function_automaton(f, 2, rel);
    const auto direct = ds_comparator(1, 2, rel);
    for (int i = 0; i < 100; ++i) {
      const auto w = random_pair(rng, 1, 3, 3);
      CHECK(accepts_lasso(c, w) == accepts_lasso(direct, w));
    }
  }

  // Every input maps to rep(0): nothing is strictly greater.
  AutomatonBuilder b(Alphabet{3, {1, 2, 1}});
  const int s0 = b.add_state(true, false), s1 = b.add_state(false, true);
  for (int x = 0; x <= 1; ++x) {
    b.add_transition(s0, {x, 2, 0}, s1);
    b.add_transition(s1, {x, 0, 0}, s1);
  }
  const auto constant = b.build();
  CHECK(!is_empty(comparator_from_function_automaton(constant, 2, Relation::GT)));
  CHECK(is_empty(comparator_from_function_automaton(constant, 2, Relation::EQ)).has_value());

  // Single-letter input: f(X) = f(Y) always.
  AutomatonBuilder only_zero(Alphabet{3, {0, 2, 1}});
  const int z = only_zero.add_state(true, false);
  const int z1 = only_zero.add_state(false, true);
  only_zero.add_transition(z, {0, 2, 0}, z1);
  only_zero.add_transition(z1, {0, 0, 0}, z1);
  CHECK(!is_empty(comparator_from_function_automaton(only_zero.build(), 2, Relation::LT)));

  CHECK_THROWS_AS(comparator_from_function_automaton(f, 3, Relation::LT), InputError);
}
