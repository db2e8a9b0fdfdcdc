// Acceptance checks, one line per criterion. Exit status is 0 when the set
// of failing criteria equals the set given with --expect-fail (empty by
// default), so a known, analysed failure is reported without hiding a new one.
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcmp/buchi.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/fuzz.hpp"
#include "qcmp/inclusion.hpp"
#include "qcmp/json_io.hpp"
#include "qcmp/oracle.hpp"
#include "qcmp/pushdown.hpp"
#include "qcmp/random.hpp"

using namespace qcmp;

namespace {

// Time limits in seconds.
constexpr double kLimitExample = 1.0;
constexpr double kLimitStrict = 1.0;
constexpr double kLimitFuzzDs = 60.0;
constexpr double kLimitFuzzLimit = 30.0;
constexpr double kLimitComplement = 120.0;
constexpr double kLimitBrute = 300.0;

// Growth of the strict discounted-sum comparator: every count divided by
// mu^2/d must lie within this factor of the (5, 2) ratio.
constexpr double kGrowthFactor = 2.0;

// Brute force enumerates lassos with stem and loop up to this length, or up
// to the witness length of the decision procedure if that is longer.
constexpr std::size_t kBruteBound = 6;

std::string data_dir = QCMP_TEST_DATA;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
  Outcome done() {
    if (out_.pass) out_.detail = notes_.str();
    else if (notes_.tellp() > 0) out_.detail += " (" + notes_.str() + ")";
    return out_;
  }

 private:
  Outcome out_;
  std::ostringstream notes_;
};

std::string fmt(double x, int prec = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, x);
  return buf;
}

WeightedAutomaton weighted(const std::string& name) { return weighted_from_json(read_json_file(data_dir + "/" + name)); }
BuchiAutomaton buchi(const std::string& name) { return buchi_from_json(read_json_file(data_dir + "/" + name)); }

LassoWord track(const LassoWord& w, int i) { return project(w, Projection{{i}}); }

Outcome worked_example() {
  Report r;
  const AggSpec agg{};
  const auto P = weighted("example_p.json"), Q = weighted("example_q.json");
  const auto v = inclusion(P, Q, agg, false);
  r.require(v.holds, "inclusion reported as failing");
  const auto pipe = inclusion_pipeline(P, Q, agg, false);
  r.require(isomorphic(pipe.p_hat, buchi("example_p_hat.json")), "augmented P differs from the expected automaton");
  r.require(isomorphic(pipe.q_hat, buchi("example_q_hat.json")), "augmented Q differs from the expected automaton");
  r.require(isomorphic(pipe.product, buchi("example_product.json")), "product differs from the expected automaton");
  // The expected intermediate automata are built with a fragment of the
  // comparator; the full comparator yields the same projected language.
  const auto proof = intersect_on(pipe.product, buchi("example_comparator_part.json"), weight_pair_projection(1));
  r.require(isomorphic(proof, buchi("example_dom_proof.json")), "dominated product differs from the expected automaton");
  r.require(isomorphic(project(proof, augmented_projection(1)), buchi("example_dom.json")),
            "dominated runs differ from the expected automaton");
  r.require(equivalent(pipe.dom, buchi("example_dom.json")), "dominated runs of the full pipeline differ in language");
  r.note("Dom " + std::to_string(pipe.dom.num_states()) + " states");
  return r.done();
}

Outcome strict_example() {
  Report r;
  const AggSpec agg{};
  const auto P = weighted("example_p.json"), Q = weighted("example_q.json");
  const auto v = inclusion(P, Q, agg, true);
  r.require(!v.holds, "strict inclusion reported as holding");
  r.require(v.witness && *v.witness == parse_lasso(";0"), "witness is not a^omega");
  if (v.witness) {
    const auto wp = word_weight(P, *v.witness, agg), wq = word_weight(Q, *v.witness, agg);
    r.require(wp && wq && *wp == 1 && *wq == 1, "witness weights are not both 1");
    r.note("weights " + to_string(wp) + ", " + to_string(wq));
  }
  return r.done();
}

Outcome ds_size() {
  Report r;
  const auto base = ds_lt_untrimmed(5, 2);
  r.require(base.num_states() == 157, "(5,2) has " + std::to_string(base.num_states()) + " states, expected 157");
  const double base_ratio = base.num_states() / (25.0 / 2);
  std::ostringstream s;
  for (auto [mu, d] : {std::pair{5, 2}, {10, 2}, {10, 3}, {20, 4}}) {
    const int n = ds_lt_untrimmed(mu, d).num_states();
    const double rel = n / (double(mu) * mu / d) / base_ratio;
    s << "(" << mu << "," << d << ")=" << n << " x" << fmt(rel) << " ";
    r.require(rel <= kGrowthFactor && rel >= 1 / kGrowthFactor,
              "(" + std::to_string(mu) + "," + std::to_string(d) + ") ratio " + fmt(rel) +
                  " of the baseline, outside a factor " + fmt(kGrowthFactor, 0));
  }
  r.note(s.str() + "relative to states/(mu^2/d) at (5,2)");
  return r.done();
}

Outcome fuzz_kind(std::initializer_list<AggKind> kinds) {
  Report r;
  for (AggKind k : kinds) {
    FuzzConfig cfg;
    cfg.kind = k;
    cfg.seed = 2024;
    cfg.n = 1000;
    const auto rep = fuzz(cfg);
    r.require(rep.n == 1000, "wrong number of pairs");
    r.require(rep.disagreements.empty(),
              to_string(k) + ": " + std::to_string(rep.disagreements.size()) + " disagreements, first " +
                  (rep.disagreements.empty() ? "" : format_lasso(rep.disagreements.front().pair)));
    r.note(to_string(k) + " " + std::to_string(rep.accepted) + "/1000 accepted");
  }
  return r.done();
}

Outcome run_witness() {
  Report r;
  Rng rng(66);
  int accepted = 0, checked = 0;
  while (accepted < 200) {
    const int mu = uniform(rng, 1, 4), d = uniform(rng, 2, 3);
    const auto a = ds_lt_untrimmed(mu, d);
    const auto w = random_pair(rng, mu, 6, 6);
    const std::size_t len = w.stem.size() + 2 * w.loop.size();
    const auto run = accepting_run(a, w, len);
    const bool want = compare_aggregate({AggKind::DiscountedSum, d, Semantics::Sup}, track(w, 0), track(w, 1)) < 0;
    r.require(run.has_value() == want, "run existence disagrees with the oracle on " + format_lasso(w));
    if (!run) continue;
    ++accepted;
    // Each state after the first names (X[i], C[i]), with C[i] = 0 before
    // the accepting part is entered.
    std::vector<long> X, C;
    for (std::size_t k = 1; k <= len; ++k) {
      const auto& n = a.name((*run)[k]);
      const auto colon = n.find(':');
      X.push_back(std::stol(n.substr(0, colon)));
      C.push_back(n.substr(colon + 1) == "_" ? 0 : std::stol(n.substr(colon + 1)));
    }
    const long c0_max = mu * d / (d - 1);
    const double x_max = 1 + double(mu) / (d - 1);
    const std::string at = " on " + format_lasso(w);
    r.require(w.at(0)[0] + C[0] + X[0] == w.at(0)[1], "initial equation violated" + at);
    for (std::size_t k = 1; k < len; ++k)
      r.require(w.at(k)[0] + C[k] + X[k] == w.at(k)[1] + d * X[k - 1], "step equation violated" + at);
    r.require(C[0] >= 0 && C[0] <= c0_max, "C[0] out of bounds" + at);
    for (std::size_t k = 0; k < len; ++k) {
      r.require(std::abs(X[k]) <= x_max, "X out of bounds" + at);
      if (k > 0) r.require(C[k] >= 0 && C[k] < d, "C out of bounds" + at);
      ++checked;
    }
  }
  r.note("200 runs, " + std::to_string(checked) + " indices");
  return r.done();
}

LassoWord pumped(int m, int k) {
  LassoWord w;
  for (int i = 0; i < m; ++i) w.loop.push_back({0, 1});
  for (int i = 0; i < k; ++i) w.loop.push_back({1, 0});
  return w;
}

Outcome prefix_average() {
  Report r;
  Rng rng(77);
  int accepted = 0;
  for (int i = 0; i < 500; ++i) {
    const int mu = uniform(rng, 1, 3);
    const auto w = random_pair(rng, mu, 6, 6);
    const bool v = pda_accepts_lasso(prefix_average_comparator(mu), w);
    r.require(v == prefix_average_ge_lasso(track(w, 0), track(w, 1)), "disagreement on " + format_lasso(w));
    accepted += v;
  }
  const auto pda = prefix_average_comparator(1);
  for (int p = 1; p <= 3; ++p) {
    r.require(pda_accepts_lasso(pda, pumped(p, 2 * p)), "pumping family rejected at p=" + std::to_string(p));
    for (int m = 4 * p + 1; m <= 4 * p + 4; ++m)
      r.require(!pda_accepts_lasso(pda, pumped(m, 2 * p)), "pumped variant accepted at p=" + std::to_string(p));
  }
  r.note(std::to_string(accepted) + "/500 accepted");
  return r.done();
}

Outcome complementation() {
  Report r;
  Rng rng(88);
  const Alphabet al = Alphabet::uniform(1, 1);
  std::size_t largest = 0;
  for (int i = 0; i < 50; ++i) {
    const auto a = random_buchi(rng, uniform(rng, 1, 5), al, 0.3);
    const auto c = complement(a);
    largest = std::max<std::size_t>(largest, c.num_states());
    for (int j = 0; j < 200; ++j) {
      const auto w = random_lasso(rng, 1, 1, 5, 5);
      r.require(accepts_lasso(a, w) != accepts_lasso(c, w), "membership not exclusive on " + format_lasso(w));
    }
    r.require(!is_empty(intersect(a, c)), "a and its complement intersect");
  }
  r.note("largest complement " + std::to_string(largest) + " states");
  return r.done();
}

Outcome inclusion_brute_force() {
  Report r;
  Rng rng(99);
  int fails = 0, extended = 0;
  for (int i = 0; i < 100; ++i) {
    const Alphabet al = Alphabet::uniform(1, uniform(rng, 0, 1));
    const auto P = random_weighted(rng, uniform(rng, 1, 4), al, uniform(rng, 1, 3), 3);
    const auto Q = random_weighted(rng, uniform(rng, 1, 4), al, uniform(rng, 1, 3), 3);
    for (const AggSpec agg : {AggSpec{}, AggSpec{AggKind::DiscountedSum, 2, Semantics::Sup}})
      for (bool strict : {false, true}) {
        const auto v = inclusion(P, Q, agg, strict);
        std::size_t sb = kBruteBound, lb = kBruteBound;
        if (v.witness) {
          ++fails;
          if (v.witness->stem.size() > sb || v.witness->loop.size() > lb) ++extended;
          sb = std::max(sb, v.witness->stem.size());
          lb = std::max(lb, v.witness->loop.size());
          const auto wp = word_weight(P, *v.witness, agg), wq = word_weight(Q, *v.witness, agg);
          const int c = compare(wp, wq);
          r.require(wp && (strict ? c >= 0 : c > 0), "witness " + format_lasso(*v.witness) + " does not violate");
        }
        const auto b = brute_force_inclusion(P, Q, agg, strict, sb, lb);
        r.require(b.holds == v.holds, "verdict differs from brute force at pair " + std::to_string(i));
      }
  }
  r.note("400 checks, " + std::to_string(fails) + " failing, bounds " + std::to_string(kBruteBound) + " (" +
         std::to_string(extended) + " extended to the witness)");
  return r.done();
}

Outcome ds_function() {
  Report r;
  Rng rng(1010);
  const int d = 2;
  for (int i = 0; i < 100; ++i) {
    const int mu = uniform(rng, 1, 3);
    const auto f = ds_function_automaton(mu, d);
    const auto a = random_lasso(rng, 1, mu, 5, 5);
    const Rational v = ds_lasso(a, d);
    // Let the automaton produce the representation paired with A.
    const auto fixed = intersect_on(f, lasso_automaton(Alphabet::uniform(1, mu), a), Projection{{0}});
    const auto found = is_empty(fixed);
    r.require(found.has_value(), "no representation accepted for " + format_lasso(a));
    if (!found) continue;
    const auto rep = project(*found, Projection{{1, 2}});
    const auto decoded = decode_rep(rep, d);
    r.require(decoded && *decoded == v, "accepted representation does not decode to DS(A) for " + format_lasso(a));
    r.require(difference_witness(fixed, lasso_automaton(f.alphabet(), *found)) == std::nullopt,
              "more than one representation accepted for " + format_lasso(a));
    // One perturbed representation: a different value close to v.
    const int k = uniform(rng, 0, 3);
    Rational delta(1, 1L << k);
    const Rational other = uniform(rng, 0, 1) ? Rational(v + delta) : Rational(v - delta);
    auto [x, y] = align(a, rep_lasso(other, d));
    r.require(!accepts_lasso(f, zip(x, y)), "perturbed representation accepted for " + format_lasso(a));
  }
  return r.done();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail");
  app.add_option("--data", data_dir, "fixture directory");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    std::string title;
    double limit;  // seconds, 0 for none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example", kLimitExample, worked_example},
      {2, "strict variant witness", kLimitStrict, strict_example},
      {3, "discounted-sum comparator size", 0, ds_size},
      {4, "discounted-sum fuzz", kLimitFuzzDs, [] { return fuzz_kind({AggKind::DiscountedSum}); }},
      {5, "limsup/liminf fuzz", kLimitFuzzLimit, [] { return fuzz_kind({AggKind::LimSup, AggKind::LimInf}); }},
      {6, "run witnesses", 0, run_witness},
      {7, "prefix average", 0, prefix_average},
      {8, "complementation", kLimitComplement, complementation},
      {9, "inclusion vs brute force", kLimitBrute, inclusion_brute_force},
      {10, "discounted-sum function automaton", 0, ds_function},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs >= c.limit) {
      o.pass = false;
      o.detail = "took " + fmt(secs) + " s, limit " + fmt(c.limit, 0) + " s; " + o.detail;
    }
    if (!o.pass) failed.insert(c.id);
    std::printf("%-4s %2d  %-34s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (failed != expected) {
    std::printf("unexpected result: %zu failing, %zu expected to fail\n", failed.size(), expected.size());
    return 1;
  }
  return 0;
}
