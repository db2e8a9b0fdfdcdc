#include "qcmp/fuzz.hpp"

#include <map>
#include <tuple>

#include "qcmp/oracle.hpp"
#include "qcmp/pushdown.hpp"
#include "qcmp/random.hpp"

namespace qcmp {

std::vector<char> accepts_batch(const BuchiAutomaton& a, const std::vector<LassoWord>& words) {
  std::vector<char> out(words.size());
  const auto n = static_cast<long>(words.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = accepts_lasso(a, words[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<char> accepts_batch_serial(const BuchiAutomaton& a, const std::vector<LassoWord>& words) {
  std::vector<char> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(accepts_lasso(a, w));
  return out;
}

namespace {

struct Plan {
  std::vector<FuzzCase> cases;
  std::map<std::tuple<int, int, Relation>, BuchiAutomaton> comparators;
  std::map<int, BuchiPDA> pdas;
};

Plan plan(const FuzzConfig& cfg) {
  if (cfg.n < 1) throw InputError("fuzz needs n >= 1");
  if (cfg.max_mu < 1 || cfg.max_loop < 1 || cfg.max_stem < 0) throw InputError("fuzz bounds out of range");
  const bool pa = cfg.kind == AggKind::PrefixAverage;
  const bool ds = cfg.kind == AggKind::DiscountedSum;
  std::vector<Relation> rels = pa ? std::vector<Relation>{Relation::GE} : cfg.relations;
  std::vector<int> discounts = ds ? cfg.discounts : std::vector<int>{0};
  if (rels.empty() || discounts.empty()) throw InputError("fuzz needs at least one relation and discount factor");

  Plan p;
  Rng rng(cfg.seed);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    FuzzCase c{i, uniform(rng, 1, cfg.max_mu), 0, Relation::LE, {}, false, false};
    c.d = discounts[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(discounts.size()) - 1))];
    c.rel = rels[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(rels.size()) - 1))];
    c.pair = random_pair(rng, c.mu, cfg.max_stem, cfg.max_loop);
    p.cases.push_back(std::move(c));
  }
  for (const auto& c : p.cases) {
    if (pa) {
      if (!p.pdas.count(c.mu)) p.pdas.emplace(c.mu, prefix_average_comparator(c.mu));
    } else {
      const auto key = std::make_tuple(c.mu, c.d, c.rel);
      if (!p.comparators.count(key)) p.comparators.emplace(key, build_comparator({cfg.kind, c.rel, c.mu, c.d}));
    }
  }
  return p;
}

void evaluate(const FuzzConfig& cfg, const Plan& p, FuzzCase& c) {
  const LassoWord a = project(c.pair, Projection{{0}}), b = project(c.pair, Projection{{1}});
  if (cfg.kind == AggKind::PrefixAverage) {
    c.comparator = pda_accepts_lasso(p.pdas.at(c.mu), c.pair);
    c.oracle = prefix_average_ge_lasso(a, b);
  } else {
    c.comparator = accepts_lasso(p.comparators.at({c.mu, c.d, c.rel}), c.pair);
    c.oracle = satisfies(c.rel, compare_aggregate({cfg.kind, c.d, Semantics::Sup}, a, b));
  }
}

FuzzReport report(Plan& p) {
  FuzzReport r;
  r.n = p.cases.size();
  for (auto& c : p.cases) {
    r.accepted += c.comparator;
    if (c.comparator != c.oracle) r.disagreements.push_back(c);
  }
  return r;
}

}  // namespace

FuzzReport fuzz(const FuzzConfig& cfg) {
  Plan p = plan(cfg);
  const auto n = static_cast<long>(p.cases.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) evaluate(cfg, p, p.cases[static_cast<std::size_t>(i)]);
  return report(p);
}

FuzzReport fuzz_serial(const FuzzConfig& cfg) {
  Plan p = plan(cfg);
  for (auto& c : p.cases) evaluate(cfg, p, c);
  return report(p);
}

}  // namespace qcmp
