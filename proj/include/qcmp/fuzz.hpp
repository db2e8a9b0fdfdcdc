#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcmp/buchi.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/lasso.hpp"

namespace qcmp {

// Membership of many words in one automaton. The parallel version splits the
// words across OpenMP threads; results are identical to the serial one.
std::vector<char> accepts_batch(const BuchiAutomaton& a, const std::vector<LassoWord>& words);
std::vector<char> accepts_batch_serial(const BuchiAutomaton& a, const std::vector<LassoWord>& words);

struct FuzzConfig {
  AggKind kind = AggKind::LimSup;
  std::vector<Relation> relations{Relation::LT, Relation::LE, Relation::EQ, Relation::GT, Relation::GE, Relation::NE};
  std::vector<int> discounts{2, 3};
  int max_mu = 4;
  int max_stem = 6;
  int max_loop = 6;
  std::uint64_t seed = 1;
  std::size_t n = 1000;
};

struct FuzzCase {
  std::size_t index;
  int mu, d;
  Relation rel;
  LassoWord pair;
  bool comparator, oracle;
};

struct FuzzReport {
  std::size_t n = 0, accepted = 0;
  std::vector<FuzzCase> disagreements;
};

// Random pairs checked against the exact oracle. Cases are drawn serially from
// the seed and evaluated in parallel, so the report depends only on the seed.
// Prefix average checks the pushdown comparator (relation GE only).
FuzzReport fuzz(const FuzzConfig& cfg);
FuzzReport fuzz_serial(const FuzzConfig& cfg);

}  // namespace qcmp
