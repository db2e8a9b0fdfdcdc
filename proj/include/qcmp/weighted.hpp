#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcmp/buchi.hpp"
#include "qcmp/lasso.hpp"

namespace qcmp {

enum class AggKind { LimSup, LimInf, DiscountedSum, PrefixAverage };
enum class Semantics { Sup, Inf };

struct AggSpec {
  AggKind kind = AggKind::LimSup;
  int d = 0;  // discount factor, discounted sum only
  Semantics semantics = Semantics::Sup;

  void validate() const;
  friend bool operator==(const AggSpec&, const AggSpec&) = default;
};

std::string to_string(AggKind k);
AggKind parse_agg_kind(const std::string& s);

struct WeightedTransition {
  int src;
  Symbol sym;
  int dst;
  std::int64_t weight;
  friend bool operator==(const WeightedTransition&, const WeightedTransition&) = default;
};

// All states accepting. Parallel transitions that differ only in weight are
// distinct transitions (they become distinct labels after augmentation).
struct WeightedAutomaton {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<std::string> names;  // optional
  std::vector<int> initial;
  std::vector<WeightedTransition> transitions;
  int mu = 1;
  AggSpec agg;

  void validate() const;
  // The underlying Büchi automaton, weights dropped.
  BuchiAutomaton base() const;
  friend bool operator==(const WeightedAutomaton&, const WeightedAutomaton&) = default;
};

// WordNotInQ: a word of P without a run in Q (sup semantics). WordNotInP: a
// word of Q without a run in P (inf semantics).
enum class WitnessKind { None, NotDominated, WordNotInQ, WordNotInP };
std::string to_string(WitnessKind k);

struct InclusionVerdict {
  bool holds = true;
  std::optional<LassoWord> witness;  // over the base alphabet
  WitnessKind kind = WitnessKind::None;
};

// (s, a, t) with weight n and position l (1-based) becomes (s, (a, n, l), t).
BuchiAutomaton augment_wt_and_label(const WeightedAutomaton& w);

// Synchronous product on the base letter: letters (a, n_P, l_P, n_Q, l_Q).
BuchiAutomaton make_product(const BuchiAutomaton& p_hat, const BuchiAutomaton& q_hat);

// n -> scale * n + shift; mu becomes the largest resulting weight (at least 1).
WeightedAutomaton normalize_weights(const WeightedAutomaton& w, std::int64_t shift, std::int64_t scale);

// Projections used around the augmented alphabets, for base arity k.
Projection base_projection(int k);          // (a, n, l) -> a, also valid on products
Projection augmented_projection(int k);     // product -> (a, n_P, l_P)
Projection other_augmented_projection(int k);  // product -> (a, n_Q, l_Q)
Projection weight_pair_projection(int k);   // product -> (n_P, n_Q)

}  // namespace qcmp
