#pragma once

#include <optional>
#include <string>

#include "qcmp/buchi.hpp"
#include "qcmp/rational.hpp"
#include "qcmp/weighted.hpp"

namespace qcmp {

enum class Relation { LT, LE, GT, GE, EQ, NE };

std::string to_string(Relation r);
Relation parse_relation(const std::string& s);
// Does cmp (negative, zero, positive) satisfy r?
bool satisfies(Relation r, int cmp);

struct ComparatorSpec {
  AggKind kind = AggKind::LimSup;
  Relation rel = Relation::LE;
  int mu = 1;
  int d = 2;
};

// Büchi comparator over pairs (a, b) in [0, mu]^2. Prefix average has no
// Büchi comparator; see pushdown.hpp.
BuchiAutomaton build_comparator(const ComparatorSpec& spec);

// (a, b) -> (b, a)
BuchiAutomaton swap_tracks(const BuchiAutomaton& a);

// Single building block: LS(A) = k and LS(B) <= k.
BuchiAutomaton limsup_component(int mu, int k);
BuchiAutomaton limsup_comparator(int mu, Relation rel);
BuchiAutomaton liminf_comparator(int mu, Relation rel);

struct DsParams {
  int mu, d, max_c, max_x;
  static DsParams make(int mu, int d);
};

// The strict comparator exactly as constructed, before trimming. States are
// named "s", "x:c" for (x, c) and "x:_" for (x, bottom).
BuchiAutomaton ds_lt_untrimmed(int mu, int d);
BuchiAutomaton ds_comparator(int mu, int d, Relation rel);

// Representations of reals in base beta as words: a sign letter (beta, 0|1)
// followed by digit letters (int_digit, frac_digit), integer digits least
// significant first. The value is sum z_i beta^i + sum f_i beta^-(i+1).
LassoWord rep_lasso(const Rational& x, int beta);
// nullopt when the word is not a canonical representation.
std::optional<Rational> decode_rep(const LassoWord& w, int beta);

// Over letters (m_int, m_frac, n_int, n_frac): accepts (rep(a), rep(b)) iff a > b.
BuchiAutomaton base_rep_comparator(int beta);
BuchiAutomaton rep_equality(int beta);

// f_aut reads (x..., rep letter) with the representation in the last two
// components. Result reads (x..., y...).
BuchiAutomaton comparator_from_function_automaton(const BuchiAutomaton& f_aut, int beta, Relation rel);

// Accepts (A, rep(DS(A, d), d)) over letters (a, rep_int, rep_frac).
BuchiAutomaton ds_function_automaton(int mu, int d);

}  // namespace qcmp
