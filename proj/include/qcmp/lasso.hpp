#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcmp/symbol.hpp"

namespace qcmp {

// stem . loop^omega
struct LassoWord {
  std::vector<Symbol> stem;
  std::vector<Symbol> loop;

  std::size_t length() const { return stem.size() + loop.size(); }
  int arity() const;
  // Letter at position i of the infinite word.
  const Symbol& at(std::size_t i) const;
  // Position following p inside the stem+loop frame.
  std::size_t next(std::size_t p) const { return p + 1 < length() ? p + 1 : stem.size(); }

  // Shortest stem, primitive loop. Two lassos denote the same word iff their
  // canonical forms are equal.
  LassoWord canonical() const;

  friend bool operator==(const LassoWord&, const LassoWord&) = default;
};

LassoWord parse_lasso(std::string_view text);
std::string format_lasso(const LassoWord& w);

// Unary integer lasso from plain values.
LassoWord int_lasso(const std::vector<int>& stem, const std::vector<int>& loop);

// Re-frames both words on a common stem length and loop length (lcm).
std::pair<LassoWord, LassoWord> align(const LassoWord& a, const LassoWord& b);
// Letter-wise concatenation of components of two aligned words.
LassoWord zip(const LassoWord& a, const LassoWord& b);
LassoWord project(const LassoWord& w, const Projection& p);
// All lassos with |stem| <= stem_bound and 1 <= |loop| <= loop_bound over the
// letters, ordered by total length, then stem length, then lexicographically.
// With canonical_only, each denoted word appears once (in canonical form).
std::vector<LassoWord> enumerate_lassos(const std::vector<Symbol>& letters, std::size_t stem_bound,
                                        std::size_t loop_bound, bool canonical_only = true);

// Same word re-framed with the given stem and loop lengths; loop_len must be
// a multiple of w.loop.size() for the result to denote the same word.
LassoWord unroll(const LassoWord& w, std::size_t stem_len, std::size_t loop_len);

}  // namespace qcmp
