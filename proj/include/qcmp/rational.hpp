#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qcmp {

using Rational = mpq_class;

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Word weight: a rational, or nullopt for -infinity (no run).
using Weight = std::optional<Rational>;

inline std::string to_string(const Weight& w) { return w ? w->get_str() : std::string("-inf"); }

// Total order with -infinity below every rational.
inline int compare(const Weight& a, const Weight& b) {
  if (!a) return b ? -1 : 0;
  if (!b) return 1;
  return cmp(*a, *b) < 0 ? -1 : (cmp(*a, *b) > 0 ? 1 : 0);
}

}  // namespace qcmp
