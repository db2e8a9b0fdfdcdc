#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcmp {

// Malformed user input: bad JSON, bad lasso text, alphabet mismatches.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Symbol = std::vector<int>;

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const noexcept;
};

std::string format_symbol(const Symbol& s);
Symbol parse_symbol(std::string_view text);

// Per-component inclusive upper bounds; nullopt marks an unbounded label
// component.
struct Alphabet {
  int arity = 0;
  std::vector<std::optional<int>> bounds;

  static Alphabet uniform(int arity, int bound);
  bool contains(const Symbol& s) const;
  bool finite() const;
  std::vector<Symbol> enumerate() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

// Component selection: output component i is input component components[i].
struct Projection {
  std::vector<int> components;

  static Projection identity(int arity);
  Symbol apply(const Symbol& s) const;
  Alphabet apply(const Alphabet& a) const;
};

}  // namespace qcmp
