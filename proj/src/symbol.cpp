#include "qcmp/symbol.hpp"

#include <charconv>

namespace qcmp {

std::size_t SymbolHash::operator()(const Symbol& s) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
  for (int c : s) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(c)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string format_symbol(const Symbol& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ':';
    out += std::to_string(s[i]);
  }
  return out;
}

Symbol parse_symbol(std::string_view text) {
  Symbol s;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(':', pos);
    std::string_view part = text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw InputError("bad symbol component '" + std::string(part) + "' in '" + std::string(text) + "'");
    }
    s.push_back(v);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return s;
}

Alphabet Alphabet::uniform(int arity, int bound) {
  return Alphabet{arity, std::vector<std::optional<int>>(static_cast<std::size_t>(arity), bound)};
}

bool Alphabet::contains(const Symbol& s) const {
  if (static_cast<int>(s.size()) != arity) return false;
  for (int i = 0; i < arity; ++i) {
    if (bounds[i] && (s[i] < 0 || s[i] > *bounds[i])) return false;
  }
  return true;
}

bool Alphabet::finite() const {
  for (const auto& b : bounds)
    if (!b) return false;
  return true;
}

std::vector<Symbol> Alphabet::enumerate() const {
  if (!finite()) throw InputError("cannot enumerate an alphabet with unbounded components");
  std::vector<Symbol> out;
  Symbol cur(static_cast<std::size_t>(arity), 0);
  if (arity == 0) return {cur};
  while (true) {
    out.push_back(cur);
    int i = arity - 1;
    while (i >= 0 && cur[i] == *bounds[i]) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

Projection Projection::identity(int arity) {
  Projection p;
  for (int i = 0; i < arity; ++i) p.components.push_back(i);
  return p;
}

Symbol Projection::apply(const Symbol& s) const {
  Symbol out;
  out.reserve(components.size());
  for (int c : components) out.push_back(s.at(static_cast<std::size_t>(c)));
  return out;
}

Alphabet Projection::apply(const Alphabet& a) const {
  Alphabet out;
  out.arity = static_cast<int>(components.size());
  for (int c : components) {
    if (c < 0 || c >= a.arity) throw InputError("projection component out of range");
    out.bounds.push_back(a.bounds[c]);
  }
  return out;
}

}  // namespace qcmp
