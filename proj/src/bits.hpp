#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qcmp::detail {

// Fixed-width bitset sized at runtime; used as a hash key for subset states.
struct Bits {
  std::vector<std::uint64_t> w;

  Bits() = default;
  explicit Bits(int n) : w(static_cast<std::size_t>((n + 63) / 64), 0) {}

  void set(int i) { w[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return (w[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1; }
  bool none() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    return *this;
  }
  Bits minus(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
    return r;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto x = w[k];
      while (x) {
        int b = std::countr_zero(x);
        f(static_cast<int>(k * 64) + b);
        x &= x - 1;
      }
    }
  }
  friend bool operator==(const Bits&, const Bits&) = default;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : b.w) h = (h ^ x) * 0x100000001b3ULL ^ (h >> 29);
    return h;
  }
};

}  // namespace qcmp::detail
