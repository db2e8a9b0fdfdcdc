#include "qcmp/lasso.hpp"

#include <numeric>

namespace qcmp {

namespace {

std::vector<Symbol> parse_seq(std::string_view text) {
  std::vector<Symbol> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find(',', pos);
    out.push_back(parse_symbol(text.substr(pos, end == std::string_view::npos ? text.size() - pos : end - pos)));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

std::string format_seq(const std::vector<Symbol>& seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += format_symbol(seq[i]);
  }
  return out;
}

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

}  // namespace

int LassoWord::arity() const { return static_cast<int>(loop.empty() ? 0 : loop.front().size()); }

const Symbol& LassoWord::at(std::size_t i) const {
  if (i < stem.size()) return stem[i];
  return loop[(i - stem.size()) % loop.size()];
}

LassoWord LassoWord::canonical() const {
  LassoWord w = *this;
  std::size_t n = w.loop.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w.loop[i] == w.loop[i - p];
    if (ok) {
      w.loop.resize(p);
      break;
    }
  }
  while (!w.stem.empty() && w.stem.back() == w.loop.back()) {
    w.loop.insert(w.loop.begin(), w.loop.back());
    w.loop.pop_back();
    w.stem.pop_back();
  }
  return w;
}

LassoWord parse_lasso(std::string_view text) {
  text = trim_ws(text);
  std::size_t semi = text.find(';');
  if (semi == std::string_view::npos || text.find(';', semi + 1) != std::string_view::npos) {
    throw InputError("lasso must have the form 'stem;loop': '" + std::string(text) + "'");
  }
  LassoWord w{parse_seq(text.substr(0, semi)), parse_seq(text.substr(semi + 1))};
  if (w.loop.empty()) throw InputError("lasso loop must be nonempty");
  std::size_t ar = w.loop.front().size();
  for (const auto& s : w.stem)
    if (s.size() != ar) throw InputError("lasso symbols have mixed arity");
  for (const auto& s : w.loop)
    if (s.size() != ar) throw InputError("lasso symbols have mixed arity");
  return w;
}

std::string format_lasso(const LassoWord& w) { return format_seq(w.stem) + ";" + format_seq(w.loop); }

LassoWord int_lasso(const std::vector<int>& stem, const std::vector<int>& loop) {
  LassoWord w;
  for (int v : stem) w.stem.push_back({v});
  for (int v : loop) w.loop.push_back({v});
  return w;
}

std::vector<LassoWord> enumerate_lassos(const std::vector<Symbol>& letters, std::size_t stem_bound,
                                        std::size_t loop_bound, bool canonical_only) {
  std::vector<LassoWord> out;
  const std::size_t k = letters.size();
  if (k == 0) return out;
  for (std::size_t total = 1; total <= stem_bound + loop_bound; ++total)
    for (std::size_t st = total > loop_bound ? total - loop_bound : 0; st <= std::min(stem_bound, total - 1); ++st) {
      std::vector<std::size_t> digits(total, 0);
      while (true) {
        LassoWord w;
        for (std::size_t i = 0; i < total; ++i) (i < st ? w.stem : w.loop).push_back(letters[digits[i]]);
        if (!canonical_only || w.canonical() == w) out.push_back(std::move(w));
        std::size_t i = total;
        while (i > 0 && digits[i - 1] == k - 1) digits[--i] = 0;
        if (i == 0) break;
        ++digits[i - 1];
      }
    }
  return out;
}

LassoWord unroll(const LassoWord& w, std::size_t stem_len, std::size_t loop_len) {
  LassoWord out;
  for (std::size_t i = 0; i < stem_len; ++i) out.stem.push_back(w.at(i));
  for (std::size_t i = 0; i < loop_len; ++i) out.loop.push_back(w.at(stem_len + i));
  return out;
}

std::pair<LassoWord, LassoWord> align(const LassoWord& a, const LassoWord& b) {
  std::size_t stem = std::max(a.stem.size(), b.stem.size());
  std::size_t loop = std::lcm(a.loop.size(), b.loop.size());
  return {unroll(a, stem, loop), unroll(b, stem, loop)};
}

LassoWord zip(const LassoWord& a, const LassoWord& b) {
  auto [x, y] = align(a, b);
  LassoWord out;
  auto cat = [](const Symbol& s, const Symbol& t) {
    Symbol r = s;
    r.insert(r.end(), t.begin(), t.end());
    return r;
  };
  for (std::size_t i = 0; i < x.stem.size(); ++i) out.stem.push_back(cat(x.stem[i], y.stem[i]));
  for (std::size_t i = 0; i < x.loop.size(); ++i) out.loop.push_back(cat(x.loop[i], y.loop[i]));
  return out;
}

LassoWord project(const LassoWord& w, const Projection& p) {
  LassoWord out;
  for (const auto& s : w.stem) out.stem.push_back(p.apply(s));
  for (const auto& s : w.loop) out.loop.push_back(p.apply(s));
  return out;
}

}  // namespace qcmp
