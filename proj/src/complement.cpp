#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>

#include "bits.hpp"
#include "qcmp/buchi.hpp"

namespace qcmp {

namespace {

using detail::Bits;
using detail::BitsHash;

constexpr std::size_t kStateLimit = 2'000'000;

void check_limit(const AutomatonBuilder& b) {
  if (static_cast<std::size_t>(b.num_states()) > kStateLimit) throw std::length_error("complement: state limit exceeded");
}

std::vector<int> letter_map(const BuchiAutomaton& a, const std::vector<Symbol>& letters) {
  std::vector<int> m;
  for (const auto& s : letters) m.push_back(a.letter_index(s));
  return m;
}

// ---- rank-based ----------------------------------------------------------

struct Ranked {
  std::uint64_t S = 0, O = 0;
  std::vector<std::uint8_t> rank;  // per state, kNoRank outside S
};
constexpr std::uint8_t kNoRank = 0xff;

std::string ranked_key(const Ranked& r) {
  std::string k(reinterpret_cast<const char*>(&r.S), 8);
  k.append(reinterpret_cast<const char*>(&r.O), 8);
  for (int q = 0; q < static_cast<int>(r.rank.size()); ++q)
    if ((r.S >> q) & 1) k.push_back(static_cast<char>(r.rank[q]));
  return k;
}

// Calls emit(rank) for every tight ranking of the states in S with max rank
// exactly r: values bounded by bound[q], accepting states even, every odd
// value 1..r used.
template <class F>
void tight_rankings(int n, std::uint64_t S, std::uint64_t acc, const std::vector<int>& bound, int r, F&& emit) {
  std::vector<int> qs;
  for (int q = 0; q < n; ++q)
    if ((S >> q) & 1) qs.push_back(q);
  const int odd_count = (r + 1) / 2;
  if (odd_count > static_cast<int>(qs.size())) return;
  const std::uint64_t full = odd_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << odd_count) - 1;
  std::vector<std::uint8_t> cur(static_cast<std::size_t>(n), kNoRank);
  auto rec = [&](auto&& self, std::size_t i, std::uint64_t used) -> void {
    int missing = odd_count - std::popcount(used);
    if (missing > static_cast<int>(qs.size() - i)) return;
    if (i == qs.size()) {
      if (used == full) emit(cur);
      return;
    }
    int q = qs[i];
    int hi = std::min(bound[q], r);
    bool is_acc = (acc >> q) & 1;
    for (int v = 0; v <= hi; ++v) {
      if (is_acc && (v & 1)) continue;
      cur[q] = static_cast<std::uint8_t>(v);
      self(self, i + 1, (v & 1) ? used | (std::uint64_t{1} << (v / 2)) : used);
    }
    cur[q] = kNoRank;
  };
  rec(rec, 0, 0);
}

}  // namespace

BuchiAutomaton complement(const BuchiAutomaton& a) { return complement(a, a.alphabet().enumerate()); }

BuchiAutomaton complement(const BuchiAutomaton& a, const std::vector<Symbol>& letters) {
  const int n = a.num_states();
  if (n > 64) throw std::length_error("complement: rank-based construction limited to 64 states");
  const int k = static_cast<int>(letters.size());
  const auto lm = letter_map(a, letters);
  std::vector<std::vector<std::uint64_t>> post(static_cast<std::size_t>(n), std::vector<std::uint64_t>(k, 0));
  std::uint64_t acc = 0;
  for (int q = 0; q < n; ++q) {
    if (a.is_accepting(q)) acc |= std::uint64_t{1} << q;
    for (int i = 0; i < k; ++i)
      if (lm[i] >= 0)
        for (const auto& e : a.out(q, lm[i])) post[q][i] |= std::uint64_t{1} << e.dst;
  }
  auto image = [&](std::uint64_t S, int i) {
    std::uint64_t r = 0;
    for (; S; S &= S - 1) r |= post[std::countr_zero(S)][i];
    return r;
  };
  auto evens = [&](const std::vector<std::uint8_t>& rank, std::uint64_t S) {
    std::uint64_t r = 0;
    for (int q = 0; q < n; ++q)
      if (((S >> q) & 1) && !(rank[q] & 1)) r |= std::uint64_t{1} << q;
    return r;
  };

  AutomatonBuilder out(a.alphabet());
  std::unordered_map<std::uint64_t, int> subset_ids;
  std::unordered_map<std::string, int> ranked_ids;
  std::deque<std::pair<bool, int>> todo;  // (ranked?, index into storage)
  std::vector<std::uint64_t> subsets;
  std::vector<Ranked> rankeds;
  std::vector<int> subset_state, ranked_state;

  int sink = out.add_state(false, true);
  for (const auto& l : letters) out.add_transition(sink, l, sink);

  auto subset = [&](std::uint64_t S, bool init) {
    if (S == 0) {
      if (init) out.set_initial(sink);
      return sink;
    }
    auto [it, fresh] = subset_ids.try_emplace(S, 0);
    if (fresh) {
      it->second = out.add_state(init, false);
      subsets.push_back(S);
      subset_state.push_back(it->second);
      todo.push_back({false, static_cast<int>(subsets.size()) - 1});
    }
    return it->second;
  };
  auto ranked = [&](Ranked&& r) {
    auto [it, fresh] = ranked_ids.try_emplace(ranked_key(r), 0);
    if (fresh) {
      it->second = out.add_state(false, r.O == 0);
      rankeds.push_back(std::move(r));
      ranked_state.push_back(it->second);
      todo.push_back({true, static_cast<int>(rankeds.size()) - 1});
      check_limit(out);
    }
    return it->second;
  };

  std::uint64_t init = 0;
  for (int q : a.initial()) init |= std::uint64_t{1} << q;
  subset(init, true);

  const std::vector<int> no_bound(static_cast<std::size_t>(n), 2 * n);
  std::vector<int> bound(static_cast<std::size_t>(n));
  while (!todo.empty()) {
    auto [is_ranked, idx] = todo.front();
    todo.pop_front();
    if (!is_ranked) {
      std::uint64_t S = subsets[idx];
      int src = subset_state[idx];
      for (int i = 0; i < k; ++i) {
        std::uint64_t T = image(S, i);
        out.add_transition(src, letters[i], subset(T, false));
        if (T == 0) continue;
        for (int r = 1; r <= 2 * std::popcount(T) - 1; r += 2)
          tight_rankings(n, T, acc, no_bound, r, [&](const std::vector<std::uint8_t>& rank) {
            out.add_transition(src, letters[i], ranked(Ranked{T, evens(rank, T), rank}));
          });
      }
    } else {
      const Ranked cur = rankeds[idx];
      int src = ranked_state[idx];
      int r = 0;
      for (int q = 0; q < n; ++q)
        if ((cur.S >> q) & 1) r = std::max(r, static_cast<int>(cur.rank[q]));
      for (int i = 0; i < k; ++i) {
        std::uint64_t T = image(cur.S, i);
        if (T == 0) {
          out.add_transition(src, letters[i], sink);
          continue;
        }
        std::fill(bound.begin(), bound.end(), 2 * n);
        for (int q = 0; q < n; ++q) {
          if (!((cur.S >> q) & 1)) continue;
          for (std::uint64_t m = post[q][i]; m; m &= m - 1) {
            int t = std::countr_zero(m);
            bound[t] = std::min(bound[t], static_cast<int>(cur.rank[q]));
          }
        }
        std::uint64_t OT = cur.O ? image(cur.O, i) : 0;
        tight_rankings(n, T, acc, bound, r, [&](const std::vector<std::uint8_t>& rank) {
          std::uint64_t ev = evens(rank, T);
          out.add_transition(src, letters[i], ranked(Ranked{T, cur.O ? (OT & ev) : ev, rank}));
        });
      }
    }
  }
  return trim(out.build());
}

// ---- breakpoint (weak automata) -------------------------------------------

BuchiAutomaton complement_weak(const BuchiAutomaton& a, const std::vector<Symbol>& letters) {
  const int n = a.num_states();
  const int k = static_cast<int>(letters.size());
  const auto lm = letter_map(a, letters);
  Bits rejecting(n);
  for (int q = 0; q < n; ++q)
    if (!a.is_accepting(q)) rejecting.set(q);
  auto image = [&](const Bits& S, int i) {
    Bits r(n);
    if (lm[i] < 0) return r;
    S.for_each([&](int q) {
      for (const auto& e : a.out(q, lm[i])) r.set(e.dst);
    });
    return r;
  };
  struct Key {
    Bits S, O;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return BitsHash{}(k.S) * 31 + BitsHash{}(k.O); }
  };
  AutomatonBuilder out(a.alphabet());
  std::unordered_map<Key, int, KeyHash> ids;
  std::vector<Key> keys;
  std::deque<int> todo;
  auto get = [&](Key&& key, bool init) {
    auto [it, fresh] = ids.try_emplace(key, 0);
    if (fresh) {
      it->second = out.add_state(init, key.O.none());
      keys.push_back(std::move(key));
      todo.push_back(it->second);
      check_limit(out);
    }
    return it->second;
  };
  Bits init(n);
  for (int q : a.initial()) init.set(q);
  get(Key{init, init.minus(rejecting)}, true);
  while (!todo.empty()) {
    int src = todo.front();
    todo.pop_front();
    const Key cur = keys[src];
    for (int i = 0; i < k; ++i) {
      Bits T = image(cur.S, i);
      Bits O = cur.O.none() ? T : image(cur.O, i);
      out.add_transition(src, letters[i], get(Key{T, O.minus(rejecting)}, false));
    }
  }
  return trim(out.build());
}

// ---- transition monoid ----------------------------------------------------

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) h = (h ^ x) * 0x100000001b3ULL ^ (h >> 29);
    return h;
  }
};

// Profiles of finite nonempty words: for each pair (p, q), whether some path
// p -> q exists and whether one of them enters an accepting state.
struct Monoid {
  int n = 0, W = 0;
  std::vector<std::vector<std::uint64_t>> elems;
  std::unordered_map<std::vector<std::uint64_t>, int, VecHash> ids;
  std::vector<int> parent, via;        // element = parent * letter(via); parent -1 for letters
  std::vector<std::vector<int>> next;  // right multiplication by letters
};

struct MonoidBuilder {
  int n, W, k;
  std::vector<std::vector<std::uint64_t>> letter_elems;
  // Restrict attention to elements with some row among [keep_lo, keep_hi) nonempty.
  int keep_lo = 0, keep_hi = 0;

  const std::uint64_t* reach(const std::vector<std::uint64_t>& e, int i) const { return e.data() + static_cast<std::size_t>(i) * W; }
  const std::uint64_t* accr(const std::vector<std::uint64_t>& e, int i) const {
    return e.data() + static_cast<std::size_t>(n + i) * W;
  }

  std::vector<std::uint64_t> compose(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) const {
    std::vector<std::uint64_t> z(static_cast<std::size_t>(2 * n) * W, 0);
    for (int i = 0; i < n; ++i) {
      std::uint64_t* zr = z.data() + static_cast<std::size_t>(i) * W;
      std::uint64_t* za = z.data() + static_cast<std::size_t>(n + i) * W;
      const std::uint64_t* xr = reach(x, i);
      const std::uint64_t* xa = accr(x, i);
      for (int b = 0; b < W; ++b) {
        for (std::uint64_t m = xr[b]; m; m &= m - 1) {
          int j = b * 64 + std::countr_zero(m);
          const std::uint64_t* yr = reach(y, j);
          const std::uint64_t* ya = accr(y, j);
          bool xacc = (xa[b] >> (j & 63)) & 1;
          for (int c = 0; c < W; ++c) {
            zr[c] |= yr[c];
            za[c] |= ya[c] | (xacc ? yr[c] : 0);
          }
        }
      }
    }
    return z;
  }

  bool kept(const std::vector<std::uint64_t>& e) const {
    if (keep_hi <= keep_lo) return true;
    for (int i = keep_lo; i < keep_hi; ++i) {
      const std::uint64_t* r = reach(e, i);
      for (int c = 0; c < W; ++c)
        if (r[c]) return true;
    }
    return false;
  }

  Monoid close() const {
    Monoid m;
    m.n = n;
    m.W = W;
    std::deque<int> todo;
    auto add = [&](std::vector<std::uint64_t>&& e, int parent, int via) {
      if (!kept(e)) return -1;
      auto [it, fresh] = m.ids.try_emplace(e, static_cast<int>(m.elems.size()));
      if (fresh) {
        m.elems.push_back(std::move(e));
        m.parent.push_back(parent);
        m.via.push_back(via);
        m.next.emplace_back(k, -1);
        todo.push_back(it->second);
        if (m.elems.size() > kStateLimit / 4) throw std::length_error("transition monoid too large");
      }
      return it->second;
    };
    std::vector<int> letter_ids(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      auto e = letter_elems[i];
      letter_ids[i] = add(std::move(e), -1, i);
    }
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop_front();
      for (int i = 0; i < k; ++i) {
        int id = add(compose(m.elems[x], letter_elems[i]), x, i);
        m.next[x][i] = id;
      }
    }
    return m;
  }
};

MonoidBuilder monoid_of(const std::vector<const BuchiAutomaton*>& parts, const std::vector<Symbol>& letters) {
  MonoidBuilder mb;
  mb.n = 0;
  for (auto* p : parts) mb.n += p->num_states();
  mb.W = std::max(1, (mb.n + 63) / 64);
  mb.k = static_cast<int>(letters.size());
  for (const auto& l : letters) {
    std::vector<std::uint64_t> e(static_cast<std::size_t>(2 * mb.n) * mb.W, 0);
    int off = 0;
    for (auto* p : parts) {
      int li = p->letter_index(l);
      if (li >= 0)
        for (int q = 0; q < p->num_states(); ++q)
          for (const auto& ed : p->out(q, li)) {
            int j = off + ed.dst;
            e[static_cast<std::size_t>(off + q) * mb.W + j / 64] |= std::uint64_t{1} << (j & 63);
            if (p->is_accepting(ed.dst))
              e[static_cast<std::size_t>(mb.n + off + q) * mb.W + j / 64] |= std::uint64_t{1} << (j & 63);
          }
      off += p->num_states();
    }
    mb.letter_elems.push_back(std::move(e));
  }
  return mb;
}

std::vector<Symbol> word_of(const Monoid& m, int id, const std::vector<Symbol>& letters) {
  std::vector<Symbol> w;
  for (int c = id; c >= 0; c = m.parent[c]) w.push_back(letters[m.via[c]]);
  std::reverse(w.begin(), w.end());
  return w;
}

// States from which an accepting h-loop is reachable through h.
Bits good_starts(const MonoidBuilder& mb, const std::vector<std::uint64_t>& h) {
  Bits loopers(mb.n), good(mb.n);
  for (int t = 0; t < mb.n; ++t)
    if ((mb.accr(h, t)[t / 64] >> (t & 63)) & 1) loopers.set(t);
  for (int t = 0; t < mb.n; ++t) {
    const std::uint64_t* r = mb.reach(h, t);
    for (int c = 0; c < mb.W; ++c)
      if (r[c] & loopers.w[c]) {
        good.set(t);
        break;
      }
  }
  return good;
}

std::vector<int> idempotents(const MonoidBuilder& mb, const Monoid& m) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(m.elems.size()); ++i)
    if (mb.compose(m.elems[i], m.elems[i]) == m.elems[i]) out.push_back(i);
  return out;
}

// Subset construction over the union of parts from its initial states;
// returns reachable subsets with BFS parents.
struct Prefixes {
  std::vector<Bits> sets;
  std::vector<int> parent, via;
};

Prefixes prefix_subsets(const std::vector<const BuchiAutomaton*>& parts, const std::vector<Symbol>& letters, int keep_lo,
                        int keep_hi, bool keep_empty) {
  int n = 0;
  for (auto* p : parts) n += p->num_states();
  std::vector<std::vector<int>> lm;
  for (auto* p : parts) lm.push_back(letter_map(*p, letters));
  Prefixes px;
  std::unordered_map<Bits, int, BitsHash> ids;
  std::deque<int> todo;
  auto add = [&](Bits&& b, int parent, int via) {
    bool live = keep_empty;
    for (int i = keep_lo; i < keep_hi && !live; ++i) live = b.test(i);
    if (!live && keep_hi > keep_lo) return;
    auto [it, fresh] = ids.try_emplace(b, static_cast<int>(px.sets.size()));
    if (!fresh) return;
    px.sets.push_back(std::move(b));
    px.parent.push_back(parent);
    px.via.push_back(via);
    todo.push_back(it->second);
  };
  Bits init(n);
  int off = 0;
  for (auto* p : parts) {
    for (int q : p->initial()) init.set(off + q);
    off += p->num_states();
  }
  add(std::move(init), -1, -1);
  while (!todo.empty()) {
    int x = todo.front();
    todo.pop_front();
    for (int i = 0; i < static_cast<int>(letters.size()); ++i) {
      Bits t(n);
      int o = 0;
      for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const auto* p = parts[pi];
        if (lm[pi][i] >= 0)
          for (int q = 0; q < p->num_states(); ++q)
            if (px.sets[x].test(o + q))
              for (const auto& e : p->out(q, lm[pi][i])) t.set(o + e.dst);
        o += p->num_states();
      }
      add(std::move(t), x, i);
    }
  }
  return px;
}

std::vector<Symbol> prefix_word(const Prefixes& px, int id, const std::vector<Symbol>& letters) {
  std::vector<Symbol> w;
  for (int c = id; px.parent[c] >= 0; c = px.parent[c]) w.push_back(letters[px.via[c]]);
  std::reverse(w.begin(), w.end());
  return w;
}

}  // namespace

BuchiAutomaton complement_ramsey(const BuchiAutomaton& a, const std::vector<Symbol>& letters) {
  const int k = static_cast<int>(letters.size());
  auto mb = monoid_of({&a}, letters);
  Monoid m = mb.close();
  auto idem = idempotents(mb, m);
  std::vector<Bits> good;
  for (int h : idem) good.push_back(good_starts(mb, m.elems[h]));
  auto px = prefix_subsets({&a}, letters, 0, 0, true);

  // Elements that can still be extended to h, per idempotent.
  const int M = static_cast<int>(m.elems.size());
  std::vector<std::vector<int>> prev(static_cast<std::size_t>(M));
  for (int x = 0; x < M; ++x)
    for (int i = 0; i < k; ++i) prev[m.next[x][i]].push_back(x);

  AutomatonBuilder out(a.alphabet());
  std::vector<int> phase1;
  for (std::size_t i = 0; i < px.sets.size(); ++i) phase1.push_back(out.add_state(i == 0, false));

  std::vector<std::vector<int>> block(idem.size());  // element -> state, -1 if not coreachable
  std::vector<int> boundary(idem.size(), -1);
  for (std::size_t hi = 0; hi < idem.size(); ++hi) {
    bool used = false;
    for (const auto& s : px.sets) used = used || !s.intersects(good[hi]);
    if (!used) continue;
    std::vector<int> st(static_cast<std::size_t>(M), -1);
    std::deque<int> todo{idem[hi]};
    st[idem[hi]] = out.add_state();
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop_front();
      for (int y : prev[x])
        if (st[y] < 0) {
          st[y] = out.add_state();
          todo.push_back(y);
        }
    }
    boundary[hi] = out.add_state(false, true);
    block[hi] = std::move(st);
    check_limit(out);
  }
  // Block transitions.
  for (std::size_t hi = 0; hi < idem.size(); ++hi) {
    if (boundary[hi] < 0) continue;
    const int h = idem[hi];
    auto enter = [&](int from, int i, int elem) {
      if (block[hi][elem] >= 0) out.add_transition(from, letters[i], block[hi][elem]);
      if (elem == h) out.add_transition(from, letters[i], boundary[hi]);
    };
    for (int i = 0; i < k; ++i) {
      int le = m.ids.at(mb.letter_elems[i]);
      enter(boundary[hi], i, le);
    }
    for (int x = 0; x < M; ++x)
      if (block[hi][x] >= 0)
        for (int i = 0; i < k; ++i) enter(block[hi][x], i, m.next[x][i]);
    for (std::size_t p = 0; p < px.sets.size(); ++p)
      if (!px.sets[p].intersects(good[hi]))
        for (int i = 0; i < k; ++i) enter(phase1[p], i, m.ids.at(mb.letter_elems[i]));
  }
  // Subset phase.
  std::unordered_map<Bits, int, BitsHash> pid;
  for (std::size_t p = 0; p < px.sets.size(); ++p) pid[px.sets[p]] = static_cast<int>(p);
  const auto lm = letter_map(a, letters);
  for (std::size_t p = 0; p < px.sets.size(); ++p)
    for (int i = 0; i < k; ++i) {
      Bits t(a.num_states());
      if (lm[i] >= 0)
        px.sets[p].for_each([&](int q) {
          for (const auto& e : a.out(q, lm[i])) t.set(e.dst);
        });
      out.add_transition(phase1[p], letters[i], phase1[pid.at(t)]);
    }
  return trim(out.build());
}

BuchiAutomaton difference(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("difference: alphabet mismatch");
  if (is_weak(b)) return intersect(a, complement_weak(b, a.letters()));
  return intersect(a, complement_ramsey(b, a.letters()));
}

std::optional<LassoWord> difference_witness(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("difference: alphabet mismatch");
  if (is_weak(b)) return is_empty(intersect(a, complement_weak(b, a.letters())));

  // Lasso search over the disjoint union a+b: a counterexample is a prefix
  // subset P and an idempotent loop class h such that a accepts P.h^omega and
  // b does not.
  const auto& letters = a.letters();
  const int na = a.num_states();
  auto mb = monoid_of({&a, &b}, letters);
  mb.keep_lo = 0;
  mb.keep_hi = na;
  Monoid m = mb.close();
  auto idem = idempotents(mb, m);
  auto px = prefix_subsets({&a, &b}, letters, 0, na, false);
  Bits a_part(mb.n), b_part(mb.n);
  for (int i = 0; i < mb.n; ++i) (i < na ? a_part : b_part).set(i);

  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::size_t best_len = 0;
  std::vector<std::size_t> depth(px.sets.size(), 0);
  for (std::size_t p = 1; p < px.sets.size(); ++p) depth[p] = depth[px.parent[p]] + 1;
  std::vector<std::size_t> elen(m.elems.size(), 1);
  for (std::size_t x = 0; x < m.elems.size(); ++x)
    if (m.parent[x] >= 0) elen[x] = elen[m.parent[x]] + 1;

  for (int h : idem) {
    Bits g = good_starts(mb, m.elems[h]);
    Bits ga = g, gb = g;
    ga &= a_part;
    gb &= b_part;
    if (ga.none()) continue;
    for (std::size_t p = 0; p < px.sets.size(); ++p) {
      if (!px.sets[p].intersects(ga) || px.sets[p].intersects(gb)) continue;
      std::size_t len = depth[p] + elen[h];
      if (!best || len < best_len) {
        best = {p, static_cast<std::size_t>(h)};
        best_len = len;
      }
    }
  }
  if (!best) return std::nullopt;
  return LassoWord{prefix_word(px, static_cast<int>(best->first), letters),
                   word_of(m, static_cast<int>(best->second), letters)};
}

std::optional<LassoWord> difference_witness_ranked(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("difference: alphabet mismatch");
  return is_empty(intersect(a, complement(b, a.letters())));
}

}  // namespace qcmp
