#include "qcmp/buchi.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <unordered_map>

#include "graph.hpp"

namespace qcmp {

namespace {

std::vector<std::vector<int>> successor_lists(const BuchiAutomaton& a) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(a.num_states()));
  for (int s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.out(s)) adj[s].push_back(e.dst);
    std::sort(adj[s].begin(), adj[s].end());
    adj[s].erase(std::unique(adj[s].begin(), adj[s].end()), adj[s].end());
  }
  return adj;
}

// Keeps the states flagged in keep, renumbering them in order.
BuchiAutomaton restrict_to(const BuchiAutomaton& a, const std::vector<bool>& keep) {
  AutomatonBuilder b(a.alphabet());
  std::vector<int> map(static_cast<std::size_t>(a.num_states()), -1);
  for (int s = 0; s < a.num_states(); ++s)
    if (keep[s]) map[s] = b.add_state(a.is_initial(s), a.is_accepting(s), a.name(s));
  for (int s = 0; s < a.num_states(); ++s) {
    if (map[s] < 0) continue;
    for (const auto& e : a.out(s))
      if (map[e.dst] >= 0) b.add_transition(map[s], a.letter(e.letter), map[e.dst]);
  }
  return b.build();
}

std::string pair_name(const BuchiAutomaton& a, int p, const BuchiAutomaton& b, int q) {
  if (!a.has_names() || !b.has_names()) return {};
  return "(" + a.name(p) + "," + b.name(q) + ")";
}

// Product of a with b where a-letter i is matched against b-letter bl[i]
// (-1 when b cannot read it). Three-valued flag unless one side accepts
// everywhere.
BuchiAutomaton product(const BuchiAutomaton& a, const BuchiAutomaton& b, const std::vector<int>& bl) {
  AutomatonBuilder out(a.alphabet());
  const bool flagless = a.all_accepting() || b.all_accepting();
  std::unordered_map<std::uint64_t, int> ids;
  std::deque<std::array<int, 3>> todo;
  auto key = [](int p, int q, int f) {
    return (static_cast<std::uint64_t>(p) << 34) | (static_cast<std::uint64_t>(q) << 2) | static_cast<std::uint64_t>(f);
  };
  auto acc = [&](int p, int q, int f) {
    if (flagless) return a.is_accepting(p) && b.is_accepting(q);
    return f == 2;
  };
  auto get = [&](int p, int q, int f, bool init) {
    auto [it, fresh] = ids.try_emplace(key(p, q, f), out.num_states());
    if (fresh) {
      std::string nm = pair_name(a, p, b, q);
      if (!flagless && !nm.empty()) nm += "/" + std::to_string(f);
      out.add_state(init, acc(p, q, f), std::move(nm));
      todo.push_back({p, q, f});
    }
    return it->second;
  };
  for (int p : a.initial())
    for (int q : b.initial()) get(p, q, 0, true);
  while (!todo.empty()) {
    auto [p, q, f] = todo.front();
    todo.pop_front();
    int src = ids.at(key(p, q, f));
    for (const auto& ea : a.out(p)) {
      int l = bl[ea.letter];
      if (l < 0) continue;
      for (const auto& eb : b.out(q, l)) {
        int g = 0;
        if (!flagless) {
          g = f == 2 ? 0 : f;
          if (g == 0 && a.is_accepting(ea.dst)) g = 1;
          if (g == 1 && b.is_accepting(eb.dst)) g = 2;
        }
        int dst = get(ea.dst, eb.dst, g, false);
        out.add_transition(src, a.letter(ea.letter), dst);
      }
    }
  }
  return trim(out.build());
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t BuchiAutomaton::num_transitions() const {
  std::size_t n = 0;
  for (const auto& v : out_) n += v.size();
  return n;
}

int BuchiAutomaton::letter_index(const Symbol& s) const {
  auto it = std::lower_bound(letters_.begin(), letters_.end(), s);
  if (it == letters_.end() || *it != s) return -1;
  return static_cast<int>(it - letters_.begin());
}

std::span<const BuchiAutomaton::Edge> BuchiAutomaton::out(int s, int letter) const {
  const auto& v = out_[static_cast<std::size_t>(s)];
  auto lo = std::lower_bound(v.begin(), v.end(), Edge{letter, -1});
  auto hi = std::lower_bound(lo, v.end(), Edge{letter + 1, -1});
  return {v.data() + (lo - v.begin()), static_cast<std::size_t>(hi - lo)};
}

std::vector<int> BuchiAutomaton::accepting_states() const {
  std::vector<int> out;
  for (int s = 0; s < num_states(); ++s)
    if (accepting_[s]) out.push_back(s);
  return out;
}

bool BuchiAutomaton::all_accepting() const {
  return std::all_of(accepting_.begin(), accepting_.end(), [](bool b) { return b; });
}

const std::string& BuchiAutomaton::name(int s) const {
  static const std::string none;
  return names_.empty() ? none : names_[static_cast<std::size_t>(s)];
}

int AutomatonBuilder::add_state(bool initial, bool accepting, std::string name) {
  initial_.push_back(initial);
  accepting_.push_back(accepting);
  any_name_ = any_name_ || !name.empty();
  names_.push_back(std::move(name));
  return static_cast<int>(accepting_.size()) - 1;
}

void AutomatonBuilder::add_states(int n) {
  for (int i = 0; i < n; ++i) add_state();
}

void AutomatonBuilder::set_initial(int s, bool v) { initial_.at(static_cast<std::size_t>(s)) = v; }
void AutomatonBuilder::set_accepting(int s, bool v) { accepting_.at(static_cast<std::size_t>(s)) = v; }

void AutomatonBuilder::add_transition(int src, const Symbol& sym, int dst) {
  // Endpoints are checked in build(), since states may still be added.
  if (!alphabet_.contains(sym)) throw InputError("symbol " + format_symbol(sym) + " outside the alphabet");
  edges_.push_back({src, sym, dst});
}

BuchiAutomaton AutomatonBuilder::build() const {
  BuchiAutomaton a;
  a.alphabet_ = alphabet_;
  const int n = num_states();
  for (const auto& e : edges_) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) throw InputError("transition endpoint is not a state");
    a.letters_.push_back(e.sym);
  }
  std::sort(a.letters_.begin(), a.letters_.end());
  a.letters_.erase(std::unique(a.letters_.begin(), a.letters_.end()), a.letters_.end());
  a.out_.resize(static_cast<std::size_t>(n));
  for (const auto& e : edges_) a.out_[e.src].push_back({a.letter_index(e.sym), e.dst});
  for (auto& v : a.out_) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  a.initial_mask_ = initial_;
  a.accepting_ = accepting_;
  for (int s = 0; s < n; ++s)
    if (initial_[s]) a.initial_.push_back(s);
  if (any_name_) a.names_ = names_;
  return a;
}

// ---------------------------------------------------------------------------

BuchiAutomaton universal_automaton(const Alphabet& alphabet) {
  AutomatonBuilder b(alphabet);
  int s = b.add_state(true, true);
  for (const auto& sym : alphabet.enumerate()) b.add_transition(s, sym, s);
  return b.build();
}

BuchiAutomaton empty_automaton(const Alphabet& alphabet) { return AutomatonBuilder(alphabet).build(); }

BuchiAutomaton lasso_automaton(const Alphabet& alphabet, const LassoWord& w) {
  AutomatonBuilder b(alphabet);
  const std::size_t n = w.length();
  for (std::size_t i = 0; i < n; ++i) b.add_state(i == 0, true);
  for (std::size_t i = 0; i < n; ++i) b.add_transition(static_cast<int>(i), w.at(i), static_cast<int>(w.next(i)));
  return b.build();
}

BuchiAutomaton trim(const BuchiAutomaton& a) {
  auto adj = successor_lists(a);
  auto reach = detail::reachable(adj, a.initial());
  auto sc = detail::scc(adj, a.initial());
  std::vector<bool> good_comp(static_cast<std::size_t>(sc.count), false);
  for (int s = 0; s < a.num_states(); ++s)
    if (reach[s] && a.is_accepting(s) && sc.nontrivial[sc.comp[s]]) good_comp[sc.comp[s]] = true;
  std::vector<int> good;
  for (int s = 0; s < a.num_states(); ++s)
    if (reach[s] && good_comp[sc.comp[s]]) good.push_back(s);
  auto co = detail::reachable(detail::reverse(adj), good);
  std::vector<bool> keep(static_cast<std::size_t>(a.num_states()));
  bool all = true;
  for (int s = 0; s < a.num_states(); ++s) {
    keep[s] = reach[s] && co[s];
    all = all && keep[s];
  }
  if (all) return a;
  return restrict_to(a, keep);
}

BuchiAutomaton union_of(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("union: alphabet mismatch");
  AutomatonBuilder out(a.alphabet());
  for (int s = 0; s < a.num_states(); ++s) out.add_state(a.is_initial(s), a.is_accepting(s), a.name(s));
  const int off = a.num_states();
  for (int s = 0; s < b.num_states(); ++s) out.add_state(b.is_initial(s), b.is_accepting(s), b.name(s));
  for (int s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.out(s)) out.add_transition(s, a.letter(e.letter), e.dst);
  for (int s = 0; s < b.num_states(); ++s)
    for (const auto& e : b.out(s)) out.add_transition(off + s, b.letter(e.letter), off + e.dst);
  return trim(out.build());
}

BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("intersect: alphabet mismatch");
  std::vector<int> bl;
  for (const auto& s : a.letters()) bl.push_back(b.letter_index(s));
  return product(a, b, bl);
}

BuchiAutomaton intersect_on(const BuchiAutomaton& a, const BuchiAutomaton& b, const Projection& proj) {
  std::vector<int> bl;
  for (const auto& s : a.letters()) {
    Symbol t = proj.apply(s);
    if (!b.alphabet().contains(t))
      throw InputError("intersect_on: projected symbol " + format_symbol(t) + " outside the second alphabet");
    bl.push_back(b.letter_index(t));
  }
  return product(a, b, bl);
}

BuchiAutomaton project(const BuchiAutomaton& a, const Projection& proj) {
  AutomatonBuilder out(proj.apply(a.alphabet()));
  for (int s = 0; s < a.num_states(); ++s) out.add_state(a.is_initial(s), a.is_accepting(s), a.name(s));
  std::vector<Symbol> mapped;
  for (const auto& l : a.letters()) mapped.push_back(proj.apply(l));
  for (int s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.out(s)) out.add_transition(s, mapped[e.letter], e.dst);
  return trim(out.build());
}

// ---------------------------------------------------------------------------

namespace {

// Product of a with the single-word automaton of w; node = state * L + position.
struct WordProduct {
  int L;
  std::vector<std::vector<int>> adj;
  std::vector<int> roots;
};

WordProduct word_product(const BuchiAutomaton& a, const LassoWord& w) {
  if (w.arity() != a.alphabet().arity) throw InputError("accepts_lasso: arity mismatch");
  WordProduct p;
  p.L = static_cast<int>(w.length());
  const int L = p.L, n = a.num_states();
  std::vector<int> li(static_cast<std::size_t>(L));
  for (int i = 0; i < L; ++i) li[i] = a.letter_index(w.at(static_cast<std::size_t>(i)));
  p.adj.assign(static_cast<std::size_t>(n) * L, {});
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < L; ++i) {
      if (li[i] < 0) continue;
      int j = static_cast<int>(w.next(static_cast<std::size_t>(i)));
      for (const auto& e : a.out(q, li[i])) p.adj[q * L + i].push_back(e.dst * L + j);
    }
  for (int q : a.initial()) p.roots.push_back(q * L);
  return p;
}

int accepting_cycle_node(const BuchiAutomaton& a, const WordProduct& p) {
  auto sc = detail::scc(p.adj, p.roots);
  for (int v = 0; v < static_cast<int>(p.adj.size()); ++v)
    if (sc.comp[v] >= 0 && sc.nontrivial[sc.comp[v]] && a.is_accepting(v / p.L)) return v;
  return -1;
}

// Shortest node path from any of `from` to `to` (at least one edge when
// from == {to}).
std::vector<int> node_path(const std::vector<std::vector<int>>& adj, const std::vector<int>& from, int to, bool nonempty) {
  std::vector<int> parent(adj.size(), -2);
  std::deque<int> q;
  for (int s : from)
    if (parent[s] == -2) {
      parent[s] = -1;
      q.push_back(s);
    }
  if (!nonempty && parent[to] == -1) return {to};
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t : adj[s]) {
      if (t == to && nonempty) {
        std::vector<int> path{t};
        for (int c = s; c >= 0; c = parent[c]) path.push_back(c);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (parent[t] != -2) continue;
      parent[t] = s;
      if (t == to) {
        std::vector<int> path;
        for (int c = t; c >= 0; c = parent[c]) path.push_back(c);
        std::reverse(path.begin(), path.end());
        return path;
      }
      q.push_back(t);
    }
  }
  return {};
}

}  // namespace

bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w) {
  const auto p = word_product(a, w);
  return accepting_cycle_node(a, p) >= 0;
}

std::optional<std::vector<int>> accepting_run(const BuchiAutomaton& a, const LassoWord& w, std::size_t length) {
  const auto p = word_product(a, w);
  const int v = accepting_cycle_node(a, p);
  if (v < 0) return std::nullopt;
  auto stem = node_path(p.adj, p.roots, v, false);   // ends at v
  const auto cycle = node_path(p.adj, {v}, v, true);  // v ... v
  std::vector<int> run;
  for (int x : stem) run.push_back(x / p.L);
  while (run.size() <= length)
    for (std::size_t i = 1; i < cycle.size(); ++i) run.push_back(cycle[i] / p.L);
  run.resize(length + 1);
  return run;
}

std::optional<LassoWord> is_empty(const BuchiAutomaton& a) {
  auto adj = successor_lists(a);
  auto sc = detail::scc(adj, a.initial());
  int target = -1;
  for (int s = 0; s < a.num_states() && target < 0; ++s)
    if (sc.comp[s] >= 0 && sc.nontrivial[sc.comp[s]] && a.is_accepting(s)) target = s;
  if (target < 0) return std::nullopt;

  // Shortest paths with successors explored in (letter, target) order.
  auto bfs = [&](const std::vector<int>& from, int to, bool skip_self) {
    std::vector<int> parent(static_cast<std::size_t>(a.num_states()), -2), via(static_cast<std::size_t>(a.num_states()), -1);
    std::deque<int> q;
    for (int s : from) {
      if (parent[s] != -2) continue;
      parent[s] = -1;
      q.push_back(s);
    }
    std::vector<Symbol> path;
    if (!skip_self && parent[to] == -1) return path;
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (const auto& e : a.out(s)) {
        if (e.dst == to && skip_self) {
          path.push_back(a.letter(e.letter));
          for (int c = s; parent[c] >= 0; c = parent[c]) path.push_back(a.letter(via[c]));
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (parent[e.dst] != -2) continue;
        parent[e.dst] = s;
        via[e.dst] = e.letter;
        if (e.dst == to) {
          for (int c = to; parent[c] >= 0; c = parent[c]) path.push_back(a.letter(via[c]));
          std::reverse(path.begin(), path.end());
          return path;
        }
        q.push_back(e.dst);
      }
    }
    return path;
  };
  LassoWord w;
  w.stem = bfs(a.initial(), target, false);
  w.loop = bfs({target}, target, true);
  return w;
}

bool is_weak(const BuchiAutomaton& a) {
  auto sc = detail::scc(successor_lists(a));
  std::vector<int> kind(static_cast<std::size_t>(sc.count), -1);
  for (int s = 0; s < a.num_states(); ++s) {
    int c = sc.comp[s];
    if (!sc.nontrivial[c]) continue;
    int k = a.is_accepting(s) ? 1 : 0;
    if (kind[c] >= 0 && kind[c] != k) return false;
    kind[c] = k;
  }
  return true;
}

bool contains(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("contains: alphabet mismatch");
  return !difference_witness(a, b).has_value();
}

bool equivalent(const BuchiAutomaton& a, const BuchiAutomaton& b) { return contains(a, b) && contains(b, a); }

// ---------------------------------------------------------------------------

bool isomorphic(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  const int n = a.num_states();
  if (n != b.num_states() || a.letters() != b.letters() || a.num_transitions() != b.num_transitions()) return false;
  auto cyclic = [](const BuchiAutomaton& x) {
    auto sc = detail::scc(successor_lists(x));
    std::vector<bool> c(static_cast<std::size_t>(x.num_states()));
    for (int s = 0; s < x.num_states(); ++s) c[s] = sc.nontrivial[sc.comp[s]];
    return c;
  };
  auto ca = cyclic(a), cb = cyclic(b);
  auto sig = [](const BuchiAutomaton& x, const std::vector<bool>& cyc, int s) {
    std::vector<int> letters;
    for (const auto& e : x.out(s)) letters.push_back(e.letter);
    return std::tuple(x.is_initial(s), cyc[s] && x.is_accepting(s), letters);
  };
  std::vector<int> map(static_cast<std::size_t>(n), -1), inv(static_cast<std::size_t>(n), -1);
  auto consistent = [&](int s) {
    // Edges between s and already mapped states must agree in both directions.
    for (const auto& e : a.out(s)) {
      if (map[e.dst] < 0) continue;
      auto r = b.out(map[s], e.letter);
      if (std::none_of(r.begin(), r.end(), [&](const auto& f) { return f.dst == map[e.dst]; })) return false;
    }
    for (const auto& f : b.out(map[s])) {
      if (inv[f.dst] < 0) continue;
      auto r = a.out(s, f.letter);
      if (std::none_of(r.begin(), r.end(), [&](const auto& e) { return e.dst == inv[f.dst]; })) return false;
    }
    for (int t = 0; t < n; ++t) {
      if (map[t] < 0 || t == s) continue;
      for (const auto& e : a.out(t)) {
        if (e.dst != s) continue;
        auto r = b.out(map[t], e.letter);
        if (std::none_of(r.begin(), r.end(), [&](const auto& f) { return f.dst == map[s]; })) return false;
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, int s) -> bool {
    if (s == n) return true;
    auto want = sig(a, ca, s);
    for (int t = 0; t < n; ++t) {
      if (inv[t] >= 0 || sig(b, cb, t) != want) continue;
      map[s] = t;
      inv[t] = s;
      if (consistent(s) && self(self, s + 1)) return true;
      map[s] = -1;
      inv[t] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace qcmp
