#include "qcmp/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "graph.hpp"

namespace qcmp {

namespace {

int value(const Symbol& s) {
  if (s.size() != 1) throw InputError("expected a unary value sequence");
  return s[0];
}

// sum_i v_i / d^i over a finite block
Rational ds_block(const std::vector<Symbol>& block, int d) {
  Rational acc = 0;
  for (auto it = block.rbegin(); it != block.rend(); ++it) acc = acc / d + value(*it);
  return acc;
}

Rational pow_inv(int d, std::size_t n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), n);
  return Rational(1, 1) / Rational(p);
}

}  // namespace

Rational ds_lasso(const LassoWord& w, int d) {
  if (d < 2) throw InputError("discount factor must be an integer >= 2");
  if (w.loop.empty()) throw InputError("empty loop");
  Rational loop = ds_block(w.loop, d) / (1 - pow_inv(d, w.loop.size()));
  Rational r = ds_block(w.stem, d) + pow_inv(d, w.stem.size()) * loop;
  r.canonicalize();
  return r;
}

int limsup_lasso(const LassoWord& w) {
  int m = value(w.loop.at(0));
  for (const auto& s : w.loop) m = std::max(m, value(s));
  return m;
}

int liminf_lasso(const LassoWord& w) {
  int m = value(w.loop.at(0));
  for (const auto& s : w.loop) m = std::min(m, value(s));
  return m;
}

Rational limit_average_lasso(const LassoWord& w) {
  long long sum = 0;
  for (const auto& s : w.loop) sum += value(s);
  Rational r(static_cast<long>(sum), static_cast<long>(w.loop.size()));
  r.canonicalize();
  return r;
}

bool prefix_average_ge_lasso(const LassoWord& a, const LassoWord& b) {
  auto [x, y] = align(a, b);
  long long s = 0;
  for (std::size_t i = 0; i < x.stem.size(); ++i) s += value(x.stem[i]) - value(y.stem[i]);
  std::vector<long long> period;
  long long delta = 0;
  for (std::size_t i = 0; i < x.loop.size(); ++i) {
    delta += value(x.loop[i]) - value(y.loop[i]);
    period.push_back(s + delta);
  }
  // Sums from the stem on are S_stem + k*delta + partial sums; with delta != 0
  // the sign eventually settles, with delta == 0 the period repeats exactly.
  bool finitely_many_b_ge_a, infinitely_many_a_ge_b;
  if (delta > 0) {
    finitely_many_b_ge_a = infinitely_many_a_ge_b = true;
  } else if (delta < 0) {
    finitely_many_b_ge_a = infinitely_many_a_ge_b = false;
  } else {
    finitely_many_b_ge_a = std::all_of(period.begin(), period.end(), [](long long v) { return v > 0; });
    infinitely_many_a_ge_b = std::any_of(period.begin(), period.end(), [](long long v) { return v >= 0; });
  }
  return finitely_many_b_ge_a && infinitely_many_a_ge_b;
}

int compare_aggregate(const AggSpec& agg, const LassoWord& a, const LassoWord& b) {
  auto sgn = [](auto v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); };
  switch (agg.kind) {
    case AggKind::LimSup: return sgn(limsup_lasso(a) - limsup_lasso(b));
    case AggKind::LimInf: return sgn(liminf_lasso(a) - liminf_lasso(b));
    case AggKind::DiscountedSum: return sgn(cmp(ds_lasso(a, agg.d), ds_lasso(b, agg.d)));
    case AggKind::PrefixAverage: break;
  }
  throw InputError("prefix average has no total comparison on lassos");
}

namespace {

struct Edge {
  int to;
  std::int64_t w;
};

// Runs of W on w as paths in a graph over (state, position), pruned to nodes
// that start at least one infinite path and are reachable from a root.
struct RunGraph {
  std::vector<std::vector<Edge>> out;
  std::vector<int> roots;
  std::vector<bool> live;
};

RunGraph run_graph(const WeightedAutomaton& W, const LassoWord& w) {
  const std::size_t L = w.length();
  const auto node = [L](int q, std::size_t p) { return static_cast<int>(static_cast<std::size_t>(q) * L + p); };
  RunGraph g;
  const std::size_t n = static_cast<std::size_t>(W.num_states) * L;
  g.out.assign(n, {});
  for (const auto& t : W.transitions)
    for (std::size_t p = 0; p < L; ++p)
      if (w.at(p) == t.sym) g.out[static_cast<std::size_t>(node(t.src, p))].push_back({node(t.dst, w.next(p)), t.weight});
  for (int q : W.initial) g.roots.push_back(node(q, 0));

  std::vector<std::vector<int>> adj(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& e : g.out[v]) adj[v].push_back(e.to);
  const auto reach = detail::reachable(adj, g.roots);
  const auto s = detail::scc(adj);
  std::vector<int> cyclic;
  for (std::size_t v = 0; v < n; ++v)
    if (s.nontrivial[static_cast<std::size_t>(s.comp[v])]) cyclic.push_back(static_cast<int>(v));
  const auto co = detail::reachable(detail::reverse(adj), cyclic);
  g.live.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) g.live[v] = reach[v] && co[v];
  for (std::size_t v = 0; v < n; ++v) {
    auto& es = g.out[v];
    es.erase(std::remove_if(es.begin(), es.end(), [&](const Edge& e) { return !g.live[static_cast<std::size_t>(e.to)]; }),
             es.end());
  }
  std::erase_if(g.roots, [&](int r) { return !g.live[static_cast<std::size_t>(r)]; });
  return g;
}

// Does the subgraph on `nodes` with edges passing `keep` contain a cycle?
template <class Keep>
bool has_cycle(const RunGraph& g, const std::vector<int>& nodes, const std::vector<int>& comp, int c, Keep keep) {
  std::vector<std::vector<int>> adj(g.out.size());
  for (int v : nodes)
    for (const auto& e : g.out[static_cast<std::size_t>(v)])
      if (comp[static_cast<std::size_t>(e.to)] == c && keep(e.w)) adj[static_cast<std::size_t>(v)].push_back(e.to);
  const auto s = detail::scc(adj, nodes);
  for (int v : nodes)
    if (s.nontrivial[static_cast<std::size_t>(s.comp[static_cast<std::size_t>(v)])]) return true;
  return false;
}

Rational limit_value(const RunGraph& g, bool sup_of_runs, bool limsup) {
  std::vector<std::vector<int>> adj(g.out.size());
  for (std::size_t v = 0; v < g.out.size(); ++v)
    for (const auto& e : g.out[v]) adj[v].push_back(e.to);
  const auto s = detail::scc(adj, g.roots);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(s.count));
  for (std::size_t v = 0; v < g.out.size(); ++v)
    if (g.live[v] && s.comp[v] >= 0) members[static_cast<std::size_t>(s.comp[v])].push_back(static_cast<int>(v));

  std::optional<std::int64_t> best;
  for (int c = 0; c < s.count; ++c) {
    if (!s.nontrivial[static_cast<std::size_t>(c)]) continue;
    const auto& nodes = members[static_cast<std::size_t>(c)];
    std::set<std::int64_t> ws;
    for (int v : nodes)
      for (const auto& e : g.out[static_cast<std::size_t>(v)])
        if (s.comp[static_cast<std::size_t>(e.to)] == c) ws.insert(e.w);
    std::int64_t here;
    if (limsup && sup_of_runs) {
      here = *ws.rbegin();  // some run visits every edge of the component
    } else if (!limsup && !sup_of_runs) {
      here = *ws.begin();
    } else if (limsup) {
      // least k such that the edges of weight <= k still close a cycle
      here = *ws.rbegin();
      for (auto k : ws)
        if (has_cycle(g, nodes, s.comp, c, [k](std::int64_t x) { return x <= k; })) {
          here = k;
          break;
        }
    } else {
      here = *ws.begin();
      for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
        const auto k = *it;
        if (has_cycle(g, nodes, s.comp, c, [k](std::int64_t x) { return x >= k; })) {
          here = k;
          break;
        }
      }
    }
    if (!best || (sup_of_runs ? here > *best : here < *best)) best = here;
  }
  return Rational(static_cast<long>(*best));
}

// Exact policy iteration for the optimal discounted value of infinite paths.
Rational discounted_value(const RunGraph& g, int d, bool maximize) {
  const std::size_t n = g.out.size();
  std::vector<int> pol(n, -1);
  for (std::size_t v = 0; v < n; ++v)
    if (g.live[v]) pol[v] = 0;
  std::vector<Rational> V(n);
  const auto better = [maximize](const Rational& a, const Rational& b) { return maximize ? a > b : a < b; };

  while (true) {
    std::vector<char> state(n, 0);  // 0 new, 1 on stack, 2 done
    for (std::size_t start = 0; start < n; ++start) {
      if (!g.live[start] || state[start]) continue;
      std::vector<int> path;
      int v = static_cast<int>(start);
      while (state[static_cast<std::size_t>(v)] == 0) {
        state[static_cast<std::size_t>(v)] = 1;
        path.push_back(v);
        v = g.out[static_cast<std::size_t>(v)][static_cast<std::size_t>(pol[static_cast<std::size_t>(v)])].to;
      }
      std::size_t tail = path.size();
      if (state[static_cast<std::size_t>(v)] == 1) {
        // closed a cycle starting at v
        const auto pos = static_cast<std::size_t>(std::find(path.begin(), path.end(), v) - path.begin());
        std::vector<Symbol> cyc;
        for (std::size_t i = pos; i < path.size(); ++i) {
          const auto u = static_cast<std::size_t>(path[i]);
          cyc.push_back({static_cast<int>(g.out[u][static_cast<std::size_t>(pol[u])].w)});
        }
        V[static_cast<std::size_t>(v)] = ds_lasso(LassoWord{{}, cyc}, d);
        state[static_cast<std::size_t>(v)] = 2;
        // the rest of the cycle, backwards from its last node
        for (std::size_t i = path.size(); i-- > pos + 1;) {
          const auto u = static_cast<std::size_t>(path[i]);
          const auto& e = g.out[u][static_cast<std::size_t>(pol[u])];
          V[u] = Rational(static_cast<long>(e.w)) + V[static_cast<std::size_t>(e.to)] / d;
          state[u] = 2;
        }
        tail = pos;
      }
      for (std::size_t i = tail; i-- > 0;) {
        const auto u = static_cast<std::size_t>(path[i]);
        const auto& e = g.out[u][static_cast<std::size_t>(pol[u])];
        V[u] = Rational(static_cast<long>(e.w)) + V[static_cast<std::size_t>(e.to)] / d;
        state[u] = 2;
      }
    }
    bool changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!g.live[v]) continue;
      for (std::size_t i = 0; i < g.out[v].size(); ++i) {
        const auto& e = g.out[v][i];
        Rational q = Rational(static_cast<long>(e.w)) + V[static_cast<std::size_t>(e.to)] / d;
        if (better(q, V[v])) {
          V[v] = q;
          pol[v] = static_cast<int>(i);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  Rational best = V[static_cast<std::size_t>(g.roots.front())];
  for (int r : g.roots)
    if (better(V[static_cast<std::size_t>(r)], best)) best = V[static_cast<std::size_t>(r)];
  best.canonicalize();
  return best;
}

}  // namespace

Weight word_weight(const WeightedAutomaton& W, const LassoWord& w, const AggSpec& agg) {
  if (w.loop.empty()) throw InputError("empty loop");
  if (w.arity() != W.alphabet.arity) throw InputError("word arity does not match the automaton");
  const RunGraph g = run_graph(W, w);
  if (g.roots.empty()) return std::nullopt;
  const bool sup = agg.semantics == Semantics::Sup;
  switch (agg.kind) {
    case AggKind::LimSup: return limit_value(g, sup, true);
    case AggKind::LimInf: return limit_value(g, sup, false);
    case AggKind::DiscountedSum: return discounted_value(g, agg.d, sup);
    case AggKind::PrefixAverage: break;
  }
  throw InputError("prefix average weights are not supported here");
}

bool inclusion_holds_at(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg, bool strict,
                        const LassoWord& w) {
  const Weight p = word_weight(P, w, agg);
  const Weight q = word_weight(Q, w, agg);
  // Sup semantics ranges over the words of P (an absent Q run counts as
  // -infinity); inf semantics over the words of Q (absent P runs as +infinity).
  if (agg.semantics == Semantics::Sup ? !p : !q) return true;
  if (agg.semantics == Semantics::Inf && !p) return false;
  const int c = compare(p, q);
  return strict ? c < 0 : c <= 0;
}

namespace {

std::vector<LassoWord> candidate_words(const WeightedAutomaton& P, const WeightedAutomaton& Q, std::size_t sb,
                                       std::size_t lb) {
  std::set<Symbol> letters;
  for (const auto& t : P.transitions) letters.insert(t.sym);
  for (const auto& t : Q.transitions) letters.insert(t.sym);
  return enumerate_lassos({letters.begin(), letters.end()}, sb, lb);
}

WitnessKind classify(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg, const LassoWord& w) {
  if (agg.semantics == Semantics::Sup) return word_weight(Q, w, agg) ? WitnessKind::NotDominated : WitnessKind::WordNotInQ;
  return word_weight(P, w, agg) ? WitnessKind::NotDominated : WitnessKind::WordNotInP;
}

}  // namespace

InclusionVerdict brute_force_inclusion(const WeightedAutomaton& P, const WeightedAutomaton& Q, const AggSpec& agg,
                                       bool strict, std::size_t stem_bound, std::size_t loop_bound) {
  const auto words = candidate_words(P, Q, stem_bound, loop_bound);
  // Blocks in enumeration order, so the scan can stop at the first block
  // holding a violation and still report the earliest one.
  const std::size_t block = 64 * static_cast<std::size_t>(omp_get_max_threads());
  std::vector<char> ok(block);
  for (std::size_t lo = 0; lo < words.size(); lo += block) {
    const auto n = static_cast<long>(std::min(block, words.size() - lo));
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i)
      ok[static_cast<std::size_t>(i)] = inclusion_holds_at(P, Q, agg, strict, words[lo + static_cast<std::size_t>(i)]);
    for (long i = 0; i < n; ++i)
      if (!ok[static_cast<std::size_t>(i)]) {
        const auto& w = words[lo + static_cast<std::size_t>(i)];
        return {false, w, classify(P, Q, agg, w)};
      }
  }
  return {};
}

InclusionVerdict brute_force_inclusion_serial(const WeightedAutomaton& P, const WeightedAutomaton& Q,
                                              const AggSpec& agg, bool strict, std::size_t stem_bound,
                                              std::size_t loop_bound) {
  const auto words = candidate_words(P, Q, stem_bound, loop_bound);
  for (const auto& w : words)
    if (!inclusion_holds_at(P, Q, agg, strict, w)) {
      return {false, w, classify(P, Q, agg, w)};
    }
  return {};
}

}  // namespace qcmp
