#include "graph.hpp"

#include <algorithm>

namespace qcmp::detail {

SccResult scc(const std::vector<std::vector<int>>& adj, const std::vector<int>& roots) {
  const int n = static_cast<int>(adj.size());
  SccResult r;
  r.comp.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  struct Frame {
    int v;
    std::size_t next;
  };
  std::vector<Frame> call;
  int counter = 0;

  auto visit = [&](int root) {
    if (index[root] >= 0) return;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = adj[f.v];
      if (f.next < succ.size()) {
        int w = succ[f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      int v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        int id = r.count++;
        int size = 0;
        bool self = false;
        while (true) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.comp[w] = id;
          ++size;
          if (w == v) break;
        }
        for (int w : adj[v]) self = self || w == v;
        r.nontrivial.push_back(size > 1 || self);
      }
    }
  };

  if (roots.empty()) {
    for (int v = 0; v < n; ++v) visit(v);
  } else {
    for (int v : roots) visit(v);
  }
  return r;
}

std::vector<bool> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& roots) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<int> todo;
  for (int r : roots)
    if (!seen[r]) seen[r] = true, todo.push_back(r);
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    for (int w : adj[v])
      if (!seen[w]) seen[w] = true, todo.push_back(w);
  }
  return seen;
}

std::vector<std::vector<int>> reverse(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v)
    for (int w : adj[v]) rev[w].push_back(static_cast<int>(v));
  return rev;
}

}  // namespace qcmp::detail
