#pragma once

#include <vector>

namespace qcmp::detail {

struct SccResult {
  std::vector<int> comp;         // component id per node, -1 if not visited
  std::vector<bool> nontrivial;  // per component: contains a cycle
  int count = 0;
};

// Iterative Tarjan restricted to nodes reachable from roots (all nodes when
// roots is empty).
SccResult scc(const std::vector<std::vector<int>>& adj, const std::vector<int>& roots = {});

std::vector<bool> reachable(const std::vector<std::vector<int>>& adj, const std::vector<int>& roots);

std::vector<std::vector<int>> reverse(const std::vector<std::vector<int>>& adj);

}  // namespace qcmp::detail
