#pragma once

#include <string>

#include "qcmp/json_io.hpp"
#include "qcmp/lasso.hpp"
#include "qcmp/weighted.hpp"

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(QCMP_TEST_DATA) + "/" + name; }

inline qcmp::BuchiAutomaton load_buchi(const std::string& name) {
  return qcmp::buchi_from_json(qcmp::read_json_file(data_path(name)));
}

inline qcmp::WeightedAutomaton load_weighted(const std::string& name) {
  return qcmp::weighted_from_json(qcmp::read_json_file(data_path(name)));
}

inline qcmp::LassoWord L(const char* text) { return qcmp::parse_lasso(text); }

// Single-letter automaton with one state per weight in `loop`, cycling, plus
// a stem of weights leading into it.
inline qcmp::WeightedAutomaton chain(const std::vector<int>& stem, const std::vector<int>& loop, int mu) {
  qcmp::WeightedAutomaton w;
  w.alphabet = qcmp::Alphabet::uniform(1, 0);
  w.mu = mu;
  const int n = static_cast<int>(stem.size() + loop.size());
  w.num_states = n;
  w.initial = {0};
  for (int i = 0; i < n; ++i) {
    const int weight = i < static_cast<int>(stem.size()) ? stem[i] : loop[i - stem.size()];
    const int next = i + 1 < n ? i + 1 : static_cast<int>(stem.size());
    w.transitions.push_back({i, {0}, next, weight});
  }
  return w;
}

}  // namespace testing
