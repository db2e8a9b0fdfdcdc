#include "qcmp/random.hpp"

namespace qcmp {

// Rejection sampling rather than std::uniform_int_distribution, whose output
// differs between standard libraries; seeds must reproduce everywhere.
int uniform(Rng& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = Rng::max() - Rng::max() % span;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<int>(x % span);
}

LassoWord random_lasso(Rng& rng, int arity, int bound, int max_stem, int max_loop) {
  LassoWord w;
  auto letter = [&] {
    Symbol s(static_cast<std::size_t>(arity));
    for (auto& c : s) c = uniform(rng, 0, bound);
    return s;
  };
  const int st = uniform(rng, 0, max_stem), lp = uniform(rng, 1, max_loop);
  for (int i = 0; i < st; ++i) w.stem.push_back(letter());
  for (int i = 0; i < lp; ++i) w.loop.push_back(letter());
  return w;
}

LassoWord random_pair(Rng& rng, int mu, int max_stem, int max_loop) { return random_lasso(rng, 2, mu, max_stem, max_loop); }

BuchiAutomaton random_buchi(Rng& rng, int states, const Alphabet& alphabet, double density, double accepting) {
  auto coin = [&](double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; };
  auto edge = [&](Rng&) { return coin(density); };
  auto acc = [&](Rng&) { return coin(accepting); };
  AutomatonBuilder b(alphabet);
  for (int s = 0; s < states; ++s) b.add_state(s == 0, acc(rng));
  const auto letters = alphabet.enumerate();
  for (int s = 0; s < states; ++s)
    for (const auto& l : letters)
      for (int t = 0; t < states; ++t)
        if (edge(rng)) b.add_transition(s, l, t);
  return b.build();
}

WeightedAutomaton random_weighted(Rng& rng, int states, const Alphabet& alphabet, int mu, int max_out) {
  WeightedAutomaton w;
  w.alphabet = alphabet;
  w.num_states = states;
  w.mu = mu;
  w.initial = {0};
  const auto letters = alphabet.enumerate();
  for (int s = 0; s < states; ++s) {
    const int k = uniform(rng, 1, max_out);
    for (int i = 0; i < k; ++i) {
      const auto& l = letters[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(letters.size()) - 1))];
      w.transitions.push_back({s, l, uniform(rng, 0, states - 1), uniform(rng, 0, mu)});
    }
  }
  return w;
}

}  // namespace qcmp
