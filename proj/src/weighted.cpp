#include "qcmp/weighted.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace qcmp {

std::string to_string(AggKind k) {
  switch (k) {
    case AggKind::LimSup: return "limsup";
    case AggKind::LimInf: return "liminf";
    case AggKind::DiscountedSum: return "ds";
    case AggKind::PrefixAverage: return "pa";
  }
  return "?";
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::None: return "none";
    case WitnessKind::NotDominated: return "not-dominated";
    case WitnessKind::WordNotInQ: return "word-not-in-Q";
    case WitnessKind::WordNotInP: return "word-not-in-P";
  }
  return "?";
}

AggKind parse_agg_kind(const std::string& s) {
  if (s == "limsup") return AggKind::LimSup;
  if (s == "liminf") return AggKind::LimInf;
  if (s == "ds" || s == "discounted-sum") return AggKind::DiscountedSum;
  if (s == "pa" || s == "prefix-average") return AggKind::PrefixAverage;
  throw InputError("unknown aggregate '" + s + "'");
}

void AggSpec::validate() const {
  if (kind == AggKind::DiscountedSum && d < 2) throw InputError("discounted sum needs an integer discount factor d >= 2");
}

void WeightedAutomaton::validate() const {
  if (mu < 1) throw InputError("weight bound mu must be positive");
  if (!names.empty() && static_cast<int>(names.size()) != num_states) throw InputError("state name count mismatch");
  for (int q : initial)
    if (q < 0 || q >= num_states) throw InputError("initial state out of range");
  for (const auto& t : transitions) {
    if (t.src < 0 || t.src >= num_states || t.dst < 0 || t.dst >= num_states)
      throw InputError("transition endpoint out of range");
    if (!alphabet.contains(t.sym)) throw InputError("symbol " + format_symbol(t.sym) + " outside the alphabet");
    if (t.weight < 0 || t.weight > mu)
      throw InputError("weight " + std::to_string(t.weight) + " outside [0, " + std::to_string(mu) + "]");
  }
  agg.validate();
}

namespace {

AutomatonBuilder states_like(const WeightedAutomaton& w, Alphabet alphabet) {
  AutomatonBuilder b(std::move(alphabet));
  for (int q = 0; q < w.num_states; ++q) b.add_state(false, true, w.names.empty() ? std::string{} : w.names[q]);
  for (int q : w.initial) b.set_initial(q);
  return b;
}

}  // namespace

BuchiAutomaton WeightedAutomaton::base() const {
  auto b = states_like(*this, alphabet);
  for (const auto& t : transitions) b.add_transition(t.src, t.sym, t.dst);
  return b.build();
}

BuchiAutomaton augment_wt_and_label(const WeightedAutomaton& w) {
  Alphabet al = w.alphabet;
  al.arity += 2;
  al.bounds.push_back(w.mu);
  al.bounds.push_back(std::max<int>(1, static_cast<int>(w.transitions.size())));
  auto b = states_like(w, al);
  int label = 1;
  for (const auto& t : w.transitions) {
    Symbol s = t.sym;
    s.push_back(static_cast<int>(t.weight));
    s.push_back(label++);
    b.add_transition(t.src, s, t.dst);
  }
  return b.build();
}

BuchiAutomaton make_product(const BuchiAutomaton& p_hat, const BuchiAutomaton& q_hat) {
  const int k = p_hat.alphabet().arity - 2;
  if (k < 0 || q_hat.alphabet().arity - 2 != k) throw InputError("make_product: inputs are not augmented automata");
  for (int i = 0; i < k; ++i)
    if (p_hat.alphabet().bounds[i] != q_hat.alphabet().bounds[i]) throw InputError("make_product: base alphabet mismatch");
  if (!p_hat.all_accepting() || !q_hat.all_accepting()) throw InputError("make_product: inputs must accept everywhere");

  Alphabet al = p_hat.alphabet();
  al.arity += 2;
  al.bounds.push_back(q_hat.alphabet().bounds[k]);
  al.bounds.push_back(q_hat.alphabet().bounds[k + 1]);
  AutomatonBuilder out(al);

  // Group q_hat letters by base letter.
  std::map<Symbol, std::vector<int>> q_by_base;
  for (int i = 0; i < static_cast<int>(q_hat.letters().size()); ++i) {
    const auto& l = q_hat.letter(i);
    q_by_base[Symbol(l.begin(), l.begin() + k)].push_back(i);
  }
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> todo;
  auto get = [&](int p, int q) {
    auto [it, fresh] = ids.try_emplace({p, q}, out.num_states());
    if (fresh) {
      std::string nm;
      if (p_hat.has_names() && q_hat.has_names()) nm = "(" + p_hat.name(p) + "," + q_hat.name(q) + ")";
      out.add_state(p_hat.is_initial(p) && q_hat.is_initial(q), true, nm);
      todo.push_back({p, q});
    }
    return it->second;
  };
  for (int p : p_hat.initial())
    for (int q : q_hat.initial()) get(p, q);
  while (!todo.empty()) {
    auto [p, q] = todo.front();
    todo.pop_front();
    int src = ids.at({p, q});
    for (const auto& ep : p_hat.out(p)) {
      const auto& lp = p_hat.letter(ep.letter);
      auto it = q_by_base.find(Symbol(lp.begin(), lp.begin() + k));
      if (it == q_by_base.end()) continue;
      for (int ql : it->second)
        for (const auto& eq : q_hat.out(q, ql)) {
          Symbol s = lp;
          const auto& lq = q_hat.letter(ql);
          s.push_back(lq[k]);
          s.push_back(lq[k + 1]);
          out.add_transition(src, s, get(ep.dst, eq.dst));
        }
    }
  }
  return trim(out.build());
}

WeightedAutomaton normalize_weights(const WeightedAutomaton& w, std::int64_t shift, std::int64_t scale) {
  if (scale < 1) throw InputError("normalize_weights: scale must be >= 1");
  WeightedAutomaton out = w;
  for (auto& t : out.transitions) {
    t.weight = scale * t.weight + shift;
    if (t.weight < 0) throw InputError("normalize_weights: resulting weight is negative");
  }
  out.mu = static_cast<int>(std::max<std::int64_t>(1, scale * w.mu + shift));
  return out;
}

Projection base_projection(int k) { return Projection::identity(k); }

Projection augmented_projection(int k) {
  Projection p = Projection::identity(k + 2);
  return p;
}

Projection other_augmented_projection(int k) {
  Projection p = Projection::identity(k);
  p.components.push_back(k + 2);
  p.components.push_back(k + 3);
  return p;
}

Projection weight_pair_projection(int k) { return Projection{{k, k + 2}}; }

}  // namespace qcmp
