#include "qcmp/json_io.hpp"

#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qcmp {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError("invalid automaton document: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing \"") + key + "\"");
  return *it;
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

Alphabet alphabet_from(const json& j) {
  Alphabet al;
  al.arity = as_int(field(j, "arity"), "arity");
  if (al.arity < 1) bad("arity must be positive");
  const auto& b = field(j, "bounds");
  if (!b.is_array() || static_cast<int>(b.size()) != al.arity) bad("bounds must list one entry per component");
  for (const auto& x : b) {
    if (x.is_null()) al.bounds.push_back(std::nullopt);
    else al.bounds.push_back(as_int(x, "bound"));
  }
  return al;
}

json alphabet_to(const Alphabet& al) {
  json b = json::array();
  for (const auto& x : al.bounds) b.push_back(x ? json(*x) : json(nullptr));
  return b;
}

// State ids: all integers or all strings.
struct StateIds {
  std::map<json, int> index;
  std::vector<std::string> names;

  explicit StateIds(const json& states) {
    if (!states.is_array()) bad("states must be an array");
    bool strings = !states.empty() && states.front().is_string();
    for (const auto& s : states) {
      if (strings ? !s.is_string() : !s.is_number_integer()) bad("state ids must be all integers or all strings");
      if (!index.emplace(s, static_cast<int>(index.size())).second) bad("duplicate state id " + s.dump());
      if (strings) names.push_back(s.get<std::string>());
    }
  }
  int operator()(const json& id) const {
    auto it = index.find(id);
    if (it == index.end()) bad("unknown state " + id.dump());
    return it->second;
  }
  int size() const { return static_cast<int>(index.size()); }
};

Symbol symbol_from(const json& j) {
  if (!j.is_array()) bad("symbol must be an array");
  Symbol s;
  for (const auto& c : j) s.push_back(as_int(c, "symbol component"));
  return s;
}

bool distinct_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& n : names)
    if (n.empty() || !seen.insert(n).second) return false;
  return !names.empty();
}

template <class Name>
json state_id(int s, bool named, Name name) {
  return named ? json(name(s)) : json(s);
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json_text(ss.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json to_json(const BuchiAutomaton& a) {
  std::vector<std::string> names;
  for (int s = 0; s < a.num_states(); ++s) names.push_back(a.name(s));
  const bool named = a.has_names() && distinct_names(names);
  auto id = [&](int s) { return state_id(s, named, [&](int x) { return names[static_cast<std::size_t>(x)]; }); };
  json j;
  j["arity"] = a.alphabet().arity;
  j["bounds"] = alphabet_to(a.alphabet());
  j["states"] = json::array();
  j["initial"] = json::array();
  j["accepting"] = json::array();
  j["transitions"] = json::array();
  for (int s = 0; s < a.num_states(); ++s) {
    j["states"].push_back(id(s));
    if (a.is_initial(s)) j["initial"].push_back(id(s));
    if (a.is_accepting(s)) j["accepting"].push_back(id(s));
  }
  for (int s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.out(s)) j["transitions"].push_back(json::array({id(s), a.letter(e.letter), id(e.dst)}));
  return j;
}

BuchiAutomaton buchi_from_json(const json& j) {
  AutomatonBuilder b(alphabet_from(j));
  const StateIds ids(field(j, "states"));
  for (int s = 0; s < ids.size(); ++s) b.add_state(false, false, ids.names.empty() ? std::string{} : ids.names[s]);
  for (const auto& s : field(j, "initial")) b.set_initial(ids(s));
  for (const auto& s : field(j, "accepting")) b.set_accepting(ids(s));
  for (const auto& t : field(j, "transitions")) {
    if (!t.is_array() || t.size() != 3) bad("transition must be [src, symbol, dst]");
    b.add_transition(ids(t[0]), symbol_from(t[1]), ids(t[2]));
  }
  return b.build();
}

json to_json(const AggSpec& agg) {
  json j{{"kind", to_string(agg.kind)}, {"semantics", agg.semantics == Semantics::Sup ? "sup" : "inf"}};
  if (agg.kind == AggKind::DiscountedSum) j["d"] = agg.d;
  return j;
}

AggSpec agg_from_json(const json& j) {
  AggSpec agg;
  agg.kind = parse_agg_kind(field(j, "kind").get<std::string>());
  if (auto it = j.find("d"); it != j.end() && !it->is_null()) agg.d = as_int(*it, "d");
  if (auto it = j.find("semantics"); it != j.end()) {
    const auto s = it->get<std::string>();
    if (s == "sup") agg.semantics = Semantics::Sup;
    else if (s == "inf") agg.semantics = Semantics::Inf;
    else bad("semantics must be \"sup\" or \"inf\"");
  }
  agg.validate();
  return agg;
}

json to_json(const WeightedAutomaton& w) {
  const bool named = distinct_names(w.names);
  auto id = [&](int s) { return state_id(s, named, [&](int x) { return w.names[static_cast<std::size_t>(x)]; }); };
  json j;
  j["arity"] = w.alphabet.arity;
  j["bounds"] = alphabet_to(w.alphabet);
  j["mu"] = w.mu;
  j["agg"] = to_json(w.agg);
  j["states"] = json::array();
  j["accepting"] = json::array();
  for (int s = 0; s < w.num_states; ++s) {
    j["states"].push_back(id(s));
    j["accepting"].push_back(id(s));
  }
  j["initial"] = json::array();
  for (int s : w.initial) j["initial"].push_back(id(s));
  j["transitions"] = json::array();
  for (const auto& t : w.transitions) j["transitions"].push_back(json::array({id(t.src), t.sym, id(t.dst), t.weight}));
  return j;
}

namespace {

Rational weight_from(const json& x) {
  if (x.is_number_integer()) return Rational(x.get<long>());
  if (x.is_number_float()) {
    // Decimal literal taken exactly as written.
    std::string s = x.dump();
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) bad("weights in exponent notation are not supported");
    const auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    Rational r(mpz_class(digits, 10), den);
    r.canonicalize();
    return r;
  }
  if (x.is_string()) {
    try {
      Rational r(x.get<std::string>());
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      bad("weight " + x.dump() + " is not a rational");
    }
  }
  bad("weight must be a number or a \"p/q\" string");
}

}  // namespace

RawWeighted raw_weighted_from_json(const json& j) {
  RawWeighted r;
  auto& w = r.shape;
  w.alphabet = alphabet_from(j);
  const StateIds ids(field(j, "states"));
  w.num_states = ids.size();
  w.names = ids.names;
  for (const auto& s : field(j, "initial")) w.initial.push_back(ids(s));
  if (auto it = j.find("accepting"); it != j.end() && static_cast<int>(it->size()) != w.num_states)
    bad("every state of a weighted automaton is accepting");
  for (const auto& t : field(j, "transitions")) {
    if (!t.is_array() || t.size() != 4) bad("weighted transition must be [src, symbol, dst, weight]");
    w.transitions.push_back({ids(t[0]), symbol_from(t[1]), ids(t[2]), 0});
    r.weights.push_back(weight_from(t[3]));
  }
  w.mu = 1;
  if (auto it = j.find("mu"); it != j.end()) w.mu = as_int(*it, "mu");
  if (auto it = j.find("agg"); it != j.end()) w.agg = agg_from_json(*it);
  return r;
}

namespace {

struct AffineMap {
  mpz_class scale = 1, shift = 0;
};

AffineMap common_map(const std::vector<const RawWeighted*>& ws) {
  AffineMap m;
  for (const auto* w : ws)
    for (const auto& x : w->weights) m.scale = lcm(m.scale, mpz_class(x.get_den()));
  for (const auto* w : ws)
    for (const auto& x : w->weights) {
      mpz_class v = mpz_class(x.get_num()) * (m.scale / x.get_den());
      if (v < -m.shift) m.shift = -v;
    }
  return m;
}

WeightedAutomaton apply_map(const RawWeighted& r, const AffineMap& m) {
  WeightedAutomaton w = r.shape;
  mpz_class top = 0;
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    const auto& x = r.weights[i];
    mpz_class v = mpz_class(x.get_num()) * (m.scale / x.get_den()) + m.shift;
    if (!v.fits_sint_p()) bad("weight out of range after normalization");
    w.transitions[i].weight = v.get_si();
    if (v > top) top = v;
  }
  // The declared bound is mapped too, unless the weights already exceed it.
  mpz_class mu = m.scale * w.mu + m.shift;
  if (top > mu) mu = top;
  if (!mu.fits_sint_p()) bad("weight bound out of range after normalization");
  w.mu = std::max(1, static_cast<int>(mu.get_si()));
  w.validate();
  return w;
}

}  // namespace

std::pair<WeightedAutomaton, WeightedAutomaton> normalize_pair(const RawWeighted& p, const RawWeighted& q) {
  const auto m = common_map({&p, &q});
  return {apply_map(p, m), apply_map(q, m)};
}

WeightedAutomaton normalize_one(const RawWeighted& p) { return apply_map(p, common_map({&p})); }

WeightedAutomaton weighted_from_json(const json& j) {
  const auto r = raw_weighted_from_json(j);
  WeightedAutomaton w = r.shape;
  for (std::size_t i = 0; i < r.weights.size(); ++i) {
    if (r.weights[i].get_den() != 1 || !r.weights[i].get_num().fits_sint_p()) bad("weights must be integers");
    w.transitions[i].weight = r.weights[i].get_num().get_si();
  }
  w.validate();
  return w;
}

namespace {

std::string to_string(StackTop t) {
  switch (t) {
    case StackTop::Bottom: return "bottom";
    case StackTop::Token: return "token";
    case StackTop::Any: return "any";
  }
  return "?";
}

StackTop stack_top_from(const std::string& s) {
  if (s == "bottom") return StackTop::Bottom;
  if (s == "token") return StackTop::Token;
  if (s == "any") return StackTop::Any;
  bad("after_pop must be bottom, token or any");
}

}  // namespace

json to_json(const BuchiPDA& p) {
  json j;
  j["kind"] = "buchi-pda";
  j["mu"] = p.mu;
  j["states"] = p.names;
  j["initial"] = p.names.at(static_cast<std::size_t>(p.initial));
  j["accepting"] = json::array();
  for (int s = 0; s < p.num_states(); ++s)
    if (p.accepting[static_cast<std::size_t>(s)]) j["accepting"].push_back(p.names[static_cast<std::size_t>(s)]);
  j["stack_alphabet"] = {"Z0", "alpha"};
  j["transitions"] = json::array();
  for (const auto& t : p.transitions)
    j["transitions"].push_back({{"from", p.names[static_cast<std::size_t>(t.from)]},
                                {"input", t.input},
                                {"to", p.names[static_cast<std::size_t>(t.to)]},
                                {"stack_actions", {{"pop", t.pop}, {"after_pop", to_string(t.after_pop)}, {"push", t.push}}}});
  return j;
}

BuchiPDA pda_from_json(const json& j) {
  BuchiPDA p;
  p.mu = as_int(field(j, "mu"), "mu");
  const StateIds ids(field(j, "states"));
  if (ids.names.empty() && ids.size() > 0) bad("PDA states must be named");
  p.names = ids.names;
  p.initial = ids(field(j, "initial"));
  p.accepting.assign(static_cast<std::size_t>(ids.size()), false);
  for (const auto& s : field(j, "accepting")) p.accepting[static_cast<std::size_t>(ids(s))] = true;
  for (const auto& t : field(j, "transitions")) {
    const auto& sa = field(t, "stack_actions");
    p.transitions.push_back({ids(field(t, "from")), symbol_from(field(t, "input")), ids(field(t, "to")),
                             as_int(field(sa, "pop"), "pop"), stack_top_from(field(sa, "after_pop").get<std::string>()),
                             as_int(field(sa, "push"), "push")});
  }
  return p;
}

}  // namespace qcmp
