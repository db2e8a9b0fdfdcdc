// Command-line front end: comparators, inclusion, counterexamples, oracles
// and differential fuzzing.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcmp/comparator.hpp"
#include "qcmp/fuzz.hpp"
#include "qcmp/inclusion.hpp"
#include "qcmp/json_io.hpp"
#include "qcmp/oracle.hpp"
#include "qcmp/pushdown.hpp"

using namespace qcmp;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFails = 1, kInputError = 2;

struct Common {
  std::string format;  // empty: text on stdout, JSON into -o files
  std::string output;
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw InputError("cannot write " + c.output);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Weight bound: explicit flag, then QCMP_MU, then the fallback.
int resolve_mu(std::optional<int> flag, int fallback) {
  int mu = fallback;
  if (flag) {
    mu = *flag;
  } else if (const char* env = std::getenv("QCMP_MU"); env && *env) {
    try {
      mu = std::stoi(env);
    } catch (const std::exception&) {
      throw InputError(std::string("QCMP_MU is not an integer: ") + env);
    }
  }
  if (mu == -1) throw InputError("--mu is required (or set QCMP_MU)");
  if (mu < 1) throw InputError("mu must be >= 1");
  return mu;
}

int max_value(const LassoWord& w) {
  int m = 1;
  for (const auto* part : {&w.stem, &w.loop})
    for (const auto& s : *part)
      for (int v : s) m = std::max(m, v);
  return m;
}

LassoWord unary(const std::string& text) {
  auto w = parse_lasso(text);
  if (w.arity() != 1) throw InputError("expected a sequence of plain integers: '" + text + "'");
  for (const auto* part : {&w.stem, &w.loop})
    for (const auto& s : *part)
      if (s[0] < 0) throw InputError("sequence values must be non-negative");
  return w;
}

LassoWord pair_of(const LassoWord& a, const LassoWord& b, int mu) {
  if (max_value(a) > mu || max_value(b) > mu) throw InputError("sequence value exceeds mu = " + std::to_string(mu));
  auto [x, y] = align(a, b);
  return zip(x, y);
}

std::string describe(const BuchiAutomaton& a) {
  std::ostringstream os;
  os << a.num_states() << " states, " << a.num_transitions() << " transitions, arity " << a.alphabet().arity << "\n";
  auto id = [&](int s) { return a.name(s).empty() ? std::to_string(s) : a.name(s); };
  for (int s = 0; s < a.num_states(); ++s) {
    os << "state " << id(s) << (a.is_initial(s) ? " initial" : "") << (a.is_accepting(s) ? " accepting" : "") << "\n";
    for (const auto& e : a.out(s)) os << "  " << format_symbol(a.letter(e.letter)) << " -> " << id(e.dst) << "\n";
  }
  return os.str();
}

struct AggFlags {
  std::string kind;
  int d = 2;
  bool inf = false;
};

AggSpec resolve_agg(const AggFlags& f, const WeightedAutomaton& P) {
  AggSpec agg = P.agg;
  if (!f.kind.empty()) {
    agg.kind = parse_agg_kind(f.kind);
    agg.d = f.d;
  } else if (agg.kind == AggKind::DiscountedSum && agg.d < 2) {
    agg.d = f.d;
  }
  if (f.inf) agg.semantics = Semantics::Inf;
  agg.validate();
  return agg;
}

std::pair<WeightedAutomaton, WeightedAutomaton> load_pair(const std::string& p, const std::string& q) {
  return normalize_pair(raw_weighted_from_json(read_json_file(p)), raw_weighted_from_json(read_json_file(q)));
}

void add_agg(CLI::App* sub, AggFlags& f, bool with_inf) {
  sub->add_option("--agg", f.kind, "aggregate (default: the one stored in P)")
      ->check(CLI::IsMember({"limsup", "liminf", "ds"}));
  sub->add_option("--d", f.d, "discount factor for ds")->check(CLI::Range(2, 1 << 20));
  if (with_inf) sub->add_flag("--inf", f.inf, "infimum word weights");
}

void add_common(CLI::App* sub, Common& c, bool with_output) {
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
  if (with_output) sub->add_option("-o,--output", c.output, "write to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparator automata and quantitative inclusion"};
  app.require_subcommand(1);
  Common common;

  // build-comparator
  auto* build = app.add_subcommand("build-comparator", "Construct a comparator automaton");
  std::string b_agg, b_rel;
  std::optional<int> b_mu;
  int b_d = 2;
  bool b_untrimmed = false;
  build->add_option("--agg", b_agg, "aggregate")->required()->check(CLI::IsMember({"limsup", "liminf", "ds", "pa"}));
  build->add_option("--rel", b_rel, "relation (default le, ge for pa)")->check(CLI::IsMember({"lt", "le", "gt", "ge", "eq", "ne"}));
  build->add_option("--mu", b_mu, "weight bound (default $QCMP_MU)");
  build->add_option("--d", b_d, "discount factor for ds")->check(CLI::Range(2, 1 << 20));
  build->add_flag("--untrimmed", b_untrimmed, "ds lt only: the construction before trimming");
  add_common(build, common, true);

  // inclusion, equivalence, counterexamples
  std::string p_path, q_path;
  AggFlags agg_flags;
  bool strict = false;
  std::size_t samples = 10;
  auto* incl = app.add_subcommand("inclusion", "Decide quantitative inclusion P <= Q");
  incl->add_option("--p", p_path, "weighted automaton P (JSON)")->required();
  incl->add_option("--q", q_path, "weighted automaton Q (JSON)")->required();
  add_agg(incl, agg_flags, true);
  incl->add_flag("--strict", strict, "strict inclusion");
  incl->add_option("--witnesses", samples, "number of counterexample words to print")->capture_default_str();
  add_common(incl, common, false);

  auto* equiv = app.add_subcommand("equivalence", "Decide quantitative equivalence");
  equiv->add_option("--p", p_path, "weighted automaton P (JSON)")->required();
  equiv->add_option("--q", q_path, "weighted automaton Q (JSON)")->required();
  add_agg(equiv, agg_flags, false);
  add_common(equiv, common, false);

  auto* cex = app.add_subcommand("counterexamples", "Automaton of all counterexample words");
  cex->add_option("--p", p_path, "weighted automaton P (JSON)")->required();
  cex->add_option("--q", q_path, "weighted automaton Q (JSON)")->required();
  add_agg(cex, agg_flags, true);
  cex->add_flag("--strict", strict, "strict inclusion");
  cex->add_option("--samples", samples, "sample words listed in text output")->capture_default_str();
  add_common(cex, common, true);

  // membership
  std::string m_path, m_word;
  auto* member = app.add_subcommand("membership", "Does an automaton (Büchi or pushdown JSON) accept a lasso?");
  member->add_option("--automaton", m_path, "automaton JSON")->required();
  member->add_option("--word", m_word, "lasso 'stem;loop'")->required();
  add_common(member, common, false);

  // compare, pa-compare
  std::string c_agg, c_rel, c_a, c_b;
  std::optional<int> c_mu;
  int c_d = 2;
  auto* compare_cmd = app.add_subcommand("compare", "Comparator verdict against the exact oracle on (A, B)");
  compare_cmd->add_option("--agg", c_agg, "aggregate")->required()->check(CLI::IsMember({"limsup", "liminf", "ds", "pa"}));
  compare_cmd->add_option("--rel", c_rel, "relation (default le, ge for pa)")->check(CLI::IsMember({"lt", "le", "gt", "ge", "eq", "ne"}));
  compare_cmd->add_option("--mu", c_mu, "weight bound (default $QCMP_MU, else the largest value)");
  compare_cmd->add_option("--d", c_d, "discount factor for ds")->check(CLI::Range(2, 1 << 20));
  compare_cmd->add_option("--a", c_a, "sequence A as a lasso")->required();
  compare_cmd->add_option("--b", c_b, "sequence B as a lasso")->required();
  add_common(compare_cmd, common, false);

  auto* pa = app.add_subcommand("pa-compare", "Prefix-average comparison of A and B");
  pa->add_option("--a", c_a, "sequence A as a lasso")->required();
  pa->add_option("--b", c_b, "sequence B as a lasso")->required();
  pa->add_option("--mu", c_mu, "weight bound (default $QCMP_MU, else the largest value)");
  add_common(pa, common, false);

  // oracle
  std::string o_word, o_automaton;
  AggFlags o_agg;
  auto* oracle = app.add_subcommand("oracle", "Exact aggregate value of a sequence, or word weight in an automaton");
  oracle->add_option("--agg", o_agg.kind, "aggregate")->required()->check(CLI::IsMember({"limsup", "liminf", "ds", "la"}));
  oracle->add_option("--d", o_agg.d, "discount factor for ds")->check(CLI::Range(2, 1 << 20));
  oracle->add_option("--word", o_word, "lasso")->required();
  oracle->add_option("--automaton", o_automaton, "weighted automaton JSON: report the word weight instead");
  oracle->add_flag("--inf", o_agg.inf, "infimum over runs (with --automaton)");
  add_common(oracle, common, false);

  // fuzz
  FuzzConfig fz;
  std::string f_agg, f_rel;
  bool f_serial = false;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Differential test of comparators against the oracle");
  fuzz_cmd->add_option("--agg", f_agg, "aggregate")->required()->check(CLI::IsMember({"limsup", "liminf", "ds", "pa"}));
  fuzz_cmd->add_option("--rel", f_rel, "single relation (default: all)")
      ->check(CLI::IsMember({"lt", "le", "gt", "ge", "eq", "ne"}));
  fuzz_cmd->add_option("--seed", fz.seed, "random seed")->capture_default_str();
  fuzz_cmd->add_option("--n", fz.n, "number of pairs")->capture_default_str()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--mu", fz.max_mu, "largest weight bound drawn")->capture_default_str()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--d", fz.discounts, "discount factors drawn for ds")->capture_default_str();
  fuzz_cmd->add_option("--max-stem", fz.max_stem, "longest stem")->capture_default_str()->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-loop", fz.max_loop, "longest loop")->capture_default_str()->check(CLI::PositiveNumber);
  fuzz_cmd->add_flag("--serial", f_serial, "evaluate on one thread");
  add_common(fuzz_cmd, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const bool as_json = common.format == "json";
  try {
    if (build->parsed()) {
      const int mu = resolve_mu(b_mu, -1);
      if (b_rel.empty()) b_rel = b_agg == "pa" ? "ge" : "le";
      if (b_agg == "pa") {
        if (b_rel != "ge") throw InputError("the prefix-average comparator exists for relation ge only");
        const auto p = prefix_average_comparator(mu);
        emit(common, dump(to_json(p)));
        return kOk;
      }
      const Relation rel = parse_relation(b_rel);
      BuchiAutomaton a;
      if (b_untrimmed) {
        if (b_agg != "ds" || rel != Relation::LT) throw InputError("--untrimmed applies to the ds lt comparator only");
        a = ds_lt_untrimmed(mu, b_d);
      } else {
        a = build_comparator({parse_agg_kind(b_agg), rel, mu, b_d});
      }
      const bool json_out = as_json || (common.format.empty() && !common.output.empty());
      emit(common, json_out ? dump(to_json(a)) : describe(a));
      return kOk;
    }

    if (incl->parsed()) {
      const auto [P, Q] = load_pair(p_path, q_path);
      const AggSpec agg = resolve_agg(agg_flags, P);
      const auto v = inclusion(P, Q, agg, strict);
      std::vector<LassoWord> witnesses;
      if (!v.holds) {
        witnesses.push_back(*v.witness);
        if (samples > 1 && v.kind == WitnessKind::NotDominated)
          for (const auto& w : sample_words(counterexample_automaton(P, Q, agg, strict), samples))
            if (witnesses.size() < samples && w != *v.witness) witnesses.push_back(w);
      }
      if (as_json) {
        json j{{"holds", v.holds}, {"kind", to_string(v.kind)}, {"witnesses", json::array()}};
        for (const auto& w : witnesses)
          j["witnesses"].push_back({{"word", format_lasso(w)},
                                    {"p_weight", to_string(word_weight(P, w, agg))},
                                    {"q_weight", to_string(word_weight(Q, w, agg))}});
        emit(common, dump(j));
      } else {
        std::string out = v.holds ? "holds\n" : "fails " + to_string(v.kind) + "\n";
        for (const auto& w : witnesses) out += format_lasso(w) + "\n";
        emit(common, out);
      }
      return v.holds ? kOk : kFails;
    }

    if (equiv->parsed()) {
      const auto [P, Q] = load_pair(p_path, q_path);
      const bool eq = equivalence(P, Q, resolve_agg(agg_flags, P));
      emit(common, as_json ? dump(json{{"equivalent", eq}}) : std::string(eq ? "equivalent\n" : "not-equivalent\n"));
      return eq ? kOk : kFails;
    }

    if (cex->parsed()) {
      const auto [P, Q] = load_pair(p_path, q_path);
      const AggSpec agg = resolve_agg(agg_flags, P);
      const auto c = counterexample_automaton(P, Q, agg, strict);
      const bool empty = !is_empty(c);
      if (as_json || (common.format.empty() && !common.output.empty())) {
        emit(common, dump(to_json(c)));
      } else {
        std::string out = empty ? "empty\n" : describe(c) + "samples:\n";
        for (const auto& w : sample_words(c, samples)) out += format_lasso(w) + "\n";
        emit(common, out);
      }
      return empty ? kOk : kFails;
    }

    if (member->parsed()) {
      const json doc = read_json_file(m_path);
      const LassoWord w = parse_lasso(m_word);
      bool accepted;
      if (doc.is_object() && doc.value("kind", "") == "buchi-pda") {
        accepted = pda_accepts_lasso(pda_from_json(doc), w);
      } else {
        accepted = accepts_lasso(buchi_from_json(doc), w);
      }
      emit(common, as_json ? dump(json{{"accepted", accepted}}) : std::string(accepted ? "accept\n" : "reject\n"));
      return accepted ? kOk : kFails;
    }

    if (compare_cmd->parsed()) {
      const LassoWord a = unary(c_a), b = unary(c_b);
      const int mu = resolve_mu(c_mu, std::max(max_value(a), max_value(b)));
      const LassoWord w = pair_of(a, b, mu);
      bool by_comparator, by_oracle;
      if (c_rel.empty()) c_rel = c_agg == "pa" ? "ge" : "le";
      if (c_agg == "pa") {
        if (c_rel != "ge") throw InputError("prefix-average comparison is defined for relation ge only");
        by_comparator = pda_accepts_lasso(prefix_average_comparator(mu), w);
        by_oracle = prefix_average_ge_lasso(a, b);
      } else {
        const AggSpec agg{parse_agg_kind(c_agg), c_d, Semantics::Sup};
        const Relation rel = parse_relation(c_rel);
        by_comparator = accepts_lasso(build_comparator({agg.kind, rel, mu, c_d}), w);
        by_oracle = satisfies(rel, compare_aggregate(agg, a, b));
      }
      if (as_json) {
        emit(common, dump(json{{"comparator", by_comparator}, {"oracle", by_oracle}, {"agree", by_comparator == by_oracle}}));
      } else {
        emit(common, std::string("comparator: ") + (by_comparator ? "true" : "false") + "\noracle: " +
                         (by_oracle ? "true" : "false") + "\n");
      }
      return by_comparator == by_oracle ? kOk : kFails;
    }

    if (pa->parsed()) {
      const LassoWord a = unary(c_a), b = unary(c_b);
      const int mu = resolve_mu(c_mu, std::max(max_value(a), max_value(b)));
      const auto w = pair_of(a, b, mu);
      const auto prof = prefix_diff_profile(w);
      const bool ge = pda_accepts_lasso(prefix_average_comparator(mu), w);
      if (as_json) {
        emit(common, dump(json{{"ge", ge}, {"delta", prof.delta}, {"periodic", prof.periodic()}, {"tie", prof.tie()}}));
      } else {
        std::string out = std::string(ge ? "GE" : "not-GE") + "\ndelta " + std::to_string(prof.delta) + "\nperiodic";
        for (auto s : prof.periodic()) out += " " + std::to_string(s);
        out += prof.tie() ? "\ntie\n" : "\n";
        emit(common, out);
      }
      return ge ? kOk : kFails;
    }

    if (oracle->parsed()) {
      std::string value;
      if (!o_automaton.empty()) {
        if (o_agg.kind == "la") throw InputError("word weights support limsup, liminf and ds");
        const auto W = normalize_one(raw_weighted_from_json(read_json_file(o_automaton)));
        AggSpec agg{parse_agg_kind(o_agg.kind), o_agg.d, o_agg.inf ? Semantics::Inf : Semantics::Sup};
        value = to_string(word_weight(W, parse_lasso(o_word), agg));
      } else {
        const LassoWord w = unary(o_word);
        if (o_agg.kind == "limsup") value = std::to_string(limsup_lasso(w));
        else if (o_agg.kind == "liminf") value = std::to_string(liminf_lasso(w));
        else if (o_agg.kind == "la") value = to_string(limit_average_lasso(w));
        else value = to_string(ds_lasso(w, o_agg.d));
      }
      emit(common, as_json ? dump(json{{"value", value}}) : value + "\n");
      return kOk;
    }

    if (fuzz_cmd->parsed()) {
      fz.kind = parse_agg_kind(f_agg);
      if (!f_rel.empty()) fz.relations = {parse_relation(f_rel)};
      for (int d : fz.discounts)
        if (d < 2) throw InputError("discount factors must be >= 2");
      const auto r = f_serial ? fuzz_serial(fz) : fuzz(fz);
      if (as_json) {
        json j{{"n", r.n}, {"accepted", r.accepted}, {"disagreements", json::array()}};
        for (const auto& c : r.disagreements)
          j["disagreements"].push_back({{"index", c.index}, {"pair", format_lasso(c.pair)}, {"mu", c.mu},
                                        {"d", c.d}, {"rel", to_string(c.rel)}, {"comparator", c.comparator},
                                        {"oracle", c.oracle}});
        emit(common, dump(j));
      } else {
        std::string out = "pairs " + std::to_string(r.n) + "\naccepted " + std::to_string(r.accepted) +
                          "\ndisagreements " + std::to_string(r.disagreements.size()) + "\n";
        for (const auto& c : r.disagreements)
          out += "#" + std::to_string(c.index) + " " + format_lasso(c.pair) + " mu=" + std::to_string(c.mu) +
                 " d=" + std::to_string(c.d) + " " + to_string(c.rel) + " comparator=" + (c.comparator ? "1" : "0") +
                 " oracle=" + (c.oracle ? "1" : "0") + "\n";
        emit(common, out);
      }
      return r.disagreements.empty() ? kOk : kFails;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: invalid document: " << e.what() << "\n";
    return kInputError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
