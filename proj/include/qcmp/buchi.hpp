#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcmp/lasso.hpp"
#include "qcmp/symbol.hpp"

namespace qcmp {

// Nondeterministic Büchi automaton over structured symbols. Immutable once
// built; letters are interned and sorted so that letter index order equals
// symbol order, and each state's edges are sorted by (letter, target).
class BuchiAutomaton {
 public:
  struct Edge {
    int letter;
    int dst;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  BuchiAutomaton() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  int num_states() const { return static_cast<int>(out_.size()); }
  std::size_t num_transitions() const;

  const std::vector<Symbol>& letters() const { return letters_; }
  const Symbol& letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }
  int letter_index(const Symbol& s) const;

  std::span<const Edge> out(int s) const { return out_[static_cast<std::size_t>(s)]; }
  // Edges of s reading the given letter.
  std::span<const Edge> out(int s, int letter) const;

  bool is_initial(int s) const { return initial_mask_[static_cast<std::size_t>(s)]; }
  bool is_accepting(int s) const { return accepting_[static_cast<std::size_t>(s)]; }
  const std::vector<int>& initial() const { return initial_; }
  std::vector<int> accepting_states() const;
  bool all_accepting() const;

  // Empty when the state was created without a name.
  const std::string& name(int s) const;
  bool has_names() const { return !names_.empty(); }

  friend bool operator==(const BuchiAutomaton&, const BuchiAutomaton&) = default;

 private:
  friend class AutomatonBuilder;

  Alphabet alphabet_;
  std::vector<Symbol> letters_;
  std::vector<std::vector<Edge>> out_;
  std::vector<int> initial_;
  std::vector<bool> initial_mask_;
  std::vector<bool> accepting_;
  std::vector<std::string> names_;
};

class AutomatonBuilder {
 public:
  explicit AutomatonBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  int add_state(bool initial = false, bool accepting = false, std::string name = {});
  void add_states(int n);
  void set_initial(int s, bool v = true);
  void set_accepting(int s, bool v = true);
  void add_transition(int src, const Symbol& sym, int dst);
  int num_states() const { return static_cast<int>(accepting_.size()); }

  // Validates symbols against the alphabet.
  BuchiAutomaton build() const;

 private:
  struct RawEdge {
    int src;
    Symbol sym;
    int dst;
  };
  Alphabet alphabet_;
  std::vector<RawEdge> edges_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
  std::vector<std::string> names_;
  bool any_name_ = false;
};

// Basic shapes.
BuchiAutomaton universal_automaton(const Alphabet& alphabet);
BuchiAutomaton empty_automaton(const Alphabet& alphabet);
// Accepts exactly w.
BuchiAutomaton lasso_automaton(const Alphabet& alphabet, const LassoWord& w);

// Language operations. Every construction returns a trimmed automaton.
BuchiAutomaton trim(const BuchiAutomaton& a);
BuchiAutomaton union_of(const BuchiAutomaton& a, const BuchiAutomaton& b);
BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b);
BuchiAutomaton intersect_on(const BuchiAutomaton& a, const BuchiAutomaton& b, const Projection& proj);
BuchiAutomaton project(const BuchiAutomaton& a, const Projection& proj);

bool accepts_lasso(const BuchiAutomaton& a, const LassoWord& w);
// States q_0 .. q_length of an accepting run on w (q_i is the state before
// reading letter i), if any.
std::optional<std::vector<int>> accepting_run(const BuchiAutomaton& a, const LassoWord& w, std::size_t length);
std::optional<LassoWord> is_empty(const BuchiAutomaton& a);

// Every nontrivial SCC is entirely accepting or entirely rejecting.
bool is_weak(const BuchiAutomaton& a);

// Rank-based complement (tight level rankings) relative to letters^omega.
// The one-argument form uses the full alphabet, which must be finite.
BuchiAutomaton complement(const BuchiAutomaton& a);
BuchiAutomaton complement(const BuchiAutomaton& a, const std::vector<Symbol>& letters);
// Breakpoint complement; only valid for weak automata.
BuchiAutomaton complement_weak(const BuchiAutomaton& a, const std::vector<Symbol>& letters);
// Complement from the transition monoid (idempotent loop classes).
BuchiAutomaton complement_ramsey(const BuchiAutomaton& a, const std::vector<Symbol>& letters);

// L(a) \ L(b) as an automaton, and a lasso in it if any. Weak b goes through
// the breakpoint complement, everything else through the transition monoid.
BuchiAutomaton difference(const BuchiAutomaton& a, const BuchiAutomaton& b);
std::optional<LassoWord> difference_witness(const BuchiAutomaton& a, const BuchiAutomaton& b);
// Same question answered with the rank-based complement; small inputs only.
std::optional<LassoWord> difference_witness_ranked(const BuchiAutomaton& a, const BuchiAutomaton& b);

// L(a) ⊆ L(b), i.e. a ∩ complement(b) is empty.
bool contains(const BuchiAutomaton& a, const BuchiAutomaton& b);
bool equivalent(const BuchiAutomaton& a, const BuchiAutomaton& b);

// Structural comparison up to state renaming. Acceptance marks are compared
// only on states lying on a cycle, since elsewhere they cannot matter.
bool isomorphic(const BuchiAutomaton& a, const BuchiAutomaton& b);

}  // namespace qcmp
