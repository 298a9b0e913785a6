#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wtah/semiring.hpp"
#include "wtah/term.hpp"
#include "wtah/verdict.hpp"

namespace wtah {

/// An equivalence relation on the state positions of a left-hand side, kept as
/// a canonical partition: members sorted, classes ordered by least member,
/// singleton classes dropped.
class Constraint {
 public:
  Constraint() = default;

  /// Closes the pairs under reflexivity, symmetry and transitivity. Trivial pairs
  /// (p = p) are accepted and vanish.
  static Constraint from_pairs(const std::vector<std::pair<Position, Position>>& pairs);
  static Constraint from_classes(std::vector<std::vector<Position>> classes);

  /// Nontrivial classes only.
  const std::vector<std::vector<Position>>& classes() const { return classes_; }
  bool empty() const { return classes_.empty(); }

  /// The class of p, which is {p} when p is unconstrained.
  std::vector<Position> class_of(const Position& p) const;
  std::vector<Position> members() const;

  /// `1 = 2.1, 1 = 2.2`: each class as pairs (least member, other member). Empty
  /// for the identity relation.
  std::string to_string() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend auto operator<=>(const Constraint& a, const Constraint& b) { return a.classes_ <=> b.classes_; }

 private:
  std::vector<std::vector<Position>> classes_;
};

/// lhs -E->_w target. The lhs is a tree over symbols and state leaves that is not
/// a bare state.
struct Rule {
  Tree lhs;
  Constraint constraint;
  std::string target;
  Weight weight;

  /// `k(q,g(bot)) -> qf @ 1 | 1 = 2.1`
  std::string to_string() const;
};

/// Weighted tree automaton with hom-constraints. Immutable after construction;
/// the constructor validates every structural requirement.
class Automaton {
 public:
  /// Throws ValidationError on an undeclared state or symbol, a bare-state lhs, a
  /// constraint off the lhs state positions, a zero or foreign rule weight, a
  /// duplicate rule, a final or undeclared sink, or a name used both as state and
  /// as symbol.
  Automaton(Semiring semiring, RankedAlphabet alphabet, std::vector<std::string> states,
            std::optional<std::string> sink, std::vector<std::string> finals, std::vector<Rule> rules);

  const Semiring& semiring() const { return semiring_; }
  const RankedAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  const std::optional<std::string>& sink() const { return sink_; }
  const std::vector<std::string>& finals() const { return finals_; }
  const std::vector<Rule>& rules() const { return rules_; }

  std::size_t state_index(const std::string& name) const;
  bool has_state(const std::string& name) const { return state_ids_.count(name) != 0; }
  bool is_final(std::size_t state) const { return final_flags_[state]; }
  bool is_final(const std::string& name) const { return is_final(state_index(name)); }
  bool is_sink(std::size_t state) const { return sink_id_ && *sink_id_ == state; }

  /// All constraints are the identity.
  bool is_wtg() const;
  /// A WTG whose left-hand sides are a symbol over states.
  bool is_wta() const;

  /// Cached is_eq_restricted(*this).
  bool eq_restricted() const { return eq_restricted_; }

  /// Same automaton with states sorted by name and rules sorted by
  /// (lhs text, target, constraint text).
  Automaton canonical() const;

  LeafTokens leaf_tokens() const;

  // Precomputed per-rule data used by matching.
  struct CompiledRule {
    std::vector<Position> state_positions;      // lexicographic
    std::vector<std::size_t> states;            // state id per state position
    std::vector<std::vector<std::size_t>> classes;  // indices into state_positions, every class incl. singletons
    std::size_t target;
  };
  const CompiledRule& compiled(std::size_t rule) const { return compiled_[rule]; }
  /// Rule indices whose lhs root is `symbol`, in declaration order.
  const std::vector<std::size_t>& rules_with_root(const std::string& symbol) const;

 private:
  Semiring semiring_;
  RankedAlphabet alphabet_;
  std::vector<std::string> states_;
  std::optional<std::string> sink_;
  std::vector<std::string> finals_;
  std::vector<Rule> rules_;

  std::map<std::string, std::size_t> state_ids_;
  std::optional<std::size_t> sink_id_;
  std::vector<bool> final_flags_;
  std::vector<CompiledRule> compiled_;
  std::map<std::string, std::vector<std::size_t>> by_root_;
  bool eq_restricted_ = false;
};

/// Equality of canonical forms.
bool canonically_equal(const Automaton& a, const Automaton& b);

/// Renames states to s0, s1, ... by first use (sink becomes `bot`), visiting
/// rules in an order that ignores state names. Used for comparisons insensitive
/// to state naming.
Automaton rename_states_by_first_use(const Automaton& a);

struct EqRestriction {
  bool yes = false;
  std::string reason;
};

/// Sink present with exactly one weight-1 rule sigma(bot, ..., bot) -> bot per
/// symbol and no other rule into it; every constraint class of every other rule
/// holds exactly one non-sink state, all other members being the sink.
EqRestriction is_eq_restricted(const Automaton& a);

/// Captures the subtrees of t at the state positions of lhs, or nullopt if t does
/// not fit the lhs shape.
std::optional<std::vector<Tree>> match_lhs(const Tree& lhs, const Tree& t);

// ---------------------------------------------------------------- runs

struct Run;
using RunPtr = std::shared_ptr<const Run>;

/// A run: the rule applied at the root, its target, the processed tree, the child
/// runs (one per lhs state position, in lexicographic order) and the weight
/// (rule weight times child weights).
struct Run {
  std::size_t rule;
  std::size_t target;
  Tree subject;
  Weight weight;
  std::vector<RunPtr> children;

  bool valid() const { return !weight.is_zero(); }
};

/// The run as a tree over symbols and rules: the lhs with its root relabelled
/// `r<index>` and each state leaf replaced by the child run.
Tree run_tree(const Automaton& a, const Run& run);
bool same_run(const Run& x, const Run& y);

/// Enumerates runs bottom-up with a memo per (subtree, state). Owns its memo; one
/// instance may be reused across trees of the same automaton.
class RunEnumerator {
 public:
  explicit RunEnumerator(const Automaton& a) : a_(a) {}

  const std::vector<RunPtr>& runs(const Tree& t, std::size_t state);
  std::vector<RunPtr> accepting_runs(const Tree& t);

 private:
  const std::vector<std::vector<RunPtr>>& all(const Tree& t);

  const Automaton& a_;
  std::unordered_map<Tree, std::vector<std::vector<RunPtr>>, TreeHash> memo_;
};

/// Every run of a for t to q, ordered by rule index and then child runs.
std::vector<RunPtr> runs_to_state(const Automaton& a, const Tree& t, const std::string& q);

// ---------------------------------------------------------------- semantics

/// Computes wt^q(t) for all states at once by dynamic programming over subtrees.
class Evaluator {
 public:
  explicit Evaluator(const Automaton& a) : a_(a) {}

  /// wt^q(t) for every state q, indexed by state id.
  const std::vector<Weight>& state_weights(const Tree& t);
  Weight state_weight(const Tree& t, std::size_t state) { return state_weights(t)[state]; }
  /// Sum over final states.
  Weight evaluate(const Tree& t);

 private:
  const Automaton& a_;
  std::unordered_map<Tree, std::vector<Weight>, TreeHash> memo_;
};

Weight evaluate(const Automaton& a, const Tree& t);
Weight state_weight(const Automaton& a, const Tree& t, const std::string& q);

/// Trees of height <= bound that have at least one run (of any weight) to each
/// state. The sink of an eq-restricted automaton accepts everything and is not
/// materialized; its entry stays empty.
class ReachableTrees {
 public:
  ReachableTrees(const Automaton& a, std::size_t height_bound);

  const std::unordered_set<Tree, TreeHash>& of(std::size_t state) const { return sets_[state]; }
  /// Union over the final states, in tree order.
  std::vector<Tree> final_trees() const;

 private:
  std::vector<std::unordered_set<Tree, TreeHash>> sets_;
  std::vector<std::size_t> finals_;
};

/// Trees of height <= bound with nonzero value, in tree order.
std::vector<std::pair<Tree, Weight>> support_up_to(const Automaton& a, std::size_t height_bound);

/// Trees of height <= bound with wt^q(t) != 0, in tree order.
std::vector<std::pair<Tree, Weight>> state_language_up_to(const Automaton& a, const std::string& q,
                                                          std::size_t height_bound);

/// First tree (tree order) of height <= bound with two or more accepting runs.
AnalysisVerdict check_unambiguous(const Automaton& a, std::size_t height_bound);

}  // namespace wtah
