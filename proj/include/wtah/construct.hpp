#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wtah/automaton.hpp"
#include "wtah/hom.hpp"

namespace wtah {

/// Equivalent WTA for a WTG. Each deep left-hand side is cut top-down; every
/// non-state child subtree gets a fresh state `n<rule>_<position>` reached by
/// weight-one rules, and the original weight stays on the root rule. A WTA is
/// returned unchanged.
Automaton wtg_to_wta(const Automaton& g);

/// Eq-restricted WTAh recognizing the homomorphic image of a WTA's series.
///
/// For every rule sigma(q1..qk) -> q the image h(sigma) becomes the left-hand
/// side: the lexicographically least occurrence of x_i carries q_i, every other
/// occurrence carries the sink, and all occurrences of x_i form one constraint
/// class. Rules that coincide after this are merged by adding their weights.
/// Sink rules delta(bot..bot) -> bot with weight one are added for every target
/// symbol. The sink is named `bot` unless that name is taken.
Automaton hom_image(const Automaton& a, const TreeHomomorphism& h);

/// The unmerged intermediate automaton: the root of every image left-hand side
/// is annotated with its source rule (`delta__r<index>`), so no two rules
/// coincide. `relabel` maps annotated symbols back to target symbols.
struct AnnotatedImage {
  Automaton automaton;
  std::map<std::string, std::string> relabel;
};
AnnotatedImage hom_image_annotated(const Automaton& a, const TreeHomomorphism& h);

/// Applies a symbol relabelling to all left-hand sides, adds up the weights of
/// rules that become identical, and restricts the alphabet to `alphabet`.
Automaton relabel_merge(const Automaton& a, const std::map<std::string, std::string>& relabel,
                        const RankedAlphabet& alphabet);

/// Maps a run of `a` for s to the corresponding run of `image` (= hom_image(a, h))
/// for h(s). Non-leading copies are covered by the unique sink run.
RunPtr run_image(const Automaton& a, const TreeHomomorphism& h, const Automaton& image, const Run& run);

struct ZeroDivisorElimination {
  Automaton automaton;
  /// True when the input was returned unchanged (no zero divisors can arise).
  bool trivial = true;
  /// Dickson cap u: exponent vectors live in {0..u}^n.
  std::size_t cap = 0;
  /// The rule weights other than one, s_1..s_n.
  std::vector<Weight> generators;
  /// |V|, the exponent vectors whose product is nonzero.
  std::size_t nonzero_vectors = 1;
};

/// Equivalent eq-restricted WTAh all of whose runs have nonzero weight. Over a
/// zero-divisor-free semiring, or when all rule weights are one, the input comes
/// back unchanged; over a finite semiring every non-sink state is paired with a
/// capped exponent vector tracking the product of rule weights so far, and rules
/// whose product would vanish are omitted. Only reachable pairs are kept.
ZeroDivisorElimination eliminate_zero_divisors_detailed(const Automaton& a);
inline Automaton eliminate_zero_divisors(const Automaton& a) { return eliminate_zero_divisors_detailed(a).automaton; }

/// Boolean automaton for the support. Every sink position is relabelled with the
/// unique non-sink state of its constraint class; the sink and its rules are
/// dropped and all weights become boolean one. Accepts eq-restricted WTAh and
/// constraint-free automata.
Automaton project_boolean(const Automaton& a);

/// Linearization of an eq-restricted WTAh: every constraint class is
/// instantiated by one tree of height <= lin_height with nonzero weight in each
/// member state; the rule weight is multiplied by those state weights and
/// coinciding rules are summed. Result is a WTG without the sink.
Automaton linearize(const Automaton& a, std::size_t lin_height);

/// The same instantiation for an arbitrary WTAh (every nontrivial class is
/// instantiated). This is the linearization of the boolean TA_hom side.
Automaton linearize_constrained(const Automaton& a, std::size_t lin_height);

/// A name based on `base` not present in `taken`; inserts it.
std::string fresh_name(const std::string& base, std::set<std::string>& taken);

}  // namespace wtah
