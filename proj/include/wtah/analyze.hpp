#pragma once

#include <cstddef>

#include "wtah/automaton.hpp"
#include "wtah/hom.hpp"
#include "wtah/verdict.hpp"

namespace wtah {

/// Groups the source trees of height <= bound by their image and compares, for
/// every pair (s, s') in a group (s = s' included) and all accepting runs, the
/// target states at each position. Restricted to WTA inputs. Trees without an
/// accepting run cannot take part in a violation and are skipped; a pair whose
/// position sets differ counts as a violation.
AnalysisVerdict check_h_unambiguous(const Automaton& a, const TreeHomomorphism& h, std::size_t height_bound);

/// Compares the two series on every tree of height <= bound. Trees without a run
/// to a final state in either automaton have value zero on both sides and are
/// skipped. The witness carries value_a and value_b.
AnalysisVerdict bounded_equivalence(const Automaton& a, const Automaton& b, std::size_t height_bound);

/// Checks |accepting runs of linearize(a, lin_height) for t| <= |accepting runs
/// of a for t| on every tree of height <= bound.
AnalysisVerdict run_count_compare(const Automaton& a, std::size_t lin_height, std::size_t height_bound);

/// Union of the trees of height <= bound reaching a final state of a or of b,
/// in tree order.
std::vector<Tree> candidate_trees(const Automaton& a, const Automaton& b, std::size_t height_bound);

}  // namespace wtah
