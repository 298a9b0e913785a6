#pragma once

#include <map>
#include <string>
#include <vector>

#include "wtah/term.hpp"
#include "wtah/verdict.hpp"

namespace wtah {

/// A nondeleting, nonerasing tree homomorphism from source-alphabet trees to
/// target-alphabet trees, given by one image per source symbol. A symbol of
/// rank k maps to a target tree over the variables x1..xk that uses each of
/// them and is not itself a variable.
class TreeHomomorphism {
 public:
  /// Throws ValidationError for a missing or unknown symbol, a variable beyond
  /// the symbol's rank, an unused variable (deleting) or a bare-variable image
  /// (erasing).
  TreeHomomorphism(RankedAlphabet source, RankedAlphabet target, std::map<std::string, Tree> images);

  /// sigma -> sigma(x1, ..., xk) for every symbol.
  static TreeHomomorphism identity(const RankedAlphabet& alphabet);

  const RankedAlphabet& source() const { return source_; }
  const RankedAlphabet& target() const { return target_; }
  const Tree& image(const std::string& symbol) const;
  const std::map<std::string, Tree>& images() const { return images_; }

  /// Image of a ground source tree.
  Tree apply(const Tree& s) const;

 private:
  RankedAlphabet source_;
  RankedAlphabet target_;
  std::map<std::string, Tree> images_;
};

inline TreeHomomorphism validate_hom(RankedAlphabet source, RankedAlphabet target,
                                     std::map<std::string, Tree> images) {
  return TreeHomomorphism(std::move(source), std::move(target), std::move(images));
}

inline Tree apply_hom(const TreeHomomorphism& h, const Tree& s) { return h.apply(s); }

/// All source trees s with h(s) = t, ordered by size and then term text.
std::vector<Tree> preimage(const TreeHomomorphism& h, const Tree& t);

/// Searches all pairs of source trees of height <= bound sharing an image for a
/// violation of: equal position sets, and equal symbol images at every position.
/// Pairs are visited by image (tree order), then by member (tree order).
AnalysisVerdict check_tetris_free(const TreeHomomorphism& h, std::size_t height_bound);

}  // namespace wtah
