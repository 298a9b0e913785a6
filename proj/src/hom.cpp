#include "wtah/hom.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace wtah {

namespace {

void check_target_tree(const Tree& t, const RankedAlphabet& target, const std::string& symbol, std::size_t rank) {
  if (t.is_variable()) {
    if (t.variable_index() > rank)
      throw ValidationError("image of '" + symbol + "/" + std::to_string(rank) + "' uses stray variable " +
                            t.label());
    return;
  }
  if (t.is_state()) throw ValidationError("image of '" + symbol + "' contains state '" + t.label() + "'");
  auto r = target.rank(t.label());
  if (!r) throw ValidationError("image of '" + symbol + "' uses unknown target symbol '" + t.label() + "'");
  if (*r != t.arity())
    throw ValidationError("image of '" + symbol + "': target symbol '" + t.label() + "' has rank " +
                          std::to_string(*r));
  for (const Tree& c : t.children()) check_target_tree(c, target, symbol, rank);
}

}  // namespace

TreeHomomorphism::TreeHomomorphism(RankedAlphabet source, RankedAlphabet target, std::map<std::string, Tree> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  for (const auto& [symbol, _] : images_)
    if (!source_.contains(symbol)) throw ValidationError("image given for unknown source symbol '" + symbol + "'");

  for (const auto& [symbol, rank] : source_.symbols()) {
    auto it = images_.find(symbol);
    if (it == images_.end()) throw ValidationError("missing image for source symbol '" + symbol + "'");
    const Tree& u = it->second;
    check_target_tree(u, target_, symbol, rank);
    if (u.is_variable()) throw ValidationError("erasing: image of '" + symbol + "' is the variable " + u.label());
    auto vars = variables_of(u);
    for (unsigned i = 1; i <= rank; ++i)
      if (!vars.count(i))
        throw ValidationError("deleting: image of '" + symbol + "/" + std::to_string(rank) + "' does not use x" +
                              std::to_string(i));
  }
}

TreeHomomorphism TreeHomomorphism::identity(const RankedAlphabet& alphabet) {
  std::map<std::string, Tree> images;
  for (const auto& [symbol, rank] : alphabet.symbols()) {
    std::vector<Tree> vars;
    for (unsigned i = 1; i <= rank; ++i) vars.push_back(Tree::variable(i));
    images.emplace(symbol, Tree(symbol, std::move(vars)));
  }
  return TreeHomomorphism(alphabet, alphabet, std::move(images));
}

const Tree& TreeHomomorphism::image(const std::string& symbol) const {
  auto it = images_.find(symbol);
  if (it == images_.end()) throw ValidationError("no image for symbol '" + symbol + "'");
  return it->second;
}

Tree TreeHomomorphism::apply(const Tree& s) const {
  if (!s.is_symbol()) throw ValidationError("homomorphism applied to non-ground tree " + s.to_string());
  auto rank = source_.rank(s.label());
  if (!rank || *rank != s.arity())
    throw ValidationError("'" + s.label() + "' is not a source symbol of rank " + std::to_string(s.arity()));
  std::vector<Tree> args;
  args.reserve(s.arity());
  for (const Tree& c : s.children()) args.push_back(apply(c));
  return substitute_vars(image(s.label()), args);
}

namespace {

// Matches pattern u (target tree over variables) against t, binding variables.
bool match_image(const Tree& u, const Tree& t, std::vector<std::optional<Tree>>& bindings) {
  if (u.is_variable()) {
    auto& slot = bindings[u.variable_index() - 1];
    if (slot) return *slot == t;
    slot = t;
    return true;
  }
  if (u.label() != t.label() || u.arity() != t.arity() || !t.is_symbol()) return false;
  for (std::size_t i = 0; i < u.arity(); ++i)
    if (!match_image(u.children()[i], t.children()[i], bindings)) return false;
  return true;
}

class PreimageSearch {
 public:
  explicit PreimageSearch(const TreeHomomorphism& h) : h_(h) {}

  const std::vector<Tree>& of(const Tree& t) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    std::vector<Tree> out;
    for (const auto& [symbol, rank] : h_.source().symbols()) {
      std::vector<std::optional<Tree>> bindings(rank);
      if (!match_image(h_.image(symbol), t, bindings)) continue;
      // Nonerasing: every binding is a proper subtree of t, so recursion terminates.
      std::vector<std::vector<Tree>> options;
      bool empty = false;
      for (const auto& b : bindings) {
        options.push_back(of(*b));
        if (options.back().empty()) {
          empty = true;
          break;
        }
      }
      if (empty) continue;
      std::vector<std::size_t> idx(rank, 0);
      for (;;) {
        std::vector<Tree> children;
        for (std::size_t i = 0; i < rank; ++i) children.push_back(options[i][idx[i]]);
        out.emplace_back(symbol, std::move(children));
        std::size_t k = 0;
        while (k < rank && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == rank) break;
      }
    }
    return memo_.emplace(t, std::move(out)).first->second;
  }

 private:
  const TreeHomomorphism& h_;
  std::unordered_map<Tree, std::vector<Tree>, TreeHash> memo_;
};

}  // namespace

std::vector<Tree> preimage(const TreeHomomorphism& h, const Tree& t) {
  PreimageSearch search(h);
  std::vector<Tree> out = search.of(t);
  std::sort(out.begin(), out.end(), [](const Tree& a, const Tree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_string() < b.to_string();
  });
  return out;
}

AnalysisVerdict check_tetris_free(const TreeHomomorphism& h, std::size_t height_bound) {
  std::vector<Tree> sources = trees_up_to_height(h.source(), height_bound);

  // Images are interned bottom-up so equal subterms share nodes; copying
  // homomorphisms otherwise make equality tests walk very large trees.
  std::unordered_set<Tree, TreeHash> interned;
  std::unordered_map<Tree, Tree, TreeHash> image_of;
  auto apply = [&](auto&& self, const Tree& s) -> Tree {
    if (auto it = image_of.find(s); it != image_of.end()) return it->second;
    std::vector<Tree> args;
    for (const Tree& c : s.children()) args.push_back(self(self, c));
    Tree t = *interned.insert(substitute_vars(h.image(s.label()), args)).first;
    image_of.emplace(s, t);
    return t;
  };

  std::unordered_map<Tree, std::vector<Tree>, TreeHash> groups;
  std::vector<Tree> images;
  for (const Tree& s : sources) {
    Tree t = apply(apply, s);
    auto [it, inserted] = groups.try_emplace(t);
    if (inserted) images.push_back(t);
    it->second.push_back(s);  // sources are already in tree order
  }
  sort_trees(images);

  // The condition is an equivalence on sources, so the lex-first violating pair
  // of a group always involves its first member.
  for (const Tree& t : images) {
    const auto& members = groups.at(t);
    const Tree& s = members.front();
    const auto ps = positions(s);
    for (std::size_t j = 1; j < members.size(); ++j) {
      const Tree& s2 = members[j];
      if (ps != positions(s2)) {
        auto v = AnalysisVerdict::violated("tetris-free", height_bound, {s, s2},
                                           "same image " + t.to_string() + " but different position sets");
        v.evidence["image"] = t.to_string();
        return v;
      }
      for (const Position& p : ps) {
        const std::string& a = s.at(p).label();
        const std::string& b = s2.at(p).label();
        if (a != b && !(h.image(a) == h.image(b))) {
          auto v = AnalysisVerdict::violated("tetris-free", height_bound, {s, s2},
                                             "same image " + t.to_string() + " but symbol images differ at " +
                                                 p.to_string());
          v.evidence["image"] = t.to_string();
          v.evidence["position"] = p.to_string();
          return v;
        }
      }
    }
  }
  return AnalysisVerdict::passed("tetris-free", height_bound);
}

}  // namespace wtah
