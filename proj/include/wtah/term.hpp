#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wtah/error.hpp"

namespace wtah {

/// Finite set of symbols, each with a fixed rank.
class RankedAlphabet {
 public:
  RankedAlphabet() = default;
  RankedAlphabet(std::initializer_list<std::pair<std::string, std::size_t>> symbols);

  /// Adds a symbol; re-adding with the same rank is a no-op, with another rank an error.
  void add(const std::string& name, std::size_t rank);

  bool contains(const std::string& name) const { return ranks_.count(name) != 0; }
  std::optional<std::size_t> rank(const std::string& name) const;
  std::size_t size() const { return ranks_.size(); }
  bool empty() const { return ranks_.empty(); }
  std::size_t max_rank() const;

  /// Symbols sorted by name.
  std::vector<std::pair<std::string, std::size_t>> symbols() const;
  std::vector<std::string> symbols_of_rank(std::size_t rank) const;

  /// `a/0 g/1 k/2`
  std::string to_string() const;

  friend bool operator==(const RankedAlphabet&, const RankedAlphabet&) = default;

 private:
  std::map<std::string, std::size_t> ranks_;
};

enum class LabelKind : std::uint8_t { Symbol, State, Variable };

/// A path from the root: 1-based child indices. The empty path is the root.
///
/// Ordering is the lexicographic order on sequences with a proper prefix
/// preceding its extensions.
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<unsigned> path) : path_(std::move(path)) {}
  Position(std::initializer_list<unsigned> path) : path_(path) {}

  /// `e` for the root, otherwise dot-joined decimals such as `2.1`.
  static Position parse(std::string_view text);

  const std::vector<unsigned>& path() const { return path_; }
  std::size_t depth() const { return path_.size(); }
  bool is_root() const { return path_.empty(); }
  Position child(unsigned index) const;
  bool is_prefix_of(const Position& other) const;

  std::string to_string() const;

  friend bool operator==(const Position&, const Position&) = default;
  friend std::strong_ordering operator<=>(const Position& a, const Position& b) {
    return a.path_ <=> b.path_;
  }

 private:
  std::vector<unsigned> path_;
};

/// An immutable finite tree. Nodes are shared; equality is structural.
///
/// Labels are alphabet symbols, or leaf tokens (states, variables) that never
/// have children.
class Tree {
 public:
  Tree(std::string label, std::vector<Tree> children = {}, LabelKind kind = LabelKind::Symbol);

  static Tree state(std::string name) { return Tree(std::move(name), {}, LabelKind::State); }
  /// The variable x<index>, index >= 1.
  static Tree variable(unsigned index);

  const std::string& label() const { return node_->label; }
  LabelKind kind() const { return node_->kind; }
  bool is_symbol() const { return kind() == LabelKind::Symbol; }
  bool is_state() const { return kind() == LabelKind::State; }
  bool is_variable() const { return kind() == LabelKind::Variable; }
  /// Index i of the variable x_i. Only valid for variables.
  unsigned variable_index() const;

  const std::vector<Tree>& children() const { return node_->children; }
  std::size_t arity() const { return node_->children.size(); }
  std::size_t size() const { return node_->size; }
  std::size_t height() const { return node_->height; }
  std::size_t hash() const { return node_->hash; }

  /// Subtree at p; throws ValidationError when p is not a position of this tree.
  const Tree& at(const Position& p) const;
  bool has_position(const Position& p) const;

  /// Canonical text: `k(g(a),a)`.
  std::string to_string() const;

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  struct Node {
    std::string label;
    LabelKind kind;
    std::vector<Tree> children;
    std::size_t size;
    std::size_t height;
    std::size_t hash;
  };

  std::shared_ptr<const Node> node_;
};

struct TreeHash {
  std::size_t operator()(const Tree& t) const { return t.hash(); }
};

/// Enumeration order used everywhere: height, then size, then term text.
bool tree_order_less(const Tree& a, const Tree& b);
void sort_trees(std::vector<Tree>& trees);

/// All positions of t in lexicographic order.
std::vector<Position> positions(const Tree& t);

/// Positions whose node satisfies pred, in lexicographic order.
std::vector<Position> positions_where(const Tree& t, const std::function<bool(const Tree&)>& pred);

/// Positions labelled by `label` (of any kind).
std::vector<Position> positions_of_label(const Tree& t, const std::string& label);

/// Positions carrying a state leaf.
std::vector<Position> state_positions(const Tree& t);

/// t with the subtree at p replaced by replacement.
Tree replace_at(const Tree& t, const Position& p, const Tree& replacement);

/// Simultaneous replacement of leaf tokens by label; unmapped leaves are kept.
Tree substitute(const Tree& t, const std::map<std::string, Tree>& theta);

/// Replaces x_i by args[i-1]; variables beyond args.size() are kept.
Tree substitute_vars(const Tree& t, const std::vector<Tree>& args);

/// Indices of the variables occurring in t.
std::set<unsigned> variables_of(const Tree& t);

/// The lexicographically least position of a nonempty set.
Position lex_min_position(const std::vector<Position>& ps);

/// Which leaf names are states, and whether x1, x2, ... are variables.
struct LeafTokens {
  std::set<std::string> states;
  bool variables = false;
};

/// Parses `name | name '(' tree (',' tree)* ')'`. Symbols must be in the alphabet
/// with matching arity.
Tree parse_term(const RankedAlphabet& alphabet, const LeafTokens& leaves, std::string_view text);

/// Like parse_term, but unknown symbols are added to the alphabet with their
/// observed arity.
Tree parse_term_extending(RankedAlphabet& alphabet, const LeafTokens& leaves, std::string_view text);

/// Every ground tree over the alphabet with height <= max_height, in tree order.
/// Throws when more than `limit` trees would be produced.
std::vector<Tree> trees_up_to_height(const RankedAlphabet& alphabet, std::size_t max_height,
                                     std::size_t limit = 5'000'000);

/// Number of ground trees of height <= max_height, saturating at `cap`.
std::size_t count_trees_up_to_height(const RankedAlphabet& alphabet, std::size_t max_height,
                                     std::size_t cap = SIZE_MAX);

bool is_valid_name(std::string_view name);

}  // namespace wtah

template <>
struct std::hash<wtah::Tree> {
  std::size_t operator()(const wtah::Tree& t) const { return t.hash(); }
};
