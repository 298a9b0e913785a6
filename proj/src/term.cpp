#include "wtah/term.hpp"

#include <boost/container_hash/hash.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>

namespace wtah {

// ---------------------------------------------------------------- alphabet

RankedAlphabet::RankedAlphabet(std::initializer_list<std::pair<std::string, std::size_t>> symbols) {
  for (const auto& [name, rank] : symbols) add(name, rank);
}

void RankedAlphabet::add(const std::string& name, std::size_t rank) {
  if (!is_valid_name(name)) throw ValidationError("invalid symbol name '" + name + "'");
  auto [it, inserted] = ranks_.emplace(name, rank);
  if (!inserted && it->second != rank)
    throw ValidationError("symbol '" + name + "' used with rank " + std::to_string(rank) +
                          " but declared with rank " + std::to_string(it->second));
}

std::optional<std::size_t> RankedAlphabet::rank(const std::string& name) const {
  auto it = ranks_.find(name);
  if (it == ranks_.end()) return std::nullopt;
  return it->second;
}

std::size_t RankedAlphabet::max_rank() const {
  std::size_t m = 0;
  for (const auto& [_, r] : ranks_) m = std::max(m, r);
  return m;
}

std::vector<std::pair<std::string, std::size_t>> RankedAlphabet::symbols() const {
  return {ranks_.begin(), ranks_.end()};
}

std::vector<std::string> RankedAlphabet::symbols_of_rank(std::size_t rank) const {
  std::vector<std::string> out;
  for (const auto& [name, r] : ranks_)
    if (r == rank) out.push_back(name);
  return out;
}

std::string RankedAlphabet::to_string() const {
  std::string out;
  for (const auto& [name, r] : ranks_) {
    if (!out.empty()) out += ' ';
    out += name + "/" + std::to_string(r);
  }
  return out;
}

// ---------------------------------------------------------------- positions

Position Position::parse(std::string_view text) {
  if (text == "e" || text == "ε") return Position();
  std::vector<unsigned> path;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t dot = text.find('.', start);
    std::string_view part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || value == 0)
      throw ParseError("invalid position '" + std::string(text) + "'");
    path.push_back(value);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Position(std::move(path));
}

Position Position::child(unsigned index) const {
  auto path = path_;
  path.push_back(index);
  return Position(std::move(path));
}

bool Position::is_prefix_of(const Position& other) const {
  return path_.size() <= other.path_.size() && std::equal(path_.begin(), path_.end(), other.path_.begin());
}

std::string Position::to_string() const {
  if (path_.empty()) return "e";
  std::string out;
  for (unsigned i : path_) {
    if (!out.empty()) out += '.';
    out += std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------- trees

Tree::Tree(std::string label, std::vector<Tree> children, LabelKind kind) {
  if (kind != LabelKind::Symbol && !children.empty())
    throw ValidationError("leaf token '" + label + "' cannot have children");
  std::size_t size = 1;
  std::size_t height = 0;
  std::size_t h = 0;
  boost::hash_combine(h, label);
  boost::hash_combine(h, static_cast<int>(kind));
  boost::hash_combine(h, children.size());
  for (const Tree& c : children) {
    size += c.size();
    height = std::max(height, c.height() + 1);
    boost::hash_combine(h, c.hash());
  }
  node_ = std::make_shared<const Node>(Node{std::move(label), kind, std::move(children), size, height, h});
}

Tree Tree::variable(unsigned index) {
  if (index == 0) throw ValidationError("variables are numbered from 1");
  return Tree("x" + std::to_string(index), {}, LabelKind::Variable);
}

unsigned Tree::variable_index() const {
  if (!is_variable()) throw Error("'" + label() + "' is not a variable");
  return static_cast<unsigned>(std::stoul(label().substr(1)));
}

const Tree& Tree::at(const Position& p) const {
  const Tree* cur = this;
  for (unsigned i : p.path()) {
    if (i == 0 || i > cur->arity())
      throw ValidationError("position " + p.to_string() + " is not a position of " + to_string());
    cur = &cur->children()[i - 1];
  }
  return *cur;
}

bool Tree::has_position(const Position& p) const {
  const Tree* cur = this;
  for (unsigned i : p.path()) {
    if (i == 0 || i > cur->arity()) return false;
    cur = &cur->children()[i - 1];
  }
  return true;
}

namespace {

void write_term(const Tree& t, std::string& out) {
  out += t.label();
  if (t.arity() == 0) return;
  out += '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) out += ',';
    write_term(t.children()[i], out);
  }
  out += ')';
}

}  // namespace

std::string Tree::to_string() const {
  std::string out;
  write_term(*this, out);
  return out;
}

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind() || a.label() != b.label())
    return false;
  return a.children() == b.children();
}

bool tree_order_less(const Tree& a, const Tree& b) {
  if (a.height() != b.height()) return a.height() < b.height();
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_string() < b.to_string();
}

void sort_trees(std::vector<Tree>& trees) {
  std::vector<std::pair<std::tuple<std::size_t, std::size_t, std::string>, Tree>> keyed;
  keyed.reserve(trees.size());
  for (Tree& t : trees) keyed.emplace_back(std::make_tuple(t.height(), t.size(), t.to_string()), std::move(t));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  trees.clear();
  for (auto& [_, t] : keyed) trees.push_back(std::move(t));
}

namespace {

void collect_positions(const Tree& t, Position& cur, const std::function<bool(const Tree&)>& pred,
                       std::vector<Position>& out) {
  if (pred(t)) out.push_back(cur);
  for (unsigned i = 0; i < t.arity(); ++i) {
    Position next = cur.child(i + 1);
    collect_positions(t.children()[i], next, pred, out);
  }
}

}  // namespace

std::vector<Position> positions_where(const Tree& t, const std::function<bool(const Tree&)>& pred) {
  std::vector<Position> out;
  Position root;
  collect_positions(t, root, pred, out);
  return out;
}

std::vector<Position> positions(const Tree& t) {
  return positions_where(t, [](const Tree&) { return true; });
}

std::vector<Position> positions_of_label(const Tree& t, const std::string& label) {
  return positions_where(t, [&](const Tree& n) { return n.label() == label; });
}

std::vector<Position> state_positions(const Tree& t) {
  return positions_where(t, [](const Tree& n) { return n.is_state(); });
}

namespace {

Tree replace_rec(const Tree& t, const std::vector<unsigned>& path, std::size_t depth, const Tree& replacement) {
  if (depth == path.size()) return replacement;
  unsigned i = path[depth];
  std::vector<Tree> children = t.children();
  children[i - 1] = replace_rec(children[i - 1], path, depth + 1, replacement);
  return Tree(t.label(), std::move(children), t.kind());
}

}  // namespace

Tree replace_at(const Tree& t, const Position& p, const Tree& replacement) {
  if (!t.has_position(p))
    throw ValidationError("position " + p.to_string() + " is not a position of " + t.to_string());
  return replace_rec(t, p.path(), 0, replacement);
}

Tree substitute(const Tree& t, const std::map<std::string, Tree>& theta) {
  if (t.arity() == 0) {
    if (t.kind() != LabelKind::Symbol) {
      auto it = theta.find(t.label());
      if (it != theta.end()) return it->second;
    }
    return t;
  }
  std::vector<Tree> children;
  children.reserve(t.arity());
  for (const Tree& c : t.children()) children.push_back(substitute(c, theta));
  return Tree(t.label(), std::move(children), t.kind());
}

Tree substitute_vars(const Tree& t, const std::vector<Tree>& args) {
  if (t.is_variable()) {
    unsigned i = t.variable_index();
    return i <= args.size() ? args[i - 1] : t;
  }
  if (t.arity() == 0) return t;
  std::vector<Tree> children;
  children.reserve(t.arity());
  for (const Tree& c : t.children()) children.push_back(substitute_vars(c, args));
  return Tree(t.label(), std::move(children), t.kind());
}

std::set<unsigned> variables_of(const Tree& t) {
  std::set<unsigned> out;
  for (const Position& p : positions_where(t, [](const Tree& n) { return n.is_variable(); }))
    out.insert(t.at(p).variable_index());
  return out;
}

Position lex_min_position(const std::vector<Position>& ps) {
  if (ps.empty()) throw Error("lex_min_position of an empty set");
  return *std::min_element(ps.begin(), ps.end());
}

bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name[0]);
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

// ---------------------------------------------------------------- parsing

namespace {

bool is_variable_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return false;
  return std::all_of(name.begin() + 1, name.end(), [](unsigned char c) { return std::isdigit(c); });
}

class TermParser {
 public:
  TermParser(const RankedAlphabet& alphabet, RankedAlphabet* extend, const LeafTokens& leaves,
             std::string_view text)
      : alphabet_(alphabet), extend_(extend), leaves_(leaves), text_(text) {}

  Tree parse() {
    Tree t = tree();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in term '" + std::string(text_) + "'", 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      auto c = static_cast<unsigned char>(text_[pos_]);
      if (std::isalnum(c) || c == '_')
        ++pos_;
      else
        break;
    }
    std::string out(text_.substr(start, pos_ - start));
    if (!is_valid_name(out)) {
      pos_ = start;
      fail(out.empty() ? "expected a name" : "invalid name '" + out + "'");
    }
    return out;
  }

  Tree tree() {
    std::size_t start = pos_;
    std::string label = name();
    std::vector<Tree> children;
    skip_ws();
    bool parens = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      parens = true;
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')') {
        ++pos_;
      } else {
        for (;;) {
          children.push_back(tree());
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < text_.size() && text_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }

    if (leaves_.states.count(label)) {
      if (!children.empty() || parens) {
        pos_ = start;
        fail("state '" + label + "' cannot have arguments");
      }
      return Tree::state(label);
    }
    if (leaves_.variables && is_variable_name(label)) {
      if (!children.empty() || parens) {
        pos_ = start;
        fail("variable '" + label + "' cannot have arguments");
      }
      return Tree(label, {}, LabelKind::Variable);
    }
    auto rank = alphabet_.rank(label);
    if (!rank) {
      if (!extend_) {
        pos_ = start;
        fail("unknown symbol '" + label + "'");
      }
      extend_->add(label, children.size());
    } else if (*rank != children.size()) {
      pos_ = start;
      fail("arity mismatch: '" + label + "' has rank " + std::to_string(*rank) + " but got " +
           std::to_string(children.size()) + " arguments");
    }
    return Tree(label, std::move(children));
  }

  const RankedAlphabet& alphabet_;
  RankedAlphabet* extend_;
  const LeafTokens& leaves_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_term(const RankedAlphabet& alphabet, const LeafTokens& leaves, std::string_view text) {
  return TermParser(alphabet, nullptr, leaves, text).parse();
}

Tree parse_term_extending(RankedAlphabet& alphabet, const LeafTokens& leaves, std::string_view text) {
  return TermParser(alphabet, &alphabet, leaves, text).parse();
}

// ---------------------------------------------------------------- enumeration

std::size_t count_trees_up_to_height(const RankedAlphabet& alphabet, std::size_t max_height, std::size_t cap) {
  auto sat_mul = [cap](std::size_t a, std::size_t b) -> std::size_t {
    if (a == 0 || b == 0) return 0;
    return a > cap / b ? cap : a * b;
  };
  auto sat_add = [cap](std::size_t a, std::size_t b) -> std::size_t { return a > cap - b ? cap : a + b; };
  std::size_t count = 0;  // trees of height <= h-1
  for (std::size_t h = 0; h <= max_height; ++h) {
    std::size_t next = 0;
    for (const auto& [_, r] : alphabet.symbols()) {
      std::size_t c = 1;
      for (std::size_t i = 0; i < r; ++i) c = sat_mul(c, count);
      next = sat_add(next, c);
    }
    if (next == count) return count;
    count = next;
    if (count >= cap) return cap;
  }
  return count;
}

std::vector<Tree> trees_up_to_height(const RankedAlphabet& alphabet, std::size_t max_height, std::size_t limit) {
  std::size_t expected = count_trees_up_to_height(alphabet, max_height, limit + 1);
  if (expected > limit)
    throw Error("enumerating trees of height <= " + std::to_string(max_height) + " over {" +
                alphabet.to_string() + "} exceeds the limit of " + std::to_string(limit));

  std::vector<Tree> all;
  for (const std::string& c : alphabet.symbols_of_rank(0)) all.emplace_back(c);
  std::vector<std::pair<std::string, std::size_t>> inner;
  for (const auto& [name, r] : alphabet.symbols())
    if (r > 0) inner.emplace_back(name, r);

  for (std::size_t h = 1; h <= max_height; ++h) {
    const std::vector<Tree> prev = all;  // height <= h-1
    if (prev.empty()) break;
    for (const auto& [name, r] : inner) {
      std::vector<std::size_t> idx(r, 0);
      for (;;) {
        bool tall = false;
        for (std::size_t i : idx) tall = tall || prev[i].height() + 1 == h;
        if (tall) {
          std::vector<Tree> children;
          children.reserve(r);
          for (std::size_t i : idx) children.push_back(prev[i]);
          all.emplace_back(name, std::move(children));
        }
        std::size_t k = 0;
        while (k < r && ++idx[k] == prev.size()) idx[k++] = 0;
        if (k == r) break;
      }
    }
  }
  sort_trees(all);
  return all;
}

}  // namespace wtah
