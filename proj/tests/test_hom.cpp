#include "doctest.h"

#include <algorithm>

#include "support.hpp"
#include "wtah/hom.hpp"

using namespace fixtures;

namespace {

const RankedAlphabet kDelta{{"a", 0}, {"g", 1}, {"k", 2}};

// All source trees of size <= |t| mapped to t, by brute force. A nonerasing
// image is at least as tall as its source, so height(t) bounds the search.
std::vector<Tree> naive_preimage(const TreeHomomorphism& h, const Tree& t) {
  std::vector<Tree> out;
  for (const Tree& s : trees_up_to_height(h.source(), t.height()))
    if (s.size() <= t.size() && h.apply(s) == t) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const Tree& a, const Tree& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_string() < b.to_string();
  });
  return out;
}

// Every pair (i < j) of each image group, groups in tree order.
std::optional<std::pair<Tree, Tree>> naive_tetris_witness(const TreeHomomorphism& h, std::size_t bound) {
  std::vector<Tree> sources = trees_up_to_height(h.source(), bound);
  std::vector<std::pair<Tree, Tree>> by_image;
  for (const Tree& s : sources) by_image.emplace_back(h.apply(s), s);
  std::stable_sort(by_image.begin(), by_image.end(),
                   [](const auto& x, const auto& y) { return tree_order_less(x.first, y.first); });
  for (std::size_t i = 0; i < by_image.size(); ++i)
    for (std::size_t j = i + 1; j < by_image.size() && by_image[j].first == by_image[i].first; ++j) {
      const Tree& s = by_image[i].second;
      const Tree& s2 = by_image[j].second;
      if (positions(s) != positions(s2)) return std::make_pair(s, s2);
      for (const Position& p : positions(s))
        if (!(h.image(s.at(p).label()) == h.image(s2.at(p).label()))) return std::make_pair(s, s2);
    }
  return std::nullopt;
}

// Images drawn from a small pool over c/0 k/2, so that distinct source trees
// often share an image.
TreeHomomorphism colliding_hom(const RankedAlphabet& sigma, std::mt19937& rng) {
  const LeafTokens vars{.states = {}, .variables = true};
  const RankedAlphabet target{{"c", 0}, {"k", 2}};
  const std::vector<std::vector<std::string>> pool = {
      {"c", "k(c,c)"},
      {"k(x1,c)", "k(c,x1)", "k(x1,x1)"},
      {"k(x1,x2)", "k(x2,x1)", "k(x1,k(x2,c))"},
  };
  std::map<std::string, Tree> images;
  for (const auto& [symbol, rank] : sigma.symbols()) {
    const auto& options = pool[rank];
    images.emplace(symbol, parse_term(target, vars, options[rng() % options.size()]));
  }
  return TreeHomomorphism(sigma, target, images);
}

}  // namespace

TEST_CASE("validation") {
  TreeHomomorphism h = load_hom("running.hom");
  CHECK(h.image("f") == parse_term(kDelta, {.states = {}, .variables = true}, "k(x1, g(x1))"));

  const RankedAlphabet sigma{{"a", 0}, {"g", 1}, {"f", 2}};
  const Tree x1 = Tree::variable(1), x2 = Tree::variable(2);
  std::map<std::string, Tree> ok{{"a", Tree("a")}, {"g", Tree("g", {x1})}, {"f", Tree("k", {x2, x1})}};
  CHECK_NOTHROW(validate_hom(sigma, kDelta, ok));

  auto with = [&](const std::string& symbol, const Tree& image) {
    auto images = ok;
    images.insert_or_assign(symbol, image);
    return images;
  };
  CHECK_THROWS_AS(validate_hom(sigma, kDelta, with("g", x1)), ValidationError);             // erasing
  CHECK_THROWS_AS(validate_hom(sigma, kDelta, with("f", Tree("g", {x1}))), ValidationError);  // deleting
  CHECK_THROWS_AS(validate_hom(sigma, kDelta, with("g", Tree("g", {x2}))), ValidationError);  // stray variable
  CHECK_THROWS_AS(validate_hom(sigma, kDelta, with("a", Tree("b"))), ValidationError);        // unknown target
  auto missing = ok;
  missing.erase("a");
  CHECK_THROWS_AS(validate_hom(sigma, kDelta, missing), ValidationError);
}

TEST_CASE("application") {
  TreeHomomorphism h7 = load_hom("running.hom");
  CHECK(apply_hom(h7, term(h7.source(), "f(g(a))")) == term(h7.target(), "k(g(a), g(g(a)))"));
  TreeHomomorphism h21 = load_hom("merge.hom");
  CHECK(h21.apply(term(h21.source(), "g(a)")) == term(h21.target(), "k(c, c)"));
  TreeHomomorphism hat = load_hom("merge_hat.hom");
  CHECK(hat.apply(term(hat.source(), "b")) == term(hat.target(), "k(c, c)"));
  CHECK_THROWS_AS(h7.apply(Tree::state("q")), ValidationError);

  TreeHomomorphism id = TreeHomomorphism::identity(h7.source());
  for (const Tree& s : trees_up_to_height(h7.source(), 3)) CHECK(id.apply(s) == s);
}

TEST_CASE("preimages") {
  TreeHomomorphism hat = load_hom("merge_hat.hom");
  CHECK(preimage(hat, term(hat.target(), "k(c, c)")) ==
        std::vector<Tree>{term(hat.source(), "b"), term(hat.source(), "g(a)")});
  TreeHomomorphism h21 = load_hom("merge.hom");
  CHECK(preimage(h21, term(h21.target(), "c")) == std::vector<Tree>{Tree("a"), Tree("b")});
  TreeHomomorphism h7 = load_hom("running.hom");
  Tree t = term(h7.target(), "k(g(a), g(g(a)))");
  CHECK(preimage(h7, t) == std::vector<Tree>{term(h7.source(), "f(g(a))")});
  CHECK(preimage(h7, t) == naive_preimage(h7, t));
  CHECK(preimage(h7, term(h7.target(), "k(a, a)")).empty());
}

TEST_CASE("preimage and size properties on random homomorphisms") {
  std::mt19937 rng(11);
  for (int round = 0; round < 30; ++round) {
    RankedAlphabet sigma = random_source_alphabet(rng, true);
    TreeHomomorphism h = random_hom(sigma, rng);
    CAPTURE(format_hom(h));
    for (const Tree& s : trees_up_to_height(sigma, 3, 5000)) {
      Tree t = h.apply(s);
      CHECK(s.size() <= t.size());
      std::vector<Tree> pre = preimage(h, t);
      CHECK(std::find(pre.begin(), pre.end(), s) != pre.end());
      for (const Tree& s2 : pre) CHECK(h.apply(s2) == t);
    }
    // completeness against brute force on small targets
    for (const Tree& t : trees_up_to_height(h.target(), 2)) CHECK(preimage(h, t) == naive_preimage(h, t));
  }
}

TEST_CASE("tetris-freeness examples") {
  CHECK(check_tetris_free(load_hom("merge.hom"), 4).ok());
  CHECK(check_tetris_free(load_hom("running.hom"), 4).ok());
  TreeHomomorphism hat = load_hom("merge_hat.hom");
  AnalysisVerdict v = check_tetris_free(hat, 2);
  REQUIRE_FALSE(v.ok());
  CHECK(v.witness == std::vector<Tree>{term(hat.source(), "b"), term(hat.source(), "g(a)")});
  CHECK(v.evidence.at("image") == "k(c,c)");
}

TEST_CASE("tetris check agrees with the all-pairs search") {
  std::mt19937 rng(5);
  std::size_t witnesses = 0;
  for (int round = 0; round < 60; ++round) {
    RankedAlphabet sigma = random_source_alphabet(rng);
    TreeHomomorphism h = colliding_hom(sigma, rng);
    AnalysisVerdict v = check_tetris_free(h, 3);
    auto naive = naive_tetris_witness(h, 3);
    CAPTURE(format_hom(h));
    REQUIRE(v.ok() == !naive.has_value());
    if (naive) {
      ++witnesses;
      CHECK(v.witness == std::vector<Tree>{naive->first, naive->second});
    }
  }
  CHECK(witnesses > 0);
  CHECK(witnesses < 60);
}

TEST_CASE("injective homomorphisms are never reported") {
  std::mt19937 rng(3);
  std::size_t injective = 0;
  for (int round = 0; round < 40; ++round) {
    RankedAlphabet sigma = random_source_alphabet(rng, true);
    TreeHomomorphism h = random_hom(sigma, rng);
    bool inj = true;
    for (const Tree& s : trees_up_to_height(sigma, 3, 5000)) inj = inj && preimage(h, h.apply(s)).size() <= 1;
    if (!inj) continue;
    ++injective;
    CHECK(check_tetris_free(h, 3).ok());
  }
  CHECK(injective > 0);
}
