#include "doctest.h"

#include <algorithm>

#include "support.hpp"
#include "wtah/analyze.hpp"
#include "wtah/construct.hpp"

using namespace fixtures;

namespace {

using Labelling = std::vector<std::string>;  // state per position, positions in lex order

// Every run of a WTA for t to q, as a state labelling with its weight.
std::vector<std::pair<Labelling, Weight>> labellings(const Automaton& a, const Tree& t, const std::string& q) {
  std::vector<std::pair<Labelling, Weight>> out;
  for (const Rule& r : a.rules()) {
    if (r.target != q || r.lhs.label() != t.label() || r.lhs.arity() != t.arity()) continue;
    std::vector<std::pair<Labelling, Weight>> partial{{{q}, r.weight}};
    for (std::size_t i = 0; i < t.arity(); ++i) {
      std::vector<std::pair<Labelling, Weight>> next;
      for (const auto& [lab, w] : partial)
        for (const auto& [sub, sw] : labellings(a, t.children()[i], r.lhs.children()[i].label())) {
          Labelling joined = lab;
          joined.insert(joined.end(), sub.begin(), sub.end());
          next.emplace_back(joined, w * sw);
        }
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

std::vector<Labelling> accepting_labellings(const Automaton& a, const Tree& t) {
  std::vector<Labelling> out;
  for (const std::string& f : a.finals())
    for (const auto& [lab, w] : labellings(a, t, f))
      if (!w.is_zero()) out.push_back(lab);
  return out;
}

bool violates(const Automaton& a, const Tree& s, const Tree& s2) {
  auto r1 = accepting_labellings(a, s);
  auto r2 = accepting_labellings(a, s2);
  if (r1.empty() || r2.empty()) return false;
  if (positions(s) != positions(s2)) return true;
  for (const Labelling& x : r1)
    for (const Labelling& y : r2)
      if (x != y) return true;
  return false;
}

// All pairs (s <= s') of source trees with equal images, by brute force.
bool naive_h_unambiguous(const Automaton& a, const TreeHomomorphism& h, std::size_t bound) {
  std::vector<Tree> sources = trees_up_to_height(h.source(), bound);
  std::unordered_map<Tree, std::vector<Tree>, TreeHash> groups;
  for (const Tree& s : sources) groups[h.apply(s)].push_back(s);
  for (const auto& [t, members] : groups)
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i; j < members.size(); ++j)
        if (violates(a, members[i], members[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("h-unambiguity examples") {
  Automaton arctic = load("merge_arctic.wta");
  TreeHomomorphism h21 = load_hom("merge.hom");
  AnalysisVerdict v = check_h_unambiguous(arctic, h21, 1);
  REQUIRE_FALSE(v.ok());
  CHECK(v.witness == std::vector<Tree>{Tree("a"), Tree("b")});
  CHECK(v.evidence.at("image") == "c");
  CHECK(v.evidence.at("state_1") == "qa");
  CHECK(v.evidence.at("state_2") == "qb");
  CHECK(violates(arctic, v.witness[0], v.witness[1]));

  CHECK(check_h_unambiguous(load("running.wta"), load_hom("running.hom"), 3).ok());

  Automaton running = load("running.wta");
  Automaton empty(running.semiring(), running.alphabet(), running.states(), std::nullopt, {"q"},
                  {Rule{Tree("g", {Tree::state("q")}), {}, "q", Weight(running.semiring(), 1)}});
  CHECK(check_h_unambiguous(empty, load_hom("running.hom"), 4).ok());

  CHECK_THROWS_AS(check_h_unambiguous(load("pairs.wta"), load_hom("running.hom"), 2), ValidationError);
}

TEST_CASE("h-unambiguity agrees with the labelling oracle") {
  std::mt19937 rng(31);
  std::size_t ok = 0, witnesses = 0;
  for (int i = 0; i < 40; ++i) {
    const Semiring s = i % 2 ? Semiring::natural() : Semiring::modular(6);
    RankedAlphabet sigma = random_source_alphabet(rng, true);
    Automaton a = random_wta(s, sigma, 1 + i % 3, rng, i % 3 != 0);
    TreeHomomorphism h = random_hom(sigma, rng);
    CAPTURE(format_automaton(a));
    CAPTURE(format_hom(h));
    AnalysisVerdict v = check_h_unambiguous(a, h, 3);
    CHECK(v.ok() == naive_h_unambiguous(a, h, 3));
    if (v.ok()) {
      ++ok;
      // stronger than unambiguity
      CHECK(check_unambiguous(a, 3).ok());
    } else {
      ++witnesses;
      REQUIRE(v.witness.size() == 2);
      CHECK(h.apply(v.witness[0]) == h.apply(v.witness[1]));
      CHECK(violates(a, v.witness[0], v.witness[1]));
    }
  }
  CHECK(ok > 0);
  CHECK(witnesses > 0);
}

TEST_CASE("bounded equivalence") {
  Automaton image = load("running_image.wta");
  Automaton lin = wtg_to_wta(linearize(image, 2));
  AnalysisVerdict v = bounded_equivalence(image, lin, 5);
  REQUIRE_FALSE(v.ok());
  Tree t = term(image.alphabet(), "k(g(g(g(a))), g(g(g(g(a)))))");
  CHECK(v.witness == std::vector<Tree>{t});
  CHECK(v.evidence.at("value_a") == "8");
  CHECK(v.evidence.at("value_b") == "0");
  CHECK(evaluate(image, t).to_string() == "8");
  CHECK(evaluate(lin, t).is_zero());

  AnalysisVerdict back = bounded_equivalence(lin, image, 5);
  REQUIRE_FALSE(back.ok());
  CHECK(back.witness == v.witness);
  CHECK(back.evidence.at("value_a") == "0");
  CHECK(back.evidence.at("value_b") == "8");

  CHECK(bounded_equivalence(image, lin, 4).ok());
  for (std::size_t b = 0; b <= 4; ++b) CHECK(bounded_equivalence(image, image, b).ok());

  CHECK_THROWS_AS(bounded_equivalence(image, load("pairs.wta"), 2), SemiringMismatch);
  CHECK_THROWS_AS(bounded_equivalence(image, load("running.wta"), 2), ValidationError);
}

TEST_CASE("candidate trees contain both supports") {
  Automaton image = load("running_image.wta");
  Automaton lin = linearize(image, 1);
  std::vector<Tree> cand = candidate_trees(image, lin, 4);
  CHECK(std::is_sorted(cand.begin(), cand.end(), tree_order_less));
  for (const Tree& t : trees_up_to_height(image.alphabet(), 3)) {
    bool nonzero = !evaluate(image, t).is_zero() || !evaluate(lin, t).is_zero();
    if (nonzero) CHECK(std::binary_search(cand.begin(), cand.end(), t, tree_order_less));
  }
}

TEST_CASE("run counts of the linearization") {
  CHECK(run_count_compare(load("running_image.wta"), 2, 5).ok());
  CHECK(run_count_compare(load("merge_hat_image.wta"), 1, 3).ok());
  Automaton image = load("running_image.wta");
  Automaton no_finals(image.semiring(), image.alphabet(), image.states(), image.sink(), {}, image.rules());
  CHECK(run_count_compare(no_finals, 2, 4).ok());
}
