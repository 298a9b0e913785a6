// Shared fixtures for the test binaries: example files, naive reference
// semantics and seeded random instances.
#pragma once

#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "wtah/automaton.hpp"
#include "wtah/hom.hpp"
#include "wtah/io.hpp"

namespace fixtures {

using namespace wtah;

inline std::string data_path(const std::string& name) { return std::string(WTAH_DATA_DIR) + "/" + name; }
inline Automaton load(const std::string& name) { return parse_automaton_file(read_file(data_path(name))); }
inline TreeHomomorphism load_hom(const std::string& name) { return parse_hom_file(read_file(data_path(name))); }
inline Tree term(const RankedAlphabet& alphabet, const std::string& text) { return parse_term(alphabet, {}, text); }

// ---------------------------------------------------------------- naive semantics

// Collects (state, subtree) at the state leaves of lhs, or returns false.
inline bool naive_match(const Tree& lhs, const Tree& t, std::vector<std::pair<std::string, Tree>>& out) {
  if (lhs.is_state()) {
    out.emplace_back(lhs.label(), t);
    return true;
  }
  if (lhs.label() != t.label() || lhs.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < lhs.arity(); ++i)
    if (!naive_match(lhs.children()[i], t.children()[i], out)) return false;
  return true;
}

// Weight of every run for t to q, straight from the run definition: no memo,
// constraints checked on the input tree itself.
inline std::vector<Weight> naive_run_weights(const Automaton& a, const Tree& t, const std::string& q) {
  std::vector<Weight> out;
  for (const Rule& r : a.rules()) {
    if (r.target != q) continue;
    std::vector<std::pair<std::string, Tree>> leaves;
    if (!naive_match(r.lhs, t, leaves)) continue;
    bool ok = true;
    for (const auto& cls : r.constraint.classes())
      for (const Position& p : cls) ok = ok && t.at(p) == t.at(cls.front());
    if (!ok) continue;
    std::vector<Weight> partial{r.weight};
    for (const auto& [state, sub] : leaves) {
      std::vector<Weight> next;
      for (const Weight& w : partial)
        for (const Weight& c : naive_run_weights(a, sub, state)) next.push_back(w * c);
      partial = std::move(next);
    }
    out.insert(out.end(), partial.begin(), partial.end());
  }
  return out;
}

inline Weight naive_evaluate(const Automaton& a, const Tree& t) {
  Weight sum = a.semiring().zero();
  for (const std::string& f : a.finals())
    for (const Weight& w : naive_run_weights(a, t, f)) sum = sum + w;
  return sum;
}

inline std::size_t naive_accepting_runs(const Automaton& a, const Tree& t) {
  std::size_t n = 0;
  for (const std::string& f : a.finals())
    for (const Weight& w : naive_run_weights(a, t, f)) n += !w.is_zero();
  return n;
}

// Sum of A(s) over all s with h(s) = t, for every t of height <= bound. Source
// trees are built bottom-up and dropped once their image is too tall; this is
// complete because the image of a subtree is a subtree of the image.
inline std::unordered_map<Tree, Weight, TreeHash> image_series_oracle(const Automaton& a, const TreeHomomorphism& h,
                                                                      std::size_t bound) {
  std::vector<std::pair<Tree, Tree>> all;  // (s, h(s))
  for (std::size_t height = 0; height <= bound; ++height) {
    std::vector<std::pair<Tree, Tree>> fresh;
    for (const auto& [symbol, rank] : h.source().symbols()) {
      if (rank == 0) {
        if (height == 0) fresh.emplace_back(Tree(symbol), h.apply(Tree(symbol)));
        continue;
      }
      if (height == 0) continue;
      std::vector<std::size_t> idx(rank, 0);
      const std::size_t n = all.size();
      if (n == 0) continue;
      for (;;) {
        std::vector<Tree> children, images;
        std::size_t top = 0;
        for (std::size_t i = 0; i < rank; ++i) {
          children.push_back(all[idx[i]].first);
          images.push_back(all[idx[i]].second);
          top = std::max(top, children.back().height());
        }
        if (top + 1 == height) {
          Tree image = substitute_vars(h.image(symbol), images);
          if (image.height() <= bound) fresh.emplace_back(Tree(symbol, children), image);
        }
        std::size_t k = 0;
        while (k < rank && ++idx[k] == n) idx[k++] = 0;
        if (k == rank) break;
      }
    }
    all.insert(all.end(), fresh.begin(), fresh.end());
  }
  std::unordered_map<Tree, Weight, TreeHash> series;
  for (const auto& [s, t] : all) {
    auto [it, _] = series.try_emplace(t, a.semiring().zero());
    it->second = it->second + naive_evaluate(a, s);
  }
  return series;
}

// ---------------------------------------------------------------- random instances

inline Weight random_weight(const Semiring& s, std::mt19937& rng) {
  switch (s.kind()) {
    case SemiringKind::Tropical:
    case SemiringKind::Arctic: return Weight(s, std::uniform_int_distribution<int>(0, 3)(rng));
    case SemiringKind::Modular:
      return Weight(s, std::uniform_int_distribution<int>(1, static_cast<int>(s.modulus()) - 1)(rng));
    case SemiringKind::Boolean: return s.one();
    default: return Weight(s, std::uniform_int_distribution<int>(1, 3)(rng));
  }
}

// With `compact`, a binary symbol comes with a single constant, which keeps the
// full enumeration at height 4 below 34k trees (a, u, f) instead of ~3e7.
inline RankedAlphabet random_source_alphabet(std::mt19937& rng, bool compact = false) {
  RankedAlphabet s;
  s.add("a", 0);
  std::bernoulli_distribution coin(0.5);
  bool b = coin(rng);
  bool u = coin(rng) || !b;
  bool f = coin(rng);
  if (b && !(compact && f)) s.add("b", 0);
  if (u) s.add("u", 1);
  if (f) s.add("f", 2);
  return s;
}

inline RankedAlphabet target_alphabet() { return RankedAlphabet{{"c", 0}, {"g", 1}, {"k", 2}}; }

// Every tuple of child states gets a rule with probability density; with
// `deterministic` at most one target per left-hand side.
inline Automaton random_wta(const Semiring& s, const RankedAlphabet& sigma, std::size_t n_states, std::mt19937& rng,
                            bool deterministic, double density = 0.7) {
  std::vector<std::string> states;
  for (std::size_t i = 0; i < n_states; ++i) states.push_back("q" + std::to_string(i));
  std::uniform_int_distribution<std::size_t> pick(0, n_states - 1);
  std::bernoulli_distribution use(density), second(0.3);

  std::vector<Rule> rules;
  for (const auto& [symbol, rank] : sigma.symbols()) {
    std::vector<std::size_t> idx(rank, 0);
    for (;;) {
      std::vector<Tree> children;
      for (std::size_t i : idx) children.push_back(Tree::state(states[i]));
      if (use(rng) || rank == 0) {
        std::size_t t1 = pick(rng);
        rules.push_back(Rule{Tree(symbol, children), {}, states[t1], random_weight(s, rng)});
        std::size_t t2 = pick(rng);
        if (!deterministic && t2 != t1 && second(rng))
          rules.push_back(Rule{Tree(symbol, children), {}, states[t2], random_weight(s, rng)});
      }
      std::size_t k = 0;
      while (k < rank && ++idx[k] == n_states) idx[k++] = 0;
      if (k == rank) break;
    }
  }
  std::vector<std::string> finals;
  for (const std::string& q : states)
    if (std::bernoulli_distribution(0.5)(rng)) finals.push_back(q);
  if (finals.empty()) finals.push_back(states.back());
  return Automaton(s, sigma, states, std::nullopt, finals, rules);
}

// Image of a rank-k symbol over c/0 g/1 k/2: uses every variable, is not a
// variable, and keeps variables at depth >= min_var_depth.
inline Tree random_image(std::size_t rank, std::mt19937& rng, std::size_t min_var_depth) {
  std::uniform_int_distribution<int> choice(0, 9);
  std::uniform_int_distribution<unsigned> var(1, static_cast<unsigned>(std::max<std::size_t>(rank, 1)));
  auto gen = [&](auto&& self, std::size_t depth) -> Tree {
    int c = choice(rng);
    bool may_var = rank > 0 && depth >= min_var_depth;
    if (depth >= 3 || (depth > 0 && c < 4)) {
      if (may_var && c % 2 == 0) return Tree::variable(var(rng));
      if (may_var && depth >= 3) return Tree::variable(var(rng));
      return Tree("c");
    }
    if (c < 7) return Tree("g", {self(self, depth + 1)});
    return Tree("k", {self(self, depth + 1), self(self, depth + 1)});
  };
  for (;;) {
    Tree t = gen(gen, 0);
    if (t.is_variable()) continue;
    std::set<unsigned> vars = variables_of(t);
    if (vars.size() != rank) continue;
    if (t.size() > 6) continue;
    return t;
  }
}

inline TreeHomomorphism random_hom(const RankedAlphabet& sigma, std::mt19937& rng) {
  std::map<std::string, Tree> images;
  for (const auto& [symbol, rank] : sigma.symbols()) images.emplace(symbol, random_image(rank, rng, rank >= 2 ? 2 : 1));
  return TreeHomomorphism(sigma, target_alphabet(), images);
}

}  // namespace fixtures
