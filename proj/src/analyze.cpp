#include "wtah/analyze.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "wtah/construct.hpp"

namespace wtah {

namespace {

// State at every position of a WTA run, in lexicographic position order.
void label_positions(const Automaton& a, const Run& run, const Position& at,
                     std::vector<std::pair<Position, std::string>>& out) {
  out.emplace_back(at, a.states()[run.target]);
  for (unsigned i = 0; i < run.children.size(); ++i) label_positions(a, *run.children[i], at.child(i + 1), out);
}

std::vector<std::pair<Position, std::string>> labelling(const Automaton& a, const Run& run) {
  std::vector<std::pair<Position, std::string>> out;
  label_positions(a, run, Position{}, out);
  return out;
}

}  // namespace

AnalysisVerdict check_h_unambiguous(const Automaton& a, const TreeHomomorphism& h, std::size_t height_bound) {
  if (!a.is_wta()) throw ValidationError("h-unambiguity is only defined for WTA inputs");
  for (const auto& [symbol, rank] : a.alphabet().symbols())
    if (h.source().rank(symbol) != rank)
      throw ValidationError("alphabet mismatch: '" + symbol + "' is not a source symbol of the homomorphism");

  RunEnumerator runs(a);
  std::unordered_map<Tree, std::vector<Tree>, TreeHash> groups;
  std::vector<Tree> images;
  for (const Tree& s : ReachableTrees(a, height_bound).final_trees()) {
    if (runs.accepting_runs(s).empty()) continue;
    Tree t = h.apply(s);
    auto [it, inserted] = groups.try_emplace(t);
    if (inserted) images.push_back(t);
    it->second.push_back(s);
  }
  sort_trees(images);

  for (const Tree& t : images) {
    const auto& members = groups.at(t);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i; j < members.size(); ++j) {
        const Tree& s = members[i];
        const Tree& s2 = members[j];
        std::vector<Tree> witness = i == j ? std::vector<Tree>{s} : std::vector<Tree>{s, s2};
        if (positions(s) != positions(s2)) {
          auto v = AnalysisVerdict::violated("h-unambiguous", height_bound, witness,
                                             "same image " + t.to_string() + " but different position sets");
          v.evidence["image"] = t.to_string();
          return v;
        }
        for (const RunPtr& x : runs.accepting_runs(s)) {
          auto lx = labelling(a, *x);
          for (const RunPtr& y : runs.accepting_runs(s2)) {
            auto ly = labelling(a, *y);
            for (std::size_t k = 0; k < lx.size(); ++k) {
              if (lx[k].second == ly[k].second) continue;
              const Position& p = lx[k].first;
              auto v = AnalysisVerdict::violated("h-unambiguous", height_bound, witness,
                                                 "accepting runs target " + lx[k].second + " and " + ly[k].second +
                                                     " at position " + p.to_string() + " (image " + t.to_string() +
                                                     ")");
              v.evidence["image"] = t.to_string();
              v.evidence["position"] = p.to_string();
              v.evidence["state_1"] = lx[k].second;
              v.evidence["state_2"] = ly[k].second;
              return v;
            }
          }
        }
      }
    }
  }
  return AnalysisVerdict::passed("h-unambiguous", height_bound);
}

std::vector<Tree> candidate_trees(const Automaton& a, const Automaton& b, std::size_t height_bound) {
  std::unordered_set<Tree, TreeHash> seen;
  std::vector<Tree> out;
  for (const Automaton* m : {&a, &b})
    for (const Tree& t : ReachableTrees(*m, height_bound).final_trees())
      if (seen.insert(t).second) out.push_back(t);
  sort_trees(out);
  return out;
}

AnalysisVerdict bounded_equivalence(const Automaton& a, const Automaton& b, std::size_t height_bound) {
  if (!(a.semiring() == b.semiring()))
    throw SemiringMismatch("equivalence check between semirings " + a.semiring().id() + " and " + b.semiring().id());
  if (!(a.alphabet() == b.alphabet()))
    throw ValidationError("equivalence check between different alphabets: " + a.alphabet().to_string() + " vs " +
                          b.alphabet().to_string());
  Evaluator ea(a), eb(b);
  for (const Tree& t : candidate_trees(a, b, height_bound)) {
    Weight x = ea.evaluate(t);
    Weight y = eb.evaluate(t);
    if (x == y) continue;
    auto v = AnalysisVerdict::violated("equivalence", height_bound, {t},
                                       "values differ on " + t.to_string() + ": " + x.to_string() + " vs " +
                                           y.to_string());
    v.evidence["value_a"] = x.to_string();
    v.evidence["value_b"] = y.to_string();
    return v;
  }
  return AnalysisVerdict::passed("equivalence", height_bound);
}

AnalysisVerdict run_count_compare(const Automaton& a, std::size_t lin_height, std::size_t height_bound) {
  Automaton lin = linearize(a, lin_height);
  RunEnumerator ra(a), rl(lin);
  for (const Tree& t : candidate_trees(a, lin, height_bound)) {
    std::size_t na = ra.accepting_runs(t).size();
    std::size_t nl = rl.accepting_runs(t).size();
    if (nl <= na) continue;
    auto v = AnalysisVerdict::violated("run-count", height_bound, {t},
                                       "linearization has " + std::to_string(nl) + " accepting runs for " +
                                           t.to_string() + ", automaton has " + std::to_string(na));
    v.evidence["runs_automaton"] = std::to_string(na);
    v.evidence["runs_linearization"] = std::to_string(nl);
    v.evidence["lin_height"] = std::to_string(lin_height);
    return v;
  }
  auto v = AnalysisVerdict::passed("run-count", height_bound);
  v.evidence["lin_height"] = std::to_string(lin_height);
  return v;
}

}  // namespace wtah
