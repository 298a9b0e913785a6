#include "wtah/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace wtah {

// ---------------------------------------------------------------- constraints

Constraint Constraint::from_pairs(const std::vector<std::pair<Position, Position>>& pairs) {
  std::vector<Position> nodes;
  for (const auto& [a, b] : pairs) {
    nodes.push_back(a);
    nodes.push_back(b);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto id = [&](const Position& p) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), p) - nodes.begin());
  };

  std::vector<std::size_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : pairs) {
    std::size_t ra = find(id(a));
    std::size_t rb = find(id(b));
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::map<std::size_t, std::vector<Position>> grouped;
  for (std::size_t i = 0; i < nodes.size(); ++i) grouped[find(i)].push_back(nodes[i]);

  Constraint c;
  for (auto& [_, members] : grouped)
    if (members.size() > 1) c.classes_.push_back(std::move(members));
  std::sort(c.classes_.begin(), c.classes_.end());
  return c;
}

Constraint Constraint::from_classes(std::vector<std::vector<Position>> classes) {
  std::vector<std::pair<Position, Position>> pairs;
  for (const auto& cls : classes)
    for (const Position& p : cls) pairs.emplace_back(cls.front(), p);
  return from_pairs(pairs);
}

std::vector<Position> Constraint::class_of(const Position& p) const {
  for (const auto& cls : classes_)
    if (std::find(cls.begin(), cls.end(), p) != cls.end()) return cls;
  return {p};
}

std::vector<Position> Constraint::members() const {
  std::vector<Position> out;
  for (const auto& cls : classes_) out.insert(out.end(), cls.begin(), cls.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string Constraint::to_string() const {
  std::string out;
  for (const auto& cls : classes_) {
    for (std::size_t i = 1; i < cls.size(); ++i) {
      if (!out.empty()) out += ", ";
      out += cls.front().to_string() + " = " + cls[i].to_string();
    }
  }
  return out;
}

std::string Rule::to_string() const {
  std::string out = lhs.to_string() + " -> " + target + " @ " + weight.to_string();
  if (!constraint.empty()) out += " | " + constraint.to_string();
  return out;
}

// ---------------------------------------------------------------- automaton

namespace {

void validate_lhs(const Tree& t, const RankedAlphabet& alphabet, const std::map<std::string, std::size_t>& states,
                  const std::string& rule_text) {
  switch (t.kind()) {
    case LabelKind::Variable:
      throw ValidationError("rule '" + rule_text + "': variable " + t.label() + " in left-hand side");
    case LabelKind::State:
      if (!states.count(t.label()))
        throw ValidationError("rule '" + rule_text + "': undeclared state '" + t.label() + "'");
      return;
    case LabelKind::Symbol: {
      auto r = alphabet.rank(t.label());
      if (!r) throw ValidationError("rule '" + rule_text + "': undeclared symbol '" + t.label() + "'");
      if (*r != t.arity())
        throw ValidationError("rule '" + rule_text + "': symbol '" + t.label() + "' has rank " +
                              std::to_string(*r));
      for (const Tree& c : t.children()) validate_lhs(c, alphabet, states, rule_text);
    }
  }
}

}  // namespace

Automaton::Automaton(Semiring semiring, RankedAlphabet alphabet, std::vector<std::string> states,
                     std::optional<std::string> sink, std::vector<std::string> finals, std::vector<Rule> rules)
    : semiring_(semiring),
      alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      sink_(std::move(sink)),
      finals_(std::move(finals)),
      rules_(std::move(rules)) {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const std::string& q = states_[i];
    if (!is_valid_name(q)) throw ValidationError("invalid state name '" + q + "'");
    if (alphabet_.contains(q)) throw ValidationError("'" + q + "' is declared both as state and as symbol");
    if (!state_ids_.emplace(q, i).second) throw ValidationError("duplicate state '" + q + "'");
  }
  final_flags_.assign(states_.size(), false);
  for (const std::string& f : finals_) {
    auto it = state_ids_.find(f);
    if (it == state_ids_.end()) throw ValidationError("undeclared final state '" + f + "'");
    if (final_flags_[it->second]) throw ValidationError("duplicate final state '" + f + "'");
    final_flags_[it->second] = true;
  }
  if (sink_) {
    auto it = state_ids_.find(*sink_);
    if (it == state_ids_.end()) throw ValidationError("undeclared sink state '" + *sink_ + "'");
    if (final_flags_[it->second]) throw ValidationError("sink state '" + *sink_ + "' must not be final");
    sink_id_ = it->second;
  }

  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const Rule& rule = rules_[r];
    const std::string text = rule.to_string();
    if (!(rule.weight.semiring() == semiring_))
      throw ValidationError("rule '" + text + "': weight belongs to " + rule.weight.semiring().id() + ", not " +
                            semiring_.id());
    if (rule.weight.is_zero()) throw ValidationError("rule '" + text + "': zero rule weight");
    if (rule.lhs.is_state()) throw ValidationError("rule '" + text + "': left-hand side is a bare state");
    validate_lhs(rule.lhs, alphabet_, state_ids_, text);
    auto target = state_ids_.find(rule.target);
    if (target == state_ids_.end())
      throw ValidationError("rule '" + text + "': undeclared target state '" + rule.target + "'");

    CompiledRule c;
    c.target = target->second;
    c.state_positions = state_positions(rule.lhs);
    for (const Position& p : c.state_positions) c.states.push_back(state_ids_.at(rule.lhs.at(p).label()));
    for (const Position& p : rule.constraint.members())
      if (!std::binary_search(c.state_positions.begin(), c.state_positions.end(), p))
        throw ValidationError("rule '" + text + "': constrained position " + p.to_string() +
                              " is not a state position of the left-hand side");
    std::vector<bool> covered(c.state_positions.size(), false);
    auto index_of = [&](const Position& p) {
      return static_cast<std::size_t>(std::lower_bound(c.state_positions.begin(), c.state_positions.end(), p) -
                                      c.state_positions.begin());
    };
    for (const auto& cls : rule.constraint.classes()) {
      std::vector<std::size_t> ids;
      for (const Position& p : cls) {
        ids.push_back(index_of(p));
        covered[ids.back()] = true;
      }
      c.classes.push_back(std::move(ids));
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
      if (!covered[i]) c.classes.push_back({i});
    std::sort(c.classes.begin(), c.classes.end());

    if (!seen.emplace(rule.lhs.to_string(), rule.constraint.to_string(), rule.target).second)
      throw ValidationError("duplicate rule '" + text + "'");
    compiled_.push_back(std::move(c));
    by_root_[rule.lhs.label()].push_back(r);
  }
  eq_restricted_ = is_eq_restricted(*this).yes;
}

std::size_t Automaton::state_index(const std::string& name) const {
  auto it = state_ids_.find(name);
  if (it == state_ids_.end()) throw ValidationError("unknown state '" + name + "'");
  return it->second;
}

bool Automaton::is_wtg() const {
  return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.constraint.empty(); });
}

bool Automaton::is_wta() const {
  return is_wtg() && std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) {
           return std::all_of(r.lhs.children().begin(), r.lhs.children().end(),
                              [](const Tree& c) { return c.is_state(); });
         });
}

const std::vector<std::size_t>& Automaton::rules_with_root(const std::string& symbol) const {
  static const std::vector<std::size_t> none;
  auto it = by_root_.find(symbol);
  return it == by_root_.end() ? none : it->second;
}

LeafTokens Automaton::leaf_tokens() const {
  LeafTokens leaves;
  leaves.states.insert(states_.begin(), states_.end());
  return leaves;
}

Automaton Automaton::canonical() const {
  std::vector<std::string> states = states_;
  std::sort(states.begin(), states.end());
  std::vector<std::string> finals = finals_;
  std::sort(finals.begin(), finals.end());
  std::vector<std::pair<std::tuple<std::string, std::string, std::string>, Rule>> keyed;
  for (const Rule& r : rules_)
    keyed.emplace_back(std::make_tuple(r.lhs.to_string(), r.target, r.constraint.to_string()), r);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Rule> rules;
  for (auto& [_, r] : keyed) rules.push_back(std::move(r));
  return Automaton(semiring_, alphabet_, std::move(states), sink_, std::move(finals), std::move(rules));
}

bool canonically_equal(const Automaton& a, const Automaton& b) {
  Automaton x = a.canonical();
  Automaton y = b.canonical();
  if (!(x.semiring() == y.semiring()) || !(x.alphabet() == y.alphabet()) || x.states() != y.states() ||
      x.sink() != y.sink() || x.finals() != y.finals() || x.rules().size() != y.rules().size())
    return false;
  for (std::size_t i = 0; i < x.rules().size(); ++i) {
    const Rule& r = x.rules()[i];
    const Rule& s = y.rules()[i];
    if (!(r.lhs == s.lhs) || !(r.constraint == s.constraint) || r.target != s.target || !(r.weight == s.weight))
      return false;
  }
  return true;
}

Automaton rename_states_by_first_use(const Automaton& a) {
  auto mark = [&](const std::string& q) {
    if (a.sink() && q == *a.sink()) return std::string("#");
    return std::string(a.is_final(q) ? "!" : "?");
  };
  auto masked = [&](const Tree& t) {
    std::map<std::string, Tree> theta;
    for (const std::string& q : a.states()) theta.emplace(q, Tree::state(mark(q)));
    return substitute(t, theta).to_string();
  };

  std::vector<std::size_t> order(a.rules().size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::tuple<std::string, std::string, std::string, std::string>> keys;
  for (const Rule& r : a.rules())
    keys.emplace_back(masked(r.lhs), mark(r.target), r.constraint.to_string(), r.weight.to_string());
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return keys[x] < keys[y]; });

  std::map<std::string, std::string> rename;
  std::size_t next = 0;
  auto assign = [&](const std::string& q) {
    if (rename.count(q)) return;
    if (a.sink() && q == *a.sink())
      rename[q] = "bot";
    else
      rename[q] = "s" + std::to_string(next++);
  };
  for (std::size_t r : order) {
    const Rule& rule = a.rules()[r];
    for (const Position& p : state_positions(rule.lhs)) assign(rule.lhs.at(p).label());
    assign(rule.target);
  }
  std::vector<std::string> sorted_states = a.states();
  std::sort(sorted_states.begin(), sorted_states.end());
  for (const std::string& q : sorted_states) assign(q);

  std::map<std::string, Tree> theta;
  for (const auto& [from, to] : rename) theta.emplace(from, Tree::state(to));
  std::vector<std::string> states, finals;
  for (const std::string& q : a.states()) states.push_back(rename.at(q));
  for (const std::string& q : a.finals()) finals.push_back(rename.at(q));
  std::vector<Rule> rules;
  for (const Rule& r : a.rules()) {
    std::vector<std::vector<Position>> classes = r.constraint.classes();
    rules.push_back(Rule{substitute(r.lhs, theta), Constraint::from_classes(classes), rename.at(r.target), r.weight});
  }
  std::optional<std::string> sink;
  if (a.sink()) sink = rename.at(*a.sink());
  return Automaton(a.semiring(), a.alphabet(), std::move(states), std::move(sink), std::move(finals),
                   std::move(rules))
      .canonical();
}

EqRestriction is_eq_restricted(const Automaton& a) {
  if (!a.sink()) return {false, "no sink state"};
  const std::string& sink = *a.sink();
  const std::size_t sink_id = a.state_index(sink);

  std::map<std::string, std::size_t> sink_rules;
  for (std::size_t r = 0; r < a.rules().size(); ++r) {
    const Rule& rule = a.rules()[r];
    const auto& c = a.compiled(r);
    if (c.target == sink_id) {
      bool shape = rule.lhs.is_symbol() && rule.constraint.empty();
      for (const Tree& child : rule.lhs.children()) shape = shape && child.is_state() && child.label() == sink;
      if (!shape) return {false, "rule '" + rule.to_string() + "' targets the sink but is not a sink rule"};
      if (!rule.weight.is_one()) return {false, "sink rule '" + rule.to_string() + "' has weight other than one"};
      ++sink_rules[rule.lhs.label()];
      continue;
    }
    for (const auto& cls : c.classes) {
      std::size_t leaders = 0;
      for (std::size_t i : cls) leaders += c.states[i] != sink_id;
      if (leaders != 1) {
        std::string where = c.state_positions[cls.front()].to_string();
        return {false, "rule '" + rule.to_string() + "': constraint class of position " + where + " has " +
                           std::to_string(leaders) + " non-sink states (exactly one required)"};
      }
    }
  }
  for (const auto& [symbol, _] : a.alphabet().symbols())
    if (!sink_rules.count(symbol)) return {false, "missing sink rule for symbol '" + symbol + "'"};
  return {true, ""};
}

std::optional<std::vector<Tree>> match_lhs(const Tree& lhs, const Tree& t) {
  std::vector<Tree> captured;
  auto go = [&](auto&& self, const Tree& l, const Tree& s) -> bool {
    if (l.is_state()) {
      captured.push_back(s);
      return true;
    }
    if (l.label() != s.label() || l.arity() != s.arity() || !s.is_symbol()) return false;
    for (std::size_t i = 0; i < l.arity(); ++i)
      if (!self(self, l.children()[i], s.children()[i])) return false;
    return true;
  };
  if (!go(go, lhs, t)) return std::nullopt;
  return captured;
}

namespace {

bool constraints_hold(const Automaton::CompiledRule& c, const std::vector<Tree>& captured) {
  for (const auto& cls : c.classes)
    for (std::size_t i = 1; i < cls.size(); ++i)
      if (!(captured[cls[i]] == captured[cls.front()])) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- runs

Tree run_tree(const Automaton& a, const Run& run) {
  const Rule& rule = a.rules()[run.rule];
  const std::string label = "r" + std::to_string(run.rule);
  std::size_t next = 0;
  auto go = [&](auto&& self, const Tree& l) -> Tree {
    if (l.is_state()) return run_tree(a, *run.children[next++]);
    std::vector<Tree> children;
    for (const Tree& c : l.children()) children.push_back(self(self, c));
    return Tree(l.label(), std::move(children));
  };
  std::vector<Tree> children;
  for (const Tree& c : rule.lhs.children()) children.push_back(go(go, c));
  return Tree(label, std::move(children));
}

bool same_run(const Run& x, const Run& y) {
  if (x.rule != y.rule || x.children.size() != y.children.size()) return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!same_run(*x.children[i], *y.children[i])) return false;
  return x.subject == y.subject;
}

const std::vector<std::vector<RunPtr>>& RunEnumerator::all(const Tree& t) {
  if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  std::vector<std::vector<RunPtr>> result(a_.states().size());
  for (std::size_t r : a_.rules_with_root(t.label())) {
    const Rule& rule = a_.rules()[r];
    const auto& c = a_.compiled(r);
    auto captured = match_lhs(rule.lhs, t);
    if (!captured || !constraints_hold(c, *captured)) continue;

    std::vector<const std::vector<RunPtr>*> options;
    bool empty = false;
    for (std::size_t i = 0; i < captured->size() && !empty; ++i) {
      options.push_back(&runs((*captured)[i], c.states[i]));
      empty = options.back()->empty();
    }
    if (empty) continue;

    const std::size_t n = options.size();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      Weight w = rule.weight;
      std::vector<RunPtr> children;
      children.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        children.push_back((*options[i])[idx[i]]);
        w = w * children.back()->weight;
      }
      result[c.target].push_back(std::make_shared<const Run>(Run{r, c.target, t, w, std::move(children)}));
      std::size_t k = n;
      while (k > 0 && ++idx[k - 1] == options[k - 1]->size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  return memo_.emplace(t, std::move(result)).first->second;
}

const std::vector<RunPtr>& RunEnumerator::runs(const Tree& t, std::size_t state) { return all(t)[state]; }

std::vector<RunPtr> RunEnumerator::accepting_runs(const Tree& t) {
  std::vector<RunPtr> out;
  const auto& per_state = all(t);
  for (std::size_t q = 0; q < per_state.size(); ++q) {
    if (!a_.is_final(q)) continue;
    for (const RunPtr& run : per_state[q])
      if (run->valid()) out.push_back(run);
  }
  return out;
}

std::vector<RunPtr> runs_to_state(const Automaton& a, const Tree& t, const std::string& q) {
  RunEnumerator e(a);
  return e.runs(t, a.state_index(q));
}

// ---------------------------------------------------------------- semantics

const std::vector<Weight>& Evaluator::state_weights(const Tree& t) {
  if (auto it = memo_.find(t); it != memo_.end()) return it->second;
  std::vector<Weight> result(a_.states().size(), a_.semiring().zero());
  for (std::size_t r : a_.rules_with_root(t.label())) {
    const Rule& rule = a_.rules()[r];
    const auto& c = a_.compiled(r);
    auto captured = match_lhs(rule.lhs, t);
    if (!captured || !constraints_hold(c, *captured)) continue;
    Weight w = rule.weight;
    for (std::size_t i = 0; i < captured->size() && !w.is_zero(); ++i)
      w = w * state_weights((*captured)[i])[c.states[i]];
    result[c.target] = result[c.target] + w;
  }
  return memo_.emplace(t, std::move(result)).first->second;
}

Weight Evaluator::evaluate(const Tree& t) {
  Weight sum = a_.semiring().zero();
  const auto& ws = state_weights(t);
  for (std::size_t q = 0; q < ws.size(); ++q)
    if (a_.is_final(q)) sum = sum + ws[q];
  return sum;
}

Weight evaluate(const Automaton& a, const Tree& t) { return Evaluator(a).evaluate(t); }

Weight state_weight(const Automaton& a, const Tree& t, const std::string& q) {
  return Evaluator(a).state_weight(t, a.state_index(q));
}

namespace {

Tree fill_state_leaves(const Tree& lhs, const std::vector<Tree>& fillers, std::size_t& next) {
  if (lhs.is_state()) return fillers[next++];
  if (lhs.arity() == 0) return lhs;
  std::vector<Tree> children;
  for (const Tree& c : lhs.children()) children.push_back(fill_state_leaves(c, fillers, next));
  return Tree(lhs.label(), std::move(children), lhs.kind());
}

}  // namespace

ReachableTrees::ReachableTrees(const Automaton& a, std::size_t height_bound) {
  const std::size_t n = a.states().size();
  auto universal = [&](std::size_t q) { return a.eq_restricted() && a.is_sink(q); };
  std::vector<std::unordered_set<Tree, TreeHash>> prev(n);

  for (std::size_t h = 0; h <= height_bound; ++h) {
    std::vector<std::unordered_set<Tree, TreeHash>> cur(n);
    for (std::size_t r = 0; r < a.rules().size(); ++r) {
      const Rule& rule = a.rules()[r];
      const auto& c = a.compiled(r);
      if (universal(c.target)) continue;
      if (c.state_positions.empty()) {
        if (rule.lhs.height() <= h) cur[c.target].insert(rule.lhs);
        continue;
      }
      if (h == 0) continue;

      // Candidate fillers per class: trees reaching every non-universal member
      // state at the depth-adjusted height.
      std::vector<std::vector<Tree>> options;
      bool empty = false;
      for (const auto& cls : c.classes) {
        std::size_t limit = h;
        std::vector<std::size_t> constraining;
        for (std::size_t i : cls) {
          std::size_t d = c.state_positions[i].depth();
          limit = std::min(limit, d > h ? 0 : h - d);
          if (d > h) empty = true;
          if (!universal(c.states[i])) constraining.push_back(i);
        }
        if (empty) break;
        if (constraining.empty())
          throw Error("rule '" + rule.to_string() + "' has a class constrained only by the sink");
        std::sort(constraining.begin(), constraining.end(), [&](std::size_t x, std::size_t y) {
          return prev[c.states[x]].size() < prev[c.states[y]].size();
        });
        std::vector<Tree> cands;
        for (const Tree& t : prev[c.states[constraining.front()]]) {
          if (t.height() > limit) continue;
          bool all = true;
          for (std::size_t k = 1; k < constraining.size() && all; ++k)
            all = prev[c.states[constraining[k]]].count(t) != 0;
          if (all) cands.push_back(t);
        }
        if (cands.empty()) {
          empty = true;
          break;
        }
        options.push_back(std::move(cands));
      }
      if (empty) continue;

      std::vector<std::size_t> idx(options.size(), 0);
      std::vector<Tree> fillers(c.state_positions.size(), rule.lhs);
      for (;;) {
        for (std::size_t k = 0; k < options.size(); ++k)
          for (std::size_t i : c.classes[k]) fillers[i] = options[k][idx[k]];
        std::size_t next = 0;
        Tree t = fill_state_leaves(rule.lhs, fillers, next);
        if (t.height() <= h) cur[c.target].insert(std::move(t));
        std::size_t k = 0;
        while (k < options.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == options.size()) break;
      }
    }
    prev = std::move(cur);
  }
  sets_ = std::move(prev);
  finals_.reserve(a.finals().size());
  for (const std::string& f : a.finals()) finals_.push_back(a.state_index(f));
}

std::vector<Tree> ReachableTrees::final_trees() const {
  std::unordered_set<Tree, TreeHash> all;
  for (std::size_t q : finals_) all.insert(sets_[q].begin(), sets_[q].end());
  std::vector<Tree> out(all.begin(), all.end());
  sort_trees(out);
  return out;
}

std::vector<std::pair<Tree, Weight>> support_up_to(const Automaton& a, std::size_t height_bound) {
  Evaluator eval(a);
  std::vector<std::pair<Tree, Weight>> out;
  for (const Tree& t : ReachableTrees(a, height_bound).final_trees()) {
    Weight w = eval.evaluate(t);
    if (!w.is_zero()) out.emplace_back(t, w);
  }
  return out;
}

std::vector<std::pair<Tree, Weight>> state_language_up_to(const Automaton& a, const std::string& q,
                                                          std::size_t height_bound) {
  const std::size_t state = a.state_index(q);
  std::vector<Tree> candidates;
  if (a.eq_restricted() && a.is_sink(state)) {
    candidates = trees_up_to_height(a.alphabet(), height_bound);
  } else {
    ReachableTrees reach(a, height_bound);
    candidates.assign(reach.of(state).begin(), reach.of(state).end());
    sort_trees(candidates);
  }
  Evaluator eval(a);
  std::vector<std::pair<Tree, Weight>> out;
  for (const Tree& t : candidates) {
    Weight w = eval.state_weight(t, state);
    if (!w.is_zero()) out.emplace_back(t, w);
  }
  return out;
}

AnalysisVerdict check_unambiguous(const Automaton& a, std::size_t height_bound) {
  RunEnumerator runs(a);
  for (const Tree& t : ReachableTrees(a, height_bound).final_trees()) {
    auto accepting = runs.accepting_runs(t);
    if (accepting.size() >= 2) {
      auto v = AnalysisVerdict::violated("unambiguous", height_bound, {t},
                                         std::to_string(accepting.size()) + " accepting runs for " + t.to_string());
      v.evidence["accepting_runs"] = std::to_string(accepting.size());
      for (std::size_t i = 0; i < accepting.size(); ++i)
        v.evidence["run" + std::to_string(i + 1)] =
            run_tree(a, *accepting[i]).to_string() + " -> " + a.states()[accepting[i]->target];
      return v;
    }
  }
  return AnalysisVerdict::passed("unambiguous", height_bound);
}

}  // namespace wtah
