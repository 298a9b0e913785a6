#include "wtah/construct.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_map>

namespace wtah {

std::string fresh_name(const std::string& base, std::set<std::string>& taken) {
  std::string name = base;
  for (std::size_t i = 1; taken.count(name); ++i) name = base + "_" + std::to_string(i);
  taken.insert(name);
  return name;
}

namespace {

std::set<std::string> taken_names(const Automaton& a, const RankedAlphabet& extra = {}) {
  std::set<std::string> taken(a.states().begin(), a.states().end());
  for (const auto& [s, _] : a.alphabet().symbols()) taken.insert(s);
  for (const auto& [s, _] : extra.symbols()) taken.insert(s);
  return taken;
}

// Collects rules keyed by (lhs, partition, target), adding weights of repeats
// and keeping first-seen order.
class RuleAccumulator {
 public:
  void add(Rule rule) {
    auto key = std::make_tuple(rule.lhs.to_string(), rule.constraint.to_string(), rule.target);
    auto [it, inserted] = index_.try_emplace(key, rules_.size());
    if (inserted)
      rules_.push_back(std::move(rule));
    else
      rules_[it->second].weight = rules_[it->second].weight + rule.weight;
  }

  std::vector<Rule> take() {
    std::vector<Rule> out;
    for (Rule& r : rules_)
      if (!r.weight.is_zero()) out.push_back(std::move(r));
    return out;
  }

 private:
  std::vector<Rule> rules_;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index_;
};

// Image left-hand side of one WTA rule: u with x_i's leading occurrence replaced
// by the child state and the other occurrences by the sink.
struct ImageShape {
  Tree lhs;
  Constraint constraint;
  // Per state position of lhs (lexicographic): variable index and whether it is
  // the leading occurrence.
  std::vector<std::pair<unsigned, bool>> slots;
};

ImageShape image_shape(const Tree& u, const std::vector<std::string>& child_states, const std::string& sink) {
  std::vector<std::pair<unsigned, bool>> slots;
  std::vector<Position> var_positions = positions_where(u, [](const Tree& t) { return t.is_variable(); });
  std::map<unsigned, std::vector<Position>> occurrences;
  for (const Position& p : var_positions) occurrences[u.at(p).variable_index()].push_back(p);

  Tree lhs = u;
  for (const Position& p : var_positions) {
    unsigned i = u.at(p).variable_index();
    bool leading = occurrences[i].front() == p;  // positions come in lex order
    lhs = replace_at(lhs, p, Tree::state(leading ? child_states[i - 1] : sink));
    slots.emplace_back(i, leading);
  }
  std::vector<std::vector<Position>> classes;
  for (auto& [_, ps] : occurrences) classes.push_back(ps);
  return {lhs, Constraint::from_classes(std::move(classes)), std::move(slots)};
}

std::string sink_name_for(const Automaton& a, const RankedAlphabet& target) {
  std::set<std::string> taken = taken_names(a, target);
  return fresh_name("bot", taken);
}

void require_image_inputs(const Automaton& a, const TreeHomomorphism& h) {
  if (!a.is_wta()) throw ValidationError("homomorphic image requires a WTA input");
  for (const auto& [symbol, rank] : a.alphabet().symbols()) {
    auto r = h.source().rank(symbol);
    if (!r || *r != rank)
      throw ValidationError("alphabet mismatch: automaton symbol '" + symbol + "/" + std::to_string(rank) +
                            "' is not a source symbol of the homomorphism");
  }
}

std::vector<std::string> child_states(const Rule& r) {
  std::vector<std::string> out;
  for (const Tree& c : r.lhs.children()) out.push_back(c.label());
  return out;
}

std::vector<Rule> sink_rules(const Semiring& s, const RankedAlphabet& alphabet, const std::string& sink) {
  std::vector<Rule> out;
  for (const auto& [symbol, rank] : alphabet.symbols())
    out.push_back(Rule{Tree(symbol, std::vector<Tree>(rank, Tree::state(sink))), {}, sink, s.one()});
  return out;
}

}  // namespace

// ---------------------------------------------------------------- WTG -> WTA

Automaton wtg_to_wta(const Automaton& g) {
  if (!g.is_wtg()) throw ValidationError("WTG-to-WTA normalization requires an automaton without constraints");
  if (g.is_wta()) return g;

  std::set<std::string> taken = taken_names(g);
  std::vector<std::string> states = g.states();
  std::vector<Rule> rules;
  const Weight one = g.semiring().one();

  for (std::size_t r = 0; r < g.rules().size(); ++r) {
    const Rule& rule = g.rules()[r];
    // Flattens the subtree at p and returns the state standing for it.
    auto flatten = [&](auto&& self, const Tree& t, const Position& p) -> Tree {
      if (t.is_state()) return t;
      std::vector<Tree> children;
      for (unsigned i = 0; i < t.arity(); ++i) children.push_back(self(self, t.children()[i], p.child(i + 1)));
      std::string pos = p.to_string();
      std::replace(pos.begin(), pos.end(), '.', '_');
      std::string q = fresh_name("n" + std::to_string(r) + "_" + pos, taken);
      states.push_back(q);
      rules.push_back(Rule{Tree(t.label(), std::move(children)), {}, q, one});
      return Tree::state(q);
    };
    std::vector<Tree> children;
    for (unsigned i = 0; i < rule.lhs.arity(); ++i)
      children.push_back(flatten(flatten, rule.lhs.children()[i], Position{i + 1}));
    rules.push_back(Rule{Tree(rule.lhs.label(), std::move(children)), {}, rule.target, rule.weight});
  }
  // The sink of a WTG is an ordinary state here.
  return Automaton(g.semiring(), g.alphabet(), std::move(states), g.sink(), g.finals(), std::move(rules));
}

// ---------------------------------------------------------------- hom image

Automaton hom_image(const Automaton& a, const TreeHomomorphism& h) {
  require_image_inputs(a, h);
  const std::string sink = sink_name_for(a, h.target());

  RuleAccumulator acc;
  for (const Rule& r : a.rules()) {
    ImageShape shape = image_shape(h.image(r.lhs.label()), child_states(r), sink);
    acc.add(Rule{shape.lhs, shape.constraint, r.target, r.weight});
  }
  std::vector<Rule> rules = acc.take();
  for (Rule& r : sink_rules(a.semiring(), h.target(), sink)) rules.push_back(std::move(r));

  std::vector<std::string> states = a.states();
  states.push_back(sink);
  return Automaton(a.semiring(), h.target(), std::move(states), sink, a.finals(), std::move(rules));
}

AnnotatedImage hom_image_annotated(const Automaton& a, const TreeHomomorphism& h) {
  require_image_inputs(a, h);
  const std::string sink = sink_name_for(a, h.target());

  RankedAlphabet alphabet = h.target();
  std::map<std::string, std::string> relabel;
  std::vector<Rule> rules;
  std::set<std::string> taken = taken_names(a, h.target());
  taken.insert(sink);
  for (std::size_t idx = 0; idx < a.rules().size(); ++idx) {
    const Rule& r = a.rules()[idx];
    ImageShape shape = image_shape(h.image(r.lhs.label()), child_states(r), sink);
    const std::string& delta = shape.lhs.label();
    std::string annotated = fresh_name(delta + "__r" + std::to_string(idx), taken);
    alphabet.add(annotated, shape.lhs.arity());
    relabel[annotated] = delta;
    rules.push_back(Rule{Tree(annotated, shape.lhs.children()), shape.constraint, r.target, r.weight});
  }
  for (Rule& r : sink_rules(a.semiring(), h.target(), sink)) rules.push_back(std::move(r));

  std::vector<std::string> states = a.states();
  states.push_back(sink);
  return {Automaton(a.semiring(), std::move(alphabet), std::move(states), sink, a.finals(), std::move(rules)),
          std::move(relabel)};
}

Automaton relabel_merge(const Automaton& a, const std::map<std::string, std::string>& relabel,
                        const RankedAlphabet& alphabet) {
  auto go = [&](auto&& self, const Tree& t) -> Tree {
    if (!t.is_symbol()) return t;
    std::vector<Tree> children;
    for (const Tree& c : t.children()) children.push_back(self(self, c));
    auto it = relabel.find(t.label());
    return Tree(it == relabel.end() ? t.label() : it->second, std::move(children));
  };
  RuleAccumulator acc;
  for (const Rule& r : a.rules()) acc.add(Rule{go(go, r.lhs), r.constraint, r.target, r.weight});
  return Automaton(a.semiring(), alphabet, a.states(), a.sink(), a.finals(), acc.take());
}

RunPtr run_image(const Automaton& a, const TreeHomomorphism& h, const Automaton& image, const Run& run) {
  if (!image.sink()) throw ValidationError("image automaton has no sink");
  const std::string& sink = *image.sink();
  const std::size_t sink_id = image.state_index(sink);

  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
  for (std::size_t r = 0; r < image.rules().size(); ++r) {
    const Rule& rule = image.rules()[r];
    index.emplace(std::make_tuple(rule.lhs.to_string(), rule.constraint.to_string(), rule.target), r);
  }
  RunEnumerator sink_runs(image);

  auto go = [&](auto&& self, const Run& rho) -> RunPtr {
    const Rule& rule = a.rules()[rho.rule];
    ImageShape shape = image_shape(h.image(rule.lhs.label()), child_states(rule), sink);
    auto it = index.find(std::make_tuple(shape.lhs.to_string(), shape.constraint.to_string(), rule.target));
    if (it == index.end()) throw Error("no image rule for '" + rule.to_string() + "'");
    const Rule& image_rule = image.rules()[it->second];

    Weight w = image_rule.weight;
    std::vector<RunPtr> children;
    for (const auto& [var, leading] : shape.slots) {
      const Run& child = *rho.children[var - 1];
      if (leading) {
        children.push_back(self(self, child));
      } else {
        const auto& runs = sink_runs.runs(h.apply(child.subject), sink_id);
        if (runs.size() != 1) throw Error("sink does not have a unique run");
        children.push_back(runs.front());
      }
      w = w * children.back()->weight;
    }
    return std::make_shared<const Run>(
        Run{it->second, image.state_index(rule.target), h.apply(rho.subject), w, std::move(children)});
  };
  return go(go, run);
}

// ---------------------------------------------------------------- zero divisors

ZeroDivisorElimination eliminate_zero_divisors_detailed(const Automaton& a) {
  if (!a.eq_restricted())
    throw ValidationError("zero-divisor elimination requires an eq-restricted WTAh: " + is_eq_restricted(a).reason);
  ZeroDivisorElimination out{a, true, 0, {}, 1};
  const Semiring& s = a.semiring();

  std::vector<Weight> gens;
  for (const Rule& r : a.rules())
    if (!r.weight.is_one()) gens.push_back(r.weight);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (s.zero_divisor_free() || gens.empty()) return out;
  if (!s.finite()) throw Error("zero-divisor elimination over infinite semiring " + s.id() + " is unsupported");

  const std::size_t n = gens.size();
  std::size_t cap = 0;
  for (const Weight& g : gens) {
    PowerCycle c = power_index_period(g);
    cap = std::max(cap, c.index + c.period);
  }
  using Vec = std::vector<std::size_t>;
  auto product = [&](const Vec& v) {
    Weight w = s.one();
    for (std::size_t i = 0; i < n; ++i) w = w * power(gens[i], v[i]);
    return w;
  };
  auto add = [&](const Vec& x, const Vec& y) {
    Vec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = std::min(cap, x[i] + y[i]);
    return z;
  };
  auto unit = [&](const Weight& w) {
    Vec v(n, 0);
    if (!w.is_one()) v[std::lower_bound(gens.begin(), gens.end(), w) - gens.begin()] = 1;
    return v;
  };

  std::size_t nonzero = 0;
  {
    Vec v(n, 0);
    for (;;) {
      nonzero += !product(v).is_zero();
      std::size_t k = 0;
      while (k < n && ++v[k] > cap) v[k++] = 0;
      if (k == n) break;
    }
  }
  auto in_v = [&](const Vec& v) { return !product(v).is_zero(); };

  // Fixpoint over reachable (state, vector) pairs.
  const std::size_t sink_id = a.state_index(*a.sink());
  std::vector<std::set<Vec>> reach(a.states().size());
  struct Emitted {
    std::size_t rule;
    std::vector<Vec> children;
    Vec result;
  };
  std::vector<Emitted> emitted;
  for (bool changed = true; changed;) {
    changed = false;
    emitted.clear();
    for (std::size_t r = 0; r < a.rules().size(); ++r) {
      const auto& c = a.compiled(r);
      if (c.target == sink_id) continue;
      std::vector<std::size_t> slots;
      for (std::size_t i = 0; i < c.states.size(); ++i)
        if (c.states[i] != sink_id) slots.push_back(i);
      std::vector<std::vector<Vec>> options;
      bool empty = false;
      for (std::size_t i : slots) {
        const auto& set = reach[c.states[i]];
        options.emplace_back(set.begin(), set.end());
        empty = empty || set.empty();
      }
      if (empty) continue;
      std::vector<std::size_t> idx(slots.size(), 0);
      for (;;) {
        Vec v = unit(a.rules()[r].weight);
        std::vector<Vec> chosen;
        for (std::size_t k = 0; k < slots.size(); ++k) {
          chosen.push_back(options[k][idx[k]]);
          v = add(v, chosen.back());
        }
        if (in_v(v)) {
          if (reach[c.target].insert(v).second) changed = true;
          emitted.push_back({r, std::move(chosen), v});
        }
        std::size_t k = 0;
        while (k < slots.size() && ++idx[k] == options[k].size()) idx[k++] = 0;
        if (k == slots.size()) break;
      }
    }
  }

  std::set<std::string> taken = taken_names(a);
  std::map<std::pair<std::size_t, Vec>, std::string> names;
  std::vector<std::string> states;
  auto name_of = [&](std::size_t q, const Vec& v) -> const std::string& {
    auto key = std::make_pair(q, v);
    auto it = names.find(key);
    if (it != names.end()) return it->second;
    std::string base = a.states()[q] + "__";
    for (std::size_t i = 0; i < n; ++i) base += (i ? "_" : "") + std::to_string(v[i]);
    states.push_back(fresh_name(base, taken));
    return names.emplace(key, states.back()).first->second;
  };
  for (std::size_t q = 0; q < a.states().size(); ++q)
    for (const Vec& v : reach[q]) name_of(q, v);
  states.push_back(*a.sink());

  std::vector<Rule> rules;
  for (const Emitted& e : emitted) {
    const Rule& rule = a.rules()[e.rule];
    const auto& c = a.compiled(e.rule);
    Tree lhs = rule.lhs;
    std::size_t k = 0;
    for (std::size_t i = 0; i < c.states.size(); ++i)
      if (c.states[i] != sink_id) lhs = replace_at(lhs, c.state_positions[i], Tree::state(name_of(c.states[i], e.children[k++])));
    rules.push_back(Rule{lhs, rule.constraint, name_of(c.target, e.result), rule.weight});
  }
  for (std::size_t r = 0; r < a.rules().size(); ++r)
    if (a.compiled(r).target == sink_id) rules.push_back(a.rules()[r]);

  std::vector<std::string> finals;
  for (const std::string& f : a.finals())
    for (const Vec& v : reach[a.state_index(f)]) finals.push_back(name_of(a.state_index(f), v));

  out.automaton = Automaton(s, a.alphabet(), std::move(states), a.sink(), std::move(finals), std::move(rules));
  out.trivial = false;
  out.cap = cap;
  out.generators = std::move(gens);
  out.nonzero_vectors = nonzero;
  return out;
}

// ---------------------------------------------------------------- boolean projection

Automaton project_boolean(const Automaton& a) {
  const Semiring b = Semiring::boolean();
  if (!a.eq_restricted()) {
    if (!a.is_wtg())
      throw ValidationError("boolean projection requires an eq-restricted WTAh or an automaton without constraints: " +
                            is_eq_restricted(a).reason);
    std::vector<Rule> rules;
    for (const Rule& r : a.rules()) rules.push_back(Rule{r.lhs, r.constraint, r.target, b.one()});
    return Automaton(b, a.alphabet(), a.states(), std::nullopt, a.finals(), std::move(rules));
  }

  const std::size_t sink_id = a.state_index(*a.sink());
  std::vector<std::string> states;
  for (const std::string& q : a.states())
    if (q != *a.sink()) states.push_back(q);

  RuleAccumulator acc;
  for (std::size_t r = 0; r < a.rules().size(); ++r) {
    const Rule& rule = a.rules()[r];
    const auto& c = a.compiled(r);
    if (c.target == sink_id) continue;
    Tree lhs = rule.lhs;
    for (const auto& cls : c.classes) {
      std::size_t leader = *std::find_if(cls.begin(), cls.end(), [&](std::size_t i) { return c.states[i] != sink_id; });
      for (std::size_t i : cls)
        if (c.states[i] == sink_id) lhs = replace_at(lhs, c.state_positions[i], Tree::state(a.states()[c.states[leader]]));
    }
    acc.add(Rule{lhs, rule.constraint, rule.target, b.one()});
  }
  return Automaton(b, a.alphabet(), std::move(states), std::nullopt, a.finals(), acc.take());
}

// ---------------------------------------------------------------- linearization

namespace {

Automaton linearize_impl(const Automaton& a, std::size_t lin_height) {
  const bool restricted = a.eq_restricted();
  auto universal = [&](std::size_t q) { return restricted && a.is_sink(q); };

  ReachableTrees reach(a, lin_height);
  Evaluator eval(a);
  // Trees of height <= lin_height with nonzero weight in state q, tree order.
  std::map<std::size_t, std::vector<Tree>> languages;
  auto language = [&](std::size_t q) -> const std::vector<Tree>& {
    auto it = languages.find(q);
    if (it != languages.end()) return it->second;
    std::vector<Tree> ts;
    for (const Tree& t : reach.of(q))
      if (!eval.state_weight(t, q).is_zero()) ts.push_back(t);
    sort_trees(ts);
    return languages.emplace(q, std::move(ts)).first->second;
  };

  RuleAccumulator acc;
  for (std::size_t r = 0; r < a.rules().size(); ++r) {
    const Rule& rule = a.rules()[r];
    const auto& c = a.compiled(r);
    if (universal(c.target)) continue;

    // Nontrivial classes in order of their least position.
    std::vector<const std::vector<std::size_t>*> classes;
    for (const auto& cls : c.classes)
      if (cls.size() > 1) classes.push_back(&cls);
    std::sort(classes.begin(), classes.end(), [&](auto* x, auto* y) {
      return c.state_positions[x->front()] < c.state_positions[y->front()];
    });

    std::vector<std::vector<std::pair<Tree, Weight>>> options;
    bool empty = false;
    for (const auto* cls : classes) {
      std::vector<std::size_t> members;
      for (std::size_t i : *cls)
        if (!universal(c.states[i])) members.push_back(i);
      if (members.empty()) throw Error("rule '" + rule.to_string() + "' has a class constrained only by the sink");
      std::vector<std::pair<Tree, Weight>> cands;
      for (const Tree& t : language(c.states[members.front()])) {
        Weight w = a.semiring().one();
        for (std::size_t i : *cls) w = w * eval.state_weight(t, c.states[i]);
        if (!w.is_zero()) cands.emplace_back(t, w);
      }
      if (cands.empty()) {
        empty = true;
        break;
      }
      options.push_back(std::move(cands));
    }
    if (empty) continue;

    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
      Tree lhs = rule.lhs;
      Weight w = rule.weight;
      for (std::size_t k = 0; k < classes.size(); ++k) {
        const auto& [t, tw] = options[k][idx[k]];
        for (std::size_t i : *classes[k]) lhs = replace_at(lhs, c.state_positions[i], t);
        w = w * tw;
      }
      acc.add(Rule{lhs, {}, rule.target, w});
      // Last class varies fastest, so earlier classes order the output.
      std::size_t k = options.size();
      while (k > 0 && ++idx[k - 1] == options[k - 1].size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }

  std::vector<std::string> states;
  for (std::size_t q = 0; q < a.states().size(); ++q)
    if (!universal(q)) states.push_back(a.states()[q]);
  std::optional<std::string> sink = restricted ? std::nullopt : a.sink();
  return Automaton(a.semiring(), a.alphabet(), std::move(states), sink, a.finals(), acc.take());
}

}  // namespace

Automaton linearize(const Automaton& a, std::size_t lin_height) {
  if (!a.eq_restricted())
    throw ValidationError("linearization requires an eq-restricted WTAh: " + is_eq_restricted(a).reason);
  return linearize_impl(a, lin_height);
}

Automaton linearize_constrained(const Automaton& a, std::size_t lin_height) { return linearize_impl(a, lin_height); }

}  // namespace wtah
