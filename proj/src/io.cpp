#include "wtah/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wtah {

namespace {

using json = nlohmann::ordered_json;

struct Line {
  std::size_t number;
  std::string text;  // comment stripped, not trimmed
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    out.push_back({number++, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// Column of the first non-space character at or after `from` (1-based).
std::size_t column_at(const std::string& s, std::size_t from) {
  while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
  return from + 1;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// `key: value` header; nullopt when the line has no recognized key.
std::optional<std::pair<std::string, std::string>> header(const std::string& line,
                                                          std::initializer_list<const char*> keys) {
  auto colon = line.find(':');
  if (colon == std::string::npos) return std::nullopt;
  std::string key = trim(std::string_view(line).substr(0, colon));
  for (const char* k : keys)
    if (key == k) return std::make_pair(key, line.substr(colon + 1));
  return std::nullopt;
}

[[noreturn]] void fail_at(const Line& line, std::size_t column, const std::string& what) {
  throw ParseError(what, line.number, column);
}

// Re-raises an error from a sub-parser at the given file location.
template <typename F>
auto located(const Line& line, std::size_t column, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::size_t inner = e.line() == 1 && e.column() > 0 ? e.column() - 1 : 0;
    throw ParseError(e.message(), line.number, column + inner);
  } catch (const ValidationError& e) {
    throw ValidationError(std::to_string(line.number) + ":" + std::to_string(column) + ": " + e.what());
  }
}

RankedAlphabet parse_alphabet(const Line& line, const std::string& value, std::size_t value_offset) {
  RankedAlphabet alphabet;
  std::size_t pos = 0;
  for (const std::string& w : words(value)) {
    pos = value.find(w, pos);
    std::size_t column = value_offset + pos + 1;
    auto slash = w.find('/');
    std::string name = w.substr(0, slash);
    std::string rank = slash == std::string::npos ? "" : w.substr(slash + 1);
    if (!is_valid_name(name) || rank.empty() ||
        !std::all_of(rank.begin(), rank.end(), [](unsigned char c) { return std::isdigit(c); }) || rank.size() > 3)
      fail_at(line, column, "expected 'name/rank', got '" + w + "'");
    located(line, column, [&] {
      alphabet.add(name, std::stoul(rank));
      return 0;
    });
    pos += w.size();
  }
  return alphabet;
}

}  // namespace

// ---------------------------------------------------------------- automata

Automaton parse_automaton_file(std::string_view text) {
  std::optional<Semiring> semiring;
  std::optional<RankedAlphabet> declared;
  RankedAlphabet inferred;
  std::vector<std::string> states;
  std::optional<std::string> sink;
  std::vector<std::string> finals;
  std::vector<Rule> rules;
  bool in_rules = false;
  LeafTokens leaves;

  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    if (!in_rules) {
      auto h = header(line.text, {"semiring", "alphabet", "states", "sink", "final", "rules"});
      if (!h) fail_at(line, column_at(line.text, 0), "expected a header line such as 'semiring: natural'");
      const auto& [key, value] = *h;
      const std::size_t offset = line.text.find(':') + 1;
      const std::size_t column = column_at(line.text, offset);
      if (key == "semiring") {
        semiring = located(line, column, [&] { return Semiring::from_id(trim(value)); });
      } else if (key == "alphabet") {
        declared = parse_alphabet(line, value, offset);
      } else if (key == "states") {
        states = words(value);
        leaves.states.insert(states.begin(), states.end());
      } else if (key == "sink") {
        auto w = words(value);
        if (w.size() != 1) fail_at(line, column, "expected exactly one sink state");
        sink = w.front();
      } else if (key == "final") {
        finals = words(value);
      } else {
        if (!blank(value)) fail_at(line, column, "unexpected text after 'rules:'");
        if (!semiring) fail_at(line, 1, "missing 'semiring:' before 'rules:'");
        in_rules = true;
      }
      continue;
    }

    const std::string& s = line.text;
    auto arrow = s.find("->");
    if (arrow == std::string::npos) fail_at(line, column_at(s, 0), "expected 'lhs -> state @ weight'");
    auto at = s.find('@', arrow);
    if (at == std::string::npos) fail_at(line, column_at(s, arrow + 2), "expected '@ weight' after the target state");
    auto bar = s.find('|', at);

    const std::size_t lhs_column = column_at(s, 0);
    Tree lhs = located(line, lhs_column, [&] {
      std::string_view lhs_text = std::string_view(s).substr(lhs_column - 1, arrow - (lhs_column - 1));
      return declared ? parse_term(*declared, leaves, lhs_text) : parse_term_extending(inferred, leaves, lhs_text);
    });
    if (lhs.is_state()) fail_at(line, lhs_column, "left-hand side is a bare state");

    std::string target = trim(std::string_view(s).substr(arrow + 2, at - arrow - 2));
    const std::size_t target_column = column_at(s, arrow + 2);
    if (target.empty()) fail_at(line, target_column, "missing target state");
    if (!leaves.states.count(target)) fail_at(line, target_column, "undeclared target state '" + target + "'");

    std::string weight_text =
        trim(std::string_view(s).substr(at + 1, (bar == std::string::npos ? s.size() : bar) - at - 1));
    Weight weight = located(line, column_at(s, at + 1), [&] { return parse_rule_weight(*semiring, weight_text); });

    std::vector<std::pair<Position, Position>> pairs;
    if (bar != std::string::npos) {
      std::vector<Position> qpos = state_positions(lhs);
      std::size_t start = bar + 1;
      for (;;) {
        std::size_t comma = s.find(',', start);
        std::string item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t column = column_at(s, start);
        auto eq = item.find('=');
        if (eq == std::string::npos) fail_at(line, column, "expected 'position = position'");
        Position p[2];
        std::string texts[2] = {trim(item.substr(0, eq)), trim(item.substr(eq + 1))};
        for (int k = 0; k < 2; ++k) {
          p[k] = located(line, column, [&] { return Position::parse(texts[k]); });
          if (!std::binary_search(qpos.begin(), qpos.end(), p[k]))
            fail_at(line, column,
                    "constrained position " + texts[k] + " is not a state position of '" + lhs.to_string() + "'");
        }
        pairs.emplace_back(p[0], p[1]);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    rules.push_back(Rule{lhs, Constraint::from_pairs(pairs), target, weight});
  }
  if (!semiring) throw ParseError("missing 'semiring:' header");
  if (!in_rules) throw ParseError("missing 'rules:' section");

  RankedAlphabet alphabet = declared ? *declared : inferred;
  return Automaton(*semiring, std::move(alphabet), std::move(states), std::move(sink), std::move(finals),
                   std::move(rules));
}

std::string format_automaton(const Automaton& automaton) {
  Automaton a = automaton.canonical();
  std::string out = "semiring: " + a.semiring().id() + "\n";
  out += "alphabet: " + a.alphabet().to_string() + "\n";
  out += "states:";
  for (const std::string& q : a.states()) out += " " + q;
  out += "\n";
  if (a.sink()) out += "sink: " + *a.sink() + "\n";
  out += "final:";
  for (const std::string& q : a.finals()) out += " " + q;
  out += "\nrules:\n";
  for (const Rule& r : a.rules()) out += r.to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------- homomorphisms

TreeHomomorphism parse_hom_file(std::string_view text) {
  std::optional<RankedAlphabet> from, to;
  RankedAlphabet source, target;
  std::map<std::string, Tree> images;
  LeafTokens leaves;
  leaves.variables = true;

  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    if (auto h = header(line.text, {"from", "to"})) {
      std::size_t offset = line.text.find(':') + 1;
      (h->first == "from" ? from : to) = parse_alphabet(line, h->second, offset);
      continue;
    }
    const std::string& s = line.text;
    auto arrow = s.find("->");
    const std::size_t column = column_at(s, 0);
    if (arrow == std::string::npos) fail_at(line, column, "expected 'name/arity -> term'");
    std::string decl = trim(std::string_view(s).substr(0, arrow));
    RankedAlphabet one = parse_alphabet(line, decl, column - 1);
    if (one.size() != 1) fail_at(line, column, "expected a single 'name/arity' before '->'");
    auto [name, rank] = one.symbols().front();
    if (from && from->rank(name) != rank)
      fail_at(line, column, "'" + name + "/" + std::to_string(rank) + "' is not declared in 'from:'");
    located(line, column, [&] {
      source.add(name, rank);
      return 0;
    });
    if (images.count(name)) fail_at(line, column, "duplicate image for '" + name + "'");

    const std::size_t term_column = column_at(s, arrow + 2);
    std::string_view term_text = std::string_view(s).substr(term_column - 1);
    images.emplace(name, located(line, term_column, [&] {
                     return to ? parse_term(*to, leaves, term_text) : parse_term_extending(target, leaves, term_text);
                   }));
  }
  return TreeHomomorphism(from ? *from : source, to ? *to : target, std::move(images));
}

std::string format_hom(const TreeHomomorphism& h) {
  std::string out = "from: " + h.source().to_string() + "\n";
  out += "to: " + h.target().to_string() + "\n";
  for (const auto& [symbol, rank] : h.source().symbols())
    out += symbol + "/" + std::to_string(rank) + " -> " + h.image(symbol).to_string() + "\n";
  return out;
}

// ---------------------------------------------------------------- reports

namespace {

json verdict_json(const AnalysisVerdict& v) {
  json j;
  j["check"] = v.check;
  j["status"] = v.ok() ? "ok" : "witness";
  j["bound"] = v.bound;
  j["witness"] = json::array();
  for (const Tree& t : v.witness) j["witness"].push_back(t.to_string());
  j["evidence"] = json::object();
  for (const auto& [k, val] : v.evidence) j["evidence"][k] = val;
  j["detail"] = v.detail;
  return j;
}

json optional_verdict(const std::optional<AnalysisVerdict>& v) { return v ? verdict_json(*v) : json(nullptr); }

std::string verdict_text(const AnalysisVerdict& v) {
  std::string out = v.check + ": ";
  if (v.ok()) return out + "ok up to height " + std::to_string(v.bound);
  out += "witness";
  for (std::size_t i = 0; i < v.witness.size(); ++i) out += (i ? ", " : " ") + v.witness[i].to_string();
  out += " (height bound " + std::to_string(v.bound) + ")";
  if (!v.detail.empty()) out += "\n  " + v.detail;
  for (const auto& [k, val] : v.evidence) out += "\n  " + k + ": " + val;
  return out;
}

}  // namespace

std::string emit_verdict(const AnalysisVerdict& v, ReportFormat format) {
  if (format == ReportFormat::Machine) return verdict_json(v).dump(2) + "\n";
  return verdict_text(v) + "\n";
}

std::string emit_report(const DecisionReport& r, ReportFormat format) {
  if (format == ReportFormat::Machine) {
    json j;
    j["verdict"] = to_string(r.verdict);
    j["exit_code"] = exit_code(r.verdict);
    j["uncapped_verdict"] = r.uncapped ? json(to_string(*r.uncapped)) : json(nullptr);
    j["detail"] = r.detail;
    j["semiring"] = r.semiring;
    j["zero_sum_free"] = r.zero_sum_free;
    j["options"] = {{"check_bound", r.options.check_bound},
                    {"lin_height", r.options.lin_height},
                    {"eq_bound", r.options.eq_bound},
                    {"oracle", r.options.oracle ? json(*r.options.oracle) : json(nullptr)}};
    j["preconditions"] = {{"hom_valid", r.hom_valid},
                          {"tetris_free", optional_verdict(r.tetris_free)},
                          {"h_unambiguous", optional_verdict(r.h_unambiguous)}};
    j["artifacts"] = {{"image", r.image_summary},
                      {"zero_divisors", r.zero_divisor_path},
                      {"image_unambiguous", optional_verdict(r.image_unambiguous)},
                      {"projection", r.projection_summary},
                      {"support_arm", r.support_arm}};
    j["regularity"] = {{"linearization", r.linearization_summary},
                       {"equivalence", optional_verdict(r.equivalence)},
                       {"oracle_answer", r.oracle_answer}};
    j["warnings"] = r.warnings;
    return j.dump(2) + "\n";
  }

  std::string out = "verdict: " + to_string(r.verdict) + "\n";
  if (r.uncapped) out += "uncapped verdict: " + to_string(*r.uncapped) + "\n";
  if (!r.detail.empty()) out += "detail: " + r.detail + "\n";
  out += "semiring: " + r.semiring + (r.zero_sum_free ? " (zero-sum free)" : " (not zero-sum free)") + "\n";
  out += "options: check_bound=" + std::to_string(r.options.check_bound) +
         " lin_height=" + std::to_string(r.options.lin_height) + " eq_bound=" + std::to_string(r.options.eq_bound);
  if (r.options.oracle) out += " oracle=" + *r.options.oracle;
  out += "\n";
  auto section = [&](const std::optional<AnalysisVerdict>& v) {
    if (v) out += verdict_text(*v) + "\n";
  };
  out += "homomorphism: nondeleting and nonerasing\n";
  section(r.tetris_free);
  section(r.h_unambiguous);
  if (!r.image_summary.empty()) out += "image: " + r.image_summary + "\n";
  if (!r.zero_divisor_path.empty()) out += "zero divisors: " + r.zero_divisor_path + "\n";
  section(r.image_unambiguous);
  if (!r.projection_summary.empty()) out += "projection: " + r.projection_summary + "\n";
  if (!r.support_arm.empty()) out += "support reduction justified by: " + r.support_arm + "\n";
  if (!r.linearization_summary.empty()) out += "linearization: " + r.linearization_summary + "\n";
  section(r.equivalence);
  if (!r.oracle_answer.empty()) out += "oracle: " + r.oracle_answer + "\n";
  for (const std::string& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace wtah
