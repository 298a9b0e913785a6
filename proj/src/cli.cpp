#include "wtah/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "wtah/analyze.hpp"
#include "wtah/construct.hpp"
#include "wtah/decide.hpp"
#include "wtah/io.hpp"

namespace wtah {

namespace {

constexpr std::size_t kEnumerationWarning = 1'000'000;

Automaton load_automaton(const std::string& path) {
  try {
    return parse_automaton_file(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + std::string(e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

TreeHomomorphism load_hom(const std::string& path) {
  try {
    return parse_hom_file(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + std::string(e.what()));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void warn_size(const RankedAlphabet& alphabet, std::size_t height, std::ostream& err) {
  std::size_t n = count_trees_up_to_height(alphabet, height, kEnumerationWarning + 1);
  if (n > kEnumerationWarning)
    err << "warning: more than " << kEnumerationWarning << " trees of height <= " << height << " over "
        << alphabet.to_string() << "\n";
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path);
  if (!file) throw Error("cannot write '" + *path + "'");
  file << text;
}

ReportFormat parse_format(const std::string& f) { return f == "machine" ? ReportFormat::Machine : ReportFormat::Text; }

int verdict_exit(const AnalysisVerdict& v) { return v.ok() ? 0 : 2; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted tree automata with hom-constraints", "wtah"};
  app.require_subcommand(1);

  std::string automaton, hom, tree, state, a_path, b_path, format = "text";
  std::optional<std::string> output, oracle;
  std::size_t height = 4, lin_height = 2, check_bound = 4, eq_bound = 4;
  bool annotated = false, as_wta = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate an automaton and/or homomorphism file");
  validate->add_option("--automaton", automaton, "Automaton file");
  validate->add_option("--hom", hom, "Homomorphism file");

  auto* eval = app.add_subcommand("eval", "Value of a tree");
  eval->add_option("--automaton", automaton)->required();
  eval->add_option("--tree", tree)->required();

  auto* support = app.add_subcommand("support", "Trees with nonzero value up to a height");
  support->add_option("--automaton", automaton)->required();
  support->add_option("--height", height);

  auto* runs = app.add_subcommand("runs", "Runs for a tree (accepting runs unless --state is given)");
  runs->add_option("--automaton", automaton)->required();
  runs->add_option("--tree", tree)->required();
  runs->add_option("--state", state);

  auto* image = app.add_subcommand("image", "Homomorphic image automaton");
  image->add_option("--automaton", automaton)->required();
  image->add_option("--hom", hom)->required();
  image->add_option("-o,--output", output);
  image->add_flag("--annotated", annotated, "Emit the unmerged stage with rule-annotated symbols");

  auto* fix = app.add_subcommand("fix-zero-divisors", "Remove zero-weight runs");
  fix->add_option("--automaton", automaton)->required();
  fix->add_option("-o,--output", output);

  auto* project = app.add_subcommand("project-bool", "Boolean automaton for the support");
  project->add_option("--automaton", automaton)->required();
  project->add_option("-o,--output", output);

  auto* linearize_cmd = app.add_subcommand("linearize", "Linearization by trees up to a height");
  linearize_cmd->add_option("--automaton", automaton)->required();
  linearize_cmd->add_option("--height", lin_height)->required();
  linearize_cmd->add_option("-o,--output", output);
  linearize_cmd->add_flag("--wta", as_wta, "Normalize the result to a WTA");

  auto* check = app.add_subcommand("check", "Bounded property checks");
  check->require_subcommand(1);
  auto* check_eq = check->add_subcommand("eq-restricted", "Eq-restriction");
  check_eq->add_option("--automaton", automaton)->required();
  auto* check_unamb = check->add_subcommand("unambiguous", "At most one accepting run per tree");
  check_unamb->add_option("--automaton", automaton)->required();
  check_unamb->add_option("--height", height);
  auto* check_tetris = check->add_subcommand("tetris-free", "Tetris-freeness of a homomorphism");
  check_tetris->add_option("--hom", hom)->required();
  check_tetris->add_option("--height", height);
  auto* check_hunamb = check->add_subcommand("h-unambiguous", "h-unambiguity of a WTA");
  check_hunamb->add_option("--automaton", automaton)->required();
  check_hunamb->add_option("--hom", hom)->required();
  check_hunamb->add_option("--height", height);
  for (auto* c : {check_eq, check_unamb, check_tetris, check_hunamb}) add_format(c);

  auto* equiv = app.add_subcommand("equiv", "Compare two series up to a height");
  equiv->add_option("--a", a_path)->required();
  equiv->add_option("--b", b_path)->required();
  equiv->add_option("--height", height);
  add_format(equiv);

  auto* decide = app.add_subcommand("decide", "Regularity pipeline for a homomorphic image");
  decide->add_option("--automaton", automaton)->required();
  decide->add_option("--hom", hom)->required();
  decide->add_option("--check-bound", check_bound);
  decide->add_option("--lin-height", lin_height);
  decide->add_option("--eq-bound", eq_bound);
  decide->add_option("--oracle", oracle, "Command answering regular/nonregular for a boolean automaton file");
  add_format(decide);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (validate->parsed()) {
      if (automaton.empty() && hom.empty()) throw Error("validate needs --automaton and/or --hom");
      if (!automaton.empty()) {
        Automaton a = load_automaton(automaton);
        out << automaton << ": valid; " << summarize(a) << "\n";
        if (!a.eq_restricted()) out << "  not eq-restricted: " << is_eq_restricted(a).reason << "\n";
      }
      if (!hom.empty()) {
        TreeHomomorphism h = load_hom(hom);
        out << hom << ": valid nondeleting nonerasing homomorphism from " << h.source().to_string() << " to "
            << h.target().to_string() << "\n";
      }
      return 0;
    }
    if (eval->parsed()) {
      Automaton a = load_automaton(automaton);
      Tree t = parse_term(a.alphabet(), {}, tree);
      out << evaluate(a, t).to_string() << "\n";
      return 0;
    }
    if (support->parsed()) {
      Automaton a = load_automaton(automaton);
      warn_size(a.alphabet(), height, err);
      for (const auto& [t, w] : support_up_to(a, height)) out << t.to_string() << " " << w.to_string() << "\n";
      return 0;
    }
    if (runs->parsed()) {
      Automaton a = load_automaton(automaton);
      Tree t = parse_term(a.alphabet(), {}, tree);
      RunEnumerator e(a);
      std::vector<RunPtr> found = state.empty() ? e.accepting_runs(t) : e.runs(t, a.state_index(state));
      for (const RunPtr& r : found)
        out << run_tree(a, *r).to_string() << " -> " << a.states()[r->target] << " @ " << r->weight.to_string()
            << "\n";
      out << found.size() << (found.size() == 1 ? " run" : " runs") << "\n";
      return 0;
    }
    if (image->parsed()) {
      Automaton a = load_automaton(automaton);
      TreeHomomorphism h = load_hom(hom);
      write_output(output, format_automaton(annotated ? hom_image_annotated(a, h).automaton : hom_image(a, h)), out);
      return 0;
    }
    if (fix->parsed()) {
      write_output(output, format_automaton(eliminate_zero_divisors(load_automaton(automaton))), out);
      return 0;
    }
    if (project->parsed()) {
      write_output(output, format_automaton(project_boolean(load_automaton(automaton))), out);
      return 0;
    }
    if (linearize_cmd->parsed()) {
      Automaton lin = linearize(load_automaton(automaton), lin_height);
      write_output(output, format_automaton(as_wta ? wtg_to_wta(lin) : lin), out);
      return 0;
    }
    if (check->parsed()) {
      AnalysisVerdict v;
      if (check_eq->parsed()) {
        EqRestriction e = is_eq_restricted(load_automaton(automaton));
        v = AnalysisVerdict::passed("eq-restricted", 0);
        if (!e.yes) {
          v.status = AnalysisVerdict::Status::Witness;
          v.detail = e.reason;
        }
      } else if (check_unamb->parsed()) {
        Automaton a = load_automaton(automaton);
        warn_size(a.alphabet(), height, err);
        v = check_unambiguous(a, height);
      } else if (check_tetris->parsed()) {
        TreeHomomorphism h = load_hom(hom);
        warn_size(h.source(), height, err);
        v = check_tetris_free(h, height);
      } else {
        Automaton a = load_automaton(automaton);
        TreeHomomorphism h = load_hom(hom);
        warn_size(h.source(), height, err);
        v = check_h_unambiguous(a, h, height);
      }
      out << emit_verdict(v, parse_format(format));
      return verdict_exit(v);
    }
    if (equiv->parsed()) {
      Automaton a = load_automaton(a_path);
      Automaton b = load_automaton(b_path);
      warn_size(a.alphabet(), height, err);
      AnalysisVerdict v = bounded_equivalence(a, b, height);
      out << emit_verdict(v, parse_format(format));
      return verdict_exit(v);
    }
    if (decide->parsed()) {
      Automaton a = load_automaton(automaton);
      TreeHomomorphism h = load_hom(hom);
      warn_size(h.source(), check_bound, err);
      warn_size(h.target(), eq_bound, err);
      DecideOptions opts{check_bound, lin_height, eq_bound, oracle};
      DecisionReport r = decide_hom_regularity(a, h, opts);
      out << emit_report(r, parse_format(format));
      return exit_code(r.verdict);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace wtah
