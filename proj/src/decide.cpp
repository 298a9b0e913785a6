#include "wtah/decide.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "wtah/analyze.hpp"
#include "wtah/construct.hpp"
#include "wtah/io.hpp"

namespace wtah {

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::EvidenceRegular: return "EVIDENCE_REGULAR";
    case Regularity::LinearizationMismatch: return "LINEARIZATION_MISMATCH";
    case Regularity::OracleRegular: return "ORACLE_REGULAR";
    case Regularity::OracleNonregular: return "ORACLE_NONREGULAR";
    case Regularity::PreconditionViolated: return "PRECONDITION_VIOLATED";
    case Regularity::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

int exit_code(Regularity r) {
  switch (r) {
    case Regularity::EvidenceRegular:
    case Regularity::OracleRegular: return 0;
    case Regularity::LinearizationMismatch:
    case Regularity::OracleNonregular:
    case Regularity::PreconditionViolated: return 2;
    case Regularity::Unknown: return 3;
  }
  return 3;
}

std::string summarize(const Automaton& a) {
  std::string out = "semiring=" + a.semiring().id() + " states=" + std::to_string(a.states().size()) +
                    " rules=" + std::to_string(a.rules().size()) + " finals=" + std::to_string(a.finals().size());
  if (a.sink()) out += " sink=" + *a.sink();
  out += a.is_wta() ? " kind=WTA" : a.is_wtg() ? " kind=WTG" : " kind=WTAh";
  out += std::string(" eq-restricted=") + (a.eq_restricted() ? "yes" : "no");
  return out;
}

std::optional<bool> ask_oracle(const std::string& command, const std::string& automaton_text,
                               std::string& diagnostic) {
  std::string path = (std::filesystem::temp_directory_path() / "wtah-oracle-XXXXXX").string();
  int fd = mkstemp(path.data());
  if (fd < 0) {
    diagnostic = "cannot create temporary file for the oracle";
    return std::nullopt;
  }
  close(fd);
  {
    std::ofstream file(path);
    file << automaton_text;
  }

  std::string output;
  FILE* pipe = popen((command + " '" + path + "' 2>/dev/null").c_str(), "r");
  int status = -1;
  if (pipe) {
    std::array<char, 256> buffer;
    while (std::fgets(buffer.data(), buffer.size(), pipe)) output += buffer.data();
    status = pclose(pipe);
  }
  std::filesystem::remove(path);

  while (!output.empty() && std::isspace(static_cast<unsigned char>(output.back()))) output.pop_back();
  if (!pipe) {
    diagnostic = "oracle could not be started";
  } else if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    diagnostic = "oracle exited with status " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1);
  } else if (output == "regular") {
    return true;
  } else if (output == "nonregular") {
    return false;
  } else {
    diagnostic = "oracle answered '" + output + "' (expected 'regular' or 'nonregular')";
  }
  return std::nullopt;
}

DecisionReport decide_hom_regularity(const Automaton& a, const TreeHomomorphism& h, const DecideOptions& options) {
  DecisionReport r;
  r.options = options;
  r.semiring = a.semiring().id();
  r.zero_sum_free = a.semiring().zero_sum_free();
  if (!r.zero_sum_free)
    r.warnings.push_back("semiring " + r.semiring +
                         " is not zero-sum free; the support reduction needs zero-sum freeness, so positive "
                         "verdicts are capped at UNKNOWN");
  if (!a.is_wta()) throw ValidationError("the decision pipeline takes a WTA input");

  // The homomorphism object is validated on construction (nondeleting, nonerasing).
  r.hom_valid = true;

  r.tetris_free = check_tetris_free(h, options.check_bound);
  if (!r.tetris_free->ok()) {
    r.verdict = Regularity::PreconditionViolated;
    r.detail = "homomorphism is not tetris-free: " + r.tetris_free->detail;
    return r;
  }
  r.h_unambiguous = check_h_unambiguous(a, h, options.check_bound);
  if (!r.h_unambiguous->ok()) {
    r.verdict = Regularity::PreconditionViolated;
    r.detail = "automaton is not h-unambiguous: " + r.h_unambiguous->detail;
    return r;
  }

  Automaton image = hom_image(a, h);
  ZeroDivisorElimination z = eliminate_zero_divisors_detailed(image);
  if (z.trivial)
    r.zero_divisor_path = a.semiring().zero_divisor_free() ? "unchanged (semiring has no zero divisors)"
                                                           : "unchanged (all rule weights are one)";
  else
    r.zero_divisor_path = "exponent vectors: n=" + std::to_string(z.generators.size()) +
                          " cap=" + std::to_string(z.cap) + " nonzero=" + std::to_string(z.nonzero_vectors);
  const Automaton& image_fixed = z.automaton;
  r.image_summary = summarize(image_fixed);

  r.image_unambiguous = check_unambiguous(image_fixed, options.check_bound);
  if (!r.image_unambiguous->ok()) {
    r.verdict = Regularity::Unknown;
    r.detail = "internal consistency failure: the image automaton is ambiguous although the preconditions held: " +
               r.image_unambiguous->detail;
    return r;
  }

  Automaton projection = project_boolean(image_fixed);
  r.projection_summary = summarize(projection);
  r.support_arm = r.zero_sum_free ? "zero-sum-free semiring"
                                  : "unambiguous up to height " + std::to_string(options.check_bound);

  Regularity verdict;
  if (options.oracle) {
    std::string diagnostic;
    auto answer = ask_oracle(*options.oracle, format_automaton(projection), diagnostic);
    if (!answer) {
      r.verdict = Regularity::Unknown;
      r.detail = diagnostic;
      return r;
    }
    r.oracle_answer = *answer ? "regular" : "nonregular";
    verdict = *answer ? Regularity::OracleRegular : Regularity::OracleNonregular;
    r.detail = "oracle answered " + r.oracle_answer + " for the support language";
  } else {
    Automaton lin = wtg_to_wta(linearize(image_fixed, options.lin_height));
    r.linearization_summary = summarize(lin);
    r.equivalence = bounded_equivalence(image_fixed, lin, options.eq_bound);
    if (r.equivalence->ok()) {
      verdict = Regularity::EvidenceRegular;
      r.detail = "linearization at height " + std::to_string(options.lin_height) +
                 " agrees with the image on all trees up to height " + std::to_string(options.eq_bound) +
                 " (evidence, not a proof)";
    } else {
      verdict = Regularity::LinearizationMismatch;
      r.detail = "linearization at height " + std::to_string(options.lin_height) + " differs from the image: " +
                 r.equivalence->detail + " (this height is insufficient; not a proof of non-regularity)";
    }
  }

  r.verdict = verdict;
  if (!r.zero_sum_free && exit_code(verdict) == 0) {
    r.uncapped = verdict;
    r.verdict = Regularity::Unknown;
  }
  return r;
}

SupportReduction reduce_to_support(const Automaton& a, std::size_t height_bound) {
  Automaton projection = project_boolean(a);
  AnalysisVerdict unambiguous = check_unambiguous(a, height_bound);

  auto trees = [&](const Automaton& m) {
    std::vector<Tree> out;
    for (const auto& [t, _] : support_up_to(m, height_bound)) out.push_back(t);
    return out;
  };
  std::vector<Tree> lhs = trees(a);
  std::vector<Tree> rhs = trees(projection);
  std::vector<Tree> diff;
  std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(diff),
                                tree_order_less);

  AnalysisVerdict agreement = AnalysisVerdict::passed("support-agreement", height_bound);
  if (!diff.empty()) {
    const Tree& t = diff.front();
    bool in_support = std::binary_search(lhs.begin(), lhs.end(), t, tree_order_less);
    agreement = AnalysisVerdict::violated("support-agreement", height_bound, {t},
                                          t.to_string() + (in_support ? " is in the support but not accepted"
                                                                      : " is accepted but not in the support"));
    agreement.evidence["in_support"] = in_support ? "yes" : "no";
  }
  agreement.evidence["support_size"] = std::to_string(lhs.size());

  std::string note = "the series is regular iff the language of the projection is regular, provided the input "
                     "is unambiguous or its semiring is zero-sum free";
  return {std::move(projection), std::move(unambiguous), std::move(agreement), lhs.size(), std::move(note)};
}

}  // namespace wtah
