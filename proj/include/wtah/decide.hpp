#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wtah/automaton.hpp"
#include "wtah/hom.hpp"
#include "wtah/verdict.hpp"

namespace wtah {

enum class Regularity {
  EvidenceRegular,
  LinearizationMismatch,
  OracleRegular,
  OracleNonregular,
  PreconditionViolated,
  Unknown,
};

/// `EVIDENCE_REGULAR`, `LINEARIZATION_MISMATCH`, ...
std::string to_string(Regularity r);

/// 0 for positive verdicts, 2 for negative ones, 3 for unknown.
int exit_code(Regularity r);

struct DecideOptions {
  std::size_t check_bound = 4;
  std::size_t lin_height = 2;
  std::size_t eq_bound = 4;
  /// External regularity oracle; called as `<oracle> <file>` with the boolean
  /// projection written to <file>.
  std::optional<std::string> oracle;
};

struct DecisionReport {
  Regularity verdict = Regularity::Unknown;
  /// The verdict before the positive-side cap for semirings that are not
  /// zero-sum free.
  std::optional<Regularity> uncapped;
  std::string detail;

  std::string semiring;
  bool zero_sum_free = false;
  DecideOptions options;

  // Preconditions.
  bool hom_valid = true;
  std::optional<AnalysisVerdict> tetris_free;
  std::optional<AnalysisVerdict> h_unambiguous;

  // Constructed artifacts.
  std::string image_summary;
  std::string zero_divisor_path;
  std::optional<AnalysisVerdict> image_unambiguous;
  std::string projection_summary;
  std::string support_arm;

  // Regularity evidence.
  std::optional<AnalysisVerdict> equivalence;
  std::string linearization_summary;
  std::string oracle_answer;

  std::vector<std::string> warnings;
};

/// Runs the pipeline: homomorphism validation, bounded tetris-freeness and
/// h-unambiguity, homomorphic image, zero-divisor elimination, image
/// unambiguity, boolean projection, and the regularity step (oracle, or the
/// linearization surrogate compared up to eq_bound).
DecisionReport decide_hom_regularity(const Automaton& a, const TreeHomomorphism& h, const DecideOptions& options);

struct SupportReduction {
  Automaton projection;
  /// Unambiguity of the input up to the bound.
  AnalysisVerdict unambiguous;
  /// Support of the input and trees accepted by the projection, compared up to
  /// the bound.
  AnalysisVerdict agreement;
  std::size_t support_size = 0;
  std::string note;
};

SupportReduction reduce_to_support(const Automaton& a, std::size_t height_bound);

/// Description such as `states=3 rules=6 eq-restricted=yes`.
std::string summarize(const Automaton& a);

/// Runs the oracle command on the given automaton text; nullopt with `diagnostic`
/// set when the answer is not exactly `regular` or `nonregular`.
std::optional<bool> ask_oracle(const std::string& command, const std::string& automaton_text,
                               std::string& diagnostic);

}  // namespace wtah
