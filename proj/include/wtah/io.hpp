#pragma once

#include <string>
#include <string_view>

#include "wtah/automaton.hpp"
#include "wtah/decide.hpp"
#include "wtah/hom.hpp"
#include "wtah/verdict.hpp"

namespace wtah {

/// Parses the line-oriented automaton format:
///
///     # comment
///     semiring: natural
///     alphabet: a/0 g/1 k/2        (optional; inferred from the rules otherwise)
///     states: q qf bot
///     sink: bot                    (optional)
///     final: qf
///     rules:
///     k(q, g(bot)) -> qf @ 1 | 1 = 2.1
///
/// Errors carry 1-based line and column.
Automaton parse_automaton_file(std::string_view text);

/// Canonical text of an automaton; parse_automaton_file reads it back to an
/// automaton with the same canonical form.
std::string format_automaton(const Automaton& a);

/// Parses `from: a/0 g/1`, `to: ...` and one `name/arity -> term` line per source
/// symbol. Either declaration may be omitted and is then inferred.
TreeHomomorphism parse_hom_file(std::string_view text);

std::string format_hom(const TreeHomomorphism& h);

enum class ReportFormat { Text, Machine };

/// Machine format is a JSON object with keys check, status (`ok` or `witness`),
/// bound, witness (term texts), evidence and detail.
std::string emit_verdict(const AnalysisVerdict& v, ReportFormat format);

/// Machine format is a JSON object with keys verdict, exit_code, detail,
/// semiring, zero_sum_free, options, preconditions, artifacts, regularity,
/// warnings. Every nested verdict uses the emit_verdict schema.
std::string emit_report(const DecisionReport& r, ReportFormat format);

/// Reads a whole file; throws Error when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace wtah
