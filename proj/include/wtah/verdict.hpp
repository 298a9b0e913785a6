#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wtah/term.hpp"

namespace wtah {

/// Outcome of a bounded check. `ok` only ever means "no violation among the
/// trees up to `bound`"; a witness is exact and re-verifiable.
struct AnalysisVerdict {
  enum class Status { Ok, Witness };

  std::string check;
  Status status = Status::Ok;
  std::size_t bound = 0;
  std::vector<Tree> witness;
  /// Extra evidence (values, run counts, states) keyed by name.
  std::map<std::string, std::string> evidence;
  std::string detail;

  bool ok() const { return status == Status::Ok; }

  static AnalysisVerdict passed(std::string check, std::size_t bound) {
    AnalysisVerdict v;
    v.check = std::move(check);
    v.bound = bound;
    return v;
  }
  static AnalysisVerdict violated(std::string check, std::size_t bound, std::vector<Tree> witness,
                                  std::string detail) {
    AnalysisVerdict v;
    v.check = std::move(check);
    v.status = Status::Witness;
    v.bound = bound;
    v.witness = std::move(witness);
    v.detail = std::move(detail);
    return v;
  }
};

}  // namespace wtah
