#pragma once

#include <string>
#include <vector>

namespace lpapprox {

enum class VerdictStatus { certified, refuted, inconclusive };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::certified: return "certified";
    case VerdictStatus::refuted: return "refuted";
    case VerdictStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Three-valued outcome of a numerical check. Certified and refuted verdicts
/// carry a witness; inconclusive ones carry the tolerance that blocked them.
struct Verdict {
  VerdictStatus status = VerdictStatus::inconclusive;
  std::string witness;      ///< human-readable description of the deciding datum
  int witness_index = -1;   ///< e.g. moment index, sample index
  double witness_value = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> notes;

  bool certified() const { return status == VerdictStatus::certified; }
  bool refuted() const { return status == VerdictStatus::refuted; }
};

}  // namespace lpapprox
