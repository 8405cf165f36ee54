#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvcone/sos.hpp"
#include "curvcone/tensorspace.hpp"

namespace curvcone {

enum class Answer { kTrue, kFalse, kUndecided };

std::string to_string(Answer a);

/// Outcome of one level of the interleaved loop.
struct LevelRecord {
  int m = 0;
  InnerOutcome inner = InnerOutcome::kInconclusive;
  /// Absent when the outer test was not reached.
  std::optional<bool> outer;
  std::optional<int> failing_p;
};

struct Verdict {
  Answer answer = Answer::kUndecided;
  int level = 0;
  std::optional<SosCertificate> certificate;
  std::optional<int> failing_p;
  std::vector<LevelRecord> levels;

  /// e.g. "m=0: inner NO_CERTIFICATE, outer TRUE; m=1: inner YES".
  std::string trace() const;
};

/// A size cap hit inside the loop, with the level that triggered it.
class RelaxationSizeCap : public SizeCapError {
 public:
  RelaxationSizeCap(const SizeCapError& e, int level) : SizeCapError(e.dim(), e.cap()), level_(level) {}
  int level() const { return level_; }

 private:
  int level_;
};

constexpr int kMaxRelaxationLevel = 5;

/// Inner test first at each level, then outer; UNDECIDED after m_max.
Verdict algorithm1(const CurvOp& r, const Rat& k, int m_max, double tol = 1e-7);

}  // namespace curvcone
