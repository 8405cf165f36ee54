#include "curvcone/relaxation.hpp"

#include <sstream>

#include "curvcone/weitzenboeck.hpp"

namespace curvcone {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::kTrue: return "TRUE";
    case Answer::kFalse: return "FALSE";
    case Answer::kUndecided: return "UNDECIDED";
  }
  return "?";
}

std::string Verdict::trace() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    if (i) out << "; ";
    out << "m=" << l.m << ": inner " << to_string(l.inner);
    if (l.outer) {
      if (*l.outer)
        out << ", outer TRUE";
      else
        out << ", outer FALSE at p=" << *l.failing_p;
    }
  }
  return out.str();
}

Verdict algorithm1(const CurvOp& r, const Rat& k, int m_max, double tol) {
  if (r.n() < 2) throw std::invalid_argument("algorithm1: n must be >= 2");
  if (m_max < 0 || m_max > kMaxRelaxationLevel)
    throw std::invalid_argument("algorithm1: m_max must lie in [0, " + std::to_string(kMaxRelaxationLevel) + "]");
  const CurvOp shifted = apply_bound_reduction(r, k, BoundSide::kLower);
  Verdict v;
  for (int m = 0; m <= m_max; ++m) {
    v.level = m;
    LevelRecord rec;
    rec.m = m;
    InnerResult inner;
    try {
      inner = inner_membership(shifted, m, tol);
    } catch (const SizeCapError& e) {
      throw RelaxationSizeCap(e, m);
    }
    rec.inner = inner.outcome;
    if (inner.outcome == InnerOutcome::kYes) {
      v.levels.push_back(rec);
      v.answer = Answer::kTrue;
      v.certificate = std::move(inner.certificate);
      return v;
    }
    OuterResult outer = outer_membership(shifted, m);
    rec.outer = outer.member;
    rec.failing_p = outer.failing_p;
    v.levels.push_back(rec);
    if (!outer.member) {
      v.answer = Answer::kFalse;
      v.failing_p = outer.failing_p;
      return v;
    }
  }
  return v;
}

}  // namespace curvcone
