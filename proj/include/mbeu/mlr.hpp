#pragma once

// Monotone likelihood ratio checks in cross-product form:
//   M[r'][c'] * M[r][c] >= M[r'][c] * M[r][c']   for r < r', c < c'.
// Quadruples where both products vanish are ties, never violations.

#include <cstddef>
#include <string_view>
#include <vector>

#include "mbeu/model.hpp"

namespace mbeu {

enum class MlrVerdict { strict, weak, none };

inline std::string_view verdict_name(MlrVerdict v) {
  switch (v) {
    case MlrVerdict::strict: return "strict";
    case MlrVerdict::weak: return "weak";
    case MlrVerdict::none: return "none";
  }
  return "none";
}

struct MlrQuadruple {
  std::size_t low_row;
  std::size_t high_row;
  std::size_t low_col;
  std::size_t high_col;
  Rational lhs;  // M[high_row][high_col] * M[low_row][low_col]
  Rational rhs;  // M[high_row][low_col] * M[low_row][high_col]
};

struct MlrReport {
  MlrVerdict verdict = MlrVerdict::strict;
  std::vector<MlrQuadruple> violations;
  std::vector<MlrQuadruple> ties;

  bool passes(bool strict) const {
    return strict ? verdict == MlrVerdict::strict : verdict != MlrVerdict::none;
  }
};

inline MlrReport check_mlr(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) < 0) throw Error(ErrorKind::negative_entry, "MLR check on a matrix with negative entries");

  MlrReport report;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t r2 = r + 1; r2 < m.rows(); ++r2)
      for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t c2 = c + 1; c2 < m.cols(); ++c2) {
          Rational lhs = m(r2, c2) * m(r, c);
          Rational rhs = m(r2, c) * m(r, c2);
          if (lhs < rhs)
            report.violations.push_back({r, r2, c, c2, std::move(lhs), std::move(rhs)});
          else if (lhs == rhs)
            report.ties.push_back({r, r2, c, c2, std::move(lhs), std::move(rhs)});
        }
  if (!report.violations.empty())
    report.verdict = MlrVerdict::none;
  else if (!report.ties.empty())
    report.verdict = MlrVerdict::weak;
  return report;
}

/// States as rows, actions as columns.
inline MlrReport check_dataset_mlr(const Dataset& d) { return check_mlr(d.q()); }

/// Verdict for "p dominates r": r is the lower row, p the higher one.
inline MlrVerdict mlr_dominates(std::span<const Rational> p, std::span<const Rational> r) {
  if (p.size() != r.size()) throw Error(ErrorKind::dimension_mismatch, "mlr_dominates: length mismatch");
  Matrix two(2, p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    two(0, j) = r[j];
    two(1, j) = p[j];
  }
  return check_mlr(two).verdict;
}

}  // namespace mbeu
