#pragma once

// Homogeneous inequality systems A y >= 0 with y != 0. Either returns a
// solution (maximizing the smallest row slack) or a Farkas certificate
// z >> 0 with A^T z = 0 proving that only y = 0 satisfies the system.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbeu/error.hpp"
#include "mbeu/rational.hpp"
#include "mbeu/simplex.hpp"

namespace mbeu {

enum class RowKind { data, sign, signed_ratio, other };

struct RowLabel {
  RowKind kind = RowKind::other;
  std::string tag;
};

struct InequalitySystem {
  Matrix a;
  std::vector<RowLabel> row_labels;
  /// Coordinates constrained nonnegative by sign rows; their sum is the
  /// normalization that rules out y = 0.
  std::vector<std::size_t> nonneg_coords;

  std::size_t num_rows() const noexcept { return a.rows(); }
  std::size_t num_vars() const noexcept { return a.cols(); }
};

enum class FeasibilityStatus { strict, weak, infeasible };

inline std::string_view status_name(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::strict: return "strict";
    case FeasibilityStatus::weak: return "weak";
    case FeasibilityStatus::infeasible: return "infeasible";
  }
  return "infeasible";
}

struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::infeasible;
  Vector solution;     // empty when infeasible
  Rational min_slack;  // min_i (A y)_i
  Vector certificate;  // empty unless infeasible
};

enum class Normalization {
  automatic,  // normalize when nonneg_coords is nonempty
  required,   // error when nonneg_coords is empty
  off,
};

inline Vector multiply(const Matrix& a, std::span<const Rational> y) {
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), y);
  return out;
}

/// z >> 0 and A^T z = 0, exactly.
inline bool verify_certificate(const InequalitySystem& sys, std::span<const Rational> z) {
  if (z.size() != sys.num_rows()) return false;
  for (const auto& v : z)
    if (v <= 0) return false;
  for (std::size_t j = 0; j < sys.num_vars(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < sys.num_rows(); ++i) s += sys.a(i, j) * z[i];
    if (s != 0) return false;
  }
  return true;
}

namespace detail {

// max t  s.t.  A y >= t 1,  -1 <= y <= 1,  optionally sum_{j in norm} y_j = 1.
// y_j = w_j - 1 with 0 <= w_j <= 2; t = tp - tn.
inline std::optional<std::pair<Vector, Rational>> max_min_slack(const Matrix& a,
                                                                const std::vector<std::size_t>* norm) {
  const std::size_t n = a.cols();
  lp::Problem prob;
  prob.num_vars = n + 2;
  prob.objective.assign(n + 2, Rational(0));
  prob.objective[n] = 1;
  prob.objective[n + 1] = -1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    lp::Constraint c;
    c.coef.assign(n + 2, Rational(0));
    Rational shift = 0;
    for (std::size_t j = 0; j < n; ++j) {
      c.coef[j] = a(i, j);
      shift += a(i, j);
    }
    c.coef[n] = -1;
    c.coef[n + 1] = 1;
    c.sense = lp::Sense::ge;
    c.rhs = shift;
    prob.rows.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp::Constraint c;
    c.coef.assign(n + 2, Rational(0));
    c.coef[j] = 1;
    c.sense = lp::Sense::le;
    c.rhs = 2;
    prob.rows.push_back(std::move(c));
  }
  if (norm) {
    lp::Constraint c;
    c.coef.assign(n + 2, Rational(0));
    for (auto j : *norm) c.coef[j] = 1;
    c.sense = lp::Sense::eq;
    c.rhs = Rational(1 + static_cast<long>(norm->size()));
    prob.rows.push_back(std::move(c));
  }
  auto res = lp::maximize(prob);
  if (res.status != lp::Status::optimal) return std::nullopt;
  Vector y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = res.x[j] - 1;
  return std::make_pair(std::move(y), res.value);
}

// max sum_i (A y)_i  s.t.  A y >= 0, -1 <= y <= 1.
inline Vector max_total_slack(const Matrix& a) {
  const std::size_t n = a.cols();
  lp::Problem prob;
  prob.num_vars = n;
  prob.objective.assign(n, Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    lp::Constraint c;
    c.coef = a.row_vector(i);
    c.sense = lp::Sense::ge;
    c.rhs = sum(a.row(i));
    for (std::size_t j = 0; j < n; ++j) prob.objective[j] += a(i, j);
    prob.rows.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < n; ++j) {
    lp::Constraint c;
    c.coef.assign(n, Rational(0));
    c.coef[j] = 1;
    c.sense = lp::Sense::le;
    c.rhs = 2;
    prob.rows.push_back(std::move(c));
  }
  auto res = lp::maximize(prob);
  if (res.status != lp::Status::optimal)
    throw Error(ErrorKind::construction_failed, "total-slack program failed although y = 0 is feasible");
  Vector y(n);
  for (std::size_t j = 0; j < n; ++j) y[j] = res.x[j] - 1;
  return y;
}

// Find z with A^T z = 0 and z_i >= 1.
inline std::optional<Vector> positive_dependence(const Matrix& a) {
  const std::size_t m = a.rows();
  lp::Problem prob;
  prob.num_vars = m;
  prob.objective.assign(m, Rational(0));
  // z = 1 + v, v >= 0:  A^T v = -A^T 1.
  for (std::size_t j = 0; j < a.cols(); ++j) {
    lp::Constraint c;
    c.coef.assign(m, Rational(0));
    Rational col_sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      c.coef[i] = a(i, j);
      col_sum += a(i, j);
    }
    c.sense = lp::Sense::eq;
    c.rhs = -col_sum;
    prob.rows.push_back(std::move(c));
  }
  auto res = lp::maximize(prob);
  if (res.status != lp::Status::optimal) return std::nullopt;
  Vector z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = res.x[i] + 1;
  return z;
}

inline bool nonzero(std::span<const Rational> y) {
  return std::any_of(y.begin(), y.end(), [](const Rational& v) { return v != 0; });
}

inline Rational min_of(const Vector& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace detail

/// Decides the system exactly. status is strict iff some y has A y >> 0,
/// weak iff only nonzero y with A y >= 0 (and no strict one) exist, and
/// infeasible iff y = 0 is the only solution; in that case the certificate is
/// returned instead of a solution.
inline FeasibilityOutcome solve(const InequalitySystem& sys, Normalization mode = Normalization::automatic) {
  const std::size_t m = sys.num_rows(), n = sys.num_vars();
  if (m == 0 || n == 0) throw Error(ErrorKind::dimension_mismatch, "system needs at least one row and one column");
  if (!sys.row_labels.empty() && sys.row_labels.size() != m)
    throw Error(ErrorKind::dimension_mismatch, "row labels do not cover all rows");
  for (auto j : sys.nonneg_coords)
    if (j >= n) throw Error(ErrorKind::dimension_mismatch, "normalization coordinate out of range");
  if (mode == Normalization::required && sys.nonneg_coords.empty())
    throw Error(ErrorKind::degenerate_system, "normalization requested but no sign-constrained coordinates");
  const bool normalize = mode != Normalization::off && !sys.nonneg_coords.empty();

  auto finish = [&](FeasibilityStatus status, Vector y) {
    const Vector slack = multiply(sys.a, y);
    FeasibilityOutcome out{status, std::move(y), detail::min_of(slack), {}};
    if (!detail::nonzero(out.solution) || out.min_slack < 0 ||
        (status == FeasibilityStatus::strict) != (out.min_slack > 0))
      throw Error(ErrorKind::construction_failed, "feasibility solution failed re-substitution");
    return out;
  };

  std::optional<Vector> weak_candidate;
  if (normalize) {
    if (auto r = detail::max_min_slack(sys.a, &sys.nonneg_coords)) {
      if (r->second > 0) return finish(FeasibilityStatus::strict, std::move(r->first));
      if (r->second == 0) weak_candidate = std::move(r->first);
    }
  }
  auto free_run = detail::max_min_slack(sys.a, nullptr);
  if (!free_run) throw Error(ErrorKind::construction_failed, "min-slack program failed although y = 0 is feasible");
  if (free_run->second > 0) return finish(FeasibilityStatus::strict, std::move(free_run->first));
  if (weak_candidate) return finish(FeasibilityStatus::weak, std::move(*weak_candidate));

  Vector y = detail::max_total_slack(sys.a);
  if (detail::nonzero(multiply(sys.a, y))) return finish(FeasibilityStatus::weak, std::move(y));
  if (auto k = lp::kernel_vector(sys.a)) {
    Rational scale = 0;
    for (const auto& v : *k) scale = std::max(scale, abs(v));
    for (auto& v : *k) v /= scale;
    return finish(FeasibilityStatus::weak, std::move(*k));
  }

  auto z = detail::positive_dependence(sys.a);
  if (!z || !verify_certificate(sys, *z))
    throw Error(ErrorKind::construction_failed, "no solution and no Farkas certificate found");
  return FeasibilityOutcome{FeasibilityStatus::infeasible, {}, 0, std::move(*z)};
}

}  // namespace mbeu
