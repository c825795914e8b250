#pragma once

// Dense two-phase primal simplex over exact rationals with Bland's rule.
// Small problems only; every pivot is exact, so the rule guarantees
// termination without tolerances.

#include <cstddef>
#include <optional>
#include <vector>

#include "mbeu/rational.hpp"

namespace mbeu::lp {

enum class Sense { le, eq, ge };

struct Constraint {
  Vector coef;
  Sense sense = Sense::ge;
  Rational rhs = 0;
};

/// maximize objective . x subject to rows, x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Constraint> rows;
  Vector objective;
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Vector x;
  Rational value = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows + 1, Vector(cols + 1)) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  Vector& objective() { return t_[rows_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t p, std::size_t q) {
    Vector& prow = t_[p];
    const Rational inv = 1 / prow[q];
    for (auto& v : prow)
      if (v != 0) v *= inv;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == p || t_[i][q] == 0) continue;
      const Rational f = t_[i][q];
      Vector& row = t_[i];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (prow[j] != 0) row[j] -= f * prow[j];
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Vector> t_;
};

// Runs simplex iterations on the objective row (reduced costs, maximize).
// Columns with allowed[j] == false never enter. Returns false if unbounded.
inline bool iterate(Tableau& t, std::vector<std::size_t>& basis, const std::vector<bool>& allowed) {
  for (;;) {
    std::optional<std::size_t> enter;
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (allowed[j] && t.objective()[j] > 0) {
        enter = j;
        break;
      }
    if (!enter) return true;
    const std::size_t q = *enter;
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t i = 0; i < t.rows(); ++i) {
      if (t.at(i, q) <= 0) continue;
      Rational ratio = t.rhs(i) / t.at(i, q);
      if (!leave || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[*leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    if (!leave) return false;
    t.pivot(*leave, q);
    basis[*leave] = q;
  }
}

inline void price_out(Tableau& t, const std::vector<std::size_t>& basis, const Vector& cost) {
  auto& obj = t.objective();
  for (std::size_t j = 0; j < t.cols(); ++j) obj[j] = cost[j];
  obj[t.cols()] = 0;
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const Rational& cb = cost[basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= t.cols(); ++j)
      if (t.at(i, j) != 0) obj[j] -= cb * t.at(i, j);
  }
}

}  // namespace detail

inline Result maximize(const Problem& prob) {
  const std::size_t n = prob.num_vars;
  const std::size_t m = prob.rows.size();

  // Normalize each row to a nonnegative right-hand side.
  std::vector<Constraint> rows = prob.rows;
  for (auto& r : rows) {
    if (r.coef.size() != n) throw Error(ErrorKind::dimension_mismatch, "lp row length differs from variable count");
    if (r.rhs < 0) {
      for (auto& c : r.coef) c = -c;
      r.rhs = -r.rhs;
      if (r.sense == Sense::le)
        r.sense = Sense::ge;
      else if (r.sense == Sense::ge)
        r.sense = Sense::le;
    }
  }

  std::size_t num_slack = 0, num_art = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::eq) ++num_slack;
    if (r.sense != Sense::le) ++num_art;
  }
  const std::size_t slack0 = n, art0 = n + num_slack, cols = n + num_slack + num_art;
  detail::Tableau t(m, cols);
  std::vector<std::size_t> basis(m);
  std::size_t s = slack0, a = art0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = rows[i].coef[j];
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].sense) {
      case Sense::le:
        t.at(i, s) = 1;
        basis[i] = s++;
        break;
      case Sense::ge:
        t.at(i, s++) = -1;
        t.at(i, a) = 1;
        basis[i] = a++;
        break;
      case Sense::eq:
        t.at(i, a) = 1;
        basis[i] = a++;
        break;
    }
  }

  std::vector<bool> allowed(cols, true);
  if (num_art > 0) {
    Vector phase1(cols);
    for (std::size_t j = art0; j < cols; ++j) phase1[j] = -1;
    detail::price_out(t, basis, phase1);
    detail::iterate(t, basis, allowed);
    Rational infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= art0) infeas += t.rhs(i);
    if (infeas != 0) return {Status::infeasible, {}, 0};
    // Drive zero-level artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < art0) continue;
      for (std::size_t j = 0; j < art0; ++j)
        if (t.at(i, j) != 0) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
    }
    for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  }

  Vector cost(cols);
  for (std::size_t j = 0; j < n && j < prob.objective.size(); ++j) cost[j] = prob.objective[j];
  detail::price_out(t, basis, cost);
  if (!detail::iterate(t, basis, allowed)) return {Status::unbounded, {}, 0};

  Result res;
  res.status = Status::optimal;
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t.rhs(i);
  for (std::size_t j = 0; j < n && j < prob.objective.size(); ++j) res.value += prob.objective[j] * res.x[j];
  return res;
}

/// One nonzero vector in the kernel of `a`, if any (Gauss-Jordan elimination).
inline std::optional<Vector> kernel_vector(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<Vector> r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = a.row_vector(i);
  std::vector<std::optional<std::size_t>> pivot_row_of_col(n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && r[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(r[p], r[row]);
    const Rational inv = 1 / r[row][col];
    for (auto& v : r[row]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || r[i][col] == 0) continue;
      const Rational f = r[i][col];
      for (std::size_t j = 0; j < n; ++j) r[i][j] -= f * r[row][j];
    }
    pivot_row_of_col[col] = row++;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (pivot_row_of_col[free]) continue;
    Vector x(n);
    x[free] = 1;
    for (std::size_t col = 0; col < n; ++col)
      if (pivot_row_of_col[col]) x[col] = -r[*pivot_row_of_col[col]][free];
    return x;
  }
  return std::nullopt;
}

}  // namespace mbeu::lp
