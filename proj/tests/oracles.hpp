#pragma once

// Independent reference implementations used to freeze expected values.
// They share only the rational type with the library.

#include <cstddef>
#include <vector>

#include "mbeu/rational.hpp"

namespace oracle {

using mbeu::Matrix;
using mbeu::Rational;
using mbeu::Vector;

// Sign-sequence form of single crossing: once the difference is >= 0 (> 0
// for the strict clause) it stays so at every later state.
inline bool single_crossing(const Matrix& u, bool strict) {
  for (std::size_t lo = 0; lo < u.rows(); ++lo)
    for (std::size_t hi = lo + 1; hi < u.rows(); ++hi) {
      bool seen_nonneg = false, seen_pos = false;
      for (std::size_t s = 0; s < u.cols(); ++s) {
        const Rational d = u(hi, s) - u(lo, s);
        if (seen_nonneg && d < 0) return false;
        if (strict && seen_pos && d <= 0) return false;
        if (d >= 0) seen_nonneg = true;
        if (d > 0) seen_pos = true;
      }
    }
  return true;
}

// Rank by fraction-free elimination on a copy.
inline std::size_t rank(std::vector<Vector> rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const Matrix& a) {
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row_vector(i));
  return rank(std::move(rows), a.cols());
}

enum class Status { strict, weak, infeasible };

// Vertices of {z >= 0, sum z = 1, A^T z = 0} by support enumeration. A
// support S gives a vertex when the restricted equality system has full
// column rank |S| and its unique solution is positive.
struct VertexSummary {
  std::size_t vertices = 0;
  std::vector<bool> covered;  // union of vertex supports
};

inline VertexSummary enumerate_vertices(const Matrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  VertexSummary out;
  out.covered.assign(m, false);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    const std::size_t k = s.size();
    // Augmented system: n rows of A^T restricted, plus the sum row.
    std::vector<Vector> sys;
    for (std::size_t j = 0; j < n; ++j) {
      Vector row(k + 1);
      for (std::size_t t = 0; t < k; ++t) row[t] = a(s[t], j);
      sys.push_back(row);
    }
    Vector ones(k + 1, Rational(1));
    sys.push_back(ones);
    if (rank(sys, k) != k || rank(sys, k + 1) != k) continue;
    // Solve by Gauss-Jordan.
    std::vector<Vector> g = sys;
    std::size_t r = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = r;
      while (p < g.size() && g[p][c] == 0) ++p;
      if (p == g.size()) continue;
      std::swap(g[p], g[r]);
      const Rational inv = 1 / g[r][c];
      for (auto& v : g[r]) v *= inv;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == r || g[i][c] == 0) continue;
        const Rational f = g[i][c];
        for (std::size_t j = 0; j <= k; ++j) g[i][j] -= f * g[r][j];
      }
      pivcol.push_back(c);
      ++r;
    }
    bool positive = true;
    for (std::size_t t = 0; t < k; ++t)
      if (g[t][k] <= 0) positive = false;
    if (!positive) continue;
    ++out.vertices;
    for (auto i : s) out.covered[i] = true;
  }
  return out;
}

// strict: some y has A y >> 0 (no nonnegative dependence among rows).
// infeasible: only y = 0 has A y >= 0, i.e. a positive dependence exists
// and A has full column rank. weak otherwise.
inline Status feasibility_status(const Matrix& a) {
  const auto v = enumerate_vertices(a);
  if (v.vertices == 0) return Status::strict;
  bool all = true;
  for (bool c : v.covered) all = all && c;
  if (all && rank(a) == a.cols()) return Status::infeasible;
  return Status::weak;
}

}  // namespace oracle
