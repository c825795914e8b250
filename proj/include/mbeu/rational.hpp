#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbeu/error.hpp"

namespace mbeu {

/// Exact rational scalar used for every probability and utility value.
using Rational = boost::multiprecision::mpq_rational;
using Vector = std::vector<Rational>;

/// Parses "p/q", an integer, or a decimal literal ("0.25", "-1.5e-3") into an
/// exact rational. Decimals are expanded digit by digit, never through a float.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw Error(ErrorKind::parse, "not a rational literal: '" + std::string(text) + "'");
  };
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  text = text.substr(b, e - b);
  if (text.empty()) fail();

  auto parse_int = [&](std::string_view s) -> boost::multiprecision::mpz_int {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) fail();
    boost::multiprecision::mpz_int v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
      v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = text.substr(0, epos);
    auto exp_part = text.substr(epos + 1);
    auto ev = parse_int(exp_part);
    if (ev > 4096 || ev < -4096) fail();
    exponent = ev.convert_to<long>();
  }
  bool neg = false;
  std::size_t i = 0;
  if (i < mantissa.size() && (mantissa[i] == '+' || mantissa[i] == '-')) neg = mantissa[i++] == '-';
  boost::multiprecision::mpz_int digits = 0;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < mantissa.size(); ++i) {
    char c = mantissa[i];
    if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  long scale = exponent - frac_digits;
  boost::multiprecision::mpz_int ten_pow = 1;
  for (long k = 0; k < (scale < 0 ? -scale : scale); ++k) ten_pow *= 10;
  Rational r = scale >= 0 ? Rational(digits * ten_pow) : Rational(digits, ten_pow);
  return neg ? Rational(-r) : r;
}

/// Canonical text form: reduced "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline Rational sum(std::span<const Rational> v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::dimension_mismatch, "dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Dense row-major matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector row_vector(std::size_t i) const { return Vector(row(i).begin(), row(i).end()); }
  Vector col_vector(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "\n[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << "]";
  }
  return os;
}

}  // namespace mbeu
