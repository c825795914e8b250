#pragma once

// Worked three-state example and a few small fixtures shared by the suites.

#include "mbeu/mbeu.hpp"

namespace fx {

using mbeu::Matrix;
using mbeu::Rational;
using mbeu::Vector;

inline Rational r(long p, long q = 1) { return Rational(p, q); }

inline Vector uniform3() { return {r(1, 3), r(1, 3), r(1, 3)}; }

// Utility with two single crossing violations; rows are actions.
inline mbeu::UtilityMatrix crossing_utility() {
  return {Matrix{{5, -1, 0}, {-1, 5, -1}, {2, -1, 5}}};
}

// Best-response equivalent utility that is strictly single crossing.
inline mbeu::UtilityMatrix scp_utility() {
  return {Matrix{{5, 3, -1}, {3, 5, 1}, {1, -1, 10}}};
}

// mu(s | theta): rows are states, columns are the signals l, m, h.
inline Matrix example_signals() {
  return Matrix{{r(2, 3), r(1, 6), r(1, 6)}, {r(1, 4), r(1, 2), r(1, 4)}, {r(1, 6), r(1, 6), r(2, 3)}};
}

inline mbeu::Dataset example_data() { return mbeu::Dataset(uniform3(), example_signals()); }

inline Matrix mlr3x3() {
  return Matrix{{r(7, 10), r(2, 10), r(1, 10)}, {r(2, 10), r(5, 10), r(3, 10)}, {r(5, 100), r(15, 100), r(8, 10)}};
}

inline mbeu::Dataset mlr_data() { return mbeu::Dataset(mlr3x3()); }

inline Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

inline Matrix constant_rows(std::size_t n, std::size_t s) {
  Matrix m(n, s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < s; ++j) m(i, j) = Rational(1, static_cast<long>(s));
  return m;
}

inline mbeu::Dataset binary(Rational q11, Rational q12, Rational mu = Rational(1, 2)) {
  return mbeu::Dataset(Vector{mu, 1 - mu}, Matrix{{q11, 1 - q11}, {q12, 1 - q12}});
}

}  // namespace fx
