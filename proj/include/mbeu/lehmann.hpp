#pragma once

// Accuracy comparison of two MLR-ordered datasets over the same states.
// Each discrete signal s is spread uniformly over (s, s + 1], which turns the
// step CDFs into continuous piecewise linear ones carrying the same
// information. d1 is higher when h(x, theta) = F1_theta^-1(F2_theta(x)) is
// nondecreasing in theta for every x. A sampled ex-ante utility check backs
// the verdict.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mbeu/generators.hpp"
#include "mbeu/rationalizer.hpp"

namespace mbeu {

inline Vector cdf(std::span<const Rational> dist) {
  Vector out(dist.size());
  Rational acc = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) out[i] = acc += dist[i];
  return out;
}

enum class Direction { first_higher, second_higher, both, incomparable };

inline std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::first_higher: return "first-higher";
    case Direction::second_higher: return "second-higher";
    case Direction::both: return "both";
    case Direction::incomparable: return "incomparable";
  }
  return "incomparable";
}

/// h(x, theta) > h(x, high_state) at the point x, with low_state < high_state.
struct TransferWitness {
  Rational point;
  std::size_t low_state;
  std::size_t high_state;
};

struct TransferMap {
  Vector points;                      // breakpoints of h on [0, S2], ascending
  std::vector<std::vector<Rational>> h;  // h[k][theta] = h(points[k], theta)
  std::vector<TransferWitness> witnesses;
  bool monotone() const { return witnesses.empty(); }
};

struct LehmannReport {
  Direction direction = Direction::incomparable;
  TransferMap forward;   // signals of d2 into d1
  TransferMap backward;  // signals of d1 into d2
};

namespace detail {

/// Piecewise linear CDF of one state's signal distribution; knots[j] = F(j).
struct LinearCdf {
  Vector mass;
  Vector knots;

  explicit LinearCdf(std::span<const Rational> dist) : mass(dist.begin(), dist.end()), knots(dist.size() + 1) {
    for (std::size_t j = 0; j < dist.size(); ++j) knots[j + 1] = knots[j] + dist[j];
  }
  std::size_t size() const { return mass.size(); }

  Rational operator()(const Rational& x) const {
    if (x <= 0) return 0;
    std::size_t j = 0;
    while (j + 1 < size() && x >= Rational(static_cast<long>(j + 1))) ++j;
    if (x >= Rational(static_cast<long>(size()))) return knots.back();
    return knots[j] + (x - Rational(static_cast<long>(j))) * mass[j];
  }

  /// min{y in [0, S] : F(y) >= p}
  Rational inverse(const Rational& p) const {
    if (p <= 0) return 0;
    for (std::size_t j = 0; j < size(); ++j)
      if (knots[j + 1] >= p) return Rational(static_cast<long>(j)) + (p - knots[j]) / mass[j];
    return Rational(static_cast<long>(size()));
  }
};

inline TransferMap transfer(const Matrix& higher, const Matrix& lower) {
  const std::size_t n = higher.rows();
  std::vector<LinearCdf> f_hi, f_lo;
  for (std::size_t i = 0; i < n; ++i) {
    f_hi.emplace_back(higher.row(i));
    f_lo.emplace_back(lower.row(i));
  }
  // h is left-continuous and linear between consecutive breakpoints: the
  // integers and the points where F2_theta reaches a knot of F1_theta.
  Vector pts;
  for (std::size_t s = 0; s <= lower.cols(); ++s) pts.emplace_back(static_cast<long>(s));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& p : f_hi[i].knots) pts.push_back(f_lo[i].inverse(p));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto eval = [&](const Rational& x) {
    std::vector<Rational> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = f_hi[i].inverse(f_lo[i](x));
    return row;
  };

  TransferMap t;
  t.points = pts;
  for (const auto& x : pts) t.h.push_back(eval(x));
  std::vector<std::vector<Rational>> at_mid(pts.size());
  for (std::size_t k = 1; k < pts.size(); ++k) at_mid[k] = eval((pts[k - 1] + pts[k]) / 2);
  std::vector<bool> flagged(n, false);
  auto flag = [&](std::size_t i, const Rational& x) {
    if (flagged[i]) return;
    flagged[i] = true;
    t.witnesses.push_back({x, i, i + 1});
  };
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Rational d_at = t.h[k][i + 1] - t.h[k][i];
      if (d_at < 0) flag(i, pts[k]);
      if (k == 0) continue;
      // Right limit at the previous breakpoint, from linearity on the open interval.
      const Rational mid = (pts[k - 1] + pts[k]) / 2;
      const Rational d_mid = at_mid[k][i + 1] - at_mid[k][i];
      const Rational d_right = 2 * d_mid - d_at;
      if (d_right >= 0) continue;
      if (d_mid < 0) {
        flag(i, mid);
      } else {
        const Rational t0 = d_right / (d_right - d_at);
        flag(i, pts[k - 1] + (pts[k] - pts[k - 1]) * t0 / 2);
      }
    }
  return t;
}

}  // namespace detail

inline LehmannReport lehmann_compare(const Dataset& d1, const Dataset& d2) {
  if (d1.num_states() != d2.num_states() || d1.states() != d2.states())
    throw Error(ErrorKind::dimension_mismatch, "datasets must share the same states");
  if (d1.prior() != d2.prior()) throw Error(ErrorKind::precondition, "datasets must share the same prior");
  for (const Dataset* d : {&d1, &d2}) {
    auto rep = check_dataset_mlr(*d);
    if (rep.verdict == MlrVerdict::none)
      throw NotMlrError(std::move(rep), std::string(d == &d1 ? "first" : "second") + " dataset is not MLR-ordered");
  }
  LehmannReport r;
  r.forward = detail::transfer(d1.q(), d2.q());
  r.backward = detail::transfer(d2.q(), d1.q());
  const bool fwd = r.forward.monotone(), bwd = r.backward.monotone();
  r.direction = fwd && bwd ? Direction::both
                : fwd      ? Direction::first_higher
                : bwd      ? Direction::second_higher
                           : Direction::incomparable;
  return r;
}

/// Sum over states and posteriors of mu0(theta) pi(gamma|theta) u(a*(gamma), theta),
/// with a* the largest optimal action.
inline Rational ex_ante_utility(const UtilityMatrix& u, const InformationStructure& info, const Vector& prior) {
  if (u.num_states() != info.num_states() || prior.size() != info.num_states())
    throw Error(ErrorKind::dimension_mismatch, "utility, structure and prior disagree on states");
  Rational total = 0;
  for (std::size_t b = 0; b < info.num_posteriors(); ++b) {
    const std::size_t a = best_responses(u, info.posteriors().row(b)).back();
    for (std::size_t i = 0; i < info.num_states(); ++i) total += prior[i] * info.pi()(i, b) * u(a, i);
  }
  return total;
}

struct InformednessReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::size_t positive = 0;  // samples with a strictly positive margin
  std::vector<Rational> margins;
  std::optional<Rational> min_margin;
  std::optional<Rational> max_margin;
};

/// Samples strictly supermodular utilities and compares ex-ante utility
/// under the structures that rationalize d1 and d2.
inline InformednessReport revealed_informedness_test(const Dataset& d1, const Dataset& d2, std::size_t samples,
                                                     std::uint64_t seed, std::size_t max_actions = 5,
                                                     long bound = 60) {
  const auto cmp = lehmann_compare(d1, d2);
  if (cmp.direction != Direction::first_higher && cmp.direction != Direction::both)
    throw Error(ErrorKind::precondition, "first dataset is not Lehmann-higher than the second");
  const auto info1 = build_info_and_choice(d1).first;
  const auto info2 = build_info_and_choice(d2).first;
  const std::size_t n = d1.num_states();

  InformednessReport rep;
  Rng rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    const auto m = static_cast<std::size_t>(detail::draw(rng, 2, static_cast<long>(std::max<std::size_t>(2, max_actions))));
    const auto u = gen_supermodular_utility(rng, n, m, bound);
    Rational margin = ex_ante_utility(u, info1, d1.prior()) - ex_ante_utility(u, info2, d2.prior());
    ++rep.samples;
    if (margin < 0) ++rep.violations;
    if (margin > 0) ++rep.positive;
    if (!rep.min_margin || margin < *rep.min_margin) rep.min_margin = margin;
    if (!rep.max_margin || margin > *rep.max_margin) rep.max_margin = margin;
    rep.margins.push_back(std::move(margin));
  }
  return rep;
}

/// q * G: the dataset's signals passed through a row-stochastic garbling.
inline Dataset garble(const Dataset& d, const Matrix& g) {
  if (g.rows() != d.num_actions()) throw Error(ErrorKind::dimension_mismatch, "garbling needs one row per signal");
  Matrix out(d.num_states(), g.cols());
  for (std::size_t i = 0; i < d.num_states(); ++i)
    for (std::size_t s = 0; s < d.num_actions(); ++s)
      for (std::size_t t = 0; t < g.cols(); ++t) out(i, t) += d.prob(i, s) * g(s, t);
  return Dataset(d.states(), detail::default_labels("s", g.cols()), d.prior(), std::move(out));
}

}  // namespace mbeu
