#pragma once

// Seeded random instances: MLR datasets, supermodular utilities, whole
// MBEU decision makers and monotone garblings. Every generator checks its
// own advertised property before returning.

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <string_view>

#include "mbeu/mlr.hpp"
#include "mbeu/model.hpp"

namespace mbeu {

enum class GeneratorKind { mlr_strict, mlr_weak, arbitrary, mbeu_dm };

inline std::string_view kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::mlr_strict: return "mlr-strict";
    case GeneratorKind::mlr_weak: return "mlr-weak";
    case GeneratorKind::arbitrary: return "arbitrary";
    case GeneratorKind::mbeu_dm: return "mbeu-dm";
  }
  return "arbitrary";
}

inline GeneratorKind parse_kind(std::string_view s) {
  if (s == "mlr-strict") return GeneratorKind::mlr_strict;
  if (s == "mlr-weak") return GeneratorKind::mlr_weak;
  if (s == "arbitrary") return GeneratorKind::arbitrary;
  if (s == "mbeu-dm") return GeneratorKind::mbeu_dm;
  throw Error(ErrorKind::parse, "unknown generator kind '" + std::string(s) + "'");
}

struct GeneratorConfig {
  std::size_t n_states = 3;
  std::size_t m_actions = 3;
  std::uint64_t seed = 0;
  /// Bound on the integers drawn before normalization.
  long denominator_bound = 60;
  GeneratorKind kind = GeneratorKind::mlr_strict;

  void validate() const {
    if (n_states == 0 || m_actions == 0) throw Error(ErrorKind::precondition, "generator sizes must be positive");
    if (denominator_bound < 2) throw Error(ErrorKind::precondition, "denominator bound must be at least 2");
  }
};

using Rng = std::mt19937_64;

/// Retry budget for degenerate draws; MBEU_GEN_RETRIES overrides the default.
inline int generator_retries() {
  if (const char* env = std::getenv("MBEU_GEN_RETRIES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 32;
}

namespace detail {

inline long draw(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline Vector normalized(const Vector& v) {
  const Rational s = sum(v);
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / s;
  return out;
}

// Rows ordered by a discrete exponential tilt: row_{i+1} = row_i * t with t
// nondecreasing (strictly increasing when `strict`), then renormalized.
inline Matrix tilted_rows(Rng& rng, std::size_t rows, std::size_t cols, long bound, bool strict) {
  Vector row(cols);
  for (auto& v : row) v = draw(rng, 1, bound);
  std::vector<Vector> out{normalized(row)};
  for (std::size_t i = 1; i < rows; ++i) {
    Vector tilt(cols);
    long acc = draw(rng, 1, bound);
    for (std::size_t j = 0; j < cols; ++j) {
      if (j > 0) acc += draw(rng, strict ? 1 : 0, bound);
      tilt[j] = acc;
    }
    for (std::size_t j = 0; j < cols; ++j) row[j] = out.back()[j] * tilt[j];
    out.push_back(normalized(row));
  }
  return Matrix::from_rows(out);
}

inline Matrix arbitrary_rows(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < rows; ++i) {
    Vector row(cols);
    do {
      for (auto& v : row) v = draw(rng, 0, bound);
    } while (sum(row) == 0);
    out.push_back(normalized(row));
  }
  return Matrix::from_rows(out);
}

}  // namespace detail

inline Vector gen_prior(Rng& rng, std::size_t n, long bound) {
  Vector p(n);
  for (auto& v : p) v = detail::draw(rng, 1, bound);
  return detail::normalized(p);
}

/// Row-stochastic matrix of the requested kind, post-checked.
inline Matrix gen_stochastic_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound, GeneratorKind kind) {
  const int retries = generator_retries();
  for (int attempt = 0; attempt < retries; ++attempt) {
    switch (kind) {
      case GeneratorKind::arbitrary: return detail::arbitrary_rows(rng, rows, cols, bound);
      case GeneratorKind::mlr_strict:
      case GeneratorKind::mbeu_dm: {
        auto m = detail::tilted_rows(rng, rows, cols, bound, true);
        if (check_mlr(m).verdict == MlrVerdict::strict) return m;
        break;
      }
      case GeneratorKind::mlr_weak: {
        auto m = detail::tilted_rows(rng, rows, cols, bound, false);
        if (check_mlr(m).verdict != MlrVerdict::none) return m;
        break;
      }
    }
  }
  throw Error(ErrorKind::retry_exhausted, "could not draw a matrix with the requested MLR property");
}

/// Dataset with a random positive prior. mbeu-dm data is simulated from a
/// generated decision maker.
inline Dataset gen_mlr_dataset(const GeneratorConfig& cfg);

/// Utility with strictly increasing differences u(a_k,.) - u(a_{k-1},.) in
/// the state, hence strictly single crossing.
inline UtilityMatrix gen_supermodular_utility(Rng& rng, std::size_t n, std::size_t m, long bound) {
  UtilityMatrix u{Matrix(m, n)};
  for (std::size_t i = 0; i < n; ++i) u.values(0, i) = detail::draw(rng, -bound, bound);
  for (std::size_t k = 1; k < m; ++k) {
    Vector step(n);
    Rational acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += Rational(detail::draw(rng, 1, bound), detail::draw(rng, 1, bound));
      step[i] = acc;
    }
    // Shift so the difference changes sign somewhere inside the state range.
    const Rational shift = n > 1 ? step[static_cast<std::size_t>(detail::draw(rng, 0, static_cast<long>(n) - 1))]
                                 : Rational(detail::draw(rng, 0, 1));
    for (std::size_t i = 0; i < n; ++i) u.values(k, i) = u.values(k - 1, i) + step[i] - shift;
  }
  if (m > 1 && !check_single_crossing(u, true).pass)
    throw Error(ErrorKind::construction_failed, "generated utility is not single crossing");
  return u;
}

struct MbeuDm {
  UtilityMatrix utility;
  InformationStructure info;
  ChoiceRule choice;
  Vector prior;
  Matrix signals;  // mu(s | theta) before merging into posteriors

  Dataset induced() const { return Dataset(prior, simulate(utility, info, choice)); }
};

/// Supermodular utility, strict-MLR signals pushed through Bayes' rule and a
/// choice rule uniform over each argmax set.
inline MbeuDm gen_mbeu_dm(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const long b = cfg.denominator_bound;
  MbeuDm dm;
  dm.prior = gen_prior(rng, cfg.n_states, b);
  dm.utility = gen_supermodular_utility(rng, cfg.n_states, cfg.m_actions, b);
  const std::size_t signals = cfg.m_actions + static_cast<std::size_t>(detail::draw(rng, 0, 1));
  dm.signals = gen_stochastic_matrix(rng, cfg.n_states, signals, b, GeneratorKind::mlr_strict);
  dm.info = posteriors_from_signals(dm.signals, dm.prior);
  dm.choice = optimal_choice_rule(dm.utility, dm.info);
  return dm;
}

inline Dataset gen_mlr_dataset(const GeneratorConfig& cfg) {
  cfg.validate();
  if (cfg.kind == GeneratorKind::mbeu_dm) return gen_mbeu_dm(cfg).induced();
  Rng rng(cfg.seed);
  Vector prior = gen_prior(rng, cfg.n_states, cfg.denominator_bound);
  Matrix q = gen_stochastic_matrix(rng, cfg.n_states, cfg.m_actions, cfg.denominator_bound, cfg.kind);
  return Dataset(std::move(prior), std::move(q));
}

/// Row-stochastic S x T matrix, strictly MLR: pushing signals of an MLR
/// structure through it keeps the structure MLR.
inline Matrix gen_monotone_garbling(Rng& rng, std::size_t s, std::size_t t, long bound) {
  return gen_stochastic_matrix(rng, s, t, bound, GeneratorKind::mlr_strict);
}

}  // namespace mbeu
