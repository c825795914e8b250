#pragma once

// Audits a rationalization <u, I, C> of a dataset: monotonicity (SCP of u,
// MLR of I), Bayes plausibility, consistency with q, optimality of every
// chosen action, and the support condition C(a|gamma) > 0 iff a is optimal.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mbeu/generators.hpp"
#include "mbeu/mlr.hpp"
#include "mbeu/model.hpp"

namespace mbeu {

/// Posterior index, chosen action and the alternative it is compared with.
struct OptimalityTriple {
  std::size_t posterior;
  std::size_t chosen;
  std::size_t alternative;
};

struct MonotonicityCheck {
  ScpReport utility;
  MlrReport info;
  bool pass() const { return utility.pass && info.verdict != MlrVerdict::none; }
};

struct BayesCheck {
  std::vector<bool> flags;
  bool pass() const {
    for (bool f : flags)
      if (!f) return false;
    return true;
  }
};

struct ConsistencyCheck {
  bool pass = false;
  Matrix simulated;
  Rational max_deviation;
};

struct OptimalityCheck {
  std::vector<OptimalityTriple> violations;
  std::optional<OptimalityTriple> strict_witness;
  bool strictness_required = true;

  bool weak_pass() const { return violations.empty(); }
  bool pass() const { return weak_pass() && (strict_witness || !strictness_required); }
};

struct SupportCheck {
  std::vector<std::size_t> mismatched_posteriors;
  bool pass() const { return mismatched_posteriors.empty(); }
};

struct VerificationReport {
  MonotonicityCheck monotonicity;
  BayesCheck bayes_plausibility;
  ConsistencyCheck consistency;
  OptimalityCheck optimality;
  SupportCheck support_condition;

  /// The four defining conditions.
  bool pass() const {
    return monotonicity.pass() && bayes_plausibility.pass() && consistency.pass && optimality.pass();
  }
  /// Defining conditions plus the support condition.
  bool all_pass() const { return pass() && support_condition.pass(); }
};

inline VerificationReport verify(const Dataset& d, const Rationalization& r) {
  const std::size_t n = d.num_states(), m = d.num_actions();
  const auto& u = r.utility;
  const auto& info = r.info;
  const auto& choice = r.choice;
  if (u.num_states() != n || u.num_actions() != m)
    throw Error(ErrorKind::dimension_mismatch, "utility must be M x N for the dataset");
  if (info.num_states() != n) throw Error(ErrorKind::dimension_mismatch, "structure state count differs from dataset");
  if (choice.num_posteriors() != info.num_posteriors() || choice.num_actions() != m)
    throw Error(ErrorKind::dimension_mismatch, "choice rule must be P x M");

  VerificationReport rep;
  rep.monotonicity.utility = check_single_crossing(u, true);
  rep.monotonicity.info = check_mlr(info.pi());
  rep.bayes_plausibility.flags = bayes_plausibility_flags(info, d.prior());

  rep.consistency.simulated = simulate(info, choice);
  rep.consistency.max_deviation = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) {
      Rational dev = abs(rep.consistency.simulated(i, a) - d.prob(i, a));
      if (dev > rep.consistency.max_deviation) rep.consistency.max_deviation = dev;
    }
  rep.consistency.pass = rep.consistency.max_deviation == 0;

  rep.optimality.strictness_required = m >= 2;
  for (std::size_t b = 0; b < info.num_posteriors(); ++b) {
    const auto gamma = info.posteriors().row(b);
    Vector eu(m);
    for (std::size_t a = 0; a < m; ++a) eu[a] = expected_utility(u, gamma, a);
    const auto best = best_responses(u, gamma);
    for (std::size_t a = 0; a < m; ++a) {
      const bool chosen = choice.c(b, a) > 0;
      const bool optimal = std::find(best.begin(), best.end(), a) != best.end();
      if (chosen != optimal &&
          (rep.support_condition.mismatched_posteriors.empty() || rep.support_condition.mismatched_posteriors.back() != b))
        rep.support_condition.mismatched_posteriors.push_back(b);
      if (!chosen) continue;
      for (std::size_t alt = 0; alt < m; ++alt) {
        if (alt == a) continue;
        if (eu[a] < eu[alt]) rep.optimality.violations.push_back({b, a, alt});
        else if (eu[a] > eu[alt] && !rep.optimality.strict_witness) rep.optimality.strict_witness = OptimalityTriple{b, a, alt};
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// No-improving-action-switch inequalities on the data directly.

struct NiasReport {
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // (a, b): switching a to b gains
  std::optional<std::pair<std::size_t, std::size_t>> strict_witness;

  bool weak_pass() const { return violations.empty(); }
  bool pass() const { return weak_pass() && strict_witness.has_value(); }
};

/// For all ordered pairs (a, b): sum_theta mu0 q(a|theta) (u(a,theta) - u(b,theta)) >= 0.
inline NiasReport check_nias(const Dataset& d, const UtilityMatrix& u) {
  const std::size_t n = d.num_states(), m = d.num_actions();
  if (u.num_states() != n || u.num_actions() != m)
    throw Error(ErrorKind::dimension_mismatch, "utility must be M x N for the dataset");
  NiasReport rep;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      Rational gain = 0;
      for (std::size_t i = 0; i < n; ++i) gain += d.prior()[i] * d.prob(i, a) * (u(a, i) - u(b, i));
      if (gain < 0)
        rep.violations.emplace_back(a, b);
      else if (gain > 0 && !rep.strict_witness)
        rep.strict_witness = std::make_pair(a, b);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Necessity: data simulated from random MBEU decision makers is MLR-ordered.

struct NecessityFailure {
  std::uint64_t seed;
  std::size_t n_states;
  std::size_t m_actions;
  MlrReport report;
};

struct NecessitySummary {
  std::size_t trials = 0;
  std::size_t strict_count = 0;
  std::size_t weak_count = 0;
  std::vector<NecessityFailure> failures;
};

inline NecessitySummary necessity_suite(std::size_t trials, std::uint64_t seed, std::size_t max_states,
                                        std::size_t max_actions, long bound = 60) {
  NecessitySummary out;
  Rng sizes(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    GeneratorConfig cfg;
    cfg.n_states = static_cast<std::size_t>(detail::draw(sizes, 1, static_cast<long>(max_states)));
    cfg.m_actions = static_cast<std::size_t>(detail::draw(sizes, 1, static_cast<long>(max_actions)));
    cfg.seed = sizes();
    cfg.denominator_bound = bound;
    cfg.kind = GeneratorKind::mbeu_dm;
    const auto dm = gen_mbeu_dm(cfg);
    auto report = check_mlr(simulate(dm.utility, dm.info, dm.choice));
    ++out.trials;
    switch (report.verdict) {
      case MlrVerdict::strict: ++out.strict_count; break;
      case MlrVerdict::weak: ++out.weak_count; break;
      case MlrVerdict::none: out.failures.push_back({cfg.seed, cfg.n_states, cfg.m_actions, std::move(report)}); break;
    }
  }
  return out;
}

}  // namespace mbeu
