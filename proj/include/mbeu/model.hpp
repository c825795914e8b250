#pragma once

// Domain types and the forward model: a Bayesian decision maker with utility
// u(a, theta), an information structure over posteriors and a choice rule
// induces state-conditional choice data q(a | theta).

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mbeu/error.hpp"
#include "mbeu/rational.hpp"

namespace mbeu {

namespace detail {

inline void require_distribution(std::span<const Rational> v, const std::string& what) {
  for (const auto& x : v)
    if (x < 0) throw Error(ErrorKind::invalid_distribution, what + " has a negative entry");
  if (sum(v) != 1) throw Error(ErrorKind::invalid_distribution, what + " does not sum to 1");
}

inline std::vector<std::string> default_labels(const std::string& stem, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
  return out;
}

}  // namespace detail

/// Observables <A, Theta, prior, q>. States and actions are listed in
/// ascending order; row i of q is the choice distribution in state i.
class Dataset {
 public:
  Dataset(std::vector<std::string> states, std::vector<std::string> actions, Vector prior, Matrix q)
      : states_(std::move(states)), actions_(std::move(actions)), prior_(std::move(prior)), q_(std::move(q)) {
    const std::size_t n = states_.size(), m = actions_.size();
    if (n == 0 || m == 0) throw Error(ErrorKind::dimension_mismatch, "dataset needs at least one state and one action");
    if (prior_.size() != n) throw Error(ErrorKind::dimension_mismatch, "prior length differs from state count");
    if (q_.rows() != n || q_.cols() != m)
      throw Error(ErrorKind::dimension_mismatch, "q must be states x actions");
    for (std::size_t i = 0; i < n; ++i)
      if (prior_[i] <= 0) throw Error(ErrorKind::nonpositive_prior, "prior entry for " + states_[i] + " is not positive");
    detail::require_distribution(prior_, "prior");
    for (std::size_t i = 0; i < n; ++i) detail::require_distribution(q_.row(i), "q row for " + states_[i]);
  }

  Dataset(Vector prior, Matrix q)
      : Dataset(detail::default_labels("theta", q.rows()), detail::default_labels("a", q.cols()), std::move(prior),
                std::move(q)) {}

  /// Uniform prior.
  explicit Dataset(Matrix q) : Dataset(uniform(q.rows()), std::move(q)) {}

  static Vector uniform(std::size_t n) { return Vector(n, Rational(1, static_cast<long>(n))); }

  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_actions() const noexcept { return actions_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& actions() const noexcept { return actions_; }
  const Vector& prior() const noexcept { return prior_; }
  const Matrix& q() const noexcept { return q_; }

  /// Probability of action a in state i.
  const Rational& prob(std::size_t state, std::size_t action) const { return q_(state, action); }

  /// Unconditional probability of observing each action.
  Vector action_marginals() const {
    Vector out(num_actions());
    for (std::size_t j = 0; j < num_actions(); ++j)
      for (std::size_t i = 0; i < num_states(); ++i) out[j] += prior_[i] * q_(i, j);
    return out;
  }

  std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    if (num_actions() < num_states())
      w.push_back("fewer actions than states (" + std::to_string(num_actions()) + " < " +
                  std::to_string(num_states()) + ")");
    return w;
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> actions_;
  Vector prior_;
  Matrix q_;
};

/// u(a, theta); row k is action k, column i is state i.
struct UtilityMatrix {
  Matrix values;

  std::size_t num_actions() const noexcept { return values.rows(); }
  std::size_t num_states() const noexcept { return values.cols(); }
  const Rational& operator()(std::size_t action, std::size_t state) const { return values(action, state); }
  Rational& operator()(std::size_t action, std::size_t state) { return values(action, state); }

  friend bool operator==(const UtilityMatrix&, const UtilityMatrix&) = default;
};

/// Distribution over posteriors, stored both as the posteriors themselves and
/// as pi(gamma_b | theta). Signal b is identified with posterior b.
class InformationStructure {
 public:
  InformationStructure() = default;

  /// posteriors: P x N, pi: N x P. Marginals are derived from the prior.
  InformationStructure(Matrix posteriors, Matrix pi, const Vector& prior)
      : posteriors_(std::move(posteriors)), pi_(std::move(pi)) {
    const std::size_t n = prior.size();
    if (pi_.rows() != n) throw Error(ErrorKind::dimension_mismatch, "pi must have one row per state");
    if (posteriors_.rows() != pi_.cols() || posteriors_.cols() != n)
      throw Error(ErrorKind::dimension_mismatch, "posteriors must be P x N with P = columns of pi");
    for (std::size_t b = 0; b < posteriors_.rows(); ++b)
      detail::require_distribution(posteriors_.row(b), "posterior " + std::to_string(b + 1));
    for (std::size_t i = 0; i < n; ++i) detail::require_distribution(pi_.row(i), "pi row " + std::to_string(i + 1));
    marginals_.assign(pi_.cols(), Rational(0));
    for (std::size_t b = 0; b < pi_.cols(); ++b)
      for (std::size_t i = 0; i < n; ++i) marginals_[b] += prior[i] * pi_(i, b);
  }

  std::size_t num_posteriors() const noexcept { return posteriors_.rows(); }
  std::size_t num_states() const noexcept { return pi_.rows(); }
  const Matrix& posteriors() const noexcept { return posteriors_; }
  Vector posterior(std::size_t b) const { return posteriors_.row_vector(b); }
  const Matrix& pi() const noexcept { return pi_; }
  const Vector& marginals() const noexcept { return marginals_; }

  friend bool operator==(const InformationStructure&, const InformationStructure&) = default;

 private:
  Matrix posteriors_;
  Matrix pi_;
  Vector marginals_;
};

/// C(a | gamma_b); P x M, rows are distributions over actions.
struct ChoiceRule {
  Matrix c;

  std::size_t num_posteriors() const noexcept { return c.rows(); }
  std::size_t num_actions() const noexcept { return c.cols(); }

  void validate() const {
    for (std::size_t b = 0; b < c.rows(); ++b)
      detail::require_distribution(c.row(b), "choice row " + std::to_string(b + 1));
  }

  static ChoiceRule dirac(const std::vector<std::size_t>& chosen, std::size_t num_actions) {
    ChoiceRule rule{Matrix(chosen.size(), num_actions)};
    for (std::size_t b = 0; b < chosen.size(); ++b) rule.c(b, chosen.at(b)) = 1;
    return rule;
  }

  friend bool operator==(const ChoiceRule&, const ChoiceRule&) = default;
};

enum class RationalizationMethod { binary_closed_form, general_inductive, external };

inline std::string_view method_name(RationalizationMethod m) {
  switch (m) {
    case RationalizationMethod::binary_closed_form: return "binary-closed-form";
    case RationalizationMethod::general_inductive: return "general-inductive";
    case RationalizationMethod::external: return "external";
  }
  return "external";
}

/// Whether the constructed utility is strictly or only weakly single crossing.
enum class ScpGrade { strict, weak };

struct Rationalization {
  UtilityMatrix utility;
  InformationStructure info;
  ChoiceRule choice;
  RationalizationMethod method = RationalizationMethod::external;
  ScpGrade grade = ScpGrade::strict;
};

// ---------------------------------------------------------------------------
// Expected utility and best responses

inline Rational expected_utility(const UtilityMatrix& u, std::span<const Rational> gamma, std::size_t action) {
  if (gamma.size() != u.num_states())
    throw Error(ErrorKind::dimension_mismatch, "posterior length differs from utility state count");
  if (action >= u.num_actions()) throw Error(ErrorKind::dimension_mismatch, "action index out of range");
  return dot(u.values.row(action), gamma);
}

/// Exact argmax set, ascending.
inline std::vector<std::size_t> best_responses(const UtilityMatrix& u, std::span<const Rational> gamma) {
  std::vector<std::size_t> best;
  Rational top;
  for (std::size_t a = 0; a < u.num_actions(); ++a) {
    Rational v = expected_utility(u, gamma, a);
    if (best.empty() || v > top) {
      best.assign(1, a);
      top = v;
    } else if (v == top) {
      best.push_back(a);
    }
  }
  return best;
}

/// Choice rule that mixes uniformly over the best responses at each posterior,
/// so its support is exactly the argmax set.
inline ChoiceRule optimal_choice_rule(const UtilityMatrix& u, const InformationStructure& info) {
  ChoiceRule rule{Matrix(info.num_posteriors(), u.num_actions())};
  for (std::size_t b = 0; b < info.num_posteriors(); ++b) {
    auto best = best_responses(u, info.posteriors().row(b));
    Rational w(1, static_cast<long>(best.size()));
    for (auto a : best) rule.c(b, a) = w;
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Forward simulation

/// q(a | theta) = sum_b pi(gamma_b | theta) C(a | gamma_b).
inline Matrix simulate(const InformationStructure& info, const ChoiceRule& choice) {
  if (choice.num_posteriors() != info.num_posteriors())
    throw Error(ErrorKind::dimension_mismatch, "choice rule rows differ from posterior count");
  const std::size_t n = info.num_states(), m = choice.num_actions();
  Matrix q(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < info.num_posteriors(); ++b) {
      const Rational& w = info.pi()(i, b);
      if (w == 0) continue;
      for (std::size_t a = 0; a < m; ++a) q(i, a) += w * choice.c(b, a);
    }
  return q;
}

inline Matrix simulate(const UtilityMatrix& u, const InformationStructure& info, const ChoiceRule& choice) {
  if (u.num_states() != info.num_states() || u.num_actions() != choice.num_actions())
    throw Error(ErrorKind::dimension_mismatch, "utility dimensions differ from structure/choice rule");
  return simulate(info, choice);
}

/// Converts a signal-based structure mu(s | theta) (N x S) into its
/// distribution over posteriors. Zero-probability signals are dropped and
/// signals inducing the same posterior are merged, summing their pi columns.
inline InformationStructure posteriors_from_signals(const Matrix& signals, const Vector& prior) {
  const std::size_t n = prior.size();
  if (signals.rows() != n) throw Error(ErrorKind::dimension_mismatch, "signal matrix must have one row per state");
  for (std::size_t i = 0; i < n; ++i) detail::require_distribution(signals.row(i), "signal row " + std::to_string(i + 1));

  std::vector<Vector> posts;
  std::vector<Vector> pi_cols;
  for (std::size_t s = 0; s < signals.cols(); ++s) {
    Rational marginal = 0;
    for (std::size_t i = 0; i < n; ++i) marginal += prior[i] * signals(i, s);
    if (marginal == 0) continue;
    Vector gamma(n);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = prior[i] * signals(i, s) / marginal;
    auto it = std::find(posts.begin(), posts.end(), gamma);
    if (it == posts.end()) {
      posts.push_back(std::move(gamma));
      pi_cols.push_back(signals.col_vector(s));
    } else {
      auto& col = pi_cols[static_cast<std::size_t>(it - posts.begin())];
      for (std::size_t i = 0; i < n; ++i) col[i] += signals(i, s);
    }
  }
  if (posts.empty()) throw Error(ErrorKind::invalid_distribution, "every signal has zero probability");
  return InformationStructure(Matrix::from_rows(posts), Matrix::from_rows(pi_cols).transposed(), prior);
}

/// Exact check of the Bayes plausibility identity
/// gamma_b(theta) * nu(b) = prior(theta) * pi(gamma_b | theta) for each posterior.
inline std::vector<bool> bayes_plausibility_flags(const InformationStructure& info, const Vector& prior) {
  std::vector<bool> flags(info.num_posteriors(), true);
  for (std::size_t b = 0; b < info.num_posteriors(); ++b) {
    const Rational& nu = info.marginals()[b];
    for (std::size_t i = 0; i < info.num_states(); ++i)
      if (info.posteriors()(b, i) * nu != prior[i] * info.pi()(i, b)) flags[b] = false;
    if (nu == 0) flags[b] = false;
  }
  return flags;
}

// ---------------------------------------------------------------------------
// Single crossing

struct ScpViolation {
  std::size_t low_action;
  std::size_t high_action;
  std::size_t low_state;
  std::size_t high_state;

  friend bool operator==(const ScpViolation&, const ScpViolation&) = default;
  friend auto operator<=>(const ScpViolation&, const ScpViolation&) = default;
};

struct ScpReport {
  bool pass = true;
  std::vector<ScpViolation> violations;
};

/// Exhaustive scan over a'' > a', theta'' > theta'. The weak implication is
/// always checked; `strict` adds the strict-preference implication.
inline ScpReport check_single_crossing(const UtilityMatrix& u, bool strict = true) {
  ScpReport report;
  const std::size_t m = u.num_actions(), n = u.num_states();
  for (std::size_t lo = 0; lo < m; ++lo)
    for (std::size_t hi = lo + 1; hi < m; ++hi)
      for (std::size_t s1 = 0; s1 < n; ++s1)
        for (std::size_t s2 = s1 + 1; s2 < n; ++s2) {
          const Rational d1 = u(hi, s1) - u(lo, s1);
          const Rational d2 = u(hi, s2) - u(lo, s2);
          bool bad = (d1 >= 0 && d2 < 0) || (strict && d1 > 0 && d2 <= 0);
          if (bad) report.violations.push_back({lo, hi, s1, s2});
        }
  report.pass = report.violations.empty();
  return report;
}

}  // namespace mbeu
