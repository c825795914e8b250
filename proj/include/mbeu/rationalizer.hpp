#pragma once

// Builds a rationalization <u, I, C> of MLR-ordered data: a strictly single
// crossing utility, an MLR-ordered information structure and a choice rule
// that reproduce q exactly.
//
// Utility differences A^theta_{k,k-1} = u(a_k, theta) - u(a_{k-1}, theta) are
// solved pair by pair from homogeneous systems (optimality rows, sign rows
// fixing the crossing state, and signed-ratio rows that keep every aggregated
// difference A_{k,l} single crossing). Non-consecutive differences are sums
// of consecutive ones.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbeu/feasibility.hpp"
#include "mbeu/mlr.hpp"
#include "mbeu/model.hpp"

namespace mbeu {

/// Raised when the data is not MLR-ordered; carries the failing report.
class NotMlrError : public Error {
 public:
  explicit NotMlrError(MlrReport report, const std::string& what = "data is not MLR-ordered")
      : Error(ErrorKind::not_mlr, what), report_(std::move(report)) {}
  const MlrReport& report() const noexcept { return report_; }

 private:
  MlrReport report_;
};

/// All utility differences A^theta_{k,l}, l < k, plus the crossing state used
/// for every consecutive pair. Indices are 0-based.
struct DifferenceTable {
  std::size_t num_states = 0;
  std::size_t num_actions = 0;
  std::vector<std::vector<Vector>> diffs;  // diffs[k][l], l < k
  std::vector<std::size_t> crossing;       // crossing[k] for pair (k, k-1); crossing[0] = n_{a_1}
  ScpGrade grade = ScpGrade::strict;

  DifferenceTable() = default;
  DifferenceTable(std::size_t n, std::size_t m) : num_states(n), num_actions(m), diffs(m), crossing(m, 0) {
    for (std::size_t k = 0; k < m; ++k) diffs[k].assign(k, Vector(n));
  }

  const Vector& diff(std::size_t k, std::size_t l) const { return diffs.at(k).at(l); }

  /// Smallest state from which A_{k,l} stays nonnegative; nullopt if the last
  /// entry is negative.
  std::optional<std::size_t> crossing_general(std::size_t k, std::size_t l) const {
    const Vector& d = diff(k, l);
    std::size_t c = num_states;
    while (c > 0 && d[c - 1] >= 0) --c;
    if (c == num_states) return std::nullopt;
    return c;
  }
};

// ---------------------------------------------------------------------------

inline std::vector<std::size_t> argmax_states(const Dataset& d, std::size_t action) {
  if (action >= d.num_actions()) throw Error(ErrorKind::dimension_mismatch, "action index out of range");
  std::vector<std::size_t> best;
  for (std::size_t i = 0; i < d.num_states(); ++i) {
    if (best.empty() || d.prob(i, action) > d.prob(best.front(), action))
      best.assign(1, i);
    else if (d.prob(i, action) == d.prob(best.front(), action))
      best.push_back(i);
  }
  return best;
}

/// Weakly increasing sequence n_k with n_k in argmax_states(a_k), avoiding
/// ties with the previous entry where possible.
inline std::vector<std::size_t> crossing_sequence(const Dataset& d) {
  auto report = check_dataset_mlr(d);
  if (report.verdict == MlrVerdict::none) throw NotMlrError(std::move(report));
  std::vector<std::size_t> seq(d.num_actions());
  seq[0] = argmax_states(d, 0).front();
  for (std::size_t k = 1; k < d.num_actions(); ++k) {
    const auto cand = argmax_states(d, k);
    auto it = std::upper_bound(cand.begin(), cand.end(), seq[k - 1]);
    seq[k] = it != cand.end() ? *it : seq[k - 1];
  }
  return seq;
}

namespace detail {

inline Vector weighted_column(const Dataset& d, std::size_t action) {
  Vector v(d.num_states());
  for (std::size_t i = 0; i < d.num_states(); ++i) v[i] = d.prior()[i] * d.prob(i, action);
  return v;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Nonzero columns with all cross products equal, i.e. identical posteriors.
inline bool proportional_columns(const Dataset& d, std::size_t a, std::size_t b) {
  const auto ca = d.q().col_vector(a), cb = d.q().col_vector(b);
  if (is_zero(ca) || is_zero(cb)) return false;
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = i + 1; j < ca.size(); ++j)
      if (ca[i] * cb[j] != ca[j] * cb[i]) return false;
  return true;
}

}  // namespace detail

/// Rows kappa^l(theta', theta'') = 1_{theta''} A^{theta'}_{k-1,l} - 1_{theta'} A^{theta''}_{k-1,l}
/// for every l with at least two states below the crossing where A_{k-1,l} > 0.
inline std::vector<Vector> signed_ratio_rows(std::size_t k, const DifferenceTable& prev, std::size_t crossing) {
  std::vector<Vector> rows;
  if (k < 2) return rows;
  const std::size_t n = prev.num_states;
  for (std::size_t l = 0; l + 1 < k; ++l) {
    const Vector& a = prev.diff(k - 1, l);
    std::vector<std::size_t> positive;
    for (std::size_t i = 0; i < crossing && i < n; ++i)
      if (a[i] > 0) positive.push_back(i);
    if (positive.size() < 2) continue;
    for (std::size_t x = 0; x < positive.size(); ++x)
      for (std::size_t y = x + 1; y < positive.size(); ++y) {
        const std::size_t lo = positive[x], hi = positive[y];
        Vector row(n);
        row[hi] = a[lo];
        row[lo] = -a[hi];
        rows.push_back(std::move(row));
      }
  }
  return rows;
}

/// System for the consecutive pair (a_k, a_{k-1}) with the given crossing
/// state. Optimality rows are prior-weighted so the solution satisfies the
/// no-improving-switch inequalities under the revealed posteriors.
inline InequalitySystem build_pair_system(const Dataset& d, std::size_t k, const DifferenceTable& prev,
                                          std::size_t crossing) {
  const std::size_t n = d.num_states();
  if (k == 0 || k >= d.num_actions()) throw Error(ErrorKind::dimension_mismatch, "pair index out of range");
  if (crossing >= n) throw Error(ErrorKind::dimension_mismatch, "crossing state out of range");
  std::vector<Vector> rows;
  std::vector<RowLabel> labels;
  auto hi = detail::weighted_column(d, k);
  if (!detail::is_zero(hi)) {
    rows.push_back(std::move(hi));
    labels.push_back({RowKind::data, d.actions()[k] + " optimal against " + d.actions()[k - 1]});
  }
  auto lo = detail::weighted_column(d, k - 1);
  if (!detail::is_zero(lo)) {
    for (auto& v : lo) v = -v;
    rows.push_back(std::move(lo));
    labels.push_back({RowKind::data, d.actions()[k - 1] + " optimal against " + d.actions()[k]});
  }
  InequalitySystem sys;
  for (std::size_t j = 0; j < n; ++j) {
    Vector row(n);
    row[j] = j < crossing ? -1 : 1;
    rows.push_back(std::move(row));
    labels.push_back({RowKind::sign, (j < crossing ? "nonpositive at " : "nonnegative at ") + d.states()[j]});
    if (j >= crossing) sys.nonneg_coords.push_back(j);
  }
  for (auto& row : signed_ratio_rows(k, prev, crossing)) {
    rows.push_back(std::move(row));
    labels.push_back({RowKind::signed_ratio, "signed ratio"});
  }
  sys.a = Matrix::from_rows(rows);
  sys.row_labels = std::move(labels);
  return sys;
}

/// Turns a weak solution into one with every coordinate nonzero and every
/// optimality row strictly positive, by pushing zero coordinates off zero in
/// the direction their sign row allows.
inline Vector strictify(const InequalitySystem& sys, const FeasibilityOutcome& outcome) {
  if (outcome.status == FeasibilityStatus::infeasible)
    throw Error(ErrorKind::precondition, "strictify needs a solution");
  const Vector& y = outcome.solution;
  const Vector slack = multiply(sys.a, y);
  const auto is_data = [&](std::size_t i) {
    return i < sys.row_labels.size() && sys.row_labels[i].kind == RowKind::data;
  };
  std::optional<Rational> min_positive;
  for (std::size_t i = 0; i < slack.size(); ++i) {
    if (is_data(i) && slack[i] == 0)
      throw Error(ErrorKind::cannot_strictify, "optimality row '" + sys.row_labels[i].tag + "' has zero slack");
    if (slack[i] > 0 && (!min_positive || slack[i] < *min_positive)) min_positive = slack[i];
  }
  std::vector<std::size_t> zeros;
  for (std::size_t j = 0; j < y.size(); ++j)
    if (y[j] == 0) zeros.push_back(j);
  if (zeros.empty()) return y;
  if (!min_positive) throw Error(ErrorKind::cannot_strictify, "no positive slack to spend");

  Rational eps = *min_positive / 2;
  for (int attempt = 0; attempt < 32; ++attempt, eps /= 2) {
    Vector z = y;
    for (auto j : zeros) {
      const bool up = std::find(sys.nonneg_coords.begin(), sys.nonneg_coords.end(), j) != sys.nonneg_coords.end();
      z[j] = up ? eps : Rational(-eps);
    }
    const Vector s = multiply(sys.a, z);
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = is_data(i) ? s[i] > 0 : s[i] >= 0;
    if (ok) return z;
  }
  throw Error(ErrorKind::cannot_strictify, "perturbed solution fails the system");
}

inline UtilityMatrix recover_utility(const DifferenceTable& table) {
  UtilityMatrix u{Matrix(table.num_actions, table.num_states)};
  for (std::size_t k = 1; k < table.num_actions; ++k)
    for (std::size_t i = 0; i < table.num_states; ++i) u(k, i) = u(k - 1, i) + table.diff(k, k - 1)[i];
  return u;
}

/// Signals are the actions themselves: posterior gamma^a is the Bayes update
/// of the prior on "a was chosen". Actions sharing a posterior form one block
/// and the choice rule splits that block in proportion to action marginals.
inline std::pair<InformationStructure, ChoiceRule> build_info_and_choice(const Dataset& d) {
  const std::size_t n = d.num_states(), m = d.num_actions();
  const Vector nu = d.action_marginals();
  std::vector<Vector> posts;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t a = 0; a < m; ++a) {
    if (nu[a] == 0) continue;
    Vector gamma = detail::weighted_column(d, a);
    for (auto& g : gamma) g /= nu[a];
    auto it = std::find(posts.begin(), posts.end(), gamma);
    if (it == posts.end()) {
      posts.push_back(std::move(gamma));
      blocks.push_back({a});
    } else {
      blocks[static_cast<std::size_t>(it - posts.begin())].push_back(a);
    }
  }
  const std::size_t p = posts.size();
  Matrix pi(n, p);
  ChoiceRule choice{Matrix(p, m)};
  for (std::size_t b = 0; b < p; ++b) {
    Rational block_mass = 0;
    for (auto a : blocks[b]) {
      block_mass += nu[a];
      for (std::size_t i = 0; i < n; ++i) pi(i, b) += d.prob(i, a);
    }
    for (auto a : blocks[b]) choice.c(b, a) = nu[a] / block_mass;
  }
  return {InformationStructure(Matrix::from_rows(posts), std::move(pi), d.prior()), std::move(choice)};
}

/// Inductive construction of all utility differences.
inline DifferenceTable build_differences(const Dataset& d) {
  const std::size_t n = d.num_states(), m = d.num_actions();
  const auto seq = crossing_sequence(d);
  DifferenceTable table(n, m);
  table.crossing[0] = seq[0];
  // At least one state must sit below the crossing, otherwise the sign rows
  // and the lower optimality row force A_{k,k-1} = 0 on the support.
  const std::size_t floor = n >= 2 ? 1 : 0;
  std::size_t prev_crossing = floor;

  for (std::size_t k = 1; k < m; ++k) {
    const std::size_t preferred = std::max({seq[k], prev_crossing, floor});
    Vector step;
    std::size_t used = preferred;

    if (detail::proportional_columns(d, k, k - 1)) {
      step.assign(n, Rational(0));
    } else {
      std::optional<std::pair<Vector, std::size_t>> weak;
      std::string last_error = "every crossing state yields an infeasible system";
      for (std::size_t c = preferred; c < n && step.empty(); ++c) {
        const auto sys = build_pair_system(d, k, table, c);
        const auto out = solve(sys);
        if (out.status == FeasibilityStatus::infeasible) continue;
        try {
          step = strictify(sys, out);
          used = c;
        } catch (const Error& e) {
          last_error = e.what();
          if (!weak) weak.emplace(out.solution, c);
        }
      }
      if (step.empty()) {
        if (!weak)
          throw Error(ErrorKind::construction_failed,
                      "pair (" + d.actions()[k] + ", " + d.actions()[k - 1] + "): " + last_error);
        step = std::move(weak->first);
        used = weak->second;
        table.grade = ScpGrade::weak;
      }
    }

    table.crossing[k] = used;
    prev_crossing = std::max(prev_crossing, used);
    table.diffs[k][k - 1] = step;
    for (std::size_t l = 0; l + 1 < k; ++l) {
      Vector agg(n);
      for (std::size_t i = 0; i < n; ++i) agg[i] = step[i] + table.diffs[k - 1][l][i];
      table.diffs[k][l] = std::move(agg);
    }
  }
  return table;
}

/// Closed form for two states and two actions. Requires q(a1|theta1) > q(a1|theta2).
inline Rationalization rationalize_binary(const Dataset& d) {
  if (d.num_states() != 2 || d.num_actions() != 2)
    throw Error(ErrorKind::precondition, "binary construction needs exactly two states and two actions");
  const Rational& q11 = d.prob(0, 0);
  const Rational& q12 = d.prob(1, 0);
  if (!(q11 > q12)) throw NotMlrError(check_dataset_mlr(d), "binary data needs q(a1|theta1) > q(a1|theta2)");
  const Rational& mu = d.prior()[0];
  const Rational lower = mu * (1 - q11) / ((1 - mu) * (1 - q12));
  // Upper endpoint is +infinity when q12 = 0; then step one unit past the lower one.
  const Rational ratio = q12 == 0 ? Rational(lower + 1) : Rational((lower + mu * q11 / ((1 - mu) * q12)) / 2);

  UtilityMatrix u{Matrix{{1, 0}, {0, ratio}}};
  const Rational m1 = mu * q11 + (1 - mu) * q12;
  const Rational m2 = mu * (1 - q11) + (1 - mu) * (1 - q12);
  Matrix posts{{mu * q11 / m1, (1 - mu) * q12 / m1}, {mu * (1 - q11) / m2, (1 - mu) * (1 - q12) / m2}};
  Matrix pi{{q11, 1 - q11}, {q12, 1 - q12}};
  return Rationalization{std::move(u), InformationStructure(std::move(posts), std::move(pi), d.prior()),
                         ChoiceRule::dirac({0, 1}, 2), RationalizationMethod::binary_closed_form, ScpGrade::strict};
}

/// Full construction. Dispatches to the closed form for strict 2x2 data.
/// When `table` is given it receives the differences behind the utility.
inline Rationalization rationalize(const Dataset& d, DifferenceTable* table = nullptr) {
  auto report = check_dataset_mlr(d);
  if (report.verdict == MlrVerdict::none) throw NotMlrError(std::move(report));
  if (d.num_states() == 2 && d.num_actions() == 2 && d.prob(0, 0) > d.prob(1, 0)) {
    auto r = rationalize_binary(d);
    if (table) {
      *table = DifferenceTable(2, 2);
      table->diffs[1][0] = Vector{r.utility(1, 0) - r.utility(0, 0), r.utility(1, 1) - r.utility(0, 1)};
      table->crossing = {0, 1};
    }
    return r;
  }

  auto diffs = build_differences(d);
  auto [info, choice] = build_info_and_choice(d);
  Rationalization r{recover_utility(diffs), std::move(info), std::move(choice),
                    RationalizationMethod::general_inductive, diffs.grade};
  if (table) *table = std::move(diffs);
  return r;
}

// ---------------------------------------------------------------------------
// Screen for single crossing alone, one action pair at a time.

struct PairScreen {
  std::size_t high = 0;
  std::size_t low = 0;
  bool feasible = false;
  std::optional<std::size_t> crossing;  // first crossing state admitting a witness
  Vector witness;                       // A^theta_{high,low}
  std::vector<Vector> certificates;     // one per crossing when infeasible
  bool top_nonnegative = false;         // witness has A^{theta_N} >= 0
  bool bottom_nonpositive = false;      // witness has A^{theta_1} <= 0
};

struct ScpScreenReport {
  std::vector<PairScreen> pairs;
  bool all_feasible() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const PairScreen& p) { return p.feasible; });
  }
};

/// Optimality of a_k against a_l and of a_l against a_k, plus sign rows for
/// a difference A = u(a_k,.) - u(a_l,.) crossing at state c.
inline InequalitySystem scp_pair_system(const Dataset& d, std::size_t k, std::size_t l, std::size_t c) {
  const std::size_t n = d.num_states();
  if (k >= d.num_actions() || l >= d.num_actions() || c >= n)
    throw Error(ErrorKind::dimension_mismatch, "pair or crossing index out of range");
  InequalitySystem sys;
  std::vector<Vector> rows;
  rows.push_back(detail::weighted_column(d, k));
  sys.row_labels.push_back({RowKind::data, d.actions()[k] + " optimal against " + d.actions()[l]});
  auto lo = detail::weighted_column(d, l);
  for (auto& v : lo) v = -v;
  rows.push_back(std::move(lo));
  sys.row_labels.push_back({RowKind::data, d.actions()[l] + " optimal against " + d.actions()[k]});
  for (std::size_t j = 0; j < n; ++j) {
    Vector row(n);
    row[j] = j < c ? -1 : 1;
    rows.push_back(std::move(row));
    sys.row_labels.push_back({RowKind::sign, (j < c ? "nonpositive at " : "nonnegative at ") + d.states()[j]});
    if (j >= c) sys.nonneg_coords.push_back(j);
  }
  sys.a = Matrix::from_rows(rows);
  return sys;
}

/// For each pair k > l, looks for a nonzero single crossing difference A that keeps
/// both actions optimal on their own revealed posteriors, trying every
/// crossing state in turn. Certificates are kept per crossing when none works.
/// Pairs with proportional columns get the zero witness.
inline ScpScreenReport scp_alone_feasible(const Dataset& d) {
  ScpScreenReport report;
  const std::size_t n = d.num_states(), m = d.num_actions();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t l = 0; l < k; ++l) {
      PairScreen pair;
      pair.high = k;
      pair.low = l;
      if (detail::proportional_columns(d, k, l)) {
        // Same revealed posterior: only indifference keeps both optimal.
        pair.feasible = true;
        pair.crossing = 0;
        pair.witness.assign(n, Rational(0));
        pair.top_nonnegative = pair.bottom_nonpositive = true;
        report.pairs.push_back(std::move(pair));
        continue;
      }
      for (std::size_t c = 0; c < n; ++c) {
        auto out = solve(scp_pair_system(d, k, l, c));
        if (out.status == FeasibilityStatus::infeasible) {
          pair.certificates.push_back(std::move(out.certificate));
          continue;
        }
        pair.feasible = true;
        pair.crossing = c;
        pair.witness = std::move(out.solution);
        pair.certificates.clear();
        break;
      }
      if (pair.feasible) {
        pair.top_nonnegative = pair.witness.back() >= 0;
        pair.bottom_nonpositive = pair.witness.front() <= 0;
      }
      report.pairs.push_back(std::move(pair));
    }
  return report;
}

/// Two-state, two-action no-improving-switch system in D = u(a2,.) - u(a1,.)
/// with single crossing reversed: D(theta1) >= 0 and D(theta2) <= 0. For
/// strictly MLR data only D = 0 solves it.
inline InequalitySystem binary_anti_scp_system(const Dataset& d) {
  if (d.num_states() != 2 || d.num_actions() != 2)
    throw Error(ErrorKind::precondition, "binary system needs two states and two actions");
  auto low = detail::weighted_column(d, 0);
  for (auto& v : low) v = -v;
  InequalitySystem sys;
  sys.a = Matrix::from_rows({low, detail::weighted_column(d, 1), Vector{1, 0}, Vector{0, -1}});
  sys.row_labels = {{RowKind::data, "a1 optimal"},
                    {RowKind::data, "a2 optimal"},
                    {RowKind::sign, "u(a1,theta1) <= u(a2,theta1)"},
                    {RowKind::sign, "u(a1,theta2) >= u(a2,theta2)"}};
  return sys;
}

}  // namespace mbeu
