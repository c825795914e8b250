#pragma once

// JSON files with rational strings ("p/q", integers or decimals) and the
// report serializers used by the command-line tool. Output is canonical:
// reduced fractions, insertion-ordered keys.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mbeu/feasibility.hpp"
#include "mbeu/lehmann.hpp"
#include "mbeu/rationalizer.hpp"
#include "mbeu/verifier.hpp"

namespace mbeu::io {

using Json = nlohmann::ordered_json;

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::parse, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::parse, path + ": cannot write file");
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Field readers. `where` is a JSON-pointer-like path for diagnostics.

inline Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorKind::schema, where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float())
    throw Error(ErrorKind::schema, where + ": write non-integer numbers as strings to keep them exact");
  throw Error(ErrorKind::schema, where + ": expected a rational string");
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorKind::schema, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::schema, where + ": missing key \"" + key + "\"");
  return *it;
}

inline Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::schema, where + ": expected an array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rational_from_json(j[i], where + "/" + std::to_string(i)));
  return v;
}

inline Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::schema, where + ": expected a nonempty array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_from_json(j[i], where + "/" + std::to_string(i)));
    if (rows.back().size() != rows.front().size())
      throw Error(ErrorKind::schema, where + "/" + std::to_string(i) + ": row length differs from row 0");
  }
  if (rows.front().empty()) throw Error(ErrorKind::schema, where + ": rows are empty");
  return Matrix::from_rows(rows);
}

inline std::vector<std::string> labels_from_json(const Json& obj, const char* key, const std::string& stem,
                                                 std::size_t n) {
  auto it = obj.find(key);
  if (it == obj.end()) return detail::default_labels(stem, n);
  if (!it->is_array() || it->size() != n)
    throw Error(ErrorKind::schema, std::string("/") + key + ": expected " + std::to_string(n) + " labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*it)[i].is_string())
      throw Error(ErrorKind::schema, std::string("/") + key + "/" + std::to_string(i) + ": expected a string");
    out.push_back((*it)[i].get<std::string>());
  }
  return out;
}

inline Vector prior_from_json(const Json& obj, std::size_t n) {
  auto it = obj.find("prior");
  if (it == obj.end()) {
    Vector p(n, Rational(1, static_cast<long>(n)));
    return p;
  }
  Vector p = vector_from_json(*it, "/prior");
  if (p.size() != n) throw Error(ErrorKind::schema, "/prior: expected " + std::to_string(n) + " entries");
  return p;
}

// Domain validation errors keep their kind; the message gains the file context.
template <class F>
auto with_context(const std::string& context, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), context + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Dataset

inline Json to_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_string(x));
  return j;
}

inline Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row_vector(i)));
  return j;
}

inline Dataset dataset_from_json(const Json& j) {
  const Matrix q = matrix_from_json(require(j, "q", ""), "/q");
  const auto states = labels_from_json(j, "states", "theta", q.rows());
  const auto actions = labels_from_json(j, "actions", "a", q.cols());
  return Dataset(states, actions, prior_from_json(j, q.rows()), q);
}

inline Json to_json(const Dataset& d) {
  Json j;
  j["states"] = d.states();
  j["actions"] = d.actions();
  j["prior"] = to_json(d.prior());
  j["q"] = to_json(d.q());
  return j;
}

inline Dataset load_dataset(const std::string& path) {
  const Json j = read_json_file(path);
  return with_context(path, [&] { return dataset_from_json(j); });
}

inline void save_dataset(const std::string& path, const Dataset& d) { write_json_file(path, to_json(d)); }

// ---------------------------------------------------------------------------
// Rationalization file

inline Json to_json(const Dataset& d, const Rationalization& r) {
  Json j;
  j["states"] = d.states();
  j["actions"] = d.actions();
  j["prior"] = to_json(d.prior());
  j["method"] = std::string(method_name(r.method));
  j["single_crossing"] = r.grade == ScpGrade::strict ? "strict" : "weak";
  j["utility"] = to_json(r.utility.values);
  j["posteriors"] = to_json(r.info.posteriors());
  j["pi"] = to_json(r.info.pi());
  j["choice"] = to_json(r.choice.c);
  return j;
}

/// Reads a rationalization for dataset d; prior and labels come from d.
inline Rationalization rationalization_from_json(const Json& j, const Dataset& d) {
  Rationalization r;
  r.method = RationalizationMethod::external;
  if (auto it = j.find("method"); it != j.end() && it->is_string()) {
    const auto s = it->get<std::string>();
    if (s == method_name(RationalizationMethod::binary_closed_form)) r.method = RationalizationMethod::binary_closed_form;
    if (s == method_name(RationalizationMethod::general_inductive)) r.method = RationalizationMethod::general_inductive;
  }
  if (auto it = j.find("single_crossing"); it != j.end() && *it == "weak") r.grade = ScpGrade::weak;
  r.utility.values = matrix_from_json(require(j, "utility", ""), "/utility");
  r.info = InformationStructure(matrix_from_json(require(j, "posteriors", ""), "/posteriors"),
                                matrix_from_json(require(j, "pi", ""), "/pi"), d.prior());
  r.choice.c = matrix_from_json(require(j, "choice", ""), "/choice");
  r.choice.validate();
  return r;
}

inline Rationalization load_rationalization(const std::string& path, const Dataset& d) {
  const Json j = read_json_file(path);
  return with_context(path, [&] { return rationalization_from_json(j, d); });
}

// ---------------------------------------------------------------------------
// Decision-maker file: utility, prior and either signals or posteriors + pi;
// the choice rule defaults to uniform over each argmax set.

struct DmFile {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  Vector prior;
  UtilityMatrix utility;
  InformationStructure info;
  ChoiceRule choice;
};

inline DmFile dm_from_json(const Json& j) {
  DmFile dm;
  dm.utility.values = matrix_from_json(require(j, "utility", ""), "/utility");
  const std::size_t n = dm.utility.num_states(), m = dm.utility.num_actions();
  dm.states = labels_from_json(j, "states", "theta", n);
  dm.actions = labels_from_json(j, "actions", "a", m);
  dm.prior = prior_from_json(j, n);
  for (std::size_t i = 0; i < n; ++i)
    if (dm.prior[i] <= 0) throw Error(ErrorKind::nonpositive_prior, "/prior/" + std::to_string(i) + ": must be positive");
  detail::require_distribution(dm.prior, "prior");
  if (j.contains("signals")) {
    dm.info = posteriors_from_signals(matrix_from_json(j["signals"], "/signals"), dm.prior);
  } else {
    dm.info = InformationStructure(matrix_from_json(require(j, "posteriors", ""), "/posteriors"),
                                   matrix_from_json(require(j, "pi", ""), "/pi"), dm.prior);
  }
  if (j.contains("choice")) {
    dm.choice.c = matrix_from_json(j["choice"], "/choice");
    dm.choice.validate();
  } else {
    dm.choice = optimal_choice_rule(dm.utility, dm.info);
  }
  return dm;
}

inline DmFile load_dm(const std::string& path) {
  const Json j = read_json_file(path);
  return with_context(path, [&] { return dm_from_json(j); });
}

inline Json to_json(const DmFile& dm) {
  Json j;
  j["states"] = dm.states;
  j["actions"] = dm.actions;
  j["prior"] = to_json(dm.prior);
  j["utility"] = to_json(dm.utility.values);
  j["posteriors"] = to_json(dm.info.posteriors());
  j["pi"] = to_json(dm.info.pi());
  j["choice"] = to_json(dm.choice.c);
  return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json label(const std::vector<std::string>& names, std::size_t i) {
  return i < names.size() ? Json(names[i]) : Json(i + 1);
}

inline Json to_json(const MlrReport& r, const std::vector<std::string>& rows, const std::vector<std::string>& cols) {
  auto quad = [&](const MlrQuadruple& x) {
    Json q;
    q["low_state"] = label(rows, x.low_row);
    q["high_state"] = label(rows, x.high_row);
    q["low_action"] = label(cols, x.low_col);
    q["high_action"] = label(cols, x.high_col);
    q["lhs"] = to_string(x.lhs);
    q["rhs"] = to_string(x.rhs);
    return q;
  };
  Json j;
  j["verdict"] = std::string(verdict_name(r.verdict));
  j["violations"] = Json::array();
  for (const auto& v : r.violations) j["violations"].push_back(quad(v));
  j["ties"] = r.ties.size();
  return j;
}

inline Json to_json(const ScpViolation& v, const Dataset& d) {
  Json j;
  j["low_action"] = label(d.actions(), v.low_action);
  j["high_action"] = label(d.actions(), v.high_action);
  j["low_state"] = label(d.states(), v.low_state);
  j["high_state"] = label(d.states(), v.high_state);
  return j;
}

inline Json to_json(const VerificationReport& r, const Dataset& d) {
  auto triple = [&](const OptimalityTriple& t) {
    Json x;
    x["posterior"] = t.posterior + 1;
    x["chosen"] = label(d.actions(), t.chosen);
    x["alternative"] = label(d.actions(), t.alternative);
    return x;
  };
  std::vector<std::string> posts;
  for (std::size_t b = 0; b < r.bayes_plausibility.flags.size(); ++b)
    posts.push_back("gamma" + std::to_string(b + 1));

  Json j;
  j["pass"] = r.pass();
  j["all_pass"] = r.all_pass();
  Json mono;
  mono["pass"] = r.monotonicity.pass();
  mono["utility_single_crossing"] = r.monotonicity.utility.pass;
  mono["scp_violations"] = Json::array();
  for (const auto& v : r.monotonicity.utility.violations) mono["scp_violations"].push_back(to_json(v, d));
  mono["information_mlr"] = to_json(r.monotonicity.info, d.states(), posts);
  j["monotonicity"] = mono;
  Json bayes;
  bayes["pass"] = r.bayes_plausibility.pass();
  bayes["flags"] = r.bayes_plausibility.flags;
  j["bayes_plausibility"] = bayes;
  Json cons;
  cons["pass"] = r.consistency.pass;
  cons["max_deviation"] = to_string(r.consistency.max_deviation);
  j["consistency"] = cons;
  Json opt;
  opt["pass"] = r.optimality.pass();
  opt["weak_pass"] = r.optimality.weak_pass();
  opt["violations"] = Json::array();
  for (const auto& t : r.optimality.violations) opt["violations"].push_back(triple(t));
  opt["strict_witness"] = r.optimality.strict_witness ? triple(*r.optimality.strict_witness) : Json(nullptr);
  j["optimality"] = opt;
  Json supp;
  supp["pass"] = r.support_condition.pass();
  supp["mismatched_posteriors"] = Json::array();
  for (auto b : r.support_condition.mismatched_posteriors) supp["mismatched_posteriors"].push_back(b + 1);
  j["support_condition"] = supp;
  return j;
}

inline Json to_json(const ScpScreenReport& r, const Dataset& d) {
  Json j;
  j["all_feasible"] = r.all_feasible();
  j["pairs"] = Json::array();
  for (const auto& p : r.pairs) {
    Json x;
    x["high_action"] = label(d.actions(), p.high);
    x["low_action"] = label(d.actions(), p.low);
    x["feasible"] = p.feasible;
    if (p.feasible) {
      x["crossing_state"] = label(d.states(), *p.crossing);
      x["witness"] = to_json(p.witness);
      x["top_nonnegative"] = p.top_nonnegative;
      x["bottom_nonpositive"] = p.bottom_nonpositive;
    } else {
      x["certificates"] = Json::array();
      for (const auto& c : p.certificates) x["certificates"].push_back(to_json(c));
    }
    j["pairs"].push_back(x);
  }
  return j;
}

inline Json to_json(const TransferMap& t) {
  Json j;
  j["monotone"] = t.monotone();
  j["points"] = Json::array();
  for (const auto& x : t.points) j["points"].push_back(to_string(x));
  j["h"] = Json::array();
  for (const auto& row : t.h) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    j["h"].push_back(r);
  }
  j["witnesses"] = Json::array();
  for (const auto& w : t.witnesses)
    j["witnesses"].push_back({{"point", to_string(w.point)}, {"low_state", w.low_state + 1}, {"high_state", w.high_state + 1}});
  return j;
}

inline Json to_json(const LehmannReport& r) {
  Json j;
  j["direction"] = std::string(direction_name(r.direction));
  j["first_over_second"] = to_json(r.forward);
  j["second_over_first"] = to_json(r.backward);
  return j;
}

inline Json to_json(const InformednessReport& r) {
  Json j;
  j["samples"] = r.samples;
  j["violations"] = r.violations;
  j["strictly_positive"] = r.positive;
  j["min_margin"] = r.min_margin ? Json(to_string(*r.min_margin)) : Json(nullptr);
  j["max_margin"] = r.max_margin ? Json(to_string(*r.max_margin)) : Json(nullptr);
  return j;
}

inline Json to_json(const FeasibilityOutcome& o) {
  Json j;
  j["status"] = std::string(status_name(o.status));
  if (o.status == FeasibilityStatus::infeasible)
    j["certificate"] = to_json(o.certificate);
  else {
    j["solution"] = to_json(o.solution);
    j["min_slack"] = to_string(o.min_slack);
  }
  return j;
}

}  // namespace mbeu::io
