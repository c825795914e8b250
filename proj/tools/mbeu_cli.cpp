// mbeu: command-line front end.
//
// Exit codes: 0 pass / constructed / first-higher, 1 fail / not
// rationalizable / not higher, 2 input error. Reports go to stdout as JSON,
// diagnostics to stderr.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mbeu/mbeu.hpp"

namespace {

using mbeu::io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_check_mlr(const std::string& file, bool strict) {
  const auto d = mbeu::io::load_dataset(file);
  const auto rep = mbeu::check_dataset_mlr(d);
  Json j = mbeu::io::to_json(rep, d.states(), d.actions());
  j["strict_required"] = strict;
  j["pass"] = rep.passes(strict);
  j["warnings"] = d.warnings();
  emit(j);
  return rep.passes(strict) ? kPass : kFail;
}

int cmd_rationalize(const std::string& file, const std::string& out) {
  const auto d = mbeu::io::load_dataset(file);
  try {
    const auto r = mbeu::rationalize(d);
    const auto rep = mbeu::verify(d, r);
    Json doc = mbeu::io::to_json(d, r);
    if (!out.empty()) {
      mbeu::io::write_json_file(out, doc);
      Json j;
      j["status"] = "constructed";
      j["method"] = std::string(mbeu::method_name(r.method));
      j["single_crossing"] = r.grade == mbeu::ScpGrade::strict ? "strict" : "weak";
      j["output"] = out;
      j["verification"] = mbeu::io::to_json(rep, d);
      emit(j);
    } else {
      emit(doc);
    }
    return rep.pass() ? kPass : kFail;
  } catch (const mbeu::NotMlrError& e) {
    Json j;
    j["status"] = "not-rationalizable";
    j["reason"] = e.what();
    j["mlr"] = mbeu::io::to_json(e.report(), d.states(), d.actions());
    emit(j);
    return kFail;
  }
}

int cmd_verify(const std::string& data_file, const std::string& rat_file) {
  const auto d = mbeu::io::load_dataset(data_file);
  const auto r = mbeu::io::load_rationalization(rat_file, d);
  const auto rep = mbeu::verify(d, r);
  emit(mbeu::io::to_json(rep, d));
  return rep.pass() ? kPass : kFail;
}

int cmd_simulate(const std::string& file) {
  const auto dm = mbeu::io::load_dm(file);
  const mbeu::Dataset d(dm.states, dm.actions, dm.prior, mbeu::simulate(dm.utility, dm.info, dm.choice));
  Json j = mbeu::io::to_json(d);
  j["posteriors"] = mbeu::io::to_json(dm.info.posteriors());
  j["marginals"] = mbeu::io::to_json(dm.info.marginals());
  emit(j);
  return kPass;
}

int cmd_compare(const std::string& f1, const std::string& f2, std::size_t samples, std::uint64_t seed) {
  const auto d1 = mbeu::io::load_dataset(f1);
  const auto d2 = mbeu::io::load_dataset(f2);
  const auto rep = mbeu::lehmann_compare(d1, d2);
  Json j = mbeu::io::to_json(rep);
  const bool higher = rep.direction == mbeu::Direction::first_higher || rep.direction == mbeu::Direction::both;
  bool sampled_ok = true;
  if (samples > 0 && higher) {
    const auto inf = mbeu::revealed_informedness_test(d1, d2, samples, seed);
    j["ex_ante"] = mbeu::io::to_json(inf);
    sampled_ok = inf.violations == 0;
  }
  emit(j);
  return higher && sampled_ok ? kPass : kFail;
}

int cmd_gen(const mbeu::GeneratorConfig& cfg, bool emit_dm, const std::string& out) {
  Json j;
  if (emit_dm) {
    if (cfg.kind != mbeu::GeneratorKind::mbeu_dm) throw mbeu::Error(mbeu::ErrorKind::precondition, "--dm needs --kind mbeu-dm");
    const auto dm = mbeu::gen_mbeu_dm(cfg);
    mbeu::io::DmFile file{mbeu::detail::default_labels("theta", cfg.n_states),
                          mbeu::detail::default_labels("a", cfg.m_actions),
                          dm.prior,
                          dm.utility,
                          dm.info,
                          dm.choice};
    j = mbeu::io::to_json(file);
  } else {
    j = mbeu::io::to_json(mbeu::gen_mlr_dataset(cfg));
  }
  if (out.empty())
    emit(j);
  else
    mbeu::io::write_json_file(out, j);
  return kPass;
}

int cmd_scp_screen(const std::string& file) {
  const auto d = mbeu::io::load_dataset(file);
  const auto rep = mbeu::scp_alone_feasible(d);
  emit(mbeu::io::to_json(rep, d));
  return rep.all_feasible() ? kPass : kFail;
}

bool is_input_error(mbeu::ErrorKind k) {
  using K = mbeu::ErrorKind;
  switch (k) {
    case K::dimension_mismatch:
    case K::invalid_distribution:
    case K::nonpositive_prior:
    case K::negative_entry:
    case K::parse:
    case K::schema:
    case K::precondition: return true;
    default: return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone Bayesian expected utility: MLR checks, rationalization and information comparison"};
  app.require_subcommand(1);

  std::string file, file2, out;
  bool strict = false;

  auto* check = app.add_subcommand("check-mlr", "Check whether a dataset is MLR-ordered");
  check->add_option("file", file, "Dataset JSON")->required();
  check->add_flag("--strict", strict, "Require strict MLR (no ties)");

  auto* rat = app.add_subcommand("rationalize", "Construct a rationalization of an MLR-ordered dataset");
  rat->add_option("file", file, "Dataset JSON")->required();
  rat->add_option("--out", out, "Write the rationalization here and print a summary");

  auto* ver = app.add_subcommand("verify", "Audit a rationalization file against a dataset");
  ver->add_option("file", file, "Dataset JSON")->required();
  ver->add_option("rationalization", file2, "Rationalization JSON")->required();

  auto* sim = app.add_subcommand("simulate", "Simulate the choice data of a decision maker");
  sim->add_option("file", file, "Decision-maker JSON")->required();

  std::size_t samples = 0;
  std::uint64_t seed = 1;
  auto* cmp = app.add_subcommand("compare", "Lehmann comparison of two datasets");
  cmp->add_option("file1", file, "First dataset")->required();
  cmp->add_option("file2", file2, "Second dataset")->required();
  cmp->add_option("--samples", samples, "Sampled single crossing utilities for the ex-ante check");
  cmp->add_option("--seed", seed, "Seed for the sampled check");

  mbeu::GeneratorConfig cfg;
  std::string kind = "mlr-strict";
  bool emit_dm = false;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--states", cfg.n_states, "Number of states")->check(CLI::PositiveNumber);
  gen->add_option("--actions", cfg.m_actions, "Number of actions")->check(CLI::PositiveNumber);
  gen->add_option("--seed", cfg.seed, "Seed")->required();
  gen->add_option("--bound", cfg.denominator_bound, "Bound on drawn integers")->check(CLI::Range(2L, 1000000L));
  gen->add_option("--kind", kind, "mlr-strict | mlr-weak | arbitrary | mbeu-dm");
  gen->add_flag("--dm", emit_dm, "Emit the decision maker instead of its data (mbeu-dm only)");
  gen->add_option("--out", out, "Output file");

  auto* scp = app.add_subcommand("scp-screen", "Check single crossing alone, pair by pair");
  scp->add_option("file", file, "Dataset JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*check) return cmd_check_mlr(file, strict);
    if (*rat) return cmd_rationalize(file, out);
    if (*ver) return cmd_verify(file, file2);
    if (*sim) return cmd_simulate(file);
    if (*cmp) return cmd_compare(file, file2, samples, seed);
    if (*gen) {
      cfg.kind = mbeu::parse_kind(kind);
      return cmd_gen(cfg, emit_dm, out);
    }
    if (*scp) return cmd_scp_screen(file);
  } catch (const mbeu::NotMlrError& e) {
    std::cerr << "error: " << e.what() << '\n';
    Json j;
    j["error"] = "not-mlr";
    j["message"] = e.what();
    emit(j);
    return kFail;
  } catch (const mbeu::Error& e) {
    std::cerr << "error [" << mbeu::error_kind_name(e.kind()) << "]: " << e.what() << '\n';
    return is_input_error(e.kind()) ? kInputError : kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
