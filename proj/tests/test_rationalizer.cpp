#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "property_checks.hpp"

using namespace mbeu;
using fx::r;
using Idx = std::vector<std::size_t>;

TEST(ArgmaxStates, Examples) {
  EXPECT_EQ(argmax_states(fx::mlr_data(), 1), Idx{1});
  EXPECT_EQ(argmax_states(fx::example_data(), 0), Idx{0});
  const Dataset flat(Matrix{{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}});
  EXPECT_EQ(argmax_states(flat, 0), (Idx{0, 1, 2}));
}

TEST(CrossingSequence, Examples) {
  EXPECT_EQ(crossing_sequence(fx::mlr_data()), (Idx{0, 1, 2}));
  EXPECT_EQ(crossing_sequence(Dataset(Matrix{{1}, {1}})), Idx{0});
  // Both of the first two columns peak at the first state.
  const Dataset tied(Matrix{{r(2, 5), r(2, 5), r(1, 5)}, {r(3, 10), r(3, 10), r(2, 5)}});
  EXPECT_EQ(crossing_sequence(tied), (Idx{0, 0, 1}));
  EXPECT_THROW(crossing_sequence(fx::example_data()), NotMlrError);
}

TEST(CrossingSequence, StaysIncreasingWhenArgmaxSetsRepeat) {
  // Three columns peak on {theta1, theta2}; a rule that skips only the
  // previous entry would step back down at the third.
  const Dataset d(Matrix{{r(1, 4), r(1, 4), r(1, 4), r(1, 4)},
                         {r(1, 4), r(1, 4), r(1, 4), r(1, 4)},
                         {r(1, 8), r(1, 8), r(1, 8), r(5, 8)}});
  ASSERT_NE(check_dataset_mlr(d).verdict, MlrVerdict::none);
  const auto seq = crossing_sequence(d);
  EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
  EXPECT_EQ(seq, (Idx{0, 1, 1, 2}));
}

TEST(PairSystem, SecondPairHasNoRatioRows) {
  const auto d = fx::mlr_data();
  const auto sys = build_pair_system(d, 1, DifferenceTable(3, 3), 1);
  ASSERT_EQ(sys.num_rows(), 5u);
  EXPECT_EQ(sys.a.row_vector(2), (Vector{-1, 0, 0}));
  EXPECT_EQ(sys.a.row_vector(3), (Vector{0, 1, 0}));
  EXPECT_EQ(sys.a.row_vector(4), (Vector{0, 0, 1}));
  EXPECT_EQ(sys.nonneg_coords, (Idx{1, 2}));
  EXPECT_EQ(sys.row_labels[0].kind, RowKind::data);
}

TEST(PairSystem, SignedRatioRows) {
  DifferenceTable prev(3, 3);
  prev.diffs[1][0] = Vector{1, 2, 3};
  const auto rows = signed_ratio_rows(2, prev, 2);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (Vector{-2, 1, 0}));

  const auto sys = build_pair_system(fx::mlr_data(), 2, prev, 2);
  EXPECT_EQ(sys.num_rows(), 6u);
  EXPECT_EQ(sys.row_labels.back().kind, RowKind::signed_ratio);

  prev.diffs[1][0] = Vector{1, -2, 3};
  EXPECT_TRUE(signed_ratio_rows(2, prev, 2).empty());
  prev.diffs[1][0] = Vector{-1, -2, 0};
  EXPECT_TRUE(signed_ratio_rows(2, prev, 2).empty());
  EXPECT_TRUE(signed_ratio_rows(1, prev, 2).empty());
}

TEST(Strictify, Examples) {
  InequalitySystem sys;
  sys.a = Matrix{{1, 1}, {1, 2}, {1, 0}, {0, 1}};
  sys.row_labels = {{RowKind::data, "x"}, {RowKind::data, "y"}, {RowKind::sign, ""}, {RowKind::sign, ""}};
  sys.nonneg_coords = {0, 1};
  FeasibilityOutcome weak{FeasibilityStatus::weak, Vector{0, 1}, 0, {}};
  EXPECT_EQ(strictify(sys, weak), (Vector{r(1, 2), 1}));

  FeasibilityOutcome strict{FeasibilityStatus::strict, Vector{1, 1}, 1, {}};
  EXPECT_EQ(strictify(sys, strict), (Vector{1, 1}));

  InequalitySystem tight = sys;
  tight.a = Matrix{{0, 1}, {1, 2}, {1, 0}, {0, 1}};
  FeasibilityOutcome zero{FeasibilityStatus::weak, Vector{1, 0}, 0, {}};
  try {
    strictify(tight, zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cannot_strictify);
  }
}

TEST(RecoverUtility, Examples) {
  EXPECT_EQ(recover_utility(DifferenceTable(3, 1)).values, Matrix(1, 3));
  DifferenceTable t(2, 2);
  t.diffs[1][0] = Vector{-1, 1};
  EXPECT_EQ(recover_utility(t).values, (Matrix{{0, 0}, {-1, 1}}));
}

TEST(InfoAndChoice, BinaryExample) {
  auto [info, choice] = build_info_and_choice(fx::binary(r(3, 4), r(1, 4)));
  EXPECT_EQ(info.posteriors(), (Matrix{{r(3, 4), r(1, 4)}, {r(1, 4), r(3, 4)}}));
  EXPECT_EQ(info.pi(), (Matrix{{r(3, 4), r(1, 4)}, {r(1, 4), r(3, 4)}}));
  EXPECT_EQ(choice.c, fx::identity(2));
}

TEST(InfoAndChoice, IdenticalColumnsMerge) {
  const Dataset d(Vector{r(1, 2), r(1, 2)}, Matrix{{r(1, 4), r(1, 4), r(1, 2)}, {r(1, 8), r(1, 8), r(3, 4)}});
  auto [info, choice] = build_info_and_choice(d);
  ASSERT_EQ(info.num_posteriors(), 2u);
  EXPECT_EQ(choice.c.row_vector(0), (Vector{r(1, 2), r(1, 2), 0}));
  EXPECT_EQ(simulate(info, choice), d.q());
}

TEST(InfoAndChoice, ReproducesExampleData) {
  const auto d = fx::example_data();
  auto [info, choice] = build_info_and_choice(d);
  EXPECT_EQ(info.num_posteriors(), 3u);
  EXPECT_EQ(info.posteriors().row_vector(0), (Vector{r(8, 13), r(3, 13), r(2, 13)}));
  EXPECT_EQ(simulate(info, choice), d.q());
}

TEST(Rationalize, RejectsExampleData) {
  try {
    rationalize(fx::example_data());
    FAIL();
  } catch (const NotMlrError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_mlr);
    EXPECT_FALSE(e.report().violations.empty());
  }
}

TEST(Rationalize, MlrExamplePassesVerification) {
  const auto d = fx::mlr_data();
  const auto rat = rationalize(d);
  EXPECT_EQ(rat.method, RationalizationMethod::general_inductive);
  EXPECT_EQ(rat.grade, ScpGrade::strict);
  EXPECT_TRUE(check_single_crossing(rat.utility, true).pass);
  const auto rep = verify(d, rat);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_EQ(props::check_difference_table(d, build_differences(d)), "");
}

TEST(Rationalize, BinaryClosedForm) {
  const auto rat = rationalize(fx::binary(r(3, 4), r(1, 4)));
  EXPECT_EQ(rat.method, RationalizationMethod::binary_closed_form);
  const auto& u = rat.utility;
  const Rational ratio = (u(1, 1) - u(0, 1)) / (u(0, 0) - u(1, 0));
  EXPECT_GT(ratio, r(1, 3));
  EXPECT_LT(ratio, 3);
  EXPECT_EQ(ratio, r(5, 3));
  EXPECT_TRUE(verify(fx::binary(r(3, 4), r(1, 4)), rat).all_pass());

  EXPECT_THROW(rationalize_binary(fx::binary(r(1, 2), r(1, 2))), NotMlrError);
  EXPECT_THROW(rationalize_binary(fx::binary(r(1, 4), r(3, 4))), NotMlrError);

  const auto revealing = rationalize_binary(fx::binary(1, 0));
  EXPECT_EQ(revealing.utility.values, (Matrix{{1, 0}, {0, 1}}));
  EXPECT_TRUE(verify(fx::binary(1, 0), revealing).all_pass());
}

TEST(Rationalize, RandomStrictMlrData) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    GeneratorConfig cfg{2 + rng() % 4, 1 + rng() % 7, rng(), 60, GeneratorKind::mlr_strict};
    const auto d = gen_mlr_dataset(cfg);
    const auto rat = rationalize(d);
    const auto rep = verify(d, rat);
    ASSERT_TRUE(rep.all_pass()) << "seed " << cfg.seed << " N=" << cfg.n_states << " M=" << cfg.m_actions;
    EXPECT_EQ(rat.grade, ScpGrade::strict);
    EXPECT_NE(check_mlr(rat.info.pi()).verdict, MlrVerdict::none);
    if (rat.method == RationalizationMethod::general_inductive) {
      const auto table = build_differences(d);
      EXPECT_EQ(props::check_difference_table(d, table), "") << "seed " << cfg.seed;
    }
  }
}

TEST(Rationalize, SingleStateWithEveryActionChosenOnlyTies) {
  // One posterior, every action chosen there: all actions must be optimal, so
  // no alternative can be strictly worse.
  const Dataset d(Matrix{{r(1, 2), r(1, 3), r(1, 6)}});
  const auto rep = verify(d, rationalize(d));
  EXPECT_TRUE(rep.monotonicity.pass());
  EXPECT_TRUE(rep.consistency.pass);
  EXPECT_TRUE(rep.support_condition.pass());
  EXPECT_TRUE(rep.optimality.weak_pass());
  EXPECT_FALSE(rep.optimality.strict_witness.has_value());
  EXPECT_FALSE(rep.pass());
}

TEST(Rationalize, WeakMlrDataStaysConsistent) {
  std::mt19937_64 rng(78);
  int strict_results = 0;
  for (int trial = 0; trial < 80; ++trial) {
    GeneratorConfig cfg{2 + rng() % 3, 2 + rng() % 4, rng(), 6, GeneratorKind::mlr_weak};
    const auto d = gen_mlr_dataset(cfg);
    try {
      const auto rat = rationalize(d);
      const auto rep = verify(d, rat);
      EXPECT_TRUE(rep.consistency.pass);
      EXPECT_TRUE(rep.bayes_plausibility.pass());
      EXPECT_TRUE(rep.optimality.weak_pass());
      if (rat.grade == ScpGrade::strict && rep.all_pass()) ++strict_results;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::construction_failed) << e.what();
    }
  }
  EXPECT_GT(strict_results, 0);
}

TEST(ScpScreen, Examples) {
  const auto d = fx::mlr_data();
  const auto rep = scp_alone_feasible(d);
  EXPECT_EQ(rep.pairs.size(), 3u);
  EXPECT_TRUE(rep.all_feasible());
  for (const auto& p : rep.pairs) {
    const auto sys = scp_pair_system(d, p.high, p.low, *p.crossing);
    for (const auto& v : multiply(sys.a, p.witness)) EXPECT_GE(v, 0);
  }

  const auto anti = fx::binary(r(1, 4), r(3, 4));
  const auto bad = scp_alone_feasible(anti);
  ASSERT_EQ(bad.pairs.size(), 1u);
  EXPECT_FALSE(bad.pairs[0].feasible);
  ASSERT_EQ(bad.pairs[0].certificates.size(), 2u);
  for (std::size_t c = 0; c < 2; ++c)
    EXPECT_TRUE(verify_certificate(scp_pair_system(anti, 1, 0, c), bad.pairs[0].certificates[c]));

  EXPECT_TRUE(scp_alone_feasible(Dataset(Matrix{{1}, {1}})).pairs.empty());
}

TEST(ScpScreen, MlrDataAlwaysFeasible) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    GeneratorConfig cfg{1 + rng() % 4, 1 + rng() % 5, rng(), 30, GeneratorKind::mlr_weak};
    EXPECT_TRUE(scp_alone_feasible(gen_mlr_dataset(cfg)).all_feasible());
  }
}

TEST(BinaryCorollary, AntiSingleCrossingSystemIsInfeasible) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    GeneratorConfig cfg{2, 2, rng(), 60, GeneratorKind::mlr_strict};
    const auto d = gen_mlr_dataset(cfg);
    const auto sys = binary_anti_scp_system(d);
    const auto out = solve(sys);
    ASSERT_EQ(out.status, FeasibilityStatus::infeasible);
    EXPECT_TRUE(verify_certificate(sys, out.certificate));
  }
}
