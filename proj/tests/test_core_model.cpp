#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mbeu;
using fx::r;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), r(1, 2));
  EXPECT_EQ(parse_rational("-7"), r(-7));
  EXPECT_EQ(parse_rational("0.25"), r(1, 4));
  EXPECT_EQ(parse_rational("0.05"), r(1, 20));
  EXPECT_EQ(parse_rational("1.5e-2"), r(3, 200));
  EXPECT_EQ(parse_rational(" 2/4 "), r(1, 2));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(Rational, CanonicalStrings) {
  EXPECT_EQ(to_string(r(2, 4)), "1/2");
  EXPECT_EQ(to_string(r(-6, 3)), "-2");
  EXPECT_EQ(to_string(parse_rational("0.5")), "1/2");
}

TEST(Dataset, RejectsInvalidInputs) {
  EXPECT_THROW(Dataset(Vector{0, 1}, Matrix{{r(1, 2), r(1, 2)}, {r(1, 2), r(1, 2)}}), Error);
  EXPECT_THROW(Dataset(Matrix{{r(1, 2), r(1, 3)}}), Error);
  EXPECT_THROW(Dataset(Matrix{{r(3, 2), r(-1, 2)}}), Error);
  try {
    Dataset(Vector{0, 1}, Matrix{{1, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::nonpositive_prior);
  }
}

TEST(Dataset, WarnsWhenFewerActionsThanStates) {
  Dataset d(Matrix{{1}, {1}, {1}});
  EXPECT_FALSE(d.warnings().empty());
  EXPECT_TRUE(fx::mlr_data().warnings().empty());
}

TEST(ExpectedUtility, WorkedExample) {
  const auto u = fx::crossing_utility();
  EXPECT_EQ(expected_utility(u, Vector{r(8, 13), r(3, 13), r(2, 13)}, 0), r(37, 13));
  EXPECT_EQ(expected_utility(u, Vector{r(2, 10), r(6, 10), r(2, 10)}, 1), r(13, 5));
  for (std::size_t i = 0; i < 3; ++i) {
    Vector dirac(3);
    dirac[i] = 1;
    for (std::size_t a = 0; a < 3; ++a) EXPECT_EQ(expected_utility(u, dirac, a), u(a, i));
  }
  EXPECT_THROW(expected_utility(u, Vector{1, 0}, 0), Error);
}

TEST(BestResponses, WorkedExample) {
  const auto u = fx::crossing_utility();
  EXPECT_EQ(best_responses(u, Vector{r(8, 13), r(3, 13), r(2, 13)}), (std::vector<std::size_t>{0}));
  EXPECT_EQ(best_responses(u, Vector{r(2, 10), r(6, 10), r(2, 10)}), (std::vector<std::size_t>{1}));
  EXPECT_EQ(best_responses(u, Vector{r(2, 13), r(3, 13), r(8, 13)}), (std::vector<std::size_t>{2}));
  UtilityMatrix flat{Matrix(4, 3)};
  EXPECT_EQ(best_responses(flat, fx::uniform3()).size(), 4u);
}

TEST(BestResponses, InvariantUnderStatewiseAffineMaps) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> small(-5, 5), pos(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 4, m = 1 + rng() % 4;
    UtilityMatrix u{Matrix(m, n)}, v{Matrix(m, n)};
    const Rational alpha(pos(rng), pos(rng));
    Vector beta(n);
    for (auto& b : beta) b = Rational(small(rng), pos(rng));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i) {
        u.values(a, i) = small(rng);
        v.values(a, i) = alpha * u(a, i) + beta[i];
      }
    Vector gamma(n);
    for (auto& g : gamma) g = pos(rng);
    const Rational s = sum(gamma);
    for (auto& g : gamma) g /= s;
    EXPECT_EQ(best_responses(u, gamma), best_responses(v, gamma));
  }
}

TEST(Simulate, WorkedExampleReproducesData) {
  const auto info = posteriors_from_signals(fx::example_signals(), fx::uniform3());
  const auto q = simulate(fx::crossing_utility(), info, ChoiceRule::dirac({0, 1, 2}, 3));
  EXPECT_EQ(q, fx::example_signals());
}

TEST(Simulate, DegenerateChoices) {
  InformationStructure one(Matrix{{r(1, 3), r(1, 3), r(1, 3)}}, Matrix{{1}, {1}, {1}}, fx::uniform3());
  EXPECT_EQ(simulate(one, ChoiceRule::dirac({0}, 2)), (Matrix{{1, 0}, {1, 0}, {1, 0}}));

  const auto info = posteriors_from_signals(fx::example_signals(), fx::uniform3());
  ChoiceRule uniform{Matrix(3, 4)};
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t a = 0; a < 4; ++a) uniform.c(b, a) = r(1, 4);
  const auto q = simulate(info, uniform);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(q(i, a), r(1, 4));
}

TEST(Simulate, RowsSumToOne) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorConfig cfg{1 + rng() % 4, 1 + rng() % 5, rng(), 30, GeneratorKind::mbeu_dm};
    const auto dm = gen_mbeu_dm(cfg);
    const auto q = simulate(dm.utility, dm.info, dm.choice);
    for (std::size_t i = 0; i < q.rows(); ++i) EXPECT_EQ(sum(q.row(i)), 1);
  }
}

TEST(Posteriors, WorkedExample) {
  const auto info = posteriors_from_signals(fx::example_signals(), fx::uniform3());
  EXPECT_EQ(info.posteriors(),
            (Matrix{{r(8, 13), r(3, 13), r(2, 13)}, {r(2, 10), r(6, 10), r(2, 10)}, {r(2, 13), r(3, 13), r(8, 13)}}));
  EXPECT_EQ(info.marginals(), (Vector{r(13, 36), r(10, 36), r(13, 36)}));
  for (bool ok : bayes_plausibility_flags(info, fx::uniform3())) EXPECT_TRUE(ok);
}

TEST(Posteriors, RevealingAndMerged) {
  const Vector prior{r(1, 2), r(1, 3), r(1, 6)};
  const auto rev = posteriors_from_signals(fx::identity(3), prior);
  EXPECT_EQ(rev.posteriors(), fx::identity(3));
  EXPECT_EQ(rev.marginals(), prior);

  const Matrix dup{{r(1, 4), r(1, 4), r(1, 2)}, {r(1, 6), r(1, 6), r(2, 3)}};
  const auto merged = posteriors_from_signals(dup, Vector{r(1, 2), r(1, 2)});
  ASSERT_EQ(merged.num_posteriors(), 2u);
  EXPECT_EQ(merged.pi(), (Matrix{{r(1, 2), r(1, 2)}, {r(1, 3), r(2, 3)}}));

  const Matrix zero_col{{1, 0}, {1, 0}};
  EXPECT_EQ(posteriors_from_signals(zero_col, Vector{r(1, 2), r(1, 2)}).num_posteriors(), 1u);
}

TEST(Posteriors, RandomStructuresAreBayesPlausible) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 4, s = 1 + rng() % 5;
    Rng g(rng());
    const auto prior = gen_prior(g, n, 20);
    const auto sig = gen_stochastic_matrix(g, n, s, 4, GeneratorKind::arbitrary);
    const auto info = posteriors_from_signals(sig, prior);
    for (bool ok : bayes_plausibility_flags(info, prior)) EXPECT_TRUE(ok);
    EXPECT_EQ(sum(info.marginals()), 1);
  }
}

TEST(SingleCrossing, WorkedExampleViolations) {
  for (bool strict : {true, false}) {
    const auto rep = check_single_crossing(fx::crossing_utility(), strict);
    EXPECT_FALSE(rep.pass);
    auto v = rep.violations;
    std::sort(v.begin(), v.end());
    const std::vector<ScpViolation> expected{{0, 1, 1, 2}, {1, 2, 0, 1}};
    EXPECT_EQ(v, expected);
  }
  EXPECT_TRUE(check_single_crossing(fx::scp_utility(), true).pass);
  EXPECT_TRUE(check_single_crossing(UtilityMatrix{Matrix{{1, -3, 2}}}, true).pass);
  EXPECT_TRUE(check_single_crossing(UtilityMatrix{Matrix{{1}, {-3}, {2}}}, true).pass);
}

TEST(SingleCrossing, AgreesWithSignSequenceOracleOnAllSmallMatrices) {
  std::size_t checked = 0;
  for (int code = 0; code < 19683; ++code) {
    Matrix u(3, 3);
    int c = code;
    for (std::size_t k = 0; k < 9; ++k, c /= 3) u(k / 3, k % 3) = c % 3 - 1;
    const UtilityMatrix um{u};
    ASSERT_EQ(check_single_crossing(um, true).pass, oracle::single_crossing(u, true)) << u;
    ASSERT_EQ(check_single_crossing(um, false).pass, oracle::single_crossing(u, false)) << u;
    ++checked;
  }
  EXPECT_EQ(checked, 19683u);
}
