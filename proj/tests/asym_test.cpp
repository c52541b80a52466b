#include <gtest/gtest.h>

#include <algorithm>

#include "ascount/asym.hpp"
#include "ascount/series.hpp"

namespace ascount {
namespace {

TEST(Params, SmallCases) {
  auto p21 = asymptotic_params(2, 1);
  EXPECT_EQ(p21.a, 1);
  EXPECT_EQ(p21.b, 1);
  EXPECT_EQ(p21.L, 2);
  EXPECT_EQ(p21.L_loc, 2);
  EXPECT_EQ(p21.error_exponent, BigRational(3, 4));

  auto p22 = asymptotic_params(2, 2);
  EXPECT_EQ(p22.a, BigRational(1, 2));
  EXPECT_EQ(p22.b, 4);
  EXPECT_EQ(p22.L, 12);
  EXPECT_EQ(p22.L_loc, 6);

  auto p31 = asymptotic_params(3, 1);
  EXPECT_EQ(p31.a, BigRational(1, 2));
  EXPECT_EQ(p31.b, 2);
  EXPECT_EQ(p31.L, 12);

  auto p32 = asymptotic_params(3, 2);
  EXPECT_EQ(p32.a, BigRational(5, 24));
  EXPECT_EQ(p32.b, 1);
  EXPECT_EQ(p32.L, 24);

  EXPECT_THROW(asymptotic_params(4, 1), std::invalid_argument);
  EXPECT_THROW(asymptotic_params(2, 0), std::invalid_argument);
}

// the abscissa is the largest (j(p-1) + 1) / deg(delta_j), reached at j = r
TEST(Params, AbscissaIsRightmostShiftedLocalPole) {
  for (int p : {2, 3, 5, 7})
    for (int r = 1; r <= 5; ++r) {
      auto P = asymptotic_params(p, r);
      BigRational best = 0;
      for (int j = 1; j <= r; ++j)
        best = std::max(best, BigRational(j * (p - 1) + 1, delta_degree(j, p, r)));
      EXPECT_EQ(P.a, best) << p << "," << r;
      EXPECT_EQ(P.a, BigRational(r * (p - 1) + 1, delta_degree(r, p, r)));
      EXPECT_EQ(P.a - P.error_exponent, BigRational(1, p * P.L_loc));
      EXPECT_EQ(P.L_loc, delta_degree(r, p, r));
      EXPECT_EQ(P.L % P.L_loc == 0 || r == 1, true);
    }
}

TEST(Catalog, Local) {
  PrimeContext k(2, 1, 2);
  auto cat = local_pole_catalog(k);
  ASSERT_EQ(cat.entries.size(), 2u);
  EXPECT_EQ(cat.entries[0].real_part, BigRational(1, 3));
  EXPECT_EQ(cat.entries[1].real_part, BigRational(1, 4));
  EXPECT_EQ(cat.entries[0].certainty, Certainty::Definite);
  EXPECT_TRUE(cat.definite_verified);
  for (auto [p, n, r] : {std::tuple{2, 1, 1}, {3, 1, 1}, {2, 2, 2}, {3, 1, 2}, {2, 1, 3}}) {
    PrimeContext ctx(p, n, r);
    EXPECT_TRUE(local_pole_catalog(ctx).definite_verified) << p << n << r;
  }
}

TEST(Catalog, Global) {
  PrimeContext k(2, 1, 2);
  auto cat = global_pole_catalog(k);
  ASSERT_FALSE(cat.entries.empty());
  EXPECT_EQ(cat.entries[0].real_part, BigRational(1, 2));
  EXPECT_EQ(cat.entries[0].max_order, 4);
  for (std::size_t i = 1; i < cat.entries.size(); ++i)
    EXPECT_LE(cat.entries[i].real_part, cat.entries[0].real_part);
}

TEST(LocalConstants, BinaryQuadratic) {
  PrimeContext k(2, 1, 1);
  auto c = local_leading_constants(k);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_LT(abs(c[0] - 1), Real(1e-30));
  EXPECT_EQ(c[1], 0);
  EXPECT_THROW(local_leading_constants(k, 0), std::invalid_argument);
}

TEST(LocalConstants, AgreeWithExactCoefficients) {
  for (auto [p, n, r] : {std::tuple{2, 1, 1}, {2, 2, 1}, {3, 1, 1}, {2, 1, 2}, {2, 2, 2}, {3, 1, 2}}) {
    PrimeContext ctx(p, n, r);
    auto c = local_leading_constants(ctx);
    auto P = asymptotic_params(p, r);
    EXPECT_EQ(static_cast<std::int64_t>(c.size()), P.L_loc);
    for (auto& x : c) EXPECT_GE(x, 0);
    auto v = validate_local_constants(ctx, c, static_cast<int>(20 * P.L_loc));
    EXPECT_TRUE(v.trend_decreasing) << p << n << r;
    EXPECT_LT(v.max_error, Real(0.05)) << p << n << r;
    EXPECT_THROW(validate_local_constants(ctx, c, 1), std::invalid_argument);
  }
}

TEST(Fit, BinaryQuadraticIsExact) {
  PrimeContext k(2, 1, 1);
  int M = default_fit_truncation(2, 1);
  auto fit = main_term_fit(k, global_dirichlet(k, M));
  ASSERT_EQ(fit.classes.size(), 2u);
  EXPECT_LT(abs(fit.classes[0].coefficients[0] - Real(1.5)), Real(1e-20));
  EXPECT_TRUE(fit.classes[1].zero_class);
  EXPECT_FALSE(fit.classes[0].zero_class);
}

TEST(Fit, RejectsShortSeries) {
  PrimeContext k(2, 1, 2);
  EXPECT_THROW(main_term_fit(k, global_dirichlet(k, 10)), std::invalid_argument);
}

TEST(Fit, DefaultTruncationGivesEnoughPoints) {
  for (int p : {2, 3, 5})
    for (int r = 1; r <= 2; ++r) {
      auto P = asymptotic_params(p, r);
      int M = default_fit_truncation(p, r);
      EXPECT_GE(M, 40);
      // points per class in the last 60% of [0, M]
      EXPECT_GE(0.6 * (M + 1) / P.L, 2.0 * P.b - 1) << p << "," << r;
    }
}

TEST(Inequalities, HoldOnSmallGrid) {
  auto rep = verify_inequalities(5, 4);
  EXPECT_TRUE(rep.passed()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_GT(rep.checks, 1000);
  bool single = std::any_of(rep.equalities.begin(), rep.equalities.end(), [](const std::string& s) {
    return s.rfind("single block equality", 0) == 0;
  });
  EXPECT_TRUE(single);
}

class HardRegime : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ctx_ = new PrimeContext(2, 1, 2);
    series_ = new IntSeries(global_dirichlet(*ctx_, 240));
  }
  static void TearDownTestSuite() {
    delete series_;
    delete ctx_;
  }
  static PrimeContext* ctx_;
  static IntSeries* series_;
};
PrimeContext* HardRegime::ctx_ = nullptr;
IntSeries* HardRegime::series_ = nullptr;

TEST_F(HardRegime, OddDegreesVanish) {
  for (int m = 1; m <= 240; m += 2) EXPECT_EQ((*series_)[m], 0) << m;
}

TEST_F(HardRegime, ThirdDifferencesSettle) {
  auto rep = third_difference_report(*ctx_, *series_, 12, 8);
  EXPECT_EQ(rep.good_classes, (std::vector<int>{0, 2, 4, 6, 8, 10}));
}

TEST_F(HardRegime, HolomorphyFarOut) {
  auto rep = holomorphy_check(*ctx_, *series_, 100, 240);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.epsilon, BigRational(1, 12));
  ASSERT_EQ(rep.ratios.size(), rep.bounds.size());
}

TEST_F(HardRegime, LeadingConstant) {
  auto rep = c22_constant_check(*ctx_, *series_);
  EXPECT_EQ(rep.predicted_odd, 0);
  EXPECT_LT(rep.tail_bound, Real(1e-12));
  EXPECT_GT(rep.euler_product, 0);
  EXPECT_GT(rep.fitted_even, 0);
  EXPECT_GT(rep.predicted_even, 0);
}

TEST(Format, RealToString) {
  EXPECT_EQ(to_string(Real(1.5), 6), "1.5");
  EXPECT_EQ(to_json(asymptotic_params(2, 2))["a"], "1/2");
}

}  // namespace
}  // namespace ascount
