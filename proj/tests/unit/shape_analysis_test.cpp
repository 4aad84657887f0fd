#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhball/error.hpp"
#include "qhball/shape_analysis.hpp"

using namespace qhball;

namespace {

constexpr double kPi = std::numbers::pi;
// Frozen from oracle::kappa_by_scan / lambda_by_scan / corner_parameter(3.5).
constexpr double kKappa = 2.8329700604402452;
constexpr double kLambda = 2.9648983982065134;
constexpr double kCorner35 = 1.5428530710701658;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qhball::Error";
  return ErrorCode::Io;
}

ClassifyOptions fast() {
  ClassifyOptions o;
  o.rays = 1024;
  o.trace_samples = 4096;
  return o;
}

}  // namespace

TEST(FrozenValues, OraclesReproduceThem) {
  EXPECT_NEAR(oracle::kappa_by_scan(), kKappa, 1e-13);
  EXPECT_NEAR(oracle::lambda_by_scan(), kLambda, 1e-13);
  EXPECT_NEAR(oracle::corner_parameter(3.5), kCorner35, 1e-13);
}

TEST(TangentTest, Examples) {
  const auto t = tangent_data(1.0, 0.0);
  EXPECT_NEAR(t.a, std::cos(1.0), 1e-15);
  EXPECT_NEAR(t.b, std::sin(1.0), 1e-15);
  ASSERT_TRUE(t.c);
  EXPECT_NEAR(*t.c, std::tan(1.0), 1e-14);

  EXPECT_EQ(*tangent_data(2.0, -1.0).c_prime, 0.0);
  EXPECT_GT(*tangent_data(2.0, -1.5).c_prime, 0.0);
  EXPECT_LT(*tangent_data(2.0, 0.0).c_prime, 0.0);
}

TEST(TangentTest, EndpointsAreRejected) {
  EXPECT_EQ(code_of([] { tangent_data(1.0, -1.0); }), ErrorCode::OutsideDomain);
  EXPECT_EQ(code_of([] { tangent_data(1.0, 1.0); }), ErrorCode::OutsideDomain);
}

TEST(TangentTest, VerticalTangentIsFlagged) {
  // a(s) = phi cos phi + s sin phi vanishes somewhere on (-M, M) for M = 2.5;
  // locate it with the oracle bisection and look at the exact root.
  const double M = 2.5;
  auto a = [M](double s) {
    const double phi = std::sqrt(M * M - s * s);
    return phi * std::cos(phi) + s * std::sin(phi);
  };
  const double s0 = oracle::bisect(a, -1.0, 2.4);
  const auto t = tangent_data(M, s0);
  EXPECT_TRUE(t.vertical());
  EXPECT_FALSE(t.c_prime.has_value());
}

TEST(ConstantsTest, KnownDecimalApproximations) {
  const auto k = solve_kappa();
  const auto l = solve_lambda();
  EXPECT_NEAR(k.value, 2.83297, 1e-5);
  EXPECT_NEAR(l.value, 2.9648984, 1e-6);
  EXPECT_LE(std::abs(k.residual), 1e-12);
  EXPECT_LE(std::abs(l.residual), 1e-12);
  EXPECT_NEAR(k.value, kKappa, 1e-12);
  EXPECT_NEAR(l.value, kLambda, 1e-12);
  EXPECT_LT(k.value, l.value);
}

TEST(ConstantsTest, StableUnderBracketChange) {
  EXPECT_NEAR(solve_kappa({0.5, 3.0}).value, solve_kappa().value, 1e-10);
  EXPECT_NEAR(solve_lambda({1.0, 3.0}).value, solve_lambda().value, 1e-10);
  EXPECT_EQ(code_of([] { solve_kappa({0.1, 0.2}); }), ErrorCode::BracketFailure);
}

TEST(ConstantsTest, Fast) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) solve_constants();
  const double per_call = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 100;
  EXPECT_LT(per_call, 1e-3);
}

TEST(CenterTangentTest, Examples) {
  EXPECT_NEAR(tangent_through_center_residual(kKappa, -1.0), 0.0, 1e-9);
  for (double s : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    EXPECT_GT(std::abs(tangent_through_center_residual(1.0, s)), 1e-3) << s;
  }
  const double below = tangent_through_center_residual(2.5, -1.0);
  const double above = tangent_through_center_residual(3.0, -1.0);
  EXPECT_LT(below * above, 0.0);
}

TEST(ClassifyTest, Examples) {
  const auto r1 = classify_ball(1.0, fast());
  EXPECT_EQ(r1.convexity, Convexity::StrictlyConvex);
  EXPECT_EQ(r1.starlike_wrt_center, Starlikeness::StrictlyStarlike);
  EXPECT_TRUE(r1.smooth);
  EXPECT_TRUE(r1.simply_connected);
  EXPECT_FALSE(r1.corner);
  EXPECT_TRUE(r1.numeric_agrees());

  const auto r2 = classify_ball(2.0, fast());
  EXPECT_EQ(r2.convexity, Convexity::NotConvex);
  EXPECT_EQ(r2.starlike_wrt_center, Starlikeness::StrictlyStarlike);
  EXPECT_TRUE(r2.numeric_agrees());

  const auto r35 = classify_ball(3.5, fast());
  EXPECT_EQ(r35.convexity, Convexity::NotConvex);
  EXPECT_EQ(r35.starlike_wrt_center, Starlikeness::NotStarlike);
  EXPECT_FALSE(r35.smooth);
  EXPECT_FALSE(r35.simply_connected);
  ASSERT_TRUE(r35.corner_parameter);
  EXPECT_NEAR(*r35.corner_parameter, kCorner35, 1e-12);
  EXPECT_NEAR(r35.corner->x, -std::exp(kCorner35), 1e-12);
  EXPECT_EQ(r35.corner->y, 0.0);
  EXPECT_NEAR(*r35.corner_slope_limit, -kCorner35 / kPi, 1e-12);
  EXPECT_TRUE(r35.numeric.reflex_corner);
  EXPECT_TRUE(r35.numeric_agrees());
}

TEST(ClassifyTest, RejectsNonPositiveRadius) {
  EXPECT_EQ(code_of([] { classify_ball(0.0); }), ErrorCode::InvalidArgument);
}

TEST(ClassifyTest, StringNames) {
  EXPECT_STREQ(to_string(Convexity::StrictlyConvex), "strictly convex");
  EXPECT_STREQ(to_string(Starlikeness::NotStarlike), "not starlike");
}

TEST(RadiusProfileTest, Endpoints) {
  EXPECT_NEAR(radius_profile(1.0, -1.0), std::pow(1 - std::exp(-1.0), 2), 1e-14);
  EXPECT_NEAR(radius_profile(1.0, 1.0), std::pow(std::numbers::e - 1, 2), 1e-13);
}

TEST(StarCenterTest, Examples) {
  EXPECT_FALSE(star_center_admissible(2.0, {std::exp(-2.0) + 1e-3, 0.0}, fast()));
  EXPECT_TRUE(star_center_admissible(2.9, {std::exp(2.9) - 1e-3, 0.0}, fast()));
  EXPECT_TRUE(star_center_admissible(1.0, {1.0, 0.0}, fast()));
  EXPECT_EQ(code_of([] { star_center_admissible(1.0, {10.0, 0.0}); }), ErrorCode::OutsideDomain);
}

TEST(ProfileTest, SecondDerivativeAtTip) {
  for (double M : {0.5, 1.0, 2.0}) {
    const double analytic = std::exp(-M) * (1.0 / M - 1.0);
    // f(phi) is the first coordinate of the inner branch at angle phi.
    auto f = [M](double p) { return boundary_point(M, -std::sqrt(M * M - p * p)).x; };
    const double fd = oracle::second_difference(f, 0.0, 1e-4);
    const double scale = std::max(std::abs(analytic), std::exp(-M));
    EXPECT_NEAR(fd, analytic, 1e-3 * scale);
    EXPECT_NEAR(oracle::second_difference([M](double p) { return oracle::profile(M, p); }, 0.0, 1e-4),
                analytic, 1e-3 * scale);
  }
  EXPECT_GT(std::exp(-0.99) * (1 / 0.99 - 1), 0.0);
  EXPECT_LT(std::exp(-1.01) * (1 / 1.01 - 1), 0.0);
}
