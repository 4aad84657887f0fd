#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qhball/error.hpp"
#include "qhball/punctured_metric.hpp"

using namespace qhball;

namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qhball::Error";
  return ErrorCode::Io;
}

}  // namespace

TEST(PointTest, RejectsOriginLowDimensionAndNonFinite) {
  EXPECT_EQ(code_of([] { Point{0.0, 0.0}; }), ErrorCode::OutsideDomain);
  EXPECT_EQ(code_of([] { Point{1.0}; }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Point{1.0, NAN}; }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { Point{INFINITY, 1.0}; }), ErrorCode::InvalidArgument);
}

TEST(PointTest, CachesNorm) {
  const Point p{3.0, 4.0, 12.0};
  EXPECT_EQ(p.dim(), 3u);
  EXPECT_DOUBLE_EQ(p.norm(), 13.0);
}

TEST(AngleTest, Examples) {
  EXPECT_NEAR(angle_at_origin({1, 0}, {3, 0}).radians(), 0.0, 1e-15);
  EXPECT_NEAR(angle_at_origin({1, 0}, {0, 1}).radians(), kPi / 2, 1e-15);
  EXPECT_NEAR(angle_at_origin({1, 0}, {-2, 0}).radians(), kPi, 1e-15);
}

TEST(AngleTest, DimensionMismatchIsAnError) {
  EXPECT_EQ(code_of([] { angle_at_origin({1, 0}, {1, 0, 0}); }), ErrorCode::InvalidArgument);
}

TEST(AngleTest, MatchesArccosAwayFromDegeneracy) {
  const std::vector<std::vector<double>> pts = {{1, 2, 3}, {-2, 0.5, 1}, {0.1, -3, 2}, {4, 4, -1}};
  for (const auto& a : pts)
    for (const auto& b : pts)
      if (&a != &b) EXPECT_NEAR(angle_at_origin(Point(a), Point(b)).radians(), oracle::angle_acos(a, b), 1e-12);
}

TEST(AngleTest, NearlyCollinearStaysAccurate) {
  // arccos loses half the digits here; the angle is 1e-9 to first order.
  const double a = angle_at_origin({1, 0}, {1, 1e-9}).radians();
  EXPECT_NEAR(a, 1e-9, 1e-20);
}

TEST(DistanceTest, Examples) {
  EXPECT_NEAR(qh_distance(Point{1, 0}, Point{kE, 0}), 1.0, 1e-15);
  EXPECT_NEAR(qh_distance(Point{1, 0}, Point{0, 1}), kPi / 2, 1e-15);
  EXPECT_NEAR(qh_distance(Point{1, 0}, Point{-kE, 0}), std::sqrt(1 + kPi * kPi), 1e-14);
  EXPECT_NEAR(qh_distance(Vec2{1, 0}, Vec2{-kE, 0}), 3.296908309475615, 1e-14);
}

TEST(DistanceTest, AgreesWithPathIntegral) {
  const std::vector<std::pair<oracle::P2, oracle::P2>> pairs = {
      {{1, 0}, {0, 2}}, {{0.3, -0.2}, {-1.5, 2.5}}, {{2, 2}, {2.5, -0.5}}, {{-1, 0.01}, {0.2, 0.9}}};
  for (auto [a, b] : pairs) {
    EXPECT_NEAR(qh_distance(Vec2{a.x, a.y}, Vec2{b.x, b.y}), oracle::punctured_path_integral(a, b),
                1e-7);
  }
}

TEST(InversionTest, Examples) {
  const Point r = invert_about_sphere({2, 0}, {4, 0});
  EXPECT_NEAR(r[0], 1.0, 1e-15);
  EXPECT_NEAR(r[1], 0.0, 1e-15);
  EXPECT_NEAR(qh_distance(Point{2, 0}, Point{4, 0}), std::log(2.0), 1e-15);
  EXPECT_NEAR(qh_distance(Point{2, 0}, r), std::log(2.0), 1e-15);

  const Point q = invert_about_sphere({1, 0}, {0, 3});
  EXPECT_NEAR(q[0], 0.0, 1e-15);
  EXPECT_NEAR(q[1], 1.0 / 3.0, 1e-15);

  const Point same = invert_about_sphere({0, 2}, {std::sqrt(2.0), std::sqrt(2.0)});
  EXPECT_NEAR(same[0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(same[1], std::sqrt(2.0), 1e-15);
}

TEST(GeodesicTest, Examples) {
  const auto g = geodesic({1, 0}, {kE, 0}, 3);
  ASSERT_EQ(g.samples.size(), 3u);
  EXPECT_DOUBLE_EQ(g.samples[1].t, 0.5);
  EXPECT_NEAR(g.samples[1].point[0], std::sqrt(kE), 1e-14);
  EXPECT_NEAR(g.samples[1].point[1], 0.0, 1e-15);

  const auto h = geodesic({1, 0}, {0, 1}, 3);
  EXPECT_NEAR(h.samples[1].point[0], std::cos(kPi / 4), 1e-15);
  EXPECT_NEAR(h.samples[1].point[1], std::sin(kPi / 4), 1e-15);
}

TEST(GeodesicTest, EndpointsAreExactAndLengthMatchesDistance) {
  const Point x{1, 2, -1};
  const Point y{-3, 0.5, 2};
  const auto g = geodesic(x, y, 65);
  EXPECT_EQ(g.samples.front().point, x);
  EXPECT_EQ(g.samples.back().point, y);
  EXPECT_NEAR(g.total_length, qh_distance(x, y), 1e-12);
  for (const auto& s : g.samples) EXPECT_NEAR(qh_distance(x, s.point), s.t * qh_distance(x, y), 1e-12);
}

TEST(GeodesicTest, StaysInThePlaneOfTheEndpoints) {
  const Point x{1, 0, 0};
  const Point y{0, 2, 0};
  for (const auto& s : geodesic(x, y, 17).samples) EXPECT_NEAR(s.point[2], 0.0, 1e-15);
}

TEST(GeodesicTest, AntipodalIsRefusedButDistanceIsNot) {
  try {
    geodesic({1, 0}, {-2, 0}, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Antipodal);
    EXPECT_STREQ(e.what(), "antipodal: geodesic plane not unique");
  }
  EXPECT_TRUE(std::isfinite(qh_distance(Point{1, 0}, Point{-2, 0})));
}

TEST(GeodesicTest, CollinearSameRay) {
  const auto g = geodesic({1, 1}, {4, 4}, 5);
  for (const auto& s : g.samples) EXPECT_NEAR(s.point[0], s.point[1], 1e-14);
}

TEST(GeodesicTest, NeedsTwoSamples) {
  EXPECT_EQ(code_of([] { geodesic({1, 0}, {0, 1}, 1); }), ErrorCode::InvalidArgument);
}

TEST(BoundaryTest, ParamDomainExamples) {
  auto d1 = boundary_param_domain(1.0);
  EXPECT_EQ(d1.s_min, -1.0);
  EXPECT_EQ(d1.s_max, 1.0);
  EXPECT_FALSE(d1.wraps);

  auto dp = boundary_param_domain(kPi);
  EXPECT_EQ(dp.s_min, -kPi);
  EXPECT_FALSE(dp.wraps);

  auto d35 = boundary_param_domain(3.5);
  EXPECT_NEAR(d35.s_min, 1.5428530710701658, 1e-12);
  EXPECT_NEAR(d35.s_min, oracle::corner_parameter(3.5), 1e-12);
  EXPECT_EQ(d35.s_max, 3.5);
  EXPECT_TRUE(d35.wraps);

  EXPECT_EQ(code_of([] { boundary_param_domain(0.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { boundary_param_domain(-1.0); }), ErrorCode::InvalidArgument);
}

TEST(BoundaryTest, PointExamples) {
  const Vec2 a = boundary_point(1.0, -1.0);
  EXPECT_NEAR(a.x, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(a.y, 0.0, 1e-15);
  const Vec2 b = boundary_point(1.0, 0.0);
  EXPECT_NEAR(b.x, std::cos(1.0), 1e-15);
  EXPECT_NEAR(b.y, std::sin(1.0), 1e-15);
  const Vec2 c = boundary_point(2.0, 2.0);
  EXPECT_NEAR(c.x, std::exp(2.0), 1e-14);
  EXPECT_NEAR(c.y, 0.0, 1e-15);
}

TEST(BoundaryTest, OutOfDomainIsAnError) {
  EXPECT_EQ(code_of([] { boundary_point(1.0, 1.5); }), ErrorCode::OutsideDomain);
  EXPECT_EQ(code_of([] { boundary_point(3.5, 0.0); }), ErrorCode::OutsideDomain);
}

TEST(BoundaryTest, PointsLieOnTheSphere) {
  for (double M : {0.3, 1.0, 2.0, 2.8, kPi, 3.5, 5.0}) {
    const auto dom = boundary_param_domain(M);
    for (int i = 0; i <= 200; ++i) {
      const double s = dom.s_min + (dom.s_max - dom.s_min) * i / 200.0;
      EXPECT_NEAR(qh_distance(Vec2{1, 0}, boundary_point(M, s)), M, 1e-12 * std::max(1.0, M));
    }
  }
}
