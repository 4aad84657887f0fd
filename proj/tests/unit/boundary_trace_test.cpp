#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qhball/boundary_trace.hpp"
#include "qhball/error.hpp"

using namespace qhball;

TEST(TraceTest, FirstRecordIsTheInnerTip) {
  const auto t = trace_upper_half(1.0, 1024);
  ASSERT_EQ(t.size(), 1024u);
  EXPECT_EQ(t.front().s, -1.0);
  EXPECT_NEAR(t.front().x1, 0.36787944117144233, 1e-15);
  EXPECT_EQ(t.front().x2, 0.0);
  EXPECT_EQ(t.back().s, 1.0);
  EXPECT_NEAR(t.back().x1, std::numbers::e, 1e-15);
}

TEST(TraceTest, OrderedBySAndOnTheUpperSide) {
  for (double M : {0.5, 2.0, 3.5}) {
    const auto t = trace_upper_half(M, 300);
    for (std::size_t i = 1; i < t.size(); ++i) EXPECT_LT(t[i - 1].s, t[i].s);
    for (const auto& r : t) {
      EXPECT_GE(r.x2, 0.0);
      EXPECT_NEAR(r.x1, std::exp(r.s) * std::cos(r.phi), 1e-12 * std::exp(r.s));
      EXPECT_NEAR(r.x2, std::exp(r.s) * std::sin(r.phi), 1e-12 * std::exp(r.s));
    }
  }
}

TEST(TraceTest, WrappedBallStartsAtTheCorner) {
  const auto t = trace_upper_half(3.5, 64);
  EXPECT_NEAR(t.front().s, 1.5428530710701658, 1e-12);
  EXPECT_EQ(t.front().phi, std::numbers::pi);
  EXPECT_EQ(t.front().x2, 0.0);
}

TEST(TraceTest, RejectsTooFewSamples) {
  EXPECT_THROW(trace_upper_half(1.0, 1), Error);
}

TEST(TraceTest, FullTraceIsClosed) {
  const auto upper = trace_upper_half(2.0, 100);
  const auto full = full_trace(upper);
  ASSERT_EQ(full.size(), 199u);
  EXPECT_NEAR(full.front().x1, full.back().x1, 1e-9);
  EXPECT_NEAR(full.front().x2, full.back().x2, 1e-9);
  for (std::size_t i = 0; i < upper.size(); ++i) {
    EXPECT_EQ(full[full.size() - 1 - i].x1, upper[i].x1);
    EXPECT_EQ(full[full.size() - 1 - i].x2, -upper[i].x2);
  }
  const auto curve = full_curve(upper);
  ASSERT_EQ(curve.size(), full.size());
}

TEST(TraceTest, LoopsOfTheAnnulus) {
  const auto loops = trace_loops(3.5, 200);
  ASSERT_FALSE(loops.inner.empty());
  ASSERT_EQ(loops.inner.size(), loops.outer.size());
  for (std::size_t i = 0; i < loops.inner.size(); ++i) {
    EXPECT_NEAR(qh_distance(Vec2{1, 0}, loops.inner[i]), 3.5, 1e-9);
  }
  EXPECT_TRUE(trace_loops(2.0, 200).inner.empty());
}

TEST(CsvTest, RoundTripReproducesTheRadius) {
  for (double M : {1.0, 2.0, 2.8329700604402452, 3.5}) {
    const auto rows = parse_trace_csv(format_trace_csv(full_trace(trace_upper_half(M, 1024))));
    ASSERT_EQ(rows.size(), 2047u);
    for (const auto& r : rows) EXPECT_NEAR(qh_distance(Vec2{1, 0}, Vec2{r.x1, r.x2}), M, 1e-9);
  }
}

TEST(CsvTest, LosslessAndHeaderChecked) {
  const auto t = trace_upper_half(1.7, 50);
  const auto back = parse_trace_csv(format_trace_csv(t));
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(back[i].s, t[i].s);
    EXPECT_EQ(back[i].phi, t[i].phi);
    EXPECT_EQ(back[i].x1, t[i].x1);
    EXPECT_EQ(back[i].x2, t[i].x2);
  }
  EXPECT_EQ(format_trace_csv(t).substr(0, 12), "s,phi,x1,x2\n");
  EXPECT_THROW(parse_trace_csv("a,b,c,d\n1,2,3,4\n"), Error);
  EXPECT_THROW(parse_trace_csv("s,phi,x1,x2\n1,2,3\n"), Error);
}

TEST(SvgTest, DeterministicWithOnePathPerRadius) {
  const double radii[] = {1.0, 2.0, 2.8329700604402452};
  const std::string a = format_boundary_svg(radii, 256);
  const std::string b = format_boundary_svg(radii, 256);
  EXPECT_EQ(a, b);
  std::size_t paths = 0;
  for (std::size_t pos = a.find("<path"); pos != std::string::npos; pos = a.find("<path", pos + 1)) ++paths;
  EXPECT_EQ(paths, 3u);
  EXPECT_NE(a.find("fill=\"none\""), std::string::npos);
  EXPECT_EQ(a.find("-0 "), std::string::npos);
}

TEST(FileTest, AtomicWriteAndFailure) {
  const auto dir = std::filesystem::temp_directory_path() / "qhball_trace_test";
  std::filesystem::create_directories(dir);
  const auto file = dir / "out.csv";
  write_file_atomic(file, "hello\n");
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "hello\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  try {
    write_file_atomic(dir / "missing" / "x.csv", "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
  std::filesystem::remove_all(dir);
}
