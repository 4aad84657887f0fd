#pragma once

// Sampled boundary of the punctured-plane disk D(1, M) and its file formats.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qhball/punctured_metric.hpp"

namespace qhball {

/// One sample of the upper boundary half: x = e^s (cos phi, sin phi).
struct TraceRecord {
  double s;
  double phi;
  double x1;
  double x2;
};

/// `n` samples of the upper half ordered by s, endpoints included. Samples
/// are uniform in theta with s = -M cos(theta), phi = M sin(theta), which
/// clusters them where phi'(s) blows up.
std::vector<TraceRecord> trace_upper_half(double M, std::size_t n);

/// Closed polylines (first point repeated at the end). `outer` runs along the
/// upper half by increasing s and returns through the mirrored lower half.
/// For M > pi the disk is an annulus and `inner` holds the hole's boundary,
/// the image of `outer` under inversion in the unit circle.
struct BoundaryLoops {
  std::vector<Vec2> outer;
  std::vector<Vec2> inner;
};

BoundaryLoops trace_loops(double M, std::size_t n);

/// The outer loop as a closed curve (upper half then mirrored lower half).
std::vector<Vec2> full_curve(std::span<const TraceRecord> upper);

/// Records of the closed curve: `upper` followed by its mirror image (phi and
/// x2 negated) in reverse order, so the last record repeats the first.
std::vector<TraceRecord> full_trace(std::span<const TraceRecord> upper);

/// Header `s,phi,x1,x2`, 17 significant digits, locale independent.
std::string format_trace_csv(std::span<const TraceRecord> records);
std::vector<TraceRecord> parse_trace_csv(const std::string& text);

/// One stroked path per radius on a fixed view box around (1, 0) sized from
/// the outer sandwich radius e^M - 1 of the largest M plus a 5% margin.
std::string format_boundary_svg(std::span<const double> radii, std::size_t n);

/// Writes via a temporary sibling file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qhball
