#include "qhball/boundary_trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include "qhball/error.hpp"

namespace qhball {

namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  if (v == 0.0) v = 0.0;  // no "-0" from mirrored samples
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, end);
}

double parse_number(std::string_view field, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed number on CSV line " + std::to_string(line));
  }
  return v;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};

}  // namespace

std::vector<TraceRecord> trace_upper_half(double M, std::size_t n) {
  const BoundaryParamDomain dom = boundary_param_domain(M);
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "a trace needs at least two samples");

  const double theta_lo = dom.wraps ? std::acos(-dom.s_min / M) : 0.0;
  const double theta_hi = std::numbers::pi;

  std::vector<TraceRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s, phi;
    if (i == 0) {
      s = dom.s_min;
      phi = dom.wraps ? std::numbers::pi : 0.0;
    } else if (i + 1 == n) {
      s = dom.s_max;
      phi = 0.0;
    } else {
      const double theta = theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) /
                                          static_cast<double>(n - 1);
      s = -M * std::cos(theta);
      phi = M * std::sin(theta);
    }
    const double r = std::exp(s);
    // Both ends sit on the real axis; pin x2 so the mirrored curve closes.
    const double x2 = (i == 0 || i + 1 == n) ? 0.0 : r * std::sin(phi);
    out.push_back({s, phi, r * std::cos(phi), x2});
  }
  return out;
}

std::vector<Vec2> full_curve(std::span<const TraceRecord> upper) {
  std::vector<Vec2> out;
  if (upper.empty()) return out;
  out.reserve(2 * upper.size() - 1);
  for (const TraceRecord& r : upper) out.push_back({r.x1, r.x2});
  for (std::size_t i = upper.size() - 1; i-- > 0;) out.push_back({upper[i].x1, -upper[i].x2});
  return out;
}

std::vector<TraceRecord> full_trace(std::span<const TraceRecord> upper) {
  std::vector<TraceRecord> out(upper.begin(), upper.end());
  if (upper.empty()) return out;
  for (std::size_t i = upper.size() - 1; i-- > 0;) {
    const TraceRecord& r = upper[i];
    out.push_back({r.s, -r.phi, r.x1, -r.x2});
  }
  return out;
}

BoundaryLoops trace_loops(double M, std::size_t n) {
  const auto upper = trace_upper_half(M, n);
  BoundaryLoops loops;
  loops.outer = full_curve(upper);
  if (boundary_param_domain(M).wraps) {
    loops.inner.reserve(loops.outer.size());
    for (Vec2 p : loops.outer) loops.inner.push_back(p * (1.0 / dot(p, p)));
  }
  return loops;
}

std::string format_trace_csv(std::span<const TraceRecord> records) {
  std::string out = "s,phi,x1,x2\n";
  for (const TraceRecord& r : records) {
    append_number(out, r.s);
    out += ',';
    append_number(out, r.phi);
    out += ',';
    append_number(out, r.x1);
    out += ',';
    append_number(out, r.x2);
    out += '\n';
  }
  return out;
}

std::vector<TraceRecord> parse_trace_csv(const std::string& text) {
  std::vector<TraceRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "s,phi,x1,x2") continue;
    double v[4];
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t comma = line.find(',', start);
      const bool last = k == 3;
      if (last != (comma == std::string::npos)) {
        throw Error(ErrorCode::InvalidArgument,
                    "expected 4 fields on CSV line " + std::to_string(line_no));
      }
      const std::size_t end = last ? line.size() : comma;
      v[k] = parse_number(std::string_view(line).substr(start, end - start), line_no);
      start = end + 1;
    }
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

std::string format_boundary_svg(std::span<const double> radii, std::size_t n) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radii to plot");
  const double largest = *std::max_element(radii.begin(), radii.end());
  const double half = 1.05 * (std::exp(largest) - 1.0);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"";
  append_number(out, 1.0 - half);
  out += ' ';
  append_number(out, -half);
  out += ' ';
  append_number(out, 2.0 * half);
  out += ' ';
  append_number(out, 2.0 * half);
  out += "\">\n";

  const double stroke = half / 250.0;
  // Center and puncture markers.
  out += "<circle cx=\"1\" cy=\"0\" r=\"";
  append_number(out, 2.0 * stroke);
  out += "\" fill=\"black\"/>\n<circle cx=\"0\" cy=\"0\" r=\"";
  append_number(out, 2.0 * stroke);
  out += "\" fill=\"none\" stroke=\"black\" stroke-width=\"";
  append_number(out, stroke / 2.0);
  out += "\"/>\n";

  for (std::size_t k = 0; k < radii.size(); ++k) {
    const BoundaryLoops loops = trace_loops(radii[k], n);
    out += "<path data-M=\"";
    append_number(out, radii[k]);
    out += "\" fill=\"none\" stroke=\"";
    out += kPalette[k % std::size(kPalette)];
    out += "\" stroke-width=\"";
    append_number(out, stroke);
    out += "\" d=\"";
    for (const auto* loop : {&loops.outer, &loops.inner}) {
      // The closing vertex duplicates the first; Z closes the subpath.
      for (std::size_t i = 0; i + 1 < loop->size(); ++i) {
        out += i == 0 ? "M " : " L ";
        append_number(out, (*loop)[i].x);
        out += ' ';
        append_number(out, -(*loop)[i].y);
      }
      if (!loop->empty()) out += " Z";
      if (loop == &loops.outer && !loops.inner.empty()) out += ' ';
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw Error(ErrorCode::Io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
  }
}

}  // namespace qhball
