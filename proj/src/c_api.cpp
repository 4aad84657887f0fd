#include "qhball/qhball.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "qhball/boundary_trace.hpp"
#include "qhball/error.hpp"
#include "qhball/numeric_domain.hpp"
#include "qhball/punctured_metric.hpp"
#include "qhball/shape_analysis.hpp"
#include "qhball/verify.hpp"

struct qhb_path {
  std::size_t dim;
  std::vector<double> t;
  std::vector<double> coords;
  double length;
};

struct qhb_domain {
  qhball::DomainField field;
};

struct qhb_report {
  qhball::VerifyReport report;
  std::string text;
};

namespace {

thread_local std::string last_error;

qhb_status to_status(qhball::ErrorCode code) {
  using qhball::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return QHB_ERR_INVALID_ARGUMENT;
    case ErrorCode::OutsideDomain: return QHB_ERR_OUTSIDE_DOMAIN;
    case ErrorCode::Antipodal: return QHB_ERR_ANTIPODAL;
    case ErrorCode::VerticalTangent: return QHB_ERR_VERTICAL_TANGENT;
    case ErrorCode::Disconnected: return QHB_ERR_DISCONNECTED;
    case ErrorCode::BracketFailure: return QHB_ERR_BRACKET;
    case ErrorCode::Io: return QHB_ERR_IO;
  }
  return QHB_ERR_INTERNAL;
}

template <class F>
qhb_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return QHB_OK;
  } catch (const qhball::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return QHB_ERR_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) throw qhball::Error(qhball::ErrorCode::InvalidArgument, what);
}

qhball::Point make_point(const double* p, std::size_t dim) {
  require(p != nullptr, "null point");
  return qhball::Point(std::vector<double>(p, p + dim));
}

qhball::Vec2 make_vec(const double* p) {
  require(p != nullptr, "null point");
  return {p[0], p[1]};
}

qhball::GridSpec make_grid(qhb_grid g) {
  return {g.spacing, g.stencil_radius, std::nullopt};
}

qhball::PhiFunction make_phi(qhb_phi phi) {
  switch (phi.kind) {
    case QHB_PHI_IDENTITY: return qhball::PhiFunction::identity();
    case QHB_PHI_LINEAR: return qhball::PhiFunction::linear(phi.scale);
    case QHB_PHI_LOG: return qhball::PhiFunction::logarithmic(phi.scale);
  }
  throw qhball::Error(qhball::ErrorCode::InvalidArgument, "unknown phi kind");
}

qhball::ClassifyOptions make_options(std::size_t rays, std::size_t trace_samples) {
  qhball::ClassifyOptions o;
  if (rays != 0) o.rays = rays;
  if (trace_samples != 0) o.trace_samples = trace_samples;
  return o;
}

}  // namespace

extern "C" {

const char* qhb_last_error(void) { return last_error.c_str(); }

const char* qhb_status_name(qhb_status status) {
  switch (status) {
    case QHB_OK: return "ok";
    case QHB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QHB_ERR_OUTSIDE_DOMAIN: return "outside domain";
    case QHB_ERR_ANTIPODAL: return "antipodal";
    case QHB_ERR_VERTICAL_TANGENT: return "vertical tangent";
    case QHB_ERR_DISCONNECTED: return "disconnected";
    case QHB_ERR_BRACKET: return "bracket failure";
    case QHB_ERR_IO: return "i/o error";
    case QHB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qhb_status qhb_angle_at_origin(const double* x, const double* y, size_t dim, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::angle_at_origin(make_point(x, dim), make_point(y, dim)).radians();
  });
}

qhb_status qhb_distance(const double* x, const double* y, size_t dim, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::qh_distance(make_point(x, dim), make_point(y, dim));
  });
}

qhb_status qhb_invert_about_sphere(const double* x, const double* y, size_t dim, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const qhball::Point r = qhball::invert_about_sphere(make_point(x, dim), make_point(y, dim));
    for (std::size_t i = 0; i < dim; ++i) out[i] = r[i];
  });
}

qhb_status qhb_geodesic(const double* x, const double* y, size_t dim, size_t n_samples,
                        qhb_path** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = nullptr;
    const qhball::GeodesicPath g = qhball::geodesic(make_point(x, dim), make_point(y, dim), n_samples);
    auto path = std::make_unique<qhb_path>();
    path->dim = dim;
    path->length = g.total_length;
    for (const auto& sample : g.samples) {
      path->t.push_back(sample.t);
      path->coords.insert(path->coords.end(), sample.point.coords().begin(),
                          sample.point.coords().end());
    }
    *out = path.release();
  });
}

size_t qhb_path_size(const qhb_path* path) { return path ? path->t.size() : 0; }
size_t qhb_path_dim(const qhb_path* path) { return path ? path->dim : 0; }
double qhb_path_length(const qhb_path* path) {
  return path ? path->length : std::numeric_limits<double>::quiet_NaN();
}

qhb_status qhb_path_point(const qhb_path* path, size_t index, double* t, double* coords) {
  return guarded([&] {
    require(path != nullptr && coords != nullptr, "null argument");
    require(index < path->t.size(), "path index out of range");
    if (t) *t = path->t[index];
    for (std::size_t i = 0; i < path->dim; ++i) coords[i] = path->coords[index * path->dim + i];
  });
}

void qhb_path_free(qhb_path* path) { delete path; }

qhb_status qhb_boundary_param_domain(double M, double* s_min, double* s_max, int* wraps) {
  return guarded([&] {
    require(s_min && s_max && wraps, "null output");
    const auto dom = qhball::boundary_param_domain(M);
    *s_min = dom.s_min;
    *s_max = dom.s_max;
    *wraps = dom.wraps ? 1 : 0;
  });
}

qhb_status qhb_boundary_point(double M, double s, double out[2]) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const qhball::Vec2 p = qhball::boundary_point(M, s);
    out[0] = p.x;
    out[1] = p.y;
  });
}

qhb_status qhb_tangent_data(double M, double s, qhb_tangent* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const qhball::TangentData t = qhball::tangent_data(M, s);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    *out = {t.s, t.phi, t.a, t.b, t.c.value_or(nan), t.c_prime.value_or(nan), t.vertical() ? 1 : 0};
  });
}

qhb_status qhb_solve_constants(qhb_constants* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const qhball::Constants c = qhball::solve_constants();
    *out = {c.kappa, c.lambda, c.kappa_residual, c.lambda_residual};
  });
}

qhb_status qhb_tangent_through_center_residual(double M, double s, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::tangent_through_center_residual(M, s);
  });
}

qhb_status qhb_radius_profile(double M, double s, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::radius_profile(M, s);
  });
}

qhb_status qhb_classify_ball(double M, size_t rays, size_t trace_samples, qhb_ball_report* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const qhball::BallReport r = qhball::classify_ball(M, make_options(rays, trace_samples));
    qhb_ball_report c{};
    c.M = r.M;
    c.strictly_convex = r.convexity == qhball::Convexity::StrictlyConvex;
    c.strictly_starlike = r.starlike_wrt_center == qhball::Starlikeness::StrictlyStarlike;
    c.smooth = r.smooth;
    c.simply_connected = r.simply_connected;
    c.has_corner = r.corner.has_value();
    if (r.corner) {
      c.corner_parameter = *r.corner_parameter;
      c.corner[0] = r.corner->x;
      c.corner[1] = r.corner->y;
      c.corner_slope_limit = *r.corner_slope_limit;
    }
    c.positive_cprime_samples = r.numeric.positive_cprime_samples;
    c.reflex_corner = r.numeric.reflex_corner;
    c.numeric_convex = r.numeric.convex;
    c.multi_crossing_rays = r.numeric.multi_crossing_rays;
    c.numeric_starlike = r.numeric.starlike;
    *out = c;
  });
}

qhb_status qhb_star_center_admissible(double M, const double z[2], size_t rays,
                                      size_t trace_samples, int* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::star_center_admissible(M, make_vec(z), make_options(rays, trace_samples));
  });
}

qhb_status qhb_trace_upper_half(double M, size_t n, qhb_trace_record* records, size_t capacity,
                                size_t* written) {
  return guarded([&] {
    require(written != nullptr, "null output");
    const auto trace = qhball::trace_upper_half(M, n);
    require(records != nullptr && capacity >= trace.size(), "record buffer too small");
    for (std::size_t i = 0; i < trace.size(); ++i) {
      records[i] = {trace[i].s, trace[i].phi, trace[i].x1, trace[i].x2};
    }
    *written = trace.size();
  });
}

qhb_status qhb_write_trace_csv(double M, size_t n, const char* path) {
  return guarded([&] {
    require(path != nullptr, "null path");
    qhball::write_file_atomic(path, qhball::format_trace_csv(qhball::full_trace(qhball::trace_upper_half(M, n))));
  });
}

qhb_status qhb_write_boundary_svg(const double* radii, size_t count, size_t n, const char* path) {
  return guarded([&] {
    require(radii != nullptr && path != nullptr, "null argument");
    qhball::write_file_atomic(path, qhball::format_boundary_svg({radii, count}, n));
  });
}

qhb_status qhb_domain_create(const char* spec, qhb_domain** out) {
  return guarded([&] {
    require(spec != nullptr && out != nullptr, "null argument");
    *out = new qhb_domain{qhball::parse_domain(spec)};
  });
}

qhb_status qhb_domain_from_polygon(const double* xy, size_t vertex_count, qhb_domain** out) {
  return guarded([&] {
    require(xy != nullptr && out != nullptr, "null argument");
    std::vector<qhball::Vec2> v;
    for (std::size_t i = 0; i < vertex_count; ++i) v.push_back({xy[2 * i], xy[2 * i + 1]});
    *out = new qhb_domain{qhball::DomainField::polygon(std::move(v))};
  });
}

void qhb_domain_free(qhb_domain* domain) { delete domain; }

qhb_status qhb_domain_set_bbox(qhb_domain* domain, const double bbox[4]) {
  return guarded([&] {
    require(domain != nullptr && bbox != nullptr, "null argument");
    require(bbox[2] > bbox[0] && bbox[3] > bbox[1], "empty bounding box");
    domain->field.bbox = {bbox[0], bbox[1], bbox[2], bbox[3]};
  });
}

qhb_status qhb_domain_bbox(const qhb_domain* domain, double bbox[4]) {
  return guarded([&] {
    require(domain != nullptr && bbox != nullptr, "null argument");
    const qhball::Box& b = domain->field.bbox;
    bbox[0] = b.xmin;
    bbox[1] = b.ymin;
    bbox[2] = b.xmax;
    bbox[3] = b.ymax;
  });
}

qhb_status qhb_domain_contains(const qhb_domain* domain, const double p[2], int* out) {
  return guarded([&] {
    require(domain != nullptr && out != nullptr, "null argument");
    *out = domain->field.inside(make_vec(p)) ? 1 : 0;
  });
}

qhb_status qhb_domain_boundary_distance(const qhb_domain* domain, const double p[2], double* out) {
  return guarded([&] {
    require(domain != nullptr && out != nullptr, "null argument");
    *out = domain->field.boundary_distance(make_vec(p));
  });
}

qhb_status qhb_grid_distance(const qhb_domain* domain, qhb_grid grid, const double x[2],
                             const double y[2], double* value, qhb_path** path) {
  return guarded([&] {
    require(domain != nullptr && value != nullptr, "null argument");
    if (path) *path = nullptr;
    const qhball::GeodesicEstimate est =
        qhball::grid_qh_distance(domain->field, make_grid(grid), make_vec(x), make_vec(y));
    *value = est.value;
    if (path) {
      auto p = std::make_unique<qhb_path>();
      p->dim = 2;
      p->length = est.value;
      const std::size_t n = est.path.size();
      for (std::size_t i = 0; i < n; ++i) {
        p->t.push_back(n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
        p->coords.push_back(est.path[i].x);
        p->coords.push_back(est.path[i].y);
      }
      *path = p.release();
    }
  });
}

qhb_status qhb_gp_lower_bound(const double z[2], const double y[2], double d_z, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::gp_lower_bound(make_vec(z), make_vec(y), d_z);
  });
}

qhb_status qhb_ball_sandwich_radii(double M, double d_x, double* inner, double* outer) {
  return guarded([&] {
    require(inner && outer, "null output");
    const auto r = qhball::ball_sandwich_radii(M, d_x);
    *inner = r.inner;
    *outer = r.outer;
  });
}

qhb_status qhb_interior_ball_radius(double dist_zy, double d_z, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::interior_ball_radius(dist_zy, d_z);
  });
}

qhb_status qhb_phi_uniform_membership(qhb_phi phi, double M, const double x0[2], const double x[2],
                                      double d_x0, double d_x, int* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::phi_uniform_membership(make_phi(phi), M, make_vec(x0), make_vec(x), d_x0, d_x);
  });
}

qhb_status qhb_coverage_radius_bound(qhb_phi phi, double dist_x0z, double r1, double d_x0,
                                     double delta, double* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = qhball::coverage_radius_bound(make_phi(phi), dist_x0z, r1, d_x0, delta);
  });
}

qhb_status qhb_delta_r0_check(const qhb_domain* domain, double delta, double r0,
                              size_t boundary_samples, size_t radial_samples, int* holds,
                              size_t* failures) {
  return guarded([&] {
    require(domain && holds && failures, "null argument");
    const auto r = qhball::delta_r0_check(domain->field, delta, r0, boundary_samples, radial_samples);
    *holds = r.holds;
    *failures = r.failures.size();
  });
}

qhb_status qhb_ray_monotonicity_check(const qhb_domain* domain, qhb_grid grid, const double x[2],
                                      double M, size_t ray_count, size_t samples_per_ray,
                                      int* monotone, size_t* violations) {
  return guarded([&] {
    require(domain && monotone && violations, "null argument");
    const auto r = qhball::ray_monotonicity_check(domain->field, make_grid(grid), make_vec(x), M,
                                                  ray_count, samples_per_ray);
    *monotone = r.monotone;
    *violations = r.violations.size();
  });
}

qhb_status qhb_hull_coverage_check(const qhb_domain* domain, qhb_grid grid, const double x[2],
                                   qhb_phi phi, double delta, double r0, double s, int* covered,
                                   double* M_s) {
  return guarded([&] {
    require(domain && covered && M_s, "null argument");
    const auto r = qhball::hull_coverage_check(domain->field, make_grid(grid), make_vec(x),
                                               make_phi(phi), delta, r0, s);
    *covered = r.covered;
    *M_s = r.M_s;
  });
}

qhb_status qhb_verify(const char* suite, qhb_grid grid, qhb_report** out) {
  return guarded([&] {
    require(suite != nullptr && out != nullptr, "null argument");
    qhball::VerifyOptions opt;
    opt.spacing = grid.spacing;
    opt.stencil_radius = grid.stencil_radius;
    auto r = std::make_unique<qhb_report>();
    r->report = qhball::run_verify(suite, opt);
    r->text = r->report.text();
    *out = r.release();
  });
}

int qhb_report_passed(const qhb_report* report) { return report && report->report.passed(); }

size_t qhb_report_failures(const qhb_report* report) {
  if (!report) return 0;
  std::size_t n = 0;
  for (const auto& c : report->report.checks) n += c.passed ? 0 : 1;
  return n;
}

const char* qhb_report_text(const qhb_report* report) {
  return report ? report->text.c_str() : "";
}

void qhb_report_free(qhb_report* report) { delete report; }

}  // extern "C"
