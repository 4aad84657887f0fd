/*
 * qhball C API.
 *
 * Every call returns a qhb_status. On failure, qhb_last_error() returns a
 * message for the calling thread that stays valid until its next API call.
 * Objects behind opaque handles are created by *_create / producer calls and
 * released with the matching *_free; freeing NULL is a no-op.
 */
#ifndef QHBALL_H
#define QHBALL_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QHBALL_BUILDING)
#    define QHB_API __declspec(dllexport)
#  else
#    define QHB_API __declspec(dllimport)
#  endif
#else
#  define QHB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qhb_status {
  QHB_OK = 0,
  QHB_ERR_INVALID_ARGUMENT = 1,
  QHB_ERR_OUTSIDE_DOMAIN = 2,
  QHB_ERR_ANTIPODAL = 3,
  QHB_ERR_VERTICAL_TANGENT = 4,
  QHB_ERR_DISCONNECTED = 5,
  QHB_ERR_BRACKET = 6,
  QHB_ERR_IO = 7,
  QHB_ERR_INTERNAL = 99
} qhb_status;

QHB_API const char* qhb_last_error(void);
QHB_API const char* qhb_status_name(qhb_status status);

/* ---- punctured space R^n \ {0} ---------------------------------------- */

QHB_API qhb_status qhb_angle_at_origin(const double* x, const double* y, size_t dim,
                                       double* out);
QHB_API qhb_status qhb_distance(const double* x, const double* y, size_t dim, double* out);
/* out receives dim coordinates. */
QHB_API qhb_status qhb_invert_about_sphere(const double* x, const double* y, size_t dim,
                                           double* out);

typedef struct qhb_path qhb_path;

QHB_API qhb_status qhb_geodesic(const double* x, const double* y, size_t dim,
                                size_t n_samples, qhb_path** out);
QHB_API size_t qhb_path_size(const qhb_path* path);
QHB_API size_t qhb_path_dim(const qhb_path* path);
/* t may be NULL; coords receives qhb_path_dim() values. */
QHB_API qhb_status qhb_path_point(const qhb_path* path, size_t index, double* t, double* coords);
QHB_API double qhb_path_length(const qhb_path* path);
QHB_API void qhb_path_free(qhb_path* path);

QHB_API qhb_status qhb_boundary_param_domain(double M, double* s_min, double* s_max, int* wraps);
QHB_API qhb_status qhb_boundary_point(double M, double s, double out[2]);

/* ---- shape of D(1, M) ------------------------------------------------- */

typedef struct qhb_tangent {
  double s, phi, a, b, c, c_prime;
  int vertical; /* c and c_prime are NaN when set */
} qhb_tangent;

QHB_API qhb_status qhb_tangent_data(double M, double s, qhb_tangent* out);

typedef struct qhb_constants {
  double kappa, lambda;
  double kappa_residual, lambda_residual;
} qhb_constants;

QHB_API qhb_status qhb_solve_constants(qhb_constants* out);
QHB_API qhb_status qhb_tangent_through_center_residual(double M, double s, double* out);
QHB_API qhb_status qhb_radius_profile(double M, double s, double* out);

typedef struct qhb_ball_report {
  double M;
  int strictly_convex;
  int strictly_starlike;
  int smooth;
  int simply_connected;
  int has_corner;
  double corner_parameter;  /* m, when has_corner */
  double corner[2];
  double corner_slope_limit;
  /* numeric confirmations */
  size_t positive_cprime_samples;
  int reflex_corner;
  int numeric_convex;
  size_t multi_crossing_rays;
  int numeric_starlike;
} qhb_ball_report;

/* rays / trace_samples of 0 select the defaults (4096 / 16384). */
QHB_API qhb_status qhb_classify_ball(double M, size_t rays, size_t trace_samples,
                                     qhb_ball_report* out);
QHB_API qhb_status qhb_star_center_admissible(double M, const double z[2], size_t rays,
                                              size_t trace_samples, int* out);

/* ---- boundary traces -------------------------------------------------- */

typedef struct qhb_trace_record {
  double s, phi, x1, x2;
} qhb_trace_record;

/* Fills up to `capacity` records; *written receives n. */
QHB_API qhb_status qhb_trace_upper_half(double M, size_t n, qhb_trace_record* records,
                                        size_t capacity, size_t* written);
/* Full closed curve: upper half, then the mirrored lower half. */
QHB_API qhb_status qhb_write_trace_csv(double M, size_t n, const char* path);
QHB_API qhb_status qhb_write_boundary_svg(const double* radii, size_t count, size_t n,
                                          const char* path);

/* ---- general domains -------------------------------------------------- */

typedef struct qhb_domain qhb_domain;

/* Built-in name with optional ":params" or a polygon CSV path. */
QHB_API qhb_status qhb_domain_create(const char* spec, qhb_domain** out);
QHB_API qhb_status qhb_domain_from_polygon(const double* xy, size_t vertex_count,
                                           qhb_domain** out);
QHB_API void qhb_domain_free(qhb_domain* domain);
QHB_API qhb_status qhb_domain_set_bbox(qhb_domain* domain, const double bbox[4]);
QHB_API qhb_status qhb_domain_bbox(const qhb_domain* domain, double bbox[4]);
QHB_API qhb_status qhb_domain_contains(const qhb_domain* domain, const double p[2], int* out);
QHB_API qhb_status qhb_domain_boundary_distance(const qhb_domain* domain, const double p[2],
                                                double* out);

typedef struct qhb_grid {
  double spacing;
  int stencil_radius;
} qhb_grid;

/* Path points are planar; `path` may be NULL. */
QHB_API qhb_status qhb_grid_distance(const qhb_domain* domain, qhb_grid grid, const double x[2],
                                     const double y[2], double* value, qhb_path** path);

typedef enum qhb_phi_kind { QHB_PHI_IDENTITY = 0, QHB_PHI_LINEAR = 1, QHB_PHI_LOG = 2 } qhb_phi_kind;

typedef struct qhb_phi {
  qhb_phi_kind kind;
  double scale; /* ignored for QHB_PHI_IDENTITY */
} qhb_phi;

QHB_API qhb_status qhb_gp_lower_bound(const double z[2], const double y[2], double d_z,
                                      double* out);
QHB_API qhb_status qhb_ball_sandwich_radii(double M, double d_x, double* inner, double* outer);
QHB_API qhb_status qhb_interior_ball_radius(double dist_zy, double d_z, double* out);
QHB_API qhb_status qhb_phi_uniform_membership(qhb_phi phi, double M, const double x0[2],
                                              const double x[2], double d_x0, double d_x,
                                              int* out);
QHB_API qhb_status qhb_coverage_radius_bound(qhb_phi phi, double dist_x0z, double r1,
                                             double d_x0, double delta, double* out);
/* *holds receives the verdict; *failures the number of failing boundary points. */
QHB_API qhb_status qhb_delta_r0_check(const qhb_domain* domain, double delta, double r0,
                                      size_t boundary_samples, size_t radial_samples,
                                      int* holds, size_t* failures);
QHB_API qhb_status qhb_ray_monotonicity_check(const qhb_domain* domain, qhb_grid grid,
                                              const double x[2], double M, size_t ray_count,
                                              size_t samples_per_ray, int* monotone,
                                              size_t* violations);
QHB_API qhb_status qhb_hull_coverage_check(const qhb_domain* domain, qhb_grid grid,
                                           const double x[2], qhb_phi phi, double delta,
                                           double r0, double s, int* covered, double* M_s);

/* ---- verification batteries ------------------------------------------ */

typedef struct qhb_report qhb_report;

/* suite: "metric", "shape", "grid", "bounds" or "all". */
QHB_API qhb_status qhb_verify(const char* suite, qhb_grid grid, qhb_report** out);
QHB_API int qhb_report_passed(const qhb_report* report);
QHB_API size_t qhb_report_failures(const qhb_report* report);
QHB_API const char* qhb_report_text(const qhb_report* report);
QHB_API void qhb_report_free(qhb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* QHBALL_H */
