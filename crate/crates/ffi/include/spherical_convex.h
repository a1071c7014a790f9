#ifndef SPHERICAL_CONVEX_H
#define SPHERICAL_CONVEX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SphStatus {
  SPH_STATUS_OK = 0,
  SPH_STATUS_NULL_POINTER = 1,
  SPH_STATUS_INVALID_ARGUMENT = 2,
  SPH_STATUS_DEGENERATE = 3,
  SPH_STATUS_UNREACHABLE = 4,
  SPH_STATUS_PROJECTION = 5,
  SPH_STATUS_INCONSISTENT = 6,
  SPH_STATUS_INVARIANT = 7,
  SPH_STATUS_PARSE = 8,
  SPH_STATUS_IO = 9,
  SPH_STATUS_BUFFER_TOO_SMALL = 10,
  SPH_STATUS_PANIC = 11,
} SphStatus;

typedef enum SphProperty {
  SPH_PROPERTY_CONSTANT_WIDTH = 0,
  SPH_PROPERTY_CONSTANT_DIAMETER = 1,
  SPH_PROPERTY_REDUCED = 2,
} SphProperty;

/**
 * Opaque spherical convex body.
 */
typedef struct SphBody SphBody;

/**
 * Opaque planar Wulff shape.
 */
typedef struct SphWulff SphWulff;

typedef struct SphVerdict {
  bool pass;
  double deviation;
  double tolerance;
  double value;
} SphVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread; empty if none. Owned by the library.
 */
const char *sph_last_error(void);

enum SphStatus sph_body_cap(const double *center, double rho, struct SphBody **out);

enum SphStatus sph_body_regular_odd_gon(size_t n, double thickness, struct SphBody **out);

/**
 * `vertices` holds 9 doubles: three xyz triples.
 */
enum SphStatus sph_body_cd_triangle(const double *vertices, struct SphBody **out);

/**
 * `vertices` holds `3 * count` doubles.
 */
enum SphStatus sph_body_cd_odd_gon(const double *vertices, size_t count, struct SphBody **out);

enum SphStatus sph_body_random_polygon(uint64_t seed,
                                       size_t n,
                                       double max_diam,
                                       struct SphBody **out);

/**
 * Parses and validates a body document.
 */
enum SphStatus sph_body_from_json(const char *json, struct SphBody **out);

/**
 * Serializes a body; release the string with [`sph_string_free`].
 */
enum SphStatus sph_body_to_json(const struct SphBody *body, char **out);

void sph_string_free(char *s);

void sph_body_free(struct SphBody *body);

/**
 * Number of boundary segments, or 0 for a null handle.
 */
size_t sph_body_segment_count(const struct SphBody *body);

enum SphStatus sph_body_thickness(const struct SphBody *body, size_t samples, double *out);

/**
 * Writes the diameter to `out` and, if non-null, its endpoints to `p` and `q` (3 doubles each).
 */
enum SphStatus sph_body_diameter(const struct SphBody *body,
                                 size_t samples,
                                 double *out,
                                 double *p,
                                 double *q);

enum SphStatus sph_body_check(const struct SphBody *body,
                              enum SphProperty property,
                              double tol,
                              size_t samples,
                              struct SphVerdict *out);

/**
 * Wulff shape of a constant surface energy over `directions` half-planes.
 */
enum SphStatus sph_wulff_constant(double gamma, size_t directions, struct SphWulff **out);

/**
 * Convex polygon from `2 * count` doubles (x, y pairs); the origin must be interior.
 */
enum SphStatus sph_wulff_from_vertices(const double *xy, size_t count, struct SphWulff **out);

enum SphStatus sph_wulff_dual(const struct SphWulff *shape,
                              size_t directions,
                              struct SphWulff **out);

enum SphStatus sph_wulff_self_dual(const struct SphWulff *shape,
                                   double tol,
                                   size_t directions,
                                   bool *pass,
                                   double *gap);

size_t sph_wulff_vertex_count(const struct SphWulff *shape);

/**
 * Copies vertices as x, y pairs into `buf`, which must hold `2 * sph_wulff_vertex_count` doubles.
 */
enum SphStatus sph_wulff_vertices(const struct SphWulff *shape, double *buf, size_t capacity);

/**
 * Lifts the shape to the sphere through the tangent plane at `pole`.
 */
enum SphStatus sph_wulff_induce(const struct SphWulff *shape,
                                const double *pole,
                                struct SphBody **out);

/**
 * Centrally projects a body; a null `pole` uses the body's enclosing center.
 */
enum SphStatus sph_body_project(const struct SphBody *body,
                                const double *pole,
                                size_t samples,
                                struct SphWulff **out);

void sph_wulff_free(struct SphWulff *shape);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPHERICAL_CONVEX_H */
