/* C interface to the polygonal-inversion library.
 *
 * Conventions:
 *   - Every function that can fail returns polyinv_status; POLYINV_OK is 0.
 *     On failure, polyinv_last_error() describes the problem (thread-local).
 *   - Objects are opaque handles released with the matching _free function.
 *   - Strings written to a char** are heap-allocated; release them with
 *     polyinv_string_free.
 *   - An eps argument of 0 selects the library default (1e-9).
 */
#ifndef POLYINV_H
#define POLYINV_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum polyinv_status {
    POLYINV_OK = 0,
    POLYINV_ERR_USAGE = 1,      /* null handle / bad argument */
    POLYINV_ERR_PARSE = 2,      /* malformed polygon or sphere-system text */
    POLYINV_ERR_DEGENERATE = 3, /* degenerate geometry (singular polygon, center hit, ...) */
    POLYINV_ERR_LIMIT = 4,      /* resource/robustness cap (state explosion, no generic
                                   projection, normalization or voxel resolution exhausted) */
    POLYINV_ERR_IO = 5,         /* file could not be read or written */
    POLYINV_ERR_INTERNAL = 6    /* unexpected failure; see polyinv_last_error() */
} polyinv_status;

typedef struct polyinv_polygon polyinv_polygon;
typedef struct polyinv_sphere_system polyinv_sphere_system;

/* Message for the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
const char* polyinv_last_error(void);

void polyinv_string_free(char* s);

/* ---- polygons ---------------------------------------------------------- */

/* Text format: one vertex per line as three reals; '#' starts a comment;
 * blank lines ignored; the polygon closes implicitly. */
polyinv_status polyinv_polygon_from_text(const char* text, polyinv_polygon** out);
polyinv_status polyinv_polygon_read(const char* path, polyinv_polygon** out);
polyinv_status polyinv_polygon_to_text(const polyinv_polygon* p, char** out_text);
polyinv_status polyinv_polygon_write(const polyinv_polygon* p, const char* path);
void polyinv_polygon_free(polyinv_polygon* p);

int polyinv_polygon_size(const polyinv_polygon* p); /* vertex count, 0 on null */
polyinv_status polyinv_polygon_vertex(const polyinv_polygon* p, int index, double out_xyz[3]);

/* Vertex-wise inversion through the sphere (center, radius), reconnected by
 * straight segments. */
polyinv_status polyinv_polygon_invert(const polyinv_polygon* p, const double center[3],
                                      double radius, double eps, polyinv_polygon** out);

/* Closest approach between non-adjacent edges. *found is 1 when the polygon
 * is singular at tolerance eps (gap <= eps * diameter). */
polyinv_status polyinv_polygon_singularity(const polyinv_polygon* p, double eps, int* found,
                                           double* gap, int* edge_a, int* edge_b);

/* Circle-arc image of the inversion: JSON {"arcs":[{"straight":bool,
 * "points":[[x,y,z],...]},...]} with samples_per_arc+1 points per arc. */
polyinv_status polyinv_arcs_json(const polyinv_polygon* p, const double center[3], double radius,
                                 int samples_per_arc, double eps, char** out_json);

/* ---- sphere systems ---------------------------------------------------- */

/* Spheres/planes through the endpoint quadruples of non-adjacent edge pairs
 * (deduplicated); degenerate quadruples are recorded as skipped. */
polyinv_status polyinv_system_from_polygon(const polyinv_polygon* p, double eps,
                                           polyinv_sphere_system** out);

/* Text format: lines "S cx cy cz r" or "P nx ny nz offset"; '#' comments. */
polyinv_status polyinv_system_read(const char* path, polyinv_sphere_system** out);
polyinv_status polyinv_system_to_text(const polyinv_sphere_system* s, char** out_text);
polyinv_status polyinv_system_write(const polyinv_sphere_system* s, const char* path);
void polyinv_system_free(polyinv_sphere_system* s);

int polyinv_system_size(const polyinv_sphere_system* s);    /* surfaces, 0 on null */
int polyinv_system_skipped(const polyinv_sphere_system* s); /* skipped quadruples */
polyinv_status polyinv_system_skipped_json(const polyinv_sphere_system* s, char** out_json);

/* Exact number of connected components of the complement. */
polyinv_status polyinv_region_count_exact(const polyinv_sphere_system* s, double eps,
                                          long long* out);

/* Independent voxel-grid count, doubling the resolution from `start` until two
 * successive counts agree (POLYINV_ERR_LIMIT past `cap`). Pass 0 for the
 * defaults (32, 1024). */
polyinv_status polyinv_region_count_voxel(const polyinv_sphere_system* s, int start, int cap,
                                          long long* out);

/* 2*C(m,3) + 2m, the most regions m spheres can bound; -1 if m < 0. */
long long polyinv_region_count_upper(long long m);

/* ---- knot classification ----------------------------------------------- */

/* JSON: {"label":..., "jones":[[exponent,coefficient],...], "jones_string":...,
 * "determinant":..., "crossings":..., "writhe":..., "view":[x,y,z],
 * "seed":...}. Label is one of unknot, trefoil_RH, trefoil_LH, figure_eight,
 * 5_1, 5_1*, 5_2, 5_2*, or unknown. */
polyinv_status polyinv_classify_json(const polyinv_polygon* p, unsigned long long seed,
                                     double eps, char** out_json);

/* Survey of inversion centers (user-specified first, then two-sided samples
 * near every system sphere, then random box draws); see the library docs for
 * the schema-1 report layout. user_centers_xyz is n_user * 3 doubles or null. */
polyinv_status polyinv_survey_json(const polyinv_polygon* p, int random_centers,
                                   double near_sphere_offset, const double* user_centers_xyz,
                                   int n_user, unsigned long long seed, double eps,
                                   char** out_json);

/* ---- bounds ------------------------------------------------------------ */

/* For an n-edge polygon (n >= 4): most spheres in a system, most knot types
 * from one inversion, twice that (full Mobius group), and the lower bound on
 * how many knot types need at most n edges. Null out-pointers are skipped. */
polyinv_status polyinv_bounds(int n, long long* spheres_max, long long* knots_upper,
                              long long* knots_upper_mobius, long long* knots_lower);
polyinv_status polyinv_bound_knots(int n, long long* out);
polyinv_status polyinv_lower_bound_knot_types(int n, long long* out);

/* Smallest n where the lower bound beats the (optionally doubled) upper
 * bound: 72 single-inversion, 75 with doubling. */
polyinv_status polyinv_crossover(int double_for_mobius, int* out_n);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POLYINV_H */
