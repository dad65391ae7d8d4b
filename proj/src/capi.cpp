#include "polyinv.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "polyinv/arrangement.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/knots.hpp"
#include "polyinv/polygon.hpp"
#include "polyinv/survey.hpp"

struct polyinv_polygon {
    polyinv::Polygon value;
};

struct polyinv_sphere_system {
    polyinv::SphereSystem value;
};

namespace {

thread_local std::string g_last_error;

double resolve_eps(double eps) { return eps > 0 ? eps : polyinv::kDefaultEps; }

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

polyinv_status fail(polyinv_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

/* Runs fn, translating exceptions into status codes. `io` marks operations
 * whose generic errors are file problems rather than internal ones. */
template <typename Fn>
polyinv_status guarded(bool io, Fn&& fn) {
    try {
        fn();
        return POLYINV_OK;
    } catch (const polyinv::ParseError& e) {
        return fail(POLYINV_ERR_PARSE, std::string("ParseError: ") + e.what());
    } catch (const polyinv::DegeneratePolygon& e) {
        return fail(POLYINV_ERR_DEGENERATE, std::string("DegeneratePolygon: ") + e.what());
    } catch (const polyinv::DegenerateArc& e) {
        return fail(POLYINV_ERR_DEGENERATE, std::string("DegenerateArc: ") + e.what());
    } catch (const polyinv::CenterHit& e) {
        return fail(POLYINV_ERR_DEGENERATE, std::string("CenterHit: ") + e.what());
    } catch (const polyinv::PlanesMeetInLine& e) {
        return fail(POLYINV_ERR_DEGENERATE, std::string("PlanesMeetInLine: ") + e.what());
    } catch (const polyinv::StateExplosion& e) {
        return fail(POLYINV_ERR_LIMIT, std::string("StateExplosion: ") + e.what());
    } catch (const polyinv::NoGenericProjection& e) {
        return fail(POLYINV_ERR_LIMIT, std::string("NoGenericProjection: ") + e.what());
    } catch (const polyinv::NormalizationFailed& e) {
        return fail(POLYINV_ERR_LIMIT, std::string("NormalizationFailed: ") + e.what());
    } catch (const polyinv::Unresolved& e) {
        return fail(POLYINV_ERR_LIMIT, std::string("Unresolved: ") + e.what());
    } catch (const polyinv::Error& e) {
        return fail(io ? POLYINV_ERR_IO : POLYINV_ERR_INTERNAL, e.what());
    } catch (const std::exception& e) {
        return fail(POLYINV_ERR_INTERNAL, e.what());
    }
}

nlohmann::ordered_json jones_pairs(const polyinv::LaurentPolynomial& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [exp, coeff] : p.coeffs)
        if (coeff != 0) arr.push_back({exp, coeff});
    return arr;
}

}  // namespace

extern "C" {

const char* polyinv_last_error(void) { return g_last_error.c_str(); }

void polyinv_string_free(char* s) { std::free(s); }

/* ---- polygons ---------------------------------------------------------- */

polyinv_status polyinv_polygon_from_text(const char* text, polyinv_polygon** out) {
    if (!text || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] { *out = new polyinv_polygon{polyinv::parse_polygon(text)}; });
}

polyinv_status polyinv_polygon_read(const char* path, polyinv_polygon** out) {
    if (!path || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(true, [&] { *out = new polyinv_polygon{polyinv::read_polygon(path)}; });
}

polyinv_status polyinv_polygon_to_text(const polyinv_polygon* p, char** out_text) {
    if (!p || !out_text) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] { *out_text = dup_string(polyinv::polygon_to_text(p->value)); });
}

polyinv_status polyinv_polygon_write(const polyinv_polygon* p, const char* path) {
    if (!p || !path) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(true, [&] { polyinv::write_polygon(path, p->value); });
}

void polyinv_polygon_free(polyinv_polygon* p) { delete p; }

int polyinv_polygon_size(const polyinv_polygon* p) { return p ? p->value.size() : 0; }

polyinv_status polyinv_polygon_vertex(const polyinv_polygon* p, int index, double out_xyz[3]) {
    if (!p || !out_xyz) return fail(POLYINV_ERR_USAGE, "null argument");
    if (index < 0 || index >= p->value.size())
        return fail(POLYINV_ERR_USAGE, "vertex index out of range");
    const polyinv::Vec3& v = p->value.vertices[index];
    out_xyz[0] = v.x;
    out_xyz[1] = v.y;
    out_xyz[2] = v.z;
    return POLYINV_OK;
}

polyinv_status polyinv_polygon_invert(const polyinv_polygon* p, const double center[3],
                                      double radius, double eps, polyinv_polygon** out) {
    if (!p || !center || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    if (radius <= 0) return fail(POLYINV_ERR_USAGE, "radius must be positive");
    return guarded(false, [&] {
        polyinv::InversionSpec spec{{center[0], center[1], center[2]}, radius};
        *out = new polyinv_polygon{polyinv::polygonal_inversion(p->value, spec, resolve_eps(eps))};
    });
}

polyinv_status polyinv_polygon_singularity(const polyinv_polygon* p, double eps, int* found,
                                           double* gap, int* edge_a, int* edge_b) {
    if (!p || !found) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] {
        auto w = polyinv::closest_nonadjacent_approach(p->value);
        double tol = resolve_eps(eps) * polyinv::polygon_diameter(p->value);
        *found = w && w->gap <= tol ? 1 : 0;
        if (gap) *gap = w ? w->gap : -1.0;
        if (edge_a) *edge_a = w ? w->edge_a : -1;
        if (edge_b) *edge_b = w ? w->edge_b : -1;
    });
}

polyinv_status polyinv_arcs_json(const polyinv_polygon* p, const double center[3], double radius,
                                 int samples_per_arc, double eps, char** out_json) {
    if (!p || !center || !out_json) return fail(POLYINV_ERR_USAGE, "null argument");
    if (radius <= 0) return fail(POLYINV_ERR_USAGE, "radius must be positive");
    if (samples_per_arc < 1) return fail(POLYINV_ERR_USAGE, "need at least 1 sample per arc");
    return guarded(false, [&] {
        polyinv::InversionSpec spec{{center[0], center[1], center[2]}, radius};
        polyinv::ArcPolygon ap = polyinv::circle_arc_image(p->value, spec, resolve_eps(eps));
        nlohmann::ordered_json arcs = nlohmann::ordered_json::array();
        for (const polyinv::Arc& a : ap.arcs) {
            nlohmann::ordered_json pts = nlohmann::ordered_json::array();
            for (const polyinv::Vec3& v : polyinv::sample_arc(a, samples_per_arc))
                pts.push_back({v.x, v.y, v.z});
            arcs.push_back({{"straight", a.straight}, {"points", pts}});
        }
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["arcs"] = arcs;
        *out_json = dup_string(j.dump(2));
    });
}

/* ---- sphere systems ---------------------------------------------------- */

polyinv_status polyinv_system_from_polygon(const polyinv_polygon* p, double eps,
                                           polyinv_sphere_system** out) {
    if (!p || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] {
        *out = new polyinv_sphere_system{polyinv::sphere_system(p->value, resolve_eps(eps))};
    });
}

polyinv_status polyinv_system_read(const char* path, polyinv_sphere_system** out) {
    if (!path || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(true, [&] {
        *out = new polyinv_sphere_system{polyinv::read_sphere_system(path)};
    });
}

polyinv_status polyinv_system_to_text(const polyinv_sphere_system* s, char** out_text) {
    if (!s || !out_text) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false,
                   [&] { *out_text = dup_string(polyinv::sphere_system_to_text(s->value)); });
}

polyinv_status polyinv_system_write(const polyinv_sphere_system* s, const char* path) {
    if (!s || !path) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(true, [&] { polyinv::write_sphere_system(path, s->value); });
}

void polyinv_system_free(polyinv_sphere_system* s) { delete s; }

int polyinv_system_size(const polyinv_sphere_system* s) { return s ? s->value.size() : 0; }

int polyinv_system_skipped(const polyinv_sphere_system* s) {
    return s ? static_cast<int>(s->value.skipped.size()) : 0;
}

polyinv_status polyinv_system_skipped_json(const polyinv_sphere_system* s, char** out_json) {
    if (!s || !out_json) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const polyinv::SkippedQuadruple& q : s->value.skipped) {
            const char* kind = q.kind == polyinv::SkippedQuadruple::Kind::Concyclic ? "concyclic"
                               : q.kind == polyinv::SkippedQuadruple::Kind::Colinear ? "colinear"
                                                                                    : "coincident";
            nlohmann::ordered_json item = {{"edge_a", q.edge_a}, {"edge_b", q.edge_b}, {"kind", kind}};
            if (q.circle)
                item["circle"] = {{"center", {q.circle->center.x, q.circle->center.y, q.circle->center.z}},
                                  {"radius", q.circle->radius},
                                  {"normal", {q.circle->normal.x, q.circle->normal.y, q.circle->normal.z}}};
            arr.push_back(item);
        }
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["skipped"] = arr;
        *out_json = dup_string(j.dump(2));
    });
}

polyinv_status polyinv_region_count_exact(const polyinv_sphere_system* s, double eps,
                                          long long* out) {
    if (!s || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] { *out = polyinv::region_count_exact(s->value, resolve_eps(eps)); });
}

polyinv_status polyinv_region_count_voxel(const polyinv_sphere_system* s, int start, int cap,
                                          long long* out) {
    if (!s || !out) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] {
        *out = polyinv::voxel_region_count_stable(s->value, start > 0 ? start : 32,
                                                  cap > 0 ? cap : 1024);
    });
}

long long polyinv_region_count_upper(long long m) {
    return m < 0 ? -1 : polyinv::region_count_upper(m);
}

/* ---- knot classification ----------------------------------------------- */

polyinv_status polyinv_classify_json(const polyinv_polygon* p, unsigned long long seed,
                                     double eps, char** out_json) {
    if (!p || !out_json) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] {
        polyinv::KnotClass c = polyinv::classify(p->value, seed, resolve_eps(eps));
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["label"] = c.label;
        j["jones"] = jones_pairs(c.jones);
        j["jones_string"] = c.jones.to_string();
        j["determinant"] = c.determinant;
        j["crossings"] = c.crossings;
        j["writhe"] = c.writhe;
        j["view"] = {c.view.x, c.view.y, c.view.z};
        j["seed"] = c.seed;
        *out_json = dup_string(j.dump(2));
    });
}

polyinv_status polyinv_survey_json(const polyinv_polygon* p, int random_centers,
                                   double near_sphere_offset, const double* user_centers_xyz,
                                   int n_user, unsigned long long seed, double eps,
                                   char** out_json) {
    if (!p || !out_json) return fail(POLYINV_ERR_USAGE, "null argument");
    if (random_centers < 0 || n_user < 0 || (n_user > 0 && !user_centers_xyz))
        return fail(POLYINV_ERR_USAGE, "bad center arguments");
    if (near_sphere_offset <= 0) return fail(POLYINV_ERR_USAGE, "offset must be positive");
    return guarded(false, [&] {
        polyinv::SurveyStrategy strat;
        strat.random_centers = random_centers;
        strat.near_sphere_offset = near_sphere_offset;
        for (int i = 0; i < n_user; ++i)
            strat.user_centers.push_back({user_centers_xyz[3 * i], user_centers_xyz[3 * i + 1],
                                          user_centers_xyz[3 * i + 2]});
        polyinv::SurveyReport rep =
            polyinv::survey_centers(p->value, strat, seed, resolve_eps(eps));
        *out_json = dup_string(polyinv::survey_report_json(rep));
    });
}

/* ---- bounds ------------------------------------------------------------ */

polyinv_status polyinv_bounds(int n, long long* spheres_max, long long* knots_upper,
                              long long* knots_upper_mobius, long long* knots_lower) {
    if (n < 4) return fail(POLYINV_ERR_USAGE, "bounds need n >= 4");
    return guarded(false, [&] {
        polyinv::BoundsTable t = polyinv::bounds_table(n);
        if (spheres_max) *spheres_max = t.spheres_max;
        if (knots_upper) *knots_upper = t.knots_upper;
        if (knots_upper_mobius) *knots_upper_mobius = t.knots_upper_mobius;
        if (knots_lower) *knots_lower = t.knots_lower;
    });
}

polyinv_status polyinv_bound_knots(int n, long long* out) {
    if (!out) return fail(POLYINV_ERR_USAGE, "null argument");
    if (n < 4) return fail(POLYINV_ERR_USAGE, "bound_knots needs n >= 4");
    return guarded(false, [&] { *out = polyinv::bound_knots(n); });
}

polyinv_status polyinv_lower_bound_knot_types(int n, long long* out) {
    if (!out) return fail(POLYINV_ERR_USAGE, "null argument");
    if (n < 1 || n > 126) return fail(POLYINV_ERR_USAGE, "lower bound needs 1 <= n <= 126");
    return guarded(false, [&] { *out = polyinv::lower_bound_knot_types(n); });
}

polyinv_status polyinv_crossover(int double_for_mobius, int* out_n) {
    if (!out_n) return fail(POLYINV_ERR_USAGE, "null argument");
    return guarded(false, [&] { *out_n = polyinv::crossover(double_for_mobius != 0); });
}

}  // extern "C"
