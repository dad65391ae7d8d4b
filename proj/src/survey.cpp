#include "polyinv/survey.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <json.hpp>

#include "polyinv/errors.hpp"

namespace polyinv {

namespace {

using int128 = __int128;

long long checked_narrow(int128 v, const char* what) {
    if (v > static_cast<int128>(std::numeric_limits<long long>::max()) ||
        v < static_cast<int128>(std::numeric_limits<long long>::min()))
        throw Error(std::string(what) + ": value exceeds 64-bit range");
    return static_cast<long long>(v);
}

unsigned __int128 isqrt128(unsigned __int128 v) {
    if (v == 0) return 0;
    auto x = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(v)));
    while (x > 0 && x * x > v) --x;
    while ((x + 1) * (x + 1) <= v) ++x;
    return x;
}

}  // namespace

long long max_spheres(int n) {
    if (n < 3) throw Error("max_spheres: need at least 3 edges");
    return static_cast<long long>(n) * (n - 3) / 2;
}

long long bound_knots(int n) {
    if (n < 4) throw Error("bound_knots: need at least 4 edges");
    int128 x = n;
    int128 v = ((((x - 9) * x + 21) * x + 9) * x - 22) * x - 96;  // Horner, monic degree 6
    v = v * x / 24;
    return checked_narrow(v, "bound_knots");
}

long long lower_bound_knot_types(int n) {
    if (n < 1) throw Error("lower_bound_knot_types: need n >= 1");
    if (n > 126) throw Error("lower_bound_knot_types: n > 126 overflows 128-bit arithmetic");
    unsigned __int128 pow2 = static_cast<unsigned __int128>(1) << n;
    int128 root = static_cast<int128>(isqrt128(pow2));
    // floor((sqrt(2^n) - 4)/12) only depends on floor(sqrt(2^n)): the interval
    // between consecutive integers never crosses a multiple of 12 internally.
    int128 v = root - 4;
    int128 q = v >= 0 ? v / 12 : -((-v + 11) / 12);
    return std::max(0ll, checked_narrow(q, "lower_bound_knot_types"));
}

int crossover(bool double_for_mobius) {
    int128 factor = double_for_mobius ? 2 : 1;
    for (int n = 4; n <= 126; ++n) {
        if (static_cast<int128>(lower_bound_knot_types(n)) >
            factor * static_cast<int128>(bound_knots(n)))
            return n;
    }
    throw Error("crossover: not found below n = 127");
}

BoundsTable bounds_table(int n) {
    BoundsTable t;
    t.n = n;
    t.spheres_max = max_spheres(n);
    t.knots_upper = bound_knots(n);
    t.knots_upper_mobius = checked_narrow(static_cast<int128>(t.knots_upper) * 2, "bounds_table");
    t.knots_lower = lower_bound_knot_types(n);
    return t;
}

// ---------------------------------------------------------------------------
// Center survey.

int SurveyReport::distinct_reliable_labels() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](const SurveyEntry& e) { return e.reliable; }));
}

namespace {

// Minimum distance from p to any system surface, skipped-quadruple circle, or
// polygon vertex. Centers this close to the arrangement sit on (or next to)
// a wall where the image knot type changes or degenerates.
double arrangement_clearance(const Vec3& p, const Polygon& k, const SphereSystem& sys) {
    double d = std::numeric_limits<double>::infinity();
    for (const SphereOrPlane& s : sys.surfaces) d = std::min(d, std::abs(signed_surface_distance(s, p)));
    for (const SkippedQuadruple& sq : sys.skipped)
        if (sq.circle) d = std::min(d, distance_to_circle(*sq.circle, p));
    for (const Vec3& v : k.vertices) d = std::min(d, dist(p, v));
    return d;
}

struct CenterOutcome {
    bool filtered = false;
    bool errored = false;
    bool reliable = false;
    KnotClass cls;
};

CenterOutcome evaluate_center(const Vec3& p, const Polygon& k, const SphereSystem& sys,
                              uint64_t seed, double eps) {
    CenterOutcome out;
    double tol = 1e3 * eps * (1.0 + sys.scale());
    if (arrangement_clearance(p, k, sys) <= tol) {
        out.filtered = true;
        return out;
    }
    try {
        Polygon image = polygonal_inversion(k, {p, 1.0}, eps);
        double gap = std::numeric_limits<double>::infinity();
        if (auto w = closest_nonadjacent_approach(image)) gap = w->gap;
        double size = polygon_diameter(image);
        if (gap <= eps * size) throw DegeneratePolygon("inverted polygon is singular");
        out.reliable = gap > 1e3 * eps * size;
        out.cls = classify(image, seed, eps);
    } catch (const Error&) {
        out.errored = true;
    }
    return out;
}

}  // namespace

SurveyReport survey_centers(const Polygon& k, const SurveyStrategy& strategy, uint64_t seed,
                            double eps) {
    validate_polygon(k, eps);
    if (find_singularity(k, eps)) throw DegeneratePolygon("survey: polygon is singular");
    SphereSystem sys = sphere_system(k, eps);

    SurveyReport rep;
    rep.polygon_digest = polygon_digest(k);
    rep.n = k.size();
    rep.sphere_count = sys.size();
    rep.skipped_quadruples = static_cast<int>(sys.skipped.size());
    rep.region_count = region_count_exact(sys, eps);
    rep.region_bound = region_count_upper(sys.size());
    rep.knots_upper = rep.n >= 4 ? bound_knots(rep.n) : 1;
    rep.seed = seed;
    rep.strategy = strategy;

    std::vector<Vec3> candidates = strategy.user_centers;
    // Two-sided samples straddling every sphere (planes have no radius to
    // scale by; their two sides are reached by the box samples below).
    const Vec3 dirs[8] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0},
                          {0, 0, 1},  {0, 0, -1}, {0.57735026918962576, 0.57735026918962576, 0.57735026918962576},
                          {-0.57735026918962576, -0.57735026918962576, -0.57735026918962576}};
    for (const SphereOrPlane& s : sys.surfaces) {
        if (const Sphere* sp = std::get_if<Sphere>(&s)) {
            for (const Vec3& d : dirs) {
                candidates.push_back(sp->center + (1.0 - strategy.near_sphere_offset) * sp->radius * d);
                candidates.push_back(sp->center + (1.0 + strategy.near_sphere_offset) * sp->radius * d);
            }
        }
    }
    Vec3 lo = k.vertices[0], hi = k.vertices[0];
    for (const Vec3& v : k.vertices) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    Vec3 mid = 0.5 * (lo + hi), half = 1.5 * (hi - lo);  // box scaled 3x
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < strategy.random_centers; ++i)
        candidates.push_back(mid + Vec3{unit(rng) * half.x, unit(rng) * half.y, unit(rng) * half.z});

    rep.centers_generated = static_cast<int>(candidates.size());
    for (const Vec3& p : candidates) {
        CenterOutcome out = evaluate_center(p, k, sys, seed, eps);
        if (out.filtered) {
            ++rep.centers_filtered;
            continue;
        }
        if (out.errored) {
            ++rep.centers_errored;
            continue;
        }
        ++rep.centers_classified;
        if (!out.reliable) ++rep.centers_unreliable;
        auto it = std::find_if(rep.entries.begin(), rep.entries.end(), [&](const SurveyEntry& e) {
            return e.label == out.cls.label && e.jones == out.cls.jones;
        });
        if (it == rep.entries.end()) {
            rep.entries.push_back({out.cls.label, out.cls.jones, out.cls.determinant, p, 0, 0, false});
            it = rep.entries.end() - 1;
        }
        ++it->count;
        if (out.reliable) {
            if (!it->reliable) it->representative = p;  // first reliable center wins
            it->reliable = true;
            ++it->reliable_count;
        }
    }
    return rep;
}

std::string survey_report_json(const SurveyReport& r) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["polygon"] = {{"digest", r.polygon_digest}, {"edges", r.n}};
    j["system"] = {{"spheres", r.sphere_count},
                   {"skipped_quadruples", r.skipped_quadruples},
                   {"regions", r.region_count},
                   {"region_bound", r.region_bound},
                   {"knots_upper", r.knots_upper}};
    nlohmann::ordered_json user = nlohmann::ordered_json::array();
    for (const Vec3& c : r.strategy.user_centers) user.push_back({c.x, c.y, c.z});
    j["strategy"] = {{"seed", r.seed},
                     {"random_centers", r.strategy.random_centers},
                     {"near_sphere_offset", r.strategy.near_sphere_offset},
                     {"user_centers", user}};
    j["centers"] = {{"generated", r.centers_generated},
                    {"filtered", r.centers_filtered},
                    {"errors", r.centers_errored},
                    {"classified", r.centers_classified},
                    {"unreliable", r.centers_unreliable}};
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (const SurveyEntry& e : r.entries)
        labels.push_back({{"label", e.label},
                          {"jones", e.jones.to_string()},
                          {"determinant", e.determinant},
                          {"count", e.count},
                          {"reliable_count", e.reliable_count},
                          {"reliable", e.reliable},
                          {"representative", {e.representative.x, e.representative.y, e.representative.z}}});
    j["labels"] = labels;
    j["distinct_reliable_labels"] = r.distinct_reliable_labels();
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// Mobius-map consistency check.

MobiusVerdict check_mobius_theorem(const Polygon& k, const MobiusMap& map, uint64_t seed,
                                   double eps) {
    validate_polygon(k, eps);
    MobiusVerdict v;

    // Preimage of infinity: pull the last center back through the earlier
    // inversions (each is its own inverse). Landing on an earlier center
    // sends the point back to infinity.
    bool at_inf = true;
    Vec3 p;
    for (auto it = map.inversions.rbegin(); it != map.inversions.rend(); ++it) {
        if (at_inf) {
            p = it->center;
            at_inf = false;
        } else if (near_point(p, it->center, eps)) {
            at_inf = true;
        } else {
            p = invert_point(*it, p);
        }
    }
    v.infinity_fixed = at_inf;
    if (!at_inf) v.preimage = p;

    SphereSystem sys = sphere_system(k, eps);
    double tol = 1e3 * eps * (1.0 + sys.scale());
    if (!at_inf && arrangement_clearance(p, k, sys) <= tol) {
        v.skipped = true;
        v.reason = "preimage of infinity within tolerance of the sphere system";
        return v;
    }

    auto classify_checked = [&](const Polygon& poly, const char* which) {
        double gap = std::numeric_limits<double>::infinity();
        if (auto w = closest_nonadjacent_approach(poly)) gap = w->gap;
        if (gap <= 1e3 * eps * polygon_diameter(poly))
            throw DegeneratePolygon(std::string(which) + " polygon is near-singular");
        return classify(poly, seed, eps);
    };

    try {
        Polygon image = k;
        for (const InversionSpec& inv : map.inversions)
            image = polygonal_inversion(image, inv, eps);
        KnotClass image_cls = classify_checked(image, "mapped");
        KnotClass expected_cls =
            at_inf ? classify_checked(k, "source")
                   : classify_checked(polygonal_inversion(k, {p, 1.0}, eps), "reference");
        v.image_label = image_cls.label;
        v.expected_label = expected_cls.label;
        v.consistent = image_cls.jones == expected_cls.jones ||
                       image_cls.jones == expected_cls.jones.mirrored();
    } catch (const Error& e) {
        v.skipped = true;
        v.reason = e.what();
    }
    return v;
}

}  // namespace polyinv
