#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyinv/arrangement.hpp"
#include "polyinv/geom.hpp"
#include "polyinv/knots.hpp"
#include "polyinv/laurent.hpp"
#include "polyinv/polygon.hpp"
#include "polyinv/vec3.hpp"

namespace polyinv {

// Largest possible sphere-system size for an n-edge polygon: one surface per
// non-adjacent edge pair, n(n-3)/2.
long long max_spheres(int n);

// (n^6 - 9n^5 + 21n^4 + 9n^3 - 22n^2 - 96n)/24 for n >= 4: the most knot
// types a single inversion of an n-edge polygon can produce. Equals
// region_count_upper(max_spheres(n)). Exact integers; throws on overflow.
long long bound_knots(int n);

// floor((sqrt(2^n) - 4)/12), clamped at 0: how many knot types need at most
// n edges (for odd n the underlying construction only uses (n-1)/2 crossings,
// so the even-n value at n-1 already applies; the square-root form keeps the
// formula uniform). Exact via 128-bit integer square root; n in [1, 126].
long long lower_bound_knot_types(int n);

// Smallest n >= 4 with lower_bound_knot_types(n) > bound_knots(n), or twice
// bound_knots(n) when `double_for_mobius` is set (composed inversions reach
// at most twice as many types as single ones).
int crossover(bool double_for_mobius);

struct BoundsTable {
    int n = 0;
    long long spheres_max = 0;
    long long knots_upper = 0;
    long long knots_upper_mobius = 0;  // 2 * knots_upper
    long long knots_lower = 0;
};

BoundsTable bounds_table(int n);  // n >= 4

// How survey_centers generates candidate inversion centers (besides
// `user_centers`, which are always tried first): two-sided samples displaced
// off every system sphere by `near_sphere_offset` times its radius, then
// `random_centers` uniform draws from the polygon's bounding box scaled 3x.
struct SurveyStrategy {
    int random_centers = 500;
    double near_sphere_offset = 1e-2;
    std::vector<Vec3> user_centers;
};

// One discovered knot type: all centers with the same (label, jones) merge.
struct SurveyEntry {
    std::string label;
    LaurentPolynomial jones;
    long long determinant = 0;
    Vec3 representative;  // first reliable center, else first center
    int count = 0;
    int reliable_count = 0;
    bool reliable = false;  // at least one contributing center was reliable
};

struct SurveyReport {
    std::string polygon_digest;
    int n = 0;
    int sphere_count = 0;
    int skipped_quadruples = 0;
    long long region_count = 0;  // exact complementary-region count
    long long region_bound = 0;  // region_count_upper(sphere_count)
    long long knots_upper = 0;   // bound_knots(n) (1 for triangles)
    uint64_t seed = 0;
    SurveyStrategy strategy;
    int centers_generated = 0;
    int centers_filtered = 0;  // too close to a sphere/degenerate circle/vertex
    int centers_errored = 0;   // classification failed
    int centers_unreliable = 0;
    int centers_classified = 0;
    std::vector<SurveyEntry> entries;  // in order of first discovery

    int distinct_reliable_labels() const;
};

// Classifies the inversion of k through a unit sphere at every candidate
// center (the knot type never depends on the radius). Deterministic in
// (k, strategy, seed). Centers within 1e3*eps of a system surface, a
// concyclic-quadruple circle, or a vertex are filtered; images whose closest
// non-adjacent approach is within 1e3*eps of singular are flagged unreliable
// and excluded from the reliable-label count.
SurveyReport survey_centers(const Polygon& k, const SurveyStrategy& strategy, uint64_t seed,
                            double eps = kDefaultEps);

// Stable JSON rendering of a report (schema field = 1).
std::string survey_report_json(const SurveyReport& r);

// Outcome of testing one Mobius map against the composition law: the image
// knot type must match (up to mirror) the type from a single inversion at the
// map's preimage of infinity, or the type of k itself when the map fixes
// infinity (and is therefore affine).
struct MobiusVerdict {
    bool skipped = false;
    std::string reason;          // why it was skipped
    bool infinity_fixed = false;
    Vec3 preimage;               // meaningful when !infinity_fixed
    std::string image_label;
    std::string expected_label;
    bool consistent = false;     // jones polynomials equal or mirrored
};

MobiusVerdict check_mobius_theorem(const Polygon& k, const MobiusMap& map, uint64_t seed = 1,
                                   double eps = kDefaultEps);

}  // namespace polyinv
