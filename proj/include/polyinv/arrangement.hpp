#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyinv/geom.hpp"
#include "polyinv/homology.hpp"
#include "polyinv/polygon.hpp"

namespace polyinv {

// A non-adjacent edge pair whose four endpoints admit no unique sphere/plane.
struct SkippedQuadruple {
    enum class Kind { Concyclic, Colinear, Coincident };
    int edge_a = -1;
    int edge_b = -1;
    Kind kind = Kind::Concyclic;
    std::optional<Circle3> circle;  // present for Concyclic
};

// Deduplicated spheres/planes through the endpoint quadruples of non-adjacent
// edge pairs, with provenance (which pairs produced each surface).
struct SphereSystem {
    std::vector<SphereOrPlane> surfaces;
    std::vector<std::vector<std::pair<int, int>>> provenance;
    std::vector<SkippedQuadruple> skipped;
    int size() const { return static_cast<int>(surfaces.size()); }
    // Largest radius/offset magnitude, floored at 1: the tolerance scale.
    double scale() const;
};

SphereSystem sphere_system(const Polygon& k, double eps = kDefaultEps);

// Conjugates the system by one inversion centered off every surface so that
// all surfaces become spheres. Inversion is a homeomorphism of the complement
// of the center (and swaps the center with the point at infinity), so the
// number of complementary regions is unchanged. Identity when no planes.
SphereSystem planarity_normalize(const SphereSystem& sys, double eps = kDefaultEps,
                                 uint64_t seed = 0x5eed);

// Intersection poset of the arrangement, ordered by reverse inclusion:
// surfaces (dim 2) < circles (dim 1) < points (dim 0) < top (dim -1).
// Containment lists are sorted ascending and transitively closed.
struct IntersectionPoset {
    std::vector<SphereOrPlane> surfaces;
    std::vector<Circle3> circles;
    std::vector<Vec3> points;
    std::vector<std::vector<int>> circle_surfaces;  // per circle: surfaces containing it
    std::vector<std::vector<int>> point_surfaces;   // per point: surfaces through it
    std::vector<std::vector<int>> point_circles;    // per point: circles through it

    int surface_count() const { return static_cast<int>(surfaces.size()); }
    int circle_count() const { return static_cast<int>(circles.size()); }
    int point_count() const { return static_cast<int>(points.size()); }
    // Flat element ids: surfaces, then circles, then points, then top.
    int elements() const { return surface_count() + circle_count() + point_count() + 1; }
    int top() const { return elements() - 1; }
    int dim_of(int id) const;
};

IntersectionPoset build_poset(const SphereSystem& sys, double eps = kDefaultEps);

// Order complex of the strict down-set below the given element: vertices are
// poset elements under it, simplices are strictly ordered chains.
OrderComplex order_complex_below(const IntersectionPoset& p, int id);

// Number of connected components of the complement R^3 minus the surfaces:
// 1 + sum over poset elements q with dim(q) != 0 of the reduced Betti number
// in degree 1 - dim(q) of the order complex below q. Planes are normalized
// away first.
long long region_count_exact(const SphereSystem& sys, double eps = kDefaultEps);

// 2*C(m,3) + 2m: the most regions m spheres can cut space into.
long long region_count_upper(long long m);

// k^2 - k + 2 components of a sphere cut by k circles (1 when k = 0).
long long circles_on_sphere_bound(long long k);

// 2*C(m,3) - C(m,2) + m: Euler characteristic of the order complex below the
// top element for a generic system of m spheres.
long long euler_characteristic_generic(long long m);

// Independent grid-based count over one resolution: voxels farther than one
// voxel diagonal from every sphere, 6-connected flood fill, components
// touching the box boundary merged as the unbounded region. Spheres only.
long long voxel_region_count(const std::vector<Sphere>& spheres, int resolution);

// Doubles resolution from `start` until two successive counts agree; throws
// Unresolved past `cap`. Throws Error if the system still contains planes.
long long voxel_region_count_stable(const SphereSystem& sys, int start = 32, int cap = 1024);

// Sphere-system text format: lines "S cx cy cz r" or "P nx ny nz d",
// '#' comments, blank lines ignored.
SphereSystem parse_sphere_system(const std::string& text);
SphereSystem read_sphere_system(const std::string& path);
std::string sphere_system_to_text(const SphereSystem& sys);
void write_sphere_system(const std::string& path, const SphereSystem& sys);

}  // namespace polyinv
