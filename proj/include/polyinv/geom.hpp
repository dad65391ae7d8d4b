#pragma once

#include <variant>
#include <vector>

#include "polyinv/vec3.hpp"

namespace polyinv {

// Inversion through the sphere of the given center and radius:
//   rho(x) = center + radius^2 * (x - center) / |x - center|^2.
struct InversionSpec {
    Vec3 center;
    double radius = 1.0;
};

// Finite ordered composition of inversions, applied left to right.
struct MobiusMap {
    std::vector<InversionSpec> inversions;
};

struct Sphere {
    Vec3 center;
    double radius = 0.0;
};

// Plane { x : <normal, x> = offset }, normal unit length. Canonical form has
// the first coordinate of the normal that is away from zero positive.
struct Plane {
    Vec3 normal;
    double offset = 0.0;
};

using SphereOrPlane = std::variant<Sphere, Plane>;

// Circle in 3-space: center, radius, unit plane normal.
struct Circle3 {
    Vec3 center;
    double radius = 0.0;
    Vec3 normal;
};

// Classification of the surface through four points.
struct UniqueSurface { SphereOrPlane surface; };
struct Concyclic { Circle3 circle; };
struct Colinear {};
struct Coincident {};
using QuadrupleShape = std::variant<UniqueSurface, Concyclic, Colinear, Coincident>;

// Intersection of two spheres/planes.
struct EmptyIntersection {};
struct TangentPoint { Vec3 point; };
struct IntersectionCircle { Circle3 circle; };
struct EqualSurfaces {};
using SurfaceIntersection =
    std::variant<EmptyIntersection, TangentPoint, IntersectionCircle, EqualSurfaces>;

// Intersection of a circle with a sphere/plane.
struct OnePoint { Vec3 point; };
struct TwoPoints { Vec3 a, b; };
struct ContainedInSurface {};
using CircleSurfaceIntersection =
    std::variant<EmptyIntersection, OnePoint, TwoPoints, ContainedInSurface>;

// Throws CenterHit (index -1) when x is within eps of the center.
Vec3 invert_point(const InversionSpec& spec, const Vec3& x, double eps = kDefaultEps);

// Applies each inversion in order; CenterHit carries the failing stage index.
Vec3 apply_mobius(const MobiusMap& map, const Vec3& x, double eps = kDefaultEps);

// Circle through three non-colinear points.
Circle3 circumcircle(const Vec3& p1, const Vec3& p2, const Vec3& p3);

double distance_to_circle(const Circle3& c, const Vec3& x);

// Signed distance: negative inside a sphere; <normal, x> - offset for a plane.
double signed_surface_distance(const SphereOrPlane& s, const Vec3& x);

Plane canonical_plane(Vec3 normal, double offset);

QuadrupleShape shape_of_quadruple(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                                  double eps = kDefaultEps);

// Symmetric in its arguments. Throws PlanesMeetInLine for two distinct
// non-parallel planes.
SurfaceIntersection intersect_surfaces(const SphereOrPlane& a, const SphereOrPlane& b,
                                       double eps = kDefaultEps);

CircleSurfaceIntersection intersect_circle_surface(const Circle3& c, const SphereOrPlane& s,
                                                   double eps = kDefaultEps);

// Image of a sphere/plane under an inversion. A surface through the center
// maps to a plane (a plane through the center maps to itself).
SphereOrPlane invert_surface(const InversionSpec& spec, const SphereOrPlane& s,
                             double eps = kDefaultEps);

// Equality within eps, distances scaled by `scale` (pass the largest radius of
// the ambient configuration; <= 0 means derive from the operands).
bool surfaces_equal(const SphereOrPlane& a, const SphereOrPlane& b, double eps = kDefaultEps,
                    double scale = -1.0);
bool circles_equal(const Circle3& a, const Circle3& b, double eps = kDefaultEps,
                   double scale = -1.0);

}  // namespace polyinv
