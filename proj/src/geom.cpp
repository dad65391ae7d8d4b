#include "polyinv/geom.hpp"

#include <array>
#include <cmath>
#include <ostream>

#include "polyinv/errors.hpp"

namespace polyinv {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

Vec3 invert_point(const InversionSpec& spec, const Vec3& x, double eps) {
    Vec3 d = x - spec.center;
    double n2 = norm2(d);
    double guard = eps * (1.0 + std::max(norm(x), norm(spec.center)));
    if (n2 <= guard * guard)
        throw CenterHit(-1, "invert_point: point coincides with the inversion center");
    return spec.center + (spec.radius * spec.radius / n2) * d;
}

Vec3 apply_mobius(const MobiusMap& map, const Vec3& x, double eps) {
    Vec3 p = x;
    for (size_t i = 0; i < map.inversions.size(); ++i) {
        try {
            p = invert_point(map.inversions[i], p, eps);
        } catch (const CenterHit&) {
            throw CenterHit(static_cast<int>(i),
                            "apply_mobius: point hits the center of stage " + std::to_string(i));
        }
    }
    return p;
}

Circle3 circumcircle(const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    Vec3 a = p2 - p1;
    Vec3 b = p3 - p1;
    Vec3 axb = cross(a, b);
    double n2 = norm2(axb);
    if (n2 <= 0.0) throw Error("circumcircle: colinear points");
    Vec3 o = p1 + (norm2(a) * cross(b, axb) + norm2(b) * cross(axb, a)) / (2.0 * n2);
    return Circle3{o, dist(o, p1), normalized(axb)};
}

double distance_to_circle(const Circle3& c, const Vec3& x) {
    Vec3 d = x - c.center;
    double h = dot(c.normal, d);
    Vec3 w = d - h * c.normal;
    double rho = norm(w);
    return std::hypot(h, rho - c.radius);
}

double signed_surface_distance(const SphereOrPlane& s, const Vec3& x) {
    if (const Sphere* sp = std::get_if<Sphere>(&s)) return dist(x, sp->center) - sp->radius;
    const Plane& pl = std::get<Plane>(s);
    return dot(pl.normal, x) - pl.offset;
}

Plane canonical_plane(Vec3 normal, double offset) {
    double n = norm(normal);
    normal = normal / n;
    offset /= n;
    double flip = 1.0;
    if (std::abs(normal.x) > 1e-12)
        flip = normal.x < 0 ? -1.0 : 1.0;
    else if (std::abs(normal.y) > 1e-12)
        flip = normal.y < 0 ? -1.0 : 1.0;
    else
        flip = normal.z < 0 ? -1.0 : 1.0;
    return Plane{flip * normal, flip * offset};
}

namespace {

// Solve M x = rhs (3x3, partial pivoting). Returns false when the normalized
// pivot falls below eps, i.e. the system is degenerate at the working scale.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs, Vec3& out,
            double eps) {
    std::array<int, 3> perm = {0, 1, 2};
    double scale = 0.0;
    for (auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;
    for (int col = 0; col < 3; ++col) {
        int best = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[best]][col])) best = r;
        std::swap(perm[col], perm[best]);
        double pivot = m[perm[col]][col];
        if (std::abs(pivot) <= eps * scale) return false;
        for (int r = col + 1; r < 3; ++r) {
            double f = m[perm[r]][col] / pivot;
            for (int c = col; c < 3; ++c) m[perm[r]][c] -= f * m[perm[col]][c];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    std::array<double, 3> x;
    for (int col = 2; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int c = col + 1; c < 3; ++c) s -= m[perm[col]][c] * x[c];
        x[col] = s / m[perm[col]][col];
    }
    out = {x[0], x[1], x[2]};
    return true;
}

}  // namespace

QuadrupleShape shape_of_quadruple(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                                  double eps) {
    const std::array<Vec3, 4> p = {p0, p1, p2, p3};
    double scale = 1.0;
    for (const Vec3& v : p) scale = std::max(scale, norm(v));
    const double tol = eps * scale;

    // Distinct representatives.
    std::vector<Vec3> reps;
    for (const Vec3& v : p) {
        bool merged = false;
        for (const Vec3& r : reps)
            if (dist(v, r) <= tol) { merged = true; break; }
        if (!merged) reps.push_back(v);
    }
    if (reps.size() < 4) return Coincident{};

    // Colinearity: all representatives on the line through the farthest pair.
    size_t ia = 0, ib = 1;
    double dmax = 0.0;
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            if (double d = dist(reps[i], reps[j]); d > dmax) { dmax = d; ia = i; ib = j; }
    Vec3 u = (reps[ib] - reps[ia]) / dmax;
    bool colinear = true;
    for (const Vec3& r : reps)
        if (norm(cross(r - reps[ia], u)) > tol) { colinear = false; break; }
    if (colinear) return Colinear{};

    // Widest triangle among the original points.
    std::array<int, 3> tri = {0, 1, 2};
    int other = 3;
    double area = -1.0;
    static const std::array<std::array<int, 4>, 4> kChoices = {
        std::array<int, 4>{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 3, 1}, {1, 2, 3, 0}};
    for (const auto& ch : kChoices) {
        double a = norm(cross(p[ch[1]] - p[ch[0]], p[ch[2]] - p[ch[0]]));
        if (a > area) { area = a; tri = {ch[0], ch[1], ch[2]}; other = ch[3]; }
    }
    Circle3 circ = circumcircle(p[tri[0]], p[tri[1]], p[tri[2]]);
    if (distance_to_circle(circ, p[other]) <= tol) return Concyclic{circ};

    // Coplanar: normalized tetrahedron volume against eps.
    Vec3 a = p1 - p0, b = p2 - p0, c = p3 - p0;
    double vol = std::abs(dot(a, cross(b, c)));
    double edge = std::max({norm(a), norm(b), norm(c), dist(p1, p2), dist(p1, p3), dist(p2, p3)});
    if (vol <= eps * edge * edge * edge) {
        Vec3 n = cross(p[tri[1]] - p[tri[0]], p[tri[2]] - p[tri[0]]);
        Plane pl = canonical_plane(n, dot(normalized(n), p[tri[0]]));
        return UniqueSurface{pl};
    }

    // Sphere through the four points: subtracting |x - c|^2 = r^2 pairwise
    // gives 2 (p_i - p_0) . c = |p_i|^2 - |p_0|^2.
    std::array<std::array<double, 3>, 3> m;
    std::array<double, 3> rhs;
    for (int i = 0; i < 3; ++i) {
        Vec3 d = p[i + 1] - p0;
        m[i] = {2.0 * d.x, 2.0 * d.y, 2.0 * d.z};
        rhs[i] = norm2(p[i + 1]) - norm2(p0);
    }
    Vec3 center;
    if (!solve3(m, rhs, center, eps)) {
        Vec3 n = cross(p[tri[1]] - p[tri[0]], p[tri[2]] - p[tri[0]]);
        return UniqueSurface{canonical_plane(n, dot(normalized(n), p[tri[0]]))};
    }
    return UniqueSurface{Sphere{center, dist(center, p0)}};
}

namespace {

SurfaceIntersection intersect_sphere_sphere(const Sphere& s1, const Sphere& s2, double eps) {
    double d = dist(s1.center, s2.center);
    double tol = eps * (1.0 + std::max({s1.radius, s2.radius, d}));
    if (d <= tol && std::abs(s1.radius - s2.radius) <= tol) return EqualSurfaces{};
    if (d <= tol) return EmptyIntersection{};
    Vec3 u = (s2.center - s1.center) / d;
    double sum = s1.radius + s2.radius;
    double dif = std::abs(s1.radius - s2.radius);
    if (std::abs(d - sum) <= tol || std::abs(d - dif) <= tol)
        return TangentPoint{s1.center + s1.radius * u};
    if (d > sum || d < dif) return EmptyIntersection{};
    double a = (d * d + s1.radius * s1.radius - s2.radius * s2.radius) / (2.0 * d);
    double h2 = s1.radius * s1.radius - a * a;
    return IntersectionCircle{Circle3{s1.center + a * u, std::sqrt(std::max(h2, 0.0)), u}};
}

SurfaceIntersection intersect_sphere_plane(const Sphere& s, const Plane& pl, double eps) {
    double h = dot(pl.normal, s.center) - pl.offset;
    double tol = eps * (1.0 + std::max(s.radius, std::abs(h)));
    Vec3 foot = s.center - h * pl.normal;
    if (std::abs(std::abs(h) - s.radius) <= tol) return TangentPoint{foot};
    if (std::abs(h) > s.radius) return EmptyIntersection{};
    double r2 = s.radius * s.radius - h * h;
    return IntersectionCircle{Circle3{foot, std::sqrt(std::max(r2, 0.0)), pl.normal}};
}

SurfaceIntersection intersect_plane_plane(const Plane& a, const Plane& b, double eps) {
    if (norm(cross(a.normal, b.normal)) > eps)
        throw PlanesMeetInLine("intersect_surfaces: planes meet in a line");
    double s = dot(a.normal, b.normal) > 0 ? 1.0 : -1.0;
    double tol = eps * (1.0 + std::max(std::abs(a.offset), std::abs(b.offset)));
    if (std::abs(a.offset - s * b.offset) <= tol) return EqualSurfaces{};
    return EmptyIntersection{};
}

}  // namespace

SurfaceIntersection intersect_surfaces(const SphereOrPlane& a, const SphereOrPlane& b, double eps) {
    if (std::holds_alternative<Sphere>(a) && std::holds_alternative<Sphere>(b))
        return intersect_sphere_sphere(std::get<Sphere>(a), std::get<Sphere>(b), eps);
    if (std::holds_alternative<Plane>(a) && std::holds_alternative<Plane>(b))
        return intersect_plane_plane(std::get<Plane>(a), std::get<Plane>(b), eps);
    const Sphere& s = std::holds_alternative<Sphere>(a) ? std::get<Sphere>(a) : std::get<Sphere>(b);
    const Plane& pl = std::holds_alternative<Plane>(a) ? std::get<Plane>(a) : std::get<Plane>(b);
    return intersect_sphere_plane(s, pl, eps);
}

namespace {

// Intersection of two coplanar circles (common unit normal n), given centers
// and radii. Used for circle x sphere after reducing the sphere to its section
// by the circle's plane.
CircleSurfaceIntersection coplanar_circles(const Vec3& c1, double r1, const Vec3& c2, double r2,
                                           const Vec3& n, double eps) {
    double e = dist(c1, c2);
    double tol = eps * (1.0 + std::max({r1, r2, e}));
    if (e <= tol) {
        if (std::abs(r1 - r2) <= tol) return ContainedInSurface{};
        return EmptyIntersection{};
    }
    Vec3 u = (c2 - c1) / e;
    double sum = r1 + r2;
    double dif = std::abs(r1 - r2);
    if (std::abs(e - sum) <= tol || std::abs(e - dif) <= tol) {
        double dir = (std::abs(e - sum) <= tol || r1 >= r2) ? 1.0 : -1.0;
        return OnePoint{c1 + dir * r1 * u};
    }
    if (e > sum || e < dif) return EmptyIntersection{};
    double a = (e * e + r1 * r1 - r2 * r2) / (2.0 * e);
    double w2 = r1 * r1 - a * a;
    Vec3 v = cross(n, u);
    double w = std::sqrt(std::max(w2, 0.0));
    return TwoPoints{c1 + a * u + w * v, c1 + a * u - w * v};
}

CircleSurfaceIntersection intersect_circle_sphere(const Circle3& c, const Sphere& s, double eps) {
    double h = dot(c.normal, s.center - c.center);
    double tol = eps * (1.0 + std::max({c.radius, s.radius, std::abs(h)}));
    if (std::abs(h) > s.radius + tol) return EmptyIntersection{};
    Vec3 q = s.center - h * c.normal;  // sphere section center in the circle's plane
    double rho2 = s.radius * s.radius - h * h;
    if (rho2 <= tol * tol) {
        // Sphere tangent to the plane at q: on the circle or nothing.
        if (std::abs(dist(q, c.center) - c.radius) <= tol) return OnePoint{q};
        return EmptyIntersection{};
    }
    return coplanar_circles(c.center, c.radius, q, std::sqrt(rho2), c.normal, eps);
}

CircleSurfaceIntersection intersect_circle_plane(const Circle3& c, const Plane& pl, double eps) {
    Vec3 axis = cross(c.normal, pl.normal);
    double tol = eps * (1.0 + std::max(c.radius, std::abs(pl.offset)));
    if (norm(axis) <= eps) {
        if (std::abs(dot(pl.normal, c.center) - pl.offset) <= tol) return ContainedInSurface{};
        return EmptyIntersection{};
    }
    // Point on both planes, then the line c.plane ^ pl in direction t.
    double cn = dot(c.normal, pl.normal);
    double s = pl.offset - dot(pl.normal, c.center);
    Vec3 p0 = c.center + (s / (1.0 - cn * cn)) * (pl.normal - cn * c.normal);
    Vec3 t = normalized(axis);
    double along = dot(c.center - p0, t);
    Vec3 foot = p0 + along * t;
    double delta = dist(foot, c.center);
    if (delta > c.radius + tol) return EmptyIntersection{};
    if (std::abs(delta - c.radius) <= tol) {
        Vec3 point = c.radius > tol ? c.center + (c.radius / delta) * (foot - c.center) : c.center;
        return OnePoint{point};
    }
    double half = std::sqrt(std::max(c.radius * c.radius - delta * delta, 0.0));
    return TwoPoints{foot + half * t, foot - half * t};
}

}  // namespace

CircleSurfaceIntersection intersect_circle_surface(const Circle3& c, const SphereOrPlane& s,
                                                   double eps) {
    if (const Sphere* sp = std::get_if<Sphere>(&s)) return intersect_circle_sphere(c, *sp, eps);
    return intersect_circle_plane(c, std::get<Plane>(s), eps);
}

SphereOrPlane invert_surface(const InversionSpec& spec, const SphereOrPlane& s, double eps) {
    const double r2 = spec.radius * spec.radius;
    if (const Sphere* sp = std::get_if<Sphere>(&s)) {
        Vec3 v = sp->center - spec.center;
        double d2 = norm2(v) - sp->radius * sp->radius;  // power of the center
        double scale = std::max({1.0, norm2(v), sp->radius * sp->radius});
        if (std::abs(d2) <= eps * scale) {
            // Sphere through the center: image is the plane through the image
            // of its far point, perpendicular to the center line.
            Vec3 u = normalized(v);
            double far = norm(v) + sp->radius;
            Vec3 q = spec.center + (r2 / far) * u;
            return canonical_plane(u, dot(u, q));
        }
        double f = r2 / d2;
        return Sphere{spec.center + f * v, std::abs(f) * sp->radius};
    }
    const Plane& pl = std::get<Plane>(s);
    double s0 = pl.offset - dot(pl.normal, spec.center);
    if (std::abs(s0) <= eps * (1.0 + std::abs(pl.offset))) return s;  // plane through the center
    Vec3 c = spec.center + (r2 / (2.0 * s0)) * pl.normal;
    return Sphere{c, r2 / (2.0 * std::abs(s0))};
}

bool surfaces_equal(const SphereOrPlane& a, const SphereOrPlane& b, double eps, double scale) {
    if (a.index() != b.index()) return false;
    if (const Sphere* s1 = std::get_if<Sphere>(&a)) {
        const Sphere& s2 = std::get<Sphere>(b);
        if (scale <= 0.0) scale = std::max({1.0, s1->radius, s2.radius});
        double tol = eps * (1.0 + scale);
        return dist(s1->center, s2.center) <= tol && std::abs(s1->radius - s2.radius) <= tol;
    }
    const Plane& p1 = std::get<Plane>(a);
    const Plane& p2 = std::get<Plane>(b);
    if (scale <= 0.0) scale = std::max({1.0, std::abs(p1.offset), std::abs(p2.offset)});
    return norm(cross(p1.normal, p2.normal)) <= eps && dot(p1.normal, p2.normal) > 0 &&
           std::abs(p1.offset - p2.offset) <= eps * (1.0 + scale);
}

bool circles_equal(const Circle3& a, const Circle3& b, double eps, double scale) {
    if (scale <= 0.0) scale = std::max({1.0, a.radius, b.radius});
    double tol = eps * (1.0 + scale);
    return dist(a.center, b.center) <= tol && std::abs(a.radius - b.radius) <= tol &&
           norm(cross(a.normal, b.normal)) <= eps * (1.0 + eps);
}

}  // namespace polyinv
