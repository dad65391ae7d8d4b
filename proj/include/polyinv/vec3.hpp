#pragma once

#include <cmath>
#include <algorithm>
#include <iosfwd>

namespace polyinv {

// Default absolute-plus-relative tolerance used by every degeneracy predicate.
inline constexpr double kDefaultEps = 1e-9;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }
inline Vec3 operator/(const Vec3& v, double s) { return {v.x / s, v.y / s, v.z / s}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
inline Vec3& operator+=(Vec3& a, const Vec3& b) { a = a + b; return a; }
inline Vec3& operator-=(Vec3& a, const Vec3& b) { a = a - b; return a; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

// |a - b| within eps, scaled by magnitude (absolute near zero, relative away from it).
inline bool near(double a, double b, double eps = kDefaultEps) {
    return std::abs(a - b) <= eps * (1.0 + std::max(std::abs(a), std::abs(b)));
}
inline bool near_zero(double a, double eps = kDefaultEps) { return std::abs(a) <= eps; }
inline bool near_point(const Vec3& a, const Vec3& b, double eps = kDefaultEps) {
    return dist(a, b) <= eps * (1.0 + std::max(norm(a), norm(b)));
}

// Any unit vector orthogonal to v (|v| > 0).
inline Vec3 any_orthogonal(const Vec3& v) {
    Vec3 t = std::abs(v.x) <= std::abs(v.y) && std::abs(v.x) <= std::abs(v.z) ? Vec3{1, 0, 0}
           : std::abs(v.y) <= std::abs(v.z)                                   ? Vec3{0, 1, 0}
                                                                              : Vec3{0, 0, 1};
    return normalized(cross(v, t));
}

std::ostream& operator<<(std::ostream& os, const Vec3& v);

}  // namespace polyinv
