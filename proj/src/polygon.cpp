#include "polyinv/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "polyinv/errors.hpp"

namespace polyinv {

void validate_polygon(const Polygon& k, double eps) {
    int n = k.size();
    if (n < 3) throw DegeneratePolygon("polygon needs at least 3 vertices, got " + std::to_string(n));
    double tol = eps * polygon_diameter(k);
    for (int i = 0; i < n; ++i) {
        if (dist(k.vertices[i], k.vertices[(i + 1) % n]) <= tol)
            throw DegeneratePolygon("consecutive vertices " + std::to_string(i) + " and " +
                                    std::to_string((i + 1) % n) + " coincide");
    }
}

double polygon_scale(const Polygon& k) {
    double s = 1.0;
    for (const Vec3& v : k.vertices) s = std::max(s, norm(v));
    return s;
}

double polygon_diameter(const Polygon& k) {
    double d = 0.0;
    int n = k.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d = std::max(d, dist(k.vertices[i], k.vertices[j]));
    return d;
}

Polygon polygonal_inversion(const Polygon& k, const InversionSpec& spec, double eps) {
    validate_polygon(k, eps);
    Polygon out;
    out.vertices.reserve(k.vertices.size());
    for (int i = 0; i < k.size(); ++i) {
        try {
            out.vertices.push_back(invert_point(spec, k.vertices[i], eps));
        } catch (const CenterHit&) {
            throw CenterHit(i, "vertex " + std::to_string(i) + " coincides with the inversion center");
        }
    }
    return out;
}

namespace {

// Signed angle from unit u0 to unit u1 about unit axis n, in (-pi, pi].
double signed_angle(const Vec3& u0, const Vec3& u1, const Vec3& n) {
    return std::atan2(dot(n, cross(u0, u1)), dot(u0, u1));
}

}  // namespace

ArcPolygon circle_arc_image(const Polygon& k, const InversionSpec& spec, double eps) {
    // Vertex-center coincidence reported exactly as for the vertexwise map.
    polygonal_inversion(k, spec, eps);
    const Vec3& p = spec.center;
    int n = k.size();
    ArcPolygon out;
    out.arcs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Vec3& x = k.vertices[i];
        const Vec3& y = k.vertices[(i + 1) % n];
        Vec3 ex = x - p, ey = y - p;
        double sine = norm(cross(ex, ey));
        if (sine <= eps * norm(ex) * norm(ey)) {
            if (dot(ex, ey) < 0.0)
                throw DegenerateArc(i, "edge " + std::to_string(i) +
                                           ": inversion center inside the edge chord");
            Arc a;
            a.start = x;
            a.end = y;
            a.straight = true;
            a.circle = Circle3{0.5 * (x + y), 0.5 * dist(x, y), any_orthogonal(y - x)};
            out.arcs.push_back(a);
            continue;
        }
        Circle3 c = circumcircle(x, y, p);
        Vec3 u0 = (x - c.center) / c.radius;
        Vec3 uy = (y - c.center) / c.radius;
        Vec3 up = (p - c.center) / c.radius;
        double ay = signed_angle(u0, uy, c.normal);
        double ap = signed_angle(u0, up, c.normal);
        // Positive-direction angles from start: the ccw arc covers (0, s1).
        double s1 = ay > 0 ? ay : ay + 2.0 * M_PI;
        double phi = ap > 0 ? ap : ap + 2.0 * M_PI;
        Arc a;
        a.start = x;
        a.end = y;
        a.circle = c;
        a.ccw = phi > s1;  // center sits on the ccw side only when phi < s1
        out.arcs.push_back(a);
    }
    return out;
}

double arc_sweep(const Arc& a) {
    if (a.straight) return 0.0;
    Vec3 u0 = (a.start - a.circle.center) / a.circle.radius;
    Vec3 u1 = (a.end - a.circle.center) / a.circle.radius;
    double ang = signed_angle(u0, u1, a.circle.normal);
    double s1 = ang > 0 ? ang : ang + 2.0 * M_PI;
    return a.ccw ? s1 : s1 - 2.0 * M_PI;
}

std::vector<Vec3> sample_arc(const Arc& a, int k) {
    std::vector<Vec3> pts;
    pts.reserve(k + 1);
    if (a.straight) {
        for (int j = 0; j <= k; ++j) {
            double t = static_cast<double>(j) / k;
            pts.push_back((1.0 - t) * a.start + t * a.end);
        }
        return pts;
    }
    Vec3 u0 = (a.start - a.circle.center) / a.circle.radius;
    Vec3 v0 = cross(a.circle.normal, u0);
    double sweep = arc_sweep(a);
    for (int j = 0; j <= k; ++j) {
        double th = sweep * j / k;
        pts.push_back(a.circle.center +
                      a.circle.radius * (std::cos(th) * u0 + std::sin(th) * v0));
    }
    return pts;
}

Polygon sample_arc_polygon(const ArcPolygon& ap, int per_arc) {
    Polygon out;
    for (const Arc& a : ap.arcs) {
        std::vector<Vec3> pts = sample_arc(a, per_arc);
        pts.pop_back();  // next arc starts where this one ends
        out.vertices.insert(out.vertices.end(), pts.begin(), pts.end());
    }
    return out;
}

double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2,
                        Vec3* midpoint) {
    // Closest points of two segments (clamped quadratic, Ericson-style).
    Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    double a = norm2(d1), e = norm2(d2), f = dot(d2, r);
    double s = 0.0, t = 0.0;
    const double tiny = 1e-30;
    if (a <= tiny && e <= tiny) {
        // both degenerate
    } else if (a <= tiny) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = dot(d1, r);
        if (e <= tiny) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = dot(d1, d2);
            double denom = a * e - b * b;
            if (denom > tiny) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    Vec3 c1 = p1 + s * d1, c2 = p2 + t * d2;
    if (midpoint) *midpoint = 0.5 * (c1 + c2);
    return dist(c1, c2);
}

std::optional<EdgePairWitness> closest_nonadjacent_approach(const Polygon& k) {
    int n = k.size();
    std::optional<EdgePairWitness> best;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent
            Vec3 mid;
            double g = segment_distance(k.vertices[i], k.vertices[(i + 1) % n], k.vertices[j],
                                        k.vertices[(j + 1) % n], &mid);
            if (!best || g < best->gap) best = EdgePairWitness{i, j, g, mid};
        }
    }
    return best;
}

std::optional<EdgePairWitness> find_singularity(const Polygon& k, double eps) {
    auto w = closest_nonadjacent_approach(k);
    if (w && w->gap <= eps * polygon_diameter(k)) return w;
    return std::nullopt;
}

Polygon parse_polygon(const std::string& text) {
    Polygon out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x)) {
            std::string residue;
            if (ls.clear(), ls >> residue)
                throw ParseError(line_no, "line " + std::to_string(line_no) + ": expected a number");
            continue;  // blank
        }
        if (!(ls >> y >> z))
            throw ParseError(line_no,
                             "line " + std::to_string(line_no) + ": expected three coordinates");
        std::string trailing;
        if (ls >> trailing)
            throw ParseError(line_no, "line " + std::to_string(line_no) + ": trailing content '" +
                                          trailing + "'");
        out.vertices.push_back({x, y, z});
    }
    validate_polygon(out);
    return out;
}

Polygon read_polygon(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_polygon(ss.str());
}

std::string polygon_to_text(const Polygon& k) {
    std::string out;
    char buf[96];
    for (const Vec3& v : k.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
        out += buf;
    }
    return out;
}

void write_polygon(const std::string& path, const Polygon& k) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << polygon_to_text(k);
    if (!f) throw Error("write to '" + path + "' failed");
}

std::string polygon_digest(const Polygon& k) {
    std::string text = polygon_to_text(k);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace polyinv
