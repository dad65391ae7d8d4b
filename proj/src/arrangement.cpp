#include "polyinv/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "polyinv/errors.hpp"

namespace polyinv {

double SphereSystem::scale() const {
    double s = 1.0;
    for (const auto& surf : surfaces) {
        if (const Sphere* sp = std::get_if<Sphere>(&surf))
            s = std::max({s, sp->radius, norm(sp->center)});
        else
            s = std::max(s, std::abs(std::get<Plane>(surf).offset));
    }
    return s;
}

SphereSystem sphere_system(const Polygon& k, double eps) {
    validate_polygon(k, eps);
    int n = k.size();
    SphereSystem sys;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;  // adjacent edges
            QuadrupleShape shape =
                shape_of_quadruple(k.vertices[i], k.vertices[(i + 1) % n], k.vertices[j],
                                   k.vertices[(j + 1) % n], eps);
            if (const UniqueSurface* u = std::get_if<UniqueSurface>(&shape)) {
                int found = -1;
                for (int s = 0; s < sys.size(); ++s)
                    if (surfaces_equal(sys.surfaces[s], u->surface, eps, sys.scale())) {
                        found = s;
                        break;
                    }
                if (found < 0) {
                    sys.surfaces.push_back(u->surface);
                    sys.provenance.emplace_back();
                    found = sys.size() - 1;
                }
                sys.provenance[found].push_back({i, j});
            } else if (const Concyclic* c = std::get_if<Concyclic>(&shape)) {
                sys.skipped.push_back({i, j, SkippedQuadruple::Kind::Concyclic, c->circle});
            } else if (std::holds_alternative<Colinear>(shape)) {
                sys.skipped.push_back({i, j, SkippedQuadruple::Kind::Colinear, std::nullopt});
            } else {
                sys.skipped.push_back({i, j, SkippedQuadruple::Kind::Coincident, std::nullopt});
            }
        }
    }
    return sys;
}

SphereSystem planarity_normalize(const SphereSystem& sys, double eps, uint64_t seed) {
    bool has_plane = false;
    for (const auto& s : sys.surfaces)
        if (std::holds_alternative<Plane>(s)) has_plane = true;
    if (!has_plane) return sys;

    // Bounding box of the sphere part, stretched to cover the configuration.
    Vec3 lo{-1, -1, -1}, hi{1, 1, 1};
    for (const auto& s : sys.surfaces) {
        if (const Sphere* sp = std::get_if<Sphere>(&s)) {
            for (int a = 0; a < 3; ++a) {
                double c = a == 0 ? sp->center.x : a == 1 ? sp->center.y : sp->center.z;
                double& l = a == 0 ? lo.x : a == 1 ? lo.y : lo.z;
                double& h = a == 0 ? hi.x : a == 1 ? hi.y : hi.z;
                l = std::min(l, c - sp->radius);
                h = std::max(h, c + sp->radius);
            }
        }
    }
    double scale = sys.scale();
    Vec3 mid = 0.5 * (lo + hi);
    Vec3 half = 0.5 * (hi - lo) + Vec3{scale, scale, scale};

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double clearance = 1e3 * eps * (1.0 + scale);
    Vec3 center;
    bool found = false;
    for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
        center = mid + Vec3{u(rng) * half.x, u(rng) * half.y, u(rng) * half.z};
        found = true;
        for (const auto& s : sys.surfaces)
            if (std::abs(signed_surface_distance(s, center)) <= clearance) {
                found = false;
                break;
            }
    }
    if (!found)
        throw NormalizationFailed("planarity_normalize: no center clear of all surfaces found");

    InversionSpec inv{center, std::max(1.0, scale)};
    SphereSystem out;
    out.skipped = sys.skipped;
    out.provenance = sys.provenance;
    for (const auto& s : sys.surfaces) {
        SphereOrPlane img = invert_surface(inv, s, eps);
        if (std::holds_alternative<Plane>(img))
            throw NormalizationFailed("planarity_normalize: surface still maps to a plane");
        out.surfaces.push_back(img);
    }
    return out;
}

int IntersectionPoset::dim_of(int id) const {
    if (id < surface_count()) return 2;
    if (id < surface_count() + circle_count()) return 1;
    if (id < elements() - 1) return 0;
    return -1;
}

namespace {

bool circle_on_surface(const Circle3& c, const SphereOrPlane& s, double tol, double eps) {
    if (const Sphere* sp = std::get_if<Sphere>(&s)) {
        double h = dot(c.normal, sp->center - c.center);
        Vec3 axis_offset = sp->center - h * c.normal - c.center;
        return norm(axis_offset) <= tol &&
               std::abs(std::hypot(h, c.radius) - sp->radius) <= tol;
    }
    const Plane& pl = std::get<Plane>(s);
    return norm(cross(pl.normal, c.normal)) <= eps * 10.0 &&
           std::abs(dot(pl.normal, c.center) - pl.offset) <= tol;
}

}  // namespace

IntersectionPoset build_poset(const SphereSystem& sys, double eps) {
    IntersectionPoset p;
    p.surfaces = sys.surfaces;
    const double scale = sys.scale();
    const double tol = eps * (1.0 + scale);

    auto add_circle = [&](const Circle3& c) {
        for (const Circle3& e : p.circles)
            if (circles_equal(e, c, eps, scale)) return;
        p.circles.push_back(c);
    };
    auto add_point = [&](const Vec3& q) {
        for (const Vec3& e : p.points)
            if (dist(e, q) <= tol) return;
        p.points.push_back(q);
    };

    for (size_t i = 0; i < p.surfaces.size(); ++i) {
        for (size_t j = i + 1; j < p.surfaces.size(); ++j) {
            SurfaceIntersection inter = intersect_surfaces(p.surfaces[i], p.surfaces[j], eps);
            if (const IntersectionCircle* c = std::get_if<IntersectionCircle>(&inter))
                add_circle(c->circle);
            else if (const TangentPoint* t = std::get_if<TangentPoint>(&inter))
                add_point(t->point);
        }
    }
    for (const Circle3& c : p.circles) {
        for (const auto& s : p.surfaces) {
            CircleSurfaceIntersection inter = intersect_circle_surface(c, s, eps);
            if (const OnePoint* one = std::get_if<OnePoint>(&inter))
                add_point(one->point);
            else if (const TwoPoints* two = std::get_if<TwoPoints>(&inter)) {
                add_point(two->a);
                add_point(two->b);
            }
        }
    }

    p.circle_surfaces.resize(p.circles.size());
    for (size_t c = 0; c < p.circles.size(); ++c)
        for (size_t s = 0; s < p.surfaces.size(); ++s)
            if (circle_on_surface(p.circles[c], p.surfaces[s], tol, eps))
                p.circle_surfaces[c].push_back(static_cast<int>(s));

    p.point_surfaces.resize(p.points.size());
    p.point_circles.resize(p.points.size());
    for (size_t q = 0; q < p.points.size(); ++q) {
        for (size_t s = 0; s < p.surfaces.size(); ++s)
            if (std::abs(signed_surface_distance(p.surfaces[s], p.points[q])) <= tol)
                p.point_surfaces[q].push_back(static_cast<int>(s));
        for (size_t c = 0; c < p.circles.size(); ++c)
            if (distance_to_circle(p.circles[c], p.points[q]) <= tol)
                p.point_circles[q].push_back(static_cast<int>(c));
        // Transitive closure: every surface of a containing circle contains
        // the point (true geometrically; enforced combinatorially).
        for (int c : p.point_circles[q])
            for (int s : p.circle_surfaces[c])
                if (!std::binary_search(p.point_surfaces[q].begin(), p.point_surfaces[q].end(), s)) {
                    p.point_surfaces[q].insert(
                        std::upper_bound(p.point_surfaces[q].begin(), p.point_surfaces[q].end(), s),
                        s);
                }
    }
    return p;
}

OrderComplex order_complex_below(const IntersectionPoset& p, int id) {
    const int ns = p.surface_count(), nc = p.circle_count(), np = p.point_count();
    OrderComplex out;
    // Local vertex numbering: surfaces first, then circles, then points.
    std::vector<int> surf_v(ns, -1), circ_v(nc, -1), pt_v(np, -1);
    auto add_surf = [&](int s) { if (surf_v[s] < 0) surf_v[s] = out.vertices++; };
    auto add_circ = [&](int c) { if (circ_v[c] < 0) circ_v[c] = out.vertices++; };
    auto add_pt = [&](int q) { if (pt_v[q] < 0) pt_v[q] = out.vertices++; };

    int dim = p.dim_of(id);
    if (dim == 2) return out;  // nothing below a surface
    if (dim == 1) {
        for (int s : p.circle_surfaces[id - ns]) add_surf(s);
        return out;  // antichain of surfaces
    }
    if (dim == 0) {
        int q = id - ns - nc;
        for (int s : p.point_surfaces[q]) add_surf(s);
        for (int c : p.point_circles[q]) add_circ(c);
        for (int c : p.point_circles[q])
            for (int s : p.circle_surfaces[c]) out.edges.push_back({surf_v[s], circ_v[c]});
        return out;
    }
    // Below the top: the whole poset.
    for (int s = 0; s < ns; ++s) add_surf(s);
    for (int c = 0; c < nc; ++c) add_circ(c);
    for (int q = 0; q < np; ++q) add_pt(q);
    for (int c = 0; c < nc; ++c)
        for (int s : p.circle_surfaces[c]) out.edges.push_back({surf_v[s], circ_v[c]});
    for (int q = 0; q < np; ++q) {
        for (int s : p.point_surfaces[q]) out.edges.push_back({surf_v[s], pt_v[q]});
        for (int c : p.point_circles[q]) out.edges.push_back({circ_v[c], pt_v[q]});
        for (int c : p.point_circles[q])
            for (int s : p.circle_surfaces[c])
                out.triangles.push_back({surf_v[s], circ_v[c], pt_v[q]});
    }
    return out;
}

long long region_count_exact(const SphereSystem& sys, double eps) {
    SphereSystem normalized = planarity_normalize(sys, eps);
    IntersectionPoset p = build_poset(normalized, eps);
    long long total = 0;
    for (int id = 0; id < p.elements(); ++id) {
        int d = p.dim_of(id);
        if (d == 0) continue;
        BettiVector b = homology_ranks(order_complex_below(p, id));
        total += b[1 - d];
    }
    return 1 + total;
}

long long region_count_upper(long long m) {
    if (m == 0) return 1;  // no surfaces: the whole space is one region
    return m * (m - 1) * (m - 2) / 3 + 2 * m;
}

long long circles_on_sphere_bound(long long k) {
    if (k == 0) return 1;
    return k * k - k + 2;
}

long long euler_characteristic_generic(long long m) {
    if (m < 1) throw Error("euler_characteristic_generic needs m >= 1");
    return m * (m - 1) * (m - 2) / 3 - m * (m - 1) / 2 + m;
}

long long voxel_region_count(const std::vector<Sphere>& spheres, int resolution) {
    if (spheres.empty()) return 1;
    double rmax = 0.0;
    Vec3 lo = spheres[0].center, hi = spheres[0].center;
    for (const Sphere& s : spheres) {
        rmax = std::max(rmax, s.radius);
        lo.x = std::min(lo.x, s.center.x - s.radius);
        lo.y = std::min(lo.y, s.center.y - s.radius);
        lo.z = std::min(lo.z, s.center.z - s.radius);
        hi.x = std::max(hi.x, s.center.x + s.radius);
        hi.y = std::max(hi.y, s.center.y + s.radius);
        hi.z = std::max(hi.z, s.center.z + s.radius);
    }
    const double margin = 2.0 * rmax;  // at least one full diameter of padding
    lo -= Vec3{margin, margin, margin};
    hi += Vec3{margin, margin, margin};
    Vec3 ext = hi - lo;
    double h = std::max({ext.x, ext.y, ext.z}) / resolution;
    int nx = static_cast<int>(std::ceil(ext.x / h));
    int ny = static_cast<int>(std::ceil(ext.y / h));
    int nz = static_cast<int>(std::ceil(ext.z / h));
    const double diag = h * std::sqrt(3.0);
    const size_t total = static_cast<size_t>(nx) * ny * nz;
    auto index = [&](int i, int j, int k) {
        return (static_cast<size_t>(i) * ny + j) * nz + k;
    };
    auto center_of = [&](int i, int j, int k) {
        return lo + Vec3{h * (i + 0.5), h * (j + 0.5), h * (k + 0.5)};
    };

    const int m = static_cast<int>(spheres.size());
    // Each voxel center is labeled by the side of every sphere it lies on; two
    // adjacent voxels belong to the same complementary region exactly when no
    // sphere separates them, i.e. when their labels agree.  Components are
    // grown over all voxels under that label-respecting adjacency, but a
    // component only counts if it owns at least one center farther than one
    // voxel diagonal from every sphere: anything thinner is below grid scale.
    std::vector<signed char> side_cur(m);
    auto load_sides = [&](const Vec3& x) {
        bool clear = true;
        for (int s = 0; s < m; ++s) {
            double d = dist(x, spheres[s].center);
            side_cur[s] = d < spheres[s].radius ? 1 : 0;
            if (std::abs(d - spheres[s].radius) <= diag) clear = false;
        }
        return clear;
    };
    auto matches_sides = [&](const Vec3& x) {
        for (int s = 0; s < m; ++s) {
            bool inside = dist(x, spheres[s].center) < spheres[s].radius;
            if (inside != (side_cur[s] == 1)) return false;
        }
        return true;
    };

    std::vector<bool> visited(total, false);
    long long interior_components = 0;
    bool any_boundary_component = false;
    std::deque<std::array<int, 3>> queue;
    for (int i0 = 0; i0 < nx; ++i0)
        for (int j0 = 0; j0 < ny; ++j0)
            for (int k0 = 0; k0 < nz; ++k0) {
                size_t id0 = index(i0, j0, k0);
                if (visited[id0]) continue;
                bool touches_boundary = false;
                bool has_clear_voxel = false;
                visited[id0] = true;
                queue.push_back({i0, j0, k0});
                while (!queue.empty()) {
                    auto [i, j, k] = queue.front();
                    queue.pop_front();
                    if (load_sides(center_of(i, j, k))) has_clear_voxel = true;
                    if (i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1)
                        touches_boundary = true;
                    static const int d6[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                                 {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
                    for (const auto& d : d6) {
                        int ni = i + d[0], nj = j + d[1], nk = k + d[2];
                        if (ni < 0 || nj < 0 || nk < 0 || ni >= nx || nj >= ny || nk >= nz)
                            continue;
                        size_t nid = index(ni, nj, nk);
                        if (!visited[nid] && matches_sides(center_of(ni, nj, nk))) {
                            visited[nid] = true;
                            queue.push_back({ni, nj, nk});
                        }
                    }
                }
                if (!has_clear_voxel) continue;
                if (touches_boundary)
                    any_boundary_component = true;
                else
                    ++interior_components;
            }
    return interior_components + (any_boundary_component ? 1 : 0);
}

long long voxel_region_count_stable(const SphereSystem& sys, int start, int cap) {
    std::vector<Sphere> spheres;
    for (const auto& s : sys.surfaces) {
        if (!std::holds_alternative<Sphere>(s))
            throw Error("voxel_region_count_stable: planes present; normalize first");
        spheres.push_back(std::get<Sphere>(s));
    }
    long long prev = voxel_region_count(spheres, start);
    for (int res = start * 2; res <= cap; res *= 2) {
        long long cur = voxel_region_count(spheres, res);
        if (cur == prev) return cur;
        prev = cur;
    }
    throw Unresolved("voxel_region_count_stable: counts did not stabilize by resolution " +
                     std::to_string(cap));
}

SphereSystem parse_sphere_system(const std::string& text) {
    SphereSystem sys;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (size_t hpos = line.find('#'); hpos != std::string::npos) line.resize(hpos);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        double a, b, c, d;
        if (!(ls >> a >> b >> c >> d))
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": expected four numbers after '" + tag + "'");
        std::string trailing;
        if (ls >> trailing)
            throw ParseError(line_no, "line " + std::to_string(line_no) + ": trailing content");
        if (tag == "S") {
            if (d <= 0)
                throw ParseError(line_no,
                                 "line " + std::to_string(line_no) + ": sphere radius must be > 0");
            sys.surfaces.push_back(Sphere{{a, b, c}, d});
        } else if (tag == "P") {
            double n = std::sqrt(a * a + b * b + c * c);
            if (n == 0)
                throw ParseError(line_no,
                                 "line " + std::to_string(line_no) + ": zero plane normal");
            sys.surfaces.push_back(canonical_plane({a, b, c}, d));
        } else {
            throw ParseError(line_no, "line " + std::to_string(line_no) + ": unknown tag '" + tag +
                                          "' (want S or P)");
        }
        sys.provenance.emplace_back();
    }
    return sys;
}

SphereSystem read_sphere_system(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_sphere_system(ss.str());
}

std::string sphere_system_to_text(const SphereSystem& sys) {
    std::string out;
    char buf[160];
    for (const auto& s : sys.surfaces) {
        if (const Sphere* sp = std::get_if<Sphere>(&s))
            std::snprintf(buf, sizeof buf, "S %.17g %.17g %.17g %.17g\n", sp->center.x,
                          sp->center.y, sp->center.z, sp->radius);
        else {
            const Plane& pl = std::get<Plane>(s);
            std::snprintf(buf, sizeof buf, "P %.17g %.17g %.17g %.17g\n", pl.normal.x,
                          pl.normal.y, pl.normal.z, pl.offset);
        }
        out += buf;
    }
    return out;
}

void write_sphere_system(const std::string& path, const SphereSystem& sys) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << sphere_system_to_text(sys);
    if (!f) throw Error("write to '" + path + "' failed");
}

}  // namespace polyinv
