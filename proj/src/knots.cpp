#include "polyinv/knots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "polyinv/errors.hpp"

namespace polyinv {

int KnotDiagram::writhe() const {
    return std::accumulate(signs.begin(), signs.end(), 0);
}

namespace {

// Positions (index into visits) of the over and under visit per crossing.
struct VisitIndex {
    std::vector<int> over;
    std::vector<int> under;
};

VisitIndex index_visits(const KnotDiagram& d) {
    VisitIndex ix;
    ix.over.assign(d.crossings(), -1);
    ix.under.assign(d.crossings(), -1);
    for (size_t k = 0; k < d.visits.size(); ++k) {
        const CrossingVisit& v = d.visits[k];
        (v.over ? ix.over : ix.under)[v.crossing] = static_cast<int>(k);
    }
    return ix;
}

}  // namespace

std::array<int, 4> KnotDiagram::pd_tuple(int crossing) const {
    VisitIndex ix = index_visits(*this);
    int m = static_cast<int>(visits.size());
    auto in_label = [&](int k) { return (k - 1 + m) % m + 1; };
    auto out_label = [&](int k) { return k % m + 1; };
    int ko = ix.over[crossing], ku = ix.under[crossing];
    if (signs[crossing] > 0)
        return {in_label(ku), out_label(ko), out_label(ku), in_label(ko)};
    return {in_label(ku), in_label(ko), out_label(ku), out_label(ko)};
}

void validate_diagram(const KnotDiagram& d) {
    int c = d.crossings();
    if (static_cast<int>(d.visits.size()) != 2 * c)
        throw Error("diagram: expected " + std::to_string(2 * c) + " visits");
    std::vector<int> overs(c, 0), unders(c, 0);
    for (const CrossingVisit& v : d.visits) {
        if (v.crossing < 0 || v.crossing >= c) throw Error("diagram: crossing id out of range");
        (v.over ? overs : unders)[v.crossing]++;
    }
    for (int x = 0; x < c; ++x)
        if (overs[x] != 1 || unders[x] != 1)
            throw Error("diagram: crossing " + std::to_string(x) +
                        " must be visited once over and once under");
    for (int s : d.signs)
        if (s != 1 && s != -1) throw Error("diagram: signs must be +-1");
    if (d.free_loops < 0) throw Error("diagram: negative free loop count");
}

KnotDiagram mirror_diagram(const KnotDiagram& d) {
    KnotDiagram m = d;
    for (CrossingVisit& v : m.visits) v.over = !v.over;
    for (int& s : m.signs) s = -s;
    return m;
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LaurentPolynomial kauffman_bracket(const KnotDiagram& d) {
    validate_diagram(d);
    int c = d.crossings();
    if (c > 24) throw StateExplosion(c, "bracket: " + std::to_string(c) + " crossings exceeds 24");
    const LaurentPolynomial delta =
        LaurentPolynomial::monomial(-1, 2) + LaurentPolynomial::monomial(-1, -2);
    // delta^j for every possible loop count.
    std::vector<LaurentPolynomial> dpow = {LaurentPolynomial::one()};
    for (int j = 1; j <= c + 1 + d.free_loops; ++j) dpow.push_back(dpow.back() * delta);

    if (c == 0) return dpow[d.free_loops];  // single loop plus free ones

    VisitIndex ix = index_visits(d);
    int m = 2 * c;
    auto in_arc = [&](int k) { return (k - 1 + m) % m; };
    LaurentPolynomial bracket;
    for (uint32_t state = 0; state < (1u << c); ++state) {
        Dsu dsu(m);
        int a_count = 0;
        for (int x = 0; x < c; ++x) {
            bool a_smoothing = (state >> x & 1u) == 0;
            if (a_smoothing) ++a_count;
            int ko = ix.over[x], ku = ix.under[x];
            // Positive crossing, A-regions swept under->over counterclockwise:
            // A joins over-out with under-in and over-in with under-out.
            bool join_out_in = (d.signs[x] > 0) == a_smoothing;
            if (join_out_in) {
                dsu.unite(ko, in_arc(ku));
                dsu.unite(in_arc(ko), ku);
            } else {
                dsu.unite(ko, ku);
                dsu.unite(in_arc(ko), in_arc(ku));
            }
        }
        int loops = 0;
        for (int arc = 0; arc < m; ++arc)
            if (dsu.find(arc) == arc) ++loops;
        int exp = a_count - (c - a_count);
        bracket = bracket + LaurentPolynomial::monomial(1, exp) * dpow[loops - 1 + d.free_loops];
    }
    return bracket;
}

LaurentPolynomial jones_from_diagram(const KnotDiagram& d) {
    int w = d.writhe();
    long long sign = (w % 2 == 0) ? 1 : -1;  // (-A)^{-3w} = (-1)^w A^{-3w}
    return LaurentPolynomial::monomial(sign, -3 * w) * kauffman_bracket(d);
}

long long knot_determinant(const LaurentPolynomial& jones) {
    std::complex<double> a = std::polar(1.0, M_PI / 4.0);
    double v = std::abs(jones.eval(a));
    long long r = std::llround(v);
    if (std::abs(v - static_cast<double>(r)) > 1e-6 * (1.0 + v))
        throw Error("determinant: evaluation is not near an integer");
    return r;
}

// ---------------------------------------------------------------------------
// Projection to a diagram.

namespace {

struct Vec2 {
    double x = 0, y = 0;
};
Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }
double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
double dot2(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
double norm2d(const Vec2& v) { return std::hypot(v.x, v.y); }

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = dot2(ab, ab);
    double t = len2 > 0 ? std::clamp(dot2(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    return norm2d(p - (a + t * ab));
}

struct RawCrossing {
    int edge_a, edge_b;   // edge_a < edge_b
    double s, t;          // parameters along the two edges
    Vec2 point;
    double za, zb;        // depths (larger = closer to the viewer)
};

}  // namespace

KnotDiagram project_along(const Polygon& k, const Vec3& eye_axis, double eps) {
    validate_polygon(k, eps);
    const int n = k.size();
    Vec3 e3 = normalized(eye_axis);
    Vec3 e1 = any_orthogonal(e3);
    Vec3 e2 = cross(e3, e1);  // (e1, e2, e3) right-handed

    // Scale-free coordinates: normalize by the polygon diameter.
    double diam = polygon_diameter(k);
    std::vector<Vec2> u(n);
    std::vector<double> z(n);
    for (int i = 0; i < n; ++i) {
        Vec3 v = k.vertices[i] / diam;
        u[i] = {dot(v, e1), dot(v, e2)};
        z[i] = dot(v, e3);
    }
    const double gap = 1e3 * eps;  // genericity margin (normalized units)

    auto edge2 = [&](int i) { return u[(i + 1) % n] - u[i]; };
    auto edge_len3 = [&](int i) { return dist(k.vertices[i], k.vertices[(i + 1) % n]) / diam; };

    for (int i = 0; i < n; ++i)
        if (norm2d(edge2(i)) <= gap * edge_len3(i))
            throw NoGenericProjection("projection: edge " + std::to_string(i) +
                                      " nearly parallel to the viewing axis");

    // No vertex may project onto an edge it does not bound.
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < n; ++i) {
            if (i == v || (i + 1) % n == v) continue;
            if (point_segment_distance(u[v], u[i], u[(i + 1) % n]) <= gap)
                throw NoGenericProjection("projection: vertex over a foreign edge");
        }

    std::vector<RawCrossing> crossings;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) continue;
            Vec2 a = edge2(i), b = edge2(j), w = u[j] - u[i];
            double dnm = cross2(a, b);
            if (std::abs(dnm) <= gap * norm2d(a) * norm2d(b)) {
                // Near-parallel projected edges: safe only when well apart.
                double sep = std::min({point_segment_distance(u[i], u[j], u[(j + 1) % n]),
                                       point_segment_distance(u[(i + 1) % n], u[j], u[(j + 1) % n]),
                                       point_segment_distance(u[j], u[i], u[(i + 1) % n]),
                                       point_segment_distance(u[(j + 1) % n], u[i], u[(i + 1) % n])});
                if (sep <= gap)
                    throw NoGenericProjection("projection: near-parallel edges too close");
                continue;
            }
            double s = cross2(w, b) / dnm;
            double t = cross2(w, a) / dnm;
            if (s <= 0 || s >= 1 || t <= 0 || t >= 1) {
                // A miss, but reject grazing passes near endpoints.
                double sc = std::clamp(s, 0.0, 1.0), tc = std::clamp(t, 0.0, 1.0);
                Vec2 pa = u[i] + sc * a, pb = u[j] + tc * b;
                if (norm2d(pa - pb) <= gap)
                    throw NoGenericProjection("projection: crossing at an edge endpoint");
                continue;
            }
            Vec2 p = u[i] + s * a;
            double end_clearance = std::min({norm2d(p - u[i]), norm2d(p - u[(i + 1) % n]),
                                             norm2d(p - u[j]), norm2d(p - u[(j + 1) % n])});
            if (end_clearance <= gap)
                throw NoGenericProjection("projection: crossing too close to a vertex");
            double za = z[i] + s * (z[(i + 1) % n] - z[i]);
            double zb = z[j] + t * (z[(j + 1) % n] - z[j]);
            if (std::abs(za - zb) <= gap)
                throw NoGenericProjection("projection: depth gap too small at a crossing");
            crossings.push_back({i, j, s, t, p, za, zb});
        }
    }
    for (size_t x = 0; x < crossings.size(); ++x)
        for (size_t y = x + 1; y < crossings.size(); ++y)
            if (norm2d(crossings[x].point - crossings[y].point) <= gap)
                throw NoGenericProjection("projection: two crossings nearly coincide");

    // Order the 2c visits along the curve and assign ids in first-visit order.
    struct Visit {
        int edge;
        double param;
        int raw;  // index into crossings
        bool first;  // visiting via edge_a
    };
    std::vector<Visit> visits;
    for (size_t x = 0; x < crossings.size(); ++x) {
        visits.push_back({crossings[x].edge_a, crossings[x].s, static_cast<int>(x), true});
        visits.push_back({crossings[x].edge_b, crossings[x].t, static_cast<int>(x), false});
    }
    std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) {
        return a.edge != b.edge ? a.edge < b.edge : a.param < b.param;
    });

    KnotDiagram d;
    std::vector<int> id_of(crossings.size(), -1);
    int next_id = 0;
    for (const Visit& v : visits)
        if (id_of[v.raw] < 0) id_of[v.raw] = next_id++;
    d.signs.assign(crossings.size(), 0);
    for (const Visit& v : visits) {
        const RawCrossing& rc = crossings[v.raw];
        bool over = v.first ? rc.za > rc.zb : rc.zb > rc.za;
        d.visits.push_back({id_of[v.raw], over});
    }
    for (size_t x = 0; x < crossings.size(); ++x) {
        const RawCrossing& rc = crossings[x];
        Vec2 o = rc.za > rc.zb ? edge2(rc.edge_a) : edge2(rc.edge_b);
        Vec2 un = rc.za > rc.zb ? edge2(rc.edge_b) : edge2(rc.edge_a);
        d.signs[id_of[x]] = cross2(o, un) > 0 ? 1 : -1;
    }
    validate_diagram(d);
    return d;
}

ProjectionResult project_to_diagram(const Polygon& k, uint64_t seed, double eps) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vec3 axis{gauss(rng), gauss(rng), gauss(rng)};
        double nn = norm(axis);
        if (nn < 1e-6) continue;
        axis = axis / nn;
        try {
            return {project_along(k, axis, eps), axis};
        } catch (const NoGenericProjection&) {
            continue;
        }
    }
    throw NoGenericProjection("projection: no generic direction after 1000 attempts");
}

// ---------------------------------------------------------------------------
// Reference diagrams and classification.

KnotDiagram braid_closure_diagram(const std::vector<std::pair<int, int>>& word, int strands) {
    const int len = static_cast<int>(word.size());
    for (const auto& [g, s] : word)
        if (g < 1 || g >= strands || (s != 1 && s != -1))
            throw Error("braid: bad letter");
    // Follow the closure starting at the top of strand position 1.
    std::vector<std::pair<int, bool>> raw_visits;  // (letter index, over?)
    int pos = 1;
    int passes = 0;
    do {
        for (int l = 0; l < len; ++l) {
            const auto& [g, s] = word[l];
            if (pos != g && pos != g + 1) continue;
            bool entered_left = pos == g;
            // Positive letter: the right-entering strand passes over (this
            // makes the letter's crossing sign +1 in the page convention).
            bool over = s > 0 ? !entered_left : entered_left;
            raw_visits.push_back({l, over});
            pos = entered_left ? g + 1 : g;
        }
        ++passes;
    } while (pos != 1 && passes <= strands);
    if (static_cast<int>(raw_visits.size()) != 2 * len)
        throw Error("braid: closure is not a single knot component");

    KnotDiagram d;
    std::vector<int> id_of(len, -1);
    int next_id = 0;
    for (const auto& [l, over] : raw_visits)
        if (id_of[l] < 0) id_of[l] = next_id++;
    d.signs.assign(len, 0);
    for (const auto& [l, over] : raw_visits) d.visits.push_back({id_of[l], over});
    for (int l = 0; l < len; ++l) d.signs[id_of[l]] = word[l].second;
    validate_diagram(d);
    return d;
}

namespace {

KnotDiagram gauss_diagram(const std::vector<std::pair<int, int>>& code, std::vector<int> signs) {
    // code entries: (crossing id, +1 over / -1 under)
    KnotDiagram d;
    for (const auto& [x, o] : code) d.visits.push_back({x, o > 0});
    d.signs = std::move(signs);
    validate_diagram(d);
    return d;
}

std::vector<ReferenceKnot> build_reference_table() {
    std::vector<ReferenceKnot> refs;
    auto add = [&](const std::string& label, const KnotDiagram& d) {
        LaurentPolynomial j = jones_from_diagram(d);
        refs.push_back({label, d, j, knot_determinant(j)});
    };
    auto add_with_mirror = [&](const std::string& label, const KnotDiagram& d) {
        add(label, d);
        add(mirror_label(label), mirror_diagram(d));
    };

    add("unknot", KnotDiagram{});
    // Closure of the positive 2-strand braid with 3 letters (all crossings
    // positive; Jones has positive exponents in t = A^-4).
    add_with_mirror("trefoil_RH",
                    gauss_diagram({{0, -1}, {1, 1}, {2, -1}, {0, 1}, {1, -1}, {2, 1}}, {1, 1, 1}));
    // Closure of (s1 s2^-1)^2 on 3 strands; amphichiral, so no mirror entry.
    add("figure_eight",
        gauss_diagram({{0, -1}, {1, 1}, {2, -1}, {0, 1}, {3, -1}, {2, 1}, {1, -1}, {3, 1}},
                      {1, -1, -1, 1}));
    // Closure of the positive 2-strand braid with 5 letters.
    add_with_mirror("5_1", gauss_diagram({{0, -1}, {1, 1}, {2, -1}, {3, 1}, {4, -1},
                                          {0, 1}, {1, -1}, {2, 1}, {3, -1}, {4, 1}},
                                         {1, 1, 1, 1, 1}));
    // Twist knot with determinant 7: closure of s1^2 s2^2 s1 s2^-1 (verified
    // at startup by determinant and Jones span below).
    add_with_mirror("5_2", braid_closure_diagram({{1, 1}, {1, 1}, {2, 1}, {2, 1}, {1, 1}, {2, -1}}, 3));

    // Convention anchors: these fail loudly if any smoothing/sign convention
    // drifts. Right-handed trefoil: V = t + t^3 - t^4 at t = A^-4.
    LaurentPolynomial rh = LaurentPolynomial::monomial(-1, -16) +
                           LaurentPolynomial::monomial(1, -12) + LaurentPolynomial::monomial(1, -4);
    for (const ReferenceKnot& r : refs) {
        if (r.label == "trefoil_RH" && r.jones != rh)
            throw Error("reference table: trefoil convention drift");
        if (r.label == "5_2" &&
            (r.determinant != 7 || (r.jones.max_exp() - r.jones.min_exp()) != 20))
            throw Error("reference table: 5_2 diagram is wrong");
    }
    return refs;
}

}  // namespace

const std::vector<ReferenceKnot>& reference_table() {
    static const std::vector<ReferenceKnot> table = build_reference_table();
    return table;
}

std::string mirror_label(const std::string& label) {
    if (label == "trefoil_RH") return "trefoil_LH";
    if (label == "trefoil_LH") return "trefoil_RH";
    if (label == "unknot" || label == "figure_eight" || label == "unknown") return label;
    if (!label.empty() && label.back() == '*') return label.substr(0, label.size() - 1);
    return label + "*";
}

KnotClass classify_diagram(const KnotDiagram& d) {
    KnotClass out;
    out.jones = jones_from_diagram(d);
    out.determinant = knot_determinant(out.jones);
    out.crossings = d.crossings();
    out.writhe = d.writhe();
    out.label = "unknown";
    for (const ReferenceKnot& r : reference_table()) {
        if (r.determinant != out.determinant) continue;  // cheap pre-filter
        if (r.jones == out.jones) {
            out.label = r.label;
            break;
        }
    }
    return out;
}

KnotClass classify(const Polygon& k, uint64_t seed, double eps) {
    ProjectionResult pr = project_to_diagram(k, seed, eps);
    KnotClass out = classify_diagram(pr.diagram);
    out.view = pr.view;
    out.seed = seed;
    return out;
}

}  // namespace polyinv
