#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "polyinv/arrangement.hpp"
#include "polyinv/errors.hpp"

using namespace polyinv;

namespace {

// Exercises the exact counter, the bound, and the voxel oracle on one system.
void check_agreement(const std::vector<Sphere>& spheres, long long expected) {
    SphereSystem sys = oracles::as_system(spheres);
    long long exact = region_count_exact(sys);
    CHECK(exact == expected);
    CHECK(exact <= region_count_upper(sys.size()));
    CHECK(voxel_region_count_stable(sys) == expected);
}

}  // namespace

TEST_CASE("closed-form bounds") {
    CHECK(region_count_upper(0) == 1);
    CHECK(region_count_upper(1) == 2);
    CHECK(region_count_upper(2) == 4);
    CHECK(region_count_upper(3) == 8);
    CHECK(region_count_upper(4) == 16);
    CHECK(region_count_upper(5) == 30);
    CHECK(region_count_upper(14) == 756);
    CHECK(circles_on_sphere_bound(0) == 1);
    CHECK(circles_on_sphere_bound(1) == 2);
    CHECK(circles_on_sphere_bound(2) == 4);
    CHECK(circles_on_sphere_bound(5) == 22);
    CHECK(euler_characteristic_generic(1) == 1);
    CHECK(euler_characteristic_generic(3) == 2);
    CHECK(euler_characteristic_generic(4) == 6);
}

TEST_CASE("hand-counted sphere configurations") {
    check_agreement({{{0, 0, 0}, 1.0}}, 2);
    check_agreement({{{0, 0, 0}, 1.0}, {{5, 0, 0}, 1.0}}, 3);           // disjoint
    check_agreement({{{0, 0, 0}, 2.0}, {{0.3, 0, 0}, 0.5}}, 3);         // nested
    check_agreement({{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}}, 4);           // transverse
    check_agreement({{{0, 0, 0}, 1.0}, {{2, 0, 0}, 1.0}}, 3);           // externally tangent
    check_agreement({{{0, 0, 0}, 2.0}, {{1, 0, 0}, 1.0}}, 3);           // internally tangent
    // Three mutually tangent spheres: no circles, three tangent points.
    check_agreement({{{0, 0, 0}, 1.0}, {{2, 0, 0}, 1.0}, {{1, std::sqrt(3.0), 0}, 1.0}}, 4);
    // Three spheres through one shared circle (pencil): six regions.
    check_agreement({{{0, 0, 0}, 1.0},
                     {{0, 0, 1}, std::sqrt(2.0)},
                     {{0, 0, -1}, std::sqrt(2.0)}},
                    6);
    // Two pencil members plus a transverse third: generic again, 8 regions.
    check_agreement({{{0, 0, 0}, 1.0}, {{0, 0, 1}, std::sqrt(2.0)}, {{1.2, 0, 0}, 1.0}}, 8);
    // The documented three mutually generic unit spheres.
    check_agreement({{{0, 0, 0}, 1.0}, {{1, 0, 0}, 1.0}, {{0.5, 0.8, 0}, 1.0}}, 8);
    check_agreement(oracles::nine_component_spheres(), 9);
}

TEST_CASE("nine-component configuration is what it claims to be") {
    std::vector<Sphere> s = oracles::nine_component_spheres();
    // Tangency of spheres 3 and 4, clearance from 1 and 2.
    CHECK(dist(s[2].center, s[3].center) == doctest::Approx(s[2].radius + s[3].radius));
    CHECK(dist(s[0].center, s[3].center) > s[0].radius + s[3].radius + 0.5);
    CHECK(dist(s[1].center, s[3].center) > s[1].radius + s[3].radius + 0.5);
    // First three pairwise transverse with a healthy margin.
    CHECK(oracles::generic_configuration({s[0], s[1], s[2]}, 0.05));
}

TEST_CASE("adding a disjoint sphere adds exactly one region") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Sphere> s = oracles::random_generic_spheres(rng, 3);
        SphereSystem sys = oracles::as_system(s);
        long long before = region_count_exact(sys);
        s.push_back({{50.0 + trial, 0, 0}, 1.0});
        CHECK(region_count_exact(oracles::as_system(s)) == before + 1);
    }
}

TEST_CASE("generic configurations reach the maximum with the expected census") {
    std::mt19937_64 rng(42);
    for (int m = 2; m <= 5; ++m) {
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Sphere> s = oracles::random_generic_spheres(rng, m);
            SphereSystem sys = oracles::as_system(s);
            CHECK(region_count_exact(sys) == region_count_upper(m));
            IntersectionPoset poset = build_poset(sys);
            CHECK(poset.surface_count() == m);
            CHECK(poset.circle_count() == m * (m - 1) / 2);
            CHECK(poset.point_count() == m * (m - 1) * (m - 2) / 3);
            OrderComplex below_top = order_complex_below(poset, poset.top());
            CHECK(euler_characteristic(below_top) == euler_characteristic_generic(m));
        }
    }
}

TEST_CASE("voxel oracle stabilizes on a four-sphere Venn configuration") {
    // Unit spheres on a regular tetrahedron of edge 1.15: every one of the
    // sixteen inside/outside patterns is realized by a comfortably thick cell.
    const double a = 1.15;
    std::vector<Sphere> venn = {{{0, 0, 0}, 1.0},
                                {{a, 0, 0}, 1.0},
                                {{a / 2, a * std::sqrt(3.0) / 2, 0}, 1.0},
                                {{a / 2, a * std::sqrt(3.0) / 6, a * std::sqrt(2.0 / 3.0)}, 1.0}};
    SphereSystem sys = oracles::as_system(venn);
    CHECK(region_count_exact(sys) == 16);
    CHECK(voxel_region_count_stable(sys) == 16);
    CHECK(voxel_region_count({{{0, 0, 0}, 1.0}}, 32) == 2);
    CHECK(voxel_region_count({{{0, 0, 0}, 1.0}}, 64) == 2);
    CHECK(voxel_region_count({}, 32) == 1);
}

TEST_CASE("poset structure on the pencil and tangent configurations") {
    // Pencil: one circle shared by all three spheres, no points.
    SphereSystem pencil = oracles::as_system({{{0, 0, 0}, 1.0},
                                              {{0, 0, 1}, std::sqrt(2.0)},
                                              {{0, 0, -1}, std::sqrt(2.0)}});
    IntersectionPoset p1 = build_poset(pencil);
    CHECK(p1.circle_count() == 1);
    CHECK(p1.point_count() == 0);
    CHECK(p1.circle_surfaces[0].size() == 3);

    // Tangent pair: a single point, no circles.
    IntersectionPoset p2 =
        build_poset(oracles::as_system({{{0, 0, 0}, 1.0}, {{2, 0, 0}, 1.0}}));
    CHECK(p2.circle_count() == 0);
    CHECK(p2.point_count() == 1);
    CHECK(p2.point_surfaces[0].size() == 2);

    CHECK(p2.dim_of(0) == 2);
    CHECK(p2.dim_of(p2.surface_count()) == 0);  // the tangent point
    CHECK(p2.dim_of(p2.top()) == -1);
}

TEST_CASE("sphere system of the seven-vertex knot") {
    Polygon k = oracles::heptagon_fig8();
    SphereSystem sys = sphere_system(k);
    CHECK(sys.size() == 14);
    CHECK(sys.skipped.empty());
    CHECK(sys.size() <= 7 * (7 - 3) / 2);

    // Every surface passes through the four endpoints that define it.
    for (int i = 0; i < sys.size(); ++i) {
        REQUIRE_FALSE(sys.provenance[i].empty());
        for (auto [ea, eb] : sys.provenance[i]) {
            for (int v : {ea, (ea + 1) % 7, eb, (eb + 1) % 7}) {
                CHECK(std::abs(signed_surface_distance(sys.surfaces[i], k.vertices[v])) <=
                      1e-6 * sys.scale());
            }
        }
    }
    CHECK(region_count_exact(sys) == 503);
}

TEST_CASE("triangles have no non-adjacent pairs and an empty system") {
    SphereSystem sys = sphere_system({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}});
    CHECK(sys.size() == 0);
    CHECK(region_count_exact(sys) == 1);
}

TEST_CASE("inscribed polygons collapse to a single sphere") {
    SphereSystem hex = sphere_system(oracles::hexagon_trefoil());
    REQUIRE(hex.size() == 1);
    REQUIRE(std::holds_alternative<Sphere>(hex.surfaces[0]));
    CHECK(dist(std::get<Sphere>(hex.surfaces[0]).center, {0, 0, 0}) <= 1e-9);
    CHECK(std::get<Sphere>(hex.surfaces[0]).radius == doctest::Approx(1.0));
    CHECK(region_count_exact(hex) == 2);

    SphereSystem deca = sphere_system(oracles::inscribed_unknot_10());
    REQUIRE(deca.size() == 1);
    CHECK(std::get<Sphere>(deca.surfaces[0]).radius == doctest::Approx(1.0));
}

TEST_CASE("skipped quadruples are detected and carried") {
    // Hexagon with two colinear non-adjacent edges (0 and 3 share the x-axis).
    Polygon colinear{{{0, 0, 0},
                      {1, 0, 0},
                      {2, 3, 1},
                      {3, 0, 0},
                      {2, 0, 0},
                      {1, -3, 1}}};
    // Edges: 0:(v0,v1) on the axis, 3:(v3,v4) on the axis, non-adjacent.
    SphereSystem sys = sphere_system(colinear);
    bool found_colinear = false;
    for (const SkippedQuadruple& q : sys.skipped)
        if (q.kind == SkippedQuadruple::Kind::Colinear) {
            found_colinear = true;
            CHECK(q.edge_a == 0);
            CHECK(q.edge_b == 3);
            CHECK_FALSE(q.circle.has_value());
        }
    CHECK(found_colinear);

    // Square-based hexagon with a concyclic non-adjacent quadruple.
    Polygon concyclic{{{1, 0, 0},
                       {0, 1, 0},
                       {-2, 1, 3},
                       {-1, 0, 0},
                       {0, -1, 0},
                       {2, -1, 3}}};
    // Edges 0:(v0,v1) and 3:(v3,v4) have endpoints on the unit circle in z=0.
    SphereSystem sys2 = sphere_system(concyclic);
    bool found_concyclic = false;
    for (const SkippedQuadruple& q : sys2.skipped)
        if (q.kind == SkippedQuadruple::Kind::Concyclic && q.edge_a == 0 && q.edge_b == 3) {
            found_concyclic = true;
            REQUIRE(q.circle.has_value());
            CHECK(q.circle->radius == doctest::Approx(1.0));
            CHECK(dist(q.circle->center, {0, 0, 0}) <= 1e-9);
        }
    CHECK(found_concyclic);

    // Hexagon revisiting a vertex: edges 2 and 5 share the endpoint v0 = v3.
    Polygon pinch{{{0, 0, 0},
                   {2, 0, 1},
                   {2, 2, 0},
                   {0, 0, 0.0000000001},
                   {-2, 0, 1},
                   {-2, -2, 0}}};
    pinch.vertices[3] = pinch.vertices[0];
    SphereSystem sys3 = sphere_system(pinch);
    bool found_coincident = false;
    for (const SkippedQuadruple& q : sys3.skipped)
        if (q.kind == SkippedQuadruple::Kind::Coincident) found_coincident = true;
    CHECK(found_coincident);
}

TEST_CASE("plane-bearing systems are normalized before counting") {
    // A polygon with a planar non-adjacent quadruple produces a plane.
    Polygon k{{{1, 0, 0}, {0, 1, 0}, {-2, 1, 3}, {-1, 0, 0}, {0, -3, 0}, {2, -1, 3}}};
    SphereSystem sys = sphere_system(k);
    bool has_plane = false;
    for (const SphereOrPlane& s : sys.surfaces)
        if (std::holds_alternative<Plane>(s)) has_plane = true;
    if (has_plane) {
        SphereSystem normalized = planarity_normalize(sys);
        for (const SphereOrPlane& s : normalized.surfaces)
            CHECK(std::holds_alternative<Sphere>(s));
        CHECK(normalized.size() == sys.size());
    }
    CHECK(region_count_exact(sys) >= 1);  // works either way

    // Direct mixed system: z=0 plane and the unit sphere -> 4 regions.
    SphereSystem mixed;
    mixed.surfaces.push_back(canonical_plane({0, 0, 1}, 0.0));
    mixed.surfaces.push_back(Sphere{{0, 0, 0}, 1.0});
    mixed.provenance.assign(2, {});
    CHECK(region_count_exact(mixed) == 4);
    SphereSystem norm = planarity_normalize(mixed);
    REQUIRE(norm.size() == 2);
    for (const SphereOrPlane& s : norm.surfaces) CHECK(std::holds_alternative<Sphere>(s));
    CHECK(voxel_region_count_stable(norm) == 4);
    CHECK_THROWS(voxel_region_count_stable(mixed));

    // Two parallel planes: three slabs.
    SphereSystem slabs;
    slabs.surfaces.push_back(canonical_plane({0, 0, 1}, 0.0));
    slabs.surfaces.push_back(canonical_plane({0, 0, 1}, 1.0));
    slabs.provenance.assign(2, {});
    CHECK(region_count_exact(slabs) == 3);
}

TEST_CASE("sphere-system text format round-trips") {
    SphereSystem sys;
    sys.surfaces.push_back(Sphere{{1, 2, 3}, 4.0});
    sys.surfaces.push_back(canonical_plane({0, 0, 1}, 2.5));
    sys.provenance.assign(2, {});
    std::string text = sphere_system_to_text(sys);
    SphereSystem back = parse_sphere_system(text);
    REQUIRE(back.size() == 2);
    CHECK(surfaces_equal(back.surfaces[0], sys.surfaces[0]));
    CHECK(surfaces_equal(back.surfaces[1], sys.surfaces[1]));
    CHECK_THROWS_AS(parse_sphere_system("S 1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse_sphere_system("Q 1 2 3 4\n"), ParseError);
    SphereSystem commented = parse_sphere_system("# header\nS 0 0 0 1\n\nP 0 0 1 0 # z=0\n");
    CHECK(commented.size() == 2);
}

TEST_CASE("degenerate systems stay within the bound") {
    std::vector<std::vector<Sphere>> degenerate = {
        {{{0, 0, 0}, 1.0}, {{2, 0, 0}, 1.0}},                                    // tangent
        {{{0, 0, 0}, 2.0}, {{0.3, 0, 0}, 0.5}},                                  // nested
        {{{0, 0, 0}, 1.0}, {{0, 0, 1}, std::sqrt(2.0)}, {{0, 0, -1}, std::sqrt(2.0)}},
        oracles::nine_component_spheres(),
    };
    for (const auto& s : degenerate) {
        SphereSystem sys = oracles::as_system(s);
        CHECK(region_count_exact(sys) <= region_count_upper(sys.size()));
    }
}

TEST_CASE("voxel counter reports unresolved rather than guessing") {
    // Concentric shells sized so each doubling of the resolution uncovers one
    // more shell: successive counts never agree within the cap.
    std::vector<Sphere> shells = {
        {{0, 0, 0}, 1.3}, {{0, 0, 0}, 2.8}, {{0, 0, 0}, 3.55}};
    CHECK_THROWS_AS(voxel_region_count_stable(oracles::as_system(shells), 32, 128), Unresolved);
}
