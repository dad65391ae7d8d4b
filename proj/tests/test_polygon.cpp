#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "oracles.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/knots.hpp"
#include "polyinv/polygon.hpp"

using namespace polyinv;

TEST_CASE("polygon text format round-trips and rejects junk") {
    Polygon k = parse_polygon("0 0 0\n# comment\n1 0 0  # trailing comment\n\n0 1 0\n");
    CHECK(k.size() == 3);
    CHECK(dist(k.vertices[1], {1, 0, 0}) == 0.0);

    CHECK_THROWS_AS(parse_polygon("0 0 0\n1 0 0\n"), DegeneratePolygon);
    CHECK_THROWS_AS(parse_polygon("0 0 0\n1 0\n0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_polygon("0 0 0\nnope 0 0\n0 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_polygon("0 0 0\n1 0 0 7\n0 1 0\n"), ParseError);
    try {
        parse_polygon("0 0 0\n1 0 0\nbad line here\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }

    std::mt19937_64 rng(21);
    Polygon big = oracles::random_embedded_polygon(rng, 50);
    Polygon back = parse_polygon(polygon_to_text(big));
    REQUIRE(back.size() == big.size());
    for (int i = 0; i < big.size(); ++i) CHECK(dist(back.vertices[i], big.vertices[i]) == 0.0);
    CHECK(polygon_digest(back) == polygon_digest(big));
    CHECK(polygon_digest(back) != polygon_digest(oracles::hexagon_trefoil()));
}

TEST_CASE("the bundled seven-vertex file matches its fixture") {
    Polygon file = read_polygon(std::string(POLYINV_TEST_DATA_DIR) + "/fig8.txt");
    Polygon fixture = oracles::heptagon_fig8();
    REQUIRE(file.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(dist(file.vertices[i], fixture.vertices[i]) == 0.0);
}

TEST_CASE("validation requires three distinct-in-a-row vertices") {
    CHECK_THROWS_AS(validate_polygon({{{0, 0, 0}, {1, 0, 0}}}), DegeneratePolygon);
    CHECK_THROWS_AS(validate_polygon({{{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}}), DegeneratePolygon);
    // Closure edge counts: last vertex equal to the first is degenerate too.
    CHECK_THROWS_AS(validate_polygon({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 0}}}),
                    DegeneratePolygon);
    CHECK_NOTHROW(validate_polygon({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}}));
}

TEST_CASE("vertexwise inversion is index-stable and involutive") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        Polygon k = oracles::random_embedded_polygon(rng, 4 + trial % 9);
        InversionSpec spec{oracles::random_in_box(rng, 25.0),
                           std::uniform_real_distribution<double>(0.2, 10.0)(rng)};
        bool hits_vertex = false;
        for (const Vec3& v : k.vertices)
            if (dist(v, spec.center) < 1e-3) hits_vertex = true;
        if (hits_vertex) continue;

        Polygon image = polygonal_inversion(k, spec);
        REQUIRE(image.size() == k.size());
        for (int i = 0; i < k.size(); ++i)
            CHECK(dist(image.vertices[i], invert_point(spec, k.vertices[i])) == 0.0);

        Polygon back = polygonal_inversion(image, spec);
        for (int i = 0; i < k.size(); ++i) {
            double scale = 1.0 + norm(k.vertices[i]);
            CHECK(dist(back.vertices[i], k.vertices[i]) <= 1e-6 * scale);
        }
    }
}

TEST_CASE("inversion center on a vertex is reported with its index") {
    Polygon k = oracles::heptagon_fig8();
    try {
        polygonal_inversion(k, {k.vertices[3], 1.0});
        FAIL("expected CenterHit");
    } catch (const CenterHit& e) {
        CHECK(e.index == 3);
    }
}

TEST_CASE("the giant tangent sphere reflects the polygon") {
    Polygon k = oracles::heptagon_fig8();
    Polygon image = polygonal_inversion(k, {{1e6, 0, 0}, 1e6});
    for (int i = 0; i < k.size(); ++i) {
        const Vec3& v = k.vertices[i];
        CHECK(dist(image.vertices[i], {-v.x, v.y, v.z}) <= 1e-2);
    }
}

TEST_CASE("arc image: endpoints, side selection, and the inversion identity") {
    Polygon square{{{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}}};
    InversionSpec spec{{0, 0, 5}, 1.0};
    ArcPolygon arcs = circle_arc_image(square, spec);
    REQUIRE(arcs.arcs.size() == 4);
    for (int i = 0; i < 4; ++i) {
        const Arc& a = arcs.arcs[i];
        CHECK(dist(a.start, square.vertices[i]) <= 1e-9);
        CHECK(dist(a.end, square.vertices[(i + 1) % 4]) <= 1e-9);
        // The arc bulges away from the center: its midpoint is farther from
        // the center than the chord midpoint.
        Vec3 chord_mid = 0.5 * (a.start + a.end);
        Vec3 arc_mid = sample_arc(a, 2)[1];
        CHECK(dist(arc_mid, spec.center) > dist(chord_mid, spec.center));
    }

    // K-tilde = rho(rho-hat(K)): inverting any sampled arc point lands on the
    // matching straightened edge.
    Polygon straightened = polygonal_inversion(square, spec);
    for (int i = 0; i < 4; ++i) {
        const Vec3& x = straightened.vertices[i];
        const Vec3& y = straightened.vertices[(i + 1) % 4];
        for (const Vec3& q : sample_arc(arcs.arcs[i], 16)) {
            Vec3 back = invert_point(spec, q);
            Vec3 d = y - x;
            double t = std::clamp(dot(back - x, d) / dot(d, d), 0.0, 1.0);
            CHECK(dist(back, x + t * d) <= 1e-6);
        }
    }
}

TEST_CASE("arc image identity holds on a random polygon") {
    std::mt19937_64 rng(23);
    Polygon k = oracles::random_embedded_polygon(rng, 8);
    InversionSpec spec{oracles::random_in_box(rng, 30.0), 2.0};
    ArcPolygon arcs = circle_arc_image(k, spec);
    Polygon straightened = polygonal_inversion(k, spec);
    REQUIRE(arcs.arcs.size() == 8);
    for (int i = 0; i < 8; ++i) {
        const Vec3& x = straightened.vertices[i];
        const Vec3& y = straightened.vertices[(i + 1) % 8];
        for (const Vec3& q : sample_arc(arcs.arcs[i], 16)) {
            Vec3 back = invert_point(spec, q);
            Vec3 d = y - x;
            double t = std::clamp(dot(back - x, d) / dot(d, d), 0.0, 1.0);
            CHECK(dist(back, x + t * d) <= 1e-6 * (1.0 + norm(back)));
        }
    }
    // Arcs chain head to tail around the polygon.
    for (int i = 0; i < 8; ++i)
        CHECK(dist(arcs.arcs[i].end, arcs.arcs[(i + 1) % 8].start) <= 1e-9);
}

TEST_CASE("far centers flatten the arc image") {
    Polygon k = oracles::heptagon_fig8();
    auto max_deviation = [&](const InversionSpec& spec) {
        ArcPolygon arcs = circle_arc_image(k, spec);
        double worst = 0.0;
        for (int i = 0; i < k.size(); ++i) {
            const Vec3& x = k.vertices[i];
            const Vec3& y = k.vertices[(i + 1) % k.size()];
            Vec3 d = y - x;
            for (const Vec3& q : sample_arc(arcs.arcs[i], 32)) {
                double t = std::clamp(dot(q - x, d) / dot(d, d), 0.0, 1.0);
                worst = std::max(worst, dist(q, x + t * d));
            }
        }
        return worst;
    };
    double near = max_deviation({{60, 20, 10}, 1.0});
    double far = max_deviation({{6000, 2000, 1000}, 1.0});
    CHECK(near >= 10.0 * far);
}

TEST_CASE("arc through a colinear center degenerates appropriately") {
    Polygon k{{{0, 0, 0}, {4, 0, 0}, {4, 4, 0}, {0, 4, 0}}};
    // Center on the line of edge 0, outside the segment: straight arc.
    ArcPolygon arcs = circle_arc_image(k, {{-2, 0, 0}, 1.0});
    CHECK(arcs.arcs[0].straight);
    CHECK_FALSE(arcs.arcs[1].straight);
    // Center inside the segment itself: the image passes through infinity.
    CHECK_THROWS_AS(circle_arc_image(k, {{2, 0, 0}, 1.0}), DegenerateArc);
    try {
        circle_arc_image(k, {{2, 0, 0}, 1.0});
    } catch (const DegenerateArc& e) {
        CHECK(e.edge == 0);
    }
}

TEST_CASE("singularity detection: embedded, crossing, and cyclic relabeling") {
    CHECK_FALSE(find_singularity({{{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}}}).has_value());
    CHECK_FALSE(find_singularity(oracles::heptagon_fig8()).has_value());

    Polygon bowtie{{{0, 0, 0}, {1, 1, 0}, {1, 0, 0}, {0, 1, 0}}};
    auto w = find_singularity(bowtie);
    REQUIRE(w.has_value());
    CHECK(w->edge_a == 0);
    CHECK(w->edge_b == 2);
    CHECK(w->gap <= 1e-12);
    CHECK(dist(w->point, {0.5, 0.5, 0}) <= 1e-9);

    auto h = find_singularity(oracles::singular_helix_hexagon());
    REQUIRE(h.has_value());
    CHECK(h->gap <= 1e-12);
    CHECK(dist(h->point, {0.25, -std::sqrt(3.0) / 4.0, 2.5}) <= 1e-9);

    // Cyclic relabeling moves the edge indices but not the witness geometry.
    for (int shift = 1; shift < 4; ++shift) {
        Polygon rotated;
        for (int i = 0; i < 4; ++i) rotated.vertices.push_back(bowtie.vertices[(i + shift) % 4]);
        auto r = find_singularity(rotated);
        REQUIRE(r.has_value());
        CHECK(r->gap == doctest::Approx(w->gap).epsilon(1e-12));
        CHECK(dist(r->point, w->point) <= 1e-9);
        int back_a = (r->edge_a + shift) % 4;
        int back_b = (r->edge_b + shift) % 4;
        CHECK(std::min(back_a, back_b) == 0);
        CHECK(std::max(back_a, back_b) == 2);
    }
}

TEST_CASE("closest approach skips triangles and reports the tightest pair") {
    CHECK_FALSE(closest_nonadjacent_approach({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}}).has_value());
    auto w = closest_nonadjacent_approach(oracles::hexagon_trefoil());
    REQUIRE(w.has_value());
    CHECK(w->gap == doctest::Approx(0.14685644449567092).epsilon(1e-9));
    CHECK(w->edge_a == 1);
    CHECK(w->edge_b == 5);
}

TEST_CASE("segment distance matches hand values") {
    Vec3 mid;
    CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 1}, &mid) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK(segment_distance({0, 0, 0}, {2, 0, 0}, {1, -1, 1}, {1, 1, 1}, &mid) ==
          doctest::Approx(1.0));
    CHECK(dist(mid, {1, 0, 0.5}) <= 1e-9);
    CHECK(segment_distance({0, 0, 0}, {1, 0, 0}, {3, 0, 0}, {4, 0, 0}, nullptr) ==
          doctest::Approx(2.0));
}

TEST_CASE("diameter and scale measure different things") {
    Polygon tiny_far{{{100, 0, 0}, {100.001, 0, 0}, {100, 0.001, 0}}};
    CHECK(polygon_scale(tiny_far) == doctest::Approx(100.001).epsilon(1e-6));
    CHECK(polygon_diameter(tiny_far) == doctest::Approx(std::sqrt(2e-6)).epsilon(1e-6));
    // The tiny triangle is perfectly healthy at its own scale.
    CHECK_NOTHROW(validate_polygon(tiny_far));
}

TEST_CASE("arc sampling spans the declared sweep") {
    Polygon square{{{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}}};
    ArcPolygon arcs = circle_arc_image(square, {{0, 0, 5}, 1.0});
    const Arc& a = arcs.arcs[0];
    std::vector<Vec3> pts = sample_arc(a, 8);
    REQUIRE(pts.size() == 9);
    CHECK(dist(pts.front(), a.start) <= 1e-12);
    CHECK(dist(pts.back(), a.end) <= 1e-12);
    for (const Vec3& q : pts)
        CHECK(std::abs(dist(q, a.circle.center) - a.circle.radius) <= 1e-9);
    Polygon polyline = sample_arc_polygon(arcs, 8);
    CHECK(polyline.size() == 4 * 8);
}
