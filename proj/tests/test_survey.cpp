#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "polyinv/errors.hpp"
#include "polyinv/survey.hpp"

using namespace polyinv;

TEST_CASE("frozen bound values") {
    CHECK(max_spheres(3) == 0);
    CHECK(max_spheres(4) == 2);
    CHECK(max_spheres(7) == 14);
    CHECK(bound_knots(4) == 4);
    CHECK(bound_knots(5) == 30);
    CHECK(bound_knots(7) == 756);
    CHECK(bound_knots(71) == 4683290356ll);
    CHECK(bound_knots(72) == 5102808336ll);
    CHECK(bound_knots(74) == 6036194504ll);
    CHECK(bound_knots(75) == 6553717200ll);
    CHECK(lower_bound_knot_types(20) == 85);
    CHECK(lower_bound_knot_types(71) == 4049333999ll);
    CHECK(lower_bound_knot_types(72) == 5726623061ll);
    CHECK(lower_bound_knot_types(74) == 11453246122ll);
    CHECK(lower_bound_knot_types(75) == 16197335999ll);
    CHECK_THROWS_AS(max_spheres(2), Error);
    CHECK_THROWS_AS(bound_knots(3), Error);
    CHECK_THROWS_AS(lower_bound_knot_types(0), Error);
    CHECK_THROWS_AS(lower_bound_knot_types(127), Error);
}

TEST_CASE("the knot bound counts regions of the largest sphere system") {
    for (int n = 4; n <= 20; ++n)
        CHECK(bound_knots(n) == region_count_upper(max_spheres(n)));
}

TEST_CASE("lower bound is monotone and survives the full range") {
    long long prev = 0;
    for (int n = 1; n <= 126; ++n) {
        long long cur = lower_bound_knot_types(n);
        CHECK(cur >= prev);
        prev = cur;
    }
    CHECK(prev > 0);
}

TEST_CASE("crossover points") {
    CHECK(crossover(false) == 72);
    CHECK(crossover(true) == 75);
    // The flanking inequalities, with the exact integers on both sides.
    CHECK(lower_bound_knot_types(72) > bound_knots(72));
    CHECK(lower_bound_knot_types(71) <= bound_knots(71));
    CHECK(lower_bound_knot_types(75) > 2 * bound_knots(75));
    CHECK(lower_bound_knot_types(74) <= 2 * bound_knots(74));
}

TEST_CASE("bounds table ties the pieces together") {
    for (int n : {4, 7, 20, 72, 75}) {
        BoundsTable t = bounds_table(n);
        CHECK(t.n == n);
        CHECK(t.spheres_max == max_spheres(n));
        CHECK(t.knots_upper == bound_knots(n));
        CHECK(t.knots_upper_mobius == 2 * bound_knots(n));
        CHECK(t.knots_lower == lower_bound_knot_types(n));
    }
}

TEST_CASE("surveying the seven-vertex knot finds all four known types") {
    SurveyStrategy strategy;
    strategy.random_centers = 120;
    SurveyReport rep = survey_centers(oracles::heptagon_fig8(), strategy, 1);

    CHECK(rep.n == 7);
    CHECK(rep.sphere_count == 14);
    CHECK(rep.skipped_quadruples == 0);
    CHECK(rep.region_count == 503);
    CHECK(rep.region_bound == 756);
    CHECK(rep.knots_upper == 756);
    CHECK(rep.centers_generated == 16 * 14 + 120);
    CHECK(rep.centers_filtered + rep.centers_errored + rep.centers_classified ==
          rep.centers_generated);

    int classified = 0;
    std::set<std::string> reliable_labels;
    for (const SurveyEntry& e : rep.entries) {
        classified += e.count;
        CHECK(e.reliable_count <= e.count);
        if (e.reliable) reliable_labels.insert(e.label);
    }
    CHECK(classified == rep.centers_classified);
    for (const char* want : {"unknot", "trefoil_RH", "trefoil_LH", "figure_eight"})
        CHECK(reliable_labels.count(want) == 1);
    CHECK(rep.distinct_reliable_labels() >= 4);

    // The bound chain: discovered types <= exact regions <= closed-form bound.
    CHECK(rep.distinct_reliable_labels() <= rep.region_count);
    CHECK(rep.region_count <= rep.knots_upper);
}

TEST_CASE("survey of a triangle is a pile of unknots") {
    Polygon tri{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}};
    SurveyStrategy strategy;
    strategy.random_centers = 10;
    SurveyReport rep = survey_centers(tri, strategy, 3);
    CHECK(rep.sphere_count == 0);
    CHECK(rep.region_count == 1);
    CHECK(rep.knots_upper == 1);
    for (const SurveyEntry& e : rep.entries) CHECK(e.label == "unknot");
}

TEST_CASE("survey honours user centers first") {
    SurveyStrategy strategy;
    strategy.random_centers = 0;
    strategy.user_centers = {{0, 0, 0}, {-6, -6, -6}, {100, 100, 100}, {1000, 1000, 1000}};
    SurveyReport rep = survey_centers(oracles::heptagon_fig8(), strategy, 1);
    CHECK(rep.centers_generated == 4 + 16 * 14);
    std::set<std::string> labels;
    for (const SurveyEntry& e : rep.entries) labels.insert(e.label);
    for (const char* want : {"unknot", "trefoil_RH", "trefoil_LH", "figure_eight"})
        CHECK(labels.count(want) == 1);
}

TEST_CASE("survey reports are byte-stable under a fixed seed") {
    SurveyStrategy strategy;
    strategy.random_centers = 40;
    strategy.user_centers = {{-6, -6, -6}};
    std::string a = survey_report_json(survey_centers(oracles::heptagon_fig8(), strategy, 9));
    std::string b = survey_report_json(survey_centers(oracles::heptagon_fig8(), strategy, 9));
    CHECK(a == b);
    CHECK(a.find("\"schema\": 1") != std::string::npos);
    // A different seed moves the random centers and must change the bytes.
    std::string c = survey_report_json(survey_centers(oracles::heptagon_fig8(), strategy, 10));
    CHECK(a != c);
}

TEST_CASE("the image type does not depend on the inversion radius") {
    Polygon k = oracles::heptagon_fig8();
    std::mt19937_64 rng(81);
    int successes = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Vec3 c = oracles::random_in_box(rng, 60.0);
        try {
            KnotClass base = classify(polygonal_inversion(k, {c, 1.0}), 5);
            for (double r : {0.1, 10.0}) {
                KnotClass other = classify(polygonal_inversion(k, {c, r}), 5);
                CHECK(other.label == base.label);
                CHECK(other.jones == base.jones);
            }
            ++successes;
        } catch (const Error&) {
            // Center landed too close to the polygon; skip the trial.
        }
    }
    CHECK(successes >= 15);
}

TEST_CASE("double inversion restores the knot type") {
    Polygon k = oracles::heptagon_fig8();
    std::string base = classify(k, 2).label;
    CHECK(base == "figure_eight");
    for (Vec3 c : {Vec3{60, 5, 3}, Vec3{-50, 20, 10}, Vec3{10, 70, -40}, Vec3{0, 0, 100},
                   Vec3{-30, -60, 25}}) {
        Polygon once = polygonal_inversion(k, {c, 2.0});
        Polygon twice = polygonal_inversion(once, {c, 2.0});
        CHECK(classify(twice, 2).label == base);
    }
}

TEST_CASE("mobius consistency: affine maps fix the type exactly") {
    Polygon k = oracles::heptagon_fig8();
    // Two inversions through the same center compose to a dilation.
    MobiusMap dilation{{{{60, 5, 3}, 1.0}, {{60, 5, 3}, 2.0}}};
    MobiusVerdict v = check_mobius_theorem(k, dilation, 4);
    CHECK_FALSE(v.skipped);
    CHECK(v.infinity_fixed);
    CHECK(v.consistent);
    CHECK(v.image_label == v.expected_label);

    MobiusVerdict id = check_mobius_theorem(k, MobiusMap{}, 4);
    CHECK(id.infinity_fixed);
    CHECK(id.consistent);
    CHECK(id.image_label == "figure_eight");
}

TEST_CASE("mobius consistency: a single inversion is its own reference") {
    Polygon k = oracles::heptagon_fig8();
    MobiusMap single{{{{-6, -6, -6}, 1.3}}};
    MobiusVerdict v = check_mobius_theorem(k, single, 4);
    CHECK_FALSE(v.skipped);
    CHECK_FALSE(v.infinity_fixed);
    CHECK(dist(v.preimage, {-6, -6, -6}) <= 1e-12);
    CHECK(v.consistent);
    CHECK(v.image_label == v.expected_label);
}

TEST_CASE("mobius consistency holds for random short compositions") {
    Polygon k = oracles::heptagon_fig8();
    std::mt19937_64 rng(82);
    std::uniform_int_distribution<int> len(2, 3);
    std::uniform_real_distribution<double> rad(0.5, 3.0);
    int checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        MobiusMap map;
        int n = len(rng);
        for (int i = 0; i < n; ++i)
            map.inversions.push_back({oracles::random_in_box(rng, 60.0), rad(rng)});
        MobiusVerdict v = check_mobius_theorem(k, map, 6);
        if (v.skipped) continue;
        ++checked;
        CHECK(v.consistent);
    }
    CHECK(checked >= 8);  // most random maps should be testable
}
