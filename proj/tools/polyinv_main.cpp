// Command-line driver over the C API. Exit codes: 0 success, 1 usage,
// 2 unreadable/unparsable input, 3 degenerate geometry or resource limit.
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyinv.h"

namespace {

int exit_code(polyinv_status st) {
    switch (st) {
        case POLYINV_OK: return 0;
        case POLYINV_ERR_USAGE: return 1;
        case POLYINV_ERR_PARSE:
        case POLYINV_ERR_IO: return 2;
        default: return 3;
    }
}

int fail(polyinv_status st) {
    std::fprintf(stderr, "error: %s\n", polyinv_last_error());
    return exit_code(st);
}

using PolygonPtr = std::unique_ptr<polyinv_polygon, decltype(&polyinv_polygon_free)>;
using SystemPtr = std::unique_ptr<polyinv_sphere_system, decltype(&polyinv_system_free)>;
using StringPtr = std::unique_ptr<char, decltype(&polyinv_string_free)>;

PolygonPtr wrap(polyinv_polygon* p) { return {p, &polyinv_polygon_free}; }
SystemPtr wrap(polyinv_sphere_system* s) { return {s, &polyinv_system_free}; }
StringPtr wrap(char* s) { return {s, &polyinv_string_free}; }

bool write_file(const std::string& path, const char* text) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) return false;
    std::fputs(text, f);
    std::fclose(f);
    return true;
}

struct CenterOption {
    std::vector<double> xyz;
    bool given() const { return !xyz.empty(); }
    bool valid() const { return xyz.size() == 3; }
};

void add_center(CLI::App* cmd, CenterOption& c, bool required) {
    auto* opt = cmd->add_option("--center", c.xyz, "inversion center as x,y,z")->delimiter(',');
    if (required) opt->required();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polygonal inversion toolkit"};
    app.require_subcommand(1);

    double eps = 0.0;  // 0 = library default
    app.add_option("--eps", eps, "geometric tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);

    // invert
    auto* invert = app.add_subcommand("invert", "invert a polygon through a sphere");
    std::string inv_polygon, inv_output;
    CenterOption inv_center;
    double inv_radius = 1.0;
    invert->add_option("--polygon", inv_polygon, "polygon file")->required();
    add_center(invert, inv_center, true);
    invert->add_option("--radius", inv_radius, "sphere radius (default 1)")
        ->check(CLI::PositiveNumber);
    invert->add_option("--output", inv_output, "output polygon file (default stdout)");

    // arcs
    auto* arcs = app.add_subcommand("arcs", "sample the circle-arc image of an inversion");
    std::string arcs_polygon;
    CenterOption arcs_center;
    double arcs_radius = 1.0;
    int arcs_samples = 64;
    bool arcs_json = false;
    arcs->add_option("--polygon", arcs_polygon, "polygon file")->required();
    add_center(arcs, arcs_center, true);
    arcs->add_option("--radius", arcs_radius, "sphere radius (default 1)")
        ->check(CLI::PositiveNumber);
    arcs->add_option("--samples", arcs_samples, "points per arc (default 64)")
        ->check(CLI::PositiveNumber);
    arcs->add_flag("--json", arcs_json, "emit JSON instead of polylines");

    // spheres
    auto* spheres = app.add_subcommand("spheres", "sphere system of a polygon");
    std::string sph_polygon, sph_output;
    spheres->add_option("--polygon", sph_polygon, "polygon file")->required();
    spheres->add_option("--output", sph_output, "output sphere-system file (default stdout)");

    // regions
    auto* regions = app.add_subcommand("regions", "count complementary regions of a sphere system");
    std::string reg_system;
    bool reg_voxel = false;
    int reg_cap = 1024;
    regions->add_option("--system", reg_system, "sphere-system file")->required();
    regions->add_flag("--voxel", reg_voxel, "cross-check with the voxel counter");
    regions->add_option("--cap", reg_cap, "voxel resolution cap (default 1024)")
        ->check(CLI::PositiveNumber);

    // classify
    auto* classify = app.add_subcommand("classify", "knot type of a polygon");
    std::string cls_polygon;
    CenterOption cls_center;
    double cls_radius = 1.0;
    unsigned long long cls_seed = 1;
    bool cls_json = false;
    classify->add_option("--polygon", cls_polygon, "polygon file")->required();
    add_center(classify, cls_center, false);
    classify->add_option("--radius", cls_radius, "sphere radius when --center is given")
        ->check(CLI::PositiveNumber);
    classify->add_option("--seed", cls_seed, "projection seed (default 1)");
    classify->add_flag("--json", cls_json, "emit the full JSON record");

    // survey
    auto* survey = app.add_subcommand("survey", "map inversion centers to knot types");
    std::string sur_polygon, sur_json_out;
    int sur_centers = 500;
    unsigned long long sur_seed = 1;
    double sur_offset = 1e-2;
    std::vector<std::vector<double>> sur_user;
    survey->add_option("--polygon", sur_polygon, "polygon file")->required();
    survey->add_option("--centers", sur_centers, "random centers to draw (default 500)")
        ->check(CLI::NonNegativeNumber);
    survey->add_option("--seed", sur_seed, "sampler seed (default 1)");
    survey->add_option("--near-sphere-offset", sur_offset,
                       "two-sided sampling offset as a fraction of each radius (default 0.01)")
        ->check(CLI::PositiveNumber);
    survey->add_option("--center", sur_user, "extra center as x,y,z (repeatable)")->delimiter(',');
    survey->add_option("--json", sur_json_out, "write the JSON report to this file");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "bound table for an edge count");
    int bounds_n = 0;
    bool bounds_json = false;
    bounds->add_option("n", bounds_n, "number of edges (>= 4)")->required();
    bounds->add_flag("--json", bounds_json, "emit JSON");

    // crossover
    auto* crossover = app.add_subcommand(
        "crossover", "edge counts where the lower bound beats the inversion bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // normalize CLI11 error codes onto "usage"
    }

    if (invert->parsed()) {
        if (!inv_center.valid()) return fail(POLYINV_ERR_USAGE);
        polyinv_polygon* raw = nullptr;
        polyinv_status st = polyinv_polygon_read(inv_polygon.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr poly = wrap(raw);
        polyinv_polygon* out_raw = nullptr;
        st = polyinv_polygon_invert(poly.get(), inv_center.xyz.data(), inv_radius, eps, &out_raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr image = wrap(out_raw);
        if (!inv_output.empty()) {
            st = polyinv_polygon_write(image.get(), inv_output.c_str());
            if (st != POLYINV_OK) return fail(st);
        } else {
            char* text = nullptr;
            st = polyinv_polygon_to_text(image.get(), &text);
            if (st != POLYINV_OK) return fail(st);
            std::fputs(wrap(text).get(), stdout);
        }
        return 0;
    }

    if (arcs->parsed()) {
        if (!arcs_center.valid()) return fail(POLYINV_ERR_USAGE);
        polyinv_polygon* raw = nullptr;
        polyinv_status st = polyinv_polygon_read(arcs_polygon.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr poly = wrap(raw);
        char* json_raw = nullptr;
        st = polyinv_arcs_json(poly.get(), arcs_center.xyz.data(), arcs_radius, arcs_samples, eps,
                               &json_raw);
        if (st != POLYINV_OK) return fail(st);
        StringPtr json = wrap(json_raw);
        if (arcs_json) {
            std::fputs(json.get(), stdout);
            std::fputc('\n', stdout);
            return 0;
        }
        auto doc = nlohmann::json::parse(json.get());
        int i = 0;
        for (const auto& arc : doc["arcs"]) {
            std::printf("# arc %d%s\n", i++, arc["straight"].get<bool>() ? " (straight)" : "");
            for (const auto& p : arc["points"])
                std::printf("%.17g %.17g %.17g\n", p[0].get<double>(), p[1].get<double>(),
                            p[2].get<double>());
            std::printf("\n");
        }
        return 0;
    }

    if (spheres->parsed()) {
        polyinv_polygon* raw = nullptr;
        polyinv_status st = polyinv_polygon_read(sph_polygon.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr poly = wrap(raw);
        polyinv_sphere_system* sys_raw = nullptr;
        st = polyinv_system_from_polygon(poly.get(), eps, &sys_raw);
        if (st != POLYINV_OK) return fail(st);
        SystemPtr sys = wrap(sys_raw);
        char* text_raw = nullptr;
        st = polyinv_system_to_text(sys.get(), &text_raw);
        if (st != POLYINV_OK) return fail(st);
        StringPtr text = wrap(text_raw);
        char* skipped_raw = nullptr;
        st = polyinv_system_skipped_json(sys.get(), &skipped_raw);
        if (st != POLYINV_OK) return fail(st);
        StringPtr skipped = wrap(skipped_raw);

        std::string out = text.get();
        auto doc = nlohmann::json::parse(skipped.get());
        for (const auto& q : doc["skipped"]) {
            out += "# skipped edges " + std::to_string(q["edge_a"].get<int>()) + "," +
                   std::to_string(q["edge_b"].get<int>()) + ": " +
                   q["kind"].get<std::string>() + "\n";
        }
        if (!sph_output.empty()) {
            if (!write_file(sph_output, out.c_str())) {
                std::fprintf(stderr, "error: cannot write %s\n", sph_output.c_str());
                return 2;
            }
            std::printf("surfaces %d\nskipped %d\n", polyinv_system_size(sys.get()),
                        polyinv_system_skipped(sys.get()));
        } else {
            std::fputs(out.c_str(), stdout);
        }
        return 0;
    }

    if (regions->parsed()) {
        polyinv_sphere_system* raw = nullptr;
        polyinv_status st = polyinv_system_read(reg_system.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        SystemPtr sys = wrap(raw);
        long long exact = 0;
        st = polyinv_region_count_exact(sys.get(), eps, &exact);
        if (st != POLYINV_OK) return fail(st);
        std::printf("surfaces %d\n", polyinv_system_size(sys.get()));
        std::printf("regions_exact %lld\n", exact);
        std::printf("regions_upper %lld\n",
                    polyinv_region_count_upper(polyinv_system_size(sys.get())));
        if (reg_voxel) {
            long long voxel = 0;
            st = polyinv_region_count_voxel(sys.get(), 0, reg_cap, &voxel);
            if (st != POLYINV_OK) return fail(st);
            std::printf("regions_voxel %lld\n", voxel);
        }
        return 0;
    }

    if (classify->parsed()) {
        if (cls_center.given() && !cls_center.valid()) return fail(POLYINV_ERR_USAGE);
        polyinv_polygon* raw = nullptr;
        polyinv_status st = polyinv_polygon_read(cls_polygon.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr poly = wrap(raw);
        if (cls_center.given()) {
            polyinv_polygon* image_raw = nullptr;
            st = polyinv_polygon_invert(poly.get(), cls_center.xyz.data(), cls_radius, eps,
                                        &image_raw);
            if (st != POLYINV_OK) return fail(st);
            poly = wrap(image_raw);
        }
        char* json_raw = nullptr;
        st = polyinv_classify_json(poly.get(), cls_seed, eps, &json_raw);
        if (st != POLYINV_OK) return fail(st);
        StringPtr json = wrap(json_raw);
        if (cls_json) {
            std::fputs(json.get(), stdout);
            std::fputc('\n', stdout);
        } else {
            auto doc = nlohmann::json::parse(json.get());
            std::printf("%s\n", doc["label"].get<std::string>().c_str());
            std::printf("jones %s\n", doc["jones_string"].get<std::string>().c_str());
            std::printf("determinant %lld\n", doc["determinant"].get<long long>());
            std::printf("crossings %d\nwrithe %d\n", doc["crossings"].get<int>(),
                        doc["writhe"].get<int>());
        }
        return 0;
    }

    if (survey->parsed()) {
        polyinv_polygon* raw = nullptr;
        polyinv_status st = polyinv_polygon_read(sur_polygon.c_str(), &raw);
        if (st != POLYINV_OK) return fail(st);
        PolygonPtr poly = wrap(raw);
        std::vector<double> user;
        for (const auto& c : sur_user) {
            if (c.size() != 3) return fail(POLYINV_ERR_USAGE);
            user.insert(user.end(), c.begin(), c.end());
        }
        char* json_raw = nullptr;
        st = polyinv_survey_json(poly.get(), sur_centers, sur_offset,
                                 user.empty() ? nullptr : user.data(),
                                 static_cast<int>(user.size() / 3), sur_seed, eps, &json_raw);
        if (st != POLYINV_OK) return fail(st);
        StringPtr json = wrap(json_raw);
        if (!sur_json_out.empty()) {
            if (!write_file(sur_json_out, json.get())) {
                std::fprintf(stderr, "error: cannot write %s\n", sur_json_out.c_str());
                return 2;
            }
        }
        auto doc = nlohmann::json::parse(json.get());
        std::printf("spheres %d\nregions %lld\nknots_upper %lld\n",
                    doc["system"]["spheres"].get<int>(),
                    doc["system"]["regions"].get<long long>(),
                    doc["system"]["knots_upper"].get<long long>());
        for (const auto& e : doc["labels"])
            std::printf("label %-14s count %d reliable %s\n",
                        e["label"].get<std::string>().c_str(), e["count"].get<int>(),
                        e["reliable"].get<bool>() ? "yes" : "no");
        std::printf("distinct_reliable_labels %d\n", doc["distinct_reliable_labels"].get<int>());
        return 0;
    }

    if (bounds->parsed()) {
        long long spheres_max = 0, knots_upper = 0, knots_upper_mobius = 0, knots_lower = 0;
        polyinv_status st =
            polyinv_bounds(bounds_n, &spheres_max, &knots_upper, &knots_upper_mobius, &knots_lower);
        if (st != POLYINV_OK) return fail(st);
        if (bounds_json) {
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["n"] = bounds_n;
            j["spheres_max"] = spheres_max;
            j["knots_upper"] = knots_upper;
            j["knots_upper_mobius"] = knots_upper_mobius;
            j["knots_lower"] = knots_lower;
            std::printf("%s\n", j.dump(2).c_str());
        } else {
            std::printf("n %d\nspheres_max %lld\nknots_upper %lld\nknots_upper_mobius %lld\n"
                        "knots_lower %lld\n",
                        bounds_n, spheres_max, knots_upper, knots_upper_mobius, knots_lower);
        }
        return 0;
    }

    if (crossover->parsed()) {
        int single = 0, doubled = 0;
        polyinv_status st = polyinv_crossover(0, &single);
        if (st != POLYINV_OK) return fail(st);
        st = polyinv_crossover(1, &doubled);
        if (st != POLYINV_OK) return fail(st);
        std::printf("single-inversion: %d, mobius-group: %d\n", single, doubled);
        for (auto [label, n, factor] : {std::tuple<const char*, int, long long>{"single", single, 1},
                                        {"mobius", doubled, 2}}) {
            long long lower = 0, upper = 0, lower_prev = 0, upper_prev = 0;
            if (polyinv_lower_bound_knot_types(n, &lower) != POLYINV_OK ||
                polyinv_bound_knots(n, &upper) != POLYINV_OK ||
                polyinv_lower_bound_knot_types(n - 1, &lower_prev) != POLYINV_OK ||
                polyinv_bound_knots(n - 1, &upper_prev) != POLYINV_OK)
                return fail(POLYINV_ERR_INTERNAL);
            std::printf("%s: at n=%d lower %lld > %lld = %lld*%lld; at n=%d lower %lld <= %lld\n",
                        label, n, lower, factor * upper, factor, upper, n - 1, lower_prev,
                        factor * upper_prev);
        }
        return 0;
    }

    return 1;
}
