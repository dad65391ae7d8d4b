#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyinv/laurent.hpp"
#include "polyinv/polygon.hpp"
#include "polyinv/vec3.hpp"

namespace polyinv {

struct CrossingVisit {
    int crossing = 0;
    bool over = false;
};

// Knot diagram as a signed Gauss code: the 2c crossing visits in curve order,
// plus a sign per crossing. Conventions (fixed throughout):
//   - the page frame (e1, e2, E) is right-handed with E pointing from the
//     scene toward the viewer; the strand with larger <x, E> is the over one;
//   - crossing sign = sgn(det2D[over direction, under direction]);
//   - arc k runs from visit k to visit k+1 (mod 2c).
// `free_loops` counts extra crossing-free unknotted components.
struct KnotDiagram {
    std::vector<CrossingVisit> visits;
    std::vector<int> signs;
    int free_loops = 0;

    int crossings() const { return static_cast<int>(signs.size()); }
    int writhe() const;
    // PD quadruple (counterclockwise from the incoming under-arc), arcs
    // labeled 1..2c in curve order.
    std::array<int, 4> pd_tuple(int crossing) const;
};

// Each crossing visited exactly twice, once over and once under; signs are +-1.
void validate_diagram(const KnotDiagram& d);

// Over/under flipped at every visit, signs negated.
KnotDiagram mirror_diagram(const KnotDiagram& d);

// Diagram of the closure of a braid word on `strands` strands. Letters are
// (generator index i in 1..strands-1, sign); a positive letter crosses the
// right strand over the left, giving crossing sign +1. Throws if the closure
// has more than one component.
KnotDiagram braid_closure_diagram(const std::vector<std::pair<int, int>>& word, int strands);

struct ProjectionResult {
    KnotDiagram diagram;
    Vec3 view;  // unit axis pointing from the scene toward the viewer
};

// Deterministic in (k, seed): samples viewing axes until one passes the
// genericity checks (no near-parallel edge, no vertex over a foreign edge, all
// crossings transverse double points with clear depth gaps, no triple points).
// Throws NoGenericProjection after 1000 rejected axes.
ProjectionResult project_to_diagram(const Polygon& k, uint64_t seed, double eps = kDefaultEps);

// Projection along one fixed axis; throws NoGenericProjection if it is not
// generic for k.
KnotDiagram project_along(const Polygon& k, const Vec3& eye_axis, double eps = kDefaultEps);

// State-sum bracket polynomial in A (2^c states, union-find loop counting,
// <unknot> = 1). Throws StateExplosion for more than 24 crossings.
LaurentPolynomial kauffman_bracket(const KnotDiagram& d);

// (-A)^{-3w} * bracket: invariant of the underlying knot.
LaurentPolynomial jones_from_diagram(const KnotDiagram& d);

// |V| at A = e^{i pi/4} (i.e. t = -1), rounded to the nearest integer.
long long knot_determinant(const LaurentPolynomial& jones);

struct ReferenceKnot {
    std::string label;
    KnotDiagram diagram;
    LaurentPolynomial jones;
    long long determinant = 0;
};

// Hard-coded diagrams for the unknot, both trefoils, the figure-eight, 5_1,
// 5_2 and mirrors; invariants computed at startup, not transcribed.
const std::vector<ReferenceKnot>& reference_table();

std::string mirror_label(const std::string& label);

struct KnotClass {
    std::string label;  // "unknown" when no reference matches
    LaurentPolynomial jones;
    long long determinant = 0;
    int crossings = 0;
    int writhe = 0;
    Vec3 view;
    uint64_t seed = 0;
};

KnotClass classify_diagram(const KnotDiagram& d);
KnotClass classify(const Polygon& k, uint64_t seed = 1, double eps = kDefaultEps);

}  // namespace polyinv
