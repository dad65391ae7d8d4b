#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyinv/geom.hpp"
#include "polyinv/vec3.hpp"

namespace polyinv {

// Closed polygonal curve: vertices joined in order, last joined back to first.
struct Polygon {
    std::vector<Vec3> vertices;
    int size() const { return static_cast<int>(vertices.size()); }
};

// Throws DegeneratePolygon unless n >= 3 and consecutive vertices (closure
// edge included) are distinct at tolerance eps.
void validate_polygon(const Polygon& k, double eps = kDefaultEps);

// Largest vertex magnitude, floored at 1; the scale factor for tolerances on
// absolute coordinates (parsing, deduplication).
double polygon_scale(const Polygon& k);

// Largest pairwise vertex distance: the polygon's own size. Geometric
// predicates (singularity, projection genericity) scale by this so that a
// small polygon far from the origin behaves like its enlarged copy.
double polygon_diameter(const Polygon& k);

// Vertexwise inversion, reconnected by straight segments. CenterHit carries
// the offending vertex index.
Polygon polygonal_inversion(const Polygon& k, const InversionSpec& spec, double eps = kDefaultEps);

// One circular-arc edge of the smooth inverted image. The arc runs from
// `start` to `end` on `circle`, counterclockwise about the circle normal when
// `ccw`, and is the side avoiding the inversion center. `straight` marks the
// degenerate colinear case where the image is the segment [start, end].
struct Arc {
    Vec3 start;
    Vec3 end;
    Circle3 circle;
    bool ccw = true;
    bool straight = false;
};

struct ArcPolygon {
    std::vector<Arc> arcs;
};

// Arc edges of the smooth image of k under the inversion: for each edge (x, y)
// the arc of the circle through x, y and the center that avoids the center.
// Throws DegenerateArc(edge) when the center lies inside the edge's chord line
// segment between the inverted endpoints.
ArcPolygon circle_arc_image(const Polygon& k, const InversionSpec& spec, double eps = kDefaultEps);

// Signed sweep angle from start to end (positive = counterclockwise).
double arc_sweep(const Arc& a);

// k+1 points from start to end inclusive, uniform in angle.
std::vector<Vec3> sample_arc(const Arc& a, int k);

// Closed polyline sampling every arc (per_arc points each, junction
// duplicates dropped).
Polygon sample_arc_polygon(const ArcPolygon& ap, int per_arc);

// Closest approach between two non-adjacent edges.
struct EdgePairWitness {
    int edge_a = -1;
    int edge_b = -1;
    double gap = 0.0;
    Vec3 point;  // midpoint of the closest-approach segment
};

// Minimum over all non-adjacent edge pairs; nullopt for triangles (no such
// pairs).
std::optional<EdgePairWitness> closest_nonadjacent_approach(const Polygon& k);

// Witness if some non-adjacent edge pair passes within eps (scaled by the
// polygon size); otherwise nullopt.
std::optional<EdgePairWitness> find_singularity(const Polygon& k, double eps = kDefaultEps);

// Distance between segments [p1,q1], [p2,q2] and the midpoint of the
// closest-approach pair.
double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2,
                        Vec3* midpoint = nullptr);

// Text format: one vertex per line as three reals, '#' to end of line is
// comment, blank lines ignored, polygon implicitly closed.
Polygon parse_polygon(const std::string& text);
Polygon read_polygon(const std::string& path);
std::string polygon_to_text(const Polygon& k);  // 17 significant digits
void write_polygon(const std::string& path, const Polygon& k);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string polygon_digest(const Polygon& k);

}  // namespace polyinv
