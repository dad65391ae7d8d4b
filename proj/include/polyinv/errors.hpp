#pragma once

#include <stdexcept>
#include <string>

namespace polyinv {

// Base for all geometric/algorithmic failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point to be inverted coincides with the inversion center. `index` is the
// vertex index for polygon operations, or the stage index for Moebius maps.
struct CenterHit : Error {
    int index;
    explicit CenterHit(int idx, const std::string& what_arg) : Error(what_arg), index(idx) {}
};

// Two parallel-free planes meet in a line, which the surface-intersection
// result type deliberately does not represent.
struct PlanesMeetInLine : Error {
    using Error::Error;
};

// Malformed input text; `line` is 1-based.
struct ParseError : Error {
    int line;
    explicit ParseError(int line_no, const std::string& what_arg) : Error(what_arg), line(line_no) {}
};

// Fewer than 3 vertices, or consecutive vertices coincide (closure edge included).
struct DegeneratePolygon : Error {
    using Error::Error;
};

// Arc construction failed for this edge: the inversion center lies inside the
// edge segment, so the circular image passes through infinity.
struct DegenerateArc : Error {
    int edge;
    explicit DegenerateArc(int edge_idx, const std::string& what_arg) : Error(what_arg), edge(edge_idx) {}
};

// Could not find an inversion center clear of every surface while converting
// planes to spheres.
struct NormalizationFailed : Error {
    using Error::Error;
};

// Diagram has too many crossings for the 2^c state sum.
struct StateExplosion : Error {
    int crossings;
    explicit StateExplosion(int c, const std::string& what_arg) : Error(what_arg), crossings(c) {}
};

// No projection direction passed the genericity checks within the retry budget.
struct NoGenericProjection : Error {
    using Error::Error;
};

// Voxel region counts failed to stabilise within the resolution cap.
struct Unresolved : Error {
    using Error::Error;
};

}  // namespace polyinv
