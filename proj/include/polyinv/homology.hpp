#pragma once

#include <array>
#include <vector>

namespace polyinv {

// Simplicial complex of dimension <= 2: `vertices` counts 0-simplices named
// 0..vertices-1; edges and triangles list ascending vertex tuples.
struct OrderComplex {
    int vertices = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> triangles;
};

// Reduced Betti numbers over the rationals. b(-1) is 1 exactly for the empty
// complex (reduced homology of the void space in degree -1).
struct BettiVector {
    long long bm1 = 0;
    long long b0 = 0;
    long long b1 = 0;
    long long b2 = 0;
    long long operator[](int degree) const;
};

// Ranks from the boundary matrices of the augmented chain complex. The rank
// over Q is computed by sparse elimination modulo two distinct primes, which
// must agree (a disagreement would mean both primes divide every maximal
// nonzero minor; with incidence-type matrices this does not occur).
BettiVector homology_ranks(const OrderComplex& c);

long long euler_characteristic(const OrderComplex& c);  // V - E + T

// Rank of a sparse integer matrix modulo prime p. Columns hold (row, value)
// pairs sorted by row. Exposed for testing against exact elimination.
long long sparse_rank_mod_p(std::vector<std::vector<std::pair<int, long long>>> columns,
                            long long p);

}  // namespace polyinv
