#include "polyinv/homology.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "polyinv/errors.hpp"

namespace polyinv {

long long BettiVector::operator[](int degree) const {
    switch (degree) {
        case -1: return bm1;
        case 0: return b0;
        case 1: return b1;
        case 2: return b2;
        default: return 0;
    }
}

namespace {

constexpr long long kPrimeA = 2147483647;  // 2^31 - 1
constexpr long long kPrimeB = 2147483629;  // 2^31 - 19

long long pow_mod(long long base, long long exp, long long p) {
    long long r = 1;
    base %= p;
    while (exp > 0) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

long long inv_mod(long long a, long long p) { return pow_mod((a % p + p) % p, p - 2, p); }

using Column = std::vector<std::pair<int, long long>>;

// dst += f * src (entries mod p, rows sorted ascending, zeros dropped).
Column axpy(const Column& dst, const Column& src, long long f, long long p) {
    Column out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            long long v = src[j].second * f % p;
            if (v != 0) out.push_back({src[j].first, v});
            ++j;
        } else {
            long long v = (dst[i].second + src[j].second * f) % p;
            if (v != 0) out.push_back({dst[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

long long sparse_rank_mod_p(std::vector<Column> columns, long long p) {
    std::unordered_map<int, int> pivot_of_row;  // lowest row -> index into `reduced`
    std::vector<Column> reduced;
    long long rank = 0;
    for (Column& col : columns) {
        for (auto& e : col) e.second = ((e.second % p) + p) % p;
        while (!col.empty()) {
            int low = col.back().first;
            auto it = pivot_of_row.find(low);
            if (it == pivot_of_row.end()) break;
            const Column& piv = reduced[it->second];
            long long f = (p - col.back().second * inv_mod(piv.back().second, p) % p) % p;
            col = axpy(col, piv, f, p);
        }
        if (!col.empty()) {
            pivot_of_row[col.back().first] = static_cast<int>(reduced.size());
            reduced.push_back(std::move(col));
            ++rank;
        }
    }
    return rank;
}

namespace {

struct BoundaryMatrices {
    std::vector<Column> d1;  // edges -> vertices
    std::vector<Column> d2;  // triangles -> edges
};

BoundaryMatrices boundaries(const OrderComplex& c) {
    BoundaryMatrices m;
    std::map<std::array<int, 2>, int> edge_id;
    for (size_t e = 0; e < c.edges.size(); ++e) {
        const auto& [a, b] = c.edges[e];
        if (a >= b || a < 0 || b >= c.vertices) throw Error("order complex: bad edge");
        if (!edge_id.emplace(c.edges[e], static_cast<int>(e)).second)
            throw Error("order complex: duplicate edge");
        m.d1.push_back({{a, -1}, {b, 1}});
    }
    for (const auto& t : c.triangles) {
        const auto [a, b, c3] = t;
        auto id = [&](int u, int v) {
            auto it = edge_id.find({u, v});
            if (it == edge_id.end()) throw Error("order complex: triangle face missing");
            return it->second;
        };
        // d(a,b,c) = (b,c) - (a,c) + (a,b)
        Column col = {{id(a, b), 1}, {id(a, c3), -1}, {id(b, c3), 1}};
        std::sort(col.begin(), col.end());
        m.d2.push_back(std::move(col));
    }
    return m;
}

}  // namespace

BettiVector homology_ranks(const OrderComplex& c) {
    BettiVector out;
    if (c.vertices == 0) {
        if (!c.edges.empty() || !c.triangles.empty()) throw Error("order complex: edges without vertices");
        out.bm1 = 1;
        return out;
    }
    BoundaryMatrices m = boundaries(c);
    long long r1 = sparse_rank_mod_p(m.d1, kPrimeA);
    long long r2 = sparse_rank_mod_p(m.d2, kPrimeA);
    if (r1 != sparse_rank_mod_p(m.d1, kPrimeB) || r2 != sparse_rank_mod_p(m.d2, kPrimeB))
        throw Error("homology_ranks: prime fields disagree on a boundary rank");
    long long v = c.vertices, e = static_cast<long long>(c.edges.size()),
              t = static_cast<long long>(c.triangles.size());
    out.b0 = v - 1 - r1;
    out.b1 = e - r1 - r2;
    out.b2 = t - r2;
    return out;
}

long long euler_characteristic(const OrderComplex& c) {
    return static_cast<long long>(c.vertices) - static_cast<long long>(c.edges.size()) +
           static_cast<long long>(c.triangles.size());
}

}  // namespace polyinv
