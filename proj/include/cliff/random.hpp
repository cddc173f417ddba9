#pragma once

// Seeded generators for the random filtration models.  All randomness flows
// from a 64-bit root plus a derivation path (purpose tag, trial index), so
// independent trials get independent streams and a rerun with the same seed
// reproduces every stream regardless of scheduling.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cliff/filtration.hpp"

namespace cliff {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// xoshiro256** seeded via splitmix64.
struct rng64 {
    std::uint64_t s[4] = {1, 2, 3, 4};

    explicit rng64(std::uint64_t seed_value = 0) {
        std::uint64_t sm = seed_value;
        for (auto& word : s) word = detail::splitmix64(sm);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // unbiased value in [0, bound)
    std::uint64_t bounded(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

    // uniform double in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

struct seed {
    std::uint64_t root = 0;
    std::string purpose;      // derivation path: tag
    std::uint64_t trial = 0;  // derivation path: index

    seed derived(std::string_view tag, std::uint64_t index) const {
        return seed{root, purpose.empty() ? std::string(tag) : purpose + "/" + std::string(tag), index};
    }

    rng64 stream() const {
        std::uint64_t mix = root;
        mix ^= detail::fnv1a64(purpose) + 0x9e3779b97f4a7c15ULL;
        (void)detail::splitmix64(mix);
        mix ^= trial * 0xda942042e4dd58b5ULL + 1;
        return rng64(detail::splitmix64(mix) ^ root);
    }
};

// All edges of the complete graph in lexicographic (u,v) order.
inline std::vector<edge> all_edges(std::uint32_t n) {
    std::vector<edge> edges;
    edges.reserve(edge_count(n));
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back(edge{u, v});
    return edges;
}

// Uniformly random edge order (Fisher-Yates over all C(n,2) edges).
inline edge_order er_order(std::uint32_t n, const seed& s) {
    edge_order eo;
    eo.n = n;
    eo.order = all_edges(n);
    rng64 rng = s.derived("er", s.trial).stream();
    for (std::size_t k = eo.order.size(); k > 1; --k)
        std::swap(eo.order[k - 1], eo.order[rng.bounded(k)]);
    return eo;
}

// n points in [0,1]^d, flat coordinate storage.
struct point_cloud {
    std::uint32_t dim = 0;
    std::vector<double> coords;  // size() == n * dim

    std::uint32_t size() const { return static_cast<std::uint32_t>(coords.size() / dim); }
    const double* point(std::uint32_t i) const { return coords.data() + static_cast<std::size_t>(i) * dim; }
};

struct vr_result {
    point_cloud points;
    edge_order order;
    std::vector<double> lengths;  // per rank, non-decreasing
};

// Edge order by increasing Euclidean length; exact ties fall back to
// lexicographic (u,v).  Distances are compared squared.  This is the test
// hook: it accepts an explicit point cloud and does no sampling.
inline vr_result vr_from_points(point_cloud points) {
    const std::uint32_t n = points.size();
    struct lengthed_edge {
        double d2;
        edge e;
    };
    std::vector<lengthed_edge> edges;
    edges.reserve(edge_count(n));
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) {
            double d2 = 0;
            const double* pu = points.point(u);
            const double* pv = points.point(v);
            for (std::uint32_t k = 0; k < points.dim; ++k) {
                double diff = pu[k] - pv[k];
                d2 += diff * diff;
            }
            edges.push_back({d2, edge{u, v}});
        }
    std::sort(edges.begin(), edges.end(), [](const lengthed_edge& x, const lengthed_edge& y) {
        if (x.d2 != y.d2) return x.d2 < y.d2;
        return x.e < y.e;
    });
    vr_result out;
    out.points = std::move(points);
    out.order.n = n;
    out.order.order.reserve(edges.size());
    out.lengths.reserve(edges.size());
    for (const lengthed_edge& le : edges) {
        out.order.order.push_back(le.e);
        out.lengths.push_back(std::sqrt(le.d2));
    }
    return out;
}

inline vr_result vr_order(std::uint32_t n, std::uint32_t d, const seed& s) {
    rng64 rng = s.derived("vr-points", s.trial).stream();
    point_cloud points;
    points.dim = d;
    points.coords.resize(static_cast<std::size_t>(n) * d);
    for (double& x : points.coords) x = rng.unit();
    return vr_from_points(std::move(points));
}

}  // namespace cliff
