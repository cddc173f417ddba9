#pragma once

// First Betti numbers along a clique filtration.
//
// The cheap route derives the whole profile from one reduction: a positive
// edge (one that closes a cycle) raises beta_1 at its rank, and every
// non-zero reduced column lowers it again at its entry time.  The expensive
// route (betti1_bruteforce) rebuilds each prefix complex and runs dense GF(2)
// elimination from scratch; it shares no code with the reduction engine and
// exists to check the cheap route.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliff/filtration.hpp"
#include "cliff/parallel.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

namespace cliff {

struct inconsistent_input : std::runtime_error {
    explicit inconsistent_input(const std::string& what) : std::runtime_error(what) {}
};

// Ranks of the edges whose endpoints are already connected when the edge is
// inserted, i.e. the edges that create a cycle.  Union-find with path
// halving and union by size.
inline std::vector<row_index> positive_edges(const edge_order& eo) {
    std::vector<std::uint32_t> parent(eo.n);
    std::vector<std::uint32_t> size(eo.n, 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<row_index> positive;
    for (std::size_t r = 0; r < eo.order.size(); ++r) {
        std::uint32_t a = find(eo.order[r].u);
        std::uint32_t b = find(eo.order[r].v);
        if (a == b) {
            positive.push_back(static_cast<row_index>(r));
        } else {
            if (size[a] < size[b]) std::swap(a, b);
            parent[b] = a;
            size[a] += size[b];
        }
    }
    return positive;
}

// values[i] = beta_1 of the clique complex on the first i edges, i = 0..m.
inline std::vector<std::uint32_t> betti1_profile(const filtration& f, const staircase_matrix& reduced) {
    const std::size_t m = f.edges.order.size();
    if (reduced.rows != m || reduced.columns.size() != f.columns.triangles.size())
        throw inconsistent_input("betti1_profile: reduced matrix does not match the filtration");

    // cycles born at rank < i minus cycles killed by a column with entry < i
    std::vector<std::uint32_t> births(m + 1, 0);
    for (row_index r : positive_edges(f.edges)) births[r + 1] += 1;
    std::vector<std::uint32_t> deaths(m + 1, 0);
    for (std::size_t j = 0; j < reduced.columns.size(); ++j)
        if (!reduced.columns[j].empty()) deaths[f.columns.entry_times[j] + 1] += 1;

    std::vector<std::uint32_t> values(m + 1, 0);
    std::uint32_t born = 0, dead = 0;
    for (std::size_t i = 0; i <= m; ++i) {
        born += births[i];
        dead += deaths[i];
        if (dead > born)
            throw inconsistent_input("betti1_profile: more columns than cycles at prefix " +
                                     std::to_string(i));
        values[i] = born - dead;
    }
    return values;
}

namespace detail {

// Rank of a GF(2) matrix given as bit-packed rows.
inline std::uint32_t gf2_rank(std::vector<std::vector<std::uint64_t>> rows) {
    std::uint32_t rank = 0;
    std::size_t words = rows.empty() ? 0 : rows[0].size();
    for (std::size_t w = 0; w < words; ++w) {
        for (int bit = 0; bit < 64; ++bit) {
            const std::uint64_t mask = std::uint64_t(1) << bit;
            std::size_t pivot_row = rank;
            while (pivot_row < rows.size() && !(rows[pivot_row][w] & mask)) ++pivot_row;
            if (pivot_row == rows.size()) continue;
            std::swap(rows[rank], rows[pivot_row]);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r != rank && (rows[r][w] & mask))
                    for (std::size_t k = 0; k < words; ++k) rows[r][k] ^= rows[rank][k];
            }
            ++rank;
            if (rank == rows.size()) return rank;
        }
    }
    return rank;
}

}  // namespace detail

// Independent oracle: build K_i explicitly and evaluate
// beta_1 = i - rank(boundary_1) - rank(boundary_2) by dense elimination.
inline std::uint32_t betti1_bruteforce(const edge_order& eo, std::uint32_t i) {
    const std::uint32_t n = eo.n;
    const std::size_t vertex_words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> d1_rows;
    d1_rows.reserve(i);
    for (std::uint32_t r = 0; r < i; ++r) {
        std::vector<std::uint64_t> row(vertex_words, 0);
        row[eo.order[r].u / 64] |= std::uint64_t(1) << (eo.order[r].u % 64);
        row[eo.order[r].v / 64] |= std::uint64_t(1) << (eo.order[r].v % 64);
        d1_rows.push_back(std::move(row));
    }
    const std::uint32_t rank_d1 = detail::gf2_rank(std::move(d1_rows));

    const std::vector<row_index> ranks = eo.rank_table();
    auto rank_of = [&](std::uint32_t x, std::uint32_t y) {
        return ranks[static_cast<std::size_t>(x) * n + y];
    };
    const std::size_t edge_words = (i + 63) / 64;
    std::vector<std::vector<std::uint64_t>> d2_rows;
    for (std::uint32_t a = 0; a + 2 < n; ++a)
        for (std::uint32_t b = a + 1; b + 1 < n; ++b)
            for (std::uint32_t c = b + 1; c < n; ++c) {
                row_index r0 = rank_of(a, b), r1 = rank_of(a, c), r2 = rank_of(b, c);
                if (r0 >= i || r1 >= i || r2 >= i) continue;
                std::vector<std::uint64_t> row(edge_words, 0);
                row[r0 / 64] |= std::uint64_t(1) << (r0 % 64);
                row[r1 / 64] |= std::uint64_t(1) << (r1 % 64);
                row[r2 / 64] |= std::uint64_t(1) << (r2 % 64);
                d2_rows.push_back(std::move(row));
            }
    const std::uint32_t rank_d2 = detail::gf2_rank(std::move(d2_rows));
    return i - rank_d1 - rank_d2;
}

// Every critical index p must certify a cycle: beta_1(K_{p+1}) > 0
// (the complex that contains edges of rank 0..p).
inline bool critical_implies_cycle(const filtration& f, const staircase_matrix& reduced,
                                   const reduction_stats& stats) {
    const std::vector<std::uint32_t> profile = betti1_profile(f, reduced);
    for (row_index p : stats.critical_indices)
        if (profile[p + 1] == 0) return false;
    return true;
}

struct scan_model {
    enum class kind { er, vr };
    kind model = kind::er;
    std::uint32_t dim = 2;  // vr only

    std::string tag() const {
        if (model == kind::er) return "er";
        return "vr(d=" + std::to_string(dim) + ")";
    }
};

struct betti_scan_result {
    std::string model;
    std::uint32_t n = 0;
    std::uint32_t trials = 0;
    std::vector<std::uint32_t> grid;  // strictly increasing prefix lengths
    std::vector<double> p_hat;        // empirical P(beta_1(K_i) > 0)
    // reporting parameters: smallest grid point T beyond which every
    // estimate stays <= A
    std::uint32_t threshold_T = 0;
    double threshold_A = 0.05;
};

// ~`points` geometrically spaced prefix lengths in [1, m], always ending at m.
inline std::vector<std::uint32_t> default_scan_grid(std::uint32_t m, std::uint32_t points = 30) {
    std::vector<std::uint32_t> grid;
    for (std::uint32_t k = 0; k < points; ++k) {
        double x = std::pow(static_cast<double>(m), static_cast<double>(k) / (points - 1));
        std::uint32_t i = static_cast<std::uint32_t>(std::lround(x));
        if (i < 1) i = 1;
        if (i > m) i = m;
        if (grid.empty() || i > grid.back()) grid.push_back(i);
    }
    if (grid.empty() || grid.back() != m) grid.push_back(m);
    return grid;
}

inline betti_scan_result betti_probability_scan(const scan_model& model, std::uint32_t n,
                                                std::uint32_t trials, std::vector<std::uint32_t> grid,
                                                const seed& s, bool parallel = true) {
    if (trials < 1) throw std::invalid_argument("betti_probability_scan: trials must be >= 1");
    const std::uint64_t m = edge_count(n);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] > m) throw std::invalid_argument("betti_probability_scan: grid point beyond C(n,2)");
        if (g > 0 && grid[g] <= grid[g - 1])
            throw std::invalid_argument("betti_probability_scan: grid must be strictly increasing");
    }
    betti_scan_result result;
    result.model = model.tag();
    result.n = n;
    result.trials = trials;
    result.grid = std::move(grid);

    std::vector<std::vector<char>> exceed(trials);
    parallel_for(
        trials,
        [&](std::size_t trial) {
            seed trial_seed = s.derived("scan:" + result.model + ":n=" + std::to_string(n), trial);
            edge_order eo = model.model == scan_model::kind::er
                                ? er_order(n, trial_seed)
                                : vr_order(n, model.dim, trial_seed).order;
            filtration f = make_filtration(std::move(eo));
            staircase_matrix boundary = boundary_matrix(f);
            reduction_result red = reduce(boundary);
            std::vector<std::uint32_t> profile = betti1_profile(f, red.matrix);
            std::vector<char>& flags = exceed[trial];
            flags.resize(result.grid.size());
            for (std::size_t g = 0; g < result.grid.size(); ++g)
                flags[g] = profile[result.grid[g]] > 0 ? 1 : 0;
        },
        parallel);

    result.p_hat.assign(result.grid.size(), 0.0);
    for (std::uint32_t trial = 0; trial < trials; ++trial)
        for (std::size_t g = 0; g < result.grid.size(); ++g)
            result.p_hat[g] += exceed[trial][g];
    for (double& v : result.p_hat) v /= trials;

    // observed threshold for the report
    result.threshold_T = result.grid.back();
    for (std::size_t g = result.grid.size(); g-- > 0;) {
        if (result.p_hat[g] > result.threshold_A) break;
        result.threshold_T = result.grid[g];
    }
    return result;
}

inline std::string scan_to_csv(const betti_scan_result& r) {
    std::string out = "model,n,trials,i,p_hat\n";
    char line[160];
    for (std::size_t g = 0; g < r.grid.size(); ++g) {
        std::snprintf(line, sizeof(line), "%s,%u,%u,%u,%.6f\n", r.model.c_str(), r.n, r.trials,
                      r.grid[g], r.p_hat[g]);
        out += line;
    }
    return out;
}

}  // namespace cliff
