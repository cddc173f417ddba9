#pragma once

// Clique (flag) filtrations in dimension 1: an edge order on the complete
// graph induces entry times for all triangles, and the triangle columns of
// the 1-boundary matrix, sorted by entry time, form a staircase matrix.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cliff/z2.hpp"

namespace cliff {

struct edge {
    std::uint32_t u = 0, v = 0;  // u < v
    auto operator<=>(const edge&) const = default;
};

struct triangle {
    std::uint32_t a = 0, b = 0, c = 0;  // a < b < c
    auto operator<=>(const triangle&) const = default;
};

inline std::uint64_t edge_count(std::uint32_t n) {
    return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

inline std::uint64_t triangle_count(std::uint32_t n) {
    if (n < 3) return 0;
    return static_cast<std::uint64_t>(n) * (n - 1) * (n - 2) / 6;
}

// A total order (permutation) of all edges of the complete graph on n
// vertices; rank(e) = position in `order`, 0-based.
struct edge_order {
    std::uint32_t n = 0;
    std::vector<edge> order;

    // rank lookup, indexed by u*n+v (either orientation)
    std::vector<row_index> rank_table() const {
        std::vector<row_index> table(static_cast<std::size_t>(n) * n, 0);
        for (std::size_t r = 0; r < order.size(); ++r) {
            const edge& e = order[r];
            table[static_cast<std::size_t>(e.u) * n + e.v] = static_cast<row_index>(r);
            table[static_cast<std::size_t>(e.v) * n + e.u] = static_cast<row_index>(r);
        }
        return table;
    }
};

inline bool validate(const edge_order& eo) {
    if (eo.n < 2) return false;
    if (eo.order.size() != edge_count(eo.n)) return false;
    std::vector<char> seen(static_cast<std::size_t>(eo.n) * eo.n, 0);
    for (const edge& e : eo.order) {
        if (e.u >= e.v || e.v >= eo.n) return false;
        std::size_t id = static_cast<std::size_t>(e.u) * eo.n + e.v;
        if (seen[id]) return false;
        seen[id] = 1;
    }
    return true;
}

// All triangles sorted by entry time (= rank of the largest edge),
// ties ordered by the chosen policy.
struct column_order {
    std::vector<triangle> triangles;
    std::vector<row_index> entry_times;  // parallel, non-decreasing
};

// Default deterministic tie rule: within an entry-time class, sort by
// (rank of second-largest edge, rank of smallest edge).
struct lex_by_other_edges {};

// Full ordering per tie class (entry times with >= 2 triangles); used by the
// worst-case construction to pin step columns.
struct explicit_order {
    std::map<row_index, std::vector<triangle>> classes;
};

using tie_policy = std::variant<lex_by_other_edges, explicit_order>;

struct bad_policy : std::runtime_error {
    explicit bad_policy(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct ranked_triangle {
    triangle t;
    row_index entry;   // max edge rank
    row_index second;  // middle edge rank
    row_index least;   // min edge rank
};

inline std::vector<ranked_triangle> rank_all_triangles(const edge_order& eo) {
    const std::vector<row_index> ranks = eo.rank_table();
    auto rank_of = [&](std::uint32_t x, std::uint32_t y) {
        return ranks[static_cast<std::size_t>(x) * eo.n + y];
    };
    std::vector<ranked_triangle> out;
    out.reserve(triangle_count(eo.n));
    for (std::uint32_t a = 0; a + 2 < eo.n; ++a)
        for (std::uint32_t b = a + 1; b + 1 < eo.n; ++b)
            for (std::uint32_t c = b + 1; c < eo.n; ++c) {
                row_index r0 = rank_of(a, b), r1 = rank_of(a, c), r2 = rank_of(b, c);
                if (r0 > r1) std::swap(r0, r1);
                if (r1 > r2) std::swap(r1, r2);
                if (r0 > r1) std::swap(r0, r1);
                out.push_back({triangle{a, b, c}, r2, r1, r0});
            }
    return out;
}

}  // namespace detail

inline column_order build_columns(const edge_order& eo, const tie_policy& policy = lex_by_other_edges{}) {
    std::vector<detail::ranked_triangle> ranked = detail::rank_all_triangles(eo);
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        if (x.entry != y.entry) return x.entry < y.entry;
        if (x.second != y.second) return x.second < y.second;
        return x.least < y.least;
    });

    if (const explicit_order* ex = std::get_if<explicit_order>(&policy)) {
        // Rearrange every tie class according to the explicit ordering; the
        // policy must cover exactly the classes with >= 2 triangles.
        std::size_t covered = 0;
        std::size_t begin = 0;
        while (begin < ranked.size()) {
            std::size_t end = begin + 1;
            while (end < ranked.size() && ranked[end].entry == ranked[begin].entry) ++end;
            if (end - begin >= 2) {
                auto it = ex->classes.find(ranked[begin].entry);
                if (it == ex->classes.end())
                    throw bad_policy("explicit policy misses tie class at entry time " +
                                     std::to_string(ranked[begin].entry));
                const std::vector<triangle>& wanted = it->second;
                if (wanted.size() != end - begin)
                    throw bad_policy("explicit policy has wrong class size at entry time " +
                                     std::to_string(ranked[begin].entry));
                std::vector<triangle> have;
                for (std::size_t k = begin; k < end; ++k) have.push_back(ranked[k].t);
                std::vector<triangle> check = wanted;
                std::sort(check.begin(), check.end());
                std::sort(have.begin(), have.end());
                if (check != have)
                    throw bad_policy("explicit policy is not a permutation of the tie class at entry time " +
                                     std::to_string(ranked[begin].entry));
                for (std::size_t k = 0; k < wanted.size(); ++k) ranked[begin + k].t = wanted[k];
                ++covered;
            }
            begin = end;
        }
        if (covered != ex->classes.size())
            throw bad_policy("explicit policy names entry times that are not tie classes");
    }

    column_order out;
    out.triangles.reserve(ranked.size());
    out.entry_times.reserve(ranked.size());
    for (const auto& rt : ranked) {
        out.triangles.push_back(rt.t);
        out.entry_times.push_back(rt.entry);
    }
    return out;
}

struct filtration {
    edge_order edges;
    column_order columns;

    bool operator==(const filtration& other) const {
        return edges.n == other.edges.n && edges.order == other.edges.order &&
               columns.triangles == other.columns.triangles &&
               columns.entry_times == other.columns.entry_times;
    }
};

inline filtration make_filtration(edge_order eo, const tie_policy& policy = lex_by_other_edges{}) {
    filtration f;
    f.columns = build_columns(eo, policy);
    f.edges = std::move(eo);
    return f;
}

// Mutual consistency: the column section must list all triangles, sorted by
// entry times that match the edge ranks.
inline bool validate(const filtration& f) {
    if (!validate(f.edges)) return false;
    if (f.columns.triangles.size() != triangle_count(f.edges.n)) return false;
    if (f.columns.entry_times.size() != f.columns.triangles.size()) return false;
    const std::vector<row_index> ranks = f.edges.rank_table();
    auto rank_of = [&](std::uint32_t x, std::uint32_t y) {
        return ranks[static_cast<std::size_t>(x) * f.edges.n + y];
    };
    row_index prev = 0;
    for (std::size_t k = 0; k < f.columns.triangles.size(); ++k) {
        const triangle& t = f.columns.triangles[k];
        if (!(t.a < t.b && t.b < t.c && t.c < f.edges.n)) return false;
        row_index entry = std::max({rank_of(t.a, t.b), rank_of(t.a, t.c), rank_of(t.b, t.c)});
        if (entry != f.columns.entry_times[k]) return false;
        if (k > 0 && entry < prev) return false;
        prev = entry;
    }
    // permutation check: distinct triples of the right count
    std::vector<triangle> sorted = f.columns.triangles;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k)
        if (sorted[k] == sorted[k - 1]) return false;
    return true;
}

// r = C(n,2) rows, one 3-entry column per triangle; the pivot of each column
// equals the triangle's entry time, so the matrix is staircase by build.
inline staircase_matrix boundary_matrix(const filtration& f) {
    const std::vector<row_index> ranks = f.edges.rank_table();
    auto rank_of = [&](std::uint32_t x, std::uint32_t y) {
        return ranks[static_cast<std::size_t>(x) * f.edges.n + y];
    };
    staircase_matrix m;
    m.rows = static_cast<row_index>(edge_count(f.edges.n));
    m.columns.reserve(f.columns.triangles.size());
    for (const triangle& t : f.columns.triangles) {
        sparse_column column = {rank_of(t.a, t.b), rank_of(t.a, t.c), rank_of(t.b, t.c)};
        std::sort(column.begin(), column.end());
        m.columns.push_back(std::move(column));
    }
    return m;
}

}  // namespace cliff
