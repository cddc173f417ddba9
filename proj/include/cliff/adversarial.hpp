#pragma once

// Adversarial clique filtration with Theta(n^4) fill-up and Theta(n^7) cost.
//
// Vertices: one roof plus five blocks A,B,C,D,E of size p (p odd), n = 5p+1.
// Edges arrive in eight blocks.  Blocks II (C-D minus the matching c_i d_i)
// and III (all of B-C) carry no triangles when they arrive.  Block IV walks
// an Eulerian circuit of the block-II graph and ties its vertices to A; the
// designated step columns along that walk form a cascade: each one holds its
// pivot, the previous block-IV row, and one band entry at a fresh block-II
// row.  Reducing any column whose pivot lands in block IV therefore walks
// down the whole cascade and accumulates one entry per band row.  Block V
// feeds Theta(p^2) columns into that walk; they exit with pairwise distinct
// block-III pivots and Theta(p^2) block-II entries each (the fat columns).
// Blocks VI and VII repeat the same trick one level up: a second cascade
// over the block-III rows makes Theta(p^3) columns accumulate Theta(p^2)
// block-III entries, each of which must be cleared by adding a fat column.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliff/filtration.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

namespace cliff {

struct not_eulerian : std::runtime_error {
    explicit not_eulerian(const std::string& what) : std::runtime_error(what) {}
};

struct invalid_p : std::runtime_error {
    explicit invalid_p(const std::string& what) : std::runtime_error(what) {}
};

// Hierholzer on a simple graph with every degree even.  Deterministic:
// neighbors are tried smallest-first.  Returns the circuit's vertex
// sequence, one position per traversed edge plus the start.
inline std::vector<std::uint32_t> eulerian_path(std::vector<std::vector<std::uint32_t>> adjacency,
                                                std::uint32_t start) {
    const std::size_t n = adjacency.size();
    if (start >= n || adjacency[start].empty())
        throw not_eulerian("eulerian_path: start vertex has no incident edges");
    std::size_t degree_sum = 0;
    for (std::vector<std::uint32_t>& neighbors : adjacency) {
        if (neighbors.size() % 2 != 0) throw not_eulerian("eulerian_path: vertex of odd degree");
        std::sort(neighbors.begin(), neighbors.end());
        degree_sum += neighbors.size();
    }
    std::vector<char> used(n * n, 0);
    std::vector<std::size_t> cursor(n, 0);
    std::vector<std::uint32_t> stack = {start};
    std::vector<std::uint32_t> sequence;
    while (!stack.empty()) {
        std::uint32_t v = stack.back();
        std::size_t& k = cursor[v];
        const std::vector<std::uint32_t>& neighbors = adjacency[v];
        while (k < neighbors.size() && used[static_cast<std::size_t>(v) * n + neighbors[k]]) ++k;
        if (k == neighbors.size()) {
            sequence.push_back(v);
            stack.pop_back();
        } else {
            std::uint32_t w = neighbors[k];
            used[static_cast<std::size_t>(v) * n + w] = 1;
            used[static_cast<std::size_t>(w) * n + v] = 1;
            stack.push_back(w);
        }
    }
    std::reverse(sequence.begin(), sequence.end());
    if (sequence.size() != degree_sum / 2 + 1)
        throw not_eulerian("eulerian_path: edge support is not connected");
    return sequence;
}

// Eulerian circuit of K_{p,p} minus the perfect matching {P_i Q_i}, p odd,
// starting at P_{shift}.  The circuit concatenates one Hamiltonian cycle per
// pair of difference classes {2s+1, 2s+2}; inside a cycle both part indices
// step down by one per visit, so any window of p+1 consecutive vertices is
// repeat-free except for a single collision at each cycle seam.  The cascade
// construction needs exactly this local distinctness; a greedy Hierholzer
// circuit revisits vertices inside the windows and breaks the cascade chain.
template <typename PartP, typename PartQ>
std::vector<std::uint32_t> minus_matching_circuit(std::uint32_t p, PartP part_p, PartQ part_q,
                                                  std::uint32_t shift) {
    std::vector<std::uint32_t> sequence;
    sequence.reserve(static_cast<std::size_t>(p) * (p - 1) + 1);
    auto pv = [&](std::uint32_t i) { return part_p((i + shift) % p); };
    auto qv = [&](std::uint32_t i) { return part_q((i + shift) % p); };
    sequence.push_back(pv(0));
    for (std::uint32_t s = 0; s < (p - 1) / 2; ++s) {
        const std::uint32_t t = 2 * s + 1;
        for (std::uint32_t k = 0; k < p; ++k) {
            sequence.push_back(qv((t + p - k) % p));
            sequence.push_back(pv(p - 1 - k));
        }
    }
    return sequence;
}

enum class edge_group : std::uint8_t { g1 = 1, g2, g3, g4, g5, g6, g7, g8 };

struct worst_case_params {
    std::uint32_t p = 3;  // odd, >= 3
};

struct worst_case_filtration_t {
    filtration filt;
    std::vector<edge_group> groups;  // group label per edge rank
    std::uint32_t p = 0;
    std::uint32_t designated_step_columns = 0;
    // block-VII pivots for which no B-D-E step column could be designated;
    // expected 0 for every valid p
    std::uint32_t missing_vii_steps = 0;
};

inline worst_case_filtration_t worst_case_filtration(worst_case_params params, const seed& s) {
    const std::uint32_t p = params.p;
    if (p < 3 || p % 2 == 0) throw invalid_p("worst_case_filtration: p must be odd and >= 3");
    const std::uint32_t n = 5 * p + 1;

    const std::uint32_t roof = 0;
    auto va = [&](std::uint32_t i) { return 1 + i; };
    auto vb = [&](std::uint32_t i) { return 1 + p + i; };
    auto vc = [&](std::uint32_t i) { return 1 + 2 * p + i; };
    auto vd = [&](std::uint32_t i) { return 1 + 3 * p + i; };
    auto ve = [&](std::uint32_t i) { return 1 + 4 * p + i; };

    std::vector<edge> edges;
    std::vector<edge_group> groups;
    edges.reserve(edge_count(n));
    groups.reserve(edge_count(n));
    std::vector<char> placed(static_cast<std::size_t>(n) * n, 0);
    auto is_placed = [&](std::uint32_t x, std::uint32_t y) {
        return placed[static_cast<std::size_t>(x) * n + y] != 0;
    };
    auto push = [&](std::uint32_t x, std::uint32_t y, edge_group g) {
        if (x > y) std::swap(x, y);
        placed[static_cast<std::size_t>(x) * n + y] = 1;
        placed[static_cast<std::size_t>(y) * n + x] = 1;
        edges.push_back(edge{x, y});
        groups.push_back(g);
    };
    auto mk_tri = [](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        if (x > y) std::swap(x, y);
        if (y > z) std::swap(y, z);
        if (x > y) std::swap(x, y);
        return triangle{x, y, z};
    };

    // one designated step triangle per controlled pivot edge
    std::map<std::pair<std::uint32_t, std::uint32_t>, triangle> designated;
    auto designate = [&](std::uint32_t x, std::uint32_t y, triangle t) {
        if (x > y) std::swap(x, y);
        designated[{x, y}] = t;
    };

    // ---- group I: roof stars, the two block paths, the two bridges, and
    //      the edges from the last (p+1)/2 vertices of E to all of D
    for (std::uint32_t i = 0; i < p; ++i) push(roof, va(i), edge_group::g1);
    for (std::uint32_t i = 0; i < p; ++i) push(roof, vb(i), edge_group::g1);
    for (std::uint32_t i = 0; i < p; ++i) push(roof, ve(i), edge_group::g1);
    for (std::uint32_t i = 0; i + 1 < p; ++i) push(va(i), va(i + 1), edge_group::g1);
    for (std::uint32_t i = 0; i + 1 < p; ++i) push(ve(i), ve(i + 1), edge_group::g1);
    push(va(0), vc(0), edge_group::g1);
    push(vb(p - 1), ve(0), edge_group::g1);
    for (std::uint32_t j = (p - 1) / 2; j < p; ++j)
        for (std::uint32_t k = 0; k < p; ++k) push(ve(j), vd(k), edge_group::g1);

    // ---- group II: C x D minus the matching c_i d_i, seeded order
    {
        std::vector<edge> block;
        for (std::uint32_t i = 0; i < p; ++i)
            for (std::uint32_t k = 0; k < p; ++k)
                if (i != k) block.push_back(edge{vc(i), vd(k)});
        rng64 rng = s.derived("worst:group2", s.trial).stream();
        for (std::size_t k = block.size(); k > 1; --k) std::swap(block[k - 1], block[rng.bounded(k)]);
        for (const edge& e : block) push(e.u, e.v, edge_group::g2);
    }

    // ---- group III: all of B x C, seeded order
    {
        std::vector<edge> block;
        for (std::uint32_t i = 0; i < p; ++i)
            for (std::uint32_t k = 0; k < p; ++k) block.push_back(edge{vb(i), vc(k)});
        rng64 rng = s.derived("worst:group3", s.trial).stream();
        for (std::size_t k = block.size(); k > 1; --k) std::swap(block[k - 1], block[rng.bounded(k)]);
        for (const edge& e : block) push(e.u, e.v, edge_group::g3);
    }

    // ---- group IV: first cascade.  Walk the Eulerian circuit of the
    //      block-II graph from c_0; apex a_{j-1} is tied to the circuit
    //      positions (j-1)(p-1) .. j(p-1).  Adjacent segments overlap in one
    //      vertex, which chains the cascade across apexes; the very first
    //      circuit edge hangs off a_0 c_0 from group I.
    const std::vector<std::uint32_t> circuit1 = minus_matching_circuit(p, vc, vd, 0);
    for (std::uint32_t j = 1; j <= p; ++j) {
        const std::uint32_t apex = va(j - 1);
        const std::size_t lo = static_cast<std::size_t>(j - 1) * (p - 1);
        const std::size_t hi = static_cast<std::size_t>(j) * (p - 1);
        for (std::size_t t = lo; t <= hi; ++t) {
            const std::uint32_t w = circuit1[t];
            if (j == 1 && t == 0) continue;  // a_0 c_0 is a group-I edge
            if (is_placed(apex, w)) continue;
            push(apex, w, edge_group::g4);
            if (t == lo)
                designate(apex, w, mk_tri(va(j - 2), apex, w));
            else
                designate(apex, w, mk_tri(apex, circuit1[t - 1], w));
        }
    }

    // ---- group V: a_{p-1} to all of B; step columns go through the roof
    for (std::uint32_t i = 0; i < p; ++i) {
        push(va(p - 1), vb(i), edge_group::g5);
        designate(va(p - 1), vb(i), mk_tri(roof, va(p - 1), vb(i)));
    }

    // ---- group VI: second cascade over B x C minus the matching b_i c_i,
    //      circuit from b_{p-1}, apexes e_0 .. e_{p-1}; the first circuit
    //      edge hangs off b_{p-1} e_0 from group I.
    // shifting both parts by p-1 keeps the excluded matching aligned and
    // starts the circuit at b_{p-1}
    const std::vector<std::uint32_t> circuit2 = minus_matching_circuit(p, vb, vc, p - 1);
    // block-VI edges incident to each b_i, as (e index, rank); used to pick
    // the step columns for group VII
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> vi_edges_of_b(p);
    for (std::uint32_t j = 1; j <= p; ++j) {
        const std::uint32_t apex = ve(j - 1);
        const std::size_t lo = static_cast<std::size_t>(j - 1) * (p - 1);
        const std::size_t hi = static_cast<std::size_t>(j) * (p - 1);
        for (std::size_t t = lo; t <= hi; ++t) {
            const std::uint32_t w = circuit2[t];
            if (j == 1 && t == 0) continue;  // b_{p-1} e_0 is a group-I edge
            if (is_placed(apex, w)) continue;
            push(apex, w, edge_group::g6);
            if (w >= vb(0) && w < vc(0))
                vi_edges_of_b[w - vb(0)].push_back({j - 1, static_cast<std::uint32_t>(edges.size() - 1)});
            if (t == lo)
                designate(apex, w, mk_tri(ve(j - 2), apex, w));
            else
                designate(apex, w, mk_tri(apex, circuit2[t - 1], w));
        }
    }

    // ---- group VII: the last (p+1)/2 vertices of B to all of D, both in
    //      decreasing index order.  The step column for b_i d_k routes
    //      through an e_j that is VI-adjacent to b_i and I-adjacent to d_k;
    //      the latest such VI edge keeps the walk through cascade two long.
    std::uint32_t missing_vii = 0;
    for (std::uint32_t ii = 0; ii < (p + 1) / 2; ++ii) {
        const std::uint32_t i = p - 1 - ii;
        for (std::uint32_t kk = 0; kk < p; ++kk) {
            const std::uint32_t k = p - 1 - kk;
            push(vb(i), vd(k), edge_group::g7);
            std::int64_t best_rank = -1;
            std::uint32_t best_e = 0;
            for (const auto& [e_index, rank] : vi_edges_of_b[i])
                if (e_index >= (p - 1) / 2 && static_cast<std::int64_t>(rank) > best_rank) {
                    best_rank = rank;
                    best_e = e_index;
                }
            if (best_rank >= 0)
                designate(vb(i), vd(k), mk_tri(vb(i), vd(k), ve(best_e)));
            else
                ++missing_vii;
        }
    }

    // ---- group VIII: everything else, seeded order
    {
        std::vector<edge> block;
        for (std::uint32_t u = 0; u + 1 < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (!is_placed(u, v)) block.push_back(edge{u, v});
        rng64 rng = s.derived("worst:group8", s.trial).stream();
        for (std::size_t k = block.size(); k > 1; --k) std::swap(block[k - 1], block[rng.bounded(k)]);
        for (const edge& e : block) push(e.u, e.v, edge_group::g8);
    }

    edge_order eo;
    eo.n = n;
    eo.order = std::move(edges);
    if (!validate(eo)) throw std::logic_error("worst_case_filtration: edge order is not a permutation");

    // Turn the designated triangles into a full explicit tie policy: within
    // every tie class the designated triangle comes first, the rest keep the
    // default order.
    std::vector<detail::ranked_triangle> ranked = detail::rank_all_triangles(eo);
    std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
        if (x.entry != y.entry) return x.entry < y.entry;
        if (x.second != y.second) return x.second < y.second;
        return x.least < y.least;
    });
    explicit_order policy;
    std::size_t begin = 0;
    while (begin < ranked.size()) {
        std::size_t end = begin + 1;
        while (end < ranked.size() && ranked[end].entry == ranked[begin].entry) ++end;
        if (end - begin >= 2) {
            const row_index entry = ranked[begin].entry;
            const edge pivot_edge = eo.order[entry];
            std::vector<triangle> ordered;
            ordered.reserve(end - begin);
            auto it = designated.find({pivot_edge.u, pivot_edge.v});
            if (it != designated.end()) ordered.push_back(it->second);
            for (std::size_t k = begin; k < end; ++k) {
                if (it != designated.end() && ranked[k].t == it->second) continue;
                ordered.push_back(ranked[k].t);
            }
            if (ordered.size() != end - begin)
                throw std::logic_error("worst_case_filtration: designated step column not in its tie class");
            policy.classes[entry] = std::move(ordered);
        }
        begin = end;
    }

    worst_case_filtration_t out;
    out.filt = make_filtration(std::move(eo), policy);
    out.groups = std::move(groups);
    out.p = p;
    out.designated_step_columns = static_cast<std::uint32_t>(designated.size());
    out.missing_vii_steps = missing_vii;
    return out;
}

struct worst_case_audit_report {
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::uint64_t fill_up = 0;
    std::uint64_t cost = 0;
    // reduced columns with a block-III pivot and at least p^2/8 block-II
    // entries
    std::uint32_t fat_columns = 0;
    std::uint32_t group3_pivot_columns = 0;
    std::uint32_t group2_pivot_columns = 0;
    bool fat_bound_ok = true;  // 4*fat >= p^2, checked for p >= 7
    double fillup_over_p4 = 0.0;
    double cost_over_p7 = 0.0;
};

inline worst_case_audit_report worst_case_audit(const worst_case_filtration_t& wc,
                                                const staircase_matrix& reduced,
                                                const reduction_stats& stats) {
    worst_case_audit_report report;
    report.p = wc.p;
    report.n = wc.filt.edges.n;
    report.fill_up = stats.fill_up;
    report.cost = stats.cost;
    const std::uint64_t p2 = static_cast<std::uint64_t>(wc.p) * wc.p;
    for (const sparse_column& column : reduced.columns) {
        if (column.empty()) continue;
        const edge_group pivot_group = wc.groups[column.back()];
        if (pivot_group == edge_group::g2) ++report.group2_pivot_columns;
        if (pivot_group != edge_group::g3) continue;
        ++report.group3_pivot_columns;
        std::uint64_t block2_entries = 0;
        for (row_index r : column)
            if (wc.groups[r] == edge_group::g2) ++block2_entries;
        if (8 * block2_entries >= p2) ++report.fat_columns;
    }
    report.fat_bound_ok = wc.p < 7 || 4ULL * report.fat_columns >= p2;
    const double dp = static_cast<double>(wc.p);
    report.fillup_over_p4 = static_cast<double>(report.fill_up) / std::pow(dp, 4);
    report.cost_over_p7 = static_cast<double>(report.cost) / std::pow(dp, 7);
    return report;
}

}  // namespace cliff
