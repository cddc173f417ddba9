#pragma once

// Sparse GF(2) columns and the instrumented left-to-right matrix reduction.
//
// A column is a strictly increasing sequence of row indices; the pivot of a
// non-zero column is its last entry.  The reduction traverses columns left to
// right and, while the current column shares its pivot with an earlier
// finalized column, adds that column to it.  Every addition is metered with
// the size of the added column, which is the cost unit used throughout.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliff {

using row_index = std::uint32_t;
using col_index = std::uint32_t;

inline constexpr col_index no_column = std::numeric_limits<col_index>::max();

// Row indices of the non-zero entries, strictly increasing.  Empty = zero.
using sparse_column = std::vector<row_index>;

struct invalid_matrix : std::runtime_error {
    explicit invalid_matrix(const std::string& what) : std::runtime_error(what) {}
};

struct mismatched_shapes : std::runtime_error {
    explicit mismatched_shapes(const std::string& what) : std::runtime_error(what) {}
};

inline std::optional<row_index> pivot(const sparse_column& column) {
    if (column.empty()) return std::nullopt;
    return column.back();
}

// GF(2) addition = symmetric difference of the supports.
inline sparse_column column_add(const sparse_column& a, const sparse_column& b) {
    sparse_column out;
    out.reserve(a.size() + b.size());
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_valid_column(const sparse_column& column, row_index rows) {
    for (std::size_t k = 0; k < column.size(); ++k) {
        if (column[k] >= rows) return false;
        if (k > 0 && column[k] <= column[k - 1]) return false;
    }
    return true;
}

struct staircase_matrix {
    row_index rows = 0;
    std::vector<sparse_column> columns;
};

// Pivots of non-zero columns, read left to right, must be non-decreasing.
inline bool validate_staircase(const staircase_matrix& m) {
    bool have_prev = false;
    row_index prev = 0;
    for (const sparse_column& column : m.columns) {
        if (!is_valid_column(column, m.rows)) return false;
        if (column.empty()) continue;
        row_index p = column.back();
        if (have_prev && p < prev) return false;
        prev = p;
        have_prev = true;
    }
    return true;
}

struct reduction_stats {
    std::uint64_t fill_up = 0;  // non-zero entries of the reduced matrix
    std::uint64_t cost = 0;     // sum of #M_j over all performed additions
    row_index rows = 0;
    col_index cols = 0;
    std::uint64_t additions_total = 0;
    std::vector<std::uint32_t> additions_per_column;
    std::vector<row_index> step_indices;      // sorted
    std::vector<row_index> critical_indices;  // sorted
    std::vector<std::pair<row_index, col_index>> pivot_pairs;  // sorted by row
    // (target, source) pairs in execution order; only filled on request.
    std::vector<std::pair<col_index, col_index>> addition_log;
};

struct reduce_options {
    bool record_additions = false;
};

struct index_classification {
    std::vector<row_index> step_indices;
    std::vector<row_index> critical_indices;
};

// Partition the reduced matrix's pivots: a pivot that already appears as a
// pivot of the unreduced matrix is a step index, anything else is critical.
inline index_classification classify_indices(const staircase_matrix& original,
                                             const staircase_matrix& reduced) {
    if (original.rows != reduced.rows || original.columns.size() != reduced.columns.size())
        throw mismatched_shapes("classify_indices: original and reduced shapes differ");
    std::vector<char> original_pivot(original.rows, 0);
    for (const sparse_column& column : original.columns)
        if (!column.empty()) original_pivot[column.back()] = 1;
    index_classification out;
    for (const sparse_column& column : reduced.columns) {
        if (column.empty()) continue;
        row_index p = column.back();
        (original_pivot[p] ? out.step_indices : out.critical_indices).push_back(p);
    }
    std::sort(out.step_indices.begin(), out.step_indices.end());
    std::sort(out.critical_indices.begin(), out.critical_indices.end());
    return out;
}

struct reduction_result {
    staircase_matrix matrix;
    reduction_stats stats;
};

// Algorithm: for i = 0..c-1, while column i is non-zero and its pivot is owned
// by an earlier finalized column j, add column j.  The owner map makes the
// choice of j deterministic (after reduction the owner of a pivot is unique).
inline reduction_result reduce(const staircase_matrix& input, reduce_options options = {}) {
    if (!validate_staircase(input))
        throw invalid_matrix("reduce: input is not a valid staircase matrix");

    reduction_result result;
    result.matrix.rows = input.rows;
    result.matrix.columns = input.columns;

    reduction_stats& stats = result.stats;
    stats.rows = input.rows;
    stats.cols = static_cast<col_index>(input.columns.size());
    stats.additions_per_column.resize(input.columns.size(), 0);

    std::vector<col_index> owner(input.rows, no_column);
    sparse_column scratch;

    for (col_index i = 0; i < stats.cols; ++i) {
        sparse_column& column = result.matrix.columns[i];
        std::uint32_t additions = 0;
        while (!column.empty()) {
            col_index j = owner[column.back()];
            if (j == no_column) break;
            const sparse_column& source = result.matrix.columns[j];
            stats.cost += source.size();
            ++additions;
            if (options.record_additions) stats.addition_log.emplace_back(i, j);
            scratch.clear();
            std::set_symmetric_difference(column.begin(), column.end(),
                                          source.begin(), source.end(),
                                          std::back_inserter(scratch));
            column.swap(scratch);
        }
        if (!column.empty()) owner[column.back()] = i;
        stats.additions_per_column[i] = additions;
        stats.additions_total += additions;
        stats.fill_up += column.size();
    }

    for (row_index p = 0; p < input.rows; ++p)
        if (owner[p] != no_column) stats.pivot_pairs.emplace_back(p, owner[p]);

    index_classification classes = classify_indices(input, result.matrix);
    stats.step_indices = std::move(classes.step_indices);
    stats.critical_indices = std::move(classes.critical_indices);
    return result;
}

// cost(M) <= c * #M' for every completed reduction.
inline bool check_cost_bound(const reduction_stats& stats, col_index cols) {
    return stats.cost <= static_cast<std::uint64_t>(cols) * stats.fill_up;
}

inline bool check_cost_bound(const reduction_stats& stats) {
    return check_cost_bound(stats, stats.cols);
}

}  // namespace cliff
