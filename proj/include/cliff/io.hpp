#pragma once

// The line-oriented "filtration v1" text format and the stats JSON record.
//
//   filtration v1
//   n <int>
//   edges <m>
//   <u> <v>            m lines, filtration order, 0-based, u < v
//   columns <t>        optional; t = C(n,3)
//   <u> <v> <w>        t lines, explicit column order, u < v < w
//
// Without a columns section the default tie policy applies on load.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliff/adversarial.hpp"
#include "cliff/filtration.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

namespace cliff {

struct parse_error : std::runtime_error {
    std::size_t line;
    parse_error(std::size_t line_number, const std::string& reason)
        : std::runtime_error("parse error at line " + std::to_string(line_number) + ": " + reason),
          line(line_number) {}
};

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string write_filtration(const filtration& f, bool include_columns) {
    std::string out = "filtration v1\n";
    out += "n " + std::to_string(f.edges.n) + "\n";
    out += "edges " + std::to_string(f.edges.order.size()) + "\n";
    for (const edge& e : f.edges.order)
        out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    if (include_columns) {
        out += "columns " + std::to_string(f.columns.triangles.size()) + "\n";
        for (const triangle& t : f.columns.triangles)
            out += std::to_string(t.a) + " " + std::to_string(t.b) + " " + std::to_string(t.c) + "\n";
    }
    return out;
}

inline void write_filtration_file(const filtration& f, bool include_columns, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    file << write_filtration(f, include_columns);
    if (!file) throw std::runtime_error("write failed for " + path);
}

namespace detail {

inline bool next_line(std::istream& in, std::string& line, std::size_t& line_number) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_number;
    return true;
}

inline std::vector<std::uint64_t> parse_ints(const std::string& line, std::size_t line_number,
                                             std::size_t expected) {
    std::istringstream stream(line);
    std::vector<std::uint64_t> values;
    std::int64_t value = 0;
    while (stream >> value) {
        if (value < 0) throw parse_error(line_number, "negative value");
        values.push_back(static_cast<std::uint64_t>(value));
    }
    if (!stream.eof()) throw parse_error(line_number, "unexpected token");
    if (values.size() != expected)
        throw parse_error(line_number, "expected " + std::to_string(expected) + " integers");
    return values;
}

}  // namespace detail

inline filtration parse_filtration(std::istream& in) {
    std::size_t line_number = 0;
    std::string line;

    if (!detail::next_line(in, line, line_number) || line != "filtration v1")
        throw parse_error(line_number ? line_number : 1, "expected header 'filtration v1'");

    if (!detail::next_line(in, line, line_number)) throw parse_error(line_number + 1, "expected 'n <int>'");
    std::istringstream n_stream(line);
    std::string keyword;
    std::uint64_t n = 0;
    if (!(n_stream >> keyword >> n) || keyword != "n" || !(n_stream >> std::ws).eof())
        throw parse_error(line_number, "expected 'n <int>'");
    if (n < 2 || n > 100000) throw parse_error(line_number, "vertex count out of range");

    if (!detail::next_line(in, line, line_number))
        throw parse_error(line_number + 1, "expected 'edges <m>'");
    std::istringstream m_stream(line);
    std::uint64_t m = 0;
    if (!(m_stream >> keyword >> m) || keyword != "edges" || !(m_stream >> std::ws).eof())
        throw parse_error(line_number, "expected 'edges <m>'");
    if (m != edge_count(static_cast<std::uint32_t>(n)))
        throw validation_error("edge count " + std::to_string(m) + " is not C(n,2)");

    edge_order eo;
    eo.n = static_cast<std::uint32_t>(n);
    eo.order.reserve(m);
    for (std::uint64_t k = 0; k < m; ++k) {
        if (!detail::next_line(in, line, line_number))
            throw parse_error(line_number + 1, "expected an edge line");
        std::vector<std::uint64_t> values = detail::parse_ints(line, line_number, 2);
        if (values[0] >= values[1] || values[1] >= n)
            throw validation_error("bad edge at line " + std::to_string(line_number));
        eo.order.push_back(edge{static_cast<std::uint32_t>(values[0]), static_cast<std::uint32_t>(values[1])});
    }
    if (!validate(eo)) throw validation_error("edge list is not a permutation of all edges");

    // optional columns section
    bool have_columns = false;
    std::uint64_t t_count = 0;
    if (detail::next_line(in, line, line_number)) {
        if (line.empty()) {
            if (in >> std::ws, !in.eof()) throw parse_error(line_number, "unexpected content");
        } else {
            std::istringstream t_stream(line);
            if (!(t_stream >> keyword >> t_count) || keyword != "columns" || !(t_stream >> std::ws).eof())
                throw parse_error(line_number, "expected 'columns <t>'");
            if (t_count != triangle_count(eo.n))
                throw validation_error("column count " + std::to_string(t_count) + " is not C(n,3)");
            have_columns = true;
        }
    }

    if (!have_columns) return make_filtration(std::move(eo));

    filtration f;
    f.edges = std::move(eo);
    f.columns.triangles.reserve(t_count);
    f.columns.entry_times.reserve(t_count);
    const std::vector<row_index> ranks = f.edges.rank_table();
    auto rank_of = [&](std::uint32_t x, std::uint32_t y) {
        return ranks[static_cast<std::size_t>(x) * f.edges.n + y];
    };
    for (std::uint64_t k = 0; k < t_count; ++k) {
        if (!detail::next_line(in, line, line_number))
            throw parse_error(line_number + 1, "expected a column line");
        std::vector<std::uint64_t> values = detail::parse_ints(line, line_number, 3);
        if (values[0] >= values[1] || values[1] >= values[2] || values[2] >= f.edges.n)
            throw validation_error("bad triangle at line " + std::to_string(line_number));
        triangle t{static_cast<std::uint32_t>(values[0]), static_cast<std::uint32_t>(values[1]),
                   static_cast<std::uint32_t>(values[2])};
        f.columns.triangles.push_back(t);
        f.columns.entry_times.push_back(
            std::max({rank_of(t.a, t.b), rank_of(t.a, t.c), rank_of(t.b, t.c)}));
    }
    if (!validate(f))
        throw validation_error("columns section is inconsistent with the edge order");
    return f;
}

inline filtration parse_filtration(const std::string& text) {
    std::istringstream stream(text);
    return parse_filtration(stream);
}

inline filtration parse_filtration_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    try {
        return parse_filtration(file);
    } catch (const parse_error& e) {
        throw parse_error(e.line, path + ": " + e.what());
    }
}

inline std::string stats_to_json(const reduction_stats& stats) {
    nlohmann::ordered_json j;
    j["fill_up"] = stats.fill_up;
    j["cost"] = stats.cost;
    j["r"] = stats.rows;
    j["c"] = stats.cols;
    j["n_step"] = stats.step_indices.size();
    j["n_critical"] = stats.critical_indices.size();
    j["additions_total"] = stats.additions_total;
    j["critical_indices"] = stats.critical_indices;
    return j.dump(2) + "\n";
}

// plain-text sidecar for VR instances: coordinates plus per-rank lengths
inline std::string write_vr_sidecar(const vr_result& vr) {
    char buf[64];
    std::string out = "points " + std::to_string(vr.points.size()) + " " + std::to_string(vr.points.dim) + "\n";
    for (std::uint32_t i = 0; i < vr.points.size(); ++i) {
        const double* point = vr.points.point(i);
        for (std::uint32_t k = 0; k < vr.points.dim; ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", point[k]);
            out += buf;
            out += (k + 1 < vr.points.dim) ? ' ' : '\n';
        }
    }
    out += "lengths " + std::to_string(vr.lengths.size()) + "\n";
    for (double length : vr.lengths) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", length);
        out += buf;
    }
    return out;
}

// debugging sidecar for the worst case: edge rank -> endpoints and group
inline std::string write_group_sidecar(const worst_case_filtration_t& wc) {
    std::string out = "rank u v group\n";
    for (std::size_t r = 0; r < wc.filt.edges.order.size(); ++r) {
        const edge& e = wc.filt.edges.order[r];
        out += std::to_string(r) + " " + std::to_string(e.u) + " " + std::to_string(e.v) + " " +
               std::to_string(static_cast<unsigned>(wc.groups[r])) + "\n";
    }
    return out;
}

inline void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    file << text;
    if (!file) throw std::runtime_error("write failed for " + path);
}

}  // namespace cliff
