#pragma once

// Seeded experiment sweeps over (model, size, trials) with log-log regression
// and CSV/SVG output.  The regression target is the metered cost, not wall
// clock; wall clock is carried along as an informational column and can be
// switched off entirely, in which case the output is byte-stable across runs
// and schedules.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliff/adversarial.hpp"
#include "cliff/filtration.hpp"
#include "cliff/homology.hpp"
#include "cliff/parallel.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

namespace cliff {

enum class model_kind { er, vr, worst };

inline std::string model_tag(model_kind model, std::uint32_t dim) {
    switch (model) {
        case model_kind::er: return "er";
        case model_kind::vr: return "vr(d=" + std::to_string(dim) + ")";
        case model_kind::worst: return "worst";
    }
    return "?";
}

struct experiment_config {
    model_kind model = model_kind::er;
    std::uint32_t dim = 2;             // vr only
    std::vector<std::uint32_t> sizes;  // n values, or p values for the worst model
    std::uint32_t trials = 20;
    std::uint64_t seed_root = 0;
    bool measure_wallclock = true;
    bool parallel = true;
};

struct experiment_row {
    std::string model;
    std::uint32_t n = 0;
    std::uint32_t trials = 0;
    double mean_fillup = 0, sd_fillup = 0;
    double mean_cost = 0, sd_cost = 0;
    double mean_wallclock_ms = 0;
};

namespace detail {

struct trial_outcome {
    std::uint64_t fill_up = 0;
    std::uint64_t cost = 0;
    double wallclock_ms = 0;
};

inline void mean_sd(const std::vector<double>& xs, double& mean, double& sd) {
    mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    sd = 0;
    if (xs.size() > 1) {
        for (double x : xs) sd += (x - mean) * (x - mean);
        sd = std::sqrt(sd / static_cast<double>(xs.size() - 1));
    }
}

}  // namespace detail

inline std::vector<experiment_row> run_experiment(const experiment_config& config) {
    if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    for (std::size_t k = 1; k < config.sizes.size(); ++k)
        if (config.sizes[k] <= config.sizes[k - 1])
            throw std::invalid_argument("run_experiment: sizes must be strictly increasing");

    std::vector<experiment_row> table;
    for (std::uint32_t size : config.sizes) {
        const std::string tag = model_tag(config.model, config.dim);
        const std::string purpose = "exp:" + tag + ":size=" + std::to_string(size);
        std::vector<detail::trial_outcome> outcomes(config.trials);
        std::uint32_t n_vertices = config.model == model_kind::worst ? 5 * size + 1 : size;
        try {
            parallel_for(
                config.trials,
                [&](std::size_t trial) {
                    seed trial_seed = seed{config.seed_root}.derived(purpose, trial);
                    filtration f;
                    switch (config.model) {
                        case model_kind::er:
                            f = make_filtration(er_order(size, trial_seed));
                            break;
                        case model_kind::vr:
                            f = make_filtration(vr_order(size, config.dim, trial_seed).order);
                            break;
                        case model_kind::worst:
                            f = worst_case_filtration({size}, trial_seed).filt;
                            break;
                    }
                    staircase_matrix boundary = boundary_matrix(f);
                    auto t0 = std::chrono::steady_clock::now();
                    reduction_result red = reduce(boundary);
                    auto t1 = std::chrono::steady_clock::now();
                    if (!check_cost_bound(red.stats))
                        throw std::logic_error("run_experiment: cost bound violated");
                    if (red.stats.fill_up + f.edges.n < edge_count(f.edges.n))
                        throw std::logic_error("run_experiment: fill-up below the lower bound");
                    detail::trial_outcome& out = outcomes[trial];
                    out.fill_up = red.stats.fill_up;
                    out.cost = red.stats.cost;
                    if (config.measure_wallclock)
                        out.wallclock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                },
                config.parallel);
        } catch (const std::exception& e) {
            throw std::runtime_error("run_experiment: row " + tag + "/size=" + std::to_string(size) +
                                     " aborted: " + e.what());
        }

        std::vector<double> fills, costs, clocks;
        for (const detail::trial_outcome& out : outcomes) {
            fills.push_back(static_cast<double>(out.fill_up));
            costs.push_back(static_cast<double>(out.cost));
            clocks.push_back(out.wallclock_ms);
        }
        experiment_row row;
        row.model = tag;
        row.n = n_vertices;
        row.trials = config.trials;
        detail::mean_sd(fills, row.mean_fillup, row.sd_fillup);
        detail::mean_sd(costs, row.mean_cost, row.sd_cost);
        double unused_sd = 0;
        detail::mean_sd(clocks, row.mean_wallclock_ms, unused_sd);
        table.push_back(std::move(row));
    }
    return table;
}

struct degenerate_fit : std::runtime_error {
    explicit degenerate_fit(const std::string& what) : std::runtime_error(what) {}
};

struct fit_result {
    double lambda = 0;    // > 0
    double exponent = 0;  // slope on the log-log scale
    double residual = 0;  // sum of squared log-residuals
};

// Ordinary least squares on (ln x, ln y); the best lambda * x^e curve.
inline fit_result loglog_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw degenerate_fit("loglog_fit: need at least two points");
    double first_x = points.front().first;
    bool distinct = false;
    for (const auto& [x, y] : points) {
        if (x <= 0 || y <= 0) throw degenerate_fit("loglog_fit: coordinates must be positive");
        if (x != first_x) distinct = true;
    }
    if (!distinct) throw degenerate_fit("loglog_fit: need at least two distinct x values");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double count = static_cast<double>(points.size());
    for (const auto& [x, y] : points) {
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    fit_result fit;
    fit.exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    const double intercept = (sy - fit.exponent * sx) / count;
    fit.lambda = std::exp(intercept);
    for (const auto& [x, y] : points) {
        const double r = std::log(y) - (intercept + fit.exponent * std::log(x));
        fit.residual += r * r;
    }
    return fit;
}

inline std::string table_to_csv(const std::vector<experiment_row>& table) {
    if (table.empty()) throw std::invalid_argument("table_to_csv: empty table");
    std::string out = "model,n,trials,mean_fillup,sd_fillup,mean_cost,sd_cost,mean_wallclock_ms\n";
    char line[320];
    for (const experiment_row& row : table) {
        std::snprintf(line, sizeof(line), "%s,%u,%u,%.6f,%.6f,%.6f,%.6f,%.3f\n", row.model.c_str(),
                      row.n, row.trials, row.mean_fillup, row.sd_fillup, row.mean_cost, row.sd_cost,
                      row.mean_wallclock_ms);
        out += line;
    }
    return out;
}

inline void emit_csv(const std::vector<experiment_row>& table, const std::string& path) {
    const std::string body = table_to_csv(table);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit_csv: cannot open " + path);
    file << body;
    if (!file) throw std::runtime_error("emit_csv: write failed for " + path);
}

// Self-contained log-log scatter with the fitted line and a "lambda*n^e"
// annotation; metric selects mean_fillup or mean_cost.
inline std::string render_svg(const std::vector<experiment_row>& table, const std::string& metric,
                              const fit_result& fit) {
    if (table.empty()) throw std::invalid_argument("render_svg: empty table");
    std::vector<std::pair<double, double>> points;
    for (const experiment_row& row : table) {
        double y = metric == "cost" ? row.mean_cost : row.mean_fillup;
        points.push_back({static_cast<double>(row.n), y});
    }
    double min_lx = std::log(points.front().first), max_lx = min_lx;
    double min_ly = std::log(points.front().second), max_ly = min_ly;
    for (const auto& [x, y] : points) {
        min_lx = std::min(min_lx, std::log(x));
        max_lx = std::max(max_lx, std::log(x));
        min_ly = std::min(min_ly, std::log(y));
        max_ly = std::max(max_ly, std::log(y));
    }
    if (max_lx == min_lx) max_lx = min_lx + 1;
    if (max_ly == min_ly) max_ly = min_ly + 1;
    const double width = 560, height = 420, margin = 60;
    auto sx = [&](double lx) { return margin + (lx - min_lx) / (max_lx - min_lx) * (width - 2 * margin); };
    auto sy = [&](double ly) { return height - margin - (ly - min_ly) / (max_ly - min_ly) * (height - 2 * margin); };

    char buf[512];
    std::string svg;
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  width, height, width, height);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  margin, height - margin, width - margin, height - margin);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  margin, margin, margin, height - margin);
    svg += buf;
    // fitted line across the x range
    const double ly0 = std::log(fit.lambda) + fit.exponent * min_lx;
    const double ly1 = std::log(fit.lambda) + fit.exponent * max_lx;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"steelblue\" "
                  "stroke-width=\"1.5\"/>\n",
                  sx(min_lx), sy(ly0), sx(max_lx), sy(ly1));
    svg += buf;
    for (const auto& [x, y] : points) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.5\" fill=\"crimson\"/>\n",
                      sx(std::log(x)), sy(std::log(y)));
        svg += buf;
    }
    for (const experiment_row& row : table) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" font-size=\"10\" text-anchor=\"middle\">%u</text>\n",
                      sx(std::log(static_cast<double>(row.n))), height - margin + 16, row.n);
        svg += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\">%s: %.3g*n^%.3f</text>\n", margin + 8,
                  margin - 16, metric.c_str(), fit.lambda, fit.exponent);
    svg += buf;
    svg += "</svg>\n";
    return svg;
}

inline void emit_svg(const std::vector<experiment_row>& table, const std::string& metric,
                     const fit_result& fit, const std::string& path) {
    const std::string body = render_svg(table, metric, fit);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit_svg: cannot open " + path);
    file << body;
    if (!file) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace cliff
