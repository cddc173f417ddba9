// cliff: generate, reduce and measure clique filtrations.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cliff/adversarial.hpp"
#include "cliff/bench.hpp"
#include "cliff/filtration.hpp"
#include "cliff/homology.hpp"
#include "cliff/io.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

namespace {

struct gen_options {
    std::string model;
    std::uint32_t n = 0;
    std::uint32_t dim = 2;
    std::uint32_t p = 0;
    std::uint64_t seed_root = 0;
    std::string output;
    std::string sidecar;
};

int run_gen(const gen_options& opt) {
    cliff::seed s{opt.seed_root};
    if (opt.model == "er") {
        if (opt.n < 2) throw CLI::ValidationError("--n", "er model needs --n >= 2");
        cliff::filtration f = cliff::make_filtration(cliff::er_order(opt.n, s));
        cliff::write_filtration_file(f, false, opt.output);
        std::cout << "wrote er filtration: n=" << opt.n << " m=" << f.edges.order.size() << " -> "
                  << opt.output << "\n";
    } else if (opt.model == "vr") {
        if (opt.n < 2) throw CLI::ValidationError("--n", "vr model needs --n >= 2");
        if (opt.dim < 1) throw CLI::ValidationError("--dim", "vr model needs --dim >= 1");
        cliff::vr_result vr = cliff::vr_order(opt.n, opt.dim, s);
        cliff::filtration f = cliff::make_filtration(vr.order);
        cliff::write_filtration_file(f, false, opt.output);
        if (!opt.sidecar.empty()) cliff::write_text_file(cliff::write_vr_sidecar(vr), opt.sidecar);
        std::cout << "wrote vr filtration: n=" << opt.n << " d=" << opt.dim << " -> " << opt.output
                  << "\n";
    } else if (opt.model == "worst") {
        if (opt.p == 0) throw CLI::ValidationError("--p", "worst model needs --p");
        if (opt.n != 0 && opt.n != 5 * opt.p + 1)
            throw CLI::ValidationError("--n", "worst model has n = 5p+1");
        cliff::worst_case_filtration_t wc = cliff::worst_case_filtration({opt.p}, s);
        cliff::write_filtration_file(wc.filt, true, opt.output);
        if (!opt.sidecar.empty()) cliff::write_text_file(cliff::write_group_sidecar(wc), opt.sidecar);
        std::cout << "wrote worst-case filtration: p=" << opt.p << " n=" << wc.filt.edges.n << " -> "
                  << opt.output << "\n";
    } else {
        throw CLI::ValidationError("--model", "unknown model '" + opt.model + "'");
    }
    return 0;
}

void print_stats(const cliff::reduction_stats& stats) {
    std::cout << "r=" << stats.rows << " c=" << stats.cols << " fill_up=" << stats.fill_up
              << " cost=" << stats.cost << " additions=" << stats.additions_total
              << " steps=" << stats.step_indices.size() << " criticals=" << stats.critical_indices.size()
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"instrumented GF(2) matrix reduction over clique filtrations"};
    app.require_subcommand(1);

    // gen
    gen_options gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a filtration file");
    cmd_gen->add_option("--model", gen.model, "er | vr | worst")->required();
    cmd_gen->add_option("--n", gen.n, "vertex count (er/vr)");
    cmd_gen->add_option("--dim", gen.dim, "ambient dimension (vr)");
    cmd_gen->add_option("--p", gen.p, "group size (worst)");
    cmd_gen->add_option("--seed", gen.seed_root, "root seed")->required();
    cmd_gen->add_option("-o,--output", gen.output, "output file")->required();
    cmd_gen->add_option("--sidecar", gen.sidecar, "sidecar file (vr points/lengths, worst groups)");

    // reduce
    std::string reduce_input, reduce_stats_path;
    bool reduce_log_additions = false;
    CLI::App* cmd_reduce = app.add_subcommand("reduce", "reduce the boundary matrix of a filtration file");
    cmd_reduce->add_option("file", reduce_input, "filtration file")->required();
    cmd_reduce->add_option("--stats", reduce_stats_path, "write stats JSON here");
    cmd_reduce->add_flag("--log-additions", reduce_log_additions, "print every column addition");

    // betti
    std::string betti_input, betti_output;
    CLI::App* cmd_betti = app.add_subcommand("betti", "beta_1 profile along a filtration");
    cmd_betti->add_option("file", betti_input, "filtration file")->required();
    cmd_betti->add_option("-o,--output", betti_output, "write i,beta1 CSV here");

    // worst
    std::uint32_t worst_p = 0;
    std::uint64_t worst_seed = 0;
    std::string worst_output, worst_groups;
    bool worst_audit = false;
    CLI::App* cmd_worst = app.add_subcommand("worst", "emit the adversarial worst-case filtration");
    cmd_worst->add_option("--p", worst_p, "group size, odd >= 3")->required();
    cmd_worst->add_option("--seed", worst_seed, "root seed")->required();
    cmd_worst->add_option("-o,--output", worst_output, "output file")->required();
    cmd_worst->add_option("--groups", worst_groups, "write rank->group sidecar here");
    cmd_worst->add_flag("--audit", worst_audit, "reduce and print the audit report");

    // experiment
    std::string exp_model, exp_csv, exp_svg_prefix, exp_sizes;
    std::uint32_t exp_dim = 2, exp_trials = 20;
    std::uint64_t exp_seed = 0;
    bool exp_wallclock = true;
    CLI::App* cmd_exp = app.add_subcommand("experiment", "seeded sweep with aggregation and fits");
    cmd_exp->add_option("--model", exp_model, "er | vr | worst")->required();
    cmd_exp->add_option("--dim", exp_dim, "ambient dimension (vr)");
    cmd_exp->add_option("--ns", exp_sizes, "comma-separated n values (p values for worst)")->required();
    cmd_exp->add_option("--trials", exp_trials, "trials per size");
    cmd_exp->add_option("--seed", exp_seed, "root seed")->required();
    cmd_exp->add_option("-o,--output", exp_csv, "output CSV")->required();
    cmd_exp->add_option("--svg", exp_svg_prefix, "also write <prefix>_fillup.svg and <prefix>_cost.svg");
    cmd_exp->add_flag("!--no-wallclock", exp_wallclock, "suppress wall-clock measurement");

    // fit
    std::string fit_csv, fit_x = "n", fit_y;
    CLI::App* cmd_fit = app.add_subcommand("fit", "log-log regression over CSV columns");
    cmd_fit->add_option("file", fit_csv, "CSV file with a header row")->required();
    cmd_fit->add_option("--x", fit_x, "x column (default n)");
    cmd_fit->add_option("--y", fit_y, "y column")->required();

    // scan
    std::string scan_model_name, scan_csv;
    std::uint32_t scan_n = 0, scan_dim = 2, scan_trials = 100;
    std::uint64_t scan_seed = 0;
    CLI::App* cmd_scan = app.add_subcommand("scan", "empirical P(beta_1(K_i) > 0) over a grid of i");
    cmd_scan->add_option("--model", scan_model_name, "er | vr")->required();
    cmd_scan->add_option("--n", scan_n, "vertex count")->required();
    cmd_scan->add_option("--dim", scan_dim, "ambient dimension (vr)");
    cmd_scan->add_option("--trials", scan_trials, "trials");
    cmd_scan->add_option("--seed", scan_seed, "root seed")->required();
    cmd_scan->add_option("-o,--output", scan_csv, "output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) return run_gen(gen);

        if (cmd_reduce->parsed()) {
            cliff::filtration f = cliff::parse_filtration_file(reduce_input);
            cliff::staircase_matrix boundary = cliff::boundary_matrix(f);
            cliff::reduction_result red = cliff::reduce(boundary, {reduce_log_additions});
            print_stats(red.stats);
            if (reduce_log_additions)
                for (const auto& [target, source] : red.stats.addition_log)
                    std::cout << "add " << source << " -> " << target << "\n";
            if (!reduce_stats_path.empty())
                cliff::write_text_file(cliff::stats_to_json(red.stats), reduce_stats_path);
            return 0;
        }

        if (cmd_betti->parsed()) {
            cliff::filtration f = cliff::parse_filtration_file(betti_input);
            cliff::staircase_matrix boundary = cliff::boundary_matrix(f);
            cliff::reduction_result red = cliff::reduce(boundary);
            std::vector<std::uint32_t> profile = cliff::betti1_profile(f, red.matrix);
            std::uint32_t peak = 0;
            for (std::uint32_t v : profile) peak = std::max(peak, v);
            std::cout << "profile length " << profile.size() << ", peak beta_1 = " << peak
                      << ", final beta_1 = " << profile.back() << "\n";
            if (!betti_output.empty()) {
                std::string csv = "i,beta1\n";
                for (std::size_t i = 0; i < profile.size(); ++i)
                    csv += std::to_string(i) + "," + std::to_string(profile[i]) + "\n";
                cliff::write_text_file(csv, betti_output);
            }
            return 0;
        }

        if (cmd_worst->parsed()) {
            cliff::worst_case_filtration_t wc = cliff::worst_case_filtration({worst_p}, cliff::seed{worst_seed});
            cliff::write_filtration_file(wc.filt, true, worst_output);
            std::cout << "wrote worst-case filtration: p=" << worst_p << " n=" << wc.filt.edges.n
                      << " -> " << worst_output << "\n";
            if (!worst_groups.empty())
                cliff::write_text_file(cliff::write_group_sidecar(wc), worst_groups);
            if (worst_audit) {
                cliff::staircase_matrix boundary = cliff::boundary_matrix(wc.filt);
                cliff::reduction_result red = cliff::reduce(boundary);
                cliff::worst_case_audit_report report = cliff::worst_case_audit(wc, red.matrix, red.stats);
                std::printf("audit: fill_up=%llu cost=%llu fat=%u group3_pivots=%u group2_pivots=%u "
                            "fat_bound_ok=%d fill/p^4=%.3f cost/p^7=%.4f\n",
                            static_cast<unsigned long long>(report.fill_up),
                            static_cast<unsigned long long>(report.cost), report.fat_columns,
                            report.group3_pivot_columns, report.group2_pivot_columns,
                            report.fat_bound_ok ? 1 : 0, report.fillup_over_p4, report.cost_over_p7);
            }
            return 0;
        }

        if (cmd_exp->parsed()) {
            cliff::experiment_config config;
            if (exp_model == "er") config.model = cliff::model_kind::er;
            else if (exp_model == "vr") config.model = cliff::model_kind::vr;
            else if (exp_model == "worst") config.model = cliff::model_kind::worst;
            else throw CLI::ValidationError("--model", "unknown model '" + exp_model + "'");
            config.dim = exp_dim;
            config.trials = exp_trials;
            config.seed_root = exp_seed;
            config.measure_wallclock = exp_wallclock;
            std::stringstream sizes(exp_sizes);
            std::string item;
            while (std::getline(sizes, item, ','))
                if (!item.empty()) config.sizes.push_back(static_cast<std::uint32_t>(std::stoul(item)));
            if (config.sizes.empty()) throw CLI::ValidationError("--ns", "no sizes given");

            std::vector<cliff::experiment_row> table = cliff::run_experiment(config);
            cliff::emit_csv(table, exp_csv);
            std::vector<std::pair<double, double>> fill_points, cost_points;
            for (const cliff::experiment_row& row : table) {
                fill_points.push_back({row.n, row.mean_fillup});
                cost_points.push_back({row.n, row.mean_cost});
            }
            if (table.size() >= 2) {
                cliff::fit_result fill_fit = cliff::loglog_fit(fill_points);
                cliff::fit_result cost_fit = cliff::loglog_fit(cost_points);
                std::printf("fillup: lambda %.6f exponent %.6f\n", fill_fit.lambda, fill_fit.exponent);
                std::printf("cost:   lambda %.6f exponent %.6f\n", cost_fit.lambda, cost_fit.exponent);
                if (!exp_svg_prefix.empty()) {
                    cliff::emit_svg(table, "fillup", fill_fit, exp_svg_prefix + "_fillup.svg");
                    cliff::emit_svg(table, "cost", cost_fit, exp_svg_prefix + "_cost.svg");
                }
            }
            std::cout << "wrote " << table.size() << " rows -> " << exp_csv << "\n";
            return 0;
        }

        if (cmd_fit->parsed()) {
            std::ifstream file(fit_csv);
            if (!file) throw std::runtime_error("cannot open " + fit_csv);
            std::string header;
            if (!std::getline(file, header)) throw std::runtime_error(fit_csv + ": empty file");
            std::vector<std::string> names;
            std::stringstream hs(header);
            std::string cell;
            while (std::getline(hs, cell, ',')) names.push_back(cell);
            std::size_t xi = names.size(), yi = names.size();
            for (std::size_t k = 0; k < names.size(); ++k) {
                if (names[k] == fit_x) xi = k;
                if (names[k] == fit_y) yi = k;
            }
            if (xi == names.size()) throw std::runtime_error(fit_csv + ": no column '" + fit_x + "'");
            if (yi == names.size()) throw std::runtime_error(fit_csv + ": no column '" + fit_y + "'");
            std::vector<std::pair<double, double>> points;
            std::string row;
            while (std::getline(file, row)) {
                if (row.empty()) continue;
                std::stringstream rs(row);
                std::vector<std::string> cells;
                while (std::getline(rs, cell, ',')) cells.push_back(cell);
                if (cells.size() != names.size())
                    throw std::runtime_error(fit_csv + ": ragged row '" + row + "'");
                points.push_back({std::stod(cells[xi]), std::stod(cells[yi])});
            }
            cliff::fit_result fit = cliff::loglog_fit(points);
            std::printf("lambda %.6f\nexponent %.6f\nresidual %.6f\n", fit.lambda, fit.exponent,
                        fit.residual);
            return 0;
        }

        if (cmd_scan->parsed()) {
            cliff::scan_model model;
            if (scan_model_name == "er") model.model = cliff::scan_model::kind::er;
            else if (scan_model_name == "vr") model.model = cliff::scan_model::kind::vr;
            else throw CLI::ValidationError("--model", "unknown model '" + scan_model_name + "'");
            model.dim = scan_dim;
            const std::uint32_t m = static_cast<std::uint32_t>(cliff::edge_count(scan_n));
            cliff::betti_scan_result result = cliff::betti_probability_scan(
                model, scan_n, scan_trials, cliff::default_scan_grid(m), cliff::seed{scan_seed});
            cliff::write_text_file(cliff::scan_to_csv(result), scan_csv);
            std::printf("scan %s n=%u trials=%u: T=%u at A=%.2f -> %s\n", result.model.c_str(),
                        result.n, result.trials, result.threshold_T, result.threshold_A,
                        scan_csv.c_str());
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
