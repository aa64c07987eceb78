#include "harvest/sweep.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>

using namespace harvest;

namespace {

struct GlobalFlags {
    int workers = 0;
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
};

void apply_flags(RunConfig& cfg, const GlobalFlags& flags)
{
    if (flags.tol_abs) {
        cfg.numerics.tol_abs = *flags.tol_abs;
    }
    if (flags.tol_rel) {
        cfg.numerics.tol_rel = *flags.tol_rel;
    }
    if (flags.workers > 0) {
        omp_set_num_threads(flags.workers);
    }
}

void emit(const SweepTable& table, const OutputSpec& output)
{
    if (output.path.empty()) {
        write_table(std::cout, table, output.format);
        return;
    }
    std::ofstream out(output.path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(output.path + ": cannot open for writing");
    }
    write_table(out, table, output.format);
    if (!out.flush()) {
        throw std::runtime_error(output.path + ": write failed");
    }
}

/// Prints row failures and warnings to stderr; returns the failure count.
std::size_t report_rows(const SweepTable& table)
{
    std::size_t failed = 0;
    for (const SweepRow& row : table.rows) {
        if (row.status != RowStatus::ok) {
            ++failed;
            std::cerr << "row " << table.parameter << "=" << format_number(row.value) << ": " << to_string(row.status)
                      << ": " << row.message << '\n';
        }
    }
    if (failed > 0) {
        std::cerr << failed << " of " << table.rows.size() << " rows failed\n";
    }
    return failed;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entanglement harvesting between two Unruh-DeWitt detectors"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    app.add_option("--workers", flags.workers, "OpenMP worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--tol-abs", flags.tol_abs, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_option("--tol-rel", flags.tol_rel, "relative quadrature tolerance")->check(CLI::PositiveNumber);

    std::string config_path;
    auto* compute = app.add_subcommand("compute", "evaluate the configured point");
    compute->add_option("config", config_path, "configuration file")->required();

    auto* sweep = app.add_subcommand("sweep", "evaluate the configured sweep");
    sweep->add_option("config", config_path, "configuration file")->required();

    std::string figure_name;
    std::string out_path;
    std::string format = "csv";
    auto* figure = app.add_subcommand("figure", "reproduce a figure's data table");
    figure->add_option("name", figure_name, "preset")->required()->check(CLI::IsMember({"fig2a", "fig2b", "fig3"}));
    figure->add_option("--out", out_path, "output path (standard output when omitted)");
    figure->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) {
            RunConfig cfg = load_config(config_path);
            apply_flags(cfg, flags);
            SweepTable table{"none", {run_point(cfg, std::numeric_limits<double>::quiet_NaN())}};
            for (const Warning& w : validate(cfg.point.scenario)) {
                std::cerr << "warning: " << w.message << '\n';
            }
            emit(table, cfg.output);
            return report_rows(table) > 0 ? 3 : 0;
        }
        if (sweep->parsed()) {
            RunConfig cfg = load_config(config_path);
            apply_flags(cfg, flags);
            if (!cfg.sweep) {
                std::cerr << config_path << ": sweep: missing section\n";
                return 1;
            }
            const SweepTable table = run_sweep(cfg, flags.workers);
            emit(table, cfg.output);
            report_rows(table);
            return 0;
        }
        RunConfig cfg = figure_config(figure_name);
        apply_flags(cfg, flags);
        cfg.output = {out_path, parse_output_format(format)};
        const SweepTable table = run_sweep(cfg, flags.workers);
        emit(table, cfg.output);
        if (!out_path.empty()) {
            const std::string meta_path = out_path + ".meta.json";
            std::ofstream meta(meta_path, std::ios::binary);
            if (!meta) {
                throw std::runtime_error(meta_path + ": cannot open for writing");
            }
            write_figure_metadata(meta, figure_name, cfg);
        }
        report_rows(table);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
