#pragma once

#include "harvest/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace harvest {

enum class RowStatus { ok, convergence_failure, invalid_input, out_of_regime, error };
std::string_view to_string(RowStatus s);

/// One evaluated point. `report` is empty unless status is ok.
struct SweepRow {
    double value = 0.0;  ///< swept value; NaN for a single point
    RowStatus status = RowStatus::ok;
    std::string message;
    std::optional<HarvestReport> report;
};

struct SweepTable {
    std::string parameter;  ///< sweep parameter name, "none" for a single point
    std::vector<SweepRow> rows;
};

/// Grid values of a sweep; both endpoints are exact.
std::vector<double> sweep_values(const SweepSpec& spec);

/// Copy of `base` with the swept quantity set to v. gap sets both energy
/// gaps, duration sets both windows to [t_on, t_on + v].
PointInput apply_sweep_value(const PointInput& base, SweepParameter p, double v);

/// Evaluates one point, converting failures into a status row.
SweepRow run_point(const RunConfig& cfg, double value, Execution exec = Execution::parallel);

/// Rows evaluated concurrently over `workers` OpenMP threads (0: runtime
/// default); row order follows sweep_values. Requires cfg.sweep.
SweepTable run_sweep(const RunConfig& cfg, int workers = 0);
/// Serial reference for run_sweep; produces an identical table.
SweepTable run_sweep_serial(const RunConfig& cfg);

/// Fixed CSV header, one line per row, LF endings, 17 significant digits.
/// Failed rows keep the value, status and message and leave physics cells empty.
const std::vector<std::string>& csv_columns();
void write_csv(std::ostream& out, const SweepTable& table);
void write_json(std::ostream& out, const SweepTable& table);
void write_table(std::ostream& out, const SweepTable& table, OutputFormat format);

/// Figure presets: Omega = 1, sigma = 0.001, windows [0, 100 sigma] and
/// [150 sigma, 250 sigma], r0 = 150 sigma, lambda = 0.01.
///   fig2a: |J| against r over [10 sigma, 400 sigma], 200 points
///   fig2b: the same sweep, read for the Phi+ fraction
///   fig3:  R against delta over [0.01 r0, 100 r0], 81 log-spaced points
/// Throws std::invalid_argument for other names.
RunConfig figure_config(std::string_view name);

/// Sidecar description of a preset: parameters, sweep and (for fig2a/fig2b)
/// the light-contact interval, as JSON.
void write_figure_metadata(std::ostream& out, std::string_view name, const RunConfig& cfg);

}  // namespace harvest
