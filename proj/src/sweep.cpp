#include "harvest/sweep.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace harvest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string timing_label(const TimingRegime& t)
{
    if (const auto* d = std::get_if<Disjoint>(&t)) {
        return d->first == DetectorLabel::A ? "A_first" : "B_first";
    }
    return "overlapping";
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out + '"';
}

std::string cell(double v)
{
    return std::isnan(v) ? std::string() : format_number(v);
}

// Numeric columns of a successful row, in csv_columns() order after the
// leading text columns.
std::vector<double> numeric_cells(const HarvestReport& r)
{
    const SecondOrderIntegrals& i = r.integrals;
    return {i.i_aa,
            i.i_bb,
            i.i_ab.real(),
            i.i_ab.imag(),
            i.j.real(),
            i.j.imag(),
            std::abs(i.j),
            r.ratio,
            r.negativity,
            r.negativity_raw,
            r.negativity_higher_order,
            r.bell.phi_plus,
            r.bell.phi_minus,
            r.bell.psi_plus,
            r.bell.psi_minus,
            r.errors.i_aa,
            r.errors.i_bb,
            r.errors.i_ab,
            r.errors.j};
}

constexpr std::size_t kNumericColumns = 19;

void require_sweep(const RunConfig& cfg)
{
    if (!cfg.sweep) {
        throw std::invalid_argument("configuration has no [sweep] section");
    }
}

}  // namespace

std::string_view to_string(RowStatus s)
{
    switch (s) {
    case RowStatus::ok:
        return "ok";
    case RowStatus::convergence_failure:
        return "convergence_failure";
    case RowStatus::invalid_input:
        return "invalid_input";
    case RowStatus::out_of_regime:
        return "out_of_regime";
    case RowStatus::error:
        return "error";
    }
    return "unknown";
}

std::vector<double> sweep_values(const SweepSpec& spec)
{
    std::vector<double> v(spec.points);
    const double last = static_cast<double>(spec.points - 1);
    for (std::size_t i = 0; i < spec.points; ++i) {
        const double t = static_cast<double>(i) / last;
        if (spec.spacing == Spacing::linear) {
            v[i] = spec.from + t * (spec.to - spec.from);
        } else {
            v[i] = std::exp(std::log(spec.from) + t * (std::log(spec.to) - std::log(spec.from)));
        }
    }
    v.front() = spec.from;
    v.back() = spec.to;
    return v;
}

PointInput apply_sweep_value(const PointInput& base, SweepParameter p, double v)
{
    PointInput out = base;
    Scenario& s = out.scenario;
    switch (p) {
    case SweepParameter::r:
        s.separation = v;
        break;
    case SweepParameter::delta:
        s.position_uncertainty = v;
        break;
    case SweepParameter::delta_t:
        out.time_uncertainty = v;
        break;
    case SweepParameter::gap:
        s.det_a.gap = v;
        s.det_b.gap = v;
        break;
    case SweepParameter::duration:
        s.det_a.window.t_off = s.det_a.window.t_on + v;
        s.det_b.window.t_off = s.det_b.window.t_on + v;
        break;
    }
    return out;
}

SweepRow run_point(const RunConfig& cfg, double value, Execution exec)
{
    SweepRow row;
    row.value = value;
    const PointInput in = std::isnan(value) ? cfg.point : apply_sweep_value(cfg.point, cfg.sweep->parameter, value);
    try {
        row.report = evaluate_point(in, cfg.numerics, exec);
        for (const Warning& w : row.report->warnings) {
            row.message += (row.message.empty() ? "" : "; ") + w.message;
        }
    } catch (const quadrature::ConvergenceFailure& e) {
        row.status = RowStatus::convergence_failure;
        row.message = e.what();
    } catch (const std::invalid_argument& e) {
        row.status = RowStatus::invalid_input;
        row.message = e.what();
    } catch (const std::domain_error& e) {
        row.status = RowStatus::out_of_regime;
        row.message = e.what();
    } catch (const std::exception& e) {
        row.status = RowStatus::error;
        row.message = e.what();
    }
    return row;
}

SweepTable run_sweep(const RunConfig& cfg, int workers)
{
    require_sweep(cfg);
    const std::vector<double> values = sweep_values(*cfg.sweep);
    SweepTable table{std::string(to_string(cfg.sweep->parameter)), std::vector<SweepRow>(values.size())};
    const int n = static_cast<int>(values.size());
    if (workers <= 0) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i) {
            table.rows[static_cast<std::size_t>(i)] = run_point(cfg, values[static_cast<std::size_t>(i)], Execution::serial);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
        for (int i = 0; i < n; ++i) {
            table.rows[static_cast<std::size_t>(i)] = run_point(cfg, values[static_cast<std::size_t>(i)], Execution::serial);
        }
    }
    return table;
}

SweepTable run_sweep_serial(const RunConfig& cfg)
{
    require_sweep(cfg);
    const std::vector<double> values = sweep_values(*cfg.sweep);
    SweepTable table{std::string(to_string(cfg.sweep->parameter)), {}};
    table.rows.reserve(values.size());
    for (double v : values) {
        table.rows.push_back(run_point(cfg, v, Execution::serial));
    }
    return table;
}

const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> cols{
        "parameter",      "value",          "status",          "method",          "causal_class",
        "timing",         "i_aa",           "i_bb",            "re_i_ab",         "im_i_ab",
        "re_j",           "im_j",           "abs_j",           "ratio",           "negativity",
        "negativity_raw", "negativity_higher_order",           "bell_phi_plus",   "bell_phi_minus",
        "bell_psi_plus",  "bell_psi_minus", "err_i_aa",        "err_i_bb",        "err_i_ab",
        "err_j",          "message"};
    return cols;
}

void write_csv(std::ostream& out, const SweepTable& table)
{
    const auto& cols = csv_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "," : "") << cols[c];
    }
    out << '\n';
    for (const SweepRow& row : table.rows) {
        out << table.parameter << ',' << cell(row.value) << ',' << to_string(row.status) << ',';
        if (row.report) {
            const HarvestReport& r = *row.report;
            out << to_string(r.method) << ',' << to_string(r.causal_class) << ',' << timing_label(r.timing);
            for (double v : numeric_cells(r)) {
                out << ',' << cell(v);
            }
        } else {
            out << ",,";
            for (std::size_t i = 0; i < kNumericColumns; ++i) {
                out << ',';
            }
        }
        out << ',' << csv_escape(row.message) << '\n';
    }
}

void write_json(std::ostream& out, const SweepTable& table)
{
    using nlohmann::ordered_json;
    const auto& cols = csv_columns();
    auto number = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : table.rows) {
        ordered_json o;
        o["parameter"] = table.parameter;
        o["value"] = number(row.value);
        o["status"] = std::string(to_string(row.status));
        if (row.report) {
            const HarvestReport& r = *row.report;
            o["method"] = std::string(to_string(r.method));
            o["causal_class"] = std::string(to_string(r.causal_class));
            o["timing"] = timing_label(r.timing);
            const std::vector<double> v = numeric_cells(r);
            for (std::size_t i = 0; i < v.size(); ++i) {
                o[cols[6 + i]] = number(v[i]);
            }
        } else {
            for (std::size_t i = 3; i + 1 < cols.size(); ++i) {
                o[cols[i]] = nullptr;
            }
        }
        o["message"] = row.message;
        rows.push_back(std::move(o));
    }
    out << ordered_json{{"parameter", table.parameter}, {"rows", rows}}.dump(2) << '\n';
}

void write_table(std::ostream& out, const SweepTable& table, OutputFormat format)
{
    if (format == OutputFormat::csv) {
        write_csv(out, table);
    } else {
        write_json(out, table);
    }
}

RunConfig figure_config(std::string_view name)
{
    constexpr double sigma = 1e-3;
    RunConfig cfg;
    Scenario& s = cfg.point.scenario;
    s.det_a = {0.01, 1.0, sigma, {0.0, 100 * sigma}};
    s.det_b = {0.01, 1.0, sigma, {150 * sigma, 250 * sigma}};
    s.separation = 150 * sigma;
    if (name == "fig2a" || name == "fig2b") {
        cfg.sweep = SweepSpec{SweepParameter::r, 10 * sigma, 400 * sigma, 200, Spacing::linear};
    } else if (name == "fig3") {
        cfg.sweep = SweepSpec{SweepParameter::delta, 0.01 * s.separation, 100 * s.separation, 81, Spacing::log};
    } else {
        throw std::invalid_argument("unknown figure preset '" + std::string(name) + "' (expected fig2a, fig2b or fig3)");
    }
    return cfg;
}

void write_figure_metadata(std::ostream& out, std::string_view name, const RunConfig& cfg)
{
    using nlohmann::ordered_json;
    const Scenario& s = cfg.point.scenario;
    auto detector = [](const DetectorParams& d) {
        return ordered_json{{"coupling", d.coupling},
                            {"gap", d.gap},
                            {"sigma", d.sigma},
                            {"t_on", d.window.t_on},
                            {"t_off", d.window.t_off}};
    };
    ordered_json meta;
    meta["preset"] = std::string(name);
    meta["detector_a"] = detector(s.det_a);
    meta["detector_b"] = detector(s.det_b);
    meta["separation"] = s.separation;
    if (cfg.sweep) {
        meta["sweep"] = {{"parameter", std::string(to_string(cfg.sweep->parameter))},
                         {"from", cfg.sweep->from},
                         {"to", cfg.sweep->to},
                         {"points", cfg.sweep->points},
                         {"spacing", std::string(to_string(cfg.sweep->spacing))}};
    }
    if (name == "fig2a" || name == "fig2b") {
        const SeparationInterval lc = light_contact_interval(s.det_a.window, s.det_b.window);
        meta["light_contact_interval"] = {lc.r_min, lc.r_max};
        meta["plot"] = name == "fig2a" ? ordered_json{{"x", "value"}, {"y", "abs_j"}}
                                       : ordered_json{{"x", "value"}, {"y", "bell_phi_plus"}};
    } else {
        meta["plot"] = {{"x", "value"}, {"y", "ratio"}, {"x_scale", "log"}};
    }
    meta["columns"] = csv_columns();
    out << meta.dump(2) << '\n';
}

}  // namespace harvest
