#include "harvest/sweep.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <sstream>

using namespace harvest;

namespace {

constexpr double kSigma = 1e-3;

RunConfig small_sweep(SweepParameter p, double from, double to, std::size_t n, Spacing sp = Spacing::linear)
{
    RunConfig cfg = figure_config("fig2a");
    cfg.sweep = SweepSpec{p, from, to, n, sp};
    return cfg;
}

std::string csv_of(const SweepTable& t)
{
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out(1);
    for (char c : s) {
        if (c == sep) {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("sweep grids")
{
    const auto lin = sweep_values({SweepParameter::r, 0.01, 0.4, 200, Spacing::linear});
    REQUIRE(lin.size() == 200);
    CHECK(lin.front() == 0.01);
    CHECK(lin.back() == 0.4);
    CHECK(std::is_sorted(lin.begin(), lin.end()));
    const auto lg = sweep_values({SweepParameter::delta, 1e-3, 10.0, 5, Spacing::log});
    CHECK(lg.front() == 1e-3);
    CHECK(lg.back() == 10.0);
    CHECK(lg[2] == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("apply_sweep_value")
{
    const PointInput base = figure_config("fig2a").point;
    CHECK(apply_sweep_value(base, SweepParameter::r, 0.3).scenario.separation == 0.3);
    CHECK(apply_sweep_value(base, SweepParameter::delta, 0.2).scenario.position_uncertainty == 0.2);
    CHECK(apply_sweep_value(base, SweepParameter::delta_t, 0.1).time_uncertainty == 0.1);
    const PointInput g = apply_sweep_value(base, SweepParameter::gap, 2.0);
    CHECK(g.scenario.det_a.gap == 2.0);
    CHECK(g.scenario.det_b.gap == 2.0);
    CHECK(g.scenario.det_a.coupling == base.scenario.det_a.coupling);
    const PointInput d = apply_sweep_value(base, SweepParameter::duration, 0.05);
    CHECK(d.scenario.det_a.window.t_off == 0.05);
    CHECK(d.scenario.det_b.window.t_on == base.scenario.det_b.window.t_on);
    CHECK(d.scenario.det_b.window.t_off == doctest::Approx(0.2));
}

TEST_CASE("parallel and serial sweeps produce identical tables")
{
    RunConfig cfg = small_sweep(SweepParameter::delta, 0.0, 0.3, 7);
    CHECK(csv_of(run_sweep(cfg, 4)) == csv_of(run_sweep_serial(cfg)));
    cfg.point.scenario.det_b.window = {60 * kSigma, 160 * kSigma};
    cfg.sweep = SweepSpec{SweepParameter::delta, 0.0, 0.1, 3, Spacing::linear};
    const SweepTable par = run_sweep(cfg, 2);
    CHECK(csv_of(par) == csv_of(run_sweep_serial(cfg)));
    CHECK(par.rows[1].report->method == JMethod::r_averaged);
}

TEST_CASE("csv layout")
{
    const SweepTable t = run_sweep(small_sweep(SweepParameter::r, 0.1, 0.2, 3), 1);
    const std::string csv = csv_of(t);
    CHECK(csv.find('\r') == std::string::npos);
    auto lines = split(csv, '\n');
    REQUIRE(lines.back().empty());
    lines.pop_back();
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] ==
          "parameter,value,status,method,causal_class,timing,i_aa,i_bb,re_i_ab,im_i_ab,re_j,im_j,abs_j,ratio,"
          "negativity,negativity_raw,negativity_higher_order,bell_phi_plus,bell_phi_minus,bell_psi_plus,"
          "bell_psi_minus,err_i_aa,err_i_bb,err_i_ab,err_j,message");
    for (const auto& line : lines) {
        CHECK(split(line, ',').size() == csv_columns().size());
    }
    const auto cells = split(lines[2], ',');
    CHECK(cells[0] == "r");
    CHECK(cells[1] == "0.15000000000000002");
    CHECK(cells[2] == "ok");
    CHECK(cells[3] == "direct");
    CHECK(cells[4] == "partially_light_connected");
    CHECK(cells[5] == "A_first");
    CHECK(std::stod(cells[12]) == std::abs(t.rows[1].report->integrals.j));
}

TEST_CASE("failed rows keep going")
{
    RunConfig cfg = small_sweep(SweepParameter::delta_t, 0.0, 0.02, 3);
    cfg.point.scenario.det_b.window = {60 * kSigma, 160 * kSigma};
    const SweepTable t = run_sweep(cfg, 2);
    CHECK(t.rows[0].status == RowStatus::ok);
    CHECK(t.rows[1].status == RowStatus::invalid_input);
    CHECK(t.rows[2].status == RowStatus::invalid_input);
    const auto cells = split(split(csv_of(t), '\n')[2], ',');
    CHECK(cells[2] == "invalid_input");
    for (std::size_t i = 3; i + 1 < cells.size(); ++i) {
        CHECK(cells[i].empty());
    }
    CHECK(cells.back().find("disjoint") != std::string::npos);

    RunConfig starved = small_sweep(SweepParameter::r, 0.1, 0.2, 2);
    starved.numerics.eval_budget = 50;
    const SweepTable s = run_sweep(starved, 1);
    CHECK(s.rows[0].status == RowStatus::convergence_failure);
    CHECK(s.rows[1].status == RowStatus::convergence_failure);
}

TEST_CASE("zero coupling gives zero physics columns")
{
    RunConfig cfg = small_sweep(SweepParameter::r, 0.1, 0.2, 2);
    cfg.point.scenario.det_a.coupling = 0.0;
    cfg.point.scenario.det_b.coupling = 0.0;
    for (const SweepRow& row : run_sweep(cfg).rows) {
        REQUIRE(row.report);
        CHECK(row.report->integrals.i_aa == 0.0);
        CHECK(row.report->integrals.j == Complex{});
        CHECK(row.report->negativity == 0.0);
    }
}

TEST_CASE("json output")
{
    RunConfig cfg = small_sweep(SweepParameter::delta_t, 0.0, 0.02, 2);
    cfg.point.scenario.det_b.window = {60 * kSigma, 160 * kSigma};
    std::ostringstream out;
    write_json(out, run_sweep(cfg));
    const auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["parameter"] == "delta_t");
    REQUIRE(doc["rows"].size() == 2);
    CHECK(doc["rows"][0]["status"] == "ok");
    CHECK(doc["rows"][0]["abs_j"].get<double>() > 0.0);
    CHECK(doc["rows"][1]["abs_j"].is_null());
}

TEST_CASE("figure presets")
{
    CHECK_THROWS_AS(figure_config("fig4"), std::invalid_argument);

    const SweepTable fig2 = run_sweep(figure_config("fig2a"));
    REQUIRE(fig2.rows.size() == 200);
    const auto peak = std::max_element(fig2.rows.begin(), fig2.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::abs(a.report->integrals.j) < std::abs(b.report->integrals.j);
    });
    CHECK(peak->value > 50 * kSigma);
    CHECK(peak->value < 250 * kSigma);
    for (const SweepRow& row : fig2.rows) {
        const HarvestReport& r = *row.report;
        CHECK(r.bell.phi_plus == doctest::Approx(0.5 * (1.0 - r.integrals.i_plus()) - r.integrals.j.real()).epsilon(1e-14));
    }

    const SweepTable fig3 = run_sweep(figure_config("fig3"));
    REQUIRE(fig3.rows.size() == 81);
    CHECK(fig3.rows[40].value == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(fig3.rows[40].report->ratio >= 0.35);
    CHECK(fig3.rows[40].report->ratio <= 0.45);
    for (std::size_t i = 1; i < fig3.rows.size(); ++i) {
        CHECK(fig3.rows[i].report->ratio <= fig3.rows[i - 1].report->ratio);
    }

    std::ostringstream meta;
    write_figure_metadata(meta, "fig2a", figure_config("fig2a"));
    const auto doc = nlohmann::json::parse(meta.str());
    CHECK(doc["light_contact_interval"][0].get<double>() == doctest::Approx(0.05));
    CHECK(doc["light_contact_interval"][1].get<double>() == doctest::Approx(0.25));
    CHECK(doc["plot"]["y"] == "abs_j");
}
