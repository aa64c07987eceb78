#include "harvest/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace harvest {

namespace {

using boost::property_tree::ptree;

[[noreturn]] void fail(const std::string& key, const std::string& what)
{
    throw ConfigError(key + ": " + what);
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_plain(std::string_view text, const std::string& key)
{
    text = trim(text);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        fail(key, "expected a number, got '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) {
        fail(key, "must be finite");
    }
    return v;
}

class Section {
public:
    Section(std::string name, const ptree* tree) : name_(std::move(name)), tree_(tree) {}

    bool present() const { return tree_ != nullptr; }
    std::string key(const std::string& k) const { return name_ + "." + k; }

    std::optional<std::string> raw(const std::string& k)
    {
        seen_.insert(k);
        if (!tree_) {
            return std::nullopt;
        }
        const auto child = tree_->get_child_optional(ptree::path_type(k, '\0'));
        if (!child) {
            return std::nullopt;
        }
        return child->data();
    }

    std::string text(const std::string& k)
    {
        auto v = raw(k);
        if (!v) {
            fail(key(k), "missing");
        }
        return *v;
    }

    /// Number, optionally "<x>*sigma" when sigma_unit > 0.
    std::optional<double> number(const std::string& k, double sigma_unit = 0.0)
    {
        const auto v = raw(k);
        if (!v) {
            return std::nullopt;
        }
        const std::string_view s = trim(*v);
        const auto star = s.find('*');
        if (star == std::string_view::npos) {
            return parse_plain(s, key(k));
        }
        if (trim(s.substr(star + 1)) != "sigma") {
            fail(key(k), "only the '*sigma' unit suffix is supported, got '" + std::string(s) + "'");
        }
        if (!(sigma_unit > 0.0)) {
            fail(key(k), "does not accept the '*sigma' suffix");
        }
        return parse_plain(s.substr(0, star), key(k)) * sigma_unit;
    }

    double required(const std::string& k, double sigma_unit = 0.0)
    {
        auto v = number(k, sigma_unit);
        if (!v) {
            fail(key(k), "missing");
        }
        return *v;
    }

    void reject_unknown() const
    {
        if (!tree_) {
            return;
        }
        for (const auto& [k, child] : *tree_) {
            if (!seen_.count(k)) {
                fail(key(k), "unknown key");
            }
        }
    }

private:
    std::string name_;
    const ptree* tree_;
    std::set<std::string> seen_;
};

/// sigma_unit 0: use the detector's own sigma.
DetectorParams read_detector(Section& sec, double sigma_unit)
{
    DetectorParams d;
    d.gap = sec.required("gap");
    d.sigma = sec.required("sigma");
    d.coupling = sec.number("coupling").value_or(0.01 * d.gap);
    if (sigma_unit == 0.0) {
        sigma_unit = d.sigma;
    }
    d.window.t_on = sec.required("t_on", sigma_unit);
    d.window.t_off = sec.required("t_off", sigma_unit);
    return d;
}

std::size_t parse_count(const std::string& text, const std::string& key)
{
    const std::string_view s = trim(text);
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
        fail(key, "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

bool is_length(SweepParameter p)
{
    return p == SweepParameter::r || p == SweepParameter::delta || p == SweepParameter::delta_t ||
           p == SweepParameter::duration;
}

void validate_config(const RunConfig& cfg)
{
    try {
        validate(cfg.point.scenario);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.point.scenario.det_a.sigma != cfg.point.scenario.det_b.sigma) {
        fail("detector_b.sigma", "must equal detector_a.sigma");
    }
    if (cfg.point.time_uncertainty < 0.0) {
        fail("scenario.delta_t", "must be >= 0");
    }
    if (cfg.point.time_uncertainty > 0.0 && cfg.point.scenario.position_uncertainty > 0.0) {
        fail("scenario.delta_t", "cannot be positive together with scenario.delta");
    }
    const auto& n = cfg.numerics;
    if (!(n.tol_abs > 0.0)) {
        fail("numerics.tol_abs", "must be > 0");
    }
    if (!(n.tol_rel > 0.0)) {
        fail("numerics.tol_rel", "must be > 0");
    }
    if (!(n.tail_tol > 0.0 && n.tail_tol < 1.0)) {
        fail("numerics.tail_tol", "must lie in (0, 1)");
    }
    if (n.eval_budget == 0) {
        fail("numerics.eval_budget", "must be > 0");
    }
    if (cfg.sweep) {
        const SweepSpec& sw = *cfg.sweep;
        if (sw.points < 2) {
            fail("sweep.points", "must be >= 2");
        }
        if (!(sw.from < sw.to)) {
            fail("sweep.to", "must exceed sweep.from");
        }
        if (sw.spacing == Spacing::log && !(sw.from > 0.0)) {
            fail("sweep.from", "must be > 0 for log spacing");
        }
        const bool strictly_positive = sw.parameter == SweepParameter::r || sw.parameter == SweepParameter::gap ||
                                       sw.parameter == SweepParameter::duration;
        if (strictly_positive ? !(sw.from > 0.0) : !(sw.from >= 0.0)) {
            fail("sweep.from", strictly_positive ? "must be > 0" : "must be >= 0");
        }
    }
}

}  // namespace

std::string_view to_string(SweepParameter p)
{
    switch (p) {
    case SweepParameter::r:
        return "r";
    case SweepParameter::delta:
        return "delta";
    case SweepParameter::delta_t:
        return "delta_t";
    case SweepParameter::gap:
        return "gap";
    case SweepParameter::duration:
        return "duration";
    }
    return "unknown";
}

std::string_view to_string(Spacing s)
{
    return s == Spacing::linear ? "linear" : "log";
}

std::string_view to_string(OutputFormat f)
{
    return f == OutputFormat::csv ? "csv" : "json";
}

SweepParameter parse_sweep_parameter(std::string_view name)
{
    for (auto p : {SweepParameter::r, SweepParameter::delta, SweepParameter::delta_t, SweepParameter::gap,
                   SweepParameter::duration}) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) +
                                "' (expected r, delta, delta_t, gap or duration)");
}

OutputFormat parse_output_format(std::string_view name)
{
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

RunConfig parse_config(std::istream& in, const std::string& source)
{
    ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }

    static const std::set<std::string> known{"detector_a", "detector_b", "scenario", "numerics", "sweep", "output"};
    for (const auto& [name, child] : tree) {
        if (!child.data().empty() && child.empty()) {
            throw ConfigError(name + ": key outside any section");
        }
        if (!known.count(name)) {
            throw ConfigError(name + ": unknown section");
        }
    }
    auto section = [&](const std::string& name) {
        const auto child = tree.get_child_optional(ptree::path_type(name, '\0'));
        return Section(name, child ? &*child : nullptr);
    };

    RunConfig cfg;
    Section a = section("detector_a");
    Section b = section("detector_b");
    Section sc = section("scenario");
    Section num = section("numerics");
    Section sw = section("sweep");
    Section out = section("output");
    if (!a.present()) {
        throw ConfigError("detector_a: missing section");
    }
    if (!b.present()) {
        throw ConfigError("detector_b: missing section");
    }
    if (!sc.present()) {
        throw ConfigError("scenario: missing section");
    }

    Scenario& s = cfg.point.scenario;
    s.det_a = read_detector(a, 0.0);
    const double unit = s.det_a.sigma;
    s.det_b = read_detector(b, unit);
    s.separation = sc.required("separation", unit);
    s.position_uncertainty = sc.number("delta", unit).value_or(0.0);
    cfg.point.time_uncertainty = sc.number("delta_t", unit).value_or(0.0);

    cfg.numerics.tol_abs = num.number("tol_abs").value_or(cfg.numerics.tol_abs);
    cfg.numerics.tol_rel = num.number("tol_rel").value_or(cfg.numerics.tol_rel);
    cfg.numerics.tail_tol = num.number("tail_tol").value_or(cfg.numerics.tail_tol);
    if (auto budget = num.raw("eval_budget")) {
        cfg.numerics.eval_budget = parse_count(*budget, "numerics.eval_budget");
    }

    if (sw.present()) {
        SweepSpec spec;
        try {
            spec.parameter = parse_sweep_parameter(trim(sw.text("parameter")));
        } catch (const std::invalid_argument& e) {
            fail("sweep.parameter", e.what());
        }
        const double sweep_unit = is_length(spec.parameter) ? unit : 0.0;
        spec.from = sw.required("from", sweep_unit);
        spec.to = sw.required("to", sweep_unit);
        spec.points = parse_count(sw.text("points"), "sweep.points");
        if (auto sp = sw.raw("spacing")) {
            const std::string_view v = trim(*sp);
            if (v == "linear") {
                spec.spacing = Spacing::linear;
            } else if (v == "log") {
                spec.spacing = Spacing::log;
            } else {
                fail("sweep.spacing", "expected linear or log, got '" + std::string(v) + "'");
            }
        }
        cfg.sweep = spec;
    }

    if (out.present()) {
        cfg.output.path = std::string(trim(out.raw("path").value_or("")));
        if (auto f = out.raw("format")) {
            try {
                cfg.output.format = parse_output_format(trim(*f));
            } catch (const std::invalid_argument& e) {
                fail("output.format", e.what());
            }
        }
    }

    for (Section* sec : {&a, &b, &sc, &num, &sw, &out}) {
        sec->reject_unknown();
    }
    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open");
    }
    return parse_config(in, path);
}

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_config(std::ostream& out, const RunConfig& cfg)
{
    auto detector = [&](const char* name, const DetectorParams& d) {
        out << '[' << name << "]\n"
            << "coupling = " << format_number(d.coupling) << '\n'
            << "gap = " << format_number(d.gap) << '\n'
            << "sigma = " << format_number(d.sigma) << '\n'
            << "t_on = " << format_number(d.window.t_on) << '\n'
            << "t_off = " << format_number(d.window.t_off) << "\n\n";
    };
    const Scenario& s = cfg.point.scenario;
    detector("detector_a", s.det_a);
    detector("detector_b", s.det_b);
    out << "[scenario]\n"
        << "separation = " << format_number(s.separation) << '\n'
        << "delta = " << format_number(s.position_uncertainty) << '\n'
        << "delta_t = " << format_number(cfg.point.time_uncertainty) << "\n\n";
    out << "[numerics]\n"
        << "tol_abs = " << format_number(cfg.numerics.tol_abs) << '\n'
        << "tol_rel = " << format_number(cfg.numerics.tol_rel) << '\n'
        << "tail_tol = " << format_number(cfg.numerics.tail_tol) << '\n'
        << "eval_budget = " << cfg.numerics.eval_budget << "\n";
    if (cfg.sweep) {
        const SweepSpec& sw = *cfg.sweep;
        out << "\n[sweep]\n"
            << "parameter = " << to_string(sw.parameter) << '\n'
            << "from = " << format_number(sw.from) << '\n'
            << "to = " << format_number(sw.to) << '\n'
            << "points = " << sw.points << '\n'
            << "spacing = " << to_string(sw.spacing) << '\n';
    }
    out << "\n[output]\n";
    if (!cfg.output.path.empty()) {
        out << "path = " << cfg.output.path << '\n';
    }
    out << "format = " << to_string(cfg.output.format) << '\n';
}

}  // namespace harvest
