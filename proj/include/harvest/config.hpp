#pragma once

#include "harvest/report.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace harvest {

enum class SweepParameter { r, delta, delta_t, gap, duration };
enum class Spacing { linear, log };
enum class OutputFormat { csv, json };

std::string_view to_string(SweepParameter p);
std::string_view to_string(Spacing s);
std::string_view to_string(OutputFormat f);
/// Throw std::invalid_argument on unknown names.
SweepParameter parse_sweep_parameter(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::r;
    double from = 0.0;
    double to = 0.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::linear;
    bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
    std::string path;  ///< empty: standard output
    OutputFormat format = OutputFormat::csv;
    bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
    PointInput point;
    quadrature::QuadOptions numerics;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
    bool operator==(const RunConfig&) const = default;
};

/// Malformed or invalid configuration. The message names the line (syntax
/// errors) or the section.key (value and constraint errors).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses the sectioned key-value format:
///
///   [detector_a] coupling gap sigma t_on t_off
///   [detector_b] coupling gap sigma t_on t_off
///   [scenario]   separation delta delta_t
///   [numerics]   tol_abs tol_rel tail_tol eval_budget
///   [sweep]      parameter from to points spacing
///   [output]     path format
///
/// Lines starting with ';' or '#' are comments. Lengths and times
/// (t_on, t_off, separation, delta, delta_t, and sweep from/to for
/// r/delta/delta_t/duration) accept an "<x>*sigma" form, scaled by
/// detector_a.sigma. Missing coupling defaults to 0.01 * gap. Unknown
/// sections or keys are errors.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Writes every key in plain numbers; parse_config reproduces `cfg` exactly.
void write_config(std::ostream& out, const RunConfig& cfg);

/// 17 significant digits, "%.17g" style; "nan"/"inf" for non-finite values.
std::string format_number(double v);

}  // namespace harvest
