#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqom/params.hpp"

namespace sqom {

enum class CouplingMode { reproduction, first_principles };
enum class OutputFormat { csv, json };

// Sweepable parameter names.
enum class AxisName {
    delta_c,
    r_d,
    theta_d,
    r_e,
    theta_e,
    delta_theta,
    delta_r,
    phi,
    chi,
};

const char* axis_name_str(AxisName a);

struct Axis {
    AxisName name;
    std::vector<double> values;
};

// Parsed contents of a run configuration. The squeezing, drive, and
// reservoir inputs each have two equivalent spellings; which one was
// given is tracked so sweeps can re-derive dependent quantities.
struct SweepConfig {
    PhysicalParams base;

    std::optional<double> r_d;          // alternative to base.opa_pump
    std::optional<double> power;        // alternative to base.drive_amp
    std::optional<double> omega_drive;  // required with power
    std::optional<double> delta_r;      // alternative to base.r_e
    std::optional<double> delta_theta;  // alternative to base.theta_e

    double coupling_scale = 1.0;  // reproduction-mode scale on g_j
    CouplingMode mode = CouplingMode::reproduction;
    std::vector<Axis> axes;  // in file order; product is swept lexicographically
    OutputFormat format = OutputFormat::csv;
    std::string output_path;
    int threads = 0;               // 0 = hardware concurrency
    long long sweep_cap = 10000000;  // refuse larger Cartesian products

    // Materializes the physical parameters at one sweep point; `overrides`
    // carries the axis values for this row (same order as `axes`).
    PhysicalParams at(const std::vector<double>& overrides) const;
    PhysicalParams at() const { return at({}); }
};

// Parses the flat key = value format. Unknown keys are an error.
SweepConfig parse_config(std::istream& in);
SweepConfig parse_config_file(const std::string& path);

}  // namespace sqom
