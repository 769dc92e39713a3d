#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqom/config.hpp"
#include "sqom/entanglement.hpp"

namespace sqom {

// One evaluated sweep point. Unstable or failed rows carry no
// entanglement figures, never fabricated zeros.
struct SweepRow {
    std::vector<double> axis_values;
    bool stable = false;
    double abscissa = 0.0;
    double n_s = 0.0;
    double abs_m_s = 0.0;
    std::optional<double> eta;  // unset when the reference coupling is zero
    std::optional<EntanglementReport> ent;
    std::optional<double> min_symp_eig;
    std::optional<CM6> cm;  // steady-state covariance matrix
    std::string error;  // nonempty when the stage pipeline failed

    // verbose diagnostics
    double meanfield_residual = 0.0;
    int meanfield_iterations = 0;
    double solve_residual = 0.0;
    double beta_p_over_kappa = 0.0;  // size of the dropped parametric term
    bool low_quality_factor = false;
};

// Full pipeline at one parameter point: params -> frame -> linearized
// model -> moments -> covariance -> entanglement.
SweepRow eval_point(const SweepConfig& cfg, const std::vector<double>& axis_values);

// Cartesian product of the config axes in lexicographic order (first
// axis slowest). Rows are evaluated concurrently but returned and
// written in deterministic order.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows);
void write_json(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

// 6x6 covariance matrix as a plain CSV block over (X, Y, Q1, P1, Q2, P2).
void write_cm_csv(std::ostream& out, const CM6& v);

// Formats a double with 12 significant digits, the fixed table format.
std::string format_number(double v);

}  // namespace sqom
