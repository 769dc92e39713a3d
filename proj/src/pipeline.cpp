#include "sqom/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sqom/errors.hpp"

namespace sqom {

namespace {

bool all_finite(const EntanglementReport& r) {
    auto ok = [](double v) { return std::isfinite(v); };
    bool fine = ok(r.en_cb1) && ok(r.en_cb2) && ok(r.en_b1b2) && ok(r.r_min);
    for (int i = 0; i < 3; ++i) {
        fine = fine && ok(r.etau_1v2[i]) && ok(r.residuals[i]) && ok(r.eta_pair[i]) && ok(r.eta_1v2[i]);
    }
    return fine;
}

}  // namespace

SweepRow eval_point(const SweepConfig& cfg, const std::vector<double>& axis_values) {
    SweepRow row;
    row.axis_values = axis_values;
    try {
        const PhysicalParams p = cfg.at(axis_values);
        const SqueezedFrame frame = effective_frame(p);
        row.n_s = frame.n_s;
        row.abs_m_s = std::abs(frame.m_s);
        row.low_quality_factor = p.low_quality_factor;

        LinearizedModel model;
        if (cfg.mode == CouplingMode::reproduction) {
            model = build_linearized(p, frame, cfg.coupling_scale);
        } else {
            const MeanField mf = solve_mean_field(p, frame);
            row.meanfield_residual = mf.residual;
            row.meanfield_iterations = mf.iterations;
            model = build_linearized(p, frame, mf);
        }
        row.beta_p_over_kappa = model.beta_p_over_kappa;
        if (model.g_lin_1 != Complex(0.0)) {
            row.eta = enhancement_factor(model.lambda_1, model.g_lin_1);
        }

        const MomentSystem sys = build_drift(model);
        const Stability st = stability(sys.drift);
        row.abscissa = st.spectral_abscissa;
        row.stable = st.stable;
        if (!st.stable) return row;

        const MomentState xs = steady_moments(sys);
        row.solve_residual = xs.residual;
        const CovarianceMatrix cm = assemble_cm(xs);
        row.min_symp_eig = cm.min_symplectic_eigenvalue;
        row.cm = cm.v;
        const ResidualContangle rc = residual_contangle_min(cm.v);
        if (!all_finite(rc.report)) {
            throw Error("non-finite entanglement figures");
        }
        row.ent = rc.report;
    } catch (const ThresholdExceeded& e) {
        row.error = std::string("threshold: ") + e.what();
    } catch (const Unstable& e) {
        row.error = std::string("unstable: ") + e.what();
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    size_t total = 1;
    for (const Axis& a : cfg.axes) total *= a.values.size();

    std::vector<SweepRow> rows(total);
    const int want = cfg.threads > 0 ? cfg.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    const int n_threads = std::max(1, std::min<int>(want, static_cast<int>(total)));

    auto values_at = [&cfg](size_t index) {
        std::vector<double> vals(cfg.axes.size());
        for (size_t a = cfg.axes.size(); a-- > 0;) {
            const size_t n = cfg.axes[a].values.size();
            vals[a] = cfg.axes[a].values[index % n];
            index /= n;
        }
        return vals;
    };

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= total) return;
            rows[i] = eval_point(cfg, values_at(i));
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

const char* kFixedColumns[] = {
    "stable", "abscissa", "n_s", "abs_m_s", "eta", "en_cb1", "en_cb2",
    "en_b1b2", "etau_c", "etau_b1", "etau_b2", "r_min", "min_symp_eig", "error",
};

std::string cell(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string();
}

std::vector<std::string> row_cells(const SweepRow& r) {
    std::vector<std::string> c;
    for (double v : r.axis_values) c.push_back(format_number(v));
    c.push_back(r.stable ? "true" : "false");
    c.push_back(format_number(r.abscissa));
    c.push_back(format_number(r.n_s));
    c.push_back(format_number(r.abs_m_s));
    c.push_back(cell(r.eta));
    if (r.ent) {
        const EntanglementReport& e = *r.ent;
        c.push_back(format_number(e.en_cb1));
        c.push_back(format_number(e.en_cb2));
        c.push_back(format_number(e.en_b1b2));
        c.push_back(format_number(e.etau_1v2[0]));
        c.push_back(format_number(e.etau_1v2[1]));
        c.push_back(format_number(e.etau_1v2[2]));
        c.push_back(format_number(e.r_min));
    } else {
        for (int i = 0; i < 7; ++i) c.push_back("");
    }
    c.push_back(cell(r.min_symp_eig));
    c.push_back(r.error);
    return c;
}

}  // namespace

void write_csv(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    std::string header;
    for (const Axis& a : cfg.axes) {
        header += axis_name_str(a.name);
        header += ',';
    }
    for (size_t i = 0; i < std::size(kFixedColumns); ++i) {
        header += kFixedColumns[i];
        if (i + 1 < std::size(kFixedColumns)) header += ',';
    }
    out << header << '\n';
    for (const SweepRow& r : rows) {
        const auto cells = row_cells(r);
        for (size_t i = 0; i < cells.size(); ++i) {
            out << cells[i];
            if (i + 1 < cells.size()) out << ',';
        }
        out << '\n';
    }
}

void write_cm_csv(std::ostream& out, const CM6& v) {
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            out << format_number(v(i, j));
            if (j < 5) out << ',';
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        nlohmann::json o;
        for (size_t a = 0; a < cfg.axes.size(); ++a) {
            o[axis_name_str(cfg.axes[a].name)] = r.axis_values[a];
        }
        o["stable"] = r.stable;
        o["abscissa"] = r.abscissa;
        o["n_s"] = r.n_s;
        o["abs_m_s"] = r.abs_m_s;
        if (r.eta) o["eta"] = *r.eta;
        if (r.ent) {
            o["en_cb1"] = r.ent->en_cb1;
            o["en_cb2"] = r.ent->en_cb2;
            o["en_b1b2"] = r.ent->en_b1b2;
            o["etau_c"] = r.ent->etau_1v2[0];
            o["etau_b1"] = r.ent->etau_1v2[1];
            o["etau_b2"] = r.ent->etau_1v2[2];
            o["r_min"] = r.ent->r_min;
        }
        if (r.min_symp_eig) o["min_symp_eig"] = *r.min_symp_eig;
        if (!r.error.empty()) o["error"] = r.error;
        arr.push_back(std::move(o));
    }
    out << arr.dump(2) << '\n';
}

}  // namespace sqom
