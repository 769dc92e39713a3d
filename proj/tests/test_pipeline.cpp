#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sqom/pipeline.hpp"
#include "sqom/selfcheck.hpp"

using namespace sqom;

namespace {

SweepConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

const char* kResonantBase =
    "kappa = 0.9\n"
    "gamma_m1 = 1e-5\n"
    "gamma_m2 = 1e-5\n"
    "g1 = 0.2\n"
    "g2 = 0.2\n"
    "chi = 0.1\n"
    "phi = pi/2\n"
    "delta_c = 1.0\n"
    "nbar_m1 = 100\n"
    "nbar_m2 = 100\n";

}  // namespace

TEST_CASE("eval point composes the full pipeline") {
    SweepConfig cfg = parse(std::string(kResonantBase) + "r_d = 0\n");
    const SweepRow row = eval_point(cfg, {});
    REQUIRE(row.error.empty());
    REQUIRE(row.stable);
    REQUIRE(row.ent.has_value());
    CHECK(row.ent->en_cb1 > 0.05);
    CHECK(row.eta.has_value());
    CHECK(*row.eta == doctest::Approx(1.0));
    CHECK(*row.min_symp_eig >= 0.5 - 1e-9);
    CHECK(row.n_s == 0.0);
    CHECK(row.abs_m_s == 0.0);
    REQUIRE(row.cm.has_value());
    CHECK((*row.cm - row.cm->transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(row.cm->diagonal().minCoeff() > 0.0);
}

TEST_CASE("negativity is angle independent without squeezing") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "r_d = 0\naxis.theta_d = linspace(0, 4pi, 7)\n");
    const std::vector<SweepRow> rows = run_sweep(cfg);
    REQUIRE(rows.size() == 7);
    for (const SweepRow& r : rows) {
        REQUIRE(r.ent.has_value());
        CHECK(std::abs(r.ent->en_cb1 - rows[0].ent->en_cb1) < 1e-10);
    }
}

TEST_CASE("phase mismatch strictly reduces the negativity") {
    SweepConfig matched = parse(std::string(kResonantBase) +
                                "r_d = 0.25\ntheta_d = 0\ndelta_theta = pi\n");
    SweepConfig mismatched = parse(std::string(kResonantBase) +
                                   "r_d = 0.25\ntheta_d = 0\ndelta_theta = 3.641592653589793\n");
    const SweepRow a = eval_point(matched, {});
    const SweepRow b = eval_point(mismatched, {});
    REQUIRE(a.ent.has_value());
    REQUIRE(b.ent.has_value());
    CHECK(b.n_s > 0.01);
    CHECK(b.ent->en_cb1 < a.ent->en_cb1);
}

TEST_CASE("sweep product, ordering, and determinism") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "r_d = 0\n"
                            "axis.theta_d = linspace(0, 2pi, 8)\n"
                            "axis.r_d = [0, 0.25]\n");
    cfg.threads = 1;
    const std::vector<SweepRow> rows = run_sweep(cfg);
    REQUIRE(rows.size() == 16);
    // lexicographic: first axis slowest
    CHECK(rows[0].axis_values[0] == 0.0);
    CHECK(rows[0].axis_values[1] == 0.0);
    CHECK(rows[1].axis_values[1] == 0.25);
    CHECK(rows[2].axis_values[0] == doctest::Approx(2.0 * M_PI / 7.0));

    std::ostringstream csv1, csv4;
    write_csv(csv1, cfg, rows);
    cfg.threads = 4;
    write_csv(csv4, cfg, run_sweep(cfg));
    CHECK(csv1.str() == csv4.str());
    CHECK(csv1.str().find("theta_d,r_d,stable,abscissa") == 0);
}

TEST_CASE("dark-mode dichotomy over the detuning sweep") {
    SweepConfig dmu = parse(std::string(kResonantBase) +
                            "r_d = 0\nphi = 0\naxis.delta_c = linspace(0.1, 2, 12)\n");
    for (const SweepRow& r : run_sweep(dmu)) {
        REQUIRE(r.error.empty());
        REQUIRE(r.ent.has_value());
        CHECK(r.ent->en_cb1 < 1e-10);
        CHECK(r.ent->r_min < 1e-10);
    }
    SweepConfig dmb = parse(std::string(kResonantBase) +
                            "r_d = 0\naxis.delta_c = linspace(0.1, 2, 12)\n");
    double best_en = 0.0, best_r = 0.0;
    for (const SweepRow& r : run_sweep(dmb)) {
        REQUIRE(r.ent.has_value());
        best_en = std::max(best_en, r.ent->en_cb1);
        best_r = std::max(best_r, r.ent->r_min);
    }
    CHECK(best_en > 1e-3);
    CHECK(best_r > 1e-9);
}

TEST_CASE("negativity oscillates with period two pi in the pump angle") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "r_d = 0.25\naxis.theta_d = linspace(0, 4pi, 33)\n");
    const std::vector<SweepRow> rows = run_sweep(cfg);
    // compare theta and theta + 2pi (16 grid steps apart)
    for (size_t i = 0; i + 16 < rows.size(); ++i) {
        REQUIRE(rows[i].ent.has_value());
        CHECK(std::abs(rows[i].ent->en_cb1 - rows[i + 16].ent->en_cb1) < 1e-9);
    }
    size_t best = 0;
    for (size_t i = 0; i < 17; ++i) {
        if (rows[i].ent->en_cb1 > rows[best].ent->en_cb1) best = i;
    }
    CHECK(std::abs(rows[best].axis_values[0] - M_PI) < 0.45);
}

TEST_CASE("failed rows carry labeled errors and no figures") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "r_d = 0.25\naxis.delta_c = [0, 1]\n");
    const std::vector<SweepRow> rows = run_sweep(cfg);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].error.empty());  // squeezing unreachable at zero detuning
    CHECK_FALSE(rows[0].ent.has_value());
    CHECK(rows[1].error.empty());

    std::ostringstream csv;
    write_csv(csv, cfg, rows);
    const std::string text = csv.str();
    CHECK(text.find("threshold") != std::string::npos);
}

TEST_CASE("unstable rows are flagged without fabricated figures") {
    // crank the coupling far above the stability boundary
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "r_d = 0.9\ntheta_d = pi\ncoupling_scale = 3\n");
    const SweepRow row = eval_point(cfg, {});
    CHECK(row.error.empty());
    CHECK_FALSE(row.stable);
    CHECK(row.abscissa > 0.0);
    CHECK_FALSE(row.ent.has_value());
    CHECK_FALSE(row.min_symp_eig.has_value());

    std::ostringstream csv;
    write_csv(csv, cfg, {row});
    CHECK(csv.str().find("false,") != std::string::npos);
}

TEST_CASE("first-principles pipeline evaluates a driven point") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "mode = first_principles\n"
                            "r_d = 0.25\ntheta_d = pi\ndrive_amp = 0.5\n");
    const SweepRow row = eval_point(cfg, {});
    REQUIRE(row.error.empty());
    REQUIRE(row.stable);
    REQUIRE(row.ent.has_value());
    CHECK(row.meanfield_iterations > 0);
    CHECK(row.meanfield_residual < 1e-10 * 1.5);
    CHECK(row.beta_p_over_kappa > 0.0);

    // non-convergent bistable drive surfaces as a labeled error
    SweepConfig hard = parse(std::string(kResonantBase) +
                             "mode = first_principles\n"
                             "r_d = 0.25\ntheta_d = pi\ndrive_amp = 2\n");
    const SweepRow bad = eval_point(hard, {});
    CHECK_FALSE(bad.error.empty());
    CHECK_FALSE(bad.ent.has_value());
}

TEST_CASE("undriven first-principles point is a separable thermal product") {
    SweepConfig cfg = parse(std::string(kResonantBase) +
                            "mode = first_principles\nr_d = 0\ndrive_amp = 0\n");
    const SweepRow row = eval_point(cfg, {});
    REQUIRE(row.error.empty());
    REQUIRE(row.ent.has_value());
    CHECK(row.ent->en_cb1 == 0.0);
    CHECK(row.ent->en_cb2 == 0.0);
    CHECK(row.ent->en_b1b2 == 0.0);
    CHECK(row.ent->r_min == 0.0);
    CHECK_FALSE(row.eta.has_value());  // no reference coupling at zero drive
}

TEST_CASE("fault injection trips exactly the targeted suites") {
    const auto clean = run_self_check(FaultInjection::none, 5, 20);
    for (const auto& r : clean) CHECK(r.pass);

    const auto drift = run_self_check(FaultInjection::drift_perturb, 5, 20);
    bool drift_failed = false, others_fine = true;
    for (const auto& r : drift) {
        if (r.name == "drift-vs-ode") drift_failed = !r.pass;
        else if (r.name == "steady-vs-evolve" || r.name == "tmsv-oracle") {
            others_fine = others_fine && r.pass;
        }
    }
    CHECK(drift_failed);
    CHECK(others_fine);

    const auto cm = run_self_check(FaultInjection::cm_scale, 5, 20);
    for (const auto& r : cm) {
        if (r.name == "physicality") CHECK_FALSE(r.pass);
        if (r.name == "drift-vs-ode") CHECK(r.pass);
    }
}

TEST_CASE("json output carries the same figures") {
    SweepConfig cfg = parse(std::string(kResonantBase) + "r_d = 0\nformat = json\n");
    const SweepRow row = eval_point(cfg, {});
    std::ostringstream out;
    write_json(out, cfg, {row});
    CHECK(out.str().find("\"en_cb1\"") != std::string::npos);
    CHECK(out.str().find("\"stable\": true") != std::string::npos);
}
