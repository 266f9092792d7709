// Acceptance suite: runs every gate criterion end to end and prints one
// pass/fail line per criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ripa/cases.hpp"
#include "ripa/diagnostics.hpp"
#include "ripa/output.hpp"
#include "ripa/run_case.hpp"
#include "ripa/rusanov.hpp"
#include "ripa/scheme.hpp"
#include "test_support.hpp"

#ifndef RIPA_GOLDEN_DIR
#define RIPA_GOLDEN_DIR "tests/golden"
#endif

namespace {

using namespace ripa;

struct Check {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

/// Discrete hydrostatic data built from the cell relations themselves, so
/// the well-balance theorem's hypotheses hold to round-off.
RipaState discrete_steady(const std::string& family, const MacGrid& g, const Bathymetry& bath) {
    RipaState s;
    s.u = FaceField::zeros(g);
    if (family == "lake_at_rest") {
        s.theta = CellField::constant(g, 1.0);
        s.h = CellField(g.num_cells());
        for (int c = 0; c < g.num_cells(); ++c) s.h[c] = 8.0 - bath.values[c];
    } else if (family == "isobaric") {
        const CaseSpec& spec = find_case("isobaric");
        s.h = project_to_cells(g, spec.h0, 1);
        s.theta = CellField(g.num_cells());
        for (int c = 0; c < g.num_cells(); ++c) s.theta[c] = 1.0 / (s.h[c] * s.h[c]);
    } else {
        s.h = CellField::constant(g, 1.0);
        s.theta = CellField(g.num_cells());
        for (int c = 0; c < g.num_cells(); ++c)
            s.theta[c] = 0.1 * std::exp(-2.0 * bath.values[c]);
    }
    return s;
}

double max_norm_drift(const MacGrid& g, const RipaState& a, const RipaState& b) {
    double d = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) {
        d = std::max(d, std::abs(a.h[c] - b.h[c]));
        d = std::max(d, std::abs(a.theta[c] - b.theta[c]));
    }
    for (int f = 0; f < g.num_faces_total(); ++f) d = std::max(d, std::abs(a.u[f] - b.u[f]));
    return d;
}

// ---------------------------------------------------------------- criterion 1
Check criterion_well_balance() {
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* family : {"lake_at_rest", "isobaric", "const_height"}) {
        const CaseSpec& spec = find_case(family);
        const MacGrid g = spec.make_grid(std::array<int, 2>{200, 1});
        const Bathymetry bath = spec.make_bathymetry(g);
        for (Variant variant : {Variant::centred, Variant::upwind}) {
            RipaState s = discrete_steady(family, g, bath);
            const RipaState initial = s;
            SchemeConfig cfg;
            cfg.variant = variant;
            Scheme scheme(g, bath, cfg);
            for (int n = 0; n < 1000; ++n) scheme.advance(s, 1e9);
            const double drift = max_norm_drift(g, s, initial);
            ck.require(drift <= 1e-12, std::string(family) + " drift " + fmt(drift));
        }
    }
    // bitwise preservation under a fixed time step, dyadic data
    {
        const MacGrid g = MacGrid::uniform_1d(0.0, 2.0, 256);
        Bathymetry bath;
        bath.values = CellField(g.num_cells());
        RipaState s;
        s.h = CellField(g.num_cells());
        s.theta = CellField::constant(g, 1.0);
        s.u = FaceField::zeros(g);
        const double pattern[4] = {0.0, 0.25, 1.5, 0.5};
        for (int c = 0; c < g.num_cells(); ++c) {
            bath.values[c] = pattern[c % 4];
            s.h[c] = 8.0 - bath.values[c];
        }
        const RipaState initial = s;
        SchemeConfig cfg;
        cfg.fixed_dt = 1e-3;
        Scheme scheme(g, bath, cfg);
        for (int n = 0; n < 1000; ++n) scheme.advance(s, 1e9);
        bool bitwise = true;
        for (int c = 0; c < g.num_cells(); ++c)
            bitwise = bitwise && s.h[c] == initial.h[c] && s.theta[c] == initial.theta[c];
        for (int f = 0; f < g.num_faces_total(); ++f) bitwise = bitwise && s.u[f] == 0.0;
        ck.require(bitwise, "dyadic fixed-dt run not bitwise-equal");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ck.require(secs < 5.0, "runtime " + fmt(secs) + "s exceeds 5s");
    ck.note(fmt(secs) + "s");
    return ck;
}

// ---------------------------------------------------------------- criterion 2
Check criterion_table1() {
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Table1Row> rows = table1_errors(200, 20.0);
    // reference magnitudes for a plain non-well-balanced baseline, factor-5 bands
    const double expected_rusanov_h[3] = {2.6e-2, 0.12, 0.02};
    for (size_t i = 0; i < rows.size(); ++i) {
        const Table1Row& r = rows[i];
        ck.require(r.well_balanced.h <= 1e-6, r.case_name + " wb h " + fmt(r.well_balanced.h));
        ck.require(r.well_balanced.u <= 1e-6, r.case_name + " wb u " + fmt(r.well_balanced.u));
        const double lo = expected_rusanov_h[i] / 5.0, hi = expected_rusanov_h[i] * 5.0;
        ck.require(r.rusanov.h >= lo && r.rusanov.h <= hi,
                   r.case_name + " rusanov h " + fmt(r.rusanov.h) + " outside [" + fmt(lo) + "," +
                       fmt(hi) + "]");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ck.require(secs < 120.0, "runtime " + fmt(secs) + "s exceeds 2min");
    ck.note(fmt(secs) + "s");
    return ck;
}

// ---------------------------------------------------------------- criterion 3
Check criterion_energy_dissipation() {
    Check ck;
    const CaseSpec& spec = find_case("dam_flat_1d");
    const MacGrid g = spec.make_grid();
    const Bathymetry bath = spec.make_bathymetry(g);
    SchemeConfig cfg;
    cfg.variant = Variant::centred;
    Scheme scheme(g, bath, cfg);
    RipaState s = spec.make_initial_state(g);
    int steps = 0, energy_up = 0, quad_pos = 0;
    double worst_growth = -1e300;
    RunCallbacks cb;
    cb.on_step = [&](const RipaState& before, const RipaState& after, Scheme& sch,
                     const StepReport&) {
        const double e0 = energy_totals(g, before, bath.values, 1.0).total();
        const double e1 = energy_totals(g, after, bath.values, 1.0).total();
        worst_growth = std::max(worst_growth, (e1 - e0) / std::abs(e0));
        if (e1 - e0 > 1e-12 * std::abs(e0)) ++energy_up;
        const EnergyQuadratics q = energy_quadratics(g, before, after, sch.artifacts(), cfg);
        if (q.A > 0.0 || q.R > 0.0 || q.Q > 0.0) ++quad_pos;
        ++steps;
    };
    run(scheme, s, 0.2, {}, cb);
    ck.require(energy_up == 0, std::to_string(energy_up) + " energy increases");
    ck.require(quad_pos == 0, std::to_string(quad_pos) + " steps with positive quadratics");
    ck.note(std::to_string(steps) + " steps, max growth " + fmt(worst_growth));
    return ck;
}

// ---------------------------------------------------------------- criterion 4
Check criterion_identity_residuals() {
    Check ck;
    std::mt19937 rng(2024);
    double worst = 0.0;
    int states = 0;
    for (const MacGrid& g : {MacGrid::uniform_1d(0.0, 1.0, 32),
                             MacGrid::uniform_2d({0.0, 0.0}, {1.0, 1.0}, {8, 8})}) {
        for (int rep = 0; rep < 25; ++rep) {
            const RipaState before = ripa::test::random_state(g, rng);
            Bathymetry bath;
            bath.values = ripa::test::random_cells(g, rng, 0.0, 0.5);
            ++states;
            for (Variant variant : {Variant::centred, Variant::upwind}) {
                SchemeConfig cfg;
                cfg.variant = variant;
                Scheme scheme(g, bath, cfg);
                RipaState after = before;
                scheme.advance(after, 1e9);
                const IdentityResiduals r =
                    energy_identity_residuals(g, before, after, bath.values, scheme.artifacts(),
                                              cfg);
                worst = std::max(worst, r.max());
            }
        }
    }
    ck.require(worst <= 1e-11, "max residual " + fmt(worst));
    ck.note(std::to_string(states) + " states, max residual " + fmt(worst));
    return ck;
}

// ---------------------------------------------------------------- criterion 5
Check criterion_positivity() {
    Check ck;
    const CaseSpec& spec = find_case("dam_nonflat_1d");
    const MacGrid g = spec.make_grid();
    const Bathymetry bath = spec.make_bathymetry(g);
    SchemeConfig cfg;
    cfg.variant = Variant::upwind;
    Scheme scheme(g, bath, cfg);
    RipaState s = spec.make_initial_state(g);
    double min_h = 1e300, min_theta = 1e300;
    int steps = 0, retries = 0;
    RunCallbacks cb;
    cb.on_step = [&](const RipaState&, const RipaState&, Scheme&, const StepReport& rep) {
        min_h = std::min(min_h, rep.min_h);
        min_theta = std::min(min_theta, rep.min_theta);
        retries += rep.retries;
        ++steps;
    };
    try {
        run(scheme, s, 0.3, {}, cb); // a SolverError here would be a retries-exhausted failure
    } catch (const SolverError& e) {
        ck.require(false, std::string("solver failure: ") + e.what());
        return ck;
    }
    ck.require(min_h > 0.0, "min h " + fmt(min_h));
    ck.require(min_theta > 0.0, "min theta " + fmt(min_theta));
    ck.require(min_h >= spec.dry_floor * 1e-2, "min h below dry floor margin");
    ck.note(std::to_string(steps) + " steps, " + std::to_string(retries) + " retries, min h " +
            fmt(min_h));
    return ck;
}

// ---------------------------------------------------------------- criterion 6
Check criterion_duality_and_dual_flux() {
    Check ck;
    std::mt19937 rng(4096);
    double worst_dual = 0.0, worst_balance = 0.0;
    for (const MacGrid& g : {MacGrid::uniform_1d(0.0, 1.0, 16),
                             MacGrid::uniform_2d({0.0, 0.0}, {1.0, 1.0}, {8, 8})}) {
        for (int rep = 0; rep < 20; ++rep) {
            const CellField q = ripa::test::random_cells(g, rng, -1.0, 1.0);
            const FaceField v = ripa::test::random_faces(g, rng, -1.0, 1.0);
            double scale = 0.0;
            const CellField div = divergence(v, g);
            for (int c = 0; c < g.num_cells(); ++c)
                scale += g.cell_volume() * std::abs(q[c] * div[c]);
            worst_dual =
                std::max(worst_dual, std::abs(duality_residual(q, v, g)) / std::max(scale, 1.0));
        }
        for (int rep = 0; rep < 10; ++rep) {
            const RipaState before = ripa::test::random_state(g, rng);
            Bathymetry bath;
            bath.values = ripa::test::random_cells(g, rng, 0.0, 0.5);
            SchemeConfig cfg;
            Scheme scheme(g, bath, cfg);
            RipaState after = before;
            scheme.advance(after, 1e9);
            worst_balance = std::max(
                worst_balance, dual_mass_balance_residual(g, before, after, scheme.artifacts()));
        }
    }
    ck.require(worst_dual <= 1e-12, "duality residual " + fmt(worst_dual));
    ck.require(worst_balance <= 1e-12, "dual mass balance residual " + fmt(worst_balance));
    ck.note("duality " + fmt(worst_dual) + ", dual balance " + fmt(worst_balance));
    return ck;
}

// ---------------------------------------------------------------- criterion 7
Check criterion_perturbation() {
    Check ck;
    const CaseSpec& spec = find_case("nonlinear_perturbation");
    const MacGrid g = spec.make_grid();
    const Bathymetry bath = spec.make_bathymetry(g);
    const RipaState steady = spec.make_steady_state(g);
    SchemeConfig cfg;
    cfg.variant = Variant::upwind;
    Scheme scheme(g, bath, cfg);
    RipaState s = spec.make_initial_state(g);
    const double initial_amp = perturbation_profile(g, s, steady).max_abs_h;
    double amp_mid = -1.0, amp_end = -1.0;
    RunCallbacks cb;
    cb.on_snapshot = [&](const RipaState& st, int) {
        const double amp = perturbation_profile(g, st, steady).max_abs_h;
        if (std::abs(st.t - 0.2) < 1e-9) amp_mid = amp;
        if (std::abs(st.t - 0.4) < 1e-9) amp_end = amp;
    };
    run(scheme, s, 0.4, {0.2, 0.4}, cb);
    ck.require(std::abs(initial_amp - 0.1) <= 1e-12, "initial amplitude " + fmt(initial_amp));
    ck.require(amp_mid <= 0.1 + 1e-12,
               "amplitude at t=0.2 is " + fmt(amp_mid) + " (new extremum)");
    ck.require(amp_end < 0.1, "amplitude at t=0.4 is " + fmt(amp_end));
    ck.note("0.1 -> " + fmt(amp_mid) + " -> " + fmt(amp_end));
    return ck;
}

// ---------------------------------------------------------------- criterion 8
Check criterion_shock_regression() {
    Check ck;
    const CaseSpec& spec = find_case("dam_flat_1d");
    // fine-grid baseline reference
    const MacGrid gf = spec.make_grid(std::array<int, 2>{5000, 1});
    RusanovScheme ref(gf, spec.make_bathymetry(gf), 1.0);
    RusanovScheme::State rs = ref.project(spec.h0, spec.u0x, spec.u0y, spec.theta0, 1);
    ref.run_to(rs, 0.2);
    std::vector<double> h_ref(gf.num_cells());
    for (int c = 0; c < gf.num_cells(); ++c) h_ref[c] = rs.h[c];

    std::vector<double> l1;
    std::vector<double> h200;
    for (int nx : {100, 200, 400}) {
        const MacGrid g = spec.make_grid(std::array<int, 2>{nx, 1});
        SchemeConfig cfg;
        cfg.variant = Variant::upwind;
        Scheme scheme(g, spec.make_bathymetry(g), cfg);
        RipaState s = spec.make_initial_state(g);
        run(scheme, s, 0.2, {});
        std::vector<double> h(nx);
        for (int c = 0; c < nx; ++c) h[c] = s.h[c];
        if (nx == 200) h200 = h;
        l1.push_back(l1_distance(h, restrict_to_coarse(h_ref, nx), g.dx(0)));
    }
    ck.require(l1[0] > l1[1] && l1[1] > l1[2],
               "refinement not monotone: " + fmt(l1[0]) + " " + fmt(l1[1]) + " " + fmt(l1[2]));

    // non-oscillation contrast: upwind total variation below centred
    const MacGrid g = spec.make_grid();
    SchemeConfig cfg;
    cfg.variant = Variant::centred;
    Scheme centred(g, spec.make_bathymetry(g), cfg);
    RipaState sc = spec.make_initial_state(g);
    run(centred, sc, 0.2, {});
    std::vector<double> hc(200);
    for (int c = 0; c < 200; ++c) hc[c] = sc.h[c];
    const double tv_up = total_variation(h200), tv_ct = total_variation(hc);
    ck.require(tv_up <= tv_ct, "TV upwind " + fmt(tv_up) + " > TV centred " + fmt(tv_ct));

    // regression against the stored profile
    const CsvTable golden = read_csv(std::string(RIPA_GOLDEN_DIR) + "/dam_flat_1d_upwind_200.csv");
    const std::vector<double> h_gold = golden.values("h");
    const double reg = l1_distance(h200, h_gold, g.dx(0));
    ck.require(reg <= 1e-9, "golden profile drifted by " + fmt(reg));
    ck.note("L1 " + fmt(l1[0]) + " > " + fmt(l1[1]) + " > " + fmt(l1[2]) + "; TV " + fmt(tv_up) +
            " <= " + fmt(tv_ct));
    return ck;
}

// ---------------------------------------------------------------- criterion 9
std::vector<double> quasi1d_reference(const CaseSpec& spec, int nf, double t_end) {
    const MacGrid g = MacGrid::uniform_1d(spec.lo[0], spec.hi[0], nf);
    Bathymetry bath;
    bath.values =
        project_to_cells(g, [&](double x, double) { return spec.bathymetry(x, 0.0); }, 1);
    RusanovScheme ref(g, bath, 1.0);
    RusanovScheme::State s =
        ref.project([&](double x, double) { return spec.h0(x, 0.0); },
                    [](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                    [&](double x, double) { return spec.theta0(x, 0.0); }, 1);
    ref.run_to(s, t_end);
    std::vector<double> h(nf);
    for (int c = 0; c < nf; ++c) h[c] = s.h[c];
    return h;
}

/// golden band file: lines of "case,nx,band" after a header line
double lookup_band(const std::string& name, int nx) {
    std::ifstream in(std::string(RIPA_GOLDEN_DIR) + "/cross_section_bands.csv");
    if (!in) throw std::runtime_error("missing golden band file");
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string case_name, nx_str, band_str;
        std::getline(ss, case_name, ',');
        std::getline(ss, nx_str, ',');
        std::getline(ss, band_str, ',');
        if (case_name == name && std::stoi(nx_str) == nx) return std::stod(band_str);
    }
    throw std::runtime_error("no golden band for " + name + "@" + std::to_string(nx));
}

Check criterion_2d_runs() {
    Check ck;
    struct Job {
        const char* name;
        int nx;
        bool cross_section;
    };
    const std::vector<Job> jobs = {{"steady_2d", 100, false},
                                   {"perturbed_steady_2d", 100, false},
                                   {"circular_dam_2d", 100, true},
                                   {"rect_dam_2d", 100, true},
                                   {"rect_dam_2d", 200, true}};
    for (const Job& job : jobs) {
        const auto t0 = std::chrono::steady_clock::now();
        const CaseSpec& spec = find_case(job.name);
        const MacGrid g = spec.make_grid(std::array<int, 2>{job.nx, job.nx});
        const Bathymetry bath = spec.make_bathymetry(g);
        SchemeConfig cfg;
        cfg.variant = spec.default_variant;
        Scheme scheme(g, bath, cfg);
        RipaState s = spec.make_initial_state(g);
        int violations = 0;
        RunCallbacks cb;
        cb.on_step = [&](const RipaState& before, const RipaState& after, Scheme& sch,
                         const StepReport&) {
            violations += static_cast<int>(
                check_step_invariants(g, before, after, bath.values, sch.artifacts(), sch.config())
                    .size());
        };
        run(scheme, s, spec.t_end, {}, cb);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string tag = std::string(job.name) + "@" + std::to_string(job.nx);
        ck.require(violations == 0, tag + ": " + std::to_string(violations) + " violations");
        ck.require(secs < 600.0, tag + " took " + fmt(secs) + "s");

        if (job.cross_section) {
            const double band = lookup_band(job.name, job.nx);
            const CrossSection cs = cross_section_y0(g, s);
            const std::vector<double> href =
                restrict_to_coarse(quasi1d_reference(spec, 5000, spec.t_end), job.nx);
            const double l1 = l1_distance(cs.h, href, g.dx(0));
            ck.require(l1 <= band, tag + " cross-section L1 " + fmt(l1) + " > band " + fmt(band));
            ck.note(tag + " L1 " + fmt(l1) + " (band " + fmt(band) + ", " + fmt(secs) + "s)");
        } else {
            ck.note(tag + " ok (" + fmt(secs) + "s)");
        }
    }
    return ck;
}

} // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* label;
        std::function<Check()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "well-balance of the three hydrostatic equilibria", criterion_well_balance},
        {2, "steady-state error table bands", criterion_table1},
        {3, "per-step energy dissipation (centred)", criterion_energy_dissipation},
        {4, "energy identity residuals on random states", criterion_identity_residuals},
        {5, "positivity on the almost-dry dam break", criterion_positivity},
        {6, "div-grad duality and dual-flux mass balance", criterion_duality_and_dual_flux},
        {7, "perturbations of a nonlinear equilibrium decay", criterion_perturbation},
        {8, "shock-capturing refinement and oscillation contrast", criterion_shock_regression},
        {9, "2d runs: invariants, runtime, cross-sections", criterion_2d_runs},
    };
    int failures = 0;
    for (const Entry& e : entries) {
        if (argc > 1) {
            bool wanted = false;
            for (int i = 1; i < argc; ++i) wanted = wanted || std::atoi(argv[i]) == e.id;
            if (!wanted) continue;
        }
        Check ck;
        try {
            ck = e.fn();
        } catch (const std::exception& ex) {
            ck.pass = false;
            ck.detail = std::string("exception: ") + ex.what();
        }
        std::printf("[%s] criterion %d: %s%s%s\n", ck.pass ? "PASS" : "FAIL", e.id, e.label,
                    ck.detail.empty() ? "" : " -- ", ck.detail.c_str());
        std::fflush(stdout);
        if (!ck.pass) ++failures;
    }
    return failures;
}
