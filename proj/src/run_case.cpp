#include "ripa/run_case.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "ripa/rusanov.hpp"

namespace ripa {

namespace {

std::string variant_name(Variant v) { return v == Variant::centred ? "centred" : "upwind"; }

std::string snap_path(const std::string& dir, int idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "snap_%03d.csv", idx);
    return dir + "/" + buf;
}

HeaderMap base_header(const CaseSpec& spec, const RunConfig& cfg, const MacGrid& g,
                      Variant variant) {
    HeaderMap h;
    h.emplace_back("case", spec.name);
    h.emplace_back("scheme", cfg.scheme);
    if (cfg.scheme == "wb") h.emplace_back("variant", variant_name(variant));
    h.emplace_back("nx", std::to_string(g.n_cells(0)));
    if (g.dim() == 2) h.emplace_back("ny", std::to_string(g.n_cells(1)));
    return h;
}

/// L1 comparison of a coarse run against a fine-grid reference profile by
/// conservative restriction of the reference.
L1Errors compare_with_reference(const MacGrid& g, const RipaState& s, const CsvTable& ref) {
    const int nc = g.n_cells(0);
    const std::vector<double> h_ref = restrict_to_coarse(ref.values("h"), nc);
    const std::vector<double> u_ref = restrict_to_coarse(ref.values("u"), nc);
    const std::vector<double> th_ref = restrict_to_coarse(ref.values("theta"), nc);
    L1Errors e;
    for (int c = 0; c < nc; ++c) {
        const double u = 0.5 * (s.u[g.cell_face(c, 0, 0)] + s.u[g.cell_face(c, 0, 1)]);
        e.h += g.cell_volume() * std::abs(s.h[c] - h_ref[c]);
        e.u += g.cell_volume() * std::abs(u - u_ref[c]);
        e.theta += g.cell_volume() * std::abs(s.theta[c] - th_ref[c]);
    }
    return e;
}

void apply_dry_floor(const RunConfig& cfg, const CaseSpec& spec, CellField& h) {
    const double floor = cfg.dry_floor.value_or(spec.dry_floor);
    if (floor <= 0.0) return;
    for (int c = 0; c < h.size(); ++c) h[c] = std::max(h[c], floor);
}

void run_well_balanced(const CaseSpec& spec, const RunConfig& cfg) {
    const MacGrid g = spec.make_grid(cfg.n_cells);
    const Bathymetry bath = spec.make_bathymetry(g);
    RipaState state = spec.make_initial_state(g);
    apply_dry_floor(cfg, spec, state.h);
    const double t_end = cfg.t_end.value_or(spec.t_end);
    std::vector<double> snaps = cfg.snapshots.value_or(spec.snapshots);
    snaps.insert(snaps.begin(), 0.0);
    std::erase_if(snaps, [&](double t) { return t > t_end * (1.0 + 1e-12); });
    if (std::none_of(snaps.begin(), snaps.end(),
                     [&](double t) { return std::abs(t - t_end) <= 1e-12 * std::max(1.0, t_end); }))
        snaps.push_back(t_end);

    SchemeConfig numerics = cfg.numerics;
    numerics.variant = cfg.variant.value_or(spec.default_variant);
    Scheme scheme(g, bath, numerics);

    const HeaderMap header = base_header(spec, cfg, g, numerics.variant);
    EnergyBudgetWriter budget;
    if (cfg.write_energy) budget = EnergyBudgetWriter(cfg.out_dir + "/energy.csv", header);

    int step_count = 0;
    std::vector<std::string> violations;
    RunCallbacks cb;
    cb.on_step = [&](const RipaState& before, const RipaState& after, Scheme& sch,
                     const StepReport& rep) {
        if (cfg.write_energy || cfg.check_invariants) {
            const EnergyTotals e = energy_totals(g, after, bath.values, numerics.gravity);
            const EnergyQuadratics q =
                energy_quadratics(g, before, after, sch.artifacts(), sch.config());
            if (cfg.write_energy) budget.row(step_count, rep, e, q);
        }
        if (cfg.check_invariants) {
            for (std::string& v :
                 check_step_invariants(g, before, after, bath.values, sch.artifacts(), sch.config()))
                violations.push_back("step " + std::to_string(step_count) + ": " + std::move(v));
        }
        ++step_count;
    };
    cb.on_snapshot = [&](const RipaState& s, int idx) {
        HeaderMap h = header;
        h.emplace_back("t", format_double(s.t));
        const EnergyTotals e = energy_totals(g, s, bath.values, numerics.gravity);
        h.emplace_back("E_int", format_double(e.internal_energy));
        h.emplace_back("E_kin", format_double(e.kinetic));
        h.emplace_back("E_pot", format_double(e.potential));
        h.emplace_back("E_total", format_double(e.total()));
        h.emplace_back("energy_flux",
                       format_double(energy_flux_total(g, s, bath.values, numerics.gravity)));
        write_snapshot(snap_path(cfg.out_dir, idx), g, s, bath.values, numerics.gravity, h);
    };

    const std::vector<StepReport> reports = run(scheme, state, t_end, snaps, cb);
    write_step_log(cfg.out_dir + "/steps.csv", reports, header);

    std::vector<std::pair<std::string, L1Errors>> error_rows;
    if (spec.reference == ReferencePolicy::analytic_steady) {
        const RipaState steady = spec.make_steady_state(g);
        error_rows.emplace_back("vs_steady_t" + format_double(state.t),
                                l1_error(g, state, steady));
    } else if (spec.reference == ReferencePolicy::fine_rusanov && !cfg.reference_csv.empty()) {
        error_rows.emplace_back("vs_reference_t" + format_double(state.t),
                                compare_with_reference(g, state, read_csv(cfg.reference_csv)));
    }
    if (!error_rows.empty()) write_errors(cfg.out_dir + "/errors.csv", error_rows, header);

    if (!violations.empty()) {
        std::string msg = "invariant violations:";
        for (const std::string& v : violations) msg += "\n  " + v;
        throw SolverError(msg);
    }
}

void run_rusanov(const CaseSpec& spec, const RunConfig& cfg) {
    const MacGrid g = spec.make_grid(cfg.n_cells);
    const Bathymetry bath = spec.make_bathymetry(g);
    RusanovScheme scheme(g, bath, cfg.numerics.gravity, cfg.rusanov_cfl);
    RusanovScheme::State state =
        scheme.project(spec.h0, spec.u0x, spec.u0y, spec.theta0, spec.quadrature);
    {
        const double floor = cfg.dry_floor.value_or(spec.dry_floor);
        if (floor > 0.0)
            for (int c = 0; c < g.num_cells(); ++c)
                if (state.h[c] < floor) {
                    state.htheta[c] *= floor / state.h[c];
                    state.h[c] = floor;
                }
    }
    const double t_end = cfg.t_end.value_or(spec.t_end);
    std::vector<double> snaps = cfg.snapshots.value_or(spec.snapshots);
    snaps.insert(snaps.begin(), 0.0);
    std::erase_if(snaps, [&](double t) { return t > t_end * (1.0 + 1e-12); });
    if (std::none_of(snaps.begin(), snaps.end(),
                     [&](double t) { return std::abs(t - t_end) <= 1e-12 * std::max(1.0, t_end); }))
        snaps.push_back(t_end);
    std::sort(snaps.begin(), snaps.end());

    const HeaderMap header = base_header(spec, cfg, g, Variant::upwind);
    std::vector<StepReport> reports;
    size_t next = 0;
    const double eps = 1e-12 * std::max(1.0, t_end);
    auto fire = [&] {
        while (next < snaps.size() && snaps[next] <= state.t + eps) {
            HeaderMap h = header;
            h.emplace_back("t", format_double(state.t));
            write_snapshot(snap_path(cfg.out_dir, static_cast<int>(next)), g, state, bath.values,
                           cfg.numerics.gravity, h);
            ++next;
        }
    };
    fire();
    while (state.t < t_end - eps) {
        double cap = t_end - state.t;
        if (next < snaps.size()) cap = std::min(cap, snaps[next] - state.t);
        reports.push_back(scheme.advance(state, cap));
        if (next < snaps.size() && std::abs(state.t - snaps[next]) <= eps) state.t = snaps[next];
        fire();
    }
    write_step_log(cfg.out_dir + "/steps.csv", reports, header);

    if (spec.reference == ReferencePolicy::analytic_steady) {
        const RipaState steady = spec.make_steady_state(g);
        const RipaState now = scheme.to_cell_state(state, g);
        std::vector<std::pair<std::string, L1Errors>> rows;
        rows.emplace_back("vs_steady_t" + format_double(state.t), l1_error(g, now, steady));
        write_errors(cfg.out_dir + "/errors.csv", rows, header);
    }
}

} // namespace

void run_case(const RunConfig& cfg) {
    const CaseSpec& spec = find_case(cfg.case_name);
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.scheme == "wb")
        run_well_balanced(spec, cfg);
    else if (cfg.scheme == "rusanov")
        run_rusanov(spec, cfg);
    else
        throw std::invalid_argument("unknown scheme '" + cfg.scheme + "' (wb or rusanov)");
}

std::vector<Table1Row> table1_errors(int nx, double t_end) {
    std::vector<Table1Row> rows;
    for (const std::string name : {"lake_at_rest", "isobaric", "const_height"}) {
        const CaseSpec& spec = find_case(name);
        const MacGrid g = spec.make_grid(std::array<int, 2>{nx, 1});
        const Bathymetry bath = spec.make_bathymetry(g);
        const RipaState steady = spec.make_steady_state(g);
        Table1Row row;
        row.case_name = name;

        {
            RusanovScheme scheme(g, bath, 1.0);
            RusanovScheme::State s =
                scheme.project(spec.h0, spec.u0x, spec.u0y, spec.theta0, spec.quadrature);
            scheme.run_to(s, t_end);
            row.rusanov = l1_error(g, scheme.to_cell_state(s, g), steady);
        }
        {
            SchemeConfig numerics;
            numerics.variant = Variant::centred;
            Scheme scheme(g, bath, numerics);
            RipaState s = spec.make_initial_state(g);
            run(scheme, s, t_end, {});
            row.well_balanced = l1_error(g, s, steady);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_table1(const std::string& out_dir, const std::vector<Table1Row>& rows) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream csv(out_dir + "/table1.csv");
        csv << "case,rusanov_h,centred_h,rusanov_u,centred_u,rusanov_theta,centred_theta\n";
        for (const Table1Row& r : rows)
            csv << r.case_name << ',' << format_double(r.rusanov.h) << ','
                << format_double(r.well_balanced.h) << ',' << format_double(r.rusanov.u) << ','
                << format_double(r.well_balanced.u) << ',' << format_double(r.rusanov.theta) << ','
                << format_double(r.well_balanced.theta) << "\n";
    }
    std::ofstream txt(out_dir + "/table1.txt");
    auto emit = [&](std::ostream& os) {
        os << "L1 errors against the discrete steady state\n";
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-16s %11s %11s %11s %11s %11s %11s\n", "case",
                      "Rusanov h", "centred h", "Rusanov u", "centred u", "Rusanov th",
                      "centred th");
        os << buf;
        for (const Table1Row& r : rows) {
            std::snprintf(buf, sizeof(buf), "%-16s %11.3e %11.3e %11.3e %11.3e %11.3e %11.3e\n",
                          r.case_name.c_str(), r.rusanov.h, r.well_balanced.h, r.rusanov.u,
                          r.well_balanced.u, r.rusanov.theta, r.well_balanced.theta);
            os << buf;
        }
    };
    emit(txt);
    emit(std::cout);
}

CrossSection cross_section_y0(const MacGrid& g, const RipaState& s) {
    CrossSection cs;
    const int j = g.dim() == 2 ? g.n_cells(1) / 2 : 0;
    for (int i = 0; i < g.n_cells(0); ++i) {
        const int c = g.cell_id(i, j);
        cs.x.push_back(g.cell_center(c)[0]);
        cs.h.push_back(s.h[c]);
        cs.theta.push_back(s.theta[c]);
        cs.u.push_back(0.5 * (s.u[g.cell_face(c, 0, 0)] + s.u[g.cell_face(c, 0, 1)]));
    }
    return cs;
}

std::vector<double> restrict_to_coarse(const std::vector<double>& fine, int nc) {
    const int nf = static_cast<int>(fine.size());
    if (nc <= 0 || nf < nc)
        throw std::invalid_argument("restrict_to_coarse: cannot restrict " + std::to_string(nf) +
                                    " fine cells to " + std::to_string(nc));
    // conservative overlap-weighted average; exact block means when nf % nc == 0
    std::vector<double> coarse(nc, 0.0);
    const double ratio = static_cast<double>(nf) / nc;
    for (int c = 0; c < nc; ++c) {
        const double a = c * ratio, b = (c + 1) * ratio;
        double sum = 0.0;
        for (int k = static_cast<int>(a); k < nf && k < b; ++k) {
            const double overlap = std::min<double>(b, k + 1) - std::max<double>(a, k);
            if (overlap > 0.0) sum += overlap * fine[k];
        }
        coarse[c] = sum / ratio;
    }
    return coarse;
}

double total_variation(const std::vector<double>& v) {
    double tv = 0.0;
    for (size_t i = 1; i < v.size(); ++i) tv += std::abs(v[i] - v[i - 1]);
    return tv;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
    double sum = 0.0;
    for (size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum * dx;
}

} // namespace ripa
