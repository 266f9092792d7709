#include "ripa/rusanov.hpp"

#include <algorithm>
#include <cmath>

namespace ripa {

namespace {

ConsVars physical_flux(const ConsVars& s, double grav, int dir) {
    const double u = s.hu / s.h;
    const double v = s.hv / s.h;
    const double un = dir == 0 ? u : v;
    const double p = 0.5 * grav * s.h * s.h * (s.htheta / s.h);
    ConsVars f;
    f.h = s.h * un;
    f.hu = s.hu * un + (dir == 0 ? p : 0.0);
    f.hv = s.hv * un + (dir == 1 ? p : 0.0);
    f.htheta = s.htheta * un;
    return f;
}

double wave_speed(const ConsVars& s, double grav, int dir) {
    const double un = (dir == 0 ? s.hu : s.hv) / s.h;
    return std::abs(un) + std::sqrt(grav * s.htheta); // g h theta = g * (htheta)
}

ConsVars mirror(const ConsVars& s, int dir) {
    ConsVars m = s;
    if (dir == 0)
        m.hu = -m.hu;
    else
        m.hv = -m.hv;
    return m;
}

} // namespace

ConsVars rusanov_flux(const ConsVars& left, const ConsVars& right, double grav, int dir) {
    const ConsVars fl = physical_flux(left, grav, dir);
    const ConsVars fr = physical_flux(right, grav, dir);
    const double lam = std::max(wave_speed(left, grav, dir), wave_speed(right, grav, dir));
    ConsVars f;
    f.h = 0.5 * (fl.h + fr.h) - 0.5 * lam * (right.h - left.h);
    f.hu = 0.5 * (fl.hu + fr.hu) - 0.5 * lam * (right.hu - left.hu);
    f.hv = 0.5 * (fl.hv + fr.hv) - 0.5 * lam * (right.hv - left.hv);
    f.htheta = 0.5 * (fl.htheta + fr.htheta) - 0.5 * lam * (right.htheta - left.htheta);
    return f;
}

RusanovScheme::RusanovScheme(const MacGrid& g, Bathymetry bath, double grav, double cfl_safety)
    : grid_(g), bath_(std::move(bath)), grav_(grav), cfl_(cfl_safety) {
    if (bath_.values.size() != grid_.num_cells())
        throw std::invalid_argument("bathymetry size mismatch");
}

RusanovScheme::State RusanovScheme::project(const ScalarFn& h0, const ScalarFn& u0x,
                                            const ScalarFn& u0y, const ScalarFn& theta0,
                                            int quad_order) const {
    State s;
    s.h = project_to_cells(grid_, h0, quad_order);
    const CellField th = project_to_cells(grid_, theta0, quad_order);
    const CellField ux = project_to_cells(grid_, u0x, quad_order);
    const CellField uy = project_to_cells(grid_, u0y, quad_order);
    s.hu = CellField(grid_.num_cells());
    s.hv = CellField(grid_.num_cells());
    s.htheta = CellField(grid_.num_cells());
    for (int c = 0; c < grid_.num_cells(); ++c) {
        s.hu[c] = s.h[c] * ux[c];
        s.hv[c] = s.h[c] * uy[c];
        s.htheta[c] = s.h[c] * th[c];
    }
    return s;
}

ConsVars RusanovScheme::cell(const State& s, int c) const {
    return {s.h[c], s.hu[c], s.hv[c], s.htheta[c]};
}

double RusanovScheme::compute_dt(const State& s) const {
    double rate = 0.0;
    for (int dir = 0; dir < grid_.dim(); ++dir) {
        double lam = 0.0;
        for (int c = 0; c < grid_.num_cells(); ++c)
            lam = std::max(lam, wave_speed(cell(s, c), grav_, dir));
        rate += lam / grid_.dx(dir);
    }
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return cfl_ / rate;
}

void RusanovScheme::step(State& s, double dt) const {
    const int nx = grid_.n_cells(0);
    const int ny = grid_.dim() == 2 ? grid_.n_cells(1) : 1;
    State next = s;
    next.t = s.t + dt;

    auto state_at = [&](int i, int j, int dir) {
        // mirrored wall states outside the domain
        if (i < 0) return mirror(cell(s, grid_.cell_id(0, j)), dir);
        if (i >= nx) return mirror(cell(s, grid_.cell_id(nx - 1, j)), dir);
        if (j < 0) return mirror(cell(s, grid_.cell_id(i, 0)), dir);
        if (j >= ny) return mirror(cell(s, grid_.cell_id(i, ny - 1)), dir);
        return cell(s, grid_.cell_id(i, j));
    };
    auto b_at = [&](int i, int j) {
        i = std::clamp(i, 0, nx - 1);
        j = std::clamp(j, 0, ny - 1);
        return bath_.values[grid_.cell_id(i, j)];
    };

    for (int dir = 0; dir < grid_.dim(); ++dir) {
        const double r = dt / grid_.dx(dir);
        const int di = dir == 0 ? 1 : 0;
        const int dj = dir == 0 ? 0 : 1;
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const ConsVars c0 = state_at(i, j, dir);
                const ConsVars fm = rusanov_flux(state_at(i - di, j - dj, dir), c0, grav_, dir);
                const ConsVars fp = rusanov_flux(c0, state_at(i + di, j + dj, dir), grav_, dir);
                const int c = grid_.cell_id(i, j);
                next.h[c] -= r * (fp.h - fm.h);
                next.hu[c] -= r * (fp.hu - fm.hu);
                next.hv[c] -= r * (fp.hv - fm.hv);
                next.htheta[c] -= r * (fp.htheta - fm.htheta);
                // one-sided topography difference, clamped beyond the walls
                const double db = (b_at(i, j) - b_at(i - di, j - dj)) / grid_.dx(dir);
                const double src = -grav_ * s.htheta[c] * db; // g h theta grad b
                if (dir == 0)
                    next.hu[c] += dt * src;
                else
                    next.hv[c] += dt * src;
            }
        }
    }

    for (int c = 0; c < grid_.num_cells(); ++c) {
        if (!(next.h[c] > 0.0) || !(next.htheta[c] > 0.0)) {
            const CellIndex cx = grid_.cell_index(c);
            throw SolverError("rusanov: positivity lost at cell (" + std::to_string(cx.i) + "," +
                              std::to_string(cx.j) + ")");
        }
    }
    s = std::move(next);
}

StepReport RusanovScheme::advance(State& s, double dt_cap) const {
    StepReport rep;
    double dt = std::min(compute_dt(s), dt_cap);
    rep.binding = dt == dt_cap ? "time_target" : "wave_speed";
    for (;;) {
        try {
            State trial = s;
            step(trial, dt);
            s = std::move(trial);
            break;
        } catch (const SolverError&) {
            if (++rep.retries > 60) throw;
            dt *= 0.5;
        }
    }
    rep.t = s.t;
    rep.dt = dt;
    rep.min_h = *std::min_element(s.h.data.begin(), s.h.data.end());
    double min_th = std::numeric_limits<double>::infinity();
    for (int c = 0; c < grid_.num_cells(); ++c)
        min_th = std::min(min_th, s.htheta[c] / s.h[c]);
    rep.min_theta = min_th;
    return rep;
}

void RusanovScheme::run_to(State& s, double t_end) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
    while (s.t < t_end - eps) advance(s, t_end - s.t);
    s.t = t_end;
}

RipaState RusanovScheme::to_cell_state(const State& s, const MacGrid& g) const {
    RipaState out;
    out.h = s.h;
    out.theta = CellField(g.num_cells());
    for (int c = 0; c < g.num_cells(); ++c) out.theta[c] = s.htheta[c] / s.h[c];
    out.u = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const auto [k, l] = g.face_cells(f);
        const int dir = g.face_index(f).dir;
        const double uk = (dir == 0 ? s.hu[k] : s.hv[k]) / s.h[k];
        const double ul = (dir == 0 ? s.hu[l] : s.hv[l]) / s.h[l];
        out.u[f] = 0.5 * (uk + ul);
    }
    out.t = s.t;
    return out;
}

} // namespace ripa
