#include "ripa/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ripa {

void SchemeConfig::validate() const {
    if (!(gravity > 0.0)) throw std::invalid_argument("gravity must be positive");
    if (!(resolved_alpha() > 0.5 * gravity))
        throw std::invalid_argument("alpha must exceed gravity/2");
    if (!(beta > 0.5)) throw std::invalid_argument("beta must exceed 1/2");
    if (!(eta_safety > 1.0)) throw std::invalid_argument("eta_safety must exceed 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("cfl_safety must lie in (0, 1]");
    if (fixed_dt && !(*fixed_dt > 0.0)) throw std::invalid_argument("fixed_dt must be positive");
}

Scheme::Scheme(const MacGrid& g, Bathymetry bath, SchemeConfig cfg)
    : grid_(g), bath_(std::move(bath)), cfg_(cfg) {
    cfg_.validate();
    if (bath_.values.size() != grid_.num_cells())
        throw std::invalid_argument("bathymetry has " + std::to_string(bath_.values.size()) +
                                    " cells, grid has " + std::to_string(grid_.num_cells()));
}

void Scheme::fill_pressure(const RipaState& s) {
    if (art_.p.size() != grid_.num_cells()) art_.p = CellField(grid_.num_cells());
    const double half_g = 0.5 * cfg_.gravity;
    for (int c = 0; c < grid_.num_cells(); ++c)
        art_.p[c] = half_g * s.h[c] * s.h[c] * s.theta[c];
}

namespace {

std::string cell_label(const MacGrid& g, int c) {
    const CellIndex cx = g.cell_index(c);
    return "cell (" + std::to_string(cx.i) + "," + std::to_string(cx.j) + ")";
}

} // namespace

double Scheme::compute_dt(const RipaState& s, std::string* binding) {
    fill_pressure(s);
    const double grav = cfg_.gravity;
    const double alpha = cfg_.resolved_alpha();
    const double beta = cfg_.beta;

    fill_interface_theta(grid_, s, iv_pred_);
    fill_interface_htheta(grid_, s, cfg_.variant, s.u, iv_pred_);
    fill_interface_height(grid_, s, cfg_.variant, s.u, iv_pred_);
    const FaceField eta = compute_eta(grid_, s, cfg_.eta_safety);
    const FaceField raw = momentum_balance_raw(grid_, art_.p, bath_.values, iv_pred_, grav);
    assemble_primal_fluxes(grid_, iv_pred_, s.u, flux_pred_);
    assemble_dual_fluxes(grid_, flux_pred_);

    double best = std::numeric_limits<double>::infinity();
    std::string label = "unbounded";
    auto consider = [&](double bound, const char* what, int id) {
        if (bound < best) {
            best = bound;
            label = std::string(what) + " at " + std::to_string(id);
        }
    };

    const double pr = grid_.cell_perimeter() / grid_.cell_volume();
    const double inv_delta = pr; // (|dK|/|K| + |dL|/|L|) / 2 on a uniform grid
    double c_theta = 0.0;
    for (int c = 0; c < grid_.num_cells(); ++c) c_theta = std::max(c_theta, s.theta[c]);

    for (int f = 0; f < grid_.num_faces_total(); ++f) {
        if (grid_.is_boundary(f)) continue;
        const auto [k, l] = grid_.face_cells(f);
        const int dir = grid_.face_index(f).dir;
        const double mod = grid_.face_measure(dir) / grid_.dual_volume(f);

        // positivity condition
        const double eta_tilde = eta[f] * mod / pr;
        const double speed = std::abs(s.u[f]) + std::sqrt(eta_tilde * std::abs(raw[f]));
        const double mu = (std::min(s.h[k], s.h[l]) / iv_pred_.h[f]) *
                          (std::min(s.theta[k], s.theta[l]) / std::max(s.theta[k], s.theta[l]));
        if (speed > 0.0) consider(mu / (5.0 * pr * speed), "positivity face", f);

        // velocity-shift energy bound, time-n heights as predictor
        const double h_dual = dual_average(grid_, s.h, f);
        const double c_sigma = 2.0 * (1.0 + c_theta) * inv_delta * mod * iv_pred_.h[f] * iv_pred_.h[f];
        const double margin = eta[f] - 2.0 / h_dual;
        if (margin > 0.0 && c_sigma > 0.0)
            consider(std::sqrt(margin / (eta[f] * eta[f] * c_sigma)), "energy_eta face", f);

        // kinetic CFL from the dual inflow
        double inflow = 0.0;
        for (int e = 0; e < 2 * grid_.dim(); ++e)
            inflow += std::max(-flux_pred_.dual[f][e], 0.0);
        if (inflow > 0.0)
            consider(h_dual * grid_.dual_volume(f) / (4.0 * inflow), "kinetic_cfl face", f);
    }

    const double inv_vol = 1.0 / grid_.cell_volume();
    for (int c = 0; c < grid_.num_cells(); ++c) {
        double a_k = 0.0, b_k = 0.0;
        for (int dir = 0; dir < grid_.dim(); ++dir) {
            const double meas = grid_.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = grid_.cell_face(c, dir, side);
                const double w = meas * meas / grid_.dual_volume(f);
                const double h_dual = dual_average(grid_, s.h, f);
                a_k += w * iv_pred_.h[f] * iv_pred_.h[f] / h_dual;
                b_k += w * grav * iv_pred_.htheta[f] * iv_pred_.htheta[f] / h_dual;
            }
        }
        a_k *= inv_vol;
        b_k *= inv_vol;
        consider(std::sqrt((alpha - 0.5 * grav) / (4.0 * alpha * alpha * a_k)), "energy_alpha cell",
                 c);
        consider(std::sqrt((beta - 0.5) / (4.0 * beta * beta * b_k)), "energy_beta cell", c);
    }

    if (binding) *binding = label;
    return cfg_.cfl_safety * best;
}

std::optional<std::string> Scheme::verify_post(const RipaState& in, const RipaState& out,
                                               double dt) {
    const double grav = cfg_.gravity;
    const double alpha = cfg_.resolved_alpha();
    const double beta = cfg_.beta;
    const double pr = grid_.cell_perimeter() / grid_.cell_volume();
    const double inv_delta = pr;
    double c_theta = 0.0;
    for (int c = 0; c < grid_.num_cells(); ++c) c_theta = std::max(c_theta, in.theta[c]);

    for (int f = 0; f < grid_.num_faces_total(); ++f) {
        if (grid_.is_boundary(f)) continue;
        const int dir = grid_.face_index(f).dir;
        const double mod = grid_.face_measure(dir) / grid_.dual_volume(f);
        const double h_dual = dual_average(grid_, out.h, f);
        if (!(art_.eta[f] * h_dual > 2.0))
            return "eta_bound face " + std::to_string(f);
        const double c_sigma =
            2.0 * (1.0 + c_theta) * inv_delta * mod * art_.iv.h[f] * art_.iv.h[f];
        const double margin = art_.eta[f] - 2.0 / h_dual;
        if (c_sigma > 0.0 && dt * dt > margin / (art_.eta[f] * art_.eta[f] * c_sigma))
            return "energy_eta face " + std::to_string(f);
        double inflow = 0.0;
        for (int e = 0; e < 2 * grid_.dim(); ++e)
            inflow += std::max(-art_.fluxes.dual[f][e], 0.0);
        if (inflow > 0.0 && dt > h_dual * grid_.dual_volume(f) / (4.0 * inflow))
            return "kinetic_cfl face " + std::to_string(f);
    }

    const double inv_vol = 1.0 / grid_.cell_volume();
    for (int c = 0; c < grid_.num_cells(); ++c) {
        double a_k = 0.0, b_k = 0.0;
        for (int dir = 0; dir < grid_.dim(); ++dir) {
            const double meas = grid_.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = grid_.cell_face(c, dir, side);
                const double w = meas * meas / grid_.dual_volume(f);
                const double h_dual = dual_average(grid_, out.h, f);
                a_k += w * art_.iv.h[f] * art_.iv.h[f] / h_dual;
                b_k += w * grav * art_.iv.htheta[f] * art_.iv.htheta[f] / h_dual;
            }
        }
        a_k *= inv_vol;
        b_k *= inv_vol;
        if (dt * dt > (alpha - 0.5 * grav) / (4.0 * alpha * alpha * a_k))
            return "energy_alpha " + cell_label(grid_, c);
        if (dt * dt > (beta - 0.5) / (4.0 * beta * beta * b_k))
            return "energy_beta " + cell_label(grid_, c);
    }
    return std::nullopt;
}

std::optional<std::string> Scheme::attempt(const RipaState& in, double dt, RipaState& out) {
    const double grav = cfg_.gravity;
    const double alpha = cfg_.resolved_alpha();
    const int ncells = grid_.num_cells();
    const int nfaces = grid_.num_faces_total();

    fill_pressure(in);
    art_.dt = dt;
    art_.eta = compute_eta(grid_, in, cfg_.eta_safety);
    fill_interface_theta(grid_, in, art_.iv);

    if (cfg_.variant == Variant::upwind) {
        // the donor side of (h theta)_sigma depends on the shifted velocity,
        // which depends on (h theta)_sigma; resolve with one predictor pass
        // seeded by the raw velocity (the identities hold either way)
        fill_interface_htheta(grid_, in, cfg_.variant, in.u, art_.iv);
        const FaceField raw_pred =
            momentum_balance_raw(grid_, art_.p, bath_.values, art_.iv, grav);
        const FaceField du_pred = compute_delta_u(grid_, raw_pred, art_.eta, dt);
        FaceField v_pred(nfaces);
        for (int f = 0; f < nfaces; ++f)
            v_pred[f] = grid_.is_boundary(f) ? 0.0 : in.u[f] - du_pred[f];
        fill_interface_htheta(grid_, in, cfg_.variant, v_pred, art_.iv);
    } else {
        fill_interface_htheta(grid_, in, cfg_.variant, in.u, art_.iv);
    }

    art_.balance_raw = momentum_balance_raw(grid_, art_.p, bath_.values, art_.iv, grav);
    art_.delta_u = compute_delta_u(grid_, art_.balance_raw, art_.eta, dt);
    if (art_.v.size() != nfaces) art_.v = FaceField(nfaces);
    for (int f = 0; f < nfaces; ++f)
        art_.v[f] = grid_.is_boundary(f) ? 0.0 : in.u[f] - art_.delta_u[f];

    fill_interface_height(grid_, in, cfg_.variant, art_.v, art_.iv);
    assemble_primal_fluxes(grid_, art_.iv, art_.v, art_.fluxes);
    assemble_dual_fluxes(grid_, art_.fluxes);

    if (out.h.size() != ncells) out.h = CellField(ncells);
    if (out.theta.size() != ncells) out.theta = CellField(ncells);
    if (out.u.size() != nfaces) out.u = FaceField(nfaces);
    out.t = in.t + dt;

    const double dt_over_vol = dt / grid_.cell_volume();
    for (int c = 0; c < ncells; ++c) {
        double mass_out = 0.0, temp_out = 0.0;
        for (int dir = 0; dir < grid_.dim(); ++dir) {
            for (int side = 0; side < 2; ++side) {
                const int f = grid_.cell_face(c, dir, side);
                const double sgn = MacGrid::outward_sign(side);
                mass_out += sgn * art_.fluxes.mass[f];
                temp_out += sgn * art_.fluxes.temp[f];
            }
        }
        const double h_new = in.h[c] - dt_over_vol * mass_out;
        const double a_new = in.h[c] * in.theta[c] - dt_over_vol * temp_out;
        if (!(h_new > 0.0))
            return "positivity: water height lost at " + cell_label(grid_, c);
        if (!(a_new > 0.0))
            return "positivity: temperature lost at " + cell_label(grid_, c);
        out.h[c] = h_new;
        out.theta[c] = a_new / h_new;
    }

    art_.mass_div_u = weighted_face_divergence(grid_, art_.iv.h, in.u);
    art_.temp_div_u = weighted_face_divergence(grid_, art_.iv.htheta, in.u);
    art_.s_shift = art_.temp_div_u;
    for (int c = 0; c < ncells; ++c) art_.s_shift[c] *= cfg_.beta * dt;
    art_.star = stabilized_gradients(grid_, art_.p, bath_.values, art_.iv, art_.mass_div_u,
                                     art_.s_shift, alpha, dt);

    const CellField& b = bath_.values;
    const CellField& s_shift = art_.s_shift;
    std::array<DualEdge, 4> edges;
    for (int f = 0; f < nfaces; ++f) {
        if (grid_.is_boundary(f)) {
            out.u[f] = 0.0;
            continue;
        }
        const auto [k, l] = grid_.face_cells(f);
        const int dir = grid_.face_index(f).dir;
        const double dvol = grid_.dual_volume(f);
        const double mod = grid_.face_measure(dir) / dvol;
        const double h_dual0 = dual_average(grid_, in.h, f);
        const double h_dual1 = dual_average(grid_, out.h, f);

        const int ne = grid_.dual_edges_of(f, edges);
        double conv = 0.0;
        for (int e = 0; e < ne; ++e) {
            const double flux = art_.fluxes.dual[f][e];
            // edges on the domain boundary carry zero flux, so the donor
            // branch below never dereferences a missing neighbour
            const double u_up = flux >= 0.0 ? in.u[f] : in.u[edges[e].neighbor_face];
            conv += flux * u_up;
        }

        const double lam_k = lambda_shift(alpha, art_.iv.h[f], dt, art_.mass_div_u[k]);
        const double lam_l = lambda_shift(alpha, art_.iv.h[f], dt, art_.mass_div_u[l]);
        const double star_raw = ((art_.p[l] - lam_l) - (art_.p[k] - lam_k)) +
                                grav * art_.iv.htheta[f] * ((b[l] - s_shift[l]) - (b[k] - s_shift[k]));
        const double momentum = h_dual0 * in.u[f] - dt * (conv / dvol) - dt * mod * star_raw;
        out.u[f] = momentum / h_dual1;
    }

    return verify_post(in, out, dt);
}

RipaState Scheme::step_once(const RipaState& s, double dt, std::string* post_check_label) {
    RipaState out;
    auto fail = attempt(s, dt, out);
    if (fail) {
        if (fail->rfind("positivity", 0) == 0) throw SolverError(*fail);
        if (post_check_label)
            *post_check_label = *fail;
        else
            throw SolverError("post-step check failed: " + *fail);
    } else if (post_check_label) {
        post_check_label->clear();
    }
    return out;
}

StepReport Scheme::advance(RipaState& s, double dt_cap) {
    StepReport rep;
    double dt;
    if (cfg_.fixed_dt) {
        dt = *cfg_.fixed_dt;
        rep.binding = "fixed_dt";
    } else {
        dt = compute_dt(s, &rep.binding);
    }
    if (dt_floor_ > 0.0 && dt <= dt_floor_)
        throw SolverError("time step underflow (dt=" + std::to_string(dt) + ", " + rep.binding +
                          ")");
    if (dt > dt_cap) {
        dt = dt_cap;
        rep.binding = "time_target";
    }

    for (;;) {
        auto fail = attempt(s, dt, out_buf_);
        if (!fail) break;
        if (cfg_.fixed_dt) {
            if (fail->rfind("positivity", 0) == 0) throw SolverError(*fail);
            rep.violation = *fail; // recorded; fixed-dt runs do not retry
            break;
        }
        if (++rep.retries > cfg_.max_retries)
            throw SolverError("retries exhausted at t=" + std::to_string(s.t) + ": " + *fail);
        dt *= 0.5;
        if (dt_floor_ > 0.0 && dt <= dt_floor_)
            throw SolverError("time step underflow during retry: " + *fail);
    }

    std::swap(s, out_buf_);
    rep.t = s.t;
    rep.dt = dt;
    rep.min_h = *std::min_element(s.h.data.begin(), s.h.data.end());
    rep.min_theta = *std::min_element(s.theta.data.begin(), s.theta.data.end());
    return rep;
}

std::vector<StepReport> run(Scheme& scheme, RipaState& state, double t_end,
                            const std::vector<double>& snapshots, const RunCallbacks& cb) {
    std::vector<StepReport> reports;
    scheme.set_dt_floor(1e-14 * std::max(std::abs(t_end), 1e-30));
    std::vector<double> snaps = snapshots;
    std::sort(snaps.begin(), snaps.end());
    const double eps = 1e-12 * std::max(1.0, std::abs(t_end));
    size_t next = 0;
    auto fire = [&] {
        while (next < snaps.size() && snaps[next] <= state.t + eps) {
            if (cb.on_snapshot) cb.on_snapshot(state, static_cast<int>(next));
            ++next;
        }
    };
    fire();
    RipaState before;
    while (state.t < t_end - eps) {
        double cap = t_end - state.t;
        if (next < snaps.size() && snaps[next] > state.t) cap = std::min(cap, snaps[next] - state.t);
        if (cb.on_step) before = state;
        StepReport rep = scheme.advance(state, cap);
        if (next < snaps.size() && std::abs(state.t - snaps[next]) <= eps) state.t = snaps[next];
        rep.t = state.t;
        if (cb.on_step) cb.on_step(before, state, scheme, rep);
        reports.push_back(std::move(rep));
        fire();
    }
    return reports;
}

} // namespace ripa
