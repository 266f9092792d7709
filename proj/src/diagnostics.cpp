#include "ripa/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ripa/operators.hpp"

namespace ripa {

namespace {

double rel_residual(double residual, double scale) {
    return std::abs(residual) / std::max(scale, 1.0);
}

} // namespace

double IdentityResiduals::max() const {
    return std::max({internal_energy, kinetic, potential});
}

EnergyTotals energy_totals(const MacGrid& g, const RipaState& s, const CellField& b, double grav) {
    EnergyTotals e;
    const double vol = g.cell_volume();
    for (int c = 0; c < g.num_cells(); ++c) {
        e.internal_energy += vol * 0.5 * grav * s.h[c] * s.h[c] * s.theta[c];
        e.potential += vol * grav * s.h[c] * s.theta[c] * b[c];
    }
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        e.kinetic += g.dual_volume(f) * 0.5 * dual_average(g, s.h, f) * s.u[f] * s.u[f];
    }
    return e;
}

ConservedTotals conserved_totals(const MacGrid& g, const RipaState& s) {
    ConservedTotals t;
    const double vol = g.cell_volume();
    for (int c = 0; c < g.num_cells(); ++c) {
        t.mass += vol * s.h[c];
        t.temp += vol * s.h[c] * s.theta[c];
    }
    return t;
}

IdentityResiduals energy_identity_residuals(const MacGrid& g, const RipaState& before,
                                            const RipaState& after, const CellField& b,
                                            const StepArtifacts& art, const SchemeConfig& cfg) {
    IdentityResiduals out;
    const double grav = cfg.gravity;
    const double alpha = cfg.resolved_alpha();
    const double dt = art.dt;
    const double vol = g.cell_volume();

    const FaceField grad_p = gradient(art.p, g);
    const FaceField grad_b = gradient(b, g);
    const FaceField grad_s = gradient(art.s_shift, g);

    // internal and potential energy identities, cell by cell
    for (int c = 0; c < g.num_cells(); ++c) {
        const double h0 = before.h[c], th0 = before.theta[c];
        const double h1 = after.h[c], th1 = after.theta[c];
        const double l1 = (vol / dt) * (0.5 * grav * h1 * h1 * th1 - 0.5 * grav * h0 * h0 * th0);
        double l2 = 0.0, l3 = 0.0, flux_rem = 0.0, pot_flux = 0.0;
        for (int dir = 0; dir < g.dim(); ++dir) {
            const double meas = g.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = g.cell_face(c, dir, side);
                if (g.is_boundary(f)) continue;
                const double v_out = MacGrid::outward_sign(side) * art.v[f];
                l2 += 0.5 * grav * meas * art.iv.htheta[f] * art.iv.h[f] * v_out;
                l3 += 0.5 * grav * meas * v_out * h0 * h0 * th0;
                flux_rem += 0.5 * grav * meas * (art.iv.htheta[f] - h0 * th0) *
                            (art.iv.h[f] - h0) * v_out;
                pot_flux += grav * meas * art.iv.htheta[f] * v_out * b[c];
            }
        }
        const double time_rem = 0.5 * grav * (vol / dt) * (h1 * th1 - h0 * th0) * (h1 - h0);
        const double res_int = l1 + l2 + l3 - time_rem - flux_rem;
        const double scale_int =
            std::max({std::abs(l1), std::abs(l2), std::abs(l3), std::abs(time_rem),
                      std::abs(flux_rem)});
        out.internal_energy = std::max(out.internal_energy, rel_residual(res_int, scale_int));

        const double w1 = (vol / dt) * grav * b[c] * (h1 * th1 - h0 * th0);
        const double res_pot = w1 + pot_flux;
        out.potential = std::max(out.potential,
                                 rel_residual(res_pot, std::max(std::abs(w1), std::abs(pot_flux))));
    }

    // kinetic energy identity, face by face
    std::array<DualEdge, 4> edges;
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const auto [k, l] = g.face_cells(f);
        const int dir = g.face_index(f).dir;
        const double dvol = g.dual_volume(f);
        const double meas = g.face_measure(dir);
        const double hd0 = dual_average(g, before.h, f);
        const double hd1 = dual_average(g, after.h, f);
        const double u0 = before.u[f], u1 = after.u[f];

        const double t1 = (dvol / (2.0 * dt)) * (hd1 * u1 * u1 - hd0 * u0 * u0);
        double t2 = 0.0, rem_flux = 0.0;
        const int ne = g.dual_edges_of(f, edges);
        for (int e = 0; e < ne; ++e) {
            const double flux = art.fluxes.dual[f][e];
            const double u_other = edges[e].neighbor_face >= 0 ? before.u[edges[e].neighbor_face]
                                                               : 0.0;
            const double u_up = flux >= 0.0 ? u0 : u_other;
            t2 += flux * 0.5 * u_up * u_up;
            const double f_minus = std::min(flux, 0.0);
            rem_flux += 0.5 * f_minus * (u_other - u0) * (u_other - u0);
        }
        const double t3 = dvol * art.v[f] * grad_p[f];
        const double t4 = dvol * grav * art.iv.htheta[f] * art.v[f] * grad_b[f];

        const double rhs1 =
            -dvol * art.delta_u[f] * (grad_p[f] + grav * art.iv.htheta[f] * grad_b[f]);
        const double lam_k = lambda_shift(alpha, art.iv.h[f], dt, art.mass_div_u[k]);
        const double lam_l = lambda_shift(alpha, art.iv.h[f], dt, art.mass_div_u[l]);
        const double rhs2 = meas * u0 * (lam_l - lam_k);
        const double rhs3 = grav * dvol * art.iv.htheta[f] * u0 * grad_s[f];
        const double rhs4 = (dvol / (2.0 * dt)) * hd1 * (u1 - u0) * (u1 - u0) + rem_flux;

        const double res = t1 + t2 + t3 + t4 - rhs1 - rhs2 - rhs3 - rhs4;
        const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4),
                                       std::abs(rhs1), std::abs(rhs2), std::abs(rhs3),
                                       std::abs(rhs4)});
        out.kinetic = std::max(out.kinetic, rel_residual(res, scale));
    }
    return out;
}

EnergyQuadratics energy_quadratics(const MacGrid& g, const RipaState& before,
                                   const RipaState& after, const StepArtifacts& art,
                                   const SchemeConfig& cfg) {
    EnergyQuadratics q;
    const double grav = cfg.gravity;
    const double alpha = cfg.resolved_alpha();
    const double beta = cfg.beta;
    const double dt = art.dt;
    const double vol = g.cell_volume();
    const double inv_delta = g.cell_perimeter() / g.cell_volume();

    double c_theta = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) c_theta = std::max(c_theta, before.theta[c]);

    for (int c = 0; c < g.num_cells(); ++c) {
        double a_k = 0.0, b_k = 0.0;
        for (int dir = 0; dir < g.dim(); ++dir) {
            const double meas = g.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = g.cell_face(c, dir, side);
                const double w = meas * meas / g.dual_volume(f);
                const double hd1 = dual_average(g, after.h, f);
                a_k += w * art.iv.h[f] * art.iv.h[f] / hd1;
                b_k += w * grav * art.iv.htheta[f] * art.iv.htheta[f] / hd1;
            }
        }
        a_k /= vol;
        b_k /= vol;
        const double md = art.mass_div_u[c];
        const double td = art.temp_div_u[c];
        q.A += dt * vol * (4.0 * a_k * dt * dt * alpha * alpha - alpha + 0.5 * grav) * md * md;
        q.Q += grav * dt * vol * (4.0 * b_k * dt * dt * beta * beta - beta + 0.5) * td * td;
    }

    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const int dir = g.face_index(f).dir;
        const double dvol = g.dual_volume(f);
        const double mod = g.face_measure(dir) / dvol;
        const double hd1 = dual_average(g, after.h, f);
        const double c_sigma = 2.0 * (1.0 + c_theta) * inv_delta * mod * art.iv.h[f] * art.iv.h[f];
        const double eta = art.eta[f];
        const double balance = mod * art.balance_raw[f];
        q.R += dt * dvol * (c_sigma * dt * dt * eta * eta - eta + 2.0 / hd1) * balance * balance;
    }
    return q;
}

double upwind_energy_remainder(const MacGrid& g, const RipaState& before, const StepArtifacts& art,
                               double grav) {
    double rem = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) {
        const double a0 = before.h[c] * before.theta[c];
        for (int dir = 0; dir < g.dim(); ++dir) {
            const double meas = g.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = g.cell_face(c, dir, side);
                if (g.is_boundary(f)) continue;
                const double v_out = MacGrid::outward_sign(side) * art.v[f];
                rem += 0.5 * grav * meas * (art.iv.htheta[f] - a0) * (before.h[c] - art.iv.h[f]) *
                       v_out;
            }
        }
    }
    return rem;
}

double dual_mass_balance_residual(const MacGrid& g, const RipaState& before,
                                  const RipaState& after, const StepArtifacts& art) {
    double worst = 0.0;
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const double dvol = g.dual_volume(f);
        const double hd0 = dual_average(g, before.h, f);
        const double hd1 = dual_average(g, after.h, f);
        const double rate = dvol * (hd1 - hd0) / art.dt;
        double outflow = 0.0;
        for (int e = 0; e < 2 * g.dim(); ++e) outflow += art.fluxes.dual[f][e];
        const double scale = std::max({std::abs(rate), std::abs(outflow),
                                       dvol * std::max(hd0, hd1) / art.dt});
        worst = std::max(worst, rel_residual(rate + outflow, scale));
    }
    return worst;
}

L1Errors l1_error(const MacGrid& g, const RipaState& s, const RipaState& ref) {
    if (s.h.size() != ref.h.size() || s.u.size() != ref.u.size())
        throw std::invalid_argument("l1_error: states live on different grids");
    L1Errors e;
    const double vol = g.cell_volume();
    for (int c = 0; c < g.num_cells(); ++c) {
        e.h += vol * std::abs(s.h[c] - ref.h[c]);
        e.theta += vol * std::abs(s.theta[c] - ref.theta[c]);
    }
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        e.u += g.dual_volume(f) * std::abs(s.u[f] - ref.u[f]);
    }
    return e;
}

PerturbationProfile perturbation_profile(const MacGrid& g, const RipaState& s,
                                         const RipaState& steady) {
    PerturbationProfile p;
    p.h = CellField(g.num_cells());
    p.theta = CellField(g.num_cells());
    p.u = FaceField(g.num_faces_total());
    for (int c = 0; c < g.num_cells(); ++c) {
        p.h[c] = s.h[c] - steady.h[c];
        p.theta[c] = s.theta[c] - steady.theta[c];
        p.max_abs_h = std::max(p.max_abs_h, std::abs(p.h[c]));
    }
    for (int f = 0; f < g.num_faces_total(); ++f) p.u[f] = s.u[f] - steady.u[f];
    return p;
}

double energy_flux_total(const MacGrid& g, const RipaState& s, const CellField& b, double grav) {
    // dual-averaged (E + p) u summed over internal faces; inspection only
    CellField e_cell(g.num_cells());
    CellField p_cell(g.num_cells());
    for (int c = 0; c < g.num_cells(); ++c) {
        double usq = 0.0;
        int nf = 0;
        for (int dir = 0; dir < g.dim(); ++dir)
            for (int side = 0; side < 2; ++side) {
                const double u = s.u[g.cell_face(c, dir, side)];
                usq += u * u;
                ++nf;
            }
        usq /= nf;
        p_cell[c] = 0.5 * grav * s.h[c] * s.h[c] * s.theta[c];
        e_cell[c] = p_cell[c] + grav * s.h[c] * s.theta[c] * b[c] + 0.5 * s.h[c] * usq;
    }
    double total = 0.0;
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const int dir = g.face_index(f).dir;
        total += g.face_measure(dir) *
                 (dual_average(g, e_cell, f) + dual_average(g, p_cell, f)) * s.u[f];
    }
    return total;
}

std::vector<std::string> check_step_invariants(const MacGrid& g, const RipaState& before,
                                               const RipaState& after, const CellField& b,
                                               const StepArtifacts& art, const SchemeConfig& cfg) {
    std::vector<std::string> bad;
    const double min_h = *std::min_element(after.h.data.begin(), after.h.data.end());
    const double min_th = *std::min_element(after.theta.data.begin(), after.theta.data.end());
    if (!(min_h > 0.0)) bad.push_back("positivity: min h = " + std::to_string(min_h));
    if (!(min_th > 0.0)) bad.push_back("positivity: min theta = " + std::to_string(min_th));

    const EnergyQuadratics q = energy_quadratics(g, before, after, art, cfg);
    if (q.A > 0.0) bad.push_back("quadratic A positive: " + std::to_string(q.A));
    if (q.R > 0.0) bad.push_back("quadratic R positive: " + std::to_string(q.R));
    if (q.Q > 0.0) bad.push_back("quadratic Q positive: " + std::to_string(q.Q));

    const double dual_res = dual_mass_balance_residual(g, before, after, art);
    if (dual_res > 1e-12)
        bad.push_back("dual mass balance residual " + std::to_string(dual_res));

    const EnergyTotals e0 = energy_totals(g, before, b, cfg.gravity);
    const EnergyTotals e1 = energy_totals(g, after, b, cfg.gravity);
    const double tol = 1e-12 * std::max(1.0, std::abs(e0.total()));
    if (cfg.variant == Variant::centred) {
        if (e1.total() - e0.total() > tol)
            bad.push_back("total energy increased by " + std::to_string(e1.total() - e0.total()));
    } else {
        const double rem = upwind_energy_remainder(g, before, art, cfg.gravity);
        if (e1.total() - e0.total() + art.dt * rem > tol)
            bad.push_back("upwind energy estimate violated: dE=" +
                          std::to_string(e1.total() - e0.total()) +
                          " remainder=" + std::to_string(art.dt * rem));
    }
    return bad;
}

} // namespace ripa
