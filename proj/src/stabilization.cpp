#include "ripa/stabilization.hpp"

namespace ripa {

FaceField compute_eta(const MacGrid& g, const RipaState& s, double safety) {
    FaceField eta = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        eta[f] = 2.0 * safety / dual_average(g, s.h, f);
    }
    return eta;
}

FaceField momentum_balance_raw(const MacGrid& g, const CellField& p, const CellField& b,
                               const InterfaceValues& iv, double grav) {
    FaceField out = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const auto [k, l] = g.face_cells(f);
        out[f] = (p[l] - p[k]) + grav * iv.htheta[f] * (b[l] - b[k]);
    }
    return out;
}

FaceField compute_delta_u(const MacGrid& g, const FaceField& balance_raw, const FaceField& eta,
                          double dt) {
    FaceField du = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const double c = g.face_measure(g.face_index(f).dir) / g.dual_volume(f);
        du[f] = eta[f] * dt * c * balance_raw[f];
    }
    return du;
}

CellField weighted_face_divergence(const MacGrid& g, const std::vector<double>& w,
                                   const FaceField& vel) {
    CellField out = CellField::zeros(g);
    const double inv_vol = 1.0 / g.cell_volume();
    for (int c = 0; c < g.num_cells(); ++c) {
        double sum = 0.0;
        for (int dir = 0; dir < g.dim(); ++dir) {
            const double meas = g.face_measure(dir);
            for (int side = 0; side < 2; ++side) {
                const int f = g.cell_face(c, dir, side);
                sum += meas * MacGrid::outward_sign(side) * w[f] * vel[f];
            }
        }
        out[c] = sum * inv_vol;
    }
    return out;
}

CellField compute_s(const MacGrid& g, const InterfaceValues& iv, const FaceField& u, double beta,
                    double dt) {
    CellField s = weighted_face_divergence(g, iv.htheta, u);
    for (int c = 0; c < g.num_cells(); ++c) s[c] *= beta * dt;
    return s;
}

StabilizedGradients stabilized_gradients(const MacGrid& g, const CellField& p, const CellField& b,
                                         const InterfaceValues& iv, const CellField& mass_div_u,
                                         const CellField& s_shift, double alpha, double dt) {
    StabilizedGradients out{FaceField::zeros(g), FaceField::zeros(g)};
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const auto [k, l] = g.face_cells(f);
        const double c = g.face_measure(g.face_index(f).dir) / g.dual_volume(f);
        const double lam_k = lambda_shift(alpha, iv.h[f], dt, mass_div_u[k]);
        const double lam_l = lambda_shift(alpha, iv.h[f], dt, mass_div_u[l]);
        out.p[f] = c * ((p[l] - lam_l) - (p[k] - lam_k));
        out.b[f] = c * ((b[l] - s_shift[l]) - (b[k] - s_shift[k]));
    }
    return out;
}

} // namespace ripa
