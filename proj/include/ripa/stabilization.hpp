#pragma once

#include "ripa/fields.hpp"
#include "ripa/fluxes.hpp"
#include "ripa/mac_grid.hpp"
#include "ripa/operators.hpp"

namespace ripa {

/// eta_sigma = 2 * safety / h^n_{D_sigma} on internal faces. The post-step
/// verifier confirms eta_sigma > 2 / h^{n+1}_{D_sigma}; under the positivity
/// time step the dual height cannot drop by more than a fifth per step, so
/// any safety factor in (1, 1.25] holds automatically and 1.5 leaves margin.
FaceField compute_eta(const MacGrid& g, const RipaState& s, double safety);

/// Undivided hydrostatic defect per internal face:
///   (p_L - p_K) + grav (h theta)_sigma (b_L - b_K).
/// The face gradient of the momentum balance is this times |sigma|/|D_sigma|.
/// Computing the two differences before applying the geometric factor keeps
/// the value exactly zero on discrete steady data.
FaceField momentum_balance_raw(const MacGrid& g, const CellField& p, const CellField& b,
                               const InterfaceValues& iv, double grav);

/// delta u_sigma = eta_sigma dt { (grad p)_sigma + grav (h theta)_sigma (grad b)_sigma }.
FaceField compute_delta_u(const MacGrid& g, const FaceField& balance_raw, const FaceField& eta,
                          double dt);

/// (1/|K|) sum over E(K) of |sigma| w_sigma u_{sigma,K}; w is a per-face
/// weight (h_sigma or (h theta)_sigma).
CellField weighted_face_divergence(const MacGrid& g, const std::vector<double>& w,
                                   const FaceField& vel);

/// S_K = beta dt (1/|K|) sum |sigma| (h theta)_sigma u_{sigma,K}  (raw u).
CellField compute_s(const MacGrid& g, const InterfaceValues& iv, const FaceField& u, double beta,
                    double dt);

/// Lambda_{K,sigma} = alpha h_sigma dt (1/|K|) sum |sigma'| h_sigma' u_{sigma',K}.
/// Only the face-independent divergence is stored; the h_sigma prefactor is
/// applied at the point of use.
inline double lambda_shift(double alpha, double h_sigma, double dt, double mass_div_K) {
    return alpha * h_sigma * dt * mass_div_K;
}

struct StabilizedGradients {
    FaceField p; // (grad p)*_sigma
    FaceField b; // (grad b)*_sigma
};

/// Stabilised gradients: (grad p)*_sigma uses p_K - Lambda_{K,sigma} and
/// (grad b)*_sigma uses b_K - S_K. With Lambda = S = 0 they reduce to the
/// plain gradients.
StabilizedGradients stabilized_gradients(const MacGrid& g, const CellField& p, const CellField& b,
                                         const InterfaceValues& iv, const CellField& mass_div_u,
                                         const CellField& s_shift, double alpha, double dt);

} // namespace ripa
