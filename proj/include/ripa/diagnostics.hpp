#pragma once

#include <string>
#include <vector>

#include "ripa/fields.hpp"
#include "ripa/scheme.hpp"

namespace ripa {

struct EnergyTotals {
    double internal_energy = 0.0; // sum |K| g h^2 theta / 2
    double kinetic = 0.0;         // sum |D_sigma| h_D u^2 / 2
    double potential = 0.0;       // sum |K| g h theta b
    double total() const { return internal_energy + kinetic + potential; }
};

EnergyTotals energy_totals(const MacGrid& g, const RipaState& s, const CellField& b, double grav);

struct ConservedTotals {
    double mass = 0.0; // sum |K| h
    double temp = 0.0; // sum |K| h theta
};

ConservedTotals conserved_totals(const MacGrid& g, const RipaState& s);

/// The three per-step energy identities, evaluated term by term from the
/// step artifacts; exact in real arithmetic for any interface choice, so the
/// residuals (relative to the local term scale, floored at 1) bound the
/// floating-point defect of the whole assembly.
struct IdentityResiduals {
    double internal_energy = 0.0;
    double kinetic = 0.0;
    double potential = 0.0;
    double max() const;
};

IdentityResiduals energy_identity_residuals(const MacGrid& g, const RipaState& before,
                                            const RipaState& after, const CellField& b,
                                            const StepArtifacts& art, const SchemeConfig& cfg);

/// The three quadratic forms of the per-step energy estimate; each is
/// non-positive whenever the verified time-step bounds hold.
struct EnergyQuadratics {
    double A = 0.0;
    double R = 0.0;
    double Q = 0.0;
};

EnergyQuadratics energy_quadratics(const MacGrid& g, const RipaState& before,
                                   const RipaState& after, const StepArtifacts& art,
                                   const SchemeConfig& cfg);

/// Signed flux remainder of the upwind-variant energy estimate:
///   (g/2) sum_K sum_sigma |sigma| ((h theta)_sigma - h_K theta_K)(h_K - h_sigma) v_{sigma,K}.
double upwind_energy_remainder(const MacGrid& g, const RipaState& before, const StepArtifacts& art,
                               double grav);

/// Largest relative defect of the dual-cell mass balance over internal faces.
double dual_mass_balance_residual(const MacGrid& g, const RipaState& before,
                                  const RipaState& after, const StepArtifacts& art);

struct L1Errors {
    double h = 0.0;
    double u = 0.0;
    double theta = 0.0;
};

/// Volume-weighted L1 distances between two states on the same grid.
L1Errors l1_error(const MacGrid& g, const RipaState& s, const RipaState& ref);

/// Componentwise differences against a stored steady state.
struct PerturbationProfile {
    CellField h;
    FaceField u;
    CellField theta;
    double max_abs_h = 0.0;
};

PerturbationProfile perturbation_profile(const MacGrid& g, const RipaState& s,
                                         const RipaState& steady);

/// Discrete counterpart of the energy flux (E + p) u, one value per snapshot,
/// reported for inspection alongside the totals.
double energy_flux_total(const MacGrid& g, const RipaState& s, const CellField& b, double grav);

/// Per-step invariant checks used by the acceptance harness and the CLI
/// --check-invariants mode: positivity, non-positive quadratics, dual mass
/// balance, and the energy inequality of the configured variant.
std::vector<std::string> check_step_invariants(const MacGrid& g, const RipaState& before,
                                               const RipaState& after, const CellField& b,
                                               const StepArtifacts& art, const SchemeConfig& cfg);

} // namespace ripa
