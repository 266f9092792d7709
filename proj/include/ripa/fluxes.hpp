#pragma once

#include <array>
#include <vector>

#include "ripa/fields.hpp"
#include "ripa/mac_grid.hpp"

namespace ripa {

enum class Variant { centred, upwind };

/// (b - a) / (ln b - ln a) for positive a != b, a for a == b. Switches to a
/// series in (b-a)/(b+a) below a relative gap of 1e-4 to avoid cancellation.
double log_mean(double a, double b);

/// Interface water height: arithmetic mean (centred) or donor value selected
/// by the sign of v_{sigma,K} (upwind, ties to the K side).
double interface_height(double h_K, double h_L, double v_K, Variant variant);

/// Interface value of h*theta. Equal heights use the logarithmic temperature
/// mean for both variants; the upwind variant uses the arithmetic height mean
/// for equal temperatures and otherwise the donor-cell product. Equality
/// branches compare bitwise so that discrete steady data stays on them.
double interface_htheta(double h_K, double h_L, double th_K, double th_L, double v_K,
                        Variant variant);

/// Interface values per face. Boundary faces carry the host-cell values so
/// that cell-wise sums over E(K) are well defined there.
struct InterfaceValues {
    std::vector<double> h;
    std::vector<double> htheta;
    std::vector<double> theta; // logarithmic mean
};

void fill_interface_theta(const MacGrid& g, const RipaState& s, InterfaceValues& iv);
/// `wind` supplies the sign that picks the donor side (ignored for centred).
void fill_interface_htheta(const MacGrid& g, const RipaState& s, Variant variant,
                           const FaceField& wind, InterfaceValues& iv);
void fill_interface_height(const MacGrid& g, const RipaState& s, Variant variant,
                           const FaceField& wind, InterfaceValues& iv);

/// Convective fluxes. `mass` and `temp` hold the +e_dir oriented face fluxes
/// |sigma| h_sigma v_sigma and |sigma| (h theta)_sigma v_sigma; the flux out
/// of cell K through sigma is the face value times the outward sign. `dual`
/// holds, per internal face, the outward mass fluxes through the edges of
/// D_sigma in the order produced by MacGrid::dual_edges_of.
struct FluxSet {
    FaceField mass;
    FaceField temp;
    std::vector<std::array<double, 4>> dual;
};

void assemble_primal_fluxes(const MacGrid& g, const InterfaceValues& iv, const FaceField& v,
                            FluxSet& out);
/// Builds the dual fluxes from the primal mass fluxes as half-sums over the
/// host cells' faces; makes the dual-cell mass balance hold exactly.
void assemble_dual_fluxes(const MacGrid& g, FluxSet& fluxes);

/// u_sigma when the outward dual flux is >= 0, else the neighbour value.
inline double upwind_dual_velocity(double u_here, double u_there, double dual_flux) {
    return dual_flux >= 0.0 ? u_here : u_there;
}

} // namespace ripa
