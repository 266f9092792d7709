#include "ripa/fluxes.hpp"

#include <cmath>
#include <stdexcept>

namespace ripa {

double log_mean(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("log_mean: arguments must be positive");
    if (a == b) return a;
    const double z = (b - a) / (b + a);
    const double z2 = z * z;
    if (z2 < 1e-8) {
        // ln(b/a) = 2z (1 + z^2/3 + z^4/5 + ...), so the mean is
        // (a+b)/2 divided by the bracket; three terms reach round-off here.
        return 0.5 * (a + b) / (1.0 + z2 * (1.0 / 3.0 + z2 * (1.0 / 5.0 + z2 / 7.0)));
    }
    return (b - a) / std::log(b / a);
}

double interface_height(double h_K, double h_L, double v_K, Variant variant) {
    if (variant == Variant::centred) return 0.5 * (h_K + h_L);
    return v_K >= 0.0 ? h_K : h_L;
}

double interface_htheta(double h_K, double h_L, double th_K, double th_L, double v_K,
                        Variant variant) {
    if (h_K == h_L) return h_K * log_mean(th_K, th_L);
    if (variant == Variant::centred) return 0.5 * (h_K * th_K + h_L * th_L);
    if (th_K == th_L) return 0.5 * (h_K + h_L) * th_K;
    return v_K >= 0.0 ? h_K * th_K : h_L * th_L;
}

namespace {

void ensure_sizes(const MacGrid& g, InterfaceValues& iv) {
    const size_t n = static_cast<size_t>(g.num_faces_total());
    if (iv.h.size() != n) iv.h.assign(n, 0.0);
    if (iv.htheta.size() != n) iv.htheta.assign(n, 0.0);
    if (iv.theta.size() != n) iv.theta.assign(n, 0.0);
}

} // namespace

void fill_interface_theta(const MacGrid& g, const RipaState& s, InterfaceValues& iv) {
    ensure_sizes(g, iv);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        const auto [k, l] = g.face_cells(f);
        if (k < 0 || l < 0) {
            iv.theta[f] = s.theta[k < 0 ? l : k];
            continue;
        }
        iv.theta[f] = log_mean(s.theta[k], s.theta[l]);
    }
}

void fill_interface_htheta(const MacGrid& g, const RipaState& s, Variant variant,
                           const FaceField& wind, InterfaceValues& iv) {
    ensure_sizes(g, iv);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        const auto [k, l] = g.face_cells(f);
        if (k < 0 || l < 0) {
            const int host = k < 0 ? l : k;
            iv.htheta[f] = s.h[host] * s.theta[host];
            continue;
        }
        iv.htheta[f] = interface_htheta(s.h[k], s.h[l], s.theta[k], s.theta[l], wind[f], variant);
    }
}

void fill_interface_height(const MacGrid& g, const RipaState& s, Variant variant,
                           const FaceField& wind, InterfaceValues& iv) {
    ensure_sizes(g, iv);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        const auto [k, l] = g.face_cells(f);
        if (k < 0 || l < 0) {
            iv.h[f] = s.h[k < 0 ? l : k];
            continue;
        }
        iv.h[f] = interface_height(s.h[k], s.h[l], wind[f], variant);
    }
}

void assemble_primal_fluxes(const MacGrid& g, const InterfaceValues& iv, const FaceField& v,
                            FluxSet& out) {
    const int n = g.num_faces_total();
    if (out.mass.size() != n) out.mass = FaceField(n);
    if (out.temp.size() != n) out.temp = FaceField(n);
    for (int f = 0; f < n; ++f) {
        if (g.is_boundary(f)) {
            out.mass[f] = 0.0;
            out.temp[f] = 0.0;
            continue;
        }
        const double meas = g.face_measure(g.face_index(f).dir);
        out.mass[f] = meas * iv.h[f] * v[f];
        out.temp[f] = meas * iv.htheta[f] * v[f];
    }
}

void assemble_dual_fluxes(const MacGrid& g, FluxSet& fluxes) {
    const size_t n = static_cast<size_t>(g.num_faces_total());
    if (fluxes.dual.size() != n) fluxes.dual.assign(n, {0.0, 0.0, 0.0, 0.0});
    std::array<DualEdge, 4> edges;
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const int ne = g.dual_edges_of(f, edges);
        for (int e = 0; e < ne; ++e) {
            const DualEdge& de = edges[e];
            const double mean =
                0.5 * (fluxes.mass[de.primal_faces[0]] + fluxes.mass[de.primal_faces[1]]);
            fluxes.dual[f][e] = de.orientation * mean;
        }
    }
}

} // namespace ripa
