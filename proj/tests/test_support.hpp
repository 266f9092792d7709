#pragma once

#include <random>

#include "ripa/fields.hpp"
#include "ripa/mac_grid.hpp"

namespace ripa::test {

inline RipaState random_state(const MacGrid& g, std::mt19937& rng, double umax = 0.5) {
    std::uniform_real_distribution<double> hd(0.5, 3.0), td(0.5, 3.0), ud(-umax, umax);
    RipaState s;
    s.h = CellField(g.num_cells());
    s.theta = CellField(g.num_cells());
    s.u = FaceField(g.num_faces_total());
    for (int c = 0; c < g.num_cells(); ++c) {
        s.h[c] = hd(rng);
        s.theta[c] = td(rng);
    }
    for (int f = 0; f < g.num_faces_total(); ++f)
        s.u[f] = g.is_boundary(f) ? 0.0 : ud(rng);
    return s;
}

inline CellField random_cells(const MacGrid& g, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    CellField q(g.num_cells());
    for (int c = 0; c < g.num_cells(); ++c) q[c] = d(rng);
    return q;
}

inline FaceField random_faces(const MacGrid& g, std::mt19937& rng, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    FaceField v(g.num_faces_total());
    for (int f = 0; f < g.num_faces_total(); ++f) v[f] = g.is_boundary(f) ? 0.0 : d(rng);
    return v;
}

/// Series oracle for the logarithmic mean, independent of the library path:
/// (a+b)/2 / sum_k z^(2k)/(2k+1) with z = (b-a)/(b+a).
inline double log_mean_series(double a, double b) {
    const double z = (b - a) / (b + a);
    double denom = 0.0, zp = 1.0;
    for (int k = 0; k <= 14; ++k) {
        denom += zp / (2 * k + 1);
        zp *= z * z;
    }
    return 0.5 * (a + b) / denom;
}

} // namespace ripa::test
