#include "ripa/fields.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ripa {

namespace {

struct QuadRule {
    int npts;
    std::array<double, 2> offset; // relative positions in [0,1]
    std::array<double, 2> weight;
};

QuadRule quad_rule(int order) {
    if (order == 1) return {1, {0.5, 0.0}, {1.0, 0.0}};
    if (order == 3) {
        const double d = 0.5 / std::sqrt(3.0);
        return {2, {0.5 - d, 0.5 + d}, {0.5, 0.5}};
    }
    throw std::invalid_argument("quadrature order must be 1 (midpoint) or 3 (2-point Gauss)");
}

/// Average of f over the box [x0,x0+ex] x [y0,y0+ey] with the tensorised rule.
double box_average(const ScalarFn& f, double x0, double ex, double y0, double ey, int dim,
                   const QuadRule& q) {
    double sum = 0.0;
    for (int a = 0; a < q.npts; ++a) {
        const double x = x0 + q.offset[a] * ex;
        if (dim == 1) {
            sum += q.weight[a] * f(x, 0.0);
        } else {
            for (int b = 0; b < q.npts; ++b)
                sum += q.weight[a] * q.weight[b] * f(x, y0 + q.offset[b] * ey);
        }
    }
    return sum;
}

} // namespace

void FaceField::zero_external(const MacGrid& g) {
    for (int f = 0; f < g.num_faces_total(); ++f)
        if (g.is_boundary(f)) data[f] = 0.0;
}

CellField project_to_cells(const MacGrid& g, const ScalarFn& f, int quad_order) {
    const QuadRule q = quad_rule(quad_order);
    CellField out = CellField::zeros(g);
    for (int c = 0; c < g.num_cells(); ++c) {
        const CellIndex cx = g.cell_index(c);
        const double x0 = g.lo(0) + cx.i * g.dx(0);
        const double y0 = g.dim() == 2 ? g.lo(1) + cx.j * g.dx(1) : 0.0;
        const double v = box_average(f, x0, g.dx(0), y0, g.dim() == 2 ? g.dx(1) : 0.0, g.dim(), q);
        if (!std::isfinite(v))
            throw std::runtime_error("initial data not finite at cell (" + std::to_string(cx.i) +
                                     "," + std::to_string(cx.j) + ")");
        out[c] = v;
    }
    return out;
}

FaceField project_to_dual_cells(const MacGrid& g, const ScalarFn& ux, const ScalarFn& uy,
                                int quad_order) {
    const QuadRule q = quad_rule(quad_order);
    FaceField out = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue; // H_{E,0}
        const FaceIndex fx = g.face_index(f);
        const ScalarFn& comp = fx.dir == 0 ? ux : uy;
        // dual cell: one cell width centred on the face along its normal,
        // full cell extent transversally
        double x0, y0, ex, ey;
        if (fx.dir == 0) {
            x0 = g.lo(0) + (fx.i - 0.5) * g.dx(0);
            ex = g.dx(0);
            y0 = g.dim() == 2 ? g.lo(1) + fx.j * g.dx(1) : 0.0;
            ey = g.dim() == 2 ? g.dx(1) : 0.0;
        } else {
            x0 = g.lo(0) + fx.i * g.dx(0);
            ex = g.dx(0);
            y0 = g.lo(1) + (fx.j - 0.5) * g.dx(1);
            ey = g.dx(1);
        }
        const double v = box_average(comp, x0, ex, y0, ey, g.dim(), q);
        if (!std::isfinite(v))
            throw std::runtime_error("initial velocity not finite near face " + std::to_string(f));
        out[f] = v;
    }
    return out;
}

RipaState project_initial_data(const MacGrid& g, const ScalarFn& h0, const ScalarFn& u0x,
                               const ScalarFn& u0y, const ScalarFn& theta0, int quad_order) {
    RipaState s;
    s.h = project_to_cells(g, h0, quad_order);
    s.theta = project_to_cells(g, theta0, quad_order);
    s.u = project_to_dual_cells(g, u0x, u0y, quad_order);
    s.t = 0.0;
    return s;
}

double dual_average(const MacGrid& g, const CellField& q, int face) {
    const auto [k, l] = g.face_cells(face);
    if (k < 0) return q[l];
    if (l < 0) return q[k];
    const double half = g.half_dual_volume();
    return (half * q[k] + half * q[l]) / g.dual_volume(face);
}

} // namespace ripa
