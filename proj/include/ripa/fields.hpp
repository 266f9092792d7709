#pragma once

#include <functional>
#include <vector>

#include "ripa/mac_grid.hpp"

namespace ripa {

/// Scalar degrees of freedom, one per primal cell.
struct CellField {
    std::vector<double> data;

    CellField() = default;
    explicit CellField(int n, double value = 0.0) : data(n, value) {}
    static CellField zeros(const MacGrid& g) { return CellField(g.num_cells()); }
    static CellField constant(const MacGrid& g, double value) {
        return CellField(g.num_cells(), value);
    }

    double& operator[](int i) { return data[i]; }
    double operator[](int i) const { return data[i]; }
    int size() const { return static_cast<int>(data.size()); }
};

/// Scalar degrees of freedom, one per face, all directions in one vector
/// (direction-major numbering, see MacGrid). Entries on external faces are
/// kept at zero.
struct FaceField {
    std::vector<double> data;

    FaceField() = default;
    explicit FaceField(int n, double value = 0.0) : data(n, value) {}
    static FaceField zeros(const MacGrid& g) { return FaceField(g.num_faces_total()); }

    double& operator[](int i) { return data[i]; }
    double operator[](int i) const { return data[i]; }
    int size() const { return static_cast<int>(data.size()); }

    void zero_external(const MacGrid& g);
};

/// Unknowns of the model at one time level: water height and temperature on
/// cells, normal velocity on faces.
struct RipaState {
    CellField h;
    CellField theta;
    FaceField u;
    double t = 0.0;
};

/// Bottom topography: cell values plus, optionally, the analytic profile the
/// values were sampled from.
struct Bathymetry {
    CellField values;
    std::function<double(double, double)> analytic;
};

using ScalarFn = std::function<double(double, double)>;

/// Cell averages of an analytic function. quad_order 1 is the midpoint rule,
/// quad_order 3 a per-axis 2-point Gauss rule. Throws if the function is not
/// finite at a quadrature point, naming the cell.
CellField project_to_cells(const MacGrid& g, const ScalarFn& f, int quad_order);

/// Dual-cell averages of the direction-i velocity component on direction-i
/// faces; external faces are zero.
FaceField project_to_dual_cells(const MacGrid& g, const ScalarFn& ux, const ScalarFn& uy,
                                int quad_order);

RipaState project_initial_data(const MacGrid& g, const ScalarFn& h0, const ScalarFn& u0x,
                               const ScalarFn& u0y, const ScalarFn& theta0, int quad_order);

/// (|D_{K,sigma}| q_K + |D_{L,sigma}| q_L) / |D_sigma|; boundary faces return
/// the single host cell value.
double dual_average(const MacGrid& g, const CellField& q, int face);

} // namespace ripa
