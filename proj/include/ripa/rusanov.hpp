#pragma once

#include <array>

#include "ripa/fields.hpp"
#include "ripa/mac_grid.hpp"
#include "ripa/scheme.hpp"

namespace ripa {

/// Conserved variables of one cell for the collocated baseline.
struct ConsVars {
    double h = 0.0;
    double hu = 0.0;
    double hv = 0.0;
    double htheta = 0.0;
};

/// Local Lax-Friedrichs interface flux in direction `dir`:
/// (F(left)+F(right))/2 - lambda (right-left)/2 with lambda the largest
/// |u.n| + sqrt(g h theta) of the two states.
ConsVars rusanov_flux(const ConsVars& left, const ConsVars& right, double grav, int dir);

/// Deliberately plain collocated baseline: forward Euler, Rusanov fluxes,
/// one-sided topography source, mirrored wall states. Not well balanced by
/// construction; used for comparison tables and as a fine-grid reference
/// generator.
class RusanovScheme {
public:
    struct State {
        CellField h;
        CellField hu;
        CellField hv;
        CellField htheta;
        double t = 0.0;
    };

    RusanovScheme(const MacGrid& g, Bathymetry bath, double grav, double cfl_safety = 0.45);

    State project(const ScalarFn& h0, const ScalarFn& u0x, const ScalarFn& u0y,
                  const ScalarFn& theta0, int quad_order) const;

    double compute_dt(const State& s) const;
    /// One forward-Euler update; throws SolverError if positivity is lost.
    void step(State& s, double dt) const;
    /// Adaptive step capped by dt_cap, halving on positivity loss.
    StepReport advance(State& s, double dt_cap) const;
    void run_to(State& s, double t_end) const;

    /// Cell-centred view for error measurement against staggered output.
    RipaState to_cell_state(const State& s, const MacGrid& g) const;

    const MacGrid& grid() const { return grid_; }
    const CellField& b() const { return bath_.values; }

private:
    ConsVars cell(const State& s, int c) const;

    MacGrid grid_;
    Bathymetry bath_;
    double grav_;
    double cfl_;
};

} // namespace ripa
