#include <doctest.h>

#include <cmath>

#include "ripa/cases.hpp"
#include "ripa/diagnostics.hpp"
#include "ripa/rusanov.hpp"

using namespace ripa;

TEST_CASE("identical states give the exact physical flux") {
    const ConsVars u{2.0, 1.0, 0.0, 3.0}; // h=2, hu=1, htheta=3
    const ConsVars f = rusanov_flux(u, u, 1.0, 0);
    const double vel = 0.5; // hu/h
    CHECK(f.h == doctest::Approx(2.0 * vel).epsilon(1e-15));
    CHECK(f.hu == doctest::Approx(1.0 * vel + 0.5 * 2.0 * 3.0).epsilon(1e-15));
    CHECK(f.htheta == doctest::Approx(3.0 * vel).epsilon(1e-15));
}

TEST_CASE("still symmetric states exchange no mass") {
    const ConsVars l{1.5, 0.0, 0.0, 2.0};
    const ConsVars r{1.5, 0.0, 0.0, 2.0};
    CHECK(rusanov_flux(l, r, 1.0, 0).h == 0.0);
}

TEST_CASE("dam-break interface flux against the hand-computed wave speed") {
    // left (5,0,3), right (1,0,5): lambda = max(sqrt(15), sqrt(5)) = sqrt(15)
    const ConsVars l{5.0, 0.0, 0.0, 15.0};
    const ConsVars r{1.0, 0.0, 0.0, 5.0};
    const double lam = std::sqrt(15.0);
    const ConsVars f = rusanov_flux(l, r, 1.0, 0);
    CHECK(f.h == doctest::Approx(-0.5 * lam * (1.0 - 5.0)).epsilon(1e-14));
    const double pl = 0.5 * 25.0 * 3.0, pr = 0.5 * 1.0 * 5.0;
    CHECK(f.hu == doctest::Approx(0.5 * (pl + pr)).epsilon(1e-14));
    CHECK(f.htheta == doctest::Approx(-0.5 * lam * (5.0 - 15.0)).epsilon(1e-14));
}

TEST_CASE("uniform state over a flat bottom does not move") {
    const MacGrid g = MacGrid::uniform_2d({0.0, 0.0}, {1.0, 1.0}, {6, 6});
    Bathymetry bath;
    bath.values = CellField::zeros(g);
    RusanovScheme scheme(g, bath, 1.0);
    RusanovScheme::State s = scheme.project([](double, double) { return 2.0; },
                                            [](double, double) { return 0.0; },
                                            [](double, double) { return 0.0; },
                                            [](double, double) { return 1.0; }, 1);
    const RusanovScheme::State before = s;
    for (int n = 0; n < 5; ++n) scheme.advance(s, 1e9);
    for (int c = 0; c < g.num_cells(); ++c) {
        CHECK(s.h[c] == before.h[c]);
        CHECK(s.hu[c] == 0.0);
        CHECK(s.hv[c] == 0.0);
        CHECK(s.htheta[c] == before.htheta[c]);
    }
}

TEST_CASE("mass and temperature are conserved with walls and flat bottom") {
    const CaseSpec& spec = find_case("dam_flat_1d");
    const MacGrid g = spec.make_grid(std::array<int, 2>{100, 1});
    RusanovScheme scheme(g, spec.make_bathymetry(g), 1.0);
    RusanovScheme::State s = scheme.project(spec.h0, spec.u0x, spec.u0y, spec.theta0, 1);
    double mass0 = 0.0, temp0 = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) {
        mass0 += g.cell_volume() * s.h[c];
        temp0 += g.cell_volume() * s.htheta[c];
    }
    for (int n = 0; n < 20; ++n) scheme.advance(s, 1e9);
    double mass1 = 0.0, temp1 = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) {
        mass1 += g.cell_volume() * s.h[c];
        temp1 += g.cell_volume() * s.htheta[c];
    }
    CHECK(std::abs(mass1 - mass0) <= 1e-12 * mass0);
    CHECK(std::abs(temp1 - temp0) <= 1e-12 * temp0);
}

TEST_CASE("the baseline visibly drifts off the lake-at-rest equilibrium") {
    const CaseSpec& spec = find_case("lake_at_rest");
    const MacGrid g = spec.make_grid();
    RusanovScheme scheme(g, spec.make_bathymetry(g), 1.0);
    RusanovScheme::State s = scheme.project(spec.h0, spec.u0x, spec.u0y, spec.theta0,
                                            spec.quadrature);
    scheme.run_to(s, 2.0);
    const RipaState now = scheme.to_cell_state(s, g);
    const RipaState steady = spec.make_steady_state(g);
    const L1Errors e = l1_error(g, now, steady);
    CHECK(e.h > 1e-4); // the whole point of the baseline
}
