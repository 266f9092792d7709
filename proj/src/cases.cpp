#include "ripa/cases.hpp"

#include <cmath>
#include <stdexcept>

namespace ripa {

namespace {

constexpr double kPi = 3.14159265358979323846;

// narrow Gaussian bump used by the 1d equilibrium profiles
double bump(double x) {
    const double x0 = 0.5, width = 0.06;
    return 1.0 / std::sqrt(2.0 * kPi * width) * std::exp(-(x - x0) * (x - x0) / width);
}

ScalarFn zero_fn() {
    return [](double, double) { return 0.0; };
}
ScalarFn const_fn(double v) {
    return [v](double, double) { return v; };
}

std::vector<CaseSpec> build_registry() {
    std::vector<CaseSpec> cases;

    {
        CaseSpec c;
        c.name = "lake_at_rest";
        c.description = "1d lake-at-rest equilibrium over a Gaussian bump";
        c.dim = 1;
        c.lo = {0.0, 0.0};
        c.hi = {3.0, 1.0};
        c.default_n = {200, 1};
        c.bathymetry = [](double x, double) { return 0.1 + bump(x); };
        c.h0 = [](double x, double) { return 8.0 - (0.1 + bump(x)); };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = const_fn(1.0);
        c.steady_h = c.h0;
        c.steady_theta = c.theta0;
        c.t_end = 20.0;
        c.snapshots = {20.0};
        c.reference = ReferencePolicy::analytic_steady;
        c.default_variant = Variant::centred;
        c.quadrature = 3;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "isobaric";
        c.description = "1d isobaric equilibrium, flat bottom, h^2 theta constant";
        c.dim = 1;
        c.lo = {0.0, 0.0};
        c.hi = {3.0, 1.0};
        c.default_n = {200, 1};
        c.bathymetry = const_fn(1.0);
        c.h0 = [](double x, double) { return 1.0 + 0.2 * bump(x); };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) {
            const double h = 1.0 + 0.2 * bump(x);
            return 1.0 / (h * h);
        };
        c.steady_h = c.h0;
        c.steady_theta = c.theta0;
        c.t_end = 20.0;
        c.snapshots = {20.0};
        c.reference = ReferencePolicy::analytic_steady;
        c.default_variant = Variant::centred;
        // pointwise sampling keeps the nonlinear cell relation exact
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "const_height";
        c.description = "1d constant-height equilibrium, b + (h/2) ln theta constant";
        c.dim = 1;
        c.lo = {0.0, 0.0};
        c.hi = {3.0, 1.0};
        c.default_n = {200, 1};
        c.bathymetry = [](double x, double) { return 10.0 + x * (1.0 - x); };
        c.h0 = const_fn(1.0);
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) {
            return 0.1 * std::exp(-2.0 * (10.0 + x * (1.0 - x)));
        };
        c.steady_h = c.h0;
        c.steady_theta = c.theta0;
        c.t_end = 20.0;
        c.snapshots = {20.0};
        c.reference = ReferencePolicy::analytic_steady;
        c.default_variant = Variant::centred;
        // pointwise sampling keeps the nonlinear cell relation exact
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "nonlinear_perturbation";
        c.description = "1d perturbation of the exponential equilibrium";
        c.dim = 1;
        c.lo = {-1.0, 0.0};
        c.hi = {1.0, 1.0};
        c.default_n = {200, 1};
        c.bathymetry = [](double x, double) { return 6.0 - 2.0 * std::exp(x); };
        c.h0 = [](double x, double) {
            const double chi = (x >= -0.1 && x <= 0.0) ? 1.0 : 0.0;
            return std::exp(x) + 0.1 * chi;
        };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) { return std::exp(2.0 * x); };
        c.steady_h = [](double x, double) { return std::exp(x); };
        c.steady_theta = c.theta0;
        c.t_end = 0.4;
        c.snapshots = {0.2, 0.4};
        c.reference = ReferencePolicy::analytic_steady;
        c.default_variant = Variant::upwind;
        c.quadrature = 3;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "dam_flat_1d";
        c.description = "1d dam break over a flat bottom";
        c.dim = 1;
        c.lo = {-1.0, 0.0};
        c.hi = {1.0, 1.0};
        c.default_n = {200, 1};
        c.bathymetry = zero_fn();
        c.h0 = [](double x, double) { return x < 0.0 ? 5.0 : 1.0; };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) { return x < 0.0 ? 3.0 : 5.0; };
        c.t_end = 0.2;
        c.snapshots = {0.2};
        c.reference = ReferencePolicy::fine_rusanov;
        c.default_variant = Variant::upwind;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "dam_nonflat_1d";
        c.description = "1d dam break over cosine humps with an almost dry region";
        c.dim = 1;
        c.lo = {-1.0, 0.0};
        c.hi = {1.0, 1.0};
        c.default_n = {200, 1};
        auto b_fn = [](double x, double) {
            if (x >= -0.4 && x <= -0.2) return 2.0 * (std::cos(10.0 * kPi * (x + 0.3)) + 1.0);
            if (x >= 0.2 && x <= 0.4) return 0.5 * (std::cos(10.0 * kPi * (x - 0.3)) + 1.0);
            return 0.0;
        };
        c.bathymetry = b_fn;
        c.dry_floor = 1e-6;
        const double floor = c.dry_floor;
        c.h0 = [b_fn, floor](double x, double y) {
            const double surface = x < 0.0 ? 5.0 : 1.0;
            return std::max(surface - b_fn(x, y), floor);
        };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) { return x < 0.0 ? 1.0 : 5.0; };
        c.t_end = 0.3;
        c.snapshots = {0.3};
        c.reference = ReferencePolicy::fine_rusanov;
        c.default_variant = Variant::upwind;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "steady_2d";
        c.description = "2d equilibrium: lake-at-rest plateaus joined by an isobaric jump";
        c.dim = 2;
        c.lo = {-1.0, -1.0};
        c.hi = {1.0, 1.0};
        c.default_n = {100, 100};
        c.bathymetry = [](double x, double y) {
            if (x < 0.0)
                return 0.5 * std::exp(-100.0 * ((x + 0.5) * (x + 0.5) + (y + 0.5) * (y + 0.5)));
            return 0.6 * std::exp(-100.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
        };
        c.h0 = [](double x, double y) { return x * x + y * y < 0.25 ? 3.0 : 2.0; };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double y) { return x * x + y * y < 0.25 ? 4.0 / 3.0 : 3.0; };
        c.t_end = 0.12;
        c.snapshots = {0.12};
        c.reference = ReferencePolicy::none;
        c.default_variant = Variant::centred;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "perturbed_steady_2d";
        c.description = "2d equilibrium perturbed inside a small annulus";
        c.dim = 2;
        c.lo = {-1.0, -1.0};
        c.hi = {1.0, 1.0};
        c.default_n = {100, 100};
        c.bathymetry = [](double x, double y) {
            if (x < 0.0)
                return 0.5 * std::exp(-100.0 * ((x + 0.5) * (x + 0.5) + (y + 0.5) * (y + 0.5)));
            return 0.6 * std::exp(-100.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
        };
        c.h0 = [](double x, double y) {
            const double r2 = x * x + y * y;
            if (r2 > 0.01 && r2 < 0.09) return 3.1;
            return r2 < 0.25 ? 3.0 : 2.0;
        };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double y) { return x * x + y * y < 0.25 ? 4.0 / 3.0 : 3.0; };
        c.t_end = 0.15;
        c.snapshots = {0.15};
        c.reference = ReferencePolicy::none;
        c.default_variant = Variant::upwind;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "circular_dam_2d";
        c.description = "2d circular dam break over a flat bottom";
        c.dim = 2;
        c.lo = {-1.0, -1.0};
        c.hi = {1.0, 1.0};
        c.default_n = {200, 200};
        c.bathymetry = zero_fn();
        c.h0 = [](double x, double y) { return x * x + y * y < 0.25 ? 2.0 : 1.0; };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double y) { return x * x + y * y < 0.25 ? 1.0 : 1.5; };
        c.t_end = 0.15;
        c.snapshots = {0.15};
        c.reference = ReferencePolicy::none;
        c.default_variant = Variant::upwind;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    {
        CaseSpec c;
        c.name = "rect_dam_2d";
        c.description = "2d rectangular dam break over a flat bottom";
        c.dim = 2;
        c.lo = {-1.0, -1.0};
        c.hi = {1.0, 1.0};
        c.default_n = {200, 200};
        c.bathymetry = zero_fn();
        c.h0 = [](double x, double) { return std::abs(x) <= 0.5 ? 2.0 : 1.0; };
        c.u0x = zero_fn();
        c.u0y = zero_fn();
        c.theta0 = [](double x, double) { return std::abs(x) <= 0.5 ? 1.0 : 1.5; };
        c.t_end = 0.2;
        c.snapshots = {0.2};
        c.reference = ReferencePolicy::none;
        c.default_variant = Variant::upwind;
        c.quadrature = 1;
        cases.push_back(std::move(c));
    }
    return cases;
}

} // namespace

MacGrid CaseSpec::make_grid(std::optional<std::array<int, 2>> n_override) const {
    const std::array<int, 2> n = n_override.value_or(default_n);
    if (dim == 1) return MacGrid::uniform_1d(lo[0], hi[0], n[0]);
    return MacGrid::uniform_2d(lo, hi, n);
}

Bathymetry CaseSpec::make_bathymetry(const MacGrid& g) const {
    Bathymetry b;
    b.analytic = bathymetry;
    b.values = project_to_cells(g, bathymetry, quadrature);
    return b;
}

RipaState CaseSpec::make_initial_state(const MacGrid& g) const {
    return project_initial_data(g, h0, u0x, u0y, theta0, quadrature);
}

RipaState CaseSpec::make_steady_state(const MacGrid& g) const {
    if (!steady_h || !steady_theta)
        throw std::invalid_argument("case " + name + " has no analytic steady state");
    return project_initial_data(g, steady_h, zero_fn(), zero_fn(), steady_theta, quadrature);
}

const std::vector<CaseSpec>& registry() {
    static const std::vector<CaseSpec> cases = build_registry();
    return cases;
}

const CaseSpec& find_case(const std::string& name) {
    for (const CaseSpec& c : registry())
        if (c.name == name) return c;
    std::string names;
    for (const CaseSpec& c : registry()) names += (names.empty() ? "" : ", ") + c.name;
    throw std::invalid_argument("unknown case '" + name + "'; available: " + names);
}

} // namespace ripa
