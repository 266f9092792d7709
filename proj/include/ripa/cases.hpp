#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ripa/fields.hpp"
#include "ripa/fluxes.hpp"
#include "ripa/mac_grid.hpp"

namespace ripa {

enum class ReferencePolicy {
    analytic_steady, // compare against the projected steady state
    fine_rusanov,    // compare against a fine-grid baseline profile
    none
};

/// One benchmark configuration: domain, initial data, bathymetry, final
/// time, and how results are judged. Pure data; every run is reproducible
/// bit for bit from it.
struct CaseSpec {
    std::string name;
    std::string description;
    int dim = 1;
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<int, 2> default_n{100, 100};
    ScalarFn bathymetry;
    ScalarFn h0;
    ScalarFn u0x;
    ScalarFn u0y;
    ScalarFn theta0;
    /// steady background for perturbation diagnostics (null when unused)
    ScalarFn steady_h;
    ScalarFn steady_theta;
    double t_end = 1.0;
    std::vector<double> snapshots;
    ReferencePolicy reference = ReferencePolicy::none;
    Variant default_variant = Variant::upwind;
    int quadrature = 1;      // 1 midpoint, 3 per-axis 2-point Gauss
    double dry_floor = 0.0;  // minimum initial water height, 0 disables

    MacGrid make_grid(std::optional<std::array<int, 2>> n_override = {}) const;
    Bathymetry make_bathymetry(const MacGrid& g) const;
    RipaState make_initial_state(const MacGrid& g) const;
    /// Projected steady state (for cases with an analytic one).
    RipaState make_steady_state(const MacGrid& g) const;
};

/// All benchmark cases, in presentation order.
const std::vector<CaseSpec>& registry();

/// Throws std::invalid_argument listing the known names when absent.
const CaseSpec& find_case(const std::string& name);

} // namespace ripa
