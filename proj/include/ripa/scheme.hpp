#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripa/fields.hpp"
#include "ripa/fluxes.hpp"
#include "ripa/mac_grid.hpp"
#include "ripa/stabilization.hpp"

namespace ripa {

class SolverError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SchemeConfig {
    Variant variant = Variant::upwind;
    double gravity = 1.0;
    double alpha = 0.0; // <= 0 selects gravity (keeps alpha > gravity/2 with margin)
    double beta = 1.0;
    double eta_safety = 1.5;
    double cfl_safety = 0.9;
    int max_retries = 40;
    std::optional<double> fixed_dt;

    double resolved_alpha() const { return alpha > 0.0 ? alpha : gravity; }
    void validate() const;
};

struct StepReport {
    double t = 0.0;
    double dt = 0.0;
    int retries = 0;
    double min_h = 0.0;
    double min_theta = 0.0;
    std::string binding;   // constraint that fixed dt
    std::string violation; // post-step bound violation (fixed-dt runs only)
};

/// Everything the update of one step produced on the way, for diagnostics
/// and tests. Valid after step_once/advance until the next call.
struct StepArtifacts {
    double dt = 0.0;
    CellField p; // 0.5 g h^2 theta at time n
    InterfaceValues iv;
    FaceField eta;
    FaceField balance_raw; // (p_L - p_K) + g (h theta)_sigma (b_L - b_K)
    FaceField delta_u;
    FaceField v; // u - delta_u
    FluxSet fluxes;
    CellField mass_div_u;
    CellField temp_div_u;
    CellField s_shift;
    StabilizedGradients star;
};

/// Explicit staggered scheme for the model, centred or upwind interface
/// variant, with the stabilisation terms that make it energy stable and
/// well balanced.
class Scheme {
public:
    Scheme(const MacGrid& g, Bathymetry bath, SchemeConfig cfg);

    /// Largest time step allowed by the positivity condition and the energy
    /// bounds (the latter evaluated with time-n heights; the post-step
    /// verifier re-checks them). Includes the cfl_safety factor.
    double compute_dt(const RipaState& s, std::string* binding = nullptr);

    /// One explicit update with the given dt. Throws SolverError when the
    /// update loses positivity (naming the cell). A failing post-step bound
    /// is written to *post_check_label when provided, otherwise throws.
    RipaState step_once(const RipaState& s, double dt, std::string* post_check_label = nullptr);

    /// Adaptive step: dt from compute_dt (or cfg.fixed_dt), capped by dt_cap;
    /// halves dt and redoes the update when a post-step check fails.
    StepReport advance(RipaState& s, double dt_cap);

    const StepArtifacts& artifacts() const { return art_; }
    const MacGrid& grid() const { return grid_; }
    const CellField& b() const { return bath_.values; }
    const SchemeConfig& config() const { return cfg_; }

    void set_dt_floor(double floor) { dt_floor_ = floor; }

private:
    std::optional<std::string> attempt(const RipaState& in, double dt, RipaState& out);
    std::optional<std::string> verify_post(const RipaState& in, const RipaState& out, double dt);
    void fill_pressure(const RipaState& s);

    MacGrid grid_;
    Bathymetry bath_;
    SchemeConfig cfg_;
    double dt_floor_ = 0.0;

    StepArtifacts art_;
    InterfaceValues iv_pred_;
    FluxSet flux_pred_;
    RipaState out_buf_;
};

struct RunCallbacks {
    std::function<void(const RipaState& before, const RipaState& after, Scheme& scheme,
                       const StepReport&)>
        on_step;
    std::function<void(const RipaState&, int snapshot_index)> on_snapshot;
};

/// Advances to t_end with exact hits of the (sorted) snapshot times.
std::vector<StepReport> run(Scheme& scheme, RipaState& state, double t_end,
                            const std::vector<double>& snapshots, const RunCallbacks& cb = {});

} // namespace ripa
