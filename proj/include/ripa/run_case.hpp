#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ripa/cases.hpp"
#include "ripa/diagnostics.hpp"
#include "ripa/output.hpp"
#include "ripa/scheme.hpp"

namespace ripa {

struct RunConfig {
    std::string case_name;
    std::string scheme = "wb"; // "wb" or "rusanov"
    std::optional<Variant> variant;
    std::optional<std::array<int, 2>> n_cells;
    std::optional<double> t_end;
    std::optional<std::vector<double>> snapshots;
    std::string out_dir = ".";
    SchemeConfig numerics;        // variant field is overridden per case/flag
    double rusanov_cfl = 0.45;
    std::string reference_csv;    // fine-grid profile to compare against
    std::optional<double> dry_floor; // overrides the case's initial-height floor
    bool check_invariants = false;
    bool write_energy = true;
};

/// Executes one benchmark run and writes snapshots, the energy budget, the
/// step log, and (when a reference applies) the error table into out_dir.
void run_case(const RunConfig& cfg);

struct Table1Row {
    std::string case_name;
    L1Errors rusanov;
    L1Errors well_balanced;
};

/// The six equilibrium runs behind the error table: three steady cases, each
/// with the baseline scheme and the stabilised centred scheme.
std::vector<Table1Row> table1_errors(int nx = 200, double t_end = 20.0);

void write_table1(const std::string& out_dir, const std::vector<Table1Row>& rows);

// --- small analysis helpers shared with the acceptance suite ---

struct CrossSection {
    std::vector<double> x, h, u, theta;
};

/// Cell row closest to the x axis of a 2d state.
CrossSection cross_section_y0(const MacGrid& g, const RipaState& s);

/// Block means of a fine 1d profile onto nc coarse cells (sizes must divide).
std::vector<double> restrict_to_coarse(const std::vector<double>& fine, int nc);

double total_variation(const std::vector<double>& v);

/// Mean |a-b| times the cell size `dx` (discrete L1 on matching grids).
double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx);

} // namespace ripa
