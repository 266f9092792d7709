#pragma once

#include <map>
#include <string>
#include <vector>

#include "ripa/diagnostics.hpp"
#include "ripa/fields.hpp"
#include "ripa/mac_grid.hpp"
#include "ripa/rusanov.hpp"

namespace ripa {

/// Key-value header lines written as `# key=value` before the column header.
using HeaderMap = std::vector<std::pair<std::string, std::string>>;

/// 1d columns: x,h,u,theta,b,h+b,p; 2d columns: x,y,h,u,v,theta,b,p in
/// row-major order. Velocities are face values averaged to cell centres.
void write_snapshot(const std::string& path, const MacGrid& g, const RipaState& s,
                    const CellField& b, double grav, const HeaderMap& header);

void write_snapshot(const std::string& path, const MacGrid& g, const RusanovScheme::State& s,
                    const CellField& b, double grav, const HeaderMap& header);

/// Per-step energy budget rows:
/// step,t,dt,E_int,E_kin,E_pot,E_total,A,R,Q,min_h,min_theta
class EnergyBudgetWriter {
public:
    EnergyBudgetWriter() = default;
    explicit EnergyBudgetWriter(const std::string& path, const HeaderMap& header = {});
    EnergyBudgetWriter(EnergyBudgetWriter&&) = default;
    EnergyBudgetWriter& operator=(EnergyBudgetWriter&& other) {
        flush();
        path_ = std::move(other.path_);
        buffer_ = std::move(other.buffer_);
        other.path_.clear();
        return *this;
    }
    ~EnergyBudgetWriter() { flush(); }
    void row(int step, const StepReport& rep, const EnergyTotals& e, const EnergyQuadratics& q);
    bool open() const { return !path_.empty(); }

private:
    std::string path_;
    std::string buffer_;
    void flush();
};

/// Step log rows: step,t,dt,retries,binding,min_h,min_theta
void write_step_log(const std::string& path, const std::vector<StepReport>& reports,
                    const HeaderMap& header);

void write_errors(const std::string& path, const std::vector<std::pair<std::string, L1Errors>>& rows,
                  const HeaderMap& header);

/// Minimal CSV reader for snapshots and golden files; `# key=value` lines
/// land in `header`.
struct CsvTable {
    std::map<std::string, std::string> header;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const; // -1 when absent
    std::vector<double> values(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

std::string format_double(double v);

} // namespace ripa
