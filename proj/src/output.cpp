#include "ripa/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ripa {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

void write_header(std::ofstream& out, const HeaderMap& header) {
    for (const auto& [k, v] : header) out << "# " << k << "=" << v << "\n";
}

/// face velocities averaged to the centre of cell c along `dir`
double cell_velocity(const MacGrid& g, const RipaState& s, int c, int dir) {
    return 0.5 * (s.u[g.cell_face(c, dir, 0)] + s.u[g.cell_face(c, dir, 1)]);
}

} // namespace

void write_snapshot(const std::string& path, const MacGrid& g, const RipaState& s,
                    const CellField& b, double grav, const HeaderMap& header) {
    std::ofstream out = open_out(path);
    write_header(out, header);
    if (g.dim() == 1) {
        out << "x,h,u,theta,b,h+b,p\n";
        for (int c = 0; c < g.num_cells(); ++c) {
            const double x = g.cell_center(c)[0];
            const double p = 0.5 * grav * s.h[c] * s.h[c] * s.theta[c];
            out << format_double(x) << ',' << format_double(s.h[c]) << ','
                << format_double(cell_velocity(g, s, c, 0)) << ',' << format_double(s.theta[c])
                << ',' << format_double(b[c]) << ',' << format_double(s.h[c] + b[c]) << ','
                << format_double(p) << "\n";
        }
    } else {
        out << "x,y,h,u,v,theta,b,p\n";
        for (int c = 0; c < g.num_cells(); ++c) {
            const auto [x, y] = g.cell_center(c);
            const double p = 0.5 * grav * s.h[c] * s.h[c] * s.theta[c];
            out << format_double(x) << ',' << format_double(y) << ',' << format_double(s.h[c])
                << ',' << format_double(cell_velocity(g, s, c, 0)) << ','
                << format_double(cell_velocity(g, s, c, 1)) << ',' << format_double(s.theta[c])
                << ',' << format_double(b[c]) << ',' << format_double(p) << "\n";
        }
    }
}

void write_snapshot(const std::string& path, const MacGrid& g, const RusanovScheme::State& s,
                    const CellField& b, double grav, const HeaderMap& header) {
    std::ofstream out = open_out(path);
    write_header(out, header);
    if (g.dim() == 1) {
        out << "x,h,u,theta,b,h+b,p\n";
        for (int c = 0; c < g.num_cells(); ++c) {
            const double x = g.cell_center(c)[0];
            const double th = s.htheta[c] / s.h[c];
            const double p = 0.5 * grav * s.h[c] * s.h[c] * th;
            out << format_double(x) << ',' << format_double(s.h[c]) << ','
                << format_double(s.hu[c] / s.h[c]) << ',' << format_double(th) << ','
                << format_double(b[c]) << ',' << format_double(s.h[c] + b[c]) << ','
                << format_double(p) << "\n";
        }
    } else {
        out << "x,y,h,u,v,theta,b,p\n";
        for (int c = 0; c < g.num_cells(); ++c) {
            const auto [x, y] = g.cell_center(c);
            const double th = s.htheta[c] / s.h[c];
            const double p = 0.5 * grav * s.h[c] * s.h[c] * th;
            out << format_double(x) << ',' << format_double(y) << ',' << format_double(s.h[c])
                << ',' << format_double(s.hu[c] / s.h[c]) << ','
                << format_double(s.hv[c] / s.h[c]) << ',' << format_double(th) << ','
                << format_double(b[c]) << ',' << format_double(p) << "\n";
        }
    }
}

EnergyBudgetWriter::EnergyBudgetWriter(const std::string& path, const HeaderMap& header)
    : path_(path) {
    std::ofstream out = open_out(path);
    write_header(out, header);
    out << "step,t,dt,E_int,E_kin,E_pot,E_total,A,R,Q,min_h,min_theta\n";
}

void EnergyBudgetWriter::row(int step, const StepReport& rep, const EnergyTotals& e,
                             const EnergyQuadratics& q) {
    buffer_ += std::to_string(step);
    for (double v : {rep.t, rep.dt, e.internal_energy, e.kinetic, e.potential, e.total(), q.A,
                     q.R, q.Q, rep.min_h, rep.min_theta})
        buffer_ += "," + format_double(v);
    buffer_ += "\n";
    if (buffer_.size() > 1 << 20) flush();
    if (step % 256 == 0) flush();
}

void EnergyBudgetWriter::flush() {
    if (buffer_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    out << buffer_;
    buffer_.clear();
}

void write_step_log(const std::string& path, const std::vector<StepReport>& reports,
                    const HeaderMap& header) {
    std::ofstream out = open_out(path);
    write_header(out, header);
    out << "step,t,dt,retries,binding,min_h,min_theta\n";
    int i = 0;
    for (const StepReport& r : reports) {
        out << i++ << ',' << format_double(r.t) << ',' << format_double(r.dt) << ',' << r.retries
            << ',' << r.binding << ',' << format_double(r.min_h) << ','
            << format_double(r.min_theta) << "\n";
    }
}

void write_errors(const std::string& path,
                  const std::vector<std::pair<std::string, L1Errors>>& rows,
                  const HeaderMap& header) {
    std::ofstream out = open_out(path);
    write_header(out, header);
    out << "label,l1_h,l1_u,l1_theta\n";
    for (const auto& [label, e] : rows)
        out << label << ',' << format_double(e.h) << ',' << format_double(e.u) << ','
            << format_double(e.theta) << "\n";
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::values(const std::string& name) const {
    const int c = column(name);
    if (c < 0) throw std::runtime_error("csv column not found: " + name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[c]);
    return v;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    CsvTable t;
    std::string line;
    bool have_columns = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const size_t start = line.find_first_not_of("# ");
            const size_t eq = line.find('=', start);
            if (eq != std::string::npos && start != std::string::npos)
                t.header[line.substr(start, eq - start)] = line.substr(eq + 1);
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        if (!have_columns) {
            while (std::getline(ss, tok, ',')) t.columns.push_back(tok);
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(t.columns.size());
        while (std::getline(ss, tok, ',')) {
            try {
                row.push_back(std::stod(tok));
            } catch (...) {
                row.push_back(0.0); // non-numeric cell (e.g. labels)
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace ripa
