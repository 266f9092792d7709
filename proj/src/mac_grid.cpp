#include "ripa/mac_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ripa {

namespace {

void check_axis(double a, double b, int n, const char* axis) {
    if (n < 2)
        throw std::invalid_argument(std::string("MacGrid: need at least 2 cells along ") + axis +
                                    ", got " + std::to_string(n));
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument(std::string("MacGrid: degenerate interval along ") + axis);
}

} // namespace

MacGrid MacGrid::uniform_1d(double a, double b, int n) {
    check_axis(a, b, n, "x");
    MacGrid g;
    g.dim_ = 1;
    g.lo_ = {a, 0.0};
    g.hi_ = {b, 1.0};
    g.n_ = {n, 1};
    g.dx_ = {(b - a) / n, 1.0};
    g.vol_ = g.dx_[0];
    g.face_measure_ = {1.0, g.dx_[0]};
    g.perimeter_ = 2.0;
    g.nfaces_x_ = n + 1;
    g.nfaces_y_ = 0;
    g.nfaces_total_ = g.nfaces_x_;
    return g;
}

MacGrid MacGrid::uniform_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                            std::array<int, 2> n) {
    check_axis(lo[0], hi[0], n[0], "x");
    check_axis(lo[1], hi[1], n[1], "y");
    MacGrid g;
    g.dim_ = 2;
    g.lo_ = lo;
    g.hi_ = hi;
    g.n_ = n;
    g.dx_ = {(hi[0] - lo[0]) / n[0], (hi[1] - lo[1]) / n[1]};
    g.vol_ = g.dx_[0] * g.dx_[1];
    g.face_measure_ = {g.dx_[1], g.dx_[0]};
    g.perimeter_ = 2.0 * (g.dx_[0] + g.dx_[1]);
    g.nfaces_x_ = (n[0] + 1) * n[1];
    g.nfaces_y_ = n[0] * (n[1] + 1);
    g.nfaces_total_ = g.nfaces_x_ + g.nfaces_y_;
    return g;
}

int MacGrid::num_faces(int dir) const {
    if (dir == 0) return nfaces_x_;
    return dim_ == 2 ? nfaces_y_ : 0;
}

int MacGrid::face_id(int dir, int i, int j) const {
    if (dir == 0) return j * (n_[0] + 1) + i;
    return nfaces_x_ + j * n_[0] + i;
}

FaceIndex MacGrid::face_index(int f) const {
    if (f < nfaces_x_) return {0, f % (n_[0] + 1), f / (n_[0] + 1)};
    const int r = f - nfaces_x_;
    return {1, r % n_[0], r / n_[0]};
}

bool MacGrid::is_boundary(int face) const {
    const FaceIndex fx = face_index(face);
    if (fx.dir == 0) return fx.i == 0 || fx.i == n_[0];
    return fx.j == 0 || fx.j == n_[1];
}

std::array<int, 2> MacGrid::face_cells(int face) const {
    const FaceIndex fx = face_index(face);
    if (fx.dir == 0) {
        const int k = fx.i > 0 ? cell_id(fx.i - 1, fx.j) : -1;
        const int l = fx.i < n_[0] ? cell_id(fx.i, fx.j) : -1;
        return {k, l};
    }
    const int k = fx.j > 0 ? cell_id(fx.i, fx.j - 1) : -1;
    const int l = fx.j < n_[1] ? cell_id(fx.i, fx.j) : -1;
    return {k, l};
}

int MacGrid::cell_face(int c, int dir, int side) const {
    const CellIndex cx = cell_index(c);
    if (dir == 0) return face_id(0, cx.i + side, cx.j);
    return face_id(1, cx.i, cx.j + side);
}

int MacGrid::dual_edges_of(int face, std::array<DualEdge, 4>& out) const {
    if (is_boundary(face))
        throw std::invalid_argument("dual_edges: face " + std::to_string(face) +
                                    " lies on the domain boundary");
    const FaceIndex fx = face_index(face);
    int count = 0;
    if (fx.dir == 0) {
        const int left = face_id(0, fx.i - 1, fx.j);
        const int right = face_id(0, fx.i + 1, fx.j);
        out[count++] = DualEdge{0, 0, -1.0, {left, face}, left};
        out[count++] = DualEdge{0, 1, +1.0, {face, right}, right};
        if (dim_ == 2) {
            out[count++] = DualEdge{1, 0, -1.0,
                                    {face_id(1, fx.i - 1, fx.j), face_id(1, fx.i, fx.j)},
                                    fx.j > 0 ? face_id(0, fx.i, fx.j - 1) : -1};
            out[count++] = DualEdge{1, 1, +1.0,
                                    {face_id(1, fx.i - 1, fx.j + 1), face_id(1, fx.i, fx.j + 1)},
                                    fx.j + 1 < n_[1] ? face_id(0, fx.i, fx.j + 1) : -1};
        }
    } else {
        const int below = face_id(1, fx.i, fx.j - 1);
        const int above = face_id(1, fx.i, fx.j + 1);
        out[count++] = DualEdge{1, 0, -1.0, {below, face}, below};
        out[count++] = DualEdge{1, 1, +1.0, {face, above}, above};
        out[count++] = DualEdge{0, 0, -1.0,
                                {face_id(0, fx.i, fx.j - 1), face_id(0, fx.i, fx.j)},
                                fx.i > 0 ? face_id(1, fx.i - 1, fx.j) : -1};
        out[count++] = DualEdge{0, 1, +1.0,
                                {face_id(0, fx.i + 1, fx.j - 1), face_id(0, fx.i + 1, fx.j)},
                                fx.i + 1 < n_[0] ? face_id(1, fx.i + 1, fx.j) : -1};
    }
    return count;
}

std::vector<DualEdge> MacGrid::dual_edges(int face) const {
    std::array<DualEdge, 4> buf;
    const int n = dual_edges_of(face, buf);
    return std::vector<DualEdge>(buf.begin(), buf.begin() + n);
}

std::array<double, 2> MacGrid::cell_center(int c) const {
    const CellIndex cx = cell_index(c);
    return {lo_[0] + (cx.i + 0.5) * dx_[0], lo_[1] + (cx.j + 0.5) * dx_[1]};
}

std::array<double, 2> MacGrid::face_center(int f) const {
    const FaceIndex fx = face_index(f);
    if (fx.dir == 0) return {lo_[0] + fx.i * dx_[0], lo_[1] + (fx.j + 0.5) * dx_[1]};
    return {lo_[0] + (fx.i + 0.5) * dx_[0], lo_[1] + fx.j * dx_[1]};
}

} // namespace ripa
