#include "ripa/operators.hpp"

namespace ripa {

FaceField gradient(const CellField& q, const MacGrid& g) {
    FaceField out = FaceField::zeros(g);
    for (int f = 0; f < g.num_faces_total(); ++f) {
        if (g.is_boundary(f)) continue;
        const auto [k, l] = g.face_cells(f);
        const int dir = g.face_index(f).dir;
        const double c = g.face_measure(dir) / g.dual_volume(f);
        out[f] = c * (q[l] - q[k]);
    }
    return out;
}

CellField divergence(const FaceField& v, const MacGrid& g) {
    CellField out = CellField::zeros(g);
    const double inv_vol = 1.0 / g.cell_volume();
    for (int c = 0; c < g.num_cells(); ++c) {
        double sum = 0.0;
        for (int dir = 0; dir < g.dim(); ++dir) {
            const double meas = g.face_measure(dir);
            for (int side = 0; side < 2; ++side)
                sum += meas * MacGrid::outward_sign(side) * v[g.cell_face(c, dir, side)];
        }
        out[c] = sum * inv_vol;
    }
    return out;
}

double duality_residual(const CellField& q, const FaceField& v, const MacGrid& g) {
    const CellField div = divergence(v, g);
    const FaceField grad = gradient(q, g);
    double sum = 0.0;
    for (int c = 0; c < g.num_cells(); ++c) sum += g.cell_volume() * q[c] * div[c];
    for (int f = 0; f < g.num_faces_total(); ++f)
        if (g.is_internal(f)) sum += g.dual_volume(f) * grad[f] * v[f];
    return sum;
}

} // namespace ripa
