#pragma once

#include <array>
#include <vector>

namespace ripa {

struct CellIndex {
    int i = 0;
    int j = 0;
};

struct FaceIndex {
    int dir = 0;
    int i = 0;
    int j = 0;
};

/// One edge of the dual cell D_sigma attached to an internal face sigma.
///
/// The mass flux through the edge is half the sum of the fluxes through the
/// two primal faces listed in `primal_faces` (both taken with the +e_dir
/// orientation); `orientation` converts that value to the outward flux of
/// D_sigma. `neighbor_face` is the face sigma' whose dual cell sits on the
/// other side, or -1 when the edge lies on the domain boundary (in which
/// case the flux is zero because boundary velocities vanish).
struct DualEdge {
    int dir = 0;
    int side = 0;
    double orientation = 1.0;
    std::array<int, 2> primal_faces{-1, -1};
    int neighbor_face = -1;
};

/// Uniform rectangular MAC mesh in one or two dimensions.
///
/// Scalars live on primal cells K, the i-th velocity component on faces with
/// normal e^(i). Internal faces sigma = K|L are oriented so that K is the
/// cell on the lower-coordinate side; the outward normal of K at sigma is
/// +e^(i). Dual cells D_sigma are the standard symmetric MAC control volumes
/// made of the two half cells next to sigma, so |D_{K,sigma}| = |K|/2.
///
/// Cells are numbered row-major by lattice coordinate; faces are numbered
/// direction-major (all x-faces first), row-major within a direction. In 1d
/// the transverse extent is 1, so |sigma| = 1 and |D_sigma| = dx.
///
/// Immutable after construction; safe to share between threads.
class MacGrid {
public:
    static MacGrid uniform_1d(double a, double b, int n);
    static MacGrid uniform_2d(std::array<double, 2> lo, std::array<double, 2> hi,
                              std::array<int, 2> n);

    int dim() const { return dim_; }
    double lo(int axis) const { return lo_[axis]; }
    double hi(int axis) const { return hi_[axis]; }
    int n_cells(int axis) const { return n_[axis]; }
    double dx(int axis) const { return dx_[axis]; }

    int num_cells() const { return n_[0] * n_[1]; }
    int num_faces(int dir) const;
    int num_faces_total() const { return nfaces_total_; }
    int face_offset(int dir) const { return dir == 0 ? 0 : nfaces_x_; }

    /// |K| (uniform, so a single scalar)
    double cell_volume() const { return vol_; }
    /// |sigma| for faces with normal `dir`
    double face_measure(int dir) const { return face_measure_[dir]; }
    /// |D_{K,sigma}| = |K|/2
    double half_dual_volume() const { return 0.5 * vol_; }
    /// |D_sigma|: |K| for internal faces, |K|/2 for boundary faces
    double dual_volume(int face) const { return is_boundary(face) ? 0.5 * vol_ : vol_; }
    /// |dK| (sum of the face measures of one cell)
    double cell_perimeter() const { return perimeter_; }

    int cell_id(int i, int j = 0) const { return j * n_[0] + i; }
    CellIndex cell_index(int c) const { return {c % n_[0], c / n_[0]}; }
    int face_id(int dir, int i, int j = 0) const;
    FaceIndex face_index(int f) const;

    bool is_boundary(int face) const;
    bool is_internal(int face) const { return !is_boundary(face); }

    /// Cells [K, L] adjacent to a face, K on the lower-coordinate side;
    /// -1 where the face touches the boundary.
    std::array<int, 2> face_cells(int face) const;
    /// Face of cell c with normal `dir` on side 0 (lower) or 1 (upper).
    int cell_face(int c, int dir, int side) const;
    /// e^(dir) . nu_{sigma,K} for the cell that has the face on `side`.
    static double outward_sign(int side) { return side == 0 ? -1.0 : 1.0; }

    /// Enumerates the 2*dim edges of D_sigma; throws for boundary faces.
    int dual_edges_of(int face, std::array<DualEdge, 4>& out) const;
    std::vector<DualEdge> dual_edges(int face) const;

    std::array<double, 2> cell_center(int c) const;
    std::array<double, 2> face_center(int f) const;

private:
    MacGrid() = default;

    int dim_ = 1;
    std::array<double, 2> lo_{0.0, 0.0};
    std::array<double, 2> hi_{1.0, 1.0};
    std::array<int, 2> n_{1, 1};
    std::array<double, 2> dx_{1.0, 1.0};
    std::array<double, 2> face_measure_{1.0, 1.0};
    double vol_ = 1.0;
    double perimeter_ = 2.0;
    int nfaces_x_ = 0;
    int nfaces_y_ = 0;
    int nfaces_total_ = 0;
};

} // namespace ripa
