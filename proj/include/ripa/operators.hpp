#pragma once

#include "ripa/fields.hpp"
#include "ripa/mac_grid.hpp"

namespace ripa {

/// Two-point gradient on internal faces, (|sigma|/|D_sigma|)(q_L - q_K);
/// vanishes on external faces.
FaceField gradient(const CellField& q, const MacGrid& g);

/// (1/|K|) sum over E(K) of |sigma| v_{sigma,K}.
CellField divergence(const FaceField& v, const MacGrid& g);

/// Discrete div-grad duality defect: integral of q div v plus integral of
/// grad q . v (zero in exact arithmetic for v vanishing on external faces).
double duality_residual(const CellField& q, const FaceField& v, const MacGrid& g);

} // namespace ripa
