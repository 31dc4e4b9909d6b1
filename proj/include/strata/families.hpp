#pragma once

// Builtin families of self-adjoint operators.

#include <vector>

#include "strata/curvature.hpp"

namespace strata {

/// Pauli matrices.
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

/// A(theta, phi) = (sin t cos p sx + sin t sin p sy + cos t sz) / sqrt 2 on the
/// sphere grid, with analytic tangents. Trace 0, Frobenius norm 1.
SurfaceFamily pauli_sphere();

/// diag(below) + pauli_sphere + diag(above). The lowest k = below.size() + 1
/// eigenvectors span the lower eigenline of the middle block plus the
/// `below` coordinates. Requires distinct entries, below < -1 < 1 < above.
SurfaceFamily block_family(const std::vector<double>& below, const std::vector<double>& above);

/// A(u, v) = a0 on a closed grid.
SurfaceFamily constant_surface(const ComplexMatrix& a0);

/// A(t) = (cos 2 pi w t sz + sin 2 pi w t sx) / sqrt 2, traversed w times.
LoopFamily real_loop_2x2(int winding = 1);

/// A(t) = a0 + radius (cos 2 pi t b1 + sin 2 pi t b2).
LoopFamily circle_loop(const RealMatrix& a0, const RealMatrix& b1, const RealMatrix& b2, double radius);

}  // namespace strata
