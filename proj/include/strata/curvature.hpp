#pragma once

// Curvature of the bundle of the k lowest eigenvectors over families of
// self-adjoint operators: the closed two-form Omega_k, Chern numbers over
// closed surfaces (by integrating Omega_k and by lattice field strength),
// first Stiefel-Whitney holonomy over real loops, and eigenvalue-gap scans.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strata/spectral.hpp"

namespace strata {

class DegenerateAtK : public std::runtime_error {
 public:
  explicit DegenerateAtK(const std::string& what, double u = std::numeric_limits<double>::quiet_NaN(),
                         double v = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(what), u_(u), v_(v) {}

  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

 private:
  double u_;
  double v_;
};

class SingularLink : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Omega_k(A)(B1, B2) = sum_{i<=k<j} det_R(<B1 e_i, e_j>, <B2 e_i, e_j>) / (pi (l_i - l_j)^2),
/// where det_R(z1, z2) = Re z1 Im z2 - Im z1 Re z2 and <x, y> = y^* x.
/// The spectrum must have lambda_{k+1} > lambda_k.
double omega_k(const Spectrum<std::complex<double>>& spectrum, const ComplexMatrix& b1,
               const ComplexMatrix& b2, int k);

/// Checked entry point: throws DegenerateAtK when the k-gap is below tolerance.
double omega_k(const HermitianOperator& a, const HermitianOperator& b1, const HermitianOperator& b2,
               int k, GapTolerance tol = {});

enum class GridKind {
  Sphere,  // u in (0, pi) at cell centres, v in [0, 2 pi) periodic
  Closed,  // unit torus, both directions periodic
};

struct GridSize {
  int nu;
  int nv;

  /// "200x100"
  static GridSize parse(const std::string& text);
};

using SurfaceSampler = std::function<ComplexMatrix(double, double)>;
using TangentSampler = std::function<std::pair<ComplexMatrix, ComplexMatrix>(double, double)>;

struct SurfaceFamily {
  GridKind kind = GridKind::Sphere;
  SurfaceSampler sampler;
  TangentSampler tangents;  // optional analytic (dA/du, dA/dv)
};

/// A family evaluated on a grid; values are stored row-major in (i, j).
struct SampledSurface {
  GridKind kind = GridKind::Closed;
  int nu = 0;
  int nv = 0;
  std::vector<ComplexMatrix> values;
  std::vector<ComplexMatrix> du_tangent;  // empty unless analytic
  std::vector<ComplexMatrix> dv_tangent;

  double du() const noexcept;
  double dv() const noexcept;
  double u(int i) const noexcept;
  double v(int j) const noexcept;
  const ComplexMatrix& at(int i, int j) const { return values[static_cast<std::size_t>(i * nv + j)]; }
  bool has_tangents() const noexcept { return !du_tangent.empty(); }
};

SampledSurface sample_surface(const SurfaceFamily& family, GridSize grid);

/// Wraps stored matrices; finite differences will be used for tangents.
SampledSurface surface_from_grid(GridKind kind, int nu, int nv, std::vector<ComplexMatrix> values);

/// Riemann sum of Omega_k(dA/du, dA/dv) du dv. Raw value, not rounded.
double chern_via_form(const SampledSurface& surface, int k, GapTolerance tol = {});

struct FhsResult {
  long chern = 0;
  double raw = 0.0;  // total field strength / 2 pi before rounding
};

/// Lattice Chern number of the k lowest bands from k-frame overlap determinants.
FhsResult chern_fhs(const SampledSurface& surface, int k);

/// Same for the bands first .. first+count-1 (0-based).
FhsResult band_chern_fhs(const SampledSurface& surface, int first, int count);

/// Field strength arg(U_01 U_12 U_23 U_30) of the closed lattice loop through
/// the given operators, with U_ab = det(F_a^* F_b) over the k lowest bands.
double loop_field_strength(std::span<const ComplexMatrix> corners, int k);

struct LoopFamily {
  std::function<RealMatrix(double)> sampler;  // t in [0, 1], A(0) = A(1)
};

/// Periodic samples A(i / steps), i < steps.
struct SampledLoop {
  std::vector<RealMatrix> samples;
};

SampledLoop sample_loop(const LoopFamily& family, int steps);

/// Sign of the determinant of the parallel-transported lowest k-frame
/// expressed in the starting frame.
int sw1_holonomy(const SampledLoop& loop, int k, GapTolerance tol = {});

struct GapScan {
  double min_gap = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
  double argmin = 0.0;  // parameter value of the minimising sample
};

/// min over t_i = i / (samples - 1) of lambda_{k+1}(A(t_i)) - lambda_k(A(t_i)).
template <typename Scalar>
GapScan min_gap_scan(const std::function<Mat<Scalar>(double)>& path, int k, std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("gap scan needs at least one sample");
  GapScan scan;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
    const Spectrum<Scalar> s = jacobi_eigh(SelfAdjointOperator<Scalar>(path(t)));
    if (k < 1 || k >= s.size()) throw std::out_of_range("gap scan level k out of range");
    const double gap = s.values(k) - s.values(k - 1);
    if (gap < scan.min_gap) scan = {gap, i, t};
  }
  return scan;
}

/// Gap scan over a list of stored samples; argmin is index / (size - 1).
template <typename Scalar>
GapScan min_gap_scan(std::span<const Mat<Scalar>> samples, int k) {
  const std::size_t count = samples.size();
  return min_gap_scan<Scalar>(
      [&](double t) -> Mat<Scalar> {
        const auto i = static_cast<std::size_t>(std::llround(t * static_cast<double>(count - 1)));
        return samples[i];
      },
      k, count);
}

/// One scan per trial along t -> normalize((1 - t) A + t B) with A, B
/// independent (G + G^*) / 2 Gaussian samples. Trial i draws from a generator
/// seeded by (seed, i), so results do not depend on the thread count.
std::vector<GapScan> random_segment_scans(FieldCase field, int n, int k, int trials, std::size_t samples,
                                          std::uint64_t seed);

struct GapScan2D {
  double min_gap = std::numeric_limits<double>::infinity();
  double u = 0.0;
  double v = 0.0;
};

/// Two-parameter scan over the unit square on an nu x nv lattice (endpoints included).
template <typename Scalar>
GapScan2D min_gap_scan(const std::function<Mat<Scalar>(double, double)>& family, int k, int nu, int nv) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("gap scan grid must be nonempty");
  GapScan2D scan;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double u = nu == 1 ? 0.0 : static_cast<double>(i) / (nu - 1);
      const double v = nv == 1 ? 0.0 : static_cast<double>(j) / (nv - 1);
      const Spectrum<Scalar> s = jacobi_eigh(SelfAdjointOperator<Scalar>(family(u, v)));
      if (k < 1 || k >= s.size()) throw std::out_of_range("gap scan level k out of range");
      const double gap = s.values(k) - s.values(k - 1);
      if (gap < scan.min_gap) scan = {gap, u, v};
    }
  return scan;
}

}  // namespace strata
