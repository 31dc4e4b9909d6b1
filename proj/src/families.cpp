#include "strata/families.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace strata {

using cd = std::complex<double>;

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cd(0, -1), cd(0, 1), 0.0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

namespace {

ComplexMatrix bloch(double t, double p) {
  return (std::sin(t) * std::cos(p) * sigma_x() + std::sin(t) * std::sin(p) * sigma_y() +
          std::cos(t) * sigma_z()) /
         std::numbers::sqrt2;
}

std::pair<ComplexMatrix, ComplexMatrix> bloch_tangents(double t, double p) {
  ComplexMatrix dt = (std::cos(t) * std::cos(p) * sigma_x() + std::cos(t) * std::sin(p) * sigma_y() -
                      std::sin(t) * sigma_z()) /
                     std::numbers::sqrt2;
  ComplexMatrix dp = (-std::sin(t) * std::sin(p) * sigma_x() + std::sin(t) * std::cos(p) * sigma_y()) /
                     std::numbers::sqrt2;
  return {std::move(dt), std::move(dp)};
}

bool distinct(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) == xs.end();
}

}  // namespace

SurfaceFamily pauli_sphere() { return {GridKind::Sphere, bloch, bloch_tangents}; }

SurfaceFamily block_family(const std::vector<double>& below, const std::vector<double>& above) {
  if (!std::all_of(below.begin(), below.end(), [](double x) { return x < -1.0; }))
    throw std::invalid_argument("block family: eigenvalues below the sphere block must be < -1");
  if (!std::all_of(above.begin(), above.end(), [](double x) { return x > 1.0; }))
    throw std::invalid_argument("block family: eigenvalues above the sphere block must be > 1");
  if (!distinct(below) || !distinct(above))
    throw std::invalid_argument("block family: outer eigenvalues must be simple");

  const auto lo = static_cast<Eigen::Index>(below.size());
  const Eigen::Index n = lo + 2 + static_cast<Eigen::Index>(above.size());
  ComplexMatrix outer = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < lo; ++i) outer(i, i) = below[static_cast<std::size_t>(i)];
  for (std::size_t i = 0; i < above.size(); ++i) outer(lo + 2 + static_cast<Eigen::Index>(i), lo + 2 + static_cast<Eigen::Index>(i)) = above[i];

  SurfaceFamily f;
  f.kind = GridKind::Sphere;
  f.sampler = [outer, lo](double t, double p) {
    ComplexMatrix a = outer;
    a.block(lo, lo, 2, 2) = bloch(t, p);
    return a;
  };
  f.tangents = [n, lo](double t, double p) {
    auto [dt, dp] = bloch_tangents(t, p);
    ComplexMatrix bt = ComplexMatrix::Zero(n, n), bp = ComplexMatrix::Zero(n, n);
    bt.block(lo, lo, 2, 2) = dt;
    bp.block(lo, lo, 2, 2) = dp;
    return std::pair{bt, bp};
  };
  return f;
}

SurfaceFamily constant_surface(const ComplexMatrix& a0) {
  SurfaceFamily f;
  f.kind = GridKind::Closed;
  f.sampler = [a0](double, double) { return a0; };
  f.tangents = [a0](double, double) {
    ComplexMatrix z = ComplexMatrix::Zero(a0.rows(), a0.cols());
    return std::pair{z, z};
  };
  return f;
}

LoopFamily real_loop_2x2(int winding) {
  if (winding < 1) throw std::invalid_argument("loop winding must be positive");
  return {[winding](double t) {
    const double angle = 2.0 * std::numbers::pi * winding * t;
    RealMatrix a(2, 2);
    a << std::cos(angle), std::sin(angle), std::sin(angle), -std::cos(angle);
    return RealMatrix(a / std::numbers::sqrt2);
  }};
}

LoopFamily circle_loop(const RealMatrix& a0, const RealMatrix& b1, const RealMatrix& b2, double radius) {
  return {[=](double t) {
    const double angle = 2.0 * std::numbers::pi * t;
    return RealMatrix(a0 + radius * (std::cos(angle) * b1 + std::sin(angle) * b2));
  }};
}

}  // namespace strata
