#pragma once

// Dense self-adjoint operators, templated on the scalar (double for the real
// case, std::complex<double> for the Hermitian case).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "strata/schubert.hpp"

namespace strata {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = Mat<double>;
using ComplexMatrix = Mat<std::complex<double>>;

template <typename Scalar>
inline constexpr bool is_complex_v = !std::is_same_v<Scalar, typename Eigen::NumTraits<Scalar>::Real>;

template <typename Scalar>
constexpr FieldCase field_of() noexcept {
  return is_complex_v<Scalar> ? FieldCase::Hermitian : FieldCase::Real;
}

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ScalarOperator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotInMk : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateCollapse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Square matrix equal to its adjoint up to 1e-12 (1 + |A|_max).
template <typename Scalar>
class SelfAdjointOperator {
 public:
  using MatrixType = Mat<Scalar>;

  explicit SelfAdjointOperator(MatrixType m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("self-adjoint operator must be square");
    if (m_.rows() == 0) throw std::invalid_argument("self-adjoint operator must be nonempty");
    const double asym = max_abs(m_ - m_.adjoint());
    if (!(asym <= 1e-12 * (1.0 + max_abs(m_))))
      throw std::invalid_argument("matrix is not self-adjoint (asymmetry " + std::to_string(asym) + ")");
  }

  const MatrixType& matrix() const noexcept { return m_; }
  Eigen::Index size() const noexcept { return m_.rows(); }
  static constexpr FieldCase field() noexcept { return field_of<Scalar>(); }

 private:
  MatrixType m_;
};

using RealOperator = SelfAdjointOperator<double>;
using HermitianOperator = SelfAdjointOperator<std::complex<double>>;

template <typename Scalar>
struct Spectrum {
  Eigen::VectorXd values;  // ascending
  Mat<Scalar> frame;       // column i is an eigenvector for values[i]
  double residual = 0.0;   // max_i |A e_i - lambda_i e_i|
  int sweeps = 0;

  Eigen::Index size() const noexcept { return values.size(); }
  /// lambda_i with i 1-based.
  double lambda(int i) const { return values(i - 1); }
};

/// Relative degeneracy threshold: gaps below rel_tol * (1 + spread) merge.
struct GapTolerance {
  double rel_tol = 1e-8;

  double threshold(const Eigen::VectorXd& ascending) const {
    const double spread = ascending.size() ? ascending(ascending.size() - 1) - ascending(0) : 0.0;
    return rel_tol * (1.0 + spread);
  }
};

namespace detail {

template <typename Scalar>
double off_diagonal_norm(const Mat<Scalar>& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi eigensolver. Each rotation J = W R W^* combines the phase
/// W = diag(1, conj(a_pq)/|a_pq|) with a real plane rotation R; A <- J^* A J.
template <typename Scalar>
Spectrum<Scalar> jacobi_eigh(const SelfAdjointOperator<Scalar>& op) {
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = op.size();
  Mat<Scalar> a = op.matrix();
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = Scalar(std::real(a(i, i)));
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);

  const double scale = a.norm();
  const double target = 1e-13 * scale;
  constexpr int kMaxSweeps = 50;
  int sweep = 0;
  double off = detail::off_diagonal_norm(a);
  while (off > target && sweep < kMaxSweeps) {
    ++sweep;
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double r = abs(a(p, q));
        if (r == 0.0) continue;
        const Scalar phase = a(p, q) / r;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (abs(tau) + sqrt(1.0 + tau * tau));
        const double c = 1.0 / sqrt(1.0 + t * t);
        const double s = t * c;
        const Scalar sp = s * phase;        // J_pq
        const Scalar sq = s * Eigen::numext::conj(phase);  // -J_qp

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - sq * akq;
          a(k, q) = sp * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = sq * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - sq * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
      }
    off = detail::off_diagonal_norm(a);
  }
  if (off > target && off > 1e-9 * scale)
    throw NoConvergence("Jacobi eigensolver did not converge in " + std::to_string(kMaxSweeps) +
                        " sweeps (off-diagonal norm " + std::to_string(off) + ")");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::real(a(x, x)) < std::real(a(y, y));
  });

  Spectrum<Scalar> spec;
  spec.values.resize(n);
  spec.frame.resize(n, n);
  spec.sweeps = sweep;
  for (Eigen::Index i = 0; i < n; ++i) {
    spec.values(i) = std::real(a(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i)]));
    spec.frame.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  const Mat<Scalar> resid = op.matrix() * spec.frame - spec.frame * spec.values.asDiagonal();
  spec.residual = n ? resid.colwise().norm().maxCoeff() : 0.0;
  return spec;
}

/// E diag(values) E^*.
template <typename Scalar>
Mat<Scalar> reconstruct(const Eigen::VectorXd& values, const Mat<Scalar>& frame) {
  return frame * values.cast<Scalar>().asDiagonal() * frame.adjoint();
}

/// (A - tr(A)/n I) / |A - tr(A)/n I|_F: trace 0, Frobenius norm 1.
template <typename Scalar>
SelfAdjointOperator<Scalar> normalize_to_sphere(const SelfAdjointOperator<Scalar>& op) {
  const Eigen::Index n = op.size();
  const Scalar mean = op.matrix().trace() / static_cast<double>(n);
  Mat<Scalar> centered = op.matrix();
  centered.diagonal().array() -= Scalar(std::real(mean));
  const double norm = centered.norm();
  if (!(norm > 1e-12 * (1.0 + op.matrix().norm())))
    throw ScalarOperator("operator is scalar and has no image on the sphere");
  centered /= norm;
  centered = (centered + centered.adjoint()).eval() * 0.5;
  return SelfAdjointOperator<Scalar>(std::move(centered));
}

struct Multiplicity {
  double value;
  int count;
};

/// Maximal runs of eigenvalues whose consecutive gaps fall below the threshold.
template <typename Scalar>
std::vector<Multiplicity> multiplicities(const Spectrum<Scalar>& s, GapTolerance tol = {}) {
  std::vector<Multiplicity> runs;
  const double thr = tol.threshold(s.values);
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= s.size(); ++i) {
    if (i < s.size() && s.values(i) - s.values(i - 1) < thr) continue;
    const Eigen::Index len = i - start;
    runs.push_back({s.values.segment(start, len).mean(), static_cast<int>(len)});
    start = i;
  }
  return runs;
}

struct StratumMembership {
  bool in_Sigma;  // lambda_k != lambda_{k+1}
  bool in_M_k;    // lambda_1 == lambda_{k+1}
  bool in_W_k;    // lambda_{k+1} == lambda_n
};

inline StratumMembership stratum_membership(const Eigen::VectorXd& lambda, int k, GapTolerance tol = {}) {
  const auto n = static_cast<int>(lambda.size());
  if (k < 1 || k > n - 1)
    throw std::out_of_range("stratum level k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(n - 1) + "]");
  const double thr = tol.threshold(lambda);
  return {lambda(k) - lambda(k - 1) >= thr, lambda(k) - lambda(0) < thr, lambda(n - 1) - lambda(k) < thr};
}

template <typename Scalar>
StratumMembership stratum_membership(const SelfAdjointOperator<Scalar>& op, int k, GapTolerance tol = {}) {
  if (k < 1 || k > op.size() - 1)
    throw std::out_of_range("stratum level k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(op.size() - 1) + "]");
  return stratum_membership(jacobi_eigh(op).values, k, tol);
}

/// Eigenvalue-only retraction of M^k onto W_k: lambda_{k+1..n} are replaced
/// by their mean, eigenvectors are kept, and the result is put back on S.
template <typename Scalar>
SelfAdjointOperator<Scalar> retract_phi(const SelfAdjointOperator<Scalar>& op, int k, GapTolerance tol = {}) {
  const auto n = static_cast<int>(op.size());
  if (k < 1 || k > n - 1)
    throw std::out_of_range("retraction level k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(n - 1) + "]");
  const Spectrum<Scalar> s = jacobi_eigh(op);
  const double thr = tol.threshold(s.values);
  if (!(s.values(k) - s.values(0) > thr))
    throw NotInMk("operator lies in M_k: lambda_1 = lambda_" + std::to_string(k + 1));

  Eigen::VectorXd values = s.values;
  const double mean = values.tail(n - k).mean();
  if (values(k - 1) > mean + thr)
    throw DegenerateCollapse("lambda_" + std::to_string(k) + " exceeds the averaged top block");
  values.tail(n - k).setConstant(mean);
  Mat<Scalar> rebuilt = reconstruct<Scalar>(values, s.frame);
  rebuilt = (rebuilt + rebuilt.adjoint()).eval() * 0.5;
  return normalize_to_sphere(SelfAdjointOperator<Scalar>(std::move(rebuilt)));
}

}  // namespace strata
