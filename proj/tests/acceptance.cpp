// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "random_ops.hpp"
#include "strata/curvature.hpp"
#include "strata/families.hpp"
#include "strata/homalg.hpp"
#include "strata/spectral.hpp"
#include "strata/strata_complex.hpp"

using namespace strata;
using namespace strata::testing;
using cd = std::complex<double>;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail << "exception: " << e.what() << "; ";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && elapsed > limit_seconds) {
    v.ok = false;
    v.detail << "runtime " << elapsed << " s exceeds " << limit_seconds << " s; ";
  }
  if (!v.ok) ++failures;
  std::printf("%s [%d] %s (%.2f s%s) %s\n", v.ok ? "PASS" : "FAIL", id, name, elapsed,
              limit_seconds > 0 ? (" of " + std::to_string(static_cast<int>(limit_seconds)) + " s").c_str() : "",
              v.detail.str().c_str());
  std::fflush(stdout);
}

// 1 -------------------------------------------------------------------------

void exactness_sweep(Verdict& v) {
  int runs = 0;
  for (FieldCase f : {FieldCase::Real, FieldCase::Hermitian})
    for (int n = 2; n <= 10; ++n) {
      const ComplexSpec spec(n, f);
      const ExactnessReport r = verify_exactness(spec);
      const std::string tag = to_string(f) + " n=" + std::to_string(n);
      v.require(r.passed(), tag + " report: " + (r.failures.empty() ? "" : r.failures.front()));
      for (const auto& t : r.terms)
        v.require(static_cast<long long>(t.dim()) == binomial(n - 1, t.k - 1), tag + " term dim");
      for (int k = 1; k <= n - 1; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        v.require(r.kernels_matrix[i] == binomial(n - 2, k - 2), tag + " kernel dim");
        v.require(r.kernels_matrix[i] == r.kernels_pieri[i], tag + " matrix vs pieri kernel");
        const IntMatrix d = differential(k, spec).matrix;
        for (std::size_t row = 0; row < d.rows(); ++row)
          for (std::size_t col = 0; col < d.cols(); ++col)
            if (sgn(d(row, col)) != 0)
              v.require(r.terms[i + 1].degrees[row] - r.terms[i].degrees[col] == (f == FieldCase::Real ? 2 : 3),
                        tag + " degree shift");
      }
      for (const auto& h : r.homology.terms) v.require(h.zero() && h.torsion.empty(), tag + " homology");
      ++runs;
    }
  v.detail << runs << " complexes exact";
}

// 2 -------------------------------------------------------------------------

void intro_example(Verdict& v) {
  const ComplexSpec spec(2, FieldCase::Hermitian);
  const ExactnessReport r = verify_exactness(spec);
  v.require(r.terms.size() == 2, "two terms");
  v.require(r.terms[0].dim() == 1 && r.terms[0].degrees == std::vector<int>{0}, "term 1 is (dim 1, degree 0)");
  v.require(r.terms[1].dim() == 1 && r.terms[1].degrees == std::vector<int>{3}, "term 2 is (dim 1, degree 3)");
  const IntMatrix d = differential(1, spec).matrix;
  v.require(d.rows() == 1 && d.cols() == 1 && abs(d(0, 0)) == 1, "d_1 is bijective");
  v.require(r.passed(), "exact");
  v.detail << "0 -> Z[0] -(" << d(0, 0).get_si() << ")-> Z[3] -> 0";
}

// 3, 4 ----------------------------------------------------------------------

void chern_anchor(Verdict& v, const SurfaceFamily& family, int k, GridSize grid) {
  const SampledSurface s = sample_surface(family, grid);
  const double form = chern_via_form(s, k);
  const FhsResult fhs = chern_fhs(s, k);
  v.require(std::abs(std::abs(form) - 1.0) <= 0.02, "|form| within 0.02 of 1");
  v.require(fhs.chern == std::lround(form), "fhs equals round(form)");
  v.require(std::abs(fhs.chern) == 1, "|fhs| = 1");
  v.detail.precision(12);
  v.detail << "form " << form << ", fhs " << fhs.chern;
}

// 5 -------------------------------------------------------------------------

void holonomy_anchor(Verdict& v) {
  const int once = sw1_holonomy(sample_loop(real_loop_2x2(1), 400), 1);
  const int twice = sw1_holonomy(sample_loop(real_loop_2x2(2), 400), 1);
  RealMatrix b1(3, 3), b2(3, 3);
  b1 << 0, 1, 0, 1, 0, 0, 0, 0, 0;
  b2 << 1, 0, 0, 0, -1, 0, 0, 0, 0;
  const RealMatrix a0 = Eigen::Vector3d(-1, 0, 1).asDiagonal();
  const int contractible = sw1_holonomy(sample_loop(circle_loop(a0, b1, b2, 0.1), 400), 1);
  v.require(once == -1, "real_loop_2x2 gives -1");
  v.require(twice == 1, "doubled loop gives +1");
  v.require(contractible == 1, "contractible loop gives +1");
  v.detail << "once " << once << ", twice " << twice << ", contractible " << contractible;
}

// 6 -------------------------------------------------------------------------

void omega_suite(Verdict& v) {
  std::mt19937_64 rng(606);
  double worst_algebra = 0, worst_gauge = 0, worst_order = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const int k = 1 + (trial / 3) % static_cast<int>(n - 1);
    const HermitianOperator a = normalize_to_sphere(HermitianOperator(random_self_adjoint<cd>(rng, n)));
    const ComplexMatrix b1 = random_self_adjoint<cd>(rng, n);
    const ComplexMatrix b2 = random_self_adjoint<cd>(rng, n);
    const ComplexMatrix b3 = random_self_adjoint<cd>(rng, n);
    const Spectrum<cd> s = jacobi_eigh(a);
    const double w = omega_k(s, b1, b2, k);
    const double scale = std::max(1.0, std::abs(w));

    const double alpha = 0.6, beta = -1.7;
    const double errs[] = {
        std::abs(w + omega_k(s, b2, b1, k)),
        std::abs(omega_k(s, alpha * b1 + beta * b3, b2, k) - alpha * w - beta * omega_k(s, b3, b2, k)),
        std::abs(omega_k(s, b1, alpha * b2 + beta * b3, k) - alpha * w - beta * omega_k(s, b1, b3, k)),
    };
    for (double e : errs) worst_algebra = std::max(worst_algebra, e / scale);

    Spectrum<cd> rephased = s;
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (Eigen::Index i = 0; i < n; ++i) rephased.frame.col(i) *= std::polar(1.0, angle(rng));
    worst_gauge = std::max(worst_gauge, std::abs(omega_k(rephased, b1, b2, k) - w) / scale);

    // centred plaquette of side h in the (b1, b2) plane, h well inside the gap
    const ComplexMatrix t1 = b1.normalized(), t2 = b2.normalized();
    const double wt = omega_k(s, t1, t2, k);
    const double gap = (s.values.tail(n - 1) - s.values.head(n - 1)).minCoeff();
    double h = 0.05 * gap;
    double diffs[3];
    for (double& d : diffs) {
      std::vector<ComplexMatrix> corners;
      for (auto [du, dv] : {std::pair{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}})
        corners.push_back(a.matrix() + h * du * t1 + h * dv * t2);
      d = std::abs(loop_field_strength(corners, k) / (2 * std::numbers::pi) - wt * h * h);
      h *= 0.5;
    }
    const double floor = 1e-13 * std::abs(wt) * 0.0025 * gap * gap + 1e-18;
    for (int level = 0; level < 2; ++level) {
      if (diffs[level] < floor) continue;
      const double order = std::log2(diffs[level] / std::max(diffs[level + 1], floor));
      worst_order = std::min(worst_order, order);
    }
  }
  v.require(worst_algebra <= 1e-12, "antisymmetry/bilinearity within 1e-12");
  v.require(worst_gauge <= 1e-12, "rephasing within 1e-12");
  v.require(worst_order >= 2.0, "plaquette difference decays at order >= 2");
  v.detail << "max algebra err " << worst_algebra << ", max gauge err " << worst_gauge
           << ", min observed plaquette order " << worst_order;
}

// 7 -------------------------------------------------------------------------

template <typename Scalar>
void eigensolver_field(Verdict& v, std::uint64_t seed, double& worst_backward, double& worst_conj) {
  std::mt19937_64 rng(seed);
  for (Eigen::Index n = 2; n <= 8; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      const Mat<Scalar> a = random_self_adjoint<Scalar>(rng, n);
      const Spectrum<Scalar> s = jacobi_eigh(SelfAdjointOperator<Scalar>(a));
      const double scale = 1.0 + a.norm();
      const double recon = max_abs(reconstruct<Scalar>(s.values, s.frame) - a);
      const double ortho = max_abs(s.frame.adjoint() * s.frame - Mat<Scalar>::Identity(n, n));
      worst_backward = std::max(worst_backward, std::max(recon, ortho) / scale);
      for (Eigen::Index i = 1; i < n; ++i) v.require(s.values(i - 1) <= s.values(i), "ascending order");
      const Mat<Scalar> q = random_unitary<Scalar>(rng, n);
      Mat<Scalar> b = q * a * q.adjoint();
      b = (b + b.adjoint()).eval() * 0.5;
      worst_conj = std::max(worst_conj, max_abs(jacobi_eigh(SelfAdjointOperator<Scalar>(b)).values - s.values));
    }
}

void eigensolver_suite(Verdict& v) {
  double backward = 0, conj = 0;
  eigensolver_field<double>(v, 707, backward, conj);
  eigensolver_field<cd>(v, 708, backward, conj);
  v.require(backward <= 1e-10, "reconstruction/orthonormality within 1e-10 (1 + |A|)");
  v.require(conj <= 1e-9, "conjugation invariance within 1e-9");
  v.detail << "2800 matrices, max scaled backward err " << backward << ", max conjugation drift " << conj;
}

// 8 -------------------------------------------------------------------------

void gap_statistics(Verdict& v) {
  const auto scans = random_segment_scans(FieldCase::Real, 4, 1, 100, 10000, 808);
  double smallest = 1e300;
  int closings = 0;
  for (const auto& s : scans) {
    smallest = std::min(smallest, s.min_gap);
    closings += s.min_gap < 1e-10;
  }
  v.require(closings == 0, "no gap closings on random segments");

  // lambda_2 = lambda_3 planted at t = 0.37, i.e. sample 3700 of 10001,
  // inside a randomly rotated copy of the block family's centre
  std::mt19937_64 rng(809);
  const RealMatrix q = random_unitary<double>(rng, 4);
  const std::size_t samples = 10001, planted = 3700;
  auto path = [&](double t) -> RealMatrix {
    RealMatrix a = RealMatrix::Zero(4, 4);
    a(0, 0) = -2.0;
    a(3, 3) = 2.0;
    a(1, 2) = a(2, 1) = (t - 0.37) / std::numbers::sqrt2;
    RealMatrix b = q * a * q.transpose();
    return (b + b.transpose()) * 0.5;
  };
  const GapScan engineered = min_gap_scan<double>(path, 2, samples);
  const auto offset = static_cast<long>(engineered.index) - static_cast<long>(planted);
  v.require(engineered.min_gap < 1e-8, "engineered path gap below 1e-8");
  v.require(std::abs(offset) <= 1, "engineered minimum within one sample of the planted location");
  v.detail << "random: min gap " << smallest << ", closings " << closings << "; engineered: gap "
           << engineered.min_gap << " at sample " << engineered.index << " (planted " << planted << ")";
}

// 9 -------------------------------------------------------------------------

void snf_oracle(Verdict& v) {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(rng, -5, 5);
    const IntMatrix M = to_int_matrix(m);
    const SmithForm f = smith_normal_form(M);
    const MinorSummary oracle = minor_oracle(m);
    Integer product = 1;
    for (const auto& d : f.factors) product *= d;
    const std::string tag = "trial " + std::to_string(trial);
    v.require(f.rank() == oracle.rank, tag + " rank");
    v.require(product == Integer(static_cast<long>(oracle.gcd)), tag + " product of invariant factors");
    for (std::size_t i = 0; i + 1 < f.factors.size(); ++i)
      v.require(f.factors[i + 1] % f.factors[i] == 0, tag + " divisibility");
    v.require(abs(determinant(f.U)) == 1 && abs(determinant(f.V)) == 1, tag + " unimodular");
    v.require(f.U * M * f.V == f.S, tag + " U M V = S");
  }
  v.detail << "200 matrices";
}

}  // namespace

int main() {
  criterion(1, "exactness sweep n=2..10, both cases", 10, exactness_sweep);
  criterion(2, "n=2 hermitian complex", 0, intro_example);
  criterion(3, "pauli_sphere Chern number, 200x100", 5,
            [](Verdict& v) { chern_anchor(v, pauli_sphere(), 1, {200, 100}); });
  criterion(4, "block family Chern number, n=4 k=2", 10,
            [](Verdict& v) { chern_anchor(v, block_family({-2.0}, {2.0}), 2, {200, 100}); });
  criterion(5, "Stiefel-Whitney holonomy", 0, holonomy_anchor);
  criterion(6, "omega_k property suite", 0, omega_suite);
  criterion(7, "eigensolver suite", 0, eigensolver_suite);
  criterion(8, "gap statistics on random and engineered paths", 30, gap_statistics);
  criterion(9, "Smith normal form against gcd of minors", 0, snf_oracle);
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
