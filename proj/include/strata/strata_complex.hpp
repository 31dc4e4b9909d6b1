#pragma once

// Schubert model of the cochain complex
//
//   0 -> H(B) -d_1-> H(B, M^1) -d_2-> ... -d_{n-1}-> H(B, S) -> 0
//
// attached to the filtration of self-adjoint operators by the multiplicity
// of the ground state. Term k (1 <= k <= n) is H(Gr_{k-1}(n-1)) shifted by the
// Thom degree nu_{k-1} + 1; each differential raises degree by codim_eps.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/homalg.hpp"
#include "strata/schubert.hpp"

namespace strata {

struct ComplexSpec {
  int n;
  FieldCase field;

  ComplexSpec(int n, FieldCase field);
};

/// Rank of the normal bundle whose Thom space models M^k.
constexpr int nu(int k, FieldCase field) noexcept {
  return field == FieldCase::Real ? k * (k + 1) / 2 + k - 1 : k * k + 2 * k - 1;
}

/// Real dimension of the ball B of traceless self-adjoint operators.
constexpr int ball_dimension(int n, FieldCase field) noexcept {
  return field == FieldCase::Real ? n * (n + 1) / 2 - 1 : n * n - 1;
}

struct TermBasis {
  int k = 0;
  std::vector<Partition> basis;
  std::vector<int> degrees;

  std::size_t dim() const noexcept { return basis.size(); }
  /// Index of p in basis, or basis.size() if absent.
  std::size_t index_of(const Partition& p) const;
};

TermBasis term_basis(int k, const ComplexSpec& spec);

/// Matrix of d_k: rows index term k+1, columns index term k.
struct DifferentialModel {
  int k = 0;
  IntMatrix matrix;
};

DifferentialModel differential(int k, const ComplexSpec& spec);

/// Number of basis classes zeta of term k whose Pieri product
/// rho_k(zeta) * w stays inside the image of rho_k.
long long kernel_dim_via_pieri(int k, const ComplexSpec& spec);

struct ExactnessReport {
  int n = 0;
  FieldCase field = FieldCase::Real;
  std::vector<TermBasis> terms;
  std::vector<long long> kernels_matrix;  // per d_k, k = 1..n-1
  std::vector<long long> kernels_pieri;
  std::vector<long long> kernels_expected;
  HomologySummary homology;
  std::map<std::string, bool> checks;
  std::vector<std::string> failures;

  bool passed() const noexcept { return failures.empty(); }
  nlohmann::ordered_json to_json() const;
};

/// Builds every term and differential and audits the complex:
///   term_dims, endpoint_degrees, d_squared_zero, homology_zero,
///   kernel_dims, degree_audit, graded_exactness.
ExactnessReport verify_exactness(const ComplexSpec& spec);

/// Reduced Betti numbers of M^k: Gr_k(n-1) classes shifted by nu_k.
std::map<int, long long> betti_Mk(int k, const ComplexSpec& spec);

}  // namespace strata
