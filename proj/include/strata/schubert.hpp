#pragma once

// Partition and Schubert-symbol combinatorics for Grassmannians Gr_k(n).
//
// A Schubert cell of Gr_k(n) is indexed either by a 0/1 symbol of length n
// with k units, or equivalently by a partition fitting a k x (n-k) box. The
// summands of the partition are the numbers of zeros to the left of each unit.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

enum class FieldCase { Real, Hermitian };

/// Real dimension of a Schubert cell per unit of partition weight.
constexpr int cell_factor(FieldCase f) noexcept { return f == FieldCase::Real ? 1 : 2; }

/// Codimension of the eigenvalue-crossing locus {lambda_k = lambda_{k+1}}.
constexpr int codim_eps(FieldCase f) noexcept { return f == FieldCase::Real ? 2 : 3; }

std::string to_string(FieldCase f);
FieldCase parse_field_case(std::string_view s);

class BoxViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DomainViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Weakly decreasing sequence of positive integers.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  /// Parses "2,1" (empty string is the empty partition).
  static Partition parse(std::string_view text);

  std::span<const int> parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }
  int weight() const noexcept { return weight_; }
  int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  /// i-th part (0-based); zero past the end.
  int operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

  std::string str() const;

  bool operator==(const Partition& other) const noexcept { return parts_ == other.parts_; }
  auto operator<=>(const Partition& other) const noexcept { return parts_ <=> other.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// k x (n-k) box of Gr_k(n).
class BoxContext {
 public:
  BoxContext(int k, int n);

  int k() const noexcept { return k_; }
  int n() const noexcept { return n_; }
  int width() const noexcept { return n_ - k_; }
  int area() const noexcept { return k_ * (n_ - k_); }

  bool fits(const Partition& p) const noexcept;
  void require_fits(const Partition& p) const;

  bool operator==(const BoxContext&) const = default;

 private:
  int k_;
  int n_;
};

/// 0/1 sequence; position 1 is leftmost.
class SchubertSymbol {
 public:
  explicit SchubertSymbol(std::string_view bits);
  explicit SchubertSymbol(std::vector<std::uint8_t> bits);

  int n() const noexcept { return static_cast<int>(bits_.size()); }
  int k() const noexcept { return static_cast<int>(units_.size()); }
  /// d_1 < ... < d_k, 1-based.
  std::span<const int> unit_positions() const noexcept { return units_; }
  std::string str() const;

  bool operator==(const SchubertSymbol&) const = default;

 private:
  void index_units();

  std::vector<std::uint8_t> bits_;
  std::vector<int> units_;
};

Partition partition_from_symbol(const SchubertSymbol& sym);
SchubertSymbol symbol_from_partition(const Partition& p, const BoxContext& box);

/// All partitions in the box, grouped by weight 0..area. Within a weight the
/// order is reverse lexicographic ((2) before (1,1)).
std::vector<std::vector<Partition>> enumerate_box(const BoxContext& box);

/// Same partitions flattened in order of increasing weight.
std::vector<Partition> box_partitions(const BoxContext& box);

int cell_dimension(const Partition& p, const BoxContext& box, FieldCase field);

/// Degree -> number of Schubert classes of that real degree.
std::map<int, long long> betti_grassmannian(const BoxContext& box, FieldCase field);

/// Product of the one-row class (a) with the class of p: every partition in
/// the box obtained by adding a horizontal strip of a boxes, coefficient 1.
/// Result is sorted.
std::vector<Partition> pieri(int a, const Partition& p, const BoxContext& box);

/// Inclusion of the Schubert basis of Gr_{k-1}(n-1) into that of Gr_k(n).
Partition rho_k(const Partition& p, int k, int n);

/// True iff every partition has at most k-1 parts.
bool in_image_rho(std::span<const Partition> ps, int k);

long long binomial(int n, int k) noexcept;

}  // namespace strata
