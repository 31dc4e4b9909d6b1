#pragma once

// Exact linear algebra over GF(2) and the integers.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace strata {

using Integer = mpz_class;

/// Dense bit matrix, one row per run of 64-bit words.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols);
  GF2Matrix(std::initializer_list<std::initializer_list<int>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (row(r)[c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value) noexcept;

  std::uint64_t* row(std::size_t r) noexcept { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const noexcept { return bits_.data() + r * words_; }
  std::size_t words_per_row() const noexcept { return words_; }

  static GF2Matrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

std::size_t rank_gf2(GF2Matrix m);

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  IntMatrix transpose() const;
  IntMatrix block(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  GF2Matrix mod2() const;

  static IntMatrix identity(std::size_t n);

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

/// U * M * V = S with S diagonal, factors d_1 | d_2 | ... | d_r positive.
struct SmithForm {
  std::vector<Integer> factors;
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::size_t rank() const noexcept { return factors.size(); }
};

SmithForm smith_normal_form(const IntMatrix& m);

enum class Ring { GF2, Int };

class NotAComplex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TermHomology {
  std::size_t dim = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool zero() const noexcept { return free_rank == 0 && torsion.empty(); }
};

struct HomologySummary {
  std::vector<TermHomology> terms;

  bool exact() const noexcept;
};

/// Homology of 0 -> C_0 -D_0-> C_1 -D_1-> ... -> C_m -> 0 where D_i has
/// dim C_{i+1} rows and dim C_i columns. Over GF2 entries are read mod 2.
HomologySummary complex_check(std::span<const IntMatrix> differentials, Ring ring);

}  // namespace strata
