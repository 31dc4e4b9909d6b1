#include "strata/homalg.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <utility>

namespace strata {

// ---------------------------------------------------------------------------
// GF(2)

GF2Matrix::GF2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

GF2Matrix::GF2Matrix(std::initializer_list<std::initializer_list<int>> rows)
    : GF2Matrix(rows.size(), rows.size() ? rows.begin()->size() : 0) {
  std::size_t r = 0;
  for (const auto& line : rows) {
    if (line.size() != cols_) throw std::invalid_argument("ragged GF2 matrix literal");
    std::size_t c = 0;
    for (int v : line) set(r, c++, (v & 1) != 0);
    ++r;
  }
}

void GF2Matrix::set(std::size_t r, std::size_t c, bool value) noexcept {
  std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (value)
    row(r)[c / 64] |= mask;
  else
    row(r)[c / 64] &= ~mask;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::size_t rank_gf2(GF2Matrix m) {
  std::size_t rank = 0;
  const std::size_t words = m.words_per_row();
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && !m.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) std::swap_ranges(m.row(pivot), m.row(pivot) + words, m.row(rank));
    const std::uint64_t* src = m.row(rank);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || !m.get(r, c)) continue;
      std::uint64_t* dst = m.row(r);
      for (std::size_t w = c / 64; w < words; ++w) dst[w] ^= src[w];
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------------------
// Integer matrices

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0) {
  std::size_t r = 0;
  for (const auto& line : rows) {
    if (line.size() != cols_) throw std::invalid_argument("ragged integer matrix literal");
    std::size_t c = 0;
    for (long v : line) (*this)(r, c++) = v;
    ++r;
  }
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::block(std::span<const std::size_t> row_idx,
                           std::span<const std::size_t> col_idx) const {
  IntMatrix b(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c) b(r, c) = (*this)(row_idx[r], col_idx[c]);
  return b;
}

GF2Matrix IntMatrix::mod2() const {
  GF2Matrix m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, mpz_odd_p((*this)(r, c).get_mpz_t()) != 0);
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("integer matrix product: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Integer& x = a(i, l);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(l, j)) != 0) out(i, j) += x * b(l, j);
    }
  return out;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Integer(1);
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(a(swap, k)) == 0) ++swap;
      if (swap == n) return Integer(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row_dst -= q * row_src
void axpy_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (sgn(m(src, c)) != 0) m(dst, c) -= q * m(src, c);
}

void axpy_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (sgn(m(r, src)) != 0) m(r, dst) -= q * m(r, src);
}

int cmp_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

struct Position {
  std::size_t row;
  std::size_t col;
};

// Nonzero entry of minimal absolute value in the trailing block starting at t.
std::optional<Position> min_entry(const IntMatrix& s, std::size_t t) {
  std::optional<Position> best;
  for (std::size_t r = t; r < s.rows(); ++r)
    for (std::size_t c = t; c < s.cols(); ++c) {
      if (sgn(s(r, c)) == 0) continue;
      if (!best || cmp_abs(s(r, c), s(best->row, best->col)) < 0) best = Position{r, c};
    }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t diag = std::min(m.rows(), m.cols());

  std::size_t t = 0;
  for (; t < diag; ++t) {
    auto pivot = min_entry(s, t);
    if (!pivot) break;

    for (;;) {
      swap_rows(s, t, pivot->row);
      swap_rows(u, t, pivot->row);
      swap_cols(s, t, pivot->col);
      swap_cols(v, t, pivot->col);

      bool clean = true;
      Integer q;
      for (std::size_t r = t + 1; r < s.rows(); ++r) {
        if (sgn(s(r, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(r, t).get_mpz_t(), s(t, t).get_mpz_t());
        axpy_row(s, r, t, q);
        axpy_row(u, r, t, q);
        if (sgn(s(r, t)) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < s.cols(); ++c) {
        if (sgn(s(t, c)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), s(t, c).get_mpz_t(), s(t, t).get_mpz_t());
        axpy_col(s, c, t, q);
        axpy_col(v, c, t, q);
        if (sgn(s(t, c)) != 0) clean = false;
      }

      if (!clean) {
        // a remainder smaller than the pivot survived in row or column t
        Position best{t, t};
        for (std::size_t r = t + 1; r < s.rows(); ++r)
          if (sgn(s(r, t)) != 0 && cmp_abs(s(r, t), s(best.row, best.col)) < 0) best = {r, t};
        for (std::size_t c = t + 1; c < s.cols(); ++c)
          if (sgn(s(t, c)) != 0 && cmp_abs(s(t, c), s(best.row, best.col)) < 0) best = {t, c};
        pivot = best;
        continue;
      }

      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < s.rows() && !offending; ++r)
        for (std::size_t c = t + 1; c < s.cols(); ++c)
          if (!mpz_divisible_p(s(r, c).get_mpz_t(), s(t, t).get_mpz_t())) {
            offending = r;
            break;
          }
      if (!offending) break;
      axpy_row(s, t, *offending, Integer(-1));
      axpy_row(u, t, *offending, Integer(-1));
      pivot = Position{t, t};
    }

    if (sgn(s(t, t)) < 0) {
      for (std::size_t c = 0; c < s.cols(); ++c) s(t, c) = -s(t, c);
      for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
    }
  }

  SmithForm form;
  for (std::size_t i = 0; i < t; ++i) form.factors.push_back(s(i, i));
  if (!(u * m * v == s)) throw std::logic_error("Smith normal form: U*M*V != S");
  form.U = std::move(u);
  form.S = std::move(s);
  form.V = std::move(v);
  return form;
}

// ---------------------------------------------------------------------------
// Complexes

bool HomologySummary::exact() const noexcept {
  return std::all_of(terms.begin(), terms.end(), [](const TermHomology& t) { return t.zero(); });
}

HomologySummary complex_check(std::span<const IntMatrix> differentials, Ring ring) {
  const std::size_t m = differentials.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto& first = differentials[i];
    const auto& second = differentials[i + 1];
    if (second.cols() != first.rows())
      throw std::invalid_argument("differentials " + std::to_string(i) + " and " +
                                  std::to_string(i + 1) + " are not composable");
    IntMatrix comp = second * first;
    bool zero = ring == Ring::Int ? comp.is_zero() : rank_gf2(comp.mod2()) == 0;
    if (!zero)
      throw NotAComplex("composition of differentials " + std::to_string(i) + " and " +
                        std::to_string(i + 1) + " is nonzero");
  }

  HomologySummary summary;
  if (m == 0) return summary;

  std::vector<std::size_t> ranks(m);
  std::vector<std::vector<Integer>> torsion(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (ring == Ring::GF2) {
      ranks[i] = rank_gf2(differentials[i].mod2());
    } else {
      SmithForm snf = smith_normal_form(differentials[i]);
      ranks[i] = snf.rank();
      for (auto& d : snf.factors)
        if (d > 1) torsion[i].push_back(d);
    }
  }

  summary.terms.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    TermHomology& term = summary.terms[i];
    term.dim = i == 0 ? differentials[0].cols() : differentials[i - 1].rows();
    std::size_t out_rank = i < m ? ranks[i] : 0;
    std::size_t in_rank = i > 0 ? ranks[i - 1] : 0;
    term.free_rank = term.dim - out_rank - in_rank;
    if (i > 0) term.torsion = torsion[i - 1];
  }
  return summary;
}

}  // namespace strata
