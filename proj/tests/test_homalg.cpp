#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "strata/homalg.hpp"

using namespace strata;
using namespace strata::testing;

namespace {

bool is_diagonal_form(const SmithForm& f) {
  for (std::size_t r = 0; r < f.S.rows(); ++r)
    for (std::size_t c = 0; c < f.S.cols(); ++c) {
      const Integer expected = r == c && r < f.factors.size() ? f.factors[r] : Integer(0);
      if (f.S(r, c) != expected) return false;
    }
  return true;
}

std::vector<long> as_longs(const std::vector<Integer>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_CASE("rank_gf2 examples") {
  CHECK(rank_gf2(GF2Matrix{{1, 1}, {1, 1}}) == 1);
  CHECK(rank_gf2(GF2Matrix::identity(3)) == 3);
  CHECK(rank_gf2(GF2Matrix{{1, 0, 1}, {0, 1, 1}, {1, 1, 0}}) == 2);
  CHECK(rank_gf2(GF2Matrix(0, 4)) == 0);
  CHECK(rank_gf2(GF2Matrix(3, 0)) == 0);
}

TEST_CASE("rank_gf2 on wide rows spanning several words") {
  GF2Matrix m(3, 200);
  m.set(0, 5, true);
  m.set(0, 150, true);
  m.set(1, 150, true);
  m.set(2, 5, true);
  CHECK(rank_gf2(m) == 2);
  CHECK(rank_gf2(GF2Matrix::identity(130)) == 130);
}

TEST_CASE("smith_normal_form examples") {
  CHECK(as_longs(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).factors) == std::vector<long>{1, 6});
  CHECK(as_longs(smith_normal_form(IntMatrix{{2, 4}, {6, 8}}).factors) == std::vector<long>{2, 4});
  CHECK(smith_normal_form(IntMatrix(2, 2)).rank() == 0);
  CHECK(smith_normal_form(IntMatrix(0, 3)).rank() == 0);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 6), entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(size(rng));
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    CHECK(determinant(to_int_matrix(m)) == Integer(static_cast<long>(det_oracle(m))));
  }
}

TEST_CASE("SNF matches gcd of minors on random matrices") {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_matrix(rng, -5, 5);
    const IntMatrix M = to_int_matrix(m);
    const SmithForm f = smith_normal_form(M);
    const MinorSummary oracle = minor_oracle(m);

    REQUIRE(f.rank() == oracle.rank);
    Integer product = 1;
    for (const auto& d : f.factors) product *= d;
    CHECK(product == Integer(static_cast<long>(oracle.gcd)));
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      CHECK(f.factors[i] > 0);
      if (i + 1 < f.factors.size()) CHECK(f.factors[i + 1] % f.factors[i] == 0);
    }
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    CHECK(f.U * M * f.V == f.S);
    CHECK(is_diagonal_form(f));
  }
}

TEST_CASE("GF(2) rank equals the number of odd invariant factors") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix M = to_int_matrix(random_matrix(rng, 0, 1));
    std::size_t odd = 0;
    for (const auto& d : smith_normal_form(M).factors) odd += mpz_odd_p(d.get_mpz_t()) ? 1 : 0;
    CHECK(rank_gf2(M.mod2()) == odd);
  }
}

TEST_CASE("SNF stays exact when entries grow") {
  IntMatrix big(2, 2);
  big(0, 0) = Integer("123456789012345678901234567890");
  big(0, 1) = Integer("987654321098765432109876543210");
  big(1, 0) = 3;
  big(1, 1) = 7;
  const SmithForm f = smith_normal_form(big);
  CHECK(f.U * big * f.V == f.S);
  Integer product = 1;
  for (const auto& d : f.factors) product *= d;
  CHECK(product == abs(determinant(big)));
}

TEST_CASE("complex_check examples") {
  std::vector<IntMatrix> times2{IntMatrix{{2}}};
  auto h = complex_check(times2, Ring::Int);
  REQUIRE(h.terms.size() == 2);
  CHECK(h.terms[0].zero());
  CHECK(h.terms[1].free_rank == 0);
  CHECK(as_longs(h.terms[1].torsion) == std::vector<long>{2});
  CHECK_FALSE(h.exact());

  auto over_gf2 = complex_check(times2, Ring::GF2);
  CHECK(over_gf2.terms[0].free_rank == 1);
  CHECK(over_gf2.terms[1].free_rank == 1);

  std::vector<IntMatrix> iso{IntMatrix{{1}}};
  CHECK(complex_check(iso, Ring::Int).exact());
  CHECK(complex_check(iso, Ring::GF2).exact());

  std::vector<IntMatrix> bad{IntMatrix{{1}}, IntMatrix{{1}}};
  CHECK_THROWS_AS(complex_check(bad, Ring::Int), NotAComplex);
  CHECK_THROWS_AS(complex_check(bad, Ring::GF2), NotAComplex);

  std::vector<IntMatrix> mismatched{IntMatrix{{1, 0}}, IntMatrix{{1, 0}}};
  CHECK_THROWS_AS(complex_check(mismatched, Ring::Int), std::invalid_argument);
}

TEST_CASE("dual complex has mirrored free ranks and matching Euler characteristic") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dim(1, 5), entry(-3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    // d1 d0 = 0 by construction: d1 = X P, d0 = Q Y with P Q = 0 via a split.
    const auto a = static_cast<std::size_t>(dim(rng));
    const auto r = static_cast<std::size_t>(dim(rng));
    const auto c = static_cast<std::size_t>(dim(rng));
    const auto s = r + 1;
    IntMatrix d0(r + s, a), d1(c, r + s);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < a; ++j) d0(i, j) = entry(rng);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = r; j < r + s; ++j) d1(i, j) = entry(rng);
    std::vector<IntMatrix> forward{d0, d1};
    std::vector<IntMatrix> backward{d1.transpose(), d0.transpose()};
    for (Ring ring : {Ring::Int, Ring::GF2}) {
      auto hf = complex_check(forward, ring);
      auto hb = complex_check(backward, ring);
      REQUIRE(hf.terms.size() == 3);
      long euler_dims = 0, euler_free = 0;
      for (std::size_t t = 0; t < 3; ++t) {
        CHECK(hf.terms[t].free_rank == hb.terms[2 - t].free_rank);
        const long sign = t % 2 ? -1 : 1;
        euler_dims += sign * static_cast<long>(hf.terms[t].dim);
        euler_free += sign * static_cast<long>(hf.terms[t].free_rank);
      }
      CHECK(euler_dims == euler_free);
    }
  }
}
