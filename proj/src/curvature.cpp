#include "strata/curvature.hpp"

#include <array>
#include <numbers>
#include <random>
#include <sstream>

#include "strata/parallel.hpp"

namespace strata {

using cd = std::complex<double>;

namespace {

std::string at_location(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << " at (u, v) = (" << u << ", " << v << ")";
  return os.str();
}

void require_level(int k, Eigen::Index n, const char* what) {
  if (k < 1 || k >= n)
    throw std::out_of_range(std::string(what) + ": level k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(n - 1) + "]");
}

// Gram-Schmidt with positive diagonal in the triangular factor.
template <typename Scalar>
Mat<Scalar> orthonormalize(Mat<Scalar> y) {
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    for (Eigen::Index p = 0; p < c; ++p) y.col(c) -= y.col(p).dot(y.col(c)) * y.col(p);
    const double norm = y.col(c).norm();
    if (norm == 0.0) throw StepTooCoarse("transported frame collapsed");
    y.col(c) /= norm;
  }
  return y;
}

}  // namespace

// ---------------------------------------------------------------------------

double omega_k(const Spectrum<cd>& spectrum, const ComplexMatrix& b1, const ComplexMatrix& b2, int k) {
  const Eigen::Index n = spectrum.size();
  require_level(k, n, "omega_k");
  if (b1.rows() != n || b1.cols() != n || b2.rows() != n || b2.cols() != n)
    throw std::invalid_argument("omega_k: tangent size does not match the operator");
  const ComplexMatrix& e = spectrum.frame;
  // (j, i) entry is <B e_i, e_j>
  const ComplexMatrix z1 = e.adjoint() * b1 * e;
  const ComplexMatrix z2 = e.adjoint() * b2 * e;
  double total = 0.0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = k; j < n; ++j) {
      const cd a = z1(j, i);
      const cd b = z2(j, i);
      const double det = a.real() * b.imag() - a.imag() * b.real();
      const double gap = spectrum.values(i) - spectrum.values(j);
      total += det / (std::numbers::pi * gap * gap);
    }
  return total;
}

double omega_k(const HermitianOperator& a, const HermitianOperator& b1, const HermitianOperator& b2,
               int k, GapTolerance tol) {
  require_level(k, a.size(), "omega_k");
  const Spectrum<cd> s = jacobi_eigh(a);
  if (!(s.values(k) - s.values(k - 1) >= tol.threshold(s.values)))
    throw DegenerateAtK("lambda_" + std::to_string(k) + " = lambda_" + std::to_string(k + 1));
  return omega_k(s, b1.matrix(), b2.matrix(), k);
}

// ---------------------------------------------------------------------------

GridSize GridSize::parse(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    std::size_t used_u = 0, used_v = 0;
    const std::string su = text.substr(0, x), sv = text.substr(x + 1);
    GridSize g{std::stoi(su, &used_u), std::stoi(sv, &used_v)};
    if (used_u != su.size() || used_v != sv.size() || g.nu < 1 || g.nv < 1) throw std::invalid_argument("");
    return g;
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like NuxNv, got '" + text + "'");
  }
}

double SampledSurface::du() const noexcept {
  return kind == GridKind::Sphere ? std::numbers::pi / nu : 1.0 / nu;
}

double SampledSurface::dv() const noexcept {
  return kind == GridKind::Sphere ? 2.0 * std::numbers::pi / nv : 1.0 / nv;
}

double SampledSurface::u(int i) const noexcept {
  return kind == GridKind::Sphere ? (i + 0.5) * du() : i * du();
}

double SampledSurface::v(int j) const noexcept { return j * dv(); }

SampledSurface sample_surface(const SurfaceFamily& family, GridSize grid) {
  if (grid.nu < 1 || grid.nv < 1) throw std::invalid_argument("surface grid must be nonempty");
  SampledSurface s;
  s.kind = family.kind;
  s.nu = grid.nu;
  s.nv = grid.nv;
  const auto cells = static_cast<std::size_t>(grid.nu) * static_cast<std::size_t>(grid.nv);
  s.values.resize(cells);
  if (family.tangents) {
    s.du_tangent.resize(cells);
    s.dv_tangent.resize(cells);
  }
  parallel_for(cells, [&](std::size_t c) {
    const int i = static_cast<int>(c) / grid.nv;
    const int j = static_cast<int>(c) % grid.nv;
    const double u = s.u(i), v = s.v(j);
    s.values[c] = family.sampler(u, v);
    if (family.tangents) std::tie(s.du_tangent[c], s.dv_tangent[c]) = family.tangents(u, v);
  });
  return s;
}

SampledSurface surface_from_grid(GridKind kind, int nu, int nv, std::vector<ComplexMatrix> values) {
  if (nu < 1 || nv < 1) throw std::invalid_argument("surface grid must be nonempty");
  if (values.size() != static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv))
    throw std::invalid_argument("surface grid: expected Nu*Nv matrices");
  SampledSurface s;
  s.kind = kind;
  s.nu = nu;
  s.nv = nv;
  s.values = std::move(values);
  return s;
}

namespace {

// Central differences, one grid cell wide; one-sided second order at the
// open u-edges of a sphere grid.
std::pair<ComplexMatrix, ComplexMatrix> finite_tangents(const SampledSurface& s, int i, int j) {
  auto wrap = [](int x, int n) { return ((x % n) + n) % n; };
  ComplexMatrix dv = (s.at(i, wrap(j + 1, s.nv)) - s.at(i, wrap(j - 1, s.nv))) / (2.0 * s.dv());
  ComplexMatrix du;
  if (s.kind == GridKind::Closed) {
    du = (s.at(wrap(i + 1, s.nu), j) - s.at(wrap(i - 1, s.nu), j)) / (2.0 * s.du());
  } else if (i == 0) {
    du = (-3.0 * s.at(0, j) + 4.0 * s.at(1, j) - s.at(2, j)) / (2.0 * s.du());
  } else if (i == s.nu - 1) {
    du = (3.0 * s.at(i, j) - 4.0 * s.at(i - 1, j) + s.at(i - 2, j)) / (2.0 * s.du());
  } else {
    du = (s.at(i + 1, j) - s.at(i - 1, j)) / (2.0 * s.du());
  }
  return {std::move(du), std::move(dv)};
}

}  // namespace

double chern_via_form(const SampledSurface& s, int k, GapTolerance tol) {
  if (!s.has_tangents() && (s.nu < 3 || s.nv < 3))
    throw std::invalid_argument("finite-difference tangents need at least a 3x3 grid");
  const auto cells = s.values.size();
  std::vector<double> contributions(cells, 0.0);
  const double area = s.du() * s.dv();
  parallel_for(cells, [&](std::size_t c) {
    const int i = static_cast<int>(c) / s.nv;
    const int j = static_cast<int>(c) % s.nv;
    const HermitianOperator a(s.values[c]);
    require_level(k, a.size(), "chern_via_form");
    const Spectrum<cd> spectrum = jacobi_eigh(a);
    if (!(spectrum.values(k) - spectrum.values(k - 1) >= tol.threshold(spectrum.values)))
      throw DegenerateAtK("family is degenerate at level " + std::to_string(k) + at_location(s.u(i), s.v(j)),
                          s.u(i), s.v(j));
    if (s.has_tangents()) {
      contributions[c] = omega_k(spectrum, s.du_tangent[c], s.dv_tangent[c], k) * area;
    } else {
      auto [du, dv] = finite_tangents(s, i, j);
      contributions[c] = omega_k(spectrum, du, dv, k) * area;
    }
  });
  return pairwise_sum(contributions);
}

// ---------------------------------------------------------------------------

namespace {

ComplexMatrix band_frame(const ComplexMatrix& a, int first, int count) {
  const Spectrum<cd> s = jacobi_eigh(HermitianOperator(a));
  if (first < 0 || count < 1 || first + count > s.size())
    throw std::out_of_range("band range outside the spectrum");
  return s.frame.middleCols(first, count);
}

cd link(const ComplexMatrix& from, const ComplexMatrix& to) {
  const cd u = (from.adjoint() * to).determinant();
  if (std::abs(u) < 1e-6) throw SingularLink("overlap determinant vanishes on a lattice link");
  return u;
}

double polygon_phase(std::span<const ComplexMatrix* const> frames) {
  cd product = 1.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    product *= link(*frames[i], *frames[(i + 1) % frames.size()]);
    product /= std::abs(product);
  }
  return std::arg(product);
}

}  // namespace

double loop_field_strength(std::span<const ComplexMatrix> corners, int k) {
  std::vector<ComplexMatrix> frames;
  for (const auto& c : corners) frames.push_back(band_frame(c, 0, k));
  std::vector<const ComplexMatrix*> ptrs;
  for (const auto& f : frames) ptrs.push_back(&f);
  return polygon_phase(ptrs);
}

FhsResult band_chern_fhs(const SampledSurface& s, int first, int count) {
  const auto cells = s.values.size();
  std::vector<ComplexMatrix> frames(cells);
  parallel_for(cells, [&](std::size_t c) { frames[c] = band_frame(s.values[c], first, count); });
  auto frame = [&](int i, int j) -> const ComplexMatrix* {
    return &frames[static_cast<std::size_t>(i * s.nv + ((j % s.nv) + s.nv) % s.nv)];
  };

  const int rows = s.kind == GridKind::Closed ? s.nu : s.nu - 1;
  std::vector<double> flux(static_cast<std::size_t>(std::max(rows, 0)) * static_cast<std::size_t>(s.nv) + 2, 0.0);
  parallel_for(static_cast<std::size_t>(std::max(rows, 0)) * static_cast<std::size_t>(s.nv), [&](std::size_t c) {
    const int i = static_cast<int>(c) / s.nv;
    const int j = static_cast<int>(c) % s.nv;
    const int i1 = (i + 1) % s.nu;
    const std::array<const ComplexMatrix*, 4> loop{frame(i, j), frame(i1, j), frame(i1, j + 1), frame(i, j + 1)};
    flux[c] = polygon_phase(loop);
  });
  if (s.kind == GridKind::Sphere) {
    // polar caps close the surface: u < u_0 traversed with increasing v,
    // u > u_{nu-1} with decreasing v
    std::vector<const ComplexMatrix*> top, bottom;
    for (int j = 0; j < s.nv; ++j) top.push_back(frame(0, j));
    for (int j = s.nv - 1; j >= 0; --j) bottom.push_back(frame(s.nu - 1, j));
    flux[flux.size() - 2] = polygon_phase(top);
    flux[flux.size() - 1] = polygon_phase(bottom);
  }
  FhsResult result;
  result.raw = pairwise_sum(flux) / (2.0 * std::numbers::pi);
  result.chern = std::lround(result.raw);
  return result;
}

FhsResult chern_fhs(const SampledSurface& s, int k) {
  if (s.values.empty()) throw std::invalid_argument("empty surface");
  require_level(k, s.values.front().rows(), "chern_fhs");
  return band_chern_fhs(s, 0, k);
}

// ---------------------------------------------------------------------------

SampledLoop sample_loop(const LoopFamily& family, int steps) {
  if (steps < 1) throw std::invalid_argument("loop needs at least one step");
  SampledLoop loop;
  loop.samples.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) loop.samples.push_back(family.sampler(static_cast<double>(i) / steps));
  const RealMatrix end = family.sampler(1.0);
  const RealMatrix& start = loop.samples.front();
  if (end.rows() != start.rows() || !(max_abs(end - start) <= 1e-10))
    throw std::invalid_argument("loop is not closed: A(0) != A(1)");
  return loop;
}

int sw1_holonomy(const SampledLoop& loop, int k, GapTolerance tol) {
  if (loop.samples.empty()) throw std::invalid_argument("empty loop");
  const auto steps = loop.samples.size();
  auto lowest = [&](std::size_t s) -> RealMatrix {
    const RealOperator a(loop.samples[s % steps]);
    require_level(k, a.size(), "sw1_holonomy");
    const Spectrum<double> spec = jacobi_eigh(a);
    if (!(spec.values(k) - spec.values(k - 1) >= tol.threshold(spec.values)))
      throw DegenerateAtK("loop is degenerate at level " + std::to_string(k) + " at t = " +
                              std::to_string(static_cast<double>(s % steps) / steps),
                          static_cast<double>(s % steps) / steps);
    return spec.frame.leftCols(k);
  };

  const RealMatrix start = lowest(0);
  RealMatrix frame = start;
  for (std::size_t s = 1; s <= steps; ++s) {
    const RealMatrix next = s == steps ? start : lowest(s);
    const RealMatrix overlap = next.transpose() * frame;
    if (std::abs(overlap.determinant()) < 0.5)
      throw StepTooCoarse("consecutive eigenframes overlap with |det| < 0.5 at step " + std::to_string(s));
    frame = orthonormalize<double>(next * overlap);
  }
  const double det = (start.transpose() * frame).determinant();
  return det < 0 ? -1 : 1;
}

// ---------------------------------------------------------------------------

namespace {

template <typename Scalar>
Mat<Scalar> gaussian_self_adjoint(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat<Scalar> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if constexpr (is_complex_v<Scalar>) {
        const double re = g(rng);
        m(i, j) = Scalar(re, g(rng));
      } else {
        m(i, j) = g(rng);
      }
    }
  return (m + m.adjoint()) * 0.5;
}

template <typename Scalar>
std::vector<GapScan> segment_scans(int n, int k, int trials, std::size_t samples, std::uint64_t seed) {
  std::vector<GapScan> scans(static_cast<std::size_t>(trials));
  parallel_for(scans.size(), [&](std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    const Mat<Scalar> from = gaussian_self_adjoint<Scalar>(rng, n);
    const Mat<Scalar> to = gaussian_self_adjoint<Scalar>(rng, n);
    scans[trial] = min_gap_scan<Scalar>(
        [&](double t) {
          return normalize_to_sphere(SelfAdjointOperator<Scalar>((1.0 - t) * from + t * to)).matrix();
        },
        k, samples);
  });
  return scans;
}

}  // namespace

std::vector<GapScan> random_segment_scans(FieldCase field, int n, int k, int trials, std::size_t samples,
                                          std::uint64_t seed) {
  if (n < 2 || k < 1 || k >= n) throw std::out_of_range("random segment scan needs n >= 2 and 1 <= k < n");
  if (trials < 0) throw std::invalid_argument("trial count must be nonnegative");
  return field == FieldCase::Real ? segment_scans<double>(n, k, trials, samples, seed)
                                  : segment_scans<std::complex<double>>(n, k, trials, samples, seed);
}

}  // namespace strata
