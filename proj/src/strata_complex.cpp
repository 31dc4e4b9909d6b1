#include "strata/strata_complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace strata {

namespace {

void require_range(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi)
    throw std::out_of_range(std::string(what) + ": k=" + std::to_string(k) + " outside [" +
                            std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::string element_label(const Partition& p) { return "(" + p.str() + ")"; }

}  // namespace

ComplexSpec::ComplexSpec(int n_, FieldCase field_) : n(n_), field(field_) {
  if (n < 2) throw std::invalid_argument("complex requires n >= 2, got n=" + std::to_string(n));
}

std::size_t TermBasis::index_of(const Partition& p) const {
  auto it = std::find(basis.begin(), basis.end(), p);
  return static_cast<std::size_t>(it - basis.begin());
}

TermBasis term_basis(int k, const ComplexSpec& spec) {
  require_range(k, 1, spec.n, "term_basis");
  TermBasis term;
  term.k = k;
  term.basis = box_partitions(BoxContext(k - 1, spec.n - 1));
  const int shift = nu(k - 1, spec.field) + 1;
  term.degrees.reserve(term.basis.size());
  for (const auto& p : term.basis) term.degrees.push_back(cell_factor(spec.field) * p.weight() + shift);
  return term;
}

DifferentialModel differential(int k, const ComplexSpec& spec) {
  require_range(k, 1, spec.n - 1, "differential");
  const TermBasis source = term_basis(k, spec);
  const TermBasis target = term_basis(k + 1, spec);
  DifferentialModel d{k, IntMatrix(target.dim(), source.dim())};
  for (std::size_t col = 0; col < source.dim(); ++col) {
    const Partition& lambda = source.basis[col];
    if (static_cast<int>(lambda.length()) != k - 1) continue;
    std::vector<int> lowered;
    for (int part : lambda.parts())
      if (part > 1) lowered.push_back(part - 1);
    std::size_t row = target.index_of(Partition(std::move(lowered)));
    if (row == target.dim()) throw std::logic_error("differential image left the target basis");
    d.matrix(row, col) = 1;
  }
  return d;
}

long long kernel_dim_via_pieri(int k, const ComplexSpec& spec) {
  require_range(k, 1, spec.n - 1, "kernel_dim_via_pieri");
  const TermBasis term = term_basis(k, spec);
  const BoxContext target(k, spec.n);
  long long count = 0;
  for (const auto& zeta : term.basis) {
    auto product = pieri(1, rho_k(zeta, k, spec.n), target);
    if (in_image_rho(product, k)) ++count;
  }
  return count;
}

std::map<int, long long> betti_Mk(int k, const ComplexSpec& spec) {
  require_range(k, 0, spec.n - 1, "betti_Mk");
  std::map<int, long long> betti;
  const int shift = nu(k, spec.field);
  for (const auto& [degree, count] : betti_grassmannian(BoxContext(k, spec.n - 1), spec.field)) {
    if (degree + shift < 0) continue;
    betti[degree + shift] += count;
  }
  return betti;
}

// ---------------------------------------------------------------------------

ExactnessReport verify_exactness(const ComplexSpec& spec) {
  ExactnessReport report;
  report.n = spec.n;
  report.field = spec.field;
  const int n = spec.n;
  const int eps = codim_eps(spec.field);
  const Ring ring = spec.field == FieldCase::Real ? Ring::GF2 : Ring::Int;

  auto fail = [&](const std::string& check, const std::string& message) {
    report.checks[check] = false;
    report.failures.push_back(check + ": " + message);
  };
  for (const char* name : {"term_dims", "endpoint_degrees", "d_squared_zero", "homology_zero",
                           "kernel_dims", "degree_audit", "graded_exactness"})
    report.checks[name] = true;

  for (int k = 1; k <= n; ++k) report.terms.push_back(term_basis(k, spec));
  std::vector<IntMatrix> mats;
  for (int k = 1; k <= n - 1; ++k) mats.push_back(differential(k, spec).matrix);

  // (a) dimensions and endpoint degrees
  long long total = 0;
  for (const auto& term : report.terms) {
    total += static_cast<long long>(term.dim());
    long long expected = binomial(n - 1, term.k - 1);
    if (static_cast<long long>(term.dim()) != expected)
      fail("term_dims", "term " + std::to_string(term.k) + " has dim " + std::to_string(term.dim()) +
                            ", expected " + std::to_string(expected));
  }
  if (total != (1LL << (n - 1))) fail("term_dims", "total dimension is not 2^(n-1)");
  if (report.terms.front().degrees != std::vector<int>{0})
    fail("endpoint_degrees", "term 1 is not a single class in degree 0");
  if (report.terms.back().degrees != std::vector<int>{ball_dimension(n, spec.field)})
    fail("endpoint_degrees", "term n is not a single class in degree dim B");

  // (b) d_{k+1} d_k = 0, exactly over the integers and mod 2
  for (std::size_t i = 0; i + 1 < mats.size(); ++i) {
    IntMatrix comp = mats[i + 1] * mats[i];
    if (!comp.is_zero() || rank_gf2(comp.mod2()) != 0)
      fail("d_squared_zero", "d_" + std::to_string(i + 2) + " d_" + std::to_string(i + 1) + " != 0");
  }

  // (c) homology
  try {
    report.homology = complex_check(mats, ring);
    for (std::size_t i = 0; i < report.homology.terms.size(); ++i) {
      const auto& h = report.homology.terms[i];
      if (!h.zero())
        fail("homology_zero", "term " + std::to_string(i + 1) + " has free rank " +
                                  std::to_string(h.free_rank) + " and " +
                                  std::to_string(h.torsion.size()) + " torsion factors");
    }
  } catch (const NotAComplex& e) {
    fail("homology_zero", e.what());
  }

  // (d) kernels by two routes
  for (int k = 1; k <= n - 1; ++k) {
    const auto& d = mats[static_cast<std::size_t>(k - 1)];
    std::size_t rank = ring == Ring::GF2 ? rank_gf2(d.mod2()) : smith_normal_form(d).rank();
    long long from_matrix = static_cast<long long>(d.cols() - rank);
    long long from_pieri = kernel_dim_via_pieri(k, spec);
    long long expected = binomial(n - 2, k - 2);
    report.kernels_matrix.push_back(from_matrix);
    report.kernels_pieri.push_back(from_pieri);
    report.kernels_expected.push_back(expected);
    if (from_matrix != from_pieri || from_matrix != expected)
      fail("kernel_dims", "d_" + std::to_string(k) + ": matrix " + std::to_string(from_matrix) +
                              ", pieri " + std::to_string(from_pieri) + ", expected " +
                              std::to_string(expected));
  }

  // (e) every nonzero entry raises degree by exactly eps
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const auto& src = report.terms[i];
    const auto& dst = report.terms[i + 1];
    for (std::size_t r = 0; r < mats[i].rows(); ++r)
      for (std::size_t c = 0; c < mats[i].cols(); ++c) {
        if (sgn(mats[i](r, c)) == 0) continue;
        if (dst.degrees[r] - src.degrees[c] != eps)
          fail("degree_audit", "d_" + std::to_string(i + 1) + " maps " + element_label(src.basis[c]) +
                                   " (degree " + std::to_string(src.degrees[c]) + ") to " +
                                   element_label(dst.basis[r]) + " (degree " +
                                   std::to_string(dst.degrees[r]) + ")");
      }
  }

  // (f) homology degree by degree: split into the subcomplexes of classes
  // with fixed (degree - eps * k)
  std::set<int> keys;
  for (const auto& term : report.terms)
    for (int deg : term.degrees) keys.insert(deg - eps * term.k);
  for (int key : keys) {
    std::vector<std::vector<std::size_t>> slice(report.terms.size());
    for (std::size_t t = 0; t < report.terms.size(); ++t)
      for (std::size_t i = 0; i < report.terms[t].dim(); ++i)
        if (report.terms[t].degrees[i] - eps * report.terms[t].k == key) slice[t].push_back(i);
    std::vector<IntMatrix> blocks;
    for (std::size_t i = 0; i < mats.size(); ++i) blocks.push_back(mats[i].block(slice[i + 1], slice[i]));
    try {
      HomologySummary h = complex_check(blocks, ring);
      for (std::size_t t = 0; t < h.terms.size(); ++t)
        if (!h.terms[t].zero())
          fail("graded_exactness", "term " + std::to_string(t + 1) + " degree " +
                                       std::to_string(key + eps * static_cast<int>(t + 1)) +
                                       " has nonzero homology");
    } catch (const NotAComplex& e) {
      fail("graded_exactness", e.what());
    }
  }

  return report;
}

nlohmann::ordered_json ExactnessReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["case"] = to_string(field);
  j["ring"] = field == FieldCase::Real ? "GF2" : "Z";
  j["degree_shift"] = codim_eps(field);
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : terms) {
    nlohmann::ordered_json basis = nlohmann::ordered_json::array();
    for (const auto& p : t.basis) basis.push_back(p.str());
    j["terms"].push_back({{"k", t.k}, {"dim", t.dim()}, {"degrees", t.degrees}, {"basis", basis}});
  }
  j["kernels"] = kernels_matrix;
  j["kernels_pieri"] = kernels_pieri;
  j["kernels_expected"] = kernels_expected;

  std::vector<std::string> nonzero;
  for (const auto& f : failures)
    if (f.rfind("homology_zero", 0) == 0 || f.rfind("graded_exactness", 0) == 0) nonzero.push_back(f);
  if (nonzero.empty())
    j["homology"] = "zero";
  else
    j["homology"] = nonzero;

  nlohmann::ordered_json checks_json = nlohmann::ordered_json::object();
  for (const auto& [name, ok] : checks) checks_json[name] = ok;
  j["checks"] = checks_json;
  j["failures"] = failures;
  j["exact"] = passed();
  return j;
}

}  // namespace strata
