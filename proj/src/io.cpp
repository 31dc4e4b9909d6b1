#include "strata/io.hpp"

#include <fstream>
#include <stdexcept>

#include "strata/families.hpp"

namespace strata {

using cd = std::complex<double>;

RealMatrix MatrixRecord::real() const {
  if (field != FieldCase::Real) throw std::invalid_argument("expected a real matrix, got a hermitian one");
  return entries.real();
}

json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"field", "real"}, {"n", m.rows()}, {"entries", std::move(rows)}};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"field", "hermitian"}, {"n", m.rows()}, {"entries", std::move(rows)}};
}

MatrixRecord matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("n") || !j.contains("entries"))
    throw std::invalid_argument("matrix JSON needs field, n and entries");
  MatrixRecord rec;
  rec.field = parse_field_case(j.at("field").get<std::string>());
  const auto n = j.at("n").get<long>();
  const json& rows = j.at("entries");
  if (n < 1 || !rows.is_array() || static_cast<long>(rows.size()) != n)
    throw std::invalid_argument("matrix JSON: entries must have n rows");
  rec.entries.resize(n, n);
  for (long r = 0; r < n; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != n)
      throw std::invalid_argument("matrix JSON: every row must have n entries");
    for (long c = 0; c < n; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (x.is_number()) {
        rec.entries(r, c) = x.get<double>();
      } else if (rec.field == FieldCase::Hermitian && x.is_array() && x.size() == 2 && x[0].is_number() &&
                 x[1].is_number()) {
        rec.entries(r, c) = cd(x[0].get<double>(), x[1].get<double>());
      } else {
        throw std::invalid_argument("matrix JSON: malformed entry at (" + std::to_string(r) + ", " +
                                    std::to_string(c) + ")");
      }
    }
  }
  HermitianOperator check(rec.entries);  // throws when not self-adjoint
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> doubles(const json& params, const char* key, std::vector<double> fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<std::vector<double>>();
}

}  // namespace

SurfaceFamily builtin_surface(const std::string& name, const json& params) {
  if (name == "pauli_sphere") return pauli_sphere();
  if (name == "block" || name == "block_family")
    return block_family(doubles(params, "below", {-2.0}), doubles(params, "above", {2.0}));
  if (name == "constant") {
    if (!params.contains("matrix")) throw std::invalid_argument("constant family needs params.matrix");
    return constant_surface(matrix_from_json(params.at("matrix")).entries);
  }
  throw std::invalid_argument("unknown builtin surface family '" + name + "'");
}

SurfaceSource surface_from_json(const json& j) {
  SurfaceSource src;
  if (j.contains("builtin")) {
    src.name = j.at("builtin").get<std::string>();
    src.family = builtin_surface(src.name, j.value("params", json::object()));
    return src;
  }
  if (!j.contains("grid")) throw std::invalid_argument("family JSON needs 'builtin' or 'grid'");
  const json& g = j.at("grid");
  const int nu = g.at("Nu").get<int>();
  const int nv = g.at("Nv").get<int>();
  const std::string kind = g.value("kind", std::string("closed"));
  if (kind != "closed" && kind != "sphere") throw std::invalid_argument("grid kind must be closed or sphere");
  const json& rows = g.at("matrices");
  if (!rows.is_array() || static_cast<int>(rows.size()) != nu)
    throw std::invalid_argument("grid matrices must have Nu rows");
  std::vector<ComplexMatrix> values;
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != nv)
      throw std::invalid_argument("grid matrices rows must have Nv entries");
    for (const json& m : row) values.push_back(matrix_from_json(m).entries);
  }
  src.name = "grid";
  src.grid = surface_from_grid(kind == "sphere" ? GridKind::Sphere : GridKind::Closed, nu, nv, std::move(values));
  return src;
}

LoopFamily builtin_loop(const std::string& name, const json& params) {
  if (name == "real_loop_2x2") return real_loop_2x2(params.value("winding", 1));
  if (name == "circle") {
    return circle_loop(matrix_from_json(params.at("center")).real(), matrix_from_json(params.at("b1")).real(),
                       matrix_from_json(params.at("b2")).real(), params.at("radius").get<double>());
  }
  throw std::invalid_argument("unknown builtin loop '" + name + "'");
}

LoopSource loop_from_json(const json& j) {
  LoopSource src;
  if (j.contains("builtin")) {
    src.name = j.at("builtin").get<std::string>();
    src.family = builtin_loop(src.name, j.value("params", json::object()));
    return src;
  }
  PathSamples path = path_from_json(j);
  if (path.field != FieldCase::Real) throw std::invalid_argument("loops must be real symmetric");
  SampledLoop loop;
  for (const auto& m : path.samples) loop.samples.push_back(m.real());
  const auto nt = j.at("grid").at("Nt").get<std::size_t>();
  if (loop.samples.size() == nt + 1) {
    if (!(max_abs(loop.samples.back() - loop.samples.front()) <= 1e-10))
      throw std::invalid_argument("loop is not closed: first and last samples differ");
    loop.samples.pop_back();
  }
  if (loop.samples.size() != nt) throw std::invalid_argument("loop grid must list Nt (or Nt+1) matrices");
  src.name = "grid";
  src.loop = std::move(loop);
  return src;
}

PathSamples path_from_json(const json& j) {
  if (!j.contains("grid")) throw std::invalid_argument("path JSON needs 'grid'");
  const json& g = j.at("grid");
  const json& ms = g.at("matrices");
  if (!ms.is_array() || ms.empty()) throw std::invalid_argument("path grid needs a nonempty matrices list");
  PathSamples path;
  bool first = true;
  for (const json& m : ms) {
    MatrixRecord rec = matrix_from_json(m);
    if (first) path.field = rec.field;
    if (rec.field != path.field) throw std::invalid_argument("path samples mix real and hermitian matrices");
    if (!first && rec.entries.rows() != path.samples.front().rows())
      throw std::invalid_argument("path samples differ in size");
    path.samples.push_back(std::move(rec.entries));
    first = false;
  }
  if (g.contains("Nt") && g.at("Nt").get<std::size_t>() + 1 < path.samples.size())
    throw std::invalid_argument("path grid lists more matrices than Nt + 1");
  return path;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace strata
