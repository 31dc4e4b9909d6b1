#pragma once

// JSON encodings.
//
// Matrix: {"field": "real"|"hermitian", "n": N, "entries": [[...], ...]},
// row-major; real entries are numbers, complex entries [re, im] pairs.
//
// Surface family: {"builtin": name, "params": {...}} or
//   {"grid": {"Nu": .., "Nv": .., "kind": "closed"|"sphere", "matrices": [[matrix, ...], ...]}}
// Loop / path:    {"builtin": name, "params": {...}} or
//   {"grid": {"Nt": .., "matrices": [matrix, ...]}}

#include <optional>
#include <string>

#include <json.hpp>

#include "strata/curvature.hpp"

namespace strata {

using json = nlohmann::json;

struct MatrixRecord {
  FieldCase field = FieldCase::Real;
  ComplexMatrix entries;

  RealMatrix real() const;
};

json matrix_to_json(const RealMatrix& m);
json matrix_to_json(const ComplexMatrix& m);

/// Validates shape, "n" and self-adjointness; real matrices reject complex pairs.
MatrixRecord matrix_from_json(const json& j);

struct SurfaceSource {
  std::string name;
  std::optional<SurfaceFamily> family;  // builtin, sampled on demand
  std::optional<SampledSurface> grid;   // stored samples
};

/// Builtins: pauli_sphere; block (params below, above; defaults [-2], [2]);
/// constant (params matrix).
SurfaceFamily builtin_surface(const std::string& name, const json& params = json::object());
SurfaceSource surface_from_json(const json& j);

struct LoopSource {
  std::string name;
  std::optional<LoopFamily> family;
  std::optional<SampledLoop> loop;
};

/// Builtins: real_loop_2x2 (params winding, default 1); circle (params
/// center, b1, b2 as real matrices and radius).
LoopFamily builtin_loop(const std::string& name, const json& params = json::object());

/// Stored loops list Nt periodic samples; an extra final sample equal to the
/// first is accepted and dropped.
LoopSource loop_from_json(const json& j);

/// Stored path samples in order; all share one field.
struct PathSamples {
  FieldCase field = FieldCase::Real;
  std::vector<ComplexMatrix> samples;
};

PathSamples path_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace strata
