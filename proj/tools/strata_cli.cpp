// strata: command-line front end.
//
// Exit codes: 0 success, 1 verification failure or numerical obstruction,
// 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strata/curvature.hpp"
#include "strata/families.hpp"
#include "strata/io.hpp"
#include "strata/parallel.hpp"
#include "strata/schubert.hpp"
#include "strata/spectral.hpp"
#include "strata/strata_complex.hpp"

namespace {

using namespace strata;
using ojson = nlohmann::ordered_json;
using cd = std::complex<double>;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string field = "real";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out;
};

struct Outcome {
  ojson doc;
  int code = kOk;
  std::optional<std::map<int, long long>> table;  // degree -> count, for csv
};

// ---------------------------------------------------------------------------
// output

void render_text(const ojson& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const ojson& v = it.value();
    const bool nested_object = v.is_object() && !v.empty();
    const bool array_of_objects = v.is_array() && !v.empty() && v.front().is_object();
    if (nested_object) {
      os << pad << it.key() << ":\n";
      render_text(v, os, indent + 2);
    } else if (array_of_objects) {
      os << pad << it.key() << ":\n";
      for (const auto& item : v) {
        os << pad << "  -\n";
        render_text(item, os, indent + 4);
      }
    } else {
      os << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

std::string render(const Outcome& outcome, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << outcome.doc.dump(2) << "\n";
  } else if (format == "text") {
    render_text(outcome.doc, os, 0);
  } else {
    if (!outcome.table) throw UsageError("csv output is only available for degree/count tables (betti)");
    os << "degree,count\n";
    for (const auto& [degree, count] : *outcome.table) os << degree << "," << count << "\n";
  }
  return os.str();
}

ojson table_json(const std::map<int, long long>& table) {
  ojson out = ojson::object();
  for (const auto& [degree, count] : table) out[std::to_string(degree)] = count;
  return out;
}

ojson error_doc(const std::string& command, const std::string& kind, const std::string& message) {
  return {{"command", command}, {"error", kind}, {"message", message}};
}

// ---------------------------------------------------------------------------
// betti / complex / pieri

struct BettiArgs {
  int n = 0;
  int k = 0;
  std::string space = "grassmannian";
};

Outcome run_betti(const BettiArgs& a, const Common& c) {
  const FieldCase field = parse_field_case(c.field);
  std::map<int, long long> table;
  if (a.space == "grassmannian") {
    if (a.n < 0 || a.k < 0 || a.k > a.n) throw UsageError("grassmannian needs 0 <= k <= n");
    table = betti_grassmannian(BoxContext(a.k, a.n), field);
  } else if (a.space == "mk") {
    if (a.n < 2 || a.k < 0 || a.k > a.n - 1) throw UsageError("mk needs n >= 2 and 0 <= k <= n-1");
    table = betti_Mk(a.k, ComplexSpec(a.n, field));
  } else {
    if (a.n < 2 || a.k < 1 || a.k > a.n) throw UsageError("pair needs n >= 2 and 1 <= k <= n");
    for (int d : term_basis(a.k, ComplexSpec(a.n, field)).degrees) ++table[d];
  }
  long long total = 0;
  for (const auto& [d, count] : table) total += count;
  Outcome o;
  o.doc = {{"command", "betti"}, {"space", a.space}, {"n", a.n}, {"k", a.k}, {"case", c.field},
           {"betti", table_json(table)}, {"total", total}};
  o.table = std::move(table);
  return o;
}

Outcome run_complex(int n, const Common& c) {
  if (n < 2) throw UsageError("complex needs n >= 2, got n=" + std::to_string(n));
  const ExactnessReport report = verify_exactness(ComplexSpec(n, parse_field_case(c.field)));
  Outcome o;
  o.doc = {{"command", "complex"}};
  o.doc.update(report.to_json());
  o.code = report.passed() ? kOk : kFailure;
  return o;
}

struct PieriArgs {
  int a = 1;
  std::string partition;
  int k = 0;
  int n = 0;
};

Outcome run_pieri(const PieriArgs& a, const Common&) {
  if (a.n < 0 || a.k < 0 || a.k > a.n) throw UsageError("pieri needs 0 <= k <= n");
  if (a.a < 1) throw UsageError("pieri needs a >= 1");
  const BoxContext box(a.k, a.n);
  const Partition p = Partition::parse(a.partition);
  ojson product = ojson::array();
  ojson symbols = ojson::array();
  for (const auto& mu : pieri(a.a, p, box)) {
    product.push_back(mu.str());
    symbols.push_back(symbol_from_partition(mu, box).str());
  }
  Outcome o;
  o.doc = {{"command", "pieri"}, {"a", a.a}, {"partition", p.str()},
           {"symbol", symbol_from_partition(p, box).str()}, {"k", a.k}, {"n", a.n},
           {"product", product}, {"symbols", symbols}};
  return o;
}

// ---------------------------------------------------------------------------
// chern / holonomy

bool is_builtin_surface(const std::string& name) {
  return name == "pauli_sphere" || name == "block" || name == "block_family";
}

bool is_builtin_loop(const std::string& name) { return name == "real_loop_2x2"; }

json load_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path))
    throw UsageError("'" + path + "' is neither a builtin name nor a readable file");
  return read_json_file(path);
}

struct ChernArgs {
  std::string family;
  int k = 1;
  std::string grid = "200x100";
  std::string method = "both";
};

Outcome run_chern(const ChernArgs& a, const Common&) {
  SurfaceSource src;
  if (is_builtin_surface(a.family)) {
    src.name = a.family;
    src.family = builtin_surface(a.family);
  } else {
    src = surface_from_json(load_file(a.family));
    src.name = a.family;
  }
  const SampledSurface surface = src.grid ? *src.grid : sample_surface(*src.family, GridSize::parse(a.grid));
  const Eigen::Index dim = surface.values.front().rows();
  if (a.k < 1 || a.k >= dim)
    throw UsageError("level k=" + std::to_string(a.k) + " outside [1, " + std::to_string(dim - 1) + "]");

  Outcome o;
  o.doc = {{"command", "chern"},
           {"family", src.name},
           {"k", a.k},
           {"grid", {{"Nu", surface.nu}, {"Nv", surface.nv}, {"kind", surface.kind == GridKind::Sphere ? "sphere" : "closed"}}},
           {"method", a.method}};
  std::optional<double> form;
  std::optional<FhsResult> fhs;
  if (a.method != "fhs") {
    form = chern_via_form(surface, a.k);
    o.doc["form"] = {{"raw", *form}, {"rounded", std::lround(*form)}};
  }
  if (a.method != "form") {
    fhs = chern_fhs(surface, a.k);
    o.doc["fhs"] = {{"raw", fhs->raw}, {"chern", fhs->chern}};
  }
  if (form && fhs) {
    const bool agree = std::lround(*form) == fhs->chern;
    o.doc["agree"] = agree;
    if (!agree) o.code = kFailure;
  }
  o.doc["chern"] = fhs ? fhs->chern : std::lround(*form);
  return o;
}

struct HolonomyArgs {
  std::string loop;
  int k = 1;
  int steps = 400;
};

Outcome run_holonomy(const HolonomyArgs& a, const Common&) {
  LoopSource src;
  if (is_builtin_loop(a.loop)) {
    src.name = a.loop;
    src.family = builtin_loop(a.loop);
  } else {
    src = loop_from_json(load_file(a.loop));
    src.name = a.loop;
  }
  if (a.steps < 1) throw UsageError("steps must be positive");
  const SampledLoop loop = src.loop ? *src.loop : sample_loop(*src.family, a.steps);
  const auto dim = loop.samples.front().rows();
  if (a.k < 1 || a.k >= dim)
    throw UsageError("level k=" + std::to_string(a.k) + " outside [1, " + std::to_string(dim - 1) + "]");
  Outcome o;
  o.doc = {{"command", "holonomy"},
           {"loop", src.name},
           {"k", a.k},
           {"steps", loop.samples.size()},
           {"holonomy", sw1_holonomy(loop, a.k)}};
  return o;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
  int n = 4;
  int k = 1;
  int trials = 100;
  int samples = 10000;
  double threshold = 1e-10;
  std::string path;
};

Outcome run_scan(const ScanArgs& a, const Common& c) {
  if (a.k < 1) throw UsageError("scan needs k >= 1");
  Outcome o;
  if (!a.path.empty()) {
    const PathSamples path = path_from_json(load_file(a.path));
    if (a.k >= path.samples.front().rows()) throw UsageError("scan level k out of range for the path");
    GapScan scan;
    if (path.field == FieldCase::Real) {
      std::vector<RealMatrix> real;
      for (const auto& m : path.samples) real.push_back(m.real());
      scan = min_gap_scan<double>(std::span<const RealMatrix>(real), a.k);
    } else {
      scan = min_gap_scan<cd>(std::span<const ComplexMatrix>(path.samples), a.k);
    }
    o.doc = {{"command", "scan"},     {"mode", "path"},          {"path", a.path},
             {"case", to_string(path.field)}, {"k", a.k},       {"samples", path.samples.size()},
             {"threshold", a.threshold},      {"min_gap", scan.min_gap}, {"index", scan.index},
             {"argmin", scan.argmin},         {"closing", scan.min_gap < a.threshold}};
    return o;
  }
  if (a.n < 2) throw UsageError("scan needs n >= 2");
  if (a.k >= a.n) throw UsageError("scan needs k <= n-1");
  if (a.trials < 1 || a.samples < 1) throw UsageError("scan needs positive trials and samples");
  const std::vector<GapScan> scans = random_segment_scans(parse_field_case(c.field), a.n, a.k, a.trials,
                                                         static_cast<std::size_t>(a.samples), c.seed);

  std::vector<double> gaps;
  ojson per_trial = ojson::array();
  for (const auto& s : scans) {
    gaps.push_back(s.min_gap);
    per_trial.push_back({{"min_gap", s.min_gap}, {"argmin", s.argmin}});
  }
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  const auto closings = std::count_if(gaps.begin(), gaps.end(), [&](double g) { return g < a.threshold; });
  o.doc = {{"command", "scan"},
           {"mode", "random"},
           {"case", c.field},
           {"n", a.n},
           {"k", a.k},
           {"trials", a.trials},
           {"samples", a.samples},
           {"seed", c.seed},
           {"threshold", a.threshold},
           {"summary",
            {{"min", sorted.front()},
             {"median", median},
             {"mean", pairwise_sum(gaps) / static_cast<double>(m)},
             {"max", sorted.back()}}},
           {"closings", closings},
           {"trials_detail", per_trial}};
  return o;
}

// ---------------------------------------------------------------------------

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--case", c.field, "real or hermitian")->check(CLI::IsMember({"real", "hermitian"}));
  sub->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  sub->add_option("--seed", c.seed, "seed for randomized checks");
  sub->add_option("--out", c.out, "write output to this file");
}

int emit(const Outcome& outcome, const Common& c) {
  const std::string text = render(outcome, c.format);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write '" + c.out + "'");
    f << text;
  }
  return outcome.code;
}

/// Numerical obstructions still produce a machine-readable record; csv falls back to json.
int report_failure(const Outcome& outcome, Common common, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  if (common.format == "csv") common.format = "json";
  try {
    emit(outcome, common);
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return outcome.code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strata: cohomology of eigenvalue-multiplicity strata and curvature of eigenbundles"};
  app.require_subcommand(1);

  Common common;
  BettiArgs betti;
  int complex_n = 0;
  PieriArgs pieri_args;
  ChernArgs chern;
  HolonomyArgs holonomy;
  ScanArgs scan;

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers of a Grassmannian, of M^k, or of the pair (B, M^{k-1})");
  betti_cmd->add_option("--n", betti.n)->required();
  betti_cmd->add_option("--k", betti.k)->required();
  betti_cmd->add_option("--space", betti.space)->check(CLI::IsMember({"grassmannian", "mk", "pair"}));

  auto* complex_cmd = app.add_subcommand("complex", "build and verify the Schubert model of the strata complex");
  complex_cmd->add_option("--n", complex_n)->required();

  auto* pieri_cmd = app.add_subcommand("pieri", "product of a one-row class with a Schubert class");
  pieri_cmd->add_option("--a", pieri_args.a)->required();
  pieri_cmd->add_option("--partition", pieri_args.partition, "comma-separated decreasing parts")->required();
  pieri_cmd->add_option("--k", pieri_args.k)->required();
  pieri_cmd->add_option("--n", pieri_args.n)->required();

  auto* chern_cmd = app.add_subcommand("chern", "Chern number of the lowest-k eigenbundle over a surface");
  chern_cmd->add_option("--family", chern.family, "pauli_sphere, block, or a family file")->required();
  chern_cmd->add_option("--k", chern.k);
  chern_cmd->add_option("--grid", chern.grid, "NuxNv");
  chern_cmd->add_option("--method", chern.method)->check(CLI::IsMember({"form", "fhs", "both"}));

  auto* holonomy_cmd = app.add_subcommand("holonomy", "first Stiefel-Whitney holonomy over a real loop");
  holonomy_cmd->add_option("--loop", holonomy.loop, "real_loop_2x2 or a loop file")->required();
  holonomy_cmd->add_option("--k", holonomy.k);
  holonomy_cmd->add_option("--steps", holonomy.steps);

  auto* scan_cmd = app.add_subcommand("scan", "minimum eigenvalue gap along random or stored paths");
  scan_cmd->add_option("--n", scan.n);
  scan_cmd->add_option("--k", scan.k);
  scan_cmd->add_option("--trials", scan.trials);
  scan_cmd->add_option("--samples", scan.samples);
  scan_cmd->add_option("--threshold", scan.threshold);
  scan_cmd->add_option("--path", scan.path, "stored path file");

  for (auto* sub : {betti_cmd, complex_cmd, pieri_cmd, chern_cmd, holonomy_cmd, scan_cmd}) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome outcome;
    if (command == "betti") outcome = run_betti(betti, common);
    else if (command == "complex") outcome = run_complex(complex_n, common);
    else if (command == "pieri") outcome = run_pieri(pieri_args, common);
    else if (command == "chern") outcome = run_chern(chern, common);
    else if (command == "holonomy") outcome = run_holonomy(holonomy, common);
    else outcome = run_scan(scan, common);
    return emit(outcome, common);
  } catch (const DegenerateAtK& e) {
    Outcome o{error_doc(command, "DegenerateAtK", e.what()), kFailure, std::nullopt};
    if (!std::isnan(e.u())) o.doc["u"] = e.u();
    if (!std::isnan(e.v())) o.doc["v"] = e.v();
    return report_failure(o, common, e.what());
  } catch (const SingularLink& e) {
    return report_failure({error_doc(command, "SingularLink", e.what()), kFailure, std::nullopt}, common, e.what());
  } catch (const StepTooCoarse& e) {
    return report_failure({error_doc(command, "StepTooCoarse", e.what()), kFailure, std::nullopt}, common, e.what());
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}
