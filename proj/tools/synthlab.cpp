// Command-line front end: experiment orchestration, figure-data presets and
// result persistence. Subcommands: phase, noise, geometry, print-config.

#include "synthlab/cone.hpp"
#include "synthlab/dictionary.hpp"
#include "synthlab/errors.hpp"
#include "synthlab/io.hpp"
#include "synthlab/lab.hpp"
#include "synthlab/rng.hpp"
#include "synthlab/solvers.hpp"
#include "synthlab/width.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace synthlab;

namespace {

// Flat key/value configuration with documented defaults. The manifest echoes
// the fully resolved table, so a run can be reproduced from it alone.
struct ConfigEntry {
  std::string value;
  std::string doc;
};

class RunConfig {
public:
  RunConfig() {
    set("dictionary", "haar", "identity | gaussian | haar | conv-pair | superres | tv-pinv");
    set("n", "64", "signal dimension (power of two for haar)");
    set("d", "128", "atom count, gaussian dictionary only");
    set("levels", "3", "decomposition levels, haar only");
    set("sigma", "10.0", "kernel width, superres only");
    set("dict_seed", "1", "seed for random dictionaries");
    set("normalize_atoms", "false", "rescale every atom to unit norm");
    set("coef_kind", "random-support", "random-support | blocks | pair | unit | jumps");
    set("s", "4", "sparsity of the drawn coefficient vector");
    set("coef_seed", "2", "seed for the coefficient draw");
    set("require_unique", "false", "redraw until the heuristic certifies a unique representer");
    set("use_minimal_representer", "true", "replace the drawn vector by a minimal l1 representer");
    set("m_values", "", "measurement grid, e.g. 2:64:2; empty = 2:n:2");
    set("s_values", "", "sparsity grid for the full phase experiment; empty = fixed-vector run");
    set("trials", "25", "trials per grid cell");
    set("inner_repetitions", "5", "repetitions per drawn signal in the full phase experiment");
    set("m", "0", "measurement count for noise sweeps; 0 = ceil(statdim) + 40");
    set("eta_values", "0:0.05:1", "noise grid start:step:stop");
    set("n_values", "", "dimension sweep for geometry; empty = single n");
    set("ensemble", "gaussian", "gaussian | rademacher");
    set("max_iters", "50000", "solver iteration cap");
    set("abs_tol", "1e-8", "solver absolute tolerance");
    set("rel_tol", "1e-6", "solver relative tolerance");
    set("penalty", "1.0", "operator-splitting prox scale");
    set("over_relaxation", "1.5", "splitting relaxation, in [1, 1.9]");
    set("width_samples", "300", "Monte-Carlo samples per statistical-dimension estimate");
    set("width_seed", "3", "seed for the width estimator");
    set("master_seed", "0", "seed from which all per-trial seeds derive");
    set("threads", "2", "worker threads");
    set("out", ".", "output directory");
    set("full_scale", "false", "lift desk-scale reductions (multi-hour runtimes)");
  }

  void set(const std::string& key, const std::string& value, const std::string& doc = "") {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      order_.push_back(key);
      entries_[key] = {value, doc};
    } else {
      it->second.value = value;
      if (!doc.empty()) it->second.doc = doc;
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  const std::string& str(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("unknown config key: " + key);
    return it->second.value;
  }

  int integer(const std::string& key) const {
    try {
      return std::stoi(str(key));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " is not an integer: " + str(key));
    }
  }

  double real(const std::string& key) const {
    try {
      return std::stod(str(key));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " is not a number: " + str(key));
    }
  }

  bool flag(const std::string& key) const {
    const std::string& v = str(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key " + key + " is not a boolean: " + v);
  }

  std::uint64_t seed(const std::string& key) const {
    try {
      return std::stoull(str(key));
    } catch (const std::exception&) {
      throw ConfigError("config key " + key + " is not a seed: " + str(key));
    }
  }

  void load_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
          throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
        continue;
      }
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (!entries_.count(key))
        throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": unknown key " + key);
      entries_[key].value = value;
    }
  }

  void print(std::ostream& out, bool with_docs) const {
    for (const std::string& key : order_) {
      const ConfigEntry& e = entries_.at(key);
      if (with_docs && !e.doc.empty()) out << "# " << e.doc << "\n";
      out << key << " = " << e.value << "\n";
    }
  }

private:
  std::vector<std::string> order_;
  std::map<std::string, ConfigEntry> entries_;
};

std::vector<int> parse_int_grid(const std::string& text) {
  // start:stop:stride or a comma-separated list
  std::vector<int> values;
  if (text.empty()) return values;
  if (text.find(':') != std::string::npos) {
    int start = 0, stop = 0, stride = 1;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> start >> c1 >> stop >> c2 >> stride;
    if (!ss || c1 != ':' || c2 != ':' || stride <= 0 || stop < start)
      throw ConfigError("bad integer grid: " + text);
    for (int v = start; v <= stop; v += stride) values.push_back(v);
    return values;
  }
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
  if (values.empty()) throw ConfigError("bad integer grid: " + text);
  return values;
}

std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> values;
  if (text.find(':') != std::string::npos) {
    double start = 0, step = 0, stop = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    ss >> start >> c1 >> step >> c2 >> stop;
    if (!ss || c1 != ':' || c2 != ':' || step <= 0.0 || stop < start)
      throw ConfigError("bad real grid: " + text);
    for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
    return values;
  }
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
  if (values.empty()) throw ConfigError("bad real grid: " + text);
  return values;
}

void apply_figure_preset(RunConfig& config, const std::string& name, bool full) {
  auto desk_or = [&](const std::string& desk, const std::string& full_value) {
    return full ? full_value : desk;
  };
  if (name == "fig1") {
    config.set("dictionary", "haar");
    config.set("n", desk_or("64", "256"));
    config.set("levels", "3");
    config.set("s_values", desk_or("2:24:2", "1:125:1"));
    config.set("m_values", desk_or("2:64:2", "1:256:1"));
    config.set("trials", desk_or("25", "2500"));
    config.set("coef_kind", "random-support");
  } else if (name == "fig5") {
    config.set("dictionary", "tv-pinv");
    config.set("coef_kind", "jumps");
    config.set("s", "4");
    config.set("n_values", desk_or("128,256,512,1024", "500,1000,2000,4000,10000"));
    config.set("use_minimal_representer", "false");
  } else if (name == "fig6a" || name == "fig6d") {
    config.set("dictionary", "haar");
    config.set("n", desk_or("64", "256"));
    config.set("levels", "3");
    config.set("coef_kind", name == "fig6a" ? "random-support" : "blocks");
    config.set("s", desk_or("4", "16"));
    config.set("trials", desk_or("25", "100"));
    config.set("m_values", desk_or("2:64:2", "1:256:1"));
    config.set("require_unique", "true");
  } else if (name == "fig6g") {
    config.set("dictionary", "gaussian");
    config.set("n", desk_or("64", "256"));
    config.set("d", desk_or("128", "512"));
    config.set("coef_kind", "random-support");
    config.set("s", desk_or("4", "16"));
    config.set("trials", desk_or("25", "100"));
    config.set("m_values", desk_or("2:64:2", "1:256:1"));
    config.set("require_unique", "true");
  } else if (name == "fig6j") {
    config.set("dictionary", "superres");
    config.set("n", desk_or("64", "256"));
    config.set("coef_kind", "pair");
    config.set("trials", desk_or("25", "100"));
    config.set("m_values", desk_or("2:64:2", "1:256:1"));
  } else if (name == "fig7") {
    config.set("dictionary", "haar");
    config.set("n", desk_or("64", "256"));
    config.set("levels", "3");
    config.set("coef_kind", "blocks");
    config.set("s", desk_or("9", "35"));
    config.set("trials", desk_or("25", "100"));
    config.set("m_values", desk_or("2:64:2", "1:256:1"));
    config.set("require_unique", "false");
  } else if (name == "fig8" || name == "haar-coef") {
    config.set("dictionary", "haar");
    config.set("n", desk_or("64", "256"));
    config.set("levels", "3");
    config.set("coef_kind", "random-support");
    config.set("s", desk_or("4", "16"));
    config.set("require_unique", "true");
    config.set("eta_values", "0:0.05:1");
    config.set("trials", desk_or("25", "100"));
  } else if (name == "haar-sig") {
    config.set("dictionary", "haar");
    config.set("n", desk_or("64", "256"));
    config.set("levels", "3");
    config.set("coef_kind", "blocks");
    config.set("s", desk_or("9", "35"));
    config.set("require_unique", "false");
    config.set("eta_values", "0:0.005:0.1");
    config.set("trials", desk_or("25", "100"));
  } else {
    throw ConfigError("unknown figure preset: " + name);
  }
}

Dictionary build_dictionary(const RunConfig& config, int n_override = 0) {
  const std::string label = config.str("dictionary");
  const int n = n_override > 0 ? n_override : config.integer("n");
  Dictionary dict;
  if (label == "identity") {
    dict = make_identity(n);
  } else if (label == "gaussian") {
    dict = make_gaussian(n, config.integer("d"), config.seed("dict_seed"));
  } else if (label == "haar") {
    dict = make_haar_redundant(n, config.integer("levels"));
  } else if (label == "conv-pair") {
    dict = make_conv_pair(n);
  } else if (label == "superres") {
    dict = make_superres(n, config.real("sigma"));
  } else if (label == "tv-pinv") {
    dict = make_tv_pinv(n);
  } else {
    throw ConfigError("unknown dictionary: " + label);
  }
  if (config.flag("normalize_atoms")) dict = normalize_atoms(dict);
  return dict;
}

SolverSettings build_solver(const RunConfig& config) {
  SolverSettings s;
  s.max_iters = config.integer("max_iters");
  s.abs_tol = config.real("abs_tol");
  s.rel_tol = config.real("rel_tol");
  s.penalty = config.real("penalty");
  s.over_relaxation = config.real("over_relaxation");
  if (s.max_iters < 1 || s.abs_tol <= 0.0 || s.rel_tol <= 0.0)
    throw ConfigError("solver settings out of range");
  if (s.over_relaxation < 1.0 || s.over_relaxation > 1.9)
    throw ConfigError("over_relaxation must lie in [1, 1.9]");
  return s;
}

EnsembleKind build_ensemble(const RunConfig& config) {
  const std::string kind = config.str("ensemble");
  if (kind == "gaussian") return EnsembleKind::gaussian;
  if (kind == "rademacher") return EnsembleKind::rademacher;
  throw ConfigError("unknown ensemble: " + kind);
}

// Draws the experiment coefficient vector per the configured recipe. For
// random draws with require_unique the draw repeats until the uniqueness
// heuristic accepts, so downstream coefficient-recovery statistics are
// meaningful.
CoefVector build_coefficients(const RunConfig& config, const Dictionary& dict,
                              const SolverSettings& solver) {
  const std::string kind = config.str("coef_kind");
  const int d = static_cast<int>(dict.d());
  const int s = config.integer("s");
  if (s < 1 || s > d) throw ConfigError("sparsity s out of range");
  const std::uint64_t seed = config.seed("coef_seed");

  auto draw = [&](int attempt) -> CoefVector {
    Generator gen(seed, {0xC0EFu, static_cast<std::uint64_t>(attempt)});
    Vector z = Vector::Zero(d);
    if (kind == "random-support") {
      for (int idx : gen.subset(d, s)) z[idx] = gen.normal();
    } else if (kind == "blocks") {
      // two contiguous blocks in the coarsest-scale section
      const int half = s / 2;
      const int base = d - static_cast<int>(dict.n());
      const int first = base + static_cast<int>(gen.below(dict.n() / 2 - half));
      const int second = base + static_cast<int>(dict.n() / 2 + gen.below(dict.n() / 2 - (s - half)));
      for (int i = 0; i < half; ++i) z[first + i] = gen.normal();
      for (int i = 0; i < s - half; ++i) z[second + i] = gen.normal();
    } else if (kind == "pair") {
      z[d / 2] = 1.0;
      z[d / 2 + 1] = -1.0;
    } else if (kind == "unit") {
      z[static_cast<int>(gen.below(d))] = 1.0;
    } else if (kind == "jumps") {
      throw ConfigError("coef_kind jumps is only valid for the geometry command");
    } else {
      throw ConfigError("unknown coef_kind: " + kind);
    }
    return CoefVector(std::move(z));
  };

  const bool require_unique = config.flag("require_unique");
  for (int attempt = 0; attempt < 50; ++attempt) {
    CoefVector z = draw(attempt);
    if ((dict.matrix * z.entries).norm() < 1e-12) continue;
    if (!require_unique) return z;
    if (is_unique_representer(dict, z, solver.tightened(1e-2), seed + attempt)) return z;
  }
  throw ConfigError("could not draw a coefficient vector satisfying require_unique");
}

// Piecewise-constant signal with `jumps` equidistant discontinuities and zero
// mean; its gradient is the canonical representer for the tv-pinv dictionary.
Vector jump_signal(int n, int jumps) {
  Vector x(n);
  const int segments = jumps + 1;
  for (int i = 0; i < n; ++i) {
    const int segment = std::min(segments - 1, i * segments / n);
    x[i] = (segment % 2 == 0) ? 1.0 : -1.0;
  }
  x.array() -= x.mean();
  return x;
}

void write_manifest(const RunConfig& config, const fs::path& dir, const std::string& command) {
  std::ofstream out(dir / "manifest.txt");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << "command = " << command << "\n";
  config.print(out, false);
}

struct CsvGuard {
  // Removes the files on error so failed runs leave no partial outputs.
  std::vector<fs::path> files;
  bool commit = false;
  ~CsvGuard() {
    if (commit) return;
    for (const fs::path& f : files) {
      std::error_code ec;
      fs::remove(f, ec);
    }
  }
};

int cmd_phase(const RunConfig& config) {
  const fs::path dir(config.str("out"));
  fs::create_directories(dir);
  write_manifest(config, dir, "phase");

  const SolverSettings solver = build_solver(config);
  const Dictionary dict = build_dictionary(config);
  const int threads = config.integer("threads");
  const std::uint64_t master_seed = config.seed("master_seed");
  const EnsembleKind kind = build_ensemble(config);

  std::vector<int> m_values = parse_int_grid(config.str("m_values"));
  if (m_values.empty()) m_values = parse_int_grid("2:" + std::to_string(dict.n()) + ":2");
  for (int m : m_values)
    if (m < 1) throw ConfigError("measurement counts must be positive");

  CsvGuard guard;
  guard.files = {dir / "phase.csv", dir / "widths.csv"};
  std::error_code ec;
  fs::remove(dir / "widths.csv", ec);

  PhaseGrid grid;
  if (!config.str("s_values").empty()) {
    PhaseFullOptions options;
    options.m_values = m_values;
    options.trials_per_cell = config.integer("trials");
    options.inner_repetitions = config.integer("inner_repetitions");
    options.width_samples = config.integer("width_samples");
    options.threads = threads;
    options.kind = kind;
    const std::vector<int> s_values = parse_int_grid(config.str("s_values"));
    for (int s : s_values)
      if (s < 1 || s > dict.d()) throw ConfigError("sparsity grid exceeds the atom count");
    grid = run_phase_full(dict, s_values, master_seed, solver, options);
    for (std::size_t si = 0; si < s_values.size(); ++si) {
      WidthEstimate est;
      est.statdim = grid.overlay[si];
      est.stderr_ = grid.overlay_stderr[si];
      est.samples = options.width_samples;
      est.seed = master_seed;
      append_width_csv(dict.label + "-s" + std::to_string(s_values[si]), est, dir / "widths.csv");
    }
  } else {
    CoefVector z_ref = build_coefficients(config, dict, solver);
    if (config.flag("use_minimal_representer")) {
      const BPSolution rep = solve_bp_eq(dict.matrix, dict.matrix * z_ref.entries, solver.tightened());
      z_ref = rep.z;
      z_ref.rebuild_support(1e-9);
    }
    const PolyhedralCone cone = descent_generators(dict, z_ref);
    const WidthEstimate width =
        estimate_statdim(cone, config.integer("width_samples"), config.seed("width_seed"), threads);
    append_width_csv(dict.label + "-fixed", width, dir / "widths.csv");
    grid = run_phase_fixed(dict, z_ref, m_values, config.integer("trials"), master_seed, solver,
                           threads, width, kind);
  }

  write_phase_csv(grid, dir / "phase.csv");
  guard.commit = true;

  long failures = 0, cells = 0;
  for (const auto& row : grid.solver_failures)
    for (int f : row) {
      failures += f;
      cells += grid.trials_per_cell;
    }
  if (failures * 20 > cells) {
    std::cerr << "solver failure rate " << (100.0 * failures / cells) << "% exceeds 5%\n";
    return 3;
  }
  return 0;
}

int cmd_noise(const RunConfig& config) {
  const fs::path dir(config.str("out"));
  fs::create_directories(dir);
  write_manifest(config, dir, "noise");

  const SolverSettings solver = build_solver(config);
  const Dictionary dict = build_dictionary(config);
  const int threads = config.integer("threads");
  const EnsembleKind kind = build_ensemble(config);

  CoefVector z_ref = build_coefficients(config, dict, solver);
  if (config.flag("use_minimal_representer")) {
    const BPSolution rep = solve_bp_eq(dict.matrix, dict.matrix * z_ref.entries, solver.tightened());
    z_ref = rep.z;
    z_ref.rebuild_support(1e-9);
  }

  const PolyhedralCone cone = descent_generators(dict, z_ref);
  const WidthEstimate width =
      estimate_statdim(cone, config.integer("width_samples"), config.seed("width_seed"), threads);
  const double m0 = predict_m0(width, 0.0).m0;
  int m = config.integer("m");
  if (m <= 0) m = static_cast<int>(std::ceil(width.statdim)) + 40;

  const std::vector<double> etas = parse_real_grid(config.str("eta_values"));
  for (double eta : etas)
    if (eta < 0.0) throw ConfigError("noise levels must be nonnegative");

  CsvGuard guard;
  guard.files = {dir / "noise.csv", dir / "widths.csv"};
  std::error_code ec;
  fs::remove(dir / "widths.csv", ec);
  append_width_csv(dict.label + "-noise", width, dir / "widths.csv");

  const NoiseSweep sweep = run_noise_sweep(dict, z_ref, m, etas, config.integer("trials"),
                                           config.seed("master_seed"), solver, m0, threads, kind);
  write_noise_csv(sweep, dir / "noise.csv");
  guard.commit = true;

  long failures = 0, total = 0;
  for (const auto& row : sweep.trials)
    for (const TrialResult& t : row) {
      ++total;
      if (!t.solver_converged) ++failures;
    }
  if (failures * 20 > total) {
    std::cerr << "solver failure rate " << (100.0 * failures / total) << "% exceeds 5%\n";
    return 3;
  }
  return 0;
}

int cmd_geometry(const RunConfig& config) {
  const fs::path dir(config.str("out"));
  fs::create_directories(dir);
  write_manifest(config, dir, "geometry");

  const SolverSettings solver = build_solver(config);
  const int threads = config.integer("threads");

  std::vector<int> n_values;
  if (!config.str("n_values").empty())
    n_values = parse_int_grid(config.str("n_values"));
  else
    n_values = {config.integer("n")};

  CsvGuard guard;
  guard.files = {dir / "geometry.csv", dir / "widths.csv", dir / "decomposition.csv"};
  std::error_code ec;
  fs::remove(dir / "widths.csv", ec);
  fs::remove(dir / "decomposition.csv", ec);

  std::vector<GeometryRow> rows;
  for (int n : n_values) {
    const Dictionary dict = build_dictionary(config, n);
    CoefVector z_ref;
    if (config.str("coef_kind") == "jumps") {
      if (config.str("dictionary") != "tv-pinv")
        throw ConfigError("coef_kind jumps requires the tv-pinv dictionary");
      const Vector x0 = jump_signal(n, config.integer("s"));
      z_ref = CoefVector(forward_difference(n) * x0);
      z_ref.rebuild_support(1e-9);
    } else {
      z_ref = build_coefficients(config, dict, solver);
      if (config.flag("use_minimal_representer")) {
        z_ref = maximal_representer(dict, dict.matrix * z_ref.entries, solver.tightened());
      }
    }

    const ConeDecomposition dec = lineality_decompose(dict, z_ref);
    const WidthEstimate width = estimate_statdim_decomposed(
        dec, config.integer("width_samples"), config.seed("width_seed"), threads);

    GeometryRow row;
    row.n = n;
    row.d = static_cast<int>(dict.d());
    row.s_bar = z_ref.sparsity();
    row.lineality_dim = dec.lineality_dim();
    row.range_generators = static_cast<int>(dec.range_cone.generator_count());
    row.alpha = dec.circum_alpha;
    row.tan2_alpha = std::pow(std::tan(dec.circum_alpha), 2);
    row.statdim = width.statdim;
    row.statdim_stderr = width.stderr_;
    const int k = row.range_generators;
    row.bound_polyhedral =
        k >= 5 ? row.lineality_dim + std::pow(width_bound_polyhedral(dec.circum_alpha, k), 2) + 1.0
               : std::numeric_limits<double>::quiet_NaN();
    row.bound_gauge = (row.s_bar <= row.d - 3)
                          ? width_bound_gauge(row.s_bar, row.d, dec.circum_alpha)
                          : std::numeric_limits<double>::quiet_NaN();
    row.bound_corollary =
        row.s_bar + row.tan2_alpha * std::log(2.0 * (row.d - row.s_bar) / std::sqrt(2.0 * M_PI));

    // Condition-number transfer, using the empirical upper bound on the
    // minimum conic singular value (a lower bound on kappa, so the reported
    // number is indicative only).
    const double lambda_up = upper_bound_lambda_min(dict, z_ref, solver);
    if (std::isfinite(lambda_up) && lambda_up > 0.0) {
      const double kappa = std::max(1.0, dict.matrix.operatorNorm() / lambda_up);
      row.bound_condition = sampling_bound_condition(
          kappa, sparse_descent_width_bound(row.s_bar, row.d));
    } else {
      row.bound_condition = std::numeric_limits<double>::infinity();
    }

    const double mu = coherence(dict);
    const bool unit_atoms = (dict.atom_norms.maxCoeff() < 1.0 + 1e-9);
    if (unit_atoms && (mu == 0.0 || row.s_bar < 0.5 * (1.0 + 1.0 / mu)))
      row.bound_coherence = coherence_circumangle_bound(row.s_bar, mu);
    else
      row.bound_coherence = std::numeric_limits<double>::quiet_NaN();

    rows.push_back(row);
    append_width_csv(dict.label + "-n" + std::to_string(n), width, dir / "widths.csv");
    append_decomposition_csv(dict.label + "-n" + std::to_string(n), dec, dir / "decomposition.csv");
  }

  write_geometry_csv(rows, dir / "geometry.csv");
  guard.commit = true;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for l1-synthesis recovery experiments"};
  app.require_subcommand(1);

  std::string config_file, figure;
  bool desk = false, full = false;
  std::int64_t seed_override = -1;
  int threads_override = 0;
  std::string out_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key = value configuration file");
    cmd->add_option("--figure", figure, "figure preset (fig1, fig5, fig6a..fig6j, fig7, fig8, haar-coef, haar-sig)");
    cmd->add_flag("--desk", desk, "desk-scale parameters (default)");
    cmd->add_flag("--full", full, "full-scale parameters; multi-hour runtimes");
    cmd->add_option("--seed", seed_override, "override master_seed");
    cmd->add_option("--threads", threads_override, "override worker thread count");
    cmd->add_option("--out", out_override, "override output directory");
  };

  CLI::App* phase = app.add_subcommand("phase", "phase-transition experiment");
  CLI::App* noise = app.add_subcommand("noise", "noise-robustness sweep");
  CLI::App* geometry = app.add_subcommand("geometry", "cone decomposition and analytic bounds");
  CLI::App* print_config = app.add_subcommand("print-config", "print the resolved configuration");
  for (CLI::App* cmd : {phase, noise, geometry, print_config}) add_common(cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config;
    if (!figure.empty()) apply_figure_preset(config, figure, full);
    if (!config_file.empty()) config.load_file(config_file);
    if (full) config.set("full_scale", "true");
    if (seed_override >= 0) config.set("master_seed", std::to_string(seed_override));
    if (threads_override > 0) config.set("threads", std::to_string(threads_override));
    if (!out_override.empty()) config.set("out", out_override);

    if (print_config->parsed()) {
      config.print(std::cout, true);
      return 0;
    }
    if (phase->parsed()) return cmd_phase(config);
    if (noise->parsed()) return cmd_noise(config);
    if (geometry->parsed()) return cmd_geometry(config);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
