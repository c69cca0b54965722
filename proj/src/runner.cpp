#include "infswitch/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "infswitch/adapt.hpp"
#include "infswitch/csv.hpp"
#include "infswitch/dynamics.hpp"
#include "infswitch/errors.hpp"
#include "infswitch/estimators.hpp"
#include "infswitch/ldp.hpp"

namespace infswitch {

namespace fs = std::filesystem;

namespace {

Config load_config(const std::string& path, const CliOverrides& overrides) {
  Config cfg = Config::from_file(path);
  cfg.apply_env_overrides();
  if (overrides.seed) cfg.set("dynamics.seed", std::to_string(*overrides.seed));
  if (overrides.out_dir) cfg.set("output.dir", *overrides.out_dir);
  if (overrides.replicas) cfg.set("run.replicas", std::to_string(*overrides.replicas));
  return cfg;
}

fs::path prepare_output_dir(Config& cfg) {
  const fs::path dir = cfg.get_string("output.dir", "out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

void write_manifest(const fs::path& dir, const Config& cfg) {
  std::ofstream out(dir / "manifest.txt");
  if (!out) throw ConfigError("cannot write manifest");
  out << "# infswitch " << INFSWITCH_VERSION << "\n";
  out << "# config: " << cfg.origin() << "\n";
  const std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# written: " << stamp << "\n";
  for (const auto& [key, value] : cfg.resolved())
    out << key << " = " << value << "\n";
}

struct LadderFile {
  std::vector<double> betas;
  std::vector<double> log_n;
};

// strtod-based cell parser: unlike std::stod it accepts values that
// underflow to subnormals/zero, which legitimately appear in density tails.
double parse_cell(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw ConfigError("malformed numeric cell '" + text + "'");
  return v;
}

LadderFile read_ladder_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ladder file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("k,beta,log_n", 0) != 0)
    throw ConfigError("ladder file '" + path + "' must start with 'k,beta,log_n'");
  LadderFile lf;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3)
      throw ConfigError("ladder file '" + path + "': malformed row '" + line + "'");
    lf.betas.push_back(parse_cell(cells[1]));
    lf.log_n.push_back(parse_cell(cells[2]));
  }
  if (lf.betas.empty()) throw ConfigError("ladder file '" + path + "' has no rows");
  return lf;
}

void write_ladder_file(const fs::path& path, const std::vector<double>& betas,
                       const std::vector<double>& log_n) {
  CsvWriter out(path.string(), {"k", "beta", "log_n"});
  for (std::size_t k = 0; k < betas.size(); ++k)
    out.row({std::to_string(k), format_double(betas[k]), format_double(log_n[k])});
}

}  // namespace

std::unique_ptr<PotentialModel> resolve_model(Config& cfg) {
  const std::string name = cfg.require_string("model.name");
  if (name == "doublewell") {
    const int dim = static_cast<int>(cfg.get_u64("model.dimension", 1));
    const std::vector<double> stiffness =
        cfg.get_double_list("model.stiffness", {});
    return std::make_unique<DoubleWellD>(dim, stiffness);
  }
  if (name == "dimer") {
    DimerInSolvent::Params p;
    p.n_particles = static_cast<int>(cfg.get_u64("model.particles", 16));
    p.box = cfg.get_double("model.box", 4.4);
    p.sigma = cfg.get_double("model.sigma", 1.0);
    p.epsilon = cfg.get_double("model.epsilon", 1.0);
    p.barrier_height = cfg.get_double("model.barrier_height", 1.0);
    p.well_width = cfg.get_double("model.well_width", 0.5);
    return std::make_unique<DimerInSolvent>(p);
  }
  throw ConfigError("model.name must be 'doublewell' or 'dimer', got '" + name + "'");
}

TemperatureLadder resolve_ladder(Config& cfg, const PotentialModel& model) {
  const std::string source = cfg.get_string("ladder.log_n", "uniform");
  if (source.rfind("file:", 0) == 0) {
    const LadderFile lf = read_ladder_file(source.substr(5));
    if (cfg.contains("ladder.betas")) {
      const std::vector<double> betas = cfg.require_double_list("ladder.betas");
      if (betas.size() != lf.betas.size())
        throw ConfigError("ladder.betas disagrees with the ladder file");
      for (std::size_t k = 0; k < betas.size(); ++k)
        if (std::abs(betas[k] - lf.betas[k]) > 1e-12 * std::abs(lf.betas[k]))
          throw ConfigError("ladder.betas disagrees with the ladder file");
    }
    return TemperatureLadder(lf.betas, lf.log_n);
  }

  const std::vector<double> betas = cfg.require_double_list("ladder.betas");
  if (source == "uniform")
    return TemperatureLadder::with_uniform_weights(betas);
  if (source == "oracle") {
    const auto* dw = dynamic_cast<const DoubleWellD*>(&model);
    if (dw == nullptr)
      throw ConfigError(
          "ladder.log_n = oracle needs the separable doublewell model");
    const TemperatureLadder uniform = TemperatureLadder::with_uniform_weights(betas);
    const QuadratureReference ref = quadrature_reference(*dw, uniform);
    std::vector<double> log_n(ref.log_Z.size());
    for (std::size_t k = 0; k < log_n.size(); ++k) log_n[k] = -ref.log_Z[k];
    return TemperatureLadder(betas, log_n);
  }
  // otherwise: an explicit list of ln n_k
  Config scratch;
  scratch.set("ladder.log_n", source);
  return TemperatureLadder(betas, scratch.require_double_list("ladder.log_n"));
}

namespace {

struct DynamicsSpec {
  IntegratorParams params;
  std::string type;  // "overdamped" | "langevin"
  std::uint64_t n_steps = 0;
  std::uint64_t record_stride = 1;
  std::vector<double> initial_x;
};

DynamicsSpec resolve_dynamics(Config& cfg, const PotentialModel& model,
                              bool consume_steps = true) {
  DynamicsSpec spec;
  spec.type = cfg.get_string("dynamics.type", "overdamped");
  if (spec.type != "overdamped" && spec.type != "langevin")
    throw ConfigError("dynamics.type must be 'overdamped' or 'langevin'");
  spec.params.dt = cfg.require_double("dynamics.dt");
  spec.params.nu = cfg.get_double_or_inf("dynamics.nu", infinite_switching);
  spec.params.gamma = cfg.get_double("dynamics.gamma", 1.0);
  spec.params.mass = cfg.get_double("dynamics.mass", 1.0);
  spec.params.rng_seed = cfg.get_u64("dynamics.seed", 0);
  spec.params.validate();
  if (spec.type == "langevin" && std::isfinite(spec.params.nu))
    throw ConfigError(
        "dynamics.type = langevin supports only nu = inf (the switching limit)");
  if (consume_steps) {
    spec.n_steps = cfg.require_u64("dynamics.n_steps");
    spec.record_stride = cfg.get_u64("dynamics.record_stride", 1);
    if (spec.record_stride == 0)
      throw ConfigError("dynamics.record_stride must be >= 1");
    const bool paper_scale = cfg.get_bool("run.paper_scale", false);
    if (paper_scale) spec.n_steps = cfg.require_u64("run.paper_n_steps");
    else if (cfg.contains("run.paper_n_steps"))
      cfg.get_u64("run.paper_n_steps", 0);  // consume; documented alternative
  }
  const std::string init = cfg.get_string("dynamics.initial", "default");
  if (init == "default") {
    spec.initial_x = model.initial_configuration();
  } else {
    Config scratch;
    scratch.set("x", init);
    spec.initial_x = scratch.require_double_list("x");
    if (static_cast<int>(spec.initial_x.size()) != model.dimension())
      throw ConfigError("dynamics.initial length does not match model dimension");
  }
  return spec;
}

struct EstimatorSpec {
  std::vector<std::string> observables;
  std::vector<std::uint64_t> window_sizes;
  std::string histogram_column;  // empty: no histogram output
  double histogram_lo = 0.0, histogram_hi = 1.0;
  int histogram_bins = 100;
  bool histogram_weighted = true;
};

EstimatorSpec resolve_estimators(Config& cfg) {
  EstimatorSpec spec;
  spec.observables = cfg.get_string_list("estimators.observables", {});
  spec.window_sizes =
      cfg.get_u64_list("estimators.window_sizes", {100, 1000, 10000, 100000});
  spec.histogram_column = cfg.get_string("estimators.histogram.column", "");
  if (!spec.histogram_column.empty()) {
    spec.histogram_lo = cfg.require_double("estimators.histogram.lo");
    spec.histogram_hi = cfg.require_double("estimators.histogram.hi");
    spec.histogram_bins = static_cast<int>(cfg.get_u64("estimators.histogram.bins", 100));
    spec.histogram_weighted = cfg.get_bool("estimators.histogram.weighted", true);
    if (spec.histogram_column != "V" &&
        std::find(spec.observables.begin(), spec.observables.end(),
                  spec.histogram_column) == spec.observables.end())
      throw ConfigError("estimators.histogram.column '" + spec.histogram_column +
                        "' must be listed in estimators.observables");
  }
  return spec;
}

const std::vector<double>& record_column(const TrajectoryRecord& record,
                                         const std::string& name) {
  return name == "V" ? record.energies() : record.column(name);
}

void write_trajectory_csv(const fs::path& path, const TrajectoryRecord& record,
                          std::uint64_t stride) {
  std::vector<std::string> header = {"t", "V", "omega0"};
  if (record.has_beta_index()) header.push_back("beta_index");
  for (const auto& name : record.observable_names()) header.push_back(name);
  CsvWriter out(path.string(), header);
  std::vector<std::string> cells;
  for (std::size_t i = 0; i < record.size(); i += stride) {
    cells.clear();
    cells.push_back(format_double(record.time_at(i)));
    cells.push_back(format_double(record.energies()[i]));
    cells.push_back(format_double(record.omega_phys()[i]));
    if (record.has_beta_index())
      cells.push_back(std::to_string(record.beta_indices()[i]));
    for (const auto& name : record.observable_names())
      cells.push_back(format_double(record.column(name)[i]));
    out.row(cells);
  }
}

}  // namespace

void cmd_run(const std::string& config_path, const CliOverrides& overrides) {
  Config cfg = load_config(config_path, overrides);
  const std::unique_ptr<PotentialModel> model = resolve_model(cfg);
  const TemperatureLadder ladder = resolve_ladder(cfg, *model);
  const DynamicsSpec dyn = resolve_dynamics(cfg, *model);
  const EstimatorSpec est = resolve_estimators(cfg);
  const int replicas = static_cast<int>(cfg.get_u64("run.replicas", 1));
  if (replicas < 1) throw ConfigError("run.replicas must be >= 1");
  const std::uint64_t traj_stride = cfg.get_u64("output.trajectory_stride", 1);
  if (traj_stride == 0) throw ConfigError("output.trajectory_stride must be >= 1");
  const fs::path dir = prepare_output_dir(cfg);
  cfg.assert_fully_consumed();

  Schedule schedule;
  schedule.n_steps = dyn.n_steps;
  schedule.record_stride = dyn.record_stride;
  for (const auto& name : est.observables)
    schedule.observables.push_back(make_observable(name, *model));

  CsvWriter summary((dir / "summary.csv").string(),
                    {"replica", "observable", "estimate", "std_error", "n_samples"});
  CsvWriter av_out((dir / "av.csv").string(),
                   {"replica", "window_size", "av", "av_normalized", "n_windows",
                    "skipped"});

  // Accumulated across replicas for the profile output.
  std::vector<double> profile_values;
  std::vector<double> profile_weights;

  for (int r = 0; r < replicas; ++r) {
    TrajectoryRecord record = [&] {
      if (dyn.type == "langevin") {
        LangevinState state{dyn.initial_x,
                            std::vector<double>(dyn.initial_x.size(), 0.0), 0.0};
        return run_trajectory(state, ladder, *model, dyn.params, schedule,
                              static_cast<std::uint64_t>(r));
      }
      OverdampedState state{dyn.initial_x, 0, 0.0};
      return run_trajectory(state, ladder, *model, dyn.params, schedule,
                            static_cast<std::uint64_t>(r));
    }();

    const std::string traj_name =
        replicas == 1 ? "trajectory.csv" : "trajectory_r" + std::to_string(r) + ".csv";
    write_trajectory_csv(dir / traj_name, record, traj_stride);

    std::vector<std::string> summary_columns = {"V"};
    for (const auto& name : est.observables)
      if (name != "p0") summary_columns.push_back(name);
    for (const auto& name : summary_columns) {
      const ReweightedAverage avg = reweighted_average(record, name);
      summary.row({std::to_string(r), name, format_double(avg.estimate),
                   format_double(avg.std_error), std::to_string(avg.n_samples)});
    }

    const BatchAvReport av =
        batch_asymptotic_variance(record.energies(), est.window_sizes);
    for (const auto& entry : av.entries)
      av_out.row({std::to_string(r), std::to_string(entry.window_size),
                  format_double(entry.av), format_double(entry.av_normalized),
                  std::to_string(entry.n_batches), entry.skipped ? "1" : "0"});

    if (!est.histogram_column.empty()) {
      const std::vector<double>& values = record_column(record, est.histogram_column);
      profile_values.insert(profile_values.end(), values.begin(), values.end());
      if (est.histogram_weighted)
        profile_weights.insert(profile_weights.end(), record.omega_phys().begin(),
                               record.omega_phys().end());
    }
  }

  if (!est.histogram_column.empty()) {
    const FreeEnergyProfile profile = free_energy_profile(
        profile_values,
        est.histogram_weighted ? std::span<const double>(profile_weights)
                               : std::span<const double>(),
        est.histogram_lo, est.histogram_hi, est.histogram_bins,
        ladder.beta_phys());
    CsvWriter out((dir / "profile.csv").string(),
                  {"bin_center", "count", "free_energy"});
    for (std::size_t b = 0; b < profile.bin_centers.size(); ++b)
      out.row({format_double(profile.bin_centers[b]),
               format_double(profile.counts[b]),
               format_double(profile.free_energy[b])});
  }

  write_manifest(dir, cfg);
}

void cmd_adapt(const std::string& config_path, const CliOverrides& overrides) {
  Config cfg = load_config(config_path, overrides);
  const std::unique_ptr<PotentialModel> model = resolve_model(cfg);
  const std::vector<double> betas = cfg.require_double_list("ladder.betas");

  std::vector<double> initial_log_Z;
  if (cfg.contains("adapt.initial_Z") && cfg.contains("adapt.initial_log_Z"))
    throw ConfigError("give either adapt.initial_Z or adapt.initial_log_Z, not both");
  if (cfg.contains("adapt.initial_Z")) {
    for (double z : cfg.require_double_list("adapt.initial_Z")) {
      if (!(z > 0.0)) throw ConfigError("adapt.initial_Z entries must be > 0");
      initial_log_Z.push_back(std::log(z));
    }
  } else {
    initial_log_Z = cfg.get_double_list("adapt.initial_log_Z",
                                        std::vector<double>(betas.size(), 0.0));
  }
  if (initial_log_Z.size() != betas.size())
    throw ConfigError("initial partition guesses must match ladder.betas in length");

  AdaptOptions options;
  options.l_max = static_cast<int>(cfg.get_u64("adapt.l_max", 10));
  options.steps_per_iter = cfg.require_u64("adapt.steps_per_iter");
  const std::vector<double> interval =
      cfg.get_double_list("adapt.interval", {0.35, 1.5});
  if (interval.size() != 2)
    throw ConfigError("adapt.interval must be 'lo,hi'");
  options.interval = {interval[0], interval[1]};
  options.tolerance = cfg.get_double("adapt.tolerance", 0.05);

  const DynamicsSpec dyn = resolve_dynamics(cfg, *model, /*consume_steps=*/false);
  const fs::path dir = prepare_output_dir(cfg);
  cfg.assert_fully_consumed();

  const AdaptState result =
      adapt_loop(initial_log_Z, betas, *model, dyn.params, options,
                 dyn.type == "langevin", dyn.initial_x);

  std::vector<std::string> header = {"iteration"};
  for (std::size_t k = 0; k < betas.size(); ++k)
    header.push_back("log_Z_" + std::to_string(k));
  for (std::size_t k = 0; k < betas.size(); ++k)
    header.push_back("w_" + std::to_string(k));
  CsvWriter history((dir / "adapt_history.csv").string(), header);
  for (std::size_t i = 0; i < result.history.size(); ++i) {
    std::vector<std::string> cells = {std::to_string(i + 1)};
    for (double z : result.history[i].log_Z) cells.push_back(format_double(z));
    for (double w : result.history[i].proportions)
      cells.push_back(format_double(w));
    history.row(cells);
  }

  std::vector<double> log_n(result.log_Z.size());
  for (std::size_t k = 0; k < log_n.size(); ++k) log_n[k] = -result.log_Z[k];
  write_ladder_file(dir / "ladder.csv", betas, log_n);
  write_manifest(dir, cfg);
}

namespace {

GridDensity density_from_spec(const std::string& spec,
                              const TemperatureLadder& ladder,
                              const PotentialModel& model, double lo, double hi,
                              int points) {
  if (spec == "equilibrium")
    return equilibrium_density(ladder, model, lo, hi, points);
  if (spec.rfind("sin:", 0) == 0) {
    // sin:<alpha>:<k> perturbs the equilibrium with opposite signs on the
    // two temperature components so the jump functional is exercised.
    const std::size_t second = spec.find(':', 4);
    if (second == std::string::npos)
      throw ConfigError("density spec '" + spec + "' must be sin:<alpha>:<k>");
    const double alpha = parse_cell(spec.substr(4, second - 4));
    const double wavenumber = parse_cell(spec.substr(second + 1));
    if (!(alpha > -1.0 && alpha < 1.0))
      throw ConfigError("density spec '" + spec + "': |alpha| must be < 1");
    GridDensity mu = equilibrium_density(ladder, model, lo, hi, points);
    for (int k = 0; k < mu.n_temperatures(); ++k) {
      auto comp = mu.component(k);
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      for (int i = 0; i < mu.n_points(); ++i)
        comp[static_cast<std::size_t>(i)] *=
            1.0 + sign * alpha * std::sin(wavenumber * mu.node(i));
    }
    mu.normalize();
    return mu;
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open density file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,k,value", 0) != 0)
      throw ConfigError("density file '" + path + "' must start with 'x,k,value'");
    std::map<int, std::map<int, double>> rows;  // k -> node index -> value
    std::vector<double> xs;
    std::map<double, int> x_index;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() != 3)
        throw ConfigError("density file '" + path + "': malformed row '" + line + "'");
      const double x = parse_cell(cells[0]);
      const int k = static_cast<int>(parse_cell(cells[1]));
      if (x_index.count(x) == 0) {
        x_index[x] = static_cast<int>(xs.size());
        xs.push_back(x);
      }
      rows[k][x_index[x]] = parse_cell(cells[2]);
    }
    if (xs.size() < 3) throw ConfigError("density file needs at least 3 nodes");
    std::vector<double> sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    const double h = sorted[1] - sorted[0];
    for (std::size_t i = 1; i + 1 < sorted.size(); ++i)
      if (std::abs(sorted[i + 1] - sorted[i] - h) > 1e-9 * std::abs(h))
        throw ConfigError("density file grid is not uniform");
    GridDensity mu(sorted.front(), sorted.back(), static_cast<int>(sorted.size()),
                   static_cast<int>(rows.size()));
    int expected_k = 0;
    for (const auto& [k, nodes] : rows) {
      if (k != expected_k++)
        throw ConfigError("density file temperature indices must be 0..N-1");
      if (nodes.size() != xs.size())
        throw ConfigError("density file is missing nodes for temperature " +
                          std::to_string(k));
      auto comp = mu.component(k);
      for (const auto& [xi, value] : nodes) {
        const int si = static_cast<int>(
            std::lround((xs[static_cast<std::size_t>(xi)] - sorted.front()) / h));
        comp[static_cast<std::size_t>(si)] = value;
      }
    }
    mu.normalize();
    return mu;
  }
  throw ConfigError("unknown density spec '" + spec + "'");
}

}  // namespace

void cmd_ldp(const std::string& config_path, const CliOverrides& overrides) {
  Config cfg = load_config(config_path, overrides);
  const std::unique_ptr<PotentialModel> model = resolve_model(cfg);
  const TemperatureLadder ladder = resolve_ladder(cfg, *model);
  const double lo = cfg.get_double("ldp.grid.lo", -4.0);
  const double hi = cfg.get_double("ldp.grid.hi", 4.0);
  const int points = static_cast<int>(cfg.get_u64("ldp.grid.points", 4001));
  const std::vector<double> nus =
      cfg.get_double_list("ldp.nus", {0.1, 1.0, 10.0, 100.0});
  const std::vector<std::string> specs =
      cfg.get_string_list("ldp.densities", {"equilibrium"});
  const fs::path dir = prepare_output_dir(cfg);
  cfg.assert_fully_consumed();

  CsvWriter out((dir / "ldp.csv").string(),
                {"density", "nu", "J0", "J1", "I", "J0_boltzmann"});
  for (const auto& spec : specs) {
    const GridDensity mu = density_from_spec(spec, ladder, *model, lo, hi, points);
    mu.check_invariants();
    const ThetaField theta = theta_from_density(mu, ladder, *model);
    const double j0 = rate_J0(theta, mu, ladder);
    const double j1 = rate_J1(theta, mu, ladder, *model);
    const double j0_boltzmann = rate_J0_boltzmann_form(theta, ladder, *model);
    for (double nu : nus)
      out.row({spec, format_double(nu), format_double(j0), format_double(j1),
               format_double(j0 + nu * j1), format_double(j0_boltzmann)});
  }
  write_manifest(dir, cfg);
}

void cmd_reference(const std::string& config_path, const CliOverrides& overrides) {
  Config cfg = load_config(config_path, overrides);
  const std::unique_ptr<PotentialModel> model = resolve_model(cfg);
  const auto* dw = dynamic_cast<const DoubleWellD*>(model.get());
  if (dw == nullptr)
    throw ConfigError("cmd_reference supports the doublewell model only");
  const std::vector<double> betas = cfg.require_double_list("ladder.betas");
  QuadratureOptions options;
  options.half_width = cfg.get_double("quadrature.half_width", 4.0);
  options.points = static_cast<int>(cfg.get_u64("quadrature.points", 20001));
  const fs::path dir = prepare_output_dir(cfg);
  cfg.assert_fully_consumed();

  // First pass with n_k = 1 gives the partition functions; the mixture
  // marginal is then evaluated with the oracle weights n_k = 1/Z_k.
  const TemperatureLadder uniform = TemperatureLadder::with_uniform_weights(betas);
  const QuadratureReference base = quadrature_reference(*dw, uniform, options);
  std::vector<double> log_n(base.log_Z.size());
  for (std::size_t k = 0; k < log_n.size(); ++k) log_n[k] = -base.log_Z[k];
  const TemperatureLadder oracle(betas, log_n);
  const QuadratureReference ref = quadrature_reference(*dw, oracle, options);

  CsvWriter out((dir / "reference.csv").string(), {"beta", "log_Z", "Z", "mean_V"});
  for (std::size_t k = 0; k < ref.betas.size(); ++k)
    out.row({format_double(ref.betas[k]), format_double(ref.log_Z[k]),
             format_double(ref.Z[k]), format_double(ref.mean_V[k])});

  CsvWriter grid((dir / "rho_grid.csv").string(), {"x", "rho"});
  for (std::size_t i = 0; i < ref.grid_x.size(); ++i)
    grid.row({format_double(ref.grid_x[i]), format_double(ref.rho[i])});

  write_ladder_file(dir / "ladder.csv", betas, log_n);
  write_manifest(dir, cfg);
}

}  // namespace infswitch
