// Acceptance suite: one checkable criterion per function, one PASS/FAIL line
// per criterion on stdout. Run all criteria or a single one with
// `acceptance --criterion N`; criterion 10 drives the CLI binary given via
// --cli PATH.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "infswitch/adapt.hpp"
#include "infswitch/dynamics.hpp"
#include "infswitch/errors.hpp"
#include "infswitch/estimators.hpp"
#include "infswitch/ldp.hpp"
#include "infswitch/potentials.hpp"
#include "infswitch/rng.hpp"
#include "support/test_models.hpp"

using namespace infswitch;
namespace fs = std::filesystem;

namespace {

const std::vector<double> kSixBetas{25.0, 12.5, 6.25, 3.125, 1.5625, 0.78125};

TemperatureLadder oracle_six_ladder() {
  const DoubleWellD model(1);
  const TemperatureLadder uniform = TemperatureLadder::with_uniform_weights(kSixBetas);
  const QuadratureReference ref = quadrature_reference(model, uniform);
  std::vector<double> log_n(ref.log_Z.size());
  for (std::size_t k = 0; k < log_n.size(); ++k) log_n[k] = -ref.log_Z[k];
  return TemperatureLadder(kSixBetas, log_n);
}

// Mixture-marginal probability of each histogram bin, by per-bin Simpson.
std::vector<double> oracle_bin_probabilities(const TemperatureLadder& ladder,
                                             double lo, double hi, int bins) {
  const DoubleWellD model(1);
  const TemperatureLadder uniform =
      TemperatureLadder::with_uniform_weights(ladder.betas());
  const QuadratureReference ref = quadrature_reference(model, uniform);
  double z_mix = 0.0;
  for (int k = 0; k < ladder.size(); ++k)
    z_mix += std::exp(ladder.log_n(k) + ref.log_Z[static_cast<std::size_t>(k)]);

  const double width = (hi - lo) / bins;
  std::vector<double> p(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b < bins; ++b) {
    const int sub = 8;
    const double h = width / sub;
    double acc = 0.0;
    for (int j = 0; j <= sub; ++j) {
      const double x = lo + b * width + j * h;
      double m = -std::numeric_limits<double>::infinity();
      std::vector<double> a(static_cast<std::size_t>(ladder.size()));
      for (int k = 0; k < ladder.size(); ++k) {
        a[static_cast<std::size_t>(k)] =
            ladder.log_n(k) - ladder.beta(k) * DoubleWellD::marginal_energy(x);
        m = std::max(m, a[static_cast<std::size_t>(k)]);
      }
      double s = 0.0;
      for (double ak : a) s += std::exp(ak - m);
      const double w = (j == 0 || j == sub) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      acc += w * std::exp(m) * s;
    }
    p[static_cast<std::size_t>(b)] = acc * h / 3.0 / z_mix;
  }
  return p;
}

// Bounded-width worker pool; keeps the per-run records from piling up.
void run_parallel(std::vector<std::function<void()>> jobs, unsigned max_workers) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      jobs[i]();
    }
  };
  std::vector<std::thread> threads;
  const unsigned n = std::min<unsigned>(max_workers, std::thread::hardware_concurrency());
  for (unsigned t = 0; t < std::max(1u, n); ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return values[values.size() / 2];
}

bool criterion_av_ordering() {
  // 1D double well, beta_k = 25 * 2^-k, oracle weights, dt = 0.025,
  // 1e7 steps, 5 seeds; median AV must decrease as the switching
  // frequency grows, for at least 2 of the 3 window sizes.
  const TemperatureLadder ladder = oracle_six_ladder();
  const std::vector<double> nus{0.1, 1.0, infinite_switching};
  const std::vector<std::uint64_t> window_sizes{1000, 10000, 100000};
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  std::vector<std::vector<double>> av(nus.size() * seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t ni = 0; ni < nus.size(); ++ni) {
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      jobs.push_back([&, ni, si] {
        const DoubleWellD model(1);
        IntegratorParams params;
        params.dt = 0.025;
        params.nu = nus[ni];
        params.rng_seed = seeds[si];
        Schedule schedule;
        schedule.n_steps = 10000000;
        OverdampedState state{{1.0}, 0, 0.0};
        const TrajectoryRecord record =
            run_trajectory(state, ladder, model, params, schedule);
        const BatchAvReport report =
            batch_asymptotic_variance(record.energies(), window_sizes);
        std::vector<double> values;
        for (const auto& entry : report.entries) values.push_back(entry.av);
        av[ni * seeds.size() + si] = values;
      });
    }
  }
  run_parallel(std::move(jobs), 2);

  int ordered = 0;
  for (std::size_t wi = 0; wi < window_sizes.size(); ++wi) {
    std::vector<double> med(nus.size());
    for (std::size_t ni = 0; ni < nus.size(); ++ni) {
      std::vector<double> values;
      for (std::size_t si = 0; si < seeds.size(); ++si)
        values.push_back(av[ni * seeds.size() + si][wi]);
      med[ni] = median(values);
    }
    const bool ok = med[0] > med[1] && med[1] > med[2];
    std::printf("        WS=%-6llu median AV: nu=0.1 %.4g | nu=1 %.4g | inf %.4g  %s\n",
                static_cast<unsigned long long>(window_sizes[wi]), med[0], med[1],
                med[2], ok ? "ordered" : "NOT ordered");
    if (ok) ++ordered;
  }
  return ordered >= 2;
}

TrajectoryRecord its_reference_run() {
  // Second-order (BAOAB) integration of the switching-limit dynamics keeps
  // the discretisation bias below the statistical resolution of 1e7 steps;
  // the Euler-Maruyama variant at this step size would not.
  const DoubleWellD model(1);
  const TemperatureLadder ladder = oracle_six_ladder();
  IntegratorParams params;
  params.dt = 0.025;
  params.gamma = 1.0;
  params.mass = 1.0;
  params.rng_seed = 1;
  Schedule schedule;
  schedule.n_steps = 10000000;
  schedule.observables.push_back(make_observable("x0", model));
  LangevinState state{{1.0}, {0.0}, 0.0};
  return run_trajectory(state, ladder, model, params, schedule);
}

bool criterion_its_stationarity() {
  const TemperatureLadder ladder = oracle_six_ladder();
  const TrajectoryRecord record = its_reference_run();
  const int bins = 200;
  const HistogramResult hist =
      histogram(record.column("x0"), {}, -3.0, 3.0, bins);
  const std::vector<double> p = oracle_bin_probabilities(ladder, -3.0, 3.0, bins);
  double l1 = 0.0;
  for (int b = 0; b < bins; ++b)
    l1 += std::abs(hist.weights[static_cast<std::size_t>(b)] / hist.total_weight -
                   p[static_cast<std::size_t>(b)]);
  std::printf("        L1(histogram, quadrature) = %.4f (limit 0.02)\n", l1);
  return l1 < 0.02;
}

bool criterion_reweighted_average() {
  const DoubleWellD model(1);
  const TemperatureLadder uniform = TemperatureLadder::with_uniform_weights(kSixBetas);
  const QuadratureReference ref = quadrature_reference(model, uniform);
  const TrajectoryRecord record = its_reference_run();
  const ReweightedAverage avg = reweighted_average(record, "V");
  const double dev = std::abs(avg.estimate - ref.mean_V[0]) / avg.std_error;
  std::printf("        <V> = %.6f vs oracle %.6f (|dev| = %.2f SE, limit 3)\n",
              avg.estimate, ref.mean_V[0], dev);
  return dev < 3.0;
}

bool criterion_detailed_balance() {
  Rng rng(314159);
  const DoubleWellD model(1);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4.0);
    std::vector<double> betas(static_cast<std::size_t>(n));
    std::vector<double> log_n(static_cast<std::size_t>(n));
    double beta = 5.0 + 20.0 * rng.uniform();
    for (int k = 0; k < n; ++k) {
      betas[static_cast<std::size_t>(k)] = beta;
      log_n[static_cast<std::size_t>(k)] = 6.0 * (rng.uniform() - 0.5);
      beta *= 0.3 + 0.5 * rng.uniform();
    }
    const TemperatureLadder ladder(betas, log_n);
    const double x = 4.0 * (rng.uniform() - 0.5);
    const double v = model.energy(std::span(&x, 1));
    const int from = static_cast<int>(rng.uniform() * n);
    const int to = (from + 1 < n) ? from + 1 : from - 1;

    // g_ft n_f e^{-b_f V} = g_tf n_t e^{-b_t V}, compared in log space
    const double a_from = ladder.log_n(from) - ladder.beta(from) * v;
    const double a_to = ladder.log_n(to) - ladder.beta(to) * v;
    const double lhs = std::log(acceptance_probability(ladder, v, from, to)) + a_from;
    const double rhs = std::log(acceptance_probability(ladder, v, to, from)) + a_to;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  std::printf("        worst relative asymmetry = %.3g (limit 1e-12)\n", worst);
  return worst < 1e-12;
}

bool criterion_gradient_consistency() {
  Rng rng(271828);
  const TemperatureLadder ladder = oracle_six_ladder();
  const DoubleWellD model(2, {1.7});
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{3.0 * (rng.uniform() - 0.5), 2.0 * (rng.uniform() - 0.5)};
    const double v = model.energy(x);
    const double scale = force_scale(ladder, v);
    const std::vector<double> f = model.force_vector(x);
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double step = 1e-6;
      std::vector<double> probe = x;
      probe[c] = x[c] + step;
      const double up = effective_potential(ladder, model.energy(probe));
      probe[c] = x[c] - step;
      const double down = effective_potential(ladder, model.energy(probe));
      const double grad = (up - down) / (2.0 * step);
      const double err = std::abs(scale * f[c] + grad) / (1.0 + std::abs(grad));
      worst = std::max(worst, err);
    }
  }
  std::printf("        worst relative error = %.3g (limit 1e-5)\n", worst);
  return worst < 1e-5;
}

bool criterion_ldp_monotonicity() {
  const DoubleWellD model(1);
  const TemperatureLadder ladder =
      TemperatureLadder::with_uniform_weights({25.0, 12.5});
  const int points = 4001;
  const std::vector<double> nus{0.1, 1.0, 10.0, 100.0};

  // the equilibrium itself: the rate functional vanishes for every nu
  const GridDensity rho = equilibrium_density(ladder, model, -4.0, 4.0, points);
  const ThetaField theta_rho = theta_from_density(rho, ladder, model);
  for (double nu : nus) {
    const double i_rho = rate_I(theta_rho, rho, ladder, model, nu);
    if (!(i_rho < 1e-10)) {
      std::printf("        I^nu(rho) = %.3g at nu=%g exceeds 1e-10\n", i_rho, nu);
      return false;
    }
  }

  bool all_ok = true;
  int checked = 0;
  for (const double alpha : {0.05, 0.1, 0.2, 0.3, 0.4}) {
    for (const double wavenumber : {1.0, 2.0}) {
      GridDensity mu = equilibrium_density(ladder, model, -4.0, 4.0, points);
      for (int k = 0; k < 2; ++k) {
        auto comp = mu.component(k);
        const double sign = (k == 0) ? 1.0 : -1.0;
        for (int i = 0; i < points; ++i)
          comp[static_cast<std::size_t>(i)] *=
              1.0 + sign * alpha * std::sin(wavenumber * mu.node(i));
      }
      mu.normalize();
      const ThetaField theta = theta_from_density(mu, ladder, model);
      const double j1 = rate_J1(theta, mu, ladder, model);
      double previous = -1.0;
      bool increasing = j1 > 0.0;
      for (double nu : nus) {
        const double i_nu = rate_I(theta, mu, ladder, model, nu);
        increasing = increasing && i_nu > previous;
        previous = i_nu;
      }
      ++checked;
      all_ok = all_ok && increasing;
    }
  }
  std::printf("        %d perturbed densities, strict increase over nu in all: %s\n",
              checked, all_ok ? "yes" : "no");
  return all_ok;
}

bool criterion_adaptive_weights() {
  const DoubleWellD model(1);
  const std::vector<double> betas{25.0, 12.5};
  const TemperatureLadder uniform = TemperatureLadder::with_uniform_weights(betas);
  const QuadratureReference ref = quadrature_reference(model, uniform);

  std::vector<double> log_Z = ref.log_Z;
  log_Z[1] += std::log(10.0);  // hot partition function off by 10x

  IntegratorParams params;
  params.dt = 0.025;
  params.nu = infinite_switching;
  params.rng_seed = 8;
  AdaptOptions options;
  options.l_max = 10;
  options.steps_per_iter = 1000000;
  options.interval = {0.35, 1.5};
  options.tolerance = 0.05;

  const AdaptState result = adapt_loop(log_Z, betas, model, params, options);
  const std::vector<double>& w = result.history.back().proportions;
  const double worst = std::max(std::abs(2.0 * w[0] - 1.0), std::abs(2.0 * w[1] - 1.0));
  std::printf("        %d iterations, final proportions (%.3f, %.3f), max |2w-1| = %.3f\n",
              result.iteration, w[0], w[1], worst);
  return result.iteration <= 10 && worst < 0.1;
}

bool criterion_wca_profile() {
  DimerInSolvent::Params dimer_params;
  const DimerInSolvent dimer(dimer_params);
  const std::vector<double> betas{5.0, 1.0};  // T0 = 0.2, T1 = 1.0

  IntegratorParams params;
  params.dt = 0.001;
  params.gamma = 1.0;
  params.mass = 1.0;
  params.rng_seed = 7;

  // weighting factors from the iterative protocol, started at Z = (1, 1e8)
  AdaptOptions options;
  options.l_max = 8;
  options.steps_per_iter = 200000;
  options.interval = {0.35, 1.5};
  const AdaptState adapted = adapt_loop({0.0, std::log(1e8)}, betas, dimer,
                                        params, options, /*underdamped=*/true);
  const TemperatureLadder ladder(betas,
                                 {-adapted.log_Z[0], -adapted.log_Z[1]});

  Schedule schedule;
  schedule.n_steps = 4000000;
  schedule.observables.push_back(make_observable("bond_r", dimer));
  LangevinState state{dimer.initial_configuration(),
                      std::vector<double>(dimer.initial_configuration().size(), 0.0),
                      0.0};
  const TrajectoryRecord record =
      run_trajectory(state, ladder, dimer, params, schedule);

  const FreeEnergyProfile profile = free_energy_profile(
      record.column("bond_r"), record.omega_phys(), 0.95, 2.45, 64, 5.0);

  auto argmin_in = [&](double lo, double hi) {
    int best = -1;
    for (std::size_t b = 0; b < profile.bin_centers.size(); ++b) {
      if (profile.bin_centers[b] < lo || profile.bin_centers[b] > hi) continue;
      if (!std::isfinite(profile.free_energy[b])) continue;
      if (best < 0 || profile.free_energy[b] < profile.free_energy[static_cast<std::size_t>(best)])
        best = static_cast<int>(b);
    }
    return best;
  };
  const int compact = argmin_in(1.0, 1.3);
  const int extended = argmin_in(1.9, 2.3);
  if (compact < 0 || extended < 0) {
    std::printf("        a minimum window has no populated bins\n");
    return false;
  }
  double barrier = -std::numeric_limits<double>::infinity();
  double barrier_r = 0.0;
  for (int b = compact + 1; b < extended; ++b) {
    const double f = profile.free_energy[static_cast<std::size_t>(b)];
    if (std::isfinite(f) && f > barrier) {
      barrier = f;
      barrier_r = profile.bin_centers[static_cast<std::size_t>(b)];
    }
  }
  const double f_compact = profile.free_energy[static_cast<std::size_t>(compact)];
  const double f_extended = profile.free_energy[static_cast<std::size_t>(extended)];
  std::printf("        minima: F(%.3f) = %.3f, F(%.3f) = %.3f; barrier F(%.3f) = %.3f\n",
              profile.bin_centers[static_cast<std::size_t>(compact)], f_compact,
              profile.bin_centers[static_cast<std::size_t>(extended)], f_extended,
              barrier_r, barrier);
  return std::isfinite(barrier) && barrier > f_compact + 0.1 &&
         barrier > f_extended + 0.1;
}

bool criterion_integrator_sanity() {
  const testing::Harmonic1D harmonic(1.0);
  const TemperatureLadder single = TemperatureLadder::with_uniform_weights({2.0});

  // frictionless BAOAB is velocity Verlet: bounded energy error
  IntegratorParams nve;
  nve.dt = 0.001;
  nve.gamma = 0.0;
  nve.mass = 1.0;
  LangevinState state{{1.0}, {0.5}, 0.0};
  Rng rng(1, 0);
  const double h0 = 0.5 * state.p[0] * state.p[0] + harmonic.energy(state.x);
  double max_drift = 0.0;
  for (int i = 0; i < 10000; ++i) {
    step_its_langevin(state, single, harmonic, nve, rng);
    const double h = 0.5 * state.p[0] * state.p[0] + harmonic.energy(state.x);
    max_drift = std::max(max_drift, std::abs(h - h0) / h0);
  }
  std::printf("        relative energy drift over 1e4 steps = %.3g (limit 1e-6)\n",
              max_drift);
  if (max_drift >= 1e-6) return false;

  // thermostatted momenta: Var(p) = m / beta_phys
  IntegratorParams nvt;
  nvt.dt = 0.01;
  nvt.gamma = 1.0;
  nvt.mass = 3.0;
  nvt.rng_seed = 12;
  Schedule schedule;
  schedule.n_steps = 400000;
  schedule.observables.push_back(make_observable("p0", harmonic));
  LangevinState thermal{{0.0}, {0.0}, 0.0};
  const TrajectoryRecord record =
      run_trajectory(thermal, single, harmonic, nvt, schedule);
  std::vector<double> p2;
  p2.reserve(record.size());
  for (double p : record.column("p0")) p2.push_back(p * p);
  const SeriesStats stats = batch_mean_stats(p2);
  const double expected = nvt.mass / single.beta_phys();
  const double dev = std::abs(stats.mean - expected) / stats.std_error;
  std::printf("        Var(p) = %.4f vs m/beta = %.4f (|dev| = %.2f SE, limit 3)\n",
              stats.mean, expected, dev);
  return dev < 3.0;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_cli_determinism(const std::string& cli) {
  if (cli.empty()) {
    std::printf("        pass --cli PATH to run this criterion\n");
    return false;
  }
  const fs::path dir = fs::temp_directory_path() / "infswitch_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "model.name = doublewell\n"
        << "ladder.betas = 25,12.5,6.25,3.125,1.5625,0.78125\n"
        << "ladder.log_n = oracle\n"
        << "dynamics.dt = 0.025\n"
        << "dynamics.nu = 1\n"
        << "dynamics.n_steps = 20000\n"
        << "dynamics.seed = 99\n"
        << "estimators.observables = x0\n"
        << "estimators.window_sizes = 100,1000\n";
  }
  for (const char* out_name : {"a", "b"}) {
    const std::string command = "\"" + cli + "\" run --config " + cfg.string() +
                                " --out " + (dir / out_name).string();
    if (std::system(command.c_str()) != 0) {
      std::printf("        CLI invocation failed\n");
      return false;
    }
  }
  for (const char* file : {"trajectory.csv", "summary.csv", "av.csv"}) {
    if (slurp(dir / "a" / file) != slurp(dir / "b" / file)) {
      std::printf("        %s differs between identical runs\n", file);
      return false;
    }
  }
  std::printf("        trajectory.csv, summary.csv, av.csv byte-identical\n");
  return true;
}

struct Criterion {
  int number;
  const char* label;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
    else if (arg == "--cli" && i + 1 < argc) cli = argv[++i];
    else {
      std::fprintf(stderr, "usage: %s [--criterion N] [--cli PATH]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "asymptotic variance decreases with switching frequency",
       criterion_av_ordering},
      {2, "switching-limit histogram matches the quadrature density (L1 < 0.02)",
       criterion_its_stationarity},
      {3, "reweighted <V> matches quadrature within 3 SE",
       criterion_reweighted_average},
      {4, "detailed balance of the switch acceptance (rel. 1e-12)",
       criterion_detailed_balance},
      {5, "scaled force equals the effective-potential gradient (rel. 1e-5)",
       criterion_gradient_consistency},
      {6, "rate functional: zero at equilibrium, strictly increasing in nu",
       criterion_ldp_monotonicity},
      {7, "adaptive weights recover uniform proportions within 10 iterations",
       criterion_adaptive_weights},
      {8, "dimer bond free-energy profile has two minima and a barrier",
       criterion_wca_profile},
      {9, "BAOAB: energy conservation and momentum equipartition",
       criterion_integrator_sanity},
      {10, "repeated CLI runs are byte-identical",
       [&cli] { return criterion_cli_determinism(cli); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    if (only != 0 && criterion.number != only) continue;
    bool ok = false;
    try {
      ok = criterion.run();
    } catch (const std::exception& err) {
      std::printf("        exception: %s\n", err.what());
    }
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.label);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
