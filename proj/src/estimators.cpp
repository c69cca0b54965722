#include "infswitch/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "infswitch/errors.hpp"

namespace infswitch {

namespace {

double sample_variance(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / (n - 1.0);
}

}  // namespace

SeriesStats batch_mean_stats(std::span<const double> series, int n_batches) {
  if (series.size() < 2) throw ArgumentError("batch_mean_stats: series too short");
  const int b = std::min<int>(n_batches, static_cast<int>(series.size()));
  const std::size_t len = series.size() / static_cast<std::size_t>(b);
  std::vector<double> means(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) {
    const auto batch = series.subspan(static_cast<std::size_t>(i) * len, len);
    means[static_cast<std::size_t>(i)] =
        std::accumulate(batch.begin(), batch.end(), 0.0) /
        static_cast<double>(len);
  }
  SeriesStats out;
  out.mean = std::accumulate(series.begin(), series.end(), 0.0) /
             static_cast<double>(series.size());
  out.std_error = std::sqrt(sample_variance(means) / static_cast<double>(b));
  return out;
}

ReweightedAverage reweighted_average(std::span<const double> values,
                                     std::span<const double> omega_phys,
                                     int n_batches) {
  if (values.size() != omega_phys.size())
    throw ArgumentError("reweighted_average: value/weight lengths differ");
  if (values.empty()) throw ArgumentError("reweighted_average: empty input");

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += values[i] * omega_phys[i];
    den += omega_phys[i];
  }
  if (den <= 0.0)
    throw DegenerateError("reweighted_average: total weight is zero");

  ReweightedAverage out;
  out.estimate = num / den;
  out.n_samples = values.size();

  const int b = std::min<int>(n_batches, static_cast<int>(values.size()));
  const std::size_t len = values.size() / static_cast<std::size_t>(b);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) {
    double bn = 0.0, bd = 0.0;
    for (std::size_t j = static_cast<std::size_t>(i) * len;
         j < (static_cast<std::size_t>(i) + 1) * len; ++j) {
      bn += values[j] * omega_phys[j];
      bd += omega_phys[j];
    }
    if (bd > 0.0) ratios.push_back(bn / bd);
  }
  if (ratios.size() < 2)
    throw DegenerateError("reweighted_average: too few non-empty batches");
  out.std_error = std::sqrt(sample_variance(ratios) /
                            static_cast<double>(ratios.size()));
  return out;
}

ReweightedAverage reweighted_average(const TrajectoryRecord& record,
                                     const std::string& column, int n_batches) {
  const std::vector<double>& values =
      (column == "V") ? record.energies() : record.column(column);
  return reweighted_average(values, record.omega_phys(), n_batches);
}

BatchAvReport batch_asymptotic_variance(
    std::span<const double> series, std::span<const std::uint64_t> window_sizes) {
  BatchAvReport report;
  report.entries.reserve(window_sizes.size());
  for (std::uint64_t ws : window_sizes) {
    BatchAvEntry entry;
    entry.window_size = ws;
    if (ws == 0) throw ArgumentError("window size must be >= 1");
    const std::size_t n_windows = series.size() / ws;
    if (n_windows < 2) {
      entry.skipped = true;
      report.entries.push_back(entry);
      continue;
    }
    std::vector<double> sums(n_windows, 0.0);
    for (std::size_t w = 0; w < n_windows; ++w) {
      const auto window = series.subspan(w * ws, ws);
      sums[w] = std::accumulate(window.begin(), window.end(), 0.0);
    }
    entry.av = sample_variance(sums);
    entry.av_normalized = entry.av / static_cast<double>(ws);
    entry.n_batches = n_windows;
    report.entries.push_back(entry);
  }
  return report;
}

HistogramResult histogram(std::span<const double> values,
                          std::span<const double> sample_weights, double lo,
                          double hi, int bins) {
  if (bins < 2) throw ArgumentError("histogram: need at least 2 bins");
  if (!(hi > lo)) throw ArgumentError("histogram: empty range");
  if (!sample_weights.empty() && sample_weights.size() != values.size())
    throw ArgumentError("histogram: weight length mismatch");

  HistogramResult h;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  h.bin_centers.resize(static_cast<std::size_t>(bins));
  h.weights.assign(static_cast<std::size_t>(bins), 0.0);
  const double width = (hi - lo) / bins;
  for (int b = 0; b <= bins; ++b) h.bin_edges[b] = lo + width * b;
  for (int b = 0; b < bins; ++b) h.bin_centers[b] = lo + width * (b + 0.5);

  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v < lo || v >= hi) {
      ++h.n_out_of_range;
      continue;
    }
    const int b = std::min<int>(static_cast<int>((v - lo) / width), bins - 1);
    const double w = sample_weights.empty() ? 1.0 : sample_weights[i];
    h.weights[static_cast<std::size_t>(b)] += w;
    h.total_weight += w;
  }
  if (h.total_weight <= 0.0)
    throw DegenerateError("histogram: no samples fell inside the range");
  return h;
}

FreeEnergyProfile free_energy_profile(std::span<const double> coordinate,
                                      std::span<const double> omega_phys,
                                      double lo, double hi, int bins,
                                      double beta_phys) {
  if (!(beta_phys > 0.0)) throw ArgumentError("free_energy_profile: beta <= 0");
  const HistogramResult h = histogram(coordinate, omega_phys, lo, hi, bins);

  FreeEnergyProfile profile;
  profile.bin_centers = h.bin_centers;
  profile.counts = h.weights;
  profile.bin_width = (hi - lo) / bins;
  profile.free_energy.assign(h.weights.size(),
                             std::numeric_limits<double>::quiet_NaN());
  double f_min = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < h.weights.size(); ++b) {
    if (h.weights[b] <= 0.0) continue;  // empty bins carry no free energy
    const double density = h.weights[b] / (h.total_weight * profile.bin_width);
    profile.free_energy[b] = -std::log(density) / beta_phys;
    f_min = std::min(f_min, profile.free_energy[b]);
  }
  for (double& f : profile.free_energy)
    if (std::isfinite(f)) f -= f_min;
  return profile;
}

namespace {

// Composite Simpson weights over an odd uniform grid.
double simpson(std::span<const double> values, double h) {
  const std::size_t n = values.size();
  double s = values[0] + values[n - 1];
  for (std::size_t i = 1; i + 1 < n; ++i) s += values[i] * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

QuadratureReference quadrature_reference(const DoubleWellD& model,
                                         const TemperatureLadder& ladder,
                                         const QuadratureOptions& options) {
  if (options.points < 3 || options.points % 2 == 0)
    throw ArgumentError("quadrature: points must be odd and >= 3");
  if (!(options.half_width > 0.0))
    throw ArgumentError("quadrature: window must be positive");

  const int n = options.points;
  const double L = options.half_width;
  const double h = 2.0 * L / (n - 1);
  QuadratureReference ref;
  ref.grid_x.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ref.grid_x[static_cast<std::size_t>(i)] = -L + h * i;

  std::vector<double> v0(static_cast<std::size_t>(n));
  double v_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    v0[static_cast<std::size_t>(i)] =
        DoubleWellD::marginal_energy(ref.grid_x[static_cast<std::size_t>(i)]);
    v_min = std::min(v_min, v0[static_cast<std::size_t>(i)]);
  }

  const int dim = model.dimension();
  std::vector<double> wv(static_cast<std::size_t>(n));
  std::vector<double> wvv(static_cast<std::size_t>(n));
  for (int k = 0; k < ladder.size(); ++k) {
    const double beta = ladder.beta(k);
    // Shift by the minimum so the integrand never overflows at large beta.
    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      wv[s] = std::exp(-beta * (v0[s] - v_min));
      wvv[s] = v0[s] * wv[s];
    }
    const double z0_shifted = simpson(wv, h);
    const double mean_v0 = simpson(wvv, h) / z0_shifted;
    double log_z = std::log(z0_shifted) - beta * v_min;
    double mean_v = mean_v0;
    for (int j = 1; j < dim; ++j) {
      log_z += 0.5 * std::log(2.0 * M_PI /
                              (beta * model.stiffness()[static_cast<std::size_t>(j - 1)]));
      mean_v += 0.5 / beta;  // equipartition of each harmonic mode
    }
    ref.betas.push_back(beta);
    ref.log_Z.push_back(log_z);
    ref.Z.push_back(std::exp(log_z));
    ref.mean_V.push_back(mean_v);
  }

  // Mixture x0-marginal: sum_k n_k G_k e^{-beta_k V0(x)} / sum_k n_k Z_k with
  // G_k the analytic Gaussian factor, evaluated with a common log shift.
  ref.rho.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> log_coeff(static_cast<std::size_t>(ladder.size()));
  for (int k = 0; k < ladder.size(); ++k) {
    double log_g = 0.0;
    for (int j = 1; j < dim; ++j)
      log_g += 0.5 * std::log(2.0 * M_PI /
                              (ladder.beta(k) * model.stiffness()[static_cast<std::size_t>(j - 1)]));
    log_coeff[static_cast<std::size_t>(k)] = ladder.log_n(k) + log_g;
  }
  for (int i = 0; i < n; ++i) {
    const std::size_t s = static_cast<std::size_t>(i);
    double m = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < ladder.size(); ++k)
      m = std::max(m, log_coeff[static_cast<std::size_t>(k)] -
                          ladder.beta(k) * v0[s]);
    double acc = 0.0;
    for (int k = 0; k < ladder.size(); ++k)
      acc += std::exp(log_coeff[static_cast<std::size_t>(k)] -
                      ladder.beta(k) * v0[s] - m);
    ref.rho[s] = std::exp(m) * acc;
  }
  const double norm = simpson(ref.rho, h);
  for (double& r : ref.rho) r /= norm;
  return ref;
}

}  // namespace infswitch
