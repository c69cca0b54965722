#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "infswitch/dynamics.hpp"
#include "infswitch/ladder.hpp"
#include "infswitch/potentials.hpp"

namespace infswitch {

struct ReweightedAverage {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

/// Physical-temperature ensemble average of A through the reweighting
/// identity <A>_phys = sum_t A_t w0_t / sum_t w0_t, with the standard error
/// from batch means of the ratio estimator over `n_batches` equal batches.
ReweightedAverage reweighted_average(std::span<const double> values,
                                     std::span<const double> omega_phys,
                                     int n_batches = 32);

/// Convenience overload pulling a named column ("V" or an observable name)
/// and the stored omega_0 out of a trajectory record.
ReweightedAverage reweighted_average(const TrajectoryRecord& record,
                                     const std::string& column,
                                     int n_batches = 32);

struct BatchAvEntry {
  std::uint64_t window_size = 0;
  double av = 0.0;             // sample variance of windowed sums
  double av_normalized = 0.0;  // variance of window means times window size
  std::size_t n_batches = 0;
  bool skipped = false;  // window longer than half the series
};

struct BatchAvReport {
  std::vector<BatchAvEntry> entries;
};

/// Asymptotic-variance proxy: for each window size, the series is cut into
/// consecutive windows, each window is summed, and the sample variance of
/// those sums is reported (trailing remainder discarded). Window sizes that
/// leave fewer than two windows are flagged as skipped.
BatchAvReport batch_asymptotic_variance(std::span<const double> series,
                                        std::span<const std::uint64_t> window_sizes);

struct HistogramResult {
  std::vector<double> bin_edges;    // size bins + 1
  std::vector<double> bin_centers;  // size bins
  std::vector<double> weights;      // accumulated weight per bin
  double total_weight = 0.0;        // in-range weight
  std::uint64_t n_out_of_range = 0;
};

/// Fixed-range histogram; pass an empty weight span for unit weights.
HistogramResult histogram(std::span<const double> values,
                          std::span<const double> sample_weights, double lo,
                          double hi, int bins);

struct FreeEnergyProfile {
  std::vector<double> bin_centers;
  std::vector<double> counts;       // weighted counts
  std::vector<double> free_energy;  // NaN on empty bins; min over others is 0
  double bin_width = 0.0;
};

/// F(r) = -ln(weighted density) / beta_phys over the binned reaction
/// coordinate, gauge-fixed so the smallest reported value is zero. Weights
/// are the physical-temperature reweighting factors omega_0.
FreeEnergyProfile free_energy_profile(std::span<const double> coordinate,
                                      std::span<const double> omega_phys,
                                      double lo, double hi, int bins,
                                      double beta_phys);

struct QuadratureOptions {
  double half_width = 4.0;  // x0 integration window [-L, L]
  int points = 20001;       // composite Simpson nodes (odd)
};

/// Quadrature reference for the separable double well: per-beta partition
/// functions (log and linear), mean potential energies, and the mixture
/// marginal density of x0 on the quadrature grid. The Gaussian modes are
/// integrated analytically, only the x0 factor is done numerically.
struct QuadratureReference {
  std::vector<double> betas;
  std::vector<double> log_Z;
  std::vector<double> Z;
  std::vector<double> mean_V;
  std::vector<double> grid_x;
  std::vector<double> rho;  // mixture x0-marginal, normalised
};

QuadratureReference quadrature_reference(const DoubleWellD& model,
                                         const TemperatureLadder& ladder,
                                         const QuadratureOptions& options = {});

/// Mean and batch-means standard error of a plain time series.
struct SeriesStats {
  double mean = 0.0;
  double std_error = 0.0;
};
SeriesStats batch_mean_stats(std::span<const double> series, int n_batches = 32);

}  // namespace infswitch
