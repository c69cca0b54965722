#pragma once

#include <span>
#include <vector>

namespace infswitch {

/// Inverse-temperature ladder with log weighting factors.
///
/// Index 0 is always the physical temperature and the betas are strictly
/// decreasing, so beta(0) is the largest (coldest) value. Weighting factors
/// n_k are stored as ln n_k throughout: sensible initial guesses for the
/// partition-function-based choice n_k = 1/Z_k span many orders of
/// magnitude, and only ratios of the n_k ever matter.
class TemperatureLadder {
 public:
  TemperatureLadder(std::vector<double> betas, std::vector<double> log_weights);

  /// Ladder with all n_k = 1.
  static TemperatureLadder with_uniform_weights(std::vector<double> betas);

  int size() const { return static_cast<int>(betas_.size()); }
  double beta(int k) const { return betas_[static_cast<std::size_t>(k)]; }
  double beta_phys() const { return betas_[0]; }
  double log_n(int k) const { return log_n_[static_cast<std::size_t>(k)]; }

  const std::vector<double>& betas() const { return betas_; }
  const std::vector<double>& log_weights() const { return log_n_; }

 private:
  std::vector<double> betas_;
  std::vector<double> log_n_;
};

/// Per-temperature mixture weights omega_k(x); sums to one.
struct WeightVector {
  std::vector<double> omega;
};

/// log sum_i exp(a_i), overflow-safe.
double log_sum_exp(std::span<const double> a);

/// Log mixture terms a_k = ln n_k - beta_k * V.
std::vector<double> log_terms(const TemperatureLadder& ladder, double energy);
void log_terms_into(const TemperatureLadder& ladder, double energy,
                    std::span<double> out);

/// omega_k = n_k e^{-beta_k V} / sum_j n_j e^{-beta_j V}, evaluated through
/// a shifted softmax so any finite V is safe.
WeightVector weights(const TemperatureLadder& ladder, double energy);
void weights_into(const TemperatureLadder& ladder, double energy,
                  std::span<double> out);

/// Metropolis factor for a proposed temperature switch at fixed
/// configuration: min(n_to e^{-beta_to V} / (n_from e^{-beta_from V}), 1).
double acceptance_probability(const TemperatureLadder& ladder, double energy,
                              int from, int to);

/// Mixture effective potential U = -log(sum_k n_k e^{-beta_k V}) / beta_phys.
/// The normalisation constant of the stationary density is dropped; it only
/// shifts U and never enters the dynamics.
double effective_potential(const TemperatureLadder& ladder, double energy);

/// Dimensionless factor s(x) = sum_k beta_k omega_k / beta_phys, so that
/// s(x) f(x) = -grad U(x). Lies in [beta_min/beta_phys, 1].
double force_scale(const TemperatureLadder& ladder, double energy);

/// Configuration-dependent mobility of the infinite-switching dynamics,
/// sum_k (beta_phys / beta_k) omega_k; equals beta_phys times the weighted
/// effective temperature, and is >= 1 whenever all beta_k <= beta_phys.
double mobility(const TemperatureLadder& ladder, double energy);

/// One-pass bundle of the per-step mixture quantities.
struct MixtureStats {
  double force_scale;
  double omega_phys;  // omega_0, the physical-temperature weight
  double effective_potential;
};

/// Computes force_scale, omega_0 and U together; `scratch` must have
/// ladder.size() entries.
MixtureStats mixture_stats(const TemperatureLadder& ladder, double energy,
                           std::span<double> scratch);

}  // namespace infswitch
