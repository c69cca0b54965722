#include "infswitch/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infswitch/errors.hpp"

namespace infswitch {

TemperatureLadder::TemperatureLadder(std::vector<double> betas,
                                     std::vector<double> log_weights)
    : betas_(std::move(betas)), log_n_(std::move(log_weights)) {
  if (betas_.empty()) throw ArgumentError("ladder needs at least one beta");
  if (log_n_.size() != betas_.size())
    throw ArgumentError("ladder: betas and log weights differ in length");
  for (std::size_t k = 0; k < betas_.size(); ++k) {
    if (!(betas_[k] > 0.0) || !std::isfinite(betas_[k]))
      throw ArgumentError("ladder: betas must be positive and finite");
    if (!std::isfinite(log_n_[k]))
      throw ArgumentError("ladder: log weights must be finite");
    if (k > 0 && !(betas_[k] < betas_[k - 1]))
      throw ArgumentError(
          "ladder: betas must be strictly decreasing (index 0 is the "
          "physical temperature)");
  }
}

TemperatureLadder TemperatureLadder::with_uniform_weights(
    std::vector<double> betas) {
  std::vector<double> zeros(betas.size(), 0.0);
  return TemperatureLadder(std::move(betas), std::move(zeros));
}

double log_sum_exp(std::span<const double> a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : a) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : a) s += std::exp(v - m);
  return m + std::log(s);
}

void log_terms_into(const TemperatureLadder& ladder, double energy,
                    std::span<double> out) {
  const int n = ladder.size();
  for (int k = 0; k < n; ++k) out[k] = ladder.log_n(k) - ladder.beta(k) * energy;
}

std::vector<double> log_terms(const TemperatureLadder& ladder, double energy) {
  std::vector<double> out(static_cast<std::size_t>(ladder.size()));
  log_terms_into(ladder, energy, out);
  return out;
}

void weights_into(const TemperatureLadder& ladder, double energy,
                  std::span<double> out) {
  const int n = ladder.size();
  log_terms_into(ladder, energy, out);
  double m = out[0];
  for (int k = 1; k < n; ++k) m = std::max(m, out[k]);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    out[k] = std::exp(out[k] - m);
    sum += out[k];
  }
  for (int k = 0; k < n; ++k) out[k] /= sum;
}

WeightVector weights(const TemperatureLadder& ladder, double energy) {
  WeightVector w;
  w.omega.resize(static_cast<std::size_t>(ladder.size()));
  weights_into(ladder, energy, w.omega);
  return w;
}

double acceptance_probability(const TemperatureLadder& ladder, double energy,
                              int from, int to) {
  if (from < 0 || from >= ladder.size() || to < 0 || to >= ladder.size())
    throw ArgumentError("acceptance_probability: temperature index out of range");
  if (from == to)
    throw ArgumentError("acceptance_probability: from == to");
  const double a_from = ladder.log_n(from) - ladder.beta(from) * energy;
  const double a_to = ladder.log_n(to) - ladder.beta(to) * energy;
  // min(a_to - a_from, 0) keeps the ratio exact in log space; the linear
  // min(exp(..), 1) form would overflow for large energy gaps.
  return std::exp(std::min(a_to - a_from, 0.0));
}

double effective_potential(const TemperatureLadder& ladder, double energy) {
  std::vector<double> a = log_terms(ladder, energy);
  return -log_sum_exp(a) / ladder.beta_phys();
}

double force_scale(const TemperatureLadder& ladder, double energy) {
  std::vector<double> w(static_cast<std::size_t>(ladder.size()));
  weights_into(ladder, energy, w);
  double s = 0.0;
  for (int k = 0; k < ladder.size(); ++k) s += ladder.beta(k) * w[k];
  return s / ladder.beta_phys();
}

double mobility(const TemperatureLadder& ladder, double energy) {
  std::vector<double> w(static_cast<std::size_t>(ladder.size()));
  weights_into(ladder, energy, w);
  double b = 0.0;
  for (int k = 0; k < ladder.size(); ++k)
    b += ladder.beta_phys() / ladder.beta(k) * w[k];
  return b;
}

MixtureStats mixture_stats(const TemperatureLadder& ladder, double energy,
                           std::span<double> scratch) {
  const int n = ladder.size();
  log_terms_into(ladder, energy, scratch);
  double m = scratch[0];
  for (int k = 1; k < n; ++k) m = std::max(m, scratch[k]);
  double sum = 0.0;
  double beta_dot = 0.0;
  for (int k = 0; k < n; ++k) {
    const double e = std::exp(scratch[k] - m);
    scratch[k] = e;
    sum += e;
    beta_dot += ladder.beta(k) * e;
  }
  MixtureStats out;
  out.force_scale = beta_dot / (sum * ladder.beta_phys());
  out.omega_phys = scratch[0] / sum;
  out.effective_potential = -(m + std::log(sum)) / ladder.beta_phys();
  return out;
}

}  // namespace infswitch
