#include "infswitch/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infswitch/errors.hpp"

namespace infswitch {

namespace {

void require_1d(const PotentialModel& model) {
  if (model.dimension() != 1)
    throw UnsupportedError("rate functionals are evaluated on 1D models only");
}

// Second-order gradient on a uniform grid.
std::vector<double> gradient(std::span<const double> f, double h) {
  const std::size_t n = f.size();
  std::vector<double> g(n);
  g[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) g[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  g[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return g;
}

double trapezoid_weight(int i, int n, double h) {
  return (i == 0 || i == n - 1) ? 0.5 * h : h;
}

}  // namespace

GridDensity::GridDensity(double lo, double hi, int n_points, int n_temperatures)
    : lo_(lo), hi_(hi), n_points_(n_points) {
  if (!(hi > lo)) throw ArgumentError("GridDensity: empty interval");
  if (n_points < 3) throw ArgumentError("GridDensity: need at least 3 nodes");
  if (n_temperatures < 1) throw ArgumentError("GridDensity: need a temperature");
  values_.assign(static_cast<std::size_t>(n_temperatures),
                 std::vector<double>(static_cast<std::size_t>(n_points), 0.0));
}

double GridDensity::total_mass() const {
  const double h = spacing();
  double mass = 0.0;
  for (const auto& comp : values_)
    for (int i = 0; i < n_points_; ++i)
      mass += trapezoid_weight(i, n_points_, h) * comp[static_cast<std::size_t>(i)];
  return mass;
}

void GridDensity::normalize() {
  for (const auto& comp : values_)
    for (double v : comp)
      if (v < 0.0 || !std::isfinite(v))
        throw ArgumentError("GridDensity: values must be finite and >= 0");
  const double mass = total_mass();
  if (!(mass > 0.0)) throw ArgumentError("GridDensity: zero total mass");
  for (auto& comp : values_)
    for (double& v : comp) v /= mass;
}

void GridDensity::check_invariants() const {
  for (const auto& comp : values_)
    for (double v : comp)
      if (v < 0.0 || !std::isfinite(v))
        throw ArgumentError("GridDensity: values must be finite and >= 0");
  if (std::abs(total_mass() - 1.0) > 1e-10)
    throw ArgumentError("GridDensity: mass deviates from 1 by more than 1e-10");
}

GridDensity equilibrium_density(const TemperatureLadder& ladder,
                                const PotentialModel& model, double lo,
                                double hi, int n_points) {
  require_1d(model);
  GridDensity rho(lo, hi, n_points, ladder.size());
  // Common log shift across all (node, temperature) pairs; the tails may
  // still underflow to zero, which downstream code treats as zero measure.
  double m = -std::numeric_limits<double>::infinity();
  std::vector<double> energies(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double x = rho.node(i);
    energies[static_cast<std::size_t>(i)] = model.energy(std::span(&x, 1));
  }
  for (int k = 0; k < ladder.size(); ++k)
    for (int i = 0; i < n_points; ++i)
      m = std::max(m, ladder.log_n(k) -
                          ladder.beta(k) * energies[static_cast<std::size_t>(i)]);
  for (int k = 0; k < ladder.size(); ++k) {
    auto comp = rho.component(k);
    for (int i = 0; i < n_points; ++i)
      comp[static_cast<std::size_t>(i)] =
          std::exp(ladder.log_n(k) -
                   ladder.beta(k) * energies[static_cast<std::size_t>(i)] - m);
  }
  rho.normalize();
  return rho;
}

ThetaField::ThetaField(const GridDensity& like, int n_temperatures)
    : lo(like.lo()), hi(like.hi()), n_points(like.n_points()) {
  values_.assign(static_cast<std::size_t>(n_temperatures),
                 std::vector<double>(static_cast<std::size_t>(n_points), 1.0));
}

ThetaField theta_from_density(const GridDensity& mu,
                              const TemperatureLadder& ladder,
                              const PotentialModel& model) {
  if (mu.n_temperatures() != ladder.size())
    throw ArgumentError("theta_from_density: component count mismatch");
  const GridDensity rho =
      equilibrium_density(ladder, model, mu.lo(), mu.hi(), mu.n_points());
  ThetaField theta(mu, ladder.size());
  for (int k = 0; k < ladder.size(); ++k) {
    auto t = theta.component(k);
    auto m = mu.component(k);
    auto r = rho.component(k);
    for (int i = 0; i < mu.n_points(); ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (r[s] > 0.0) {
        if (!(m[s] > 0.0))
          throw ZeroDensityError(
              "mu vanishes at node " + std::to_string(i) + ", temperature " +
              std::to_string(k) + " where the equilibrium density is positive");
        t[s] = m[s] / r[s];
      } else if (m[s] > 0.0) {
        throw ZeroDensityError(
            "mu carries mass outside the support of the equilibrium density "
            "(node " + std::to_string(i) + ")");
      }
      // both zero: neutral theta = 1 on a zero-measure node
    }
  }
  return theta;
}

double rate_J0(const ThetaField& theta, const GridDensity& mu,
               const TemperatureLadder& ladder) {
  if (mu.n_temperatures() != ladder.size())
    throw ArgumentError("rate_J0: component count mismatch");
  const double h = mu.spacing();
  const int n = mu.n_points();
  double j0 = 0.0;
  for (int k = 0; k < ladder.size(); ++k) {
    const auto t = theta.component(k);
    const auto m = mu.component(k);
    const std::vector<double> dt = gradient(t, h);
    const double inv_beta = 1.0 / ladder.beta(k);
    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (m[s] <= 0.0) continue;
      j0 += trapezoid_weight(i, n, h) * m[s] * inv_beta * dt[s] * dt[s] /
            (4.0 * t[s] * t[s]);
    }
  }
  return j0;
}

double rate_J0_boltzmann_form(const ThetaField& theta,
                              const TemperatureLadder& ladder,
                              const PotentialModel& model) {
  require_1d(model);
  const double h = (theta.hi - theta.lo) / (theta.n_points - 1);
  const int n = theta.n_points;
  double j0 = 0.0;
  for (int k = 0; k < ladder.size(); ++k) {
    // per-temperature Boltzmann density, normalised on the grid
    std::vector<double> rho_beta(static_cast<std::size_t>(n));
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double x = theta.lo + h * i;
      rho_beta[static_cast<std::size_t>(i)] =
          -ladder.beta(k) * model.energy(std::span(&x, 1));
      m = std::max(m, rho_beta[static_cast<std::size_t>(i)]);
    }
    double mass = 0.0;
    for (int i = 0; i < n; ++i) {
      auto& v = rho_beta[static_cast<std::size_t>(i)];
      v = std::exp(v - m);
      mass += trapezoid_weight(i, n, h) * v;
    }
    const auto t = theta.component(k);
    const std::vector<double> dt = gradient(t, h);
    const double inv_beta = 1.0 / ladder.beta(k);
    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (rho_beta[s] <= 0.0) continue;
      j0 += trapezoid_weight(i, n, h) * (rho_beta[s] / mass) * inv_beta *
            dt[s] * dt[s] / (8.0 * t[s]);
    }
  }
  return j0;
}

double rate_J1(const ThetaField& theta, const GridDensity& mu,
               const TemperatureLadder& ladder, const PotentialModel& model) {
  require_1d(model);
  if (ladder.size() != 2)
    throw UnsupportedError(
        "the jump rate functional is defined for two-temperature ladders");
  if (mu.n_temperatures() != 2)
    throw ArgumentError("rate_J1: mu must have two temperature components");
  const double h = mu.spacing();
  const int n = mu.n_points();
  double j1 = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int other = 1 - k;
    const auto t_self = theta.component(k);
    const auto t_other = theta.component(other);
    const auto m = mu.component(k);
    for (int i = 0; i < n; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      if (m[s] <= 0.0) continue;
      const double x = mu.node(i);
      const double energy = model.energy(std::span(&x, 1));
      const double g = acceptance_probability(ladder, energy, k, other);
      const double d = 1.0 - std::sqrt(t_other[s] / t_self[s]);
      j1 += 0.5 * trapezoid_weight(i, n, h) * g * d * d * m[s];
    }
  }
  return j1;
}

double rate_I(const ThetaField& theta, const GridDensity& mu,
              const TemperatureLadder& ladder, const PotentialModel& model,
              double nu) {
  if (!(nu >= 0.0)) throw ArgumentError("rate_I: nu must be >= 0");
  return rate_J0(theta, mu, ladder) + nu * rate_J1(theta, mu, ladder, model);
}

}  // namespace infswitch
