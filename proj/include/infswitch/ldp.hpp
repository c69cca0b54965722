#pragma once

#include <span>
#include <vector>

#include "infswitch/ladder.hpp"
#include "infswitch/potentials.hpp"

namespace infswitch {

/// Probability density on a uniform 1D grid times the temperature index,
/// normalised so the trapezoid integral of the summed components is one.
class GridDensity {
 public:
  GridDensity(double lo, double hi, int n_points, int n_temperatures);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int n_points() const { return n_points_; }
  int n_temperatures() const { return static_cast<int>(values_.size()); }
  double spacing() const { return (hi_ - lo_) / (n_points_ - 1); }
  double node(int i) const { return lo_ + spacing() * i; }

  std::span<double> component(int k) { return values_[static_cast<std::size_t>(k)]; }
  std::span<const double> component(int k) const {
    return values_[static_cast<std::size_t>(k)];
  }

  /// Trapezoid integral of the summed components.
  double total_mass() const;

  /// Rescales so total_mass() == 1; rejects negative or all-zero input.
  void normalize();

  /// Checks non-negativity and unit mass (tolerance 1e-10).
  void check_invariants() const;

 private:
  double lo_, hi_;
  int n_points_;
  std::vector<std::vector<double>> values_;  // [temperature][node]
};

/// Equilibrium mixture density rho(x, beta_k) on the grid, evaluated in log
/// space and trapezoid-normalised. Only 1D models are supported.
GridDensity equilibrium_density(const TemperatureLadder& ladder,
                                const PotentialModel& model, double lo,
                                double hi, int n_points);

/// Ratio field theta = mu / rho on the shared grid.
///
/// Nodes where both mu and rho vanish (deep tails that underflow) carry no
/// measure; theta is set to 1 there so downstream quadrature sees a neutral
/// value. mu = 0 on a node with rho > 0 is an error: the rate functionals
/// divide by theta.
class ThetaField {
 public:
  ThetaField(const GridDensity& like, int n_temperatures);
  std::span<double> component(int k) { return values_[static_cast<std::size_t>(k)]; }
  std::span<const double> component(int k) const {
    return values_[static_cast<std::size_t>(k)];
  }
  double lo, hi;
  int n_points;

 private:
  std::vector<std::vector<double>> values_;
};

ThetaField theta_from_density(const GridDensity& mu,
                              const TemperatureLadder& ladder,
                              const PotentialModel& model);

/// Diffusion part of the rate functional:
///   J0 = sum_beta int 1/(4 theta^2) beta^{-1} |grad theta|^2 mu(dx, beta),
/// with central differences inside, one-sided second-order stencils at the
/// ends, and trapezoid quadrature against mu.
double rate_J0(const ThetaField& theta, const GridDensity& mu,
               const TemperatureLadder& ladder);

/// Same functional in its per-temperature Boltzmann form,
///   sum_beta int 1/(8 theta) beta^{-1} |grad theta|^2 rho_beta(dx).
/// The two agree whenever n_k Z_k is constant across the ladder (e.g. for
/// n_k = 1/Z_k); both are reported so the normalisation conventions can be
/// compared directly.
double rate_J0_boltzmann_form(const ThetaField& theta,
                              const TemperatureLadder& ladder,
                              const PotentialModel& model);

/// Jump part of the rate functional (two-temperature ladders only):
///   J1 = 1/2 sum_beta int g_{beta,beta'} (1 - sqrt(theta'/theta))^2 mu(dx, beta).
double rate_J1(const ThetaField& theta, const GridDensity& mu,
               const TemperatureLadder& ladder, const PotentialModel& model);

/// Full rate functional I^nu = J0 + nu * J1; affine and nondecreasing in nu.
double rate_I(const ThetaField& theta, const GridDensity& mu,
              const TemperatureLadder& ladder, const PotentialModel& model,
              double nu);

}  // namespace infswitch
