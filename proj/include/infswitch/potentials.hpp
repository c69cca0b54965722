#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace infswitch {

/// Wraps one component of a separation vector into (-l/2, l/2].
/// The tie at exactly l/2 maps to +l/2 so the convention is deterministic.
double min_image_component(double d, double box);

/// Minimum-image displacement xi - xj in a cubic box of side `box`.
std::vector<double> min_image_displacement(std::span<const double> xi,
                                           std::span<const double> xj,
                                           double box);

/// Potential energy surface with analytic forces.
///
/// Implementations must be pure: energy/force depend only on the
/// configuration, so instances can be shared freely across threads.
class PotentialModel {
 public:
  virtual ~PotentialModel() = default;

  virtual int dimension() const = 0;
  virtual std::optional<double> periodic_box() const { return std::nullopt; }
  virtual std::string name() const = 0;

  virtual double energy(std::span<const double> x) const = 0;

  /// Writes -grad V(x) into `f` (same length as x).
  virtual void force(std::span<const double> x, std::span<double> f) const = 0;

  /// Energy and force in one pass; override when a fused evaluation saves a
  /// pair loop.
  virtual double energy_force(std::span<const double> x,
                              std::span<double> f) const {
    force(x, f);
    return energy(x);
  }

  /// Default starting configuration used by runners when none is given.
  virtual std::vector<double> initial_configuration() const {
    return std::vector<double>(static_cast<std::size_t>(dimension()), 0.0);
  }

  std::vector<double> force_vector(std::span<const double> x) const {
    std::vector<double> f(x.size());
    force(x, f);
    return f;
  }

 protected:
  void require_dimension(std::span<const double> x) const;
};

/// D-dimensional double well: a tilted quartic in the first coordinate plus
/// independent harmonic modes,
///   V(x) = (1 - x0^2)^2 - x0/4 + sum_j lambda_j x_j^2 / 2.
class DoubleWellD final : public PotentialModel {
 public:
  /// `stiffness` holds lambda_1..lambda_{D-1}; missing entries default to 1.
  explicit DoubleWellD(int dimension, std::vector<double> stiffness = {});

  int dimension() const override { return dim_; }
  std::string name() const override { return "doublewell"; }
  double energy(std::span<const double> x) const override;
  void force(std::span<const double> x, std::span<double> f) const override;
  std::vector<double> initial_configuration() const override;

  /// The non-Gaussian factor V0(x0) = (1 - x0^2)^2 - x0/4.
  static double marginal_energy(double x0) {
    const double q = 1.0 - x0 * x0;
    return q * q - 0.25 * x0;
  }

  const std::vector<double>& stiffness() const { return lambda_; }

 private:
  int dim_;
  std::vector<double> lambda_;
};

/// Two-dimensional dimer in a WCA solvent inside a periodic box.
///
/// Particles 0 and 1 form the dimer and interact through a quartic
/// double-well bond potential; every other pair interacts through the
/// purely repulsive WCA potential. Distances follow the minimum-image
/// convention.
class DimerInSolvent final : public PotentialModel {
 public:
  struct Params {
    int n_particles = 16;
    double box = 4.4;
    double sigma = 1.0;
    double epsilon = 1.0;
    double barrier_height = 1.0;  // h
    double well_width = 0.5;      // w; bond minima at r_wca and r_wca + 2w
  };

  explicit DimerInSolvent(const Params& params);

  int dimension() const override { return 2 * params_.n_particles; }
  std::optional<double> periodic_box() const override { return params_.box; }
  std::string name() const override { return "dimer"; }

  double energy(std::span<const double> x) const override;
  void force(std::span<const double> x, std::span<double> f) const override;
  double energy_force(std::span<const double> x,
                      std::span<double> f) const override;

  /// Square-lattice start with the dimer pair adjacent.
  std::vector<double> initial_configuration() const override;

  /// Minimum-image distance between the dimer particles.
  double bond_distance(std::span<const double> x) const;

  double wca_cutoff() const { return r_wca_; }
  const Params& params() const { return params_; }

  static double wca_energy(double r, double sigma, double epsilon);
  static double bond_energy(double r, double r_wca, double barrier_height,
                            double well_width);

 private:
  // Accumulates energy and optionally forces in a single pair loop.
  double pair_loop(std::span<const double> x, double* fx) const;

  Params params_;
  double r_wca_;
};

}  // namespace infswitch
