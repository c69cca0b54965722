#include "infswitch/potentials.hpp"

#include <cmath>
#include <cstddef>

#include "infswitch/errors.hpp"

namespace infswitch {

double min_image_component(double d, double box) {
  if (!(box > 0.0)) throw ArgumentError("periodic box side must be positive");
  // ceil(d/box - 1/2) picks the image index so the result lies in
  // (-box/2, box/2], with the tie at +box/2.
  return d - box * std::ceil(d / box - 0.5);
}

std::vector<double> min_image_displacement(std::span<const double> xi,
                                           std::span<const double> xj,
                                           double box) {
  if (xi.size() != xj.size())
    throw ArgumentError("min_image_displacement: point sizes differ");
  std::vector<double> out(xi.size());
  for (std::size_t c = 0; c < xi.size(); ++c)
    out[c] = min_image_component(xi[c] - xj[c], box);
  return out;
}

void PotentialModel::require_dimension(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw ArgumentError("configuration has length " +
                        std::to_string(x.size()) + ", model expects " +
                        std::to_string(dimension()));
}

DoubleWellD::DoubleWellD(int dimension, std::vector<double> stiffness)
    : dim_(dimension), lambda_(std::move(stiffness)) {
  if (dim_ < 1) throw ArgumentError("DoubleWellD: dimension must be >= 1");
  if (static_cast<int>(lambda_.size()) > dim_ - 1)
    throw ArgumentError("DoubleWellD: got more stiffness values than modes");
  lambda_.resize(static_cast<std::size_t>(dim_ - 1), 1.0);
  for (double l : lambda_)
    if (!(l > 0.0)) throw ArgumentError("DoubleWellD: stiffness must be > 0");
}

double DoubleWellD::energy(std::span<const double> x) const {
  require_dimension(x);
  double v = marginal_energy(x[0]);
  for (std::size_t j = 1; j < x.size(); ++j)
    v += 0.5 * lambda_[j - 1] * x[j] * x[j];
  return v;
}

void DoubleWellD::force(std::span<const double> x, std::span<double> f) const {
  require_dimension(x);
  if (f.size() != x.size())
    throw ArgumentError("DoubleWellD: force buffer size mismatch");
  // dV/dx0 = -4 x0 (1 - x0^2) - 1/4
  f[0] = 4.0 * x[0] * (1.0 - x[0] * x[0]) + 0.25;
  for (std::size_t j = 1; j < x.size(); ++j) f[j] = -lambda_[j - 1] * x[j];
}

std::vector<double> DoubleWellD::initial_configuration() const {
  // Start in the deeper well (x0 = 1); harmonic modes at their minimum.
  std::vector<double> x(static_cast<std::size_t>(dim_), 0.0);
  x[0] = 1.0;
  return x;
}

DimerInSolvent::DimerInSolvent(const Params& params) : params_(params) {
  if (params_.n_particles < 2)
    throw ArgumentError("DimerInSolvent: need at least the dimer pair");
  if (!(params_.box > 0.0)) throw ArgumentError("DimerInSolvent: box must be > 0");
  if (!(params_.sigma > 0.0) || !(params_.epsilon > 0.0) ||
      !(params_.barrier_height > 0.0) || !(params_.well_width > 0.0))
    throw ArgumentError("DimerInSolvent: sigma, epsilon, h, w must be > 0");
  r_wca_ = std::pow(2.0, 1.0 / 6.0) * params_.sigma;
}

double DimerInSolvent::wca_energy(double r, double sigma, double epsilon) {
  const double r_cut = std::pow(2.0, 1.0 / 6.0) * sigma;
  if (r > r_cut) return 0.0;
  const double s2 = (sigma * sigma) / (r * r);
  const double s6 = s2 * s2 * s2;
  return 4.0 * epsilon * (s6 * s6 - s6) + epsilon;
}

double DimerInSolvent::bond_energy(double r, double r_wca,
                                   double barrier_height, double well_width) {
  const double u = r - r_wca - well_width;
  const double g = 1.0 - (u * u) / (well_width * well_width);
  return barrier_height * g * g;
}

double DimerInSolvent::pair_loop(std::span<const double> x, double* fx) const {
  const int n = params_.n_particles;
  const double box = params_.box;
  const double sigma2 = params_.sigma * params_.sigma;
  const double eps = params_.epsilon;
  const double rc2 = r_wca_ * r_wca_;
  const double guard = 1e-8 * params_.sigma;
  double energy = 0.0;

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = min_image_component(x[2 * i] - x[2 * j], box);
      const double dy = min_image_component(x[2 * i + 1] - x[2 * j + 1], box);
      const double r2 = dx * dx + dy * dy;
      const bool is_bond = (i == 0 && j == 1);
      if (!is_bond && r2 > rc2) continue;
      if (r2 < guard * guard)
        throw SingularityError("pair (" + std::to_string(i) + "," +
                               std::to_string(j) + ") closer than 1e-8 sigma");
      double fpair = 0.0;  // -(dV/dr)/r
      if (is_bond) {
        const double r = std::sqrt(r2);
        const double w2 = params_.well_width * params_.well_width;
        const double u = r - r_wca_ - params_.well_width;
        const double g = 1.0 - u * u / w2;
        energy += params_.barrier_height * g * g;
        fpair = 4.0 * params_.barrier_height * g * u / (w2 * r);
      } else {
        const double s2 = sigma2 / r2;
        const double s6 = s2 * s2 * s2;
        energy += 4.0 * eps * (s6 * s6 - s6) + eps;
        fpair = 24.0 * eps * (2.0 * s6 * s6 - s6) / r2;
      }
      if (fx != nullptr) {
        fx[2 * i] += fpair * dx;
        fx[2 * i + 1] += fpair * dy;
        fx[2 * j] -= fpair * dx;
        fx[2 * j + 1] -= fpair * dy;
      }
    }
  }
  return energy;
}

double DimerInSolvent::energy(std::span<const double> x) const {
  require_dimension(x);
  return pair_loop(x, nullptr);
}

void DimerInSolvent::force(std::span<const double> x,
                           std::span<double> f) const {
  require_dimension(x);
  if (f.size() != x.size())
    throw ArgumentError("DimerInSolvent: force buffer size mismatch");
  std::fill(f.begin(), f.end(), 0.0);
  pair_loop(x, f.data());
}

double DimerInSolvent::energy_force(std::span<const double> x,
                                    std::span<double> f) const {
  require_dimension(x);
  if (f.size() != x.size())
    throw ArgumentError("DimerInSolvent: force buffer size mismatch");
  std::fill(f.begin(), f.end(), 0.0);
  return pair_loop(x, f.data());
}

std::vector<double> DimerInSolvent::initial_configuration() const {
  const int n = params_.n_particles;
  int side = 1;
  while (side * side < n) ++side;
  const double a = params_.box / side;
  std::vector<double> x(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    // Row-major fill keeps particles 0 and 1 adjacent lattice neighbours.
    x[2 * i] = a * (i % side);
    x[2 * i + 1] = a * (i / side);
  }
  return x;
}

double DimerInSolvent::bond_distance(std::span<const double> x) const {
  require_dimension(x);
  const double dx = min_image_component(x[0] - x[2], params_.box);
  const double dy = min_image_component(x[1] - x[3], params_.box);
  return std::hypot(dx, dy);
}

}  // namespace infswitch
