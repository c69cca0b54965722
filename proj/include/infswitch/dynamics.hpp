#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "infswitch/ladder.hpp"
#include "infswitch/potentials.hpp"
#include "infswitch/rng.hpp"

namespace infswitch {

/// Distinguished switching frequency selecting the infinite-switching limit.
inline constexpr double infinite_switching =
    std::numeric_limits<double>::infinity();

struct OverdampedState {
  std::vector<double> x;
  int beta_index = 0;  // only meaningful for finite-frequency runs
  double t = 0.0;
};

struct LangevinState {
  std::vector<double> x;
  std::vector<double> p;
  double t = 0.0;
};

struct IntegratorParams {
  double dt = 1e-3;
  double nu = infinite_switching;  // switch attempts per unit time
  double gamma = 1.0;
  double mass = 1.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct SwitchStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
};

/// Applies the temperature jump process at fixed configuration: the number
/// of attempts is Poisson(nu * dt); each attempt proposes one neighbouring
/// ladder index (up/down with probability 1/2, out-of-range proposals are
/// rejected no-ops) and accepts with the Metropolis factor.
SwitchStats attempt_switches(OverdampedState& state,
                             const TemperatureLadder& ladder, double energy,
                             double nu, double dt, Rng& rng);

/// One Euler-Maruyama step of the finite-frequency simulated-tempering
/// dynamics whose force is scaled by beta(t)/beta_phys while the noise stays
/// at the physical temperature, followed by the jump process at the new
/// configuration.
void step_stmd_overdamped(OverdampedState& state, const TemperatureLadder& ladder,
                          const PotentialModel& model,
                          const IntegratorParams& params, Rng& rng,
                          SwitchStats* stats = nullptr);

/// One Euler-Maruyama step of the infinite-switching (mixture effective
/// potential) overdamped dynamics.
void step_its_overdamped(OverdampedState& state, const TemperatureLadder& ladder,
                         const PotentialModel& model,
                         const IntegratorParams& params, Rng& rng);

/// One BAOAB step of the infinite-switching underdamped dynamics; with
/// gamma = 0 this reduces to velocity Verlet on the effective potential.
void step_its_langevin(LangevinState& state, const TemperatureLadder& ladder,
                       const PotentialModel& model,
                       const IntegratorParams& params, Rng& rng);

/// A scalar function of the instantaneous state, recorded along the run.
/// `p` is empty for overdamped trajectories.
struct Observable {
  std::string name;
  std::function<double(std::span<const double> x, std::span<const double> p)>
      eval;
};

/// Named observables: "x0" (first coordinate), "p0" (first momentum,
/// underdamped runs only), "bond_r" (dimer bond distance).
Observable make_observable(const std::string& name, const PotentialModel& model);

struct Schedule {
  std::uint64_t n_steps = 0;
  std::uint64_t record_stride = 1;
  std::vector<Observable> observables;
};

/// Columnar time series written by run_trajectory. Sample times are implicit
/// (t0 + i * dt * record_stride) so long runs stay compact; energies and the
/// physical-temperature weight omega_0 are always recorded, the temperature
/// index only for finite-frequency runs.
class TrajectoryRecord {
 public:
  TrajectoryRecord(double t0, double time_stride,
                   std::vector<std::string> observable_names,
                   bool with_beta_index);

  std::size_t size() const { return energies_.size(); }
  double time_at(std::size_t i) const { return t0_ + time_stride_ * static_cast<double>(i); }
  double time_stride() const { return time_stride_; }

  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& omega_phys() const { return omega0_; }
  bool has_beta_index() const { return with_beta_index_; }
  const std::vector<std::uint8_t>& beta_indices() const { return beta_idx_; }

  const std::vector<std::string>& observable_names() const { return names_; }
  const std::vector<double>& column(const std::string& name) const;

  void reserve(std::size_t n);
  void append(double energy, double omega0, int beta_index,
              std::span<const double> observables);

 private:
  double t0_;
  double time_stride_;
  bool with_beta_index_;
  std::vector<std::string> names_;
  std::vector<double> energies_;
  std::vector<double> omega0_;
  std::vector<std::uint8_t> beta_idx_;
  std::vector<std::vector<double>> columns_;
};

/// Advances the overdamped dynamics (finite-frequency simulated tempering
/// when params.nu is finite, the infinite-switching limit otherwise) in
/// place and records every record_stride-th step, starting with the initial
/// state. Deterministic in (params.rng_seed, stream).
TrajectoryRecord run_trajectory(OverdampedState& state,
                                const TemperatureLadder& ladder,
                                const PotentialModel& model,
                                const IntegratorParams& params,
                                const Schedule& schedule,
                                std::uint64_t stream = 0,
                                SwitchStats* stats = nullptr);

/// Underdamped variant; only the infinite-switching limit is defined here,
/// so params.nu must be infinite.
TrajectoryRecord run_trajectory(LangevinState& state,
                                const TemperatureLadder& ladder,
                                const PotentialModel& model,
                                const IntegratorParams& params,
                                const Schedule& schedule,
                                std::uint64_t stream = 0);

}  // namespace infswitch
