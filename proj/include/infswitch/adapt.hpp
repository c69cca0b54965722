#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infswitch/dynamics.hpp"
#include "infswitch/ladder.hpp"
#include "infswitch/potentials.hpp"

namespace infswitch {

/// Iterative estimation of the partition-function weighting factors
/// n_k = 1/Z_k from short trajectories. Everything is kept in log space:
/// sensible initial guesses (the dimer protocol starts at Z = (1, 1e8))
/// span eight orders of magnitude.
struct AdaptHistoryEntry {
  std::vector<double> log_Z;
  std::vector<double> proportions;
};

struct AdaptState {
  std::vector<double> log_Z;
  int iteration = 0;
  std::vector<AdaptHistoryEntry> history;
};

/// Per-temperature visit proportions: the sample mean of the mixture weights
/// omega_k over the recorded energies. Sums to one.
std::vector<double> estimate_proportions(const TrajectoryRecord& record,
                                         const TemperatureLadder& ladder);

struct UpdateInterval {
  double lo = 0.35;
  double hi = 1.5;
};

struct AdaptOptions {
  int l_max = 10;
  std::uint64_t steps_per_iter = 1000000;
  UpdateInterval interval;
  double tolerance = 0.05;  // stop when max_k |N w_k - 1| drops below this
};

/// One update of the log partition-function estimates from measured
/// proportions w: with r_k = N w_k, multiply Z_k by r_k when r_k lies in the
/// trust interval and by sqrt(r_k) otherwise (damped when the short-run
/// estimate is far off). w_k = 1/N for all k is the fixed point.
AdaptState update_weights(AdaptState state, std::span<const double> proportions,
                          const UpdateInterval& interval);

/// Alternates a trajectory with n_k = 1/Z_k and a weight update until the
/// proportions are uniform to within the tolerance or l_max is reached.
/// The walker position carries over between iterations; each iteration uses
/// its own RNG stream so the loop stays reproducible. An empty initial
/// configuration selects the model default.
AdaptState adapt_loop(std::vector<double> initial_log_Z,
                      std::vector<double> betas, const PotentialModel& model,
                      const IntegratorParams& params,
                      const AdaptOptions& options,
                      bool underdamped = false,
                      std::vector<double> initial_x = {});

}  // namespace infswitch
