#include "infswitch/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infswitch/errors.hpp"

namespace infswitch {

std::vector<double> estimate_proportions(const TrajectoryRecord& record,
                                         const TemperatureLadder& ladder) {
  if (record.size() == 0)
    throw ArgumentError("estimate_proportions: empty record");
  const int n = ladder.size();
  std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double energy : record.energies()) {
    weights_into(ladder, energy, w);
    for (int k = 0; k < n; ++k) acc[static_cast<std::size_t>(k)] += w[static_cast<std::size_t>(k)];
  }
  const double total = static_cast<double>(record.size());
  for (double& a : acc) a /= total;
  return acc;
}

AdaptState update_weights(AdaptState state, std::span<const double> proportions,
                          const UpdateInterval& interval) {
  if (proportions.size() != state.log_Z.size())
    throw ArgumentError("update_weights: proportion count mismatch");
  if (!(interval.lo < 1.0 && 1.0 < interval.hi))
    throw ArgumentError("update_weights: interval must contain 1");
  const double n = static_cast<double>(proportions.size());
  for (std::size_t k = 0; k < proportions.size(); ++k) {
    if (!(proportions[k] > 0.0))
      throw DegenerateError(
          "proportion for temperature " + std::to_string(k) +
          " is zero; lengthen the trajectory before updating");
    const double factor = n * proportions[k];
    const double log_factor = std::log(factor);
    // Damp the correction when the factor falls outside the trust interval.
    state.log_Z[k] +=
        (factor >= interval.lo && factor <= interval.hi) ? log_factor
                                                         : 0.5 * log_factor;
  }
  ++state.iteration;
  AdaptHistoryEntry entry;
  entry.log_Z = state.log_Z;
  entry.proportions.assign(proportions.begin(), proportions.end());
  state.history.push_back(std::move(entry));
  return state;
}

AdaptState adapt_loop(std::vector<double> initial_log_Z,
                      std::vector<double> betas, const PotentialModel& model,
                      const IntegratorParams& params,
                      const AdaptOptions& options, bool underdamped,
                      std::vector<double> initial_x) {
  if (options.l_max < 1) throw ArgumentError("adapt_loop: l_max must be >= 1");
  if (initial_log_Z.size() != betas.size())
    throw ArgumentError("adapt_loop: log_Z and betas differ in length");
  if (!initial_x.empty() &&
      static_cast<int>(initial_x.size()) != model.dimension())
    throw ArgumentError("adapt_loop: initial configuration size mismatch");

  AdaptState state;
  state.log_Z = std::move(initial_log_Z);

  Schedule schedule;
  schedule.n_steps = options.steps_per_iter;
  schedule.record_stride = 1;

  std::vector<double> x =
      initial_x.empty() ? model.initial_configuration() : std::move(initial_x);
  std::vector<double> p(x.size(), 0.0);

  for (int iter = 0; iter < options.l_max; ++iter) {
    std::vector<double> log_n(state.log_Z.size());
    for (std::size_t k = 0; k < log_n.size(); ++k) log_n[k] = -state.log_Z[k];
    const TemperatureLadder ladder(betas, log_n);

    std::vector<double> proportions;
    try {
      // The walker carries over between iterations; only the weights change.
      if (underdamped) {
        LangevinState s{x, p, 0.0};
        const TrajectoryRecord record = run_trajectory(
            s, ladder, model, params, schedule,
            static_cast<std::uint64_t>(iter));
        proportions = estimate_proportions(record, ladder);
        x = s.x;
        p = s.p;
      } else {
        OverdampedState s{x, 0, 0.0};
        const TrajectoryRecord record = run_trajectory(
            s, ladder, model, params, schedule,
            static_cast<std::uint64_t>(iter));
        proportions = estimate_proportions(record, ladder);
        x = s.x;
      }
    } catch (const DegenerateError& err) {
      throw DegenerateError(std::string(err.what()) + " (iteration " +
                            std::to_string(iter + 1) + ")");
    }

    try {
      state = update_weights(std::move(state), proportions, options.interval);
    } catch (const DegenerateError& err) {
      throw DegenerateError(std::string(err.what()) + " (iteration " +
                            std::to_string(iter + 1) + ")");
    }

    double worst = 0.0;
    const double n = static_cast<double>(proportions.size());
    for (double w : proportions)
      worst = std::max(worst, std::abs(n * w - 1.0));
    if (worst < options.tolerance) break;
  }
  return state;
}

}  // namespace infswitch
