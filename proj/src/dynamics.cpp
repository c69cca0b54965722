#include "infswitch/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "infswitch/errors.hpp"

namespace infswitch {

namespace {

thread_local std::vector<double> t_force;
thread_local std::vector<double> t_scratch;

void check_finite(std::span<const double> v, const char* what) {
  for (double c : v)
    if (!std::isfinite(c)) throw IntegrationError(std::string("non-finite ") + what);
}

double checked_energy_force(const PotentialModel& model,
                            std::span<const double> x, std::vector<double>& f) {
  f.resize(x.size());
  const double e = model.energy_force(x, f);
  if (!std::isfinite(e)) throw IntegrationError("non-finite energy");
  check_finite(f, "force");
  return e;
}

}  // namespace

void IntegratorParams::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ArgumentError("dt must be positive and finite");
  if (std::isnan(nu) || nu < 0.0)
    throw ArgumentError("nu must be >= 0 (infinity selects the switching limit)");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ArgumentError("gamma must be >= 0");
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw ArgumentError("mass must be positive");
}

SwitchStats attempt_switches(OverdampedState& state,
                             const TemperatureLadder& ladder, double energy,
                             double nu, double dt, Rng& rng) {
  if (!std::isfinite(nu) || nu < 0.0)
    throw ArgumentError("attempt_switches: nu must be finite and >= 0");
  SwitchStats stats;
  const std::uint64_t n_attempts = rng.poisson(nu * dt);
  const int top = ladder.size() - 1;
  for (std::uint64_t a = 0; a < n_attempts; ++a) {
    ++stats.attempts;
    const bool up = rng.uniform() < 0.5;  // towards hotter (higher index)
    const int proposal = state.beta_index + (up ? 1 : -1);
    if (proposal < 0 || proposal > top) continue;  // boundary: rejected no-op
    const double g =
        acceptance_probability(ladder, energy, state.beta_index, proposal);
    if (rng.uniform() < g) {
      state.beta_index = proposal;
      ++stats.accepted;
    }
  }
  return stats;
}

void step_stmd_overdamped(OverdampedState& state, const TemperatureLadder& ladder,
                          const PotentialModel& model,
                          const IntegratorParams& params, Rng& rng,
                          SwitchStats* stats) {
  if (!std::isfinite(params.nu))
    throw ArgumentError("step_stmd_overdamped: nu must be finite");
  if (state.beta_index < 0 || state.beta_index >= ladder.size())
    throw ArgumentError("step_stmd_overdamped: beta index out of range");
  auto& f = t_force;
  checked_energy_force(model, state.x, f);
  const double beta0 = ladder.beta_phys();
  const double drift = ladder.beta(state.beta_index) / beta0 * params.dt;
  const double noise = std::sqrt(2.0 * params.dt / beta0);
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.x[c] += drift * f[c] + noise * rng.normal();
  const double energy = model.energy(state.x);
  if (!std::isfinite(energy)) throw IntegrationError("non-finite energy");
  const SwitchStats s =
      attempt_switches(state, ladder, energy, params.nu, params.dt, rng);
  if (stats != nullptr) {
    stats->attempts += s.attempts;
    stats->accepted += s.accepted;
  }
  state.t += params.dt;
}

void step_its_overdamped(OverdampedState& state, const TemperatureLadder& ladder,
                         const PotentialModel& model,
                         const IntegratorParams& params, Rng& rng) {
  auto& f = t_force;
  const double energy = checked_energy_force(model, state.x, f);
  t_scratch.resize(static_cast<std::size_t>(ladder.size()));
  const double scale = mixture_stats(ladder, energy, t_scratch).force_scale;
  const double beta0 = ladder.beta_phys();
  const double drift = scale * params.dt;
  const double noise = std::sqrt(2.0 * params.dt / beta0);
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.x[c] += drift * f[c] + noise * rng.normal();
  state.t += params.dt;
}

void step_its_langevin(LangevinState& state, const TemperatureLadder& ladder,
                       const PotentialModel& model,
                       const IntegratorParams& params, Rng& rng) {
  if (state.p.size() != state.x.size())
    throw ArgumentError("step_its_langevin: momentum size mismatch");
  auto& f = t_force;
  t_scratch.resize(static_cast<std::size_t>(ladder.size()));
  const double beta0 = ladder.beta_phys();
  const double m = params.mass;
  const double half_dt = 0.5 * params.dt;

  double energy = checked_energy_force(model, state.x, f);
  double scale = mixture_stats(ladder, energy, t_scratch).force_scale;
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.p[c] += half_dt * scale * f[c];  // B
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.x[c] += half_dt * state.p[c] / m;  // A
  // O: exact Ornstein-Uhlenbeck update; gamma = 0 leaves momenta untouched.
  const double c1 = std::exp(-params.gamma * params.dt);
  const double c2 = std::sqrt((1.0 - c1 * c1) * m / beta0);
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.p[c] = c1 * state.p[c] + c2 * rng.normal();
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.x[c] += half_dt * state.p[c] / m;  // A
  energy = checked_energy_force(model, state.x, f);
  scale = mixture_stats(ladder, energy, t_scratch).force_scale;
  for (std::size_t c = 0; c < state.x.size(); ++c)
    state.p[c] += half_dt * scale * f[c];  // B
  check_finite(state.p, "momentum");
  state.t += params.dt;
}

Observable make_observable(const std::string& name,
                           const PotentialModel& model) {
  if (name == "x0") {
    return {name, [](std::span<const double> x, std::span<const double>) {
              return x[0];
            }};
  }
  if (name == "p0") {
    return {name, [](std::span<const double>, std::span<const double> p) {
              if (p.empty())
                throw ArgumentError("observable p0 needs an underdamped run");
              return p[0];
            }};
  }
  if (name == "bond_r") {
    const auto* dimer = dynamic_cast<const DimerInSolvent*>(&model);
    if (dimer == nullptr)
      throw ArgumentError("observable bond_r is only defined for the dimer model");
    return {name, [dimer](std::span<const double> x, std::span<const double>) {
              return dimer->bond_distance(x);
            }};
  }
  throw ArgumentError("unknown observable '" + name + "'");
}

TrajectoryRecord::TrajectoryRecord(double t0, double time_stride,
                                   std::vector<std::string> observable_names,
                                   bool with_beta_index)
    : t0_(t0),
      time_stride_(time_stride),
      with_beta_index_(with_beta_index),
      names_(std::move(observable_names)),
      columns_(names_.size()) {}

const std::vector<double>& TrajectoryRecord::column(
    const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return columns_[i];
  throw ArgumentError("trajectory has no column '" + name + "'");
}

void TrajectoryRecord::reserve(std::size_t n) {
  energies_.reserve(n);
  omega0_.reserve(n);
  if (with_beta_index_) beta_idx_.reserve(n);
  for (auto& c : columns_) c.reserve(n);
}

void TrajectoryRecord::append(double energy, double omega0, int beta_index,
                              std::span<const double> observables) {
  energies_.push_back(energy);
  omega0_.push_back(omega0);
  if (with_beta_index_)
    beta_idx_.push_back(static_cast<std::uint8_t>(beta_index));
  for (std::size_t i = 0; i < columns_.size(); ++i)
    columns_[i].push_back(observables[i]);
}

namespace {

template <typename State, typename StepFn, typename RecordFn>
TrajectoryRecord drive(State& state, const TemperatureLadder& ladder,
                       const PotentialModel& model,
                       const IntegratorParams& params, const Schedule& schedule,
                       bool with_beta_index, StepFn step, RecordFn record_row) {
  params.validate();
  if (schedule.record_stride == 0)
    throw ArgumentError("record_stride must be >= 1");
  if (static_cast<int>(state.x.size()) != model.dimension())
    throw ArgumentError("initial state does not match model dimension");

  TrajectoryRecord record(state.t,
                          params.dt * static_cast<double>(schedule.record_stride),
                          [&] {
                            std::vector<std::string> names;
                            names.reserve(schedule.observables.size());
                            for (const auto& o : schedule.observables)
                              names.push_back(o.name);
                            return names;
                          }(),
                          with_beta_index);
  record.reserve(schedule.n_steps / schedule.record_stride + 1);

  std::vector<double> obs(schedule.observables.size());
  std::vector<double> scratch(static_cast<std::size_t>(ladder.size()));
  record_row(state, record, obs, scratch);
  for (std::uint64_t step_index = 1; step_index <= schedule.n_steps;
       ++step_index) {
    try {
      step(state);
    } catch (const IntegrationError& err) {
      throw IntegrationError(err.what(), step_index);
    }
    if (step_index % schedule.record_stride == 0)
      record_row(state, record, obs, scratch);
  }
  return record;
}

}  // namespace

TrajectoryRecord run_trajectory(OverdampedState& state,
                                const TemperatureLadder& ladder,
                                const PotentialModel& model,
                                const IntegratorParams& params,
                                const Schedule& schedule, std::uint64_t stream,
                                SwitchStats* stats) {
  const bool finite_nu = std::isfinite(params.nu);
  if (state.beta_index < 0 || state.beta_index >= ladder.size())
    throw ArgumentError("initial beta index out of range");
  // the recorded rung index is one byte wide
  if (finite_nu && ladder.size() > 256)
    throw ArgumentError("finite-frequency records support at most 256 rungs");
  Rng rng(params.rng_seed, stream);

  auto step = [&](OverdampedState& s) {
    if (finite_nu)
      step_stmd_overdamped(s, ladder, model, params, rng, stats);
    else
      step_its_overdamped(s, ladder, model, params, rng);
  };
  auto record_row = [&](const OverdampedState& s, TrajectoryRecord& rec,
                        std::vector<double>& obs, std::vector<double>& scratch) {
    const double energy = model.energy(s.x);
    const double omega0 = mixture_stats(ladder, energy, scratch).omega_phys;
    for (std::size_t i = 0; i < schedule.observables.size(); ++i)
      obs[i] = schedule.observables[i].eval(s.x, {});
    rec.append(energy, omega0, s.beta_index, obs);
  };
  return drive(state, ladder, model, params, schedule, finite_nu, step,
               record_row);
}

TrajectoryRecord run_trajectory(LangevinState& state,
                                const TemperatureLadder& ladder,
                                const PotentialModel& model,
                                const IntegratorParams& params,
                                const Schedule& schedule, std::uint64_t stream) {
  if (std::isfinite(params.nu))
    throw UnsupportedError(
        "finite-frequency switching is only implemented for the overdamped "
        "dynamics; use nu = infinity for underdamped runs");
  if (state.p.size() != state.x.size())
    throw ArgumentError("initial momenta do not match configuration size");
  Rng rng(params.rng_seed, stream);

  auto step = [&](LangevinState& s) {
    step_its_langevin(s, ladder, model, params, rng);
  };
  auto record_row = [&](const LangevinState& s, TrajectoryRecord& rec,
                        std::vector<double>& obs, std::vector<double>& scratch) {
    const double energy = model.energy(s.x);
    const double omega0 = mixture_stats(ladder, energy, scratch).omega_phys;
    for (std::size_t i = 0; i < schedule.observables.size(); ++i)
      obs[i] = schedule.observables[i].eval(s.x, s.p);
    rec.append(energy, omega0, 0, obs);
  };
  return drive(state, ladder, model, params, schedule, false, step, record_row);
}

}  // namespace infswitch
