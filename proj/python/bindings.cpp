#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infswitch/adapt.hpp"
#include "infswitch/dynamics.hpp"
#include "infswitch/errors.hpp"
#include "infswitch/estimators.hpp"
#include "infswitch/ladder.hpp"
#include "infswitch/ldp.hpp"
#include "infswitch/potentials.hpp"

namespace py = pybind11;
using namespace infswitch;

namespace {

std::vector<double> as_vector(py::sequence seq) {
  std::vector<double> out;
  out.reserve(seq.size());
  for (auto item : seq) out.push_back(item.cast<double>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Simulated tempering and infinite-switching sampling toolkit";
  m.attr("__version__") = INFSWITCH_VERSION;
  m.attr("INFINITE_SWITCHING") = infinite_switching;

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_RuntimeError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_RuntimeError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);
  py::register_exception<ZeroDensityError>(m, "ZeroDensityError", PyExc_RuntimeError);
  py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);

  py::class_<PotentialModel>(m, "PotentialModel")
      .def_property_readonly("dimension", &PotentialModel::dimension)
      .def("energy",
           [](const PotentialModel& self, py::sequence x) {
             return self.energy(as_vector(x));
           })
      .def("force",
           [](const PotentialModel& self, py::sequence x) {
             return self.force_vector(as_vector(x));
           })
      .def("initial_configuration", &PotentialModel::initial_configuration);

  py::class_<DoubleWellD, PotentialModel>(m, "DoubleWellD")
      .def(py::init<int, std::vector<double>>(), py::arg("dimension"),
           py::arg("stiffness") = std::vector<double>{})
      .def_static("marginal_energy", &DoubleWellD::marginal_energy);

  py::class_<DimerInSolvent::Params>(m, "DimerParams")
      .def(py::init<>())
      .def_readwrite("n_particles", &DimerInSolvent::Params::n_particles)
      .def_readwrite("box", &DimerInSolvent::Params::box)
      .def_readwrite("sigma", &DimerInSolvent::Params::sigma)
      .def_readwrite("epsilon", &DimerInSolvent::Params::epsilon)
      .def_readwrite("barrier_height", &DimerInSolvent::Params::barrier_height)
      .def_readwrite("well_width", &DimerInSolvent::Params::well_width);

  py::class_<DimerInSolvent, PotentialModel>(m, "DimerInSolvent")
      .def(py::init<const DimerInSolvent::Params&>(), py::arg("params"))
      .def_property_readonly("wca_cutoff", &DimerInSolvent::wca_cutoff)
      .def("bond_distance", [](const DimerInSolvent& self, py::sequence x) {
        return self.bond_distance(as_vector(x));
      });

  m.def("min_image_displacement",
        [](py::sequence xi, py::sequence xj, double box) {
          return min_image_displacement(as_vector(xi), as_vector(xj), box);
        });

  py::class_<TemperatureLadder>(m, "TemperatureLadder")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("betas"),
           py::arg("log_weights"))
      .def_static("with_uniform_weights", &TemperatureLadder::with_uniform_weights)
      .def_property_readonly("betas", &TemperatureLadder::betas)
      .def_property_readonly("log_weights", &TemperatureLadder::log_weights)
      .def_property_readonly("beta_phys", &TemperatureLadder::beta_phys)
      .def("__len__", &TemperatureLadder::size);

  m.def("log_terms", &log_terms);
  m.def("weights",
        [](const TemperatureLadder& ladder, double energy) {
          return weights(ladder, energy).omega;
        });
  m.def("acceptance_probability", &acceptance_probability);
  m.def("effective_potential", &effective_potential);
  m.def("force_scale", &force_scale);
  m.def("mobility", &mobility);

  py::class_<IntegratorParams>(m, "IntegratorParams")
      .def(py::init<>())
      .def_readwrite("dt", &IntegratorParams::dt)
      .def_readwrite("nu", &IntegratorParams::nu)
      .def_readwrite("gamma", &IntegratorParams::gamma)
      .def_readwrite("mass", &IntegratorParams::mass)
      .def_readwrite("rng_seed", &IntegratorParams::rng_seed);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def("__len__", &TrajectoryRecord::size)
      .def("time_at", &TrajectoryRecord::time_at)
      .def_property_readonly("energies", &TrajectoryRecord::energies)
      .def_property_readonly("omega_phys", &TrajectoryRecord::omega_phys)
      .def_property_readonly("observable_names", &TrajectoryRecord::observable_names)
      .def("column", &TrajectoryRecord::column)
      .def_property_readonly("beta_indices", [](const TrajectoryRecord& self) {
        return std::vector<int>(self.beta_indices().begin(),
                                self.beta_indices().end());
      });

  m.def(
      "run_overdamped",
      [](std::vector<double> x, const TemperatureLadder& ladder,
         const PotentialModel& model, const IntegratorParams& params,
         std::uint64_t n_steps, std::uint64_t record_stride,
         std::vector<std::string> observables, std::uint64_t stream) {
        Schedule schedule;
        schedule.n_steps = n_steps;
        schedule.record_stride = record_stride;
        for (const auto& name : observables)
          schedule.observables.push_back(make_observable(name, model));
        OverdampedState state{std::move(x), 0, 0.0};
        return run_trajectory(state, ladder, model, params, schedule, stream);
      },
      py::arg("x"), py::arg("ladder"), py::arg("model"), py::arg("params"),
      py::arg("n_steps"), py::arg("record_stride") = 1,
      py::arg("observables") = std::vector<std::string>{}, py::arg("stream") = 0,
      "Run the overdamped dynamics (finite-frequency tempering when params.nu "
      "is finite, the infinite-switching limit otherwise).");

  m.def(
      "run_langevin",
      [](std::vector<double> x, std::vector<double> p,
         const TemperatureLadder& ladder, const PotentialModel& model,
         const IntegratorParams& params, std::uint64_t n_steps,
         std::uint64_t record_stride, std::vector<std::string> observables,
         std::uint64_t stream) {
        Schedule schedule;
        schedule.n_steps = n_steps;
        schedule.record_stride = record_stride;
        for (const auto& name : observables)
          schedule.observables.push_back(make_observable(name, model));
        LangevinState state{std::move(x), std::move(p), 0.0};
        return run_trajectory(state, ladder, model, params, schedule, stream);
      },
      py::arg("x"), py::arg("p"), py::arg("ladder"), py::arg("model"),
      py::arg("params"), py::arg("n_steps"), py::arg("record_stride") = 1,
      py::arg("observables") = std::vector<std::string>{}, py::arg("stream") = 0,
      "Run the infinite-switching underdamped dynamics (BAOAB).");

  py::class_<ReweightedAverage>(m, "ReweightedAverage")
      .def_readonly("estimate", &ReweightedAverage::estimate)
      .def_readonly("std_error", &ReweightedAverage::std_error)
      .def_readonly("n_samples", &ReweightedAverage::n_samples);

  m.def("reweighted_average",
        [](std::vector<double> values, std::vector<double> omega_phys,
           int n_batches) {
          return reweighted_average(values, omega_phys, n_batches);
        },
        py::arg("values"), py::arg("omega_phys"), py::arg("n_batches") = 32);

  py::class_<BatchAvEntry>(m, "BatchAvEntry")
      .def_readonly("window_size", &BatchAvEntry::window_size)
      .def_readonly("av", &BatchAvEntry::av)
      .def_readonly("av_normalized", &BatchAvEntry::av_normalized)
      .def_readonly("n_batches", &BatchAvEntry::n_batches)
      .def_readonly("skipped", &BatchAvEntry::skipped);

  m.def("batch_asymptotic_variance",
        [](std::vector<double> series, std::vector<std::uint64_t> window_sizes) {
          return batch_asymptotic_variance(series, window_sizes).entries;
        });

  py::class_<FreeEnergyProfile>(m, "FreeEnergyProfile")
      .def_readonly("bin_centers", &FreeEnergyProfile::bin_centers)
      .def_readonly("counts", &FreeEnergyProfile::counts)
      .def_readonly("free_energy", &FreeEnergyProfile::free_energy)
      .def_readonly("bin_width", &FreeEnergyProfile::bin_width);

  m.def("free_energy_profile",
        [](std::vector<double> coordinate, std::vector<double> omega_phys,
           double lo, double hi, int bins, double beta_phys) {
          return free_energy_profile(coordinate, omega_phys, lo, hi, bins,
                                     beta_phys);
        });

  py::class_<QuadratureReference>(m, "QuadratureReference")
      .def_readonly("betas", &QuadratureReference::betas)
      .def_readonly("log_Z", &QuadratureReference::log_Z)
      .def_readonly("Z", &QuadratureReference::Z)
      .def_readonly("mean_V", &QuadratureReference::mean_V)
      .def_readonly("grid_x", &QuadratureReference::grid_x)
      .def_readonly("rho", &QuadratureReference::rho);

  m.def("quadrature_reference",
        [](const DoubleWellD& model, const TemperatureLadder& ladder,
           double half_width, int points) {
          return quadrature_reference(model, ladder, {half_width, points});
        },
        py::arg("model"), py::arg("ladder"), py::arg("half_width") = 4.0,
        py::arg("points") = 20001);

  m.def("estimate_proportions", &estimate_proportions);

  py::class_<AdaptState>(m, "AdaptState")
      .def(py::init<>())
      .def_readwrite("log_Z", &AdaptState::log_Z)
      .def_readonly("iteration", &AdaptState::iteration);

  m.def("update_weights",
        [](AdaptState state, std::vector<double> proportions, double lo,
           double hi) {
          return update_weights(std::move(state), proportions, {lo, hi});
        },
        py::arg("state"), py::arg("proportions"), py::arg("lo") = 0.35,
        py::arg("hi") = 1.5);

  py::class_<GridDensity>(m, "GridDensity")
      .def(py::init<double, double, int, int>(), py::arg("lo"), py::arg("hi"),
           py::arg("n_points"), py::arg("n_temperatures"))
      .def_property_readonly("spacing", &GridDensity::spacing)
      .def("node", &GridDensity::node)
      .def("component",
           [](const GridDensity& self, int k) {
             auto span = self.component(k);
             return std::vector<double>(span.begin(), span.end());
           })
      .def("set_component",
           [](GridDensity& self, int k, std::vector<double> values) {
             auto span = self.component(k);
             if (values.size() != span.size())
               throw ArgumentError("component length mismatch");
             std::copy(values.begin(), values.end(), span.begin());
           })
      .def("normalize", &GridDensity::normalize)
      .def("total_mass", &GridDensity::total_mass);

  py::class_<ThetaField>(m, "ThetaField")
      .def("component", [](const ThetaField& self, int k) {
        auto span = self.component(k);
        return std::vector<double>(span.begin(), span.end());
      });

  m.def("equilibrium_density", &equilibrium_density);
  m.def("theta_from_density", &theta_from_density);
  m.def("rate_J0", &rate_J0);
  m.def("rate_J0_boltzmann_form", &rate_J0_boltzmann_form);
  m.def("rate_J1", &rate_J1);
  m.def("rate_I", &rate_I);
}
