#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stam/diagnostics.hpp"
#include "stam/dynamics.hpp"
#include "stam/models.hpp"
#include "stam/robustness.hpp"
#include "stam/runner.hpp"

namespace py = pybind11;
using namespace stam;

PYBIND11_MODULE(_stam, m) {
  m.doc() = "Discrete-modulation adiabatic protocol toolkit";
  m.attr("__version__") = kVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument",
                                          PyExc_ValueError);
  py::register_exception<ChannelNotApplicable>(m, "ChannelNotApplicable",
                                               PyExc_ValueError);
  py::register_exception<IncommensurateEnergies>(m, "IncommensurateEnergies",
                                                 PyExc_ValueError);
  py::register_exception<InvalidTruncation>(m, "InvalidTruncation",
                                            PyExc_ValueError);

  py::class_<Operator>(m, "Operator")
      .def(py::init([](const Matrix& entries, bool hermitian) {
             return Operator(Matrix(entries), hermitian);
           }),
           py::arg("entries"), py::arg("hermitian") = false)
      .def_property_readonly(
          "entries", [](const Operator& op) { return op.entries; })
      .def_property_readonly("dim", &Operator::dim);

  py::class_<StateVector>(m, "StateVector")
      .def(py::init([](const Vector& amps) { return StateVector(Vector(amps)); }),
           py::arg("amplitudes"))
      .def_static("basis", &StateVector::basis, py::arg("dim"), py::arg("index"))
      .def_property_readonly(
          "amplitudes", [](const StateVector& s) { return s.amplitudes; })
      .def_property_readonly("dim", &StateVector::dim);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const Matrix& rho) { return DensityMatrix(Matrix(rho)); }),
           py::arg("entries"))
      .def_property_readonly(
          "entries", [](const DensityMatrix& r) { return r.entries; })
      .def_property_readonly("dim", &DensityMatrix::dim);

  py::class_<GaugeSpec>(m, "GaugeSpec")
      .def_readonly("dim", &GaugeSpec::dim)
      .def_readonly("n_qubits", &GaugeSpec::n_qubits)
      .def_property_readonly(
          "generator", [](const GaugeSpec& s) { return s.generator.entries; })
      .def_readonly("initial_basis", &GaugeSpec::initial_basis)
      .def_readonly("connected_pairs", &GaugeSpec::connected_pairs)
      .def("coupling", &GaugeSpec::coupling, py::arg("n"), py::arg("m"))
      .def("energy",
           [](const GaugeSpec& s, int level, double lam) {
             return s.energy(level, lam);
           },
           py::arg("level"), py::arg("lam"))
      .def("validate", &GaugeSpec::validate);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("N", &Schedule::N)
      .def_readonly("Theta_N", &Schedule::Theta_N)
      .def_readonly("lambda_points", &Schedule::lambda_points)
      .def_readonly("theta_points", &Schedule::theta_points)
      .def_readonly("equal_spacing", &Schedule::equal_spacing);

  py::class_<Pulse>(m, "Pulse")
      .def_property_readonly("lam", [](const Pulse& p) { return p.lambda; })
      .def_property_readonly(
          "hamiltonian", [](const Pulse& p) { return p.hamiltonian.entries; })
      .def_readonly("duration", &Pulse::duration);

  py::class_<PulseSequence>(m, "PulseSequence")
      .def_readonly("pulses", &PulseSequence::pulses)
      .def_readonly("total_time", &PulseSequence::total_time)
      .def_readonly("theta_checkpoints", &PulseSequence::theta_checkpoints)
      .def_readonly("connected_pairs", &PulseSequence::connected_pairs)
      .def_property_readonly("dim", &PulseSequence::dim);

  py::class_<LambdaModel>(m, "LambdaModel")
      .def(py::init([](int k2, int k3, double t_p, double phi) {
             return LambdaModel{k2, k3, t_p, phi};
           }),
           py::arg("k2") = 0, py::arg("k3") = 0,
           py::arg("t_p") = 3.14159265358979323846, py::arg("phi") = 0.0)
      .def_readwrite("k2", &LambdaModel::k2)
      .def_readwrite("k3", &LambdaModel::k3)
      .def_readwrite("t_p", &LambdaModel::t_p)
      .def_readwrite("phi", &LambdaModel::phi)
      .def_property_readonly("E2", &LambdaModel::E2)
      .def_property_readonly("E3", &LambdaModel::E3)
      .def_property_readonly("Delta", &LambdaModel::Delta)
      .def_property_readonly("Omega", &LambdaModel::Omega)
      .def_property_readonly("xi", &LambdaModel::xi);

  py::enum_<Interpolation>(m, "Interpolation")
      .value("Trig", Interpolation::Trig)
      .value("Cot", Interpolation::Cot);

  py::class_<CoupledQubitModel>(m, "CoupledQubitModel")
      .def(py::init([](double E, Interpolation interp) {
             CoupledQubitModel model;
             model.E = E;
             model.interpolation = interp;
             return model;
           }),
           py::arg("E") = 1.0,
           py::arg("interpolation") = Interpolation::Trig)
      .def_readwrite("E", &CoupledQubitModel::E);

  py::class_<BosonicModel>(m, "BosonicModel")
      .def(py::init([](int truncation, double omega, Complex alpha) {
             return BosonicModel{truncation, omega, alpha};
           }),
           py::arg("truncation") = 40, py::arg("omega") = 1.0,
           py::arg("alpha") = Complex(1.0, 0.0))
      .def_readwrite("truncation", &BosonicModel::truncation)
      .def_readwrite("omega", &BosonicModel::omega)
      .def_readwrite("alpha", &BosonicModel::alpha);

  py::class_<BosonicBuild>(m, "BosonicBuild")
      .def_readonly("spec", &BosonicBuild::spec)
      .def_readonly("truncation_warning", &BosonicBuild::truncation_warning);

  py::class_<ErrorChannel>(m, "ErrorChannel")
      .def_static("amplitude", &ErrorChannel::amplitude, py::arg("m"))
      .def_static("detuning", &ErrorChannel::detuning, py::arg("m"))
      .def_static("phase", &ErrorChannel::phase, py::arg("delta_e"))
      .def_static("local_pauli", &ErrorChannel::local_pauli, py::arg("site"),
                  py::arg("axis"), py::arg("m"))
      .def_static("drift", &ErrorChannel::drift, py::arg("correlation_time"),
                  py::arg("variance"), py::arg("seed"));

  py::class_<LindbladModel>(m, "LindbladModel")
      .def(py::init<>())
      .def_readwrite("collapse_ops", &LindbladModel::collapse_ops);

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("lam", [](const BoundReport& r) { return r.lambda; })
      .def_readonly("g_max", &BoundReport::g_max)
      .def_readonly("g_prime_max", &BoundReport::g_prime_max)
      .def_readonly("eps_ave", &BoundReport::eps_ave)
      .def_readonly("L_dim", &BoundReport::L_dim)
      .def_readonly("bound_value", &BoundReport::bound_value)
      .def_readonly("actual_infidelity", &BoundReport::actual_infidelity)
      .def_readonly("vacuous", &BoundReport::vacuous);

  m.def("build_lambda", &build_lambda, py::arg("model"));
  m.def("build_coupled_qubits", &build_coupled_qubits, py::arg("model"));
  m.def("build_bosonic", &build_bosonic, py::arg("model"));
  m.def("coherent_state", &coherent_state, py::arg("alpha"),
        py::arg("truncation"));
  m.def("fock_leakage", &fock_leakage, py::arg("psi"));
  m.def("lambda_target_gate",
        [](int N, double Theta_N, double phi) {
          return lambda_target_gate(N, Theta_N, phi).entries;
        },
        py::arg("N"), py::arg("Theta_N"), py::arg("phi") = 0.0);
  m.def("psi_plus", &psi_plus);
  m.def("psi_minus", &psi_minus);
  m.def("pauli_on_site", &pauli_on_site, py::arg("n_qubits"), py::arg("site"),
        py::arg("axis"));

  m.def("make_schedule", &make_schedule, py::arg("N"), py::arg("Theta_N"));
  m.def("make_schedule_custom", &make_schedule_custom,
        py::arg("lambda_points"));
  m.def("compile",
        [](const GaugeSpec& spec, const Schedule& sched) {
          return compile(spec, sched);
        },
        py::arg("spec"), py::arg("schedule"));
  m.def("eigenstate_at", &eigenstate_at, py::arg("spec"), py::arg("lam"),
        py::arg("n"));
  m.def("hamiltonian_at",
        [](const GaugeSpec& spec, double lam) {
          return hamiltonian_at(spec, lam, 0).entries;
        },
        py::arg("spec"), py::arg("lam"));
  m.def("adiabatic_target", &adiabatic_target, py::arg("spec"), py::arg("seq"),
        py::arg("lam"));

  m.def("propagate_unitary", &propagate_unitary, py::arg("seq"),
        py::arg("psi0"));
  m.def("propagator_of", &propagator_of, py::arg("seq"));
  m.def("propagator_until", &propagator_until, py::arg("seq"), py::arg("lam"));
  m.def("propagate_lindblad", &propagate_lindblad, py::arg("seq"),
        py::arg("rho0"), py::arg("noise"));
  m.def("op_fidelity", &op_fidelity, py::arg("u"), py::arg("v"));
  m.def("state_fidelity", &state_fidelity, py::arg("a"), py::arg("b"));

  m.def("u_deviation", &u_deviation, py::arg("seq"), py::arg("spec"),
        py::arg("lam"));
  m.def("bound_report", &bound_report, py::arg("spec"), py::arg("seq"),
        py::arg("lam"));
  m.def("eps_ave_of",
        [](const PulseSequence& seq, double lam) {
          return eps_ave(phase_profiles(seq, lam), lam);
        },
        py::arg("seq"), py::arg("lam"),
        "Averaged-coupling magnitude of a compiled sequence up to lam.");
  m.def("ideal_eps_ave",
        [](const Schedule& sched, double delta_e) {
          return eps_ave(ideal_square_wave(sched, delta_e), sched.Theta_N);
        },
        py::arg("schedule"), py::arg("delta_e") = 0.0,
        "Averaged-coupling magnitude of the ideal square-wave profile.");

  m.def("apply_channel", &apply_channel, py::arg("seq"), py::arg("channel"));
  m.def("apply_channels", &apply_channels, py::arg("seq"), py::arg("channels"));
  m.def("transfer_efficiency", &transfer_efficiency, py::arg("model"),
        py::arg("N"), py::arg("channels"));
  m.def("lambda_gate_merit", &lambda_gate_merit, py::arg("model"), py::arg("N"),
        py::arg("Theta_N"), py::arg("noise"));
  m.def("lambda_noise", &lambda_noise, py::arg("gamma_e"), py::arg("gamma_dep"));
  m.def("pulse_area_statistics", &pulse_area_statistics, py::arg("drift"),
        py::arg("tau_p"), py::arg("trials"));
  m.def("child_seed", &child_seed, py::arg("master"), py::arg("index"));

  m.def("run",
        [](const std::string& command,
           const std::map<std::string, std::string>& kv,
           const std::string& out_dir, double grid_scale) {
          RunConfig cfg;
          cfg.command = command;
          cfg.kv = kv;
          cfg.out_dir = out_dir;
          cfg.grid_scale = grid_scale;
          return run(cfg);
        },
        py::arg("command"), py::arg("config") = std::map<std::string, std::string>{},
        py::arg("out_dir") = ".", py::arg("grid_scale") = 1.0,
        "Execute one CLI-equivalent run; returns the process exit code.");
}
