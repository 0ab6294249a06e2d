#include <doctest.h>

#include <cmath>

#include "stam/diagnostics.hpp"
#include "stam/dynamics.hpp"
#include "stam/models.hpp"
#include "stam/protocol.hpp"

using namespace stam;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("make_schedule produces the equally spaced points") {
  const Schedule one = make_schedule(1, kPi / 2.0);
  CHECK(one.lambda_points[0] == doctest::Approx(kPi / 4.0).epsilon(1e-14));
  CHECK(one.theta_points[0] == doctest::Approx(kPi / 2.0).epsilon(1e-14));

  const Schedule three = make_schedule(3, kPi / 2.0);
  const double expected_lambda[] = {kPi / 12.0, kPi / 4.0, 5.0 * kPi / 12.0};
  const double expected_theta[] = {kPi / 6.0, kPi / 3.0, kPi / 2.0};
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(three.lambda_points[j] - expected_lambda[j]) < 1e-12);
    CHECK(std::abs(three.theta_points[j] - expected_theta[j]) < 1e-12);
  }
}

TEST_CASE("alternating-sum checkpoints agree with j Theta_N / N") {
  for (int N : {1, 2, 5, 8}) {
    const Schedule s = make_schedule(N, 1.3);
    for (int j = 0; j < N; ++j) {
      CHECK(std::abs(s.theta_points[j] - (j + 1) * 1.3 / N) < 1e-12);
    }
  }
}

TEST_CASE("custom schedules use the alternating sum") {
  const Schedule s = make_schedule_custom({0.1, 0.3});
  CHECK(s.theta_points[0] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(s.theta_points[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK_FALSE(s.equal_spacing);
  CHECK_THROWS_AS(make_schedule_custom({0.3, 0.1}), InvalidArgument);
  CHECK_THROWS_AS(make_schedule(0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_schedule(2, -1.0), InvalidArgument);
}

TEST_CASE("cluster validation two-colors the coupling graph") {
  const GaugeSpec ladder = build_bosonic({.truncation = 8}).spec;
  const ClusterPartition part = validate_clusters(ladder);
  for (int n = 0; n < 8; ++n) {
    CHECK(part.color[n] == n % 2);  // Fock parity
    CHECK(part.cluster_id[n] == 0);
  }

  const GaugeSpec lambda = build_lambda({});
  const ClusterPartition lp = validate_clusters(lambda);
  CHECK(lp.color[0] == 0);
  CHECK(lp.color[1] == 1);
  CHECK(lp.color[2] == 1);
}

TEST_CASE("odd coupling cycles are rejected") {
  GaugeSpec spec;
  spec.dim = 3;
  spec.initial_basis = Matrix::Identity(3, 3);
  Matrix g = Matrix::Ones(3, 3);
  g.diagonal().setZero();
  spec.generator = Operator(g, true);
  spec.energy = [](int, double) { return 1.0; };
  spec.connected_pairs = {{0, 1}, {1, 2}, {0, 2}};
  CHECK_THROWS_AS(validate_clusters(spec), NotBipartite);
}

TEST_CASE("declared pairs must match the numeric couplings") {
  GaugeSpec spec = explicit_g_spec({Complex(1.0, 0.0), Complex(0.0, 1.0)}, 3);
  spec.connected_pairs.pop_back();  // drop a pair that is numerically nonzero
  CHECK_THROWS_AS(spec.validate(), InconsistentPairs);

  GaugeSpec diag_violation = explicit_g_spec({Complex(1.0, 0.0)}, 2);
  Matrix g = diag_violation.generator.entries;
  g(0, 0) = 0.5;
  diag_violation.generator = Operator(g, true);
  CHECK_THROWS_AS(diag_violation.validate(), InvalidArgument);
}

TEST_CASE("explicit-G sequences reach the closed-form final state") {
  // dim 2, g_{2,1} = 1, Theta_N = pi/2: the tracked state transfers fully.
  {
    const GaugeSpec spec = explicit_g_spec({Complex(1.0, 0.0)}, 2);
    const PulseSequence seq = compile(spec, make_schedule(1, kPi / 2.0));
    CHECK(seq.pulses[0].duration == doctest::Approx(kPi).epsilon(1e-12));
    const StateVector fin =
        propagate_unitary(seq, StateVector::basis(2, 0));
    CHECK(state_fidelity(fin, StateVector::basis(2, 1)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Closed form: cos(g Theta)|1_0> - i sin(g Theta) |2_0>.
    CHECK(std::abs(fin.amplitudes(1) - Complex(0.0, -1.0)) < 1e-10);
  }
  // dim 3, g = (1/sqrt2, 1/sqrt2), Theta_N = pi/4.
  {
    const double r = 1.0 / std::sqrt(2.0);
    const GaugeSpec spec = explicit_g_spec({Complex(r, 0.0), Complex(r, 0.0)}, 3);
    const PulseSequence seq = compile(spec, make_schedule(2, kPi / 4.0));
    const StateVector fin =
        propagate_unitary(seq, StateVector::basis(3, 0));
    // Dynamic phases on levels 2, 3 rotate them by e^{-i phi}; compare in
    // the adiabatic frame (phases are equal for both excited levels here).
    const std::vector<double> phases = accumulated_phases(seq, kPi / 4.0);
    const Complex rot = std::exp(Complex(0.0, phases[1]));
    const Complex i(0.0, 1.0);
    CHECK(std::abs(fin.amplitudes(0) - std::cos(kPi / 4.0)) < 1e-10);
    CHECK(std::abs(rot * fin.amplitudes(1) - (-i) * std::sin(kPi / 4.0) * r) <
          1e-10);
    CHECK(std::abs(rot * fin.amplitudes(2) - (-i) * std::sin(kPi / 4.0) * r) <
          1e-10);
  }
  CHECK_THROWS_AS(explicit_g_spec({Complex(0.0, 0.0)}, 2), InvalidArgument);
}

TEST_CASE("compile enforces the odd-pi phase condition") {
  const LambdaModel m{.k2 = 0, .k3 = 1, .t_p = kPi};
  const GaugeSpec spec = build_lambda(m);
  const PulseSequence seq = compile(spec, make_schedule(3, kPi / 2.0));
  for (size_t j = 0; j < seq.pulses.size(); ++j) {
    CHECK(seq.pulses[j].duration == doctest::Approx(kPi).epsilon(1e-12));
    for (const auto& pair : seq.connected_pairs) {
      const double gap = std::abs(seq.level_energies[j][pair.first] -
                                  seq.level_energies[j][pair.second]);
      const double phase = std::fmod(gap * seq.pulses[j].duration, 2.0 * kPi);
      CHECK(std::abs(phase - kPi) < 1e-9);
    }
  }
}

TEST_CASE("compile durations match the quoted model values") {
  // coupled qubits, N=1, Theta=pi/4: one pulse of duration pi/(2E)
  const GaugeSpec cq = build_coupled_qubits({.E = 2.0});
  const PulseSequence cseq = compile(cq, make_schedule(1, kPi / 4.0));
  CHECK(cseq.pulses.size() == 1);
  CHECK(cseq.pulses[0].lambda == doctest::Approx(kPi / 8.0).epsilon(1e-14));
  CHECK(cseq.pulses[0].duration ==
        doctest::Approx(kPi / (2.0 * 2.0)).epsilon(1e-12));

  // bosonic, N=1, Theta=1: one pulse at lambda=1/2 of duration pi/omega
  const GaugeSpec bos = build_bosonic({.truncation = 16, .omega = 0.5}).spec;
  const PulseSequence bseq = compile(bos, make_schedule(1, 1.0));
  CHECK(bseq.pulses[0].lambda == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bseq.pulses[0].duration == doctest::Approx(kPi / 0.5).epsilon(1e-12));
}

TEST_CASE("incommensurate energies are rejected") {
  GaugeSpec spec = explicit_g_spec({Complex(1.0, 0.0), Complex(1.0, 0.0)}, 3);
  spec.energy = [](int level, double) {
    return level == 0 ? 0.0 : (level == 1 ? 1.0 : std::sqrt(2.0));
  };
  CHECK_THROWS_AS(compile(spec, make_schedule(1, 0.5)), IncommensurateEnergies);

  GaugeSpec zero_gap = explicit_g_spec({Complex(1.0, 0.0)}, 2);
  zero_gap.energy = [](int, double) { return 1.0; };
  CHECK_THROWS_AS(compile(zero_gap, make_schedule(1, 0.5)),
                  IncommensurateEnergies);
}

TEST_CASE("checkpoint identity holds for all builtin models up to N=6") {
  struct Case {
    GaugeSpec spec;
    double Theta;
  };
  std::vector<Case> cases;
  cases.push_back({build_lambda({}), kPi / 2.0});
  cases.push_back({build_coupled_qubits({}), kPi / 4.0});
  cases.push_back({build_bosonic({.truncation = 32}).spec, 1.0});
  for (auto& [spec, Theta] : cases) {
    for (int N = 1; N <= 6; ++N) {
      const PulseSequence seq = compile(spec, make_schedule(N, Theta));
      for (double theta : seq.theta_checkpoints) {
        const Operator u = propagator_until(seq, theta);
        const Operator target = adiabatic_target(spec, seq, theta);
        CHECK(op_fidelity(target, u) >= 1.0 - 1e-10);
      }
    }
  }
}

TEST_CASE("eigenstate_at follows the gauge flow") {
  const GaugeSpec spec = build_lambda({.phi = 0.3});
  CHECK(state_fidelity(eigenstate_at(spec, 0.0, 0),
                       StateVector::basis(3, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // dark state: cos(lambda)|1> - e^{i phi} sin(lambda)|0>
  const double lam = 0.7;
  const StateVector dark = eigenstate_at(spec, lam, 0);
  CHECK(std::abs(dark.amplitudes(0) - std::cos(lam)) < 1e-10);
  CHECK(std::abs(dark.amplitudes(1) +
                 std::exp(Complex(0.0, 0.3)) * std::sin(lam)) < 1e-10);
  CHECK(std::abs(dark.amplitudes(2)) < 1e-10);
  CHECK_THROWS_AS(eigenstate_at(spec, 0.0, 5), IndexOutOfRange);
}

TEST_CASE("gauge-spec serialization round-trips") {
  const GaugeSpec spec = build_lambda({.k2 = 0, .k3 = 1, .t_p = kPi});
  const Schedule sched = make_schedule(2, kPi / 2.0);
  const std::string text = serialize_gauge_spec(spec, sched);
  const auto [parsed, parsed_sched] = parse_gauge_spec(text);
  CHECK(serialize_gauge_spec(parsed, parsed_sched) == text);

  const PulseSequence a = compile(spec, sched);
  const PulseSequence b = compile(parsed, parsed_sched);
  REQUIRE(a.pulses.size() == b.pulses.size());
  for (size_t j = 0; j < a.pulses.size(); ++j) {
    CHECK(a.pulses[j].duration ==
          doctest::Approx(b.pulses[j].duration).epsilon(1e-12));
    CHECK((a.pulses[j].hamiltonian.entries - b.pulses[j].hamiltonian.entries)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(parse_gauge_spec("bogus header"), ConfigError);
}

TEST_CASE("pulse-sequence serialization round-trips") {
  const GaugeSpec spec = build_coupled_qubits({});
  const PulseSequence seq = compile(spec, make_schedule(3, kPi / 4.0));
  const std::string text = serialize_pulse_sequence(seq);
  const PulseSequence parsed = parse_pulse_sequence(text);
  CHECK(serialize_pulse_sequence(parsed) == text);
  CHECK(parsed.total_time == doctest::Approx(seq.total_time).epsilon(1e-12));
  CHECK(op_fidelity(propagator_of(parsed), propagator_of(seq)) >=
        1.0 - 1e-12);
}
