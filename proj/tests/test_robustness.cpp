#include <doctest.h>

#include <cmath>

#include "stam/robustness.hpp"

using namespace stam;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("zero-magnitude channels do not disturb the sequence") {
  const GaugeSpec spec = build_lambda({.k2 = 0, .k3 = 1});
  const PulseSequence seq = compile(spec, make_schedule(2, kPi / 2.0));
  for (const ErrorChannel& ch :
       {ErrorChannel::amplitude(0.0), ErrorChannel::detuning(0.0),
        ErrorChannel::phase(0.0)}) {
    const PulseSequence out = apply_channel(seq, ch);
    REQUIRE(out.pulses.size() == seq.pulses.size());
    for (size_t j = 0; j < seq.pulses.size(); ++j) {
      CHECK((out.pulses[j].hamiltonian.entries -
             seq.pulses[j].hamiltonian.entries)
                .cwiseAbs()
                .maxCoeff() < 1e-15);
      CHECK(out.pulses[j].duration == doctest::Approx(seq.pulses[j].duration));
    }
  }
}

TEST_CASE("amplitude error scales only the coupling part") {
  const GaugeSpec spec = build_lambda({.k2 = 0, .k3 = 1});
  const PulseSequence seq = compile(spec, make_schedule(1, kPi / 2.0));
  const PulseSequence out = apply_channel(seq, ErrorChannel::amplitude(0.1));
  const Matrix& h0 = seq.pulses[0].hamiltonian.entries;
  const Matrix& h1 = out.pulses[0].hamiltonian.entries;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r == c) {
        CHECK(std::abs(h1(r, c) - h0(r, c)) < 1e-14);
      } else {
        CHECK(std::abs(h1(r, c) - 1.1 * h0(r, c)) < 1e-14);
      }
    }
  }
}

TEST_CASE("phase error stretches every duration uniformly") {
  const GaugeSpec spec = build_lambda({});
  const PulseSequence seq = compile(spec, make_schedule(3, kPi / 2.0));
  const PulseSequence out = apply_channel(seq, ErrorChannel::phase(0.02));
  double total = 0.0;
  for (size_t j = 0; j < seq.pulses.size(); ++j) {
    CHECK(out.pulses[j].duration ==
          doctest::Approx(1.02 * seq.pulses[j].duration).epsilon(1e-14));
    total += out.pulses[j].duration;
  }
  CHECK(out.total_time == doctest::Approx(total).epsilon(1e-14));
}

TEST_CASE("transfer efficiency is unity without errors") {
  for (int N = 1; N <= 4; ++N) {
    CHECK(transfer_efficiency({}, N, {}) >= 1.0 - 1e-9);
  }
}

TEST_CASE("transfer efficiency under a 10% amplitude error") {
  const std::vector<ErrorChannel> chs = {ErrorChannel::amplitude(0.1)};
  CHECK(transfer_efficiency({}, 1, chs) ==
        doctest::Approx(0.951655382444).epsilon(1e-9));
  CHECK(transfer_efficiency({}, 2, chs) ==
        doctest::Approx(0.998802626342).epsilon(1e-9));
  CHECK(transfer_efficiency({}, 3, chs) ==
        doctest::Approx(0.994593182759).epsilon(1e-9));
  CHECK(transfer_efficiency({}, 4, chs) ==
        doctest::Approx(0.998726194960).epsilon(1e-9));
  // more modulation points beat the single-pulse protocol
  CHECK(transfer_efficiency({}, 4, chs) > transfer_efficiency({}, 1, chs));
}

TEST_CASE("detuning response is symmetric on resonance") {
  for (int N : {1, 2}) {
    const double plus =
        transfer_efficiency({}, N, {ErrorChannel::detuning(0.08)});
    const double minus =
        transfer_efficiency({}, N, {ErrorChannel::detuning(-0.08)});
    CHECK(plus == doctest::Approx(minus).epsilon(1e-9));
    CHECK(plus < 1.0);
  }
}

TEST_CASE("gate merit is unity without noise and matches the frozen point") {
  CHECK(lambda_gate_merit({}, 1, kPi / 2.0, lambda_noise(0.0, 0.0)) >=
        1.0 - 1e-9);
  const double merit = lambda_gate_merit(
      {}, 1, kPi / 2.0,
      lambda_noise(1.5 / (2.0 * kPi), 0.05 / (2.0 * kPi)));
  CHECK(merit == doctest::Approx(0.868568526483).epsilon(1e-9));
}

TEST_CASE("sweep reduces to the direct call and is deterministic") {
  const MeritFn merit = [](const std::vector<double>& x, std::uint64_t seed) {
    return x[0] * x[0] + x[1] + 1e-9 * static_cast<double>(seed % 7);
  };
  const std::uint64_t master = 777;
  const ScanResult single = sweep({"a", "b"}, {{2.0}, {3.0}}, merit, master);
  REQUIRE(single.values.size() == 1);
  CHECK(single.values[0] ==
        doctest::Approx(merit({2.0, 3.0}, child_seed(master, 0))));

  const std::vector<std::vector<double>> axes = {{0.0, 1.0, 2.0}, {5.0, 6.0}};
  const ScanResult a = sweep({"a", "b"}, axes, merit, master);
  const ScanResult b = sweep({"a", "b"}, axes, merit, master);
  REQUIRE(a.values.size() == 6);
  for (size_t k = 0; k < a.values.size(); ++k) {
    CHECK(a.values[k] == b.values[k]);
  }
  CHECK(a.to_csv() == b.to_csv());
  CHECK_THROWS_AS(sweep({"a"}, {}, merit, 0), InvalidArgument);
  CHECK_THROWS_AS(sweep({"a"}, {{}}, merit, 0), InvalidArgument);
}

TEST_CASE("child seeds are distinct across indices and masters") {
  CHECK(child_seed(1, 0) != child_seed(1, 1));
  CHECK(child_seed(1, 0) != child_seed(2, 0));
  CHECK(child_seed(0, 0) != 0);
}

TEST_CASE("drift with zero variance is inert") {
  const GaugeSpec spec = build_lambda({});
  const PulseSequence seq = compile(spec, make_schedule(1, kPi / 2.0));
  const PulseSequence out =
      apply_channel(seq, ErrorChannel::drift(0.1, 0.0, 99));
  double total = 0.0;
  for (const Pulse& p : out.pulses) {
    CHECK((p.hamiltonian.entries - seq.pulses[0].hamiltonian.entries)
              .cwiseAbs()
              .maxCoeff() < 1e-15);
    total += p.duration;
  }
  CHECK(total == doctest::Approx(seq.total_time).epsilon(1e-12));
}

TEST_CASE("pulse-area statistics of the drift") {
  const double tau_p = 5.0, var0 = 0.04;

  SUBCASE("zero variance short-circuits") {
    const auto [mean, var] =
        pulse_area_statistics(ErrorChannel::drift(0.1, 0.0, 1), tau_p, 100);
    CHECK(mean == 0.0);
    CHECK(var == 0.0);
  }

  SUBCASE("mean is zero within sampling error") {
    const auto [mean, var] = pulse_area_statistics(
        ErrorChannel::drift(0.05, var0, 20240817), tau_p, 10000);
    CHECK(std::abs(mean) <= 3.0 * std::sqrt(var / 10000.0));
  }

  SUBCASE("fast drift self-averages") {
    const auto fast = pulse_area_statistics(
        ErrorChannel::drift(tau_p / 1000.0, var0, 5), tau_p, 2000);
    const auto slow = pulse_area_statistics(
        ErrorChannel::drift(tau_p, var0, 6), tau_p, 2000);
    CHECK(fast.second <= 0.01 * slow.second);
  }

  SUBCASE("quasi-static drift keeps the full variance") {
    const auto froz = pulse_area_statistics(
        ErrorChannel::drift(1000.0 * tau_p, var0, 7), tau_p, 2000);
    CHECK(froz.second ==
          doctest::Approx(var0 * tau_p * tau_p).epsilon(0.15));
  }

  SUBCASE("variance grows linearly with the correlation time") {
    std::vector<double> taus, vars;
    for (int k = 0; k < 5; ++k) {
      const double tau_c = tau_p / 100.0 * std::pow(10.0, k / 4.0);
      taus.push_back(tau_c);
      vars.push_back(pulse_area_statistics(
                         ErrorChannel::drift(tau_c, var0, 40 + k), tau_p, 1000)
                         .second);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = 5;
    for (int k = 0; k < n; ++k) {
      sx += taus[k];
      sy += vars[k];
      sxx += taus[k] * taus[k];
      sxy += taus[k] * vars[k];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    for (int k = 0; k < n; ++k) {
      const double fit = slope * taus[k] + intercept;
      ss_res += (vars[k] - fit) * (vars[k] - fit);
      ss_tot += (vars[k] - sy / n) * (vars[k] - sy / n);
    }
    CHECK(1.0 - ss_res / ss_tot >= 0.95);
    CHECK(slope > 0.0);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(
        pulse_area_statistics(ErrorChannel::amplitude(0.1), tau_p, 1000),
        ChannelNotApplicable);
    CHECK_THROWS_AS(
        pulse_area_statistics(ErrorChannel::drift(0.1, var0, 1), tau_p, 10),
        InvalidArgument);
  }
}

TEST_CASE("channels refuse models they do not apply to") {
  const GaugeSpec lambda_spec = build_lambda({});
  const PulseSequence lambda_seq = compile(lambda_spec, make_schedule(1, kPi / 2.0));
  CHECK_THROWS_AS(apply_channel(lambda_seq, ErrorChannel::local_pauli(0, 0, 0.1)),
                  ChannelNotApplicable);

  const GaugeSpec coupled = build_coupled_qubits({});
  const PulseSequence coupled_seq = compile(coupled, make_schedule(1, kPi / 4.0));
  CHECK_THROWS_AS(apply_channel(coupled_seq, ErrorChannel::detuning(0.1)),
                  ChannelNotApplicable);
  CHECK_THROWS_AS(apply_channel(coupled_seq, ErrorChannel::drift(0.1, 0.01, 1)),
                  ChannelNotApplicable);
  // ... while the qubit register supports local Pauli errors
  CHECK_NOTHROW(apply_channel(coupled_seq, ErrorChannel::local_pauli(0, 0, 0.05)));
}
