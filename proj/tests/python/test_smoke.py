import math

import numpy as np
import pytest

import stam


def test_version():
    assert stam.__version__ == "0.1.0"


def test_lambda_model_quantization():
    m = stam.LambdaModel(k2=0, k3=1, t_p=math.pi)
    assert m.Delta == pytest.approx(2.0)
    assert m.Omega == pytest.approx(math.sqrt(3.0))


def test_checkpoint_identity():
    spec = stam.build_lambda(stam.LambdaModel())
    seq = stam.compile(spec, stam.make_schedule(3, math.pi / 2))
    for theta in seq.theta_checkpoints:
        u = stam.propagator_until(seq, theta)
        target = stam.adiabatic_target(spec, seq, theta)
        assert stam.op_fidelity(u, target) >= 1 - 1e-10


def test_population_transfer():
    spec = stam.build_lambda(stam.LambdaModel())
    seq = stam.compile(spec, stam.make_schedule(1, math.pi / 2))
    out = stam.propagate_unitary(seq, stam.StateVector.basis(3, 0))
    assert abs(out.amplitudes[1]) == pytest.approx(1.0, abs=1e-9)
    assert abs(out.amplitudes[2]) < 1e-9


def test_coherent_state_preparation():
    build = stam.build_bosonic(stam.BosonicModel(truncation=40, alpha=1.0))
    seq = stam.compile(build.spec, stam.make_schedule(1, 1.0))
    out = stam.propagate_unitary(seq, stam.StateVector.basis(40, 0))
    target = stam.coherent_state(1.0, 40)
    assert stam.state_fidelity(out, target) >= 1 - 1e-6
    assert stam.fock_leakage(out) < 1e-8


def test_coupled_qubits_entangler():
    spec = stam.build_coupled_qubits(stam.CoupledQubitModel())
    seq = stam.compile(spec, stam.make_schedule(1, math.pi / 4))
    assert seq.total_time == pytest.approx(math.pi / 2)
    out = stam.propagate_unitary(seq, stam.StateVector.basis(4, 3))
    assert stam.state_fidelity(out, stam.psi_plus()) >= 1 - 1e-9


def test_ideal_eps_ave_law():
    for n in (1, 2, 4):
        sched = stam.make_schedule(n, math.pi / 2)
        assert stam.ideal_eps_ave(sched) == pytest.approx(
            math.pi / (4 * n), abs=1e-6
        )


def test_transfer_efficiency_with_amplitude_error():
    channels = [stam.ErrorChannel.amplitude(0.1)]
    eff = stam.transfer_efficiency(stam.LambdaModel(), 4, channels)
    assert eff == pytest.approx(0.998726194960, abs=1e-9)


def test_gate_merit_with_noise():
    merit = stam.lambda_gate_merit(
        stam.LambdaModel(),
        1,
        math.pi / 2,
        stam.lambda_noise(1.5 / (2 * math.pi), 0.05 / (2 * math.pi)),
    )
    assert merit == pytest.approx(0.868568526483, abs=1e-9)


def test_bound_report_consistency():
    spec = stam.build_lambda(stam.LambdaModel())
    seq = stam.compile(spec, stam.make_schedule(2, math.pi / 2))
    rep = stam.bound_report(spec, seq, math.pi / 2)
    assert rep.actual_infidelity <= 1e-10
    assert rep.g_prime_max == 0.0
    expected = (
        2
        * rep.lam
        * rep.L_dim
        * math.sqrt(rep.eps_ave * rep.g_max**2 * rep.L_dim * rep.g_max)
    )
    assert rep.bound_value == pytest.approx(expected, rel=1e-12)


def test_drift_statistics_deterministic():
    drift = stam.ErrorChannel.drift(0.2, 0.01, 99)
    a = stam.pulse_area_statistics(drift, 2.0, 500)
    b = stam.pulse_area_statistics(drift, 2.0, 500)
    assert a == b


def test_invalid_inputs_raise():
    with pytest.raises(ValueError):
        stam.build_bosonic(stam.BosonicModel(truncation=3))
    with pytest.raises(ValueError):
        stam.make_schedule(0, 1.0)


def test_run_writes_manifest(tmp_path):
    code = stam.run(
        "compile",
        {"model": "lambda", "schedule.N": "2",
         "schedule.Theta_N": "1.5707963267948966"},
        out_dir=str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "run_manifest.json").exists()
    assert (tmp_path / "pulses.csv").exists()


def test_hamiltonian_is_hermitian_numpy():
    spec = stam.build_lambda(stam.LambdaModel(k2=0, k3=1))
    h = stam.hamiltonian_at(spec, 0.3)
    assert np.allclose(h, h.conj().T)
