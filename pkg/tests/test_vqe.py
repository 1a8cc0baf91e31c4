import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringcasimir.hamiltonian import CapacityError, HamiltonianSpec
from ringcasimir.lattice import (
    ModeFamily,
    casimir_exact,
    mode_frequency,
    mode_hamiltonian,
    ring_hamiltonian,
    subtraction_constant,
)
from ringcasimir.pauli import PauliSum, decompose_diagonal, expectation
from ringcasimir.vqe import (
    Optimizer,
    VqeConfig,
    ansatz_state,
    ansatz_state_phased,
    combined_trace,
    minimize,
    n_parameters,
    partitioned_run,
    run_vqe,
)


def test_ansatz_zero_parameters_is_ground_basis_state():
    for qubits in (1, 2, 3):
        state = ansatz_state(np.zeros(qubits), qubits, 0)
        expected = np.zeros(2**qubits)
        expected[0] = 1.0
        assert np.allclose(state, expected)


def test_ansatz_pi_rotation_flips_qubit():
    state = ansatz_state(np.array([np.pi]), 1, 0)
    assert abs(abs(state[1]) - 1.0) < 1e-12
    z = expectation(PauliSum(1, ((1.0, "Z"),)), state)
    assert z == pytest.approx(-1.0)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2**32 - 1), st.booleans())
def test_ansatz_norm_is_one(qubits, depth, seed, phased):
    rng = np.random.default_rng(seed)
    build = ansatz_state_phased if phased else ansatz_state
    kind = "ry-rz" if phased else "ry"
    params = rng.uniform(-np.pi, np.pi, n_parameters(qubits, depth, kind))
    state = build(params, qubits, depth)
    assert abs(np.linalg.norm(state) - 1.0) < 1e-12


def test_ansatz_parameter_count_mismatch():
    with pytest.raises(ValueError):
        ansatz_state(np.zeros(3), 2, 0)
    with pytest.raises(ValueError):
        ansatz_state_phased(np.zeros(2), 2, 0)


def test_ansatz_real_amplitudes():
    rng = np.random.default_rng(5)
    state = ansatz_state(rng.uniform(-1, 1, 6), 3, 1)
    assert np.max(np.abs(state.imag)) < 1e-12


def test_minimize_quadratic_bowl_both_optimizers():
    for optimizer in Optimizer:
        cfg = VqeConfig(optimizer=optimizer, max_iterations=500, tolerance=1e-10)
        out = minimize(lambda x: (x[0] - 2.0) ** 2, np.array([0.0]), cfg)
        assert out.x[0] == pytest.approx(2.0, abs=1e-6)
        assert out.converged


def test_minimize_rosenbrock_quadratic_model():
    def rosenbrock(x):
        return (1 - x[0]) ** 2 + 100.0 * (x[1] - x[0] ** 2) ** 2

    cfg = VqeConfig(optimizer=Optimizer.QUADRATIC, max_iterations=500, tolerance=1e-12)
    out = minimize(rosenbrock, np.array([-1.2, 1.0]), cfg)
    assert np.allclose(out.x, [1.0, 1.0], atol=1e-3)


def test_minimize_trace_monotone_and_consistent():
    cfg = VqeConfig(max_iterations=200, tolerance=1e-8)
    out = minimize(lambda x: float(np.sum(x**2)), np.array([1.0, -2.0]), cfg)
    energies = [e for _, e in out.trace]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert out.trace[-1][1] == out.fun
    assert out.evaluations >= len(out.trace)


def test_minimize_budget_exhaustion_flags_not_converged():
    cfg = VqeConfig(max_iterations=3, tolerance=1e-14)
    out = minimize(lambda x: float(np.sum(x**2)), np.array([5.0, 5.0]), cfg)
    assert not out.converged
    assert np.isfinite(out.fun)


def one_qubit_scan_minimum(omega, points=20001):
    """Exhaustive 1-D oracle for the single-fermion-mode landscape."""
    thetas = np.linspace(-np.pi, np.pi, points)
    return min(-0.5 * omega * np.cos(t) for t in thetas)


def test_run_vqe_fermion_mode_matches_scan_oracle():
    family = ModeFamily.from_label("fermion-periodic", 1)
    spec = mode_hamiltonian(family, 1)
    omega = mode_frequency(family, 1)
    result = run_vqe(spec, VqeConfig(seed=3))
    assert result.energy == pytest.approx(-omega / 2.0, abs=1e-6)
    assert result.energy == pytest.approx(one_qubit_scan_minimum(omega), abs=1e-6)
    assert result.converged


def test_run_vqe_eight_seeds_all_find_global_minimum():
    family = ModeFamily.from_label("fermion-twisted", 1)
    spec = mode_hamiltonian(family, 1)
    target = spec.ground_energy()
    hits = 0
    for seed in range(8):
        result = run_vqe(spec, VqeConfig(seed=seed))
        hits += abs(result.energy - target) < 1e-6
    assert hits == 8


def test_run_vqe_deterministic_for_fixed_seed():
    spec = ring_hamiltonian(ModeFamily.from_label("boson-periodic", 2))
    a = run_vqe(spec, VqeConfig(seed=42))
    b = run_vqe(spec, VqeConfig(seed=42))
    assert a.energy == b.energy
    assert a.trace == b.trace
    assert np.array_equal(a.parameters, b.parameters)


def test_run_vqe_capacity():
    spec = ring_hamiltonian(ModeFamily.from_label("fermion-periodic", 13))
    with pytest.raises(CapacityError, match="partition"):
        run_vqe(spec)


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(["boson-periodic", "boson-twisted", "fermion-periodic", "fermion-twisted"]),
    st.integers(1, 3),
    st.integers(0, 2**31),
    st.integers(0, 2),
)
def test_variational_bound_random_runs(label, sites, seed, depth):
    family = ModeFamily.from_label(label, sites)
    spec = ring_hamiltonian(family)
    cfg = VqeConfig(depth=depth, max_iterations=40, seed=seed)
    result = run_vqe(spec, cfg)
    assert result.energy >= spec.ground_energy() - 1e-9
    energies = [e for _, e in result.trace]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert result.energy == result.trace[-1][1]


def test_shots_mode_statistics():
    # 10^6 shots on a 1-qubit Z term: binomial standard error below 2e-3
    family = ModeFamily.from_label("fermion-periodic", 1)
    spec = mode_hamiltonian(family, 1)
    omega = mode_frequency(family, 1)
    errors = []
    for seed in range(5):
        cfg = VqeConfig(seed=seed, shots=10**6, max_iterations=60)
        result = run_vqe(spec, cfg)
        errors.append(abs(result.energy - (-omega / 2.0)))
    # scale of the residual: omega/2 * (a few) * 1e-3
    assert np.median(errors) < 3e-3 * omega


def test_shots_converge_towards_exact():
    spec = mode_hamiltonian(ModeFamily.from_label("fermion-periodic", 1), 1)
    psum = decompose_diagonal(spec.diagonal)
    state = ansatz_state(np.array([0.3]), 1, 0)
    exact = expectation(psum, state)
    from ringcasimir.vqe import _sampled_expectation

    rng_small = np.random.default_rng(0)
    rng_large = np.random.default_rng(0)
    small = [abs(_sampled_expectation(psum, state, 100, rng_small) - exact) for _ in range(200)]
    large = [abs(_sampled_expectation(psum, state, 10**6, rng_large) - exact) for _ in range(200)]
    assert np.mean(large) < np.mean(small) / 10.0


def test_partitioned_run_boson_periodic_n1():
    report = partitioned_run(ModeFamily.from_label("boson-periodic", 1))
    assert report.exact_energy == pytest.approx(-0.2371, abs=5e-5)
    assert abs(report.percent_difference) <= 1e-3
    assert len(report.per_mode_energies) == 1
    assert report.subtraction == pytest.approx(-8.0 / np.pi)


def test_partitioned_run_fermion_periodic_n4():
    report = partitioned_run(ModeFamily.from_label("fermion-periodic", 4))
    assert report.exact_energy == pytest.approx(0.1036, abs=5e-5)
    assert abs(report.percent_difference) <= 1e-3
    assert len(report.per_mode_energies) == 4


def test_partitioned_run_combined_linearity():
    combined = ModeFamily.from_label("combined-periodic", 2)
    report = partitioned_run(combined)
    boson = casimir_exact(ModeFamily.from_label("boson-periodic", 2))
    fermion = casimir_exact(ModeFamily.from_label("fermion-periodic", 2))
    assert report.exact_energy == pytest.approx(boson + fermion, rel=1e-12)
    assert report.subtraction == pytest.approx(24.0 / np.pi)
    assert len(report.per_mode_energies) == 4
    assert abs(report.percent_difference) <= 1e-3


@pytest.mark.parametrize("label,sites", [("boson-periodic", 2), ("fermion-twisted", 3), ("combined-periodic", 1)])
def test_partition_additivity_vs_monolithic(label, sites):
    family = ModeFamily.from_label(label, sites)
    report = partitioned_run(family)
    monolithic = ring_hamiltonian(family).ground_energy() + subtraction_constant(family.statistics)
    n_modes = len(report.per_mode_energies)
    assert abs(report.vqe_energy - monolithic) <= 1e-6 * max(1, n_modes)


def test_combined_trace_monotone_and_offset():
    family = ModeFamily.from_label("boson-periodic", 2)
    report, results = partitioned_run(family, return_mode_results=True)
    rows = combined_trace(results, offset=report.subtraction)
    energies = [e for _, e in rows]
    assert all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))
    assert energies[-1] == pytest.approx(report.vqe_energy, abs=1e-12)
    steps = [s for s, _ in rows]
    assert steps == sorted(steps)


def test_run_vqe_on_pauli_only_spec():
    psum = decompose_diagonal(np.array([-1.0, 2.0]))
    spec = HamiltonianSpec(qubits=1, pauli=psum)
    result = run_vqe(spec, VqeConfig(seed=1))
    assert result.energy == pytest.approx(-1.0, abs=1e-6)


def test_vqe_config_validation():
    with pytest.raises(ValueError):
        VqeConfig(depth=-1)
    with pytest.raises(ValueError):
        VqeConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        VqeConfig(max_iterations=0)
    with pytest.raises(ValueError):
        VqeConfig(shots=0)
    with pytest.raises(ValueError):
        VqeConfig(ansatz="uccsd")
    with pytest.raises(ValueError):
        VqeConfig(init_spread=0.0)
