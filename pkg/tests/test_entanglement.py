import numpy as np
import pytest

from syncqubits.entanglement import (
    BadSubsystem,
    cubic_roots,
    partial_transpose,
    ppt_analyze,
    sweep,
)
from syncqubits.quantum import (
    StationaryParams,
    random_density_matrix,
    random_stationary_params,
    stationary_state,
)


def test_partial_transpose_identity():
    assert np.array_equal(partial_transpose(np.eye(4) / 4.0), np.eye(4) / 4.0)


def test_partial_transpose_is_involution(rng):
    rho = random_density_matrix(rng)
    for subsystem in (1, 2):
        assert np.array_equal(partial_transpose(partial_transpose(rho, subsystem), subsystem), rho)


def test_partial_transpose_moves_coherences():
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 3] = 1.0  # |00><11|
    out = partial_transpose(rho, subsystem=2)
    assert out[1, 2] == 1.0  # becomes |01><10|
    assert out[0, 3] == 0.0


def test_partial_transpose_subsystems_share_spectrum(rng):
    rho = random_density_matrix(rng)
    w1 = np.linalg.eigvalsh(partial_transpose(rho, 1))
    w2 = np.linalg.eigvalsh(partial_transpose(rho, 2))
    assert np.abs(w1 - w2).max() < 1e-10


def test_partial_transpose_rejects_bad_input():
    with pytest.raises(BadSubsystem):
        partial_transpose(np.eye(4), subsystem=3)
    with pytest.raises(ValueError):
        partial_transpose(np.eye(3))


def test_singlet_spectrum():
    singlet = stationary_state(StationaryParams(0.0, 1.0, 0.0))
    w = np.linalg.eigvalsh(partial_transpose(singlet))
    assert np.abs(w - [-0.5, 0.5, 0.5, 0.5]).max() < 1e-12


def test_pt_eigenvector_b_half(rng, basis):
    v = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)
    for _ in range(50):
        params = random_stationary_params(rng)
        pt = partial_transpose(stationary_state(params, basis))
        assert np.abs(pt @ v - 0.5 * params.b * v).max() < 1e-12


def test_cubic_roots_corners():
    # pure singlet: double root at 1/2 resolved exactly
    assert np.abs(cubic_roots(StationaryParams(0.0, 1.0, 0.0)) - [-0.5, 0.5, 0.5]).max() < 1e-12
    # uniform in-phase state: roots 0, 0, 1
    assert np.abs(cubic_roots(StationaryParams(1.0, 0.0, 0.0)) - [0.0, 0.0, 1.0]).max() < 1e-12


def test_cubic_roots_match_numerical_spectrum(rng, basis):
    for _ in range(200):
        params = random_stationary_params(rng)
        pt = partial_transpose(stationary_state(params, basis))
        numeric = np.linalg.eigvalsh(pt)
        closed = np.sort(np.append(cubic_roots(params), 0.5 * params.b))
        assert np.abs(numeric - closed).max() < 1e-9


def test_cubic_roots_need_real_c():
    with pytest.raises(ValueError):
        cubic_roots(StationaryParams(0.7, 0.3, 0.1j))


def test_exactly_one_negative_root_for_positive_b(rng):
    for _ in range(200):
        params = random_stationary_params(rng, max_a=1.0 - 1e-6)
        roots = cubic_roots(params)
        assert (roots < 0.0).sum() == 1
    roots = cubic_roots(StationaryParams(1.0, 0.0, 0.0))
    assert roots.min() >= -1e-12


def test_ppt_analyze_singlet():
    report = ppt_analyze(StationaryParams(0.0, 1.0, 0.0))
    assert not report.separable
    assert abs(report.negativity - 0.5) < 1e-10
    assert abs(report.min_eigenvalue + 0.5) < 1e-10
    assert np.abs(report.closed_form_eigenvalues - [-0.5, 0.5, 0.5, 0.5]).max() < 1e-12


def test_ppt_analyze_in_phase_corner_is_separable():
    report = ppt_analyze(StationaryParams(1.0, 0.0, 0.0))
    assert report.separable
    assert report.negativity < 1e-10
    assert np.abs(np.sort(report.eigenvalues) - [0.0, 0.0, 0.0, 1.0]).max() < 1e-10


def test_ppt_analyze_generic_states_entangled(rng):
    for _ in range(50):
        params = random_stationary_params(rng, max_a=0.999)
        report = ppt_analyze(params)
        assert not report.separable
        assert report.min_eigenvalue < -1e-12
        assert abs(report.eigenvalues.sum() - 1.0) < 1e-10


def test_ppt_analyze_complex_c_has_no_closed_form():
    report = ppt_analyze(StationaryParams(0.7, 0.3, 0.1j))
    assert report.closed_form_eigenvalues is None
    assert not report.separable


def test_negativity_decays_with_singlet_weight():
    values = [
        ppt_analyze(StationaryParams(1.0 - b, b, 0.0)).negativity
        for b in (0.5, 0.2, 0.05, 0.01, 0.001)
    ]
    assert all(x > y for x, y in zip(values, values[1:]))
    assert values[-1] < 1e-4  # small weight, nearly separable, but still > 0
    assert values[-1] > 0.0


def test_sweep_grid():
    rows = sweep(11)
    # the full c range only survives near a = 1/2; corners keep c = 0 only
    assert all(r.c * r.c <= r.a * (1.0 - r.a) + 1e-12 for r in rows)
    by_point = {(round(r.a, 6), round(r.c, 6)): r for r in rows}
    assert by_point[(1.0, 0.0)].separable
    assert abs(by_point[(0.0, 0.0)].negativity - 0.5) < 1e-10
    for r in rows:
        if r.a < 1.0:
            assert not r.separable
            assert r.min_pt_eigenvalue < 0.0
    # boundary points with c^2 = a (1 - a) are included
    assert (0.5, 0.5) in by_point and (0.5, -0.5) in by_point


def test_sweep_deterministic_and_ordered():
    rows_a = sweep(5)
    rows_b = sweep(5)
    assert rows_a == rows_b
    a_values = [r.a for r in rows_a]
    assert a_values == sorted(a_values)


def test_sweep_rejects_tiny_grid():
    with pytest.raises(ValueError):
        sweep(1)
