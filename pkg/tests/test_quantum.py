import math

import numpy as np
import pytest

from syncqubits.quantum import (
    InvalidParams,
    PositivityLost,
    StationaryParams,
    build_operators,
    check_density_matrix,
    density_matrix_from_json,
    density_matrix_to_json,
    ehrenfest_lx,
    evolve,
    expectation_value,
    kernel_basis,
    lindblad_rhs,
    liouvillian_matrix,
    project_to_stationary,
    random_density_matrix,
    random_stationary_params,
    stationary_state,
    unvec,
    vec,
)

JUMP_EXPECTED = 0.5 * np.array(
    [[2, -1, -1, 0], [1, 0, 0, -1], [1, 0, 0, -1], [0, 1, 1, -2]], dtype=complex
)


def test_operator_entries(ops):
    assert np.array_equal(ops.lz, np.diag([1.0, 0.0, 0.0, -1.0]).astype(complex))
    assert np.array_equal(ops.jump, JUMP_EXPECTED)
    assert np.array_equal(ops.jump, ops.lz - 1j * ops.ly)
    assert np.array_equal(ops.jump_dagger, ops.jump.conj().T)
    # first row spelled out, as a guard against basis-ordering slips
    assert np.array_equal(ops.jump[0], 0.5 * np.array([2.0, -1.0, -1.0, 0.0]))


def test_operators_are_hermitian(ops):
    for m in (ops.lx, ops.ly, ops.lz, ops.l_squared):
        assert np.abs(m - m.conj().T).max() == 0.0


def test_l_squared_consistent(ops):
    total = ops.lx @ ops.lx + ops.ly @ ops.ly + ops.lz @ ops.lz
    assert np.abs(ops.l_squared - total).max() < 1e-15
    for comp in (ops.lx, ops.ly, ops.lz):
        assert np.abs(ops.l_squared @ comp - comp @ ops.l_squared).max() < 1e-15


def test_operators_read_only(ops):
    with pytest.raises(ValueError):
        ops.jump[0, 0] = 5.0


def test_kernel_basis_annihilated(ops, basis):
    assert np.abs(ops.jump @ basis.psi1).max() == 0.0
    assert np.abs(ops.jump @ basis.psi2).max() == 0.0
    assert abs(np.vdot(basis.psi1, basis.psi2)) == 0.0
    assert abs(np.linalg.norm(basis.psi1) - 1.0) < 1e-15
    assert abs(np.linalg.norm(basis.psi2) - 1.0) < 1e-15
    # the singlet carries zero total angular momentum
    assert np.abs(ops.l_squared @ basis.psi2).max() < 1e-15


def test_rhs_vanishes_on_dark_states(ops, basis):
    for v in (basis.psi1, basis.psi2):
        rho = np.outer(v, v.conj())
        assert np.abs(lindblad_rhs(rho, ops)).max() < 1e-15


def test_rhs_of_mixed_state_is_lx(ops):
    # 2 J J+ - 2 J+ J = 2 [J, J+] has trace-free part 4 lx; on 1/4 it gives lx
    assert np.abs(lindblad_rhs(np.eye(4) / 4.0, ops) - ops.lx).max() < 1e-15


def test_rhs_preserves_hermiticity_and_trace(ops, rng):
    for _ in range(100):
        rho = random_density_matrix(rng)
        out = lindblad_rhs(rho, ops)
        assert abs(np.trace(out)) < 1e-12
        assert np.abs(out - out.conj().T).max() < 1e-12


def test_rhs_with_hamiltonian(ops, rng):
    rho = random_density_matrix(rng)
    h = ops.lz
    expected = lindblad_rhs(rho, ops) - 1j * (h @ rho - rho @ h)
    assert np.abs(lindblad_rhs(rho, ops, hamiltonian=h) - expected).max() == 0.0


def test_ehrenfest_values(ops, basis):
    assert abs(ehrenfest_lx(np.eye(4) / 4.0, ops) - 2.0) < 1e-14
    assert ehrenfest_lx(np.outer(basis.psi2, basis.psi2.conj()), ops) == 0.0
    rho00 = np.zeros((4, 4), dtype=complex)
    rho00[0, 0] = 1.0
    assert abs(ehrenfest_lx(rho00, ops) - 3.0) < 1e-14


def test_ehrenfest_identity(ops, rng):
    for _ in range(100):
        rho = random_density_matrix(rng)
        via_rhs = np.trace(ops.lx @ lindblad_rhs(rho, ops)).real
        assert abs(ehrenfest_lx(rho, ops) - via_rhs) < 1e-12


def test_absorber_is_positive_semidefinite(ops):
    absorb = ops.jump_dagger @ ops.jump
    assert np.linalg.eigvalsh(absorb).min() >= -1e-12


def test_expectation_value(ops):
    rho = np.zeros((4, 4), dtype=complex)
    rho[3, 3] = 1.0
    assert expectation_value(rho, ops.lz) == -1.0


def test_stationary_params_validation():
    StationaryParams(0.3, 0.7, 0.2)  # fine
    with pytest.raises(InvalidParams):
        StationaryParams(0.5, 0.6, 0.0)
    with pytest.raises(InvalidParams):
        StationaryParams(0.3, 0.7, 0.5)  # a b = 0.21 < 0.25
    with pytest.raises(InvalidParams):
        StationaryParams(-0.1, 1.1, 0.0)
    assert StationaryParams.from_weight(0.25).b == 0.75


def test_stationary_state_corners(basis):
    uniform = stationary_state(StationaryParams(1.0, 0.0, 0.0), basis)
    assert np.abs(uniform - 0.25).max() == 0.0
    singlet = stationary_state(StationaryParams(0.0, 1.0, 0.0), basis)
    assert np.abs(singlet - np.outer(basis.psi2, basis.psi2.conj())).max() == 0.0


def test_stationary_state_entry_pattern(rng, basis):
    # entries follow the a/4, b/2, c/(2 sqrt 2) pattern worked out by hand
    for _ in range(20):
        params = random_stationary_params(rng)
        a4 = params.a / 4.0
        b2 = params.b / 2.0
        cp = params.c.real / (2.0 * math.sqrt(2.0))
        cq = params.c.real / math.sqrt(2.0)
        expected = np.array(
            [
                [a4, a4 + cp, a4 - cp, a4],
                [a4 + cp, a4 + b2 + cq, a4 - b2, a4 + cp],
                [a4 - cp, a4 - b2, a4 + b2 - cq, a4 - cp],
                [a4, a4 + cp, a4 - cp, a4],
            ]
        )
        assert np.abs(stationary_state(params, basis) - expected).max() < 1e-14


def test_stationary_state_is_stationary(ops, rng, basis):
    for i in range(50):
        params = random_stationary_params(rng, real_c=(i % 2 == 0))
        rho = stationary_state(params, basis)
        check_density_matrix(rho)
        assert np.abs(lindblad_rhs(rho, ops)).max() < 1e-12


def test_stationary_spectrum_quadratic(rng, basis):
    w = np.linalg.eigvalsh(stationary_state(StationaryParams(0.5, 0.5, 0.0), basis))
    assert np.abs(w - [0.0, 0.0, 0.5, 0.5]).max() < 1e-12
    for _ in range(20):
        params = random_stationary_params(rng, real_c=False)
        w = np.linalg.eigvalsh(stationary_state(params, basis))
        det = params.a * params.b - abs(params.c) ** 2
        disc = math.sqrt(max(1.0 - 4.0 * det, 0.0))
        assert np.abs(w[:2]).max() < 1e-10
        assert np.abs(w[2:] - [0.5 * (1 - disc), 0.5 * (1 + disc)]).max() < 1e-10


def test_project_round_trip(basis):
    params = StationaryParams(0.3, 0.7, 0.1 + 0.05j)
    fit = project_to_stationary(stationary_state(params, basis), basis)
    assert abs(fit.a - 0.3) < 1e-14
    assert abs(fit.b - 0.7) < 1e-14
    assert abs(fit.c - (0.1 + 0.05j)) < 1e-14
    assert fit.residual < 1e-14


def test_project_mixed_state_far_from_family(basis):
    fit = project_to_stationary(np.eye(4) / 4.0, basis)
    assert abs(fit.a - 0.25) < 1e-14
    assert abs(fit.b - 0.25) < 1e-14
    assert fit.residual > 0.1


def test_project_state_orthogonal_to_kernel(basis):
    v = np.array([1.0, 0.0, 0.0, -1.0]) / np.sqrt(2.0)
    fit = project_to_stationary(np.outer(v, v.conj()), basis)
    assert fit.a < 1e-14 and fit.b < 1e-14
    assert abs(fit.residual - 0.5) < 1e-14


def test_evolve_dark_state_constant(ops, basis):
    rho0 = np.outer(basis.psi2, basis.psi2.conj())
    pairs = evolve(rho0, ops, 2.0, 1e-3)
    assert np.abs(pairs[-1][1] - rho0).max() < 1e-12


def test_evolve_mixed_state_reaches_family(ops):
    pairs = evolve(np.eye(4) / 4.0, ops, 10.0, 1e-3)
    fit = project_to_stationary(pairs[-1][1])
    assert fit.residual < 1e-6
    times = np.array([t for t, _ in pairs])
    assert times[0] == 0.0 and abs(times[-1] - 10.0) < 1e-9


def test_evolve_monotone_and_conserving(ops):
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[0, 0] = 1.0
    pairs = evolve(rho0, ops, 5.0, 1e-3)
    states = np.stack([s for _, s in pairs])
    trace = np.einsum("tii->t", states).real
    assert np.abs(trace - 1.0).max() < 1e-9
    s = 2.0 * np.einsum("tij,ji->t", states, ops.lx).real
    assert np.diff(s).min() > -1e-10
    l2 = np.einsum("tij,ji->t", states, ops.l_squared).real
    assert np.abs(l2 - l2[0]).max() < 1e-8


def test_evolve_large_step_loses_positivity(ops):
    with pytest.raises(PositivityLost):
        evolve(np.eye(4) / 4.0, ops, 30.0, 1.0)


def test_evolve_rejects_bad_input(ops):
    with pytest.raises(ValueError):
        evolve(np.eye(4) / 2.0, ops, 1.0, 1e-3)  # trace 2
    with pytest.raises(ValueError):
        evolve(np.eye(4) / 4.0, ops, -1.0, 1e-3)


def test_vec_unvec_round_trip(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.array_equal(unvec(vec(m)), m)
    # column stacking: vec of A X B equals kron(B.T, A) vec(X)
    a, x, b = (rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(3))
    assert np.abs(vec(a @ x @ b) - np.kron(b.T, a) @ vec(x)).max() < 1e-12


def test_liouvillian_matches_rhs(ops, rng):
    lmat = liouvillian_matrix(ops)
    for _ in range(20):
        h = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = h + h.conj().T
        direct = lindblad_rhs(h, ops)
        assert np.abs(unvec(lmat @ vec(h)) - direct).max() < 1e-12


def test_liouvillian_kernel_structure(ops, basis):
    from syncqubits.linalg import null_space, principal_angles

    lmat = liouvillian_matrix(ops)
    assert np.abs(lmat @ vec(np.outer(basis.psi1, basis.psi1.conj()))).max() < 1e-15
    assert np.abs(lmat @ vec(np.eye(4) / 4.0) - vec(ops.lx)).max() < 1e-15
    kern = null_space(lmat)
    assert len(kern) == 4
    span = [
        vec(np.outer(u, v.conj()))
        for u in (basis.psi1, basis.psi2)
        for v in (basis.psi1, basis.psi2)
    ]
    assert principal_angles(kern, span).max() < 1e-8


def test_density_matrix_json_round_trip(rng):
    import json

    rho = random_density_matrix(rng)
    payload = json.loads(json.dumps(density_matrix_to_json(rho)))
    assert payload["dim"] == 4
    assert np.abs(density_matrix_from_json(payload) - rho).max() < 1e-15


def test_density_matrix_json_rejects_garbage():
    with pytest.raises(ValueError):
        density_matrix_from_json({"dim": 3, "re": [1.0], "im": [0.0]})
    with pytest.raises(ValueError):
        density_matrix_from_json({"re": [1.0]})


def test_check_density_matrix_rejects_bad_states():
    with pytest.raises(ValueError):
        check_density_matrix(np.eye(4))  # trace 4
    with pytest.raises(ValueError):
        check_density_matrix(np.array([[0.5, 0.5], [0.0, 0.5]]))  # not hermitian
    with pytest.raises(ValueError):
        check_density_matrix(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_random_density_matrix_is_valid(rng):
    for _ in range(10):
        rho = check_density_matrix(random_density_matrix(rng))
        assert np.linalg.eigvalsh(rho).min() > 0.0
