"""Numbered numerical self-checks of the package's quantitative claims.

:func:`run_all` executes thirteen checks with a fixed seed and returns one
:class:`CheckResult` each; the command-line ``verify`` subcommand prints
them.  Tolerances are part of each check and are deliberately not
configurable.  The expensive ingredients (an ensemble of long classical
runs and a handful of long master-equation runs) are computed once and
shared between the checks that need them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import classical, entanglement, quantum
from .linalg import null_space, principal_angles

DEFAULT_SEED = 12345

#: check keys in execution order; index i belongs to check number i + 1
CHECK_KEYS = [
    "jump-operator-matrix",
    "jump-kernel-basis",
    "stationary-spectrum",
    "pt-eigenvector",
    "pt-closed-form-spectrum",
    "entanglement-verdicts",
    "singlet-corner",
    "classical-convergence",
    "invariant-monotonicity",
    "field-equivalence",
    "ehrenfest-identity",
    "liouvillian-kernel",
    "quantum-convergence",
]


@dataclass(frozen=True)
class CheckResult:
    number: int
    key: str
    passed: bool
    detail: str


def _result(number: int, passed: bool, detail: str) -> CheckResult:
    return CheckResult(number=number, key=CHECK_KEYS[number - 1], passed=bool(passed), detail=detail)


# ---------------------------------------------------------------------------
# shared ensembles


def _classical_ensemble(rng, count=50, t_final=50.0, dt=1e-3):
    """Long runs from random states with 1/2 <= |l| <= 2, sampled away from
    the measure-zero ly = lz = 0 line where nothing ever moves."""
    runs = []
    while len(runs) < count:
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        length = np.sqrt(rng.uniform(0.25, 4.0))
        start = length * direction
        if abs(start[1]) + abs(start[2]) < 1e-8:
            continue
        runs.append((start, classical.integrate(start, t_final, dt)))
    return runs


def _quantum_ensemble(ops, t_final=20.0, dt=1e-3):
    """Master-equation runs from the maximally mixed state and each of the
    four basis projectors, as (label, times, stacked states)."""
    inits = [("mixed", np.eye(4, dtype=complex) / 4.0)]
    for idx, label in enumerate(("basis:00", "basis:01", "basis:10", "basis:11")):
        rho = np.zeros((4, 4), dtype=complex)
        rho[idx, idx] = 1.0
        inits.append((label, rho))
    runs = []
    for label, rho in inits:
        pairs = quantum.evolve(rho, ops, t_final, dt)
        times = np.array([t for t, _ in pairs])
        states = np.stack([s for _, s in pairs])
        runs.append((label, times, states))
    return runs


# ---------------------------------------------------------------------------
# the thirteen checks


def _check_jump_matrix(ops):
    """1: the built jump operator equals its closed-form entries exactly."""
    expected = 0.5 * np.array(
        [[2, -1, -1, 0], [1, 0, 0, -1], [1, 0, 0, -1], [0, 1, 1, -2]], dtype=complex
    )
    built = np.array_equal(ops.jump, expected)
    composed = np.array_equal(ops.jump, ops.lz - 1j * ops.ly)
    return _result(1, built and composed, "entrywise exact" if built and composed else "entries differ")


def _check_kernel(ops, basis):
    """2: the jump operator's kernel is exactly the two dark states."""
    kern = null_space(ops.jump)
    if len(kern) != 2:
        return _result(2, False, f"kernel dimension {len(kern)}, expected 2")
    angle = float(principal_angles(kern, [basis.psi1, basis.psi2]).max())
    return _result(2, angle <= 1e-10, f"kernel dim 2, worst principal angle {angle:.2e} (tol 1e-10)")


def _check_stationary_spectrum(rng, basis):
    """3: stationary states have two zero eigenvalues and two roots of
    x^2 - x + (a b - |c|^2), for 100 random parameter sets."""
    worst = 0.0
    for i in range(100):
        params = quantum.random_stationary_params(rng, real_c=(i % 2 == 0))
        w = np.linalg.eigvalsh(quantum.stationary_state(params, basis))
        disc = max(1.0 - 4.0 * (params.a * params.b - abs(params.c) ** 2), 0.0)
        roots = np.sort([0.5 * (1.0 - np.sqrt(disc)), 0.5 * (1.0 + np.sqrt(disc))])
        worst = max(worst, float(np.abs(w[:2]).max()), float(np.abs(w[2:] - roots).max()))
    return _result(3, worst <= 1e-10, f"worst spectral deviation {worst:.2e} (tol 1e-10)")


def _check_pt_eigenvector(rng, basis):
    """4: (1, 0, 0, -1)/sqrt(2) is an eigenvector of the transposed state
    with eigenvalue b/2, for 100 random real-c parameter sets."""
    v = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)
    worst = 0.0
    for _ in range(100):
        params = quantum.random_stationary_params(rng)
        pt = entanglement.partial_transpose(quantum.stationary_state(params, basis))
        worst = max(worst, float(np.abs(pt @ v - 0.5 * params.b * v).max()))
    return _result(4, worst <= 1e-12, f"worst eigenvector residual {worst:.2e} (tol 1e-12)")


def _check_closed_form_spectrum(rng, basis):
    """5: closed-form and numerical transposed spectra agree, 200 samples."""
    worst = 0.0
    for _ in range(200):
        params = quantum.random_stationary_params(rng)
        pt = entanglement.partial_transpose(quantum.stationary_state(params, basis))
        numeric = np.linalg.eigvalsh(pt)
        closed = np.sort(np.append(entanglement.cubic_roots(params), 0.5 * params.b))
        worst = max(worst, float(np.abs(numeric - closed).max()))
    return _result(5, worst <= 1e-9, f"worst spectrum gap {worst:.2e} (tol 1e-9)")


def _check_entanglement_verdicts(rng, basis):
    """6: every stationary state with b > 0 is entangled; b = 0 is the one
    separable point, with spectrum {1, 0, 0, 0}."""
    failures = []
    largest_min = -np.inf
    for b in np.linspace(0.02, 1.0, 50):
        report = entanglement.ppt_analyze(quantum.StationaryParams(1.0 - b, b, 0.0), basis)
        largest_min = max(largest_min, report.min_eigenvalue)
        if not report.min_eigenvalue < -1e-12:
            failures.append(f"b = {b:g} not entangled")
    for _ in range(200):
        params = quantum.random_stationary_params(rng, max_a=1.0 - 1e-3)
        report = entanglement.ppt_analyze(params, basis)
        largest_min = max(largest_min, report.min_eigenvalue)
        if not report.min_eigenvalue < -1e-12:
            failures.append(f"a = {params.a:g}, c = {params.c.real:g} not entangled")
    corner = entanglement.ppt_analyze(quantum.StationaryParams(1.0, 0.0, 0.0), basis)
    corner_gap = float(np.abs(corner.eigenvalues - np.array([0.0, 0.0, 0.0, 1.0])).max())
    if not corner.separable or corner_gap > 1e-10:
        failures.append(f"b = 0 corner wrong (gap {corner_gap:.2e})")
    detail = (
        f"250 entangled verdicts (largest min eigenvalue {largest_min:.2e}), "
        f"b = 0 separable (gap {corner_gap:.2e})"
    )
    return _result(6, not failures, "; ".join(failures) if failures else detail)


def _check_singlet_corner():
    """7: the pure singlet has negativity 1/2 and cubic roots (-1/2, 1/2, 1/2)."""
    report = entanglement.ppt_analyze(quantum.StationaryParams(0.0, 1.0, 0.0))
    roots = entanglement.cubic_roots(quantum.StationaryParams(0.0, 1.0, 0.0))
    neg_err = abs(report.negativity - 0.5)
    root_err = float(np.abs(roots - np.array([-0.5, 0.5, 0.5])).max())
    worst = max(neg_err, root_err)
    return _result(7, worst <= 1e-10, f"negativity and double root within {worst:.2e} (tol 1e-10)")


def _check_classical_convergence(runs):
    """8: 50 random classical states reach (|l|, 0, 0) by t = 50 while
    conserving |l|^2 and the ratio k."""
    worst_final = 0.0
    worst_l2 = 0.0
    worst_k = 0.0
    for start, traj in runs:
        length = float(np.linalg.norm(start))
        lx, ly, lz = traj.states[-1]
        worst_final = max(worst_final, abs(lx - length), abs(ly), abs(lz))
        l_sq = 2.0 * traj.h_values
        worst_l2 = max(worst_l2, float(np.abs(l_sq - l_sq[0]).max()))
        k = traj.k_values[~np.isnan(traj.k_values)]
        if k.size:
            worst_k = max(worst_k, float(np.abs(k - k[0]).max()))
    passed = worst_final <= 1e-5 and worst_l2 <= 1e-8 and worst_k <= 1e-6
    return _result(
        8,
        passed,
        f"worst endpoint deviation {worst_final:.2e} (tol 1e-5), "
        f"|l^2| drift {worst_l2:.2e} (tol 1e-8), k drift {worst_k:.2e} (tol 1e-6)",
    )


def _check_monotone_invariants(classical_runs, quantum_runs, ops):
    """9: H stays constant and S never decreases, classically and quantumly."""
    worst_h = 0.0
    worst_dip = 0.0
    for _, traj in classical_runs:
        worst_h = max(worst_h, float(np.abs(traj.h_values - traj.h_values[0]).max()))
        worst_dip = max(worst_dip, float(-np.diff(traj.s_values).min()))
    for _, _, states in quantum_runs:
        h = 0.5 * np.einsum("tij,ji->t", states, ops.l_squared).real
        s = 2.0 * np.einsum("tij,ji->t", states, ops.lx).real
        worst_h = max(worst_h, float(np.abs(h - h[0]).max()))
        worst_dip = max(worst_dip, float(-np.diff(s).min()))
    passed = worst_h <= 1e-8 and worst_dip <= 1e-10
    return _result(
        9,
        passed,
        f"worst H drift {worst_h:.2e} (tol 1e-8), worst S decrease {worst_dip:.2e} (tol 1e-10)",
    )


def _check_field_equivalence(rng):
    """10: direct, coupling-function and quasithermodynamic forms of the
    classical field agree at 100 random points."""
    fns = classical.default_quasithermo()
    worst = 0.0
    for _ in range(100):
        point = rng.uniform(-2.0, 2.0, size=3)
        direct = classical.classical_field(point)
        dissip = classical.dissipative_field(point)
        quasi = classical.quasithermo_field(point, fns)
        worst = max(
            worst,
            float(np.abs(direct - dissip).max()),
            float(np.abs(direct - quasi).max()),
        )
    return _result(10, worst <= 1e-12, f"worst field mismatch {worst:.2e} (tol 1e-12)")


def _check_ehrenfest_identity(rng, ops):
    """11: d<lx>/dt computed as 2 Re tr(rho J+J) matches tr(lx d rho/dt)
    for 100 random density matrices."""
    worst = 0.0
    for _ in range(100):
        rho = quantum.random_density_matrix(rng)
        direct = quantum.ehrenfest_lx(rho, ops)
        via_rhs = float(np.trace(ops.lx @ quantum.lindblad_rhs(rho, ops)).real)
        worst = max(worst, abs(direct - via_rhs))
    return _result(11, worst <= 1e-12, f"worst identity gap {worst:.2e} (tol 1e-12)")


def _check_liouvillian_kernel(ops, basis):
    """12: the 16x16 generator has a four-dimensional kernel spanned by the
    vectorized dark-state outer products."""
    kern = null_space(quantum.liouvillian_matrix(ops))
    if len(kern) != 4:
        return _result(12, False, f"kernel dimension {len(kern)}, expected 4")
    span = [
        quantum.vec(np.outer(u, v.conj()))
        for u in (basis.psi1, basis.psi2)
        for v in (basis.psi1, basis.psi2)
    ]
    angle = float(principal_angles(kern, span).max())
    return _result(12, angle <= 1e-8, f"kernel dim 4, worst principal angle {angle:.2e} (tol 1e-8)")


def _check_quantum_convergence(runs, basis):
    """13: long master-equation runs land on the stationary family and stay
    positive the whole way."""
    worst_residual = 0.0
    worst_eig = np.inf
    for _, _, states in runs:
        fit = quantum.project_to_stationary(states[-1], basis)
        worst_residual = max(worst_residual, fit.residual)
        worst_eig = min(worst_eig, float(np.linalg.eigvalsh(states)[:, 0].min()))
    passed = worst_residual <= 1e-8 and worst_eig >= -1e-8
    return _result(
        13,
        passed,
        f"worst endpoint residual {worst_residual:.2e} (tol 1e-8), "
        f"lowest eigenvalue along runs {worst_eig:.2e} (floor -1e-8)",
    )


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run the thirteen checks in order and return their results."""
    rng = np.random.default_rng(seed)
    ops = quantum.build_operators()
    basis = quantum.kernel_basis()
    classical_runs = _classical_ensemble(rng)
    quantum_runs = _quantum_ensemble(ops)
    return [
        _check_jump_matrix(ops),
        _check_kernel(ops, basis),
        _check_stationary_spectrum(rng, basis),
        _check_pt_eigenvector(rng, basis),
        _check_closed_form_spectrum(rng, basis),
        _check_entanglement_verdicts(rng, basis),
        _check_singlet_corner(),
        _check_classical_convergence(classical_runs),
        _check_monotone_invariants(classical_runs, quantum_runs, ops),
        _check_field_equivalence(rng),
        _check_ehrenfest_identity(rng, ops),
        _check_liouvillian_kernel(ops, basis),
        _check_quantum_convergence(quantum_runs, basis),
    ]
