"""Two-qubit collective operators and their dissipative master equation.

The basis is the product basis |00>, |01>, |10>, |11> with sigma_z |0> = +|0>,
which makes lz = diag(1, 0, 0, -1).  Relaxation is driven by the single jump
operator J = lz - i ly with no Hamiltonian part:

    d rho / dt = 2 J rho J+ - J+J rho - rho J+J

J annihilates exactly two orthonormal vectors, the fully symmetric in-phase
state (1, 1, 1, 1)/2 and the singlet (0, 1, -1, 0)/sqrt(2), and every
stationary density matrix is a combination of their outer products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import tensor_product

#: slack used when validating stationary-family coefficients
PARAM_TOL = 1e-12

#: evolve() raises once a recorded eigenvalue drops below this
POSITIVITY_ERROR = -1e-6


class InvalidParams(ValueError):
    """Stationary-family coefficients violate normalization or positivity."""


class PositivityLost(RuntimeError):
    """Integration produced a state that is no longer positive (or finite)."""


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


SIGMA_X = _readonly(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
SIGMA_Y = _readonly(np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex))
SIGMA_Z = _readonly(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))


@dataclass(frozen=True)
class OperatorSet:
    """Collective two-qubit operators in the fixed product basis.

    All arrays are read-only; ``jump`` is lz - i ly and ``jump_dagger`` its
    adjoint.  Entries are exact binary fractions, so closed-form matrices
    can be compared entrywise without tolerance.
    """

    lx: np.ndarray
    ly: np.ndarray
    lz: np.ndarray
    l_squared: np.ndarray
    jump: np.ndarray
    jump_dagger: np.ndarray


@dataclass(frozen=True)
class KernelBasis:
    """Orthonormal pair spanning the jump operator's kernel.

    ``psi1`` is the in-phase state (1, 1, 1, 1)/2 and ``psi2`` the singlet
    (0, 1, -1, 0)/sqrt(2).
    """

    psi1: np.ndarray
    psi2: np.ndarray


def build_operators() -> OperatorSet:
    """Construct lx, ly, lz, l^2 and the jump operator lz - i ly."""
    eye = np.eye(2, dtype=complex)

    def collective(s: np.ndarray) -> np.ndarray:
        return 0.5 * (tensor_product(s, eye) + tensor_product(eye, s))

    lx = collective(SIGMA_X)
    ly = collective(SIGMA_Y)
    lz = collective(SIGMA_Z)
    l_squared = 0.5 * (
        3.0 * np.eye(4, dtype=complex)
        + tensor_product(SIGMA_X, SIGMA_X)
        + tensor_product(SIGMA_Y, SIGMA_Y)
        + tensor_product(SIGMA_Z, SIGMA_Z)
    )
    jump = lz - 1.0j * ly
    jump_dagger = jump.conj().T.copy()
    return OperatorSet(*(_readonly(m) for m in (lx, ly, lz, l_squared, jump, jump_dagger)))


def kernel_basis() -> KernelBasis:
    """The two dark states of the jump operator, as read-only vectors."""
    psi1 = _readonly(np.full(4, 0.5, dtype=complex))
    psi2 = _readonly(np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0))
    return KernelBasis(psi1=psi1, psi2=psi2)


def check_density_matrix(
    rho,
    herm_tol: float = 1e-10,
    trace_tol: float = 1e-10,
    eig_floor: float = -1e-9,
) -> np.ndarray:
    """Validate a density matrix and return it as a fresh complex array.

    Checks Hermiticity, unit trace and positivity (eigenvalues no lower
    than ``eig_floor``); raises ValueError on any violation.
    """
    r = np.array(rho, dtype=complex)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {r.shape}")
    herm = float(np.abs(r - r.conj().T).max())
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: deviation {herm:.3e}")
    tr = complex(np.trace(r))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace must be 1, got {tr}")
    lowest = float(np.linalg.eigvalsh(r)[0])
    if lowest < eig_floor:
        raise ValueError(f"not positive: lowest eigenvalue {lowest:.3e}")
    return r


def random_density_matrix(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Random full-rank density matrix A A+ / tr(A A+), A complex Gaussian."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def lindblad_rhs(rho, ops: OperatorSet, hamiltonian=None) -> np.ndarray:
    """Time derivative of the density matrix.

    Pure dissipation 2 J rho J+ - {J+J, rho} from the single jump operator,
    plus an optional coherent part -i [H, rho]; the model itself has no
    Hamiltonian, so ``hamiltonian`` defaults to None.
    """
    r = np.asarray(rho, dtype=complex)
    j = ops.jump
    jd = ops.jump_dagger
    absorb = jd @ j
    out = 2.0 * (j @ r @ jd) - absorb @ r - r @ absorb
    if hamiltonian is not None:
        hmat = np.asarray(hamiltonian, dtype=complex)
        out = out - 1j * (hmat @ r - r @ hmat)
    return out


def evolve(rho0, ops: OperatorSet, t_final: float, dt: float, hamiltonian=None):
    """Fixed-step RK4 trajectory of the master equation.

    Returns a list of (time, state) pairs, one per step including t = 0.
    Every step re-Hermitizes the state to stop roundoff drift; after the
    run all recorded states are spectrally checked in one batch and
    PositivityLost names the first time an eigenvalue fell below -1e-6
    (the practical symptom of a dt too large for the stiffest decay mode).
    """
    rho = check_density_matrix(rho0)
    if dt <= 0.0 or t_final <= 0.0:
        raise ValueError("dt and t_final must be positive")
    n_steps = int(round(t_final / dt))
    if n_steps < 1:
        raise ValueError("t_final is shorter than half a step")

    dim = rho.shape[0]
    states = np.empty((n_steps + 1, dim, dim), dtype=complex)
    states[0] = rho
    for i in range(1, n_steps + 1):
        k1 = lindblad_rhs(rho, ops, hamiltonian)
        k2 = lindblad_rhs(rho + 0.5 * dt * k1, ops, hamiltonian)
        k3 = lindblad_rhs(rho + 0.5 * dt * k2, ops, hamiltonian)
        k4 = lindblad_rhs(rho + dt * k3, ops, hamiltonian)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        rho = 0.5 * (rho + rho.conj().T)
        if not np.all(np.isfinite(rho.view(float))):
            raise PositivityLost(f"state diverged at t = {i * dt:g}")
        states[i] = rho

    lowest = np.linalg.eigvalsh(states)[:, 0]
    bad = np.nonzero(lowest < POSITIVITY_ERROR)[0]
    if bad.size:
        raise PositivityLost(
            f"eigenvalue {lowest[bad[0]]:.3e} at t = {bad[0] * dt:g}; reduce dt"
        )
    states.setflags(write=False)
    return [(i * dt, states[i]) for i in range(n_steps + 1)]


def expectation_value(rho, op) -> float:
    """Real part of tr(rho op); exact for Hermitian observables."""
    r = np.asarray(rho, dtype=complex)
    o = np.asarray(op, dtype=complex)
    return float(np.trace(r @ o).real)


def ehrenfest_lx(rho, ops: OperatorSet) -> float:
    """Growth rate of <lx>, namely 2 Re tr(rho J+J).

    Identical to tr(lx * lindblad_rhs(rho)) and nonnegative on states,
    because J+J is positive semidefinite.
    """
    r = np.asarray(rho, dtype=complex)
    return float(2.0 * np.trace(r @ (ops.jump_dagger @ ops.jump)).real)


@dataclass(frozen=True)
class StationaryParams:
    """Coefficients (a, b, c) of a stationary density matrix.

    Validated on construction: a + b = 1, both nonnegative, and
    a b >= |c|^2 (all within 1e-12), the exact conditions for unit trace
    and positivity.  ``c`` may be complex.
    """

    a: float
    b: float
    c: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "c", complex(self.c))
        if abs(self.a + self.b - 1.0) > PARAM_TOL:
            raise InvalidParams(f"a + b must equal 1, got {self.a + self.b!r}")
        if self.a < -PARAM_TOL or self.b < -PARAM_TOL:
            raise InvalidParams(f"a and b must be nonnegative, got {self.a!r}, {self.b!r}")
        if self.a * self.b + PARAM_TOL < abs(self.c) ** 2:
            raise InvalidParams(
                f"positivity needs a*b >= |c|^2, got a*b = {self.a * self.b!r}, "
                f"|c|^2 = {abs(self.c) ** 2!r}"
            )

    @classmethod
    def from_weight(cls, a: float, c: complex = 0.0) -> "StationaryParams":
        """Build with b = 1 - a supplied automatically."""
        return cls(a=float(a), b=1.0 - float(a), c=c)


def random_stationary_params(
    rng: np.random.Generator, real_c: bool = True, max_a: float = 1.0
) -> StationaryParams:
    """Uniform-ish sample from the valid parameter set.

    ``max_a`` < 1 keeps b = 1 - a bounded away from zero, which is handy
    when exercising claims that need a strictly positive singlet weight.
    """
    a = float(rng.uniform(0.0, max_a))
    b = 1.0 - a
    cap = math.sqrt(max(a * b, 0.0))
    if real_c:
        c = complex(rng.uniform(-cap, cap))
    else:
        c = cap * rng.uniform() * np.exp(2j * np.pi * rng.uniform())
    return StationaryParams(a, b, c)


def _kernel_combination(a: float, b: float, c: complex, basis: KernelBasis) -> np.ndarray:
    p1 = np.outer(basis.psi1, basis.psi1.conj())
    p2 = np.outer(basis.psi2, basis.psi2.conj())
    cross = np.outer(basis.psi1, basis.psi2.conj())
    return a * p1 + b * p2 + c * cross + np.conj(c) * cross.conj().T


def stationary_state(params: StationaryParams, basis: KernelBasis | None = None) -> np.ndarray:
    """Density matrix a P1 + b P2 + (c |psi1><psi2| + h.c.) in the kernel."""
    if basis is None:
        basis = kernel_basis()
    return _kernel_combination(params.a, params.b, params.c, basis)


@dataclass(frozen=True)
class StationaryFit:
    """Kernel overlaps of a state and its distance to the stationary family.

    ``a``, ``b``, ``c`` are raw matrix elements in the kernel pair (they sum
    to at most 1 and are not renormalized); ``residual`` is the largest
    entry of rho minus the family member with weights rescaled to a + b = 1.
    """

    a: float
    b: float
    c: complex
    residual: float


def project_to_stationary(rho, basis: KernelBasis | None = None) -> StationaryFit:
    """Overlap coefficients of ``rho`` with the stationary family.

    The overlaps alone do not determine where the evolution actually ends
    up (they are not conserved), so the fit is an empirical report about
    ``rho`` itself, typically the last state of a long run.
    """
    if basis is None:
        basis = kernel_basis()
    r = np.asarray(rho, dtype=complex)
    a = float((basis.psi1.conj() @ r @ basis.psi1).real)
    b = float((basis.psi2.conj() @ r @ basis.psi2).real)
    c = complex(basis.psi1.conj() @ r @ basis.psi2)
    total = a + b
    if total <= 0.0:
        return StationaryFit(a=a, b=b, c=c, residual=float(np.abs(r).max()))
    fitted = _kernel_combination(a / total, b / total, c / total, basis)
    return StationaryFit(a=a, b=b, c=c, residual=float(np.abs(r - fitted).max()))


def vec(mat) -> np.ndarray:
    """Column-stacking vectorization, the convention with
    vec(A X B) = kron(B.T, A) vec(X)."""
    return np.asarray(mat, dtype=complex).reshape(-1, order="F")


def unvec(v) -> np.ndarray:
    """Inverse of :func:`vec` for square matrices."""
    a = np.asarray(v, dtype=complex).ravel()
    dim = math.isqrt(a.size)
    if dim * dim != a.size:
        raise ValueError(f"length {a.size} is not a perfect square")
    return a.reshape(dim, dim, order="F")


def liouvillian_matrix(ops: OperatorSet) -> np.ndarray:
    """Dense 16x16 superoperator L with L vec(rho) = vec(lindblad_rhs(rho)).

    Column stacking throughout: the sandwich term becomes
    kron(conj(J), J) and the one-sided products kron(I, J+J) and
    kron((J+J).T, I).
    """
    j = ops.jump
    absorb = ops.jump_dagger @ j
    eye = np.eye(j.shape[0], dtype=complex)
    return (
        2.0 * np.kron(j.conj(), j)
        - np.kron(eye, absorb)
        - np.kron(absorb.T, eye)
    )


def density_matrix_to_json(rho) -> dict:
    """JSON-ready mapping with ``dim`` and row-major ``re`` / ``im`` lists."""
    r = np.asarray(rho, dtype=complex)
    if r.ndim != 2 or r.shape[0] != r.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {r.shape}")
    return {
        "dim": int(r.shape[0]),
        "re": r.real.ravel().tolist(),
        "im": r.imag.ravel().tolist(),
    }


def density_matrix_from_json(obj) -> np.ndarray:
    """Rebuild a complex matrix from :func:`density_matrix_to_json` output."""
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float).reshape(dim, dim)
        im = np.asarray(obj["im"], dtype=float).reshape(dim, dim)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"not a serialized density matrix: {exc}") from exc
    return re + 1j * im
