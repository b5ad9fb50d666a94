"""Truncated single-mode quantum field on the number basis |0> .. |D-1>.

Position-like and momentum-like operators are built from ladder operators,

    a |n> = sqrt(n) |n-1>,
    q = sqrt(hbar/(2 omega)) (a^ + a),
    p = j sqrt(hbar omega/2) (a^ - a),
    H = (omega**2 / 2) q**2 + (1/2) p**2,

which makes H exactly diagonal: H[n][n] = hbar*omega*(n + 1/2) for
n < D - 1 and hbar*omega*(D-1)/2 at the top level.  The ground energy is
therefore exactly hbar*omega/2 for every D >= 2: the field carries energy
even with no excitation.

Truncation artifacts live only at the top Fock level: the commutator
[q, p] = q p - p q equals j*hbar on the lower (D-1)-dimensional block but
-(D-1)*j*hbar at level D-1.  Results quoted for the infinite-dimensional
mode hold on the lower block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DimensionMismatch, DomainError, NotNormalized

__all__ = [
    "StateVector",
    "InnerProduct",
    "Operator",
    "SingleMode",
    "inprod",
    "is_linear_op",
    "is_self_adjoint",
    "expectation",
    "commutator",
    "annihilator",
    "number_operator",
    "make_single_mode",
    "hermitian_eigenvalues",
    "ground_energy",
]


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex coefficients over the number basis.  Treated as immutable."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(self.norm() - 1.0) <= tol

    @classmethod
    def basis(cls, dim: int, n: int) -> "StateVector":
        """Number state |n> in a dim-dimensional truncation."""
        if not 0 <= n < dim:
            raise DomainError(f"basis index {n} outside 0..{dim - 1}")
        amps = np.zeros(dim, dtype=complex)
        amps[n] = 1.0
        return cls(amps)


@dataclass(frozen=True, eq=False)
class InnerProduct:
    """Sesquilinear pairing <x, y>, conjugate-linear in the first argument.

    weight, when given, must be Hermitian positive-definite; the pairing is
    then x^ W y.  The default identity weight is the usual Hermitian dot.
    """

    weight: np.ndarray | None = None

    def __call__(self, x: StateVector, y: StateVector) -> complex:
        if x.dim != y.dim:
            raise DimensionMismatch(f"dims {x.dim} and {y.dim} differ")
        if self.weight is None:
            return complex(np.vdot(x.amplitudes, y.amplitudes))
        return complex(np.vdot(x.amplitudes, self.weight @ y.amplitudes))


_DEFAULT_PAIRING = InnerProduct()


def inprod(x: StateVector, y: StateVector) -> complex:
    """Default inner product: conjugate-symmetric, linear in y, positive."""
    return _DEFAULT_PAIRING(x, y)


@dataclass(frozen=True, eq=False)
class Operator:
    """Linear operator as a dense complex matrix.  Treated as immutable."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.matrix, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DomainError(f"operator matrix must be square, got shape {arr.shape}")
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, x: StateVector) -> StateVector:
        if x.dim != self.dim:
            raise DimensionMismatch(f"dims {self.dim} and {x.dim} differ")
        return StateVector(self.matrix @ x.amplitudes)

    def adjoint(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix)

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix @ other.matrix)

    def __rmul__(self, scalar: complex) -> "Operator":
        return Operator(scalar * self.matrix)


def is_linear_op(
    op: Union[Operator, Callable[[np.ndarray], np.ndarray]],
    trials: int = 100,
    seed: int = 0,
    dim: int | None = None,
) -> bool:
    """Numerically test op(x + y) = op(x) + op(y) and op(a x) = a op(x).

    Matrix operators pass by construction; the check exists so user-supplied
    action hooks (callables on coefficient arrays) can be probed.  Scalars a
    are drawn complex, which catches antilinear actions like conjugation.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    if isinstance(op, Operator):
        action = lambda v: op.matrix @ v
        d = op.dim
    else:
        action = op
        if dim is None:
            raise DomainError("dim is required for a bare action hook")
        d = dim
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        a = complex(rng.standard_normal(), rng.standard_normal())
        add_lhs = action(x + y)
        add_rhs = action(x) + action(y)
        smul_lhs = action(a * x)
        smul_rhs = a * action(x)
        scale = max(
            np.max(np.abs(add_lhs)), np.max(np.abs(add_rhs)),
            np.max(np.abs(smul_lhs)), np.max(np.abs(smul_rhs)), 1.0,
        )
        if np.max(np.abs(add_lhs - add_rhs)) > 1e-9 * scale:
            return False
        if np.max(np.abs(smul_lhs - smul_rhs)) > 1e-9 * scale:
            return False
    return True


def is_self_adjoint(op: Operator, tol: float = 1e-12) -> bool:
    """True iff the matrix equals its conjugate transpose within tol,
    equivalently <x, op y> = <op x, y> on a spanning set."""
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol!r}")
    return bool(np.max(np.abs(op.matrix - op.matrix.conj().T)) <= tol)


def expectation(op: Operator, psi: StateVector) -> complex:
    """<psi, op psi> for a normalized state; real for self-adjoint op."""
    if abs(psi.norm() - 1.0) > 1e-9:
        raise NotNormalized(f"state norm is {psi.norm()!r}")
    return inprod(psi, op.apply(psi))


def commutator(a: Operator, b: Operator) -> Operator:
    """[a, b] = a b - b a."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"dims {a.dim} and {b.dim} differ")
    return Operator(a.matrix @ b.matrix - b.matrix @ a.matrix)


def annihilator(dim: int) -> Operator:
    """Lowering operator: a |n> = sqrt(n) |n-1>."""
    if dim < 1:
        raise DomainError(f"dimension must be >= 1, got {dim}")
    m = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        m[n - 1, n] = np.sqrt(n)
    return Operator(m)


def number_operator(dim: int) -> Operator:
    """a^ a, diagonal (0, 1, ..., dim-1) on the number basis."""
    a = annihilator(dim)
    return a.adjoint() @ a


@dataclass(frozen=True, eq=False)
class SingleMode:
    """Truncated single-mode field: frequency, action scale, and the three
    observables q, p, H."""

    omega: float
    hbar: float
    dim: int
    q: Operator
    p: Operator
    H: Operator


def make_single_mode(omega: float, hbar: float = 1.0, dim: int = 32) -> SingleMode:
    """Build q, p, and the energy H = (omega**2/2) q**2 + (1/2) p**2."""
    if not omega > 0:
        raise DomainError(f"omega must be positive, got {omega!r}")
    if not hbar > 0:
        raise DomainError(f"hbar must be positive, got {hbar!r}")
    if dim < 2:
        raise DomainError(f"dimension must be >= 2, got {dim}")
    a = annihilator(dim)
    adag = a.adjoint()
    q = np.sqrt(hbar / (2.0 * omega)) * (adag + a)
    p = 1j * np.sqrt(hbar * omega / 2.0) * (adag - a)
    h = (omega**2 / 2.0) * (q @ q) + 0.5 * (p @ p)
    return SingleMode(omega=omega, hbar=hbar, dim=dim, q=q, p=p, H=h)


def hermitian_eigenvalues(op: Operator) -> np.ndarray:
    """Ascending real spectrum of a Hermitian operator.

    Numerically diagonal matrices short-circuit to their sorted diagonal;
    everything else goes through the Hermitian eigensolver.
    """
    m = op.matrix
    scale = max(float(np.max(np.abs(m))), 1e-300)
    off = m - np.diag(np.diag(m))
    if float(np.max(np.abs(off))) <= 1e-12 * scale:
        return np.sort(np.real(np.diag(m)))
    return np.linalg.eigvalsh(m)


def ground_energy(sm: SingleMode) -> float:
    """Minimum eigenvalue of H: exactly hbar*omega/2 for this construction."""
    return float(hermitian_eigenvalues(sm.H)[0])
