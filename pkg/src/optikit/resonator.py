"""Optical resonators: unfolding, the half-trace stability criterion, and a
brute-force ray-bound oracle.

A resonator is two reflecting end interfaces with optional components in
between.  Stability analysis unfolds N cavity round trips into an ordinary
sequential system; with M the one-round-trip matrix, the resonator is stable
when det M = 1 and -1 < (M11 + M22)/2 < 1 (strictly).  Rays in a stable
cavity stay bounded for any number of round trips; the `ray_bound_oracle`
checks this directly by iteration.

One round trip runs: forward through the inner components, across the cavity
space, reflect on the right interface, back through the inner components in
reverse, reflect on the left interface.  On the way back each transmitted
interface is crossed with its index ratio inverted (n1/n0 instead of n0/n1),
which keeps the round-trip determinant at 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Mat2, mat2_apply
from .errors import InvalidResonator, NonUnimodular
from .rayoptics import (
    FreeSpace,
    InterfaceKind,
    OpticalComponent,
    OpticalInterface,
    OpticalSystem,
    RayState,
    Spherical,
    ValidationReport,
    _free_space_violations,
    _interface_violations,
    system_composition,
)

__all__ = [
    "Resonator",
    "StabilityVerdict",
    "OracleResult",
    "validate_resonator",
    "unfold_resonator",
    "round_trip_matrix",
    "stability",
    "stability_from_matrix",
    "ray_bound_oracle",
    "fp_resonator",
    "UNIMODULAR_TOL",
    "MARGINAL_TOL",
]

# det must match 1 this closely before the half-trace criterion applies
UNIMODULAR_TOL = 1e-6
# |half-trace| this close to 1 is reported as marginal, never stable
MARGINAL_TOL = 1e-9


@dataclass(frozen=True)
class Resonator:
    """Left interface, inner components, cavity free space, right interface."""

    left: OpticalInterface
    inner: tuple[OpticalComponent, ...]
    space: FreeSpace
    right: OpticalInterface


@dataclass(frozen=True)
class StabilityVerdict:
    det: float
    half_trace: float
    stable: bool
    marginal: bool

    @property
    def verdict(self) -> str:
        if self.marginal:
            return "marginal"
        return "stable" if self.stable else "unstable"


@dataclass(frozen=True)
class OracleResult:
    max_y: float
    max_theta: float
    diverged: bool


def validate_resonator(res: Resonator) -> ValidationReport:
    violations = []
    violations += _interface_violations(res.left, None)
    for i, comp in enumerate(res.inner):
        violations += _free_space_violations(comp.space, i)
        violations += _interface_violations(comp.iface, i)
    violations += _free_space_violations(res.space, None)
    violations += _interface_violations(res.right, None)
    return ValidationReport(tuple(violations))


def _require_valid(res: Resonator) -> None:
    report = validate_resonator(res)
    if not report.ok:
        raise InvalidResonator(str(report))


def _round_trip_components(res: Resonator) -> list[OpticalComponent]:
    reflected = InterfaceKind.REFLECTED
    trip = list(res.inner)
    trip.append(OpticalComponent(res.space, res.right, reflected))
    if res.inner:
        # Return leg: the cavity space now precedes the last inner interface,
        # each earlier interface is preceded by the space that followed it on
        # the way in, and the first inner space leads back to the left mirror.
        # With the n0/n1 pairing rule this inverts every transmitted index
        # ratio on the way back.
        spaces = [res.space] + [c.space for c in reversed(res.inner)]
        for space, comp in zip(spaces, reversed(res.inner)):
            trip.append(OpticalComponent(space, comp.iface, comp.kind))
        trip.append(OpticalComponent(res.inner[0].space, res.left, reflected))
    else:
        trip.append(OpticalComponent(res.space, res.left, reflected))
    return trip


def unfold_resonator(res: Resonator, n_round_trips: int) -> OpticalSystem:
    """Sequential optical system equivalent to N cavity round trips."""
    _require_valid(res)
    if n_round_trips < 1:
        raise InvalidResonator(f"need at least one round trip, got {n_round_trips}")
    trip = _round_trip_components(res)
    terminal = FreeSpace(res.space.n, 0.0)
    return OpticalSystem(tuple(trip * n_round_trips), terminal)


def round_trip_matrix(res: Resonator) -> Mat2:
    return system_composition(unfold_resonator(res, 1))


def stability_from_matrix(m: Mat2) -> StabilityVerdict:
    """Half-trace criterion on a round-trip matrix.

    The criterion presumes det M = 1; a determinant off by more than
    UNIMODULAR_TOL raises NonUnimodular instead of guessing.  Half-trace
    exactly on the +-1 boundary (within MARGINAL_TOL) is reported as
    marginal, not stable: boundedness genuinely fails there for defective
    round-trip matrices.
    """
    det = m.det()
    if abs(det - 1.0) > UNIMODULAR_TOL:
        raise NonUnimodular(f"round-trip det = {det!r}; criterion needs det = 1")
    ht = m.half_trace()
    marginal = abs(abs(ht) - 1.0) <= MARGINAL_TOL
    stable = (-1.0 < ht < 1.0) and not marginal
    return StabilityVerdict(det=det, half_trace=ht, stable=stable, marginal=marginal)


def stability(res: Resonator) -> StabilityVerdict:
    """Half-trace criterion on the one-round-trip matrix of a resonator."""
    return stability_from_matrix(round_trip_matrix(res))


def ray_bound_oracle(
    res: Resonator, source: RayState, n_max: int, divergence_factor: float = 1e9
) -> OracleResult:
    """Iterate the round-trip matrix and watch the ray bounds directly.

    Checks boundedness only up to n_max round trips, so a "not diverged"
    answer is evidence, not proof; divergence past
    divergence_factor * (initial scale + 1) is decisive.
    """
    if n_max < 1:
        raise InvalidResonator(f"need at least one round trip, got {n_max}")
    m = round_trip_matrix(res)
    limit = divergence_factor * (max(abs(source.y), abs(source.theta)) + 1.0)
    v = source.as_pair()
    max_y = abs(v[0])
    max_theta = abs(v[1])
    diverged = False
    for _ in range(n_max):
        v = mat2_apply(m, v)
        max_y = max(max_y, abs(v[0]))
        max_theta = max(max_theta, abs(v[1]))
        if max_y > limit or max_theta > limit:
            diverged = True
            break
    return OracleResult(max_y=max_y, max_theta=max_theta, diverged=diverged)


def fp_resonator(R: float, d: float, n: float) -> Resonator:
    """Two-mirror cavity: spherical mirrors of equal radius R a distance d apart.

    Requires R != 0, d >= 0, n > 0.  Stable (per the half-trace criterion)
    exactly when 0 < d < 2R with d != R; the round-trip half-trace is
    2*(1 - d/R)**2 - 1.
    """
    res = Resonator(left=Spherical(R), inner=(), space=FreeSpace(n, d), right=Spherical(R))
    _require_valid(res)
    return res
