"""Paraxial optical systems and ray-transfer matrices.

An optical system is a sequence of components, each a free space followed by
an interface (plane or spherical, traversed by transmission or reflection),
terminated by a final free space.  Rays are (y, theta) pairs: distance from
the optical axis in meters and inclination in radians.

Matrix conventions (the classical spatial-domain ray matrices):

    free space of width d          [[1, d], [0, 1]]
    spherical transmission         [[1, 0], [(n0 - n1)/(n1 R), n0/n1]]
    plane transmission             [[1, 0], [0, n0/n1]]
    spherical mirror               [[1, 0], [-2/R, 1]]
    plane mirror                   identity (unfolded coordinates)

Free-space translation uses the geometric width d; all refractive-index
dependence sits in the interface matrices.  A spherical mirror with R > 0 is
concave toward the incoming ray, which reproduces the classical confocal
stability window 0 < d < 2R for a two-mirror cavity.  The index pair (n0, n1)
of an interface comes from the component's own free space and the following
component's (or the terminal) free space.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .core import IDENTITY2, Mat2, mat2_apply, mat2_mul
from .errors import InvalidComponent, InvalidSystem

__all__ = [
    "FreeSpace",
    "Plane",
    "Spherical",
    "OpticalInterface",
    "InterfaceKind",
    "OpticalComponent",
    "OpticalSystem",
    "RayState",
    "RayTrace",
    "Violation",
    "ValidationReport",
    "validate_system",
    "free_space_matrix",
    "interface_matrix",
    "system_composition",
    "element_matrices",
    "trace_ray",
]


@dataclass(frozen=True)
class FreeSpace:
    """Homogeneous propagation region: refractive index n, width d (meters)."""

    n: float
    d: float


@dataclass(frozen=True)
class Plane:
    """Flat interface."""


@dataclass(frozen=True)
class Spherical:
    """Spherical interface with radius of curvature R != 0 (meters)."""

    radius: float


OpticalInterface = Union[Plane, Spherical]


class InterfaceKind(Enum):
    TRANSMITTED = "transmitted"
    REFLECTED = "reflected"


@dataclass(frozen=True)
class OpticalComponent:
    space: FreeSpace
    iface: OpticalInterface
    kind: InterfaceKind


@dataclass(frozen=True)
class OpticalSystem:
    components: tuple[OpticalComponent, ...]
    terminal: FreeSpace


@dataclass(frozen=True)
class RayState:
    """Distance from axis y (meters) and inclination theta (radians)."""

    y: float
    theta: float

    def as_pair(self) -> tuple[float, float]:
        return (self.y, self.theta)


@dataclass(frozen=True)
class RayTrace:
    """Ray states at the source, after each component, and after the terminal
    free space; length = number of components + 2."""

    states: tuple[RayState, ...]

    @property
    def final(self) -> RayState:
        return self.states[-1]


@dataclass(frozen=True)
class Violation:
    """One violated validity clause, located by component index.

    index is the component position, or None for the terminal free space.
    clause is the violated constraint, e.g. "0 < n".
    """

    index: int | None
    clause: str
    detail: str

    def __str__(self) -> str:
        where = "terminal free space" if self.index is None else f"component {self.index}"
        return f"{where}: violates {self.clause} ({self.detail})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(str(v) for v in self.violations)


def _free_space_violations(fs: FreeSpace, index: int | None) -> list[Violation]:
    out = []
    if not fs.n > 0:
        out.append(Violation(index, "0 < n", f"n = {fs.n!r}"))
    if not fs.d >= 0:
        out.append(Violation(index, "0 <= d", f"d = {fs.d!r}"))
    return out


def _interface_violations(iface: OpticalInterface, index: int | None) -> list[Violation]:
    if isinstance(iface, Spherical) and iface.radius == 0:
        return [Violation(index, "R != 0", "spherical interface with R = 0")]
    return []


def validate_system(sys: OpticalSystem) -> ValidationReport:
    """Report every violated validity constraint of a system (empty == valid)."""
    violations: list[Violation] = []
    for i, comp in enumerate(sys.components):
        violations += _free_space_violations(comp.space, i)
        violations += _interface_violations(comp.iface, i)
    violations += _free_space_violations(sys.terminal, None)
    return ValidationReport(tuple(violations))


def free_space_matrix(fs: FreeSpace) -> Mat2:
    """Translation matrix [[1, d], [0, 1]] of a valid free space."""
    bad = _free_space_violations(fs, None)
    if bad:
        raise InvalidComponent(str(bad[0]))
    return Mat2(1.0, fs.d, 0.0, 1.0)


def interface_matrix(
    iface: OpticalInterface, kind: InterfaceKind, n0: float, n1: float
) -> Mat2:
    """Refraction or reflection matrix of an interface between indices n0, n1."""
    if not (n0 > 0 and n1 > 0):
        raise InvalidComponent(f"indices must be positive, got n0 = {n0!r}, n1 = {n1!r}")
    if isinstance(iface, Spherical):
        if iface.radius == 0:
            raise InvalidComponent("spherical interface with R = 0")
        if kind is InterfaceKind.TRANSMITTED:
            return Mat2(1.0, 0.0, (n0 - n1) / (n1 * iface.radius), n0 / n1)
        return Mat2(1.0, 0.0, -2.0 / iface.radius, 1.0)
    if kind is InterfaceKind.TRANSMITTED:
        return Mat2(1.0, 0.0, 0.0, n0 / n1)
    return IDENTITY2


def _next_index(sys: OpticalSystem, i: int) -> float:
    if i + 1 < len(sys.components):
        return sys.components[i + 1].space.n
    return sys.terminal.n


def element_matrices(sys: OpticalSystem) -> list[Mat2]:
    """Per-element matrices in traversal order.

    Each component yields its free-space matrix then its interface matrix;
    the terminal free space yields one final translation matrix.
    """
    report = validate_system(sys)
    if not report.ok:
        raise InvalidSystem(str(report))
    mats: list[Mat2] = []
    for i, comp in enumerate(sys.components):
        mats.append(free_space_matrix(comp.space))
        mats.append(interface_matrix(comp.iface, comp.kind, comp.space.n, _next_index(sys, i)))
    mats.append(free_space_matrix(sys.terminal))
    return mats


def system_composition(sys: OpticalSystem) -> Mat2:
    """Ray-transfer matrix of the whole system.

    Product of the per-element matrices in reverse traversal order, so the
    last element sits leftmost and the matrix acts on input (y, theta).
    """
    acc = IDENTITY2
    for m in element_matrices(sys):
        acc = mat2_mul(m, acc)
    return acc


def trace_ray(sys: OpticalSystem, source: RayState) -> RayTrace:
    """Step a ray through the system element by element.

    The recorded states are the source, the state just after each component
    (free space traversed and interface applied), and the state after the
    terminal free space.  The final state always equals the composed-matrix
    action on the source; `system_composition` and this stepper are
    independent code paths over the same element matrices.
    """
    mats = element_matrices(sys)
    states = [source]
    v = source.as_pair()
    # element matrices come in (space, interface) pairs plus the lone terminal
    for i in range(len(sys.components)):
        v = mat2_apply(mats[2 * i], v)
        v = mat2_apply(mats[2 * i + 1], v)
        states.append(RayState(*v))
    v = mat2_apply(mats[-1], v)
    states.append(RayState(*v))
    return RayTrace(tuple(states))
