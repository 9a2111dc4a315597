"""Periodic stack of two lossless media at normal incidence.

One period, written in its real form, is::

    M = Q(mu) R(alpha1/2) Q(mu)^-1 R(alpha2/2)

with the boundary rapidity ``mu = 2 artanh(r)`` and the phases
``alpha_i / 2 = k_i d_i``.  The first three factors collapse to a Bargmann
triple ``R(theta1/2) boost(lam) R(theta1/2)``; absorbing the last rotation
makes ``M`` a rotation-conjugate ``R(delta/2) E R(delta/2)^-1`` of the
equi-diagonal matrix ``E`` built from ``(theta, lam)``, where
``theta = theta1 + alpha2/2`` and ``delta = -alpha2/2``.

Elliptic ``E`` (``|trace M| < 2``) is a pass band; hyperbolic is a gap.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .core import (
    DEFAULT_TOLERANCES,
    BargmannForm,
    DomainError,
    EquiDiag,
    Mat2,
    Tolerances,
    WignerClass,
    matrix_power,
    rotation,
    wigner_factor,
)

__all__ = [
    "BoundaryCoeffs",
    "Direction",
    "LayerCycle",
    "CoreParams",
    "StackClass",
    "boundary_matrix",
    "first_medium_matrix",
    "cycle_matrix",
    "core_compress",
    "stack_equi_diag",
    "stack_classify",
    "stack_power",
]

LOSSLESS_TOL = 1e-9


@dataclass(frozen=True)
class BoundaryCoeffs:
    """Reflection and transmission coefficients of a lossless interface.

    ``t`` defaults to ``sqrt(1 - r**2)``.
    """

    r: float
    t: Optional[float] = None

    def __post_init__(self):
        r = self.r
        if not math.isfinite(r) or not abs(r) < 1:
            raise DomainError(f"|r| must be below 1, got r = {r!r}")
        if self.t is None:
            object.__setattr__(self, "t", math.sqrt((1 - r) * (1 + r)))
        t = self.t
        if not 0 < t <= 1:
            raise DomainError(f"t must lie in (0, 1], got t = {t!r}")
        if abs(r * r + t * t - 1) > LOSSLESS_TOL:
            raise DomainError(
                f"boundary is not lossless: r^2 + t^2 = {r * r + t * t!r}"
            )

    @property
    def mu(self) -> float:
        """Boundary rapidity: ``cosh(mu/2) = 1/t``, ``sinh(mu/2) = r/t``."""
        return 2 * math.atanh(self.r)


class Direction(enum.Enum):
    ONE_TO_TWO = "one_to_two"
    TWO_TO_ONE = "two_to_one"


@dataclass(frozen=True)
class LayerCycle:
    boundary: BoundaryCoeffs
    alpha1: float
    alpha2: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha1) and math.isfinite(self.alpha2)):
            raise DomainError("layer phases must be finite")

    @classmethod
    def from_params(cls, r: float, alpha1: float, alpha2: float, t: Optional[float] = None):
        return cls(BoundaryCoeffs(float(r), None if t is None else float(t)), float(alpha1), float(alpha2))

    @classmethod
    def from_dict(cls, obj: dict) -> "LayerCycle":
        return cls.from_params(obj["r"], obj["alpha1"], obj["alpha2"], obj.get("t"))

    def to_dict(self) -> dict:
        return {
            "r": self.boundary.r,
            "t": self.boundary.t,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
        }


@dataclass(frozen=True)
class CoreParams:
    lam: float
    theta1: float
    theta2: float
    theta: float
    delta: float


@dataclass(frozen=True)
class StackClass:
    sigma: float
    wigner: WignerClass
    negated: bool = False


def boundary_matrix(b: BoundaryCoeffs, direction: Direction = Direction.ONE_TO_TWO) -> Mat2:
    ch, sh = 1 / b.t, b.r / b.t
    if direction is Direction.TWO_TO_ONE:
        sh = -sh
    return Mat2(ch, sh, sh, ch)


def first_medium_matrix(c: LayerCycle) -> Mat2:
    """``Q(mu) R(alpha1/2) Q(mu)^-1`` in compressed form."""
    e = math.exp(c.boundary.mu)
    ca, sa = math.cos(c.alpha1 / 2), math.sin(c.alpha1 / 2)
    return Mat2(ca, -e * sa, sa / e, ca)


def cycle_matrix(c: LayerCycle) -> Mat2:
    return first_medium_matrix(c) @ rotation(c.alpha2 / 2)


def core_compress(c: LayerCycle) -> CoreParams:
    """Bargmann parameters of one period.

    Matching ``R(theta1/2) boost(lam) R(theta1/2)`` against the compressed
    first-medium matrix fixes both signs:

        sinh(lam) = -sinh(mu) sin(alpha1/2)
        cosh(lam) sin(theta1) = cosh(mu) sin(alpha1/2)
        cosh(lam) cos(theta1) = cos(alpha1/2)
    """
    mu = c.boundary.mu
    ca, sa = math.cos(c.alpha1 / 2), math.sin(c.alpha1 / 2)
    lam = math.asinh(-math.sinh(mu) * sa)
    theta1 = math.atan2(math.cosh(mu) * sa, ca)
    theta2 = theta1 + c.alpha2
    return CoreParams(lam, theta1, theta2, (theta1 + theta2) / 2, (theta1 - theta2) / 2)


def stack_equi_diag(p: CoreParams) -> tuple[float, EquiDiag]:
    """``(delta, E)`` with ``M = R(delta/2) E R(delta/2)^-1``."""
    return p.delta, BargmannForm(p.theta, p.lam).compose()


def stack_classify(e: EquiDiag, tol: Tolerances = DEFAULT_TOLERANCES) -> StackClass:
    """Squeeze parameter and Wigner class of the equi-diagonal period matrix.

    Periods with ``trace < -2`` are reported as the negation of a boost or
    shear (``negated=True``).
    """
    negated = e.J < -(1 - tol.class_tol)
    if negated:
        e = EquiDiag(-e.J, -e.F, -e.G)
    sigma, w = wigner_factor(e, tol)
    return StackClass(sigma, w, negated)


def stack_power(c: LayerCycle, N: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    if N < 0:
        raise DomainError("number of periods must be nonnegative")
    return matrix_power(cycle_matrix(c), int(N), tol)
