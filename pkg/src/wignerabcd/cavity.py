"""Two-mirror laser cavity with equal radii of curvature.

The half cycle starting a distance ``d`` from a mirror is
``T(d) Mirror(R) T(s - d)``.  After the similarity
``diag(1/sqrt(s), sqrt(s))`` it depends only on ``a = d/s`` and ``b = 2s/R``::

    L = [[1 - ab, 1 - ab(1 - a)], [-b, 1 - b(1 - a)]]

One full cycle (two reflections) is ``L**2``.  Its trace ``2 - b`` does not
depend on where the cycle starts, so neither does the Wigner angle; only the
rotation ``delta`` and the squeeze ``eta`` move with ``a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    DEFAULT_TOLERANCES,
    Decomposition,
    DomainError,
    Mat2,
    Tolerances,
    decompose,
    matrix_power,
)

__all__ = [
    "CavitySpec",
    "NormalizedCavity",
    "cavity_from_dict",
    "mirror_matrix",
    "separation_matrix",
    "physical_half_cycle",
    "half_cycle",
    "cavity_decompose",
    "n_cycles",
    "stability",
]


@dataclass(frozen=True)
class NormalizedCavity:
    """Dimensionless cavity: ``a = d/s`` in [0, 1] and ``b = 2s/R >= 0``.

    ``b = 0`` (flat mirrors) is accepted so free propagation can be modelled.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("cavity parameters must be finite")
        if not 0.0 <= self.a <= 1.0:
            raise DomainError(f"a = {self.a!r} must lie in [0, 1]")
        if self.b < 0:
            raise DomainError(f"b = {self.b!r} must be nonnegative")

    @property
    def stable(self) -> bool:
        return stability(self)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b}


@dataclass(frozen=True)
class CavitySpec:
    """Physical cavity: mirror radius ``R``, separation ``s``, start offset ``d``."""

    R: float
    s: float
    d: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.R, self.s, self.d)):
            raise DomainError("cavity parameters must be finite")
        if self.R <= 0:
            raise DomainError(f"mirror radius R = {self.R!r} must be positive")
        if self.s <= 0:
            raise DomainError(f"separation s = {self.s!r} must be positive")
        if not 0 <= self.d <= self.s:
            raise DomainError(f"start offset d = {self.d!r} must lie in [0, s]")

    def normalized(self) -> NormalizedCavity:
        return NormalizedCavity(self.d / self.s, 2 * self.s / self.R)

    def to_dict(self) -> dict:
        return {"R": self.R, "s": self.s, "d": self.d}


def cavity_from_dict(obj: dict):
    """Parse either ``{"R", "s", "d"}`` or ``{"a", "b"}``."""
    if "a" in obj or "b" in obj:
        return NormalizedCavity(float(obj["a"]), float(obj["b"]))
    return CavitySpec(float(obj["R"]), float(obj["s"]), float(obj.get("d", 0.0)))


def mirror_matrix(R: float) -> Mat2:
    if not R > 0 or not math.isfinite(R):
        raise DomainError(f"mirror radius must be positive and finite, got {R!r}")
    return Mat2(1.0, 0.0, -2.0 / R, 1.0)


def separation_matrix(s: float) -> Mat2:
    if s < 0:
        raise DomainError(f"separation must be nonnegative, got {s!r}")
    return Mat2(1.0, float(s), 0.0, 1.0)


def physical_half_cycle(cav: CavitySpec) -> Mat2:
    """Dimensional half cycle ``T(d) Mirror(R) T(s - d)``."""
    return (separation_matrix(cav.d) @ mirror_matrix(cav.R)) @ separation_matrix(cav.s - cav.d)


def half_cycle(n: NormalizedCavity) -> Mat2:
    a, b = n.a, n.b
    return Mat2(1 - a * b, 1 - a * b * (1 - a), -b, 1 - b * (1 - a))


def cavity_decompose(n: NormalizedCavity, tol: Tolerances = DEFAULT_TOLERANCES) -> Decomposition:
    """Wigner decomposition of the half cycle.

    In the stable range ``cos(theta_star) = 1 - b/2``; starting at the
    midpoint (``a = 1/2``) gives ``delta = 0``.
    """
    return decompose(half_cycle(n), tol)


def n_cycles(n: NormalizedCavity, N: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    """ABCD matrix of ``N`` full round trips, ``L**(2N)``.

    In the Wigner frame this is a rotation by ``2 N theta_star``: each full
    cycle turns by twice the half-cycle angle.
    """
    if N < 0:
        raise DomainError("number of cycles must be nonnegative")
    return matrix_power(half_cycle(n), 2 * int(N), tol)


def stability(n: NormalizedCavity) -> bool:
    """True iff the half cycle is elliptic, i.e. ``0 < b < 4`` (``0 < s < 2R``)."""
    return abs(1 - n.b / 2) < 1
