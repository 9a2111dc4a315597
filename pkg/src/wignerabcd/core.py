"""Sp(2) engine for real unit-determinant 2x2 (ABCD) matrices.

Every ABCD matrix ``M`` is written as ``M = +/- S W S^-1`` where ``W`` is one
of the one-parameter Wigner matrices (rotation, boost, upper or lower shear)
and ``S = R(delta/2) Q(eta)`` is a rotation preceded by a squeeze.  Because
the Wigner matrices add their parameters under multiplication, ``M**N`` is
available in closed form.

Conventions used throughout::

    R(phi) = [[cos phi, -sin phi], [sin phi, cos phi]]
    Q(eta) = diag(exp(eta/2), exp(-eta/2))
    boost(lam) = [[cosh lam, sinh lam], [sinh lam, cosh lam]]
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "DeterminantError",
    "DomainError",
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "Mat2",
    "EquiDiag",
    "Elliptic",
    "Hyperbolic",
    "ParabolicUpper",
    "ParabolicLower",
    "Identity",
    "WignerClass",
    "MatrixClass",
    "Decomposition",
    "BargmannForm",
    "make",
    "identity",
    "rotation",
    "squeeze",
    "boost",
    "multiply",
    "inverse",
    "trace",
    "det_residual",
    "classify",
    "eigenvalues",
    "equi_diagonalize",
    "wigner_factor",
    "decompose",
    "reconstruct",
    "wigner_power",
    "matrix_power",
    "bargmann_compose",
    "wigner_from_dict",
]


class DeterminantError(ValueError):
    """Raised when a matrix is not unit-determinant within tolerance."""


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


@dataclass(frozen=True)
class Tolerances:
    det_tol: float = 1e-9
    class_tol: float = 1e-9
    recon_tol: float = 1e-9
    parab_tol: float = 1e-7


DEFAULT_TOLERANCES = Tolerances()

# 2*pi to 64 decimal places, used for exact reduction of n*theta.
_TWO_PI = Fraction("6.2831853071795864769252867665590057683943387987502116419498891846")


def det_residual(a: float, b: float, c: float, d: float, normwise: bool = False) -> float:
    """Scale-aware distance of ``a*d - b*c`` from one.

    Entries are first divided by ``s = max(1, |a|, |b|, |c|, |d|)`` so the
    products cannot overflow.  By default the residual is then measured
    relative to the size of the two products ``ad`` and ``bc``.  With
    ``normwise=True`` it is measured relative to ``s**2`` instead, i.e. as
    the backward error ``|det - 1| / max(1, max|entry|)**2``; that is the
    accuracy a computed product can promise when one entry is tiny next to
    the others.  For entries of order one both reduce to ``|ad - bc - 1|``.
    """
    s = max(1.0, abs(a), abs(b), abs(c), abs(d))
    a, b, c, d = a / s, b / s, c / s, d / s
    ad, bc, one = a * d, b * c, 1.0 / (s * s)
    r = abs(ad - bc - one)
    return r if normwise else r / max(abs(ad), abs(bc), one)


@dataclass(frozen=True)
class Mat2:
    """Real 2x2 matrix ``[[a, b], [c, d]]``.

    The constructor only rejects non-finite entries; use :func:`make` for a
    determinant-checked matrix.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if math.isnan(v):
                raise DomainError(f"matrix entry {name} is NaN")
            if math.isinf(v):
                raise OverflowError(f"matrix entry {name} is infinite")

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d

    def inverse(self) -> "Mat2":
        # valid for unit determinant only
        return Mat2(self.d, -self.b, -self.c, self.a)

    def max_abs(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def rows(self) -> list[list[float]]:
        return [[self.a, self.b], [self.c, self.d]]

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, obj: dict, tol: Tolerances = DEFAULT_TOLERANCES) -> "Mat2":
        try:
            vals = [float(obj[k]) for k in ("a", "b", "c", "d")]
        except KeyError as exc:
            raise DomainError(f"missing matrix entry {exc.args[0]!r}") from None
        return make(*vals, tol=tol)


def _checked(m: Mat2, tol: Tolerances, normwise: bool = False) -> Mat2:
    r = det_residual(*m, normwise=normwise)
    if r > tol.det_tol:
        raise DeterminantError(
            f"determinant {m.det!r} differs from 1 (residual {r:.3e} > {tol.det_tol:g})"
        )
    return m


def make(a: float, b: float, c: float, d: float, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    """Build an ABCD matrix, checking that its determinant is one."""
    return _checked(Mat2(float(a), float(b), float(c), float(d)), tol)


def identity() -> Mat2:
    return Mat2(1.0, 0.0, 0.0, 1.0)


def rotation(phi: float) -> Mat2:
    c, s = math.cos(phi), math.sin(phi)
    return Mat2(c, -s, s, c)


def squeeze(eta: float) -> Mat2:
    """``diag(exp(eta/2), exp(-eta/2))``."""
    return Mat2(math.exp(eta / 2), 0.0, 0.0, math.exp(-eta / 2))


def boost(lam: float) -> Mat2:
    ch, sh = math.cosh(lam), math.sinh(lam)
    return Mat2(ch, sh, sh, ch)


def multiply(m1: Mat2, m2: Mat2, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    return _checked(m1 @ m2, tol, normwise=True)


def inverse(m: Mat2, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    return _checked(m.inverse(), tol)


def trace(m: Mat2) -> float:
    return m.trace


# -- classification ---------------------------------------------------------


class MatrixClass(enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    IDENTITY = "identity"


def _is_plus_minus_identity(m: Mat2, tol: float) -> bool:
    for s in (1.0, -1.0):
        if max(abs(m.a - s), abs(m.b), abs(m.c), abs(m.d - s)) <= tol:
            return True
    return False


def classify(m: Mat2, tol: Tolerances = DEFAULT_TOLERANCES) -> MatrixClass:
    """Trace trichotomy of an ABCD matrix.

    With ``J = (A + D)/2``: elliptic if ``|J| < 1``, hyperbolic if ``|J| > 1``,
    parabolic on the boundary, and identity for ``+/-I``; all comparisons use
    ``tol.class_tol``.
    """
    j = abs(m.trace / 2)
    if j < 1 - tol.class_tol:
        return MatrixClass.ELLIPTIC
    if j > 1 + tol.class_tol:
        return MatrixClass.HYPERBOLIC
    if _is_plus_minus_identity(m, tol.class_tol):
        return MatrixClass.IDENTITY
    return MatrixClass.PARABOLIC


def _discriminant(m: Mat2) -> float:
    # (A - D)^2 + 4BC evaluated exactly on the stored floats; it is the
    # difference of two nearly equal quantities close to the parabolic edge.
    a, b, c, d = (Fraction(x) for x in m)
    return float((a - d) ** 2 + 4 * b * c)


def eigenvalues(m: Mat2, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[complex, complex]:
    """Eigenvalues ``E+, E-`` of ``m`` as a complex pair.

    Matrices that :func:`classify` puts on the parabolic edge (or at +/-I)
    get the exact double root ``sign(J)``; their discriminant is rounding
    noise whose square root would otherwise leak into the result.
    """
    j = m.trace / 2
    if abs(abs(j) - 1) <= tol.class_tol:
        one = math.copysign(1.0, j)
        return complex(one), complex(one)
    disc = _discriminant(m)
    if disc >= 0:
        r = math.sqrt(disc) / 2
        return complex(j + r), complex(j - r)
    r = math.sqrt(-disc) / 2
    return complex(j, r), complex(j, -r)


# -- the Wigner matrices ----------------------------------------------------


def _wrap(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    r = math.remainder(theta, 2 * math.pi)
    return math.pi if r <= -math.pi else r


@dataclass(frozen=True)
class Elliptic:
    """Rotation ``R(theta_star)``."""

    theta_star: float
    name = "elliptic"

    def __post_init__(self):
        object.__setattr__(self, "theta_star", _wrap(self.theta_star))

    @property
    def param(self) -> float:
        return self.theta_star

    def materialize(self) -> Mat2:
        return rotation(self.theta_star)

    def power(self, n: int) -> "Elliptic":
        # n * theta is reduced exactly; float(n) * theta loses the phase for large n
        t = Fraction(self.theta_star) * int(n)
        t -= round(t / _TWO_PI) * _TWO_PI
        return Elliptic(float(t))


@dataclass(frozen=True)
class Hyperbolic:
    """Boost ``[[cosh l, sinh l], [sinh l, cosh l]]``, ``l != 0``."""

    lambda_star: float
    name = "hyperbolic"

    def __post_init__(self):
        if self.lambda_star == 0:
            raise DomainError("hyperbolic Wigner matrix needs a nonzero parameter")

    @property
    def param(self) -> float:
        return self.lambda_star

    def materialize(self) -> Mat2:
        return boost(self.lambda_star)

    def power(self, n: int) -> "Hyperbolic | Identity":
        return Hyperbolic(n * self.lambda_star) if n else Identity()


@dataclass(frozen=True)
class ParabolicUpper:
    """Upper shear ``[[1, -gamma], [0, 1]]``."""

    gamma_star: float
    name = "parabolic_upper"

    @property
    def param(self) -> float:
        return self.gamma_star

    def materialize(self) -> Mat2:
        return Mat2(1.0, -self.gamma_star, 0.0, 1.0)

    def power(self, n: int) -> "ParabolicUpper | Identity":
        return ParabolicUpper(n * self.gamma_star) if n else Identity()


@dataclass(frozen=True)
class ParabolicLower:
    """Lower shear ``[[1, 0], [gamma, 1]]``."""

    gamma_star: float
    name = "parabolic_lower"

    @property
    def param(self) -> float:
        return self.gamma_star

    def materialize(self) -> Mat2:
        return Mat2(1.0, 0.0, self.gamma_star, 1.0)

    def power(self, n: int) -> "ParabolicLower | Identity":
        return ParabolicLower(n * self.gamma_star) if n else Identity()


@dataclass(frozen=True)
class Identity:
    name = "identity"

    @property
    def param(self) -> float:
        return 0.0

    def materialize(self) -> Mat2:
        return identity()

    def power(self, n: int) -> "Identity":
        return self


WignerClass = Union[Elliptic, Hyperbolic, ParabolicUpper, ParabolicLower, Identity]

_WIGNER_BY_NAME = {
    "elliptic": Elliptic,
    "hyperbolic": Hyperbolic,
    "parabolic_upper": ParabolicUpper,
    "parabolic_lower": ParabolicLower,
}


def wigner_from_dict(name: str, param: float) -> WignerClass:
    if name == "identity":
        return Identity()
    try:
        return _WIGNER_BY_NAME[name](float(param))
    except KeyError:
        raise DomainError(f"unknown Wigner class {name!r}") from None


def wigner_power(w: WignerClass, n: int) -> WignerClass:
    """``W**n`` via the logarithmic property: the parameter is scaled by ``n``."""
    return w.power(n)


# -- equi-diagonal form and decomposition -----------------------------------


@dataclass(frozen=True)
class EquiDiag:
    """Equal-diagonal matrix ``[[J, F], [G, J]]`` with ``J**2 - F*G = 1``."""

    J: float
    F: float
    G: float

    def __iter__(self):
        return iter((self.J, self.F, self.G))

    def matrix(self) -> Mat2:
        return Mat2(self.J, self.F, self.G, self.J)


def equi_diagonalize(m: Mat2) -> tuple[float, EquiDiag]:
    """Rotate ``m`` to equal diagonal elements.

    Returns ``delta`` in [-pi/2, pi/2] and ``N = R(-delta/2) m R(delta/2)``
    as an :class:`EquiDiag`.  The two solutions ``delta`` and ``delta + pi``
    both equalize the diagonal; the one with ``cos(delta) >= 0`` is returned,
    and ``B + C = 0`` gives ``delta = sign(D - A) * pi/2``.

    The larger of ``|F|``, ``|G|`` comes from the rotation-invariant
    combination ``F - G = B - C`` and ``|F + G| = hypot(A - D, B + C)``; the
    smaller is ``F*G / larger`` with ``F*G`` equal to the exact eigenvalue
    discriminant over four, which avoids cancellation near the parabolic case.
    """
    A, B, C, D = m
    plus, diff = B + C, D - A
    if plus > 0:
        delta = math.atan2(diff, plus)
    elif plus < 0:
        delta = math.atan2(-diff, -plus)
    else:
        delta = math.copysign(math.pi / 2, diff) if diff else 0.0

    J = (A + D) / 2
    k = B - C
    sign = 1.0 if plus >= 0 else -1.0
    big = sign * (math.hypot(A - D, plus) + abs(k)) / 2
    fg = _discriminant(m) / 4
    if big == 0:
        F = G = 0.0
    elif k * sign >= 0:
        F, G = big, fg / big
    else:
        F, G = fg / big, big
    return delta, EquiDiag(J, F, G)


def wigner_factor(
    e: EquiDiag, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[float, WignerClass]:
    """Write an equi-diagonal matrix as ``Q(eta) W Q(eta)^-1``.

    Parameters
    ----------
    e : EquiDiag
        Matrix with ``J >= -(1 - class_tol)``; negate it first otherwise.
    tol : Tolerances

    Returns
    -------
    eta : float
        Squeeze rapidity, zero for the shear and identity branches.
    wigner : WignerClass
    """
    J, F, G = e
    ctol = tol.class_tol
    if J < -(1 - ctol):
        raise DomainError(f"J = {J!r} <= -1; negate the matrix before factoring")
    fg = F * G
    if J > 1 + ctol:
        if not fg > 0:
            raise DomainError("hyperbolic equi-diagonal matrix needs F*G > 0")
        lam = math.log1p((J - 1) + math.sqrt(fg))
        return 0.5 * math.log(F / G), Hyperbolic(math.copysign(lam, F))
    if J < 1 - ctol:
        if not fg < 0:
            raise DomainError("elliptic equi-diagonal matrix needs F*G < 0")
        theta = math.atan2(math.copysign(math.sqrt(-fg), G), J)
        return 0.5 * math.log(-F / G), Elliptic(theta)
    if max(abs(F), abs(G)) <= ctol:
        return 0.0, Identity()
    if abs(G) <= tol.parab_tol and abs(G) <= abs(F):
        return 0.0, ParabolicUpper(-F)
    if abs(F) <= tol.parab_tol:
        return 0.0, ParabolicLower(G)
    raise DomainError(
        f"|J| = 1 but neither off-diagonal vanishes (F={F!r}, G={G!r}); "
        "input is not unit-determinant"
    )


@dataclass(frozen=True)
class Decomposition:
    """``M = sign * R(delta/2) Q(eta) W Q(eta)^-1 R(delta/2)^-1``."""

    delta: float
    eta: float
    wigner: WignerClass
    negated: bool = False

    def power(self, n: int) -> "Decomposition":
        return Decomposition(
            self.delta, self.eta, self.wigner.power(n), self.negated and n % 2 == 1
        )

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "eta": self.eta,
            "class": self.wigner.name,
            "param": self.wigner.param,
            "negated": self.negated,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Decomposition":
        return cls(
            float(obj["delta"]),
            float(obj["eta"]),
            wigner_from_dict(obj["class"], obj.get("param", 0.0)),
            bool(obj.get("negated", False)),
        )


def decompose(m: Mat2, tol: Tolerances = DEFAULT_TOLERANCES) -> Decomposition:
    """Wigner decomposition of an ABCD matrix.

    Matrices with ``(A + D)/2 < -(1 - class_tol)`` are handled as ``-(-M)``
    and flagged ``negated``.
    """
    negated = m.trace / 2 < -(1 - tol.class_tol)
    delta, e = equi_diagonalize(-m if negated else m)
    eta, w = wigner_factor(e, tol)
    return Decomposition(delta, eta, w, negated)


def _squeezed(w: WignerClass, eta: float) -> Mat2:
    # Q(eta) W Q(eta)^-1 scales the off-diagonal entries by exp(+/-eta); forming
    # it this way avoids the cancellation of an explicit triple product.
    a, b, c, d = w.materialize()
    return Mat2(a, b * math.exp(eta), c * math.exp(-eta), d)


def reconstruct(d: Decomposition, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    """``sign * R(delta/2) Q(eta) W Q(eta)^-1 R(delta/2)^-1``."""
    sign = -1.0 if d.negated else 1.0
    if isinstance(d.wigner, Identity):
        return Mat2(sign, 0.0, 0.0, sign)
    r = rotation(d.delta / 2)
    m = (r @ _squeezed(d.wigner, d.eta)) @ r.inverse()
    if sign < 0:
        m = -m
    return _checked(m, tol, normwise=True)


def matrix_power(m: Mat2, n: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat2:
    """Closed-form ``m**n`` from ``(S W S^-1)**n = S W**n S^-1``."""
    if abs(n) > 2**62:
        raise DomainError("|n| must not exceed 2**62")
    return reconstruct(decompose(m, tol).power(int(n)), tol)


# -- Bargmann form ----------------------------------------------------------


@dataclass(frozen=True)
class BargmannForm:
    """``R(theta/2) boost(lam) R(theta/2)``."""

    theta: float
    lam: float

    def compose(self) -> EquiDiag:
        ch, sh = math.cosh(self.lam), math.sinh(self.lam)
        st = math.sin(self.theta)
        return EquiDiag(ch * math.cos(self.theta), -ch * st + sh, ch * st + sh)


def bargmann_compose(f: BargmannForm) -> EquiDiag:
    return f.compose()
