"""Wigner decomposition and closed-form powers of real 2x2 ABCD matrices."""

from .core import (
    DEFAULT_TOLERANCES,
    BargmannForm,
    Decomposition,
    DeterminantError,
    DomainError,
    Elliptic,
    EquiDiag,
    Hyperbolic,
    Identity,
    Mat2,
    MatrixClass,
    ParabolicLower,
    ParabolicUpper,
    Tolerances,
    WignerClass,
    bargmann_compose,
    boost,
    classify,
    decompose,
    eigenvalues,
    equi_diagonalize,
    identity,
    inverse,
    make,
    matrix_power,
    multiply,
    reconstruct,
    rotation,
    squeeze,
    trace,
    wigner_factor,
    wigner_power,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOLERANCES",
    "BargmannForm",
    "Decomposition",
    "DeterminantError",
    "DomainError",
    "Elliptic",
    "EquiDiag",
    "Hyperbolic",
    "Identity",
    "Mat2",
    "MatrixClass",
    "ParabolicLower",
    "ParabolicUpper",
    "Tolerances",
    "WignerClass",
    "bargmann_compose",
    "boost",
    "classify",
    "decompose",
    "eigenvalues",
    "equi_diagonalize",
    "identity",
    "inverse",
    "make",
    "matrix_power",
    "multiply",
    "reconstruct",
    "rotation",
    "squeeze",
    "trace",
    "wigner_factor",
    "wigner_power",
]
