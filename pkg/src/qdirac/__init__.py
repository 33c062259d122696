"""Exact verification toolkit for the SU_q(2)-covariant Dirac operator on the quantum sphere.

Arithmetic is exact in Q(s) with s^2 = q; numerics appear only in the
unitary-basis checks.
"""

from .field import LAM, ONE, Q, S, ZERO, DenominatorVanishes, FieldElem, qnum, qnum_sq
from .matrix import ExactMatrix, ShapeMismatch, kernel_dim, kron
from .report import (
    ConfluenceFailure,
    MultiplicityMismatch,
    NotScalar,
    TowerDegenerate,
    VerificationError,
    VerificationReport,
)

__version__ = "0.1.0"

__all__ = [
    "LAM",
    "ONE",
    "Q",
    "S",
    "ZERO",
    "DenominatorVanishes",
    "FieldElem",
    "qnum",
    "qnum_sq",
    "ExactMatrix",
    "ShapeMismatch",
    "kernel_dim",
    "kron",
    "ConfluenceFailure",
    "MultiplicityMismatch",
    "NotScalar",
    "TowerDegenerate",
    "VerificationError",
    "VerificationReport",
    "__version__",
]
