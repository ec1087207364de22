"""Dense complex matrix primitives: norms, adjoints, spectral tools.

Everything downstream (witness checks, the decomposition engine, distance
estimates) consumes operators through this module.  Operators are immutable
square complex matrices, optionally tagged with word labels when they come
from a truncated Fock representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotPositive

__all__ = [
    "Operator",
    "PositivityReport",
    "op_norm",
    "frobenius_norm",
    "psd_sqrt",
    "positivity_check",
    "identity",
    "zero",
]


@dataclass(frozen=True, eq=False)
class Operator:
    """An element of a matrix algebra: a dim x dim complex matrix.

    ``basis_labels``, when present, names the basis vectors (words over
    generator digits, "" for the vacuum) and must contain ``dim`` distinct
    entries.
    """

    entries: np.ndarray
    basis_labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"operator entries must be square, got shape {arr.shape}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)
        if self.basis_labels is not None:
            labels = tuple(self.basis_labels)
            if len(labels) != arr.shape[0]:
                raise DimensionMismatch(
                    f"{len(labels)} labels for dimension {arr.shape[0]}"
                )
            if len(set(labels)) != len(labels):
                raise ValueError("basis labels must be distinct")
            object.__setattr__(self, "basis_labels", labels)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> "Operator":
        return Operator(self.entries.conj().T, self.basis_labels)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, Operator):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")
            return other.entries
        return np.asarray(other, dtype=complex)

    def __matmul__(self, other) -> "Operator":
        return Operator(self.entries @ self._coerce(other), self.basis_labels)

    def __add__(self, other) -> "Operator":
        return Operator(self.entries + self._coerce(other), self.basis_labels)

    def __sub__(self, other) -> "Operator":
        return Operator(self.entries - self._coerce(other), self.basis_labels)

    def __mul__(self, scalar) -> "Operator":
        return Operator(self.entries * complex(scalar), self.basis_labels)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(-self.entries, self.basis_labels)

    def __repr__(self) -> str:
        return f"Operator(dim={self.dim})"


@dataclass(frozen=True)
class PositivityReport:
    is_hermitian: bool
    min_eig: float
    is_psd: bool


def identity(dim: int, basis_labels: tuple[str, ...] | None = None) -> Operator:
    return Operator(np.eye(dim, dtype=complex), basis_labels)


def zero(dim: int, basis_labels: tuple[str, ...] | None = None) -> Operator:
    return Operator(np.zeros((dim, dim), dtype=complex), basis_labels)


def _entries(x) -> np.ndarray:
    return x.entries if isinstance(x, Operator) else np.asarray(x, dtype=complex)


def op_norm(x: Operator | np.ndarray) -> float:
    """Operator (spectral) norm: the largest singular value.

    Returns 0.0 for the zero matrix.  Deterministic for a fixed input.
    """
    a = _entries(x)
    if not np.any(a):
        return 0.0
    return float(np.linalg.norm(a, 2))


def frobenius_norm(x: Operator | np.ndarray) -> float:
    return float(np.linalg.norm(_entries(x)))


def _hermitian_defect(a: np.ndarray) -> float:
    return op_norm(a - a.conj().T)


def psd_sqrt(x: Operator, tol: float = 1e-9) -> Operator:
    """Positive square root of a positive semidefinite operator.

    Eigenvalues in [-tol, 0) are treated as truncation noise and clamped to
    zero, so the result y satisfies ||y @ y - x|| <= tol plus rounding.

    Raises NotHermitian if ||x - x*|| > tol and NotPositive if the least
    eigenvalue falls below -tol.
    """
    a = _entries(x)
    defect = _hermitian_defect(a)
    if defect > tol:
        raise NotHermitian(f"||x - x*|| = {defect:.3e} > tol = {tol:.3e}")
    h = (a + a.conj().T) / 2
    w, u = np.linalg.eigh(h)
    if w[0] < -tol:
        raise NotPositive(f"least eigenvalue {w[0]:.3e} < -tol = {-tol:.3e}")
    w = np.clip(w, 0.0, None)
    root = (u * np.sqrt(w)) @ u.conj().T
    root = (root + root.conj().T) / 2
    labels = x.basis_labels if isinstance(x, Operator) else None
    return Operator(root, labels)


def positivity_check(x: Operator, tol: float = 1e-9) -> PositivityReport:
    """Hermiticity and positivity report.

    ``min_eig`` is the least eigenvalue of the Hermitian part (x + x*)/2;
    ``is_psd`` holds iff x is Hermitian within tol and min_eig >= -tol.
    """
    a = _entries(x)
    is_herm = _hermitian_defect(a) <= tol
    h = (a + a.conj().T) / 2
    min_eig = float(np.linalg.eigvalsh(h)[0])
    return PositivityReport(is_herm, min_eig, is_herm and min_eig >= -tol)
