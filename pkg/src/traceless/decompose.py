"""Writing elements as sums of commutators through the transfer map.

Given a witness b_1..b_n, the transfer map phi(a) = sum_i b_i a b_i* is
positive with ||phi|| = ||sum b_i b_i*|| = eta2 < 1, so Id - phi inverts by
the Neumann series psi = sum_k phi^k.  The whole engine rests on one line
of algebra, exact whenever sum b_i* b_i = 1:

    sum_i [b_i*, b_i c] = (sum_i b_i* b_i) c - phi(c) = c - phi(c),

so c = psi(a) turns a = (Id - phi)(psi(a)) into an explicit sum of n
commutators.  For positive a the pairs (psi(a)^(1/2) b_i*, b_i psi(a)^(1/2))
do the same with each contribution self-adjoint.

On a truncated witness the identity cannot hold exactly (matrix algebras
have a trace), so results report both the full residual and its compression
to the truncation interior; the leftover is the boundary defect
(1 - sum b_i* b_i) psi(a) plus the certified series tail.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import cuntz
from .cuntz import StarPolynomial
from .errors import (
    DimensionMismatch,
    MaxIterExceeded,
    NotContractive,
    NotPositive,
    SizeLimitExceeded,
)
from .linalg import Operator, op_norm, positivity_check, psd_sqrt
from .witness import WitnessFamily

__all__ = [
    "CommutatorPair",
    "SolverInfo",
    "DecompositionResult",
    "VerificationReport",
    "apply_phi",
    "solve_psi_neumann",
    "solve_psi_direct",
    "decompose_element",
    "decompose_positive",
    "verify_decomposition",
]

DEFAULT_DIRECT_DIM = 64


@dataclass(frozen=True)
class CommutatorPair:
    """One commutator [x, y].  In self-adjoint form y = x*, so the
    contribution x y - y x = y* y - y y* is Hermitian."""

    x: object
    y: object
    self_adjoint_form: bool = False


@dataclass(frozen=True)
class SolverInfo:
    method: str
    iterations: int
    tail_bound: float


@dataclass(frozen=True)
class DecompositionResult:
    pairs: tuple[CommutatorPair, ...]
    psi_a: object
    residual: object
    residual_norm: float
    residual_interior_norm: float
    trace_defect: float | None
    solver: SolverInfo


@dataclass(frozen=True)
class VerificationReport:
    residual_norm: float
    residual_interior_norm: float
    trace_defect: float | None


def apply_phi(a, witness: WitnessFamily):
    """The transfer map: sum_i b_i a b_i* (summed in index order)."""
    if witness.backend == "symbolic":
        if not isinstance(a, StarPolynomial):
            raise TypeError("symbolic witness needs a symbolic argument")
        total = cuntz.zero_poly(a.n)
        for b in witness.elements:
            total = cuntz.add(total, cuntz.multiply(cuntz.multiply(b, a), cuntz.adjoint(b)))
        return total
    if not isinstance(a, Operator):
        raise TypeError("matrix witness needs an Operator argument")
    if a.dim != witness.elements[0].dim:
        raise DimensionMismatch(f"dim {a.dim} vs witness dim {witness.elements[0].dim}")
    total = np.zeros((a.dim, a.dim), dtype=complex)
    for b in witness.elements:
        total = total + b.entries @ a.entries @ b.entries.conj().T
    return Operator(total, a.basis_labels)


def _neumann_iterations(eta: float, norm_a: float, eps: float, max_iter: int) -> tuple[int, float]:
    """Smallest K with eta^(K+1) * ||a|| / (1 - eta) <= eps, plus that bound."""
    bound = eta * norm_a / (1.0 - eta)
    iterations = 0
    while bound > eps:
        iterations += 1
        bound *= eta
        if iterations > max_iter:
            raise MaxIterExceeded(f"tail bound still {bound:.3e} after {max_iter} iterations")
    return iterations, bound


def solve_psi_neumann(
    a: Operator,
    witness: WitnessFamily,
    eps: float = 1e-10,
    max_iter: int = 100000,
) -> tuple[Operator, int, float]:
    """Partial Neumann sum sum_{k=0}^K phi^k(a) with a certified tail.

    K is the smallest iteration count whose geometric tail bound
    eta2^(K+1) ||a|| / (1 - eta2) falls below eps; the bound is returned.
    """
    eta = witness.report.eta2
    if eta >= 1.0:
        raise NotContractive(f"eta2 = {eta!r} >= 1")
    norm_a = op_norm(a)
    iterations, tail = _neumann_iterations(eta, norm_a, eps, max_iter)
    psi = Operator(a.entries.copy(), a.basis_labels)
    term = psi
    for _ in range(iterations):
        term = apply_phi(term, witness)
        psi = psi + term
    return psi, iterations, tail


def _direct_dim_limit(max_dim: int | None) -> int:
    if max_dim is not None:
        return max_dim
    return int(os.environ.get("CF_MAX_DIRECT_DIM", DEFAULT_DIRECT_DIM))


def solve_psi_direct(a: Operator, witness: WitnessFamily, max_dim: int | None = None) -> Operator:
    """Solve (Id - phi) X = a as one dim^2 x dim^2 linear system.

    Vectorizing column-major turns X -> b X b* into kron(conj(b), b), so the
    system matrix is I - sum_i kron(conj(b_i), b_i).  Cross-checks the
    Neumann solver on small dimensions (limit 64 by default, overridable via
    the CF_MAX_DIRECT_DIM environment variable or ``max_dim``).
    """
    if witness.backend != "matrix":
        raise TypeError("direct solve needs a matrix witness")
    eta = witness.report.eta2
    if eta >= 1.0:
        raise NotContractive(f"eta2 = {eta!r} >= 1")
    dim = a.dim
    limit = _direct_dim_limit(max_dim)
    if dim > limit:
        raise SizeLimitExceeded(f"dim {dim} exceeds direct-solver limit {limit}")
    if dim != witness.elements[0].dim:
        raise DimensionMismatch(f"dim {dim} vs witness dim {witness.elements[0].dim}")
    system = np.eye(dim * dim, dtype=complex)
    for b in witness.elements:
        system -= np.kron(b.entries.conj(), b.entries)
    vec = np.linalg.solve(system, a.entries.flatten(order="F"))
    return Operator(vec.reshape((dim, dim), order="F"), a.basis_labels)


def _pairs_standard(witness: WitnessFamily, psi) -> tuple[CommutatorPair, ...]:
    pairs = []
    for b in witness.elements:
        if witness.backend == "symbolic":
            pairs.append(CommutatorPair(cuntz.adjoint(b), cuntz.multiply(b, psi)))
        else:
            pairs.append(CommutatorPair(b.adjoint(), b @ psi))
    return tuple(pairs)


def _pair_sum(pairs, template):
    if isinstance(template, StarPolynomial):
        total = cuntz.zero_poly(template.n)
        for pair in pairs:
            total = cuntz.add(total, cuntz.commutator(pair.x, pair.y))
        return total
    total = np.zeros((template.dim, template.dim), dtype=complex)
    for pair in pairs:
        total = total + (
            pair.x.entries @ pair.y.entries - pair.y.entries @ pair.x.entries
        )
    return Operator(total, template.basis_labels)


def _interior_norm(residual: Operator, mask: Operator | None) -> float:
    if mask is None:
        return op_norm(residual)
    return op_norm(mask.entries @ residual.entries @ mask.entries)


def _finish(a, witness, pairs, psi, solver: SolverInfo) -> DecompositionResult:
    contributions = _pair_sum(pairs, a)
    if isinstance(a, StarPolynomial):
        residual = cuntz.add(a, -contributions)
        norm = cuntz.coefficient_norm(residual)
        return DecompositionResult(pairs, psi, residual, norm, norm, None, solver)
    residual = a - contributions
    norm = op_norm(residual)
    interior = _interior_norm(residual, witness.interior_mask)
    defect = abs(contributions.trace())
    return DecompositionResult(pairs, psi, residual, norm, interior, defect, solver)


def _solve(a, witness, eps, solver, max_iter):
    if solver == "neumann":
        psi, iterations, tail = solve_psi_neumann(a, witness, eps, max_iter)
        return psi, SolverInfo("neumann", iterations, tail)
    if solver == "direct":
        return solve_psi_direct(a, witness), SolverInfo("direct", 0, 0.0)
    raise ValueError(f"unknown solver {solver!r}")


def decompose_element(
    a,
    witness: WitnessFamily,
    eps: float = 1e-10,
    solver: str = "neumann",
    psi=None,
    max_iter: int = 100000,
) -> DecompositionResult:
    """Express a as sum_i [b_i*, b_i psi(a)] with verified residual.

    ``psi`` may be supplied directly (mandatory for a symbolic witness,
    where the Neumann series has no finite normal form); otherwise the
    chosen solver computes it.
    """
    if witness.backend == "symbolic":
        if psi is None:
            raise TypeError("symbolic decomposition needs an explicit psi")
        pairs = _pairs_standard(witness, psi)
        return _finish(a, witness, pairs, psi, SolverInfo("supplied", 0, 0.0))
    if psi is not None:
        info = SolverInfo("supplied", 0, 0.0)
    else:
        psi, info = _solve(a, witness, eps, solver, max_iter)
    pairs = _pairs_standard(witness, psi)
    return _finish(a, witness, pairs, psi, info)


def decompose_positive(
    a: Operator,
    witness: WitnessFamily,
    eps: float = 1e-10,
    solver: str = "neumann",
    max_iter: int = 100000,
) -> DecompositionResult:
    """Express a positive element as a sum of n self-adjoint commutators.

    The pairs are (psi^(1/2) b_i*, b_i psi^(1/2)); positivity of the
    Neumann series keeps psi(a) positive, so the square root exists.
    """
    if witness.backend != "matrix":
        raise TypeError("positive decomposition needs a matrix witness")
    report = positivity_check(a, tol=1e-9)
    if not report.is_psd:
        raise NotPositive(
            f"input not positive: hermitian={report.is_hermitian}, min_eig={report.min_eig:.3e}"
        )
    psi, info = _solve(a, witness, eps, solver, max_iter)
    root = psd_sqrt(psi, tol=1e-9)
    pairs = []
    for b in witness.elements:
        y = b @ root
        pairs.append(CommutatorPair(y.adjoint(), y, self_adjoint_form=True))
    return _finish(a, witness, tuple(pairs), psi, info)


def verify_decomposition(a, pairs, interior_mask: Operator | None = None) -> VerificationReport:
    """Recompute sum_i [x_i, y_i] from scratch and report the residual.

    For matrices also reports |trace(sum contributions)|: commutators are
    exactly trace-free, so this measures only rounding.  For symbolic input
    the residual is an exact normal form and the trace defect is None.
    """
    if isinstance(a, StarPolynomial):
        total = cuntz.zero_poly(a.n)
        for pair in pairs:
            total = cuntz.add(total, cuntz.commutator(pair.x, pair.y))
        norm = cuntz.coefficient_norm(cuntz.add(a, -total))
        return VerificationReport(norm, norm, None)
    if not isinstance(a, Operator):
        raise TypeError("expected an Operator or StarPolynomial")
    total = np.zeros((a.dim, a.dim), dtype=complex)
    for pair in pairs:
        if pair.x.dim != a.dim or pair.y.dim != a.dim:
            raise DimensionMismatch("pair dimension differs from the target element")
        total = total + pair.x.entries @ pair.y.entries - pair.y.entries @ pair.x.entries
    residual = Operator(a.entries - total, a.basis_labels)
    return VerificationReport(
        op_norm(residual),
        _interior_norm(residual, interior_mask),
        float(abs(np.trace(total))),
    )
