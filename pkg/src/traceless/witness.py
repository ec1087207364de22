"""Witness families: validate, construct, and generate.

A witness is an ordered family b_1..b_n (n >= 2) with

    sum_i b_i* b_i = 1        (defect eta1 = ||sum b_i* b_i - 1||)
    ||sum_i b_i b_i*|| < 1    (eta2)

Such a family certifies that the ambient algebra has no tracial state and
powers the commutator decomposition engine.  Families live either in the
symbolic isometry algebra or as matrices on a truncated Fock space; in the
matrix picture eta1 always carries a boundary defect, which is why checks
can also report eta1 against an interior projection.

``build_witness`` runs the constructive route from candidate elements
a_1..a_m with t0 = ||1 - sum(a_i* a_i - a_i a_i*)|| < 1: append
a_{m+1} = (k - sum a_i* a_i)^(1/2) for k = ||sum a_i* a_i|| and rescale by
1/sqrt(k).  In any matrix algebra the normalized trace forces t0 >= 1, so
that route only succeeds symbolically; ``toeplitz_candidate_family`` ships
an explicit symbolic family that reaches t0 = 1/J for any J >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cuntz
from .cuntz import StarPolynomial, fock_truncation, interior_projection
from .errors import DimensionMismatch, EmptyFamily, GeneratorMismatch, TraceObstruction
from .linalg import Operator, op_norm, psd_sqrt

__all__ = [
    "WitnessReport",
    "WitnessFamily",
    "CandidateFamily",
    "check_witness",
    "check_witness_symbolic",
    "candidate_stats",
    "build_witness",
    "standard_isometry_witness",
    "toeplitz_candidate_family",
    "evaluate_witness",
]


@dataclass(frozen=True)
class WitnessReport:
    eta1: float
    eta2: float
    valid: bool
    eta1_interior: float | None = None


@dataclass(frozen=True)
class WitnessFamily:
    elements: tuple
    backend: str  # "matrix" | "symbolic"
    report: WitnessReport
    degree: int | None = None
    interior_mask: Operator | None = None

    @property
    def n(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class CandidateFamily:
    """Candidate elements a_1..a_m with their obstruction statistics."""

    elements: tuple
    t0: float
    k: float
    norms_exact: bool = True


def _as_family(elements) -> tuple:
    family = tuple(elements)
    if not family:
        raise EmptyFamily("family contains no elements")
    return family

def _require_witness_size(family: tuple):
    if len(family) < 2:
        raise EmptyFamily("a witness family needs at least 2 elements")


def _matrix_family(elements) -> tuple[Operator, ...]:
    family = _as_family(elements)
    dim = family[0].dim
    for b in family:
        if not isinstance(b, Operator):
            raise TypeError("expected a matrix family")
        if b.dim != dim:
            raise DimensionMismatch(f"dim {b.dim} vs {dim}")
    return family


def _symbolic_family(elements) -> tuple[StarPolynomial, ...]:
    family = _as_family(elements)
    n_gen = family[0].n
    for b in family:
        if not isinstance(b, StarPolynomial):
            raise TypeError("expected a symbolic family")
        if b.n != n_gen:
            raise GeneratorMismatch(f"{b.n} generators vs {n_gen}")
    return family


def _is_valid(eta1: float, eta2: float, tol: float) -> bool:
    # eta2 must sit strictly below 1; the tol guard band keeps rounding at
    # the critical boundary (e.g. an exactly-critical family with eta2 = 1)
    # from flipping the verdict
    return eta1 <= tol and eta2 < 1.0 - tol


def check_witness(
    family, tol: float = 1e-10, interior_mask: Operator | None = None
) -> WitnessFamily:
    """Validate a matrix family against the witness conditions.

    With ``interior_mask`` p, additionally reports
    eta1_interior = ||(sum b_i* b_i - 1) p||, the defect away from the
    truncation boundary.  Validity always uses the unmasked eta1.
    """
    family = _matrix_family(family)
    _require_witness_size(family)
    dim = family[0].dim
    sum_star = np.zeros((dim, dim), dtype=complex)
    sum_range = np.zeros((dim, dim), dtype=complex)
    for b in family:
        sum_star = sum_star + b.adjoint().entries @ b.entries
        sum_range = sum_range + b.entries @ b.adjoint().entries
    defect = sum_star - np.eye(dim)
    eta1 = op_norm(defect)
    eta2 = op_norm(sum_range)
    eta1_interior = None
    if interior_mask is not None:
        if interior_mask.dim != dim:
            raise DimensionMismatch("interior mask dimension differs from the family")
        eta1_interior = op_norm(defect @ interior_mask.entries)
    report = WitnessReport(eta1, eta2, _is_valid(eta1, eta2, tol), eta1_interior)
    return WitnessFamily(family, "matrix", report, interior_mask=interior_mask)


def check_witness_symbolic(family, tol: float = 1e-10, depth: int = 4) -> WitnessFamily:
    """Validate a symbolic family.

    eta1 comes from the exact normal form (largest coefficient of
    sum b_i* b_i - 1).  eta2 is the norm of sum b_i b_i* evaluated on the
    Fock truncation of the given depth: a lower bound that grows with
    depth, and exact whenever that element is diagonal in the word basis.
    """
    family = _symbolic_family(family)
    _require_witness_size(family)
    n_gen = family[0].n
    sum_star = cuntz.zero_poly(n_gen)
    sum_range = cuntz.zero_poly(n_gen)
    for b in family:
        sum_star = cuntz.add(sum_star, cuntz.multiply(cuntz.adjoint(b), b))
        sum_range = cuntz.add(sum_range, cuntz.multiply(b, cuntz.adjoint(b)))
    eta1 = cuntz.coefficient_norm(cuntz.add(sum_star, -cuntz.unit(n_gen)))
    eta2 = op_norm(cuntz.evaluate(sum_range, fock_truncation(n_gen, depth)))
    report = WitnessReport(eta1, eta2, _is_valid(eta1, eta2, tol))
    degree = max(b.degree for b in family)
    return WitnessFamily(family, "symbolic", report, degree=degree)


def candidate_stats(elements) -> CandidateFamily:
    """Compute t0 = ||1 - sum(a_i* a_i - a_i a_i*)|| and k = ||sum a_i* a_i||."""
    family = _as_family(elements)
    if isinstance(family[0], StarPolynomial):
        family = _symbolic_family(family)
        n_gen = family[0].n
        sum_star = cuntz.zero_poly(n_gen)
        diff = cuntz.unit(n_gen)
        for a in family:
            star = cuntz.multiply(cuntz.adjoint(a), a)
            ran = cuntz.multiply(a, cuntz.adjoint(a))
            sum_star = cuntz.add(sum_star, star)
            diff = cuntz.add(diff, cuntz.add(-star, ran))
        t0_est = cuntz.symbolic_norm(diff)
        k_est = cuntz.symbolic_norm(sum_star)
        return CandidateFamily(family, t0_est.value, k_est.value, t0_est.exact and k_est.exact)
    family = _matrix_family(family)
    dim = family[0].dim
    sum_star = np.zeros((dim, dim), dtype=complex)
    diff = np.eye(dim, dtype=complex)
    for a in family:
        star = a.adjoint().entries @ a.entries
        ran = a.entries @ a.adjoint().entries
        sum_star = sum_star + star
        diff = diff - star + ran
    return CandidateFamily(family, op_norm(diff), op_norm(sum_star), True)


def build_witness(candidates, tol: float = 1e-10) -> WitnessFamily:
    """Constructive route from candidates a_1..a_m to a witness b_1..b_{m+1}.

    Requires t0 < 1 (raises TraceObstruction otherwise; the threshold is
    1 - tol so that rounding noise cannot slip past an obstruction that
    holds exactly).  For symbolic candidates the square root is taken
    coefficient-wise on the prefix tree and so requires k - sum a_i* a_i to
    be a recognized combination of word projections.
    """
    stats = candidate_stats(candidates)
    if stats.t0 >= 1.0 - tol:
        raise TraceObstruction(stats.t0)
    if stats.k <= tol:
        raise EmptyFamily("candidate family is numerically zero")
    scale = 1.0 / math.sqrt(stats.k)
    family = stats.elements
    if isinstance(family[0], StarPolynomial):
        n_gen = family[0].n
        sum_star = cuntz.zero_poly(n_gen)
        for a in family:
            sum_star = cuntz.add(sum_star, cuntz.multiply(cuntz.adjoint(a), a))
        gap = cuntz.add(cuntz.multiply_scalar(cuntz.unit(n_gen), stats.k), -sum_star)
        extra = cuntz.diagonal_sqrt(gap, tol=max(tol, 1e-12))
        elements = [cuntz.multiply_scalar(a, scale) for a in family]
        elements.append(cuntz.multiply_scalar(extra, scale))
        sum_star_b = cuntz.zero_poly(n_gen)
        sum_range_b = cuntz.zero_poly(n_gen)
        for b in elements:
            sum_star_b = cuntz.add(sum_star_b, cuntz.multiply(cuntz.adjoint(b), b))
            sum_range_b = cuntz.add(sum_range_b, cuntz.multiply(b, cuntz.adjoint(b)))
        eta1 = cuntz.coefficient_norm(cuntz.add(sum_star_b, -cuntz.unit(n_gen)))
        eta2 = cuntz.symbolic_norm(sum_range_b).value
        report = WitnessReport(eta1, eta2, _is_valid(eta1, eta2, tol))
        degree = max(b.degree for b in elements)
        return WitnessFamily(tuple(elements), "symbolic", report, degree=degree)
    dim = family[0].dim
    sum_star = np.zeros((dim, dim), dtype=complex)
    for a in family:
        sum_star = sum_star + a.adjoint().entries @ a.entries
    gap = Operator(stats.k * np.eye(dim) - sum_star)
    extra = psd_sqrt(gap, tol=max(tol, 1e-9))
    elements = [scale * a for a in family] + [scale * extra]
    return check_witness(elements, tol=tol)


def standard_isometry_witness(n: int, depth: int | None = None) -> WitnessFamily:
    """The n-generator witness b_i = s_i / sqrt(n).

    Symbolically (depth None) the defining relations give the report
    directly: eta1 = 0 and eta2 = 1/n.  With a depth, the family is
    realized on the Fock truncation and checked numerically; eta1 then
    equals 1 at the boundary while the interior defect vanishes.
    """
    if n < 2:
        raise EmptyFamily("need at least two isometries")
    scale = 1.0 / math.sqrt(n)
    if depth is None:
        elements = tuple(cuntz.multiply_scalar(cuntz.gen(n, i), scale) for i in range(1, n + 1))
        report = WitnessReport(eta1=0.0, eta2=1.0 / n, valid=True)
        return WitnessFamily(elements, "symbolic", report, degree=1)
    isometries = cuntz.truncated_isometries(n, depth)
    elements = [scale * v for v in isometries]
    mask = interior_projection(fock_truncation(n, depth), depth - 1)
    checked = check_witness(elements, interior_mask=mask)
    return WitnessFamily(checked.elements, "matrix", checked.report, degree=1, interior_mask=mask)


def toeplitz_candidate_family(J: int) -> list[StarPolynomial]:
    """Symbolic candidates over two generators reaching t0 = 1/J, k = 3.

    a_1 = s_1, a_2 = s_2, and for j = 1..J

        a_{2+j} = sqrt((J-j+1)/J) * s_1^(j-1) q (s_1*)^j,

    with q the vacuum projection.  The self-adjoint commutators telescope:
    1 - sum(a_i* a_i - a_i a_i*) = -(1/J) sum_j q_j where q_j projects onto
    the word 1^j.
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    n_gen = 2
    q = cuntz.vacuum_projection(n_gen)
    family = [cuntz.gen(n_gen, 1), cuntz.gen(n_gen, 2)]
    for j in range(1, J + 1):
        lam = (J - j + 1) / J
        left = cuntz.word_isometry(n_gen, (1,) * (j - 1))
        right = cuntz.adjoint(cuntz.word_isometry(n_gen, (1,) * j))
        a = cuntz.multiply(cuntz.multiply(left, q), right)
        family.append(cuntz.multiply_scalar(a, math.sqrt(lam)))
    return family


def evaluate_witness(witness: WitnessFamily, depth: int, tol: float = 1e-10) -> WitnessFamily:
    """Realize a symbolic witness on the Fock truncation of a given depth.

    The interior mask is the projection onto words of length
    <= depth - degree, on which the truncated matrices multiply exactly
    like their symbolic counterparts.
    """
    if witness.backend != "symbolic":
        raise TypeError("can only evaluate a symbolic witness")
    trunc = fock_truncation(witness.elements[0].n, depth)
    elements = [cuntz.evaluate(b, trunc) for b in witness.elements]
    degree = witness.degree or max(b.degree for b in witness.elements)
    mask = None
    if degree <= depth:
        mask = interior_projection(trunc, depth - degree)
    checked = check_witness(elements, tol=tol, interior_mask=mask)
    return WitnessFamily(
        checked.elements, "matrix", checked.report, degree=degree, interior_mask=mask
    )
