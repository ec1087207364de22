"""JSON wire formats shared by the library, the CLI, and the test suite.

Matrices: {"dim": d, "entries": [[[re, im], ...], ...]} row-major, with an
optional "labels" list of word strings ("" is the vacuum).

Polynomials: {"n": 2, "terms": [{"mu": "12", "nu": "", "re": 0.5, "im": 0.0},
...]} with words written one generator digit per letter (which limits the
wire format, not the library, to n <= 9).

Witnesses: {"backend": "matrix"|"symbolic", "n": count, "elements": [...],
"report": {"eta1": ..., "eta2": ..., "valid": ...}} plus the optional keys
"degree" and "eta1_interior" used to reconstruct interior masks.

All writers emit keys in a fixed order and floats in shortest round-trip
form, so identical objects serialize byte-identically.
"""

from __future__ import annotations

import json

import numpy as np

from .cuntz import StarPolynomial, word_from_string, word_to_string
from .linalg import Operator
from .witness import WitnessFamily, WitnessReport
from .decompose import CommutatorPair, DecompositionResult, SolverInfo, VerificationReport
from .tracedist import CommutatorSpanFamily, DistanceEstimate, commutator_span_family

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "poly_to_json",
    "poly_from_json",
    "element_to_json",
    "element_from_json",
    "witness_to_json",
    "witness_from_json",
    "family_to_json",
    "family_from_json",
    "decomposition_to_json",
    "decomposition_from_json",
    "verification_to_json",
    "estimate_to_json",
    "dumps",
]


def dumps(obj) -> str:
    """Deterministic serialization: insertion order, 2-space indent."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def matrix_to_json(op: Operator) -> dict:
    out = {
        "dim": op.dim,
        "entries": [
            [[float(z.real), float(z.imag)] for z in row] for row in op.entries
        ],
    }
    if op.basis_labels is not None:
        out["labels"] = list(op.basis_labels)
    return out


def matrix_from_json(data: dict) -> Operator:
    if not isinstance(data, dict) or "entries" not in data:
        raise ValueError("matrix JSON needs an 'entries' field")
    entries = np.array(
        [[complex(cell[0], cell[1]) for cell in row] for row in data["entries"]],
        dtype=complex,
    )
    dim = data.get("dim")
    if dim is not None and int(dim) != entries.shape[0]:
        raise ValueError(f"declared dim {dim} but {entries.shape[0]} rows")
    labels = data.get("labels")
    return Operator(entries, tuple(labels) if labels is not None else None)


def poly_to_json(p: StarPolynomial) -> dict:
    if p.n > 9:
        raise ValueError("polynomial JSON writes one digit per letter; needs n <= 9")
    return {
        "n": p.n,
        "terms": [
            {
                "mu": word_to_string(mu),
                "nu": word_to_string(nu),
                "re": float(coef.real),
                "im": float(coef.imag),
            }
            for (mu, nu), coef in p.sorted_terms()
        ],
    }


def poly_from_json(data: dict) -> StarPolynomial:
    if not isinstance(data, dict) or "n" not in data:
        raise ValueError("polynomial JSON needs an 'n' field")
    terms = {}
    for term in data.get("terms", []):
        key = (word_from_string(term["mu"]), word_from_string(term["nu"]))
        terms[key] = terms.get(key, 0j) + complex(term["re"], term.get("im", 0.0))
    return StarPolynomial(int(data["n"]), terms)


def element_to_json(element) -> dict:
    if isinstance(element, StarPolynomial):
        return poly_to_json(element)
    return matrix_to_json(element)


def element_from_json(data: dict):
    if "terms" in data or ("n" in data and "entries" not in data):
        return poly_from_json(data)
    return matrix_from_json(data)


def _report_to_json(report: WitnessReport) -> dict:
    out = {"eta1": report.eta1, "eta2": report.eta2, "valid": report.valid}
    if report.eta1_interior is not None:
        out["eta1_interior"] = report.eta1_interior
    return out


def witness_to_json(witness: WitnessFamily) -> dict:
    out = {
        "backend": witness.backend,
        "n": witness.n,
        "elements": [element_to_json(b) for b in witness.elements],
        "report": _report_to_json(witness.report),
    }
    if witness.degree is not None:
        out["degree"] = witness.degree
    return out


def _mask_from_labels(labels: tuple[str, ...] | None, degree: int | None) -> Operator | None:
    if labels is None or degree is None:
        return None
    depth = max(len(w) for w in labels)
    if degree > depth:
        return None
    diag = np.array([1.0 if len(w) <= depth - degree else 0.0 for w in labels], dtype=complex)
    return Operator(np.diag(diag), labels)


def witness_from_json(data: dict) -> WitnessFamily:
    backend = data.get("backend")
    if backend not in ("matrix", "symbolic"):
        raise ValueError(f"unknown witness backend {backend!r}")
    elements = tuple(element_from_json(e) for e in data.get("elements", []))
    if not elements:
        raise ValueError("witness JSON has no elements")
    report_data = data.get("report", {})
    report = WitnessReport(
        float(report_data.get("eta1", 0.0)),
        float(report_data.get("eta2", 0.0)),
        bool(report_data.get("valid", False)),
        report_data.get("eta1_interior"),
    )
    degree = data.get("degree")
    mask = None
    if backend == "matrix":
        mask = _mask_from_labels(elements[0].basis_labels, degree)
    return WitnessFamily(elements, backend, report, degree=degree, interior_mask=mask)


def family_to_json(family: CommutatorSpanFamily) -> dict:
    return {"generators": [matrix_to_json(a) for a in family.generators]}


def family_from_json(data: dict, dim: int | None = None) -> CommutatorSpanFamily:
    generators = [matrix_from_json(g) for g in data.get("generators", [])]
    return commutator_span_family(generators, dim=dim)


def _solver_to_json(info: SolverInfo) -> dict:
    return {
        "method": info.method,
        "iterations": info.iterations,
        "tail_bound": info.tail_bound,
    }


def decomposition_to_json(result: DecompositionResult, a=None, backend: str = "matrix") -> dict:
    """Decomposition report; embeds the decomposed element so that
    verification can run from the report alone."""
    out = {
        "backend": backend,
        "n": len(result.pairs),
        "pairs": [
            {
                "x": element_to_json(pair.x),
                "y": element_to_json(pair.y),
                "self_adjoint": pair.self_adjoint_form,
            }
            for pair in result.pairs
        ],
        "residual_norm": result.residual_norm,
        "residual_interior_norm": result.residual_interior_norm,
        "trace_defect": result.trace_defect,
        "solver": _solver_to_json(result.solver),
    }
    if a is not None:
        out["a"] = element_to_json(a)
    return out


def decomposition_from_json(data: dict) -> tuple[object | None, list[CommutatorPair], dict]:
    """Return (a, pairs, raw) from a decomposition report."""
    pairs = [
        CommutatorPair(
            element_from_json(p["x"]),
            element_from_json(p["y"]),
            bool(p.get("self_adjoint", False)),
        )
        for p in data.get("pairs", [])
    ]
    a = element_from_json(data["a"]) if "a" in data else None
    return a, pairs, data


def verification_to_json(report: VerificationReport) -> dict:
    return {
        "residual_norm": report.residual_norm,
        "residual_interior_norm": report.residual_interior_norm,
        "trace_defect": report.trace_defect,
    }


def estimate_to_json(estimate: DistanceEstimate) -> dict:
    return {
        "coefficients": [float(t) for t in estimate.coefficients],
        "frobenius_residual": estimate.frobenius_residual,
        "opnorm_residual": estimate.opnorm_residual,
    }
