"""Exact symbolic arithmetic for n isometries with orthogonal ranges.

The algebra is generated by s_1..s_n subject to s_i* s_j = delta_ij (the
relation sum_i s_i s_i* = 1 is deliberately NOT imposed).  Every element is
a finite complex combination of normal-form monomials s_mu s_nu* indexed by
pairs of words over {1..n}, and two elements are equal iff their normal
forms match coefficient by coefficient.

Products reduce by prefix overlap:

    (s_a s_nu*)(s_mu s_b*) = s_(a+rest) s_b*   if mu = nu + rest,
                           = s_a s_(b+rest)*   if nu = mu + rest,
                           = 0                 otherwise.

The module also carries the finite-dimensional picture: the truncated Fock
space spanned by words of length <= L, on which each generator acts as the
shift w -> iw (killing words of maximal length).  Evaluation there turns
symbolic identities into concrete matrices, exactly on the interior and
with controlled defects at the length-L boundary.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

import numpy as np

from .errors import (
    GeneratorMismatch,
    IndexOutOfRange,
    NotHermitian,
    NotPositive,
    StarSyntaxError,
    SymbolicSqrtUnsupported,
)
from .linalg import Operator

__all__ = [
    "Word",
    "StarPolynomial",
    "FockTruncation",
    "unit",
    "gen",
    "word_isometry",
    "vacuum_projection",
    "add",
    "multiply",
    "adjoint",
    "commutator",
    "equals",
    "parse_star_poly",
    "poly_to_string",
    "fock_truncation",
    "truncated_isometries",
    "interior_projection",
    "evaluate",
    "evaluate_expression",
    "word_to_string",
    "word_from_string",
    "NormEstimate",
    "symbolic_norm",
    "diagonal_sqrt",
]

Word = tuple[int, ...]

# Coefficients at or below this modulus are dropped from normal forms.
PRUNE_TOL = 1e-14


def word_to_string(word: Word) -> str:
    return "".join(str(letter) for letter in word)


def word_from_string(text: str) -> Word:
    if text and not text.isdigit():
        raise ValueError(f"word string must be generator digits, got {text!r}")
    return tuple(int(ch) for ch in text)


def _check_word(word: Word, n: int) -> Word:
    word = tuple(int(g) for g in word)
    for g in word:
        if not 1 <= g <= n:
            raise IndexOutOfRange(f"generator index {g} outside 1..{n}")
    return word


class StarPolynomial:
    """Normal-form element: finite map (mu, nu) -> coefficient for s_mu s_nu*."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms=None):
        if n < 1:
            raise ValueError("need at least one generator")
        self.n = int(n)
        items = terms.items() if isinstance(terms, dict) else (terms or [])
        merged: dict[tuple[Word, Word], complex] = {}
        for (mu, nu), coef in items:
            key = (_check_word(mu, self.n), _check_word(nu, self.n))
            merged[key] = merged.get(key, 0j) + complex(coef)
        self._terms = {k: c for k, c in merged.items() if abs(c) > PRUNE_TOL}

    @property
    def terms(self) -> dict[tuple[Word, Word], complex]:
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[tuple[Word, Word], complex]]:
        """Terms in length-then-lexicographic order of (mu, nu): the serialization order."""
        return sorted(
            self._terms.items(),
            key=lambda item: ((len(item[0][0]), item[0][0]), (len(item[0][1]), item[0][1])),
        )

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            return 0
        return max(max(len(mu), len(nu)) for mu, nu in self._terms)

    def coefficient(self, mu: Word, nu: Word) -> complex:
        return self._terms.get((tuple(mu), tuple(nu)), 0j)

    # arithmetic sugar; the named module functions hold the actual logic
    def __add__(self, other):
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, StarPolynomial):
            return NotImplemented
        return add(self, multiply_scalar(other, -1))

    def __mul__(self, other):
        if isinstance(other, StarPolynomial):
            return multiply(self, other)
        return multiply_scalar(self, other)

    def __rmul__(self, scalar):
        return multiply_scalar(self, scalar)

    def __neg__(self):
        return multiply_scalar(self, -1)

    def adjoint(self) -> "StarPolynomial":
        return adjoint(self)

    def __repr__(self) -> str:
        return poly_to_string(self)


def _require_same_n(p: StarPolynomial, q: StarPolynomial):
    if p.n != q.n:
        raise GeneratorMismatch(f"{p.n} generators vs {q.n}")


def unit(n: int) -> StarPolynomial:
    return StarPolynomial(n, {((), ()): 1.0})


def zero_poly(n: int) -> StarPolynomial:
    return StarPolynomial(n, {})


def gen(n: int, i: int) -> StarPolynomial:
    """The generator s_i."""
    return StarPolynomial(n, {(_check_word((i,), n), ()): 1.0})


def word_isometry(n: int, word: Word) -> StarPolynomial:
    """s_w for a word w (the empty word gives the unit)."""
    return StarPolynomial(n, {(_check_word(word, n), ()): 1.0})


def vacuum_projection(n: int) -> StarPolynomial:
    """1 - sum_i s_i s_i*, the rank-one projection onto the empty word."""
    terms = {((), ()): 1.0 + 0j}
    for i in range(1, n + 1):
        terms[((i,), (i,))] = -1.0 + 0j
    return StarPolynomial(n, terms)


def add(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    _require_same_n(p, q)
    terms = dict(p._terms)
    for key, coef in q._terms.items():
        terms[key] = terms.get(key, 0j) + coef
    return StarPolynomial(p.n, terms)


def multiply_scalar(p: StarPolynomial, scalar) -> StarPolynomial:
    scalar = complex(scalar)
    return StarPolynomial(p.n, {key: coef * scalar for key, coef in p._terms.items()})


def multiply(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    """Normal form of the product, by prefix-overlap reduction of s_nu* s_mu."""
    _require_same_n(p, q)
    terms: dict[tuple[Word, Word], complex] = {}
    for (alpha, nu), c1 in p._terms.items():
        for (mu, beta), c2 in q._terms.items():
            if len(nu) <= len(mu):
                if mu[: len(nu)] != nu:
                    continue
                key = (alpha + mu[len(nu):], beta)
            else:
                if nu[: len(mu)] != mu:
                    continue
                key = (alpha, beta + nu[len(mu):])
            terms[key] = terms.get(key, 0j) + c1 * c2
    return StarPolynomial(p.n, terms)


def adjoint(p: StarPolynomial) -> StarPolynomial:
    return StarPolynomial(
        p.n, {(nu, mu): coef.conjugate() for (mu, nu), coef in p._terms.items()}
    )


def commutator(p: StarPolynomial, q: StarPolynomial) -> StarPolynomial:
    return add(multiply(p, q), multiply_scalar(multiply(q, p), -1))


def equals(p: StarPolynomial, q: StarPolynomial, tol: float = 1e-12) -> bool:
    """Coefficient-wise comparison of normal forms."""
    _require_same_n(p, q)
    for key in p._terms.keys() | q._terms.keys():
        if abs(p._terms.get(key, 0j) - q._terms.get(key, 0j)) > tol:
            return False
    return True


def coefficient_norm(p: StarPolynomial) -> float:
    """Largest coefficient modulus of the normal form (0 for the zero element)."""
    if not p._terms:
        return 0.0
    return max(abs(c) for c in p._terms.values())


# ---------------------------------------------------------------------------
# Expression parser
#
# expr   := ['+'|'-'] term (('+'|'-') term)*
# term   := [scalar '*'] factor+ | scalar
# factor := 's' digits ['*'] | '1' | '(' expr ')'
# scalar := float | '(' float ('+'|'-') float 'i' ')'
#
# Juxtaposition of factors is the product; a postfix '*' on a generator is
# the adjoint.  The leading sign is accepted as a convenience.
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<gen>s\d+)|(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+(?:[eE][+-]?\d+)?)|(?P<im>i)|(?P<op>[()+\-*]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise StarSyntaxError(f"unexpected character {text[where]!r}", where)
        if match.lastgroup == "gen":
            tokens.append(("gen", match.group("gen"), match.start("gen")))
        elif match.lastgroup == "num":
            tokens.append(("num", match.group("num"), match.start("num")))
        elif match.lastgroup == "im":
            tokens.append(("im", "i", match.start("im")))
        else:
            tokens.append((match.group("op"), match.group("op"), match.start("op")))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser producing a small AST of tuples.

    Nodes: ("scalar", c), ("gen", i), ("adj", node), ("one",),
           ("mul", [nodes]), ("sum", [(sign, node), ...]).
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str):
        token = self.advance()
        if token[0] != kind:
            raise StarSyntaxError(f"expected {kind!r}, found {token[1]!r}", token[2])
        return token

    def parse(self):
        node = self.parse_expr()
        token = self.peek()
        if token[0] != "end":
            raise StarSyntaxError(f"trailing input {token[1]!r}", token[2])
        return node

    def parse_expr(self):
        parts = []
        sign = 1.0
        if self.peek()[0] in "+-":
            sign = -1.0 if self.advance()[0] == "-" else 1.0
        parts.append((sign, self.parse_term()))
        while self.peek()[0] in "+-":
            sign = -1.0 if self.advance()[0] == "-" else 1.0
            parts.append((sign, self.parse_term()))
        if len(parts) == 1 and parts[0][0] == 1.0:
            return parts[0][1]
        return ("sum", parts)

    def _at_complex_scalar(self) -> bool:
        if self.peek()[0] != "(":
            return False
        kinds = [self.peek(k)[0] for k in range(1, 6)]
        return (
            kinds[0] == "num"
            and kinds[1] in "+-"
            and kinds[2] == "num"
            and kinds[3] == "im"
            and kinds[4] == ")"
        )

    def _at_scalar(self) -> bool:
        token = self.peek()
        if token[0] == "num" and token[1] != "1":
            return True
        if token[0] == "num" and token[1] == "1":
            # "1" is the unit factor unless written like a scalar multiple "1*..."
            # or standing alone as a term; both readings denote the same element.
            return False
        return self._at_complex_scalar()

    def parse_scalar(self) -> complex:
        if self.peek()[0] == "num":
            return complex(float(self.advance()[1]))
        self.expect("(")
        re_tok = self.expect("num")
        sign_tok = self.advance()
        if sign_tok[0] not in "+-":
            raise StarSyntaxError("expected '+' or '-' in complex scalar", sign_tok[2])
        im_tok = self.expect("num")
        self.expect("im")
        self.expect(")")
        im = float(im_tok[1])
        if sign_tok[0] == "-":
            im = -im
        return complex(float(re_tok[1]), im)

    def parse_term(self):
        scalar = None
        if self._at_scalar():
            scalar = self.parse_scalar()
            if self.peek()[0] == "*":
                self.advance()
            else:
                return ("scalar", scalar)  # bare scalar term
        factors = [self.parse_factor()]
        while self.peek()[0] in ("gen", "num", "("):
            factors.append(self.parse_factor())
        node = factors[0] if len(factors) == 1 else ("mul", factors)
        if scalar is None:
            return node
        return ("mul", [("scalar", scalar), node])

    def parse_factor(self):
        token = self.peek()
        if token[0] == "gen":
            self.advance()
            index = int(token[1][1:])
            node = ("gen", index, token[2])
            if self.peek()[0] == "*":
                self.advance()
                return ("adj", node)
            return node
        if token[0] == "num":
            if token[1] == "1":
                self.advance()
                return ("one",)
            raise StarSyntaxError(f"number {token[1]!r} is not a factor", token[2])
        if token[0] == "(":
            if self._at_complex_scalar():
                return ("scalar", self.parse_scalar())
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise StarSyntaxError(f"expected a factor, found {token[1]!r}", token[2])


def _ast_to_poly(node, n: int) -> StarPolynomial:
    kind = node[0]
    if kind == "scalar":
        return multiply_scalar(unit(n), node[1])
    if kind == "one":
        return unit(n)
    if kind == "gen":
        index, where = node[1], node[2]
        if not 1 <= index <= n:
            raise IndexOutOfRange(f"generator index {index} outside 1..{n} (at position {where})")
        return gen(n, index)
    if kind == "adj":
        return adjoint(_ast_to_poly(node[1], n))
    if kind == "mul":
        result = unit(n)
        for factor in node[1]:
            result = multiply(result, _ast_to_poly(factor, n))
        return result
    if kind == "sum":
        result = zero_poly(n)
        for sign, part in node[1]:
            result = add(result, multiply_scalar(_ast_to_poly(part, n), sign))
        return result
    raise ValueError(f"unknown AST node {kind!r}")


def parse_star_poly(text: str, n: int) -> StarPolynomial:
    """Parse an expression into its normal form."""
    return _ast_to_poly(_Parser(text).parse(), n)


def _format_float(value: float) -> str:
    out = repr(float(value))
    return out


def _format_coefficient(coef: complex) -> tuple[str, str]:
    """Return (sign, magnitude-text) with sign in {'+', '-'}; '' marks coefficient one."""
    if abs(coef.imag) <= PRUNE_TOL:
        real = coef.real
        sign = "-" if real < 0 else "+"
        mag = abs(real)
        if abs(mag - 1.0) <= PRUNE_TOL:
            return sign, ""
        return sign, _format_float(mag)
    sign = "+"
    if coef.real < 0 or (coef.real == 0 and coef.imag < 0):
        sign = "-"
        coef = -coef
    re_part, im_part = coef.real, coef.imag
    im_sign = "+" if im_part >= 0 else "-"
    return sign, f"({_format_float(re_part)}{im_sign}{_format_float(abs(im_part))}i)"


def poly_to_string(p: StarPolynomial) -> str:
    """Canonical textual form; parsing it back reproduces the polynomial."""
    if p.is_zero:
        return "0"
    pieces = []
    for (mu, nu), coef in p.sorted_terms():
        factors = [f"s{g}" for g in mu] + [f"s{g}*" for g in reversed(nu)]
        sign, mag = _format_coefficient(coef)
        if not factors:
            body = mag if mag else "1"
        elif mag:
            body = mag + "*" + " ".join(factors)
        else:
            body = " ".join(factors)
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Truncated Fock representation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FockTruncation:
    """Words of length <= depth over {1..n}, in length-then-lex order."""

    n: int
    depth: int
    words: tuple[Word, ...]
    word_index: dict

    @property
    def dimension(self) -> int:
        return len(self.words)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(word_to_string(w) for w in self.words)


def fock_truncation(n: int, depth: int) -> FockTruncation:
    if n < 1 or depth < 0:
        raise ValueError("need n >= 1 and depth >= 0")
    words = []
    for length in range(depth + 1):
        words.extend(itertools.product(range(1, n + 1), repeat=length))
    words = tuple(words)
    word_index = {w: k for k, w in enumerate(words)}
    if n > 1:
        assert len(words) == (n ** (depth + 1) - 1) // (n - 1)
    return FockTruncation(n, depth, words, word_index)


def truncated_isometries(n: int, depth: int) -> list[Operator]:
    """The generators as matrices: v_i maps word w to iw, length-depth words to 0."""
    trunc = fock_truncation(n, depth)
    out = []
    for i in range(1, n + 1):
        mat = np.zeros((trunc.dimension, trunc.dimension), dtype=complex)
        for w in trunc.words:
            if len(w) <= depth - 1:
                mat[trunc.word_index[(i,) + w], trunc.word_index[w]] = 1.0
        out.append(Operator(mat, trunc.labels))
    return out


def interior_projection(trunc: FockTruncation, max_length: int) -> Operator:
    """Diagonal projection onto words of length <= max_length."""
    diag = np.array([1.0 if len(w) <= max_length else 0.0 for w in trunc.words], dtype=complex)
    return Operator(np.diag(diag), trunc.labels)


def evaluate(p: StarPolynomial, trunc: FockTruncation) -> Operator:
    """Matrix of a normal form: each s_mu s_nu* becomes v_mu v_nu*.

    For a single normal monomial the product of truncated shifts has entries
    E[mu+w, nu+w] over all words w with max(|mu|, |nu|) + |w| <= depth.
    """
    if p.n != trunc.n:
        raise GeneratorMismatch(f"{p.n} generators vs truncation over {trunc.n}")
    mat = np.zeros((trunc.dimension, trunc.dimension), dtype=complex)
    for (mu, nu), coef in p.sorted_terms():
        room = trunc.depth - max(len(mu), len(nu))
        for w in trunc.words:
            if len(w) > room:
                continue
            mat[trunc.word_index[mu + w], trunc.word_index[nu + w]] += coef
    return Operator(mat, trunc.labels)


def _ast_to_matrix(node, trunc: FockTruncation, isometries: list[Operator]) -> Operator:
    dim = trunc.dimension
    kind = node[0]
    if kind == "scalar":
        return Operator(np.eye(dim, dtype=complex) * node[1], trunc.labels)
    if kind == "one":
        return Operator(np.eye(dim, dtype=complex), trunc.labels)
    if kind == "gen":
        index = node[1]
        if not 1 <= index <= trunc.n:
            raise IndexOutOfRange(f"generator index {index} outside 1..{trunc.n}")
        return isometries[index - 1]
    if kind == "adj":
        return _ast_to_matrix(node[1], trunc, isometries).adjoint()
    if kind == "mul":
        result = Operator(np.eye(dim, dtype=complex), trunc.labels)
        for factor in node[1]:
            result = result @ _ast_to_matrix(factor, trunc, isometries)
        return result
    if kind == "sum":
        total = Operator(np.zeros((dim, dim), dtype=complex), trunc.labels)
        for sign, part in node[1]:
            total = total + sign * _ast_to_matrix(part, trunc, isometries)
        return total
    raise ValueError(f"unknown AST node {kind!r}")


def evaluate_expression(text: str, trunc: FockTruncation) -> Operator:
    """Evaluate an expression by composing truncated matrices, without
    normalizing first.

    This differs from ``evaluate(parse_star_poly(text, n), trunc)`` exactly
    at the truncation boundary: for instance "s1* s1" normalizes to 1, but
    the composition v1* v1 is the projection onto words of length < depth.
    """
    isometries = truncated_isometries(trunc.n, trunc.depth)
    return _ast_to_matrix(_Parser(text).parse(), trunc, isometries)


# ---------------------------------------------------------------------------
# Diagonal elements: exact norms and square roots
#
# A normal form whose every term has mu == nu acts diagonally on the word
# basis; the eigenvalue at word u is the sum of coefficients over prefixes
# of u.  That makes the C*-norm and positive square root finitely
# computable: eigenvalues change only at the (finitely many) support words.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormEstimate:
    value: float
    exact: bool


def _diagonal_coefficients(p: StarPolynomial) -> dict[Word, complex] | None:
    coeffs: dict[Word, complex] = {}
    for (mu, nu), coef in p._terms.items():
        if mu != nu:
            return None
        coeffs[mu] = coef
    return coeffs


def _prefix_closure(words) -> list[Word]:
    closure = {()}
    for w in words:
        for k in range(1, len(w) + 1):
            closure.add(w[:k])
    return sorted(closure, key=lambda w: (len(w), w))


def _eigenvalue_profile(coeffs: dict[Word, complex]) -> dict[Word, complex]:
    """Eigenvalue at each prefix-closure node; constant on subtrees below."""
    profile: dict[Word, complex] = {}
    for node in _prefix_closure(coeffs.keys()):
        parent = profile.get(node[:-1], 0j) if node else 0j
        profile[node] = parent + coeffs.get(node, 0j)
    return profile


def symbolic_norm(p: StarPolynomial) -> NormEstimate:
    """Operator norm of a symbolic element.

    Exact for diagonal elements (every term s_w s_w*): the norm is the
    largest eigenvalue modulus over the prefix tree.  Otherwise returns the
    coefficient-sum upper bound (each monomial is a partial isometry).
    """
    if p.is_zero:
        return NormEstimate(0.0, True)
    coeffs = _diagonal_coefficients(p)
    if coeffs is None:
        return NormEstimate(float(sum(abs(c) for c in p._terms.values())), False)
    profile = _eigenvalue_profile(coeffs)
    return NormEstimate(max(abs(v) for v in profile.values()), True)


def diagonal_sqrt(p: StarPolynomial, tol: float = 1e-9) -> StarPolynomial:
    """Positive square root of a diagonal element, coefficient by coefficient.

    Works on real combinations of the projections s_w s_w* whose eigenvalue
    profile is nonnegative (eigenvalues in [-tol, 0) are clamped to zero).
    Raises SymbolicSqrtUnsupported for non-diagonal input, NotHermitian for
    non-real profiles, NotPositive when an eigenvalue falls below -tol.
    """
    coeffs = _diagonal_coefficients(p)
    if coeffs is None:
        raise SymbolicSqrtUnsupported(
            "square root only supported for combinations of word projections"
        )
    profile = _eigenvalue_profile(coeffs)
    for node, value in profile.items():
        if abs(value.imag) > tol:
            raise NotHermitian(f"eigenvalue {value!r} at word {word_to_string(node)!r} is not real")
        if value.real < -tol:
            raise NotPositive(
                f"eigenvalue {value.real!r} at word {word_to_string(node)!r} is negative"
            )
    roots = {node: math.sqrt(max(value.real, 0.0)) for node, value in profile.items()}
    terms: dict[tuple[Word, Word], complex] = {}
    for node, value in roots.items():
        parent = roots.get(node[:-1], 0.0) if node else 0.0
        delta = value - parent if node else value
        terms[(node, node)] = complex(delta)
    return StarPolynomial(p.n, terms)
