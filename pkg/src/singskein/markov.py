"""Degree-d trace functionals and coordinates in the span of X^a Y^b.

A word with d double points pairs against d+1 functionals.  The k-th
functional resolves k of the double points to positive crossings and
deletes the other d-k, in all possible ways, weights each resulting
crossing-only word by k!(d-k)!, and takes the Markov trace of the sum.
Word classes in the commutative stacking algebra are then coordinates with
respect to the monomials X^a Y^b (a + b = d), where X is the class of a
single double point on two strands and Y that of a double point followed
by a crossing.

Coordinates are extracted by pairing: the explicit representative word for
X^k Y^{d-k} places its factors on disjoint strand pairs
(``t1 t3 ... t(2k-1)`` followed by ``(t s)`` blocks at the remaining odd
indices), the (d+1) x (d+1) matrix of functional values on these words is
cached together with its inverse, and a word's coordinate vector solves
against its trace vector.  Columns are ordered by descending X-exponent,
so the degree-1 matrix reads [[1, z], [z, (q-1)z + q]] and has determinant
-(z^2 - (q-1)z - q).  The matrix must be nonsingular; a singular one would
indicate an implementation bug and raises immediately.

The one-step deletion/resolution maps act on coordinates as

    g0(X^k Y^{d-k}) = k X^{k-1} Y^{d-k} + z (d-k) X^k Y^{d-k-1}
    g1(X^k Y^{d-k}) = k z X^{k-1} Y^{d-k} + (d-k)((q-1)z + q) X^k Y^{d-k-1}

which the test suite cross-checks against the word-level maps.

Hard caps (degree <= 8, strands <= 12) apply to user-supplied words only;
the internal pairing words live on 2d strands and are exempt.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import factorial
from math import gcd as _int_gcd
from typing import Iterable, Mapping

from .braid import Generator, SIGMA, TAU, SingularBraidWord
from .coeff import (
    ExactDivisionError,
    MultivariatePolynomial,
    QZ,
    RationalFunction,
    poly_divexact,
)
from .hecke import evaluate_word, ocneanu_trace, trace_components
from .linalg import determinant, invert

__all__ = [
    "HARD_MAX_DEGREE",
    "HARD_MAX_STRANDS",
    "CapExceededError",
    "DegreeError",
    "FormalWordSum",
    "TraceVector",
    "ClassPolynomial",
    "MarkovClass",
    "check_caps",
    "desing_delete",
    "desing_resolve",
    "subset_expansion",
    "trace_functional",
    "trace_vector",
    "basis_word",
    "pairing_matrix",
    "markov_class",
    "markov_class_of_sum",
    "g0_apply",
    "g1_apply",
    "class_product",
]

HARD_MAX_DEGREE = 8
HARD_MAX_STRANDS = 12

_ONE = RationalFunction.one(QZ)
_Z = RationalFunction.coordinate(QZ, "z")
_Q = RationalFunction.coordinate(QZ, "q")
_Z_SLIDE = (_Q - _ONE) * _Z + _Q  # value of a resolved-and-closed double point


class CapExceededError(ValueError):
    """Input word exceeds the interactive-size caps."""


class DegreeError(ValueError):
    """Operation undefined at this singular degree."""


def check_caps(
    word: SingularBraidWord,
    max_degree: int | None = None,
    max_strands: int | None = None,
) -> None:
    degree_cap = HARD_MAX_DEGREE if max_degree is None else max_degree
    strand_cap = HARD_MAX_STRANDS if max_strands is None else max_strands
    if not 1 <= degree_cap <= HARD_MAX_DEGREE:
        raise ValueError(f"degree cap must lie in 1..{HARD_MAX_DEGREE}")
    if not 1 <= strand_cap <= HARD_MAX_STRANDS:
        raise ValueError(f"strand cap must lie in 1..{HARD_MAX_STRANDS}")
    if word.degree > degree_cap:
        raise CapExceededError(
            f"word has {word.degree} double points, cap is {degree_cap}"
        )
    if word.strands > strand_cap:
        raise CapExceededError(f"word has {word.strands} strands, cap is {strand_cap}")


@dataclass(frozen=True)
class FormalWordSum:
    """Nonnegative-integer combination of words of one strand count and degree."""

    terms: tuple[tuple[SingularBraidWord, int], ...]

    @classmethod
    def from_terms(
        cls, items: Iterable[tuple[SingularBraidWord, int]]
    ) -> "FormalWordSum":
        merged: dict[SingularBraidWord, int] = {}
        for word, mult in items:
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            merged[word] = merged.get(word, 0) + mult
        words = list(merged)
        if words:
            strands = words[0].strands
            degree = words[0].degree
            for w in words[1:]:
                if w.strands != strands or w.degree != degree:
                    raise ValueError("summands must share strand count and degree")
        ordered = sorted(merged.items(), key=lambda kv: (kv[0].display(),))
        return cls(tuple(ordered))

    def items(self) -> tuple[tuple[SingularBraidWord, int], ...]:
        return self.terms


def _tau_positions(word: SingularBraidWord) -> list[int]:
    return [p for p, g in enumerate(word.letters) if g.kind == TAU]


def desing_delete(word: SingularBraidWord) -> FormalWordSum:
    """Delete each double point in turn and sum the results."""
    positions = _tau_positions(word)
    if not positions:
        raise DegreeError("deletion needs at least one double point")
    out = []
    for p in positions:
        letters = word.letters[:p] + word.letters[p + 1 :]
        out.append((SingularBraidWord(word.strands, letters), 1))
    return FormalWordSum.from_terms(out)


def desing_resolve(word: SingularBraidWord) -> FormalWordSum:
    """Resolve each double point to a positive crossing in turn."""
    positions = _tau_positions(word)
    if not positions:
        raise DegreeError("resolution needs at least one double point")
    out = []
    for p in positions:
        letters = list(word.letters)
        letters[p] = Generator(SIGMA, letters[p].index)
        out.append((SingularBraidWord(word.strands, tuple(letters)), 1))
    return FormalWordSum.from_terms(out)


def subset_expansion(word: SingularBraidWord, k: int) -> FormalWordSum:
    """All ways to resolve k double points and delete the rest, each with
    multiplicity k!(d-k)!: the fully expanded k-th desingularisation."""
    positions = _tau_positions(word)
    d = len(positions)
    if not 0 <= k <= d:
        raise DegreeError(f"k = {k} out of range for degree {d}")
    mult = factorial(k) * factorial(d - k)
    out = []
    for resolved in combinations(positions, k):
        keep = set(resolved)
        letters = []
        for p, g in enumerate(word.letters):
            if g.kind != TAU:
                letters.append(g)
            elif p in keep:
                letters.append(Generator(SIGMA, g.index))
        out.append((SingularBraidWord(word.strands, tuple(letters)), mult))
    return FormalWordSum.from_terms(out)


def trace_functional(word: SingularBraidWord, k: int) -> RationalFunction:
    """Value of the k-th degree-d functional, via the literal expansion."""
    total = RationalFunction.zero(QZ)
    for term, mult in subset_expansion(word, k).items():
        total = total + ocneanu_trace(evaluate_word(term)).scaled(mult)
    return total


@dataclass(frozen=True)
class TraceVector:
    degree: int
    values: tuple[RationalFunction, ...]

    def __post_init__(self):
        if len(self.values) != self.degree + 1:
            raise ValueError("a degree-d trace vector has d+1 entries")


def trace_vector(word: SingularBraidWord) -> TraceVector:
    """All d+1 functional values in one fused pass over the word."""
    d = word.degree
    comps = trace_components(word)
    values = []
    for k, comp in enumerate(comps):
        rf = RationalFunction.from_laurent_terms(QZ, comp)
        values.append(rf.scaled(factorial(k) * factorial(d - k)))
    return TraceVector(d, tuple(values))


def basis_word(d: int, k: int) -> SingularBraidWord:
    """Representative word for X^k Y^{d-k}: k lone double points then d-k
    (double point, crossing) blocks, all on disjoint strand pairs."""
    if not 0 <= k <= d:
        raise DegreeError(f"k = {k} out of range for degree {d}")
    letters: list[Generator] = []
    for block in range(k):
        letters.append(Generator(TAU, 2 * block + 1))
    for block in range(k, d):
        letters.append(Generator(TAU, 2 * block + 1))
        letters.append(Generator(SIGMA, 2 * block + 1))
    return SingularBraidWord(max(2 * d, 1), tuple(letters))


# The only irreducible factors the pairing determinants contain (checked,
# not assumed, when each degree's solver is built): the degree-1 system
# determinant is -(z - q)(z + 1) and higher degrees stay inside this list.
_Z_MINUS_Q = MultivariatePolynomial(QZ, {(0, 1): 1, (1, 0): -1})
_Z_PLUS_1 = MultivariatePolynomial(QZ, {(0, 1): 1, (0, 0): 1})


@dataclass(frozen=True)
class _FactoredSolver:
    """Adjugate rows plus the determinant in factored form.

    Coordinates come out as (adjugate . trace vector)/det; because every
    denominator factor is known and linear, the reduction to canonical form
    is a run of exact trial divisions instead of a general gcd.
    """

    adjugate: tuple[tuple[MultivariatePolynomial, ...], ...]
    zq_power: int
    zp_power: int
    constant: int


_pairing_cache: dict[int, tuple[list[list[RationalFunction]], object]] = {}


def _pairing(d: int) -> tuple[list[list[RationalFunction]], object]:
    cached = _pairing_cache.get(d)
    if cached is None:
        columns = [trace_vector(basis_word(d, d - c)).values for c in range(d + 1)]
        matrix = [[columns[c][k] for c in range(d + 1)] for k in range(d + 1)]
        inverse = invert(matrix)  # raises SingularMatrixError on a theory violation
        solver: object = _build_factored_solver(matrix, inverse)
        if solver is None:
            solver = inverse
        cached = (matrix, solver)
        _pairing_cache[d] = cached
    return cached


def _build_factored_solver(matrix, inverse) -> "_FactoredSolver | None":
    det = determinant(matrix)
    if not det.denominator.is_one:
        return None
    leftover = det.numerator
    zq_power = zp_power = 0
    for factor, attr in ((_Z_MINUS_Q, "zq"), (_Z_PLUS_1, "zp")):
        while True:
            try:
                leftover = poly_divexact(leftover, factor)
            except ExactDivisionError:
                break
            if attr == "zq":
                zq_power += 1
            else:
                zp_power += 1
    if set(leftover.terms) != {(0, 0)}:
        return None
    constant = leftover.terms[(0, 0)]
    adjugate = []
    for row in inverse:
        adj_row = []
        for entry in row:
            scaled = entry * det
            if not scaled.denominator.is_one:
                return None
            adj_row.append(scaled.numerator)
        adjugate.append(tuple(adj_row))
    return _FactoredSolver(tuple(adjugate), zq_power, zp_power, constant)


def pairing_matrix(d: int) -> list[list[RationalFunction]]:
    """Functional values on the basis words; rows by functional index, columns
    by descending X-exponent.  Required (and checked) to be nonsingular."""
    if d < 0:
        raise DegreeError("degree must be >= 0")
    matrix, _ = _pairing(d)
    return [list(row) for row in matrix]


class ClassPolynomial:
    """Polynomial in two formal monomial generators with field coefficients."""

    variable_names = ("X", "Y")
    field_variables = QZ

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], RationalFunction]):
        clean: dict[tuple[int, int], RationalFunction] = {}
        for expo, coeff in coeffs.items():
            if coeff.variables != self.field_variables:
                raise ValueError(
                    f"coefficients must live over {self.field_variables}"
                )
            if not coeff.is_zero:
                clean[tuple(expo)] = coeff
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, coeff: RationalFunction):
        return cls({(0, 0): coeff})

    @classmethod
    def monomial(cls, a: int, b: int, coeff: RationalFunction | None = None):
        if coeff is None:
            coeff = RationalFunction.one(cls.field_variables)
        return cls({(a, b): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def homogeneous_degree(self) -> int:
        """Common total degree of all monomials; raises if mixed or zero."""
        degrees = {a + b for a, b in self.coeffs}
        if len(degrees) != 1:
            raise DegreeError("class is not homogeneous")
        return degrees.pop()

    def sorted_terms(self) -> list[tuple[tuple[int, int], RationalFunction]]:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0], reverse=True)

    def add(self, other: "ClassPolynomial") -> "ClassPolynomial":
        out = dict(self.coeffs)
        for expo, coeff in other.coeffs.items():
            acc = out.get(expo)
            out[expo] = coeff if acc is None else acc + coeff
        return type(self)(out)

    def scaled(self, factor: RationalFunction) -> "ClassPolynomial":
        return type(self)({e: c * factor for e, c in self.coeffs.items()})

    def __sub__(self, other: "ClassPolynomial") -> "ClassPolynomial":
        minus_one = RationalFunction.constant(self.field_variables, -1)
        return self.add(other.scaled(minus_one))

    def multiply(self, other: "ClassPolynomial") -> "ClassPolynomial":
        out: dict[tuple[int, int], RationalFunction] = {}
        for (a0, b0), c0 in self.coeffs.items():
            for (a1, b1), c1 in other.coeffs.items():
                expo = (a0 + a1, b0 + b1)
                piece = c0 * c1
                acc = out.get(expo)
                out[expo] = piece if acc is None else acc + piece
        return type(self)(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassPolynomial):
            return NotImplemented
        return type(self) is type(other) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((type(self).__name__, tuple(self.sorted_terms())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        na, nb = self.variable_names
        pieces = []
        for (a, b), coeff in self.sorted_terms():
            factors = []
            if a:
                factors.append(na if a == 1 else f"{na}^{a}")
            if b:
                factors.append(nb if b == 1 else f"{nb}^{b}")
            mono = "*".join(factors)
            text = str(coeff)
            if not mono:
                pieces.append(text if " " not in text else f"({text})")
            elif text == "1":
                pieces.append(mono)
            else:
                if " " in text or "/" in text or text.startswith("-"):
                    text = f"({text})"
                pieces.append(f"{text}*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self}>"


class MarkovClass(ClassPolynomial):
    """Class of a braid in the commutative stacking algebra over (q, z)."""

    variable_names = ("X", "Y")
    field_variables = QZ


def markov_class(
    word: SingularBraidWord,
    max_degree: int | None = None,
    max_strands: int | None = None,
) -> MarkovClass:
    """Coordinates of the word's class, solved against the pairing matrix."""
    check_caps(word, max_degree, max_strands)
    d = word.degree
    if d == 0:
        return MarkovClass({(0, 0): trace_vector(word).values[0]})
    _, solver = _pairing(d)
    if isinstance(solver, _FactoredSolver):
        comps = trace_components(word)
        weighted = [
            {mono: factorial(k) * factorial(d - k) * c for mono, c in comp.items()}
            for k, comp in enumerate(comps)
        ]
        coeffs = {}
        for c in range(d + 1):
            acc: dict[tuple[int, int], int] = {}
            for k in range(d + 1):
                comp = weighted[k]
                if not comp:
                    continue
                for (a0, a1), ca in solver.adjugate[c][k].terms.items():
                    for (b0, b1), cb in comp.items():
                        key = (a0 + b0, a1 + b1)
                        v = acc.get(key, 0) + ca * cb
                        if v:
                            acc[key] = v
                        else:
                            del acc[key]
            coeffs[(d - c, c)] = _reduce_against_factored_det(acc, solver)
        return MarkovClass(coeffs)
    tv = trace_vector(word)
    coeffs = {}
    for c in range(d + 1):
        acc_rf = RationalFunction.zero(QZ)
        for k in range(d + 1):
            acc_rf = acc_rf + solver[c][k] * tv.values[k]
        coeffs[(d - c, c)] = acc_rf
    return MarkovClass(coeffs)


def _reduce_against_factored_det(
    laurent: dict[tuple[int, int], int], solver: _FactoredSolver
) -> RationalFunction:
    """Canonicalise (laurent numerator)/det using the known factor list.

    Every common factor must be one of q, z - q, z + 1 or an integer, so
    trial divisions produce the reduced pair directly.
    """
    if not laurent:
        return RationalFunction.zero(QZ)
    min_q = min(e0 for e0, _ in laurent)
    q_power = -min_q if min_q < 0 else 0
    if min_q < 0:
        laurent = {(e0 - min_q, e1): v for (e0, e1), v in laurent.items()}
    num = MultivariatePolynomial(QZ, laurent)
    zq_power, zp_power = solver.zq_power, solver.zp_power
    while zq_power > 0:
        try:
            num = poly_divexact(num, _Z_MINUS_Q)
        except ExactDivisionError:
            break
        zq_power -= 1
    while zp_power > 0:
        try:
            num = poly_divexact(num, _Z_PLUS_1)
        except ExactDivisionError:
            break
        zp_power -= 1
    constant = solver.constant
    shared = _int_gcd(num.content(), abs(constant))
    if shared > 1:
        num = MultivariatePolynomial(
            QZ, {mono: c // shared for mono, c in num.terms.items()}
        )
        constant //= shared
    den = MultivariatePolynomial.monomial(QZ, (q_power, 0), constant)
    den = den * _Z_MINUS_Q**zq_power * _Z_PLUS_1**zp_power
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return RationalFunction._raw(num, den)


def markov_class_of_sum(words: FormalWordSum) -> MarkovClass:
    total = MarkovClass.zero()
    for word, mult in words.items():
        total = total.add(markov_class(word).scaled(RationalFunction.constant(QZ, mult)))
    return total


def g0_apply(cls: MarkovClass) -> MarkovClass:
    """Deletion operator on coordinates."""
    return _g_apply(cls, resolve=False)


def g1_apply(cls: MarkovClass) -> MarkovClass:
    """Resolution operator on coordinates."""
    return _g_apply(cls, resolve=True)


def _g_apply(cls: MarkovClass, resolve: bool) -> MarkovClass:
    d = cls.homogeneous_degree()
    if d < 1:
        raise DegreeError("operators act on degree >= 1 classes")
    out: dict[tuple[int, int], RationalFunction] = {}

    def push(expo, piece):
        if piece.is_zero:
            return
        acc = out.get(expo)
        out[expo] = piece if acc is None else acc + piece

    for (a, b), coeff in cls.coeffs.items():
        # a copies of X, b copies of Y, a + b = d
        if resolve:
            if a:
                push((a - 1, b), coeff.scaled(a) * _Z)
            if b:
                push((a, b - 1), coeff.scaled(b) * _Z_SLIDE)
        else:
            if a:
                push((a - 1, b), coeff.scaled(a))
            if b:
                push((a, b - 1), coeff.scaled(b) * _Z)
    return MarkovClass(out)


def class_product(a: MarkovClass, b: MarkovClass) -> MarkovClass:
    """Product in the commutative stacking algebra (plain polynomial product)."""
    return a.multiply(b)
