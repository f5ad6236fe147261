"""Skein classes of closed singular braids over the extension field (s, u).

The class of a closure is the word's coordinate vector rescaled into the
basis monomials Xhat^a Yhat^b.  Writing n for the strand count, e for the
writhe and c_ab for the (q, z)-coordinates, the coefficient of
Xhat^a Yhat^b is

    embed(c_ab) * z^(a + b - n + 1) * u^(a + e - n + 1)

where embed is the field embedding q -> s^2, z -> (s^2 - 1)/(1 - s^2 u^2)
and the powers of z are taken in the image field.  The exponents come from
inverting the normalised braid-to-class map on the two generator words: a
lone double point on two strands must map to Xhat, a double point followed
by a crossing to Yhat, and the empty word on one strand to 1.  Both
anchors, the skein relation t^{-1} L+ - t L- = x L0 (with t = s u,
x = s - 1/s), and invariance under all closure-preserving moves are
enforced by the test suite rather than assumed.

Adding a free strand multiplies a class by (1 - s^2 u^2)/(u (s^2 - 1)),
the disjoint-union coefficient (t^{-1} - t)/x.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _int_gcd

from .braid import Generator, SIGMA, SIGMA_INV, SingularBraidWord, exponent_sum
from .coeff import (
    ExactDivisionError,
    MultivariatePolynomial,
    SU,
    RationalFunction,
    embed_qz_to_su,
    poly_divexact,
)
from .coeff import QZ
from .markov import ClassPolynomial, check_caps, markov_class

__all__ = [
    "SkeinClass",
    "SkeinTripleResult",
    "skein_class",
    "skein_triple_check",
    "disjoint_union_coefficient",
    "closure_product",
    "VAR_T",
    "VAR_X",
]

_ONE_SU = RationalFunction.one(SU)
_S = RationalFunction.coordinate(SU, "s")
_U = RationalFunction.coordinate(SU, "u")

# the skein-relation constants: t = s*u and x = s - 1/s
VAR_T = _S * _U
VAR_X = _S - _S.inverse()

_Z_IMAGE = embed_qz_to_su(RationalFunction.coordinate(QZ, "z"))

_z_powers: dict[int, RationalFunction] = {0: _ONE_SU}
_u_powers: dict[int, RationalFunction] = {0: _ONE_SU}


def _cached_power(cache: dict[int, RationalFunction], base: RationalFunction, e: int) -> RationalFunction:
    hit = cache.get(e)
    if hit is None:
        hit = base**e
        cache[e] = hit
    return hit


# Every denominator this stage produces factors over a fixed list of small
# irreducibles: powers of s and u from the normalisation, s +- 1 and su +- 1
# from the embedded trace variable, u +- 1 and s^2 u +- 1 from the embedded
# coordinate denominators (the images of q, z - q and z + 1).  Products can
# therefore be reduced by trial division; if a denominator ever falls
# outside the list the code below detects it and takes the general path.
_SU_DEN_FACTORS = (
    MultivariatePolynomial(SU, {(1, 0): 1}),  # s
    MultivariatePolynomial(SU, {(0, 1): 1}),  # u
    MultivariatePolynomial(SU, {(1, 0): 1, (0, 0): -1}),  # s - 1
    MultivariatePolynomial(SU, {(1, 0): 1, (0, 0): 1}),  # s + 1
    MultivariatePolynomial(SU, {(0, 1): 1, (0, 0): -1}),  # u - 1
    MultivariatePolynomial(SU, {(0, 1): 1, (0, 0): 1}),  # u + 1
    MultivariatePolynomial(SU, {(1, 1): 1, (0, 0): -1}),  # s*u - 1
    MultivariatePolynomial(SU, {(1, 1): 1, (0, 0): 1}),  # s*u + 1
    MultivariatePolynomial(SU, {(2, 1): 1, (0, 0): -1}),  # s^2*u - 1
    MultivariatePolynomial(SU, {(2, 1): 1, (0, 0): 1}),  # s^2*u + 1
)


def _mul_structured(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    """Product of two reduced fractions whose denominators factor over the
    known list; falls back to the general constructor otherwise."""
    if a.is_zero or b.is_zero:
        return RationalFunction.zero(SU)
    num = a.numerator * b.numerator
    den = a.denominator * b.denominator
    if den.is_one:
        return RationalFunction(num)
    for factor in _SU_DEN_FACTORS:
        while True:
            try:
                num_next = poly_divexact(num, factor)
                den_next = poly_divexact(den, factor)
            except ExactDivisionError:
                break
            num, den = num_next, den_next
    probe = den
    for factor in _SU_DEN_FACTORS:
        while True:
            try:
                probe = poly_divexact(probe, factor)
            except ExactDivisionError:
                break
    if len(probe.terms) != 1 or (0, 0) not in probe.terms:
        return RationalFunction(num, den)
    shared = _int_gcd(num.content(), den.content())
    if shared > 1:
        num = MultivariatePolynomial(SU, {m: c // shared for m, c in num.terms.items()})
        den = MultivariatePolynomial(SU, {m: c // shared for m, c in den.terms.items()})
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return RationalFunction._raw(num, den)


class SkeinClass(ClassPolynomial):
    """Polynomial in the closure classes Xhat, Yhat with (s, u) coefficients."""

    variable_names = ("Xhat", "Yhat")
    field_variables = SU


@dataclass(frozen=True)
class SkeinTripleResult:
    """Outcome of one skein-relation check at a chosen crossing site."""

    holds: bool
    positive: SkeinClass
    negative: SkeinClass
    smoothed: SkeinClass
    lhs: SkeinClass
    rhs: SkeinClass


def skein_class(
    word: SingularBraidWord,
    max_degree: int | None = None,
    max_strands: int | None = None,
    coords: "ClassPolynomial | None" = None,
) -> SkeinClass:
    """Class of the word's closure in the basis {Xhat^a Yhat^b}.

    ``coords`` may pass the word's precomputed coordinate class to avoid
    solving twice when the caller already has it.
    """
    check_caps(word, max_degree, max_strands)
    if coords is None:
        coords = markov_class(word)
    n = word.strands
    writhe = exponent_sum(word)
    out: dict[tuple[int, int], RationalFunction] = {}
    for (a, b), coeff in coords.coeffs.items():
        image = embed_qz_to_su(coeff)
        image = _mul_structured(image, _cached_power(_z_powers, _Z_IMAGE, a + b - n + 1))
        image = _mul_structured(image, _cached_power(_u_powers, _U, a + writhe - n + 1))
        out[(a, b)] = image
    return SkeinClass(out)


def skein_triple_check(word: SingularBraidWord, i: int, **caps) -> SkeinTripleResult:
    """Check t^{-1}[closure(w s_i)] - t[closure(w S_i)] = x[closure(w)]."""
    if not 1 <= i <= word.strands - 1:
        raise ValueError(f"crossing index {i} out of range for {word.strands} strands")
    positive = skein_class(
        SingularBraidWord(word.strands, word.letters + (Generator(SIGMA, i),)), **caps
    )
    negative = skein_class(
        SingularBraidWord(word.strands, word.letters + (Generator(SIGMA_INV, i),)),
        **caps,
    )
    smoothed = skein_class(word, **caps)
    lhs = positive.scaled(VAR_T.inverse()) - negative.scaled(VAR_T)
    rhs = smoothed.scaled(VAR_X)
    return SkeinTripleResult(lhs == rhs, positive, negative, smoothed, lhs, rhs)


def disjoint_union_coefficient() -> RationalFunction:
    """Effect of a split unknotted component: (t^{-1} - t)/x over (s, u)."""
    return (VAR_T.inverse() - VAR_T) / VAR_X


def closure_product(a: SkeinClass, b: SkeinClass) -> SkeinClass:
    """Class of the closure of a stacked word, given the factors' classes.

    Stacking braids side by side closes up to a split union, so the result
    is the polynomial product weighted once by the disjoint-union
    coefficient: ``skein_class(stack(wa, wb)) == closure_product(
    skein_class(wa), skein_class(wb))``.  The trivial one-strand word is
    absorbed into the coefficient, matching the free-strand rule.
    """
    return a.multiply(b).scaled(disjoint_union_coefficient())
