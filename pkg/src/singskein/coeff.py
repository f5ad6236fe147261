"""Exact arithmetic in two bivariate rational-function fields.

Every scalar in the pipeline is a quotient of integer-coefficient
polynomials in one of two variable pairs:

* ``(q, z)`` -- the field the trace engine works over;
* ``(s, u)`` -- the extension used for skein normalisation.  The fresh
  indeterminates model square roots, ``q = s**2`` and ``y = u**2``, so no
  numeric branch of a root is ever chosen.

A :class:`RationalFunction` is always kept in canonical form: numerator and
denominator have integer coefficients, their polynomial gcd and any shared
integer content are removed, and the leading coefficient of the denominator
is positive under graded-lex order (total degree first, ties broken by the
first variable).  Canonical form is unique, so structural equality ``==``
decides mathematical equality.

Negative powers (Laurent-style scalars such as ``q**-2``) are ordinary
rational functions with monomial denominators; monomial denominators get a
fast normalisation path that avoids the general gcd.

All values are immutable and safe to share across threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Mapping

__all__ = [
    "QZ",
    "SU",
    "MixedVariablesError",
    "PoleError",
    "ExactDivisionError",
    "MultivariatePolynomial",
    "RationalFunction",
    "poly_gcd",
    "poly_divexact",
    "poly_lcm",
    "rf_add",
    "rf_mul",
    "rf_div",
    "rf_eval",
    "embed_qz_to_su",
]

QZ = ("q", "z")
SU = ("s", "u")

# exponent pair (e0, e1) for var0**e0 * var1**e1
Monomial = tuple[int, int]


class MixedVariablesError(ValueError):
    """Operands live over different variable pairs."""


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at a zero of its denominator."""


class ExactDivisionError(ArithmeticError):
    """An exact polynomial division left a remainder."""


def _monomial_key(mono: Monomial) -> tuple[int, int]:
    # graded lex, first variable above the second
    return (mono[0] + mono[1], mono[0])


def _as_coeff(value):
    """Normalise a coefficient to int when possible, else Fraction."""
    if isinstance(value, int):
        return value
    frac = Fraction(value)
    return frac.numerator if frac.denominator == 1 else frac


class MultivariatePolynomial:
    """Sparse polynomial in two named variables with exact coefficients.

    Terms map exponent pairs to nonzero coefficients (ints, or Fractions for
    transient values; canonical rational functions only ever hold ints).
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: tuple[str, str], terms: Mapping[Monomial, object]):
        if len(variables) != 2:
            raise ValueError("exactly two variables expected")
        clean: dict[Monomial, object] = {}
        for mono, coeff in terms.items():
            coeff = _as_coeff(coeff)
            if coeff:
                if mono[0] < 0 or mono[1] < 0:
                    raise ValueError(f"negative exponent in monomial {mono}")
                clean[mono] = coeff
        object.__setattr__(self, "variables", tuple(variables))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("MultivariatePolynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MultivariatePolynomial":
        return cls(variables, {})

    @classmethod
    def one(cls, variables) -> "MultivariatePolynomial":
        return cls(variables, {(0, 0): 1})

    @classmethod
    def constant(cls, variables, value) -> "MultivariatePolynomial":
        return cls(variables, {(0, 0): value})

    @classmethod
    def variable(cls, variables, name: str) -> "MultivariatePolynomial":
        if name == variables[0]:
            return cls(variables, {(1, 0): 1})
        if name == variables[1]:
            return cls(variables, {(0, 1): 1})
        raise ValueError(f"{name!r} is not one of {variables}")

    @classmethod
    def monomial(cls, variables, exponents: Monomial, coeff=1) -> "MultivariatePolynomial":
        return cls(variables, {tuple(exponents): coeff})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {(0, 0): 1}

    def degree_in(self, var_index: int) -> int:
        """Largest exponent of the given variable (zero polynomial: -1)."""
        if not self.terms:
            return -1
        return max(mono[var_index] for mono in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(e0 + e1 for e0, e1 in self.terms)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_monomial_key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def content(self) -> int:
        """Gcd of the (integer) coefficients, nonnegative."""
        c = 0
        for coeff in self.terms.values():
            c = _int_gcd(c, abs(coeff))
        return c

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "MultivariatePolynomial") -> None:
        if self.variables != other.variables:
            raise MixedVariablesError(
                f"cannot mix variables {self.variables} with {other.variables}"
            )

    def __add__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, 0) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return MultivariatePolynomial(self.variables, out)

    def __sub__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, 0) - coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return MultivariatePolynomial(self.variables, out)

    def __neg__(self) -> "MultivariatePolynomial":
        return MultivariatePolynomial(
            self.variables, {mono: -coeff for mono, coeff in self.terms.items()}
        )

    def __mul__(self, other: "MultivariatePolynomial") -> "MultivariatePolynomial":
        self._check(other)
        if not self.terms or not other.terms:
            return MultivariatePolynomial(self.variables, {})
        out: dict[Monomial, object] = {}
        for (a0, a1), ca in self.terms.items():
            for (b0, b1), cb in other.terms.items():
                mono = (a0 + b0, a1 + b1)
                acc = out.get(mono, 0) + ca * cb
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
        return MultivariatePolynomial(self.variables, out)

    def __pow__(self, exponent: int) -> "MultivariatePolynomial":
        if exponent < 0:
            raise ValueError("polynomial powers must be nonnegative")
        result = MultivariatePolynomial.one(self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return result

    def scaled(self, factor) -> "MultivariatePolynomial":
        factor = _as_coeff(factor)
        if not factor:
            return MultivariatePolynomial(self.variables, {})
        return MultivariatePolynomial(
            self.variables, {mono: coeff * factor for mono, coeff in self.terms.items()}
        )

    def evaluate(self, point: tuple) -> Fraction:
        """Evaluate at a pair of exact rational values."""
        v0 = Fraction(point[0])
        v1 = Fraction(point[1])
        total = Fraction(0)
        for (e0, e1), coeff in self.terms.items():
            total += Fraction(coeff) * v0**e0 * v1**e1
        return total

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultivariatePolynomial):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.variables, tuple(sorted(self.terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in descending graded-lex order (the rendering order)."""
        return sorted(self.terms.items(), key=lambda kv: _monomial_key(kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        var0, var1 = self.variables
        pieces: list[str] = []
        for (e0, e1), coeff in self.sorted_terms():
            factors = []
            if e0:
                factors.append(var0 if e0 == 1 else f"{var0}^{e0}")
            if e1:
                factors.append(var1 if e1 == 1 else f"{var1}^{e1}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"<poly {self}>"


# ---------------------------------------------------------------------------
# Integer-polynomial gcd via primitive pseudo-remainder sequences.
#
# Univariate polynomials are little-endian int lists; bivariate ones are
# lists over the main variable whose entries are univariate lists in the
# second variable.  Everything stays in Z throughout.
# ---------------------------------------------------------------------------


def _u_trim(f: list[int]) -> list[int]:
    while f and not f[-1]:
        f.pop()
    return f


def _u_content(f: list[int]) -> int:
    c = 0
    for a in f:
        c = _int_gcd(c, abs(a))
    return c


def _u_pp(f: list[int]) -> list[int]:
    c = _u_content(f)
    if c > 1:
        return [a // c for a in f]
    return f


def _u_mul(f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return _u_trim(out)


def _u_sub(f: list[int], g: list[int]) -> list[int]:
    out = list(f) + [0] * (len(g) - len(f))
    for j, b in enumerate(g):
        out[j] -= b
    return _u_trim(out)


def _u_prem(f: list[int], g: list[int]) -> list[int]:
    """A scalar multiple of f mod g; enough for a primitive PRS."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while f and len(f) - 1 >= dg:
        lf = f[-1]
        nf = [lg * a for a in f]
        off = len(f) - 1 - dg
        for k, b in enumerate(g):
            nf[off + k] -= lf * b
        nf.pop()
        f = _u_trim(nf)
    return f


def _u_gcd(f: list[int], g: list[int]) -> list[int]:
    f = _u_trim(list(f))
    g = _u_trim(list(g))
    if not f:
        f, g = g, f
    if not g:
        if f and f[-1] < 0:
            return [-a for a in f]
        return f
    cf, cg = _u_content(f), _u_content(g)
    f = [a // cf for a in f]
    g = [a // cg for a in g]
    while g:
        r = _u_prem(f, g)
        f, g = g, _u_pp(r)
    if f[-1] < 0:
        f = [-a for a in f]
    c = _int_gcd(cf, cg)
    return [a * c for a in f] if c != 1 else f


def _u_divexact(f: list[int], g: list[int]) -> list[int]:
    if not f:
        return []
    if not g:
        raise ExactDivisionError("division by zero polynomial")
    dg = len(g) - 1
    lg = g[-1]
    if len(f) - 1 < dg:
        raise ExactDivisionError("quotient is not a polynomial")
    out = [0] * (len(f) - dg)
    r = list(f)
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        if lr % lg:
            raise ExactDivisionError("inexact coefficient division")
        qc = lr // lg
        off = len(r) - 1 - dg
        out[off] = qc
        for k, b in enumerate(g):
            r[off + k] -= qc * b
        _u_trim(r)
    if r:
        raise ExactDivisionError("nonzero remainder")
    return _u_trim(out)


def _b_trim(F: list[list[int]]) -> list[list[int]]:
    while F and not F[-1]:
        F.pop()
    return F


def _b_content(F: list[list[int]]) -> list[int]:
    c: list[int] = []
    for row in F:
        if row:
            c = _u_gcd(c, row)
            if c == [1]:
                break
    return c


def _b_div_rows(F: list[list[int]], c: list[int]) -> list[list[int]]:
    if c == [1]:
        return F
    return [_u_divexact(row, c) if row else [] for row in F]


def _b_prem(F: list[list[int]], G: list[list[int]]) -> list[list[int]]:
    F = [list(row) for row in F]
    dG = len(G) - 1
    lG = G[-1]
    while F and len(F) - 1 >= dG:
        lF = F[-1]
        nF = [_u_mul(row, lG) for row in F]
        off = len(F) - 1 - dG
        for k, row in enumerate(G):
            if row:
                nF[off + k] = _u_sub(nF[off + k], _u_mul(row, lF))
        nF.pop()
        F = _b_trim(nF)
    return F


def _b_gcd(F: list[list[int]], G: list[list[int]]) -> list[list[int]]:
    F = _b_trim([list(r) for r in F])
    G = _b_trim([list(r) for r in G])
    if not F:
        F, G = G, F
    if not G:
        return F
    cF, cG = _b_content(F), _b_content(G)
    F = _b_div_rows(F, cF)
    G = _b_div_rows(G, cG)
    while G:
        R = _b_prem(F, G)
        cR = _b_content(R)
        F, G = G, _b_div_rows(R, cR)
    cc = _u_gcd(cF, cG)
    if cc != [1]:
        F = [_u_mul(row, cc) for row in F]
    return F


def _to_rec(terms: Mapping[Monomial, int]) -> list[list[int]]:
    d0 = max(e0 for e0, _ in terms)
    rows: list[dict[int, int]] = [dict() for _ in range(d0 + 1)]
    for (e0, e1), coeff in terms.items():
        rows[e0][e1] = coeff
    out: list[list[int]] = []
    for row in rows:
        if row:
            lst = [0] * (max(row) + 1)
            for e1, coeff in row.items():
                lst[e1] = coeff
            out.append(lst)
        else:
            out.append([])
    return _b_trim(out)


def _from_rec(F: list[list[int]]) -> dict[Monomial, int]:
    terms: dict[Monomial, int] = {}
    for e0, row in enumerate(F):
        for e1, coeff in enumerate(row):
            if coeff:
                terms[(e0, e1)] = coeff
    return terms


def _terms_content(terms: Mapping[Monomial, int]) -> int:
    c = 0
    for coeff in terms.values():
        c = _int_gcd(c, abs(coeff))
    return c


def _gcd_terms(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    """Gcd of integer-coefficient term dicts, positive leading coefficient."""
    if not a:
        g = dict(b)
    elif not b:
        g = dict(a)
    elif len(a) == 1 or len(b) == 1:
        mono_terms, other = (a, b) if len(a) == 1 else (b, a)
        (m0, m1), mc = next(iter(mono_terms.items()))
        g0 = min(m0, min(e0 for e0, _ in other))
        g1 = min(m1, min(e1 for _, e1 in other))
        g = {(g0, g1): _int_gcd(abs(mc), _terms_content(other))}
    elif a == b:
        g = dict(a)
    elif all(e1 == 0 for _, e1 in a) and all(e1 == 0 for _, e1 in b):
        fa = [0] * (max(e0 for e0, _ in a) + 1)
        for (e0, _), c in a.items():
            fa[e0] = c
        fb = [0] * (max(e0 for e0, _ in b) + 1)
        for (e0, _), c in b.items():
            fb[e0] = c
        g = {(e0, 0): c for e0, c in enumerate(_u_gcd(fa, fb)) if c}
    elif all(e0 == 0 for e0, _ in a) and all(e0 == 0 for e0, _ in b):
        fa = [0] * (max(e1 for _, e1 in a) + 1)
        for (_, e1), c in a.items():
            fa[e1] = c
        fb = [0] * (max(e1 for _, e1 in b) + 1)
        for (_, e1), c in b.items():
            fb[e1] = c
        g = {(0, e1): c for e1, c in enumerate(_u_gcd(fa, fb)) if c}
    else:
        g = _from_rec(_b_gcd(_to_rec(a), _to_rec(b)))
    if not g:
        return g
    lead = max(g, key=_monomial_key)
    if g[lead] < 0:
        g = {mono: -coeff for mono, coeff in g.items()}
    return g


def _divexact_terms(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    """Exact multivariate division of term dicts; raises if inexact."""
    if not b:
        raise ExactDivisionError("division by zero polynomial")
    if not a:
        return {}
    (lb0, lb1) = max(b, key=_monomial_key)
    lb_coeff = b[(lb0, lb1)]
    rem = dict(a)
    out: dict[Monomial, int] = {}
    while rem:
        (la0, la1) = max(rem, key=_monomial_key)
        d0, d1 = la0 - lb0, la1 - lb1
        if d0 < 0 or d1 < 0:
            raise ExactDivisionError("quotient is not a polynomial")
        la_coeff = rem[(la0, la1)]
        if la_coeff % lb_coeff:
            raise ExactDivisionError("inexact coefficient division")
        qc = la_coeff // lb_coeff
        out[(d0, d1)] = qc
        for (b0, b1), bc in b.items():
            mono = (b0 + d0, b1 + d1)
            acc = rem.get(mono, 0) - qc * bc
            if acc:
                rem[mono] = acc
            else:
                rem.pop(mono, None)
    return out


def poly_gcd(a: MultivariatePolynomial, b: MultivariatePolynomial) -> MultivariatePolynomial:
    """Gcd of two integer-coefficient polynomials (positive leading coeff)."""
    if a.variables != b.variables:
        raise MixedVariablesError(f"cannot mix {a.variables} and {b.variables}")
    return MultivariatePolynomial(a.variables, _gcd_terms(a.terms, b.terms))


def poly_divexact(a: MultivariatePolynomial, b: MultivariatePolynomial) -> MultivariatePolynomial:
    """Exact quotient a / b; raises ExactDivisionError when b does not divide a."""
    if a.variables != b.variables:
        raise MixedVariablesError(f"cannot mix {a.variables} and {b.variables}")
    return MultivariatePolynomial(a.variables, _divexact_terms(a.terms, b.terms))


def poly_lcm(a: MultivariatePolynomial, b: MultivariatePolynomial) -> MultivariatePolynomial:
    if a.is_zero or b.is_zero:
        return MultivariatePolynomial.zero(a.variables)
    g = poly_gcd(a, b)
    out = poly_divexact(a * b, g)
    lead = out.leading_coefficient()
    if lead < 0:
        out = -out
    return out


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


def _clear_fractions(num: dict, den: dict) -> tuple[dict, dict]:
    """Scale both term dicts by one rational so coefficients become ints."""
    lcm = 1
    for terms in (num, den):
        for coeff in terms.values():
            if isinstance(coeff, Fraction):
                d = coeff.denominator
                lcm = lcm // _int_gcd(lcm, d) * d
    if lcm == 1:
        return num, den

    def scale(terms: dict) -> dict:
        out = {}
        for mono, coeff in terms.items():
            scaled = coeff * lcm
            out[mono] = int(scaled)
        return out

    return scale(num), scale(den)


def _canonical_pair(num: dict, den: dict) -> tuple[dict, dict]:
    """Reduce an (integer-coefficient) numerator/denominator pair."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return {}, {(0, 0): 1}

    if len(den) == 1:
        (d0, d1), dc = next(iter(den.items()))
        s0 = min(d0, min(e0 for e0, _ in num))
        s1 = min(d1, min(e1 for _, e1 in num))
        if s0 or s1:
            num = {(e0 - s0, e1 - s1): c for (e0, e1), c in num.items()}
            d0, d1 = d0 - s0, d1 - s1
        g = _int_gcd(abs(dc), _terms_content(num))
        if g > 1:
            num = {mono: c // g for mono, c in num.items()}
            dc //= g
        if dc < 0:
            num = {mono: -c for mono, c in num.items()}
            dc = -dc
        return num, {(d0, d1): dc}

    if len(num) == 1:
        (n0, n1), nc = next(iter(num.items()))
        s0 = min(n0, min(e0 for e0, _ in den))
        s1 = min(n1, min(e1 for _, e1 in den))
        if s0 or s1:
            den = {(e0 - s0, e1 - s1): c for (e0, e1), c in den.items()}
            n0, n1 = n0 - s0, n1 - s1
        g = _int_gcd(abs(nc), _terms_content(den))
        if g > 1:
            den = {mono: c // g for mono, c in den.items()}
            nc //= g
        if den[max(den, key=_monomial_key)] < 0:
            den = {mono: -c for mono, c in den.items()}
            nc = -nc
        return {(n0, n1): nc}, den

    g = _gcd_terms(num, den)
    if g and g != {(0, 0): 1}:
        num = _divexact_terms(num, g)
        den = _divexact_terms(den, g)
    if den[max(den, key=_monomial_key)] < 0:
        num = {mono: -c for mono, c in num.items()}
        den = {mono: -c for mono, c in den.items()}
    return num, den


class RationalFunction:
    """Quotient of two integer-coefficient bivariate polynomials, canonical."""

    __slots__ = ("numerator", "denominator", "_hash")

    def __init__(
        self,
        numerator: MultivariatePolynomial,
        denominator: MultivariatePolynomial | None = None,
    ):
        if denominator is None:
            denominator = MultivariatePolynomial.one(numerator.variables)
        elif numerator.variables != denominator.variables:
            raise MixedVariablesError(
                f"cannot mix {numerator.variables} and {denominator.variables}"
            )
        num, den = _clear_fractions(numerator.terms, denominator.terms)
        num, den = _canonical_pair(num, den)
        object.__setattr__(
            self, "numerator", MultivariatePolynomial(numerator.variables, num)
        )
        object.__setattr__(
            self, "denominator", MultivariatePolynomial(numerator.variables, den)
        )
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _raw(cls, num: MultivariatePolynomial, den: MultivariatePolynomial) -> "RationalFunction":
        """Trusted constructor for pairs already in canonical form."""
        self = object.__new__(cls)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "_hash", None)
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, variables, value) -> "RationalFunction":
        frac = Fraction(value)
        num = MultivariatePolynomial.constant(variables, frac.numerator)
        den = MultivariatePolynomial.constant(variables, frac.denominator)
        return cls._raw(num, den)

    @classmethod
    def zero(cls, variables) -> "RationalFunction":
        return cls.constant(variables, 0)

    @classmethod
    def one(cls, variables) -> "RationalFunction":
        return cls.constant(variables, 1)

    @classmethod
    def coordinate(cls, variables, name: str) -> "RationalFunction":
        num = MultivariatePolynomial.variable(variables, name)
        return cls._raw(num, MultivariatePolynomial.one(variables))

    @classmethod
    def from_polynomial(cls, poly: MultivariatePolynomial) -> "RationalFunction":
        return cls(poly)

    @classmethod
    def from_laurent_terms(cls, variables, terms: Mapping[Monomial, int]) -> "RationalFunction":
        """Build from terms whose exponents may be negative (Laurent form)."""
        clean = {mono: c for mono, c in terms.items() if c}
        if not clean:
            return cls.zero(variables)
        s0 = min(e0 for e0, _ in clean)
        s1 = min(e1 for _, e1 in clean)
        s0 = -s0 if s0 < 0 else 0
        s1 = -s1 if s1 < 0 else 0
        num = MultivariatePolynomial(
            variables, {(e0 + s0, e1 + s1): c for (e0, e1), c in clean.items()}
        )
        den = MultivariatePolynomial.monomial(variables, (s0, s1))
        return cls._raw(num, den)

    # -- queries -----------------------------------------------------------

    @property
    def variables(self) -> tuple[str, str]:
        return self.numerator.variables

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_one(self) -> bool:
        return self.numerator.is_one and self.denominator.is_one

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "RationalFunction") -> None:
        if self.variables != other.variables:
            raise MixedVariablesError(
                f"cannot mix variables {self.variables} with {other.variables}"
            )

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.denominator.is_one and other.denominator.is_one:
            return RationalFunction._raw(
                self.numerator + other.numerator, self.denominator
            )
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        num = self.numerator * other.denominator + other.numerator * self.denominator
        return RationalFunction(num, self.denominator * other.denominator)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._raw(-self.numerator, self.denominator)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.is_zero or other.is_zero:
            return RationalFunction.zero(self.variables)
        if self.is_one:
            return other
        if other.is_one:
            return self
        if self.denominator.is_one and other.denominator.is_one:
            return RationalFunction._raw(
                self.numerator * other.numerator, self.denominator
            )
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        return self * other.inverse()

    def inverse(self) -> "RationalFunction":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        num, den = self.denominator, self.numerator
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RationalFunction._raw(num, den)

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = RationalFunction.one(self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return result

    def scaled(self, value) -> "RationalFunction":
        return self * RationalFunction.constant(self.variables, value)

    def evaluate(self, point: tuple) -> Fraction:
        den_value = self.denominator.evaluate(point)
        if den_value == 0:
            raise PoleError(f"denominator vanishes at {point}")
        return self.numerator.evaluate(point) / den_value

    # -- comparison / rendering --------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.numerator, self.denominator))
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        if self.numerator.is_zero:
            return "0"
        if self.denominator.is_one:
            return str(self.numerator)

        def wrap(poly: MultivariatePolynomial) -> str:
            text = str(poly)
            if " " in text or "*" in text or text.startswith("-"):
                return f"({text})"
            return text

        return f"{wrap(self.numerator)}/{wrap(self.denominator)}"

    def __repr__(self) -> str:
        return f"<rf {self}>"


# ---------------------------------------------------------------------------
# Module-level operation aliases and the field embedding
# ---------------------------------------------------------------------------


def rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a + b


def rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a * b


def rf_div(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    return a / b


def rf_eval(a: RationalFunction, point: tuple) -> Fraction:
    return a.evaluate(point)


_EMBED_A = MultivariatePolynomial(SU, {(2, 0): 1, (0, 0): -1})  # s^2 - 1
_EMBED_B = MultivariatePolynomial(SU, {(0, 0): 1, (2, 2): -1})  # 1 - s^2*u^2

# The embedding collapses only the curves s = 0, s = +-1, s*u = +-1 to
# points (and blows up on s*u = +-1), so images of coprime polynomials can
# share no irreducible factor outside this list.  That turns the reduction
# of an embedded fraction into cheap trial divisions instead of a general
# bivariate gcd.
_EMBED_COLLAPSED = (
    MultivariatePolynomial(SU, {(1, 0): 1}),  # s
    MultivariatePolynomial(SU, {(1, 0): 1, (0, 0): -1}),  # s - 1
    MultivariatePolynomial(SU, {(1, 0): 1, (0, 0): 1}),  # s + 1
    MultivariatePolynomial(SU, {(1, 1): 1, (0, 0): -1}),  # s*u - 1
    MultivariatePolynomial(SU, {(1, 1): 1, (0, 0): 1}),  # s*u + 1
)


def embed_qz_to_su(a: RationalFunction) -> RationalFunction:
    """Ring embedding of Q(q, z) into Q(s, u): q -> s^2, z -> (s^2-1)/(1-s^2*u^2)."""
    if a.variables != QZ:
        raise MixedVariablesError(f"embedding expects variables {QZ}, got {a.variables}")
    if a.is_zero:
        return RationalFunction.zero(SU)
    level = max(a.numerator.degree_in(1), a.denominator.degree_in(1), 0)
    a_pows = [MultivariatePolynomial.one(SU)]
    b_pows = [MultivariatePolynomial.one(SU)]
    for _ in range(level):
        a_pows.append(a_pows[-1] * _EMBED_A)
        b_pows.append(b_pows[-1] * _EMBED_B)

    def image(poly: MultivariatePolynomial) -> MultivariatePolynomial:
        acc = MultivariatePolynomial.zero(SU)
        for (eq, ez), coeff in poly.terms.items():
            term = MultivariatePolynomial.monomial(SU, (2 * eq, 0), coeff)
            acc = acc + term * a_pows[ez] * b_pows[level - ez]
        return acc

    num = image(a.numerator).terms
    den = image(a.denominator).terms
    for factor in _EMBED_COLLAPSED:
        while True:
            try:
                num_next = _divexact_terms(num, factor.terms)
                den_next = _divexact_terms(den, factor.terms)
            except ExactDivisionError:
                break
            num, den = num_next, den_next
    g = _int_gcd(_terms_content(num), _terms_content(den))
    if g > 1:
        num = {mono: c // g for mono, c in num.items()}
        den = {mono: c // g for mono, c in den.items()}
    if den[max(den, key=_monomial_key)] < 0:
        num = {mono: -c for mono, c in num.items()}
        den = {mono: -c for mono, c in den.items()}
    return RationalFunction._raw(
        MultivariatePolynomial(SU, num), MultivariatePolynomial(SU, den)
    )
