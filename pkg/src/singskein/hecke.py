"""The Hecke algebra of type A in its permutation basis, with the Markov trace.

The algebra on n strands is spanned by basis elements ``T_w`` indexed by
permutations of {1..n}, subject to ``T_i^2 = (q - 1) T_i + q`` for the
generators ``T_i = T_{s_i}``.  Right multiplication follows the standard
rule: ``T_w T_i = T_{w s_i}`` when the length goes up, and
``(q - 1) T_w + q T_{w s_i}`` otherwise; the inverse generator acts through
``T_i^{-1} = q^{-1} T_i + (q^{-1} - 1)``.

``ocneanu_trace`` is the unique linear functional with ``tr(1) = 1``,
``tr(ab) = tr(ba)`` and ``tr(x T_{s_n} y) = z tr(x y)`` for x, y supported
on the first n strands.  It is computed per basis element by coset peeling:
for ``T_w`` with largest moved point m, write ``w = v s_{m-1} c`` where
``v = s_j ... s_{m-2}`` (j = w(m)) and c fixes m, with lengths adding up;
then ``tr(T_w) = z * tr(T_v T_c)`` and the recursion bottoms out at the
identity.  The value of ``tr(T_w)`` does not depend on the ambient strand
count, so traces are memoised on the permutation with trailing fixed
points trimmed.

Internally a small kernel works with interned trimmed permutations and
integer Laurent coefficients; the public operations wrap everything in
``RationalFunction`` scalars.  The kernel also provides the fused fold used
by the degree-d trace functionals: singular letters branch into a "delete"
and a "resolve to crossing" copy, with the resolution count carried in the
coefficient key, so all 2^d desingularisations share one pass.
"""

from __future__ import annotations

import threading
from typing import Iterable, Mapping

from .braid import SIGMA, SIGMA_INV, TAU, SingularBraidWord, StrandIndexError
from .coeff import QZ, RationalFunction
from .permutations import Permutation

__all__ = [
    "HeckeElement",
    "SingularLetterError",
    "mul_by_generator",
    "evaluate_word",
    "multiply",
    "ocneanu_trace",
    "permutation_trace",
    "trace_components",
]


class SingularLetterError(ValueError):
    """An ordinary-algebra operation met a singular crossing."""


# ---------------------------------------------------------------------------
# Kernel: interned permutations, integer Laurent coefficients.
#
# Permutations are trimmed tuples (trailing fixed points removed) interned
# to small ints.  Fold coefficients are dicts keyed by q-exponent * 16 +
# resolution-count (both fit easily; the degree cap upstream keeps the
# resolution count below 16).  Trace values are dicts keyed by
# (q-exponent, z-exponent) pairs with integer values.
# ---------------------------------------------------------------------------

_RE_LIMIT = 16

_intern: dict[tuple[int, ...], int] = {(): 0}
_tuples: list[tuple[int, ...]] = [()]
_intern_lock = threading.Lock()
# The mult/trace caches need no lock: their fills are pure and idempotent,
# so a race only duplicates work.  Interning assigns fresh ids, which is
# not idempotent, hence the lock on the miss path.
_rmult_cache: dict[tuple[int, int], tuple[int, bool]] = {}
_lmult_cache: dict[tuple[int, int], tuple[int, bool]] = {}
_trace_cache: dict[int, dict[tuple[int, int], int]] = {0: {(0, 0): 1}}


def _intern_list(values: list[int]) -> int:
    while values and values[-1] == len(values):
        values.pop()
    key = tuple(values)
    wid = _intern.get(key)
    if wid is None:
        with _intern_lock:
            wid = _intern.get(key)
            if wid is None:
                wid = len(_tuples)
                _intern[key] = wid
                _tuples.append(key)
    return wid


def _rmult(wid: int, i: int) -> tuple[int, bool]:
    """(id of w*s_i, whether the length went up)."""
    key = (wid, i)
    hit = _rmult_cache.get(key)
    if hit is not None:
        return hit
    t = _tuples[wid]
    values = list(t) + list(range(len(t) + 1, i + 2))
    a, b = values[i - 1], values[i]
    values[i - 1], values[i] = b, a
    result = (_intern_list(values), a < b)
    _rmult_cache[key] = result
    return result


def _lmult(i: int, wid: int) -> tuple[int, bool]:
    """(id of s_i*w, whether the length went up)."""
    key = (i, wid)
    hit = _lmult_cache.get(key)
    if hit is not None:
        return hit
    t = _tuples[wid]
    values = list(t) + list(range(len(t) + 1, i + 2))
    pa, pb = values.index(i), values.index(i + 1)
    values[pa], values[pb] = i + 1, i
    result = (_intern_list(values), pa < pb)
    _lmult_cache[key] = result
    return result


def _acc(new: dict, wid: int, coeffs: dict, delta: int, negate: bool = False) -> None:
    dst = new.get(wid)
    if dst is None:
        dst = new[wid] = {}
    if negate:
        for key, c in coeffs.items():
            dst[key + delta] = dst.get(key + delta, 0) - c
    else:
        for key, c in coeffs.items():
            dst[key + delta] = dst.get(key + delta, 0) + c


def _prune(state: dict) -> dict:
    out = {}
    for wid, coeffs in state.items():
        clean = {k: v for k, v in coeffs.items() if v}
        if clean:
            out[wid] = clean
    return out


def _kernel_trace(wid: int) -> dict[tuple[int, int], int]:
    cached = _trace_cache.get(wid)
    if cached is not None:
        return cached
    t = _tuples[wid]
    m = len(t)
    j = t[m - 1]  # w(m) < m since the tuple is trimmed
    # c = L_j^{-1} w where L_j = s_j ... s_{m-1}; relabel values accordingly
    c_vals = [m if v == j else (v - 1 if v > j else v) for v in t]
    cid = _intern_list(c_vals)
    # element = T_v T_c with v = s_j ... s_{m-2}, folded by left multiplication
    state: dict[int, dict[int, int]] = {cid: {0: 1}}
    for i in range(m - 2, j - 1, -1):
        new: dict[int, dict[int, int]] = {}
        for uid, coeffs in state.items():
            vid, ascent = _lmult(i, uid)
            if ascent:
                _acc(new, vid, coeffs, 0)
            else:
                _acc(new, uid, coeffs, 16)
                _acc(new, uid, coeffs, 0, negate=True)
                _acc(new, vid, coeffs, 16)
        state = _prune(new)
    out: dict[tuple[int, int], int] = {}
    for uid, coeffs in state.items():
        child = _kernel_trace(uid)
        for key, c in coeffs.items():
            qe = key // 16
            for (tq, tz), tc in child.items():
                k2 = (qe + tq, tz + 1)
                v = out.get(k2, 0) + c * tc
                if v:
                    out[k2] = v
                else:
                    del out[k2]
    _trace_cache[wid] = out
    return out


def _fold_word(letters: Iterable) -> dict[int, dict[int, int]]:
    """Fold a singular word through the kernel.

    State maps interned permutations to coefficient dicts keyed by
    ``16 * q_exponent + resolution_count``.  A singular letter contributes
    both its deletion (coefficient kept) and its resolution to a positive
    crossing (resolution count bumped).
    """
    state: dict[int, dict[int, int]] = {0: {0: 1}}
    for g in letters:
        i = g.index
        new: dict[int, dict[int, int]] = {}
        if g.kind == SIGMA:
            for wid, coeffs in state.items():
                vid, ascent = _rmult(wid, i)
                if ascent:
                    _acc(new, vid, coeffs, 0)
                else:
                    _acc(new, wid, coeffs, 16)
                    _acc(new, wid, coeffs, 0, negate=True)
                    _acc(new, vid, coeffs, 16)
        elif g.kind == SIGMA_INV:
            for wid, coeffs in state.items():
                vid, ascent = _rmult(wid, i)
                if ascent:
                    _acc(new, vid, coeffs, -16)
                    _acc(new, wid, coeffs, -16)
                    _acc(new, wid, coeffs, 0, negate=True)
                else:
                    _acc(new, vid, coeffs, 0)
        else:  # TAU: delete + resolve
            for wid, coeffs in state.items():
                _acc(new, wid, coeffs, 0)
                vid, ascent = _rmult(wid, i)
                if ascent:
                    _acc(new, vid, coeffs, 1)
                else:
                    _acc(new, wid, coeffs, 17)
                    _acc(new, wid, coeffs, 1, negate=True)
                    _acc(new, vid, coeffs, 17)
        state = _prune(new)
    return state


def trace_components(word: SingularBraidWord) -> list[dict[tuple[int, int], int]]:
    """For each k in 0..degree, the sum over k-subsets S of the singular
    letters of ``tr`` of the word with S resolved and the rest deleted, as an
    integer Laurent dict over (q-exponent, z-exponent)."""
    d = word.degree
    if d >= _RE_LIMIT:
        raise ValueError(f"degree {d} exceeds the kernel's resolution window")
    state = _fold_word(word.letters)
    comps: list[dict[tuple[int, int], int]] = [{} for _ in range(d + 1)]
    for wid, coeffs in state.items():
        child = _kernel_trace(wid)
        for key, c in coeffs.items():
            qe, re = divmod(key, 16)
            comp = comps[re]
            for (tq, tz), tc in child.items():
                k2 = (qe + tq, tz)
                v = comp.get(k2, 0) + c * tc
                if v:
                    comp[k2] = v
                else:
                    del comp[k2]
    return comps


def permutation_trace(perm: Permutation) -> RationalFunction:
    """Markov trace of the basis element indexed by ``perm`` (any strand count)."""
    m = perm.largest_moved_point()
    wid = _intern_list(list(perm.image[:m]))
    return RationalFunction.from_laurent_terms(QZ, _kernel_trace(wid))


# ---------------------------------------------------------------------------
# Public elements
# ---------------------------------------------------------------------------

_RF_ONE = RationalFunction.one(QZ)
_RF_Q = RationalFunction.coordinate(QZ, "q")
_RF_Q_MINUS_1 = _RF_Q - _RF_ONE
_RF_Q_INV = _RF_Q.inverse()
_RF_Q_INV_MINUS_1 = _RF_Q_INV - _RF_ONE


class HeckeElement:
    """Finite linear combination of permutation basis elements."""

    __slots__ = ("strands", "terms")

    def __init__(self, strands: int, terms: Mapping[Permutation, RationalFunction]):
        clean: dict[Permutation, RationalFunction] = {}
        for perm, coeff in terms.items():
            if perm.size != strands:
                raise ValueError(
                    f"permutation of size {perm.size} in an element on {strands} strands"
                )
            if coeff.variables != QZ:
                raise ValueError("coefficients must live over (q, z)")
            if not coeff.is_zero:
                clean[perm] = coeff
        object.__setattr__(self, "strands", strands)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("HeckeElement is immutable")

    @classmethod
    def identity(cls, strands: int) -> "HeckeElement":
        return cls(strands, {Permutation.identity(strands): _RF_ONE})

    def scaled(self, factor: RationalFunction) -> "HeckeElement":
        return HeckeElement(
            self.strands, {w: c * factor for w, c in self.terms.items()}
        )

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if self.strands != other.strands:
            raise ValueError("strand counts differ")
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            out[w] = c if acc is None else acc + c
        return HeckeElement(self.strands, out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.strands == other.strands and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.strands, tuple(sorted(self.terms.items(), key=lambda kv: kv[0].image))))

    def __repr__(self) -> str:
        if not self.terms:
            return "<hecke 0>"
        bits = [f"({c})*T{w.image}" for w, c in sorted(self.terms.items(), key=lambda kv: kv[0].image)]
        return "<hecke " + " + ".join(bits) + ">"


def mul_by_generator(h: HeckeElement, i: int, sign: int = 1) -> HeckeElement:
    """Right-multiply by ``T_i`` (sign +1) or ``T_i^{-1}`` (sign -1)."""
    if not 1 <= i <= h.strands - 1:
        raise StrandIndexError(f"generator index {i} out of range for {h.strands} strands")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out: dict[Permutation, RationalFunction] = {}

    def add(w: Permutation, c: RationalFunction) -> None:
        acc = out.get(w)
        out[w] = c if acc is None else acc + c

    for w, c in h.terms.items():
        ws = w.right_multiplied(i)
        ascent = not w.has_right_descent(i)
        if sign > 0:
            if ascent:
                add(ws, c)
            else:
                add(w, c * _RF_Q_MINUS_1)
                add(ws, c * _RF_Q)
        else:
            if ascent:
                add(ws, c * _RF_Q_INV)
                add(w, c * _RF_Q_INV_MINUS_1)
            else:
                add(ws, c)
    return HeckeElement(h.strands, out)


def evaluate_word(word: SingularBraidWord) -> HeckeElement:
    """Image of a crossing-only word: a left-to-right generator fold."""
    h = HeckeElement.identity(word.strands)
    for g in word.letters:
        if g.kind == TAU:
            raise SingularLetterError(
                "cannot evaluate a singular crossing in the ordinary algebra"
            )
        h = mul_by_generator(h, g.index, g.kind)
    return h


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product a*b, folding a reduced word for each basis permutation of b."""
    if a.strands != b.strands:
        raise ValueError("strand counts differ")
    out = HeckeElement(a.strands, {})
    for v, cv in b.terms.items():
        piece = a
        for i in v.reduced_word():
            piece = mul_by_generator(piece, i)
        out = out + piece.scaled(cv)
    return out


def ocneanu_trace(h: HeckeElement) -> RationalFunction:
    """The Markov trace, extended linearly from the basis elements."""
    total = RationalFunction.zero(QZ)
    for w, c in h.terms.items():
        total = total + c * permutation_trace(w)
    return total
