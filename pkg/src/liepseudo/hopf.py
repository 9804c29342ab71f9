"""Exact arithmetic in H = U(d) in the divided-power PBW basis.

Basis monomials are b^(I) = b_1^{i_1} ... b_N^{i_N} / i_1! ... i_N! indexed by
multi-indices I.  Products are straightened recursively through the
commutation relations; the per-instance straightening memo is the only cache
in the package and its results are scheduling-independent.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import DimensionMismatch
from .liecore import LieData, rat

MultiIndex = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def mi_zero(n: int) -> MultiIndex:
    return (0,) * n


def mi_unit(n: int, i: int) -> MultiIndex:
    return tuple(1 if k == i else 0 for k in range(n))


def mi_add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def mi_deg(a: MultiIndex) -> int:
    return sum(a)


def mi_factorial(a: MultiIndex) -> int:
    out = 1
    for x in a:
        out *= math.factorial(x)
    return out


def mi_splits(I: MultiIndex):
    """All (J, K) with J + K = I, the coproduct support of b^(I)."""
    ranges = [range(x + 1) for x in I]
    for J in itertools.product(*ranges):
        yield tuple(J), tuple(x - y for x, y in zip(I, J))


def mi_below(n: int, deg: int) -> list[MultiIndex]:
    """All multi-indices of length n with |I| <= deg, sorted by (|I|, I)."""
    out = []
    for d in range(deg + 1):
        out.extend(sorted(_compositions(n, d)))
    return out


def _compositions(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def _word_of(I: MultiIndex) -> tuple[int, ...]:
    w = ()
    for k, x in enumerate(I):
        w += (k,) * x
    return w


def _index_of_word(w: tuple[int, ...], n: int) -> MultiIndex:
    out = [0] * n
    for k in w:
        out[k] += 1
    return tuple(out)


class Hopf:
    """The Hopf algebra U(d) over an exact LieData."""

    def __init__(self, lie: LieData):
        lie.validate()
        self.lie = lie
        self.n = lie.dim
        self._word_memo: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
        self._mul_memo: dict[tuple[MultiIndex, MultiIndex], dict[MultiIndex, Fraction]] = {}
        self._antipode_memo: dict[MultiIndex, dict[MultiIndex, Fraction]] = {}

    # -- element constructors ------------------------------------------
    def zero(self) -> "HElement":
        return HElement(self, {})

    def one(self) -> "HElement":
        return HElement(self, {mi_zero(self.n): ONE})

    def gen(self, i: int) -> "HElement":
        return HElement(self, {mi_unit(self.n, i): ONE})

    def mono(self, I: MultiIndex, c=1) -> "HElement":
        c = rat(c)
        return HElement(self, {tuple(I): c} if c else {})

    def element(self, coeffs: dict) -> "HElement":
        out = {}
        for I, c in coeffs.items():
            c = rat(c)
            if c:
                out[tuple(I)] = c
        return HElement(self, out)

    # -- straightening --------------------------------------------------
    def _straighten(self, word: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        memo = self._word_memo
        got = memo.get(word)
        if got is not None:
            return got
        descent = None
        for p in range(len(word) - 1):
            if word[p] > word[p + 1]:
                descent = p
                break
        if descent is None:
            out = {word: ONE}
        else:
            p = descent
            b, a = word[p], word[p + 1]
            swapped = word[:p] + (a, b) + word[p + 2:]
            out = dict(self._straighten(swapped))
            for k, c in self.lie.bracket(b, a).items():
                contracted = word[:p] + (k,) + word[p + 2:]
                for w2, c2 in self._straighten(contracted).items():
                    v = out.get(w2, ZERO) + c * c2
                    if v:
                        out[w2] = v
                    else:
                        out.pop(w2, None)
        memo[word] = out
        return out

    def mono_mul(self, I: MultiIndex, J: MultiIndex) -> dict[MultiIndex, Fraction]:
        """b^(I) b^(J) expanded in the divided-power basis."""
        key = (I, J)
        got = self._mul_memo.get(key)
        if got is not None:
            return got
        word = _word_of(I) + _word_of(J)
        denom = mi_factorial(I) * mi_factorial(J)
        out: dict[MultiIndex, Fraction] = {}
        for w, c in self._straighten(word).items():
            K = _index_of_word(w, self.n)
            v = out.get(K, ZERO) + c * Fraction(mi_factorial(K), denom)
            if v:
                out[K] = v
            else:
                out.pop(K, None)
        self._mul_memo[key] = out
        return out

    def antipode_mono(self, I: MultiIndex) -> dict[MultiIndex, Fraction]:
        """S(b^(I)): sign-reversed straightening of the reversed word."""
        got = self._antipode_memo.get(I)
        if got is not None:
            return got
        word = tuple(reversed(_word_of(I)))
        sign = -1 if mi_deg(I) % 2 else 1
        denom = mi_factorial(I)
        out: dict[MultiIndex, Fraction] = {}
        for w, c in self._straighten(word).items():
            K = _index_of_word(w, self.n)
            v = out.get(K, ZERO) + sign * c * Fraction(mi_factorial(K), denom)
            if v:
                out[K] = v
            else:
                out.pop(K, None)
        self._antipode_memo[I] = out
        return out


class HElement:
    """A finite rational combination of PBW divided-power monomials."""

    __slots__ = ("hopf", "coeffs")

    def __init__(self, hopf: Hopf, coeffs: dict[MultiIndex, Fraction]):
        self.hopf = hopf
        self.coeffs = coeffs

    # -- ring structure --------------------------------------------------
    def __add__(self, other: "HElement") -> "HElement":
        self._check(other)
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            v = out.get(I, ZERO) + c
            if v:
                out[I] = v
            else:
                out.pop(I, None)
        return HElement(self.hopf, out)

    def __sub__(self, other: "HElement") -> "HElement":
        return self + other.scale(-1)

    def __neg__(self) -> "HElement":
        return self.scale(-1)

    def scale(self, c) -> "HElement":
        c = rat(c)
        if not c:
            return HElement(self.hopf, {})
        return HElement(self.hopf, {I: c * v for I, v in self.coeffs.items()})

    def __mul__(self, other: "HElement") -> "HElement":
        self._check(other)
        out: dict[MultiIndex, Fraction] = {}
        for I, a in self.coeffs.items():
            for J, b in other.coeffs.items():
                ab = a * b
                for K, c in self.hopf.mono_mul(I, J).items():
                    v = out.get(K, ZERO) + ab * c
                    if v:
                        out[K] = v
                    else:
                        out.pop(K, None)
        return HElement(self.hopf, out)

    def _check(self, other: "HElement") -> None:
        if other.hopf is not self.hopf:
            raise DimensionMismatch("elements of different enveloping algebras")

    # -- protocol used by pseudo-value carriers ---------------------------
    def add(self, other: "HElement") -> "HElement":
        return self + other

    def hmul(self, h: "HElement") -> "HElement":
        return h * self

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- structure maps ----------------------------------------------------
    def counit(self) -> Fraction:
        return self.coeffs.get(mi_zero(self.hopf.n), ZERO)

    def antipode(self) -> "HElement":
        out: dict[MultiIndex, Fraction] = {}
        for I, c in self.coeffs.items():
            for K, v in self.hopf.antipode_mono(I).items():
                w = out.get(K, ZERO) + c * v
                if w:
                    out[K] = w
                else:
                    out.pop(K, None)
        return HElement(self.hopf, out)

    def coproduct(self) -> dict[tuple[MultiIndex, MultiIndex], Fraction]:
        """Delta as a sparse map (J, K) -> coefficient; Delta(b^(I)) is the
        multiplicity-free sum over J + K = I."""
        out: dict[tuple[MultiIndex, MultiIndex], Fraction] = {}
        for I, c in self.coeffs.items():
            for J, K in mi_splits(I):
                v = out.get((J, K), ZERO) + c
                if v:
                    out[(J, K)] = v
                else:
                    out.pop((J, K), None)
        return out

    # -- inspection ----------------------------------------------------------
    def degree(self) -> int:
        """Filtration degree: max |I| over the support, -1 for zero."""
        if not self.coeffs:
            return -1
        return max(mi_deg(I) for I in self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, HElement) and self.hopf is other.hopf and self.coeffs == other.coeffs

    def __hash__(self):
        raise TypeError("HElement is not hashable")

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for I in sorted(self.coeffs, key=lambda J: (mi_deg(J), J)):
            bits.append(f"{self.coeffs[I]}*b^{I}")
        return " + ".join(bits)

    def serialize(self) -> list:
        return [[list(I), str(c)] for I, c in sorted(self.coeffs.items())]


def coproduct_power(h: HElement, slots: int) -> dict[tuple[MultiIndex, ...], Fraction]:
    """Iterated coproduct of h spread over `slots` tensor factors."""
    n = h.hopf.n
    out: dict[tuple[MultiIndex, ...], Fraction] = {}
    for I, c in h.coeffs.items():
        for split in _multi_splits(I, slots):
            v = out.get(split, ZERO) + c
            if v:
                out[split] = v
            else:
                out.pop(split, None)
    return out


def _multi_splits(I: MultiIndex, slots: int):
    if slots == 1:
        yield (I,)
        return
    for J, K in mi_splits(I):
        for rest in _multi_splits(K, slots - 1):
            yield (J,) + rest
