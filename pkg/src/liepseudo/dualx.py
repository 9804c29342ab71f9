"""The truncated dual X = H* with basis x_I dual to the divided powers.

X is pro-finite; computations happen modulo fil_D X for an explicit validity
degree D carried by every element.  Operations compute the tightest correct
validity of their result, and equality is only meaningful up to the common
validity, so callers compare through `eq_upto`.

Conventions: <x_I, b^(J)> = delta_I^J; x_J x_K = x_{J+K}; the left action is
<h x, f> = <x, S(h) f> and the right action <x h, f> = <x, f S(h)>.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, TruncationExceeded
from .hopf import HElement, Hopf, MultiIndex, mi_add, mi_deg, mi_below, mi_unit, mi_zero
from .liecore import rat

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_TRUNCATION = 6


class XElement:
    __slots__ = ("hopf", "coeffs", "validity")

    def __init__(self, hopf: Hopf, coeffs: dict[MultiIndex, Fraction], validity: int):
        self.hopf = hopf
        self.coeffs = {I: c for I, c in coeffs.items() if c and mi_deg(I) <= validity}
        self.validity = validity

    # -- constructors ----------------------------------------------------
    @classmethod
    def unit(cls, hopf: Hopf, validity: int = DEFAULT_TRUNCATION) -> "XElement":
        """The counit functional x_0, the unit of the ring X."""
        return cls(hopf, {mi_zero(hopf.n): ONE}, validity)

    @classmethod
    def coord(cls, hopf: Hopf, i: int, validity: int = DEFAULT_TRUNCATION) -> "XElement":
        """The degree-one coordinate x^i."""
        return cls(hopf, {mi_unit(hopf.n, i): ONE}, validity)

    @classmethod
    def mono(cls, hopf: Hopf, I, c=1, validity: int = DEFAULT_TRUNCATION) -> "XElement":
        return cls(hopf, {tuple(I): rat(c)}, validity)

    # -- linear structure -------------------------------------------------
    def __add__(self, other: "XElement") -> "XElement":
        self._check(other)
        validity = min(self.validity, other.validity)
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            v = out.get(I, ZERO) + c
            if v:
                out[I] = v
            else:
                out.pop(I, None)
        return XElement(self.hopf, out, validity)

    def __sub__(self, other: "XElement") -> "XElement":
        return self + other.scale(-1)

    def __neg__(self) -> "XElement":
        return self.scale(-1)

    def scale(self, c) -> "XElement":
        c = rat(c)
        return XElement(self.hopf, {I: c * v for I, v in self.coeffs.items()} if c else {}, self.validity)

    def _check(self, other: "XElement") -> None:
        if other.hopf is not self.hopf:
            raise DimensionMismatch("dual elements over different algebras")

    # -- ring structure --------------------------------------------------
    def __mul__(self, other: "XElement") -> "XElement":
        """x_J x_K = x_{J+K}, truncated to the common validity."""
        self._check(other)
        validity = min(self.validity, other.validity)
        out: dict[MultiIndex, Fraction] = {}
        for I, a in self.coeffs.items():
            for J, b in other.coeffs.items():
                K = mi_add(I, J)
                if mi_deg(K) > validity:
                    continue
                v = out.get(K, ZERO) + a * b
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
        return XElement(self.hopf, out, validity)

    # -- pairing and H-actions ---------------------------------------------
    def pair(self, h: HElement) -> Fraction:
        if h.degree() > self.validity:
            raise TruncationExceeded(
                f"pairing needs degree {h.degree()} but validity is {self.validity}"
            )
        out = ZERO
        for I, c in h.coeffs.items():
            v = self.coeffs.get(I)
            if v:
                out += c * v
        return out

    def act_left(self, h: HElement) -> "XElement":
        """h . x with <h x, f> = <x, S(h) f>; validity drops by deg h."""
        d = h.degree()
        if d < 0:
            return XElement(self.hopf, {}, self.validity)
        validity = self.validity - d
        if validity < -1:
            raise TruncationExceeded("left action exhausts validity")
        sh = h.antipode()
        out: dict[MultiIndex, Fraction] = {}
        for J in mi_below(self.hopf.n, max(validity, 0)) if validity >= 0 else []:
            val = ZERO
            for K, c in (sh * self.hopf.mono(J)).coeffs.items():
                v = self.coeffs.get(K)
                if v:
                    val += c * v
            if val:
                out[J] = val
        return XElement(self.hopf, out, validity)

    def act_right(self, h: HElement) -> "XElement":
        """x . h with <x h, f> = <x, f S(h)>; validity drops by deg h."""
        d = h.degree()
        if d < 0:
            return XElement(self.hopf, {}, self.validity)
        validity = self.validity - d
        if validity < -1:
            raise TruncationExceeded("right action exhausts validity")
        sh = h.antipode()
        out: dict[MultiIndex, Fraction] = {}
        for J in mi_below(self.hopf.n, max(validity, 0)) if validity >= 0 else []:
            val = ZERO
            for K, c in (self.hopf.mono(J) * sh).coeffs.items():
                v = self.coeffs.get(K)
                if v:
                    val += c * v
            if val:
                out[J] = val
        return XElement(self.hopf, out, validity)

    # -- filtration ----------------------------------------------------------
    def order(self) -> int | None:
        """Filtration order: the largest p with x in fil_p X, i.e. min |I| - 1
        over the support; None for (truncation-)zero elements."""
        if not self.coeffs:
            return None
        return min(mi_deg(I) for I in self.coeffs) - 1

    def truncate(self, validity: int) -> "XElement":
        return XElement(self.hopf, self.coeffs, min(self.validity, validity))

    def drop_below_order(self, p: int) -> "XElement":
        """The component in fil_p X (support degrees >= p + 1)."""
        return XElement(
            self.hopf, {I: c for I, c in self.coeffs.items() if mi_deg(I) >= p + 1}, self.validity
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def eq_upto(self, other: "XElement", degree: int | None = None) -> bool:
        """Equality of coefficients up to min validity (or a given degree)."""
        self._check(other)
        bound = min(self.validity, other.validity)
        if degree is not None:
            bound = min(bound, degree)
        keys = set(self.coeffs) | set(other.coeffs)
        for I in keys:
            if mi_deg(I) > bound:
                continue
            if self.coeffs.get(I, ZERO) != other.coeffs.get(I, ZERO):
                return False
        return True

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"0 (mod fil_{self.validity})"
        bits = []
        for I in sorted(self.coeffs, key=lambda J: (mi_deg(J), J)):
            bits.append(f"{self.coeffs[I]}*x_{I}")
        return " + ".join(bits) + f" (mod fil_{self.validity})"

    def serialize(self) -> dict:
        return {
            "terms": [[list(I), str(c)] for I, c in sorted(self.coeffs.items())],
            "validity": self.validity,
        }
