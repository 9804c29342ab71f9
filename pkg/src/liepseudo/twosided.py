"""Canonical forms for elements of (H (x) H) (x)_H V and H^(x)3 (x)_H V.

A PseudoValue stores one of the two normal forms
    left:   sum_I (b^(I) (x) 1) (x)_H v_I
    right:  sum_I (1 (x) b^(I)) (x)_H v_I
as a sparse map I -> v_I.  Carrier vectors v are duck-typed: they must
provide add(w), scale(c), hmul(h: HElement), is_zero().  Conversions move
factors across (x)_H with the antipode, e.g.
    (f (x) g) (x)_H v = sum (f S(g_(1)) (x) 1) (x)_H g_(2) v.
"""

from __future__ import annotations

from fractions import Fraction

from .hopf import HElement, Hopf, MultiIndex, mi_deg, mi_splits
from .liecore import rat

LEFT = "L"
RIGHT = "R"


class PseudoValue:
    __slots__ = ("hopf", "orient", "terms")

    def __init__(self, hopf: Hopf, orient: str, terms: dict[MultiIndex, object]):
        self.hopf = hopf
        self.orient = orient
        self.terms = {I: v for I, v in terms.items() if not v.is_zero()}

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, hopf: Hopf, orient: str = LEFT) -> "PseudoValue":
        return cls(hopf, orient, {})

    @classmethod
    def from_tensor(cls, f: HElement, g: HElement, vec, orient: str = LEFT) -> "PseudoValue":
        """Normal form of (f (x) g) (x)_H vec."""
        hopf = f.hopf
        terms: dict[MultiIndex, object] = {}
        if orient == LEFT:
            outer, inner = f, g
        else:
            outer, inner = g, f
        for J, c in inner.coeffs.items():
            for A, B in mi_splits(J):
                sA = hopf.element(hopf.antipode_mono(A))
                left = (outer * sA) if orient == LEFT else (sA * outer)
                moved = vec.hmul(hopf.mono(B)).scale(c)
                if moved.is_zero():
                    continue
                for I, c2 in left.coeffs.items():
                    _acc(terms, I, moved.scale(c2))
        return cls(hopf, orient, terms)

    # -- linear structure ----------------------------------------------------
    def add(self, other: "PseudoValue") -> "PseudoValue":
        if other.orient != self.orient:
            other = other.convert(self.orient)
        out = dict(self.terms)
        for I, v in other.terms.items():
            _acc(out, I, v)
        return PseudoValue(self.hopf, self.orient, out)

    def scale(self, c) -> "PseudoValue":
        c = rat(c)
        if not c:
            return PseudoValue(self.hopf, self.orient, {})
        return PseudoValue(self.hopf, self.orient, {I: v.scale(c) for I, v in self.terms.items()})

    def neg(self) -> "PseudoValue":
        return self.scale(-1)

    def sub(self, other: "PseudoValue") -> "PseudoValue":
        return self.add(other.scale(-1))

    # -- conversions -----------------------------------------------------------
    def convert(self, orient: str) -> "PseudoValue":
        if orient == self.orient:
            return self
        hopf = self.hopf
        out: dict[MultiIndex, object] = {}
        # (b^(I) (x) 1) (x)_H v = sum_{A+B=I} (1 (x) S(b^(A))) (x)_H b^(B) v
        # and symmetrically for the opposite direction.
        for I, v in self.terms.items():
            for A, B in mi_splits(I):
                moved = v.hmul(hopf.mono(B))
                if moved.is_zero():
                    continue
                for K, c in hopf.antipode_mono(A).items():
                    _acc(out, K, moved.scale(c))
        return PseudoValue(hopf, orient, out)

    def to_left(self) -> "PseudoValue":
        return self.convert(LEFT)

    def to_right(self) -> "PseudoValue":
        return self.convert(RIGHT)

    def flip(self) -> "PseudoValue":
        """(sigma (x)_H id): swap the two H-slots (well defined by
        cocommutativity); in normal form this just toggles the orientation."""
        return PseudoValue(self.hopf, RIGHT if self.orient == LEFT else LEFT, dict(self.terms))

    # -- H-module structure on the two slots -------------------------------------
    def mul_outer(self, h: HElement) -> "PseudoValue":
        """Left-multiply the slot carrying the normal-form monomials."""
        out: dict[MultiIndex, object] = {}
        for I, v in self.terms.items():
            for K, c in (h * self.hopf.mono(I)).coeffs.items():
                _acc(out, K, v.scale(c))
        return PseudoValue(self.hopf, self.orient, out)

    def mul_inner(self, h: HElement) -> "PseudoValue":
        """Left-multiply the slot pinned to 1, renormalizing."""
        acc = PseudoValue(self.hopf, self.orient, {})
        for I, v in self.terms.items():
            mono = self.hopf.mono(I)
            if self.orient == LEFT:
                acc = acc.add(PseudoValue.from_tensor(mono, h, v, LEFT))
            else:
                acc = acc.add(PseudoValue.from_tensor(h, mono, v, RIGHT))
        return acc

    def mul_first(self, h: HElement) -> "PseudoValue":
        return self.mul_outer(h) if self.orient == LEFT else self.mul_inner(h)

    def mul_second(self, h: HElement) -> "PseudoValue":
        return self.mul_inner(h) if self.orient == LEFT else self.mul_outer(h)

    # -- inspection ---------------------------------------------------------------
    def map_vectors(self, fn) -> "PseudoValue":
        return PseudoValue(self.hopf, self.orient, {I: fn(v) for I, v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def eq(self, other: "PseudoValue") -> bool:
        return self.sub(other).is_zero()

    def degree(self) -> int:
        """Max |I| over the normal-form support (-1 for zero)."""
        if not self.terms:
            return -1
        return max(mi_deg(I) for I in self.terms)

    def support(self) -> list[MultiIndex]:
        return sorted(self.terms, key=lambda I: (mi_deg(I), I))

    def __repr__(self) -> str:
        side = "left" if self.orient == LEFT else "right"
        if not self.terms:
            return f"0 [{side}-normal]"
        bits = [f"b^{I} : {v!r}" for I, v in sorted(self.terms.items())]
        return f"[{side}-normal] " + "; ".join(bits)


class PseudoValue3:
    """Normal form sum (b^(I) (x) b^(J) (x) 1) (x)_H v_{IJ} in H^(x)3 (x)_H V."""

    __slots__ = ("hopf", "terms")

    def __init__(self, hopf: Hopf, terms: dict[tuple[MultiIndex, MultiIndex], object]):
        self.hopf = hopf
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def zero(cls, hopf: Hopf) -> "PseudoValue3":
        return cls(hopf, {})

    def add(self, other: "PseudoValue3") -> "PseudoValue3":
        out = dict(self.terms)
        for k, v in other.terms.items():
            _acc(out, k, v)
        return PseudoValue3(self.hopf, out)

    def scale(self, c) -> "PseudoValue3":
        c = rat(c)
        return PseudoValue3(self.hopf, {k: v.scale(c) for k, v in self.terms.items()} if c else {})

    def sub(self, other: "PseudoValue3") -> "PseudoValue3":
        return self.add(other.scale(-1))

    def swap12(self) -> "PseudoValue3":
        """(sigma (x) id) (x)_H id on normalized values: swap the I, J keys."""
        return PseudoValue3(self.hopf, {(J, I): v for (I, J), v in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0 [3-fold]"
        bits = [f"b^{I}(x)b^{J} : {v!r}" for (I, J), v in sorted(self.terms.items())]
        return "[3-fold] " + "; ".join(bits)


def _acc(store: dict, key, vec) -> None:
    cur = store.get(key)
    if cur is None:
        store[key] = vec
    else:
        s = cur.add(vec)
        if s.is_zero():
            del store[key]
        else:
            store[key] = s


# ---------------------------------------------------------------------------
# Compositions used by the Jacobi-type axioms
# ---------------------------------------------------------------------------

def compose_left(p: PseudoValue, b, product) -> PseudoValue3:
    """((h (x)_H e) * b) expanded into H^(x)3 (x)_H V for p = sum (h_I (x)_H e_I).

    `product(e, b)` must return a PseudoValue.  Realizes
    (h (x)_H a) * b = (h (x) 1)(Delta (x) id)(g_i) (x)_H c_i.
    """
    hopf = p.hopf
    p = p.to_left()
    out: dict[tuple[MultiIndex, MultiIndex], object] = {}
    for I, e in p.terms.items():
        q = product(e, b).to_left()
        mono_I = hopf.mono(I)
        for J, w in q.terms.items():
            for A, B in mi_splits(J):
                for K, c in (mono_I * hopf.mono(A)).coeffs.items():
                    _acc(out, (K, B), w.scale(c))
    return PseudoValue3(hopf, out)


def compose_right(a, p: PseudoValue, product) -> PseudoValue3:
    """a * (h (x)_H e) expanded into H^(x)3 (x)_H V.

    Realizes a * (h (x)_H b) = (1 (x) h)(id (x) Delta)(g_i) (x)_H c_i.
    """
    hopf = p.hopf
    p = p.to_left()
    out: dict[tuple[MultiIndex, MultiIndex], object] = {}
    for I, e in p.terms.items():
        q = product(a, e).to_left()
        for J, w in q.terms.items():
            # (1 (x) b^(I) (x) 1)(b^(J) (x) 1 (x) 1) = b^(J) (x) b^(I) (x) 1
            _acc(out, (J, I), w)
    return PseudoValue3(hopf, out)


def jacobi_defect(a, b, c, product) -> PseudoValue3:
    """[[a*b]*c] - [a*[b*c]] + ((sigma (x) id) (x)_H id)[b*[a*c]]."""
    t1 = compose_left(product(a, b), c, product)
    t2 = compose_right(a, product(b, c), product)
    t3 = compose_right(b, product(a, c), product).swap12()
    return t1.sub(t2).add(t3)


def skew_defect(a, b, product) -> PseudoValue:
    """[b*a] + (sigma (x)_H id)[a*b]; zero iff the bracket is skew."""
    lhs = product(b, a)
    return lhs.add(product(a, b).flip().convert(lhs.orient))


def module_defect(a, b, v, bracket, action) -> PseudoValue3:
    """[a*b]*v - a*(b*v) + ((sigma (x) id) (x)_H id)(b*(a*v))."""
    t1 = compose_left(bracket(a, b), v, action)
    t2 = compose_right(a, action(b, v), action)
    t3 = compose_right(b, action(a, v), action).swap12()
    return t1.sub(t2).add(t3)
