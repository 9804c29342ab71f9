"""Annihilation algebras at finite truncation.

W = X (x) d carries the bracket
    [x (x) a, y (x) b] = xy (x) [a,b] - x(ya) (x) b + (xb)y (x) a
(right H-actions on X), the decreasing filtration W_p = fil_p X (x) d, and a
gl(d) identification of W_0/W_1 sending x^j (x) b_i to -e_i^j.  The extended
algebra d |x W acts through [b, x (x) a] = bx (x) a.

Annihilation action on pseudo-module vectors: for a value
a * v = sum (f_i (x) g_i) (x)_H v_i, the element x (x)_H a acts by
    (x (x)_H a) . v = sum <x, S(f_i g_i(-1))> g_i(2) v_i,
which for left-normal values reduces to sum_I <x, S(b^(I))> v_I.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._linalg import Row, nullspace, solve_min_support
from .dualx import XElement
from .errors import DimensionMismatch, NotInW0, SolveFailed, TruncationExceeded
from .hopf import HElement, Hopf, MultiIndex, mi_below, mi_deg, mi_unit, mi_zero
from .liecore import Matrix, TraceForm, mat, rat
from .pseudoalg import WElement
from .twosided import LEFT, PseudoValue

ZERO = Fraction(0)


class AnnElement:
    """An element of W = X (x) d: one truncated dual coefficient per basis
    vector of d.  Validity is the minimum of the component validities."""

    __slots__ = ("hopf", "comps")

    def __init__(self, hopf: Hopf, comps):
        self.hopf = hopf
        self.comps = tuple(comps)
        if len(self.comps) != hopf.n:
            raise DimensionMismatch("need one X coefficient per basis vector of d")

    @classmethod
    def zero(cls, hopf: Hopf, validity: int) -> "AnnElement":
        return cls(hopf, tuple(XElement(hopf, {}, validity) for _ in range(hopf.n)))

    @classmethod
    def term(cls, hopf: Hopf, x: XElement, a: int) -> "AnnElement":
        comps = [XElement(hopf, {}, x.validity) for _ in range(hopf.n)]
        comps[a] = x
        return cls(hopf, comps)

    @property
    def validity(self) -> int:
        return min(c.validity for c in self.comps)

    def add(self, other: "AnnElement") -> "AnnElement":
        return AnnElement(self.hopf, (a + b for a, b in zip(self.comps, other.comps)))

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def scale(self, c) -> "AnnElement":
        return AnnElement(self.hopf, (x.scale(c) for x in self.comps))

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.comps)

    def order(self) -> int | None:
        """Largest p with the element in W_p (None for zero)."""
        orders = [x.order() for x in self.comps if not x.is_zero()]
        if not orders:
            return None
        return min(orders)

    def truncate(self, validity: int) -> "AnnElement":
        return AnnElement(self.hopf, (x.truncate(validity) for x in self.comps))

    def drop_below_order(self, p: int) -> "AnnElement":
        return AnnElement(self.hopf, (x.drop_below_order(p) for x in self.comps))

    def eq_upto(self, other: "AnnElement", degree: int | None = None) -> bool:
        return all(a.eq_upto(b, degree) for a, b in zip(self.comps, other.comps))

    def __repr__(self) -> str:
        bits = [f"({x!r})(x)b_{a+1}" for a, x in enumerate(self.comps) if not x.is_zero()]
        return " + ".join(bits) if bits else f"0 (validity {self.validity})"


# ---------------------------------------------------------------------------
# Brackets and basic maps
# ---------------------------------------------------------------------------

def ann_bracket(A: AnnElement, B: AnnElement) -> AnnElement:
    """[x (x) a, y (x) b] = xy (x) [a,b] - x(ya) (x) b + (xb)y (x) a."""
    hopf = A.hopf
    lie = hopf.lie
    n = hopf.n
    validity = min(A.validity, B.validity) - 1
    out = AnnElement.zero(hopf, validity)
    for a in range(n):
        x = A.comps[a]
        if x.is_zero():
            continue
        for b in range(n):
            y = B.comps[b]
            if y.is_zero():
                continue
            prod = x * y
            for k, c in lie.bracket(a, b).items():
                out = out.add(AnnElement.term(hopf, prod.scale(c).truncate(validity), k))
            out = out.add(AnnElement.term(hopf, (x * y.act_right(hopf.gen(a))).scale(-1), b))
            out = out.add(AnnElement.term(hopf, x.act_right(hopf.gen(b)) * y, a))
    return out.truncate(validity)


def d_act(hopf: Hopf, i: int, A: AnnElement) -> AnnElement:
    """[b_i, x (x) a] = b_i x (x) a, the derivation action of d on W."""
    return AnnElement(hopf, (x.act_left(hopf.gen(i)) for x in A.comps))


def act_on_x(A: AnnElement, y: XElement) -> XElement:
    """(x (x) a) y = -x(ya): the W-action on its module X."""
    hopf = A.hopf
    out = None
    for a in range(hopf.n):
        x = A.comps[a]
        if x.is_zero():
            continue
        term = (x * y.act_right(hopf.gen(a))).scale(-1)
        out = term if out is None else out + term
    if out is None:
        return XElement(hopf, {}, min(A.validity, y.validity) - 1)
    return out


def ann_div(A: AnnElement, chi: TraceForm) -> XElement:
    """Div^chi(sum y_a (x) b_a) = sum y_a (b_a + chi(b_a))."""
    hopf = A.hopf
    out = XElement(hopf, {}, A.validity - 1)
    for a in range(hopf.n):
        x = A.comps[a]
        if x.is_zero():
            continue
        out = out + x.act_right(hopf.gen(a)) + x.scale(chi(a)).truncate(A.validity - 1)
    return out


def iota(x: XElement, w: WElement) -> AnnElement:
    """iota(x (x)_H sum h_a (x) b_a) = sum (x h_a) (x) b_a: S -> W."""
    hopf = x.hopf
    comps = []
    for a in range(hopf.n):
        h = w.comps[a]
        if h.is_zero():
            comps.append(XElement(hopf, {}, x.validity))
        else:
            comps.append(x.act_right(h))
    validity = min(c.validity for c in comps)
    return AnnElement(hopf, (c.truncate(validity) for c in comps))


def gr_iso_gl(A: AnnElement) -> Matrix:
    """The class of A in W_0/W_1 as a gl(d) matrix: x^j (x) b_i -> -e_i^j."""
    hopf = A.hopf
    n = hopf.n
    order = A.order()
    if order is not None and order < 0:
        raise NotInW0(f"element has filtration order {order}")
    rows = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for j in range(n):
            c = A.comps[a].coeffs.get(mi_unit(n, j))
            if c:
                rows[a][j] -= c
    return mat(rows)


@dataclass
class ExtAnnElement:
    """Formal pair in the extended algebra d |x W."""

    d_part: tuple[Fraction, ...]
    w_part: AnnElement

    @classmethod
    def from_d(cls, hopf: Hopf, i: int, validity: int) -> "ExtAnnElement":
        vec = tuple(Fraction(1 if k == i else 0) for k in range(hopf.n))
        return cls(vec, AnnElement.zero(hopf, validity))

    def bracket(self, other: "ExtAnnElement") -> "ExtAnnElement":
        hopf = self.w_part.hopf
        lie = hopf.lie
        d_out = lie.bracket_vec(self.d_part, other.d_part)
        w_out = ann_bracket(self.w_part, other.w_part)
        for i, c in enumerate(self.d_part):
            if c:
                w_out = w_out.add(d_act(hopf, i, other.w_part).scale(c))
        for i, c in enumerate(other.d_part):
            if c:
                w_out = w_out.add(d_act(hopf, i, self.w_part).scale(-c))
        return ExtAnnElement(d_out, w_out)


# ---------------------------------------------------------------------------
# Annihilation action on pseudo-module vectors
# ---------------------------------------------------------------------------

def ann_action(A: AnnElement, v, action_pv):
    """Apply A = sum x_a (x) b_a to a module vector v.

    `action_pv(i, v)` must return the pseudoaction value (1 (x) b_i) * v as a
    PseudoValue; the contraction uses its left-normal coefficients.
    Raises TruncationExceeded when a pairing would exceed validity.
    """
    hopf = A.hopf
    out = None
    for a in range(hopf.n):
        x = A.comps[a]
        if x.is_zero():
            continue
        val = action_pv(a, v).to_left()
        for I, w in val.terms.items():
            if mi_deg(I) > x.validity:
                raise TruncationExceeded(
                    f"annihilation action needs pairing at degree {mi_deg(I)} "
                    f"but validity is {x.validity}"
                )
            coeff = ZERO
            for K, c in hopf.antipode_mono(I).items():
                xc = x.coeffs.get(K)
                if xc:
                    coeff += c * xc
            if coeff:
                term = w.scale(coeff)
                out = term if out is None else out.add(term)
    return out


def reconstruct_pseudoaction(hopf: Hopf, w_on: WElement, v, action_pv, degree_bound: int,
                             validity: int) -> PseudoValue:
    """a * v = sum_I (S(b^(I)) (x) 1) (x)_H ((x_I (x)_H a) . v)."""
    out = PseudoValue.zero(hopf, LEFT)
    for I in mi_below(hopf.n, degree_bound):
        xI = XElement.mono(hopf, I, 1, validity)
        acted = ann_action(iota(xI, w_on), v, action_pv)
        if acted is None or acted.is_zero():
            continue
        s = hopf.element(hopf.antipode_mono(I))
        out = out.add(PseudoValue.from_tensor(s, hopf.one(), acted))
    return out


# ---------------------------------------------------------------------------
# Euler element and the inner-derivation map gamma
# ---------------------------------------------------------------------------

def _unknown_slots(hopf: Hopf, deg_lo: int, deg_hi: int) -> list[tuple[MultiIndex, int]]:
    slots = []
    for J in mi_below(hopf.n, deg_hi):
        if mi_deg(J) < deg_lo:
            continue
        for a in range(hopf.n):
            slots.append((J, a))
    return slots


def _from_solution(hopf: Hopf, slots, sol: Row, validity: int) -> AnnElement:
    comps = [dict() for _ in range(hopf.n)]
    for col, c in sol.items():
        J, a = slots[col]
        comps[a][J] = c
    return AnnElement(hopf, (XElement(hopf, comp, validity) for comp in comps))


def euler_element(hopf: Hopf, truncation: int) -> AnnElement:
    """The canonical degree-grading element of W_0, modulo W_{D-2}.

    It is pinned by its action on the module X: on every x_I it acts as
    -|I| x_I (up to the truncation order), which makes its symbol in
    W_0/W_1 the identity matrix of gl(d).  For an abelian d it equals
    -sum_i x^i (x) b_i exactly.
    """
    if truncation < 2:
        raise SolveFailed("truncation too small for the Euler element")
    cap = truncation - 2
    slots = _unknown_slots(hopf, 1, cap)
    index = {s: c for c, s in enumerate(slots)}
    rows: dict[tuple[MultiIndex, MultiIndex], Row] = {}
    rhs: dict[tuple[MultiIndex, MultiIndex], Fraction] = {}
    probes = [I for I in mi_below(hopf.n, cap) if mi_deg(I) >= 1]
    for I in probes:
        xI = XElement.mono(hopf, I, 1, truncation)
        for (J, a), col in index.items():
            contrib = (XElement.mono(hopf, J, 1, truncation) *
                       xI.act_right(hopf.gen(a))).scale(-1)
            for K, c in contrib.coeffs.items():
                if mi_deg(K) > cap:
                    continue
                row = rows.setdefault((I, K), {})
                row[col] = row.get(col, ZERO) + c
        rhs[(I, I)] = rhs.get((I, I), ZERO) + Fraction(-mi_deg(I))
    keys = sorted(set(rows) | set(rhs))
    sol = solve_min_support([rows.get(k, {}) for k in keys],
                            [rhs.get(k, ZERO) for k in keys], len(slots))
    if sol is None:
        raise SolveFailed("Euler system inconsistent at this truncation")
    return _from_solution(hopf, slots, sol, cap)


def gamma(hopf: Hopf, l: int, truncation: int) -> AnnElement:
    """The inner-derivation preimage of b_l: [gamma(b_l), A] = [b_l, A].

    Solved modulo the truncation on a spanning probe set; the returned
    representative has support degree <= D - 2 and gamma(b_l) + 1 (x) b_l
    lies in W_0 with gl(d) symbol ad b_l.
    """
    if truncation < 3:
        raise SolveFailed("truncation too small for gamma")
    cap = truncation - 2
    slots = _unknown_slots(hopf, 0, cap)
    index = {s: c for c, s in enumerate(slots)}
    rows: dict[tuple, Row] = {}
    rhs: dict[tuple, Fraction] = {}
    probe_deg = 2
    eq_cap = cap - 1
    for K in mi_below(hopf.n, probe_deg):
        for b in range(hopf.n):
            probe = AnnElement.term(hopf, XElement.mono(hopf, K, 1, truncation), b)
            target = d_act(hopf, l, probe)
            for (J, a), col in index.items():
                basis = AnnElement.term(hopf, XElement.mono(hopf, J, 1, truncation), a)
                br = ann_bracket(basis, probe)
                for comp_idx, x in enumerate(br.comps):
                    for Kc, c in x.coeffs.items():
                        if mi_deg(Kc) > eq_cap:
                            continue
                        key = (K, b, comp_idx, Kc)
                        rows.setdefault(key, {})
                        rows[key][col] = rows[key].get(col, ZERO) + c
            for comp_idx, x in enumerate(target.comps):
                for Kc, c in x.coeffs.items():
                    if mi_deg(Kc) > eq_cap:
                        continue
                    rhs[(K, b, comp_idx, Kc)] = rhs.get((K, b, comp_idx, Kc), ZERO) + c
    keys = sorted(set(rows) | set(rhs))
    sol = solve_min_support([rows.get(k, {}) for k in keys],
                            [rhs.get(k, ZERO) for k in keys], len(slots))
    if sol is None:
        raise SolveFailed("gamma system inconsistent at this truncation")
    return _from_solution(hopf, slots, sol, cap)
