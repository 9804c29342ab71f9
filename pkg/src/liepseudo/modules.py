"""Finite free H-modules with pseudoactions.

A ModuleSpec is H (x) R for a finite-dimensional generator space R, with the
pseudoaction stored as one left-normal PseudoValue per (basis vector of d,
generator).  Everything else extends H-bilinearly.  Builders cover the
tensor modules attached to a (d + gl d)-module, their duals and twists, and
the shifted modules whose generator line consists of singular vectors.

Module vectors are sparse maps multi-index -> coordinate tuple over R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ._linalg import Row, RowReducer, nullspace, rank, row_addmul
from .annih import AnnElement, ann_action, iota
from .dualx import XElement
from .errors import DimensionMismatch, DimensionTooSmall, NotFree, RepInvalid
from .hopf import HElement, Hopf, MultiIndex, mi_below, mi_deg, mi_splits, mi_zero
from .liecore import (
    Matrix,
    RepData,
    TraceForm,
    box_tensor,
    identity_matrix,
    mat_apply,
    mat_mul,
    mat_scale,
    rat,
    zero_matrix,
)
from .pseudoalg import WAlgebra, WElement
from .twosided import LEFT, PseudoValue

ZERO = Fraction(0)
ONE = Fraction(1)


class ModuleVector:
    """v = sum_I b^(I) (x) v_I with coordinates v_I over the generator basis."""

    __slots__ = ("hopf", "width", "terms")

    def __init__(self, hopf: Hopf, width: int, terms: dict[MultiIndex, tuple[Fraction, ...]]):
        self.hopf = hopf
        self.width = width
        self.terms = {I: row for I, row in terms.items() if any(row)}

    @classmethod
    def zero(cls, hopf: Hopf, width: int) -> "ModuleVector":
        return cls(hopf, width, {})

    @classmethod
    def unit(cls, hopf: Hopf, width: int, k: int, I: MultiIndex | None = None) -> "ModuleVector":
        I = I if I is not None else mi_zero(hopf.n)
        row = tuple(ONE if c == k else ZERO for c in range(width))
        return cls(hopf, width, {I: row})

    def add(self, other: "ModuleVector") -> "ModuleVector":
        if other.width != self.width:
            raise DimensionMismatch("module widths differ")
        out = dict(self.terms)
        for I, row in other.terms.items():
            cur = out.get(I)
            out[I] = row if cur is None else tuple(a + b for a, b in zip(cur, row))
        return ModuleVector(self.hopf, self.width, out)

    def __add__(self, other):
        return self.add(other)

    def __sub__(self, other):
        return self.add(other.scale(-1))

    def scale(self, c) -> "ModuleVector":
        c = rat(c)
        if not c:
            return ModuleVector(self.hopf, self.width, {})
        return ModuleVector(
            self.hopf, self.width, {I: tuple(c * v for v in row) for I, row in self.terms.items()}
        )

    def hmul(self, h: HElement) -> "ModuleVector":
        out: dict[MultiIndex, list[Fraction]] = {}
        for I, row in self.terms.items():
            for J, c in h.coeffs.items():
                for K, c2 in self.hopf.mono_mul(J, I).items():
                    cur = out.setdefault(K, [ZERO] * self.width)
                    cc = c * c2
                    for k, v in enumerate(row):
                        if v:
                            cur[k] += cc * v
        return ModuleVector(self.hopf, self.width, {K: tuple(r) for K, r in out.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(mi_deg(I) for I in self.terms)

    def coefficient(self, I: MultiIndex) -> tuple[Fraction, ...]:
        return self.terms.get(tuple(I), (ZERO,) * self.width)

    def eq(self, other: "ModuleVector") -> bool:
        return (self - other).is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for I in sorted(self.terms, key=lambda J: (mi_deg(J), J)):
            bits.append(f"b^{I}(x){self.terms[I]}")
        return " + ".join(bits)

    def serialize(self) -> list:
        return [
            [list(I), [str(v) for v in row]]
            for I, row in sorted(self.terms.items(), key=lambda kv: (mi_deg(kv[0]), kv[0]))
        ]


@dataclass
class ModuleSpec:
    """A free H-module H (x) R with a pseudoaction table.

    table[i][k] is the left-normal value of (1 (x) b_i) * (1 (x) u_k).
    Optional representation data records how R was constructed.
    """

    hopf: Hopf
    dim: int
    table: tuple
    name: str = ""
    rep_d: RepData | None = None
    rep_gl: RepData | None = None
    tags: tuple[str, ...] = ()
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.table) != self.hopf.n:
            raise RepInvalid("need one table row per basis vector of d")
        for row in self.table:
            if len(row) != self.dim:
                raise RepInvalid("table width disagrees with the generator count")
        if not self.labels:
            self.labels = tuple(f"u{k+1}" for k in range(self.dim))

    # -- vectors ---------------------------------------------------------
    def zero_vector(self) -> ModuleVector:
        return ModuleVector.zero(self.hopf, self.dim)

    def unit(self, k: int, I: MultiIndex | None = None) -> ModuleVector:
        return ModuleVector.unit(self.hopf, self.dim, k, I)

    def vector(self, terms: dict) -> ModuleVector:
        return ModuleVector(self.hopf, self.dim, {tuple(I): tuple(map(rat, row)) for I, row in terms.items()})

    def basis_upto(self, p: int) -> list[tuple[MultiIndex, int]]:
        return [(I, k) for I in mi_below(self.hopf.n, p) for k in range(self.dim)]

    # -- the pseudoaction --------------------------------------------------
    def action_pv(self, i: int, v: ModuleVector) -> PseudoValue:
        """(1 (x) b_i) * v by H-bilinearity in the module argument."""
        out = PseudoValue.zero(self.hopf, LEFT)
        for I, row in v.terms.items():
            mono = self.hopf.mono(I)
            for k, c in enumerate(row):
                if not c:
                    continue
                out = out.add(self.table[i][k].mul_second(mono).scale(c))
        return out

    def w_star(self, w: WElement, v: ModuleVector) -> PseudoValue:
        """(sum_a h_a (x) b_a) * v = sum_a ((h_a (x) 1) (x)_H 1)((1 (x) b_a) * v)."""
        out = PseudoValue.zero(self.hopf, LEFT)
        for a, h in enumerate(w.comps):
            if h.is_zero():
                continue
            out = out.add(self.action_pv(a, v).mul_first(h))
        return out

    def full_tensor(self, p: PseudoValue) -> list[tuple[MultiIndex, MultiIndex, int, Fraction]]:
        """Expand a value over this module into pure tensors
        (b^(F) (x) b^(G)) (x)_H (1 (x) u_k)."""
        out: dict[tuple[MultiIndex, MultiIndex, int], Fraction] = {}
        for I, vec in p.to_left().terms.items():
            for J, row in vec.terms.items():
                for A, B in mi_splits(J):
                    for F, c in self.hopf.mono_mul(I, A).items():
                        for k, v in enumerate(row):
                            if not v:
                                continue
                            key = (F, B, k)
                            w = out.get(key, ZERO) + c * v
                            if w:
                                out[key] = w
                            else:
                                out.pop(key, None)
        return [(F, G, k, c) for (F, G, k), c in sorted(out.items())]

    def __repr__(self) -> str:
        return f"ModuleSpec({self.name or 'H(x)R'}, rank {self.dim})"


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def tensor_module(hopf: Hopf, pi: RepData, u: RepData, name: str = "", tags=(),
                  validate: bool = True) -> ModuleSpec:
    """Tensor module for the (d + gl d)-module R = Pi (x) U:

    (1 (x) b_i) * (1 (x) w) = (1 (x) 1) (x)_H (1 (x) (ad b_i) w)
      + sum_j (b_j (x) 1) (x)_H (1 (x) e_i^j w)
      - (1 (x) b_i) (x)_H (1 (x) w) + (1 (x) 1) (x)_H (1 (x) b_i w).

    pi is a d-representation, u a gl(d)-representation (enter an sl(d)-module
    as gl(d) data with its declared identity scalar).
    """
    if validate:
        pi.validate()
        u.validate()
    d_part, gl_part = box_tensor(pi, u)
    n = hopf.n
    dim = d_part.dim
    one = hopf.one()
    ad = hopf.lie.adjoint()
    table = []
    for i in range(n):
        row = []
        ad_on_R = gl_part.gl_of(ad.d_matrix(i))
        for k in range(dim):
            base = ModuleVector.unit(hopf, dim, k)
            head = tuple(ad_on_R[r][k] + d_part.d_matrix(i)[r][k] for r in range(dim))
            val = PseudoValue.from_tensor(
                one, one, ModuleVector(hopf, dim, {mi_zero(n): head})
            )
            for j in range(n):
                col = tuple(gl_part.gl_matrix(i, j)[r][k] for r in range(dim))
                if any(col):
                    val = val.add(
                        PseudoValue.from_tensor(
                            hopf.gen(j), one, ModuleVector(hopf, dim, {mi_zero(n): col})
                        )
                    )
            val = val.add(PseudoValue.from_tensor(one, hopf.gen(i), base).neg())
            row.append(val)
        table.append(row)
    return ModuleSpec(
        hopf, dim, tuple(tuple(r) for r in table), name=name,
        rep_d=d_part, rep_gl=gl_part, tags=tuple(tags),
    )


def shifted_module(hopf: Hopf, pi: RepData, u: RepData, name: str = "", tags=()) -> ModuleSpec:
    """The module whose generator line is singular: the tensor module of
    (Pi (x) k_{tr ad}) (x) (U (x) k_{-tr})."""
    tr_ad = hopf.lie.tr_ad()
    spec = tensor_module(hopf, pi.twist_by(tr_ad), u.gl_shift_id(-1),
                         name=name or "V(R)", tags=tuple(tags) + ("shifted",))
    return spec


def unshift_module(hopf: Hopf, pi: RepData, u: RepData, name: str = "") -> ModuleSpec:
    """Inverse shift: tensor module T(R) realized as a shifted module of
    (Pi (x) k_{-tr ad}) (x) (U (x) k_{tr})."""
    minus = TraceForm(hopf.lie, tuple(-v for v in hopf.lie.tr_ad().values))
    return shifted_module(hopf, pi.twist_by(minus), u.gl_shift_id(1), name=name)


def s_tensor_module(hopf: Hopf, pi: RepData, u: RepData, chi: TraceForm,
                    name: str = "") -> ModuleSpec:
    """Tensor module for S(d, chi) at the canonical lift (identity scalar 0):
    the restriction of the shifted module of (Pi (x) k_chi) (x) U."""
    if hopf.n <= 2:
        raise DimensionTooSmall("S(d, chi) requires dim d >= 3")
    u0 = u.with_id_scalar(0)
    spec = shifted_module(hopf, pi.twist_by(chi), u0, name=name or "V_S(R)")
    return ModuleSpec(hopf, spec.dim, spec.table, name=spec.name,
                      rep_d=spec.rep_d, rep_gl=spec.rep_gl,
                      tags=spec.tags + ("s-type",))


def dual_module(V: ModuleSpec, name: str = "") -> ModuleSpec:
    """D(V) on H (x) V0* from the action table of V."""
    hopf = V.hopf
    n, m = hopf.n, V.dim
    one = hopf.one()
    table = []
    for i in range(n):
        expanded = [V.full_tensor(V.table[i][k]) for k in range(m)]
        row = []
        for k in range(m):
            val = PseudoValue.zero(hopf, LEFT)
            for j in range(m):
                for (F, G, tgt, c) in expanded[j]:
                    if tgt != k:
                        continue
                    for G1, G2 in mi_splits(G):
                        f = hopf.mono(F) * hopf.element(hopf.antipode_mono(G1))
                        g = hopf.element(hopf.antipode_mono(G2))
                        val = val.add(
                            PseudoValue.from_tensor(
                                f, g, ModuleVector.unit(hopf, m, j)
                            ).scale(-c)
                        )
            row.append(val)
        table.append(tuple(row))
    return ModuleSpec(hopf, m, tuple(table), name=name or f"D({V.name})",
                      tags=V.tags + ("dual",))


def _rep_h_matrix(rep: RepData, coeffs: dict[MultiIndex, Fraction], dim: int) -> Matrix:
    """Matrix of an H element on a d-representation (PBW monomials as ordered
    products of the generator matrices over the divided-power factorials)."""
    out = zero_matrix(dim)
    for I, c in coeffs.items():
        m = identity_matrix(dim)
        denom = 1
        for gen_idx, power in enumerate(I):
            for t in range(power):
                m = mat_mul(m, rep.d_matrix(gen_idx))
                denom *= t + 1
        out = tuple(
            tuple(out[r][s] + c * Fraction(1, denom) * m[r][s] for s in range(dim))
            for r in range(dim)
        )
    return out


def twist_module(pi: RepData, V: ModuleSpec, name: str = "") -> ModuleSpec:
    """T_Pi(V) on H (x) (Pi (x) V0); generators ordered (p, k) with the
    Pi index outermost."""
    hopf = V.hopf
    if not pi.is_d_rep:
        raise RepInvalid("twist needs a d-representation")
    n, m, mp = hopf.n, V.dim, pi.dim
    width = mp * m
    table = []
    for i in range(n):
        expanded = [V.full_tensor(V.table[i][k]) for k in range(m)]
        row = []
        for p in range(mp):
            for k in range(m):
                val = PseudoValue.zero(hopf, LEFT)
                for (F, G, tgt, c) in expanded[k]:
                    for G1, G2 in mi_splits(G):
                        act = _rep_h_matrix(pi, hopf.antipode_mono(G2), mp)
                        col = tuple(act[r][p] for r in range(mp))
                        if not any(col):
                            continue
                        terms = {}
                        for r, v in enumerate(col):
                            if v:
                                row_t = [ZERO] * width
                                row_t[r * m + tgt] = v * c
                                terms[r] = tuple(row_t)
                        vec = ModuleVector(hopf, width, {mi_zero(n): tuple(
                            sum(t[idx] for t in terms.values()) for idx in range(width)
                        )})
                        val = val.add(
                            PseudoValue.from_tensor(hopf.mono(F), hopf.mono(G1), vec)
                        )
                row.append(val)
        table.append(tuple(row))
    return ModuleSpec(hopf, width, tuple(table), name=name or f"T_Pi({V.name})",
                      tags=V.tags + ("twist",))


def dual_map(V: ModuleSpec, W: ModuleSpec, images: list[ModuleVector]) -> list[ModuleVector]:
    """D(beta) for beta: V -> W given by generator images; returns the images
    of the generators of D(W) inside D(V)."""
    hopf = V.hopf
    out = []
    for k in range(W.dim):
        acc = ModuleVector.zero(hopf, V.dim)
        for j in range(V.dim):
            img = images[j]
            for J, row in img.terms.items():
                c = row[k]
                if not c:
                    continue
                s = hopf.element(hopf.antipode_mono(J)).scale(c)
                acc = acc + ModuleVector.unit(hopf, V.dim, j).hmul(s)
        out.append(acc)
    return out


def twist_map(pi: RepData, V: ModuleSpec, W: ModuleSpec,
              images: list[ModuleVector]) -> list[ModuleVector]:
    """T_Pi(beta): generator images of T_Pi(V) -> T_Pi(W):
    (1 (x) u (x) v_i) -> sum h_(1) (x) h_(-2) u (x) w_j."""
    hopf = V.hopf
    mp = pi.dim
    out = []
    for p in range(mp):
        for i in range(V.dim):
            acc = ModuleVector.zero(hopf, mp * W.dim)
            img = images[i]
            for J, row in img.terms.items():
                for j, c in enumerate(row):
                    if not c:
                        continue
                    for A, B in mi_splits(J):
                        act = _rep_h_matrix(pi, hopf.antipode_mono(B), mp)
                        for r in range(mp):
                            v = act[r][p]
                            if not v:
                                continue
                            acc = acc + ModuleVector.unit(
                                hopf, mp * W.dim, r * W.dim + j
                            ).hmul(hopf.mono(A)).scale(c * v)
            out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Singular vectors
# ---------------------------------------------------------------------------

@dataclass
class SingResult:
    module: ModuleSpec
    basis: list[ModuleVector]
    fil_bound: int
    paper_bound: int
    mode: str

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def excess(self) -> list[int]:
        """Indices of basis vectors above the expected filtration bound."""
        return [i for i, v in enumerate(self.basis) if v.degree() > self.paper_bound]

    @property
    def ok(self) -> bool:
        return not self.excess

    def degree_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for v in self.basis:
            prof[v.degree()] = prof.get(v.degree(), 0) + 1
        return dict(sorted(prof.items()))


def _sing_actors(V: ModuleSpec, mode: str, chi: TraceForm | None):
    walg = WAlgebra(V.hopf)
    if mode == "W":
        return [(f"b_{i+1}", i, None) for i in range(V.hopf.n)], 2
    if mode == "S":
        if V.hopf.n <= 2:
            raise DimensionTooSmall("S mode requires dim d >= 3")
        if chi is None:
            raise RepInvalid("S mode needs the trace form chi")
        actors = [
            (f"s_{a+1}{b+1}", None, s)
            for (a, b), s in walg.s_generators(chi)
        ]
        return actors, 3
    raise ValueError(f"unknown mode {mode!r}")


def _unknown_order(V: ModuleSpec, fil_bound: int):
    cols = V.basis_upto(fil_bound)
    index = {slot: c for c, slot in enumerate(cols)}
    return cols, index


def sing_solve(V: ModuleSpec, fil_bound: int, mode: str = "W",
               chi: TraceForm | None = None) -> SingResult:
    """Exact basis of the singular vectors inside fil^bound.

    W mode: the right-normal coefficients of (1 (x) b_i) * v at |K| >= 2 must
    vanish.  S mode: the coefficients of s_ij * v at |K| >= 3 must vanish.
    The basis is the canonical reduced one for the unknown order (|I|, I, k).
    """
    actors, threshold = _sing_actors(V, mode, chi)
    cols, index = _unknown_order(V, fil_bound)
    rows: dict[tuple, Row] = {}
    for label, i, w in actors:
        for col, (I, k) in enumerate(cols):
            vec = V.unit(k, I)
            val = V.action_pv(i, vec) if w is None else V.w_star(w, vec)
            for K, mv in val.to_right().terms.items():
                if mi_deg(K) < threshold:
                    continue
                for J, rowc in mv.terms.items():
                    for r, c in enumerate(rowc):
                        if not c:
                            continue
                        key = (label, K, J, r)
                        row = rows.setdefault(key, {})
                        row[col] = row.get(col, ZERO) + c
    ker = nullspace([rows[k] for k in sorted(rows)], len(cols))
    basis = [_vector_from_row(V, cols, vec) for vec in ker]
    paper_bound = 1 if mode == "W" else 2
    return SingResult(V, basis, fil_bound, paper_bound, mode)


def sing_solve_oracle(V: ModuleSpec, fil_bound: int, mode: str = "W",
                      chi: TraceForm | None = None,
                      validity: int | None = None) -> SingResult:
    """Independent route: v is singular iff the spanning annihilation
    elements of W_1 (resp. S_1) kill it under the contraction action."""
    hopf = V.hopf
    validity = validity if validity is not None else fil_bound + 4
    cols, index = _unknown_order(V, fil_bound)
    spanning: list[tuple[str, AnnElement]] = []
    if mode == "W":
        for K in mi_below(hopf.n, fil_bound + 2):
            if mi_deg(K) < 2:
                continue
            for a in range(hopf.n):
                spanning.append(
                    (f"x_{K}(x)b_{a+1}",
                     AnnElement.term(hopf, XElement.mono(hopf, K, 1, validity), a))
                )
    else:
        walg = WAlgebra(hopf)
        if chi is None:
            raise RepInvalid("S mode needs the trace form chi")
        for K in mi_below(hopf.n, fil_bound + 3):
            if mi_deg(K) < 3:
                continue
            for (a, b), s in walg.s_generators(chi):
                el = iota(XElement.mono(hopf, K, 1, validity), s)
                if not el.is_zero():
                    spanning.append((f"x_{K}.s_{a+1}{b+1}", el))
    rows: dict[tuple, Row] = {}
    for col, (I, k) in enumerate(cols):
        vec = V.unit(k, I)
        for label, el in spanning:
            out = ann_action(el, vec, V.action_pv)
            if out is None or out.is_zero():
                continue
            for J, rowc in out.terms.items():
                for r, c in enumerate(rowc):
                    if not c:
                        continue
                    key = (label, J, r)
                    row = rows.setdefault(key, {})
                    row[col] = row.get(col, ZERO) + c
    ker = nullspace([rows[k] for k in sorted(rows)], len(cols))
    basis = [_vector_from_row(V, cols, vec) for vec in ker]
    paper_bound = 1 if mode == "W" else 2
    return SingResult(V, basis, fil_bound, paper_bound, mode)


def _vector_from_row(V: ModuleSpec, cols, row: Row) -> ModuleVector:
    terms: dict[MultiIndex, list[Fraction]] = {}
    for col, c in row.items():
        I, k = cols[col]
        cur = terms.setdefault(I, [ZERO] * V.dim)
        cur[k] += c
    return ModuleVector(V.hopf, V.dim, {I: tuple(r) for I, r in terms.items()})


def _row_from_vector(v: ModuleVector, index) -> Row:
    row: Row = {}
    for I, coords in v.terms.items():
        for k, c in enumerate(coords):
            if c:
                row[index[(I, k)]] = c
    return row


def s_of(V: ModuleSpec, l: int, coords) -> ModuleVector:
    """s(b_l, u) = sum_j b_j (x) e_l^j u for u given by generator coordinates."""
    if V.rep_gl is None:
        raise RepInvalid("module carries no gl(d) data")
    hopf = V.hopf
    out = ModuleVector.zero(hopf, V.dim)
    coords = tuple(map(rat, coords))
    for j in range(hopf.n):
        img = mat_apply(V.rep_gl.gl_matrix(l, j), coords)
        if any(img):
            from .hopf import mi_unit

            out = out + ModuleVector(hopf, V.dim, {mi_unit(hopf.n, j): tuple(img)})
    return out


def r0_test(u: RepData) -> bool:
    """(e_i^j + delta) e_l^k u + (e_i^k + delta) e_l^j u = 0 for all i,j,k,l, u."""
    n = u.lie.dim
    m = u.dim
    delta = identity_matrix(m)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    a = mat_mul(
                        tuple(tuple(u.gl_matrix(i, j)[r][c] + (delta[r][c] if i == j else ZERO)
                                    for c in range(m)) for r in range(m)),
                        u.gl_matrix(l, k),
                    )
                    b = mat_mul(
                        tuple(tuple(u.gl_matrix(i, k)[r][c] + (delta[r][c] if i == k else ZERO)
                                    for c in range(m)) for r in range(m)),
                        u.gl_matrix(l, j),
                    )
                    if any(a[r][c] + b[r][c] for r in range(m) for c in range(m)):
                        return False
    return True


# ---------------------------------------------------------------------------
# Submodules and intertwiners
# ---------------------------------------------------------------------------

@dataclass
class Closure:
    module: ModuleSpec
    fil_bound: int
    basis: list[ModuleVector]
    coef_rank: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: ModuleVector) -> bool:
        cols, index = _closure_order(self.module, self.fil_bound)
        red = RowReducer()
        for b in self.basis:
            red.add(_row_from_vector(b, index))
        return red.contains(_row_from_vector(v, index))

    def same_space(self, other: "Closure") -> bool:
        if self.fil_bound != other.fil_bound or self.dim != other.dim:
            return False
        return all(self.contains(v) for v in other.basis)


def _closure_order(V: ModuleSpec, bound: int):
    # columns by decreasing degree so echelon pivots isolate fil^p slices
    cols = sorted(V.basis_upto(bound), key=lambda slot: (-mi_deg(slot[0]), slot[0], slot[1]))
    index = {slot: c for c, slot in enumerate(cols)}
    return cols, index


def submodule_closure(V: ModuleSpec, gens: list[ModuleVector], fil_bound: int,
                      mode: str = "W", chi: TraceForm | None = None,
                      slack: int = 1) -> Closure:
    """H-submodule generated by `gens`, intersected with fil^bound.

    Iterates normal-form coefficient extraction of the acting generators
    (each coefficient of a * v lies in the submodule) together with
    H-multiplication, inside fil^{bound+slack}; the returned basis spans the
    intersection with fil^bound exactly when the submodule is generated in
    degrees <= bound - 1.
    """
    work = fil_bound + slack
    actors, _threshold = _sing_actors(V, mode, chi)
    cols, index = _closure_order(V, work)
    red = RowReducer()
    queue: list[ModuleVector] = []

    def push(v: ModuleVector) -> None:
        if v.is_zero() or v.degree() > work:
            return
        if red.add(_row_from_vector(v, index)):
            queue.append(v)

    for g in gens:
        push(g)
    while queue:
        v = queue.pop()
        for i in range(V.hopf.n):
            if v.degree() + 1 <= work:
                push(v.hmul(V.hopf.gen(i)))
        for label, i, w in actors:
            val = V.action_pv(i, v) if w is None else V.w_star(w, v)
            for I, comp in val.to_left().terms.items():
                push(comp)
    # restrict to fil^bound: echelon rows whose pivot (highest-degree
    # coordinate) already lies inside fil^bound have all coordinates there
    basis = []
    coef = RowReducer()
    for j in sorted(red.pivots):
        I, k = cols[j]
        if mi_deg(I) > fil_bound:
            continue
        v = _vector_from_row_cols(V, cols, red.pivots[j])
        basis.append(v)
        for J, coords in v.terms.items():
            coef.add({c: val for c, val in enumerate(coords) if val})
    return Closure(V, fil_bound, basis, coef.rank)


def _vector_from_row_cols(V: ModuleSpec, cols, row: Row) -> ModuleVector:
    terms: dict[MultiIndex, list[Fraction]] = {}
    for col, c in row.items():
        I, k = cols[col]
        cur = terms.setdefault(I, [ZERO] * V.dim)
        cur[k] += c
    return ModuleVector(V.hopf, V.dim, {I: tuple(r) for I, r in terms.items()})


def express_in_span(vectors: list[ModuleVector], target: ModuleVector):
    """Coefficients of target in span(vectors), or None if outside."""
    from ._linalg import solve_min_support

    index: dict = {}
    for v in vectors:
        for I, coords in v.terms.items():
            for k, c in enumerate(coords):
                index.setdefault((I, k), len(index))
    rhs_map: dict[int, Fraction] = {}
    for I, coords in target.terms.items():
        for k, c in enumerate(coords):
            if c:
                slot = index.get((I, k))
                if slot is None:
                    return None
                rhs_map[slot] = c
    rows = []
    rhs = []
    for (slot_key, slot) in sorted(index.items(), key=lambda kv: kv[1]):
        row = {}
        for m, v in enumerate(vectors):
            I, k = slot_key
            c = v.terms.get(I, None)
            c = c[k] if c is not None else ZERO
            if c:
                row[m] = c
        rows.append(row)
        rhs.append(rhs_map.get(slot, ZERO))
    sol = solve_min_support(rows, rhs, len(vectors))
    if sol is None:
        return None
    out = [sol.get(m, ZERO) for m in range(len(vectors))]
    diff = target
    for m, c in enumerate(out):
        if c:
            diff = diff - vectors[m].scale(c)
    return out if diff.is_zero() else None


def id_symbol_matrix(V: ModuleSpec, vectors: list[ModuleVector],
                     validity: int = 8):
    """Matrix of the identity gl(d) symbol acting through the annihilation
    algebra on the span of `vectors` (None if the span is not invariant)."""
    from .annih import AnnElement, ann_action
    from .dualx import XElement

    hopf = V.hopf
    cols = []
    for v in vectors:
        img = V.zero_vector()
        for i in range(hopf.n):
            el = AnnElement.term(hopf, XElement.coord(hopf, i, validity), i)
            out = ann_action(el, v, V.action_pv)
            if out is not None:
                img = img - out
        coords = express_in_span(vectors, img)
        if coords is None:
            return None
        cols.append(coords)
    return [[cols[c][r] for c in range(len(vectors))] for r in range(len(vectors))]


def sing_blocks_by_id_symbol(V: ModuleSpec, basis: list[ModuleVector]):
    """Split a singular-vector basis into eigenspaces of the identity symbol.

    Returns {eigenvalue: vectors}; the ground level and each submodule block
    live in distinct eigenspaces (the symbol eigenvalue grows by one per
    filtration degree)."""
    if not basis:
        return {}
    mat_rows = id_symbol_matrix(V, basis)
    if mat_rows is None:
        raise RepInvalid("singular span is not invariant under the identity symbol")
    m = len(basis)
    ground = [v for v in basis if v.degree() == 0]
    if not ground:
        raise RepInvalid("no ground-level singular vectors")
    # the symbol acts by a scalar on the ground level and the eigenvalue
    # grows by one per filtration degree of the block
    idx0 = basis.index(ground[0])
    mu = mat_rows[idx0][idx0]
    from ._linalg import nullspace as _nullspace

    out: dict[Fraction, list[ModuleVector]] = {}
    for d in sorted({v.degree() for v in basis}):
        lam = mu + d
        rows = []
        for r in range(m):
            row = {}
            for c in range(m):
                val = mat_rows[r][c] - (lam if r == c else ZERO)
                if val:
                    row[c] = val
            rows.append(row)
        vecs = []
        for coeff in _nullspace(rows, m):
            acc = V.zero_vector()
            for c, val in coeff.items():
                acc = acc + basis[c].scale(val)
            if not acc.is_zero():
                vecs.append(acc)
        if vecs:
            out[lam] = vecs
    return out


def sing_in_subspace(V: ModuleSpec, vectors: list[ModuleVector], mode: str = "W",
                     chi: TraceForm | None = None) -> list[ModuleVector]:
    """Singular vectors inside the span of `vectors` (solved in coefficients)."""
    actors, threshold = _sing_actors(V, mode, chi)
    rows: dict[tuple, Row] = {}
    for m, v in enumerate(vectors):
        for label, i, w in actors:
            val = V.action_pv(i, v) if w is None else V.w_star(w, v)
            for K, mv in val.to_right().terms.items():
                if mi_deg(K) < threshold:
                    continue
                for J, rowc in mv.terms.items():
                    for r, c in enumerate(rowc):
                        if not c:
                            continue
                        key = (label, K, J, r)
                        row = rows.setdefault(key, {})
                        row[m] = row.get(m, ZERO) + c
    ker = nullspace([rows[k] for k in sorted(rows)], len(vectors))
    out = []
    for vec in ker:
        acc = V.zero_vector()
        for m, c in vec.items():
            acc = acc + vectors[m].scale(c)
        if not acc.is_zero():
            out.append(acc)
    return out


def solve_intertwiner(V: ModuleSpec, W: ModuleSpec, fil_bound: int,
                      mode: str = "W", chi: TraceForm | None = None) -> list[list[ModuleVector]]:
    """Basis of H-linear module maps V -> W determined on generators.

    Unknowns are the coefficients of the generator images inside
    fil^bound W; the intertwining condition
    ((id (x) id) (x)_H beta)(a * u) = a * beta(u) is imposed for every acting
    generator a and every generator u of V.
    """
    hopf = V.hopf
    if hopf is not W.hopf:
        raise DimensionMismatch("modules over different algebras")
    actors, _ = _sing_actors(V, mode, chi)
    slots = [(g, J, r) for g in range(V.dim)
             for J in mi_below(hopf.n, fil_bound) for r in range(W.dim)]
    index = {s: c for c, s in enumerate(slots)}
    rows: dict[tuple, Row] = {}

    def add_entry(key, col, c):
        row = rows.setdefault(key, {})
        v = row.get(col, ZERO) + c
        if v:
            row[col] = v
        else:
            row.pop(col, None)

    for label, i, w in actors:
        for g in range(V.dim):
            src = V.unit(g)
            lhs = V.action_pv(i, src) if w is None else V.w_star(w, src)
            # beta applied to the third slot: beta(b^(J) (x) v_r) = b^(J) beta(v_r)
            for I, mv in lhs.to_left().terms.items():
                for J, rowc in mv.terms.items():
                    for r, c in enumerate(rowc):
                        if not c:
                            continue
                        for Jp in mi_below(hopf.n, fil_bound):
                            for rp in range(W.dim):
                                col = index[(r, Jp, rp)]
                                for K, c2 in hopf.mono_mul(J, Jp).items():
                                    add_entry((label, g, I, K, rp), col, c * c2)
            # minus the action on the image: a * (b^(Jp) (x) w_rp)
            for Jp in mi_below(hopf.n, fil_bound):
                for rp in range(W.dim):
                    col = index[(g, Jp, rp)]
                    tgt = W.unit(rp, Jp)
                    rhs = W.action_pv(i, tgt) if w is None else W.w_star(w, tgt)
                    for I, mv in rhs.to_left().terms.items():
                        for K, rowc in mv.terms.items():
                            for r2, c in enumerate(rowc):
                                if c:
                                    add_entry((label, g, I, K, r2), col, -c)
    ker = nullspace([rows[k] for k in sorted(rows)], len(slots))
    out = []
    for vec in ker:
        images = []
        for g in range(V.dim):
            terms: dict[MultiIndex, list[Fraction]] = {}
            for col, c in vec.items():
                gg, J, r = slots[col]
                if gg != g:
                    continue
                cur = terms.setdefault(J, [ZERO] * W.dim)
                cur[r] += c
            images.append(ModuleVector(hopf, W.dim, {J: tuple(r) for J, r in terms.items()}))
        out.append(images)
    return out


def apply_map(W: ModuleSpec, images: list[ModuleVector], v: ModuleVector) -> ModuleVector:
    """Extend generator images H-linearly and apply to v."""
    out = ModuleVector.zero(W.hopf, W.dim)
    for I, coords in v.terms.items():
        mono = W.hopf.mono(I)
        for k, c in enumerate(coords):
            if c:
                out = out + images[k].hmul(mono).scale(c)
    return out
