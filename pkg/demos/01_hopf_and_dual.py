"""Exact PBW arithmetic in H = U(d) and the truncated dual X = H*.

Walks through products in the divided-power basis, the coproduct and
antipode, and the two H-actions on X with their validity bookkeeping.
"""

from liepseudo import Hopf, XElement, preset

# sl2 with the basis order (e, h, f)
H = Hopf(preset("sl2"))
e, h, f = H.gen(0), H.gen(1), H.gen(2)

print("== products are straightened into the PBW basis ==")
print("f*e      =", f * e)               # e f - h
print("e*f - h  =", e * f - h)
print()

print("== divided powers: d^(1) d^(1) = 2 d^(2) in rank one ==")
H1 = Hopf(preset("abelian1"))
d = H1.gen(0)
print("d*d =", d * d)
print()

print("== coproduct of a divided power is multiplicity-free ==")
for (J, K), c in sorted(H1.mono((2,)).coproduct().items()):
    print(f"  {c} * b^{J} (x) b^{K}")
print()

print("== the antipode is the PBW anti-automorphism with S(a) = -a ==")
print("S(e*f) =", (e * f).antipode(), "   (equals f*e)")
print()

print("== the dual pairs against divided powers ==")
x_e = XElement.coord(H, 0, 6)
print("<x^e, e> =", x_e.pair(e))
print("<x^e x^e, e*e> =", (x_e * x_e).pair(e * e), "  (divided-power bookkeeping)")
print()

print("== coordinate actions detect the structure constants ==")
Hs = Hopf(preset("solv2"))   # [b1, b2] = b2
x2 = XElement.coord(Hs, 1, 6)
print("b_2 . x^2 =", x2.act_left(Hs.gen(1)))
print("x^2 . b_2 =", x2.act_right(Hs.gen(1)))
print("difference (the coadjoint action) =",
      x2.act_left(Hs.gen(1)) - x2.act_right(Hs.gen(1)))
print()

print("== validity degrees track the truncation ==")
x = XElement.mono(Hs, (3, 0), validity=6)
y = x.act_left(Hs.gen(0) * Hs.gen(0))
print("acting by a degree-2 element drops validity:", x.validity, "->", y.validity)
