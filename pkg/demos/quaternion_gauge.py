"""Gauge a quaternion-coefficient cocycle and normalize it.

The coefficient ring is the rational quaternions, so everything is exact
Fractions and no search is available: just verification and transforms.
"""

from sqfree.cohom import GaugeElement, TwoCocycle, act, normalize, verify_two_cocycle
from sqfree.fixtures import quaternions, t2

S = t2()
H = quaternions()
v = H.element((1, 1, 0, 0))  # 1 + i

base = TwoCocycle(
    {(1, 1): H.identity_automorphism(),
     (2, 2): H.identity_automorphism(),
     (1, 2): H.inner_automorphism(v)},
    {t: H.one for t in S.comp},
)
assert verify_two_cocycle(S, base).ok
print("alpha on the arrow is conjugation by", v)

g = GaugeElement(
    {1: H.inner_automorphism(H.i), 2: H.inner_automorphism(H.j)},
    {(1, 1): H.one, (2, 2): v, (1, 2): H.j},
)
out = act(S, g, base)
assert verify_two_cocycle(S, out).ok
print("xi(e2, e2) after gauging:", out.xi[(2, 2, 2)])
print("alpha(2,2) after gauging:", out.alpha[(2, 2)])

normal, eta = normalize(S, out)
assert act(S, eta, out) == normal
assert normal.is_normal()
# the witness divides out the non-unit diagonal entry exactly
print("normalizing eta(e2):", eta.eta[(2, 2)], "=", out.xi[(2, 2, 2)].inverse())
print("normal diagonal xi:", {t: normal.xi[t] for t in ((1, 1, 1), (2, 2, 2))})
