"""Cloning versus broadcasting, and the gap between them.

A cloner sends each w in the set to the uncorrelated pair w (x) w.  A
broadcaster only has to get both marginals right, so correlation across
the two output slots is allowed.  On the states where both notions apply
they are equivalent to joint distinguishability; the subtlety is that a
set can be broadcastable without being cloneable, because cloning demands
exact product outputs and broadcasting does not.
"""

from gptcast import (
    StateSet,
    broadcaster_exists,
    cloner_exists,
    jointly_distinguishable,
    make_classical,
    make_square_gbit,
    min_tensor,
    rat,
    rat_str,
)


def fmt(vec):
    return "(" + ", ".join(rat_str(x) for x in vec) + ")"


# 1. Classical copying.  The bit cloner is the diagonal embedding, and the
#    channel matrix is readable at a glance.
bit = make_classical(2)
both = StateSet(bit, bit.vertices)
report = cloner_exists(both)
print("bit vertices cloneable?", report.verdict)
for row in report.witness.matrix:
    print("  ", fmt(row))

# Linearity is the whole point of no-cloning: the channel above copies the
# two vertices, but on the mixture it produces the correlated average of
# the two products, not the product of the mixture.
half = rat(1, 2)
mix = tuple(half * (a + b) for a, b in zip(*bit.vertices))
out = report.witness.apply(mix)
prod = tuple(a * b for a in mix for b in mix)
print("cloner on the even mixture:", fmt(out))
print("product of the mixture:    ", fmt(prod))
print("equal?", out == prod, " (the cloner only copies the states it was asked to copy)")

# 2. The hierarchy on the square gbit.
square = make_square_gbit()
sets = {
    "two opposite corners": [square.vertices[0], square.vertices[3]],
    "three corners": list(square.vertices[:3]),
    "interior diagonal pair": [(rat(-1, 2), rat(-1, 2), 1), (rat(1, 2), rat(1, 2), 1)],
}
print("\nset                      distinguish  clone  broadcast")
for name, states in sets.items():
    ss = StateSet(square, states)
    d = jointly_distinguishable(ss).verdict
    c = cloner_exists(ss).verdict
    b = broadcaster_exists(ss).verdict
    print(f"{name:24} {str(d):12} {str(c):6} {str(b)}")

# 3. The interior pair is the telling row: no effect can take the value 1
#    at an interior point without being constant, so the pair is neither
#    distinguishable nor cloneable.  It still broadcasts, because the full
#    diagonal of the square is a distinguishable segment containing both
#    points, and broadcasting that segment fixes both marginals at once.
ss = StateSet(square, sets["interior diagonal pair"])
report = broadcaster_exists(ss)
composite = min_tensor(square, square)
t = report.witness
print("\nbroadcaster marginals on the interior pair:")
for w in ss.states:
    joint = t.apply(w)
    print(f"  w = {fmt(w)}")
    print(f"    marginal A {fmt(composite.marginal_a(joint))}   marginal B {fmt(composite.marginal_b(joint))}")
print("cross checks:", dict(report.cross_checks))
