"""State spaces as exact rational polytopes.

Everything downstream (distinguishability, cloning, broadcasting) reduces
to feasibility questions about convex sets, so the foundation is a state
space that knows its own geometry exactly: vertices, facets, membership,
and the dual polytope of effects.  This script builds the three families
that recur in every later demo and pokes at them.
"""

from gptcast import is_classical, make_classical, make_polygon, make_square_gbit, rat_str


def fmt(vec):
    return "(" + ", ".join(rat_str(x) for x in vec) + ")"


# 1. A classical system is a simplex: the n-outcome probability vectors.
trit = make_classical(3)
print(f"{trit.name}: {len(trit.vertices)} vertices, span dim {trit.span_dim}")
for v in trit.vertices:
    print("  ", fmt(v))
print("classical?", is_classical(trit))

# 2. The square gbit is the smallest nonclassical example: a square of
#    states at height 1, with the unit functional reading off that height.
square = make_square_gbit()
print(f"\n{square.name}: {len(square.vertices)} vertices")
for v in square.vertices:
    print("  ", fmt(v))
print("classical?", is_classical(square))

# Membership comes with a certificate either way.  Inside: convex weights
# over the vertices.  Outside: a separating affine functional.
center = square.omega.centroid
cert = square.omega.member(center)
print("\ncentroid", fmt(center), "is inside with weights", fmt(cert.weights))

outside = (2, 0, 1)
cert = square.omega.member(outside)
print("point", fmt(outside), "is outside:")
print("  separating functional", fmt(cert.normal), "bound", rat_str(cert.bound))
lhs = sum(n * x for n, x in zip(cert.normal, outside))
print("  functional at the point:", rat_str(lhs), "(every state stays <=", rat_str(cert.bound) + ")")

# 3. Effects are the dual picture: affine functionals with 0 <= e <= 1 on
#    all states.  The extreme effects of the square include the four edge
#    indicators plus the trivial 0 and u.
print(f"\nextreme effects of {square.name}:")
for e in square.extreme_effects():
    print("  ", fmt(e.functional))

# 4. Regular polygons interpolate between the square and the disk.  The
#    vertices are rational approximations of the roots of unity, so every
#    polygon here is slightly irregular but exactly representable.
for n in (5, 7):
    poly = make_polygon(n)
    print(f"\n{poly.name}: {len(poly.vertices)} vertices, classical? {is_classical(poly)}")
print("\nthe polygon family is how the later demos dial nonclassicality up and down")
