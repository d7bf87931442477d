"""Minimal and maximal tensor products, and what lives between them.

A composite of two systems must contain every product state and accept
every product measurement.  Those two requirements bound it from below
and above: the minimal tensor product is the convex hull of the products,
the maximal one is everything on which product effects stay nonnegative.
Classically the two coincide.  For gbits they do not, and the states in
the gap are the PR-box style correlations.
"""

from gptcast import make_classical, make_polygon, make_square_gbit, max_tensor, min_tensor, rat_str


def fmt(vec):
    return "(" + ", ".join(rat_str(x) for x in vec) + ")"


square = make_square_gbit()

# 1. Count vertices.  min: the 16 products of square corners.  max: those
#    16 plus 8 correlated extremals that no product mixture reaches.
lo = min_tensor(square, square)
hi = max_tensor(square, square)
print(f"{lo.name}: {len(lo.vertices)} vertices")
print(f"{hi.name}: {len(hi.vertices)} vertices")

extra = [v for v in hi.vertices if not lo.contains(v)]
print(f"{len(extra)} vertices of max lie outside min")

# 2. Certify the separation for one of them.  The membership test returns
#    a functional that is nonnegative on all of min but negative here, and
#    that functional is exactly a product effect failing on the PR state.
pr = extra[0]
cert = lo.omega.member(pr)
print("\none PR-type vertex:", fmt(pr))
print("separated from min by", fmt(cert.normal), "bound", rat_str(cert.bound))

# Its marginals are maximally mixed: locally invisible correlation.
print("marginal A:", fmt(hi.marginal_a(pr)), " marginal B:", fmt(hi.marginal_b(pr)))

# 3. Vertices of max with a pure marginal must factorize.  Check all 24:
#    whenever either marginal is a vertex of its factor, the joint state
#    is the product of its marginals, so the correlated extremals are
#    forced to keep both marginals mixed.
pure_a = set(square.vertices)
factored = correlated = 0
for v in hi.vertices:
    ma, mb = hi.marginal_a(v), hi.marginal_b(v)
    if ma in pure_a or mb in pure_a:
        assert v == hi.product_state(ma, mb)
        factored += 1
    else:
        correlated += 1
print(f"\n{factored} vertices factor through a pure marginal, {correlated} stay correlated")

# 4. With a classical factor the gap closes: min and max agree as sets,
#    which is the structural reason classical information can be shared
#    freely while gbit correlations cannot.
bit = make_classical(2)
penta = make_polygon(5)
for a, b in ((bit, bit), (bit, square), (bit, penta)):
    same = min_tensor(a, b).omega.same_set(max_tensor(a, b).omega)
    print(f"min == max for {a.name} (x) {b.name}?", same)
print("min == max for square (x) square?", lo.omega.same_set(hi.omega))
