"""Why broadcastability means living on a hidden classical system.

Whenever a set of states is broadcastable, the broadcaster can be traded
for something much more structured: a simplex of distinguishable states
whose convex hull contains the whole set.  Broadcasting is then just the
classical strategy, measure which generator you are under, prepare two
copies of it.  This demo round-trips that equivalence on the square gbit.
"""

from gptcast import (
    StateSet,
    analyze,
    construct_broadcaster,
    extract_simplex_cover,
    jointly_distinguishable,
    make_square_gbit,
    min_tensor,
    rat,
    rat_str,
)


def fmt(vec):
    return "(" + ", ".join(rat_str(x) for x in vec) + ")"


square = make_square_gbit()

# The inputs: the two ends of the main diagonal plus the centroid.  None
# of the three is pure except the endpoints, and the centroid alone would
# never be distinguishable from anything.
states = [(-1, -1, 1), (1, 1, 1), (0, 0, 1)]
ss = StateSet(square, states)

# 1. analyze() runs the full decision stack and, on a yes, extracts the
#    covering simplex from the broadcaster it found.
report = analyze(ss)
print("broadcastable?", report.verdict)
cover = report.witness
print("covering simplex generators:")
for g in cover.generators:
    print("  ", fmt(g))

print("generators distinguishable?",
      jointly_distinguishable(StateSet(square, cover.generators)).verdict)

# 2. Membership: every input state is a convex mixture of the generators,
#    with the weights recorded in the cover.
print("\ninput states as mixtures of the generators:")
for w, cert in zip(ss.states, cover.membership):
    recombined = tuple(
        sum(lam * g[r] for lam, g in zip(cert.weights, cover.generators))
        for r in range(len(w))
    )
    print(f"  {fmt(w)} = weights {fmt(cert.weights)}  ->  {fmt(recombined)}")

print("\ncross checks carried by the cover:", dict(cover.checks))

# 3. The converse direction: hand the generators and their distinguishing
#    measurement to construct_broadcaster and get a measure-and-prepare
#    channel that fixes every state in the simplex, not just the inputs.
gen_set = StateSet(square, cover.generators)
m = jointly_distinguishable(gen_set).witness
b = construct_broadcaster(gen_set, m)
composite = min_tensor(square, square)

probe = tuple(rat(3, 4) * a + rat(1, 4) * c for a, c in zip(states[0], states[1]))
print("\nmeasure-and-prepare broadcaster on a fresh point of the segment:")
joint = b.apply(probe)
print("  probe     ", fmt(probe))
print("  marginal A", fmt(composite.marginal_a(joint)))
print("  marginal B", fmt(composite.marginal_b(joint)))

# 4. And extracting a cover from the constructed channel gets us back to
#    the same simplex, checks and all.
cover2 = extract_simplex_cover(b, ss)
print("\nre-extracted generators:", [fmt(g) for g in cover2.generators])
print("all checks pass?", all(ok for _, ok in cover2.checks))
