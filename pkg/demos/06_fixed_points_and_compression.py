"""Fixed points of a channel form a state space of their own.

For an endochannel t the states with t(w) = w are a polytope, and there
is an idempotent channel, the compression, that projects everything onto
it while acting as the identity there.  The construction is exact; the
Cesaro-style averaged power iteration is the floating point shadow we
keep around as an independent cross-check.
"""

from gptcast import (
    AffineChannel,
    averaged_power_compression,
    compression,
    compose,
    fixed_set,
    make_square_gbit,
    rat,
    rat_str,
)


def fmt(vec):
    return "(" + ", ".join(rat_str(x) for x in vec) + ")"


square = make_square_gbit()
half = rat(1, 2)

# 1. Average the identity with the quarter-turn rotation of the square.
#    Nothing but the centroid survives the averaging.
rot = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
avg = tuple(
    tuple(half * (rot[r][c] + (1 if r == c else 0)) for c in range(3))
    for r in range(3)
)
t = AffineChannel(avg, square, square)
fs = fixed_set(t)
print("averaged rotation: fixed set vertices =", [fmt(v) for v in fs.vertices])

p = compression(t)
print("compression matrix:")
for row in p.matrix:
    print("  ", fmt(row))
print("idempotent?", compose(p, p).matrix == p.matrix)
print("constant on the square?", p.apply(square.vertices[0]) == p.apply(square.vertices[3]))

# 2. A channel with a fatter fixed set: squash the square onto its
#    horizontal axis.  The fixed set is the whole segment, and since the
#    squash is already idempotent it is its own compression.
squash = AffineChannel(((1, 0, 0), (0, 0, 0), (0, 0, 1)), square, square)
fs = fixed_set(squash)
print("\nsquash onto the x axis: fixed set vertices =", [fmt(v) for v in fs.vertices])
print("compression == channel itself?", compression(squash).matrix == squash.matrix)

# 3. The floating point cross-check.  Averaging the powers of t converges
#    to the same projector; the deviation from the exact compression is
#    the only tolerance-bearing quantity in the package.
approx, iterations = averaged_power_compression(t)
dev = max(
    abs(float(p.matrix[r][c]) - approx[r][c])
    for r in range(3)
    for c in range(3)
)
print(f"\naveraged power iteration: {iterations} iterations, max deviation {dev:.3e}")
