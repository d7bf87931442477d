"""Exact polytopes with dual (vertex / halfspace) representations.

Conversions run the incremental double description method on rational
cones.  A ``Polytope`` may be built from either representation; the other
is completed lazily, at most once, behind a lock.  Canonical form (facets
scaled to primitive integers, everything sorted lexicographically) makes
equal sets compare equal and keeps all downstream output deterministic.

Empty polytopes are ordinary values.  Unbounded input is an error carrying
a recession direction as evidence, since every state set in this package
is compact by assumption.
"""

from __future__ import annotations

import threading
from typing import Sequence

from .rationals import ONE, ZERO, primitive_integer_vector, rat
from .linalg import (
    Matrix,
    Vector,
    add_vec,
    column_space_basis,
    dot,
    identity,
    independent_rows,
    invert,
    mat_vec,
    nullspace,
    rank,
    rref,
    scale_vec,
    solve,
    sub_vec,
    transpose,
    vec,
    vec_mat,
    zeros,
)
from .lp import Infeasible, LpSystem, lp_feasible


class PolytopeError(ValueError):
    pass


class UnboundedError(PolytopeError):
    """The described set has a recession direction, so it is not a polytope."""

    def __init__(self, direction: Vector):
        self.direction = direction
        super().__init__(f"unbounded along direction {direction}")


# ---------------------------------------------------------------------------
# double description on cones


def _dd_pointed(rows: Sequence[Vector], dim: int) -> tuple[Vector, ...]:
    """Extreme rays of the pointed cone {x : r.x >= 0 for r in rows}.

    ``rows`` must have full column rank, which guarantees pointedness.
    Rays are returned as primitive integer vectors, unsorted.
    """
    base_idx = independent_rows(rows, need=dim)
    base = tuple(rows[i] for i in base_idx)
    # Columns of base^-1 are the initial rays: base maps ray j to e_j >= 0.
    rays = [primitive_integer_vector(col) for col in transpose(invert(base))]
    done = list(base_idx)

    def zero_mask(ray):
        zs = 0
        for k, ri in enumerate(done):
            if dot(rows[ri], ray) == 0:
                zs |= 1 << k
        return zs

    zsets = [zero_mask(r) for r in rays]
    pending = [i for i in range(len(rows)) if i not in set(base_idx)]
    for ri in pending:
        a = rows[ri]
        vals = [dot(a, r) for r in rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        done.append(ri)
        bit = 1 << (len(done) - 1)
        if not neg:
            zsets = [zs | bit if v == 0 else zs for zs, v in zip(zsets, vals)]
            continue
        pos = [i for i, v in enumerate(vals) if v > 0]
        fresh = []
        seen = set()
        min_common = dim - 2
        for ip in pos:
            zp = zsets[ip]
            for im in neg:
                common = zp & zsets[im]
                if common.bit_count() < min_common:
                    continue
                adjacent = True
                for k, zk in enumerate(zsets):
                    if k != ip and k != im and common & ~zk == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                new = primitive_integer_vector(
                    sub_vec(scale_vec(vals[ip], rays[im]), scale_vec(vals[im], rays[ip]))
                )
                if new not in seen:
                    seen.add(new)
                    fresh.append(new)
        keep = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in keep]
        zsets = [zsets[i] | (bit if vals[i] == 0 else 0) for i in keep]
        for new in fresh:
            rays.append(new)
            # recompute honestly: the combination may vanish on extra rows
            zsets.append(zero_mask(new))
    return tuple(rays)


def dual_description(rows: Sequence[Sequence], dim: int) -> tuple[tuple, tuple]:
    """Extreme rays and lineality basis of the cone {x : r.x >= 0}.

    The lineality space is factored out first: the cone is intersected with
    the coordinate subspace on the pivot columns of the constraint matrix,
    which complements the kernel, leaving a pointed cone for the
    incremental step.  Returns ``(rays, lineality_basis)`` in ambient
    coordinates.
    """
    m = tuple(vec(r) for r in rows)
    nonzero = tuple(r for r in m if any(r))
    if not nonzero:
        return (), tuple(identity(dim))
    _, pivots = rref(nonzero)
    lineality = tuple(primitive_integer_vector(v) for v in nullspace(nonzero, dim))
    reduced = tuple(tuple(r[j] for j in pivots) for r in nonzero)
    rays = []
    for ray in _dd_pointed(reduced, len(pivots)):
        full = [ZERO] * dim
        for value, j in zip(ray, pivots):
            full[j] = value
        rays.append(tuple(full))
    return tuple(rays), lineality


# ---------------------------------------------------------------------------
# representation conversion


def _solve_affine(eqs: Sequence, dim: int):
    """Parametrize {x : eqs hold} as x0 + span(basis); None if inconsistent."""
    if not eqs:
        return zeros(dim), tuple(identity(dim))
    m = tuple(vec(c) for c, _ in eqs)
    b = tuple(rat(v) for _, v in eqs)
    x0 = solve(m, b)
    if x0 is None:
        return None
    return x0, nullspace(m, dim)


def halfspaces_to_vertices(ineqs: Sequence, eqs: Sequence, dim: int) -> tuple:
    """Vertex list of {x : c.x <= b, e.x = f}; () when the set is empty.

    Raises ``UnboundedError`` with a recession direction when the described
    set is not a polytope.
    """
    affine = _solve_affine(eqs, dim)
    if affine is None:
        return ()
    x0, basis = affine
    k = len(basis)
    # Substitute x = x0 + basis.s and homogenize with a slack coordinate t:
    # rows (-c.basis, b - c.x0) and (0, 1) cut the cone whose t>0 rays are
    # vertices and whose t=0 rays are recession directions.
    rows = []
    for c, b in ineqs:
        c = vec(c)
        if len(c) != dim:
            raise PolytopeError(f"inequality length {len(c)} != dim {dim}")
        rows.append(tuple(-dot(c, nv) for nv in basis) + (rat(b) - dot(c, x0),))
    rows.append(zeros(k) + (ONE,))
    rays, lineality = dual_description(rows, k + 1)
    positive = [r for r in rays if r[k] > 0]
    if not positive:
        return ()
    flat = [r for r in rays if r[k] == 0] + list(lineality)
    if flat:
        s = flat[0][:k]
        direction = zeros(dim)
        for coeff, nv in zip(s, basis):
            if coeff:
                direction = add_vec(direction, scale_vec(coeff, nv))
        raise UnboundedError(direction)
    vertices = []
    for r in positive:
        t = r[k]
        point = x0
        for coeff, nv in zip(r[:k], basis):
            if coeff:
                point = add_vec(point, scale_vec(coeff / t, nv))
        vertices.append(point)
    return tuple(sorted(vertices))


def hull_to_halfspaces(points: Sequence) -> tuple[tuple, tuple]:
    """Canonical irredundant H-rep (ineqs, equalities) of a convex hull.

    Facets come out of the double description of the valid-inequality cone
    of the hull in its own affine-hull coordinates, so none is redundant
    and each is tight somewhere.  A single point yields equalities only.
    """
    pts = sorted(set(tuple(rat(x) for x in p) for p in points))
    if not pts:
        raise PolytopeError("hull of zero points")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise PolytopeError("points of mixed dimension")
    v0 = pts[0]
    diffs = tuple(sub_vec(p, v0) for p in pts[1:])
    if diffs:
        normals = nullspace(diffs, dim)
    else:
        normals = tuple(identity(dim))
    equalities = []
    for h in normals:
        h = primitive_integer_vector(h)
        lead = next(x for x in h if x)
        if lead < 0:
            h = tuple(-x for x in h)
        equalities.append((h, dot(h, v0)))
    equalities = tuple(sorted(equalities))
    k = dim - len(equalities)
    if k == 0:
        return (), equalities

    # Coordinates on the affine hull: columns of n_mat span the hull
    # directions; c_inv reads coordinates off a full-rank row subset.
    cols = column_space_basis(transpose(diffs))
    n_mat = transpose(cols)  # dim x k
    row_idx = independent_rows(n_mat, need=k)
    c_inv = invert(tuple(n_mat[i] for i in row_idx))

    def coords(x):
        return mat_vec(c_inv, tuple(x[i] for i in row_idx))

    svecs = [coords(sub_vec(p, v0)) for p in pts]
    inv_n = ONE / rat(len(svecs))
    centroid = tuple(sum(s[j] for s in svecs) * inv_n for j in range(k))
    shifted = [sub_vec(s, centroid) for s in svecs]
    # Valid inequalities (h, c) with h.s <= c form a pointed cone once the
    # centroid sits at the origin; its extreme rays are the facets plus the
    # trivial ray (0, 1).
    rows = [tuple(-x for x in s) + (ONE,) for s in shifted]
    rays, lineality = dual_description(rows, k + 1)
    if lineality:
        raise PolytopeError("facet cone unexpectedly has lineality")
    ineqs = []
    for r in rays:
        h, c = r[:k], r[k]
        if not any(h):
            continue
        small = vec_mat(h, c_inv)
        full = [ZERO] * dim
        for value, i in zip(small, row_idx):
            full[i] = value
        rhs = c + dot(h, centroid) + dot(full, v0)
        packed = primitive_integer_vector(tuple(full) + (rhs,))
        ineqs.append((packed[:dim], packed[dim]))
    return tuple(sorted(ineqs)), equalities


def _extreme_subset(points: Sequence, ineqs, eqs, dim: int) -> tuple:
    """Filter a point list down to actual vertices via tight-row rank."""
    out = []
    eq_rows = [vec(c) for c, _ in eqs]
    for p in points:
        tight = [vec(c) for c, b in ineqs if dot(c, p) == b] + eq_rows
        if tight and rank(tuple(tight)) == dim:
            out.append(p)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# membership certificates


class Inside:
    """Convex-combination certificate: x == sum(w_i * v_i), w >= 0, sum 1."""

    __slots__ = ("weights",)
    is_inside = True

    def __init__(self, weights: Vector):
        self.weights = weights

    def __repr__(self):
        return f"Inside(weights={self.weights!r})"


class Outside:
    """Separating functional: h.v <= bound on the polytope, h.x > bound."""

    __slots__ = ("normal", "bound", "margin")
    is_inside = False

    def __init__(self, normal: Vector, bound, margin):
        self.normal = normal
        self.bound = bound
        self.margin = margin

    def __repr__(self):
        return f"Outside(normal={self.normal!r}, bound={self.bound!r})"


class Polytope:
    """Immutable bounded convex polytope with lazily completed dual reps.

    Construction trusts whichever representation it is given; the other is
    derived on first use.  ``raw`` halfspace rows (possibly redundant, as
    handed to the constructor) are kept for cheap LP assembly even after
    the canonical facet list exists.
    """

    __slots__ = ("dim", "_vertices", "_raw_hrep", "_canonical_hrep", "_empty", "_lock")

    def __init__(self, dim: int, *, vertices=None, raw_hrep=None, empty=False):
        self.dim = dim
        self._vertices = vertices
        self._raw_hrep = raw_hrep
        self._canonical_hrep = None
        self._empty = empty or (vertices is not None and len(vertices) == 0)
        self._lock = threading.Lock()

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_points(cls, points: Sequence) -> "Polytope":
        """Hull of arbitrary points; non-extreme ones are filtered out."""
        pts = sorted(set(tuple(rat(x) for x in p) for p in points))
        if not pts:
            raise PolytopeError("from_points needs at least one point")
        dim = len(pts[0])
        ineqs, eqs = hull_to_halfspaces(pts)
        verts = _extreme_subset(pts, ineqs, eqs, dim)
        p = cls(dim, vertices=verts)
        p._canonical_hrep = (ineqs, eqs)
        return p

    @classmethod
    def from_extreme_points(cls, points: Sequence) -> "Polytope":
        """Hull of points already known to be extreme (skips the filter)."""
        pts = tuple(sorted(set(tuple(rat(x) for x in p) for p in points)))
        if not pts:
            raise PolytopeError("from_extreme_points needs at least one point")
        return cls(len(pts[0]), vertices=pts)

    @classmethod
    def from_halfspaces(cls, ineqs: Sequence, eqs: Sequence, dim: int) -> "Polytope":
        ineqs = tuple((vec(c), rat(b)) for c, b in ineqs)
        eqs = tuple((vec(c), rat(b)) for c, b in eqs)
        return cls(dim, raw_hrep=(ineqs, eqs))

    @classmethod
    def empty(cls, dim: int) -> "Polytope":
        return cls(dim, vertices=(), empty=True)

    # -- lazy completion ----------------------------------------------------

    @property
    def vertices(self) -> tuple:
        if self._vertices is None:
            with self._lock:
                if self._vertices is None:
                    ineqs, eqs = self._raw_hrep
                    verts = halfspaces_to_vertices(ineqs, eqs, self.dim)
                    self._empty = len(verts) == 0
                    self._vertices = verts
        return self._vertices

    @property
    def is_empty(self) -> bool:
        if self._vertices is None:
            self.vertices
        return self._empty

    def _canonical(self):
        if self._canonical_hrep is None:
            with self._lock:
                if self._canonical_hrep is None:
                    verts = self._vertices
                    if verts is None:
                        # compute outside the lock would race; do it inline
                        ineqs, eqs = self._raw_hrep
                        verts = halfspaces_to_vertices(ineqs, eqs, self.dim)
                        self._empty = len(verts) == 0
                        self._vertices = verts
                    if not verts:
                        marker = ((zeros(self.dim), rat(-1)),)
                        self._canonical_hrep = (marker, ())
                    else:
                        self._canonical_hrep = hull_to_halfspaces(verts)
        return self._canonical_hrep

    @property
    def ineqs(self) -> tuple:
        """Canonical facet inequalities (normal, offset): normal.x <= offset."""
        return self._canonical()[0]

    @property
    def equalities(self) -> tuple:
        """Canonical affine-hull equalities (normal, value)."""
        return self._canonical()[1]

    def lp_rows(self) -> tuple[tuple, tuple]:
        """(ineqs, eqs) rows for LP assembly; raw rows win when available."""
        if self._raw_hrep is not None:
            return self._raw_hrep
        return self._canonical()

    # -- queries ------------------------------------------------------------

    @property
    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        return self.dim - len(self.equalities)

    @property
    def centroid(self) -> Vector:
        verts = self.vertices
        if not verts:
            raise PolytopeError("centroid of empty polytope")
        inv = ONE / rat(len(verts))
        return tuple(sum(v[j] for v in verts) * inv for j in range(self.dim))

    def contains(self, x: Sequence) -> bool:
        """Fast boolean membership via whatever H-rep rows are on hand."""
        x = vec(x)
        if len(x) != self.dim:
            raise PolytopeError(f"point dim {len(x)} != polytope dim {self.dim}")
        if self._vertices is not None and self._empty:
            return False
        ineqs, eqs = self.lp_rows()
        return all(dot(c, x) <= b for c, b in ineqs) and all(
            dot(c, x) == b for c, b in eqs
        )

    def member(self, x: Sequence):
        """Certified membership: Inside(weights) or Outside(separator).

        Inside weights recombine to x exactly over ``self.vertices``; the
        outside functional satisfies normal.v <= bound on every vertex and
        normal.x > bound, both checked before returning.
        """
        x = vec(x)
        if len(x) != self.dim:
            raise PolytopeError(f"point dim {len(x)} != polytope dim {self.dim}")
        verts = self.vertices
        if not verts:
            return Outside(normal=zeros(self.dim), bound=rat(-1), margin=ONE)
        n = len(verts)
        eq_rows = []
        for j in range(self.dim):
            eq_rows.append((tuple(v[j] for v in verts), x[j]))
        eq_rows.append(((ONE,) * n, ONE))
        result = lp_feasible(
            LpSystem(n_vars=n, eqs=tuple(eq_rows), nonneg=(True,) * n)
        )
        if isinstance(result, Infeasible):
            z = result.eq_multipliers
            normal = tuple(-z[j] for j in range(self.dim))
            bound = z[self.dim]
            margin = dot(normal, x) - bound
            if margin <= 0 or any(dot(normal, v) > bound for v in verts):
                raise PolytopeError("separator failed verification; solver bug")
            return Outside(normal=normal, bound=bound, margin=margin)
        w = result.witness
        recombined = zeros(self.dim)
        for wi, v in zip(w, verts):
            if wi:
                recombined = add_vec(recombined, scale_vec(wi, v))
        if recombined != x:
            raise PolytopeError("inside weights failed verification; solver bug")
        return Inside(weights=w)

    def intersect_with_affine(self, equalities: Sequence) -> "Polytope":
        """Exact intersection with affine equalities; eagerly enumerated."""
        extra = tuple((vec(c), rat(b)) for c, b in equalities)
        for c, _ in extra:
            if len(c) != self.dim:
                raise PolytopeError("equality dimension mismatch")
        ineqs, eqs = self.lp_rows()
        result = Polytope.from_halfspaces(ineqs, eqs + extra, self.dim)
        result.vertices
        return result

    def same_set(self, other: "Polytope") -> bool:
        if self is other:
            return True
        return self.dim == other.dim and self.vertices == other.vertices

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.same_set(other)

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        if self._vertices is not None:
            if self._empty:
                return f"Polytope.empty(dim={self.dim})"
            return f"Polytope(dim={self.dim}, {len(self._vertices)} vertices)"
        ineqs, eqs = self._raw_hrep
        return f"Polytope(dim={self.dim}, {len(ineqs)}+{len(eqs)} halfspace rows)"
