"""Joint systems between the minimal and maximal tensor products.

A composite carries the two factors, the joint polytope in the tensored
coordinates, and the contraction maps that produce marginals.  The minimal
product is the hull of product states (its vertex list is exactly the
pairwise products: a product of extreme points cannot be a mixture of
other products, as evaluating against product functionals that expose each
factor shows).  The maximal product is cut out by finitely many rows:
nonnegativity against products of the factors' positive-cone extreme rays
plus normalization on u (x) u.

Why extreme rays suffice: every nonnegative functional on a state cone is
a nonnegative combination of that cone's dual extreme rays, so positivity
against ray products implies positivity against all product effects; the
upper bounds come free, since phi(e, f) <= phi(u, f) <= phi(u, u) = 1 once
the complements u - e and u - f are admitted as effects.  This keeps joint
H-reps at (#rays_A x #rays_B) rows, the size that makes the channel LPs
comfortable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .rationals import ONE, ZERO, rat
from .linalg import dot, kron_vec, vec
from .polytope import Polytope
from .spaces import SpaceError, StateSpace
from .channels import AffineChannel


class CompositeError(SpaceError):
    pass


class CompositeSpace(StateSpace):
    """A joint state space sandwiched between the min and max products."""

    __slots__ = ("factor_a", "factor_b", "variant")

    def __init__(self, name: str, omega: Polytope, factor_a: StateSpace,
                 factor_b: StateSpace, variant: str, validate: bool):
        unit = kron_vec(factor_a.unit, factor_b.unit)
        super().__init__(name, omega, unit, validate=validate)
        self.factor_a = factor_a
        self.factor_b = factor_b
        self.variant = variant

    # ``joint`` is the natural name at this layer
    @property
    def joint(self) -> Polytope:
        return self.omega

    @property
    def contraction_matrix_a(self):
        """Rows read marginal_a: entry u_B[j] at column i*d_B + j."""
        da, db = self.factor_a.span_dim, self.factor_b.span_dim
        ub = self.factor_b.unit
        rows = []
        for i in range(da):
            row = [ZERO] * (da * db)
            for j in range(db):
                row[i * db + j] = ub[j]
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def contraction_matrix_b(self):
        da, db = self.factor_a.span_dim, self.factor_b.span_dim
        ua = self.factor_a.unit
        rows = []
        for j in range(db):
            row = [ZERO] * (da * db)
            for i in range(da):
                row[i * db + j] = ua[i]
            rows.append(tuple(row))
        return tuple(rows)

    @property
    def swap_matrix(self):
        if self.factor_a != self.factor_b:
            raise CompositeError("swap needs equal factors")
        d = self.factor_a.span_dim
        rows = []
        for j in range(d):
            for i in range(d):
                row = [ZERO] * (d * d)
                row[i * d + j] = ONE
                rows.append(tuple(row))
        return tuple(rows)

    def _check_normalized(self, w) -> tuple:
        w = vec(w)
        if len(w) != self.span_dim:
            raise CompositeError(
                f"joint state has dimension {len(w)}, expected {self.span_dim}"
            )
        if dot(self.unit, w) != ONE:
            raise CompositeError("joint state is not normalized against u (x) u")
        return w

    def marginal_a(self, w: Sequence) -> tuple:
        """Contract slot B against its unit; the reduced state on A."""
        w = self._check_normalized(w)
        db = self.factor_b.span_dim
        ub = self.factor_b.unit
        return tuple(
            sum((w[i * db + j] * ub[j] for j in range(db) if ub[j]), ZERO)
            for i in range(self.factor_a.span_dim)
        )

    def marginal_b(self, w: Sequence) -> tuple:
        w = self._check_normalized(w)
        da, db = self.factor_a.span_dim, self.factor_b.span_dim
        ua = self.factor_a.unit
        return tuple(
            sum((w[i * db + j] * ua[i] for i in range(da) if ua[i]), ZERO)
            for j in range(db)
        )

    def product_state(self, omega_a: Sequence, omega_b: Sequence) -> tuple:
        omega_a, omega_b = vec(omega_a), vec(omega_b)
        if len(omega_a) != self.factor_a.span_dim or len(omega_b) != self.factor_b.span_dim:
            raise CompositeError("product_state: factor dimension mismatch")
        if not self.factor_a.contains(omega_a):
            raise CompositeError("product_state: first argument is not a state of factor A")
        if not self.factor_b.contains(omega_b):
            raise CompositeError("product_state: second argument is not a state of factor B")
        return kron_vec(omega_a, omega_b)


@lru_cache(maxsize=None)
def min_tensor(a: StateSpace, b: StateSpace) -> CompositeSpace:
    """Convex hull of product states; V-rep native."""
    vertices = tuple(kron_vec(v, w) for v in a.vertices for w in b.vertices)
    poly = Polytope.from_extreme_points(vertices)
    return CompositeSpace(f"min({a.name},{b.name})", poly, a, b, "min", validate=True)


@lru_cache(maxsize=None)
def max_tensor(a: StateSpace, b: StateSpace) -> CompositeSpace:
    """All bilinear functionals nonnegative on product effects; H-rep native."""
    rows = [
        (tuple(-x for x in kron_vec(ra, rb)), ZERO)
        for ra in a.positive_cone_rays()
        for rb in b.positive_cone_rays()
    ]
    eqs = [(kron_vec(a.unit, b.unit), ONE)]
    poly = Polytope.from_halfspaces(rows, eqs, a.span_dim * b.span_dim)
    return CompositeSpace(f"max({a.name},{b.name})", poly, a, b, "max", validate=False)


def custom_composite(a: StateSpace, b: StateSpace, ineqs: Sequence,
                     eqs: Sequence = (), name: str | None = None) -> CompositeSpace:
    """A caller-supplied joint H-rep, validated against the min/max sandwich."""
    dim = a.span_dim * b.span_dim
    poly = Polytope.from_halfspaces(ineqs, eqs, dim)
    composite = CompositeSpace(
        name or f"custom({a.name},{b.name})", poly, a, b, "custom", validate=True
    )
    lower = min_tensor(a, b)
    upper = max_tensor(a, b)
    for v in lower.vertices:
        if not composite.omega.member(v).is_inside:
            raise CompositeError(
                f"custom composite excludes the product state {v}; "
                "it does not contain the minimal tensor product"
            )
    for v in composite.vertices:
        if not upper.contains(v):
            raise CompositeError(
                f"custom composite vertex {v} violates a product-effect bound; "
                "it is not contained in the maximal tensor product"
            )
    return composite


def swap_channel(composite: CompositeSpace) -> AffineChannel:
    """The involution exchanging the two (equal) slots."""
    return AffineChannel(composite.swap_matrix, composite, composite)
