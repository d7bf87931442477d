"""State spaces, effects, and measurements.

A state space is a bounded polytope of states spanning its ambient vector
space, embedded in the hyperplane where the distinguished unit functional
u evaluates to 1.  That embedding makes every affine map of states a plain
linear map on coordinates, which the channel layer relies on throughout.

Effects are covectors with values in [0,1] across the state polytope; a
measurement is a finite list of effects summing exactly to u.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Sequence

from .rationals import ONE, ZERO, Rational, rat, rat_str
from .linalg import Vector, dot, rank, vec
from .polytope import Polytope, dual_description


class SpaceError(ValueError):
    """A would-be state space violates a structural requirement."""


@dataclass(frozen=True)
class Effect:
    """A covector with values in [0,1] on the owning state space."""

    functional: Vector

    def value(self, state: Sequence) -> Rational:
        return dot(self.functional, state)

    def __add__(self, other: "Effect") -> "Effect":
        return Effect(tuple(a + b for a, b in zip(self.functional, other.functional)))

    def __sub__(self, other: "Effect") -> "Effect":
        return Effect(tuple(a - b for a, b in zip(self.functional, other.functional)))


@dataclass(frozen=True)
class Measurement:
    outcomes: tuple
    labels: tuple = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels", tuple(str(i) for i in range(len(self.outcomes)))
            )
        if len(self.labels) != len(self.outcomes):
            raise SpaceError("measurement labels do not match outcomes")


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple = ()

    def __bool__(self):
        return self.ok


class StateSpace:
    """A polytope of states with unit functional, spanning its coordinates.

    Invariants enforced at construction: the polytope is nonempty and
    bounded, every vertex v satisfies unit.v == 1 exactly, and the vertices
    linearly span the whole coordinate space (so the ambient dimension is
    minimal for this model).
    """

    __slots__ = ("name", "omega", "unit", "_effect_cache", "_ray_cache", "_lock")

    def __init__(self, name: str, omega: Polytope, unit: Sequence,
                 validate: bool = True):
        # validate=False is for constructions that guarantee the invariants
        # structurally (tensor products); it avoids forcing a vertex
        # enumeration that may never be needed.
        unit = vec(unit)
        if len(unit) != omega.dim:
            raise SpaceError(
                f"unit covector length {len(unit)} != polytope dimension {omega.dim}"
            )
        if validate:
            verts = omega.vertices
            if not verts:
                raise SpaceError("state space polytope is empty")
            for v in verts:
                if dot(unit, v) != ONE:
                    raise SpaceError(
                        f"unit functional is {rat_str(dot(unit, v))} (not 1) at vertex {v}"
                    )
            if rank(verts) != omega.dim:
                raise SpaceError(
                    f"vertices span only {rank(verts)} of {omega.dim} dimensions; "
                    "re-embed the model in its span"
                )
        self.name = name
        self.omega = omega
        self.unit = unit
        self._effect_cache = None
        self._ray_cache = None
        self._lock = threading.Lock()

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_vertices(cls, name: str, vertices: Sequence, unit: Sequence,
                      trusted: bool = False) -> "StateSpace":
        poly = (
            Polytope.from_extreme_points(vertices)
            if trusted
            else Polytope.from_points(vertices)
        )
        return cls(name, poly, unit)

    @classmethod
    def from_halfspaces(cls, name: str, ineqs: Sequence, eqs: Sequence,
                        unit: Sequence) -> "StateSpace":
        poly = Polytope.from_halfspaces(ineqs, eqs, len(vec(unit)))
        return cls(name, poly, unit)

    # -- basic queries ----------------------------------------------------

    @property
    def span_dim(self) -> int:
        return self.omega.dim

    @property
    def vertices(self) -> tuple:
        return self.omega.vertices

    @property
    def unit_effect(self) -> Effect:
        return Effect(self.unit)

    @property
    def zero_effect(self) -> Effect:
        return Effect((ZERO,) * self.span_dim)

    def contains(self, state: Sequence) -> bool:
        return self.omega.contains(state)

    def __repr__(self):
        return f"StateSpace({self.name!r}, dim={self.span_dim}, {len(self.vertices)} vertices)"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, StateSpace):
            return NotImplemented
        return self.unit == other.unit and self.omega == other.omega

    def __hash__(self):
        return hash((self.unit, self.omega))

    # -- dual structure ---------------------------------------------------

    def effect_polytope(self) -> Polytope:
        """The polytope {a : 0 <= a.v <= 1 on all vertices} in dual coords."""
        rows = []
        for v in self.vertices:
            rows.append((tuple(-x for x in v), ZERO))
            rows.append((v, ONE))
        return Polytope.from_halfspaces(rows, (), self.span_dim)

    def extreme_effects(self) -> tuple:
        """Vertices of the effect polytope; always includes 0 and u."""
        if self._effect_cache is None:
            with self._lock:
                if self._effect_cache is None:
                    verts = self.effect_polytope().vertices
                    self._effect_cache = tuple(Effect(v) for v in verts)
        return self._effect_cache

    def positive_cone_rays(self) -> tuple:
        """Extreme rays of {a : a.v >= 0 on all vertices}, primitive.

        These generate all nonnegative functionals on the state cone; any
        product-positivity condition on joint states only needs checking
        against them, which keeps joint H-reps small.
        """
        if self._ray_cache is None:
            with self._lock:
                if self._ray_cache is None:
                    rays, lineality = dual_description(self.vertices, self.span_dim)
                    if lineality:
                        raise SpaceError("positive cone has lineality; vertices cannot span")
                    self._ray_cache = tuple(sorted(rays))
        return self._ray_cache

    def is_effect(self, e: Effect) -> bool:
        return all(ZERO <= e.value(v) <= ONE for v in self.vertices)


def is_classical(space: StateSpace) -> bool:
    """True when the state polytope is a simplex (affine dim + 1 vertices)."""
    return len(space.vertices) == space.omega.affine_dim + 1


def validate_measurement(space: StateSpace, m: Measurement) -> ValidationReport:
    """Check effect bounds at every vertex and exact summation to u."""
    problems = []
    for idx, outcome in enumerate(m.outcomes):
        if len(outcome.functional) != space.span_dim:
            problems.append(f"outcome {m.labels[idx]}: wrong dimension")
            continue
        for v in space.vertices:
            value = outcome.value(v)
            if value < ZERO or value > ONE:
                problems.append(
                    f"outcome {m.labels[idx]}: value {rat_str(value)} at vertex "
                    f"({', '.join(rat_str(x) for x in v)}) is outside [0, 1]"
                )
    if not any(p.endswith("wrong dimension") for p in problems):
        total = [ZERO] * space.span_dim
        for outcome in m.outcomes:
            for j, x in enumerate(outcome.functional):
                total[j] += x
        if tuple(total) != space.unit:
            problems.append(
                f"outcomes sum to ({', '.join(rat_str(x) for x in total)}) "
                f"instead of the unit ({', '.join(rat_str(x) for x in space.unit)})"
            )
    return ValidationReport(ok=not problems, problems=tuple(problems))


# ---------------------------------------------------------------------------
# builtin catalog


def make_classical(n: int) -> StateSpace:
    """The probability simplex on n outcomes; u is the coordinate sum."""
    if n < 1:
        raise SpaceError("a classical system needs at least one outcome")
    vertices = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
    return StateSpace.from_vertices(f"classical-{n}", vertices, (ONE,) * n, trusted=True)


def make_square_gbit() -> StateSpace:
    """The square state space: vertices (+-1, +-1, 1), u reads the height."""
    vertices = [(x, y, ONE) for x in (ONE, -ONE) for y in (ONE, -ONE)]
    return StateSpace.from_vertices("square", vertices, (ZERO, ZERO, ONE), trusted=True)


# Coarse on purpose: polygon vertices feed exact LPs whose pivot entries
# are subdeterminant ratios, so every extra digit here multiplies through.
POLYGON_MAX_DENOMINATOR = 100


def make_polygon(n: int) -> StateSpace:
    """A rational n-gon at height 1 approximating the regular polygon.

    Vertex k sits at angle 2*pi*k/n via the tangent half-angle map:
    t is the best rational approximation of tan(pi*k/n) with denominator
    at most 100, and the vertex ((1-t^2)/(1+t^2), 2t/(1+t^2), 1) lies
    exactly on the unit circle.  Angles with rational tangent (0, +-1,
    infinity) come out exact, so n = 4 is the exact diamond.  The rounding
    makes other polygons slightly irregular, but distinct points of the
    circle are automatically extreme, so they are still an honest n-gon,
    exactly.
    """
    if n < 3:
        raise SpaceError("a polygon needs at least 3 vertices")
    vertices = []
    for k in range(n):
        if 2 * k == n:
            vertices.append((-ONE, ZERO, ONE))
            continue
        approx = Fraction(math.tan(math.pi * k / n)).limit_denominator(
            POLYGON_MAX_DENOMINATOR
        )
        t = rat(approx.numerator, approx.denominator)
        den = ONE + t * t
        vertices.append(((ONE - t * t) / den, 2 * t / den, ONE))
    if len(set(vertices)) != n:
        raise SpaceError(
            f"rational resolution too coarse for an exact {n}-gon"
        )
    return StateSpace.from_vertices(f"polygon-{n}", vertices, (ZERO, ZERO, ONE),
                                    trusted=True)
