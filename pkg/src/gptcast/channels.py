"""Affine channels between state spaces.

Since every state space sits in the hyperplane u(x) = 1, an affine map of
states extends uniquely to a linear map on coordinates; channels are
stored as plain matrices.  Validity means exact unit preservation plus
vertex images landing inside the codomain polytope, which by convexity
certifies the whole state set maps correctly.

The compression of an endochannel T (the idempotent onto its fixed states)
is computed exactly from the kernel/image splitting at eigenvalue 1.  An
independent floating-point iteration of averaged powers is provided as a
cross-check; it never feeds a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rationals import ONE, ZERO, rat, rat_str
from .linalg import (
    Matrix,
    Vector,
    add_mat,
    column_space_basis,
    dot,
    identity,
    invert,
    kron_mat,
    mat,
    mat_mul,
    mat_vec,
    nullspace,
    scale_mat,
    sub_vec,
    transpose,
    vec,
    vec_mat,
)
from .polytope import Polytope
from .spaces import Effect, Measurement, StateSpace, ValidationReport


class ChannelError(ValueError):
    pass


@dataclass(frozen=True)
class AffineChannel:
    """A linear map between span coordinates carrying states to states.

    Construction does not validate; see ``validate_channel`` for the
    checkable report, or ``ensure_valid`` to raise on violations.
    """

    matrix: Matrix
    domain: StateSpace
    codomain: StateSpace

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.codomain.span_dim or any(
            len(row) != self.domain.span_dim for row in m
        ):
            raise ChannelError(
                f"matrix shape {len(m)}x{len(m[0]) if m else 0} does not map "
                f"dim {self.domain.span_dim} into dim {self.codomain.span_dim}"
            )

    def apply(self, state: Sequence) -> Vector:
        return mat_vec(self.matrix, vec(state))

    __call__ = apply

    def pull_back(self, functional: Sequence) -> Vector:
        """The dual action on covectors: e goes to e composed with this map."""
        return vec_mat(vec(functional), self.matrix)

    def is_endo(self) -> bool:
        return self.domain == self.codomain


@dataclass(frozen=True)
class ChannelReport:
    ok: bool
    problems: tuple = ()
    membership: tuple = ()  # (vertex, certificate) pairs from validation

    def __bool__(self):
        return self.ok


def validate_channel(c: AffineChannel) -> ChannelReport:
    """Exact unit preservation plus certified vertex-image membership."""
    problems = []
    pulled = c.pull_back(c.codomain.unit)
    if pulled != c.domain.unit:
        problems.append(
            f"unit not preserved: u is pulled back to ({', '.join(rat_str(x) for x in pulled)})"
        )
    membership = []
    for v in c.domain.vertices:
        image = c.apply(v)
        cert = c.codomain.omega.member(image)
        membership.append((v, cert))
        if not cert.is_inside:
            problems.append(
                f"image of vertex ({', '.join(rat_str(x) for x in v)}) leaves the codomain"
            )
    return ChannelReport(ok=not problems, problems=tuple(problems),
                         membership=tuple(membership))


def ensure_valid(c: AffineChannel) -> AffineChannel:
    report = validate_channel(c)
    if not report.ok:
        raise ChannelError("; ".join(report.problems))
    return c


def identity_channel(space: StateSpace) -> AffineChannel:
    return AffineChannel(identity(space.span_dim), space, space)


def constant_channel(space: StateSpace, target: Sequence) -> AffineChannel:
    """The map sending every state to ``target`` (column = target * u)."""
    target = vec(target)
    m = tuple(
        tuple(target[i] * u_j for u_j in space.unit) for i in range(space.span_dim)
    )
    return AffineChannel(m, space, space)


def compose(after: AffineChannel, before: AffineChannel) -> AffineChannel:
    if before.codomain != after.domain:
        raise ChannelError("compose: inner spaces do not match")
    return AffineChannel(mat_mul(after.matrix, before.matrix), before.domain,
                         after.codomain)


def tensor_pair(p: AffineChannel, q: AffineChannel, joint_domain: StateSpace,
                joint_codomain: StateSpace) -> AffineChannel:
    """The joint map acting as p on slot A and q on slot B.

    The caller owns the choice of joint spaces; the Kronecker matrix is the
    unique linear map sending each product state to the product of images.
    """
    if joint_domain.span_dim != p.domain.span_dim * q.domain.span_dim:
        raise ChannelError("tensor_pair: joint domain dimension mismatch")
    if joint_codomain.span_dim != p.codomain.span_dim * q.codomain.span_dim:
        raise ChannelError("tensor_pair: joint codomain dimension mismatch")
    return AffineChannel(kron_mat(p.matrix, q.matrix), joint_domain, joint_codomain)


def _require_square_composite(b: AffineChannel):
    cod = b.codomain
    fa = getattr(cod, "factor_a", None)
    fb = getattr(cod, "factor_b", None)
    if fa is None or fb is None:
        raise ChannelError("codomain is not a composite space")
    if fa != b.domain or fb != b.domain:
        raise ChannelError("codomain is not a composite of two copies of the domain")
    return cod


def symmetrize(b: AffineChannel) -> AffineChannel:
    """Average a map into a square composite with its slot swap.

    The result commutes with the swap, and any state whose two marginals
    both equal it under b keeps that property, since swapping only
    exchanges the marginals.
    """
    cod = _require_square_composite(b)
    swapped = mat_mul(cod.swap_matrix, b.matrix)
    half = rat(1, 2)
    m = scale_mat(half, add_mat(b.matrix, swapped))
    return AffineChannel(m, b.domain, cod)


def marginal_channel_a(b: AffineChannel) -> AffineChannel:
    cod = _require_square_composite(b)
    return AffineChannel(mat_mul(cod.contraction_matrix_a, b.matrix), b.domain,
                         b.domain)


def marginal_channel_b(b: AffineChannel) -> AffineChannel:
    cod = _require_square_composite(b)
    return AffineChannel(mat_mul(cod.contraction_matrix_b, b.matrix), b.domain,
                         b.domain)


def fixed_set(t: AffineChannel) -> Polytope:
    """States fixed by an endochannel: Omega intersected with ker(T - I)."""
    if not t.is_endo():
        raise ChannelError("fixed_set needs an endochannel")
    n = t.domain.span_dim
    eye = identity(n)
    rows = [
        (sub_vec(t.matrix[i], eye[i]), ZERO) for i in range(n)
    ]
    return t.domain.omega.intersect_with_affine(rows)


def _columns_to_matrix(columns: Sequence[Vector], nrows: int) -> Matrix:
    if not columns:
        return tuple(() for _ in range(nrows))
    return transpose(tuple(columns))


def compression(t: AffineChannel) -> AffineChannel:
    """The exact idempotent onto the fixed states of an endochannel.

    Splits the space as ker(T - I) + im(T - I) and projects onto the
    kernel along the image; this is the limit of averaged powers of T,
    computed algebraically.  For a genuine channel of a compact state set
    the splitting always exists; failure means the matrix was never a
    valid channel, and is reported as such.
    """
    if not t.is_endo():
        raise ChannelError("compression needs an endochannel")
    n = t.domain.span_dim
    delta = add_mat(t.matrix, scale_mat(-ONE, identity(n)))
    kernel = list(nullspace(delta, n))
    image = list(column_space_basis(delta))
    if not kernel:
        raise ChannelError(
            "channel has no fixed state; a valid channel of a compact convex "
            "state set always does, so the input matrix is not a channel"
        )
    basis = kernel + image
    if len(basis) != n:
        raise ChannelError(
            "kernel and image of (T - I) do not split the space; the input "
            "matrix is not a valid channel (power-boundedness fails)"
        )
    try:
        change = invert(_columns_to_matrix(basis, n))
    except ValueError:
        raise ChannelError(
            "kernel and image of (T - I) overlap; the input matrix is not a "
            "valid channel (power-boundedness fails)"
        ) from None
    projected = kernel + [vec((ZERO,) * n) for _ in image]
    p = mat_mul(_columns_to_matrix(projected, n), change)
    return AffineChannel(p, t.domain, t.domain)


def averaged_power_compression(t: AffineChannel, tolerance: float = 1e-12,
                               max_iterations: int = 10**6):
    """Floating-point iterative cross-check of ``compression``.

    Iterates powers of the halfway-averaged operator (I + T)/2, whose
    limit is the same projection; the binomial weighting over powers of T
    converges geometrically where the uniformly-weighted running average
    only manages O(1/n) and cannot reach tight tolerances in any feasible
    iteration budget.  Stops when successive iterates differ by at most
    ``tolerance`` in max norm.  Returns (float matrix, iterations run).
    Never used for verdicts.
    """
    import numpy as np

    n = t.domain.span_dim
    s = (np.eye(n) + np.array([[float(x) for x in row] for row in t.matrix])) / 2.0
    current = s
    for k in range(1, max_iterations + 1):
        nxt = current @ s
        if np.max(np.abs(nxt - current)) <= tolerance:
            return nxt, k + 1
        current = nxt
    return current, max_iterations


def lift_effect(p: AffineChannel, e_gamma: Effect, gamma: Polytope) -> Effect:
    """Pull an effect on the compressed range back to the whole space.

    ``p`` must be idempotent with range ``gamma``; the lift is the
    composition with p, which agrees with the original on gamma and stays
    within [0, u] everywhere because p maps the space onto gamma.
    """
    for v in gamma.vertices:
        value = dot(e_gamma.functional, v)
        if value < ZERO or value > ONE:
            raise ChannelError(
                f"effect evaluates to {rat_str(value)} on the compressed range"
            )
    return Effect(p.pull_back(e_gamma.functional))


def lift_measurement(p: AffineChannel, m: Measurement, gamma: Polytope) -> Measurement:
    return Measurement(
        outcomes=tuple(lift_effect(p, e, gamma) for e in m.outcomes),
        labels=m.labels,
    )
