"""Decision procedures for distinguishing, cloning, and broadcasting.

Each question is phrased as an exact rational feasibility system over
either measurement covectors or channel matrices, so a yes verdict comes
back with a witness that re-verifies by substitution and a no verdict
with a Farkas certificate for the very system that was solved.

The constructive direction turns a distinguishing measurement into a
measure-and-prepare channel; the extraction pipeline goes the other way,
distilling from any broadcasting channel a simplex of jointly
distinguishable generators that covers the input states:

    symmetrize -> marginal endochannel -> fixed polytope -> compression
    -> distinguish inside the fixed span -> lift the measurement back.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .channels import (
    AffineChannel,
    compose,
    compression,
    fixed_set,
    lift_effect,
    marginal_channel_a,
    symmetrize,
    tensor_pair,
    validate_channel,
)
from .composites import CompositeSpace, max_tensor, min_tensor
from .linalg import (
    dot,
    independent_rows,
    invert,
    kron_vec,
    mat_mul,
    mat_vec,
    rank,
    solve,
    transpose,
    vec,
)
from .lp import Infeasible, LpSystem, check_farkas, lp_feasible
from .polytope import Polytope
from .rationals import ONE, ZERO, rat, rat_str
from .spaces import Effect, Measurement, StateSpace, validate_measurement


class DecisionError(ValueError):
    """Bad input to a decision procedure, or a violated precondition."""


class DuplicateStateWarning(UserWarning):
    pass


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Farkas multipliers for the exact system that was decided."""

    system: LpSystem
    ineq_multipliers: tuple
    eq_multipliers: tuple

    def verify(self) -> bool:
        return check_farkas(
            self.system, Infeasible(self.ineq_multipliers, self.eq_multipliers)
        )


@dataclass(frozen=True)
class DecisionReport:
    """Outcome of one decision task.

    ``timing`` holds deterministic work counters ((name, count) pairs), so
    two runs of the same question produce identical reports.
    """

    task: str
    verdict: bool
    witness: object = None
    certificate: InfeasibilityCertificate | None = None
    cross_checks: tuple = ()
    timing: tuple = ()

    def __post_init__(self):
        if self.verdict and self.witness is None:
            raise DecisionError(f"{self.task}: yes verdict without a witness")
        if not self.verdict and self.certificate is None:
            raise DecisionError(f"{self.task}: no verdict without a certificate")


class _Work:
    """Accumulates LP effort so reports can carry deterministic counters."""

    __slots__ = ("lp_solves", "pivots")

    def __init__(self):
        self.lp_solves = 0
        self.pivots = 0

    def run(self, system: LpSystem):
        result = lp_feasible(system)
        self.lp_solves += 1
        self.pivots += result.pivots
        return result

    def absorb(self, timing: tuple):
        for name, count in timing:
            if name == "lp_solves":
                self.lp_solves += count
            elif name == "simplex_pivots":
                self.pivots += count

    def timing(self) -> tuple:
        return (("lp_solves", self.lp_solves), ("simplex_pivots", self.pivots))


class StateSet:
    """An ordered set of certified states of one space.

    Exact duplicates are dropped with a warning.  Every surviving state is
    checked to be normalized and comes with a membership certificate.
    """

    __slots__ = ("space", "states", "membership")

    def __init__(self, space: StateSpace, states: Sequence):
        seen: dict = {}
        kept = []
        for i, raw in enumerate(states):
            v = vec(raw)
            if len(v) != space.span_dim:
                raise DecisionError(
                    f"state {i} has {len(v)} coordinates, the space has {space.span_dim}"
                )
            if v in seen:
                warnings.warn(
                    f"duplicate state at position {i} dropped (same as position {seen[v]})",
                    DuplicateStateWarning,
                    stacklevel=2,
                )
                continue
            seen[v] = i
            if dot(space.unit, v) != ONE:
                raise DecisionError(
                    f"state {i} is not normalized: u evaluates to "
                    f"{rat_str(dot(space.unit, v))}"
                )
            cert = space.omega.member(v)
            if not cert.is_inside:
                raise DecisionError(f"state {i} lies outside the state polytope")
            kept.append((v, cert))
        self.space = space
        self.states = tuple(v for v, _ in kept)
        self.membership = tuple(c for _, c in kept)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __repr__(self):
        return f"StateSet({self.space.name}, {len(self.states)} states)"


def _resolve_composite(space: StateSpace, composite) -> CompositeSpace:
    if composite is None:
        return max_tensor(space, space)
    if composite.factor_a != space or composite.factor_b != space:
        raise DecisionError(
            "composite must join the state space with itself; got "
            f"{composite.name} over {space.name}"
        )
    return composite


# -- joint distinguishability -------------------------------------------------


def jointly_distinguishable(ss: StateSet) -> DecisionReport:
    """Is there one measurement with e_j(state_i) = delta_ij?

    Feasibility of: each e_j nonnegative at every vertex of the state
    polytope, the outcomes summing exactly to u, and the delta conditions.
    The upper bounds e_j <= u are implied by the sum and the others'
    nonnegativity, so they are not added as rows.
    """
    if not ss.states:
        raise DecisionError("cannot distinguish an empty state set")
    space, states = ss.space, ss.states
    d, n = space.span_dim, len(ss)
    verts = space.vertices
    n_vars = n * d

    ineqs = []
    for j in range(n):
        for v in verts:
            row = [ZERO] * n_vars
            for c in range(d):
                row[j * d + c] = -v[c]
            ineqs.append((tuple(row), ZERO))
    eqs = []
    for c in range(d):
        row = [ZERO] * n_vars
        for j in range(n):
            row[j * d + c] = ONE
        eqs.append((tuple(row), space.unit[c]))
    for i, w in enumerate(states):
        for j in range(n):
            row = [ZERO] * n_vars
            for c in range(d):
                row[j * d + c] = w[c]
            eqs.append((tuple(row), ONE if i == j else ZERO))

    system = LpSystem(n_vars, tuple(ineqs), tuple(eqs))
    work = _Work()
    result = work.run(system)
    if result.verdict:
        outcomes = tuple(
            Effect(tuple(result.witness[j * d : (j + 1) * d])) for j in range(n)
        )
        m = Measurement(outcomes)
        delta_ok = all(
            outcomes[j].value(states[i]) == (ONE if i == j else ZERO)
            for i in range(n)
            for j in range(n)
        )
        checks = (
            ("witness_measurement_valid", bool(validate_measurement(space, m))),
            ("witness_delta_conditions", delta_ok),
        )
        return DecisionReport("distinguish", True, m, None, checks, work.timing())
    cert = InfeasibilityCertificate(
        system, result.ineq_multipliers, result.eq_multipliers
    )
    checks = (("certificate_verifies", cert.verify()),)
    return DecisionReport("distinguish", False, None, cert, checks, work.timing())


# -- channel feasibility systems ----------------------------------------------


class _ChannelSystem:
    """Feasibility variables and shared rows for a channel into a composite.

    H-rep native composites (max, custom): variables are the matrix
    entries, entry (r, c) at index r*d + c, with unit-preservation
    equalities and every domain vertex's image run through the facet rows.

    V-rep native composites (min): variables are convex weights on the
    composite's vertices, one block per domain vertex; weights of a
    spanning basis of domain vertices determine the channel, and
    linear-consistency rows tie the remaining blocks to that basis.  Unit
    preservation is the block normalizations.
    """

    def __init__(self, space: StateSpace, composite: CompositeSpace):
        self.space = space
        self.composite = composite
        d, big = space.span_dim, composite.span_dim
        self.d, self.big = d, big
        verts = space.vertices
        self.by_weights = composite.variant == "min"
        ineqs: list = []
        eqs: list = []

        if self.by_weights:
            mixers = composite.vertices
            k = len(mixers)
            self.mixers = mixers
            self.basis_idx = independent_rows(verts)
            basis = tuple(verts[i] for i in self.basis_idx)
            self.basis = basis
            bmat = transpose(basis)
            # state -> its exact coefficients over the basis vertices
            self.coords = lambda w: solve(bmat, w)
            self.n_vars = len(verts) * k
            self.nonneg = (True,) * self.n_vars
            for bi in self.basis_idx:
                row = [ZERO] * self.n_vars
                for m in range(k):
                    row[bi * k + m] = ONE
                eqs.append((tuple(row), ONE))
            for vi, v in enumerate(verts):
                if vi in self.basis_idx:
                    continue
                c = self.coords(v)
                for r in range(big):
                    row = [ZERO] * self.n_vars
                    for m, w in enumerate(mixers):
                        if w[r]:
                            row[vi * k + m] = w[r]
                            for pos, bi in enumerate(self.basis_idx):
                                if c[pos]:
                                    row[bi * k + m] -= c[pos] * w[r]
                    eqs.append((tuple(row), ZERO))
        else:
            self.n_vars = big * d
            self.nonneg = (False,) * self.n_vars
            for c in range(d):
                row = [ZERO] * self.n_vars
                for r in range(big):
                    if composite.unit[r]:
                        row[r * d + c] = composite.unit[r]
                eqs.append((tuple(row), space.unit[c]))
            hrep_ineqs, hrep_eqs = composite.omega.lp_rows()
            for v in verts:
                for coeffs, bound, sink in (
                    [(a, b, ineqs) for a, b in hrep_ineqs]
                    + [(a, b, eqs) for a, b in hrep_eqs]
                ):
                    row = [ZERO] * self.n_vars
                    for r, ar in enumerate(coeffs):
                        if ar:
                            for c in range(d):
                                if v[c]:
                                    row[r * d + c] = ar * v[c]
                    sink.append((tuple(row), bound))
        self.ineqs = ineqs
        self.eqs = eqs

    def image_rows(self, matrix_rows, state, targets) -> list:
        """Equality rows pinning (matrix_rows @ image(state)) = targets."""
        out = []
        if self.by_weights:
            k = len(self.mixers)
            c = self.coords(state)
            for i, mrow in enumerate(matrix_rows):
                weights = tuple(dot(mrow, w) for w in self.mixers)
                row = [ZERO] * self.n_vars
                for pos, bi in enumerate(self.basis_idx):
                    if c[pos]:
                        for m, coeff in enumerate(weights):
                            if coeff:
                                row[bi * k + m] = c[pos] * coeff
                out.append((tuple(row), targets[i]))
            return out
        d = self.d
        for i, mrow in enumerate(matrix_rows):
            row = [ZERO] * self.n_vars
            for r, coeff in enumerate(mrow):
                if coeff:
                    for c in range(d):
                        if state[c]:
                            row[r * d + c] = coeff * state[c]
            out.append((tuple(row), targets[i]))
        return out

    def witness_channel(self, witness) -> AffineChannel:
        d, big = self.d, self.big
        if self.by_weights:
            k = len(self.mixers)
            images = []
            for bi in self.basis_idx:
                block = witness[bi * k : (bi + 1) * k]
                images.append(
                    tuple(
                        sum((lam * w[r] for lam, w in zip(block, self.mixers)), ZERO)
                        for r in range(big)
                    )
                )
            b_inv = invert(transpose(self.basis))
            matrix = mat_mul(transpose(images), b_inv)
            return AffineChannel(matrix, self.space, self.composite)
        matrix = tuple(
            tuple(witness[r * d + c] for c in range(d)) for r in range(big)
        )
        return AffineChannel(matrix, self.space, self.composite)

    def system(self, extra_eqs) -> LpSystem:
        return LpSystem(
            self.n_vars,
            tuple(self.ineqs),
            tuple(self.eqs) + tuple(extra_eqs),
            self.nonneg,
        )


def cloner_exists(ss: StateSet, composite: CompositeSpace = None) -> DecisionReport:
    """LP for a channel T into the composite with T(w_i) = w_i (x) w_i."""
    space = ss.space
    composite = _resolve_composite(space, composite)
    sys_builder = _ChannelSystem(space, composite)
    eye = tuple(
        tuple(ONE if r == s else ZERO for s in range(composite.span_dim))
        for r in range(composite.span_dim)
    )
    extra = []
    for w in ss.states:
        extra.extend(sys_builder.image_rows(eye, w, kron_vec(w, w)))

    system = sys_builder.system(extra)
    work = _Work()
    result = work.run(system)
    checks = []
    if result.verdict:
        channel = sys_builder.witness_channel(result.witness)
        checks.append(("witness_channel_valid", bool(validate_channel(channel))))
        checks.append(
            (
                "witness_clones_each_state",
                all(channel(w) == kron_vec(w, w) for w in ss.states),
            )
        )
        witness, certificate = channel, None
    else:
        witness = None
        certificate = InfeasibilityCertificate(
            system, result.ineq_multipliers, result.eq_multipliers
        )
        checks.append(("certificate_verifies", certificate.verify()))
    if ss.states:
        dist = jointly_distinguishable(ss)
        work.absorb(dist.timing)
        checks.append(("agrees_with_distinguishability", dist.verdict == result.verdict))
    return DecisionReport(
        "clone", result.verdict, witness, certificate, tuple(checks), work.timing()
    )


def broadcaster_exists(ss: StateSet, composite: CompositeSpace = None) -> DecisionReport:
    """LP for a channel whose both marginals fix every given state."""
    space = ss.space
    composite = _resolve_composite(space, composite)
    work = _Work()
    if not ss.states:
        # vacuously yes: any valid channel broadcasts all zero states;
        # witness by convention the constant map to centroid (x) centroid
        c = space.omega.centroid
        target = kron_vec(c, c)
        matrix = tuple(
            tuple(target[r] * u for u in space.unit) for r in range(composite.span_dim)
        )
        channel = AffineChannel(matrix, space, composite)
        checks = (
            ("vacuous_empty_set", True),
            ("witness_channel_valid", bool(validate_channel(channel))),
        )
        return DecisionReport("broadcast", True, channel, None, checks, work.timing())

    sys_builder = _ChannelSystem(space, composite)
    extra = []
    for w in ss.states:
        extra.extend(sys_builder.image_rows(composite.contraction_matrix_a, w, w))
        extra.extend(sys_builder.image_rows(composite.contraction_matrix_b, w, w))

    system = sys_builder.system(extra)
    result = work.run(system)
    checks = []
    if result.verdict:
        channel = sys_builder.witness_channel(result.witness)
        ka = composite.contraction_matrix_a
        kb = composite.contraction_matrix_b
        broadcast_ok = all(
            mat_vec(ka, channel(w)) == w and mat_vec(kb, channel(w)) == w
            for w in ss.states
        )
        checks.append(("witness_channel_valid", bool(validate_channel(channel))))
        checks.append(("witness_broadcasts_each_state", broadcast_ok))
        return DecisionReport(
            "broadcast", True, channel, None, tuple(checks), work.timing()
        )
    certificate = InfeasibilityCertificate(
        system, result.ineq_multipliers, result.eq_multipliers
    )
    checks.append(("certificate_verifies", certificate.verify()))
    return DecisionReport(
        "broadcast", False, None, certificate, tuple(checks), work.timing()
    )


# -- constructive maps ----------------------------------------------------------


def construct_cloner(ss: StateSet, m: Measurement) -> AffineChannel:
    """Measure with m, prepare the matching doubled state.

    T(w) = sum_j e_j(w) (w_j (x) w_j), landing in the minimal tensor
    product since the output is always a convex mixture of products.
    """
    space, states = ss.space, ss.states
    if len(m.outcomes) != len(states):
        raise DecisionError(
            f"measurement has {len(m.outcomes)} outcomes for {len(states)} states"
        )
    ok = validate_measurement(space, m)
    if not ok:
        raise DecisionError("not a measurement: " + "; ".join(ok.problems))
    for i, w in enumerate(states):
        for j, e in enumerate(m.outcomes):
            expected = ONE if i == j else ZERO
            if e.value(w) != expected:
                raise DecisionError(
                    f"outcome {j} evaluates to {rat_str(e.value(w))} on state {i}; "
                    "the measurement does not distinguish the set"
                )
    composite = min_tensor(space, space)
    d = space.span_dim
    doubles = [kron_vec(w, w) for w in states]
    matrix = tuple(
        tuple(
            sum(
                (doubles[j][r] * m.outcomes[j].functional[c] for j in range(len(states))),
                ZERO,
            )
            for c in range(d)
        )
        for r in range(composite.span_dim)
    )
    channel = AffineChannel(matrix, space, composite)
    report = validate_channel(channel)
    if not report.ok:
        raise DecisionError("constructed cloner is invalid: " + "; ".join(report.problems))
    for w, doubled in zip(states, doubles):
        if channel(w) != doubled:
            raise DecisionError("constructed cloner fails to clone a generator")
    return channel


def construct_broadcaster(generators: StateSet, m: Measurement) -> AffineChannel:
    """The cloner of the generators, checked to broadcast their simplex."""
    states = generators.states
    if not states:
        raise DecisionError("no generators given")
    if rank(states) != len(states):
        raise DecisionError(
            "generators are linearly dependent; they do not span a simplex"
        )
    channel = construct_cloner(generators, m)
    composite = channel.codomain
    rng = random.Random(8291)
    samples = list(states)
    for _ in range(5):
        weights = [rat(rng.randint(1, 9)) for _ in states]
        total = sum(weights)
        samples.append(
            tuple(
                sum((wt * s[c] for wt, s in zip(weights, states)), ZERO) / total
                for c in range(len(states[0]))
            )
        )
    ka = composite.contraction_matrix_a
    kb = composite.contraction_matrix_b
    for x in samples:
        y = channel.apply(x)
        if mat_vec(ka, y) != x or mat_vec(kb, y) != x:
            raise DecisionError(
                f"constructed channel fails to broadcast ({', '.join(rat_str(c) for c in x)})"
            )
    return channel


# -- simplex cover extraction ----------------------------------------------------


@dataclass(frozen=True)
class SimplexCover:
    """Distinguishable generators covering a broadcast set, plus the
    measurement that distinguishes them (already lifted to the full space).

    Unpacks as the pair (generators, measurement)."""

    generators: StateSet
    measurement: Measurement
    gamma: Polytope
    membership: tuple
    checks: tuple
    timing: tuple

    def __iter__(self):
        return iter((self.generators, self.measurement))


def _distinguish_in_span(space: StateSpace, gamma: Polytope):
    """Decide distinguishability of gamma's vertices inside their span.

    Returns the sub-space report plus one ambient functional per vertex,
    each agreeing with the sub-space effect across span(gamma).
    """
    verts = gamma.vertices
    basis = tuple(verts[i] for i in independent_rows(verts))
    bmat = transpose(basis)
    coords = tuple(solve(bmat, v) for v in verts)
    sub_space = StateSpace(
        f"{space.name}[fixed]",
        Polytope.from_extreme_points(coords),
        (ONE,) * len(basis),
    )
    sub_report = jointly_distinguishable(StateSet(sub_space, coords))
    if not sub_report.verdict:
        raise DecisionError(
            "fixed-polytope vertices are not jointly distinguishable in their "
            "span; no simplex cover exists for this channel"
        )
    ambient = tuple(
        solve(tuple(basis), e.functional) for e in sub_report.witness.outcomes
    )
    return sub_report, ambient


def extract_simplex_cover(b: AffineChannel, ss: StateSet) -> SimplexCover:
    """Distill simplex generators and a measurement from a broadcaster.

    Pipeline: symmetrize b so both marginals agree, slice out the fixed
    polytope of the marginal endochannel, compress onto its span, decide
    joint distinguishability of the fixed polytope's vertices there, and
    pull the distinguishing measurement back through the compression.
    """
    space = ss.space
    cod = b.codomain
    if (
        b.domain != space
        or getattr(cod, "factor_a", None) != space
        or getattr(cod, "factor_b", None) != space
    ):
        raise DecisionError(
            "expected a channel from the space into a composite of two copies of it"
        )
    report = validate_channel(b)
    if not report.ok:
        raise DecisionError("not a channel: " + "; ".join(report.problems))
    ka, kb = cod.contraction_matrix_a, cod.contraction_matrix_b
    for i, w in enumerate(ss.states):
        y = b(w)
        if mat_vec(ka, y) != w or mat_vec(kb, y) != w:
            raise DecisionError(f"channel does not broadcast state {i}: a marginal moves it")

    sym = symmetrize(b)
    endo = marginal_channel_a(sym)
    gamma = fixed_set(endo)
    p = compression(endo)
    q = compose(tensor_pair(p, p, cod, cod), sym)
    q_fixes = all(
        mat_vec(ka, q(g)) == g and mat_vec(kb, q(g)) == g for g in gamma.vertices
    )

    membership = []
    for i, w in enumerate(ss.states):
        cert = gamma.member(w)
        if not cert.is_inside:
            raise DecisionError(f"state {i} is not fixed by the marginal endochannel")
        membership.append(cert)

    sub_report, ambient = _distinguish_in_span(space, gamma)
    lifted = Measurement(tuple(lift_effect(p, Effect(f), gamma) for f in ambient))
    delta_ok = all(
        lifted.outcomes[j].value(g) == (ONE if i == j else ZERO)
        for i, g in enumerate(gamma.vertices)
        for j in range(len(lifted.outcomes))
    )
    checks = (
        ("q_marginals_fix_gamma", q_fixes),
        ("gamma_is_simplex", len(gamma.vertices) == gamma.affine_dim + 1),
        ("generators_distinguishable_in_span", sub_report.verdict),
        ("lifted_measurement_valid", bool(validate_measurement(space, lifted))),
        ("lifted_delta_conditions", delta_ok),
        ("inputs_covered", all(c.is_inside for c in membership)),
    )
    generators = StateSet(space, gamma.vertices)
    return SimplexCover(
        generators, lifted, gamma, tuple(membership), checks, sub_report.timing
    )


# -- the full analysis -------------------------------------------------------------


def _no_side_search(ss: StateSet, cap: int = 300):
    """Desk-scale consistency probe of a negative broadcast verdict.

    Hunts for a jointly distinguishable generator set whose simplex covers
    the inputs, among the inputs themselves and bounded vertex subsets.
    Finding one would contradict the LP, so none should turn up.
    """
    space = ss.space
    candidates = [ss.states]
    verts = space.vertices
    for size in range(1, min(len(verts), space.span_dim) + 1):
        for combo in combinations(verts, size):
            if len(candidates) >= cap:
                break
            candidates.append(combo)
    examined = 0
    for cand in candidates:
        examined += 1
        if rank(cand) != len(cand):
            continue
        dist = jointly_distinguishable(StateSet(space, cand))
        if not dist.verdict:
            continue
        hull = Polytope.from_points(cand)
        if all(hull.member(w).is_inside for w in ss.states):
            return False, examined
    return True, examined


def analyze(ss: StateSet, composite: CompositeSpace = None) -> DecisionReport:
    """Broadcast decision with the full cross-validated story.

    Yes: extract and verify a simplex cover.  No: keep the certificate and
    probe (bounded, heuristic) that no distinguishable simplex covers the
    inputs.  Either way, cross-check clone-iff-distinguishable and the
    invariance of the broadcast verdict under swapping the tensor product.
    """
    space = ss.space
    composite = _resolve_composite(space, composite)
    work = _Work()
    broad = broadcaster_exists(ss, composite)
    work.absorb(broad.timing)
    checks: list = []

    clone = cloner_exists(ss, composite)
    work.absorb(clone.timing)
    if ss.states:
        agreement = dict(clone.cross_checks)["agrees_with_distinguishability"]
        checks.append(("clone_iff_distinguishable", bool(agreement)))

    low = min_tensor(space, space)
    high = max_tensor(space, space)
    b_low = broad if composite.variant == "min" else broadcaster_exists(ss, low)
    b_high = broad if composite.variant == "max" else broadcaster_exists(ss, high)
    for other in (b_low, b_high):
        if other is not broad:
            work.absorb(other.timing)
    checks.append(("broadcast_verdict_tensor_invariant", b_low.verdict == b_high.verdict))

    if broad.verdict:
        cover = extract_simplex_cover(broad.witness, ss)
        work.absorb(cover.timing)
        checks.extend(cover.checks)
        return DecisionReport(
            "analyze", True, cover, None, tuple(checks), work.timing()
        )
    consistent, examined = _no_side_search(ss)
    checks.append((f"no_side_consistency[{examined} candidates]", consistent))
    return DecisionReport(
        "analyze", False, None, broad.certificate, tuple(checks), work.timing()
    )
