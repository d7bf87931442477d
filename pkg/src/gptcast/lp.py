"""Exact linear programming with certificates.

A dense rational simplex (Bland's rule, so termination is guaranteed)
decides feasibility of systems ``{A x <= b, E x = f}`` with optionally
sign-restricted variables.  Either outcome is returned as a checkable
object: a feasible point that satisfies every constraint exactly, or a
Farkas certificate ``(y >= 0, z)`` with

    y^T A + z^T E == 0   (on free variables; >= 0 on nonnegative ones)
    y^T b + z^T f  < 0

proving emptiness.  No floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rationals import ONE, ZERO, Rational, primitive_integer_vector, rat
from .linalg import Vector, dot, vec


class LpError(ValueError):
    """Malformed LP system."""


class LpInternalError(RuntimeError):
    """A solver result failed its own verification; indicates a bug."""


@dataclass(frozen=True)
class LpSystem:
    """A feasibility/optimization system over free or nonnegative reals.

    ``ineqs`` rows mean ``a . x <= b``; ``eqs`` rows mean ``e . x = f``.
    ``nonneg[j]`` restricts variable j to ``x_j >= 0`` (kept out of the row
    lists so the simplex can exploit it).  ``objective`` is an optional
    ``(c, sense)`` pair with sense ``"min"`` or ``"max"``.
    """

    n_vars: int
    ineqs: tuple = ()
    eqs: tuple = ()
    nonneg: tuple = ()
    objective: tuple | None = None

    def __post_init__(self):
        nonneg = self.nonneg if self.nonneg else (False,) * self.n_vars
        object.__setattr__(self, "nonneg", tuple(nonneg))
        if len(self.nonneg) != self.n_vars:
            raise LpError("nonneg mask length must equal n_vars")
        for name, rows in (("ineqs", self.ineqs), ("eqs", self.eqs)):
            for k, (coeffs, _) in enumerate(rows):
                if len(coeffs) != self.n_vars:
                    raise LpError(
                        f"{name}[{k}] has {len(coeffs)} coefficients, expected {self.n_vars}"
                    )
        if self.objective is not None and len(self.objective[0]) != self.n_vars:
            raise LpError("objective length must equal n_vars")


def lp_row(coeffs: Sequence, rhs) -> tuple[Vector, Rational]:
    return (vec(coeffs), rat(rhs))


@dataclass(frozen=True)
class Feasible:
    """A point satisfying every constraint exactly."""

    witness: Vector
    pivots: int = 0

    verdict = True


@dataclass(frozen=True)
class Infeasible:
    """Farkas multipliers proving the system empty."""

    ineq_multipliers: Vector
    eq_multipliers: Vector
    pivots: int = 0

    verdict = False


@dataclass(frozen=True)
class Optimal:
    witness: Vector
    value: Rational
    pivots: int = 0


@dataclass(frozen=True)
class Unbounded:
    """A feasible point plus an improving ray."""

    witness: Vector
    ray: Vector
    pivots: int = 0


def check_witness(sys: LpSystem, x: Sequence) -> bool:
    """Exact substitution check of a candidate feasible point."""
    if len(x) != sys.n_vars:
        return False
    for j, restricted in enumerate(sys.nonneg):
        if restricted and x[j] < 0:
            return False
    for coeffs, rhs in sys.ineqs:
        if dot(coeffs, x) > rhs:
            return False
    for coeffs, rhs in sys.eqs:
        if dot(coeffs, x) != rhs:
            return False
    return True


def check_farkas(sys: LpSystem, cert: Infeasible) -> bool:
    """Exact substitution check of an infeasibility certificate."""
    y, z = cert.ineq_multipliers, cert.eq_multipliers
    if len(y) != len(sys.ineqs) or len(z) != len(sys.eqs):
        return False
    if any(yi < 0 for yi in y):
        return False
    combo = [ZERO] * sys.n_vars
    for yi, (coeffs, _) in zip(y, sys.ineqs):
        if yi:
            for j, c in enumerate(coeffs):
                if c:
                    combo[j] += yi * c
    for zi, (coeffs, _) in zip(z, sys.eqs):
        if zi:
            for j, c in enumerate(coeffs):
                if c:
                    combo[j] += zi * c
    for j, cj in enumerate(combo):
        if sys.nonneg[j]:
            if cj < 0:
                return False
        elif cj != 0:
            return False
    rhs = sum((yi * b for yi, (_, b) in zip(y, sys.ineqs)), ZERO)
    rhs += sum((zi * f for zi, (_, f) in zip(z, sys.eqs)), ZERO)
    return rhs < 0


class _Tableau:
    """Dense simplex tableau in computational standard form.

    Columns: split/free structural variables, slacks, artificials, rhs.
    Rows are kept with nonnegative right-hand sides; ``row_sign`` remembers
    original orientation for certificate extraction.
    """

    def __init__(self, sys: LpSystem):
        self.sys = sys
        n = sys.n_vars
        self.xp_col = [-1] * n
        self.xm_col = [-1] * n
        col = 0
        for j in range(n):
            self.xp_col[j] = col
            col += 1
            if not sys.nonneg[j]:
                self.xm_col[j] = col
                col += 1
        self.n_ineq = len(sys.ineqs)
        self.n_eq = len(sys.eqs)
        self.slack_col = [-1] * self.n_ineq
        for i in range(self.n_ineq):
            self.slack_col[i] = col
            col += 1
        self.n_struct = col

        rows = []
        signs = []
        scales = []
        for coeffs, rhs in list(sys.ineqs) + list(sys.eqs):
            # scale to a primitive integer row; rational inputs otherwise
            # drag their denominators through every later pivot
            full = tuple(coeffs) + (rhs,)
            packed = primitive_integer_vector(full)
            scale = ONE
            for orig, prim in zip(full, packed):
                if prim:
                    scale = orig / prim
                    break
            if scale != ONE:
                coeffs, rhs = packed[:-1], packed[-1]
            scales.append(scale)
            sign = 1 if rhs >= 0 else -1
            rows.append((coeffs, rhs, sign))
            signs.append(sign)
        self.row_sign = signs
        self.row_scale = scales
        self.m = len(rows)

        # Artificials: every equality row, plus inequality rows whose slack
        # cannot start basic (negated rows).
        self.art_col = [-1] * self.m
        for i in range(self.m):
            needs_art = i >= self.n_ineq or signs[i] < 0
            if needs_art:
                self.art_col[i] = col
                col += 1
        self.n_cols = col

        self.T = []
        self.basis = []
        for i, (coeffs, rhs, sign) in enumerate(rows):
            row = [ZERO] * (self.n_cols + 1)
            for j, c in enumerate(coeffs):
                if c:
                    row[self.xp_col[j]] = sign * c
                    if self.xm_col[j] >= 0:
                        row[self.xm_col[j]] = -sign * c
            if i < self.n_ineq:
                row[self.slack_col[i]] = rat(sign)
            if self.art_col[i] >= 0:
                row[self.art_col[i]] = ONE
                self.basis.append(self.art_col[i])
            else:
                self.basis.append(self.slack_col[i])
            row[self.n_cols] = sign * rhs
            self.T.append(row)

        self.pivots = 0

    # -- core pivoting ----------------------------------------------------

    def _pivot(self, row: int, col: int) -> None:
        T = self.T
        prow = T[row]
        pv = prow[col]
        if pv != ONE:
            inv = ONE / pv
            T[row] = prow = [x * inv if x else x for x in prow]
        # rows shift only where the pivot row is nonzero; touching just that
        # support in place beats rebuilding every row
        nz = [(j, b) for j, b in enumerate(prow) if b]
        for i in range(self.m):
            if i == row:
                continue
            ri = T[i]
            f = ri[col]
            if f:
                for j, b in nz:
                    ri[j] -= f * b
        cost = self.cost
        f = cost[col]
        if f:
            for j, b in nz:
                cost[j] -= f * b
        self.basis[row] = col
        self.pivots += 1

    STALL_LIMIT = 12  # degenerate pivots tolerated before Bland takes over

    def _run(self, allowed_cols: range | list, unbounded_ok: bool = False) -> int:
        """Pivot to optimality; -1 on success, else the column whose
        direction proves the objective unbounded (only if unbounded_ok).

        Pricing is largest-violation while progress lasts, falling back to
        Bland's rule after STALL_LIMIT consecutive degenerate pivots.
        Bland alone cannot cycle, and every strict improvement hands
        control back, so the alternation terminates.
        """
        rhs_idx = self.n_cols
        stall = 0
        bland = False
        while True:
            enter = -1
            if bland:
                for j in allowed_cols:
                    if self.cost[j] < 0:
                        enter = j
                        break
            else:
                best_c = ZERO
                for j in allowed_cols:
                    cj = self.cost[j]
                    if cj < best_c:
                        best_c = cj
                        enter = j
            if enter < 0:
                return -1
            leave = -1
            best = None
            for i in range(self.m):
                a = self.T[i][enter]
                if a > 0:
                    ratio = self.T[i][rhs_idx] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[i] < self.basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                if unbounded_ok:
                    return enter
                raise LpInternalError("phase-1 objective unbounded below; impossible")
            degenerate = best == ZERO
            self._pivot(leave, enter)
            if degenerate:
                stall += 1
                if stall >= self.STALL_LIMIT:
                    bland = True
            else:
                stall = 0
                bland = False

    # -- phase 1 ----------------------------------------------------------

    def solve_phase1(self):
        cost = [ZERO] * (self.n_cols + 1)
        for i in range(self.m):
            if self.basis[i] == self.art_col[i]:
                # reduced costs start as c - sum of artificial-basic rows
                for j, v in enumerate(self.T[i]):
                    if v:
                        cost[j] -= v
        for i in range(self.m):
            ac = self.art_col[i]
            if ac >= 0:
                cost[ac] += ONE
        self.cost = cost
        self._run(range(self.n_cols))
        return -self.cost[self.n_cols]  # phase-1 optimum (sum of artificials)

    def extract_witness(self) -> Vector:
        vals = [ZERO] * self.n_cols
        for i, b in enumerate(self.basis):
            vals[b] = self.T[i][self.n_cols]
        x = []
        for j in range(self.sys.n_vars):
            v = vals[self.xp_col[j]]
            if self.xm_col[j] >= 0:
                v = v - vals[self.xm_col[j]]
            x.append(v)
        return tuple(x)

    def extract_farkas(self) -> tuple[Vector, Vector]:
        # Recover the dual prices pi from final reduced costs of each row's
        # initial basic column, then undo row normalization and scaling.
        y = []
        z = []
        for i in range(self.m):
            if self.art_col[i] >= 0:
                pi = ONE - self.cost[self.art_col[i]]
            else:
                pi = -self.cost[self.slack_col[i]]
            mult = -self.row_sign[i] * pi / self.row_scale[i]
            if i < self.n_ineq:
                y.append(mult)
            else:
                z.append(mult)
        return tuple(y), tuple(z)

    # -- phase 2 ----------------------------------------------------------

    def drop_basic_artificials(self) -> None:
        """After a zero phase-1 optimum, pivot artificials out of the basis.

        Rows where that is impossible are redundant; they are deleted.
        """
        keep = []
        for i in range(self.m):
            if self.art_col[i] >= 0 and self.basis[i] == self.art_col[i]:
                target = -1
                for j in range(self.n_struct):
                    if self.T[i][j]:
                        target = j
                        break
                if target >= 0:
                    self._pivot(i, target)
                    keep.append(i)
                # else: row is 0 = 0 over structurals; drop it
            else:
                keep.append(i)
        if len(keep) != self.m:
            self.T = [self.T[i] for i in keep]
            self.basis = [self.basis[i] for i in keep]
            self.row_sign = [self.row_sign[i] for i in keep]
            self.row_scale = [self.row_scale[i] for i in keep]
            self.art_col = [self.art_col[i] for i in keep]
            self.m = len(keep)

    def solve_phase2(self, c_struct: list) -> tuple[str, Vector | None]:
        """Minimize a structural objective from a feasible basis."""
        cost = [ZERO] * (self.n_cols + 1)
        for j in range(self.sys.n_vars):
            cj = c_struct[j]
            if cj:
                cost[self.xp_col[j]] = cj
                if self.xm_col[j] >= 0:
                    cost[self.xm_col[j]] = -cj
        for i, b in enumerate(self.basis):
            f = cost[b]
            if f:
                cost = [a - f * v if v else a for a, v in zip(cost, self.T[i])]
        self.cost = cost
        allowed = range(self.n_struct)  # artificials must stay out
        enter = self._run(allowed, unbounded_ok=True)
        if enter < 0:
            return "optimal", None
        ray = [ZERO] * self.n_cols
        ray[enter] = ONE
        for i in range(self.m):
            if self.T[i][enter]:
                ray[self.basis[i]] = -self.T[i][enter]
        x = []
        for j in range(self.sys.n_vars):
            v = ray[self.xp_col[j]]
            if self.xm_col[j] >= 0:
                v = v - ray[self.xm_col[j]]
            x.append(v)
        return "unbounded", tuple(x)


def lp_feasible(sys: LpSystem):
    """Decide feasibility; return a verified ``Feasible`` or ``Infeasible``."""
    tab = _Tableau(sys)
    opt = tab.solve_phase1()
    if opt == 0:
        witness = tab.extract_witness()
        if not check_witness(sys, witness):
            raise LpInternalError("feasible witness failed substitution check")
        return Feasible(witness=witness, pivots=tab.pivots)
    y, z = tab.extract_farkas()
    cert = Infeasible(ineq_multipliers=y, eq_multipliers=z, pivots=tab.pivots)
    if not check_farkas(sys, cert):
        raise LpInternalError("Farkas certificate failed substitution check")
    return cert


def lp_optimize(sys: LpSystem):
    """Optimize ``sys.objective``; returns Optimal, Unbounded or Infeasible."""
    if sys.objective is None:
        raise LpError("lp_optimize requires an objective")
    coeffs, sense = sys.objective
    if sense not in ("min", "max"):
        raise LpError(f"objective sense must be 'min' or 'max', got {sense!r}")
    tab = _Tableau(sys)
    opt = tab.solve_phase1()
    if opt != 0:
        y, z = tab.extract_farkas()
        cert = Infeasible(ineq_multipliers=y, eq_multipliers=z, pivots=tab.pivots)
        if not check_farkas(sys, cert):
            raise LpInternalError("Farkas certificate failed substitution check")
        return cert
    tab.drop_basic_artificials()
    c = [rat(x) for x in coeffs]
    if sense == "max":
        c = [-x for x in c]
    status, ray = tab.solve_phase2(c)
    witness = tab.extract_witness()
    if not check_witness(sys, witness):
        raise LpInternalError("phase-2 witness failed substitution check")
    if status == "unbounded":
        return Unbounded(witness=witness, ray=ray, pivots=tab.pivots)
    value = dot(c, witness)
    if sense == "max":
        value = -value
    return Optimal(witness=witness, value=value, pivots=tab.pivots)
