"""Builtin demonstration scenarios, one per headline capability.

Each demo is an ordinary scenario document (copy it into a file and feed
it back through ``run``), so demo reports verify through the same
machinery as user reports.  The one exception is the fixed-point
compression demo, which exercises the floating-point iterative
cross-check and so carries its own report format.
"""

from __future__ import annotations

from .channels import AffineChannel, averaged_power_compression, compression, fixed_set
from .linalg import mat_mul
from .rationals import ONE, ZERO, rat, rat_str
from .spaces import make_square_gbit

_CATALOG = (
    (
        "classical-broadcast",
        "Universal broadcasting on a classical three-outcome system: one "
        "channel whose marginals fix every state of the simplex.",
        {
            "task": "broadcast",
            "space": {"builtin": "classical", "n": 3},
            "states": ["vertex:0", "vertex:1", "vertex:2"],
        },
    ),
    (
        "classical-bit-broadcast",
        "The same universal broadcast on a classical bit, small enough to "
        "read the channel matrix at a glance.",
        {
            "task": "broadcast",
            "space": {"builtin": "classical", "n": 2},
            "states": ["vertex:0", "vertex:1"],
        },
    ),
    (
        "gbit-distinguishable-pair",
        "Two diagonally opposite square-gbit states and the two-outcome "
        "measurement that tells them apart with certainty.",
        {
            "task": "distinguish",
            "space": {"builtin": "square"},
            "states": ["vertex:0", "vertex:3"],
        },
    ),
    (
        "gbit-three-vertices",
        "Three vertices of the square gbit: never jointly distinguishable, "
        "never broadcastable; the report carries the infeasibility "
        "certificate.",
        {
            "task": "broadcast",
            "space": {"builtin": "square"},
            "states": ["vertex:0", "vertex:1", "vertex:2"],
        },
    ),
    (
        "gbit-covered-segment",
        "A diagonal pair plus the centroid: broadcastable because all three "
        "sit on one distinguishable segment, which the analysis extracts "
        "as the covering simplex.",
        {
            "task": "analyze",
            "space": {"builtin": "square"},
            "states": ["vertex:0", "vertex:3", ["0", "0", "1"]],
        },
    ),
    (
        "pentagon",
        "All five vertices of the pentagon theory: not broadcastable, the "
        "sharpest nonclassical refusal after the square.",
        {
            "task": "broadcast",
            "space": {"builtin": "polygon", "n": 5},
            "states": ["vertex:0", "vertex:1", "vertex:2", "vertex:3", "vertex:4"],
        },
    ),
    (
        "rebit-polygon",
        "A 16-gon standing in for the rebit disk (approximate: the polygon "
        "only discretizes the circle of pure states): two antipodal states "
        "are perfectly distinguishable.",
        {
            "task": "distinguish",
            "space": {"builtin": "polygon", "n": 16},
            "states": [["1", "0", "1"], ["-1", "0", "1"]],
        },
    ),
)

COMPRESSION_DEMO = "fixed-point-compression"


def demo_names() -> tuple:
    return tuple(name for name, _, _ in _CATALOG) + (COMPRESSION_DEMO,)


def demo_description(name: str) -> str:
    for n, text, _ in _CATALOG:
        if n == name:
            return text
    if name == COMPRESSION_DEMO:
        return (
            "An averaged rotation of the square gbit and the exact idempotent "
            "compression onto its fixed states, cross-checked against the "
            "floating-point iterated average (the only tolerance-bearing "
            "number in the package)."
        )
    raise KeyError(name)


def demo_scenario_doc(name: str) -> dict:
    for n, _, doc in _CATALOG:
        if n == name:
            return {k: v for k, v in doc.items()}
    raise KeyError(name)


def compression_demo_doc(tolerance: float = 1e-9) -> dict:
    """Exact compression of an averaged square rotation vs its iteration."""
    from .reports import COMPRESSION_FORMAT

    square = make_square_gbit()
    half = rat(1, 2)
    # (identity + quarter turn) / 2; only the centroid stays fixed
    endo = AffineChannel(
        ((half, -half, ZERO), (half, half, ZERO), (ZERO, ZERO, ONE)),
        square,
        square,
    )
    p = compression(endo)
    gamma = fixed_set(endo)
    approx, iterations = averaged_power_compression(endo)
    deviation = float(
        max(
            abs(approx[r][c] - float(p.matrix[r][c]))
            for r in range(3)
            for c in range(3)
        )
    )
    return {
        "format": COMPRESSION_FORMAT,
        "demo": COMPRESSION_DEMO,
        "endochannel": [[rat_str(x) for x in row] for row in endo.matrix],
        "compression": [[rat_str(x) for x in row] for row in p.matrix],
        "fixed_set_vertices": [[rat_str(x) for x in v] for v in gamma.vertices],
        "idempotent": p.matrix == mat_mul(p.matrix, p.matrix),
        "iterations": iterations,
        "max_deviation": repr(deviation),
        "tolerance": repr(float(tolerance)),
        "within_tolerance": deviation <= float(tolerance),
    }


def rerun_compression_report(doc: dict):
    """Deterministic replay check for a compression demo report."""
    from .reports import canonical_bytes

    fresh = compression_demo_doc(float(doc.get("tolerance", "1e-9")))
    same = canonical_bytes(fresh) == canonical_bytes(doc)
    return same, [("compression_replay_identical", same)]
