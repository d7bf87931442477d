"""Randomized agreement sweeps over the decision procedures.

A sweep draws seeded random state sets and confirms, trial by trial, the
equivalences the decision layer is built on: cloneable iff jointly
distinguishable (under both tensor products), broadcastable iff covered
by a distinguishable simplex (checked constructively on every yes), and
invariance of the broadcast verdict under the choice of composite.  Any
disagreement would be a bug, and the offending instance is dumped in
full, replayable form.
"""

from __future__ import annotations

import random

from .composites import max_tensor, min_tensor
from .decisions import (
    DecisionError,
    StateSet,
    broadcaster_exists,
    cloner_exists,
    extract_simplex_cover,
    jointly_distinguishable,
)
from .rationals import ONE, ZERO, rat, rat_str
from .scenario import Scenario, ScenarioError, parse_scenario
from .spaces import StateSpace

#: space family name -> scenario space spec
FAMILIES = {
    "bit": {"builtin": "classical", "n": 2},
    "trit": {"builtin": "classical", "n": 3},
    "simplex3": {"builtin": "classical", "n": 4},
    "square": {"builtin": "square"},
    "pentagon": {"builtin": "polygon", "n": 5},
}


def random_state(space: StateSpace, rng: random.Random) -> tuple:
    """A random mixture of vertices with small rational weights."""
    verts = space.vertices
    weights = [rat(rng.randint(0, 6)) for _ in verts]
    if sum(weights) == ZERO:
        weights[rng.randrange(len(verts))] = ONE
    total = sum(weights)
    return tuple(
        sum((w * v[c] for w, v in zip(weights, verts)), ZERO) / total
        for c in range(space.span_dim)
    )


def random_state_set(space: StateSpace, size: int, rng: random.Random) -> StateSet:
    states = []
    for _ in range(size):
        s = random_state(space, rng)
        if s not in states:
            states.append(s)
    return StateSet(space, tuple(states))


def _trial(space: StateSpace, low, high, size: int, rng: random.Random) -> dict:
    ss = random_state_set(space, size, rng)
    dist = jointly_distinguishable(ss).verdict
    clone_min = cloner_exists(ss, low).verdict
    clone_max = cloner_exists(ss, high).verdict
    b_min = broadcaster_exists(ss, low)
    b_max = broadcaster_exists(ss, high)

    cover_ok = None
    if b_max.verdict:
        try:
            cover = extract_simplex_cover(b_max.witness, ss)
            cover_ok = all(ok for _, ok in cover.checks)
        except DecisionError:
            cover_ok = False

    row = {
        "states": [[rat_str(c) for c in s] for s in ss.states],
        "distinguish": dist,
        "clone_min": clone_min,
        "clone_max": clone_max,
        "broadcast_min": b_min.verdict,
        "broadcast_max": b_max.verdict,
        "agreement": {
            "clone_iff_distinguish_min": clone_min == dist,
            "clone_iff_distinguish_max": clone_max == dist,
            "tensor_invariance": b_min.verdict == b_max.verdict,
        },
    }
    if cover_ok is not None:
        row["agreement"]["broadcast_cover_extracted"] = cover_ok
    return row


def sweep_doc(scenario: Scenario) -> dict:
    """Run a sweep scenario and assemble its deterministic summary.

    Trials are independent (results keyed by index), each seeded from the
    sweep seed and its own index, so order of execution cannot matter.
    """
    space = scenario.space
    low = min_tensor(space, space)
    high = max_tensor(space, space)

    results = {}
    disagreements = []
    tally: dict = {}
    for t in range(scenario.trials):
        rng = random.Random(f"{scenario.seed}:{t}")
        row = _trial(space, low, high, scenario.size, rng)
        results[str(t)] = row
        for name, ok in row["agreement"].items():
            key_all, key_ok = f"{name}_checked", f"{name}_agreed"
            tally[key_all] = tally.get(key_all, 0) + 1
            tally[key_ok] = tally.get(key_ok, 0) + bool(ok)
        if not all(row["agreement"].values()):
            disagreements.append(
                {
                    "trial": t,
                    "replay": {
                        "task": "analyze",
                        "space": scenario.space_spec,
                        "composite": scenario.composite_spec or "max",
                        "states": row["states"],
                    },
                }
            )

    from .reports import REPORT_FORMAT

    return {
        "format": REPORT_FORMAT,
        "scenario": scenario.canonical(),
        "task": "sweep",
        "summary": dict(sorted(tally.items())),
        "results": results,
        "disagreements": disagreements,
    }


def sweep_scenario(family: str, size: int, trials: int, seed: int) -> Scenario:
    """Scenario for a flag-driven sweep (the CLI's sweep verb)."""
    if family not in FAMILIES:
        raise ScenarioError(
            f"unknown space family {family!r}; pick one of {', '.join(sorted(FAMILIES))}"
        )
    return parse_scenario(
        {
            "task": "sweep",
            "space": FAMILIES[family],
            "states": [],
            "seed": seed,
            "trials": trials,
            "size": size,
        }
    )
