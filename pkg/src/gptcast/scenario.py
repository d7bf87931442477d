"""Scenario files: the textual front door to the decision procedures.

A scenario is a JSON object naming a state space, a composite variant, a
state set, and a task.  All numbers on the decision path are exact
rational literals in ``"p"`` or ``"p/q"`` text form; floating literals are
rejected outright.  Parse errors always name the offending field by path.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .composites import CompositeSpace, custom_composite, max_tensor, min_tensor
from .rationals import rat, rat_str
from .spaces import (
    SpaceError,
    StateSpace,
    make_classical,
    make_polygon,
    make_square_gbit,
)

TASKS = ("distinguish", "clone", "broadcast", "analyze", "sweep")

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_VERTEX_RE = re.compile(r"^vertex:(\d+)$")


class ScenarioError(ValueError):
    """A scenario file that cannot be turned into a decision question."""


def parse_rational(value, where: str):
    """One exact rational from ``"p"``/``"p/q"`` text or an int.

    The grammar is deliberately narrower than what the rational layer
    accepts: no decimal points, no exponents, nothing a float could hide
    in.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise ScenarioError(f"{where}: expected an exact rational string, got {value!r}")
    if isinstance(value, int):
        return rat(value)
    if not isinstance(value, str) or not _RATIONAL_RE.match(value.strip()):
        raise ScenarioError(
            f"{where}: malformed rational {value!r} (use integer or integer/integer text)"
        )
    text = value.strip()
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ScenarioError(f"{where}: malformed rational {value!r} (zero denominator)")
    return rat(text)


def parse_vector(value, where: str) -> tuple:
    if not isinstance(value, (list, tuple)) or not value:
        raise ScenarioError(f"{where}: expected a non-empty list of rationals")
    return tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(value))


def _parse_rows(value, width: int | None, where: str) -> tuple:
    """Halfspace rows [[coeffs, bound], ...] with a common width."""
    if not isinstance(value, list):
        raise ScenarioError(f"{where}: expected a list of [coeffs, bound] rows")
    rows = []
    for i, item in enumerate(value):
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ScenarioError(f"{where}[{i}]: expected a [coeffs, bound] pair")
        coeffs = parse_vector(item[0], f"{where}[{i}][0]")
        if width is not None and len(coeffs) != width:
            raise ScenarioError(
                f"{where}[{i}][0]: row has {len(coeffs)} coefficients, expected {width}"
            )
        rows.append((coeffs, parse_rational(item[1], f"{where}[{i}][1]")))
    return tuple(rows)


def parse_space(obj, where: str = "space") -> StateSpace:
    """A builtin space by name, or a custom one from vertices or halfspaces."""
    if not isinstance(obj, dict):
        raise ScenarioError(f"{where}: expected an object")
    if "builtin" in obj:
        name = obj["builtin"]
        extras = set(obj) - {"builtin", "n"}
        if extras:
            raise ScenarioError(f"{where}: unexpected fields {sorted(extras)}")
        if name == "square":
            return make_square_gbit()
        if name == "classical":
            n = obj.get("n")
            if not isinstance(n, int) or n < 1:
                raise ScenarioError(f"{where}.n: classical spaces need a positive integer n")
            return make_classical(n)
        if name == "polygon":
            n = obj.get("n")
            if not isinstance(n, int) or n < 3:
                raise ScenarioError(f"{where}.n: polygons need an integer n >= 3")
            return make_polygon(n)
        raise ScenarioError(
            f"{where}.builtin: unknown space {name!r} (square, classical, polygon)"
        )
    if "vertices" in obj:
        unit = parse_vector(obj.get("unit", ()), f"{where}.unit")
        verts = obj["vertices"]
        if not isinstance(verts, list) or not verts:
            raise ScenarioError(f"{where}.vertices: expected a non-empty list")
        rows = tuple(parse_vector(v, f"{where}.vertices[{i}]") for i, v in enumerate(verts))
        try:
            return StateSpace.from_vertices(
                str(obj.get("name", "custom")), rows, unit
            )
        except (SpaceError, ValueError) as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    if "ineqs" in obj:
        unit = parse_vector(obj.get("unit", ()), f"{where}.unit")
        ineqs = _parse_rows(obj["ineqs"], len(unit), f"{where}.ineqs")
        eqs = _parse_rows(obj.get("eqs", []), len(unit), f"{where}.eqs")
        try:
            return StateSpace.from_halfspaces(
                str(obj.get("name", "custom")), ineqs, eqs, unit
            )
        except (SpaceError, ValueError) as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    raise ScenarioError(
        f"{where}: give a builtin name, a vertices list, or an ineqs list"
    )


def parse_composite(obj, space: StateSpace, where: str = "composite") -> CompositeSpace:
    if obj is None or obj == "max":
        return max_tensor(space, space)
    if obj == "min":
        return min_tensor(space, space)
    if isinstance(obj, dict) and "ineqs" in obj:
        width = space.span_dim * space.span_dim
        ineqs = _parse_rows(obj["ineqs"], width, f"{where}.ineqs")
        eqs = _parse_rows(obj.get("eqs", []), width, f"{where}.eqs")
        try:
            return custom_composite(space, space, ineqs, eqs)
        except ValueError as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    raise ScenarioError(
        f'{where}: expected "min", "max", or an object with custom H-rep rows'
    )


def parse_states(value, space: StateSpace, where: str = "states") -> tuple:
    """Rational coordinate vectors, or ``"vertex:<k>"`` references."""
    if not isinstance(value, list):
        raise ScenarioError(f"{where}: expected a list")
    out = []
    for i, item in enumerate(value):
        if isinstance(item, str):
            m = _VERTEX_RE.match(item.strip())
            if not m:
                raise ScenarioError(
                    f"{where}[{i}]: unknown reference {item!r} (use \"vertex:<index>\")"
                )
            k = int(m.group(1))
            if k >= len(space.vertices):
                raise ScenarioError(
                    f"{where}[{i}]: vertex index {k} out of range "
                    f"(space has {len(space.vertices)} vertices)"
                )
            out.append(space.vertices[k])
            continue
        v = parse_vector(item, f"{where}[{i}]")
        if len(v) != space.span_dim:
            raise ScenarioError(
                f"{where}[{i}]: state has {len(v)} coordinates, "
                f"the space has {space.span_dim}"
            )
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class Scenario:
    """A parsed, fully resolved decision question."""

    task: str
    space: StateSpace
    composite: CompositeSpace
    states: tuple
    space_spec: dict
    composite_spec: object
    seed: int = 0
    trials: int = 0
    size: int = 2

    def canonical(self) -> dict:
        """Scenario echo for reports: resolved states, exact text rationals."""
        doc = {
            "task": self.task,
            "space": self.space_spec,
            "composite": self.composite_spec if self.composite_spec else "max",
            "states": [[rat_str(c) for c in s] for s in self.states],
        }
        if self.task == "sweep":
            doc["seed"] = self.seed
            doc["trials"] = self.trials
            doc["size"] = self.size
        return doc


def parse_scenario(obj, composite_override=None) -> Scenario:
    """Validate a decoded scenario document into a Scenario.

    ``composite_override`` (already parsed spec: "min"/"max"/dict) wins
    over the document's own composite field.
    """
    if not isinstance(obj, dict):
        raise ScenarioError("scenario: expected a JSON object")
    task = obj.get("task")
    if task not in TASKS:
        raise ScenarioError(f"task: expected one of {', '.join(TASKS)}; got {task!r}")
    unknown = set(obj) - {"task", "space", "composite", "states", "seed", "trials", "size"}
    if unknown:
        raise ScenarioError(f"scenario: unexpected fields {sorted(unknown)}")
    space = parse_space(obj.get("space"))
    comp_spec = composite_override if composite_override is not None else obj.get("composite")
    composite = parse_composite(comp_spec, space)
    states = parse_states(obj.get("states", []), space)

    seed, trials, size = 0, 0, 2
    if task == "sweep":
        seed = obj.get("seed", 0)
        trials = obj.get("trials", 0)
        size = obj.get("size", 2)
        for name, val in (("seed", seed), ("trials", trials), ("size", size)):
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise ScenarioError(f"{name}: expected a nonnegative integer, got {val!r}")
        if size < 1:
            raise ScenarioError("size: sweeps need at least one state per trial")
    elif any(k in obj for k in ("seed", "trials", "size")):
        raise ScenarioError("seed/trials/size only apply to the sweep task")

    return Scenario(
        task=task,
        space=space,
        composite=composite,
        states=states,
        space_spec=obj.get("space"),
        composite_spec=comp_spec,
        seed=seed,
        trials=trials,
        size=size,
    )


def load_scenario(path: str, composite_override=None) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path} is not valid JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_scenario(doc, composite_override)
