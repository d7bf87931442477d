"""Machine-readable reports: canonical JSON out, replayable proofs back in.

Every rational is serialized as exact ``"p"``/``"p/q"`` text and every
document is emitted with sorted keys and fixed indentation, so a rerun of
the same question produces byte-identical files.  A report carries enough
to re-verify itself from scratch: the resolved scenario, the witness, and
for no verdicts the full constraint system with its Farkas multipliers.
"""

from __future__ import annotations

import json

from .channels import AffineChannel, validate_channel
from .decisions import DecisionReport, SimplexCover, StateSet
from .linalg import kron_vec, mat_vec
from .lp import Infeasible, LpSystem, check_farkas
from .rationals import ONE, ZERO, rat_str
from .scenario import Scenario, parse_rational, parse_scenario
from .spaces import Effect, Measurement, validate_measurement

REPORT_FORMAT = "gptcast-report/1"
COMPRESSION_FORMAT = "gptcast-compression-report/1"


class ReportError(ValueError):
    """A report document that cannot be interpreted or rebuilt."""


def _vec_doc(v) -> list:
    return [rat_str(x) for x in v]


def _rows_doc(rows) -> list:
    return [[_vec_doc(coeffs), rat_str(bound)] for coeffs, bound in rows]


def measurement_doc(m: Measurement) -> dict:
    return {
        "kind": "measurement",
        "effects": [_vec_doc(e.functional) for e in m.outcomes],
        "labels": list(m.labels),
    }


def channel_doc(t: AffineChannel) -> dict:
    return {"kind": "channel", "matrix": [_vec_doc(row) for row in t.matrix]}


def cover_doc(c: SimplexCover) -> dict:
    return {
        "kind": "simplex_cover",
        "generators": [_vec_doc(g) for g in c.generators.states],
        "effects": [_vec_doc(e.functional) for e in c.measurement.outcomes],
        "labels": list(c.measurement.labels),
        "membership_weights": [_vec_doc(cert.weights) for cert in c.membership],
    }


def witness_doc(witness) -> dict:
    if isinstance(witness, Measurement):
        return measurement_doc(witness)
    if isinstance(witness, AffineChannel):
        return channel_doc(witness)
    if isinstance(witness, SimplexCover):
        return cover_doc(witness)
    raise ReportError(f"no serialization for witness {type(witness).__name__}")


def certificate_doc(cert) -> dict:
    sys = cert.system
    return {
        "ineq_multipliers": _vec_doc(cert.ineq_multipliers),
        "eq_multipliers": _vec_doc(cert.eq_multipliers),
        "system": {
            "n_vars": sys.n_vars,
            "ineqs": _rows_doc(sys.ineqs),
            "eqs": _rows_doc(sys.eqs),
            "nonneg": list(sys.nonneg),
        },
    }


def decision_doc(scenario: Scenario, report: DecisionReport) -> dict:
    doc = {
        "format": REPORT_FORMAT,
        "scenario": scenario.canonical(),
        "task": report.task,
        "verdict": "yes" if report.verdict else "no",
        "cross_checks": [[name, bool(ok)] for name, ok in report.cross_checks],
        "timing": [[name, count] for name, count in report.timing],
    }
    if report.witness is not None:
        doc["witness"] = witness_doc(report.witness)
    if report.certificate is not None:
        doc["certificate"] = certificate_doc(report.certificate)
    return doc


def canonical_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")


def write_report(path: str, doc: dict) -> None:
    with open(path, "wb") as fh:
        fh.write(canonical_bytes(doc))


def load_report(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ReportError(f"cannot read report {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ReportError(
            f"{path} is not valid JSON: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


# -- re-verification -----------------------------------------------------------


def _parse_vec(doc, where):
    return tuple(parse_rational(x, f"{where}[{i}]") for i, x in enumerate(doc))


def _parse_matrix(doc, where):
    return tuple(_parse_vec(row, f"{where}[{r}]") for r, row in enumerate(doc))


def _verify_measurement(doc, scenario, checks):
    effects = _parse_matrix(doc["effects"], "witness.effects")
    m = Measurement(tuple(Effect(f) for f in effects), tuple(doc.get("labels", ())))
    checks.append(("measurement_valid", bool(validate_measurement(scenario.space, m))))
    states = scenario.states
    delta = len(effects) == len(states) and all(
        m.outcomes[j].value(states[i]) == (ONE if i == j else ZERO)
        for i in range(len(states))
        for j in range(len(states))
    )
    checks.append(("delta_conditions", delta))


def _verify_channel(doc, scenario, checks):
    matrix = _parse_matrix(doc["matrix"], "witness.matrix")
    channel = AffineChannel(matrix, scenario.space, scenario.composite)
    checks.append(("channel_valid", bool(validate_channel(channel))))
    comp = scenario.composite
    if scenario.task == "clone":
        checks.append(
            (
                "clones_each_state",
                all(channel(w) == kron_vec(w, w) for w in scenario.states),
            )
        )
    else:
        ka, kb = comp.contraction_matrix_a, comp.contraction_matrix_b
        checks.append(
            (
                "broadcasts_each_state",
                all(
                    mat_vec(ka, channel(w)) == w and mat_vec(kb, channel(w)) == w
                    for w in scenario.states
                ),
            )
        )


def _verify_cover(doc, scenario, checks):
    space = scenario.space
    generators = _parse_matrix(doc["generators"], "witness.generators")
    effects = _parse_matrix(doc["effects"], "witness.effects")
    m = Measurement(tuple(Effect(f) for f in effects), tuple(doc.get("labels", ())))
    gen_set = StateSet(space, generators)
    checks.append(("generators_are_states", len(gen_set.states) == len(generators)))
    checks.append(("measurement_valid", bool(validate_measurement(space, m))))
    delta = all(
        m.outcomes[j].value(g) == (ONE if i == j else ZERO)
        for i, g in enumerate(generators)
        for j in range(len(generators))
    )
    checks.append(("generators_distinguished", delta))
    weights = _parse_matrix(doc["membership_weights"], "witness.membership_weights")
    covered = len(weights) == len(scenario.states)
    for w, lam in zip(scenario.states, weights):
        if len(lam) != len(generators) or any(x < ZERO for x in lam) or sum(lam) != ONE:
            covered = False
            break
        mix = tuple(
            sum((wt * g[c] for wt, g in zip(lam, generators)), ZERO)
            for c in range(space.span_dim)
        )
        if mix != w:
            covered = False
            break
    checks.append(("inputs_covered_by_generators", covered))


def _verify_certificate(doc, checks):
    sys_doc = doc["system"]
    system = LpSystem(
        sys_doc["n_vars"],
        tuple(
            (_parse_vec(coeffs, "certificate"), parse_rational(bound, "certificate"))
            for coeffs, bound in sys_doc["ineqs"]
        ),
        tuple(
            (_parse_vec(coeffs, "certificate"), parse_rational(bound, "certificate"))
            for coeffs, bound in sys_doc["eqs"]
        ),
        tuple(bool(b) for b in sys_doc["nonneg"]),
    )
    cert = Infeasible(
        _parse_vec(doc["ineq_multipliers"], "certificate.ineq_multipliers"),
        _parse_vec(doc["eq_multipliers"], "certificate.eq_multipliers"),
    )
    checks.append(("farkas_certificate", check_farkas(system, cert)))


def verify_report(doc: dict):
    """Re-substitute a report's proofs into their constraints.

    Returns ``(ok, checks)`` where checks is a list of (name, bool).
    Sweep and compression reports are re-run instead (they are
    deterministic), comparing the produced document.
    """
    fmt = doc.get("format")
    if fmt == COMPRESSION_FORMAT:
        from .demos import rerun_compression_report

        return rerun_compression_report(doc)
    if fmt != REPORT_FORMAT:
        raise ReportError(f"unknown report format {fmt!r}")
    scenario = parse_scenario(doc["scenario"])

    if scenario.task == "sweep":
        from .sweeps import sweep_doc

        fresh = sweep_doc(scenario)
        same = canonical_bytes(fresh) == canonical_bytes(doc)
        return same, [("sweep_replay_identical", same)]

    checks: list = []
    verdict = doc.get("verdict")
    if verdict == "yes":
        witness = doc.get("witness")
        if witness is None:
            raise ReportError("yes verdict without a witness")
        kind = witness.get("kind")
        if kind == "measurement":
            _verify_measurement(witness, scenario, checks)
        elif kind == "channel":
            _verify_channel(witness, scenario, checks)
        elif kind == "simplex_cover":
            _verify_cover(witness, scenario, checks)
        else:
            raise ReportError(f"unknown witness kind {kind!r}")
    elif verdict == "no":
        cert = doc.get("certificate")
        if cert is None:
            raise ReportError("no verdict without a certificate")
        _verify_certificate(cert, checks)
    else:
        raise ReportError(f"unknown verdict {verdict!r}")
    return all(ok for _, ok in checks), checks
