"""Serialization: seed/word/triangulation documents and report rendering.

Exact rationals always serialize as "p/q" strings; floats appear only in
orbit tables and are printed with 17 significant digits, so structured
output is bit-stable.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .classify import NTReport
from .errors import InvalidStep, ParseError, ValidationError
from .seeds import MappingClassWord, Perm, Seed, validate
from .surfaces import Triangulation


def _rat(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError("bad rational %r: %s" % (text, exc)) from None


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


def float_str(x: float) -> str:
    return "%.17g" % float(x)


def num_str(x) -> str:
    return rat_str(x) if isinstance(x, (Fraction, int)) else float_str(x)


# -- seeds ---------------------------------------------------------------------


def parse_seed(doc, check: bool = True) -> Seed:
    """Parse a seed document (dict or JSON text); the result must validate
    unless `check` is off (the validate command reports violations as data)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    if not isinstance(doc, dict):
        raise ParseError("seed document must be an object")
    try:
        vertices = list(doc["vertices"])
        epsilon = [[_rat(x) for x in row] for row in doc["epsilon"]]
        frozen = list(doc.get("frozen", []))
        d = [int(x) for x in doc.get("d", [1] * len(vertices))]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed seed document: %s" % exc) from None
    try:
        seed = Seed.make(vertices, epsilon, frozen, d)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if check:
        report = validate(seed)
        if not report.ok:
            raise ValidationError("; ".join(report.violations))
    return seed


def emit_seed(seed: Seed) -> dict:
    return {
        "vertices": list(seed.vertices),
        "frozen": sorted(seed.frozen, key=str),
        "epsilon": [[rat_str(x) for x in row] for row in seed.epsilon],
        "d": list(seed.d),
    }


# -- words ----------------------------------------------------------------------

_STEP = re.compile(r"^\s*(mu\s+(?P<mu>\S+)|perm\s*(?P<perm>(\(\s*[^()]+?\s*\))+))\s*$")
_CYCLE = re.compile(r"\(([^()]*)\)")


def _resolve_label(token: str, seed: Seed):
    for v in seed.vertices:
        if str(v) == token:
            return v
    raise InvalidStep("unknown vertex %r" % token)


def parse_word(text: str, seed: Seed) -> MappingClassWord:
    """Parse the word grammar and fold all permutations to a trailing one.

    word := step (';' step)*      step := 'mu' LABEL | 'perm' ('(' LABEL+ ')')+
    """
    mutations = []
    pi = Perm()
    for raw in filter(None, (s.strip() for s in text.split(";"))):
        m = _STEP.match(raw)
        if not m:
            raise ParseError("bad word step %r" % raw)
        if m.group("mu") is not None:
            v = _resolve_label(m.group("mu"), seed)
            # interleaved permutations relabel later mutation indices
            mutations.append(pi.inverse()(v))
        else:
            cycles = []
            for body in _CYCLE.findall(m.group("perm")):
                labels = [_resolve_label(tok, seed) for tok in body.split()]
                if len(labels) < 2:
                    raise ParseError("cycle needs at least two labels in %r" % raw)
                cycles.append(labels)
            try:
                sigma = Perm.from_cycles(cycles)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
            if any(sigma(v) != v for v in seed.frozen):
                raise InvalidStep("permutation moves a frozen vertex in %r" % raw)
            pi = sigma.after(pi)
    word = MappingClassWord(tuple(mutations), pi)
    for step, k in enumerate(word.mutations):
        if k in seed.frozen:
            raise InvalidStep("step %d mutates frozen vertex %r" % (step, k), step=step)
    return word


def emit_word(word: MappingClassWord) -> str:
    parts = ["mu %s" % (m,) for m in word.mutations]
    if not word.sigma.is_identity():
        parts.append("perm %s" % "".join("(%s)" % " ".join(map(str, c)) for c in word.sigma.cycles()))
    return "; ".join(parts)


# -- triangulations ---------------------------------------------------------------


def parse_triangulation(doc) -> Triangulation:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    try:
        tri = Triangulation.make(doc["arcs"], doc.get("boundary", []), [t["sides"] for t in doc["triangles"]])
    except (KeyError, TypeError) as exc:
        raise ParseError("malformed triangulation document: %s" % exc) from None
    except Exception as exc:
        raise ValidationError(str(exc)) from None
    for given, built in zip(doc["triangles"], tri.triangles):
        if "self_folded" in given and bool(given["self_folded"]) != built.self_folded:
            raise ValidationError("self_folded marker disagrees with triangle %r" % (given,))
    return tri


def emit_triangulation(t: Triangulation) -> dict:
    return {
        "arcs": list(t.arcs),
        "boundary": list(t.boundary),
        "triangles": [{"sides": list(tri.sides), "self_folded": tri.self_folded} for tri in t.triangles],
    }


# -- reports ----------------------------------------------------------------------


def report_doc(report: NTReport) -> dict:
    doc = {
        "verdict": report.verdict,
        "order": report.order,
        "proper": report.proper,
        "note": report.note,
        "budgets": {
            "max_order": report.budgets.max_order,
            "max_power": report.budgets.max_power,
            "tropical_iters": report.budgets.tropical_iters,
        },
        "invariant_sets": [
            {"power": e.power, "vertices": sorted(e.vertices, key=str), "pointwise": e.pointwise}
            for e in report.invariant_sets
        ],
        "fixed_points": {
            flavor: (None if pt is None else [num_str(c) for c in pt])
            for flavor, pt in report.fixed_points.items()
        },
        "tropical_rays": {
            key: (None if ray is None else [num_str(c) for c in ray])
            for key, ray in report.tropical_rays.items()
        },
        "divergence": None
        if report.divergence is None
        else {
            "step": report.divergence.step,
            "max_log": float_str(report.divergence.max_log),
            "threshold": float_str(report.divergence.threshold),
            "window": list(report.divergence.window),
        },
    }
    return doc


def report_text(report: NTReport) -> str:
    if report.verdict == "periodic":
        return "Periodic, order %d" % report.order
    if report.verdict == "cluster-reducible":
        sets = "; ".join(
            "%s{%s} at power %d"
            % ("pointwise " if e.pointwise else "setwise ", ", ".join(map(str, sorted(e.vertices, key=str))), e.power)
            for e in report.invariant_sets
        )
        return "ClusterReducible%s: %s" % (" (proper)" if report.proper else "", sets)
    if report.verdict == "cluster-pa":
        rays = ", ".join(
            "%s ray (%s)" % (k, ", ".join(num_str(c) for c in v))
            for k, v in sorted(report.tropical_rays.items())
            if v is not None
        )
        extra = "; divergence at step %d" % report.divergence.step if report.divergence else ""
        return "cluster-pA (evidence at budget order<=%d, power<=%d): %s%s" % (
            report.budgets.max_order,
            report.budgets.max_power,
            rays,
            extra,
        )
    return "Inconclusive at budgets (order<=%d, power<=%d)" % (
        report.budgets.max_order,
        report.budgets.max_power,
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)
