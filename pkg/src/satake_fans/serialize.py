"""Lossless JSON encoding: rationals as "p/q" strings, minus infinity as "-inf"."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Sequence

from .cones import RationalCone
from .fans import Fan
from .linalg import NEG_INF, as_fraction
from .seminorms import DiagSeminorm, LogAffineSequence, SeminormClass, SequenceLimitReport, is_neg_inf


def rat(x) -> str:
    if is_neg_inf(x):
        return "-inf"
    return str(as_fraction(x))


def parse_rat(s) -> Fraction | float:
    if isinstance(s, str):
        s = s.strip()
        if s == "-inf":
            return NEG_INF
        return Fraction(s)
    if isinstance(s, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        if s == NEG_INF:
            return NEG_INF
        return Fraction(s)
    raise ValueError(f"cannot read {s!r} as a rational")


def vec(v: Sequence) -> list[str]:
    return [rat(x) for x in v]


def parse_vec(v) -> tuple:
    if not isinstance(v, list):
        raise ValueError(f"expected a list, got {v!r}")
    return tuple(parse_rat(x) for x in v)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# cones and fans

def cone_to_json(c: RationalCone) -> dict:
    return {"ineqs": [vec(a) for a in c.all_inequalities()],
            "gens": [vec(g) for g in c.all_generators()]}


def cone_from_json(d: dict, dim: int | None = None) -> RationalCone:
    ineqs = [parse_vec(a) for a in d.get("ineqs", [])]
    gens = [parse_vec(g) for g in d.get("gens", [])]
    if dim is None:
        rows = ineqs or gens
        if not rows:
            raise ValueError("cannot infer the dimension of an empty cone description")
        dim = len(rows[0])
    c = RationalCone.from_inequalities(dim, ineqs)
    if gens:
        other = RationalCone.from_generators(dim, gens)
        if other != c:
            raise ValueError("H-form and V-form describe different cones")
    return c


def subset_labels(y) -> list[int]:
    """0-based simple-root indices to 1-based node labels."""
    return [i + 1 for i in sorted(y)]


def fan_report(fan: Fan, axioms: dict | None = None) -> dict:
    ids = {c.key: i for i, c in enumerate(fan.cones)}
    cones = []
    for i, c in enumerate(fan.cones):
        entry = {"id": i, "dim": c.dim, **cone_to_json(c)}
        q = fan.relevancy_index.get(c.key)
        if q is not None:
            entry["relevant_parabolic"] = {"type": subset_labels(q.y),
                                           "weyl_word": [j + 1 for j in q.w.word]}
        cones.append(entry)
    index = []
    for key, q in fan.relevancy_index.items():
        if key in ids:
            index.append({"cone": ids[key], "type": subset_labels(q.y),
                          "weyl_word": [j + 1 for j in q.w.word]})
    index.sort(key=lambda e: e["cone"])
    out = {
        "root_system": fan.label,
        "type": subset_labels(fan.type_nodes),
        "degenerate": fan.ambient_dim < fan.full_dim,
        "ambient_dim": fan.ambient_dim,
        "quotient_basis": subset_labels(fan.quotient_basis),
        "num_cones": len(fan.cones),
        "num_maximal": len(fan.maximal_cones()),
        "cones_by_dim": {str(k): v for k, v in fan.cones_by_dim().items()},
        "cones": cones,
        "relevancy_index": index,
    }
    if axioms is not None:
        out["axioms"] = axioms
    return out


# seminorms and sequences

def seminorm_to_json(x: DiagSeminorm | SeminormClass, q=None) -> dict:
    out: dict = {"exps": vec(x.exps)}
    if q is not None:
        out["q"] = q
    return out


def seminorm_from_json(d: dict) -> DiagSeminorm:
    if "exps" not in d:
        raise ValueError("seminorm JSON needs an 'exps' list")
    return DiagSeminorm(parse_vec(d["exps"]))


def sequence_to_json(s: LogAffineSequence) -> dict:
    return {"a": vec(s.a), "b": vec(s.b)}


def sequence_from_json(d: dict) -> LogAffineSequence:
    if not isinstance(d, dict) or "a" not in d or "b" not in d:
        raise ValueError("sequence JSON needs 'a' and 'b'")
    a, b = parse_vec(d["a"]), parse_vec(d["b"])
    if any(is_neg_inf(x) for x in a + b):
        raise ValueError("sequence data must be finite")
    return LogAffineSequence(a, b)


def limit_report_to_json(r: SequenceLimitReport) -> dict:
    return {"permutation": list(r.permutation),
            "index_set_I": list(r.index_set_I),
            "limit": vec(r.limit.exps),
            "distinguished": r.distinguished}


def limit_report_from_json(d: dict) -> SequenceLimitReport:
    return SequenceLimitReport(tuple(d["permutation"]), tuple(d["index_set_I"]),
                               SeminormClass(parse_vec(d["limit"])), bool(d["distinguished"]))
