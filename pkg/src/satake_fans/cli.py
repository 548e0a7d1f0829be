"""Command-line front end. Every subcommand prints JSON (or a table with --table).

Exit codes: 0 success, 1 a verification failed, 2 bad flags or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import serialize as ser
from .fans import (
    FanError,
    build_fan_Ft,
    is_degenerate,
    is_t_relevant,
    smallest_t_relevant,
)
from .linalg import fmt_vec
from .rootsys import ConfigurationError, all_subsets, build_root_datum, parabolics_of_type, validate_subset
from .satake import embed_class, pullback_fan_compare, weight_list_from_rep
from .seminorms import (
    DiagSeminorm,
    SeminormError,
    canonical_representative,
    classify_sequence,
    exterior_invariant,
    kernel_and_stratum,
    stabilizer_description,
)
from .verify import CHECKS, SweepConfig, run_checks
from .weights import (
    HighestWeight,
    WeightError,
    cone_CY,
    is_admissible_graph,
    is_admissible_support,
    is_faithful_shadow,
    reflection_witness,
    rep_types,
    weight_system,
    weights_in_fundamental,
    y_star,
    z_set,
)

SUBCOMMANDS = ("fan", "relevant", "admissible", "weights", "embed", "classify-seq", "seminorm", "verify")


class UsageError(Exception):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    root_system: str | None = None
    type_nodes: frozenset[int] | None = None
    highest_weight: tuple[int, ...] | None = None
    input_path: str | None = None
    output_path: str | None = None
    table: bool = False
    seed: int = 0
    extra: dict = field(default_factory=dict)


# flag parsing

def parse_nodes(text: str) -> frozenset[int]:
    """'' -> {}, '2' -> {1}, '1,3' or '1 3' -> {0, 2}; labels are 1-based."""
    tokens = text.replace(",", " ").split()
    try:
        nodes = [int(tok) for tok in tokens]
    except ValueError:
        raise UsageError(f"node list {text!r} must be 1-based integers") from None
    if any(n < 1 for n in nodes):
        raise UsageError(f"node labels start at 1: {text!r}")
    return frozenset(n - 1 for n in nodes)


def parse_ints(text: str) -> tuple[int, ...]:
    tokens = text.replace(",", " ").split()
    try:
        return tuple(int(tok) for tok in tokens)
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def parse_json_text(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON: {exc}") from None


def read_input(cfg: CommandConfig, inline: str | None):
    if inline is not None and cfg.input_path:
        raise UsageError("give either an inline value or --input, not both")
    if inline is not None:
        return parse_json_text(inline)
    if cfg.input_path:
        try:
            with open(cfg.input_path) as fh:
                return parse_json_text(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.input_path}: {exc}") from None
    raise UsageError("missing input")


def _root(cfg: CommandConfig):
    if not cfg.root_system:
        raise UsageError("--root-system is required")
    rd = build_root_datum(cfg.root_system)
    if cfg.type_nodes is not None:
        validate_subset(rd, cfg.type_nodes)
    return rd


def _weights(cfg: CommandConfig, rd):
    if cfg.highest_weight is None:
        raise UsageError("--highest-weight is required")
    hw = HighestWeight.from_fundamental(rd, cfg.highest_weight)
    return weight_system(rd, hw)


# commands

def cmd_fan(cfg: CommandConfig) -> tuple[dict, int]:
    rd = _root(cfg)
    t = cfg.type_nodes or frozenset()
    if is_degenerate(rd, t):
        print(f"warning: type {ser.subset_labels(t)} contains a whole Dynkin component; "
              "the fan lives on a quotient of the apartment", file=sys.stderr)
    fan = build_fan_Ft(rd, t)
    points = cfg.extra.get("coverage_points", 1000)
    axioms = {
        "pairwise_faces": not fan.pairwise_face_violations(limit=1),
        "closed_under_faces": fan.closed_under_faces(),
        "complete": fan.is_complete_exact(),
        "coverage_points": points,
        "coverage": not fan.coverage_violations(points, seed=cfg.seed),
    }
    ok = all(v for k, v in axioms.items() if k != "coverage_points")
    return ser.fan_report(fan, axioms), 0 if ok else 1


def cmd_relevant(cfg: CommandConfig) -> tuple[dict, int]:
    rd = _root(cfg)
    t = cfg.type_nodes or frozenset()
    rows = []
    for y in all_subsets(rd.rank):
        rows.append({"Y": ser.subset_labels(y),
                     "relevant": is_t_relevant(rd, t, y),
                     "smallest_relevant": ser.subset_labels(smallest_t_relevant(rd, t, y).y),
                     "parabolics": len(parabolics_of_type(rd, y))})
    rel = [r for r in rows if r["relevant"]]
    return {"root_system": rd.label, "type": ser.subset_labels(t), "subsets": rows,
            "relevant_standard": len(rel),
            "relevant_parabolics": sum(r["parabolics"] for r in rel)}, 0


def cmd_weights(cfg: CommandConfig) -> tuple[dict, int]:
    rd = _root(cfg)
    ws = _weights(cfg, rd)
    types = rep_types(rd, ws)
    return {"root_system": rd.label,
            "highest_weight": list(cfg.highest_weight),
            "weights": [list(w) for w in weights_in_fundamental(rd, ws)],
            "count": len(ws.weights),
            "Z": ser.subset_labels(z_set(rd, ws)),
            "tau": ser.subset_labels(types.tau.y),
            "t_rho_check": ser.subset_labels(types.t_rho_check.y),
            "faithful": is_faithful_shadow(rd, ws)}, 0


def admissibility_report(rd, ws, y) -> dict:
    ok = is_admissible_graph(rd, ws, y)
    entry = {"Y": ser.subset_labels(y), "admissible": ok, "witness": None,
             "Y_star": None, "cone": None}
    if ok:
        wit = reflection_witness(rd, ws, y)
        _, mu = is_admissible_support(rd, ws, y)
        entry["witness"] = {"sequence": [i + 1 for i in wit.sequence],
                            "weight": ser.vec(wit.weight),
                            "support_weight": ser.vec(mu)}
        entry["Y_star"] = ser.subset_labels(y_star(rd, ws, y))
        entry["cone"] = ser.cone_to_json(cone_CY(rd, ws, y))
    return entry


def cmd_admissible(cfg: CommandConfig) -> tuple[dict, int]:
    rd = _root(cfg)
    ws = _weights(cfg, rd)
    subsets = [cfg.type_nodes] if cfg.type_nodes is not None else all_subsets(rd.rank)
    return {"root_system": rd.label, "highest_weight": list(cfg.highest_weight),
            "reports": [admissibility_report(rd, ws, y) for y in subsets]}, 0


def cmd_embed(cfg: CommandConfig) -> tuple[dict, int]:
    rd = _root(cfg)
    ws = _weights(cfg, rd)
    wl = weight_list_from_rep(rd, ws)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = pullback_fan_compare(rd, ws, wl)
    out = {"root_system": rd.label, "highest_weight": list(cfg.highest_weight),
           "weights": [ser.vec(lam) for lam in wl.lambdas],
           "matrix": [ser.vec(lam) for lam in wl.lambdas],
           "tau": ser.subset_labels(rep.tau),
           "maximal_match": rep.maximal_match,
           "fan_match": rep.fan_match,
           "counterexamples": [ser.cone_to_json(c) for c in rep.counterexamples]}
    point = cfg.extra.get("point")
    if point is not None:
        if len(point) != rd.rank:
            raise UsageError(f"--point needs {rd.rank} coordinates")
        out["point"] = ser.vec(point)
        out["image"] = ser.vec(embed_class(point, wl).exps)
    return out, 0 if rep.verdict else 1


def cmd_classify_seq(cfg: CommandConfig) -> tuple[dict, int]:
    data = read_input(cfg, cfg.extra.get("sequence"))
    try:
        seq = ser.sequence_from_json(data)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad sequence: {exc}") from None
    rep = classify_sequence(seq)
    return {"sequence": ser.sequence_to_json(seq), **ser.limit_report_to_json(rep)}, 0


def cmd_seminorm(cfg: CommandConfig) -> tuple[dict, int]:
    data = read_input(cfg, cfg.extra.get("exps"))
    if isinstance(data, list):
        data = {"exps": data}
    try:
        x = ser.seminorm_from_json(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"bad seminorm: {exc}") from None
    cf = canonical_representative(x)
    ker, stratum = kernel_and_stratum(x)
    stab = stabilizer_description(x)
    ms = [cfg.extra["m"]] if cfg.extra.get("m") is not None else list(range(1, x.dim + 1))
    out = {"seminorm": ser.seminorm_to_json(x),
           "class": ser.vec(x.normalized().exps),
           "canonical": {"exps": ser.vec(cf.seminorm.exps),
                         "permutation": list(cf.permutation), "shift": cf.shift},
           "kernel": sorted(ker), "stratum": stratum,
           "exterior": {str(m): ser.rat(exterior_invariant(x, m)) for m in ms},
           "stabilizer": {"kernel": sorted(stab.kernel_indices),
                          "quotient_rank": stab.quotient_rank,
                          "vertex": stab.is_vertex, "blocks": stab.block_shape}}
    return out, 0


def cmd_verify(cfg: CommandConfig) -> tuple[dict, int]:
    only = cfg.extra.get("only") or None
    fault = cfg.extra.get("inject_fault")
    for name in (only or []) + ([fault] if fault else []):
        if name not in CHECKS:
            raise UsageError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    sweep = SweepConfig(seed=cfg.seed, threads=cfg.extra.get("threads"))
    results = run_checks(sweep, only=only, fault=fault)
    timings = bool(cfg.extra.get("timings"))
    passed = all(r.passed for r in results)
    report = {"passed": passed, "seed": cfg.seed, "injected_fault": fault,
              "checks": [r.to_json(timings) for r in results]}
    return report, 0 if passed else 1


COMMANDS = {
    "fan": cmd_fan,
    "relevant": cmd_relevant,
    "admissible": cmd_admissible,
    "weights": cmd_weights,
    "embed": cmd_embed,
    "classify-seq": cmd_classify_seq,
    "seminorm": cmd_seminorm,
    "verify": cmd_verify,
}


# tables

def _table(report: dict, sub: str) -> str:
    lines = []
    if sub == "fan":
        lines.append(f"{report['root_system']} t={report['type']}: {report['num_cones']} cones, "
                     f"{report['num_maximal']} maximal")
        for c in report["cones"]:
            rp = c.get("relevant_parabolic", {})
            lines.append(f"  #{c['id']:<3} dim {c['dim']}  Y={rp.get('type')} w={rp.get('weyl_word')}  "
                         f"rays {[fmt_vec(map(Fraction, g)) for g in c['gens']]}")
        lines.append(f"  axioms: {report.get('axioms')}")
    elif sub == "verify":
        for c in report["checks"]:
            secs = f"  {c['seconds']}s" if "seconds" in c else ""
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']:<18} {c['stats']}{secs}")
            lines += [f"      {s}" for s in c["counterexamples"][:3]]
    elif sub == "relevant":
        for r in report["subsets"]:
            lines.append(f"Y={r['Y']!s:<14} relevant={r['relevant']!s:<6} "
                         f"hull={r['smallest_relevant']}")
    elif sub == "admissible":
        for r in report["reports"]:
            lines.append(f"Y={r['Y']!s:<14} admissible={r['admissible']!s:<6} Y*={r['Y_star']}")
    else:
        for key in sorted(report):
            lines.append(f"{key}: {report[key]}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="satake-fans", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--table", action="store_true", help="human-readable table")
    common.add_argument("--seed", type=int, default=0)
    rs = argparse.ArgumentParser(add_help=False)
    rs.add_argument("--root-system", required=True, help="A1..A4, B2, B3, C3, D4, G2 or products like A1xA1")
    hw = argparse.ArgumentParser(add_help=False)
    hw.add_argument("--highest-weight", required=True,
                    help="fundamental-weight coefficients, e.g. '1,0'")
    sub = p.add_subparsers(dest="subcommand", required=True)

    f = sub.add_parser("fan", parents=[common, rs], help="fan F_t with relevancy index")
    f.add_argument("--type", default="", help="1-based nodes of the type, e.g. '2' or '1,3'")
    f.add_argument("--coverage-points", type=int, default=1000)
    r = sub.add_parser("relevant", parents=[common, rs], help="t-relevant standard subsets")
    r.add_argument("--type", default="")
    a = sub.add_parser("admissible", parents=[common, rs, hw], help="admissibility reports")
    a.add_argument("--type", default=None, help="single subset Y to report (default: all)")
    sub.add_parser("weights", parents=[common, rs, hw], help="weight system and types")
    e = sub.add_parser("embed", parents=[common, rs, hw], help="weight embedding and fan pullback")
    e.add_argument("--point", default=None, help="apartment point in coweight coordinates")
    c = sub.add_parser("classify-seq", parents=[common], help="limit of a log-affine sequence")
    c.add_argument("--sequence", default=None, help='JSON {"a": [...], "b": [...]}')
    c.add_argument("--input", help="read the sequence JSON from a file")
    s = sub.add_parser("seminorm", parents=[common], help="invariants of a diagonal seminorm")
    s.add_argument("--exps", default=None, help='JSON list of exponents, "-inf" for the kernel')
    s.add_argument("--m", type=int, default=None, help="exterior power to evaluate")
    s.add_argument("--input", help="read the seminorm JSON from a file")
    v = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    v.add_argument("--only", action="append", default=[], help=f"one of: {', '.join(CHECKS)}")
    v.add_argument("--inject-fault", default=None, metavar="CHECK",
                   help="perturb one check so that it must fail")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds")
    v.add_argument("--threads", type=int, default=None)
    return p


def config_from_args(ns: argparse.Namespace) -> CommandConfig:
    cfg = CommandConfig(ns.subcommand, output_path=ns.output, table=ns.table, seed=ns.seed,
                        input_path=getattr(ns, "input", None),
                        root_system=getattr(ns, "root_system", None))
    t = getattr(ns, "type", None)
    if t is not None:
        cfg.type_nodes = parse_nodes(t)
    if getattr(ns, "highest_weight", None) is not None:
        cfg.highest_weight = parse_ints(ns.highest_weight)
    if ns.subcommand == "fan":
        cfg.extra["coverage_points"] = ns.coverage_points
    elif ns.subcommand == "embed" and ns.point is not None:
        cfg.extra["point"] = tuple(Fraction(x) for x in ns.point.replace(",", " ").split())
    elif ns.subcommand == "classify-seq":
        cfg.extra["sequence"] = ns.sequence
    elif ns.subcommand == "seminorm":
        cfg.extra.update(exps=ns.exps, m=ns.m)
    elif ns.subcommand == "verify":
        cfg.extra.update(only=ns.only, inject_fault=ns.inject_fault, timings=ns.timings,
                         threads=ns.threads)
    return cfg


def run(cfg: CommandConfig) -> tuple[dict, int]:
    return COMMANDS[cfg.subcommand](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        report, code = run(cfg)
    except (UsageError, ConfigurationError, WeightError, SeminormError, FanError, ValueError) as exc:
        print(f"{parser.prog} {ns.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    text = _table(report, cfg.subcommand) if cfg.table else ser.dumps(report) + "\n"
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
