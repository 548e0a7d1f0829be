"""The acceptance matrix: ten exact (or tolerance-tagged) sweeps.

Each check returns a `CheckResult`. Passing ``fault=True`` perturbs the check
on purpose so that it must fail; this is the negative control used by
``verify --inject-fault``.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .fans import (
    Fan,
    build_fan_Ft,
    check_cone_chain,
    cone_Ct_of_Q,
    is_t_relevant,
    literal_cone_chain,
    relevant_standard_subsets,
    smallest_t_relevant,
)
from .linalg import NEG_INF, fmt_vec
from .rootsys import ParabolicSubset, all_parabolics, all_subsets, build_root_datum, parabolics_of_type
from .satake import injectivity_probe, pullback_fan_compare, weight_list_from_rep
from .seminorms import (
    DiagSeminorm,
    LogAffineSequence,
    MonomialElement,
    canonical_representative,
    class_profile,
    classify_sequence,
    domination_check,
    domination_failures,
    monomial_samples,
    exterior_invariant,
    in_window,
    is_neg_inf,
    isclose_profiles,
    monomial_action,
    numeric_profile,
    sheared_monomial,
    SeminormClass,
)
from .weights import (
    HighestWeight,
    compare_CY_fan_with_Ft,
    fundamental_and_rho,
    is_admissible_graph,
    is_admissible_support,
    lowest_support_singletons,
    reflection_witness,
    weight_system,
)

THREADS_ENV = "SATAKE_FANS_THREADS"


@dataclass(frozen=True)
class SweepConfig:
    root_systems: tuple[str, ...] = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
    coverage_points: int = 1000
    sequences: int = 100
    sequence_n: int = 10**6
    sequence_q: float = 2.0
    sequence_tol: float = 1e-6
    window_cases: int = 1000
    monomial_elements: int = 200
    domination_cases: int = 100
    interior_samples: int = 50
    directions_per_stratum: int = 3
    pullback_cases: tuple[tuple[str, tuple[int, ...]], ...] = (
        ("A1", (1,)), ("A2", (1, 0)), ("A2", (1, 1)), ("B2", (1, 0)), ("B2", (0, 1)))
    injectivity_cases: tuple[tuple[str, tuple[int, ...]], ...] = (
        ("A2", (1, 0)), ("B2", (1, 0)))
    seed: int = 0
    threads: int | None = None

    def worker_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        try:
            return max(1, int(os.environ.get(THREADS_ENV, "1")))
        except ValueError:
            return 1


@dataclass
class CheckResult:
    name: str
    description: str
    passed: bool
    stats: dict = field(default_factory=dict)
    counterexamples: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "description": self.description, "passed": self.passed,
               "stats": self.stats, "counterexamples": self.counterexamples[:20]}
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _pmap(cfg: SweepConfig, fn: Callable, items: list) -> list:
    """Ordered map, threaded when configured; result order never depends on scheduling."""
    n = cfg.worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


@lru_cache(maxsize=None)
def _root(label: str):
    return build_root_datum(label)


@lru_cache(maxsize=None)
def _fan(label: str, t: frozenset) -> Fan:
    return build_fan_Ft(_root(label), t)


def _types(label: str) -> list[frozenset]:
    return all_subsets(_root(label).rank)


def _fmt_set(y) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(y)) + "}"


# 1

def check_fan_axioms(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(label):
        out = []
        count = 0
        for t in _types(label):
            fan = _fan(label, t)
            if fault and label == cfg.root_systems[0] and not t:
                biggest = fan.maximal_cones()[0]
                fan = Fan(fan.ambient_dim, fan.quotient_basis,
                          tuple(c for c in fan.cones if c != biggest), {}, fan.label,
                          fan.type_nodes, fan.full_dim)
            count += 1
            tag = f"{label} t={_fmt_set(t)}"
            for a, b in fan.pairwise_face_violations(limit=3):
                out.append(f"{tag}: intersection of {a} and {b} is not a common face")
            for x in fan.coverage_violations(cfg.coverage_points, seed=cfg.seed)[:3]:
                out.append(f"{tag}: point {fmt_vec(x)} is in no maximal cone")
            if not fan.closed_under_faces():
                out.append(f"{tag}: not closed under faces")
            if not fan.is_complete_exact():
                out.append(f"{tag}: codimension-one faces not shared by exactly two maximal cones")
        return count, out

    res = _pmap(cfg, one, list(cfg.root_systems))
    bad = [s for _, ss in res for s in ss]
    return CheckResult("fan-axioms", "pairwise common faces, completeness and 1000-point coverage",
                       not bad, {"fans": sum(c for c, _ in res)}, bad)


# 2

def check_relevance_count(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(label):
        rd = _root(label)
        out = []
        for t in _types(label):
            fan = _fan(label, t)
            tag = f"{label} t={_fmt_set(t)}"
            rel_t = frozenset() if fault else t
            relevant = [y for y in all_subsets(rd.rank) if is_t_relevant(rd, rel_t, y)]
            total = sum(len(parabolics_of_type(rd, y)) for y in relevant)
            if total != len(fan.cones):
                out.append(f"{tag}: {len(fan.cones)} cones but {total} relevant parabolics")
            if len(fan.relevancy_index) != len(fan.cones):
                out.append(f"{tag}: relevancy index covers {len(fan.relevancy_index)} cones")
            if any(not is_t_relevant(rd, t, q.y) for q in fan.relevancy_index.values()):
                out.append(f"{tag}: a largest defining parabolic is not relevant")
            std = {}
            for y in all_subsets(rd.rank):
                c = fan.project_cone(cone_Ct_of_Q(rd, t, ParabolicSubset(y)))
                std.setdefault(c.key, []).append(y)
            if len(std) != len(relevant):
                out.append(f"{tag}: {len(std)} standard cones vs {len(relevant)} relevant sets")
            for ys in std.values():
                big = max(ys, key=len)
                if any(not y <= big for y in ys) or not is_t_relevant(rd, t, big):
                    out.append(f"{tag}: cone class {[_fmt_set(y) for y in ys]} has no relevant maximum")
            for y in all_subsets(rd.rank):
                s = smallest_t_relevant(rd, t, y).y
                if not is_t_relevant(rd, t, s) or (
                        cone_Ct_of_Q(rd, t, ParabolicSubset(y)) != cone_Ct_of_Q(rd, t, ParabolicSubset(s))):
                    out.append(f"{tag}: smallest relevant set {_fmt_set(s)} of {_fmt_set(y)} is wrong")
        return out

    bad = [s for ss in _pmap(cfg, one, list(cfg.root_systems)) for s in ss]
    stats = {}
    if "A2" in cfg.root_systems:
        fan = _fan("A2", frozenset({1}))
        stats = {"A2_t2_cones": len(fan.cones), "A2_t2_maximal": len(fan.maximal_cones())}
        if (len(fan.cones), len(fan.maximal_cones())) != (7, 3):
            bad.append(f"A2 t={{2}}: {len(fan.cones)} cones, {len(fan.maximal_cones())} maximal")
    return CheckResult("relevance-count", "cones of F_t correspond to relevant parabolics",
                       not bad, stats, bad)


# 3

def _weight_cases(cfg: SweepConfig) -> list[tuple[str, str, HighestWeight]]:
    out = []
    for label in cfg.root_systems:
        for name, hw in fundamental_and_rho(_root(label)):
            out.append((label, name, hw))
    return out


@lru_cache(maxsize=None)
def _ws(label: str, hw: HighestWeight):
    return weight_system(_root(label), hw)


def check_admissibility(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(case):
        label, name, hw = case
        rd = _root(label)
        ws = _ws(label, hw)
        out = []
        n = 0
        for y in all_subsets(rd.rank):
            n += 1
            g = is_admissible_graph(rd, ws, y)
            if fault and y == frozenset(range(rd.rank)):
                g = not g
            s, mu = is_admissible_support(rd, ws, y)
            if g != s:
                out.append(f"{label} {name} Y={_fmt_set(y)}: graph={g} support={s}")
                continue
            if g:
                try:
                    wit = reflection_witness(rd, ws, y)
                except RuntimeError as exc:
                    out.append(f"{label} {name} Y={_fmt_set(y)}: witness failed ({exc})")
                    continue
                if frozenset(wit.sequence) != y:
                    out.append(f"{label} {name} Y={_fmt_set(y)}: witness order {wit.sequence}")
        return n, out

    res = _pmap(cfg, one, _weight_cases(cfg))
    bad = [s for _, ss in res for s in ss]
    return CheckResult("admissibility", "graph criterion equals support criterion, witnesses verified",
                       not bad, {"cases": sum(n for n, _ in res)}, bad)


# 4

def check_cone_equality(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(case):
        label, name, hw = case
        rd = _root(label)
        ws = _ws(label, hw)
        out = []
        rep = compare_CY_fan_with_Ft(rd, ws)
        if fault:
            from .weights import cone_CY, admissible_sets
            wrong = frozenset() if rep.tau else frozenset(range(rd.rank))
            for a in admissible_sets(rd, ws):
                if cone_CY(rd, ws, a.y) != cone_Ct_of_Q(rd, wrong, ParabolicSubset(a.y)):
                    out.append(f"{label} {name}: injected type mismatch at Y={_fmt_set(a.y)}")
        for y, lhs, rhs in rep.cone_mismatches:
            out.append(f"{label} {name} Y={_fmt_set(y)}: {lhs} != {rhs}")
        if not rep.bijection_ok:
            out.append(f"{label} {name}: Y -> Y u Y* is not a bijection onto relevant sets")
        if not rep.smallest_relevant_ok:
            out.append(f"{label} {name}: Y u Y* differs from the smallest relevant set")
        if not lowest_support_singletons(rd, ws):
            out.append(f"{label} {name}: some simple root outside Z has no singleton support")
        return len(rep.admissible), out

    res = _pmap(cfg, one, _weight_cases(cfg))
    bad = [s for _, ss in res for s in ss]
    return CheckResult("cone-equality", "C_Y equals C_tau(P_Y) and Y -> Y u Y* is a bijection",
                       not bad, {"admissible_sets": sum(n for n, _ in res)}, bad)


# 5

def check_pullback_fan(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(case):
        label, coeffs = case
        rd = _root(label)
        ws = _ws(label, HighestWeight.from_fundamental(rd, coeffs))
        wl = weight_list_from_rep(rd, ws)
        if fault:
            wl = type(wl)(wl.lambdas[1:])
        rep = pullback_fan_compare(rd, ws, wl)
        tag = f"{label} {list(coeffs)}"
        if rep.verdict:
            return []
        return [f"{tag}: maximal_match={rep.maximal_match} fan_match={rep.fan_match}; "
                f"first differing cone {rep.counterexamples[0] if rep.counterexamples else None}"]

    bad = [s for ss in _pmap(cfg, one, list(cfg.pullback_cases)) for s in ss]
    return CheckResult("pullback-fan", "preimage of the target fan equals F_tau",
                       not bad, {"cases": len(cfg.pullback_cases)}, bad)


# 6

def random_sequence(rng: random.Random) -> LogAffineSequence:
    dim = rng.randint(2, 5)
    slopes = [Fraction(rng.randint(-2, 2)) for _ in range(dim)]
    if rng.random() < 0.5:
        slopes = [Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3])) for _ in range(dim)]
    offsets = [Fraction(rng.randint(-12, 12), rng.choice([1, 2, 4])) for _ in range(dim)]
    return LogAffineSequence(tuple(offsets), tuple(slopes))


def check_sequence_limits(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    rng = random.Random(cfg.seed + 6)
    bad = []
    sizes = {}
    for k in range(cfg.sequences):
        s = random_sequence(rng)
        sizes[len(s.a)] = sizes.get(len(s.a), 0) + 1
        rep = classify_sequence(s)
        lim = rep.limit
        if fault and k == 0:
            exps = list(lim.exps)
            if len(rep.index_set_I) > 1:
                exps[rep.index_set_I[0]] = NEG_INF
            else:
                exps = [Fraction(0)] * len(exps)
            lim = SeminormClass.of(exps)
        got = numeric_profile(s, cfg.sequence_n, cfg.sequence_q)
        want = class_profile(lim, cfg.sequence_q)
        if not isclose_profiles(got, want, cfg.sequence_tol):
            bad.append(f"a={fmt_vec(s.a)} b={fmt_vec(s.b)}: numeric {got} vs limit {want}")
        ordered = [(s.b[i], s.a[i]) for i in rep.permutation]
        if ordered != sorted(ordered, reverse=True):
            bad.append(f"a={fmt_vec(s.a)} b={fmt_vec(s.b)}: permutation {rep.permutation} does not sort the tail")
    return CheckResult("sequence-limits", "limits of log-affine sequences match numerics at n=10^6",
                       not bad, {"sequences": cfg.sequences, "by_dim": dict(sorted(sizes.items()))},
                       bad)


# 7

def random_exps(rng: random.Random, dim: int, allow_kernel: bool = True) -> tuple:
    out = []
    for _ in range(dim):
        if allow_kernel and rng.random() < 0.2:
            out.append(NEG_INF)
        else:
            out.append(Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3, 5, 7])))
    if all(is_neg_inf(x) for x in out):
        out[rng.randrange(dim)] = Fraction(rng.randint(-5, 5))
    return tuple(out)


def check_canonical_window(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    rng = random.Random(cfg.seed + 7)
    bad = []
    for _ in range(cfg.window_cases):
        x = DiagSeminorm(random_exps(rng, rng.randint(1, 5)))
        cf = canonical_representative(x)
        y = cf.seminorm
        if not in_window(y):
            bad.append(f"{fmt_vec(x.exps)}: {fmt_vec(y.exps)} is outside the window")
        again = canonical_representative(y)
        if again.seminorm != y or again.shift != 0:
            bad.append(f"{fmt_vec(x.exps)}: not idempotent")
        back = tuple(e if is_neg_inf(e) else e - cf.shift
                     for e in (x.exps[i] for i in cf.permutation))
        if back != y.exps:
            bad.append(f"{fmt_vec(x.exps)}: permutation/shift do not reproduce the output")
    for _ in range(cfg.monomial_elements):
        dim = rng.randint(1, 5)
        perm = list(range(dim))
        rng.shuffle(perm)
        nu = tuple(rng.randint(-2, 2) for _ in range(dim)) if fault else (0,) * dim
        if fault and not any(nu):
            nu = (1,) + nu[1:]
        g = MonomialElement(tuple(perm), nu)
        x = DiagSeminorm(random_exps(rng, dim))
        gx = monomial_action(g, x)
        for m in range(1, dim + 1):
            if exterior_invariant(gx, m) != exterior_invariant(x, m):
                bad.append(f"{fmt_vec(x.exps)} under {g}: exterior invariant m={m} changed")
    return CheckResult("canonical-window", "canonical representatives and exterior invariants",
                       not bad, {"cases": cfg.window_cases, "monomial_elements": cfg.monomial_elements},
                       bad)


# 8

def random_domination_case(rng: random.Random):
    dim = rng.choice([2, 3])
    exps = random_exps(rng, dim, allow_kernel=rng.random() < 0.3)
    shear = [[rng.randint(-4, 4) for _ in range(dim)] for _ in range(dim)]
    order = list(range(dim))
    rng.shuffle(order)
    return sheared_monomial(exps, shear, order)


def check_domination(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    rng = random.Random(cfg.seed + 8)
    bad = []
    for k in range(cfg.domination_cases):
        z, x = random_domination_case(rng)
        if fault and k == 0:
            # compare against a strictly smaller diagonal seminorm
            lower = DiagSeminorm(tuple(e if is_neg_inf(e) else e - 1 for e in x.exps))
            for poly in domination_failures(z, lower, monomial_samples(x.dim))[:1]:
                bad.append(f"injected: z={fmt_vec(z.exps)} exceeds j of {fmt_vec(lower.exps)} on {sorted(poly)}")
            continue
        if not domination_check(x, z):
            bad.append(f"basis={z.basis} exps={fmt_vec(z.exps)}: z exceeds j(tau(z)) on some monomial")
    return CheckResult("domination", "j(tau(z)) >= z on monomials of degree <= 3",
                       not bad, {"cases": cfg.domination_cases}, bad)


# 9

def _fmt_point(p) -> str:
    rays = ", ".join(fmt_vec(r) for r in p.stratum.rays) or "origin"
    return f"[stratum {rays}; rep {fmt_vec(p.rep)}]"


def check_injectivity(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(case):
        label, coeffs = case
        rd = _root(label)
        ws = _ws(label, HighestWeight.from_fundamental(rd, coeffs))
        wl = weight_list_from_rep(rd, ws)
        rep = injectivity_probe(rd, ws, wl, samples=cfg.interior_samples, seed=cfg.seed,
                                directions=cfg.directions_per_stratum,
                                type_nodes=frozenset() if fault else None)
        out = [f"{label} {list(coeffs)}: {_fmt_point(p)} and {_fmt_point(q)} both map to {fmt_vec(img.exps)}"
               for p, q, img in rep.collisions[:5]]
        out += [f"{label} {list(coeffs)}: direction {fmt_vec(c)} changes the image of {_fmt_point(p)}"
                for p, c, _, _ in rep.direction_failures[:5]]
        return rep.points, out

    res = _pmap(cfg, one, list(cfg.injectivity_cases))
    bad = [s for _, ss in res for s in ss]
    return CheckResult("injectivity", "boundary map is injective and independent of directions",
                       not bad, {"points": sum(n for n, _ in res)}, bad)


# 10

def check_cone_chain_sweep(cfg: SweepConfig, fault: bool = False) -> CheckResult:
    def one(label):
        rd = _root(label)
        out = []
        n = relevant = literal = 0
        pars = all_parabolics(rd)
        for t in _types(label):
            for q in pars:
                n += 1
                ok = check_cone_chain(rd, t, q)
                rel = is_t_relevant(rd, t, q.y)
                lit = literal_cone_chain(rd, t, q)
                relevant += rel
                literal += lit
                if lit != rel:
                    out.append(f"{label} t={_fmt_set(t)} Q={_fmt_set(q.y)} w={q.w.word}: "
                               f"literal chain {lit} but relevant {rel}")
                if fault and label == cfg.root_systems[-1] and t and q.y != t:
                    ok = ok and cone_Ct_of_Q(rd, t, q).contains(cone_Ct_of_Q(rd, q.y, q))
                if not ok:
                    out.append(f"{label} t={_fmt_set(t)} Q={_fmt_set(q.y)} w={q.w.word}: chain fails")
        return (n, relevant, literal), out

    res = _pmap(cfg, one, list(cfg.root_systems))
    bad = [s for _, ss in res for s in ss]
    stats = {k: sum(c[i] for c, _ in res)
             for i, k in enumerate(("triples", "relevant_triples", "literal_chain_holds"))}
    return CheckResult("cone-chain", "Weyl cone in C_t(Q) in C_t(R)(R), R the relevant hull of Q",
                       not bad, stats, bad)


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "fan-axioms": check_fan_axioms,
    "relevance-count": check_relevance_count,
    "admissibility": check_admissibility,
    "cone-equality": check_cone_equality,
    "pullback-fan": check_pullback_fan,
    "sequence-limits": check_sequence_limits,
    "canonical-window": check_canonical_window,
    "domination": check_domination,
    "injectivity": check_injectivity,
    "cone-chain": check_cone_chain_sweep,
}


def run_checks(cfg: SweepConfig, only=None, fault: str | None = None) -> list[CheckResult]:
    names = list(CHECKS) if not only else [n for n in CHECKS if n in set(only)]
    results = []
    for name in names:
        t0 = time.perf_counter()
        res = CHECKS[name](cfg, fault=(fault == name))
        res.seconds = time.perf_counter() - t0
        results.append(res)
    return results


def relevant_standard_count(label: str, t) -> int:
    return len(relevant_standard_subsets(_root(label), t))
