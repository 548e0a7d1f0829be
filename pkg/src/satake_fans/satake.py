"""Weight embedding of an apartment into the seminorm model, and its boundary."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cones import RationalCone
from .fans import (
    BoundaryPoint,
    Fan,
    FanError,
    build_fan_Ft,
    close_under_faces,
    is_degenerate,
    quotient_metric,
)
from .linalg import NEG_INF, as_fraction, dot, rank
from .rootsys import RootDatum, as_parabolic, levi_and_radical_roots
from .seminorms import (
    LogAffineSequence,
    MonomialElement,
    SeminormClass,
    DiagSeminorm,
    ValuedPolynomial,
    classify_sequence,
    monomial_action,
)
from .weights import WeightSystem, weight_order_key, z_set


@dataclass(frozen=True)
class WeightList:
    lambdas: tuple[tuple[Fraction, ...], ...]

    @property
    def d(self) -> int:
        return len(self.lambdas) - 1

    def index(self, mu: Sequence) -> int:
        return self.lambdas.index(tuple(as_fraction(x) for x in mu))


@dataclass(frozen=True)
class EmbeddingMap:
    matrix: tuple[tuple[Fraction, ...], ...]

    def __call__(self, u: Sequence) -> tuple:
        return tuple(dot(row, u) for row in self.matrix)

    @property
    def rank(self) -> int:
        return rank(self.matrix)


def weight_list_from_rep(rd: RootDatum, ws: WeightSystem) -> WeightList:
    return WeightList(tuple(sorted(set(ws.weights), key=weight_order_key)))


def embedding_map(wl: WeightList) -> EmbeddingMap:
    return EmbeddingMap(wl.lambdas)


def weight_embedding(u: Sequence, wl: WeightList) -> tuple:
    return tuple(dot(lam, u) for lam in wl.lambdas)


def embed_class(u: Sequence, wl: WeightList) -> SeminormClass:
    return SeminormClass.of(weight_embedding(u, wl))


# target fan on R^{d+1} modulo the diagonal, coordinates y_j = r_j - r_0

def _target_ineq(i: int, j: int, d: int) -> tuple:
    """r_j - r_i <= 0 in the coordinates y_1..y_d."""
    v = [0] * d
    if j:
        v[j - 1] += 1
    if i:
        v[i - 1] -= 1
    return tuple(v)


def standard_fan_on_target(d: int) -> Fan:
    if d < 1:
        raise ValueError("need d >= 1")
    maxi = [RationalCone.from_inequalities(d, [_target_ineq(i, j, d) for j in range(d + 1) if j != i])
            for i in range(d + 1)]
    cones = close_under_faces(maxi)
    return Fan(d, tuple(range(d)), tuple(cones), {}, f"PGL{d + 1}", (), d)


def _preimage(wl: WeightList, indices: Sequence[int], dim: int) -> RationalCone:
    """{u : <lambda_i, u> is maximal among all weights, for every i in indices}."""
    lams = wl.lambdas
    ineqs = []
    eqs = []
    first = indices[0]
    for i in indices:
        for j in range(len(lams)):
            if j not in indices:
                ineqs.append(tuple(b - a for a, b in zip(lams[i], lams[j])))
    for i in indices[1:]:
        eqs.append(tuple(a - b for a, b in zip(lams[first], lams[i])))
    return RationalCone.from_inequalities(dim, ineqs, eqs)


@dataclass
class FanComparisonReport:
    label: str
    tau: frozenset[int]
    preimages: list[dict] = field(default_factory=list)
    maximal_match: bool = False
    fan_match: bool = False
    counterexamples: list = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.maximal_match and self.fan_match


def pullback_fan_compare(rd: RootDatum, ws: WeightSystem, wl: WeightList,
                         fan: Fan | None = None) -> FanComparisonReport:
    tau = z_set(rd, ws)
    if is_degenerate(rd, tau):
        raise FanError("the representation is not faithful: its type is degenerate")
    if fan is None:
        fan = build_fan_Ft(rd, tau, with_index=False)
    rep = FanComparisonReport(rd.label, tau)
    n = rd.rank
    full = []
    for i, lam in enumerate(wl.lambdas):
        c = _preimage(wl, [i], n)
        entry = {"index": i, "weight": lam, "cone": c, "full": c.dim == n}
        if c.dim == n:
            entry["match"] = c in fan
            full.append(c)
        else:
            entry["match"] = "empty interior"
        rep.preimages.append(entry)
    maxi = {c.key for c in fan.maximal_cones()}
    rep.maximal_match = {c.key for c in full} == maxi
    # whole pullback fan: preimages of every face C_J of the target fan
    pulled: dict = {}
    for size in range(1, len(wl.lambdas) + 1):
        for idx in itertools.combinations(range(len(wl.lambdas)), size):
            c = _preimage(wl, list(idx), n)
            pulled.setdefault(c.key, c)
    rep.fan_match = set(pulled) == set(fan.key_set())
    if not rep.verdict:
        rep.counterexamples = [c for k, c in pulled.items() if k not in fan.key_set()]
        rep.counterexamples += [c for c in fan.cones if c.key not in pulled]
    return rep


def theta_monomial(rd: RootDatum, t, p, u: Sequence, poly: ValuedPolynomial,
                   variables: Sequence[Sequence[int]]):
    """max over terms of (val + sum_alpha nu(alpha) <alpha, u>), variables indexed by roots."""
    p = as_parabolic(rd, p)
    _, _, psi = levi_and_radical_roots(rd, p)
    vs = [tuple(int(x) for x in v) for v in variables]
    for v in vs:
        if v not in psi:
            raise ValueError(f"variable {v} is not a root of the opposite radical")
    pairings = [dot(v, u) for v in vs]
    best = NEG_INF
    for nu, val in poly.terms.items():
        if len(nu) != len(vs):
            raise ValueError("multi-index length does not match the variables")
        best = max(best, val + sum((k * pv for k, pv in zip(nu, pairings)), Fraction(0)))
    return best


def _stratum_direction(stratum: RationalCone, direction=None) -> tuple:
    if direction is not None:
        if not stratum.in_relative_interior(direction):
            raise FanError("direction is not in the relative interior of the stratum")
        return tuple(direction)
    return stratum.interior_point()


def map_boundary_point(rd: RootDatum, ws: WeightSystem, wl: WeightList, x: BoundaryPoint,
                       fan: Fan | None = None, direction=None) -> SeminormClass:
    if fan is None:
        fan = build_fan_Ft(rd, z_set(rd, ws), with_index=False)
    if x.stratum not in fan:
        raise FanError("stratum is not a cone of the fan")
    c = _stratum_direction(x.stratum, direction)
    a = weight_embedding(x.rep, wl)
    b = weight_embedding(c, wl)
    return classify_sequence(LogAffineSequence(a, b)).limit


def random_interior_directions(stratum: RationalCone, count: int, rng: random.Random) -> list:
    out = []
    for _ in range(count):
        coefs = [rng.randint(1, 5) for _ in stratum.rays]
        out.append(tuple(sum(c * r[i] for c, r in zip(coefs, stratum.rays))
                         for i in range(stratum.dim_ambient)))
    return out


@dataclass
class InjectivityReport:
    label: str
    points: int
    collisions: list = field(default_factory=list)
    direction_failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.collisions and not self.direction_failures


def injectivity_probe(rd: RootDatum, ws: WeightSystem, wl: WeightList, samples: int = 50,
                      seed: int = 0, reps_per_stratum: int = 3, directions: int = 3,
                      magnitude: int = 6, type_nodes=None) -> InjectivityReport:
    """Map stratum base points, random representatives and interior samples; report
    collisions between distinct inputs and dependence on the interior direction.

    `type_nodes` overrides the fan type (the default is the type of the representation).
    """
    rng = random.Random(seed)
    tau = z_set(rd, ws) if type_nodes is None else frozenset(type_nodes)
    fan = build_fan_Ft(rd, tau, with_index=False)
    metric = quotient_metric(rd, fan.quotient_basis)
    n = fan.ambient_dim
    points: dict = {}

    def rand_u():
        return tuple(Fraction(rng.randint(-magnitude, magnitude), rng.choice([1, 2]))
                     for _ in range(n))

    for stratum in fan.cones:
        pts = [BoundaryPoint.create(stratum, (0,) * n, metric)]
        pts += [BoundaryPoint.create(stratum, rand_u(), metric) for _ in range(reps_per_stratum)]
        for pt in pts:
            points.setdefault((pt.stratum.key, pt.rep), pt)
    origin = RationalCone.origin(n)
    for _ in range(samples):
        pt = BoundaryPoint.create(origin, rand_u(), metric)
        points.setdefault((pt.stratum.key, pt.rep), pt)
    rep = InjectivityReport(rd.label, len(points))
    images: dict = {}
    for key, pt in points.items():
        img = map_boundary_point(rd, ws, wl, pt, fan)
        if img in images:
            rep.collisions.append((images[img], pt, img))
        else:
            images[img] = pt
        for c in random_interior_directions(pt.stratum, directions, rng):
            other = map_boundary_point(rd, ws, wl, pt, fan, direction=c)
            if other != img:
                rep.direction_failures.append((pt, c, img, other))
    return rep


def stratum_kernel_map(rd: RootDatum, ws: WeightSystem, wl: WeightList) -> dict:
    """Stratum key -> kernel of the image of its base point."""
    fan = build_fan_Ft(rd, z_set(rd, ws), with_index=False)
    out = {}
    for stratum in fan.cones:
        pt = BoundaryPoint(stratum, (Fraction(0),) * fan.ambient_dim)
        out[stratum.key] = map_boundary_point(rd, ws, wl, pt, fan).kernel()
    return out


def toral_image_check(rd: RootDatum, ws: WeightSystem, wl: WeightList,
                      samples: int = 10, seed: int = 0) -> bool:
    """The apartment map is linear with matrix given by the weights, sends 0 to the
    Gauss class, and intertwines W with permutations of the weight coordinates."""
    rng = random.Random(seed)
    n = rd.rank
    emb = embedding_map(wl)
    if embed_class((0,) * n, wl) != SeminormClass((Fraction(0),) * len(wl.lambdas)):
        return False
    pts = [tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(n))
           for _ in range(samples)]
    for u, v in zip(pts, pts[1:]):
        k = Fraction(rng.randint(-4, 4))
        lhs = emb(tuple(a + k * b for a, b in zip(u, v)))
        rhs = tuple(a + k * b for a, b in zip(emb(u), emb(v)))
        if lhs != rhs:
            return False
    for w in rd.weyl:
        perm = tuple(wl.index(w.apply(lam)) for lam in wl.lambdas)
        g = MonomialElement(perm, (0,) * len(perm))
        for u in pts[:3]:
            moved = DiagSeminorm(emb(w.act_on_point(u)))
            if moved != monomial_action(g, DiagSeminorm(emb(u))):
                return False
    return True
