"""Weyl cones, the fans F_t, relevance of parabolics and compactified cones.

Points of V(S) use coweight coordinates. A type t is a subset of the simple
roots; when t contains whole Dynkin components the fan lives on the quotient
of V(S) obtained by dropping the coordinates of those components.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import ConeError, RationalCone, hilbert_basis
from .linalg import as_fraction, dot, solve
from .rootsys import (
    Parabolic,
    ParabolicSubset,
    RootDatum,
    all_parabolics,
    all_subsets,
    as_parabolic,
    levi_and_radical_roots,
    parabolics_of_type,
    standard_parabolic,
    validate_subset,
)


class FanError(ValueError):
    """Domain error for fan operations."""


def _subset(t) -> frozenset[int]:
    if isinstance(t, (ParabolicSubset, Parabolic)):
        return t.y
    return frozenset(t)


# types and relevance

def degenerate_components(rd: RootDatum, t) -> list[tuple[int, ...]]:
    ts = _subset(t)
    return [c for c in rd.components if set(c) <= ts]


def is_degenerate(rd: RootDatum, t) -> bool:
    return bool(degenerate_components(rd, t))


def kept_coordinates(rd: RootDatum, t) -> tuple[int, ...]:
    dropped = {i for c in degenerate_components(rd, t) for i in c}
    return tuple(i for i in range(rd.rank) if i not in dropped)


def _essential_part(rd: RootDatum, t, y) -> frozenset[int]:
    """Union of the components of Y meeting the complement of Y_t."""
    ts = _subset(t)
    out: set[int] = set()
    for comp in rd.dynkin_components(y):
        if comp - ts:
            out |= comp
    return frozenset(out)


def is_t_relevant(rd: RootDatum, t, q) -> bool:
    ts, ys = _subset(t), _subset(q)
    core = _essential_part(rd, ts, ys)
    for a in ts:
        if all(rd.orthogonal(a, b) for b in core) and a not in ys:
            return False
    return True


def smallest_t_relevant(rd: RootDatum, t, q) -> ParabolicSubset:
    ts, ys = _subset(t), _subset(q)
    core = _essential_part(rd, ts, ys)
    extra = {a for a in ts if all(rd.orthogonal(a, b) for b in core)}
    return ParabolicSubset(frozenset(ys | extra))


def relevant_standard_subsets(rd: RootDatum, t) -> list[frozenset[int]]:
    return [y for y in all_subsets(rd.rank) if is_t_relevant(rd, t, y)]


# cones in V(S)

def _ineq(root) -> tuple:
    """<root, u> >= 0 written as a.u <= 0."""
    return tuple(-x for x in root)


def weyl_cone(rd: RootDatum, q) -> RationalCone:
    p = as_parabolic(rd, q)
    return RationalCone.from_inequalities(rd.rank, [_ineq(r) for r in sorted(p.roots)])


def _type_parabolic_for(rd: RootDatum, t, q: Parabolic) -> Parabolic:
    """The type-t parabolic sharing the Borel w.B with q = w.P_Y."""
    ts = _subset(t)
    base = standard_parabolic(rd, ts)
    roots = frozenset(tuple(int(x) for x in q.w.apply(r)) for r in base.roots)
    return Parabolic(ts, q.w, roots)


def cone_Ct_of_type_parabolic(rd: RootDatum, t, p) -> RationalCone:
    """C_t(P) for a parabolic P of type t."""
    ts = validate_subset(rd, _subset(t))
    p = as_parabolic(rd, p)
    if p.y != ts:
        raise FanError(f"parabolic of type {sorted(p.y)} is not of type {sorted(ts)}")
    _, rad, _ = levi_and_radical_roots(rd, p)
    return RationalCone.from_inequalities(rd.rank, [_ineq(r) for r in sorted(rad)])


def cone_Ct_of_Q(rd: RootDatum, t, q) -> RationalCone:
    """Smallest cone of F_t containing the Weyl cone of Q (in V(S))."""
    ts = validate_subset(rd, _subset(t))
    q = as_parabolic(rd, q)
    p = _type_parabolic_for(rd, ts, q)
    _, rad_p, rad_p_op = levi_and_radical_roots(rd, p)
    levi_q, _, _ = levi_and_radical_roots(rd, q)
    eqs = sorted(levi_q & rad_p_op)
    return RationalCone.from_inequalities(rd.rank, [_ineq(r) for r in sorted(rad_p)], eqs)


def relevant_hull(rd: RootDatum, t, q) -> Parabolic:
    """Smallest t-relevant parabolic containing q (same Borel)."""
    q = as_parabolic(rd, q)
    y = smallest_t_relevant(rd, t, q.y).y
    roots = frozenset(tuple(int(x) for x in q.w.apply(r))
                      for r in standard_parabolic(rd, y).roots)
    return Parabolic(y, q.w, roots)


def literal_cone_chain(rd: RootDatum, t, q) -> bool:
    """Weyl cone of Q in C_t(Q) in C_{t(Q)}(Q), with t(Q) the type of Q itself."""
    q = as_parabolic(rd, q)
    mid = cone_Ct_of_Q(rd, t, q)
    return mid.contains(weyl_cone(rd, q)) and cone_Ct_of_Q(rd, q.y, q).contains(mid)


def check_cone_chain(rd: RootDatum, t, q) -> bool:
    """Weyl cone of Q inside C_t(Q) inside C_{t(R)}(R), R the relevant hull of Q.

    C_t(Q) = C_t(R), and for relevant R the cone C_t(R) is moreover the slice
    of C_{t(R)}(R) by the roots spanned by the essential part of Y_R. At
    t = empty the first inclusion is an equality.
    """
    q = as_parabolic(rd, q)
    chamber = weyl_cone(rd, q)
    mid = cone_Ct_of_Q(rd, t, q)
    hull = relevant_hull(rd, t, q)
    top = cone_Ct_of_Q(rd, hull.y, hull)
    if not (mid.contains(chamber) and top.contains(mid)):
        return False
    if cone_Ct_of_Q(rd, t, hull) != mid:
        return False
    core = _essential_part(rd, t, hull.y)
    cut = top.slice([hull.w.apply(rd.simple_roots[i]) for i in sorted(core)])
    if cut != mid:
        return False
    if not _subset(t):
        return mid == chamber
    return True


# fans

@dataclass(frozen=True)
class Fan:
    """A fan of cones in Q^ambient_dim, closed under faces.

    `quotient_basis` lists the coordinates of V(S) that survive the quotient
    (all of them for non-degenerate types). `relevancy_index` maps the key of
    each cone to the largest parabolic defining it, when known.
    """

    ambient_dim: int
    quotient_basis: tuple[int, ...]
    cones: tuple[RationalCone, ...]
    relevancy_index: dict = field(default_factory=dict, compare=False, hash=False)
    label: str = ""
    type_nodes: tuple[int, ...] = ()
    full_dim: int = 0

    def __contains__(self, cone: RationalCone) -> bool:
        return cone.key in self._keys

    @property
    def _keys(self) -> frozenset:
        keys = self.__dict__.get("_key_cache")
        if keys is None:
            keys = frozenset(c.key for c in self.cones)
            object.__setattr__(self, "_key_cache", keys)
        return keys

    @property
    def degenerate(self) -> bool:
        return self.ambient_dim < (self.full_dim or self.ambient_dim)

    def maximal_cones(self) -> list[RationalCone]:
        return [c for c in self.cones if c.dim == self.ambient_dim]

    def cones_by_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cones:
            out[c.dim] = out.get(c.dim, 0) + 1
        return dict(sorted(out.items()))

    def key_set(self) -> frozenset:
        return self._keys

    def project_point(self, u: Sequence) -> tuple:
        return tuple(u[i] for i in self.quotient_basis)

    def project_cone(self, c: RationalCone) -> RationalCone:
        if c.dim_ambient == self.ambient_dim:
            return c
        return c.drop_coordinates(self.quotient_basis)

    def lift_cone(self, c: RationalCone) -> RationalCone:
        if self.full_dim in (0, self.ambient_dim):
            return c
        return c.lift_coordinates(self.quotient_basis, self.full_dim)

    def locate(self, x: Sequence) -> RationalCone:
        """The cone containing x in its relative interior."""
        for c in self.cones:
            if c.in_relative_interior(x):
                return c
        raise FanError(f"point {tuple(x)} is not covered by the fan")

    # axioms

    def pairwise_face_violations(self, limit: int | None = None) -> list[tuple]:
        bad = []
        cones = self.cones
        for i in range(len(cones)):
            a = cones[i]
            for j in range(i + 1, len(cones)):
                b = cones[j]
                if a.has_face(b) or b.has_face(a):
                    continue
                if b.contains(a) or a.contains(b):
                    bad.append((a, b))
                else:
                    meet = a.intersect(b)
                    if not (a.has_face(meet) and b.has_face(meet)):
                        bad.append((a, b))
                if limit is not None and len(bad) >= limit:
                    return bad
        return bad

    def coverage_violations(self, n_points: int = 1000, seed: int = 0,
                            magnitude: int = 1000) -> list[tuple]:
        rng = random.Random(seed)
        maxi = self.maximal_cones()
        bad = []
        for _ in range(n_points):
            x = tuple(rng.randint(-magnitude, magnitude) for _ in range(self.ambient_dim))
            if not any(c.contains_point(x) for c in maxi):
                bad.append(x)
        return bad

    def closed_under_faces(self) -> bool:
        keys = self._keys
        return all(f.key in keys for c in self.cones for f in c.faces)

    def is_complete_exact(self) -> bool:
        """Every codimension-one face of a maximal cone lies in exactly two maximal cones.

        Together with the face-intersection property this certifies that the
        support of the fan has no boundary, hence is the whole space.
        """
        maxi = self.maximal_cones()
        if self.ambient_dim == 0:
            return len(self.cones) == 1
        if not maxi:
            return False
        if any(not c.is_pointed and c.dim == self.ambient_dim and not c.ineqs for c in maxi):
            return len(maxi) == 1
        count: dict = {}
        for c in maxi:
            for f in c.faces:
                if f.dim == self.ambient_dim - 1:
                    count[f.key] = count.get(f.key, 0) + 1
        return all(v == 2 for v in count.values())


def close_under_faces(cones: Iterable[RationalCone]) -> list[RationalCone]:
    out: dict = {}
    for c in cones:
        for f in c.faces:
            out.setdefault(f.key, f)
    return sorted(out.values(), key=lambda c: (c.dim, c.key))


def build_fan_Ft(rd: RootDatum, t, with_index: bool = True) -> Fan:
    ts = validate_subset(rd, _subset(t))
    keep = kept_coordinates(rd, ts)
    maximal: dict = {}
    for p in parabolics_of_type(rd, ts):
        c = cone_Ct_of_type_parabolic(rd, ts, p)
        if len(keep) != rd.rank:
            c = c.drop_coordinates(keep)
        maximal.setdefault(c.key, c)
    cones = close_under_faces(maximal.values())
    index: dict = {}
    if with_index:
        index = relevancy_index(rd, ts, keep)
    return Fan(len(keep), keep, tuple(cones), index, rd.label, tuple(sorted(ts)), rd.rank)


def relevancy_index(rd: RootDatum, t, keep: Sequence[int] | None = None) -> dict:
    """Map cone key -> largest parabolic Q with C_t(Q) equal to that cone."""
    ts = _subset(t)
    keep = tuple(keep) if keep is not None else kept_coordinates(rd, ts)
    best: dict = {}
    for q in all_parabolics(rd):
        c = cone_Ct_of_Q(rd, ts, q)
        if len(keep) != rd.rank:
            c = c.drop_coordinates(keep)
        cur = best.get(c.key)
        if cur is None or len(q.roots) > len(cur.roots):
            best[c.key] = q
    return best


def cones_of_all_parabolics(rd: RootDatum, t) -> dict:
    """Map cone key -> list of all parabolics Q with that C_t(Q)."""
    ts = _subset(t)
    keep = kept_coordinates(rd, ts)
    out: dict = {}
    for q in all_parabolics(rd):
        c = cone_Ct_of_Q(rd, ts, q)
        if len(keep) != rd.rank:
            c = c.drop_coordinates(keep)
        out.setdefault(c.key, []).append(q)
    return out


# compactified cones

@dataclass(frozen=True)
class CompactifiedCone:
    cone: RationalCone
    monoid_basis: tuple[tuple[int, ...], ...]
    faces: tuple[tuple[RationalCone, tuple[int, ...]], ...]

    def stratum_of(self, face: RationalCone) -> tuple[int, ...]:
        for f, alive in self.faces:
            if f == face:
                return alive
        raise FanError("not a face of this cone")


def compactify_cone(c: RationalCone) -> CompactifiedCone:
    """Dual monoid M = {chi : chi <= 0 on c} with its Hilbert basis and strata.

    Each face F is tagged with the indices of the basis characters that vanish
    identically on F; on the stratum of F exactly those stay finite.
    """
    if not c.is_pointed:
        raise ConeError("cone is not strictly convex; pass it through the fan quotient first")
    basis = hilbert_basis(c.rays, c.dim_ambient)
    basis = sorted(set(basis), key=lambda v: (sum(abs(x) for x in v), tuple(-x for x in v)))
    faces = []
    for f in c.faces:
        alive = tuple(i for i, phi in enumerate(basis) if all(dot(phi, r) == 0 for r in f.rays))
        faces.append((f, alive))
    return CompactifiedCone(c, tuple(basis), tuple(faces))


# boundary points and extended evaluation

def _project_orthogonally(u: Sequence, span: Sequence[Sequence], metric) -> tuple:
    u = tuple(as_fraction(x) for x in u)
    if not span:
        return u
    n = len(u)
    ip = lambda a, b: sum((a[i] * metric[i][j] * b[j] for i in range(n)  # noqa: E731
                           for j in range(n) if a[i] and b[j]), Fraction(0))
    gram = [[ip(a, b) for b in span] for a in span]
    rhs = [ip(a, u) for a in span]
    coef = solve(gram, rhs)
    out = list(u)
    for c, a in zip(coef, span):
        out = [x - c * y for x, y in zip(out, a)]
    return tuple(out)


@dataclass(frozen=True)
class BoundaryPoint:
    """Point of a compactified apartment: stratum cone D and a residual vector.

    `rep` is stored in canonical form, the component orthogonal to span(D)
    for the chosen metric, so equal points compare equal.
    """

    stratum: RationalCone
    rep: tuple

    @classmethod
    def create(cls, stratum: RationalCone, rep: Sequence, metric=None) -> BoundaryPoint:
        n = stratum.dim_ambient
        if len(rep) != n:
            raise FanError("representative has wrong dimension")
        if metric is None:
            metric = [[int(i == j) for j in range(n)] for i in range(n)]
        return cls(stratum, _project_orthogonally(rep, stratum.span_basis(), metric))

    @classmethod
    def interior(cls, u: Sequence) -> BoundaryPoint:
        return cls(RationalCone.origin(len(u)), tuple(as_fraction(x) for x in u))


def quotient_metric(rd: RootDatum, keep: Sequence[int]) -> list[list[Fraction]]:
    m = rd.point_metric
    return [[m[i][j] for j in keep] for i in keep]


@dataclass(frozen=True)
class ExtendedValue:
    tag: str  # "zero" | "finite" | "infinite"
    exponent: Fraction | None = None

    def __post_init__(self):
        if self.tag not in ("zero", "finite", "infinite"):
            raise ValueError(f"bad tag {self.tag!r}")
        if (self.tag == "finite") != (self.exponent is not None):
            raise ValueError("exponent is present exactly for finite values")


def extended_eval(rd: RootDatum, t, chi: Sequence, x: BoundaryPoint,
                  fan: Fan | None = None) -> ExtendedValue:
    """Limit of the character chi along the stratum of x (upper semicontinuous extension)."""
    if fan is None:
        fan = build_fan_Ft(rd, t, with_index=False)
    if x.stratum not in fan:
        raise FanError("stratum is not a cone of the fan")
    d = fan.lift_cone(x.stratum)
    u = [Fraction(0)] * rd.rank
    for v, i in zip(x.rep, fan.quotient_basis):
        u[i] = as_fraction(v)
    if any(dot(chi, l) != 0 for l in d.lineality):
        return ExtendedValue("infinite")
    vals = [dot(chi, r) for r in d.rays]
    if all(v == 0 for v in vals):
        return ExtendedValue("finite", as_fraction(dot(chi, u)))
    if all(v <= 0 for v in vals):
        return ExtendedValue("zero")
    return ExtendedValue("infinite")


def span_equals_vanishing_locus(rd: RootDatum, t, q) -> bool:
    """span C_t(Q) = {<alpha, .> = 0 : alpha in the essential part of Y_Q}."""
    q = as_parabolic(rd, q)
    core = _essential_part(rd, t, q.y)
    c = cone_Ct_of_Q(rd, t, q)
    roots = [tuple(q.w.apply(rd.simple_roots[i])) for i in sorted(core)]
    locus = RationalCone.from_inequalities(rd.rank, [], roots)
    span = RationalCone.from_generators(rd.rank, [], c.span_basis())
    return span == locus
