"""Rational polyhedral cones with exact H/V conversion.

A cone is stored both ways: facet inequalities ``a.x <= 0`` plus equations
``e.x = 0``, and extreme rays plus a lineality basis. The conversion is a
fraction-free double description; every vector is kept as a primitive
integer tuple, so cone equality reduces to comparing canonical keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import column_reduce, dot, primitive, rref


class ConeError(ValueError):
    """Domain error for cone operations."""


def _prim(v: Sequence) -> tuple[int, ...]:
    return primitive(v)


def _adjacent(rays, i, j) -> bool:
    common = rays[i][1] & rays[j][1]
    for k, (_, m) in enumerate(rays):
        if k != i and k != j and (common & m) == common:
            return False
    return True


def _double_description(dim: int, ineqs: Sequence[Sequence[int]]):
    """Rays and lineality basis of {x : a.x <= 0 for a in ineqs}."""
    lin: list[tuple[int, ...]] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[tuple[int, ...], int]] = []
    processed = 0
    for k, a in enumerate(ineqs):
        if not any(a):
            continue
        bit = 1 << k
        vals = [dot(a, l) for l in lin]
        pivot = next((j for j, v in enumerate(vals) if v != 0), None)
        if pivot is not None:
            l0 = lin[pivot]
            s = vals[pivot]
            if s > 0:
                l0 = tuple(-x for x in l0)
                s = -s
            new_lin = []
            for j, l in enumerate(lin):
                if j == pivot:
                    continue
                v = vals[j]
                if v:
                    l = _prim(tuple(-s * x + v * y for x, y in zip(l, l0)))
                new_lin.append(l)
            new_rays = []
            for r, mask in rays:
                v = dot(a, r)
                if v:
                    r = _prim(tuple(-s * x + v * y for x, y in zip(r, l0)))
                new_rays.append((r, mask | bit))
            new_rays.append((_prim(l0), processed))
            lin, rays = new_lin, new_rays
        else:
            signs = [dot(a, r) for r, _ in rays]
            new_rays = [(r, m | bit) for (r, m), v in zip(rays, signs) if v == 0]
            new_rays += [(r, m) for (r, m), v in zip(rays, signs) if v < 0]
            pos = [i for i, v in enumerate(signs) if v > 0]
            negs = [i for i, v in enumerate(signs) if v < 0]
            for i in pos:
                for j in negs:
                    if not _adjacent(rays, i, j):
                        continue
                    p, n = rays[i][0], rays[j][0]
                    vp, vn = signs[i], signs[j]
                    new = _prim(tuple(vp * y - vn * x for x, y in zip(p, n)))
                    new_rays.append((new, (rays[i][1] & rays[j][1]) | bit))
            rays = new_rays
        processed |= bit
    out = []
    seen = set()
    for r, _ in rays:
        if any(r) and r not in seen:
            seen.add(r)
            out.append(r)
    return out, lin


def _h_to_v(dim, ineqs, eqs):
    rows = [_prim(a) for a in ineqs]
    for e in eqs:
        e = _prim(e)
        rows.append(e)
        rows.append(tuple(-x for x in e))
    return _double_description(dim, rows)


def _canonical_lineality(dim, lin) -> tuple[tuple[int, ...], ...]:
    red, piv = rref(lin)
    return tuple(_prim(r) for r in red), tuple(piv)


def _reduce_mod(v, lin_rref, pivots):
    v = list(v)
    for row, p in zip(lin_rref, pivots):
        if v[p]:
            c = v[p]
            rp = row[p]
            v = [rp * x - c * y for x, y in zip(v, row)]
    return _prim(v)


@dataclass(frozen=True, eq=False)
class RationalCone:
    """Polyhedral cone in Q^dim. `ineqs` are facet normals a with a.x <= 0."""

    dim_ambient: int
    ineqs: tuple[tuple[int, ...], ...]
    eqs: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    _key: tuple = field(repr=False)

    # construction

    @classmethod
    def from_inequalities(cls, dim: int, ineqs: Iterable[Sequence] = (),
                          eqs: Iterable[Sequence] = ()) -> RationalCone:
        ineqs = [_prim(a) for a in ineqs]
        eqs = [_prim(e) for e in eqs]
        for a in ineqs + eqs:
            if len(a) != dim:
                raise ConeError(f"functional {a} has wrong length for dimension {dim}")
        rays, lin = _h_to_v(dim, ineqs, eqs)
        return cls._from_v_raw(dim, rays, lin)

    @classmethod
    def from_generators(cls, dim: int, gens: Iterable[Sequence] = (),
                        lineality: Iterable[Sequence] = ()) -> RationalCone:
        gens = [_prim(g) for g in gens if any(g)]
        lineality = [_prim(l) for l in lineality if any(l)]
        for g in gens + lineality:
            if len(g) != dim:
                raise ConeError(f"generator {g} has wrong length for dimension {dim}")
        return cls._from_v_raw(dim, gens, lineality)

    @classmethod
    def _from_v_raw(cls, dim, gens, lineality) -> RationalCone:
        # dual cone: facets are its rays, equations its lineality
        rows = [tuple(g) for g in gens]
        for l in lineality:
            rows.append(tuple(l))
            rows.append(tuple(-x for x in l))
        facet_rays, eq_lin = _double_description(dim, rows)
        eq_rref, eq_piv = _canonical_lineality(dim, eq_lin) if eq_lin else ((), ())
        facets = sorted({_reduce_mod(f, eq_rref, eq_piv) for f in facet_rays})
        # primal again from the irredundant description
        rays, lin = _h_to_v(dim, facets, eq_rref)
        lin_rref, lin_piv = _canonical_lineality(dim, lin) if lin else ((), ())
        rays = sorted({_reduce_mod(r, lin_rref, lin_piv) for r in rays})
        rays = [r for r in rays if any(r)]
        key = (dim, tuple(lin_rref), tuple(rays))
        return cls(dim, tuple(facets), tuple(eq_rref), tuple(rays), tuple(lin_rref), key)

    @classmethod
    def whole_space(cls, dim: int) -> RationalCone:
        return cls.from_inequalities(dim)

    @classmethod
    def origin(cls, dim: int) -> RationalCone:
        return cls.from_generators(dim)

    # identity

    @property
    def key(self) -> tuple:
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalCone) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return (f"RationalCone(dim={self.dim}, rays={list(self.rays)}, "
                f"lineality={list(self.lineality)})")

    # basic properties

    @property
    def gens(self) -> tuple[tuple[int, ...], ...]:
        return self.rays

    @property
    def dim(self) -> int:
        return self.dim_ambient - len(self.eqs)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full(self) -> bool:
        return not self.eqs

    def all_inequalities(self) -> list[tuple[int, ...]]:
        out = list(self.ineqs)
        for e in self.eqs:
            out.append(e)
            out.append(tuple(-x for x in e))
        return out

    def all_generators(self) -> list[tuple[int, ...]]:
        out = list(self.rays)
        for l in self.lineality:
            out.append(l)
            out.append(tuple(-x for x in l))
        return out

    def interior_point(self) -> tuple[int, ...]:
        """A point of the relative interior (sum of extreme rays)."""
        return tuple(sum(c) for c in zip(*self.rays)) if self.rays else (0,) * self.dim_ambient

    def contains_point(self, x: Sequence) -> bool:
        return all(dot(a, x) <= 0 for a in self.ineqs) and all(dot(e, x) == 0 for e in self.eqs)

    def in_relative_interior(self, x: Sequence) -> bool:
        return all(dot(a, x) < 0 for a in self.ineqs) and all(dot(e, x) == 0 for e in self.eqs)

    def contains(self, other: RationalCone) -> bool:
        return all(self.contains_point(g) for g in other.all_generators())

    def span_contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.eqs)

    def intersect(self, other: RationalCone) -> RationalCone:
        return RationalCone.from_inequalities(
            self.dim_ambient, self.ineqs + other.ineqs, self.eqs + other.eqs)

    def slice(self, eqs: Iterable[Sequence]) -> RationalCone:
        return RationalCone.from_inequalities(
            self.dim_ambient, self.ineqs, tuple(self.eqs) + tuple(_prim(e) for e in eqs))

    def span_basis(self) -> list[tuple[int, ...]]:
        gens = list(self.rays) + list(self.lineality)
        red, _ = rref(gens) if gens else ([], [])
        return [_prim(r) for r in red]

    # faces

    @cached_property
    def faces(self) -> tuple[RationalCone, ...]:
        """All faces, from the minimal one (the lineality space) upwards."""
        facet_sets = [frozenset(i for i, r in enumerate(self.rays) if dot(a, r) == 0)
                      for a in self.ineqs]
        top = frozenset(range(len(self.rays)))
        seen = {top}
        frontier = [top]
        while frontier:
            nxt = []
            for f in frontier:
                for s in facet_sets:
                    g = f & s
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        out = [self if s == top else RationalCone.from_generators(
            self.dim_ambient, [self.rays[i] for i in sorted(s)], self.lineality)
            for s in seen]
        out.sort(key=lambda c: (c.dim, c.key))
        return tuple(out)

    @cached_property
    def face_keys(self) -> frozenset:
        return frozenset(f.key for f in self.faces)

    def has_face(self, other: RationalCone) -> bool:
        return other.key in self.face_keys

    # coordinate changes

    def drop_coordinates(self, keep: Sequence[int]) -> RationalCone:
        """Image under the coordinate projection onto `keep`."""
        proj = lambda v: tuple(v[i] for i in keep)  # noqa: E731
        return RationalCone.from_generators(
            len(keep), [proj(r) for r in self.rays], [proj(l) for l in self.lineality])

    def lift_coordinates(self, keep: Sequence[int], dim: int) -> RationalCone:
        """Preimage under the coordinate projection onto `keep`."""
        def emb(v):
            out = [0] * dim
            for x, i in zip(v, keep):
                out[i] = x
            return tuple(out)
        extra = [tuple(int(j == i) for j in range(dim)) for i in range(dim) if i not in keep]
        return RationalCone.from_generators(
            dim, [emb(r) for r in self.rays], [emb(l) for l in self.lineality] + extra)

    def pullback(self, matrix: Sequence[Sequence]) -> RationalCone:
        """Preimage under the linear map x -> matrix.x (matrix rows act on the source)."""
        ncols = len(matrix[0])
        pull = lambda a: tuple(sum((a[i] * matrix[i][j] for i in range(len(a))), 0)  # noqa: E731
                               for j in range(ncols))
        return RationalCone.from_inequalities(
            ncols, [pull(a) for a in self.ineqs], [pull(e) for e in self.eqs])

    def to_json(self) -> dict:
        return {"ineqs": [list(a) for a in self.all_inequalities()],
                "gens": [list(g) for g in self.all_generators()]}


def hilbert_basis(ineqs: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Hilbert basis of the monoid {x in Z^dim : a.x <= 0 for a in ineqs}.

    The lattice lineality (if any) contributes a basis and its negatives; the
    pointed quotient is handled by exhaustive search in the box spanned by the
    extreme rays.
    """
    rows = [tuple(int(x) for x in a) for a in ineqs if any(a)]
    u, r = column_reduce(rows, dim) if rows else ([[int(i == j) for j in range(dim)]
                                                   for i in range(dim)], 0)
    col = lambda j: tuple(u[i][j] for i in range(dim))  # noqa: E731
    kernel = [col(j) for j in range(r, dim)]
    out: list[tuple[int, ...]] = []
    for k in kernel:
        out.append(k)
        out.append(tuple(-x for x in k))
    if r == 0:
        return out
    # quotient coordinates y (length r): x = sum_j y_j u[:, j]
    h = [tuple(sum(row[i] * u[i][j] for i in range(dim)) for j in range(r)) for row in rows]
    qrays, qlin = _double_description(r, h)
    if qlin:
        raise ConeError("quotient monoid is not pointed")
    bounds = [sum(abs(g[j]) for g in qrays) for j in range(r)]
    member = lambda y: all(dot(a, y) <= 0 for a in h)  # noqa: E731
    grade = tuple(-sum(a[j] for a in h) for j in range(r))
    cands = []
    for y in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if any(y) and member(y):
            cands.append(y)
    cands.sort(key=lambda y: dot(grade, y))
    basis = []
    for y in cands:
        gy = dot(grade, y)
        reducible = False
        for z in basis:
            if dot(grade, z) >= gy:
                break
            diff = tuple(p - q for p, q in zip(y, z))
            if member(diff):
                reducible = True
                break
        if not reducible:
            basis.append(y)
    for y in basis:
        out.append(tuple(sum(y[j] * u[i][j] for j in range(r)) for i in range(dim)))
    return out
