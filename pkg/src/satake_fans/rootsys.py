"""Split reduced root systems with exact arithmetic.

Roots and weights live in simple-root coordinates. Points of the apartment
V(S) live in coweight coordinates (u_i = <alpha_i, u>), so the pairing of a
character with a point is a plain dot product.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import as_fraction, dot, inverse, vec_mat

SUPPORTED = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2")

_COMPONENT = re.compile(r"^([ABCDG])(\d+)$")


class ConfigurationError(ValueError):
    """Unsupported or malformed root-system label."""


def _component_gram(kind: str, n: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]
    if kind == "A":
        if n < 1:
            raise ConfigurationError("A_n needs n >= 1")
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = -1
    elif kind == "B":
        if n < 2:
            raise ConfigurationError("B_n needs n >= 2")
        for i in range(n - 1):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(n - 1):
            g[i][i + 1] = g[i + 1][i] = -2
    elif kind == "C":
        if n < 2:
            raise ConfigurationError("C_n needs n >= 2")
        for i in range(n - 1):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        g[n - 2][n - 1] = g[n - 1][n - 2] = -2
    elif kind == "D":
        if n < 4:
            raise ConfigurationError("D_n needs n >= 4")
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        g[n - 3][n - 1] = g[n - 1][n - 3] = -1
    elif kind == "G":
        if n != 2:
            raise ConfigurationError("only G2 is exceptional of type G")
        g = [[2, -3], [-3, 6]]
    else:
        raise ConfigurationError(f"unknown Dynkin type {kind!r}")
    return g


def parse_label(label: str) -> list[tuple[str, int]]:
    parts = [p.strip() for p in label.upper().split("X")]
    comps = []
    for p in parts:
        m = _COMPONENT.match(p)
        if not m:
            raise ConfigurationError(f"cannot parse root system label {label!r}")
        comps.append((m.group(1), int(m.group(2))))
    for kind, n in comps:
        if f"{kind}{n}" not in SUPPORTED:
            raise ConfigurationError(
                f"unsupported component {kind}{n}; supported: {', '.join(SUPPORTED)}")
    return comps


@dataclass(frozen=True)
class WeylElement:
    """Element of W; row i of `matrix` is the image of the i-th simple root."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def apply(self, v: Sequence) -> tuple:
        return vec_mat(v, self.matrix)

    @cached_property
    def inverse_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in inverse(self.matrix))

    def apply_inverse(self, v: Sequence) -> tuple:
        return vec_mat(v, self.inverse_matrix)

    def act_on_point(self, u: Sequence) -> tuple:
        """Contragredient action on V(S): <chi, w.u> = <w^-1 chi, u>."""
        return tuple(dot(row, u) for row in self.inverse_matrix)

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class ParabolicSubset:
    """A standard parabolic, given by its set Y of simple-root indices (0-based)."""

    y: frozenset[int] = frozenset()

    @classmethod
    def of(cls, indices: Iterable[int]) -> ParabolicSubset:
        return cls(frozenset(int(i) for i in indices))

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.y))

    def __repr__(self) -> str:
        return f"Y{{{','.join(str(i + 1) for i in self.sorted())}}}"


@dataclass(frozen=True)
class Parabolic:
    """The parabolic w.P_Y containing S; equality is equality of root sets."""

    y: frozenset[int]
    w: WeylElement = field(compare=False)
    roots: frozenset = field(repr=False)

    @property
    def standard(self) -> ParabolicSubset:
        return ParabolicSubset(self.y)


@dataclass(frozen=True)
class RootDatum:
    label: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    components: tuple[tuple[int, ...], ...]
    roots: tuple[tuple[int, ...], ...]

    # inner products and pairings

    def inner(self, a: Sequence, b: Sequence):
        g = self.gram
        n = self.rank
        return sum((a[i] * g[i][j] * b[j] for i in range(n) for j in range(n)
                    if a[i] and b[j]), 0)

    def coroot_pairing(self, mu: Sequence, beta: Sequence):
        """<mu, beta^vee> = 2 (mu|beta) / (beta|beta)."""
        return Fraction(2 * as_fraction(self.inner(mu, beta)), as_fraction(self.inner(beta, beta)))

    def simple_coroot_pairings(self, mu: Sequence) -> tuple:
        """(<mu, alpha_j^vee>)_j, i.e. fundamental-weight coordinates of mu."""
        return vec_mat(mu, self.cartan)

    def reflect(self, v: Sequence, j: int) -> tuple:
        c = sum((v[k] * self.cartan[k][j] for k in range(self.rank)), 0)
        return tuple(x - c if i == j else x for i, x in enumerate(v))

    def reflect_root(self, v: Sequence, beta: Sequence) -> tuple:
        c = self.coroot_pairing(v, beta)
        return tuple(x - c * b for x, b in zip(v, beta))

    def is_dominant(self, mu: Sequence) -> bool:
        return all(x >= 0 for x in self.simple_coroot_pairings(mu))

    # derived data

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(row) for row in inverse(self.cartan))

    @cached_property
    def fundamental_weights(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.cartan_inverse

    def from_fundamental(self, coeffs: Sequence) -> tuple[Fraction, ...]:
        return tuple(Fraction(x) for x in vec_mat([as_fraction(c) for c in coeffs],
                                                 self.cartan_inverse))

    @cached_property
    def rho(self) -> tuple[Fraction, ...]:
        return self.from_fundamental([1] * self.rank)

    @cached_property
    def point_metric(self) -> tuple[tuple[Fraction, ...], ...]:
        """W-invariant inner product on V(S) in coweight coordinates."""
        return tuple(tuple(row) for row in inverse(self.gram))

    def coroot_point(self, j: int) -> tuple[int, ...]:
        return tuple(self.cartan[i][j] for i in range(self.rank))

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r in self.roots if all(x >= 0 for x in r))

    @cached_property
    def root_set(self) -> frozenset:
        return frozenset(self.roots)

    @cached_property
    def weyl(self) -> tuple[WeylElement, ...]:
        return tuple(_enumerate_weyl(self))

    @cached_property
    def longest(self) -> WeylElement:
        return max(self.weyl, key=lambda w: w.length)

    def component_of(self, i: int) -> tuple[int, ...]:
        return next(c for c in self.components if i in c)

    def orthogonal(self, i: int, j: int) -> bool:
        return self.gram[i][j] == 0

    def dynkin_components(self, subset: Iterable[int]) -> list[frozenset[int]]:
        """Connected components of the Dynkin subgraph on `subset`."""
        rest = set(subset)
        comps = []
        while rest:
            start = min(rest)
            comp = {start}
            queue = deque([start])
            rest.discard(start)
            while queue:
                a = queue.popleft()
                for b in sorted(rest):
                    if self.gram[a][b] != 0:
                        rest.discard(b)
                        comp.add(b)
                        queue.append(b)
            comps.append(frozenset(comp))
        return comps

    def in_span_of(self, root: Sequence, y: Iterable[int]) -> bool:
        ys = set(y)
        return all(x == 0 for i, x in enumerate(root) if i not in ys)

    def height(self, v: Sequence):
        return sum(v, 0)

    def to_json(self) -> dict:
        return {"label": self.label,
                "cartan": [list(r) for r in self.cartan],
                "roots": [list(r) for r in self.roots]}


def build_root_datum(label: str) -> RootDatum:
    comps = parse_label(label)
    rank = sum(n for _, n in comps)
    gram = [[0] * rank for _ in range(rank)]
    blocks = []
    off = 0
    for kind, n in comps:
        g = _component_gram(kind, n)
        for i in range(n):
            for j in range(n):
                gram[off + i][off + j] = g[i][j]
        blocks.append(tuple(range(off, off + n)))
        off += n
    cartan = [[2 * gram[i][j] // gram[j][j] for j in range(rank)] for i in range(rank)]
    for i in range(rank):
        for j in range(rank):
            assert 2 * gram[i][j] == cartan[i][j] * gram[j][j]
    simple = tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))
    norm_label = "x".join(f"{k}{n}" for k, n in comps)
    rd = RootDatum(
        label=norm_label,
        rank=rank,
        cartan=tuple(map(tuple, cartan)),
        simple_roots=simple,
        gram=tuple(map(tuple, gram)),
        components=tuple(blocks),
        roots=(),
    )
    roots = _close_roots(rd)
    object.__setattr__(rd, "roots", roots)
    return rd


def _root_key(r: Sequence) -> tuple:
    return (-sum(r), tuple(-x for x in r))


def _close_roots(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    seen = set(rd.simple_roots)
    queue = deque(rd.simple_roots)
    while queue:
        r = queue.popleft()
        for j in range(rd.rank):
            s = tuple(int(x) for x in rd.reflect(r, j))
            if s not in seen:
                seen.add(s)
                queue.append(s)
            if len(seen) > 10_000:
                raise ConfigurationError("root closure did not terminate")
    return tuple(sorted(seen, key=_root_key))


def _enumerate_weyl(rd: RootDatum) -> list[WeylElement]:
    n = rd.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    out = [WeylElement((), ident)]
    seen = {ident}
    queue = deque(out)
    while queue:
        w = queue.popleft()
        m = w.matrix
        for j in range(n):
            # (w s_j)(alpha_i) = w(alpha_i) - cartan[i][j] w(alpha_j)
            new = tuple(
                tuple(m[i][k] - rd.cartan[i][j] * m[j][k] for k in range(n))
                for i in range(n))
            if new not in seen:
                seen.add(new)
                e = WeylElement(w.word + (j,), new)
                out.append(e)
                queue.append(e)
    return out


def weyl_elements(rd: RootDatum) -> list[WeylElement]:
    return list(rd.weyl)


def all_bases(rd: RootDatum) -> list[tuple[WeylElement, tuple[tuple[int, ...], ...]]]:
    return [(w, tuple(tuple(int(x) for x in w.apply(a)) for a in rd.simple_roots))
            for w in rd.weyl]


def levi_and_radical_roots(rd: RootDatum, q: ParabolicSubset | Parabolic):
    """(Levi roots, roots of the unipotent radical, roots of the opposite radical)."""
    y = q.y
    levi = frozenset(r for r in rd.roots if rd.in_span_of(r, y))
    rad = frozenset(r for r in rd.positive_roots if r not in levi)
    rad_op = frozenset(tuple(-x for x in r) for r in rad)
    if isinstance(q, Parabolic):
        w = q.w
        move = lambda s: frozenset(tuple(int(x) for x in w.apply(r)) for r in s)  # noqa: E731
        return move(levi), move(rad), move(rad_op)
    return levi, rad, rad_op


def parabolic_roots(rd: RootDatum, y: Iterable[int], w: WeylElement | None = None) -> frozenset:
    ys = frozenset(y)
    base = frozenset(r for r in rd.roots
                     if all(x >= 0 for x in r) or rd.in_span_of(r, ys))
    if w is None:
        return base
    return frozenset(tuple(int(x) for x in w.apply(r)) for r in base)


def standard_parabolic(rd: RootDatum, y: Iterable[int]) -> Parabolic:
    ys = frozenset(y)
    ident = rd.weyl[0]
    return Parabolic(ys, ident, parabolic_roots(rd, ys))


def parabolics_of_type(rd: RootDatum, y: Iterable[int]) -> list[Parabolic]:
    """All parabolics w.P_Y containing S, one per coset of W_Y."""
    ys = frozenset(y)
    out: dict[frozenset, Parabolic] = {}
    base = parabolic_roots(rd, ys)
    for w in rd.weyl:
        roots = frozenset(tuple(int(x) for x in w.apply(r)) for r in base)
        if roots not in out:
            out[roots] = Parabolic(ys, w, roots)
    return list(out.values())


def all_subsets(rank: int) -> list[frozenset[int]]:
    return [frozenset(i for i in range(rank) if mask >> i & 1) for mask in range(1 << rank)]


def all_parabolics(rd: RootDatum) -> list[Parabolic]:
    out = []
    for y in all_subsets(rd.rank):
        out.extend(parabolics_of_type(rd, y))
    return out


def as_parabolic(rd: RootDatum, q: ParabolicSubset | Parabolic | Iterable[int]) -> Parabolic:
    if isinstance(q, Parabolic):
        return q
    if isinstance(q, ParabolicSubset):
        return standard_parabolic(rd, q.y)
    return standard_parabolic(rd, q)


def validate_subset(rd: RootDatum, y: Iterable[int]) -> frozenset[int]:
    ys = frozenset(int(i) for i in y)
    bad = [i for i in ys if not 0 <= i < rd.rank]
    if bad:
        raise ConfigurationError(f"simple-root indices out of range for {rd.label}: {bad}")
    return ys
