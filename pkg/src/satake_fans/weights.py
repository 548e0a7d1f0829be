"""Weight systems of irreducible representations and admissible subsets.

Weights are vectors in simple-root coordinates. Only the set of weights is
tracked, never multiplicities.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cones import RationalCone
from .fans import cone_Ct_of_Q, is_t_relevant, smallest_t_relevant
from .linalg import as_fraction, ceil_fraction
from .rootsys import ParabolicSubset, RootDatum, WeylElement, all_subsets


class WeightError(ValueError):
    """Domain error for weight computations."""


@dataclass(frozen=True)
class HighestWeight:
    lam: tuple[Fraction, ...]

    @classmethod
    def from_fundamental(cls, rd: RootDatum, coeffs: Sequence[int]) -> HighestWeight:
        if len(coeffs) != rd.rank:
            raise WeightError(f"need {rd.rank} fundamental-weight coefficients")
        if any(int(c) != c or c < 0 for c in coeffs):
            raise WeightError("highest weight must be a nonnegative integer combination")
        return cls(rd.from_fundamental(coeffs))

    def fundamental(self, rd: RootDatum) -> tuple[Fraction, ...]:
        return rd.simple_coroot_pairings(self.lam)


@dataclass(frozen=True)
class WeightSystem:
    highest: HighestWeight
    weights: tuple[tuple[Fraction, ...], ...]
    label: str = ""

    def __contains__(self, mu) -> bool:
        return tuple(as_fraction(x) for x in mu) in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_set_cache")
        if s is None:
            s = frozenset(self.weights)
            object.__setattr__(self, "_set_cache", s)
        return s

    @property
    def lam(self) -> tuple[Fraction, ...]:
        return self.highest.lam


def weight_order_key(mu: Sequence) -> tuple:
    """Descending by height, then lexicographically descending."""
    return (-sum(mu), tuple(-x for x in mu))


def weight_system(rd: RootDatum, hw: HighestWeight) -> WeightSystem:
    lam = tuple(as_fraction(x) for x in hw.lam)
    fund = rd.simple_coroot_pairings(lam)
    if any(x < 0 or x.denominator != 1 for x in fund):
        raise WeightError(f"highest weight {lam} is not dominant integral")
    low = rd.longest.apply(lam)
    span = [lam[i] - low[i] for i in range(rd.rank)]
    dominant = []
    for n in itertools.product(*(range(int(c) + 1) for c in span)):
        mu = tuple(lam[i] - n[i] for i in range(rd.rank))
        if rd.is_dominant(mu):
            dominant.append(mu)
    out = set()
    for mu in dominant:
        for w in rd.weyl:
            out.add(tuple(Fraction(x) for x in w.apply(mu)))
    return WeightSystem(HighestWeight(lam), tuple(sorted(out, key=weight_order_key)), rd.label)


def _difference(rd: RootDatum, hw, mu) -> tuple[Fraction, ...]:
    lam = hw.lam if isinstance(hw, (HighestWeight, WeightSystem)) else hw
    return tuple(as_fraction(a) - as_fraction(b) for a, b in zip(lam, mu))


def support(rd: RootDatum, hw, mu: Sequence) -> frozenset[int]:
    diff = _difference(rd, hw, mu)
    if any(x < 0 or x.denominator != 1 for x in diff):
        raise WeightError(f"{tuple(mu)} is not below the highest weight")
    return frozenset(i for i, x in enumerate(diff) if x > 0)


def highest_weight_wrt_basis(rd: RootDatum, ws: WeightSystem, w: WeylElement) -> tuple:
    """w(lambda_0), cross-checked against the unique maximal w(Delta)-dominant weight."""
    image = tuple(Fraction(x) for x in w.apply(ws.lam))
    basis = [w.apply(a) for a in rd.simple_roots]
    dom = [mu for mu in ws.weights if all(rd.coroot_pairing(mu, b) >= 0 for b in basis)]

    def below(mu, nu):
        # nu - mu is a nonzero nonnegative combination of w(Delta)
        diff = w.apply_inverse(tuple(a - b for a, b in zip(nu, mu)))
        return any(diff) and all(x >= 0 for x in diff)

    top = [mu for mu in dom if not any(below(mu, nu) for nu in dom)]
    if top != [image]:
        raise RuntimeError(f"no unique maximal dominant weight for basis {basis}: {top}")
    return image


def z_set(rd: RootDatum, ws: WeightSystem) -> frozenset[int]:
    return frozenset(i for i in range(rd.rank) if rd.inner(ws.lam, rd.simple_roots[i]) == 0)


def _graph_connected(rd: RootDatum, ws: WeightSystem, y: frozenset[int]) -> bool:
    lam = ws.lam
    reached = {i for i in y if rd.inner(lam, rd.simple_roots[i]) != 0}
    frontier = list(reached)
    while frontier:
        a = frontier.pop()
        for b in y:
            if b not in reached and rd.gram[a][b] != 0:
                reached.add(b)
                frontier.append(b)
    return reached == set(y)


def _components_meet_complement(rd: RootDatum, ws: WeightSystem, y: frozenset[int]) -> bool:
    z = z_set(rd, ws)
    return all(comp - z for comp in rd.dynkin_components(y))


def is_admissible_graph(rd: RootDatum, ws: WeightSystem, y) -> bool:
    ys = frozenset(y.y if isinstance(y, ParabolicSubset) else y)
    connected = _graph_connected(rd, ws, ys)
    meets = _components_meet_complement(rd, ws, ys)
    if connected != meets:
        raise RuntimeError(f"connectivity criteria disagree on {sorted(ys)}")
    return connected


def is_admissible_support(rd: RootDatum, ws: WeightSystem, y):
    ys = frozenset(y.y if isinstance(y, ParabolicSubset) else y)
    for mu in ws.weights:
        if support(rd, ws.highest, mu) == ys:
            return True, mu
    return False, None


@dataclass(frozen=True)
class AdmissibleSet:
    y: frozenset[int]
    witness: tuple | None = None


@dataclass(frozen=True)
class ReflectionWitness:
    sequence: tuple[int, ...]
    weight: tuple[Fraction, ...]
    prefix_supports: tuple[frozenset[int], ...] = field(repr=False)


def reflection_witness(rd: RootDatum, ws: WeightSystem, y) -> ReflectionWitness:
    """Order Y so each root touches lambda_0 or an earlier root, then reflect.

    After each reflection the support of lambda_0 minus the current weight is
    checked to be exactly the processed prefix.
    """
    ys = frozenset(y.y if isinstance(y, ParabolicSubset) else y)
    if not is_admissible_graph(rd, ws, ys):
        raise WeightError(f"{sorted(ys)} is not admissible")
    lam = ws.lam
    order: list[int] = []
    for comp in rd.dynkin_components(ys):
        start = min(i for i in comp if rd.inner(lam, rd.simple_roots[i]) != 0)
        seen = [start]
        k = 0
        while k < len(seen):
            a = seen[k]
            for b in sorted(comp):
                if b not in seen and rd.gram[a][b] != 0:
                    seen.append(b)
            k += 1
        order.extend(seen)
    mu = lam
    prefixes = []
    for step, j in enumerate(order):
        mu = rd.reflect(mu, j)
        sup = support(rd, lam, mu)
        if sup != frozenset(order[:step + 1]):
            raise RuntimeError(f"prefix support check failed at step {step}: {sorted(sup)}")
        prefixes.append(sup)
    if tuple(mu) not in ws._set:
        raise RuntimeError("reflected weight left the weight system")
    return ReflectionWitness(tuple(order), tuple(mu), tuple(prefixes))


def y_star(rd: RootDatum, ws: WeightSystem, y) -> frozenset[int]:
    ys = frozenset(y.y if isinstance(y, ParabolicSubset) else y)
    z = z_set(rd, ws)
    return frozenset(a for a in z if all(rd.gram[a][b] == 0 for b in ys))


def cone_CY(rd: RootDatum, ws: WeightSystem, y) -> RationalCone:
    """{<alpha, u> = 0 on Y, <lambda_0 - lambda, u> >= 0 when supp(lambda_0 - lambda) is not in Y}."""
    ys = frozenset(y.y if isinstance(y, ParabolicSubset) else y)
    eqs = [rd.simple_roots[i] for i in sorted(ys)]
    ineqs = []
    for mu in ws.weights:
        if not support(rd, ws.highest, mu) <= ys:
            ineqs.append(tuple(b - a for a, b in zip(ws.lam, mu)))
    return RationalCone.from_inequalities(rd.rank, ineqs, eqs)


def dual_highest_weight(rd: RootDatum, ws: WeightSystem) -> tuple[Fraction, ...]:
    return tuple(-x for x in rd.longest.apply(ws.lam))


@dataclass(frozen=True)
class RepTypes:
    tau: ParabolicSubset
    t_rho: ParabolicSubset
    t_rho_check: ParabolicSubset


def rep_types(rd: RootDatum, ws: WeightSystem) -> RepTypes:
    z = z_set(rd, ws)
    dual = dual_highest_weight(rd, ws)
    z_dual = frozenset(i for i in range(rd.rank) if rd.inner(dual, rd.simple_roots[i]) == 0)
    return RepTypes(ParabolicSubset(z), ParabolicSubset(z), ParabolicSubset(z_dual))


def is_faithful_shadow(rd: RootDatum, ws: WeightSystem) -> bool:
    """lambda_0 pairs nontrivially with some simple root of every Dynkin component."""
    lam = ws.lam
    return all(any(rd.inner(lam, rd.simple_roots[i]) != 0 for i in comp)
               for comp in rd.components)


def admissible_sets(rd: RootDatum, ws: WeightSystem) -> list[AdmissibleSet]:
    out = []
    for y in all_subsets(rd.rank):
        ok, mu = is_admissible_support(rd, ws, y)
        if ok:
            out.append(AdmissibleSet(y, mu))
    return out


@dataclass
class CYComparison:
    label: str
    tau: frozenset[int]
    admissible: list[frozenset[int]]
    cone_mismatches: list[tuple] = field(default_factory=list)
    image: list[frozenset[int]] = field(default_factory=list)
    relevant: list[frozenset[int]] = field(default_factory=list)
    bijection_ok: bool = False
    smallest_relevant_ok: bool = False

    @property
    def passed(self) -> bool:
        return not self.cone_mismatches and self.bijection_ok and self.smallest_relevant_ok


def compare_CY_fan_with_Ft(rd: RootDatum, ws: WeightSystem) -> CYComparison:
    if not is_faithful_shadow(rd, ws):
        warnings.warn("highest weight is orthogonal to a whole component; "
                      "the representation is not faithful", stacklevel=2)
    tau = z_set(rd, ws)
    adm = [a.y for a in admissible_sets(rd, ws)]
    rep = CYComparison(rd.label, tau, adm)
    for y in adm:
        lhs = cone_CY(rd, ws, y)
        rhs = cone_Ct_of_Q(rd, tau, ParabolicSubset(y))
        if lhs != rhs:
            rep.cone_mismatches.append((sorted(y), lhs, rhs))
    rep.image = [y | y_star(rd, ws, y) for y in adm]
    rep.relevant = [y for y in all_subsets(rd.rank) if is_t_relevant(rd, tau, y)]
    rep.bijection_ok = (len(set(rep.image)) == len(rep.image)
                        and set(rep.image) == set(rep.relevant))
    rep.smallest_relevant_ok = all(
        smallest_t_relevant(rd, tau, y).y == img for y, img in zip(adm, rep.image))
    return rep


def lowest_support_singletons(rd: RootDatum, ws: WeightSystem) -> bool:
    """For every simple root outside Z some weight has support exactly that root."""
    z = z_set(rd, ws)
    sups = {support(rd, ws.highest, mu) for mu in ws.weights}
    return all(frozenset([a]) in sups for a in range(rd.rank) if a not in z)


def bound_box(rd: RootDatum, hw: HighestWeight) -> int:
    low = rd.longest.apply(hw.lam)
    size = 1
    for a, b in zip(hw.lam, low):
        size *= ceil_fraction(as_fraction(a) - as_fraction(b)) + 1
    return size


def fundamental_and_rho(rd: RootDatum) -> list[tuple[str, HighestWeight]]:
    out = []
    for i in range(rd.rank):
        coeffs = [int(j == i) for j in range(rd.rank)]
        out.append((f"omega{i + 1}", HighestWeight.from_fundamental(rd, coeffs)))
    out.append(("rho", HighestWeight.from_fundamental(rd, [1] * rd.rank)))
    return out


def weights_in_fundamental(rd: RootDatum, ws: WeightSystem) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in rd.simple_coroot_pairings(mu)) for mu in ws.weights]


def conjugate_subset(rd: RootDatum, w: WeylElement, y: Iterable[int]) -> frozenset:
    return frozenset(tuple(int(x) for x in w.apply(rd.simple_roots[i])) for i in y)
