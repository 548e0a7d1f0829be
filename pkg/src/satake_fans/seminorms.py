"""Diagonal seminorms on k^{d+1} in exponent form.

A seminorm is recorded by exponents: the value on e_i is q^{exps[i]}, and
``NEG_INF`` encodes the value 0. Exponents are rational. For the domination
check the field is Q with the 2-adic absolute value, so q = 2 and the
exponent of a coefficient c is -v_2(c).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import NEG_INF, as_fraction, ceil_fraction, inverse

P_ADIC_PRIME = 2


class SeminormError(ValueError):
    """Domain or precondition error for seminorm operations."""


def _exp(x):
    if isinstance(x, float) and x == NEG_INF:
        return NEG_INF
    if isinstance(x, str) and x.strip() == "-inf":
        return NEG_INF
    return as_fraction(x)


def is_neg_inf(x) -> bool:
    return isinstance(x, float) and x == NEG_INF


@dataclass(frozen=True)
class DiagSeminorm:
    exps: tuple
    basis_tag: str = "standard"

    def __post_init__(self):
        exps = tuple(_exp(x) for x in self.exps)
        if not exps:
            raise SeminormError("empty exponent vector")
        if all(is_neg_inf(x) for x in exps):
            raise SeminormError("the zero seminorm is excluded")
        object.__setattr__(self, "exps", exps)

    @property
    def dim(self) -> int:
        return len(self.exps)

    def normalized(self) -> SeminormClass:
        return SeminormClass.of(self.exps)


@dataclass(frozen=True)
class SeminormClass:
    """Homothety class, stored with maximal exponent 0."""

    exps: tuple

    @classmethod
    def of(cls, exps: Sequence) -> SeminormClass:
        vals = tuple(_exp(x) for x in exps)
        finite = [x for x in vals if not is_neg_inf(x)]
        if not finite:
            raise SeminormError("the zero seminorm has no class")
        top = max(finite)
        return cls(tuple(x if is_neg_inf(x) else x - top for x in vals))

    @property
    def dim(self) -> int:
        return len(self.exps)

    def kernel(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.exps) if is_neg_inf(x))


@dataclass(frozen=True)
class ValuedPolynomial:
    """Polynomial recorded by coefficient exponents: term nu has |a_nu| = q^terms[nu]."""

    terms: Mapping[tuple[int, ...], object]

    def __post_init__(self):
        object.__setattr__(self, "terms", {tuple(k): _exp(v) for k, v in dict(self.terms).items()})

    @classmethod
    def monomial(cls, nu: Sequence[int], val=0) -> ValuedPolynomial:
        return cls({tuple(nu): val})


# evaluation

def eval_vector(x: DiagSeminorm, coeff_vals: Sequence):
    if len(coeff_vals) != x.dim:
        raise SeminormError("dimension mismatch")
    return max(_exp(c) + e for c, e in zip(coeff_vals, x.exps))


def _monomial_value(exps: Sequence, nu: Sequence[int]):
    total = Fraction(0)
    for e, n in zip(exps, nu):
        if n:
            if is_neg_inf(e):
                return NEG_INF
            total += n * e
    return total


def eval_polynomial_j(x: DiagSeminorm, p: ValuedPolynomial):
    """Value of the monomial multiplicative seminorm j(x) on p."""
    if not p.terms:
        return NEG_INF
    return max(_exp(v) + _monomial_value(x.exps, nu) for nu, v in p.terms.items())


def kernel_and_stratum(x: DiagSeminorm) -> tuple[frozenset[int], str]:
    ker = frozenset(i for i, e in enumerate(x.exps) if is_neg_inf(e))
    if not ker:
        return ker, "norms"
    quotient = x.dim - len(ker)
    if quotient == 1:
        return ker, "point"
    return ker, f"building of PGL(V/W), dim V/W = {quotient}"


@dataclass(frozen=True)
class CanonicalForm:
    seminorm: DiagSeminorm
    permutation: tuple[int, ...]
    shift: int


def _desc_key(i_e):
    i, e = i_e
    return (1, 0, i) if is_neg_inf(e) else (0, -e, i)


def canonical_representative(x: DiagSeminorm) -> CanonicalForm:
    """Sort exponents descending and shift by an integer so the top lies in (0, 1].

    Output entry i is input entry permutation[i] minus `shift`.
    """
    order = sorted(enumerate(x.exps), key=_desc_key)
    perm = tuple(i for i, _ in order)
    top = order[0][1]
    shift = ceil_fraction(top) - 1
    exps = tuple(e if is_neg_inf(e) else e - shift for _, e in order)
    return CanonicalForm(DiagSeminorm(exps, x.basis_tag), perm, shift)


def in_window(x: DiagSeminorm) -> bool:
    e = x.exps
    if is_neg_inf(e[0]) or not (0 < e[0] <= 1):
        return False
    return all(is_neg_inf(b) or (not is_neg_inf(a) and a >= b) for a, b in zip(e, e[1:]))


def exterior_invariant(x: DiagSeminorm, m: int):
    if not 1 <= m <= x.dim:
        raise SeminormError(f"m = {m} out of range 1..{x.dim}")
    top = sorted(x.exps, key=lambda e: (is_neg_inf(e), 0 if is_neg_inf(e) else -e))[:m]
    if any(is_neg_inf(e) for e in top):
        return NEG_INF
    return sum(top, Fraction(0))


@dataclass(frozen=True)
class MonomialElement:
    """Monomial matrix: e_i -> unit * pi^{nu_{w(i)}} e_{w(i)}; units do not change values."""

    permutation: tuple[int, ...]
    nu: tuple[int, ...]

    @classmethod
    def identity(cls, dim: int) -> MonomialElement:
        return cls(tuple(range(dim)), (0,) * dim)

    def inverse_permutation(self) -> tuple[int, ...]:
        inv = [0] * len(self.permutation)
        for i, j in enumerate(self.permutation):
            inv[j] = i
        return tuple(inv)


def monomial_action(g: MonomialElement, x: DiagSeminorm) -> DiagSeminorm:
    """exps'[i] = exps[w^{-1}(i)] + nu_i."""
    if len(g.permutation) != x.dim or len(g.nu) != x.dim:
        raise SeminormError("dimension mismatch")
    if sorted(g.permutation) != list(range(x.dim)):
        raise SeminormError("not a permutation")
    inv = g.inverse_permutation()
    return DiagSeminorm(tuple(x.exps[inv[i]] + g.nu[i] for i in range(x.dim)), x.basis_tag)


# sequences

@dataclass(frozen=True)
class LogAffineSequence:
    """|e_i|(z_n) = q^{a_i + n b_i}."""

    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b) or not self.a:
            raise SeminormError("a and b must be nonempty and of equal length")
        object.__setattr__(self, "a", tuple(as_fraction(x) for x in self.a))
        object.__setattr__(self, "b", tuple(as_fraction(x) for x in self.b))

    def exponents_at(self, n) -> tuple:
        return tuple(a + n * b for a, b in zip(self.a, self.b))


@dataclass(frozen=True)
class SequenceLimitReport:
    permutation: tuple[int, ...]
    index_set_I: tuple[int, ...]
    limit: SeminormClass
    distinguished: bool = True


def classify_sequence(s: LogAffineSequence) -> SequenceLimitReport:
    idx = range(len(s.a))
    perm = tuple(sorted(idx, key=lambda i: (-s.b[i], -s.a[i], i)))
    top = max(s.b)
    index_set = tuple(i for i in idx if s.b[i] == top)
    ref = index_set[0]
    exps = [s.a[j] - s.a[ref] if j in index_set else NEG_INF for j in idx]
    return SequenceLimitReport(perm, index_set, SeminormClass.of(exps))


def numeric_profile(s: LogAffineSequence, n: int, q: float = 2.0) -> list[float]:
    """|e_i|(z_n) / max_j |e_j|(z_n), computed from exact exponents."""
    ex = s.exponents_at(n)
    top = max(ex)
    return [q ** float(e - top) for e in ex]


def class_profile(c: SeminormClass, q: float = 2.0) -> list[float]:
    return [0.0 if is_neg_inf(e) else q ** float(e) for e in c.exps]


# stabilizers

@dataclass(frozen=True)
class StabilizerDescription:
    kernel_indices: frozenset[int]
    quotient_rank: int
    is_vertex: bool
    block_shape: str


def stabilizer_description(x: DiagSeminorm) -> StabilizerDescription:
    ker, _ = kernel_and_stratum(x)
    finite = [e for e in x.exps if not is_neg_inf(e)]
    m = len(finite)
    vertex = all((e - finite[0]).denominator == 1 for e in finite)
    w = len(ker)
    if vertex:
        top = f"k^x.GL({m},k°) on V/W (conjugated by a diagonal matrix)"
    else:
        top = f"bounded {m}x{m} block fixing the lattice chain of V/W"
    if w:
        shape = f"{top}; GL({w},k) on W; arbitrary block Hom(V/W, W); zero block Hom(W, V/W)"
    else:
        shape = top
    return StabilizerDescription(ker, m, vertex, shape)


# domination

def valuation(c: Fraction, p: int = P_ADIC_PRIME) -> int:
    if c == 0:
        raise SeminormError("valuation of 0")
    c = as_fraction(c)
    v = 0
    num, den = c.numerator, c.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def coeff_exponent(c) -> object:
    """Exponent of |c| for the p-adic absolute value: -v_p(c), or -inf for 0."""
    c = as_fraction(c)
    return NEG_INF if c == 0 else Fraction(-valuation(c))


@dataclass(frozen=True)
class BasisMonomialSeminorm:
    """Multiplicative seminorm monomial in the basis f_i = sum_j basis[i][j] e_j."""

    basis: tuple[tuple[Fraction, ...], ...]
    exps: tuple
    _inverse: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        b = tuple(tuple(as_fraction(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", b)
        object.__setattr__(self, "exps", tuple(_exp(x) for x in self.exps))
        object.__setattr__(self, "_inverse", tuple(tuple(r) for r in inverse(b)))

    @property
    def dim(self) -> int:
        return len(self.exps)

    def to_f_coords(self, v: Sequence) -> tuple:
        """Coordinates in f of the vector with e-coordinates v."""
        inv = self._inverse
        n = self.dim
        return tuple(sum((as_fraction(v[j]) * inv[j][i] for j in range(n)), Fraction(0))
                     for i in range(n))

    def eval_vector(self, v: Sequence):
        c = self.to_f_coords(v)
        return max(coeff_exponent(ci) + e for ci, e in zip(c, self.exps))

    def eval_polynomial(self, poly: Mapping[tuple[int, ...], Fraction]):
        """Value on a polynomial in the e-variables with rational coefficients."""
        expanded = expand_in_basis(poly, self._inverse)
        if not expanded:
            return NEG_INF
        return max(coeff_exponent(c) + _monomial_value(self.exps, mu)
                   for mu, c in expanded.items())


def expand_in_basis(poly: Mapping[tuple[int, ...], Fraction], inv) -> dict:
    """Rewrite a polynomial in e-variables in terms of f, where e_j = sum_i inv[j][i] f_i."""
    n = len(inv)
    out: dict = {}
    for nu, coef in poly.items():
        terms = {(0,) * n: as_fraction(coef)}
        for j, power in enumerate(nu):
            for _ in range(power):
                nxt: dict = {}
                for mu, c in terms.items():
                    for i in range(n):
                        if inv[j][i] == 0:
                            continue
                        m2 = list(mu)
                        m2[i] += 1
                        key = tuple(m2)
                        nxt[key] = nxt.get(key, 0) + c * inv[j][i]
                terms = nxt
        for mu, c in terms.items():
            out[mu] = out.get(mu, 0) + c
    return {mu: c for mu, c in out.items() if c != 0}


def tau(z: BasisMonomialSeminorm) -> DiagSeminorm:
    """Restriction of z to V, read on the standard basis vectors."""
    n = z.dim
    return DiagSeminorm(tuple(z.eval_vector([int(i == j) for j in range(n)]) for i in range(n)))


def _test_vectors(n: int) -> list[tuple[Fraction, ...]]:
    vals = [Fraction(0), Fraction(1), Fraction(-1), Fraction(P_ADIC_PRIME),
            Fraction(1, P_ADIC_PRIME), Fraction(3)]
    out = []
    for v in itertools.product(vals, repeat=n):
        if any(v):
            out.append(v)
    return out


def restriction_is_diagonal(z: BasisMonomialSeminorm, x: DiagSeminorm) -> bool:
    for v in _test_vectors(z.dim):
        lhs = z.eval_vector(v)
        rhs = max(coeff_exponent(c) + e for c, e in zip(v, x.exps))
        if lhs != rhs:
            return False
    return True


def monomials_up_to(n: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), d):
            nu = [0] * n
            for i in combo:
                nu[i] += 1
            out.append(tuple(nu))
    return out


def domination_failures(z: BasisMonomialSeminorm, x: DiagSeminorm, sample_polys) -> list:
    """Sample polynomials (in the e-variables) on which z exceeds j(x)."""
    bad = []
    for poly in sample_polys:
        lhs = z.eval_polynomial(poly)
        rhs = max((coeff_exponent(c) + _monomial_value(x.exps, nu) for nu, c in poly.items()),
                  default=NEG_INF)
        if lhs > rhs:
            bad.append(poly)
    return bad


def monomial_samples(dim: int, degree: int = 3) -> list[dict]:
    return [{nu: Fraction(1)} for nu in monomials_up_to(dim, degree)]


def domination_check(x: DiagSeminorm, z: BasisMonomialSeminorm, sample_polys=None) -> bool:
    """z <= j(tau(z)) on every sample polynomial, after checking tau(z) = x."""
    if z.dim != x.dim:
        raise SeminormError("dimension mismatch")
    if tau(z).exps != x.exps or not restriction_is_diagonal(z, x):
        raise SeminormError("tau(z) does not agree with x")
    if sample_polys is None:
        sample_polys = monomial_samples(x.dim)
    return not domination_failures(z, x, sample_polys)


def sheared_monomial(exps: Sequence, shear: Sequence[Sequence[int]],
                     order: Sequence[int]) -> tuple[BasisMonomialSeminorm, DiagSeminorm]:
    """Monomial seminorm whose restriction to V is the diagonal seminorm `exps`.

    The basis is f_k = e_{s(k)} + sum_{l > k} shear[k][l] e_{s(l)}, where s lists
    the indices by decreasing exponent; rows are then reordered by `order`.
    An integral unitriangular change between bases ordered by decreasing
    exponent leaves the restricted seminorm diagonal.
    """
    n = len(exps)
    vals = [_exp(e) for e in exps]
    s = sorted(range(n), key=lambda i: (is_neg_inf(vals[i]), 0 if is_neg_inf(vals[i]) else -vals[i], i))
    rows = []
    zexps = []
    for k in range(n):
        row = [Fraction(0)] * n
        row[s[k]] = Fraction(1)
        for l in range(k + 1, n):
            row[s[l]] += int(shear[k][l])
        rows.append(tuple(row))
        zexps.append(vals[s[k]])
    rows = [rows[i] for i in order]
    zexps = [zexps[i] for i in order]
    return BasisMonomialSeminorm(tuple(rows), tuple(zexps)), DiagSeminorm(tuple(vals))


def isclose_profiles(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    return all(math.isclose(x, y, rel_tol=0, abs_tol=tol) for x, y in zip(a, b))
