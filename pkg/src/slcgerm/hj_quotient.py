"""Cyclic quotient surface singularities 1/n(1,a) and their resolution chains."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import InvalidParameters, WeightBelowTwo
from .exact_arith import RationalMatrix, solve_linear_system


@dataclass(frozen=True, order=True)
class CyclicQuotient:
    n: int
    a: int

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.a < self.n or gcd(self.n, self.a) != 1:
            raise InvalidParameters(f"1/{self.n}(1,{self.a}) is not a valid cyclic quotient type")

    def __str__(self):
        return f"1/{self.n}(1,{self.a})"


@dataclass(frozen=True)
class HJChain:
    """Hirzebruch-Jung chain; curve i has self-intersection ``-weights[i]``.

    ``weights[0]`` is the curve met by an FC_1 curve.
    """

    weights: tuple[int, ...]
    marks: tuple[str | None, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.weights:
            raise InvalidParameters("empty chain")
        if any(b < 2 for b in self.weights):
            raise WeightBelowTwo(f"chain {list(self.weights)} has a weight below 2")

    def reversed(self) -> "HJChain":
        return HJChain(tuple(reversed(self.weights)))

    def intersection_matrix(self) -> RationalMatrix:
        m = len(self.weights)
        return RationalMatrix(
            [[-self.weights[i] if i == j else int(abs(i - j) == 1) for j in range(m)] for i in range(m)]
        )

    def __str__(self):
        return "[" + ",".join(str(b) for b in self.weights) + "]"


def hj_expand(q: CyclicQuotient) -> HJChain:
    """Continued fraction n/a = b1 - 1/(b2 - ...)."""
    n, a = q.n, q.a
    weights = []
    while a:
        b = -(-n // a)
        weights.append(b)
        n, a = a, b * a - n
    return HJChain(tuple(weights))


def chain_value(weights) -> Fraction:
    weights = list(weights)
    if not weights:
        raise InvalidParameters("empty chain")
    if any(b < 2 for b in weights):
        raise WeightBelowTwo(f"chain {weights} has a weight below 2")
    acc = Fraction(weights[-1])
    for b in reversed(weights[:-1]):
        acc = b - 1 / acc
    return acc


def chain_to_type(c: HJChain | tuple | list) -> CyclicQuotient:
    weights = c.weights if isinstance(c, HJChain) else tuple(c)
    v = chain_value(weights)
    return CyclicQuotient(v.numerator, v.denominator)


def conjugate_type(q: CyclicQuotient) -> CyclicQuotient:
    return CyclicQuotient(q.n, pow(q.a, -1, q.n))


def discrepancy_vector(q: CyclicQuotient) -> list[Fraction]:
    """Coefficients d with K_U = f*K + sum d_i E_i, along hj_expand(q)."""
    chain = hj_expand(q)
    rhs = [b - 2 for b in chain.weights]  # K.E_j = -2 - E_j^2
    return solve_linear_system(chain.intersection_matrix(), rhs)


def diff_closed_form(n: int) -> Fraction:
    if n < 1:
        raise InvalidParameters("n must be at least 1")
    return 1 - Fraction(1, n)


@dataclass(frozen=True)
class SltBlowupFacts:
    """Facts about the divisorial contraction over a 1/n(a,-a,1) point.

    ``e_singularities`` are raw ``(n, b)`` labels for 1/n(1,b); for even n they
    need not be coprime.
    """

    n: int
    a: int
    e_singularities: tuple[tuple[int, int], tuple[int, int]]
    y_singularities: tuple[str, str]
    ky_dot_f: Fraction

    def e_types(self) -> list[CyclicQuotient | None]:
        out = []
        for n, b in self.e_singularities:
            out.append(CyclicQuotient(n, b) if 1 <= b < n and gcd(n, b) == 1 else None)
        return out

    def e_labels(self) -> list[str]:
        return [f"1/{n}(1,{b})" for n, b in self.e_singularities]


def slt_blowup_facts(n: int, a: int) -> SltBlowupFacts:
    if n < 2 or not 1 <= a < n or gcd(n, a) != 1:
        raise InvalidParameters(f"slt parameters n={n}, a={a} are invalid")
    e = ((n, (2 * a) % n), (n, (-2 * a) % n))
    y = (f"1/{n}({a % n},{(-2 * a) % n},1)", f"1/{n}({(-a) % n},{(2 * a) % n},1)")
    ky = Fraction(-1, n) if n % 2 else Fraction(-2, n)
    return SltBlowupFacts(n, a, e, y, ky)


@dataclass(frozen=True)
class OdpBlowupFacts:
    fiber_components: int
    fiber_meeting: str
    y_singularity: str
    e_singularity: str
    ky_dot_fi: Fraction
    fhat_sq: Fraction


def odp_blowup_facts() -> OdpBlowupFacts:
    return OdpBlowupFacts(
        fiber_components=2,
        fiber_meeting="transversal",
        y_singularity="1/2(1,1,1)",
        e_singularity="(xy-z^2=0)",
        ky_dot_fi=Fraction(-1, 2),
        fhat_sq=Fraction(-1, 2),
    )
