"""Closed-form point invariants and their values at infinite parameters."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from ..errors import InvalidParameters
from ..exact_arith import ExtRational, MPoly, RationalFunction, RationalMatrix, solve_linear_system
from .types import (
    CLASS_C1,
    CLASS_C2,
    CLASS_M,
    CLASS_NC,
    CLASS_PINCH,
    CLASS_SLT,
    CLASS_U3,
    CLASS_V4,
    CLASS_W4,
    DegCusp3,
    DegCusp4,
    census_class,
    germ_triple,
    is_inf,
    v4_triple,
)

P = RationalFunction(MPoly.var("p"))
Q = RationalFunction(MPoly.var("q"))
R = RationalFunction(MPoly.var("r"))
ONE = RationalFunction(1)

# T3_{p,q}
ALPHA3 = 1 + (P + Q) / (P * Q + P + Q)
F3_SQ = -1 - 1 / P - 1 / Q
C_DOT_F3 = 1 / P + 1 / Q
BETA3 = -1 + 1 / P + 1 / Q
DELTA3 = (P + Q) ** 2 / (P * Q * (P + Q + P * Q))

# T4_{p,q,r}
ALPHA4 = (R * (P + Q) - 4) / (R * P * Q - P - Q)
F1_SQ = -1 - 1 / (P - 2) + (2 * R - 3) / (4 * R - 4)
F2_SQ = -1 - 1 / (Q - 2) + (2 * R - 3) / (4 * R - 4)
F1_DOT_F2 = 1 / (4 * R - 4)
C_DOT_F1 = 1 / (P - 2)
C_DOT_F2 = 1 / (Q - 2)
BETA4 = -1 + 1 / (P - 2) + 1 / (Q - 2)
DELTA4 = 1 / (P - 2) + 1 / (Q - 2) - ALPHA4

# T4_{2,q,r}, q >= 3
BETA4_PRIME = 1 / (Q - 2) - (2 * R - 3) / (4 * R - 4)
DELTA4_PRIME = (4 * R + Q - 6) ** 2 / (4 * (2 * R * Q - Q - 2) * (R - 1) * (Q - 2))

LIMIT_ORDER = ("p", "q", "r")


def evaluate(form: RationalFunction, p=None, q=None, r=None, order=LIMIT_ORDER) -> ExtRational:
    """Substitute the finite parameters, then send the infinite ones to +inf in ``order``."""
    values = {"p": p, "q": q, "r": r}
    f = form
    pending = []
    for name in order:
        v = values[name]
        if v is None:
            continue
        if is_inf(v):
            pending.append(name)
        else:
            f = f.substitute(name, v)
    return f.iterated_limit(pending)


def evaluate_finite(form: RationalFunction, p=None, q=None, r=None, order=LIMIT_ORDER) -> Fraction:
    value = evaluate(form, p, q, r, order)
    if not value.is_finite:
        raise InvalidParameters("closed form diverges at these parameters")
    return value.value


def alpha3(p, q) -> Fraction:
    DegCusp3(p, q)
    return evaluate_finite(ALPHA3, p=p, q=q)


def alpha4(p, q, r) -> Fraction:
    DegCusp4(p, q, r)
    return evaluate_finite(ALPHA4, p=p, q=q, r=r)


def order_invariant(form: RationalFunction, p, q, r) -> bool:
    """True when every order of the infinite limits gives the same value."""
    values = {evaluate(form, p, q, r, order) for order in permutations(LIMIT_ORDER)}
    return len(values) == 1


@dataclass(frozen=True)
class PointInvariants:
    beta: Fraction
    delta: Fraction
    alpha: Fraction
    census_class: str


def point_invariants(t, role: str | None = None) -> PointInvariants:
    cls = census_class(t, role)
    zero = Fraction(0)
    if cls in (CLASS_NC, CLASS_SLT):
        return PointInvariants(zero, zero, zero, cls)
    if cls == CLASS_PINCH:
        return PointInvariants(zero, zero, Fraction(1), cls)
    if cls in (CLASS_C1, CLASS_C2):
        return PointInvariants(zero, zero, Fraction(2), cls)
    if cls == CLASS_U3:
        kw = dict(p=t.p, q=t.q)
        return PointInvariants(
            evaluate_finite(BETA3, **kw), evaluate_finite(DELTA3, **kw), evaluate_finite(ALPHA3, **kw), cls
        )
    a, b, c = germ_triple(t, role)
    if cls == CLASS_W4:
        kw = dict(p=a, q=b, r=c)
        return PointInvariants(
            evaluate_finite(BETA4, **kw), evaluate_finite(DELTA4, **kw), evaluate_finite(ALPHA4, **kw), cls
        )
    if cls == CLASS_V4:
        _, qq, rr = v4_triple(t, role)
        kw = dict(q=qq, r=rr)
        return PointInvariants(
            evaluate_finite(BETA4_PRIME, **kw),
            evaluate_finite(DELTA4_PRIME, **kw),
            evaluate_finite(ALPHA4, p=2, q=qq, r=rr),
            cls,
        )
    assert cls == CLASS_M
    return PointInvariants(zero, zero, evaluate_finite(ALPHA4, p=a, q=b, r=c), cls)


# ---------------------------------------------------------------------------
# the linear system for the pullback coefficients at a T4 point


@dataclass(frozen=True)
class GammaSolution:
    gamma1: Fraction
    gamma2: Fraction
    delta4: Fraction


def _check_gamma_params(p, q, r):
    for name, v, lo in (("p", p, 3), ("q", q, 3), ("r", r, 2)):
        if is_inf(v) or isinstance(v, bool) or not isinstance(v, int) or v < lo:
            raise InvalidParameters(f"{name} must be a finite integer >= {lo}, got {v}")


def _solve_gamma(p, q, matrix, rhs) -> GammaSolution:
    g1, g2 = solve_linear_system(RationalMatrix(matrix), rhs)
    return GammaSolution(g1, g2, g1 / (p - 2) + g2 / (q - 2))


def gamma_system_T4(p: int, q: int, r: int) -> GammaSolution:
    """Pullback coefficients of C-tilde on the two f-exceptional curves over a T4 point.

    The system (C + g1 F1 + g2 F2) . Fi = 0 is assembled from the closed-form
    intersection numbers of F1, F2 and C on the partial normalization.
    """
    _check_gamma_params(p, q, r)
    kw = dict(p=p, q=q, r=r)
    f11 = evaluate_finite(F1_SQ, **kw)
    f22 = evaluate_finite(F2_SQ, **kw)
    f12 = evaluate_finite(F1_DOT_F2, **kw)
    c1 = evaluate_finite(C_DOT_F1, **kw)
    c2 = evaluate_finite(C_DOT_F2, **kw)
    return _solve_gamma(p, q, [[f11, f12], [f12, f22]], [-c1, -c2])


def gamma_system_T4_rederived_coefficients(p: int, q: int, r: int):
    """Integer rows ``(const, coeff_g1, coeff_g2)`` of the cleared system."""
    _check_gamma_params(p, q, r)
    return (
        (4 * (r - 1), -(2 * p * r - p - 2), p - 2),
        (4 * (r - 1), q - 2, -(2 * q * r - q - 2)),
    )


def gamma_system_T4_printed_coefficients(p: int, q: int, r: int):
    """Rows as they appear in print, with the coefficient -2(pr+p-4)."""
    _check_gamma_params(p, q, r)
    return (
        (4 * (r - 1), -2 * (p * r + p - 4), p - 2),
        (4 * (r - 1), q - 2, -2 * (q * r + q - 4)),
    )


def solve_gamma_rows(p: int, q: int, rows) -> GammaSolution:
    """Solve const + a*g1 + b*g2 = 0 for both rows."""
    matrix = [[Fraction(a), Fraction(b)] for _, a, b in rows]
    rhs = [-Fraction(c) for c, _, _ in rows]
    return _solve_gamma(p, q, matrix, rhs)


def gamma_system_T4_printed(p: int, q: int, r: int) -> GammaSolution:
    return solve_gamma_rows(p, q, gamma_system_T4_printed_coefficients(p, q, r))
