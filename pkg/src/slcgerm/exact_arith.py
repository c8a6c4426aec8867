"""Exact rational scalars, small dense matrices, and limits of rational functions.

Scalars are :class:`fractions.Fraction`, which is always in lowest terms with a
positive denominator, so structural equality is value equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import SingularMatrix, ZeroDenominatorPolynomial

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def render(x) -> str:
    """Canonical text form: ``n/d``, with ``/d`` dropped when d == 1."""
    return str(as_rational(x))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text or any(c in text for c in ".eE"):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


# ---------------------------------------------------------------------------
# matrices


class RationalMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if not data:
            raise ValueError("empty matrix")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise ValueError("ragged matrix")
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(render(x) for x in row) + "]" for row in self._rows)
        return f"RationalMatrix([{body}])"

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise ValueError("dimension mismatch")
        v = [as_rational(x) for x in vec]
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self._rows]

    def principal(self, k: int) -> "RationalMatrix":
        return RationalMatrix([row[:k] for row in self._rows[:k]])

    def determinant(self) -> Fraction:
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        a = [list(row) for row in self._rows]
        n = self.nrows
        det = Fraction(1)
        for col in range(n):
            piv = _pick_pivot(a, col, col)
            if piv is None:
                return Fraction(0)
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                f = a[r][col] * inv
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det

    def leading_minors(self) -> list[Fraction]:
        # Without row swaps, the k-th leading minor is the product of the first k pivots.
        if not self.is_square():
            raise ValueError("leading minors of a non-square matrix")
        a = [list(row) for row in self._rows]
        n = self.nrows
        minors, det = [], Fraction(1)
        for col in range(n):
            pivot = a[col][col]
            if pivot == 0:
                return minors + [self.principal(k).determinant() for k in range(col + 1, n + 1)]
            det *= pivot
            minors.append(det)
            for r in range(col + 1, n):
                f = a[r][col] / pivot
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return minors

    def is_negative_definite(self) -> bool:
        # Sylvester: (-1)^k * det_k > 0 for every leading principal minor.
        if not self.is_symmetric():
            raise ValueError("definiteness test needs a symmetric matrix")
        return all((-1) ** k * d > 0 for k, d in enumerate(self.leading_minors(), start=1))


def _pick_pivot(a, col: int, start: int):
    """The diagonal entry when it is nonzero (keeps banded matrices banded), else the first nonzero below."""
    for r in range(start, len(a)):
        if a[r][col]:
            return r
    return None


def solve_linear_system(m: RationalMatrix, b: Sequence) -> list[Fraction]:
    """Solve ``m x = b`` exactly by elimination and back substitution.

    Row operations only touch nonzero entries, so chain and cycle matrices
    cost linear rather than cubic time.  Raises :class:`SingularMatrix` when
    ``m`` is singular.
    """
    if not m.is_square():
        raise ValueError("solve_linear_system needs a square matrix")
    n = m.nrows
    if len(b) != n:
        raise ValueError("right-hand side has the wrong length")
    a = [list(row) + [as_rational(x)] for row, x in zip(m.rows, b)]
    for col in range(n):
        piv = _pick_pivot(a, col, col)
        if piv is None:
            raise SingularMatrix(f"matrix is singular (no pivot in column {col})")
        a[col], a[piv] = a[piv], a[col]
        prow = a[col]
        support = [j for j in range(col + 1, n + 1) if prow[j]]
        for r in range(col + 1, n):
            row = a[r]
            if row[col]:
                f = row[col] / prow[col]
                row[col] = Fraction(0)
                for j in support:
                    row[j] -= f * prow[j]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        row = a[i]
        acc = row[n] - sum(row[j] * x[j] for j in range(i + 1, n) if row[j])
        x[i] = acc / row[i]
    if m.apply(x) != [as_rational(v) for v in b]:
        raise AssertionError("exact solve failed its own residual check")
    return x


# ---------------------------------------------------------------------------
# extended rationals and univariate limits


@dataclass(frozen=True)
class ExtRational:
    """A rational number or one of the two signed infinities."""

    value: Fraction | None = None
    sign: int = 0  # +1 / -1 for the infinities, 0 when finite

    @classmethod
    def finite(cls, x) -> "ExtRational":
        return cls(as_rational(x), 0)

    @property
    def is_finite(self) -> bool:
        return self.sign == 0

    def __str__(self):
        if self.sign > 0:
            return "+inf"
        if self.sign < 0:
            return "-inf"
        return render(self.value)


PLUS_INFINITY = ExtRational(None, 1)
MINUS_INFINITY = ExtRational(None, -1)


class UnivariatePoly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t) -> Fraction:
        t = as_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UnivariatePoly({[render(c) for c in self.coeffs]})"


def _ratio_limit(deg_num: int, deg_den: int, lead_ratio_sign: int, lead_ratio) -> ExtRational:
    if deg_num < deg_den:
        return ExtRational.finite(0)
    if deg_num == deg_den:
        return ExtRational.finite(lead_ratio)
    return PLUS_INFINITY if lead_ratio_sign > 0 else MINUS_INFINITY


def limit_at_infinity(numerator: UnivariatePoly, denominator: UnivariatePoly) -> ExtRational:
    """Limit of ``numerator(t) / denominator(t)`` as ``t -> +inf``."""
    if denominator.is_zero():
        raise ZeroDenominatorPolynomial("denominator is the zero polynomial")
    if numerator.is_zero():
        return ExtRational.finite(0)
    ratio = numerator.leading / denominator.leading
    return _ratio_limit(numerator.degree, denominator.degree, 1 if ratio > 0 else -1, ratio)


# ---------------------------------------------------------------------------
# multivariate rational functions (closed forms in p, q, r)


def _mono_key(powers: Mapping[str, int]) -> tuple:
    return tuple(sorted((v, e) for v, e in powers.items() if e))


class MPoly:
    """Sparse multivariate polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self.terms = {k: as_rational(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(): as_rational(c)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): Fraction(1)})

    @staticmethod
    def lift(x) -> "MPoly":
        return x if isinstance(x, MPoly) else MPoly.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {v for k in self.terms for v, _ in k}

    def __add__(self, other):
        other = MPoly.lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-MPoly.lift(other))

    def __rsub__(self, other):
        return MPoly.lift(other) - self

    def __mul__(self, other):
        other = MPoly.lift(other)
        out: dict[tuple, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                powers = dict(k1)
                for v, e in k2:
                    powers[v] = powers.get(v, 0) + e
                key = _mono_key(powers)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        acc = MPoly.const(1)
        for _ in range(n):
            acc = acc * self
        return acc

    def degree_in(self, v: str) -> int:
        if self.is_zero():
            return -1
        return max(dict(k).get(v, 0) for k in self.terms)

    def coefficient_in(self, v: str, e: int) -> "MPoly":
        out = {}
        for k, c in self.terms.items():
            powers = dict(k)
            if powers.get(v, 0) == e:
                powers.pop(v, None)
                out[_mono_key(powers)] = c
        return MPoly(out)

    def substitute(self, v: str, value) -> "MPoly":
        value = as_rational(value)
        out: dict[tuple, Fraction] = {}
        for k, c in self.terms.items():
            powers = dict(k)
            e = powers.pop(v, 0)
            key = _mono_key(powers)
            out[key] = out.get(key, Fraction(0)) + c * value**e
        return MPoly(out)

    def constant_value(self) -> Fraction:
        if self.variables():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def lex_leading_sign(self, order: Sequence[str]) -> int:
        """Sign as the variables go to +inf one after another in ``order``."""
        if self.is_zero():
            return 0
        best = max(self.terms, key=lambda k: tuple(dict(k).get(v, 0) for v in order))
        return 1 if self.terms[best] > 0 else -1


class RationalFunction:
    """Quotient of two MPolys; no cancellation is attempted."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        self.num = MPoly.lift(num)
        self.den = MPoly.lift(den)
        if self.den.is_zero():
            raise ZeroDenominatorPolynomial("rational function with zero denominator")

    @staticmethod
    def lift(x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def __add__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.lift(other))

    def __rsub__(self, other):
        return RationalFunction.lift(other) - self

    def __mul__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RationalFunction.lift(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RationalFunction.lift(other) / self

    def __pow__(self, n: int):
        return RationalFunction(self.num**n, self.den**n)

    def substitute(self, v: str, value) -> "RationalFunction":
        return RationalFunction(self.num.substitute(v, value), self.den.substitute(v, value))

    def value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def iterated_limit(self, order: Sequence[str]) -> ExtRational:
        """Send the variables in ``order`` to +inf, innermost first."""
        f = self
        order = list(order)
        stray = (f.num.variables() | f.den.variables()) - set(order)
        if stray:
            raise ValueError(f"unbound variables {sorted(stray)}")
        for i, v in enumerate(order):
            if f.num.is_zero():
                return ExtRational.finite(0)
            dn, dd = f.num.degree_in(v), f.den.degree_in(v)
            lead_n = f.num.coefficient_in(v, dn)
            lead_d = f.den.coefficient_in(v, dd)
            if dn < dd:
                return ExtRational.finite(0)
            if dn > dd:
                rest = order[i + 1:]
                sign = lead_n.lex_leading_sign(rest) * lead_d.lex_leading_sign(rest)
                return _ratio_limit(dn, dd, sign, None)
            f = RationalFunction(lead_n, lead_d)
        return ExtRational.finite(f.value())


def rational_vector(values: Iterable) -> list[Fraction]:
    return [as_rational(v) for v in values]
