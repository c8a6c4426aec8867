"""The class-qG singularity catalog: types, normal forms, T^1 data, smoothings."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Union

from ..errors import InvalidParameters, OutOfCatalog, RoleRequired, SltNotPresentable


class _Infinity:
    """The point at infinity of the extended naturals; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("slcgerm-infinity")

    # order: every integer is below infinity
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True


INF = _Infinity()
ExtNat = Union[int, _Infinity]


def is_inf(x) -> bool:
    return x is INF or isinstance(x, _Infinity)


def parse_extnat(text: str) -> ExtNat:
    if text in ("inf", "∞"):
        return INF
    try:
        value = int(text)
    except ValueError:
        raise InvalidParameters(f"expected a positive integer or 'inf', got {text!r}") from None
    if value < 1:
        raise InvalidParameters(f"expected a positive integer or 'inf', got {text!r}")
    return value


def _check_extnat(name: str, x, lower: int) -> None:
    if is_inf(x):
        return
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidParameters(f"{name} must be an integer or INF")
    if x < lower:
        raise InvalidParameters(f"{name} = {x} is below the lower bound {lower}")


def _ext_key(x):
    return (1, 0) if is_inf(x) else (0, x)


# ---------------------------------------------------------------------------
# singularity types


@dataclass(frozen=True)
class NormalCrossing:
    kind = "nc"

    def infinite_count(self) -> int:
        return 0


@dataclass(frozen=True)
class Pinch:
    kind = "pinch"

    def infinite_count(self) -> int:
        return 0


@dataclass(frozen=True)
class Slt:
    n: int
    a: int
    kind = "slt"

    def __post_init__(self):
        if self.n < 2 or not 1 <= self.a < self.n or gcd(self.n, self.a) != 1:
            raise InvalidParameters(f"slt point needs gcd(n,a)=1 and 1<=a<n, got n={self.n}, a={self.a}")

    def infinite_count(self) -> int:
        return 0


@dataclass(frozen=True)
class DegCusp1:
    kind = "cusp1"

    def infinite_count(self) -> int:
        return 0


@dataclass(frozen=True)
class DegCusp2:
    n: ExtNat
    kind = "cusp2"

    def __post_init__(self):
        _check_extnat("n", self.n, 2)

    def infinite_count(self) -> int:
        return int(is_inf(self.n))


@dataclass(frozen=True)
class DegCusp3:
    p: ExtNat
    q: ExtNat
    kind = "cusp3"

    def __post_init__(self):
        _check_extnat("p", self.p, 1)
        _check_extnat("q", self.q, 1)

    def infinite_count(self) -> int:
        return int(is_inf(self.p)) + int(is_inf(self.q))


@dataclass(frozen=True)
class DegCusp4:
    """T4_{p,q,r}.  Construct through :func:`cusp4` to get the canonical triple."""

    p: ExtNat
    q: ExtNat
    r: ExtNat
    kind = "cusp4"

    def __post_init__(self):
        for name in ("p", "q", "r"):
            _check_extnat(name, getattr(self, name), 2)

    def infinite_count(self) -> int:
        return sum(int(is_inf(x)) for x in (self.p, self.q, self.r))

    @property
    def triple(self):
        return (self.p, self.q, self.r)


SingularityType = Union[NormalCrossing, Pinch, Slt, DegCusp1, DegCusp2, DegCusp3, DegCusp4]


def canonical_cusp4_triple(p, q, r):
    """Normalize the parameter pattern: swapping p and q (z <-> t) is an isomorphism.

    Patterns become (p,q,r), (p,q,inf), (p,inf,r), (p,inf,inf) or (inf,inf,inf).
    (inf,inf,r) is the same singularity as (r,inf,inf).
    """
    if is_inf(p) and not is_inf(q):
        p, q = q, p
    if is_inf(p) and is_inf(q) and not is_inf(r):
        p, r = r, INF
    return p, q, r


def cusp4(p, q, r) -> DegCusp4:
    return DegCusp4(*canonical_cusp4_triple(p, q, r))


# ---------------------------------------------------------------------------
# component roles at T4 points with reducible singular locus

ROLE_PQ_INF = "pq_inf"
ROLE_P_INF_R = "p_inf_r"
ROLE_R_INF_P = "r_inf_p"
ROLE_P_INF_INF = "p_inf_inf"
ROLE_INF_INF_P = "inf_inf_p"
ROLE_INF_INF_INF = "inf_inf_inf"
ROLES = (ROLE_PQ_INF, ROLE_P_INF_R, ROLE_R_INF_P, ROLE_P_INF_INF, ROLE_INF_INF_P, ROLE_INF_INF_INF)


def cusp4_pattern(t: DegCusp4) -> str:
    p, q, r = canonical_cusp4_triple(*t.triple)
    key = "".join("i" if is_inf(x) else "f" for x in (p, q, r))
    return {"fff": "finite", "ffi": "pq_inf", "fif": "p_inf_r", "fii": "p_inf_inf", "iii": "inf_inf_inf"}[key]


def legal_roles(t: SingularityType) -> Counter:
    """The role multiset that the incident components must realize (empty if none)."""
    if not isinstance(t, DegCusp4):
        return Counter()
    pattern = cusp4_pattern(t)
    return {
        "finite": Counter(),
        "pq_inf": Counter({ROLE_PQ_INF: 2}),
        "p_inf_r": Counter({ROLE_P_INF_R: 1, ROLE_R_INF_P: 1}),
        "p_inf_inf": Counter({ROLE_P_INF_INF: 2, ROLE_INF_INF_P: 1}),
        "inf_inf_inf": Counter({ROLE_INF_INF_INF: 4}),
    }[pattern]


def requires_role(t: SingularityType) -> bool:
    return bool(legal_roles(t))


def germ_triple(t: DegCusp4, role: str | None):
    """The (p, q, r) label of the germ C in H seen from a component with ``role``."""
    p, q, r = canonical_cusp4_triple(*t.triple)
    allowed = legal_roles(t)
    if not allowed:
        if role is not None:
            raise InvalidParameters(f"T4_{{{p},{q},{r}}} has irreducible singular locus; no role applies")
        return (p, q, r)
    if role is None:
        raise RoleRequired(f"T4 point with parameters ({p},{q},{r}) needs a component role")
    if role not in allowed:
        raise InvalidParameters(f"role {role!r} is not legal for parameters ({p},{q},{r})")
    if role == ROLE_PQ_INF:
        return (p, q, INF)
    if role == ROLE_P_INF_R:
        return (p, INF, r)
    if role == ROLE_R_INF_P:
        return (r, INF, p)
    if role == ROLE_P_INF_INF:
        return (p, INF, INF)
    if role == ROLE_INF_INF_P:
        return (INF, INF, p)
    return (INF, INF, INF)


# ---------------------------------------------------------------------------
# census classes

CLASS_NC = "nc"
CLASS_PINCH = "pinch"
CLASS_C1 = "c1"
CLASS_C2 = "c2"
CLASS_U3 = "U3"
CLASS_W4 = "W4"
CLASS_V4 = "V4"
CLASS_M = "m"
CLASS_SLT = "slt"


def _at_least_three(x) -> bool:
    return is_inf(x) or x >= 3


def census_class(t: SingularityType, role: str | None = None) -> str:
    if isinstance(t, NormalCrossing):
        return CLASS_NC
    if isinstance(t, Pinch):
        return CLASS_PINCH
    if isinstance(t, Slt):
        return CLASS_SLT
    if isinstance(t, DegCusp1):
        return CLASS_C1
    if isinstance(t, DegCusp2):
        return CLASS_C2
    if isinstance(t, DegCusp3):
        return CLASS_U3
    a, b, _ = germ_triple(t, role)
    if _at_least_three(a) and _at_least_three(b):
        return CLASS_W4
    if _at_least_three(a) or _at_least_three(b):
        return CLASS_V4
    return CLASS_M


def v4_triple(t: DegCusp4, role: str | None = None):
    """Germ triple of a V4 point written as (2, q, r) with q >= 3."""
    a, b, c = germ_triple(t, role)
    return (a, b, c) if a == 2 else (b, a, c)


def gamma_sq(t: SingularityType) -> int:
    table = {DegCusp1: -1, DegCusp2: -2, DegCusp3: -3, DegCusp4: -4}
    for cls, value in table.items():
        if isinstance(t, cls):
            return value
    raise OutOfCatalog(f"{type_label(t)} is not a degenerate cusp")


def mult_embdim(gamma_square: int) -> tuple[int, int]:
    if gamma_square not in (-1, -2, -3, -4):
        if isinstance(gamma_square, int) and gamma_square < -4:
            raise OutOfCatalog(f"Gamma^2 = {gamma_square}: embedding dimension above 4 is outside class qG")
        raise InvalidParameters(f"Gamma^2 = {gamma_square} is not a degenerate-cusp value")
    return max(2, -gamma_square), max(3, -gamma_square)


def type_label(t: SingularityType) -> str:
    if isinstance(t, NormalCrossing):
        return "nc"
    if isinstance(t, Pinch):
        return "pinch"
    if isinstance(t, Slt):
        return f"slt(n={t.n},a={t.a})"
    if isinstance(t, DegCusp1):
        return "T1"
    if isinstance(t, DegCusp2):
        return f"T2_{t.n}"
    if isinstance(t, DegCusp3):
        return f"T3_{{{t.p},{t.q}}}"
    return f"T4_{{{t.p},{t.q},{t.r}}}"


def type_sort_key(t: SingularityType):
    params = [getattr(t, f, 0) for f in ("n", "a", "p", "q", "r")]
    return (t.kind, tuple(_ext_key(x) for x in params))


# ---------------------------------------------------------------------------
# normal forms


@dataclass(frozen=True)
class NormalForm:
    equation: str
    curve: str | None = None


def _pw(var: str, exp, symbol: str | None) -> str | None:
    """``var^exp`` or None when the exponent is infinite (u^inf = 0)."""
    if symbol is not None:
        return f"{var}^{symbol}"
    if is_inf(exp):
        return None
    return var if exp == 1 else f"{var}^{exp}"


def normal_form(t: SingularityType, role: str | None = None, symbolic: bool = False) -> NormalForm:
    """Local analytic normal form; ``symbolic`` keeps the exponent names."""
    if isinstance(t, NormalCrossing):
        return NormalForm("xy = 0")
    if isinstance(t, Pinch):
        return NormalForm("x² − y²z = 0")
    if isinstance(t, Slt):
        return NormalForm(f"(xy = 0)/Z_{t.n}({t.a},−{t.a},1)")
    if isinstance(t, DegCusp1):
        return NormalForm("x² = y³ + y²z²")
    if isinstance(t, DegCusp2):
        if symbolic:
            return NormalForm("x²+z²(z^{n+1}−y²) = 0")
        if is_inf(t.n):
            return NormalForm("x²−z²y² = 0")
        return NormalForm(f"x²+z²(z^{t.n + 1}−y²) = 0")
    if isinstance(t, DegCusp3):
        terms = [
            _pw("x", "{p+2}", "{p+2}") if symbolic else _pw("x", t.p if is_inf(t.p) else t.p + 2, None),
            _pw("y", "{q+2}", "{q+2}") if symbolic else _pw("y", t.q if is_inf(t.q) else t.q + 2, None),
        ]
        head = "+".join(x for x in terms if x)
        return NormalForm((head + "−xyz" if head else "−xyz") + " = 0")
    return _cusp4_normal_form(t, role, symbolic)


def _cusp4_normal_form(t: DegCusp4, role: str | None, symbolic: bool) -> NormalForm:
    a, b, c = germ_triple(t, role)
    if not requires_role(t):
        zp = _pw("z", a, "p" if symbolic else None)
        tq = _pw("t", b, "q" if symbolic else None)
        xr = _pw("x", c, "r" if symbolic else None)
        return NormalForm(f"xy−{zp}−{tq} = zt−{xr} = 0")
    # reducible singular locus: the coordinate choices of the role
    names = {"p": "p", "r": "r"} if symbolic else None
    if role == ROLE_PQ_INF:
        zp = _pw("z", a, "p" if symbolic else None)
        tq = _pw("t", b, "q" if symbolic else None)
        return NormalForm(f"xy−{zp}−{tq} = zt = 0", "(x=z=t=0)")
    if role in (ROLE_P_INF_R, ROLE_R_INF_P):
        zp = _pw("z", a, names["p"] if names else None)
        xr = _pw("x", c, names["r"] if names else None)
        return NormalForm(f"xy−{zp} = zt−{xr} = 0", "(x=z=t=0)")
    if role == ROLE_P_INF_INF:
        zp = _pw("z", a, "p" if symbolic else None)
        return NormalForm(f"xy−{zp} = zt = 0", "(x=y=z=0)")
    if role == ROLE_INF_INF_P:
        xr = _pw("x", c, "r" if symbolic else None)
        return NormalForm(f"xy = zt−{xr} = 0", "(x=y=z=0)")
    return NormalForm("xy = zt = 0", "(x=y=z=0)")


# ---------------------------------------------------------------------------
# T^1 presentations


@dataclass(frozen=True)
class QuotientRing:
    generators: tuple[str, ...]


@dataclass(frozen=True)
class CokernelPresentation:
    relations: tuple[tuple[str, str], ...]


T1Presentation = Union[QuotientRing, CokernelPresentation]


def _term(coef: int, *factors) -> tuple | None:
    """A monomial ``coef * prod var^exp``; None if some exponent is infinite."""
    powers = []
    for var, exp in factors:
        if is_inf(exp):
            return None
        if exp:
            powers.append((var, exp))
    return (coef, tuple(powers))


def _render_poly(terms) -> str:
    terms = [t for t in terms if t is not None and t[0] != 0]
    if not terms:
        return "0"
    out = ""
    for k, (coef, powers) in enumerate(terms):
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in powers)
        mag = abs(coef)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if k == 0:
            out = ("-" if coef < 0 else "") + body
        else:
            out += ("-" if coef < 0 else "+") + body
    return out


def _generator(terms) -> str:
    live = [t for t in terms if t is not None and t[0] != 0]
    if len(live) == 1:
        # a monomial generates the same ideal as its monic version
        return _render_poly([(1, live[0][1])])
    return _render_poly(live)


def _pm1(x):
    return x if is_inf(x) else x - 1


def t1_presentation(t: SingularityType) -> T1Presentation:
    if isinstance(t, Slt):
        raise SltNotPresentable("slt points are described by invariants of the index-1 cover only")
    if isinstance(t, NormalCrossing):
        return QuotientRing(("x", "y"))
    if isinstance(t, Pinch):
        return QuotientRing(("x", "y^2", "y*z"))
    if isinstance(t, DegCusp1):
        # C[x,y,z]/(f, J(f)) for f = x^2 - y^3 - y^2 z^2
        f = [_term(1, ("x", 2)), _term(-1, ("y", 3)), _term(-1, ("y", 2), ("z", 2))]
        fx = [_term(2, ("x", 1))]
        fy = [_term(-3, ("y", 2)), _term(-2, ("y", 1), ("z", 2))]
        fz = [_term(-2, ("y", 2), ("z", 1))]
        return QuotientRing(tuple(_generator(g) for g in (f, fx, fy, fz)))
    if isinstance(t, DegCusp2):
        n = t.n
        last = [
            None if is_inf(n) else _term(n + 3, ("z", n + 2)),
            _term(-2, ("z", 1), ("y", 2)),
        ]
        return QuotientRing(("x", "y*z^2", _generator(last)))
    if isinstance(t, DegCusp3):
        p, q = t.p, t.q
        g1 = [None if is_inf(p) else _term(p, ("x", p - 1)), _term(-1, ("y", 1), ("z", 1))]
        g2 = [None if is_inf(q) else _term(q, ("y", q - 1)), _term(-1, ("x", 1), ("z", 1))]
        gens = (_generator(g1), _generator(g2), "x*y")
        return QuotientRing(gens)
    p, q, r = t.triple
    # f = xy - z^p - t^q,  g = zt - x^r
    f = [_term(1, ("x", 1), ("y", 1)), _term(-1, ("z", p)), _term(-1, ("t", q))]
    g = [_term(1, ("z", 1), ("t", 1)), _term(-1, ("x", r))]
    zero = [None]
    rel = [
        (f, zero),
        (zero, f),
        (g, zero),
        (zero, g),
        ([_term(1, ("y", 1))], [None if is_inf(r) else _term(-r, ("x", _pm1(r)))]),
        ([_term(1, ("x", 1))], zero),
        ([None if is_inf(p) else _term(-p, ("z", _pm1(p)))], [_term(1, ("t", 1))]),
        ([None if is_inf(q) else _term(-q, ("t", _pm1(q)))], [_term(1, ("z", 1))]),
    ]
    return CokernelPresentation(tuple((_render_poly(a), _render_poly(b)) for a, b in rel))


# ---------------------------------------------------------------------------
# torsion and local smoothings


@dataclass(frozen=True)
class TorsionProfile:
    embedded_point: bool
    restriction_torsion: bool


def torsion_profile(t: SingularityType) -> TorsionProfile:
    if isinstance(t, (NormalCrossing, Slt)):
        return TorsionProfile(False, False)
    if isinstance(t, Pinch):
        return TorsionProfile(True, False)
    embedded = True
    if isinstance(t, DegCusp3) and is_inf(t.p) and is_inf(t.q):
        embedded = False
    if isinstance(t, DegCusp4) and t.infinite_count() == 3:
        embedded = False
    return TorsionProfile(embedded, isinstance(t, DegCusp4))


@dataclass(frozen=True)
class SmoothingTarget:
    kind: str  # "smooth" | "ordinary_double_point" | "cyclic_quotient_3fold"
    n: int | None = None
    a: int | None = None

    def __str__(self):
        if self.kind == "smooth":
            return "smooth"
        if self.kind == "ordinary_double_point":
            return "ordinary_double_point(xy-zt=0)"
        return f"cyclic_quotient_3fold 1/{self.n}({self.a},{self.n - self.a},1)"


SMOOTH = SmoothingTarget("smooth")
ORDINARY_DOUBLE_POINT = SmoothingTarget("ordinary_double_point")


def smoothing_target(t: SingularityType) -> SmoothingTarget:
    if isinstance(t, DegCusp4):
        return ORDINARY_DOUBLE_POINT
    if isinstance(t, Slt):
        return SmoothingTarget("cyclic_quotient_3fold", t.n, t.a)
    return SMOOTH
