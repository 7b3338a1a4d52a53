"""Exact evaluation of density-derived bounds and tightness.

All arithmetic here is integer/rational; floating point is deliberately
absent because the interesting cases are exactly the ones where a ceiling
lands next to an integer. The degree-3 constant 21/250 is conjectural and
every consumer of it is expected to mark outputs accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from types import MappingProxyType

from .cayley import CayleyDigraph, diameter
from .errors import ConjectureRefutation, InternalConsistencyError

Rational = Fraction


@dataclass(frozen=True)
class DensityConstant:
    degree: int
    delta: Fraction
    status: str  # "proven" | "conjectural"


REGISTRY = MappingProxyType(
    {
        1: DensityConstant(1, Fraction(1, 1), "proven"),
        2: DensityConstant(2, Fraction(1, 3), "proven"),
        3: DensityConstant(3, Fraction(21, 250), "conjectural"),
    }
)


def delta(d: int) -> Fraction:
    try:
        return REGISTRY[d].delta
    except KeyError:
        raise ValueError(f"no density constant registered for degree {d}") from None


def is_conjectural(d: int) -> bool:
    return REGISTRY[d].status == "conjectural" if d in REGISTRY else True


class _Infinite:
    """Marker for families whose every dilate stays tight."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


def floor_root(n: int, d: int) -> int:
    """Largest x >= 0 with x**d <= n, by integer Newton iteration."""
    if d < 1:
        raise ValueError("root degree must be positive")
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if d == 1:
        return n
    x = 1 << ((n.bit_length() - 1) // d + 1)
    while True:
        y = ((d - 1) * x + n // x ** (d - 1)) // d
        if y >= x:
            break
        x = y
    return x


def ceil_root(r: Fraction | int, d: int) -> int:
    """Least integer x with x**d >= r, for rational r > 0; never touches floats."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radicand must be positive")
    c = -((-r.numerator) // r.denominator)  # ceil(r); x**d >= r iff x**d >= ceil(r)
    x = floor_root(c, d)
    return x if x**d == c else x + 1


def lower_bound(d: int, n: int) -> int:
    """Closed diameter lower bound for degree d and order n.

    ceil((n / Delta_d)^(1/d)) - d; for d = 3 the value rests on the
    conjectural constant and should be rendered with a prime mark.
    """
    if n < 1:
        raise ValueError("order must be positive")
    return ceil_root(n / delta(d), d) - d


def tightness(g: CayleyDigraph) -> int:
    """diameter - lower_bound; zero means the digraph is tight."""
    d = g.degree
    n = g.order
    t = diameter(g) - lower_bound(d, n)
    if t < 0:
        if is_conjectural(d):
            raise ConjectureRefutation(
                f"diameter below the conjectural bound for d={d}, n={n}",
                witness=g.to_literal(),
            )
        raise InternalConsistencyError(
            f"diameter below the proven bound for d={d}, n={n}: {g}"
        )
    return t


def in_Cd(x: int, d: int) -> bool:
    """True iff Delta_d * x**d is an integer."""
    dd = delta(d)
    return (dd.numerator * x**d) % dd.denominator == 0


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def min_attaining_x(d: int) -> int:
    """Least positive integer x with Delta_d * x**d integral."""
    q = delta(d).denominator
    x = 1
    for p, a in _prime_factors(q).items():
        x *= p ** ((a + d - 1) // d)
    return x


def attains_maximum_order(d: int, n: int) -> bool:
    """True iff n = Delta_d * x**d for some positive integer x in C_d."""
    dd = delta(d)
    num = n * dd.denominator
    if num % dd.numerator:
        return False
    r = num // dd.numerator
    x = floor_root(r, d)
    return x**d == r  # q | x**d is then automatic since gcd(s, q) = 1


def tightness_coefficient(d: int, n: int):
    """Number of consecutive dilates of a tight digraph that stay tight.

    INFINITE exactly when n = Delta_d * x**d for integer x in C_d; otherwise
    the largest m such that every m' <= m satisfies the ceiling
    characterization. The incremental loop is cross-checked against the
    closed form via the exact inequality (m*X - 1)**d < m**d * n / Delta_d.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if attains_maximum_order(d, n):
        return INFINITE
    dd = delta(d)
    base = Fraction(n, 1) / dd
    x1 = ceil_root(base, d)
    m = 1
    while True:
        nxt = m + 1
        loop_tight = ceil_root(nxt**d * base, d) == nxt * x1
        # closed-form test: m' stays tight iff (m'*X - 1)^d < m'^d * n / Delta_d
        lhs = (nxt * x1 - 1) ** d * base.denominator
        rhs = nxt**d * base.numerator
        closed_tight = lhs < rhs
        if loop_tight != closed_tight:
            raise InternalConsistencyError(
                f"tightness coefficient cross-check failed at d={d}, n={n}, m={nxt}"
            )
        if not loop_tight:
            return m
        m = nxt


def max_order(d: int, k: int) -> int:
    """Largest order a degree-d digraph of diameter k can have: floor(Delta_d*(k+d)**d)."""
    if k < 0:
        raise ValueError("diameter must be nonnegative")
    dd = delta(d)
    return dd.numerator * (k + d) ** d // dd.denominator
