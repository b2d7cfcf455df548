"""
=============================================================================
DIOPHANTINE - Pell-type equations behind the divisor classification
=============================================================================

Two solvers:

1. gen_pell_positive_solutions: x^2 - n y^2 = N, positive solutions in
   ascending y. Nagell's bounds give a finite list of class representatives,
   the fundamental unit generates the rest.

2. quad_with_linear: (2d+3)^2 - n(2m+1)^2 + 8km = C. With u = 2d+3,
   v = 2m+1 and w = n v - 2k this becomes

       w^2 - n u^2 = 4k^2 - 4kn - nC

   restricted to w = n - 2k (mod 2n) and u odd. The smallest power of the
   fundamental unit (with a sign) that preserves that residue class is the
   chain automorphism; in (d, m) coordinates it is an integral affine map of
   determinant 1. Square n factors the left side instead, giving a finite
   solution set.
=============================================================================
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterator, List, Set, Tuple

from sympy import divisors

from errors import ArgumentError, ConsistencyError, DegenerateEquationError, IntegralityError
from numtheory.contfrac import convergents, require_nonsquare, sqrt_cf

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int

    def to_json(self) -> Dict:
        return {"x": str(self.x), "y": str(self.y)}

    @classmethod
    def from_json(cls, data: Dict) -> "PellSolution":
        return cls(int(data["x"]), int(data["y"]))


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass(frozen=True)
class AffineMap:
    """(d, m) -> (a d + b m + c, e d + f m + g)"""

    a: int
    b: int
    c: int
    e: int
    f: int
    g: int

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 0, 1, 0)

    @property
    def determinant(self) -> int:
        return self.a * self.f - self.b * self.e

    def apply(self, point: Pair) -> Pair:
        d, m = point
        return (self.a * d + self.b * m + self.c, self.e * d + self.f * m + self.g)

    def inverse(self) -> "AffineMap":
        if self.determinant != 1:
            raise ConsistencyError(f"affine map {self} is not unimodular")
        a, b, e, f = self.f, -self.b, -self.e, self.a
        return AffineMap(a, b, -(a * self.c + b * self.g), e, f, -(e * self.c + f * self.g))

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other"""
        return AffineMap(
            self.a * other.a + self.b * other.e,
            self.a * other.b + self.b * other.f,
            self.a * other.c + self.b * other.g + self.c,
            self.e * other.a + self.f * other.e,
            self.e * other.b + self.f * other.f,
            self.e * other.c + self.f * other.g + self.g,
        )

    def power(self, times: int) -> "AffineMap":
        base = self if times >= 0 else self.inverse()
        result = AffineMap.identity()
        for _ in range(abs(times)):
            result = base.compose(result)
        return result

    def to_json(self) -> Dict[str, str]:
        return {k: str(getattr(self, k)) for k in ("a", "b", "c", "e", "f", "g")}

    @classmethod
    def from_json(cls, data: Dict[str, str]) -> "AffineMap":
        return cls(*(int(data[k]) for k in ("a", "b", "c", "e", "f", "g")))


@dataclass(frozen=True)
class SolutionChain:
    """A fundamental solution of (2d+3)^2 - n(2m+1)^2 + 8km = C and its automorphism orbit."""

    n: int
    k: int
    C: int
    fundamental: Pair
    transform: AffineMap
    direction: Direction = Direction.FORWARD
    exponent: int = 1
    sign: int = 1
    elements: Tuple[Pair, ...] = field(default=(), compare=False)

    def satisfies(self, point: Pair) -> bool:
        return quadratic_value(self.n, self.k, *point) == self.C

    @property
    def is_finite(self) -> bool:
        return self.transform == AffineMap.identity()

    def reversed(self) -> "SolutionChain":
        flipped = Direction.BACKWARD if self.direction is Direction.FORWARD else Direction.FORWARD
        return replace(self, direction=flipped, elements=tuple(reversed(self.elements)))

    def step(self, point: Pair, times: int = 1) -> Pair:
        """Like chain_apply, but following the chain's orientation."""
        if self.direction is Direction.BACKWARD:
            times = -times
        return chain_apply(self, point, times)

    def member(self, j: int) -> Pair:
        """The element j steps from the fundamental along the orientation."""
        return self.step(self.fundamental, j)

    def expand(self, depth: int) -> Tuple[Pair, ...]:
        back, fwd = [], []
        point = self.fundamental
        for _ in range(depth):
            point = self.step(point, -1)
            back.append(point)
        point = self.fundamental
        for _ in range(depth):
            point = self.step(point, 1)
            fwd.append(point)
        return tuple(reversed(back)) + (self.fundamental,) + tuple(fwd)

    def to_json(self) -> Dict:
        d, m = self.fundamental
        return {
            "fundamental": {"d": str(d), "m": str(m)},
            "transform": self.transform.to_json(),
            "direction": self.direction.value,
            "k": self.k,
            "C": self.C,
        }


# =============================================================================
# PELL
# =============================================================================

def quadratic_value(n: int, k: int, d: int, m: int) -> int:
    return (2 * d + 3) ** 2 - n * (2 * m + 1) ** 2 + 8 * k * m


def pell_fundamental(n: int) -> PellSolution:
    """Least positive solution of x^2 - n y^2 = 1, read off the convergents."""
    length = sqrt_cf(n).period_length
    index = length if length % 2 == 0 else 2 * length
    c = convergents(n, index)[-1]
    if c.p * c.p - n * c.q * c.q != 1:
        raise ConsistencyError(f"convergent {c.p}/{c.q} does not solve the Pell equation for n={n}")
    return PellSolution(c.p, c.q)


def _unit_mul(n: int, unit: PellSolution, point: Pair) -> Pair:
    x, y = point
    return (unit.x * x + n * unit.y * y, unit.y * x + unit.x * y)


def _nagell_candidates(n: int, N: int, unit: PellSolution) -> List[Pair]:
    """Class representatives of x^2 - n y^2 = N, both signs of x."""
    X, Y = unit.x, unit.y
    bound_factor = 2 * (X + 1) if N > 0 else 2 * (X - 1)
    found = []
    y = 0
    while bound_factor * y * y <= Y * Y * abs(N):
        x2 = N + n * y * y
        if x2 >= 0:
            x = isqrt(x2)
            if x * x == x2:
                found.append((x, y))
                if x:
                    found.append((-x, y))
        y += 1
    return found


def gen_pell_positive_solutions(n: int, N: int, limit: int) -> List[PellSolution]:
    """First `limit` solutions of x^2 - n y^2 = N with x, y > 0, ascending in y."""
    require_nonsquare(n)
    if N == 0:
        raise ArgumentError("N must be nonzero")
    if limit < 1:
        raise ArgumentError(f"limit must be positive, got {limit}")
    unit = pell_fundamental(n)
    streams = [(sx * x, sx * y) for x, y in _nagell_candidates(n, N, unit) for sx in (1, -1)]
    found: Set[Pair] = set()
    previous: Dict[int, int] = {}
    active = set(range(len(streams)))
    while active:
        for i in active:
            x, y = streams[i]
            if x > 0 and y > 0:
                found.add((x, y))
            streams[i] = _unit_mul(n, unit, (x, y))
            previous[i] = abs(y)
        if len(found) >= limit:
            threshold = sorted(p[1] for p in found)[limit - 1]
            # |y| is unimodal along a stream: once past the threshold and rising, it is done
            active = {
                i for i in active
                if abs(streams[i][1]) <= threshold or abs(streams[i][1]) <= previous[i]
            }
    ordered = sorted(found, key=lambda p: (p[1], p[0]))[:limit]
    for x, y in ordered:
        if x * x - n * y * y != N:
            raise ConsistencyError(f"({x}, {y}) does not solve x^2 - {n}y^2 = {N}")
    return [PellSolution(x, y) for x, y in ordered]


def brute_force_pell(n: int, N: int, y_max: int) -> List[PellSolution]:
    """Test oracle: positive solutions with y <= y_max by direct search."""
    result = []
    for y in range(1, y_max + 1):
        x2 = N + n * y * y
        if x2 > 0:
            x = isqrt(x2)
            if x * x == x2:
                result.append(PellSolution(x, y))
    return result


# =============================================================================
# QUADRATIC WITH LINEAR TERM
# =============================================================================

class _Reduction:
    """Bookkeeping for w^2 - n u^2 = N' with w = n - 2k (mod 2n), u odd."""

    def __init__(self, n: int, k: int, C: int):
        self.n, self.k, self.C = n, k, C
        self.modulus = 2 * n
        self.residue = (n - 2 * k) % self.modulus
        self.rhs = 4 * k * k - 4 * k * n - n * C

    def admissible(self, w: int, u: int) -> bool:
        return w % self.modulus == self.residue and u % 2 == 1

    def to_divisor_coords(self, w: int, u: int) -> Pair:
        v, rem = divmod(w + 2 * self.k, self.n)
        if rem or v % 2 == 0 or u % 2 == 0:
            raise IntegralityError(f"(w, u) = ({w}, {u}) is not admissible")
        return ((u - 3) // 2, (v - 1) // 2)

    def from_divisor_coords(self, d: int, m: int) -> Pair:
        return (self.n * (2 * m + 1) - 2 * self.k, 2 * d + 3)


def _chain_automorphism(red: _Reduction, unit: PellSolution) -> Tuple[int, int, PellSolution]:
    """Smallest j >= 1 and sign s with s * unit^j preserving the admissible residues."""
    n, r0, mod = red.n, red.residue, red.modulus
    X, Y = unit.x, unit.y
    j = 1
    while True:
        for s in (1, -1):
            if (s * (X * r0 + n * Y)) % mod == r0 and (Y * r0 + X) % 2 == 1:
                return j, s, PellSolution(X, Y)
        X, Y = unit.x * X + n * unit.y * Y, unit.y * X + unit.x * Y
        j += 1


def _affine_from_unit(red: _Reduction, s: int, X: int, Y: int) -> AffineMap:
    n, k = red.n, red.k
    c = Fraction(s * (n * Y - 2 * k * Y + 3 * X) - 3, 2)
    g = Fraction(s * X + 3 * s * Y - 1, 2) + Fraction(k * (1 - s * X), n)
    if c.denominator != 1 or g.denominator != 1:
        raise ConsistencyError(f"non-integral chain translation ({c}, {g}) for n={n}, k={k}")
    return AffineMap(s * X, s * n * Y, int(c), s * Y, s * X, int(g))


def _orbit_key(w: int, u: int) -> Tuple:
    return (abs(u), abs(w), u < 0, w < 0)


def _chain_sort_key(point: Pair) -> Tuple:
    d, m = point
    return (abs(d), abs(m), d < 0, m < 0)


def _square_branch(red: _Reduction) -> List[Pair]:
    root = isqrt(red.n)
    if red.rhs == 0:
        raise DegenerateEquationError(
            f"n={red.n}, k={red.k}, C={red.C}: reduced form is a product of two lines")
    points = set()
    for a in divisors(abs(red.rhs)):
        for lo in (a, -a):
            hi = red.rhs // lo
            if (lo + hi) % 2 or (hi - lo) % (2 * root):
                continue
            w, u = (lo + hi) // 2, (hi - lo) // (2 * root)
            if red.admissible(w, u):
                points.add(red.to_divisor_coords(w, u))
    return sorted(points, key=_chain_sort_key)


def quad_with_linear(n: int, k: int, C: int, depth: int = 1) -> List[SolutionChain]:
    """All chains of solutions of (2d+3)^2 - n(2m+1)^2 + 8km = C."""
    if k < 0:
        raise ArgumentError(f"k must be nonnegative, got {k}")
    if depth < 0:
        raise ArgumentError(f"depth must be nonnegative, got {depth}")
    red = _Reduction(n, k, C)

    if isqrt(n) ** 2 == n:
        identity = AffineMap.identity()
        chains = [SolutionChain(n, k, C, p, identity, exponent=0, elements=(p,))
                  for p in _square_branch(red)]
        logger.debug("n=%d k=%d C=%d: %d isolated solutions", n, k, C, len(chains))
        return chains

    if red.rhs == 0:
        return []
    unit = pell_fundamental(n)
    j, s, power = _chain_automorphism(red, unit)
    T = _affine_from_unit(red, s, power.x, power.y)
    logger.debug("n=%d k=%d C=%d: automorphism %s * eps^%d", n, k, C, "+" if s > 0 else "-", j)

    def step(w: int, u: int, back: bool = False) -> Pair:
        X, Y = power.x, (-power.y if back else power.y)
        return (s * (X * w + n * Y * u), s * (Y * w + X * u))

    canon: Set[Pair] = set()
    for x, y in _nagell_candidates(n, red.rhs, unit):
        w, u = x, y
        for _ in range(j):
            for sign in (1, -1):
                pw, pu = sign * w, sign * u
                if not red.admissible(pw, pu):
                    continue
                while True:
                    fw, bw = step(pw, pu), step(pw, pu, back=True)
                    if _orbit_key(*fw) < _orbit_key(pw, pu):
                        pw, pu = fw
                    elif _orbit_key(*bw) < _orbit_key(pw, pu):
                        pw, pu = bw
                    else:
                        break
                canon.add((pw, pu))
            w, u = _unit_mul(n, unit, (w, u))

    chains = []
    for p in sorted((red.to_divisor_coords(w, u) for w, u in canon), key=_chain_sort_key):
        chain = SolutionChain(n, k, C, p, T, exponent=j, sign=s)
        if not chain.satisfies(p):
            raise ConsistencyError(f"{p} does not satisfy the equation for n={n}, k={k}, C={C}")
        chains.append(replace(chain, elements=chain.expand(depth)))
    logger.debug("n=%d k=%d C=%d: %d chains", n, k, C, len(chains))
    return chains


def chain_apply(chain: SolutionChain, element: Pair, times: int) -> Pair:
    """Apply the chain's transform `times` times (negative: inverse)."""
    if not chain.satisfies(element):
        raise ConsistencyError(
            f"{element} is not on (2d+3)^2 - {chain.n}(2m+1)^2 + {8 * chain.k}m = {chain.C}")
    T = chain.transform if times >= 0 else chain.transform.inverse()
    point = element
    for _ in range(abs(times)):
        point = T.apply(point)
    return point


def brute_force_quad(n: int, k: int, C: int, d_range: range, m_range: range) -> List[Pair]:
    """Test oracle: integer solutions in a box."""
    return [(d, m) for d in d_range for m in m_range if quadratic_value(n, k, d, m) == C]


def iter_chain(chain: SolutionChain, start: int = 0) -> Iterator[Pair]:
    """Elements at positions start, start+1, ... along the chain's orientation."""
    point = chain.member(start)
    while True:
        yield point
        point = chain.step(point, 1)
