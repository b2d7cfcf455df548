"""
=============================================================================
PICARD LATTICE - Intersection theory on the blowup of P^2 at n points
=============================================================================

Pic X = ZH + ZE_1 + ... + ZE_n with H^2 = 1, E_i^2 = -1 and all mixed
products zero. A class is stored as D = dH - sum m_i E_i, so the exceptional
curve E_1 has m_1 = -1.

Every comparison against the nef ray B = sqrt(n) H - E is decided by
sign-split integer squaring; sqrt(n) is never materialized.

USAGE:
-----------
s = Surface(10)
D = s.uniform(57, 18)            # 57H - 18E
chi(D)                           # 1
wall_t(D)                        # Fraction(370, 117)
below_nef_wall(D)                # True
=============================================================================
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial, isqrt
from typing import Dict, Iterable, List, Optional, Tuple

from errors import (
    ArgumentError,
    ConsistencyError,
    DegenerateWallError,
    DimensionMismatchError,
    PreconditionError,
    UnsupportedSurfaceError,
)

# Exact rational type for wall values
Rational = Fraction

# Proven alpha-Nagata bounds: A_t is nef for t >= alpha
KNOWN_NAGATA_BOUNDS: Dict[int, Fraction] = {
    10: Fraction(721, 228),
}


class Conditionality(str, Enum):
    """Which conjecture, if any, a computed result depends on"""

    UNCONDITIONAL = "unconditional"
    REQUIRES_NAGATA = "requires_nagata"
    REQUIRES_SHGH = "requires_shgh"


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def sqrt_cmp(x: Fraction, n: int) -> int:
    """Sign of x - sqrt(n), exactly."""
    x = Fraction(x)
    if x < 0:
        return -1
    lhs = x.numerator ** 2
    rhs = n * x.denominator ** 2
    return (lhs > rhs) - (lhs < rhs)


def rational_to_json(x: Fraction) -> Dict[str, str]:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(data: Dict[str, str]) -> Fraction:
    den = int(data["den"])
    if den <= 0:
        raise ArgumentError(f"denominator must be positive, got {den}")
    return Fraction(int(data["num"]), den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# =============================================================================
# DOMAIN TYPES
# =============================================================================

@dataclass(frozen=True)
class Surface:
    """Blowup of P^2 at n very general points, plus assumption flags."""

    n: int
    assume_shgh: bool = False
    assume_nagata: bool = False

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise ArgumentError(f"number of points must be a positive integer, got {self.n!r}")
        # SHGH implies Nagata
        if self.assume_shgh and not self.assume_nagata:
            object.__setattr__(self, "assume_nagata", True)

    @property
    def is_square(self) -> bool:
        return is_square(self.n)

    @property
    def moduli_empty_for_every_ample(self) -> bool:
        return self.n <= 9

    def divisor(self, d: int, m: Iterable[int]) -> "Divisor":
        D = Divisor(d, tuple(m))
        if D.n != self.n:
            raise DimensionMismatchError(f"expected {self.n} multiplicities, got {D.n}")
        return D

    def uniform(self, d: int, m: int) -> "Divisor":
        return Divisor(d, (m,) * self.n)

    def trivial(self) -> "Divisor":
        return self.uniform(0, 0)

    def hyperplane(self) -> "Divisor":
        return self.uniform(1, 0)

    def exceptional(self, i: int) -> "Divisor":
        """E_i, 1-based."""
        if not 1 <= i <= self.n:
            raise ArgumentError(f"exceptional index must lie in 1..{self.n}, got {i}")
        m = [0] * self.n
        m[i - 1] = -1
        return Divisor(0, tuple(m))

    def canonical(self) -> "Divisor":
        return canonical(self)


@dataclass(frozen=True)
class Divisor:
    """dH - sum m_i E_i"""

    d: int
    m: Tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.m)
        if not m:
            raise ArgumentError("a divisor needs at least one multiplicity")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return len(self.m)

    @property
    def total_multiplicity(self) -> int:
        return sum(self.m)

    def _check(self, other: "Divisor") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(f"divisors on {self.n} and {other.n} points")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.d + other.d, tuple(a + b for a, b in zip(self.m, other.m)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.d - other.d, tuple(a - b for a, b in zip(self.m, other.m)))

    def __neg__(self) -> "Divisor":
        return Divisor(-self.d, tuple(-a for a in self.m))

    def __mul__(self, k: int) -> "Divisor":
        if not isinstance(k, int):
            return NotImplemented
        return Divisor(k * self.d, tuple(k * a for a in self.m))

    __rmul__ = __mul__

    def canonical_form(self) -> "Divisor":
        """Same class with multiplicities sorted non-increasing."""
        return Divisor(self.d, tuple(sorted(self.m, reverse=True)))

    def sort_key(self) -> Tuple:
        c = self.canonical_form()
        return (c.d, tuple(-x for x in c.m))

    @property
    def is_trivial(self) -> bool:
        return self.d == 0 and all(x == 0 for x in self.m)

    @property
    def is_exceptional(self) -> bool:
        return self.d == 0 and sorted(self.m) == [-1] + [0] * (self.n - 1)

    def to_json(self) -> Dict:
        return {"d": self.d, "m": list(self.m)}

    @classmethod
    def from_json(cls, data: Dict) -> "Divisor":
        return cls(int(data["d"]), tuple(int(x) for x in data["m"]))

    def __str__(self) -> str:
        return format_divisor(self)


@dataclass(frozen=True)
class Polarization:
    """A_t = tH - E"""

    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))

    def degree(self, D: Divisor) -> Fraction:
        return self.t * D.d - D.total_multiplicity

    def ample_conditionality(self, s: Surface) -> Optional[Conditionality]:
        """None when A_t is not ample; otherwise what ampleness rests on."""
        if s.n <= 9:
            raise UnsupportedSurfaceError(
                f"n={s.n}: the nef cone is not cut out by the A_t ray for n <= 9")
        if self.t <= 0 or sqrt_cmp(self.t, s.n) <= 0:
            return None
        if s.is_square:
            return Conditionality.UNCONDITIONAL
        bound = KNOWN_NAGATA_BOUNDS.get(s.n)
        if bound is not None and self.t > bound:
            return Conditionality.UNCONDITIONAL
        return Conditionality.REQUIRES_NAGATA


# =============================================================================
# OPERATIONS
# =============================================================================

def intersect(a: Divisor, b: Divisor) -> int:
    if a.n != b.n:
        raise DimensionMismatchError(f"divisors on {a.n} and {b.n} points")
    return a.d * b.d - sum(x * y for x, y in zip(a.m, b.m))


def canonical(s: Surface) -> Divisor:
    """K = -3H + E"""
    return s.uniform(-3, -1)


def _canonical_for(D: Divisor) -> Divisor:
    return Divisor(-3, (-1,) * D.n)


def chi(D: Divisor) -> int:
    """Riemann-Roch, evaluated two ways."""
    direct = (D.d + 1) * (D.d + 2) - sum(x * (x + 1) for x in D.m)
    if direct % 2:
        raise ConsistencyError(f"odd Riemann-Roch numerator for {D}")
    direct //= 2
    twice = 2 + intersect(D, D - _canonical_for(D))
    if twice != 2 * direct:
        raise ConsistencyError(f"Riemann-Roch evaluations disagree for {D}")
    return direct


def serre_dual(D: Divisor) -> Divisor:
    return _canonical_for(D) - D


def is_balanced(D: Divisor) -> bool:
    return max(D.m) - min(D.m) <= 1


def rebalance(D: Divisor) -> Tuple[int, Divisor]:
    """Move one unit from a largest to a smallest multiplicity until balanced.

    Returns (steps, balanced divisor in canonical form).
    """
    m = sorted(D.m, reverse=True)
    steps = 0
    while m[0] - m[-1] > 1:
        m[0] -= 1
        m[-1] += 1
        steps += 1
        m.sort(reverse=True)
    return steps, Divisor(D.d, tuple(m))


def steps_from_equal(D: Divisor) -> int:
    if not is_balanced(D):
        raise PreconditionError(f"{D} does not have balanced multiplicities")
    top = max(D.m)
    k = sum(1 for x in D.m if x == top) if top != min(D.m) else 0
    return min(k, D.n - k)


def below_nef_wall(D: Divisor) -> bool:
    """Decide 2B.D < B.K, i.e. sqrt(n)(2d+3) < n + 2M."""
    n = D.n
    lhs = 2 * D.d + 3
    rhs = n + 2 * D.total_multiplicity
    if lhs > 0:
        return rhs > 0 and n * lhs * lhs < rhs * rhs
    if lhs == 0:
        return rhs > 0
    if rhs > 0:
        return True
    return n * lhs * lhs > rhs * rhs


def wall_t(D: Divisor) -> Fraction:
    """t_D with 2A_t.D = A_t.K"""
    den = 2 * D.d + 3
    if den == 0:
        raise DegenerateWallError(f"{D} has 2d+3 = 0 and no finite wall")
    return Fraction(D.n + 2 * D.total_multiplicity, den)


def permutation_count(D: Divisor) -> int:
    count = factorial(D.n)
    for c in Counter(D.m).values():
        count //= factorial(c)
    return count


# =============================================================================
# FORMATTING
# =============================================================================

def _index_label(indices: List[int]) -> str:
    if len(indices) == 1:
        return f"E_{indices[0]}"
    runs: List[List[int]] = []
    for i in indices:
        if runs and i == runs[-1][1] + 1:
            runs[-1][1] = i
        else:
            runs.append([i, i])
    parts = []
    for start, stop in runs:
        if stop - start >= 3:
            parts.append(f"{start},...,{stop}")
        else:
            parts.extend(str(i) for i in range(start, stop + 1))
    return "E_{" + ",".join(parts) + "}"


def format_divisor(D: Divisor, by_index: bool = False) -> str:
    """ASCII label such as 57H-18E, 15H-5E_1-4E_{2,...,13} or H-E_{1,2}+E_3.

    By default the label names the orbit: runs are numbered from 1 in
    decreasing order of multiplicity, so E_5 and E_1 both print as E_1.
    With by_index the actual point indices are used.
    """
    counts = Counter(x for x in D.m if x != 0)
    parts = []
    if D.d != 0:
        parts.append("H" if D.d == 1 else "-H" if D.d == -1 else f"{D.d}H")
    if len(counts) == 1 and sum(counts.values()) == D.n:
        (value,) = counts
        coeff = "" if abs(value) == 1 else str(abs(value))
        sign = "-" if value > 0 else "+"
        parts.append(f"{sign}{coeff}E")
    else:
        index = 1
        for value in sorted(counts, reverse=True):
            run = counts[value]
            coeff = "" if abs(value) == 1 else str(abs(value))
            sign = "-" if value > 0 else "+"
            if by_index:
                indices = [i + 1 for i, x in enumerate(D.m) if x == value]
            else:
                indices = list(range(index, index + run))
            parts.append(f"{sign}{coeff}{_index_label(indices)}")
            index += run
    if not parts:
        return "O"
    label = "".join(parts)
    return label[1:] if label.startswith("+") else label
