"""
Continued fraction of sqrt(n) and its convergents.

Convergents are 1-based: p_1/q_1 = a0/1, with the virtual p_0/q_0 = 1/0.
With that indexing p_k q_{k-1} - p_{k-1} q_k = (-1)^k, odd convergents lie
below sqrt(n) and even ones above.
"""

from dataclasses import dataclass
from itertools import chain, cycle
from math import isqrt
from typing import Dict, Iterator, List, Tuple

from errors import ArgumentError, ConsistencyError, IntegralityError, SquareInputError, UnsupportedSurfaceError
from lattice.picard import Divisor, chi


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    period: Tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)

    def terms(self) -> Iterator[int]:
        """a0, a1, a2, ... forever."""
        return chain((self.a0,), cycle(self.period))


@dataclass(frozen=True)
class Convergent:
    k: int
    p: int
    q: int

    def to_json(self) -> Dict:
        return {"k": self.k, "p": str(self.p), "q": str(self.q)}

    @classmethod
    def from_json(cls, data: Dict) -> "Convergent":
        return cls(int(data["k"]), int(data["p"]), int(data["q"]))


def require_nonsquare(n: int) -> int:
    if not isinstance(n, int) or n < 1:
        raise ArgumentError(f"n must be a positive integer, got {n!r}")
    a0 = isqrt(n)
    if a0 * a0 == n:
        raise SquareInputError(n)
    return a0


def sqrt_cf(n: int) -> CFExpansion:
    """Quadratic-surd recurrence; the period closes on the first repeated (m, d) state."""
    a0 = require_nonsquare(n)
    m, d, a = 0, 1, a0
    seen = set()
    period: List[int] = []
    while True:
        m = d * a - m
        d = (n - m * m) // d
        a = (a0 + m) // d
        if (m, d) in seen:
            break
        seen.add((m, d))
        period.append(a)
    if period[-1] != 2 * a0:
        raise ConsistencyError(f"period of sqrt({n}) does not end in 2*a0")
    return CFExpansion(a0, tuple(period))


def convergents(n: int, count: int) -> List[Convergent]:
    if count < 1:
        raise ArgumentError(f"count must be positive, got {count}")
    terms = sqrt_cf(n).terms()
    result = []
    p_prev, q_prev = 1, 0
    p, q = next(terms), 1
    result.append(Convergent(1, p, q))
    for k in range(2, count + 1):
        a = next(terms)
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        result.append(Convergent(k, p, q))
    return result


def divisor_from_convergent(n: int, k: int) -> Divisor:
    """D_k = ((p_k - 3)/2) H - ((q_k - 1)/2) E for 10 <= n <= 12, k odd."""
    if not 10 <= n <= 12:
        raise UnsupportedSurfaceError(f"convergent divisors are only established for 10 <= n <= 12, got n={n}")
    if k < 1 or k % 2 == 0:
        raise IntegralityError(f"convergent index must be odd and positive, got k={k}")
    c = convergents(n, k)[-1]
    if c.p % 2 == 0 or c.q % 2 == 0:
        raise IntegralityError(f"p_{k}={c.p}, q_{k}={c.q} are not both odd")
    D = Divisor((c.p - 3) // 2, ((c.q - 1) // 2,) * n)
    if chi(D) != 1:
        raise ConsistencyError(f"chi({D}) = {chi(D)}, expected 1")
    return D
