"""
=============================================================================
CLASSIFY - Divisor types D with chi(D) >= chi and 2B.D < B.K
=============================================================================

Pipeline:
1. chi(D) < (n-1)/8 bounds the Euler characteristics to try.
2. Balanced types are dH - mE' - (m-1)E'' with k entries m-1; they are at
   most max_steps_from_equal steps from equal multiplicities, so k is small
   or close to n.
3. (2D-K)^2 = 8 chi - 8 + 9 - n turns each (chi, k) into
   (2d+3)^2 - n(2m+1)^2 + 8km = C, solved by numtheory.diophantine.
4. A solution is a type when d >= 0 (with chi >= 1 that forces
   effectivity) and below_nef_wall holds. Each chain contributes its
   relevant members in one direction only.
5. Unbalanced types rebalance to a balanced type of larger chi with the
   same d and sum of multiplicities, hence the same wall; they are read
   off the balanced types directly.
=============================================================================
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import islice
from math import isqrt
from typing import Dict, Iterator, List, Optional, Tuple

from errors import ArgumentError, ConsistencyError, PreconditionError, UnsupportedSurfaceError
from lattice.picard import (
    Conditionality,
    Divisor,
    Surface,
    below_nef_wall,
    chi,
    is_balanced,
    permutation_count,
    rational_from_json,
    rational_to_json,
    steps_from_equal,
    wall_t,
)
from numtheory.diophantine import SolutionChain, iter_chain, quad_with_linear

logger = logging.getLogger(__name__)

SUPPORTED_N = frozenset(range(10, 18)) | {25}
UNCONDITIONAL_N = frozenset({16, 25})

# (k, fundamental solution) -> family name for thirteen points
FAMILY_LABELS_N13: Dict[Tuple[int, Tuple[int, int]], str] = {
    (0, (0, 0)): "I",
    (0, (-3, 0)): "II",
    (1, (-3, 0)): "III",
    (1, (0, 0)): "IV",
    (12, (0, 0)): "V",
    (12, (-3, 0)): "VI",
}
_ROMAN = ("I", "II", "III", "IV", "V", "VI")

# Window searched on each side of the fundamental when orienting a chain
_PROBE = (2, 3)


@dataclass(frozen=True)
class TypeOrbit:
    """A divisor type up to permutation of the points."""

    representative: Divisor
    copies: int
    chi: int
    t_wall: Fraction
    family_label: Optional[str] = None
    chain_handle: Optional[SolutionChain] = field(default=None, compare=False, repr=False)
    conditionality: Conditionality = Conditionality.REQUIRES_NAGATA
    member_index: Optional[int] = None

    @classmethod
    def of(cls, D: Divisor, conditionality: Conditionality, **extra) -> "TypeOrbit":
        D = D.canonical_form()
        return cls(D, permutation_count(D), chi(D), wall_t(D), conditionality=conditionality, **extra)

    def to_json(self) -> Dict:
        return {
            "divisor": self.representative.to_json(),
            "label": str(self.representative),
            "copies": self.copies,
            "chi": self.chi,
            "family": self.family_label,
            "conditionality": self.conditionality.value,
            "t_wall": rational_to_json(self.t_wall),
        }

    @classmethod
    def from_json(cls, data: Dict) -> "TypeOrbit":
        return cls(
            Divisor.from_json(data["divisor"]),
            int(data["copies"]),
            int(data["chi"]),
            rational_from_json(data["t_wall"]),
            family_label=data.get("family"),
            conditionality=Conditionality(data["conditionality"]),
        )


def _orbit_order(orbit: TypeOrbit) -> Tuple:
    return (-orbit.t_wall, orbit.representative.sort_key())


def shape_divisor(n: int, d: int, m: int, k: int) -> Divisor:
    """d H with n-k multiplicities m and k multiplicities m-1, sorted."""
    return Divisor(d, (m,) * (n - k) + (m - 1,) * k)


def _is_type(D: Divisor) -> bool:
    return D.d >= 0 and below_nef_wall(D)


@dataclass(frozen=True)
class TypeFamily:
    """Types coming from one solution chain (or one isolated divisor)."""

    n: int
    chi: int
    conditionality: Conditionality
    k: Optional[int] = None
    chain: Optional[SolutionChain] = None
    label: Optional[str] = None
    seeds: Tuple[Divisor, ...] = ()

    @property
    def is_infinite(self) -> bool:
        return self.chain is not None and not self.chain.is_finite

    def _divisor(self, point: Tuple[int, int]) -> Divisor:
        return shape_divisor(self.n, point[0], point[1], self.k)

    def _orbit(self, D: Divisor, index: int) -> TypeOrbit:
        return TypeOrbit.of(D, self.conditionality, family_label=self.label,
                            chain_handle=self.chain, member_index=index)

    def members(self) -> Iterator[TypeOrbit]:
        """Types in ascending d, i.e. descending wall."""
        if self.chain is None:
            for i, D in enumerate(sorted(self.seeds, key=lambda D: D.sort_key())):
                yield self._orbit(D, i)
            return
        if self.chain.is_finite:
            D = self._divisor(self.chain.fundamental)
            if _is_type(D):
                yield self._orbit(D, 0)
            return
        # Relevant members near the fundamental may sit on either side of it
        lo, hi = -max(_PROBE), max(_PROBE)
        window = [self._divisor(self.chain.member(j)) for j in range(lo, hi + 1)]
        head = sorted((D for D in window if _is_type(D)), key=lambda D: D.d)
        index = 0
        for D in head:
            yield self._orbit(D, index)
            index += 1
        for point in iter_chain(self.chain, hi + 1):
            D = self._divisor(point)
            if _is_type(D):
                yield self._orbit(D, index)
                index += 1


# =============================================================================
# BOUNDS
# =============================================================================

def _check_supported(s: Surface) -> None:
    if s.n not in SUPPORTED_N:
        raise UnsupportedSurfaceError(
            f"n={s.n}: types are classified only for 10 <= n <= 17 and n = 25")


def _conditionality(s: Surface) -> Conditionality:
    return Conditionality.UNCONDITIONAL if s.n in UNCONDITIONAL_N else Conditionality.REQUIRES_NAGATA


def chi_strict_bound(s: Surface) -> Fraction:
    """Every admissible D has chi(D) < (n-1)/8."""
    return Fraction(s.n - 1, 8)


def _steps_admissible(n: int, chi_D: int, ell: int) -> bool:
    """ell < (n - sqrt((8 chi + 1) n)) / 2, exactly."""
    gap = n - 2 * ell
    return gap > 0 and gap * gap > (8 * chi_D + 1) * n


def max_steps_from_equal(s: Surface, chi_D: int) -> int:
    if chi_D < 1:
        raise PreconditionError(f"chi must be at least 1, got {chi_D}")
    if not _steps_admissible(s.n, chi_D, 0):
        raise PreconditionError(f"n={s.n}, chi={chi_D}: no balanced divisor can lie below the nef wall")
    ell = 0
    while _steps_admissible(s.n, chi_D, ell + 1):
        ell += 1
    return ell


def verify_sufficient(D: Divisor, chi_D: int) -> bool:
    """Balanced, effective, chi(D) = chi_D: check the numerical criterion for 2B.D < B.K."""
    if not is_balanced(D):
        raise PreconditionError(f"{D} does not have balanced multiplicities")
    if min(D.m) < 0:
        raise PreconditionError(f"{D} has a negative multiplicity")
    if chi(D) != chi_D:
        raise PreconditionError(f"chi({D}) = {chi(D)}, not {chi_D}")
    if chi_D < 1:
        raise PreconditionError(f"chi must be at least 1, got {chi_D}")
    n = D.n
    ok = 8 * chi_D < n - 1 and _steps_admissible(n, chi_D, steps_from_equal(D))
    if ok and not below_nef_wall(D):
        raise ConsistencyError(f"{D} passes the sufficient criterion but is not below the nef wall")
    return ok


# =============================================================================
# ENUMERATION
# =============================================================================

def _orient(s: Surface, chi_D: int, chain: SolutionChain) -> Optional[TypeFamily]:
    label = FAMILY_LABELS_N13.get((chain.k, chain.fundamental)) if s.n == 13 else None
    family = TypeFamily(s.n, chi_D, _conditionality(s), k=chain.k, chain=chain, label=label)
    if chain.is_finite:
        return family if _is_type(family._divisor(chain.fundamental)) else None

    def relevant(j: int) -> bool:
        return _is_type(family._divisor(chain.member(j)))

    forward = any(relevant(j) for j in _PROBE)
    backward = any(relevant(-j) for j in _PROBE)
    if forward and backward:
        raise ConsistencyError(f"chain through {chain.fundamental} (k={chain.k}) has types in both directions")
    if not (forward or backward):
        stray = [j for j in range(-max(_PROBE), max(_PROBE) + 1) if relevant(j)]
        if stray:
            raise ConsistencyError(f"chain through {chain.fundamental} (k={chain.k}) has isolated types")
        return None
    if backward:
        chain = chain.reversed()
    logger.debug("n=%d k=%d: family through %s runs %s", s.n, chain.k, chain.fundamental,
                 chain.direction.value)
    return replace(family, chain=chain)


def _spread(length: int, total: int, max_sq: int, hi: int, lo: int) -> Iterator[Tuple[int, ...]]:
    """Non-increasing integer tuples in [lo, hi] with given sum and sum of squares <= max_sq."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for x in range(hi, lo - 1, -1):
        rest = total - x
        if rest > (length - 1) * x or rest < (length - 1) * lo:
            continue
        floor_sq = 0
        if length > 1:
            q, r = divmod(rest, length - 1)
            floor_sq = r * (q + 1) ** 2 + (length - 1 - r) * q * q
        if x * x + floor_sq > max_sq:
            continue
        for tail in _spread(length - 1, rest, max_sq - x * x, x, lo):
            yield (x,) + tail


def _unbalanced_families(s: Surface, chi_target: int, balanced: List[TypeFamily]) -> List[TypeFamily]:
    # Infinite families only occur with chi = 1 in the supported range, so
    # only finite ones can have unbalanced relatives
    found: Dict[Divisor, TypeFamily] = {}
    for family in balanced:
        if family.is_infinite or family.chi <= chi_target:
            continue
        for B in family.members():
            base = B.representative
            slack = 2 * (B.chi - chi_target)
            max_sq = sum(x * x for x in base.m) + slack
            bound = isqrt(max_sq)
            for m in _spread(s.n, base.total_multiplicity, max_sq, bound, -bound):
                D = Divisor(base.d, m)
                if is_balanced(D) or chi(D) < chi_target or not _is_type(D):
                    continue
                found.setdefault(D, TypeFamily(s.n, chi(D), _conditionality(s), seeds=(D,)))
    return [found[D] for D in sorted(found, key=lambda D: D.sort_key())]


def type_families(s: Surface, chi_target: int) -> List[TypeFamily]:
    _check_supported(s)
    if chi_target < 1:
        raise ArgumentError(f"chi_target must be at least 1, got {chi_target}")
    families = []
    chi_D = chi_target
    while Fraction(chi_D) < chi_strict_bound(s):
        ell = max_steps_from_equal(s, chi_D)
        ks = sorted(set(range(ell + 1)) | set(range(s.n - ell, s.n)))
        C = 8 * chi_D - 8 + 9 - s.n
        for k in ks:
            for chain in quad_with_linear(s.n, k, C, depth=0):
                family = _orient(s, chi_D, chain)
                if family is not None:
                    families.append(family)
        chi_D += 1
    families += _unbalanced_families(s, chi_target, families)
    logger.debug("n=%d chi>=%d: %d families", s.n, chi_target, len(families))
    return families


def enumerate_types(s: Surface, chi_target: int, chain_depth: int) -> List[TypeOrbit]:
    """All types with chi >= chi_target, chain_depth members per family, by descending wall."""
    if chain_depth < 1:
        raise ArgumentError(f"chain depth must be positive, got {chain_depth}")
    seen = set()
    orbits = []
    for family in type_families(s, chi_target):
        for orbit in islice(family.members(), chain_depth):
            if orbit.representative in seen:
                continue
            seen.add(orbit.representative)
            orbits.append(orbit)
    return sorted(orbits, key=_orbit_order)


def classify_n13(depth: int) -> List[TypeOrbit]:
    """The six labelled families for thirteen points, depth members each."""
    if depth < 1:
        raise ArgumentError(f"depth must be positive, got {depth}")
    families = type_families(Surface(13), 1)
    labels = sorted(f.label for f in families if f.label)
    if labels != ["I", "II", "III", "IV", "V", "VI"] or len(families) != 6:
        raise ConsistencyError(f"expected families I-VI for n=13, found {labels}")
    orbits = []
    for family in sorted(families, key=lambda f: _ROMAN.index(f.label)):
        orbits.extend(islice(family.members(), depth))
    return orbits


def nef_pairing_twice(D: Divisor) -> int:
    """2B.D for square n, where B = sqrt(n) H - E is integral."""
    root = isqrt(D.n)
    if root * root != D.n:
        raise ArgumentError(f"B is irrational for n={D.n}")
    return 2 * (root * D.d - D.total_multiplicity)


def _pattern(n: int, d: int, runs: Dict[int, int]) -> Divisor:
    m = []
    for value, count in runs.items():
        m.extend([value] * count)
    m.extend([0] * (n - len(m)))
    return Divisor(d, tuple(m)).canonical_form()


# (d, nonzero multiplicity runs, 2B.D, chi, t_D), decreasing t_D
N25_CHI1_ROWS = (
    (0, {}, 0, 1, Fraction(25, 3)),
    (0, {-1: 1}, 2, 1, Fraction(23, 3)),
    (0, {-1: 2}, 4, 1, Fraction(7)),
    (0, {-1: 3}, 6, 1, Fraction(19, 3)),
    (1, {1: 2}, 6, 1, Fraction(29, 5)),
    (0, {-1: 4}, 8, 1, Fraction(17, 3)),
    (1, {1: 2, -1: 1}, 8, 1, Fraction(27, 5)),
    (1, {1: 1}, 8, 2, Fraction(27, 5)),
    (6, {2: 1, 1: 24}, 8, 1, Fraction(77, 15)),
)


def n25_chi1_table() -> List[TypeOrbit]:
    """All types on 25 points with chi >= 1, checked row by row against the known table."""
    orbits = enumerate_types(Surface(25), 1, 1)
    if len(orbits) != len(N25_CHI1_ROWS):
        raise ConsistencyError(f"expected {len(N25_CHI1_ROWS)} orbits for n=25, found {len(orbits)}")
    for orbit, (d, runs, two_b, chi_D, t) in zip(orbits, N25_CHI1_ROWS):
        D = orbit.representative
        if D != _pattern(25, d, runs):
            raise ConsistencyError(f"n=25 table row mismatch at {D}")
        if (nef_pairing_twice(D), orbit.chi, orbit.t_wall) != (two_b, chi_D, t):
            raise ConsistencyError(f"n=25 table columns disagree for {D}")
    return orbits


def brute_force_types(s: Surface, chi_target: int, d_max: int) -> List[Divisor]:
    """Test oracle: balanced types with 0 <= d <= d_max found by exhaustive scan."""
    n = s.n
    found = []
    for d in range(d_max + 1):
        top = (d + 1) * (d + 2)
        for m in range(-2, d // 3 + 3):
            for k in range(n):
                twice_chi = top - (n - k) * m * (m + 1) - k * (m - 1) * m
                if twice_chi < 2 * chi_target:
                    continue
                D = shape_divisor(n, d, m, k)
                if below_nef_wall(D):
                    found.append(D.canonical_form())
    return sorted(set(found), key=lambda D: D.sort_key())
