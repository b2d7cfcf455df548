"""
=============================================================================
WALLS - Components of M_{A_t}(2, K, chi) and how they change with t
=============================================================================

As t decreases from n/3 towards sqrt(n):

- t > n/3: the moduli space is empty.
- t = n/3: for n >= 11 a P^{n-11} of type-O bundles appears.
- t = (n-2)/3, 13 <= n <= 16: that component is blown up at the n points
  (type-E_i bundles); no new component.
- t = t_D for every other type D: a new P^{-chi(2D-K)-1}, one for each
  permutation of the multiplicities.

For 10 <= n <= 15 this rests on the SHGH conjecture; n = 16 and n = 25 are
unconditional. The conditionality travels with every result as data; the
CLI decides whether to print it.
=============================================================================
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from heapq import merge
from itertools import islice
from math import isqrt
from typing import Callable, Dict, List, Optional, Tuple

import config
from classification.classify import TypeOrbit, type_families
from errors import (
    ArgumentError,
    AssumptionRequiredError,
    ConsistencyError,
    DimensionMismatchError,
    IntegralityError,
    PreconditionError,
    UnsupportedSurfaceError,
    WallBoundaryError,
)
from lattice.picard import (
    Conditionality,
    Divisor,
    Polarization,
    Surface,
    below_nef_wall,
    chi,
    format_divisor,
    format_rational,
    rational_from_json,
    rational_to_json,
    sqrt_cmp,
)
from numtheory.contfrac import convergents, divisor_from_convergent

logger = logging.getLogger(__name__)

MODULI_SUPPORTED_N = frozenset(range(10, 17)) | {25}
MAX_CHI: Dict[int, int] = {**{n: 2 for n in range(10, 17)}, 25: 4}


class EventKind(str, Enum):
    EMPTINESS_BOUNDARY = "emptiness_boundary"
    NEW_COMPONENT = "new_component"
    BLOWUP_MODIFICATION = "blowup_modification"


class ComponentShape(str, Enum):
    PROJECTIVE_SPACE = "projective_space"
    BLOWUP_OF_PROJECTIVE_SPACE = "blowup_of_projective_space"


@dataclass(frozen=True)
class WallEvent:
    t: Fraction
    kind: EventKind
    orbit: Optional[TypeOrbit]
    component_dim: Optional[int]
    copies: int
    conditionality: Conditionality

    @property
    def divisor(self) -> Optional[Divisor]:
        return self.orbit.representative if self.orbit else None

    def to_json(self) -> Dict:
        return {
            "t": rational_to_json(self.t),
            "kind": self.kind.value,
            "divisor": self.divisor.to_json() if self.orbit else None,
            "label": str(self.divisor) if self.orbit else None,
            "family": self.orbit.family_label if self.orbit else None,
            "dim": self.component_dim,
            "copies": self.copies,
            "conditionality": self.conditionality.value,
        }

    @classmethod
    def from_json(cls, data: Dict) -> "WallEvent":
        orbit = None
        if data["divisor"] is not None:
            D = Divisor.from_json(data["divisor"])
            orbit = TypeOrbit.of(D, Conditionality(data["conditionality"]),
                                 family_label=data.get("family"))
        return cls(rational_from_json(data["t"]), EventKind(data["kind"]), orbit,
                   data["dim"], int(data["copies"]), Conditionality(data["conditionality"]))


@dataclass(frozen=True)
class ExtDims:
    hom: int
    ext1: int
    ext2: int
    conditionality: Conditionality = Conditionality.REQUIRES_SHGH

    @property
    def euler(self) -> int:
        return self.hom - self.ext1 + self.ext2


@dataclass(frozen=True)
class CohomologyReport:
    divisor: Divisor
    h_D: Tuple[int, int, int]
    h_2D: Tuple[int, int, int]
    h_2D_minus_K: Tuple[int, int, int]
    conditionality: Conditionality

    def to_json(self) -> Dict:
        return {
            "divisor": self.divisor.to_json(),
            "label": format_divisor(self.divisor, by_index=True),
            "h(D)": list(self.h_D),
            "h(2D)": list(self.h_2D),
            "h(2D-K)": list(self.h_2D_minus_K),
            "conditionality": self.conditionality.value,
        }


@dataclass(frozen=True)
class Component:
    divisor: Divisor
    dim: int
    copies: int
    shape: ComponentShape = ComponentShape.PROJECTIVE_SPACE
    blown_up_points: int = 0

    def describe(self) -> str:
        space = f"P^{self.dim}"
        if self.shape is ComponentShape.BLOWUP_OF_PROJECTIVE_SPACE:
            space = f"Bl_{self.blown_up_points} {space}"
        return space if self.copies == 1 else f"{self.copies} copies of {space}"

    def to_json(self) -> Dict:
        return {
            "divisor": self.divisor.to_json(),
            "label": str(self.divisor),
            "dim": self.dim,
            "copies": self.copies,
            "description": self.shape.value,
            "blown_up_points": self.blown_up_points,
        }


@dataclass(frozen=True)
class ModuliSnapshot:
    n: int
    chi: int
    t: Fraction
    components: Tuple[Component, ...]
    conditionality: Conditionality
    ample: Optional[Conditionality]

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "chi": self.chi,
            "t": rational_to_json(self.t),
            "components": [c.to_json() for c in self.components],
            "conditionality": self.conditionality.value,
            "ample": self.ample.value if self.ample else None,
        }


@dataclass(frozen=True)
class CertifiedOrbit:
    divisor: Divisor
    dim: int
    lo: int
    hi: int
    t_wall: Fraction


@dataclass(frozen=True)
class ComponentCertificate:
    """For sqrt(n) < t < t_star the listed components all exist."""

    t_star: Fraction
    orbits: Tuple[CertifiedOrbit, ...]

    def to_json(self) -> Dict:
        return {
            "t_star": rational_to_json(self.t_star),
            "orbits": [
                {"divisor": o.divisor.to_json(), "label": str(o.divisor), "dim": o.dim,
                 "bounds": [o.lo, o.hi], "t_wall": rational_to_json(o.t_wall)}
                for o in self.orbits
            ],
        }


# =============================================================================
# DIMENSIONS AND COHOMOLOGY
# =============================================================================

def _moduli_conditionality(n: int) -> Conditionality:
    return Conditionality.UNCONDITIONAL if n in (16, 25) else Conditionality.REQUIRES_SHGH


def _canonical_for(D: Divisor) -> Divisor:
    return Divisor(-3, (-1,) * D.n)


def component_dim(D: Divisor) -> int:
    n = D.n
    if D.is_trivial or D.is_exceptional:
        dim = n - 11
        if D.is_trivial and dim != -chi(-_canonical_for(D)) - 1:
            raise ConsistencyError(f"type-O dimension formulas disagree for n={n}")
    else:
        dim = -chi(2 * D - _canonical_for(D)) - 1
    if dim < 0:
        raise ConsistencyError(f"{D} gives a component of negative dimension {dim}")
    return dim


def ext_dims(D: Divisor, s: Surface) -> ExtDims:
    if D.n != s.n:
        raise DimensionMismatchError(f"divisor on {D.n} points, surface with {s.n}")
    n = s.n
    if D.is_trivial or D.is_exceptional:
        if n < 11:
            raise ConsistencyError(f"no type-{D} bundles exist for n={n}")
        dims = ExtDims(1, n - 11, 1, _moduli_conditionality(n))
    else:
        dims = ExtDims(1, -chi(2 * D - _canonical_for(D)) - 1, chi(2 * D), _moduli_conditionality(n))
        if dims.ext1 < 0 or dims.ext2 < 0:
            raise ConsistencyError(f"negative ext dimension for {D}: {dims}")
    # chi(V, V) = 4 chi(V) + 5 - n with chi(V) = 2 chi(D)
    if dims.euler != 8 * chi(D) + 5 - n:
        raise ConsistencyError(f"Euler form of {D} is {dims.euler}, expected {8 * chi(D) + 5 - n}")
    return dims


def shgh_cohomology_report(D: Divisor, s: Surface) -> CohomologyReport:
    n = s.n
    if not 10 <= n <= 16:
        raise UnsupportedSurfaceError(f"cohomology reports cover 10 <= n <= 16, got n={n}")
    if D.n != n:
        raise DimensionMismatchError(f"divisor on {D.n} points, surface with {n}")
    if D.d < 0 or chi(D) < 1 or not below_nef_wall(D):
        raise PreconditionError(f"{D} is not a type: need d >= 0, chi >= 1 and 2B.D < B.K")
    if n != 16 and not s.assume_shgh:
        raise AssumptionRequiredError("SHGH", "--assume-shgh")

    h_D = (1, 0, 0)
    h_2D = (1, 1, 0) if D.is_exceptional else (chi(2 * D), 0, 0)
    h1 = -chi(2 * D - _canonical_for(D))
    if h1 < 0 or (h1 == 0 and not (D.is_trivial and n == 10)):
        raise ConsistencyError(f"h^1(2D-K) = {h1} for {D}")
    return CohomologyReport(D, h_D, h_2D, (0, h1, 0), _moduli_conditionality(n))


def growth_formula(n: int, k: int) -> int:
    """chi(2D_k - K) from the denominator q_k alone."""
    if n not in (10, 11, 12):
        raise UnsupportedSurfaceError(f"growth formula covers n = 10, 11, 12, got n={n}")
    if k < 3 or k % 2 == 0:
        raise IntegralityError(f"k must be odd and at least 3, got {k}")
    q = convergents(n, k)[-1].q
    floor_term = isqrt(9 * n * q * q) - n * q
    numerator = 11 - n + floor_term
    if numerator % 2:
        raise ConsistencyError(f"growth formula is not integral for n={n}, k={k}")
    value = numerator // 2
    D = divisor_from_convergent(n, k)
    if value != chi(2 * D - _canonical_for(D)):
        raise ConsistencyError(f"growth formula disagrees with Riemann-Roch for n={n}, k={k}")
    return value


def elem_mod_dim_bounds(base_dim: int, steps: int) -> Tuple[int, int]:
    """Dimension window after `steps` elementary modifications."""
    if base_dim < 0 or steps < 0:
        raise ArgumentError(f"need nonnegative dimension and steps, got ({base_dim}, {steps})")
    return base_dim + 3 * steps, base_dim + 4 * steps


# =============================================================================
# TIMELINE
# =============================================================================

def _check_moduli_surface(s: Surface, chi_value: int) -> None:
    if s.n not in MODULI_SUPPORTED_N:
        raise UnsupportedSurfaceError(
            f"n={s.n}: moduli descriptions are established for 10 <= n <= 16 and n = 25")
    if chi_value != MAX_CHI[s.n]:
        raise ArgumentError(f"chi must be {MAX_CHI[s.n]} for n={s.n}, got {chi_value}")


def _event_for(s: Surface, orbit: TypeOrbit) -> Optional[WallEvent]:
    n = s.n
    D = orbit.representative
    cond = _moduli_conditionality(n)
    if D.is_trivial:
        if n < 11:
            return None
        return WallEvent(orbit.t_wall, EventKind.NEW_COMPONENT, orbit, n - 11, 1, cond)
    if D.is_exceptional:
        if not 13 <= n <= 16:
            raise ConsistencyError(f"exceptional type on n={n} has no established role")
        return WallEvent(orbit.t_wall, EventKind.BLOWUP_MODIFICATION, orbit, n - 11, n, cond)
    return WallEvent(orbit.t_wall, EventKind.NEW_COMPONENT, orbit, component_dim(D), orbit.copies, cond)


def _finish(s: Surface, events: List[WallEvent], keep: Callable[[Fraction], bool]) -> List[WallEvent]:
    third = Fraction(s.n, 3)
    if keep(third) and not any(e.t == third for e in events):
        events.append(WallEvent(third, EventKind.EMPTINESS_BOUNDARY, None, None, 0,
                                _moduli_conditionality(s.n)))
    events.sort(key=lambda e: -e.t)
    for a, b in zip(events, events[1:]):
        if a.t == b.t:
            raise ConsistencyError(f"two events share the wall t = {format_rational(a.t)}")
    return events


def _collect(s: Surface, chi_value: int, keep: Callable[[Fraction], bool],
             max_depth: Optional[int]) -> List[WallEvent]:
    limit = max_depth or config.max_depth()
    events = []
    for family in type_families(s, (chi_value + 1) // 2):
        for count, orbit in enumerate(family.members()):
            if not keep(orbit.t_wall):
                break
            if count >= limit:
                raise ArgumentError(
                    f"more than {limit} walls of one family lie above the threshold; "
                    f"raise NEFWALL_MAX_DEPTH or the threshold")
            event = _event_for(s, orbit)
            if event is not None:
                events.append(event)
    return _finish(s, events, keep)


def wall_events(s: Surface, chi_value: int, t_min: Fraction,
                max_depth: Optional[int] = None) -> List[WallEvent]:
    """Every event with t > t_min, in strictly decreasing t."""
    if s.moduli_empty_for_every_ample:
        return []
    _check_moduli_surface(s, chi_value)
    t_min = Fraction(t_min)
    # square n has finitely many types, so t_min = sqrt(n) is allowed there
    side = sqrt_cmp(t_min, s.n)
    if side < 0 or (side == 0 and not s.is_square):
        raise ArgumentError(f"t_min = {format_rational(t_min)} must exceed sqrt({s.n})")
    events = _collect(s, chi_value, lambda t: t > t_min, max_depth)
    logger.info("n=%d chi=%d: %d events above t=%s", s.n, chi_value, len(events), format_rational(t_min))
    return events


def first_wall_events(s: Surface, chi_value: int, count: int) -> List[WallEvent]:
    """The emptiness boundary (if any) plus the first `count` component events."""
    if s.moduli_empty_for_every_ample:
        return []
    _check_moduli_surface(s, chi_value)
    if count < 1:
        raise ArgumentError(f"count must be positive, got {count}")
    events = []
    for family in type_families(s, (chi_value + 1) // 2):
        taken = 0
        for orbit in family.members():
            event = _event_for(s, orbit)
            if event is None:
                continue
            events.append(event)
            taken += 1
            if taken == count:
                break
    events.sort(key=lambda e: -e.t)
    return _finish(s, events[:count], lambda t: True)


def snapshot(s: Surface, chi_value: int, t: Fraction,
             max_depth: Optional[int] = None) -> ModuliSnapshot:
    """Components of the moduli space at polarization A_t."""
    t = Fraction(t)
    if s.moduli_empty_for_every_ample:
        return ModuliSnapshot(s.n, chi_value, t, (), Conditionality.UNCONDITIONAL, None)
    _check_moduli_surface(s, chi_value)
    if sqrt_cmp(t, s.n) <= 0 or t > Fraction(s.n, 3):
        raise ArgumentError(f"t = {format_rational(t)} must satisfy sqrt({s.n}) < t <= {s.n}/3")

    events = _collect(s, chi_value, lambda w: w >= t, max_depth)
    on_wall = [e for e in events if e.t == t]
    # 25 points: the chamber 5 < t <= 27/5 is closed on the right
    closed_right = s.n == 25 and all(e.kind is EventKind.NEW_COMPONENT for e in on_wall)
    if on_wall and not closed_right:
        raise WallBoundaryError(f"t lies on a wall (t = {format_rational(t)}); perturb t")

    blown_up = any(e.kind is EventKind.BLOWUP_MODIFICATION for e in events)
    components = []
    for e in events:
        if e.kind is not EventKind.NEW_COMPONENT:
            continue
        if e.divisor.is_trivial and blown_up:
            components.append(Component(e.divisor, e.component_dim, e.copies,
                                        ComponentShape.BLOWUP_OF_PROJECTIVE_SPACE, s.n))
        else:
            components.append(Component(e.divisor, e.component_dim, e.copies))
    return ModuliSnapshot(s.n, chi_value, t, tuple(components), _moduli_conditionality(s.n),
                          Polarization(t).ample_conditionality(s))


def components_at_least(s: Surface, chi_value: int, k: int, r: int,
                        max_depth: Optional[int] = None) -> ComponentCertificate:
    """A t_star > sqrt(n) below which M_{A_t}(2, K, chi) has k components of dimension >= r."""
    if not 10 <= s.n <= 12:
        raise UnsupportedSurfaceError(f"component certificates cover 10 <= n <= 12, got n={s.n}")
    if not s.assume_shgh:
        raise AssumptionRequiredError("SHGH", "--assume-shgh")
    if chi_value > 2:
        raise ArgumentError(f"chi must be at most 2, got {chi_value}")
    if k < 1 or r < 1:
        raise ArgumentError(f"k and r must be positive, got k={k}, r={r}")
    steps = 2 - chi_value
    limit = (max_depth or config.max_depth()) + 1
    walk = merge(*(f.members() for f in type_families(s, 1)), key=lambda o: -o.t_wall)
    chosen: List[CertifiedOrbit] = []
    for orbit in islice(walk, limit):
        D = orbit.representative
        if D.is_trivial:
            continue
        dim = component_dim(D)
        lo, hi = elem_mod_dim_bounds(dim, steps)
        if lo >= r and all(abs(dim - c.dim) > steps for c in chosen):
            chosen.append(CertifiedOrbit(D, dim, lo, hi, orbit.t_wall))
            if len(chosen) == k:
                return ComponentCertificate(orbit.t_wall, tuple(chosen))
    raise ArgumentError(f"fewer than {k} qualifying components among the first {limit} types; "
                        f"raise NEFWALL_MAX_DEPTH")
