from fractions import Fraction

import pytest

from classification.classify import enumerate_types
from errors import (
    ArgumentError,
    AssumptionRequiredError,
    ConsistencyError,
    IntegralityError,
    PreconditionError,
    UnsupportedSurfaceError,
    WallBoundaryError,
)
from lattice.picard import Conditionality, Divisor, Surface, chi
from moduli.walls import (
    ComponentShape,
    EventKind,
    WallEvent,
    component_dim,
    components_at_least,
    elem_mod_dim_bounds,
    ext_dims,
    first_wall_events,
    growth_formula,
    shgh_cohomology_report,
    snapshot,
    wall_events,
)
from numtheory.contfrac import divisor_from_convergent


def _rows(events):
    return [(str(e.divisor), e.t, e.component_dim, e.copies)
            for e in events if e.kind is not EventKind.EMPTINESS_BOUNDARY]


def test_ten_points_table():
    events = first_wall_events(Surface(10, assume_shgh=True), 2, 3)
    assert events[0].kind is EventKind.EMPTINESS_BOUNDARY
    assert events[0].t == Fraction(10, 3)
    assert (events[0].component_dim, events[0].copies) == (None, 0)
    assert _rows(events) == [
        ("57H-18E", Fraction(370, 117), 8, 1),
        ("2220H-702E", Fraction(14050, 4443), 359, 1),
        ("84357H-26676E", Fraction(533530, 168717), 13688, 1),
    ]


@pytest.mark.parametrize("n, expected", [
    (11, [("O", Fraction(11, 3), 0, 1), ("30H-9E", Fraction(209, 63), 9, 1),
          ("627H-189E", Fraction(4169, 1257), 198, 1)]),
    (12, [("O", Fraction(4), 1, 1), ("21H-6E", Fraction(52, 15), 10, 1),
          ("312H-90E", Fraction(724, 209), 145, 1)]),
])
def test_eleven_and_twelve_point_tables(n, expected):
    events = first_wall_events(Surface(n), 2, 3)
    assert all(e.kind is EventKind.NEW_COMPONENT for e in events)
    assert _rows(events) == expected


def test_thirteen_point_table():
    events = first_wall_events(Surface(13), 2, 10)
    rows = [(str(e.divisor), e.t, e.component_dim, e.copies, e.orbit.family_label, e.kind) for e in events]
    new = EventKind.NEW_COMPONENT
    assert rows == [
        ("O", Fraction(13, 3), 2, 1, "I", new),
        ("E_1", Fraction(11, 3), 2, 13, "IV", EventKind.BLOWUP_MODIFICATION),
        ("15H-5E_1-4E_{2,...,13}", Fraction(119, 33), 10, 13, "V", new),
        ("195H-54E", Fraction(1417, 393), 119, 1, "II", new),
        ("2142H-594E", Fraction(15457, 4287), 1298, 1, "I", new),
        ("1962H-545E_1-544E_{2,...,13}", Fraction(14159, 3927), 1189, 13, "VI", new),
        ("21417H-5940E_{1,...,12}-5939E_13", Fraction(154451, 42837), 12970, 13, "III", new),
        ("255057H-70740E", Fraction(1839253, 510117), 154451, 1, "II", new),
        ("2782260H-771660E", Fraction(20063173, 5564523), 1684802, 1, "I", new),
        ("2548620H-706860E_{1,...,12}-706859E_13", Fraction(18378371, 5097243), 1543321, 13, "IV", new),
    ]
    assert all(e.conditionality is Conditionality.REQUIRES_SHGH for e in events)


def test_wall_events_are_strictly_decreasing():
    events = wall_events(Surface(13), 2, Fraction(3606, 1000))
    walls = [e.t for e in events]
    assert walls == sorted(walls, reverse=True)
    assert len(set(walls)) == len(walls)
    assert walls[-1] > Fraction(3606, 1000)


def test_sixteen_point_timeline():
    events = wall_events(Surface(16), 2, Fraction(4))
    assert [(e.t, e.kind) for e in events] == [
        (Fraction(16, 3), EventKind.NEW_COMPONENT),
        (Fraction(14, 3), EventKind.BLOWUP_MODIFICATION),
    ]
    assert all(e.conditionality is Conditionality.UNCONDITIONAL for e in events)


def test_twenty_five_point_timeline():
    events = wall_events(Surface(25), 4, Fraction(5))
    assert [(e.t, e.kind) for e in events] == [
        (Fraction(25, 3), EventKind.EMPTINESS_BOUNDARY),
        (Fraction(27, 5), EventKind.NEW_COMPONENT),
    ]
    assert (str(events[1].divisor), events[1].component_dim, events[1].copies) == ("H-E_1", 8, 25)


def test_wall_events_arguments():
    assert wall_events(Surface(9), 2, Fraction(4)) == []
    with pytest.raises(ArgumentError, match="must exceed sqrt"):
        wall_events(Surface(16), 2, Fraction(39, 10))
    with pytest.raises(ArgumentError, match="must exceed sqrt"):
        wall_events(Surface(12, assume_shgh=True), 2, Fraction(3))
    with pytest.raises(UnsupportedSurfaceError):
        wall_events(Surface(17), 2, Fraction(5))
    with pytest.raises(ArgumentError):
        wall_events(Surface(13), 1, Fraction(4))
    with pytest.raises(ArgumentError):
        wall_events(Surface(16), 2, Fraction(3))
    with pytest.raises(ArgumentError):
        wall_events(Surface(25), 2, Fraction(6))


def test_wall_events_respect_max_depth(monkeypatch):
    monkeypatch.setenv("NEFWALL_MAX_DEPTH", "1")
    with pytest.raises(ArgumentError, match="NEFWALL_MAX_DEPTH"):
        wall_events(Surface(10), 2, Fraction(31623, 10000))


def test_wall_event_json_round_trip():
    event = first_wall_events(Surface(13), 2, 3)[2]
    back = WallEvent.from_json(event.to_json())
    assert (back.t, back.kind, back.divisor, back.component_dim, back.copies) == \
        (event.t, event.kind, event.divisor, event.component_dim, event.copies)


def test_snapshot_sixteen_points():
    s = Surface(16)
    high = snapshot(s, 2, Fraction(5))
    assert [c.describe() for c in high.components] == ["P^5"]
    low = snapshot(s, 2, Fraction(9, 2))
    assert [c.describe() for c in low.components] == ["Bl_16 P^5"]
    assert low.components[0].shape is ComponentShape.BLOWUP_OF_PROJECTIVE_SPACE
    assert low.conditionality is Conditionality.UNCONDITIONAL
    assert low.ample is Conditionality.UNCONDITIONAL


def test_snapshot_twenty_five_points_closed_on_the_right():
    s = Surface(25)
    for t in (Fraction(26, 5), Fraction(27, 5), Fraction(501, 100)):
        snap = snapshot(s, 4, t)
        assert [c.describe() for c in snap.components] == ["25 copies of P^8"]
    assert snapshot(s, 4, Fraction(6)).components == ()
    with pytest.raises(WallBoundaryError):
        snapshot(s, 4, Fraction(25, 3))


def test_snapshot_thirteen_points():
    snap = snapshot(Surface(13), 2, Fraction(1803, 500))
    assert [c.describe() for c in snap.components] == ["Bl_13 P^2", "13 copies of P^10"]
    assert snap.ample is Conditionality.REQUIRES_NAGATA
    assert [c.describe() for c in snapshot(Surface(13), 2, Fraction(37, 10)).components] == ["P^2"]


def test_snapshot_boundaries():
    with pytest.raises(WallBoundaryError, match="t lies on a wall"):
        snapshot(Surface(12), 2, Fraction(4))
    with pytest.raises(ArgumentError):
        snapshot(Surface(16), 2, Fraction(4))
    with pytest.raises(ArgumentError):
        snapshot(Surface(16), 2, Fraction(6))
    assert snapshot(Surface(8), 2, Fraction(3)).components == ()


def test_component_dims():
    s = Surface(13)
    assert component_dim(s.trivial()) == 2
    assert component_dim(s.exceptional(1)) == 2
    assert component_dim(Divisor(15, (5,) + (4,) * 12)) == 10
    with pytest.raises(ConsistencyError):
        component_dim(Surface(10).trivial())


@pytest.mark.parametrize("n", [10, 11, 12, 13, 14, 15, 16])
def test_euler_form_is_constant_over_types(n):
    s = Surface(n)
    for o in enumerate_types(s, 1, 3):
        D = o.representative
        if n == 10 and D.is_trivial:
            continue
        dims = ext_dims(D, s)
        assert dims.hom == 1
        assert dims.euler == 13 - n
        assert dims.euler == 8 * chi(D) + 5 - n


def test_ext_dims_examples():
    e = ext_dims(Divisor(57, (18,) * 10), Surface(10))
    assert (e.hom, e.ext1, e.ext2) == (1, 8, 10)
    assert e.conditionality is Conditionality.REQUIRES_SHGH
    e = ext_dims(Divisor(1, (1,) + (0,) * 24), Surface(25))
    assert (e.hom, e.ext1, e.ext2, e.euler) == (1, 8, 3, -4)
    assert e.conditionality is Conditionality.UNCONDITIONAL
    with pytest.raises(ConsistencyError):
        ext_dims(Surface(10).trivial(), Surface(10))


def test_cohomology_report():
    s = Surface(13, assume_shgh=True)
    report = shgh_cohomology_report(Divisor(15, (5,) + (4,) * 12), s)
    assert report.h_D == (1, 0, 0)
    assert report.h_2D == (9, 0, 0)
    assert report.h_2D_minus_K == (0, 11, 0)
    exceptional = shgh_cohomology_report(s.exceptional(1), s)
    assert exceptional.h_2D == (1, 1, 0)
    assert exceptional.h_2D_minus_K == (0, 2, 0)


def test_cohomology_report_gating():
    with pytest.raises(AssumptionRequiredError) as info:
        shgh_cohomology_report(Surface(13).trivial(), Surface(13))
    assert info.value.flag == "--assume-shgh"
    report = shgh_cohomology_report(Surface(16).trivial(), Surface(16))
    assert report.h_2D_minus_K == (0, 6, 0)
    assert report.conditionality is Conditionality.UNCONDITIONAL
    assert shgh_cohomology_report(Surface(10).trivial(), Surface(10, assume_shgh=True)).h_2D_minus_K == (0, 0, 0)
    with pytest.raises(UnsupportedSurfaceError):
        shgh_cohomology_report(Surface(25).trivial(), Surface(25))
    with pytest.raises(PreconditionError):
        shgh_cohomology_report(Surface(13).hyperplane(), Surface(13, assume_shgh=True))


@pytest.mark.parametrize("n", [10, 11, 12])
def test_growth_formula_matches_riemann_roch(n):
    for k in range(3, 15, 2):
        D = divisor_from_convergent(n, k)
        assert growth_formula(n, k) == chi(2 * D - Surface(n).canonical())


def test_growth_formula_values_and_errors():
    assert growth_formula(10, 3) == -9
    assert growth_formula(11, 3) == -10
    assert growth_formula(12, 3) == -11
    with pytest.raises(IntegralityError):
        growth_formula(10, 4)
    with pytest.raises(UnsupportedSurfaceError):
        growth_formula(13, 3)


def test_elementary_modification_bounds():
    assert elem_mod_dim_bounds(8, 0) == (8, 8)
    assert elem_mod_dim_bounds(8, 2) == (14, 16)
    with pytest.raises(ArgumentError):
        elem_mod_dim_bounds(-1, 0)


def test_components_at_least_ten_points():
    cert = components_at_least(Surface(10, assume_shgh=True), 2, 3, 8)
    assert [o.dim for o in cert.orbits] == [8, 359, 13688]
    assert cert.t_star == Fraction(533530, 168717)
    assert [str(o.divisor) for o in cert.orbits] == ["57H-18E", "2220H-702E", "84357H-26676E"]


def test_components_at_least_lower_chi_widens_bounds():
    cert = components_at_least(Surface(11, assume_shgh=True), 1, 2, 10)
    assert [(o.dim, o.lo, o.hi) for o in cert.orbits] == [(9, 12, 13), (198, 201, 202)]
    assert cert.t_star == Fraction(4169, 1257)


def test_components_at_least_gating():
    with pytest.raises(AssumptionRequiredError):
        components_at_least(Surface(10), 2, 1, 1)
    with pytest.raises(UnsupportedSurfaceError):
        components_at_least(Surface(13, assume_shgh=True), 2, 1, 1)
    with pytest.raises(ArgumentError):
        components_at_least(Surface(10, assume_shgh=True), 3, 1, 1)
