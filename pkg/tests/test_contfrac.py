from fractions import Fraction
from itertools import islice
from math import isqrt

import pytest
from sympy.ntheory.continued_fraction import continued_fraction_convergents, continued_fraction_periodic

from errors import IntegralityError, SquareInputError, UnsupportedSurfaceError
from lattice.picard import Divisor, chi, sqrt_cmp
from numtheory.contfrac import Convergent, convergents, divisor_from_convergent, sqrt_cf


@pytest.mark.parametrize("n", [2, 3, 7, 10, 11, 12, 13, 14, 15, 17, 19, 31, 46, 94, 151])
def test_sqrt_cf_matches_sympy(n):
    a0, period = continued_fraction_periodic(0, 1, n)
    cf = sqrt_cf(n)
    assert cf.a0 == a0
    assert list(cf.period) == list(period)
    assert cf.period_length == len(period)


def test_sqrt_cf_rejects_squares():
    with pytest.raises(SquareInputError, match="perfect square"):
        sqrt_cf(9)


@pytest.mark.parametrize("n, expected", [
    (10, ["3/1", "19/6", "117/37", "721/228", "4443/1405", "27379/8658", "168717/53353"]),
    (11, ["3/1", "10/3", "63/19", "199/60", "1257/379", "3970/1197", "25077/7561"]),
    (12, ["3/1", "7/2", "45/13", "97/28", "627/181", "1351/390", "8733/2521"]),
])
def test_first_seven_convergents(n, expected):
    assert [f"{c.p}/{c.q}" for c in convergents(n, 7)] == expected


@pytest.mark.parametrize("n", [10, 11, 12])
def test_odd_convergents_satisfy_pell_invariant(n):
    for c in convergents(n, 15):
        if c.k % 2:
            assert c.p * c.p - n * c.q * c.q == 9 - n


def test_convergent_json_round_trip():
    c = convergents(10, 15)[-1]
    assert Convergent.from_json(c.to_json()) == c


@pytest.mark.parametrize("n, expected", [
    (10, ["O", "57H-18E", "2220H-702E", "84357H-26676E"]),
    (11, ["O", "30H-9E", "627H-189E", "12537H-3780E"]),
    (12, ["O", "21H-6E", "312H-90E", "4365H-1260E"]),
])
def test_convergent_divisors(n, expected):
    divisors = [divisor_from_convergent(n, k) for k in (1, 3, 5, 7)]
    assert [str(D) for D in divisors] == expected
    assert all(chi(D) == 1 for D in divisors)


def test_convergent_divisor_errors():
    with pytest.raises(IntegralityError):
        divisor_from_convergent(10, 2)
    with pytest.raises(UnsupportedSurfaceError):
        divisor_from_convergent(13, 3)


def test_large_convergent_divisor_is_exact():
    D = divisor_from_convergent(10, 13)
    assert D == Divisor(4619302740, (1460751786,) * 10)


NON_SQUARES = [n for n in range(2, 31) if isqrt(n) ** 2 != n]


@pytest.mark.parametrize("n", NON_SQUARES)
def test_determinant_identity(n):
    cs = convergents(n, 50)
    for prev, cur in zip(cs, cs[1:]):
        assert cur.p * prev.q - prev.p * cur.q == (-1) ** cur.k


@pytest.mark.parametrize("n", NON_SQUARES)
def test_consecutive_convergents_bracket_sqrt_n(n):
    cs = convergents(n, 30)
    for cur, nxt in zip(cs, cs[1:]):
        a, b = Fraction(cur.p, cur.q), Fraction(nxt.p, nxt.q)
        # sqrt(n) strictly between a and b gives |sqrt(n) - a| < 1/(q_k q_{k+1})
        assert abs(a - b) == Fraction(1, cur.q * nxt.q)
        assert sqrt_cmp(a, n) * sqrt_cmp(b, n) == -1


@pytest.mark.parametrize("n", [10, 11, 12])
def test_convergents_match_sympy_recurrence(n):
    a0, period = continued_fraction_periodic(0, 1, n)
    expected = [(r.p, r.q) for r in islice(continued_fraction_convergents([a0, period]), 20)]
    assert [(c.p, c.q) for c in convergents(n, 20)] == expected
