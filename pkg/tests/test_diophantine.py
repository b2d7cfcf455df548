from itertools import islice
from math import isqrt

import pytest
from sympy.solvers.diophantine.diophantine import diop_DN

from errors import ArgumentError, ConsistencyError, DegenerateEquationError, SquareInputError
from numtheory.contfrac import convergents
from numtheory.diophantine import (
    AffineMap,
    Direction,
    PellSolution,
    brute_force_pell,
    brute_force_quad,
    chain_apply,
    gen_pell_positive_solutions,
    iter_chain,
    pell_fundamental,
    quad_with_linear,
    quadratic_value,
)

N13_TRANSFORM = AffineMap(649, 2340, 2142, 180, 649, 594)


@pytest.mark.parametrize("n, expected", [
    (2, (3, 2)), (10, (19, 6)), (11, (10, 3)), (12, (7, 2)), (13, (649, 180)),
    (61, (1766319049, 226153980)),
])
def test_pell_fundamental(n, expected):
    assert pell_fundamental(n) == PellSolution(*expected)
    assert diop_DN(n, 1) == [expected]


def test_pell_rejects_squares():
    with pytest.raises(SquareInputError):
        pell_fundamental(16)


@pytest.mark.parametrize("n, N, limit", [(13, -4, 5), (10, 6, 6), (2, 7, 6), (7, 2, 4), (13, -1, 2)])
def test_gen_pell_matches_brute_force(n, N, limit):
    found = gen_pell_positive_solutions(n, N, limit)
    assert len(found) == limit
    assert found == brute_force_pell(n, N, found[-1].y)


@pytest.mark.parametrize("n, N", [(13, -4), (10, 6), (2, 7), (19, -3)])
def test_gen_pell_contains_sympy_class_representatives(n, N):
    found = set(gen_pell_positive_solutions(n, N, 8))
    for x, y in diop_DN(n, N):
        if x > 0 and y > 0:
            assert PellSolution(x, y) in found


def test_gen_pell_first_solution():
    assert gen_pell_positive_solutions(13, 1, 1) == [PellSolution(649, 180)]


def test_gen_pell_arguments():
    with pytest.raises(ArgumentError):
        gen_pell_positive_solutions(13, 0, 1)
    with pytest.raises(ArgumentError):
        gen_pell_positive_solutions(13, 1, 0)


def test_pell_solution_json_keeps_big_integers():
    p = PellSolution(1766319049, 226153980)
    assert p.to_json() == {"x": "1766319049", "y": "226153980"}
    assert PellSolution.from_json(p.to_json()) == p


def test_affine_map_algebra():
    T = N13_TRANSFORM
    assert T.determinant == 1
    assert T.inverse().compose(T) == AffineMap.identity()
    assert T.power(2) == T.compose(T)
    assert T.power(-1) == T.inverse()
    assert AffineMap.from_json(T.to_json()) == T


def test_n13_k0_has_four_chains_with_one_transform():
    chains = quad_with_linear(13, 0, -4)
    assert len(chains) == 4
    assert {c.fundamental for c in chains} == {(0, 0), (-3, 0), (0, -1), (-3, -1)}
    for c in chains:
        assert c.transform == N13_TRANSFORM
        assert (c.exponent, c.sign) == (1, 1)


def test_n13_chain_elements():
    elements = {p for c in quad_with_linear(13, 0, -4, depth=4) for p in c.elements}
    for p in [(195, 54), (2142, 594), (2782260, 771660), (-2782263, 771660),
              (255057, 70740), (255057, -70741)]:
        assert p in elements
    assert all(quadratic_value(13, 0, d, m) == -4 for d, m in elements)


@pytest.mark.parametrize("k, points", [
    (1, [(0, 0), (21417, 5940), (2548620, 706860)]),
    (12, [(15, 5), (1962, 545), (27801195, 7710665)]),
])
def test_n13_linear_term_chains(k, points):
    chains = quad_with_linear(13, k, -4, depth=4)
    elements = {p for c in chains for p in c.elements}
    for p in points:
        assert p in elements
    for c in chains:
        assert c.transform.determinant == 1
        assert all(c.satisfies(p) for p in c.elements)


@pytest.mark.parametrize("n, k, C", [(10, 0, -1), (11, 0, -2), (12, 0, -3), (13, 0, -4), (13, 1, -4),
                                     (13, 12, -4), (14, 1, -5), (15, 0, -6)])
def test_chains_cover_brute_force_box(n, k, C):
    d_range, m_range = range(-250, 250), range(-80, 80)
    chains = quad_with_linear(n, k, C, depth=5)
    elements = {p for c in chains for p in c.elements}
    boxed = {(d, m) for d, m in elements if d in d_range and m in m_range}
    assert boxed == set(brute_force_quad(n, k, C, d_range, m_range))


def test_chain_apply_and_orientation():
    chain = quad_with_linear(13, 0, -4)[0]
    assert chain.fundamental == (0, 0)
    assert chain_apply(chain, (0, 0), 1) == (2142, 594)
    assert chain_apply(chain, (2142, 594), -1) == (0, 0)
    back = chain.reversed()
    assert back.direction is Direction.BACKWARD
    assert back.step((2142, 594)) == (0, 0)
    assert chain.member(2) == (2782260, 771660)
    stream = iter_chain(chain)
    assert [next(stream) for _ in range(3)] == [(0, 0), (2142, 594), (2782260, 771660)]


def test_chain_apply_rejects_points_off_the_quadratic():
    chain = quad_with_linear(13, 0, -4)[0]
    with pytest.raises(ConsistencyError):
        chain_apply(chain, (1, 1), 1)


def test_square_n_gives_finite_chains():
    chains = quad_with_linear(25, 24, -8)
    assert chains
    assert all(c.is_finite and c.exponent == 0 for c in chains)
    assert (1, 1) in {c.fundamental for c in chains}
    assert all(quadratic_value(25, 24, *c.fundamental) == -8 for c in chains)


def test_degenerate_equations():
    with pytest.raises(DegenerateEquationError):
        quad_with_linear(25, 0, 0)
    assert quad_with_linear(13, 0, 0) == []


CHAIN_EQUATIONS = [(10, 0, -1), (11, 0, -2), (12, 0, -3), (13, 0, -4), (13, 1, -4), (13, 12, -4),
                   (14, 1, -5), (15, 0, -6)]


def test_transforms_keep_chain_elements_on_their_quadratic():
    for n, k, C in CHAIN_EQUATIONS:
        for chain in quad_with_linear(n, k, C):
            T, T_inv = chain.transform, chain.transform.inverse()
            for point in islice(iter_chain(chain, -40), 81):
                assert quadratic_value(n, k, *point) == C
                assert chain.satisfies(T.apply(point))
                assert chain.satisfies(T_inv.apply(point))


@pytest.mark.parametrize("n", [n for n in range(2, 31) if isqrt(n) ** 2 != n])
def test_gen_pell_sweep_against_brute_force(n):
    for N in range(-50, 51):
        if N == 0:
            continue
        expected = brute_force_pell(n, N, 500)
        found = gen_pell_positive_solutions(n, N, len(expected) + 1)
        assert found[:len(expected)] == expected
        assert all(p.y > 500 for p in found[len(expected):])


@pytest.mark.parametrize("n", [10, 11, 12])
def test_odd_convergents_solve_norm_nine_minus_n(n):
    odd = [PellSolution(c.p, c.q) for c in convergents(n, 11) if c.k % 2]
    assert gen_pell_positive_solutions(n, 9 - n, len(odd)) == odd


@pytest.mark.parametrize("k, point", [(1, (-18, -5)), (1, (-1965, -545)), (12, (-21420, -5940))])
def test_n13_negative_chain_elements(k, point):
    assert quadratic_value(13, k, *point) == -4
    assert point in {p for c in quad_with_linear(13, k, -4, depth=4) for p in c.elements}
