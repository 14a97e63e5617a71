import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from width2lab import catalog
from width2lab.families import fork_orientation, poset_P2
from width2lab.structures import Poset, StructureError, inc, width
from width2lab.universal import (PI, TWO_PI, DPoint, PiRational, construct_long_path,
                                 d_incomparable, d_le, d_leq, embed_into_D, embeds_in_Dm,
                                 induced_path_grid_search, max_induced_path_sample,
                                 multichain_lift_check, order_matrix, pi_interval,
                                 rpi2_le, sample_poset, to_Rpi2)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)


def test_pi_intervals_bracket_pi():
    import mpmath
    for bits in (0, 64, 128, 256):
        lo, hi = pi_interval(bits)
        with mpmath.workprec(400):
            assert mpmath.mpf(lo.numerator) / lo.denominator < mpmath.pi
            assert mpmath.mpf(hi.numerator) / hi.denominator > mpmath.pi


def test_close_comparison_needs_refinement():
    # 314159265358979/10^14 < pi, and the gap is below the starting bracket
    close = PiRational(F(314159265358979323, 10 ** 17))
    assert close < PI
    assert PiRational(F(314159265358979324, 10 ** 17)) > PI


@given(fractions, fractions, fractions, fractions)
def test_pirational_total_order(a1, b1, a2, b2):
    x, y = PiRational(a1, b1), PiRational(a2, b2)
    assert (x < y) + (y < x) + (x == y) == 1
    assert (x == y) == ((a1, b1) == (a2, b2))
    if x != y:
        assert (x < y) == (float(x) < float(y)) or abs(float(x) - float(y)) < 1e-9


def test_pirational_arithmetic():
    x = PiRational(1, 2)
    assert x + 1 == PiRational(2, 2)
    assert x - x == 0
    assert x * 3 == PiRational(3, 6)
    assert x / 2 == PiRational(F(1, 2), 1)
    with pytest.raises(TypeError):
        PI * PI
    assert str(PI) == "1*pi" and str(PiRational(F(1, 2))) == "1/2"


def test_dpoint_range():
    with pytest.raises(StructureError):
        DPoint(TWO_PI, 0)
    with pytest.raises(StructureError):
        DPoint(-1, 0)


def test_order_examples():
    assert d_leq(DPoint(F(1, 2), 0), DPoint(F(1, 2), 1)) == "lt"
    assert d_leq(DPoint(F(1, 5), 0), DPoint(F(1, 10), 2)) == "lt"
    assert d_leq(DPoint(F(1, 10), 0), DPoint(F(1, 5), -1)) == "inc"
    p = DPoint(PI, -1)
    q = DPoint(PI - F(1, 2), 0)
    assert d_leq(p, q) == "inc"


def _random_points(rng, k, m):
    pts = set()
    while len(pts) < k:
        q = PiRational(F(rng.randrange(0, 600), 100)) if rng.random() < 0.5 else \
            PiRational(F(rng.randrange(0, 40), 20), F(rng.randrange(0, 40), 20))
        if q < TWO_PI:
            pts.add(DPoint(q, rng.randint(-m, m)))
    return sorted(pts, key=lambda p: (p.level, float(p.q)))


@pytest.mark.parametrize("seed", range(4))
def test_random_samples_are_width_two_posets(seed):
    pts = _random_points(random.Random(seed), 60, 3)
    leq = order_matrix(pts)
    Poset(leq)  # checks reflexive, antisymmetric, transitive
    assert width(sample_poset(pts)) <= 2
    for p in pts:
        for r in pts:
            if p != r:
                assert (d_leq(p, r) == "inc") == d_incomparable(p, r)


@pytest.mark.parametrize("seed", range(3))
def test_isomorphism_with_rpi2(seed):
    pts = _random_points(random.Random(100 + seed), 50, 4)
    img = [to_Rpi2(p) for p in pts]
    assert np.array_equal(order_matrix(pts), order_matrix(img, rpi2_le))
    assert to_Rpi2(DPoint(0, 0)) == (PiRational(0), 0)
    assert to_Rpi2(DPoint(F(1, 3), 1)) == (PI + F(1, 3), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_long_path(n):
    L = construct_long_path(n)
    assert L.valid and L.in_range and len(L.points) == 6 * n + 1
    assert sorted(L.edges_per_level_pair) == list(range(-n, n))
    assert set(L.edges_per_level_pair.values()) == {3}
    assert {p.level for p in L.points} == set(range(-n, n + 1))
    G = inc(sample_poset(L.points))
    assert len(G.edges()) == 6 * n


def test_literal_offsets():
    assert construct_long_path(1, "literal").valid
    for n in (2, 3):
        L = construct_long_path(n, "literal")
        assert L.in_range and not L.valid


def test_grid_search():
    top = max_induced_path_sample(1, 12)
    assert top == 7
    assert max_induced_path_sample(1, 2) <= top
    g = induced_path_grid_search(1, 12)
    assert g.within_bound and g.max_edges_per_level_pair == 3
    with pytest.raises(StructureError):
        max_induced_path_sample(0, 4)


def test_embed_antichain_and_singleton():
    e = embed_into_D(Poset.antichain(2))
    assert e.m == 1 and e.verified
    a, b = e.points
    assert {a.level, b.level} == {0, -1}
    lower, upper = (a, b) if a.level < b.level else (b, a)
    assert upper.q < lower.q
    e = embed_into_D(Poset.chain(1))
    assert e.m == 1 and e.verified


def test_embed_fork_orientation():
    e = embed_into_D(fork_orientation(5))
    assert e.verified and e.m <= 3


def test_embed_long_paths_need_more_levels():
    assert embed_into_D(poset_P2(7)).m == 1
    assert embed_into_D(poset_P2(8)).m == 2
    assert embeds_in_Dm(poset_P2(8), 1) is None


def test_embed_preconditions():
    with pytest.raises(StructureError):
        embed_into_D(Poset.antichain(3))
    with pytest.raises(StructureError):
        embed_into_D(Poset.chain(2))


def test_embed_connected_width2_up_to_eight():
    for n in range(1, 9):
        for P in catalog.connected_width2_posets(n):
            e = embed_into_D(P)
            assert e.verified
            assert e.m == 1 or embeds_in_Dm(P, e.m - 1) is None


def test_multichain_lifts():
    chain = [F(i, 7) for i in range(5)]
    ident = {x: x for x in chain}
    assert multichain_lift_check(chain, 2, maps=[ident]).ok
    shift = {chain[i]: chain[i + 1] for i in range(4)}
    assert multichain_lift_check(chain, 2, maps=[shift]).ok
    rep = multichain_lift_check([F(i, 9) for i in range(8)], 3, trials=100, seed=1)
    assert rep.ok and rep.trials == 100
    with pytest.raises(StructureError):
        multichain_lift_check([F(1), F(0)], 1)


def test_non_monotone_map_fails_lift():
    chain = [F(0), F(1), F(2)]
    swap = {F(0): F(1), F(1): F(0)}
    assert not multichain_lift_check(chain, 1, maps=[swap]).ok
