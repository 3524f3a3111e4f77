from fractions import Fraction as F

import pytest

from slowreal.continuous_fn import affine, constant, identity
from slowreal.counterexamples import heine_borel_adversary
from slowreal.open_sets import (ClosedSetCode, OpenSetCode, ball, basic_decomposition,
                                characteristic, empty, from_balls, hat, heine_borel_subcover,
                                interval, interval_literal, intersect,
                                locally_finite_refinement, member, positive_ray, preimage,
                                sublevel_open, union, urysohn, verify_subcover, whole_line)
from slowreal.real_core import const, from_rule
from slowreal.theorems import avoid_point

FUEL = 256
CORPUS = [F(-3, 2), F(-1, 2), F(0), F(1, 4), F(1, 3), F(1, 2), F(3, 4), F(1), F(5, 4),
          F(3, 2), F(7, 4), F(2), F(5, 2)]


def verdicts(U, fuel=FUEL, points=CORPUS):
    return [member(U, const(p), fuel).holds for p in points]


def inside(intervals, p):
    return any(a < p < b for a, b in intervals)


def test_contains_and_enum():
    U = from_balls([(0, 1), (F(1, 2), F(1, 4))])
    assert U.contains(5, 0, 1)
    assert not U.contains(5, 0, 2)
    assert not U.contains(0, 0, 0)
    listed = list(U.enum(2000))
    assert all(U.contains(n, a, r) for n, a, r in listed)
    assert {(a, r) for _, a, r in listed} == {(0, 1), (F(1, 2), F(1, 4))}


def test_member_examples():
    U = OpenSetCode(lambda n, a, r: a == 0 and r == 1)
    assert member(U, const(F(1, 2)), 16).holds
    assert member(empty(), const(F(1, 2)), 64).unknown
    two = union([interval_literal(0, 1), interval_literal(1, 2)])
    for fuel in (16, 128, 512):
        assert member(two, const(1), fuel).unknown
    assert member(two, const(F(3, 2)), FUEL).holds


def test_member_witness_for_slow_point():
    # x enters (0, 1) only from stage 10 on
    x = from_rule(lambda i: 5 if i < 10 else F(1, 2))
    v = member(interval_literal(0, 1), x, 64)
    assert v.holds and v.witness[0] == 10


def test_union_examples():
    U = interval_literal(0, 1)
    assert verdicts(union([U])) == verdicts(U)
    two = union([interval_literal(0, 1), interval_literal(1, 2)])
    assert [member(two, const(p), FUEL).outcome for p in (F(1, 2), F(1), F(3, 2))] == \
        ['holds', 'unknown', 'holds']
    padded = union([empty(), empty(), interval_literal(0, 1)])
    assert verdicts(padded) == verdicts(U)


def test_union_matches_exists_member():
    families = [[(0, 1), (1, 2)], [(-1, 0), (F(1, 2), F(3, 2))], [(-2, 2)], [(0, 2), (1, 3)]]
    for fam in families:
        Us = [interval_literal(a, b) for a, b in fam]
        got = verdicts(union(Us))
        assert got == [any(member(u, const(p), FUEL).holds for u in Us) for p in CORPUS]
        assert got == [inside(fam, p) for p in CORPUS]


def test_union_of_callable_family():
    fam = lambda i: interval_literal(i, i + 1) if i < 3 else empty()
    U = union(fam)
    assert member(U, const(F(3, 2)), FUEL).holds
    assert member(U, const(-1), 64).unknown


def test_basic_decomposition():
    U = ball(0, 1)
    parts = basic_decomposition(U)
    assert len(parts) == 1
    assert basic_decomposition(empty()) == []
    W = from_balls([(0, 1), (2, F(1, 2))])
    assert verdicts(union(basic_decomposition(W))) == verdicts(W)
    comps = basic_decomposition(positive_ray())
    assert callable(comps)


def test_preimage_examples():
    V = interval_literal(0, 1)
    # points whose certifying ball B_s(b) (|b - 1/2| + 2s < 1/2) has a small code
    near_centre = [F(-1), F(1, 3), F(1, 2), F(2, 3), F(2), F(5, 2)]
    assert verdicts(preimage(identity(), V), 256, near_centre) == verdicts(V, 256, near_centre)
    P = preimage(affine(2, 0), interval_literal(0, 2))
    assert member(P, const(F(1, 2)), FUEL).holds
    assert member(P, const(F(3, 2)), FUEL).unknown
    P = preimage(constant(5), interval_literal(0, 1))
    assert not any(verdicts(P, 64))


def test_preimage_membership_needs_fuel_near_the_boundary():
    # 1/4 is only certified by balls of radius below 1/8, whose codes exceed 1024
    P = preimage(identity(), interval_literal(0, 1))
    assert member(P, const(F(1, 4)), 1024).unknown
    assert member(interval_literal(0, 1), const(F(1, 4)), 1024).holds


def test_hat_and_characteristic():
    assert hat(0, 1, F(1, 2)) == F(1, 2)
    assert hat(0, 1, 2) == 0
    g = characteristic(empty())
    assert [g(F(1, 3), i) for i in range(4)] == [1, F(1, 2), F(1, 3), F(1, 4)]
    U = from_balls([(0, 1)])
    g = characteristic(U)
    # the triple (0, 0, 1) has code 2, so from stage 3 on g(0) >= 1/3
    assert all(g(0, i) >= F(1, 3) for i in range(3, 40))


def test_urysohn_on_each_side():
    C0 = ClosedSetCode(ball(2, 1))   # the complement of (1, 3)
    C1 = ClosedSetCode(ball(0, 1))   # the complement of (-1, 1)
    g = urysohn(C0, C1)
    assert g(F(-1, 2), 2 ** 11) <= F(1, 2 ** 8)
    # the ball (2, 1) has triple code 232, so weight 1/233 at x = 2
    assert 1 - g(2, 2 ** 8 * 233) <= F(1, 2 ** 8)


def test_urysohn_between():
    g = urysohn(ClosedSetCode(positive_ray()), ClosedSetCode(interval(None, 1)))
    v = g(F(1, 2), 32)
    assert F(1, 2 ** 12) < v < 1 - F(1, 2 ** 12)


def test_intersect_trivial_cases():
    U = interval_literal(0, 1)
    assert not any(verdicts(intersect(U, empty()), 32, [F(1, 2), F(1, 4)]))


@pytest.mark.xfail(strict=True, reason='member search cannot reach the tiny balls that '
                   'certify membership in the product-of-characteristics preimage')
def test_intersect_member_example():
    W = intersect(interval_literal(0, 1), interval_literal(F(1, 2), 2))
    assert member(W, const(F(3, 4)), 64).holds


def test_interval_examples():
    U = interval(None, const(1))
    assert member(U, const(0), 64).holds
    assert member(U, const(2), 64).unknown
    assert member(interval(None, 1), const(0), 64).holds
    assert not any(verdicts(interval(const(0), const(0)), 32, [F(0), F(1, 2)]))
    assert all(verdicts(interval(), 64))


def test_sublevel_open_examples():
    R = ClosedSetCode(empty())
    S = sublevel_open(identity(), R, 1)
    assert member(S, const(0), 64).holds
    assert member(S, const(2), 64).unknown
    assert all(verdicts(sublevel_open(constant(0), R, 1), 64, [F(0), F(1, 2), F(-1), F(2)]))
    assert not any(verdicts(sublevel_open(constant(2), R, 1), 64, [F(0), F(1, 2)]))


def test_heine_borel_examples():
    two = [ball(0, F(3, 4)), ball(1, F(3, 4))]
    v = heine_borel_subcover(two, 256)
    assert v.holds and v.witness == [0, 1]
    assert verify_subcover(two, v.witness, 256, 8)
    assert heine_borel_subcover([whole_line()], 64).witness == [0]
    for fuel in (16, 64):
        assert heine_borel_subcover(heine_borel_adversary(), fuel).unknown


def test_locally_finite_refinement():
    Vs = locally_finite_refinement([whole_line()], 0)
    assert len(Vs) == 1
    Us = [from_balls([(0, 1)]), from_balls([(1, 1)])]
    Vs = locally_finite_refinement(Us, 1)
    assert len(Vs) == 2


def test_avoid_point():
    U = avoid_point(F(1, 2))
    assert member(U, const(0), 32).holds
    assert member(U, const(F(1, 2)), 64).unknown
