from fractions import Fraction as F

from hypothesis import given, settings, strategies as st

from slowreal.real_core import from_rule
from slowreal.real_sequences import (UniformRealSequence, bolzano_weierstrass, diagonal_limit,
                                     from_real, from_rows, limsup_approx, member,
                                     monotone_limit, nested_intervals, supremum)


def test_member():
    s = UniformRealSequence(lambda n, i: F(1, i + 1))
    assert member(s, 5)[3] == F(1, 4)
    x = from_rule(lambda i: F(i, i + 2))
    assert [from_real(x).member(7)[i] for i in range(4)] == [x[i] for i in range(4)]
    assert member(from_rows(lambda n: F(n, n + 1)), 2)[9] == F(2, 3)


def test_diagonal_limit():
    assert diagonal_limit(from_rows(lambda n: F(4, 7)))[10] == F(4, 7)
    s = UniformRealSequence(lambda n, i: 1 - F(1, 2 ** min(n, i)))
    d = diagonal_limit(s)
    assert [d[n] for n in range(5)] == [1 - F(1, 2 ** n) for n in range(5)]


def test_supremum_examples():
    sup = supremum(from_rows(lambda n: 1 - F(1, n + 1)), 1)
    assert [sup[i] for i in range(6)] == [F(i, i + 1) for i in range(6)]
    assert supremum(from_rows(lambda n: F(2, 9)), 1)[4] == F(2, 9)
    alt = supremum(from_rows(lambda n: F(1, 3) if n % 2 == 0 else F(1, 2)), 1)
    assert alt[0] == F(1, 3)
    assert all(alt[i] == F(1, 2) for i in range(1, 8))
    assert alt.selector(5) == 1


@settings(max_examples=30)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=9),
                min_size=1, max_size=12), st.integers(0, 20))
def test_supremum_is_windowed_max(values, i):
    rows = lambda n: values[n % len(values)]
    sup = supremum(from_rows(rows), 3)
    assert sup[i] == max(rows(n) for n in range(i + 1))


def test_monotone_limit():
    up = monotone_limit(from_rows(lambda n: 1 - F(1, 2 ** n)), 1)
    assert up[20] == 1 - F(1, 2 ** 20)
    assert monotone_limit(from_rows(lambda n: F(3, 4)), 1)[3] == F(3, 4)
    neg = monotone_limit(from_rows(lambda n: -F(1, n + 1)), 1)
    assert neg[99] == -F(1, 100)
    down = monotone_limit(from_rows(lambda n: F(1, n + 1)), 1, increasing=False)
    assert down[9] == F(1, 10)


def test_nested_intervals():
    xs = from_rows(lambda n: -F(1, 2 ** n))
    ys = from_rows(lambda n: F(1, 2 ** n))
    z = nested_intervals(xs, ys)
    assert abs(z[12]) <= F(1, 2 ** 12)
    c = nested_intervals(from_rows(lambda n: F(5, 3)), from_rows(lambda n: F(5, 3)))
    assert c[4] == F(5, 3)


def bisection_shells(target, n):
    """[lo, hi] after n halvings of [0, 1] around target (independent oracle)."""
    lo, hi = F(0), F(1)
    for _ in range(n):
        mid = (lo + hi) / 2
        if target < mid:
            hi = mid
        else:
            lo = mid
    return lo, hi


def test_nested_intervals_bisection_third():
    xs = from_rows(lambda n: bisection_shells(F(1, 3), n)[0])
    ys = from_rows(lambda n: bisection_shells(F(1, 3), n)[1])
    z = nested_intervals(xs, ys)
    for k in (4, 8, 16):
        assert abs(z[k] - F(1, 3)) <= F(1, 2 ** k)


def test_limsup_examples():
    v = limsup_approx(from_rows(lambda n: (-1) ** n), 1, F(1, 4), 64)
    assert v.holds and F(3, 4) <= v.witness <= F(5, 4)
    v = limsup_approx(from_rows(lambda n: F(2, 5)), 1, F(1, 8), 64)
    assert abs(v.witness - F(2, 5)) <= F(1, 8)
    v = limsup_approx(from_rows(lambda n: F(1, n + 1)), 1, F(1, 4), 64)
    assert abs(v.witness) <= F(1, 4)


def test_bolzano_weierstrass_examples():
    r = bolzano_weierstrass(from_rows(lambda n: (-1) ** n), 1, 64)
    parities = {n % 2 for n in r.selection.tail(64)}
    assert len(parities) == 1
    assert abs(r.limit[40]) == 1
    r = bolzano_weierstrass(from_rows(lambda n: F(2, 7)), 1, 64)
    assert r.selection.indices[:5] == (0, 1, 2, 3, 4)
    assert r.limit[3] == F(2, 7)


def test_bolzano_weierstrass_convergent_input():
    rows = lambda n: F(1, 3) + F((-1) ** n, n + 1)
    r = bolzano_weierstrass(from_rows(rows), 2, 2 ** 12)
    tail = r.selection.tail(2 ** 12)
    assert len(tail) >= 2
    assert abs(r.limit[2 ** 12] - F(1, 3)) <= F(1, 2 ** 8)
