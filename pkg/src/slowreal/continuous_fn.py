"""Continuous functions as tables ``(q, i) -> f(q)_i`` on rationals.

A function is applied to a real x by reading ``f(x_i)_i`` at stage i.
Tables whose value ignores the stage may be flagged ``static``; some
searches use the flag to skip redundant stages.
"""
from fractions import Fraction
import threading
from typing import Callable

from .real_core import (SlowReal, Verdict, holds, rat, rationals_upto,
                        unknown)


class ContinuousFn:
    __slots__ = ('_table', '_memo', '_lock', 'static', 'label')

    def __init__(self, table: Callable[[Fraction, int], Fraction],
                 static: bool = False, label: str = ''):
        self._table = table
        self._memo = {}
        self._lock = threading.Lock()
        self.static = static
        self.label = label

    def __call__(self, q, i: int) -> Fraction:
        key = (q, 0 if self.static else i)
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = Fraction(self._table(Fraction(q), i))
        with self._lock:
            return self._memo.setdefault(key, value)

    def __repr__(self):
        return 'ContinuousFn(%s)' % (self.label or '...')


class FnSequence:
    """A sequence of function tables ``(n, q, i) -> f_n(q)_i``."""
    __slots__ = ('_table', '_memo', '_lock', 'label')

    def __init__(self, table: Callable[[int, Fraction, int], Fraction], label: str = ''):
        self._table = table
        self._memo = {}
        self._lock = threading.Lock()
        self.label = label

    def __call__(self, n: int, q, i: int) -> Fraction:
        key = (n, q, i)
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = Fraction(self._table(n, Fraction(q), i))
        with self._lock:
            return self._memo.setdefault(key, value)

    def member(self, n: int) -> ContinuousFn:
        return ContinuousFn(lambda q, i: self(n, q, i), label='%s[%d]' % (self.label, n))


# --- builtin constructors --------------------------------------------------

def identity() -> ContinuousFn:
    return ContinuousFn(lambda q, i: q, static=True, label='identity')


def constant(y) -> ContinuousFn:
    """The constant function with value y (a rational or a SlowReal)."""
    if isinstance(y, SlowReal):
        return ContinuousFn(lambda q, i: y[i], label='const')
    y = rat(y)
    return ContinuousFn(lambda q, i: y, static=True, label='const %s' % y)


def affine(a, b) -> ContinuousFn:
    a, b = rat(a), rat(b)
    return ContinuousFn(lambda q, i: a * q + b, static=True, label='affine %s %s' % (a, b))


def poly(coeffs) -> ContinuousFn:
    """c0 + c1 q + ... + cn q^n, evaluated exactly by Horner's rule."""
    cs = [rat(c) for c in coeffs]

    def table(q, i):
        acc = Fraction(0)
        for c in reversed(cs):
            acc = acc * q + c
        return acc
    return ContinuousFn(table, static=True, label='poly [%s]' % ','.join(map(str, cs)))


def absolute() -> ContinuousFn:
    return ContinuousFn(lambda q, i: abs(q), static=True, label='abs')


def clamp(v: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return lo if v < lo else hi if v > hi else v


# --- operations --------------------------------------------------------------

def evaluate(f: ContinuousFn, x: SlowReal) -> SlowReal:
    """The real f(x), with stage i equal to f(x_i)_i."""
    return SlowReal(lambda i: f(x[i], i))


def compose(g: ContinuousFn, f: ContinuousFn) -> ContinuousFn:
    return ContinuousFn(lambda q, i: g(f(q, i), i), static=f.static and g.static)


def _div(a, b):
    return a / b if b else Fraction(0)


_COMBINE = {
    'add': lambda a, b: a + b,
    'sub': lambda a, b: a - b,
    'mul': lambda a, b: a * b,
    'div': _div,
    'max': max,
    'min': min,
}


def pointwise_combine(op: str, f: ContinuousFn, g: ContinuousFn) -> ContinuousFn:
    """Combine two tables entrywise; ``div`` by a zero entry gives 0."""
    try:
        h = _COMBINE[op]
    except KeyError:
        raise ValueError('unknown combination %r' % op) from None
    return ContinuousFn(lambda q, i: h(f(q, i), g(q, i)), static=f.static and g.static)


def scale(c, f: ContinuousFn) -> ContinuousFn:
    c = rat(c)
    return ContinuousFn(lambda q, i: c * f(q, i), static=f.static)


def weighted_series(fs: FnSequence, bounds: Callable[[int], Fraction]) -> ContinuousFn:
    """Sum over n <= i of f_n(q)_i clamped to [-bounds(n), bounds(n)]."""
    def table(q, i):
        total = Fraction(0)
        for n in range(i + 1):
            b = rat(bounds(n))
            total += clamp(fs(n, q, i), -b, b)
        return total
    return ContinuousFn(table)


def uniform_limit(fs: FnSequence) -> ContinuousFn:
    """Diagonal table ``f_i(q)_i``; the limit when fs is uniformly Cauchy."""
    return ContinuousFn(lambda q, i: fs(i, q, i))


def eval_sequence(fs: FnSequence, x: SlowReal):
    """The sequence of reals f_n(x), with gen(n, i) = f_n(x_i)_i."""
    from .real_sequences import UniformRealSequence
    return UniformRealSequence(lambda n, i: fs(n, x[i], i))


def _ball_samples(centre: Fraction, radius: Fraction, fuel: int):
    """Rationals with code <= fuel inside the ball, plus an even grid of it."""
    pts = {q for q in rationals_upto(fuel) if abs(q - centre) < radius}
    step = radius / max(fuel, 1)
    pts.update(centre + t * step for t in range(-fuel + 1, fuel))
    return sorted(pts)


def modulus_search(f: ContinuousFn, x: SlowReal, k: int, fuel: int) -> Verdict:
    """Least N <= fuel such that f varies by at most 2^-k on B_{1/N}(x).

    Stages N..fuel are compared against each other; the ball is centred at
    x's stage ``fuel``.  Only sampled rationals are checked, so a ``holds``
    is defeasible.
    """
    eps = Fraction(1, 2 ** k)
    centre = x[fuel]
    for N in range(1, fuel + 1):
        stages = [0] if f.static else range(N, fuel + 1)
        lo = hi = None
        ok = True
        for q in _ball_samples(centre, Fraction(1, N), fuel):
            for i in stages:
                v = f(q, i)
                if lo is None:
                    lo = hi = v
                else:
                    lo, hi = min(lo, v), max(hi, v)
                if hi - lo > eps:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return holds(N, fuel)
    return unknown(fuel)
