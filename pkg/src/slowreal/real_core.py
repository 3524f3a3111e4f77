"""Exact rationals, tuple coding and slow Cauchy reals.

A real is a rule ``i -> Fraction`` that is Cauchy but carries no rate of
convergence.  Order questions are therefore only semi-decidable; they are
answered by a fuel-bounded search returning a :class:`Verdict`.
"""
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, gcd, isqrt
import threading
from typing import Any, Callable, Optional

HOLDS = 'holds'
FAILS = 'fails'
UNKNOWN = 'unknown'


def rat(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction.

    Floats are rejected, since they would silently introduce rounding.
    """
    if isinstance(value, float):
        raise TypeError('floats are not exact; pass a Fraction or "p/q" string')
    return Fraction(value)


# --- tuple coding --------------------------------------------------------

def pair(a: int, b: int) -> int:
    """Cantor pairing (a+b)(a+b+1)/2 + b."""
    s = a + b
    return s * (s + 1) // 2 + b


def unpair(z: int):
    """Inverse of :func:`pair`."""
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def code_tuple(*items: int) -> int:
    """Left-nested pairing ``<<<a, b>, c>, ...>``; a 1-tuple is itself."""
    code = items[0]
    for item in items[1:]:
        code = pair(code, item)
    return code


def decode_tuple(code: int, length: int):
    out = []
    for _ in range(length - 1):
        code, last = unpair(code)
        out.append(last)
    out.append(code)
    return tuple(reversed(out))


# Rationals are listed by height max(|p|, q): 0, then for each height the
# positive values in increasing order, each followed by its negative.  This
# keeps codes small (code(1/2) == 3), which matters because several
# constructions bound their searches by code.

_height_offsets = [0, 1]  # _height_offsets[h] = code of the first entry of height h


@lru_cache(maxsize=None)
def _height_block(h: int):
    if h == 0:
        return (Fraction(0),)
    positives = sorted({Fraction(p, h) for p in range(1, h + 1) if gcd(p, h) == 1}
                       | {Fraction(h, q) for q in range(1, h + 1) if gcd(h, q) == 1})
    block = []
    for value in positives:
        block.append(value)
        block.append(-value)
    return tuple(block)


def _extend_offsets(h: int):
    while len(_height_offsets) <= h + 1:
        last = len(_height_offsets) - 1
        _height_offsets.append(_height_offsets[-1] + len(_height_block(last)))


def rational_code(q) -> int:
    """Code of a rational in the height enumeration."""
    q = rat(q)
    if q == 0:
        return 0
    h = max(abs(q.numerator), q.denominator)
    _extend_offsets(h)
    return _height_offsets[h] + _height_block(h).index(q)


def rational_from_code(n: int) -> Fraction:
    h = 0
    while True:
        _extend_offsets(h)
        if _height_offsets[h + 1] > n:
            break
        h = max(h + 1, 2 * h)
    h = bisect_right(_height_offsets, n, 0, h + 2) - 1
    return _height_block(h)[n - _height_offsets[h]]


_rationals_cache = []


def rationals_upto(n: int):
    """The rationals with code <= n, in code order (cached, shared list)."""
    if len(_rationals_cache) <= n:
        _rationals_cache.extend(rational_from_code(c) for c in range(len(_rationals_cache), n + 1))
    return _rationals_cache[:n + 1]


def ball_index(a, r) -> int:
    """Code of the pair (a, r)."""
    return pair(rational_code(a), rational_code(r))


def triple_code(n: int, a, r) -> int:
    """Code of an open-set triple (n, a, r); dominates n and both rational codes."""
    return code_tuple(n, rational_code(a), rational_code(r))


# --- verdicts ------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Outcome of a fuel-bounded query.

    ``holds`` and ``fails`` are defeasible: they were checked on a finite
    window only.  ``unknown`` is always a legal answer.
    """
    outcome: str
    witness: Any = None
    fuel_used: int = 0

    @property
    def holds(self) -> bool:
        return self.outcome == HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome == FAILS

    @property
    def unknown(self) -> bool:
        return self.outcome == UNKNOWN


def holds(witness=None, fuel_used=0) -> Verdict:
    return Verdict(HOLDS, witness, fuel_used)


def fails(witness=None, fuel_used=0) -> Verdict:
    return Verdict(FAILS, witness, fuel_used)


def unknown(fuel_used=0) -> Verdict:
    return Verdict(UNKNOWN, None, fuel_used)


# --- slow reals ----------------------------------------------------------

class SlowReal:
    """A real given by a Cauchy sequence of rationals with no rate.

    ``gen`` must be pure; computed stages are memoized.  Operators act
    pointwise on stages, so field laws hold stage by stage.
    """
    __slots__ = ('_gen', '_memo', '_lock', 'label')

    def __init__(self, gen: Callable[[int], Fraction], label: str = ''):
        self._gen = gen
        self._memo = {}
        self._lock = threading.Lock()
        self.label = label

    def __getitem__(self, i: int) -> Fraction:
        try:
            return self._memo[i]
        except KeyError:
            pass
        value = Fraction(self._gen(i))
        with self._lock:
            return self._memo.setdefault(i, value)

    def stages(self, start: int, stop: int):
        return [self[i] for i in range(start, stop)]

    def __repr__(self):
        return 'SlowReal(%s)' % (self.label or 'stage0=%s' % self[0])

    def __add__(self, other):
        return field_op('add', self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return field_op('sub', self, _lift(other))

    def __rsub__(self, other):
        return field_op('sub', _lift(other), self)

    def __mul__(self, other):
        return field_op('mul', self, _lift(other))

    __rmul__ = __mul__

    def __neg__(self):
        return field_op('neg', self)

    def __abs__(self):
        return field_op('abs', self)


def _lift(value) -> SlowReal:
    return value if isinstance(value, SlowReal) else const(value)


def const(q) -> SlowReal:
    q = rat(q)
    return SlowReal(lambda i: q, label=str(q))


def from_rule(rule: Callable[[int], Any], label: str = '') -> SlowReal:
    return SlowReal(lambda i: rat(rule(i)), label=label)


def approximate(x: SlowReal, i: int) -> Fraction:
    return x[i]


_UNARY = {'neg': lambda a: -a, 'abs': abs}
_BINARY = {
    'add': lambda a, b: a + b,
    'sub': lambda a, b: a - b,
    'mul': lambda a, b: a * b,
}


def field_op(op: str, x: SlowReal, y: Optional[SlowReal] = None) -> SlowReal:
    """Apply ``op`` stage by stage."""
    if op in _UNARY:
        f = _UNARY[op]
        return SlowReal(lambda i: f(x[i]))
    if op in _BINARY:
        if y is None:
            raise ValueError('%s needs two operands' % op)
        f = _BINARY[op]
        return SlowReal(lambda i: f(x[i], y[i]))
    raise ValueError('unknown field operation %r' % op)


def invert(x: SlowReal, apartness) -> SlowReal:
    """Stagewise reciprocal; zero stages map to 0.

    ``apartness`` is the (delta, N) witness for ``|x| >= delta`` past ``N``.
    It is not re-checked: a false witness yields a non-Cauchy result.
    """
    delta, _ = apartness
    if rat(delta) <= 0:
        raise ValueError('apartness delta must be positive')

    def gen(i):
        v = x[i]
        return 1 / v if v else Fraction(0)
    return SlowReal(gen)


def _dyadic_window_search(diffs, fuel):
    """Least k, then least N, with diffs[n] > 2^-k for all N <= n <= fuel."""
    suffix_min = [None] * (fuel + 1)
    running = None
    for n in range(fuel, -1, -1):
        running = diffs[n] if running is None else min(running, diffs[n])
        suffix_min[n] = running
    for k in range(fuel + 1):
        delta = Fraction(1, 2 ** k)
        for n in range(fuel + 1):
            if suffix_min[n] > delta:
                return delta, n
    return None


def strict_less(x: SlowReal, y: SlowReal, fuel: int) -> Verdict:
    """Search a witness (delta, N) for x < y, or one for y < x.

    Equality is never confirmed; it yields ``unknown``.
    """
    diffs = [y[n] - x[n] for n in range(fuel + 1)]
    found = _dyadic_window_search(diffs, fuel)
    if found:
        return holds(found, fuel)
    found = _dyadic_window_search([-d for d in diffs], fuel)
    if found:
        return fails(found, fuel)
    return unknown(fuel)


def leq_refuted(x: SlowReal, y: SlowReal, fuel: int) -> Verdict:
    """Holds when ``x <= y`` is refuted, i.e. ``y < x`` was witnessed."""
    v = strict_less(y, x, fuel)
    return holds(v.witness, fuel) if v.holds else unknown(fuel)


def specker(f: Callable[[int], int]) -> SlowReal:
    """Stage n is the sum over i <= n of 2^(-f(i)-1)."""
    partial = [Fraction(0)]
    lock = threading.Lock()

    def gen(n):
        with lock:
            while len(partial) <= n + 1:
                i = len(partial) - 1
                partial.append(partial[-1] + Fraction(1, 2 ** (f(i) + 1)))
            return partial[n + 1]
    return SlowReal(gen, label='specker')


def extract_rate(x: SlowReal, k: int, fuel: int) -> Verdict:
    """Least N whose window [N, fuel] has spread at most 2^-k.

    The answer is only a candidate: later stages may refute it.
    """
    eps = Fraction(1, 2 ** k)
    lo = hi = x[fuel]
    best = fuel
    for n in range(fuel - 1, -1, -1):
        v = x[n]
        lo, hi = min(lo, v), max(hi, v)
        if hi - lo > eps:
            break
        best = n
    return holds(best, fuel)


def rate_refuted(x: SlowReal, k: int, N: int, fuel: int) -> bool:
    """True when the window [N, fuel] has spread above 2^-k."""
    window = x.stages(N, fuel + 1)
    return max(window) - min(window) > Fraction(1, 2 ** k)


def archimedean_bound(x: SlowReal, fuel: int) -> int:
    return ceil(max(abs(x[i]) for i in range(fuel + 1))) + 1


def finite_max(xs) -> SlowReal:
    xs = list(xs)
    if not xs:
        raise ValueError('finite_max of an empty family')
    return SlowReal(lambda i: max(x[i] for x in xs))


def finite_min(xs) -> SlowReal:
    xs = list(xs)
    if not xs:
        raise ValueError('finite_min of an empty family')
    return SlowReal(lambda i: min(x[i] for x in xs))


@dataclass(frozen=True)
class RateWitness:
    """A modulus: |x_m - x_n| <= 2^-k whenever m, n >= modulus(k).

    Only test oracles and demos use these; no public operation needs one.
    """
    modulus: Callable[[int], int]

    def __call__(self, k: int) -> int:
        return self.modulus(k)


def cauchy_audit(x: SlowReal, rate: RateWitness, k: int, horizon: int) -> bool:
    """Check the modulus claim at tolerance 2^-k on stages up to ``horizon``."""
    start = rate(k)
    if start > horizon:
        return True
    window = x.stages(start, horizon + 1)
    return max(window) - min(window) <= Fraction(1, 2 ** k)
