"""Sequences of reals under the uniform Cauchy contract."""
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
import threading
from typing import Callable

from .combinatorics import cauchy_subsequence
from .real_core import SlowReal, Verdict, holds, rat, unknown


class UniformRealSequence:
    """Double table ``(n, i) -> x_{n,i}``; row n is the n-th real."""
    __slots__ = ('_gen', '_memo', '_lock', 'label')

    def __init__(self, gen: Callable[[int, int], Fraction], label: str = ''):
        self._gen = gen
        self._memo = {}
        self._lock = threading.Lock()
        self.label = label

    def __call__(self, n: int, i: int) -> Fraction:
        key = (n, i)
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = Fraction(self._gen(n, i))
        with self._lock:
            return self._memo.setdefault(key, value)

    def member(self, n: int) -> SlowReal:
        return SlowReal(lambda i: self(n, i), label='%s[%d]' % (self.label, n))

    def __repr__(self):
        return 'UniformRealSequence(%s)' % (self.label or '...')


@dataclass(frozen=True)
class UniformRateWitness:
    modulus: Callable[[int], int]

    def __call__(self, k: int) -> int:
        return self.modulus(k)


def member(s: UniformRealSequence, n: int) -> SlowReal:
    return s.member(n)


def from_real(x: SlowReal) -> UniformRealSequence:
    """Every row is x."""
    return UniformRealSequence(lambda n, i: x[i], label='const-seq')


def from_rows(rows: Callable[[int], Fraction]) -> UniformRealSequence:
    """Row n is the constant real rows(n)."""
    return UniformRealSequence(lambda n, i: rows(n))


def diagonal_limit(s: UniformRealSequence) -> SlowReal:
    """x_{n,n}; the limit when the sequence of reals is Cauchy."""
    return SlowReal(lambda n: s(n, n), label='diagonal')


class Supremum(SlowReal):
    """Stage i is max_{n<=i} x_{n,i}; ``selector(i)`` is the least argmax."""
    __slots__ = ('_seq',)

    def __init__(self, s: UniformRealSequence):
        super().__init__(lambda i: s(self.selector(i), i), label='sup')
        self._seq = s

    def selector(self, i: int) -> int:
        best, arg = None, 0
        for n in range(i + 1):
            v = self._seq(n, i)
            if best is None or v > best:
                best, arg = v, n
        return arg


def supremum(s: UniformRealSequence, bound=None) -> Supremum:
    return Supremum(s)


def monotone_limit(s: UniformRealSequence, bound=None, increasing: bool = True) -> SlowReal:
    """Limit of a bounded monotone sequence: its sup, or minus the sup of -x."""
    if increasing:
        return supremum(s, bound)
    neg = UniformRealSequence(lambda n, i: -s(n, i))
    sup = supremum(neg, bound)
    return SlowReal(lambda i: -sup[i], label='inf')


def nested_intervals(xs: UniformRealSequence, ys: UniformRealSequence = None) -> SlowReal:
    """A point between every x_n and y_n: the limit of the left endpoints."""
    return monotone_limit(xs, increasing=True)


def limsup_approx(s: UniformRealSequence, bound, eps, fuel: int) -> Verdict:
    """Approximate limsup within eps; the witness is q = bound - l*eps/2.

    l is the least index with x_{n,n} >= bound - (l+1)*eps/2 for some n in
    the top half of [0, fuel], which stands in for "infinitely many n".
    """
    bound, eps = rat(bound), rat(eps)
    if eps <= 0:
        raise ValueError('eps must be positive')
    tail = [s(n, n) for n in range(ceil(fuel / 2), fuel + 1)]
    if not tail:
        return unknown(fuel)
    top = max(tail)
    # least l with top >= bound - (l+1) eps/2
    l = max(0, ceil((bound - top) / (eps / 2)) - 1)
    return holds(bound - l * eps / 2, fuel)


def _clamped(s: UniformRealSequence, bound: Fraction) -> UniformRealSequence:
    def gen(n, i):
        v = s(n, i)
        return -bound if v < -bound else bound if v > bound else v
    return UniformRealSequence(gen)


@dataclass
class BolzanoResult:
    selector: Callable[[int], int]
    limit: SlowReal
    selection: object


def bolzano_weierstrass(s: UniformRealSequence, bound, fuel: int, depth: int = None):
    """Convergent subsequence of a bounded sequence, or None on exhaustion.

    Stages are clamped to [-bound, bound], the diagonal is rescaled into
    [0, 1] and handed to the Cauchy-subsequence engine.  The default depth
    is the bit length of the window.
    """
    bound = rat(bound)
    c = _clamped(s, bound)
    if depth is None:
        depth = max(1, fuel.bit_length())
    sel = cauchy_subsequence(lambda n: (c(n, n) + bound) / (2 * bound), depth, fuel)
    if len(sel.tail(fuel)) < 2:
        return None
    limit = SlowReal(lambda i: c(sel(i), sel(i)), label='bw-limit')
    return BolzanoResult(sel, limit, sel)
