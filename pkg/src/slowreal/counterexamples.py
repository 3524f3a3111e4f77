"""Reversal gadgets: objects on which rate-free reasoning visibly needs more than computation.

Each builder is deterministic in its parameters.  Witness schedules are
plain rules, so a test can hide a witness beyond any fuel.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import threading
from typing import Any, Callable, Dict, List, Optional

from .continuous_fn import ContinuousFn
from .open_sets import OpenSetCode
from .real_core import (SlowReal, decode_tuple, extract_rate, rate_refuted, rational_from_code,
                        specker)
from .real_sequences import UniformRealSequence


@dataclass
class GadgetDescriptor:
    """A named gadget, its parameters and the object built from them."""
    name: str
    params: Dict[str, Any]
    obj: Any
    note: str = ''
    extra: Dict[str, Any] = field(default_factory=dict)


def hat_function(q: Callable[[int], Fraction]) -> ContinuousFn:
    """f(r)_i = max_{n<=i} g_n(r), g_n(r) = max(0, 2^n (1 - 2^n |q_n - r|)).

    The hats grow taller and narrower, so f is unbounded near any
    accumulation point of (q_n).
    """
    def g(n, r):
        v = 2 ** n * (1 - 2 ** n * abs(Fraction(q(n)) - r))
        return v if v > 0 else Fraction(0)
    return ContinuousFn(lambda r, i: max(g(n, r) for n in range(i + 1)), label='hat')


def step_gadget(c: Callable[[int], int], N: int):
    """(f, h): f(q)_i = -1 if (N+1) q <= c(i) else +1, and h = f + identity."""
    def f_table(q, i):
        return Fraction(-1) if (N + 1) * q <= c(i) else Fraction(1)
    f = ContinuousFn(f_table, label='step')
    h = ContinuousFn(lambda q, i: f(q, i) + q, label='step+x')
    return f, h


def tent_map(q: Fraction) -> Fraction:
    if q <= Fraction(1, 3):
        return 3 * q
    if q < Fraction(2, 3):
        return 2 - 3 * q
    return 3 * q - 2


def tent_gadget(witness: Callable[[int], Optional[int]]):
    """(f, x0) decoding a Sigma^0_1 set through tent-map iterates.

    ``witness(i)`` is the least m with theta(m, i), or None.  Then
    x0_j = (2/3) sum_{i<=j} s_{ij} with s_{ij} = 3^-i once the witness is
    at most j, and x_n >= 2/3 exactly when phi(n) holds.
    """
    f = ContinuousFn(lambda q, i: tent_map(q), static=True, label='tent')

    def s(i, j):
        w = witness(i)
        return Fraction(1, 3 ** i) if w is not None and w <= j else Fraction(0)
    x0 = SlowReal(lambda j: Fraction(2, 3) * sum((s(i, j) for i in range(j + 1)), Fraction(0)),
                  label='tent-x0')
    return f, x0


def tent_iterate(x0: SlowReal, n: int, stage: int) -> Fraction:
    """x_{n, stage}: the tent map applied n times to x0 at that stage."""
    v = x0[stage]
    for _ in range(n):
        v = tent_map(v)
    return v


def tent_limit_value(witness: Callable[[int], Optional[int]], n: int, terms: int) -> Fraction:
    """Exact x_n for x0 = (2/3) sum_i [phi(i)] 3^-i truncated after ``terms`` digits."""
    x = Fraction(2, 3) * sum((Fraction(1, 3 ** i) for i in range(terms) if witness(i) is not None),
                             Fraction(0))
    for _ in range(n):
        x = tent_map(x)
    return x


class LimsupGadget:
    """x_i = sum_{k <= min(i, K)} s_k(i) 2^-k.

    e_k lists P_k = {(m, n) : theta(m, n', k) for n' < n} lexicographically;
    s_k(i) = 0 exactly when e_k(i) and e_k(i+1) share the first entry.
    """

    def __init__(self, theta: Callable[[int, int, int], bool], K: int):
        self.theta = theta
        self.K = K
        self._walks = {}
        self._lock = threading.Lock()

    def enumeration(self, k: int, i: int):
        with self._lock:
            walk = self._walks.setdefault(k, [(0, 0)])
        while len(walk) <= i:
            m, n = walk[-1]
            walk.append((m, n + 1) if self.theta(m, n, k) else (m + 1, 0))
        return walk[i]

    def s(self, k: int, i: int) -> int:
        m, n = self.enumeration(k, i)
        return 0 if self.theta(m, n, k) else 1

    def x(self, i: int) -> Fraction:
        return sum((Fraction(self.s(k, i), 2 ** k) for k in range(min(i, self.K) + 1)),
                   Fraction(0))

    def sequence(self) -> UniformRealSequence:
        return UniformRealSequence(lambda n, i: self.x(n), label='limsup-gadget')


def limsup_gadget(theta: Callable[[int, int, int], bool], K: int) -> UniformRealSequence:
    return LimsupGadget(theta, K).sequence()


def intersection_gadget(c: Callable[[int], int], N: int, window: int = 64) -> List[OpenSetCode]:
    """U_n = {(i, 0, 1/(k+1)) : k = max{j <= i : j = 0 or c(j) = n}} for n <= N.

    Radii 1/(k+1) with k <= window form the support, so member searches stay finite.
    """
    def last_hit(n, i):
        for j in range(i, 0, -1):
            if c(j) == n:
                return j
        return 0

    support = tuple((Fraction(0), Fraction(1, k + 1)) for k in range(window + 1))

    def make(n):
        return OpenSetCode(lambda i, a, r: a == 0 and r == Fraction(1, last_hit(n, i) + 1),
                           support=support, label='U_%d' % n)
    return [make(n) for n in range(N + 1)]


def delayed_injection(k: int, delay: int) -> Callable[[int], int]:
    """Injective f whose value k is only enumerated at index ``delay``.

    Before the delay f(i) = k + 1 + i; at the delay f = k; afterwards k + i.
    """
    def f(i):
        if i < delay:
            return k + 1 + i
        if i == delay:
            return k
        return k + i
    return f


def specker_report(delay: int, fuel: int, k: int = 0) -> Dict[str, Any]:
    """Rate extraction on a Specker real whose k-th value is hidden at ``delay``.

    The candidate modulus found at ``fuel`` is checked again at 4 * fuel.
    Status is 'unknown' whenever the witness lies beyond the fuel, since no
    finite window can then certify the candidate.
    """
    f = delayed_injection(k, delay)
    x = specker(f)
    tol = k + 2
    v = extract_rate(x, tol, fuel)
    N = v.witness
    refuted = rate_refuted(x, tol, N, 4 * fuel)
    return {
        'delay': delay, 'fuel': fuel, 'k': k, 'tolerance_exp': tol,
        'candidate_N': N, 'refuted_at': 4 * fuel if refuted else None,
        'status': 'unknown' if delay > fuel else 'holds',
        'stages': [(i, x[i]) for i in range(min(fuel, 64) + 1)],
    }


# --- galleries used by the command line ------------------------------------------------

def hat_gallery() -> ContinuousFn:
    """Hats centred at 1/4 and 3/4 alternately: unbounded near both points."""
    return hat_function(lambda n: Fraction(1, 4) if n % 2 == 0 else Fraction(3, 4))


def step_gallery() -> ContinuousFn:
    """h = f + x for the step gadget with colour 0 until index 5, then 1 (N = 1)."""
    _, h = step_gadget(lambda i: 0 if i < 5 else 1, 1)
    return h


def van_der_corput(n: int) -> Fraction:
    """Base-2 radical inverse of n + 1; dense in (0, 1) with no convergent tail."""
    n += 1
    v, denom = Fraction(0), 1
    while n:
        denom *= 2
        v += Fraction(n & 1, denom)
        n >>= 1
    return v


def heine_borel_adversary(q: Callable[[int], Fraction] = van_der_corput):
    """Family U_i, i = code(N, a, r): the ball (a, r) at stage n when q_j is
    outside it for all N <= j <= n."""

    @lru_cache(maxsize=None)
    def family(i):
        N, ca, cr = decode_tuple(i, 3)
        a, r = rational_from_code(ca), rational_from_code(cr)
        if r <= 0:
            return OpenSetCode(lambda n, b, s: False, support=(), static=True)
        clear = [True]  # clear[n]: q_j outside B_r(a) for N <= j <= n (True when n < N)

        def contains(n, b, s):
            while len(clear) <= n:
                m = len(clear)
                clear.append(clear[-1] and (m < N or abs(Fraction(q(m)) - a) >= r))
            # stage 0 also needs q_0 checked when N == 0
            return clear[n] and (N > 0 or abs(Fraction(q(0)) - a) >= r)
        return OpenSetCode(contains, support=((a, r),), label='U_%d' % i)
    return family
