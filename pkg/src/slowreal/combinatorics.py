"""Finite-scale colourings, stable orders and cohesive subsequence extraction.

"Infinitely often" has no finite test.  The engines here read it as "holds
for the majority of the surviving tail of the window": deterministic,
monotone in the window, and right on eventually stable inputs.  Adversarial
inputs make them fail, which is the point of several demos.
"""
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Callable, List, Tuple

from .continuous_fn import ContinuousFn
from .open_sets import OpenSetCode, ball, empty
from .real_core import pair, rat, rational_from_code, unpair


def ipp_window(c: Callable[[int], int], window: int) -> int:
    """Most frequent colour on [0, window); ties go to the least colour."""
    counts = Counter(c(i) for i in range(window))
    best = max(counts.values())
    return min(col for col, n in counts.items() if n == best)


def permutation_order(c: Callable[[int], int], N: int, steps: int) -> List[Tuple[int, ...]]:
    """Trace d(0..steps) ordering the colours 0..N by last appearance.

    d(0) is the identity.  Each step moves c(i) to the last position.
    """
    d = tuple(range(N + 1))
    trace = [d]
    for i in range(steps):
        k = d.index(c(i))
        d = d[:k] + d[k + 1:] + (d[k],)
        trace.append(d)
    return trace


@dataclass(frozen=True)
class FiniteLinearOrder:
    elements: Tuple[int, ...]
    less: Callable[[int, int], bool]

    def is_linear(self) -> bool:
        els, lt = self.elements, self.less
        for a in els:
            if lt(a, a):
                return False
            for b in els:
                if a != b and lt(a, b) == lt(b, a):
                    return False
                for c in els:
                    if lt(a, b) and lt(b, c) and not lt(a, c):
                        return False
        return True


def _large_split(S, less, threshold):
    """First cut (I below J) where both sides reach past the other's start.

    Returns (I_late, J_late) for the witnessing cut, or None.
    """
    for c in S:
        I = [s for s in S if s == c or less(s, c)]
        J = [s for s in S if less(c, s)]
        if not I or not J:
            continue
        i_late = [s for s in I if s > min(J)]
        j_late = [s for s in J if s > min(I)]
        if len(i_late) > threshold and len(j_late) > threshold:
            return i_late, j_late
    return None


def stable_suborder(L: FiniteLinearOrder, threshold: int) -> List[int]:
    """Greedily trim L until no cut splits it into two interleaved large parts.

    A cut c gives I = {s <=_L c} and J = {s >_L c}.  It is a large split when
    more than ``threshold`` elements of I come after J starts (in index
    order) and vice versa; that is the finite shadow of two infinite sets
    lying one below the other.  The smaller late side is removed.
    """
    S = sorted(L.elements)
    while True:
        split = _large_split(S, L.less, threshold)
        if split is None:
            return S
        i_late, j_late = split
        drop = set(i_late if len(i_late) <= len(j_late) else j_late)
        S = [s for s in S if s not in drop]


def has_large_split(S, less, threshold) -> bool:
    return _large_split(list(S), less, threshold) is not None


@dataclass(frozen=True)
class Selection:
    """Survivors of a cohesive extraction, plus per-depth survivor counts."""
    indices: Tuple[int, ...]
    counts: Tuple[int, ...]

    def __len__(self):
        return len(self.indices)

    def __call__(self, i: int) -> int:
        """Selector n(i); past the window it repeats the last survivor."""
        return self.indices[min(i, len(self.indices) - 1)]

    def tail(self, window: int) -> Tuple[int, ...]:
        return tuple(n for n in self.indices if n >= window // 2)


def cohesive_selector(R: Callable[[int, int], int], depth: int, window: int) -> Selection:
    """Keep the indices in [0, window) that follow the tail majority bit by bit.

    For d = 0..depth-1 the surviving indices at or beyond window/2 vote on
    R(d, n); ties go to the earliest voter.  Survivors whose bit disagrees
    are dropped.  There is no backtracking.
    """
    survivors = list(range(window))
    counts = [len(survivors)]
    for d in range(depth):
        voters = [n for n in survivors if n >= window // 2] or survivors
        if not voters:
            break
        ones = sum(1 for n in voters if R(d, n))
        zeros = len(voters) - ones
        if ones == zeros:
            bit = 1 if R(d, voters[0]) else 0
        else:
            bit = 1 if ones > zeros else 0
        survivors = [n for n in survivors if (1 if R(d, n) else 0) == bit]
        counts.append(len(survivors))
    return Selection(tuple(survivors), tuple(counts))


def _clamp01(q) -> Fraction:
    q = Fraction(q)
    return Fraction(0) if q < 0 else Fraction(1) if q > 1 else q


def dyadic_digit(q, d: int) -> int:
    """Binary digit d (0-based, after the point) of q in [0, 1]; 1 reads as 0.111..."""
    scaled = floor(_clamp01(q) * 2 ** (d + 1))
    return min(scaled, 2 ** (d + 1) - 1) & 1


def cauchy_subsequence(q: Callable[[int], Fraction], depth: int, window: int) -> Selection:
    """Select indices whose values share their first ``depth`` binary digits."""
    return cohesive_selector(lambda d, n: dyadic_digit(q(n), d), depth, window)


def diameter(values) -> Fraction:
    values = list(values)
    return max(values) - min(values) if values else Fraction(0)


def row_positions(k: int, depth: int) -> List[int]:
    """Positions pi(k, l) below ``depth``; digit l of row k sits at pi(k, l)."""
    out = []
    l = 0
    while pair(k, l) < depth:
        out.append(pair(k, l))
        l += 1
    return out


def interleaved_code(q: Callable[[int, int], Fraction], n: int, length: int) -> Tuple[int, ...]:
    """The bit string rho^n: position pi(k, l) holds digit l of q(k, n)."""
    bits = []
    for p in range(length):
        k, l = unpair(p)
        bits.append(dyadic_digit(q(k, n), l))
    return tuple(bits)


def project(sigma, k: int) -> Tuple[int, ...]:
    """pi_k(sigma): the entries of sigma at positions pi(k, 0), pi(k, 1), ..."""
    out = []
    l = 0
    while pair(k, l) < len(sigma):
        out.append(sigma[pair(k, l)])
        l += 1
    return tuple(out)


def interleaved_subsequence(q: Callable[[int, int], Fraction], depth: int, window: int) -> Selection:
    """One selector along which every row q(k, .) is Cauchy.

    Bit position p = pi(k, l) carries digit l of row k, so the first
    ``depth`` positions fix a few digits of each of the first rows.
    """
    def R(p, n):
        k, l = unpair(p)
        return dyadic_digit(q(k, n), l)
    return cohesive_selector(R, depth, window)


@dataclass
class ArzelaResult:
    selection: Selection
    limit: object  # ContinuousFn
    rows: Tuple[Fraction, ...]


def arzela_ascoli(fs, bound, depth: int, window: int):
    """Select a subsequence of function tables converging on every rational.

    Row k of the interleaving is f_n at the rational with code k, read at
    stage n and rescaled from [-bound, bound] into [0, 1].  Returns None when
    fewer than two survivors remain in the tail.
    """
    bound = rat(bound)

    def q(k, n):
        v = fs(n, rational_from_code(k), n)
        return _clamp01((v + bound) / (2 * bound))
    sel = interleaved_subsequence(q, depth, window)
    if len(sel.tail(window)) < 2:
        return None
    limit = ContinuousFn(lambda x, i: fs(sel(i), x, sel(i)))
    rows = tuple(rational_from_code(k) for k in range(window))
    return ArzelaResult(sel, limit, rows)


def sequential_hb_gadget(f: Callable[[int], int], n: int, h: Callable[[int], int]):
    """Decode ``n in rng(f)`` from a claimed uniform subcover bound h.

    The families behind it: U_{n,0} holds the ball (1/2, 1) at stage k when
    no m < k has f(m) = n; U_{n,i+1} is that ball when f(i) = n and empty
    otherwise.  If [0, 1] is covered by U_{n,0..h(n)}, then n is in the
    range iff f(i) = n for some i < h(n).
    """
    half, one = Fraction(1, 2), Fraction(1)

    def u0(k, a, r):
        return a == half and r == one and all(f(m) != n for m in range(k))
    families = [OpenSetCode(u0, support=((half, one),), label='U_%d,0' % n)]
    for i in range(h(n)):
        families.append(ball(half, one) if f(i) == n else empty())
    in_range = any(f(i) == n for i in range(h(n)))
    return {'in_range': in_range, 'families': families}
