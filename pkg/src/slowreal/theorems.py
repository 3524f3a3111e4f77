"""Named theorems of one-variable analysis as stage-indexed constructions.

Every construction is total: stage k of an output only reads stages <= k
(or a bounded search) of its inputs.  Where the underlying theorem needs a
non-computable principle the construction takes fuel and may report
Unknown (None or an ``unknown`` Verdict).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, floor, gcd
import threading
from typing import Callable, List, Optional, Tuple

from .combinatorics import cauchy_subsequence
from .continuous_fn import ContinuousFn, FnSequence, clamp, evaluate, weighted_series
from .open_sets import ClosedSetCode, OpenSetCode, sublevel_open, urysohn
from .real_core import (SlowReal, Verdict, decode_tuple, fails, holds, rat,
                        rational_from_code, rationals_upto, unknown, unpair)
from .real_sequences import UniformRealSequence, diagonal_limit


# --- intermediate values ------------------------------------------------------------

class BisectionTrace:
    """Per-stage bisection intervals; ``intervals(n)[i]`` is [a_i^n, b_i^n]."""

    def __init__(self, f: ContinuousFn):
        self._f = f
        self._memo = {}
        self._lock = threading.Lock()

    def _sign(self, n):
        # w.l.o.g. f(0) < 0 at each stage; flip when stage n says otherwise
        return -1 if self._f(Fraction(0), n) > 0 else 1

    def stage(self, n):
        """(intervals, exact_zero) for stage n."""
        with self._lock:
            if n in self._memo:
                return self._memo[n]
        sign = self._sign(n)
        a, b = Fraction(0), Fraction(1)
        out = [(a, b)]
        zero = None
        for _ in range(n):
            d = (a + b) / 2
            v = sign * self._f(d, n)
            if v == 0 and zero is None:
                zero = d
            if v >= 0:
                b = d
            else:
                a = d
            out.append((a, b))
        result = (tuple(out), zero)
        with self._lock:
            self._memo[n] = result
        return result

    def intervals(self, n):
        return self.stage(n)[0]

    def value(self, n) -> Fraction:
        ivs, zero = self.stage(n)
        return zero if zero is not None else ivs[n][0]

    def revisions(self, upto: int) -> List[Tuple[int, int]]:
        """Pairs (n, i): stage n changed the choice made at depth i by stage n-1."""
        out = []
        for n in range(1, upto + 1):
            prev, cur = self.intervals(n - 1), self.intervals(n)
            for i in range(1, n):
                if prev[i] != cur[i]:
                    out.append((n, i))
                    break
        return out


def ivt_root(f: ContinuousFn):
    """A zero of f on [0, 1]: stage n reruns n bisection steps reading f at stage n.

    Returns (root, trace).  A midpoint where f is exactly 0 at stage n is
    returned as that stage's value.
    """
    trace = BisectionTrace(f)
    return SlowReal(trace.value, label='ivt'), trace


# --- extrema and uniform continuity --------------------------------------------------

def dyadic_argmax(f: ContinuousFn, n: int) -> Fraction:
    """x_n = i/2^n maximizing f(x_n)_n, least i on ties."""
    best, arg = None, Fraction(0)
    for i in range(2 ** n + 1):
        q = Fraction(i, 2 ** n)
        v = f(q, n)
        if best is None or v > best:
            best, arg = v, q
    return arg


@dataclass
class ExtremumResult:
    argmax: SlowReal
    value: SlowReal
    selection: object
    candidates: Tuple[Fraction, ...]


def extremum(f: ContinuousFn, fuel: int, depth: Optional[int] = None,
             spread_exp: int = 4) -> Optional[ExtremumResult]:
    """Maximum of f on [0, 1], or None when the candidate search does not settle.

    Candidates are the dyadic argmaxes x_n for n below the bit length of
    fuel; a Cauchy subsequence of them is extracted.  None is returned when
    fewer than two candidates survive or when f's values along the
    surviving tail spread by more than 2^-spread_exp.
    """
    window = max(2, fuel.bit_length())
    if depth is None:
        depth = window
    xs = tuple(dyadic_argmax(f, n) for n in range(window))
    sel = cauchy_subsequence(lambda n: xs[n], depth, window)
    tail = sel.tail(window)
    if len(tail) < 2:
        return None
    values = [f(xs[n], n) for n in tail]
    if max(values) - min(values) > Fraction(1, 2 ** spread_exp):
        return None

    def arg(i):
        return xs[sel(i)] if i < window else xs[sel.indices[-1]]
    point = SlowReal(arg, label='argmax')
    return ExtremumResult(point, evaluate(f, point), sel, xs)


def _unit_rationals(fuel: int):
    return [q for q in rationals_upto(fuel) if 0 <= q <= 1]


def uniform_continuity_modulus(f: ContinuousFn, k: int, fuel: int) -> Verdict:
    """Least N with |f(p)_i - f(q)_j| < 2^-k whenever |p - q| < 1/N.

    p, q range over rationals in [0, 1] with code <= fuel and i, j over
    [N, fuel].  N is searched up to fuel/2 so that every candidate is tested
    on at least two stages.
    """
    eps = Fraction(1, 2 ** k)
    qs = sorted(_unit_rationals(fuel))
    for N in range(1, max(1, fuel // 2) + 1):
        stages = [0] if f.static else range(N, fuel + 1)
        lo = [min(f(q, i) for i in stages) for q in qs]
        hi = [max(f(q, i) for i in stages) for q in qs]
        ok = True
        for a in range(len(qs)):
            b = a
            while b < len(qs) and qs[b] - qs[a] < Fraction(1, N):
                if hi[a] - lo[b] >= eps or hi[b] - lo[a] >= eps:
                    ok = False
                    break
                b += 1
            if not ok:
                break
        if ok:
            return holds(N, fuel)
    return unknown(fuel)


def riemann_integral(f: ContinuousFn) -> SlowReal:
    """Stage n is the left dyadic sum with 2^n cells, reading f at stage n."""
    def gen(n):
        w = 2 ** n
        return sum((f(Fraction(i, w), n) for i in range(w)), Fraction(0)) / w
    return SlowReal(gen, label='integral')


# --- Weierstrass approximation -------------------------------------------------------

def bernstein_basis(n: int, k: int, q) -> Fraction:
    q = rat(q)
    return comb(n, k) * q ** k * (1 - q) ** (n - k)


def bernstein_degree(bound, delta, eps) -> int:
    """Least n with n > b / (delta^2 eps)."""
    bound, delta, eps = rat(bound), rat(delta), rat(eps)
    return int(bound / (delta * delta * eps)) + 1


def bernstein(f: ContinuousFn, n: int) -> ContinuousFn:
    """B_n(f)(q)_i = sum_k f(k/n)_i C(n, k) q^k (1 - q)^(n - k).

    Evaluated in integers over the common denominator, which keeps high
    degrees affordable.
    """
    if n < 1:
        raise ValueError('degree must be at least 1')
    binoms = [comb(n, k) for k in range(n + 1)]
    weights = {}
    lock = threading.Lock()

    def stage_weights(i):
        # integer weights w_k = f(k/n)_i C(n, k) den over a common denominator
        with lock:
            if i in weights:
                return weights[i]
        vals = [f(Fraction(k, n), i) for k in range(n + 1)]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        ws = [v.numerator * (den // v.denominator) * binoms[k] for k, v in enumerate(vals)]
        with lock:
            return weights.setdefault(i, (ws, den))

    def table(q, i):
        ws, den = stage_weights(0 if f.static else i)
        a, b = q.numerator, q.denominator
        c = b - a
        # homogeneous Horner: total = sum_k w_k a^k c^(n-k), one small factor per step
        cpow = [1] * (n + 1)
        for k in range(1, n + 1):
            cpow[k] = cpow[k - 1] * c
        total = 0
        for k in range(n, -1, -1):
            total = total * a + ws[k] * cpow[n - k]
        return Fraction(total, den * b ** n)
    return ContinuousFn(table, static=f.static, label='B_%d' % n)


# --- contractions -----------------------------------------------------------------

def banach_iterates(f: ContinuousFn, rho, x0: SlowReal):
    """(seq, fix): x_{n,i} is f applied n times to x0_i at stage i, clamped to [0, 1]."""
    rho = rat(rho)
    if not 0 <= rho < 1:
        raise ValueError('rho must lie in [0, 1)')
    zero, one = Fraction(0), Fraction(1)
    columns = {}
    lock = threading.Lock()

    def gen(n, i):
        with lock:
            col = columns.setdefault(i, [clamp(x0[i], zero, one)])
            while len(col) <= n:
                col.append(clamp(f(col[-1], i), zero, one))
            return col[n]
    seq = UniformRealSequence(gen, label='banach')
    return seq, diagonal_limit(seq)


def banach_bound(rho, m: int) -> Fraction:
    rho = rat(rho)
    return rho ** m / (1 - rho)


# --- Caristi ------------------------------------------------------------------------

class LscCode:
    """Lower semicontinuous g given by g_i(q) >= 0; g'_k(q) = min_{i<=k} g_i(q)."""

    def __init__(self, table: Callable[[int, Fraction], Fraction], label: str = ''):
        self._table = table
        self._mins = {}
        self._lock = threading.Lock()
        self.label = label

    def raw(self, i: int, q) -> Fraction:
        return Fraction(self._table(i, Fraction(q)))

    def prime(self, k: int, q) -> Fraction:
        q = Fraction(q)
        with self._lock:
            mins = self._mins.setdefault(q, [])
        while len(mins) <= k:
            v = self.raw(len(mins), q)
            mins.append(v if not mins else min(mins[-1], v))
        return mins[k]


def lsc_from_continuous(g: ContinuousFn) -> LscCode:
    """g*(q)_i = g(q)_i + 2^(-i+2); right for fast, non-negative g."""
    return LscCode(lambda i, q: g(q, i) + Fraction(4, 2 ** i), label='lift')


@dataclass
class CaristiResult:
    point: SlowReal
    steps: Tuple[Tuple[int, Fraction], ...]


def caristi_point(f: ContinuousFn, g: LscCode, fuel: int,
                  steps: Optional[int] = None) -> Optional[CaristiResult]:
    """Approximate fixed point from the Caristi condition g(f(x)) <= g(x) - |x - f(x)|.

    From (i(0), q_0) = (0, 0), step m searches candidates (d, q) in order of
    the code pi(d, code q) <= fuel, with i(m+1) = i(m) + 1 + d, for
    q in B_{2^(1-m)}(f(q_m)_{i(m+1)}) and
    g'_{i(m+1)}(q) <= g'_{i(m)}(q_m) - |q_m - q| + 2^(1-m).
    Returns None when some step finds no candidate.
    """
    if steps is None:
        steps = max(1, fuel.bit_length() // 2)
    i_m, q_m = 0, Fraction(0)
    trail = [(i_m, q_m)]
    for m in range(steps):
        slack = Fraction(2, 2 ** m)
        base = g.prime(i_m, q_m)
        found = None
        for c in range(fuel + 1):
            d, cq = unpair(c)
            q = rational_from_code(cq)
            i_next = i_m + 1 + d
            if abs(q - f(q_m, i_next)) >= slack:
                continue
            if g.prime(i_next, q) <= base - abs(q_m - q) + slack:
                found = (i_next, q)
                break
        if found is None:
            return None
        i_m, q_m = found
        trail.append(found)
    qs = [q for _, q in trail]
    point = SlowReal(lambda k: qs[min(k, len(qs) - 1)], label='caristi')
    return CaristiResult(point, tuple(trail))


def lsc_leq_query(g: LscCode, x: SlowReal, y: SlowReal, z: SlowReal, k: int,
                  fuel: int) -> Verdict:
    """Bounded check of g(x) <= g(y) + z at eps = 2^-k.

    The quantifiers over i and j are settled at i = j = fuel, since g'_k
    only decreases in k.  Balls are centred at the stage-fuel values of x
    and y and sampled at rationals with code <= fuel.  Fails carries the
    first m for which no n works.
    """
    eps = Fraction(1, 2 ** k)
    xs, ys, zs = x[fuel], y[fuel], z[fuel]
    pool = rationals_upto(fuel)
    values = {q: g.prime(fuel, q) for q in pool}
    scale = fuel.bit_length()
    tested = False
    for m in range(scale + 1):
        ps = [values[p] for p in pool if abs(p - xs) < Fraction(1, 2 ** m)]
        if not ps:
            continue
        lhs = min(ps)
        some_n = False
        ok = False
        for n in range(scale + 1):
            qs = [values[q] for q in pool if abs(q - ys) < Fraction(1, 2 ** n)]
            if not qs:
                continue
            some_n = True
            if lhs <= min(qs) + zs + eps:
                ok = True
                break
        if not some_n:
            continue
        tested = True
        if not ok:
            return fails(m, fuel)
    return holds(None, fuel) if tested else unknown(fuel)


# --- Tietze -------------------------------------------------------------------------

def tietze_terms(f: ContinuousFn, C: ClosedSetCode, depth: int) -> List[ContinuousFn]:
    """h_0..h_depth with h_n = (2/3)^(n+1) (g_n - 1/2), fitting f_n = f - sum_{m<n} h_m.

    g_n is the Urysohn function separating {f_n <= -2^n/3^(n+1)} from
    {f_n >= 2^n/3^(n+1)} within C.
    """
    terms = []
    residual = f
    for n in range(depth + 1):
        level = Fraction(2 ** n, 3 ** (n + 1))
        fn = residual
        neg = ContinuousFn(lambda q, i, fn=fn: -fn(q, i))
        U0 = sublevel_open(neg, C, level)
        U1 = sublevel_open(fn, C, level)
        g = urysohn(ClosedSetCode(U0), ClosedSetCode(U1))
        weight = Fraction(2, 3) ** (n + 1)
        h = ContinuousFn(lambda q, i, g=g, w=weight: w * (g(q, i) - Fraction(1, 2)))
        terms.append(h)
        residual = ContinuousFn(lambda q, i, fn=fn, h=h: fn(q, i) - h(q, i))
    return terms


def tietze_extend(f: ContinuousFn, C: ClosedSetCode, depth: int) -> ContinuousFn:
    """Sum of h_0..h_depth; within 2 (2/3)^depth of f on C."""
    terms = tietze_terms(f, C, depth)
    fs = FnSequence(lambda n, q, i: terms[n](q, i) if n <= depth else Fraction(0))
    return weighted_series(fs, lambda n: Fraction(2 ** n, 3 ** (n + 1)))


def tietze_bound(depth: int) -> Fraction:
    return 2 * Fraction(2, 3) ** depth


# --- Cantor -------------------------------------------------------------------------

def cantor_points(n: int) -> List[Fraction]:
    """B_n: left endpoints of the level-n middle-third intervals."""
    pts = [Fraction(0), Fraction(2, 3)]
    for m in range(n):
        step = Fraction(2, 3 ** (m + 2))
        pts = pts + [q + step for q in pts]
    return sorted(pts)


def cantor_right_points(n: int) -> List[Fraction]:
    if n == 0:
        return [Fraction(2, 3)]
    step = Fraction(2, 3 ** (n + 1))
    return sorted(q + step for q in cantor_points(n - 1))


def _in_hull(x: Fraction, n: int, right: bool) -> bool:
    """x in H_n^r (right=True) or H_n^l: some q in that half of B_n has
    q - 1/(2 3^(n+1)) < x < q + 1/(2 3^n)."""
    lo_off = Fraction(1, 2 * 3 ** (n + 1))
    hi_off = Fraction(1, 2 * 3 ** n)
    # q ranges over sums of digits d_m 2/3^(m+1), m <= n; d_n picks the half
    stack = [(0, Fraction(0))]
    while stack:
        m, partial = stack.pop()
        if m == n + 1:
            if partial - lo_off < x < partial + hi_off:
                return True
            continue
        rest = Fraction(1, 3 ** (m + 1))  # sum of all later digit weights
        for d in ((1,) if (m == n and right) else (0,) if m == n else (0, 1)):
            p = partial + d * Fraction(2, 3 ** (m + 1))
            tail = 0 if m == n else rest - Fraction(1, 3 ** (n + 1))
            if p - lo_off < x < p + tail + hi_off:
                stack.append((m + 1, p))
    return False


def in_right_hull(x, n: int) -> bool:
    return _in_hull(rat(x), n, True)


def in_left_hull(x, n: int) -> bool:
    return _in_hull(rat(x), n, False)


class CantorDiagonal(SlowReal):
    """y_k = sum_{n<=k} s_{nk}; differs from every row of the family."""
    __slots__ = ('_rows',)

    def __init__(self, xs: Callable[[int, int], Fraction]):
        super().__init__(self._stage, label='antidiagonal')
        self._rows = xs

    def settle_index(self, n: int, k: int) -> int:
        """i(n, k): least i0 <= k with the row stable within 3^(-n-2) on [i0, k]."""
        tol = Fraction(1, 3 ** (n + 2))
        lo = hi = Fraction(self._rows(n, k))
        i0 = k
        for i in range(k - 1, -1, -1):
            v = Fraction(self._rows(n, i))
            lo, hi = min(lo, v), max(hi, v)
            if hi - lo > tol:
                break
            i0 = i
        return i0

    def digit(self, n: int, k: int) -> Fraction:
        x = Fraction(self._rows(n, self.settle_index(n, k)))
        return Fraction(0) if in_right_hull(x, n) else Fraction(2, 3 ** (n + 1))

    def _stage(self, k):
        return sum((self.digit(n, k) for n in range(k + 1)), Fraction(0))


def cantor_antidiagonal(xs: Callable[[int, int], Fraction]) -> CantorDiagonal:
    return CantorDiagonal(xs)


# --- Baire --------------------------------------------------------------------------

def largest_dyadic_ball(lo: Fraction, hi: Fraction):
    """Largest B_{2^-m}(c) with c a multiple of 2^-m inside [lo, hi].

    Among centres the one nearest the midpoint wins, the smaller on ties.
    Returns (c, 2^-m).
    """
    if hi <= lo:
        raise ValueError('empty interval')
    mid = (lo + hi) / 2
    m = 0
    while Fraction(2, 2 ** m) > hi - lo:
        m += 1
    while True:
        rho = Fraction(1, 2 ** m)
        first = ceil((lo + rho) / rho)
        last = floor((hi - rho) / rho)
        if first <= last:
            t = floor(mid / rho)
            options = [c for c in (t, t + 1) if first <= c <= last]
            if not options:
                options = [first if abs(first * rho - mid) <= abs(last * rho - mid) else last]
            c = min(options, key=lambda c: (abs(c * rho - mid), c))
            return c * rho, rho
        m += 1


@dataclass
class BaireTrace:
    balls: Tuple[Tuple[Fraction, Fraction], ...]
    picks: Tuple[Tuple[int, Fraction, Fraction], ...]


class BairePoint(SlowReal):
    """Stage k runs the nested-ball recursion for i < k and returns a_k^k."""
    __slots__ = ('_family', '_a', '_r', '_traces', '_tlock')

    def __init__(self, family, a, r):
        super().__init__(self._stage, label='baire')
        self._family = family
        self._a, self._r = rat(a), rat(r)
        self._traces = {}
        self._tlock = threading.Lock()

    def _U(self, i) -> OpenSetCode:
        fam = self._family
        return fam(i) if callable(fam) else fam[i]

    def _pick(self, i, k, a, r):
        """t_i^k: least code (N, b, s) with U_i holding (n, b, s) for N <= n < k
        and B_s(b) meeting B_{r/2}(a)."""
        U = self._U(i)
        c = 0
        while True:
            N, cb, cs = decode_tuple(c, 3)
            s = rational_from_code(cs)
            if s > 0:
                b = rational_from_code(cb)
                if abs(b - a) < s + r / 2:
                    if N >= k:
                        return N, b, s
                    stages = (N,) if U.static else range(N, k)
                    if all(U.contains(n, b, s) for n in stages):
                        return N, b, s
            c += 1

    def trace(self, k: int) -> BaireTrace:
        with self._tlock:
            if k in self._traces:
                return self._traces[k]
        a, r = self._a, self._r
        balls = [(a, r)]
        picks = []
        for i in range(k):
            N, b, s = self._pick(i, k, a, r)
            lo = max(a - r / 2, b - s)
            hi = min(a + r / 2, b + s)
            a, r = largest_dyadic_ball(lo, hi)
            balls.append((a, r))
            picks.append((N, b, s))
        t = BaireTrace(tuple(balls), tuple(picks))
        with self._tlock:
            self._traces[k] = t
        return t

    def _stage(self, k):
        return self.trace(k).balls[k][0]


def baire_point(Us, a, r) -> BairePoint:
    """A point of B_r(a) lying in every dense open U_i."""
    return BairePoint(Us, a, r)


def avoid_point(p) -> OpenSetCode:
    """R minus {p}: the balls lying in (-oo, p) or in (p, oo)."""
    p = rat(p)
    return OpenSetCode(lambda n, b, s: b + s <= p or b - s >= p, static=True,
                       label='R-{%s}' % p)
