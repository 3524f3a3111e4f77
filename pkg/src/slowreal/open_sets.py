"""Open-set codes: sets of triples (n, a, r) read as "ball B_r(a) persists from stage n".

A real x is in U when some ball contains x and its triples lie in U from
some stage on.  Membership is a search over candidate balls and stages, so
``member`` returns a defeasible Verdict.

Families of open sets are either lists or callables ``i -> OpenSetCode``.
"""
from fractions import Fraction
from functools import lru_cache
import threading
from typing import Callable, Optional, Sequence, Tuple

from .continuous_fn import ContinuousFn, FnSequence, pointwise_combine, weighted_series
from .real_core import (SlowReal, Verdict, ball_index, decode_tuple, holds, pair,
                        rat, rational_from_code, rationals_upto,
                        triple_code, unknown, unpair)


class OpenSetCode:
    """Decidable triple set with memoized membership.

    ``support`` optionally lists every (a, r) that can ever occur; searches
    then skip all other balls.  ``static`` marks codes whose answer does not
    depend on the stage n.
    """
    __slots__ = ('_contains', '_memo', '_lock', 'support', 'static', 'label')

    def __init__(self, contains: Callable[[int, Fraction, Fraction], bool],
                 support: Optional[Sequence[Tuple[Fraction, Fraction]]] = None,
                 static: bool = False, label: str = ''):
        self._contains = contains
        self._memo = {}
        self._lock = threading.Lock()
        self.support = None if support is None else tuple(
            sorted({(rat(a), rat(r)) for a, r in support if rat(r) > 0},
                   key=lambda p: ball_index(*p)))
        self.static = static
        self.label = label

    def contains(self, n: int, a, r) -> bool:
        key = (0 if self.static else n, a, r)
        try:
            return self._memo[key]
        except KeyError:
            pass
        if r <= 0 or (self.support is not None and (a, r) not in self.support):
            value = False
        else:
            value = bool(self._contains(n, a, r))
        with self._lock:
            return self._memo.setdefault(key, value)

    __call__ = contains

    def balls(self, bound: int):
        """Candidate (a, r) with pair code <= bound, in code order."""
        if self.support is not None:
            return [p for p in self.support if ball_index(*p) <= bound]
        out = []
        for c in range(bound + 1):
            ca, cr = unpair(c)
            r = rational_from_code(cr)
            if r > 0:
                out.append((rational_from_code(ca), r))
        return out

    def enum(self, limit: Optional[int] = None):
        """Member triples in code order (up to code ``limit`` if given)."""
        c = 0
        while limit is None or c <= limit:
            n, ca, cr = decode_tuple(c, 3)
            a, r = rational_from_code(ca), rational_from_code(cr)
            if r > 0 and self.contains(n, a, r):
                yield n, a, r
            c += 1

    def __repr__(self):
        return 'OpenSetCode(%s)' % (self.label or '...')


class ClosedSetCode:
    """A closed set, given by an open code for its complement."""
    __slots__ = ('complement', 'label')

    def __init__(self, complement: OpenSetCode, label: str = ''):
        self.complement = complement
        self.label = label

    def __repr__(self):
        return 'ClosedSetCode(%s)' % (self.label or self.complement.label)


# --- literals ------------------------------------------------------------------

def ball(a, r) -> OpenSetCode:
    a, r = rat(a), rat(r)
    if r <= 0:
        raise ValueError('radius must be positive')
    return OpenSetCode(lambda n, b, s: True, support=((a, r),), static=True,
                       label='ball %s %s' % (a, r))


def interval_literal(lo, hi) -> OpenSetCode:
    """(lo, hi) as the single ball centred at its midpoint."""
    lo, hi = rat(lo), rat(hi)
    if hi <= lo:
        return empty()
    u = ball((lo + hi) / 2, (hi - lo) / 2)
    u.label = 'interval %s %s' % (lo, hi)
    return u


def empty() -> OpenSetCode:
    return OpenSetCode(lambda n, a, r: False, support=(), static=True, label='empty')


def whole_line() -> OpenSetCode:
    return OpenSetCode(lambda n, a, r: True, static=True, label='R')


def positive_ray() -> OpenSetCode:
    """(0, oo): every ball inside it."""
    return OpenSetCode(lambda n, a, r: a - r >= 0, static=True, label='(0,oo)')


def from_balls(pairs, label: str = '') -> OpenSetCode:
    """Finite union of balls as one code."""
    pairs = tuple((rat(a), rat(r)) for a, r in pairs)
    return OpenSetCode(lambda n, a, r: True, support=pairs, static=True, label=label)


def closed_complement_of(U: OpenSetCode) -> ClosedSetCode:
    return ClosedSetCode(U)


# --- membership ------------------------------------------------------------------

def member(U: OpenSetCode, x: SlowReal, fuel: int) -> Verdict:
    """Search (a, r) with code <= fuel and N <= fuel witnessing x in U.

    The witness (N, a, r) has the least N for the first ball in code order
    such that x_n lies in B_r(a) and (n, a, r) is in U for N <= n <= fuel.
    """
    tip = x[fuel]
    for a, r in U.balls(fuel):
        if abs(tip - a) >= r or not U.contains(fuel, a, r):
            continue
        N = fuel
        while N > 0 and abs(x[N - 1] - a) < r and U.contains(N - 1, a, r):
            N -= 1
        return holds((N, a, r), fuel)
    return unknown(fuel)


# --- unions --------------------------------------------------------------------

def _family_get(family, i):
    if callable(family) and not isinstance(family, OpenSetCode):
        return family(i)
    return family[i] if i < len(family) else None


class _RunTracker:
    """Start of the current run of stages where one component holds a ball.

    start(n) is the least j with (k, a, r) in U_i for all j <= k < n.
    """
    __slots__ = ('code', 'a', 'r', 'starts')

    def __init__(self, code, a, r):
        self.code, self.a, self.r = code, a, r
        self.starts = [0]

    def start(self, n):
        while len(self.starts) <= n:
            m = len(self.starts)
            prev = self.starts[-1]
            self.starts.append(prev if self.code.contains(m - 1, self.a, self.r) else m)
        return self.starts[n]


def union(family, label: str = '') -> OpenSetCode:
    """Open code for the union of a family.

    For a ball (a, r) and stage n, (i(n), j(n)) is the least pair (by Cantor
    code) such that U_{i(n)} holds (k, a, r) for every j(n) <= k < n; then
    (n, a, r) is admitted iff U_{i(n)} holds it.
    """
    trackers = {}
    lock = threading.Lock()
    finite = not callable(family) or isinstance(family, OpenSetCode)
    if finite:
        family = list(family)

    def tracker(i, a, r):
        key = (i, a, r)
        with lock:
            t = trackers.get(key)
            if t is None:
                t = trackers[key] = _RunTracker(_family_get(family, i), a, r)
            return t

    def selected(n, a, r):
        # for each i the least qualifying j is start_i(n); (0, n) always
        # qualifies, and pair(i, j) >= pair(i, 0) bounds the i worth trying
        best_code, best = None, 0
        i = 0
        while (not finite or i < len(family)) and (best_code is None or pair(i, 0) < best_code):
            c = pair(i, tracker(i, a, r).start(n))
            if best_code is None or c < best_code:
                best_code, best = c, i
            i += 1
        return best

    def contains(n, a, r):
        if finite and not family:
            return False
        i = selected(n, a, r)
        return _family_get(family, i).contains(n, a, r)

    support = None
    if finite and all(u.support is not None for u in family):
        support = tuple(p for u in family for p in u.support)
    # the selected component can change with n, so a union is never static
    return OpenSetCode(contains, support=support, label=label or 'union')


def basic_decomposition(U: OpenSetCode):
    """One component per ball: U_i keeps exactly U's triples for that ball.

    With a finite support the components are listed in code order;
    otherwise component i is the ball with pair code i (empty when its
    radius is not positive).
    """
    def component(a, r):
        return OpenSetCode(lambda n, b, s: U.contains(n, a, r), support=((a, r),),
                           static=U.static, label='%s|%s,%s' % (U.label, a, r))
    if U.support is not None:
        return [component(a, r) for a, r in U.support]

    @lru_cache(maxsize=None)
    def family(i):
        ca, cr = unpair(i)
        a, r = rational_from_code(ca), rational_from_code(cr)
        return component(a, r) if r > 0 else empty()
    return family


def _ball_rationals(b, s, n):
    """Rationals q with code <= n and |q - b| < s, in code order."""
    return [q for q in rationals_upto(n) if abs(q - b) < s]


@lru_cache(maxsize=None)
def _first_code_in_ball(b, s):
    """Least code of a rational in B_s(b); the ball is open and non-empty."""
    c = 0
    while abs(rational_from_code(c) - b) >= s:
        c += 1
    return c


def preimage(f: ContinuousFn, V: OpenSetCode) -> OpenSetCode:
    """f^{-1}(V) as the union of one code per ball (a, r) of V.

    (n, b, s) is in the component for (a, r) iff (n, a, r) is in V and
    f(q)_n lies in B_{r-s}(a) for every q in B_s(b) with code <= n.
    """
    def component(a, r, Vc):
        first_bad = {}
        lock = threading.Lock()

        def contains(n, b, s):
            if not Vc.contains(n, a, r):
                return False
            if s >= r:
                # B_{r-s}(a) is empty; only the vacuous case admits the triple
                return _first_code_in_ball(b, s) > n
            if f.static:
                return _first_violation(b, s, n) > n
            return all(abs(f(q, n) - a) < r - s for q in _ball_rationals(b, s, n))

        def _first_violation(b, s, n):
            # codes are scanned once per (b, s); the answer is stage-free
            key = (b, s)
            with lock:
                done, bad = first_bad.get(key, (-1, None))
            if bad is not None or done >= n:
                return bad if bad is not None else n + 1
            c = done + 1
            while c <= n:
                q = rational_from_code(c)
                if abs(q - b) < s and not abs(f(q, 0) - a) < r - s:
                    bad = c
                    break
                c += 1
            with lock:
                first_bad[key] = (n, bad)
            return bad if bad is not None else n + 1

        # the sample set grows with n, so components are never static
        return OpenSetCode(contains, label='pre(%s,%s)' % (a, r))

    parts = basic_decomposition(V)
    if callable(parts):
        @lru_cache(maxsize=None)
        def family(i):
            ca, cr = unpair(i)
            a, r = rational_from_code(ca), rational_from_code(cr)
            if r <= 0:
                return empty()
            return component(a, r, parts(i))
        return union(family, label='preimage')
    comps = [component(a, r, Vc) for (a, r), Vc in zip(V.support, parts)]
    return union(comps, label='preimage')


# --- characteristic functions and friends ---------------------------------------

def hat(a, r, q) -> Fraction:
    """max(0, min(1, r - |a - q|))."""
    v = r - abs(a - q)
    return Fraction(0) if v <= 0 else min(Fraction(1), v)


def characteristic(U: OpenSetCode) -> ContinuousFn:
    """A continuous g with U = g^{-1}((0, 1]).

    g(q)_i is the max of 1/(i+1) and hat_{a,r}(q) / (code(n,a,r) + 1) over
    the triples (n, a, r) with code below i whose ball has stayed in U on
    every stage from n to i - 1.  For each ball the earliest such n wins.
    """
    trackers = {}
    lock = threading.Lock()

    def run_start(a, r, i):
        key = (a, r)
        with lock:
            t = trackers.get(key)
            if t is None:
                t = trackers[key] = _RunTracker(U, a, r)
        return t.start(i)

    def weight(a, r, q, i):
        h = hat(a, r, q)
        if not h:
            return None
        n0 = run_start(a, r, i)
        if n0 >= i:
            return None
        code = triple_code(n0, a, r)
        if code >= i:
            return None
        return h / (code + 1)

    def table(q, i):
        best = Fraction(1, i + 1)
        if U.support is not None:
            pairs = U.support
        else:
            pairs = {}
            for c in range(i):
                n, ca, cr = decode_tuple(c, 3)
                r = rational_from_code(cr)
                if r > 0:
                    pairs.setdefault((rational_from_code(ca), r), None)
        for a, r in pairs:
            w = weight(a, r, q, i)
            if w is not None and w > best:
                best = w
        return best
    return ContinuousFn(table, label='chi(%s)' % U.label)


def urysohn(C0: ClosedSetCode, C1: ClosedSetCode) -> ContinuousFn:
    """g0 / (g0 + g1): 0 exactly on C0 and 1 exactly on C1."""
    g0 = characteristic(C0.complement)
    g1 = characteristic(C1.complement)
    return pointwise_combine('div', g0, pointwise_combine('add', g0, g1))


def intersect(U: OpenSetCode, V: OpenSetCode) -> OpenSetCode:
    """Preimage of (0, 2) under the product of the characteristic functions."""
    g = pointwise_combine('mul', characteristic(U), characteristic(V))
    return preimage(g, ball(1, 1))


def _static_real(x):
    """A rational when x is a rational, else None (SlowReal)."""
    return None if isinstance(x, SlowReal) else rat(x)


def interval(x=None, y=None) -> OpenSetCode:
    """(x, y) for reals or rationals x, y; None stands for an infinite end.

    (-oo, y) is the preimage of (0, oo) under q -> max(y_n - q, 0), and
    (x, oo) likewise under q -> max(q - x_n, 0).
    """
    parts = []
    if y is not None:
        yq = _static_real(y)
        if yq is None:
            fy = ContinuousFn(lambda q, n: y[n] - q if q < y[n] else Fraction(0))
        else:
            fy = ContinuousFn(lambda q, n: yq - q if q < yq else Fraction(0), static=True)
        parts.append(preimage(fy, positive_ray()))
    if x is not None:
        xq = _static_real(x)
        if xq is None:
            fx = ContinuousFn(lambda q, n: q - x[n] if q > x[n] else Fraction(0))
        else:
            fx = ContinuousFn(lambda q, n: q - xq if q > xq else Fraction(0), static=True)
        parts.append(preimage(fx, positive_ray()))
    if not parts:
        return whole_line()
    if len(parts) == 1:
        return parts[0]
    return intersect(parts[0], parts[1])


def sublevel_open(f: ContinuousFn, C: ClosedSetCode, q) -> OpenSetCode:
    """Code for {x in C : f(x) < q} union (R minus C).

    (n, b, s) is admitted when it is in the complement of C, or when
    f(r)_n < q - s for every rational r in B_s(b) with code <= n.
    """
    q = rat(q)

    def contains(n, b, s):
        if C.complement.contains(n, b, s):
            return True
        return all(f(r, n) < q - s for r in _ball_rationals(b, s, n))
    return OpenSetCode(contains, label='sublevel<%s' % q)


# --- compactness -------------------------------------------------------------------

def _active_balls(U: OpenSetCode, fuel: int):
    """Balls (a, r) with (n, a, r) in U for all n in [N, fuel], code(N, a, r) <= fuel."""
    out = []
    if U.support is not None:
        pairs = U.support
    else:
        seen = {}
        for c in range(fuel + 1):
            n, ca, cr = decode_tuple(c, 3)
            r = rational_from_code(cr)
            if r > 0:
                seen.setdefault((rational_from_code(ca), r), None)
        pairs = seen
    for a, r in pairs:
        if not U.contains(fuel, a, r):
            continue
        N = fuel
        while N > 0 and U.contains(N - 1, a, r):
            N -= 1
        if triple_code(N, a, r) <= fuel:
            out.append((a, r))
    return out


def heine_borel_subcover(Us, fuel: int, max_depth: Optional[int] = None) -> Verdict:
    """Find finitely many U_i (i <= fuel) covering [0, 1] by dyadic subdivision.

    A dyadic interval is settled when one active ball contains it; otherwise
    it is halved, down to ``max_depth`` (default fuel).  The witness is the
    sorted list of indices used.  Any leaf left uncovered gives Unknown.
    """
    if max_depth is None:
        max_depth = fuel
    balls = []
    i = 0
    while i <= fuel:
        U = _family_get(Us, i)
        if U is None:
            break
        for a, r in _active_balls(U, fuel):
            balls.append((i, a, r))
        i += 1

    used = set()
    stack = [(Fraction(0), Fraction(1), 0)]
    while stack:
        lo, hi, depth = stack.pop()
        hit = next((i for i, a, r in balls if a - r < lo and hi < a + r), None)
        if hit is not None:
            used.add(hit)
            continue
        if depth >= max_depth:
            return unknown(fuel)
        mid = (lo + hi) / 2
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return holds(sorted(used), fuel)


def verify_subcover(Us, indices, fuel: int, depth: int) -> bool:
    """Exact check: each dyadic interval of width 2^-depth lies in a selected active ball."""
    balls = [(a, r) for i in indices for a, r in _active_balls(_family_get(Us, i), fuel)]
    width = Fraction(1, 2 ** depth)
    for k in range(2 ** depth):
        lo, hi = k * width, (k + 1) * width
        if not any(a - r < lo and hi < a + r for a, r in balls):
            return False
    return True


def locally_finite_refinement(Us, n_max: int):
    """Refine a cover U_0, U_1, ... to V_n subset of U_n, n <= n_max.

    h = sum h_n / 2^n with h_n the characteristic function of U_n;
    g_n = h_n / (2^n h); f_n = min(1/2, sum_{m<=n} g_m) - min(1/2, sum_{m<n} g_m);
    V_n is the preimage of (0, 1/2 + 2^-n_max) under f_n.
    """
    half = Fraction(1, 2)
    hs = [characteristic(_family_get(Us, n)) for n in range(n_max + 1)]

    def h_seq(n, q, i):
        return hs[n](q, i) if n <= n_max else Fraction(0)
    h = weighted_series(FnSequence(h_seq), lambda n: Fraction(1, 2 ** n))

    def g(m, q, i):
        denom = 2 ** m * h(q, i)
        return hs[m](q, i) / denom if denom else Fraction(0)

    def f_table(n):
        def table(q, i):
            upto = sum((g(m, q, i) for m in range(n + 1)), Fraction(0))
            below = upto - g(n, q, i)
            return min(half, upto) - min(half, below)
        return ContinuousFn(table)
    delta = Fraction(1, 2 ** n_max)
    target = interval_literal(0, half + delta)
    return [preimage(f_table(n), target) for n in range(n_max + 1)]
