"""Command-line front end.

Objects come from a small fixed grammar:

  functions   identity | const q | affine a b | poly [c0, c1, ...] | abs
              | hat-gallery | step-gallery
  reals       const q | specker delay | geometric q
  open sets   ball a r | interval a b | union [set, ...] | gallery:<name>

Rationals are written p/q.  Output is a table of exact stages (JSON or
CSV); the decimal column is a 12-digit truncation for reading only.
Exit status: 0 on success, 1 on usage or parse errors, 2 when a search
ran out of fuel.
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction
import csv
import io
import json
import random
import re
import sys
from typing import Any, Dict, List

from . import combinatorics as comb
from . import continuous_fn as cf
from . import counterexamples as cx
from . import open_sets as osets
from . import real_core as rc
from . import real_sequences as rs
from . import theorems as th

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__('%s at position %d in %r' % (message, pos, text))
        self.pos = pos


class UsageError(ValueError):
    pass


# --- tiny grammar -------------------------------------------------------------------

_TOKEN = re.compile(r'\s*(?:(\[)|(\])|(,)|([A-Za-z][\w:.-]*)|([-+]?\d+(?:/\d+|\.\d+)?))')


def tokenize(text: str):
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError('unexpected character %r' % text[pos], text, pos)
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), start))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def error(self, message):
        pos = self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)
        return ParseError(message, self.text, pos)

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self):
        if self.i >= len(self.tokens):
            raise self.error('unexpected end of input')
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok):
        if self.peek() != tok:
            raise self.error('expected %r' % tok)
        self.i += 1

    def rational(self) -> Fraction:
        tok = self.peek()
        try:
            value = Fraction(tok)
        except (TypeError, ValueError, ZeroDivisionError):
            raise self.error('expected a rational') from None
        self.i += 1
        return value

    def rational_list(self) -> List[Fraction]:
        self.expect('[')
        out = []
        while self.peek() != ']':
            out.append(self.rational())
            if self.peek() == ',':
                self.i += 1
            elif self.peek() != ']':
                raise self.error("expected ',' or ']'")
        self.i += 1
        return out

    def done(self):
        if self.i != len(self.tokens):
            raise self.error('trailing input')


FUNCTIONS = ('identity', 'const', 'affine', 'poly', 'abs', 'hat-gallery', 'step-gallery')
REALS = ('const', 'specker', 'geometric')
SET_GALLERY = ('two-ball', 'unit', 'punctured')


def _registry_miss(kind, name, names, p):
    raise p.error('unknown %s %r; available: %s' % (kind, name, ', '.join(names)))


def parse_function(text: str) -> cf.ContinuousFn:
    p = _Parser(text)
    name = p.take()
    if name == 'identity':
        f = cf.identity()
    elif name == 'const':
        f = cf.constant(p.rational())
    elif name == 'affine':
        a = p.rational()
        f = cf.affine(a, p.rational())
    elif name == 'poly':
        f = cf.poly(p.rational_list())
    elif name == 'abs':
        f = cf.absolute()
    elif name == 'hat-gallery':
        f = cx.hat_gallery()
    elif name == 'step-gallery':
        f = cx.step_gallery()
    else:
        p.i -= 1
        _registry_miss('function', name, FUNCTIONS, p)
    p.done()
    return f


def geometric(q) -> rc.SlowReal:
    """Stage n is sum_{i<=n} q^i."""
    q = rc.rat(q)
    return rc.SlowReal(lambda n: sum((q ** i for i in range(n + 1)), Fraction(0)),
                       label='geometric %s' % q)


def parse_real(text: str) -> rc.SlowReal:
    p = _Parser(text)
    name = p.take()
    if name == 'const':
        x = rc.const(p.rational())
    elif name == 'specker':
        delay = p.rational()
        if delay.denominator != 1 or delay < 0:
            raise p.error('delay must be a natural number')
        x = rc.specker(cx.delayed_injection(0, int(delay)))
    elif name == 'geometric':
        q = p.rational()
        if abs(q) >= 1:
            raise p.error('geometric ratio must satisfy |q| < 1')
        x = geometric(q)
    else:
        p.i -= 1
        _registry_miss('real', name, REALS, p)
    p.done()
    return x


def _set_gallery(name: str):
    """Named covers and sets; each is a list of open sets."""
    if name == 'two-ball':
        return [osets.ball(0, Fraction(3, 4)), osets.ball(1, Fraction(3, 4))]
    if name == 'unit':
        return [osets.interval_literal(0, 1)]
    if name == 'punctured':
        return [th.avoid_point(Fraction(1, 2))]
    return None


def _parse_set_items(p: _Parser) -> List[osets.OpenSetCode]:
    name = p.take()
    if name == 'ball':
        a = p.rational()
        r = p.rational()
        if r <= 0:
            raise p.error('radius must be positive')
        return [osets.ball(a, r)]
    if name == 'interval':
        a = p.rational()
        return [osets.interval_literal(a, p.rational())]
    if name == 'union':
        p.expect('[')
        out = []
        while p.peek() != ']':
            out.extend(_parse_set_items(p))
            if p.peek() == ',':
                p.i += 1
            elif p.peek() != ']':
                raise p.error("expected ',' or ']'")
        p.i += 1
        return out
    if name.startswith('gallery:'):
        found = _set_gallery(name[len('gallery:'):])
        if found is None:
            p.i -= 1
            _registry_miss('gallery set', name, ['gallery:' + g for g in SET_GALLERY], p)
        return found
    p.i -= 1
    _registry_miss('open set', name, ('ball', 'interval', 'union', 'gallery:<name>'), p)


def parse_cover(text: str) -> List[osets.OpenSetCode]:
    """The listed open sets, in order (a union literal lists its members)."""
    p = _Parser(text)
    items = _parse_set_items(p)
    p.done()
    return items


def parse_set(text: str) -> osets.OpenSetCode:
    items = parse_cover(text)
    return items[0] if len(items) == 1 else osets.union(items)


def parse_rational(text: str) -> Fraction:
    p = _Parser(text)
    q = p.rational()
    p.done()
    return q


# --- tables -------------------------------------------------------------------------

def decimal12(q: Fraction) -> str:
    """Truncation (toward zero) to 12 digits after the point."""
    q = Fraction(q)
    sign = '-' if q < 0 else ''
    scaled = abs(q.numerator) * 10 ** 12 // q.denominator
    return '%s%d.%012d' % (sign, scaled // 10 ** 12, scaled % 10 ** 12)


@dataclass
class ConvergenceTable:
    rows: List[Dict[str, Any]] = field(default_factory=list)

    def add(self, stage: int, value, annotation: str = ''):
        value = Fraction(value)
        self.rows.append({'stage': stage, 'num': str(value.numerator),
                          'den': str(value.denominator), 'decimal': decimal12(value),
                          'annotation': annotation})


@dataclass
class RunConfig:
    subcommand: str
    options: Dict[str, Any]
    stages: int = 16
    fuel: int = 64
    tol_exp: int = 10
    fmt: str = 'json'
    seed: int = 0

    def __post_init__(self):
        if self.stages < 1:
            raise UsageError('--stages must be at least 1')
        if self.fuel < 0:
            raise UsageError('--fuel must be non-negative')


@dataclass
class RunResult:
    status: str
    table: ConvergenceTable
    report: Dict[str, Any]

    @property
    def exit_code(self) -> int:
        return EXIT_UNKNOWN if self.status == 'unknown' else EXIT_OK


def _exact(value):
    """JSON-safe copy with every rational written as an exact string."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_exact(v) for v in value]
    if isinstance(value, float):
        raise TypeError('binary floating point in output')
    return value


def render(config: RunConfig, result: RunResult) -> str:
    if config.fmt == 'csv':
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=['stage', 'num', 'den', 'decimal', 'annotation'],
                           lineterminator='\n')
        w.writeheader()
        for row in result.table.rows:
            w.writerow(row)
        return buf.getvalue()
    doc = {'command': config.subcommand, 'status': result.status,
           'rows': result.table.rows, 'report': _exact(result.report)}
    return json.dumps(doc, indent=2) + '\n'


# --- subcommands --------------------------------------------------------------------

def _opt(config, name, default=None):
    v = config.options.get(name)
    return default if v is None else v


def _need(config, name):
    v = config.options.get(name)
    if v is None:
        raise UsageError('%s needs --%s' % (config.subcommand, name.replace('_', '-')))
    return v


def run_approx(config):
    x = parse_real(_need(config, 'real'))
    fn = _opt(config, 'fn')
    if fn:
        x = cf.evaluate(parse_function(fn), x)
    t = ConvergenceTable()
    for i in range(config.stages + 1):
        t.add(i, x[i])
    v = rc.extract_rate(x, config.tol_exp, config.fuel)
    return RunResult('holds', t, {'rate_candidate': v.witness, 'tol_exp': config.tol_exp,
                                  'fuel': config.fuel,
                                  'note': 'candidate only: later stages may refute it'})


def run_ivt(config):
    f = parse_function(_need(config, 'fn'))
    root, trace = th.ivt_root(f)
    revised = {}
    for n, i in trace.revisions(config.stages):
        revised[n] = i
    t = ConvergenceTable()
    for n in range(config.stages + 1):
        t.add(n, root[n], 'revised depth %d' % revised[n] if n in revised else '')
    last = config.stages
    return RunResult('holds', t, {'revisions': sorted(revised.items()),
                                  'f_at_root': f(root[last], last)})


def run_integrate(config):
    f = parse_function(_need(config, 'fn'))
    x = th.riemann_integral(f)
    t = ConvergenceTable()
    for n in range(config.stages + 1):
        t.add(n, x[n])
    return RunResult('holds', t, {'cells_last_stage': 2 ** config.stages})


def run_bernstein(config):
    f = parse_function(_need(config, 'fn'))
    n = int(_opt(config, 'degree', 64))
    grid = int(_opt(config, 'grid_exp', 6))
    B = th.bernstein(f, n)
    stage = config.fuel
    t = ConvergenceTable()
    worst = Fraction(0)
    for j in range(2 ** grid + 1):
        q = Fraction(j, 2 ** grid)
        v = B(q, stage)
        err = abs(v - f(q, stage))
        worst = max(worst, err)
        t.add(j, v, 'q=%s err=%s' % (q, err))
    return RunResult('holds', t, {'degree': n, 'grid_exp': grid, 'sup_error': worst})


def run_banach(config):
    f = parse_function(_need(config, 'fn'))
    rho = parse_rational(_need(config, 'rho'))
    x0 = rc.const(parse_rational(_opt(config, 'x0', '0')))
    seq, fix = th.banach_iterates(f, rho, x0)
    t = ConvergenceTable()
    for m in range(config.stages + 1):
        t.add(m, fix[m], 'bound %s' % th.banach_bound(rho, m))
    return RunResult('holds', t, {'rho': rho})


def run_caristi(config):
    f = parse_function(_need(config, 'fn'))
    g = th.lsc_from_continuous(parse_function(_need(config, 'g')))
    res = th.caristi_point(f, g, config.fuel)
    t = ConvergenceTable()
    if res is None:
        return RunResult('unknown', t, {'fuel': config.fuel,
                                        'note': 'a step found no candidate within fuel'})
    for m, (i, q) in enumerate(res.steps):
        t.add(m, q, 'i=%d' % i)
    return RunResult('holds', t, {'steps': [list(s) for s in res.steps]})


def run_tietze(config):
    f = parse_function(_need(config, 'fn'))
    C = osets.ClosedSetCode(parse_set(_need(config, 'complement')))
    x = parse_rational(_need(config, 'x'))
    depth = int(_opt(config, 'depth', 4))
    F = th.tietze_extend(f, C, depth)
    t = ConvergenceTable()
    for i in range(config.stages + 1):
        t.add(i, F(x, i))
    return RunResult('holds', t, {'depth': depth, 'bound': th.tietze_bound(depth), 'x': x})


def cantor_family(name: str):
    """Rows x_{n,i} for the demo families."""
    if name == 'constant':
        return lambda n, i: rc.rational_from_code(n)
    if name == 'delayed':
        return lambda n, i: Fraction(0) if i < 2 * n else rc.rational_from_code(n)
    if name == 'alternating':
        return lambda n, i: Fraction(i % 2) if i < 2 * n else rc.rational_from_code(n)
    raise UsageError('unknown family %r; available: constant, delayed, alternating' % name)


def run_cantor(config):
    xs = cantor_family(_opt(config, 'family', 'constant'))
    y = th.cantor_antidiagonal(xs)
    t = ConvergenceTable()
    for k in range(config.stages + 1):
        t.add(k, y[k])
    k = config.stages
    gaps = [abs(y[k] - xs(n, k)) for n in range(min(k, 6) + 1)]
    return RunResult('holds', t, {'gaps_at_last_stage': gaps})


def run_baire(config):
    count = int(_opt(config, 'count', 9))
    a = parse_rational(_opt(config, 'a', '1/2'))
    r = parse_rational(_opt(config, 'r', '1/2'))
    excluded = [rc.rational_from_code(i) for i in range(count)]
    Us = [th.avoid_point(p) for p in excluded]
    x = th.baire_point(lambda i: Us[i] if i < count else osets.whole_line(), a, r)
    t = ConvergenceTable()
    for k in range(config.stages + 1):
        t.add(k, x[k])
    last = x[config.stages]
    return RunResult('holds', t, {'excluded': excluded,
                                  'separation': [abs(last - p) for p in excluded],
                                  'radii': [b[1] for b in x.trace(config.stages).balls]})


def run_heine_borel(config):
    text = _opt(config, 'cover', 'gallery:two-ball')
    if text == 'gallery:adversary':
        Us = cx.heine_borel_adversary()
    else:
        Us = parse_cover(text)
    v = osets.heine_borel_subcover(Us, config.fuel)
    t = ConvergenceTable()
    if v.holds:
        for k, i in enumerate(v.witness):
            t.add(k, i, 'member of subcover')
        return RunResult('holds', t, {'subcover': list(v.witness), 'fuel': config.fuel})
    return RunResult('unknown', t, {'fuel': config.fuel,
                                    'note': 'no finite subcover certified within fuel'})


def _stream(name: str, seed: int):
    if name == 'vdc':
        return cx.van_der_corput
    if name == 'alternating':
        return lambda n: Fraction(n % 2)
    if name == 'random':
        rng = random.Random(seed)
        stop = rng.randrange(4, 32)
        target = Fraction(rng.randrange(0, 257), 256)
        noise = [Fraction(rng.randrange(0, 257), 256) for _ in range(stop)]
        return lambda n: noise[n] if n < stop else target
    raise UsageError('unknown stream %r; available: vdc, alternating, random' % name)


def run_cohesive(config):
    q = _stream(_opt(config, 'stream', 'random'), config.seed)
    depth = int(_opt(config, 'depth', 10))
    sel = comb.cauchy_subsequence(q, depth, config.fuel)
    tail = sel.tail(config.fuel)
    t = ConvergenceTable()
    for k, n in enumerate(sel.indices):
        t.add(k, q(n), 'index %d' % n)
    status = 'holds' if len(tail) >= 2 else 'unknown'
    return RunResult(status, t, {'survivors': list(sel.indices), 'counts': list(sel.counts),
                                 'tail_diameter': comb.diameter(q(n) for n in tail)})


def two_class_sequence():
    """f_n(q) = q + (-1)^n 2^-4."""
    return lambda n, q, i: q + (Fraction(1, 16) if n % 2 == 0 else Fraction(-1, 16))


def run_arzela(config):
    fs = two_class_sequence()
    depth = int(_opt(config, 'depth', 8))
    res = comb.arzela_ascoli(fs, 2, depth, config.fuel)
    t = ConvergenceTable()
    if res is None:
        return RunResult('unknown', t, {'fuel': config.fuel})
    for k in range(config.stages + 1):
        q = rc.rational_from_code(k)
        t.add(k, res.limit(q, config.fuel), 'q=%s' % q)
    return RunResult('holds', t, {'survivors': list(res.selection.indices)})


def run_limsup(config):
    q = _stream(_opt(config, 'stream', 'vdc'), config.seed)
    s = rs.from_rows(q)
    bound = parse_rational(_opt(config, 'bound', '1'))
    eps = Fraction(1, 2 ** config.tol_exp)
    v = rs.limsup_approx(s, bound, eps, config.fuel)
    t = ConvergenceTable()
    for n in range(config.stages + 1):
        t.add(n, q(n))
    return RunResult('holds', t, {'limsup_approx': v.witness, 'eps': eps})


# --- gadget demonstrations ----------------------------------------------------------

def _parse_witnesses(text: str) -> Dict[int, int]:
    """'0:0,1:6' -> {0: 0, 1: 6}."""
    out = {}
    if not text:
        return out
    for part in text.split(','):
        try:
            n, m = part.split(':')
            out[int(n)] = int(m)
        except ValueError:
            raise UsageError('bad witness entry %r (want n:m)' % part) from None
    return out


def demo_specker(config):
    rep = cx.specker_report(int(_opt(config, 'delay', 100)), config.fuel,
                            int(_opt(config, 'k', 0)))
    t = ConvergenceTable()
    for i, v in rep.pop('stages')[:config.stages + 1]:
        t.add(i, v)
    return RunResult(rep['status'], t, rep)


def demo_hat(config):
    f = cx.hat_gallery()
    t = ConvergenceTable()
    for n in range(config.stages + 1):
        q = Fraction(1, 4) if n % 2 == 0 else Fraction(3, 4)
        t.add(n, f(q, n), 'f(q_%d) at stage %d' % (n, n))
    return RunResult('holds', t, {'note': 'values at the centres grow like 2^n'})


def demo_step(config):
    switch = int(_opt(config, 'delay', 5))
    _, h = cx.step_gadget(lambda i: 0 if i < switch else 1, 1)
    root, trace = th.ivt_root(h)
    t = ConvergenceTable()
    for n in range(config.stages + 1):
        t.add(n, root[n])
    return RunResult('holds', t, {'switch': switch, 'revisions': trace.revisions(config.stages)})


def demo_tent(config):
    wit = _parse_witnesses(_opt(config, 'witnesses', '0:0,1:6'))
    _, x0 = cx.tent_gadget(wit.get)
    n = int(_opt(config, 'n', 1))
    t = ConvergenceTable()
    for j in range(config.stages + 1):
        v = cx.tent_iterate(x0, n, j)
        t.add(j, v, 'decodes phi(%d)' % n if v >= Fraction(2, 3) else '')
    return RunResult('holds', t, {'n': n, 'phi': n in wit})


def demo_limsup(config):
    K = int(_opt(config, 'k', 2))
    false_at = {int(x) for x in str(_opt(config, 'false', '')).split(',') if x != ''}

    def theta(m, n, k):
        # phi(k) true: theta(m, n, k) for all n; false: theta fails at n = 1 for every m
        return k not in false_at or n < 1
    s = cx.limsup_gadget(theta, K)
    t = ConvergenceTable()
    for i in range(config.stages + 1):
        t.add(i, s(i, i))
    return RunResult('holds', t, {'K': K, 'false': sorted(false_at)})


def demo_intersection(config):
    colours = [int(x) for x in str(_opt(config, 'colours', '0,1,0,2,1,3')).split(',')]
    N = max(colours)
    c = (lambda i: colours[i] if i < len(colours) else N)
    Us = cx.intersection_gadget(c, N)
    t = ConvergenceTable()
    verdicts = []
    for n, U in enumerate(Us):
        v = osets.member(U, rc.const(0), config.fuel)
        verdicts.append(v.outcome)
        t.add(n, 0, 'U_%d: %s' % (n, v.outcome))
    return RunResult('holds', t, {'zero_member': verdicts})


DEMOS = {'specker': demo_specker, 'hat': demo_hat, 'step': demo_step, 'tent': demo_tent,
         'limsup': demo_limsup, 'intersection': demo_intersection}


def run_counterexample(config):
    name = _need(config, 'name')
    if name not in DEMOS:
        raise UsageError('unknown gadget %r; available: %s' % (name, ', '.join(DEMOS)))
    return DEMOS[name](config)


COMMANDS = {
    'approx': run_approx, 'ivt': run_ivt, 'integrate': run_integrate,
    'bernstein': run_bernstein, 'banach': run_banach, 'caristi': run_caristi,
    'tietze': run_tietze, 'cantor-diagonal': run_cantor, 'baire': run_baire,
    'heine-borel': run_heine_borel, 'cohesive': run_cohesive, 'arzela': run_arzela,
    'limsup': run_limsup, 'counterexample': run_counterexample,
}


def run(config: RunConfig) -> RunResult:
    return COMMANDS[config.subcommand](config)


# --- argument handling --------------------------------------------------------------

class _Parser1(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 is reserved for Unknown here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '%s: error: %s\n' % (self.prog, message))


_EXTRA = {
    'approx': ['real', 'fn'], 'ivt': ['fn'], 'integrate': ['fn'],
    'bernstein': ['fn', 'degree', 'grid-exp'], 'banach': ['fn', 'rho', 'x0'],
    'caristi': ['fn', 'g'], 'tietze': ['fn', 'complement', 'x', 'depth'],
    'cantor-diagonal': ['family'], 'baire': ['count', 'a', 'r'], 'heine-borel': ['cover'],
    'cohesive': ['stream', 'depth'], 'arzela': ['depth'], 'limsup': ['stream', 'bound'],
    'counterexample': ['delay', 'k', 'witnesses', 'n', 'false', 'colours'],
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser1(prog='slowreal', description='Stage tables for slow Cauchy reals.')
    sub = parser.add_subparsers(dest='subcommand', required=True, parser_class=_Parser1)
    for name, extra in _EXTRA.items():
        p = sub.add_parser(name)
        if name == 'counterexample':
            p.add_argument('name', help=', '.join(DEMOS))
        p.add_argument('--stages', type=int, default=16)
        p.add_argument('--fuel', type=int, default=256 if name == 'heine-borel' else 64)
        p.add_argument('--tol-exp', type=int, default=10)
        p.add_argument('--format', choices=('json', 'csv'), default='json')
        p.add_argument('--seed', type=int, default=0)
        p.add_argument('--out')
        for opt in extra:
            p.add_argument('--' + opt)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items()
               if k not in ('subcommand', 'stages', 'fuel', 'tol_exp', 'format', 'seed', 'out')}
    try:
        config = RunConfig(args.subcommand, options, args.stages, args.fuel, args.tol_exp,
                           args.format, args.seed)
        result = run(config)
    except (ParseError, UsageError) as err:
        print('slowreal: %s' % err, file=sys.stderr)
        return EXIT_USAGE
    text = render(config, result)
    if args.out:
        with open(args.out, 'w') as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
