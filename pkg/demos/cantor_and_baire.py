"""Two ways to produce a real that avoids a list.

The anti-diagonal walks the middle-third set and steers away from row n at
digit n.  The Baire point nests dyadic balls, each inside the next dense open
set, here the line minus one rational.
"""
from fractions import Fraction

from slowreal.open_sets import whole_line
from slowreal.real_core import rational_from_code
from slowreal.theorems import avoid_point, baire_point, cantor_antidiagonal

rows = lambda n, i: rational_from_code(n)
y = cantor_antidiagonal(rows)
for n in range(6):
    gap = abs(y[30] - rows(n, 30))
    print('row %d = %-5s gap %-10.6f bound %.6f' % (n, rows(n, 30), float(gap),
                                                   1 / (2 * 3 ** (n + 1))))

ps = [rational_from_code(i) for i in range(9)]
Us = [avoid_point(p) for p in ps]
x = baire_point(lambda i: Us[i] if i < 9 else whole_line(), Fraction(1, 2), Fraction(1, 2))
tr = x.trace(10)
for i, (a, r) in enumerate(tr.balls):
    print('ball %2d: centre %-8s radius %s' % (i, a, r))
print('closest excluded rational:', min(abs(x[10] - p) for p in ps))
