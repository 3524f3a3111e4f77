"""Picking a convergent subsequence by majority vote on binary digits.

cauchy_subsequence keeps the indices whose first digits agree with the
majority of the surviving tail.  On an eventually stable stream it lands on
the limit; on the tent gadget the iterates decode a hidden set.
"""
from fractions import Fraction

from slowreal.combinatorics import cauchy_subsequence, diameter
from slowreal.counterexamples import tent_gadget, tent_iterate, van_der_corput

q = lambda n: Fraction(1, 3) + Fraction((-1) ** n, 2 ** n)
sel = cauchy_subsequence(q, 8, 64)
print('survivor counts by depth:', sel.counts)
print('tail diameter:', float(diameter(q(n) for n in sel.tail(64))))

sel = cauchy_subsequence(van_der_corput, 8, 64)
print('van der Corput survivors:', sel.indices)

witness = {0: 3, 2: 0, 5: 9}
_, x0 = tent_gadget(lambda n: witness.get(n))
for n in range(7):
    v = tent_iterate(x0, n, 16)
    print('x_%d = %-10s >= 2/3: %-5s  witness: %s' % (n, float(v), v >= Fraction(2, 3),
                                                     witness.get(n)))
