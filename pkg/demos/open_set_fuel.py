"""Membership in coded open sets is a search, and searches run out of fuel.

Three situations: a boundary point that no fuel certifies, a preimage whose
certifying balls have large codes, and a cover with no finite subcover
visible at any fuel we can afford.
"""
from fractions import Fraction

from slowreal.continuous_fn import identity
from slowreal.counterexamples import heine_borel_adversary
from slowreal.open_sets import (ball, heine_borel_subcover, interval_literal, member,
                                preimage, union)
from slowreal.real_core import const

two = union([interval_literal(0, 1), interval_literal(1, 2)])
for p in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
    print('member of (0,1) u (1,2):', p, member(two, const(p), 256).outcome)

V = interval_literal(0, 1)
P = preimage(identity(), V)
for p in (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)):
    print('point %-4s  V: %-7s  preimage: %s'
          % (p, member(V, const(p), 256).outcome, member(P, const(p), 256).outcome))

print('two-ball cover of [0,1]:', heine_borel_subcover([ball(0, Fraction(3, 4)),
                                                       ball(1, Fraction(3, 4))], 256))
print('adversarial cover:', heine_borel_subcover(heine_borel_adversary(), 256))
