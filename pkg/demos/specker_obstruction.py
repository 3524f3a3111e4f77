"""A Specker real converges, yet no finite window certifies how fast.

The value k is enumerated late, at index ``delay``.  Rate extraction at a
fuel below the delay returns a confident candidate; raising the fuel past the
delay refutes it.
"""
from fractions import Fraction

from slowreal.counterexamples import delayed_injection
from slowreal.real_core import extract_rate, rate_refuted, specker

k, fuel = 2, 40
for delay in (20, 60, 150):
    x = specker(delayed_injection(k, delay))
    v = extract_rate(x, k + 2, fuel)
    print('delay %3d: candidate N = %2d at fuel %d' % (delay, v.witness, fuel))
    for bigger in (fuel, 2 * fuel, 4 * fuel):
        bad = rate_refuted(x, k + 2, v.witness, bigger)
        print('    window [N, %3d] spread > 2^-%d: %s' % (bigger, k + 2, bad))

x = specker(delayed_injection(k, 150))
print('stage 149 -> 150 jump:', x[150] - x[149], '=', Fraction(1, 2 ** (k + 1)))
