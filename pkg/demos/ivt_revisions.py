"""Bisection that changes its mind.

Stage n of the root reruns n bisection steps with the function's stage-n
table.  For the step gadget the colour flips at index 5, so early stages
commit to the wrong half and later stages revise that choice.
"""
from fractions import Fraction

from slowreal.continuous_fn import evaluate, poly
from slowreal.counterexamples import step_gadget
from slowreal.theorems import ivt_root

f = poly([Fraction(-1, 2), 0, 1])
root, _ = ivt_root(f)
x = root[20]
print('root of q^2 - 1/2 at stage 20:', x, float(x))
print('residual at stage 64:', float(evaluate(f, root)[64]))

_, h = step_gadget(lambda i: 0 if i < 5 else 1, 1)
root, trace = ivt_root(h)
for n in range(9):
    print('stage %d  value %-8s  intervals %s' % (n, root[n], trace.intervals(n)[-1]))
print('revisions (stage, depth):', trace.revisions(20))
