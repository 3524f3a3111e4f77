"""Real analysis over Cauchy sequences of rationals given without a rate.

Reals, functions, sequences and open sets are stage-indexed tables of exact
rationals.  Constructions that need more than computation take fuel and may
answer ``unknown``.
"""
from .real_core import (HOLDS, FAILS, UNKNOWN, RateWitness, SlowReal, Verdict, const,
                        from_rule, specker)
from .continuous_fn import ContinuousFn, FnSequence
from .real_sequences import UniformRealSequence
from .open_sets import ClosedSetCode, OpenSetCode

__all__ = ['HOLDS', 'FAILS', 'UNKNOWN', 'RateWitness', 'SlowReal', 'Verdict', 'const',
           'from_rule', 'specker', 'ContinuousFn', 'FnSequence', 'UniformRealSequence',
           'ClosedSetCode', 'OpenSetCode']
__version__ = '0.1.0'
