"""A small call-by-push-value language with cost as an effect.

Programs charge cost with ``step``; an abstract machine measures it under a
chosen cost monoid, and the ``refine`` module checks measured costs against
host-level recurrences.
"""

from .cost import NAT, PAR, NatCost, ParCost, CostOverflow, Monoid, seq, par, leq, zero
from .syntax import parse, check_program, print_program, ParseError, TypeCheckError
from .machine import EXTENSIONAL, INTENSIONAL, EvalError, EvalResult, Phase, eval_program, eval_traced
from .refine import has_cost, is_bounded, check_cert, sweep

__version__ = "0.1.0"
