"""Control/stack abstract machine for checked programs.

The machine evaluates left to right. ``step`` charges its amount when it
becomes the control term, so ``bind(step(c, e), f)`` charges ``c`` before
running ``e`` without any special rule. In the extensional phase charges are
skipped at the transition itself and the accumulator stays at zero.

``par(e1, e2)`` runs ``e1`` and then ``e2``, each against a fresh
accumulator, and joins the two with the monoid's parallel composition.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from typing import Optional

from . import meta
from .cost import Cost, CostOverflow, Monoid, NAT
from .syntax import ast as A
from .values import NIL, TRIV, Closure, VCons, VInl, VInr, conforms

DEFAULT_FUEL = 10**8


class Phase(enum.Enum):
    INTENSIONAL = "intensional"
    EXTENSIONAL = "extensional"

    def __str__(self):
        return self.value


INTENSIONAL = Phase.INTENSIONAL
EXTENSIONAL = Phase.EXTENSIONAL


class EvalError(Exception):
    FUEL = "fuel-exhausted"
    STUCK = "stuck"
    OVERFLOW = "cost-overflow"

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.message = message


@dataclass(frozen=True)
class EvalResult:
    value: object
    cost: Cost
    phase: Phase
    transitions: int


# -- stack frames -------------------------------------------------------------


class BindFrame:
    __slots__ = ("var", "body", "env")

    def __init__(self, var, body, env):
        self.var = var
        self.body = body
        self.env = env


class ArgFrame:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class ParLeftFrame:
    __slots__ = ("right", "env", "saved")

    def __init__(self, right, env, saved):
        self.right = right
        self.env = env
        self.saved = saved


class ParJoinFrame:
    __slots__ = ("left_value", "left_cost", "saved")

    def __init__(self, left_value, left_cost, saved):
        self.left_value = left_value
        self.left_cost = left_cost
        self.saved = saved


class SplitFrame:
    """Waiting for a thunked value/computation pair to reach its pair form.

    Charges met on the way belong to the computation component, so they are
    collected separately and re-attached to it as a ``step``.
    """

    __slots__ = ("left_var", "right_var", "body", "env", "saved", "trace_len")

    def __init__(self, left_var, right_var, body, env, saved, trace_len):
        self.left_var = left_var
        self.right_var = right_var
        self.body = body
        self.env = env
        self.saved = saved
        self.trace_len = trace_len


@dataclass
class MachineState:
    control: A.CompTerm
    env: dict
    stack: list = field(default_factory=list)
    cost: Cost = field(default_factory=NAT.zero)
    fuel: int = DEFAULT_FUEL
    phase: Phase = INTENSIONAL
    transitions: int = 0
    monoid: Monoid = NAT
    trace: Optional[list] = None


@dataclass(frozen=True)
class Final:
    result: EvalResult


class _Stuck(Exception):
    pass


# -- values -------------------------------------------------------------------


def eval_value(v, env):
    t = type(v)
    if t is A.Var:
        return env[v.name]
    if t is A.Lit:
        return v.value
    if t is A.Thunk:
        return Closure(v.comp, env)
    if t is A.Zero:
        return 0
    if t is A.Suc:
        n = 1
        v = v.pred
        while type(v) is A.Suc:
            n += 1
            v = v.pred
        return n + eval_value(v, env)
    if t is A.Nil:
        return NIL
    if t is A.Cons:
        return VCons(eval_value(v.head, env), eval_value(v.tail, env))
    if t is A.Pair:
        return (eval_value(v.left, env), eval_value(v.right, env))
    if t is A.Triv:
        return TRIV
    if t is A.TrueV:
        return True
    if t is A.FalseV:
        return False
    if t is A.Inl:
        return VInl(eval_value(v.value, env))
    if t is A.Inr:
        return VInr(eval_value(v.value, env))
    if t is A.Meta:
        prim = meta.REGISTRY[v.name]
        return prim.fn(*[eval_value(a, env) for a in v.args])
    raise _Stuck(f"not a value term: {v!r}")


def _step_amount(c, env, monoid):
    if type(c) is A.Meta:
        raw = eval_value(c, env)
        if not monoid.owns(raw):
            raise _Stuck(f"primitive '{c.name}' returned {raw!r}, not a {monoid} cost")
        return raw
    return c


# -- the machine loop -----------------------------------------------------------


def run(state: MachineState, limit: Optional[int] = None):
    """Advance ``state`` in place.

    Stops after ``limit`` transitions (returning None) or when the machine
    reaches a final state (returning a :class:`Final`). Raises
    :class:`EvalError` on stuck states, fuel exhaustion and cost overflow.
    """
    c = state.control
    env = state.env
    stack = state.stack
    cost = state.cost
    fuel = state.fuel
    monoid = state.monoid
    charging = state.phase is INTENSIONAL
    trace = state.trace
    count = state.transitions
    stop = None if limit is None else count + limit
    push = stack.append
    pop = stack.pop

    try:
        while True:
            if stop is not None and count >= stop:
                break
            t = type(c)
            if t is A.Ret:
                if not stack:
                    state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
                    return Final(EvalResult(eval_value(c.value, env), cost, state.phase, count))
            if fuel <= 0:
                state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
                raise EvalError(EvalError.FUEL, f"no fuel left after {count} transitions")
            fuel -= 1
            count += 1

            if t is A.Ret:
                frame = pop()
                ft = type(frame)
                if ft is BindFrame:
                    val = eval_value(c.value, env)
                    env = dict(frame.env)
                    env[frame.var] = val
                    c = frame.body
                elif ft is ParLeftFrame:
                    push(ParJoinFrame(eval_value(c.value, env), cost, frame.saved))
                    cost = monoid.zero()
                    c = frame.right
                    env = frame.env
                elif ft is ParJoinFrame:
                    joined = frame.left_cost.par(cost)
                    cost = frame.saved.seq(joined)
                    c = A.Ret(A.Lit((frame.left_value, eval_value(c.value, env))))
                else:
                    raise _Stuck(f"ret meets {ft.__name__}")
            elif t is A.Bind:
                push(BindFrame(c.var, c.body, env))
                c = c.comp
            elif t is A.Ap:
                push(ArgFrame(eval_value(c.arg, env)))
                c = c.fn
            elif t is A.Lam:
                if not stack or type(stack[-1]) is not ArgFrame:
                    raise _Stuck("lam without an argument")
                env = dict(env)
                env[c.var] = pop().value
                c = c.body
            elif t is A.Force:
                th = eval_value(c.value, env)
                if type(th) is not Closure:
                    raise _Stuck(f"force of a non-thunk {th!r}")
                c = th.comp
                env = th.env
            elif t is A.Step:
                if charging:
                    amount = _step_amount(c.cost, env, monoid)
                    if not amount.is_zero():
                        cost = cost.seq(amount)
                        if trace is not None:
                            trace.append((count, amount))
                c = c.body
            elif t is A.RecList:
                lst = eval_value(c.scrut, env)
                if lst is NIL:
                    c = c.nil
                elif type(lst) is VCons:
                    inner = dict(env)
                    inner[c.head] = lst.head
                    inner[c.tail] = lst.tail
                    inner[c.rec] = Closure(A.RecList(A.Lit(lst.tail), c.nil, c.head, c.tail, c.rec, c.cons, c.charge), env)
                    if charging and c.charge is not None and not c.charge.is_zero():
                        cost = cost.seq(c.charge)
                        if trace is not None:
                            trace.append((count, c.charge))
                    env = inner
                    c = c.cons
                else:
                    raise _Stuck(f"rec-list on a non-list {lst!r}")
            elif t is A.If:
                b = eval_value(c.cond, env)
                if b is True:
                    c = c.then
                elif b is False:
                    c = c.orelse
                else:
                    raise _Stuck(f"if on a non-boolean {b!r}")
            elif t is A.Split:
                p = eval_value(c.scrut, env)
                if type(p) is tuple and len(p) == 2:
                    env = dict(env)
                    env[c.left_var] = p[0]
                    env[c.right_var] = p[1]
                    c = c.body
                elif type(p) is Closure:
                    push(SplitFrame(c.left_var, c.right_var, c.body, env, cost, len(trace) if trace is not None else 0))
                    cost = monoid.zero()
                    c = p.comp
                    env = p.env
                else:
                    raise _Stuck(f"split on a non-pair {p!r}")
            elif t is A.Case:
                s = eval_value(c.scrut, env)
                st = type(s)
                if st is VInl:
                    env = dict(env)
                    env[c.left_var] = s.value
                    c = c.left
                elif st is VInr:
                    env = dict(env)
                    env[c.right_var] = s.value
                    c = c.right
                else:
                    raise _Stuck(f"case on a non-sum {s!r}")
            elif t is A.RecNat:
                n = eval_value(c.scrut, env)
                if type(n) is not int or n < 0:
                    raise _Stuck(f"rec-nat on a non-natural {n!r}")
                if n == 0:
                    c = c.zero
                else:
                    inner = dict(env)
                    inner[c.pred] = n - 1
                    inner[c.rec] = Closure(A.RecNat(A.Lit(n - 1), c.zero, c.pred, c.rec, c.suc), env)
                    env = inner
                    c = c.suc
            elif t is A.Par:
                push(ParLeftFrame(c.right, env, cost))
                cost = monoid.zero()
                c = c.left
            elif t is A.PairC:
                if not stack or type(stack[-1]) is not SplitFrame:
                    raise _Stuck("computation pair outside a split")
                frame = pop()
                delta = cost
                snd = c.comp if delta.is_zero() else A.Step(delta, c.comp)
                if trace is not None:
                    del trace[frame.trace_len:]
                inner = dict(frame.env)
                inner[frame.left_var] = eval_value(c.value, env)
                inner[frame.right_var] = Closure(snd, env)
                cost = frame.saved
                env = inner
                c = frame.body
            else:
                raise _Stuck(f"unknown control {t.__name__}")
    except _Stuck as exc:
        state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
        raise EvalError(EvalError.STUCK, str(exc)) from None
    except (KeyError, AttributeError, TypeError, ZeroDivisionError, ValueError) as exc:
        state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
        raise EvalError(EvalError.STUCK, f"{type(exc).__name__}: {exc}") from None
    except CostOverflow as exc:
        state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
        raise EvalError(EvalError.OVERFLOW, str(exc)) from None

    state.control, state.env, state.cost, state.fuel, state.transitions = c, env, cost, fuel, count
    return None


def transition(state: MachineState):
    """Perform one transition. Returns the new state, or a Final on termination."""
    out = run(state, 1)
    return state if out is None else out


# -- programs -----------------------------------------------------------------


def _fuel(fuel):
    if fuel is not None:
        return fuel
    env = os.environ.get("CALF_FUEL")
    return int(env) if env else DEFAULT_FUEL


_ENVS: dict = {}


def program_env(p: A.Program) -> dict:
    """Evaluate every definition but the entry into a runtime environment."""
    hit = _ENVS.get(id(p))
    if hit is not None and hit[0] is p:
        return hit[1]
    env: dict = {}
    for d in p.defs[:-1]:
        if isinstance(d.type, A.CompType):
            env = {**env, d.name: Closure(d.term, env)}
        else:
            env = {**env, d.name: eval_value(d.term, env)}
    # environments are never mutated, so one per program object is enough
    _ENVS[id(p)] = (p, env)
    return env


def initial_state(p: A.Program, args=(), phase: Phase = INTENSIONAL, fuel=None, trace=False) -> MachineState:
    if p.monoid is None:
        raise ValueError("program must be checked before evaluation")
    types = p.arg_types()
    if len(args) != len(types):
        raise ValueError(f"{p.name} takes {len(types)} argument(s), got {len(args)}")
    for i, (a, t) in enumerate(zip(args, types)):
        if not conforms(a, t):
            raise ValueError(f"argument {i + 1} of {p.name}: {a!r} is not a value of type {t}")
    fuel = _fuel(fuel)
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    stack = [ArgFrame(a) for a in reversed(list(args))]
    return MachineState(
        control=p.entry.term,
        env=program_env(p),
        stack=stack,
        cost=p.monoid.zero(),
        fuel=fuel,
        phase=phase,
        monoid=p.monoid,
        trace=[] if trace else None,
    )


def eval_program(p: A.Program, args=(), phase: Phase = INTENSIONAL, fuel=None) -> EvalResult:
    return run(initial_state(p, args, phase, fuel)).result


def eval_traced(p: A.Program, args=(), phase: Phase = INTENSIONAL, fuel=None):
    state = initial_state(p, args, phase, fuel, trace=True)
    result = run(state).result
    return result, state.trace


def eval_comp(e: A.CompTerm, env=None, monoid: Monoid = NAT, phase: Phase = INTENSIONAL, fuel=None) -> EvalResult:
    """Evaluate a closed (or env-closed) checked computation of type F A."""
    state = MachineState(control=e, env=dict(env or {}), cost=monoid.zero(), fuel=_fuel(fuel), phase=phase, monoid=monoid)
    return run(state).result


# short alias
eval = eval_program  # noqa: A001
