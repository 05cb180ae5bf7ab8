import pytest
from hypothesis import given, settings, strategies as st

from costlang import gen, stdlib
from costlang.cost import NAT, PAR, NatCost, ParCost
from costlang.machine import (
    EXTENSIONAL,
    INTENSIONAL,
    EvalError,
    Final,
    MachineState,
    eval_comp,
    eval_program,
    eval_traced,
    transition,
)
from costlang.syntax import ast as A
from costlang.syntax import check_program, parse, parse_comp_text
from costlang.values import vlist


def run_text(src, monoid=NAT, phase=INTENSIONAL, args=()):
    return eval_program(check_program(parse(src), monoid), list(args), phase)


def test_identity_examples():
    easy, hard = stdlib.build_id_easy(), stdlib.build_id_hard()
    r = eval_program(easy, [7])
    assert (r.value, r.cost) == (7, NatCost(0))
    r = eval_program(hard, [7])
    assert (r.value, r.cost) == (7, NatCost(7))
    r = eval_program(hard, [7], EXTENSIONAL)
    assert (r.value, r.cost) == (7, NatCost(0))
    assert r.phase is EXTENSIONAL


def test_par_join():
    r = run_text("(def main (F (prod nat nat)) (par (step (1 1) (ret 1)) (step (2 2) (ret 2))))", PAR)
    assert r.value == (1, 2)
    assert r.cost == ParCost(3, 2)


def test_par_after_sequential_cost():
    src = "(def main (F (prod nat nat)) (step (5 5) (par (step (1 1) (ret 1)) (step (2 2) (ret 2)))))"
    assert run_text(src, PAR).cost == ParCost(8, 7)


def test_transition_step_intensional():
    s = MachineState(parse_comp_text("(step 3 (ret zero))"), {}, cost=NatCost(2))
    s = transition(s)
    assert s.control == A.Ret(A.Zero()) and s.cost == NatCost(5) and not s.stack
    out = transition(s)
    assert isinstance(out, Final) and out.result.value == 0


def test_transition_step_extensional():
    s = MachineState(parse_comp_text("(step 3 (ret zero))"), {}, phase=EXTENSIONAL)
    s = transition(s)
    assert s.control == A.Ret(A.Zero()) and s.cost == NatCost(0)


def test_transition_bind_ret():
    e = parse_comp_text("(bind (ret 1) (x) (ret (suc x)))")
    s = MachineState(e, {})
    # the machine pushes a bind frame, then returns into it
    s = transition(transition(s))
    assert s.control == e.body and s.env == {"x": 1} and not s.stack


def test_bind_step_commutes():
    # step inside the left of a bind fires first and is charged once
    r = run_text("(def main (F nat) (bind (step 2 (ret 1)) (x) (step 3 (ret x))))")
    assert (r.value, r.cost) == (1, NatCost(5))


def test_trace():
    res, trace = eval_traced(stdlib.build_id_hard(), [3])
    assert [c for _, c in trace] == [NatCost(1)] * 3
    assert res.cost == NatCost(3)
    _, trace = eval_traced(stdlib.build_id_easy(), [3])
    assert trace == []
    _, trace = eval_traced(stdlib.build_id_hard(), [3], EXTENSIONAL)
    assert trace == []
    idx = [i for i, _ in trace]
    assert idx == sorted(idx)


def test_list_charge_on_cons_destruction():
    src = """
    (def main (-> (list 2 nat) (F nat))
      (lam (l) (rec-list l (ret 0) (a t r) (bind (force r) (n) (ret (suc n))))))
    """
    r = run_text(src, args=[vlist([5, 6, 7])])
    assert (r.value, r.cost) == (3, NatCost(6))


def test_computational_pair_split():
    src = """
    (def p (pairC nat (F nat)) (pair 3 (step 2 (ret 4))))
    (def main (F (prod nat nat))
      (split (thunk (force p)) (x y) (bind (force y) (z) (ret (pair x z)))))
    """
    r = run_text(src)
    assert (r.value, r.cost) == ((3, 4), NatCost(2))
    # the first component alone costs nothing
    src2 = src.replace("(bind (force y) (z) (ret (pair x z)))", "(ret (pair x x))")
    assert run_text(src2).cost == NatCost(0)


def test_fuel_exhaustion():
    with pytest.raises(EvalError) as info:
        eval_program(stdlib.build_id_hard(), [50], fuel=10)
    assert info.value.kind == EvalError.FUEL


def test_env_fuel(monkeypatch):
    monkeypatch.setenv("CALF_FUEL", "10")
    with pytest.raises(EvalError):
        eval_program(stdlib.build_id_hard(), [50])


def test_overflow_reported():
    big = 2**64 - 1
    src = f"(def main (F nat) (step {big} (step 1 (ret zero))))"
    with pytest.raises(EvalError) as info:
        run_text(src)
    assert info.value.kind == EvalError.OVERFLOW


def test_stuck_is_reported():
    # unchecked term: forcing a number
    with pytest.raises(EvalError) as info:
        eval_comp(A.Force(A.Zero()), {})
    assert info.value.kind == EvalError.STUCK


def test_argument_validation():
    with pytest.raises(ValueError):
        eval_program(stdlib.build_id_hard(), [True])
    with pytest.raises(ValueError):
        eval_program(stdlib.build_id_hard(), [])


def test_meta_costs_nothing():
    r = run_text("(def main (F nat) (ret (meta gcd-depth 21 13)))")
    assert (r.value, r.cost, r.transitions) == (6, NatCost(0), 0)


def test_determinism():
    p = stdlib.build_msort_par()
    arg = vlist([5, 1, 4, 1, 5, 9, 2, 6])
    assert eval_program(p, [arg]) == eval_program(p, [arg])


# -- laws --------------------------------------------------------------------------

ALL = [(name, stdlib.get(name)) for name in stdlib.names()]


def sample_args(name, rng):
    from costlang.stdlib import Deq, Enq, QueueState

    def queue():
        return QueueState(tuple(rng.below(5) for _ in range(rng.below(4))), tuple(rng.below(5) for _ in range(rng.below(4)))).to_value()

    if name in ("id_easy", "id_hard"):
        return [rng.below(30)]
    if name == "gcd":
        return [rng.below(60), rng.below(60)]
    if name == "enq":
        return [queue(), rng.below(5)]
    if name == "deq":
        return [queue()]
    if name == "operate":
        return [(Enq(rng.below(5)) if rng.coin() else Deq()).to_value(), queue()]
    if name == "queue-seq":
        return [vlist(o.to_value() for o in gen.random_ops(rng, 12)), queue()]
    return [vlist([rng.below(20) for _ in range(rng.below(12))])]


def _wrap(p, f):
    d = p.entry
    return A.Program(p.defs[:-1] + (A.Def(d.name, d.type, f(d.term)),), p.monoid)


def _under_lams(term, f):
    if isinstance(term, A.Lam):
        return A.Lam(term.var, _under_lams(term.body, f), term.ann)
    return f(term)


@pytest.mark.parametrize("name,p", ALL)
def test_phase_erasure_and_step_laws(name, p):
    rng = gen.Lcg(len(name))
    unit = p.monoid.unit()
    with_zero = _wrap(p, lambda t: _under_lams(t, lambda b: A.Step(p.monoid.zero(), b)))
    with_unit = _wrap(p, lambda t: _under_lams(t, lambda b: A.Step(unit, A.Step(unit, b))))
    for _ in range(20):
        args = sample_args(name, rng)
        i = eval_program(p, args)
        e = eval_program(p, args, EXTENSIONAL)
        assert e.value == i.value and e.cost == p.monoid.zero()
        z = eval_program(with_zero, args)
        assert (z.value, z.cost) == (i.value, i.cost)
        u = eval_program(with_unit, args)
        assert u.value == i.value and u.cost == unit.seq(unit).seq(i.cost)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([NAT, PAR]))
def test_random_programs_erase_and_do_not_interfere(seed, monoid):
    p = gen.ProgramGen(gen.Lcg(seed), monoid).program()
    i = eval_program(p, [])
    e = eval_program(p, [], EXTENSIONAL)
    assert e.value == i.value and e.cost.is_zero()
    m = gen.mutate_steps(p, gen.Lcg(seed + 1))
    assert eval_program(m, [], EXTENSIONAL).value == e.value


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.integers(0, 2**32))
def test_bind_cost_additivity(s1, s2):
    g = gen.ProgramGen(gen.Lcg(s1), NAT)
    e1 = g.comp([], A.NAT_T, 3)
    e2 = g.comp([("x", A.NAT_T)], A.NAT_T, 3)
    whole = check_program(A.Program((A.Def("main", A.F(A.NAT_T), A.Bind(e1, "x", e2)),)), NAT)
    left = check_program(A.Program((A.Def("main", A.F(A.NAT_T), e1),)), NAT)
    r1 = eval_program(left, [])
    body = whole.entry.term.body
    r2 = eval_comp(body, {"x": r1.value}, NAT)
    r = eval_program(whole, [])
    assert r.cost == r1.cost.seq(r2.cost)
    assert r.value == r2.value
