from collections import deque
from itertools import product

import pytest

from costlang import gen, stdlib
from costlang.cost import NatCost, ParCost
from costlang.machine import EXTENSIONAL, eval_program
from costlang.recurrences import ceil_log2, fib_inv, gcd_depth
from costlang.stdlib import Deq, Enq, QueueState, cost_seq, operate_seq, phi
from costlang.values import vlist


def euclid(x, y):
    steps = 0
    while y:
        x, y = y, x % y
        steps += 1
    return x, steps


def test_identity():
    assert (eval_program(stdlib.build_id_easy(), [9]).cost) == NatCost(0)
    r = eval_program(stdlib.build_id_hard(), [9])
    assert (r.value, r.cost) == (9, NatCost(9))


def test_gcd_examples():
    g = stdlib.build_gcd()
    r = eval_program(g, [21, 13])
    assert (r.value, r.cost) == (1, NatCost(6))
    r = eval_program(g, [12, 0])
    assert (r.value, r.cost) == (12, NatCost(0))


def test_gcd_against_euclid():
    g = stdlib.build_gcd()
    for x, y in product(range(0, 101, 3), range(101)):
        value, steps = euclid(x, y)
        r = eval_program(g, [x, y])
        assert (r.value, r.cost.value) == (value, steps)
        assert gcd_depth(x, y) == steps <= fib_inv(x) + 1


def test_gcd_unfolds_like_euclid():
    g = stdlib.build_gcd()
    for x in range(0, 60):
        for y in range(0, 30):
            lhs = eval_program(g, [x, y + 1], EXTENSIONAL).value
            rhs = eval_program(g, [y + 1, x % (y + 1)], EXTENSIONAL).value
            assert lhs == rhs


def test_phi():
    assert phi(QueueState()) == 0
    assert phi(QueueState((1,), (2, 3))) == 5


def test_enq_free_and_deq_examples():
    enq = stdlib.build_enq()
    deq = stdlib.build_deq()
    for q in stdlib_queues():
        assert eval_program(enq, [q.to_value(), 3]).cost == NatCost(0)
    r = eval_program(deq, [QueueState((), (1, 2, 3)).to_value()])
    assert r.cost == NatCost(4)


def stdlib_queues():
    from costlang.refine import enumerate_queues

    return list(enumerate_queues(3, 3, (0, 2)))


def test_operate_matches_host_model():
    for q in stdlib_queues():
        for op in [Enq(5), Deq()]:
            q2, res = stdlib.run_op(op, q)
            assert q2 == stdlib.host_operate(op, q)
            assert res.cost.value == stdlib.op_cost(op, q)
            assert res.cost.value <= 1 + len(q.back)


def test_empty_sequence():
    _, c = operate_seq([], QueueState((1,), (2,)))
    assert c == NatCost(0)


def fifo(ops):
    d = deque()
    for o in ops:
        if isinstance(o, Enq):
            d.append(o.x)
        elif d:
            d.popleft()
    return list(d)


def test_queue_fifo_and_sequence_bounds():
    q0 = QueueState()
    for ops in gen.op_lists(500, 200, seed=11):
        final, c = operate_seq(ops, q0, EXTENSIONAL)
        assert final.contents() == fifo(ops)
        assert c == NatCost(0)
        final2, c = operate_seq(ops, q0)
        assert final2 == final
        assert c.value <= cost_seq(ops, q0) <= phi(q0) + 2 * len(ops)


def test_sequence_bound_from_other_start():
    q0 = QueueState((1, 2), (3, 4, 5))
    for ops in gen.op_lists(50, 40, seed=5):
        _, c = operate_seq(ops, q0)
        assert c.value == cost_seq(ops, q0) <= phi(q0) + 2 * len(ops)


SORTS = ["isort", "msort", "msort_par"]


@pytest.mark.parametrize("name", SORTS)
def test_sorts_sort(name):
    p = stdlib.get(name)
    assert eval_program(p, [vlist([3, 1, 2])], EXTENSIONAL).value == vlist([1, 2, 3])
    for xs in gen.sort_lists(32, 10, seed=1):
        r = eval_program(p, [vlist(xs)])
        assert list(r.value) == sorted(xs)
        assert eval_program(p, [vlist(xs)], EXTENSIONAL).value == r.value


def test_sorts_agree_extensionally():
    ps = [stdlib.get(n) for n in SORTS]
    for n in range(5):
        for xs in product(range(5), repeat=n):
            vals = {eval_program(p, [vlist(xs)], EXTENSIONAL).value for p in ps}
            assert len(vals) == 1


def test_short_lists_of_length_six():
    ps = [stdlib.get(n) for n in SORTS[:2]]
    rng = gen.Lcg(3)
    for _ in range(300):
        xs = [rng.below(5) for _ in range(6)]
        assert eval_program(ps[0], [vlist(xs)], EXTENSIONAL).value == eval_program(ps[1], [vlist(xs)], EXTENSIONAL).value


def test_msort_bound_at_eight():
    p = stdlib.build_msort()
    assert (ceil_log2(8) * 8, 2 * 8 + ceil_log2(8)) == (24, 19)
    for xs in gen.sort_lists(8, 50, seed=2):
        if len(xs) == 8:
            assert eval_program(p, [vlist(xs)]).cost.leq(ParCost(24, 19))


def test_isort_reversed_counts_every_pair():
    p = stdlib.build_isort()
    for n in range(33):
        c = eval_program(p, [vlist(range(n - 1, -1, -1))]).cost
        # comparisons are sequential, so span equals work
        assert c.work == c.span == n * (n - 1) // 2 <= n * n


def test_span_below_work():
    ms, mp = stdlib.build_msort(), stdlib.build_msort_par()
    for xs in gen.sort_lists(32, 5, seed=9):
        n = len(xs)
        c = eval_program(ms, [vlist(xs)]).cost
        if n >= 4:
            assert c.span < c.work
        k = ceil_log2(n + 1)
        assert eval_program(mp, [vlist(xs)]).cost.span <= k**3


def test_registry():
    assert set(stdlib.names()) >= {"id_easy", "id_hard", "gcd", "enq", "deq", "queue-seq", "isort", "msort", "msort_par"}
    assert stdlib.get("msort-par") is stdlib.get("msort_par")
    with pytest.raises(KeyError):
        stdlib.get("quicksort")
