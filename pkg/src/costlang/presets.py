"""Named recurrences and the sweep presets used by ``check-bound`` and ``sweep-all``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import gen, stdlib
from .recurrences import ceil_log2, fib_inv, gcd_depth
from .refine import BoundReport, Recurrence, enumerate_queues, sweep
from .stdlib import Deq, Enq, QueueState, cost_seq, phi
from .values import VInl, vlength


def decode_ops(v) -> list:
    return [Enq(o.value) if type(o) is VInl else Deq() for o in v]


def _queue(v) -> QueueState:
    return QueueState.from_value(v)


def _isort(l):
    n = vlength(l)
    return (n * n, n * n)


def _msort(l):
    n = vlength(l)
    k = ceil_log2(n)
    return (k * n, 2 * n + k)


def _msort_par(l):
    n = vlength(l)
    k = ceil_log2(n + 1)
    return (k * k * n, k**3)


RECURRENCES = {
    r.name: r
    for r in [
        Recurrence("zero", lambda *args: 0, "no cost at all"),
        Recurrence("identity", lambda n: n, "one unit per successor"),
        Recurrence("gcd-depth", lambda x, y: gcd_depth(x, y), "number of mod steps of Euclid's loop"),
        Recurrence("fib-closed", lambda x, y: fib_inv(x) + 1, "inverse Fibonacci of the first argument, plus one"),
        Recurrence("deq-closed", lambda q: 1 + len(_queue(q).back), "one plus the length of the back list"),
        Recurrence("cost-seq", lambda ops, q: cost_seq(decode_ops(ops), _queue(q)), "per-operation costs summed along the run"),
        Recurrence("telescoping", lambda ops, q: phi(_queue(q)) + 2 * vlength(ops), "initial potential plus two per operation"),
        Recurrence("two-per-op", lambda ops, q: 2 * vlength(ops), "two per operation (from the empty queue)"),
        Recurrence("isort-closed", _isort, "(n^2, n^2)"),
        Recurrence("msort-closed", _msort, "(ceil(log2 n) n, 2n + ceil(log2 n))"),
        Recurrence("msort-par-closed", _msort_par, "(ceil(log2(n+1))^2 n, ceil(log2(n+1))^3)"),
    ]
}


def recurrence(name: str) -> Recurrence:
    try:
        return RECURRENCES[name]
    except KeyError:
        raise KeyError(f"unknown recurrence '{name}'; known: {', '.join(RECURRENCES)}") from None


def queue_inputs(max_len: int = 8, alphabet=(0, 1)):
    for q in enumerate_queues(max_len, max_len, alphabet):
        yield (q.to_value(),)


def enq_inputs(max_len: int = 8, alphabet=(0, 1)):
    for q in enumerate_queues(max_len, max_len, alphabet):
        v = q.to_value()
        for x in alphabet:
            yield (v, x)


@dataclass(frozen=True)
class Preset:
    name: str
    program: str
    rec: str
    inputs: Callable  # () -> iterable of argument tuples
    doc: str = ""

    def run(self, fuel=None) -> BoundReport:
        return sweep(stdlib.get(self.program), self.inputs(), recurrence(self.rec), fuel)


def _sorts():
    return gen.sort_inputs(64, 200, 7)


def _ops():
    return gen.queue_seq_inputs(500, 200, 7)


PRESETS = {
    p.name: p
    for p in [
        Preset("id-easy", "id_easy", "zero", lambda: gen.nat_range(0, 100), "id_easy costs nothing on [0, 100]"),
        Preset("id-hard", "id_hard", "identity", lambda: gen.nat_range(0, 100), "id_hard costs n on [0, 100]"),
        Preset("gcd-depth", "gcd", "gcd-depth", lambda: gen.nat_pairs(0, 100), "gcd within its recurrence on [0, 100]^2"),
        Preset("gcd-fib", "gcd", "fib-closed", lambda: gen.nat_pairs(0, 100), "gcd within the Fibonacci closed form"),
        Preset("enq", "enq", "zero", enq_inputs, "enqueue is free, queues up to 8+8 over {0, 1}"),
        Preset("deq", "deq", "deq-closed", queue_inputs, "dequeue within 1 + |back|, same queues"),
        Preset("queue-seq-cost-seq", "queue-seq", "cost-seq", _ops, "500 op lists up to 200 long, seed 7"),
        Preset("queue-seq-telescoping", "queue-seq", "telescoping", _ops, "same op lists, potential bound"),
        Preset("queue-seq-two-per-op", "queue-seq", "two-per-op", _ops, "same op lists, two per operation"),
        Preset("isort", "isort", "isort-closed", _sorts, "200 lists per length up to 64, seed 7"),
        Preset("msort", "msort", "msort-closed", _sorts, "same lists"),
        Preset("msort-par", "msort_par", "msort-par-closed", _sorts, "same lists"),
    ]
}
