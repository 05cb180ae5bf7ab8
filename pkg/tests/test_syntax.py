import dataclasses

import pytest

from costlang import stdlib
from costlang.cost import NAT, PAR, NatCost, ParCost
from costlang.syntax import (
    ParseError,
    TypeCheckError,
    check_comp,
    check_program,
    check_value,
    infer_comp,
    parse,
    parse_comp_text,
    parse_type_text,
    parse_value_text,
    print_comp,
    print_program,
)
from costlang.syntax import ast as A


def test_parse_lam():
    e = parse_comp_text("(lam (x) (ret x))")
    assert e == A.Lam("x", A.Ret(A.Var("x")))


def test_parse_step_pair_cost():
    e = parse_comp_text("(step (1 1) (ret zero))")
    assert e == A.Step(ParCost(1, 1), A.Ret(A.Zero()))
    assert parse_comp_text("(step 4 (ret zero))").cost == NatCost(4)


def test_unclosed_form_position():
    with pytest.raises(ParseError) as info:
        parse_comp_text("(ret")
    assert (info.value.line, info.value.col) == (1, 5)
    assert "unclosed" in info.value.message


@pytest.mark.parametrize(
    "text",
    ["(ret", "(lam x (ret x))", "(step -1 (ret zero))", "(ret zero))", "(bind (ret zero) x (ret x))", "(frob 1)"],
)
def test_malformed_inputs_are_parse_errors(text):
    with pytest.raises(ParseError):
        parse_comp_text(text)


def test_numerals_and_sugar():
    assert parse_value_text("2") == A.Suc(A.Suc(A.Zero()))
    assert parse_comp_text("(lam (x y) (ret x))") == A.Lam("x", A.Lam("y", A.Ret(A.Var("x"))))
    assert parse_comp_text("(ap (force f) 1 2)") == A.Ap(A.Ap(A.Force(A.Var("f")), A.Suc(A.Zero())), A.Suc(A.Suc(A.Zero())))
    assert parse_type_text("(-> nat nat (F nat))") == A.Arrow(A.NAT_T, A.Arrow(A.NAT_T, A.F(A.NAT_T)))
    assert parse_type_text("(list (2 1) nat)") == A.ListT(ParCost(2, 1), A.NAT_T)


def test_spans_recorded():
    e = parse_comp_text("(ret\n  zero)")
    assert e.span.line == 1 and e.span.col == 1
    assert e.value.span.line == 2 and e.value.span.col == 3


def test_check_id_easy():
    body = stdlib.build_id_easy().entry.term
    check_comp({}, body, A.Arrow(A.NAT_T, A.F(A.NAT_T)))


def test_check_ret_mismatch():
    with pytest.raises(TypeCheckError) as info:
        check_comp({}, A.Ret(A.Zero()), A.F(A.UNIT_T))
    assert info.value.kind == "mismatch"


def test_check_par():
    e = A.Par(A.Ret(A.Zero()), A.Ret(A.Triv()))
    check_comp({}, e, A.F(A.ProdT(A.NAT_T, A.UNIT_T)))
    assert infer_comp({}, e) == A.F(A.ProdT(A.NAT_T, A.UNIT_T))


def test_unbound_variable():
    with pytest.raises(TypeCheckError) as info:
        check_comp({}, parse_comp_text("(ret y)"), A.F(A.NAT_T))
    assert info.value.kind == "unbound-variable"
    assert info.value.span is not None


def test_context_variables():
    check_value({"x": A.NAT_T}, A.Suc(A.Var("x")), A.NAT_T)
    with pytest.raises(TypeCheckError):
        check_value({"x": A.BOOL_T}, A.Suc(A.Var("x")), A.NAT_T)


def test_bad_cost_literal():
    e = parse_comp_text("(step (1 1) (ret zero))")
    with pytest.raises(TypeCheckError) as info:
        check_comp({}, e, A.F(A.NAT_T), NAT)
    assert info.value.kind == "bad-cost-literal"
    check_comp({}, e, A.F(A.NAT_T), PAR)
    with pytest.raises(TypeCheckError) as info:
        check_comp({}, parse_comp_text("(step 1 (ret zero))"), A.F(A.NAT_T), PAR)
    assert info.value.kind == "bad-cost-literal"


def test_list_cost_is_part_of_the_type():
    a = parse_type_text("(list 1 nat)")
    b = parse_type_text("(list 2 nat)")
    assert a != b
    with pytest.raises(TypeCheckError):
        check_comp({"l": a}, parse_comp_text("(ret l)"), A.F(b))


def test_meta_signature_checked():
    with pytest.raises(TypeCheckError):
        check_value({}, parse_value_text("(meta mod true 1)"), A.NAT_T)
    with pytest.raises(TypeCheckError):
        check_value({}, parse_value_text("(meta no-such-primitive)"), A.NAT_T)
    check_value({}, parse_value_text("(meta mod 7 2)"), A.NAT_T)


def test_split_of_computational_pair():
    src = """
    (def p (pairC nat (F nat)) (pair 3 (step 2 (ret 4))))
    (def main (F (prod nat nat))
      (split (thunk (force p)) (x y) (bind (force y) (z) (ret (pair x z)))))
    """
    check_program(parse(src))


def test_entry_must_return_values():
    with pytest.raises(TypeCheckError):
        check_program(parse("(def main (pairC nat (F nat)) (pair 1 (ret 2)))"))


def test_check_program_round_trip_examples():
    src = "(def id (-> nat (F nat)) (lam (x) (ret x)))\n"
    p = check_program(parse(src))
    assert print_program(p) == src
    assert print_comp(p.entry.term) == "(lam (x) (ret x))"


# -- polarity mutation -------------------------------------------------------------

VALUE_HOLE = A.Ret(A.Triv())
COMP_HOLE = A.Triv()


def _positions(node, path=()):
    """Yield (path, node) for every term below ``node``."""
    if isinstance(node, (A.ValueTerm, A.CompTerm)):
        yield path, node
    if isinstance(node, (A.ValueTerm, A.CompTerm, A.Def)):
        for f in dataclasses.fields(node):
            if f.name in ("span", "charge", "ann", "type"):
                continue
            yield from _positions(getattr(node, f.name), path + (f.name,))
    elif isinstance(node, tuple):
        for i, x in enumerate(node):
            yield from _positions(x, path + (i,))


def _replace_at(node, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(node, tuple):
        return node[:head] + (_replace_at(node[head], rest, new),) + node[head + 1 :]
    return dataclasses.replace(node, **{head: _replace_at(getattr(node, head), rest, new)})


def _mutants(p):
    for i, d in enumerate(p.defs):
        for path, node in _positions(d.term):
            if isinstance(node, A.Lit):
                continue
            hole = VALUE_HOLE if isinstance(node, A.ValueTerm) else COMP_HOLE
            yield i, path, _replace_at(d, ("term",) + path, hole)


@pytest.mark.parametrize("name", stdlib.names())
def test_polarity_mutation(name):
    p = stdlib.get(name)
    count = 0
    for i, path, d in _mutants(p):
        defs = p.defs[:i] + (d,) + p.defs[i + 1 :]
        with pytest.raises(TypeCheckError) as info:
            check_program(A.Program(defs), p.monoid)
        assert info.value.kind == "polarity-violation", (name, path)
        count += 1
    assert count > 0
