from importlib import resources

import pytest

from costlang import stdlib
from costlang.syntax import check_program, parse, print_program

NAMES = stdlib.names()


def golden(name):
    return resources.files("costlang").joinpath("stdlib_calf", f"{name}.calf").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", NAMES)
def test_printed_program_matches_golden(name):
    assert print_program(stdlib.get(name)) == golden(name)


@pytest.mark.parametrize("name", NAMES)
def test_golden_checks_to_built_ast(name):
    built = stdlib.get(name)
    assert check_program(parse(golden(name)), built.monoid) == built


@pytest.mark.parametrize("name", NAMES)
def test_print_parse_round_trip(name):
    text = golden(name)
    once = parse(text)
    assert parse(print_program(once)) == once
    assert print_program(once) == text
