from .ast import *  # noqa: F401,F403
from .sexpr import ParseError
from .parser import parse, parse_comp_text, parse_value_text, parse_type_text
from .printer import print_program, print_comp, print_value, print_type, format_cost
from .checker import (
    TypeCheckError,
    Checker,
    check_value,
    check_comp,
    infer_comp,
    check_program,
)
