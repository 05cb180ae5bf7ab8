"""Reader for the s-expression surface syntax.

``;`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import Span


class ParseError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message

    @property
    def span(self) -> Span:
        return Span(self.line, self.col)


@dataclass
class Atom:
    text: str
    span: Span = field(compare=False)


@dataclass
class SList:
    items: list
    span: Span = field(compare=False)


def read_all(text: str) -> list:
    """Read every top-level form in ``text``."""
    forms = []
    stack: list[tuple[list, int, int]] = []
    items: list = forms
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "(":
            stack.append((items, line, col))
            items = []
            i += 1
            col += 1
            continue
        if ch == ")":
            if not stack:
                raise ParseError(line, col, "unexpected ')'")
            parent, sl, sc = stack.pop()
            parent.append(SList(items, Span(sl, sc, line, col + 1)))
            items = parent
            i += 1
            col += 1
            continue
        start = i
        while i < n and not text[i].isspace() and text[i] not in "();":
            i += 1
        tok = text[start:i]
        items.append(Atom(tok, Span(line, col, line, col + len(tok))))
        col += len(tok)
    if stack:
        _, sl, sc = stack[-1]
        raise ParseError(line, col, f"unclosed form opened at {sl}:{sc}")
    return forms


def read_one(text: str):
    forms = read_all(text)
    if len(forms) != 1:
        line = forms[1].span.line if len(forms) > 1 else 1
        col = forms[1].span.col if len(forms) > 1 else 1
        raise ParseError(line, col, f"expected exactly one form, found {len(forms)}")
    return forms[0]
