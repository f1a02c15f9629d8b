"""Parser for group-spec strings such as ``Wr(Alt(5),Cyc(2))``.

Grammar (whitespace is ignored between tokens)::

    spec   := NAME '(' INT ')' | ('DP' | 'Wr') '(' spec ',' spec ')'
            | 'Perm' '(' INT ';' cycles (',' cycles)* ')'
    cycles := '(' ')' | ('(' INT+ ')')+

``str(parse_spec(s))`` is the canonical form and parses back to the same spec.
"""
from __future__ import annotations

import re

from .builders import GROUP_CTORS, INT_CTORS, GroupSpec, SpecError, validate

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<punct>[(),;]))")


class SpecSyntaxError(SpecError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}\n  {text}\n  {' ' * pos}^")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise SpecSyntaxError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text))

    def take(self, kind: str, value: str | None = None) -> str:
        k, v, pos = self.peek()
        if k != kind or (value is not None and v != value):
            want = repr(value) if value is not None else kind
            got = "end of input" if k == "end" else repr(v)
            raise SpecSyntaxError(f"expected {want}, found {got}", self.text, pos)
        self.i += 1
        return v

    def spec(self) -> GroupSpec:
        _, name, pos = self.peek()
        name = self.take("name")
        if name in GROUP_CTORS:
            self.take("punct", "(")
            a = self.spec()
            self.take("punct", ",")
            b = self.spec()
            self.take("punct", ")")
            return GroupSpec(name, (a, b))
        if name == "Perm":
            return self.perm()
        if name not in INT_CTORS:
            raise SpecSyntaxError(f"unknown constructor {name!r}", self.text, pos)
        self.take("punct", "(")
        k, v, p = self.peek()
        if k != "int":
            raise SpecSyntaxError(f"{name} takes one integer argument", self.text, p)
        n = int(self.take("int"))
        k, v, p = self.peek()
        if (k, v) != ("punct", ")"):
            raise SpecSyntaxError(f"{name} takes one integer argument", self.text, p)
        self.take("punct", ")")
        return GroupSpec(name, (n,))

    def perm(self) -> GroupSpec:
        self.take("punct", "(")
        degree = int(self.take("int"))
        self.take("punct", ";")
        gens = [self.cycles()]
        while self.peek()[:2] == ("punct", ","):
            self.take("punct", ",")
            gens.append(self.cycles())
        self.take("punct", ")")
        return GroupSpec("Perm", (), perm_degree=degree, perm_gens=tuple(gens))

    def cycles(self) -> tuple:
        out = []
        self.take("punct", "(")
        if self.peek()[:2] == ("punct", ")"):
            self.take("punct", ")")
            return ()
        while True:
            cyc = [int(self.take("int"))]
            while self.peek()[0] == "int":
                cyc.append(int(self.take("int")))
            self.take("punct", ")")
            out.append(tuple(cyc))
            if self.peek()[:2] != ("punct", "("):
                return tuple(out)
            self.take("punct", "(")


def parse_spec(text: str, check: bool = True) -> GroupSpec:
    """Parse and (by default) validate a spec string."""
    p = _Parser(text)
    spec = p.spec()
    k, v, pos = p.peek()
    if k != "end":
        raise SpecSyntaxError(f"trailing input {v!r}", text, pos)
    if check:
        validate(spec)
    return spec
