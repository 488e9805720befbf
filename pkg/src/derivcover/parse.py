"""Expression language for operators and rational functions.

Operator grammar:
    operator := term (('+'|'-') term)*
    term     := [rational '*'] word
    word     := letter ('.' letter)*
    letter   := 'D' digits            (letters are numbered from 1)
    rational := ['-'] digits ['/' digits]

Word letters compose left-to-right as outermost-first: `D1.D2` applies D2
first and D1 last.

Rational-function grammar: usual arithmetic over variables matching
[a-z][0-9]*, nonnegative integer literals, + - * / ^ and parentheses.
`^` (with an integer literal exponent) binds tightest, then unary minus,
then * and /, then + and -.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnknownLetterError
from .jets import Operator
from .poly import RatFunc, VarRegistry

OPERATOR_EXPR = "operator-expr"
RATFUNC_EXPR = "ratfunc-expr"


@dataclass(frozen=True)
class SourceExpr:
    """A piece of source text tagged with which grammar it belongs to."""

    text: str
    kind: str  # OPERATOR_EXPR or RATFUNC_EXPR


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str, letters: bool) -> list[_Token]:
    """Shared tokenizer; `letters` switches D-letter recognition on."""
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if letters and ch == "D":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("expected digits after 'D'", i)
            tokens.append(_Token("letter", text[i:j], i))
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if not letters and ch.isalpha() and ch.islower():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^().,":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Cursor:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.pos)
        return self.next()


# ---------------------------------------------------------------------------
# Operators


def parse_operator(text: str, *, alphabet_size: int | None = None) -> Operator:
    """Parse operator text into canonical form (duplicates merged, zeros dropped)."""
    cur = _Cursor(_tokenize(text, letters=True))
    terms: list[tuple[tuple[int, ...], Fraction]] = []
    sign = Fraction(1)
    if cur.peek().kind == "-":
        cur.next()
        sign = Fraction(-1)
    terms.append(_operator_term(cur, sign, alphabet_size))
    while cur.peek().kind in ("+", "-"):
        sep = cur.next()
        sign = Fraction(1) if sep.kind == "+" else Fraction(-1)
        terms.append(_operator_term(cur, sign, alphabet_size))
    cur.expect("end")
    return Operator.from_terms(terms)


def _operator_term(
    cur: _Cursor, sign: Fraction, alphabet_size: int | None
) -> tuple[tuple[int, ...], Fraction]:
    coeff = sign
    tok = cur.peek()
    if tok.kind in ("int", "-"):
        coeff = coeff * _rational(cur)
        cur.expect("*")
    word = [_letter(cur, alphabet_size)]
    while cur.peek().kind == ".":
        cur.next()
        word.append(_letter(cur, alphabet_size))
    return tuple(word), coeff


def _rational(cur: _Cursor) -> Fraction:
    sign = 1
    if cur.peek().kind == "-":
        cur.next()
        sign = -1
    num = int(cur.expect("int").text)
    if cur.peek().kind == "/":
        save = cur.i
        cur.next()
        if cur.peek().kind != "int":
            cur.i = save
            return Fraction(sign * num)
        den_tok = cur.next()
        den = int(den_tok.text)
        if den == 0:
            raise ParseError("rational with zero denominator", den_tok.pos)
        return Fraction(sign * num, den)
    return Fraction(sign * num)


def _letter(cur: _Cursor, alphabet_size: int | None) -> int:
    tok = cur.expect("letter")
    number = int(tok.text[1:])
    if number < 1:
        raise ParseError("derivation letters are numbered from 1", tok.pos)
    index = number - 1
    if alphabet_size is not None and index >= alphabet_size:
        raise UnknownLetterError(
            f"letter {tok.text} exceeds alphabet of size {alphabet_size}"
        )
    return index


# ---------------------------------------------------------------------------
# Rational functions


def parse_ratfunc(
    text: str, reg: VarRegistry | None = None, *, allow_new_vars: bool = True
) -> RatFunc:
    """Parse arithmetic text into a canonical reduced rational function.

    Variable names are resolved in `reg` (allocated on first use when
    `allow_new_vars`); a fresh registry is created when none is given.
    """
    if reg is None:
        reg = VarRegistry()
    cur = _Cursor(_tokenize(text, letters=False))
    value = _sum(cur, reg, allow_new_vars)
    cur.expect("end")
    return value


def _sum(cur: _Cursor, reg, allow_new) -> RatFunc:
    value = _product(cur, reg, allow_new)
    while cur.peek().kind in ("+", "-"):
        op = cur.next().kind
        rhs = _product(cur, reg, allow_new)
        value = value + rhs if op == "+" else value - rhs
    return value


def _product(cur: _Cursor, reg, allow_new) -> RatFunc:
    value = _signed(cur, reg, allow_new)
    while cur.peek().kind in ("*", "/"):
        op = cur.next().kind
        rhs = _signed(cur, reg, allow_new)
        value = value * rhs if op == "*" else value / rhs
    return value


def _signed(cur: _Cursor, reg, allow_new) -> RatFunc:
    if cur.peek().kind == "-":
        cur.next()
        return -_signed(cur, reg, allow_new)
    return _power(cur, reg, allow_new)


def _power(cur: _Cursor, reg, allow_new) -> RatFunc:
    value = _atom(cur, reg, allow_new)
    while cur.peek().kind == "^":
        cur.next()
        exp = int(cur.expect("int").text)
        value = value**exp
    return value


def _atom(cur: _Cursor, reg, allow_new) -> RatFunc:
    tok = cur.peek()
    if tok.kind == "int":
        cur.next()
        return RatFunc.const(reg, int(tok.text))
    if tok.kind == "name":
        cur.next()
        v = reg.lookup(tok.text)
        if v is None:
            if not allow_new:
                raise ParseError(f"unknown variable {tok.text!r}", tok.pos)
            v = reg.add_generator(tok.text)
        return RatFunc.var(reg, v)
    if tok.kind == "(":
        cur.next()
        value = _sum(cur, reg, allow_new)
        cur.expect(")")
        return value
    raise ParseError(f"expected a value, found {tok.text or 'end of input'!r}", tok.pos)


def parse_func_list(text: str, reg: VarRegistry | None = None) -> list[RatFunc]:
    """Parse a comma-separated list of rational functions in one shared registry."""
    if reg is None:
        reg = VarRegistry()
    parts = text.split(",")
    if any(not p.strip() for p in parts):
        raise ParseError("empty entry in function list", 0)
    return [parse_ratfunc(p, reg) for p in parts]
