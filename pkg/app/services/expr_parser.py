"""
Recursive descent parser for the positive-expression DSL.

    expr   := term { "+" term }
    term   := factor { ("*" | "/") factor }
    factor := base [ "^" posint ]
    base   := posint | ident | "(" expr ")"
    ident  := letter { letter | digit | "_" }

A rational constant p/q is the quotient of two integers, so "x/4/2" is (x/4)/2.
There is no minus sign, unary or binary; a nonpositive constant is rejected too.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from app.errors import NegativeNotAllowed, ParseError
from app.services.posrat import PosRatExpr, add, as_expr, div, mul, power, var

MINUS_SIGNS = "-−–"


@dataclass(frozen=True)
class Token:
    type: str
    value: str
    pos: int


NUMBER_RE = re.compile(r"[0-9]+")
IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in MINUS_SIGNS:
            raise NegativeNotAllowed(f"subtraction/negation is not allowed (position {i})")
        m = NUMBER_RE.match(text, i) or IDENT_RE.match(text, i)
        if m:
            tokens.append(Token("NUMBER" if ch.isdigit() else "ID", m.group(), i))
            i = m.end()
        elif ch in "+*/^()":
            tokens.append(Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("END", "", len(text)))
    return tokens


class Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def eat(self, token_type: str) -> Token:
        tok = self.current
        if tok.type != token_type:
            want = "end of input" if token_type == "END" else repr(token_type)
            got = "end of input" if tok.type == "END" else repr(tok.value)
            raise ParseError(f"expected {want}, got {got}", tok.pos)
        self.pos += 1
        return tok

    def parse(self) -> PosRatExpr:
        node = self.expr()
        self.eat("END")
        return node

    def expr(self) -> PosRatExpr:
        node = self.term()
        while self.current.type == "+":
            self.eat("+")
            node = add(node, self.term())
        return node

    def term(self) -> PosRatExpr:
        node = self.factor()
        while self.current.type in ("*", "/"):
            op = self.eat(self.current.type).type
            rhs = self.factor()
            node = mul(node, rhs) if op == "*" else div(node, rhs)
        return node

    def factor(self) -> PosRatExpr:
        node = self.base()
        if self.current.type == "^":
            self.eat("^")
            tok = self.eat("NUMBER")
            k = int(tok.value)
            if k < 1:
                raise ParseError("exponent must be a positive integer", tok.pos)
            node = power(node, k)
        return node

    def base(self) -> PosRatExpr:
        tok = self.current
        if tok.type == "NUMBER":
            self.eat("NUMBER")
            # p/q needs no literal form: div() folds two constants
            value = Fraction(int(tok.value))
            if value <= 0:
                raise NegativeNotAllowed(f"constant {value} at position {tok.pos} is not positive")
            return as_expr(value)
        if tok.type == "ID":
            self.eat("ID")
            return var(tok.value)
        if tok.type == "(":
            self.eat("(")
            node = self.expr()
            self.eat(")")
            return node
        got = "end of input" if tok.type == "END" else repr(tok.value)
        raise ParseError(f"unexpected {got}", tok.pos)


def parse_expression(text: str) -> PosRatExpr:
    return Parser(tokenize(text)).parse()
