"""The text grammar for polynomials and differential polynomials.

    expr    := term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' nat)?
    atom    := rational | var primes* | var '^(' nat ')'
             | '(' expr ')' | 'D' ('^' nat)? '(' expr ')'
    rational:= ['-'] digits ('/' digits)?
    var     := [A-Za-z][A-Za-z0-9_]*   (the bare name 'D' is the derivation)

Whitespace is insignificant.  Derivative orders are written with primes up
to three (x, x', x'', x''') and as ``x^(n)`` beyond; both forms parse.  In
plain-polynomial mode, primes, ``^(n)`` markers, and the D operator are
rejected with :class:`~diffalg.errors.ModeError`.

Printing uses the canonical form produced by ``str()`` on polynomials:
terms sorted by descending (total degree, variable sequence), joined by
" + ", coefficients elided when exactly 1, exponents elided when 1.
``parse_poly(str(p), mode) == p`` for every canonical p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModeError, ParseError
from .free_diff import DVar, d_shift
from .polynomial import Poly

POLY_MODE = "poly"
DIFF_MODE = "diffpoly"


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    order: int


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class DApp:
    power: int
    arg: object


class _Parser:
    def __init__(self, text: str, mode: str):
        if mode not in (POLY_MODE, DIFF_MODE):
            raise ValueError(f"unknown mode {mode!r}")
        self.text = text
        self.mode = mode
        self.i = 0

    # -- machinery ---------------------------------------------------------

    def _byte_offset(self, i: int | None = None) -> int:
        i = self.i if i is None else i
        return len(self.text[:i].encode("utf-8")) + 1

    def error(self, expected: set[str]):
        raise ParseError("syntax error", self._byte_offset(), frozenset(expected))

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def eat(self, ch: str) -> bool:
        if self.peek() == ch:
            self.i += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.eat(ch):
            self.error({f"'{ch}'"})

    def nat(self) -> int:
        self.skip_ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            self.error({"natural number"})
        return int(self.text[start:self.i])

    def ident(self) -> str:
        self.skip_ws()
        start = self.i
        ch = self.text[self.i] if self.i < len(self.text) else ""
        if not ch.isalpha():
            self.error({"identifier"})
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        return self.text[start:self.i]

    # -- grammar -------------------------------------------------------------

    def parse(self):
        node = self.expr()
        self.skip_ws()
        if self.i != len(self.text):
            self.error({"'+'", "'-'", "'*'", "'^'", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while True:
            if self.eat("+"):
                node = BinOp("+", node, self.term())
            elif self.eat("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while self.eat("*"):
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        self.skip_ws()
        if self.peek() == "^":
            save = self.i
            self.i += 1
            if self.peek() == "(":
                # derivative-order marker: only valid directly on a plain variable
                if not (isinstance(node, Var) and node.order == 0):
                    self.i = save
                    self.error({"natural number"})
                if self.mode == POLY_MODE:
                    raise ModeError(
                        f"derivative marker at byte {self._byte_offset(save)} "
                        "is not allowed in plain-polynomial mode"
                    )
                self.expect("(")
                order = self.nat()
                self.expect(")")
                node = Var(node.name, order)
                if self.eat("^"):
                    node = Pow(node, self.nat())
            else:
                node = Pow(node, self.nat())
        return node

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.eat("(")
            node = self.expr()
            self.expect(")")
            return node
        if ch == "-" or ch.isdigit():
            return Num(self.rational())
        if ch.isalpha():
            start = self.i
            name = self.ident()
            if name == "D":
                if self.mode == POLY_MODE:
                    raise ModeError(
                        f"the D operator at byte {self._byte_offset(start)} "
                        "is not allowed in plain-polynomial mode"
                    )
                power = 1
                if self.eat("^"):
                    power = self.nat()
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return DApp(power, arg)
            order = 0
            while self.i < len(self.text) and self.text[self.i] == "'":
                order += 1
                self.i += 1
            if order and self.mode == POLY_MODE:
                raise ModeError(
                    f"primed variable at byte {self._byte_offset(start)} "
                    "is not allowed in plain-polynomial mode"
                )
            return Var(name, order)
        self.error({"rational", "variable", "'('", "'D'"})

    def rational(self) -> Fraction:
        self.skip_ws()
        sign = -1 if self.eat("-") else 1
        num = self.nat()
        if self.eat("/"):
            den = self.nat()
            if den == 0:
                self.error({"nonzero denominator"})
            return Fraction(sign * num, den)
        return Fraction(sign * num)


def parse(text: str, mode: str = DIFF_MODE):
    """Parse text into an expression tree."""
    return _Parser(text, mode).parse()


def eval_expr(node, mode: str = DIFF_MODE) -> Poly:
    """Evaluate an expression tree to a canonical polynomial.  In
    differential mode every variable becomes a derivative variable."""
    if isinstance(node, Num):
        return Poly.const(node.value)
    if isinstance(node, Var):
        if mode == DIFF_MODE:
            return Poly.variable(DVar(node.name, node.order))
        return Poly.variable(node.name)
    if isinstance(node, BinOp):
        left = eval_expr(node.left, mode)
        right = eval_expr(node.right, mode)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, Pow):
        return eval_expr(node.base, mode) ** node.exponent
    if isinstance(node, DApp):
        p = eval_expr(node.arg, mode)
        for _ in range(node.power):
            p = d_shift(p)
        return p
    raise TypeError(f"not an expression node: {node!r}")


def parse_poly(text: str, mode: str = DIFF_MODE) -> Poly:
    """Parse and evaluate in one step."""
    return eval_expr(parse(text, mode), mode)


def parse_series_literal(text: str) -> tuple[Fraction, ...]:
    """Parse a series literal "[a0, a1, ...]" of rational coefficients."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError("series literal must be bracketed", 1, frozenset({"'['"}))
    inner = s[1:-1].strip()
    if not inner:
        raise ParseError("series literal needs at least one coefficient", 2,
                         frozenset({"rational"}))
    out = []
    for chunk in inner.split(","):
        chunk = chunk.strip()
        try:
            out.append(Fraction(chunk))
        except (ValueError, ZeroDivisionError):
            offset = text.index(chunk) + 1 if chunk and chunk in text else 1
            raise ParseError(f"bad rational {chunk!r}", offset, frozenset({"rational"})) from None
    return tuple(out)
