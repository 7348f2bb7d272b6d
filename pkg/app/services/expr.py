from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from ..errors import ContractViolation, ExpressionSyntaxError
from ..models.basis import BasisLabel, LabelKind, SymplecticSpace
from ..models.multivector import MultiVector
from .exterior import contract, lefschetz

# Grammar (whitespace-insensitive):
#   expr    := ['+'|'-'] term (('+'|'-') term)*
#   term    := coeff ['*' product] | product
#   coeff   := INT ['/' INT]
#   product := factor ('^' factor)*
#   factor  := label | 'C' '(' expr ')' | 'L' '(' expr ')' | '(' expr ')'
#   label   := ('a'|'b') INT


@dataclass(frozen=True)
class _Token:
    kind: str  # INT, LABEL, FUNC, OP, LPAREN, RPAREN, EOF
    text: str
    line: int
    column: int


_OPS = set("+-*/^")
_DIGITS = frozenset("0123456789")


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        start_col = col
        if ch in _DIGITS:
            j = i
            while j < n and text[j] in _DIGITS:
                j += 1
            tokens.append(_Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in ("a", "b"):
            j = i + 1
            while j < n and text[j] in _DIGITS:
                j += 1
            if j == i + 1:
                raise ExpressionSyntaxError(f"label '{ch}' needs an index", line=line, column=start_col)
            tokens.append(_Token("LABEL", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in ("C", "L"):
            tokens.append(_Token("FUNC", ch, line, start_col))
        elif ch in _OPS:
            tokens.append(_Token("OP", ch, line, start_col))
        elif ch == "(":
            tokens.append(_Token("LPAREN", ch, line, start_col))
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, line, start_col))
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", line=line, column=start_col)
        col, i = col + 1, i + 1
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str, space: SymplecticSpace) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0
        self.space = space

    # -------------------------
    # Token helpers
    # -------------------------

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _error(self, message: str, tok: Optional[_Token] = None) -> ExpressionSyntaxError:
        t = tok or self.current
        return ExpressionSyntaxError(message, line=t.line, column=t.column)

    def _is_op(self, symbol: str) -> bool:
        return self.current.kind == "OP" and self.current.text == symbol

    def _expect(self, kind: str) -> _Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise self._error(f"expected {kind.lower()}, found {found!r}")
        return self._advance()

    # -------------------------
    # Grammar
    # -------------------------

    def parse(self) -> MultiVector:
        if self.current.kind == "EOF":
            raise self._error("empty expression")
        value = self._expr()
        if self.current.kind != "EOF":
            raise self._error(f"unexpected {self.current.text!r}")
        return value

    def _expr(self) -> MultiVector:
        sign = 1
        if self._is_op("+") or self._is_op("-"):
            sign = -1 if self._advance().text == "-" else 1
        total = self._term().scale(sign)
        while self._is_op("+") or self._is_op("-"):
            op = self._advance()
            term = self._term()
            if not (total.is_zero or term.is_zero) and total.grade != term.grade:
                raise self._error(f"inhomogeneous sum (grade {total.grade} {op.text} grade {term.grade})", op)
            total = total + term if op.text == "+" else total - term
        return total

    def _term(self) -> MultiVector:
        if self.current.kind == "INT":
            coeff = self._coeff()
            if self._is_op("*"):
                self._advance()
                return self._product().scale(coeff)
            return MultiVector.scalar(self.space, coeff)
        return self._product()

    def _coeff(self) -> Fraction:
        num_tok = self._expect("INT")
        value = Fraction(int(num_tok.text))
        if self._is_op("/"):
            self._advance()
            den_tok = self._expect("INT")
            den = int(den_tok.text)
            if den == 0:
                raise self._error("zero denominator", den_tok)
            value = value / den
        return value

    def _product(self) -> MultiVector:
        value = self._factor()
        while self._is_op("^"):
            self._advance()
            value = value.wedge(self._factor())
        return value

    def _factor(self) -> MultiVector:
        tok = self.current
        if tok.kind == "LABEL":
            self._advance()
            return MultiVector.basis(self.space, [self._label_position(tok)])
        if tok.kind == "FUNC":
            self._advance()
            self._expect("LPAREN")
            inner = self._expr()
            self._expect("RPAREN")
            return contract(inner) if tok.text == "C" else lefschetz(inner)
        if tok.kind == "LPAREN":
            self._advance()
            inner = self._expr()
            self._expect("RPAREN")
            return inner
        found = tok.text or "end of input"
        raise self._error(f"expected a label, C(...), L(...) or '(' but found {found!r}")

    def _label_position(self, tok: _Token) -> int:
        index = int(tok.text[1:])
        if not 1 <= index <= self.space.g:
            raise self._error(f"label {tok.text} is out of range 1..{self.space.g}", tok)
        return BasisLabel(kind=LabelKind(tok.text[0]), index=index).position


def parse_expr(text: str, g: int) -> MultiVector:
    """Parse expression text into a MultiVector over H at genus g."""
    if g < 1:
        raise ContractViolation(f"genus must be >= 1 (got {g})")
    return _Parser(text, SymplecticSpace(g)).parse()


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def serialize(x: MultiVector) -> str:
    """
    Canonical text: terms in lexicographic label order, ' + ' / ' - ' separators,
    unit coefficients omitted above grade 0, and "0" for the zero element.
    """
    if x.is_zero:
        return "0"
    parts: List[str] = []
    for index, (mono, coeff) in enumerate(x.sorted_terms()):
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if mono:
            body = "^".join(x.space.label_name(p) for p in mono)
            if magnitude != 1:
                body = f"{format_scalar(magnitude)}*{body}"
        else:
            body = format_scalar(magnitude)
        if index == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)
