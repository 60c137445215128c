"""Tokenizer, recursive-descent parser and canonical printer for pulse programs.

Grammar (whitespace and ``#`` comments between tokens are ignored)::

    sequence := [event ("-" event)*]
    event    := rf | "Gz" | "tau" | "d(" expr ")"
    rf       := "R" ("x" | "y" | "z") ("1" | "2" | "12") "(" expr ")"
    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | atom
    atom     := NUMBER | "pi" | "n" | "J" | "(" expr ")"

Parentheses and unary minus together nest at most ``MAX_NESTING`` levels deep,
and numeric literals must be finite.
"""

import logging
import math
import re
from pathlib import Path
from typing import NamedTuple, Optional

from ..errors import CtqwError
from .ast import (
    AXES,
    SYMBOLS,
    BinaryOp,
    Delay,
    Expr,
    GradientCrush,
    Negate,
    Number,
    PulseEvent,
    PulseSequence,
    RfPulse,
    Symbol,
    Tau,
)

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"""
    (?P<skip>[ \t\r\n]+|\#[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)

_SPINS = {"1": (1,), "2": (2,), "12": (1, 2)}
_EVENT_START = frozenset({"R<axis><spins>(", "Gz", "tau", "d("})
_ATOM_START = frozenset({"number", "pi", "n", "J", "(", "-"})
_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY = 3
_ATOM = 4
# Parentheses and unary minus each count one level
MAX_NESTING = 64


class PulseSyntaxError(CtqwError):
    """Raised when pulse program text does not follow the grammar."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset(), text: str = ""):
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)
        self.text = text
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    """Split program text into tokens, dropping whitespace and comments.

    Raises:
        PulseSyntaxError: On a character that cannot start any token
    """
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise PulseSyntaxError(f"Unexpected character {text[pos]!r}", pos, _EVENT_START | _ATOM_START, text)
        kind = match.lastgroup
        if kind != "skip":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    return tokens


class _Parser:
    """One-token-lookahead recursive descent over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0

    # --- token helpers ---

    def peek(self) -> Optional[Token]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def offset(self) -> int:
        token = self.peek()
        return token.offset if token else len(self.text)

    def error(self, message: str, expected: frozenset[str], offset: Optional[int] = None) -> PulseSyntaxError:
        return PulseSyntaxError(message, self.offset() if offset is None else offset, expected, self.text)

    def accept_op(self, op: str) -> bool:
        token = self.peek()
        if token and token.kind == "op" and token.text == op:
            self.index += 1
            return True
        return False

    def enter(self, offset: int) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error(f"Expression nested deeper than {MAX_NESTING} levels", frozenset(), offset)

    def expect_op(self, op: str, expected: frozenset[str] = frozenset()) -> None:
        if not self.accept_op(op):
            found = self.peek()
            what = repr(found.text) if found else "end of input"
            raise self.error(f"Expected {op!r}, found {what}", expected | {op})

    # --- sequence level ---

    def sequence(self) -> PulseSequence:
        events: list[PulseEvent] = []
        if self.peek() is None:
            return PulseSequence()
        events.append(self.event())
        while self.peek() is not None:
            if not self.accept_op("-"):
                found = self.peek()
                raise self.error(f"Expected '-' between events, found {found.text!r}", frozenset({"-", "end of input"}))
            events.append(self.event())
        return PulseSequence(events=tuple(events))

    def event(self) -> PulseEvent:
        token = self.peek()
        if token is None or token.kind != "name":
            what = repr(token.text) if token else "end of input"
            raise self.error(f"Expected a pulse event, found {what}", _EVENT_START)
        self.index += 1
        if token.text == "Gz":
            return GradientCrush()
        if token.text == "tau":
            return Tau()
        if token.text == "d":
            self.expect_op("(")
            duration = self.bracketed_expr()
            return Delay(duration=duration)
        if token.text.startswith("R"):
            axis = token.text[1:2]
            if axis not in AXES:
                raise self.error(
                    f"Unknown rotation axis {axis!r}" if axis else "Missing rotation axis",
                    frozenset(AXES),
                    token.offset + 1,
                )
            spins = token.text[2:]
            if spins not in _SPINS:
                raise self.error(
                    f"Unknown spin designator {spins!r}" if spins else "Missing spin designator",
                    frozenset(_SPINS),
                    token.offset + 2,
                )
            self.expect_op("(")
            angle = self.bracketed_expr()
            return RfPulse(axis=axis, targets=_SPINS[spins], angle=angle)
        raise self.error(f"Unknown pulse event {token.text!r}", _EVENT_START, token.offset)

    def bracketed_expr(self) -> Expr:
        expr = self.expr()
        self.expect_op(")", frozenset({"+", "-", "*", "/"}))
        return expr

    # --- expressions ---

    def expr(self) -> Expr:
        node = self.term()
        while True:
            token = self.peek()
            if token and token.kind == "op" and token.text in "+-":
                self.index += 1
                node = BinaryOp(op=token.text, left=node, right=self.term())
            else:
                return node

    def term(self) -> Expr:
        node = self.unary()
        while True:
            token = self.peek()
            if token and token.kind == "op" and token.text in "*/":
                self.index += 1
                node = BinaryOp(op=token.text, left=node, right=self.unary())
            else:
                return node

    def unary(self) -> Expr:
        token = self.peek()
        if self.accept_op("-"):
            self.enter(token.offset)
            operand = self.unary()
            self.depth -= 1
            return Negate(operand=operand)
        return self.atom()

    def atom(self) -> Expr:
        token = self.peek()
        if token is None:
            raise self.error("Unexpected end of input in expression", _ATOM_START)
        if token.kind == "number":
            value = float(token.text)
            if not math.isfinite(value):
                raise self.error(f"Numeric literal {token.text!r} out of range", frozenset(), token.offset)
            self.index += 1
            return Number(value=value)
        if token.kind == "name":
            if token.text not in SYMBOLS:
                raise self.error(f"Unknown identifier {token.text!r}", frozenset(SYMBOLS))
            self.index += 1
            return Symbol(name=token.text)
        if token.kind == "op" and token.text == "(":
            self.enter(token.offset)
            self.index += 1
            inner = self.bracketed_expr()
            self.depth -= 1
            return inner
        raise self.error(f"Unexpected {token.text!r} in expression", _ATOM_START)


def parse(text: str) -> PulseSequence:
    """Parse pulse program text into a PulseSequence.

    Args:
        text: Program such as "Rx1(pi/3) - Gz - tau"

    Returns:
        Sequence with events in left-to-right order

    Raises:
        PulseSyntaxError: With the offending offset and the expected tokens
    """
    seq = _Parser(text).sequence()
    logger.debug("Parsed %d pulse events", len(seq))
    return seq


def parse_file(path: Path) -> PulseSequence:
    """Parse a program file holding one sequence; the sequence is named after the file."""
    path = Path(path)
    seq = parse(path.read_text(encoding="utf-8"))
    return seq.model_copy(update={"name": path.stem})


# === Printing ===


def format_number(value: float) -> str:
    """Shortest text that reads back as exactly `value`."""
    if value.is_integer():
        return str(int(value))
    return repr(value)


def _render_expr(expr: Expr) -> tuple[str, int]:
    """Text of an expression and the binding strength of its outermost operator."""
    if isinstance(expr, Number):
        return format_number(expr.value), _ATOM
    if isinstance(expr, Symbol):
        return expr.name, _ATOM
    if isinstance(expr, Negate):
        inner, strength = _render_expr(expr.operand)
        if strength < _UNARY:
            inner = f"({inner})"
        return f"-{inner}", _UNARY
    strength = _PRECEDENCE[expr.op]
    left, left_strength = _render_expr(expr.left)
    right, right_strength = _render_expr(expr.right)
    if left_strength < strength:
        left = f"({left})"
    # Operators associate left, so an equal-strength right operand keeps its parentheses
    if right_strength <= strength:
        right = f"({right})"
    return f"{left}{expr.op}{right}", strength


def render_expr(expr: Expr) -> str:
    """Canonical text of an angle or duration expression."""
    return _render_expr(expr)[0]


def render_event(event: PulseEvent) -> str:
    """Canonical text of one event."""
    if isinstance(event, RfPulse):
        spins = "".join(str(t) for t in event.targets)
        return f"R{event.axis}{spins}({render_expr(event.angle)})"
    if isinstance(event, Delay):
        return f"d({render_expr(event.duration)})"
    if isinstance(event, Tau):
        return "tau"
    return "Gz"


def render(seq: PulseSequence) -> str:
    """Canonical program text; parse(render(seq)) rebuilds the same events."""
    return " - ".join(render_event(event) for event in seq.events)
