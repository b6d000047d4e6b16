"""Small arithmetic-expression language for initial data and forcings.

Grammar (recursive descent, standard precedence):

    expr    :=  term  (('+' | '-') term)*
    term    :=  unary (('*' | '/') unary)*
    unary   :=  '-' unary | power
    power   :=  atom ('^' unary)?            # right-associative
    atom    :=  NUMBER | 'pi' | 'e' | 'x' | 't'
             |  FUNC '(' expr ')' | '(' expr ')'

with FUNC one of sin, cos, sinh, cosh, exp, sqrt, abs.  Unary minus binds
looser than '^', so "-2^2" is -(2^2) = -4, matching written mathematics.
There is no implicit multiplication and functions require parentheses, which
keeps error positions exact.  Parsing never crashes on arbitrary input: it
returns an AST or raises ExprSyntaxError with a byte offset and the set of
expected tokens.  Evaluation raises ExprEvalError instead of returning a
non-finite number.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Expr",
    "Num",
    "Const",
    "Var",
    "Unary",
    "Bin",
    "Call",
    "ExprError",
    "ExprSyntaxError",
    "ExprEvalError",
    "parse",
    "evaluate",
    "to_callable",
    "free_variables",
    "to_str",
]

_CONSTANTS = {"pi": math.pi, "e": math.e}
_VARIABLES = ("x", "t")
_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "exp": math.exp,
    "sqrt": math.sqrt,
    "abs": abs,
}


class ExprError(ValueError):
    """Base class for expression failures."""


class ExprSyntaxError(ExprError):
    def __init__(self, message: str, text: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.byte_offset = len(text[:position].encode("utf-8", errors="replace"))
        self.expected = expected
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at offset {self.byte_offset}{hint}")


class ExprEvalError(ExprError):
    """Division by zero, domain error, unbound variable or non-finite result."""


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Const, Var, Unary, Bin, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad = len(text) - len(stripped)
            raise ExprSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: tuple[str, ...]):
        kind, value, pos = self.peek()
        what = "end of input" if kind == "end" else repr(value)
        raise ExprSyntaxError(f"unexpected {what}", self.text, pos, expected)

    def expect(self, kind: str):
        if self.peek()[0] != kind:
            self.fail((f"'{kind}'",))
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(("operator", "end of input"))
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = Bin(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = Bin(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self.peek()[0] == "-":
            self.advance()
            return Unary("-", self.unary())
        return self.power()

    def power(self) -> Expr:
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            # right-associative exponent; the exponent may carry a sign
            return Bin("^", node, self.unary())
        return node

    def atom(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(value))
        if kind == "name":
            self.advance()
            if value in _CONSTANTS:
                return Const(value)
            if value in _VARIABLES:
                return Var(value)
            if value in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                if self.peek()[0] == ",":
                    _, _, cpos = self.peek()
                    raise ExprSyntaxError(
                        f"{value}() takes exactly one argument", self.text, cpos, ("')'",)
                    )
                self.expect(")")
                return Call(value, arg)
            raise ExprSyntaxError(
                f"unknown identifier {value!r}",
                self.text,
                pos,
                tuple(sorted((*_CONSTANTS, *_VARIABLES, *_FUNCTIONS))),
            )
        if kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(("number", "identifier", "'('", "'-'"))


def parse(text: str) -> Expr:
    """Parse ``text`` into an AST or raise ExprSyntaxError with a position."""
    if not isinstance(text, str):
        raise ExprSyntaxError("input must be text", str(text), 0)
    return _Parser(text).parse()


def free_variables(node: Expr) -> frozenset[str]:
    """The subset of {x, t} appearing in the expression."""
    if isinstance(node, Var):
        return frozenset((node.name,))
    if isinstance(node, Unary):
        return free_variables(node.operand)
    if isinstance(node, Bin):
        return free_variables(node.left) | free_variables(node.right)
    if isinstance(node, Call):
        return free_variables(node.arg)
    return frozenset()


def evaluate(node: Expr, x: float | None = None, t: float | None = None) -> float:
    """IEEE-double evaluation with every failure reported, never NaN/inf."""
    env = {}
    if x is not None:
        env["x"] = float(x)
    if t is not None:
        env["t"] = float(t)
    val = _eval(node, env)
    if not math.isfinite(val):
        raise ExprEvalError(f"evaluation produced a non-finite value {val!r}")
    return val


def _eval(node: Expr, env: dict[str, float]) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return _CONSTANTS[node.name]
    if isinstance(node, Var):
        if node.name not in env:
            raise ExprEvalError(f"unbound variable {node.name!r}")
        return env[node.name]
    if isinstance(node, Unary):
        return -_eval(node.operand, env)
    if isinstance(node, Bin):
        a = _eval(node.left, env)
        b = _eval(node.right, env)
        try:
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                if b == 0.0:
                    raise ExprEvalError("division by zero")
                return a / b
            return math.pow(a, b)
        except OverflowError as exc:
            raise ExprEvalError(f"overflow in '{node.op}'") from exc
        except ValueError as exc:
            raise ExprEvalError(f"domain error in '{node.op}': {exc}") from exc
    if isinstance(node, Call):
        arg = _eval(node.arg, env)
        if node.func == "sqrt" and arg < 0.0:
            raise ExprEvalError("sqrt of a negative number")
        try:
            return _FUNCTIONS[node.func](arg)
        except (ValueError, OverflowError) as exc:
            raise ExprEvalError(f"domain error in {node.func}(): {exc}") from exc
    raise TypeError(f"not an expression node: {node!r}")


def to_callable(node: Expr, variables: tuple[str, ...] = ("x",)):
    """Compile to a numpy-aware function of the given positional variables.

    The result accepts scalars or arrays and raises ExprEvalError if any
    element of the result is non-finite.
    """
    import numpy as np

    funcs = {
        "sin": np.sin,
        "cos": np.cos,
        "sinh": np.sinh,
        "cosh": np.cosh,
        "exp": np.exp,
        "sqrt": np.sqrt,
        "abs": np.abs,
    }

    def build(n):
        if isinstance(n, Num):
            return lambda env: n.value
        if isinstance(n, Const):
            c = _CONSTANTS[n.name]
            return lambda env: c
        if isinstance(n, Var):
            if n.name not in variables:
                raise ExprEvalError(f"unbound variable {n.name!r}")
            return lambda env: env[n.name]
        if isinstance(n, Unary):
            inner = build(n.operand)
            return lambda env: -inner(env)
        if isinstance(n, Bin):
            left, right = build(n.left), build(n.right)
            op = n.op
            if op == "+":
                return lambda env: left(env) + right(env)
            if op == "-":
                return lambda env: left(env) - right(env)
            if op == "*":
                return lambda env: left(env) * right(env)
            if op == "/":
                return lambda env: left(env) / right(env)
            return lambda env: np.power(left(env), right(env))
        if isinstance(n, Call):
            inner = build(n.arg)
            fn = funcs[n.func]
            return lambda env: fn(inner(env))
        raise TypeError(f"not an expression node: {n!r}")

    compiled = build(node)

    def call(*args):
        if len(args) != len(variables):
            raise ExprEvalError(f"expected {len(variables)} argument(s): {variables}")
        env = dict(zip(variables, args))
        with np.errstate(all="ignore"):
            out = compiled(env)
        arr = np.asarray(out, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ExprEvalError("evaluation produced a non-finite value")
        if arr.shape == ():
            return float(arr)
        # broadcast plain constants up to the input shape
        shapes = [np.shape(a) for a in args if np.shape(a) != ()]
        if shapes and arr.shape != shapes[0]:
            arr = np.broadcast_to(arr, shapes[0]).copy()
        return arr

    return call


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "unary": 3, "^": 4}


def to_str(node: Expr) -> str:
    """Canonical printing; parsing it back yields a structurally equal tree."""

    def render(n, parent_prec: int, right_side: bool = False) -> str:
        if isinstance(n, Num):
            return repr(n.value)
        if isinstance(n, (Const, Var)):
            return n.name
        if isinstance(n, Call):
            return f"{n.func}({render(n.arg, 0)})"
        if isinstance(n, Unary):
            inner = render(n.operand, _PRECEDENCE["unary"])
            s = f"-{inner}"
            return f"({s})" if parent_prec > _PRECEDENCE["unary"] else s
        prec = _PRECEDENCE[n.op]
        if n.op == "^":
            # base must parse as an atom; exponent may be any unary chain
            left = render(n.left, 5)
            right = render(n.right, _PRECEDENCE["unary"])
            s = f"{left}^{right}"
        else:
            left = render(n.left, prec)
            right = render(n.right, prec + 1, right_side=True)
            s = f"{left}{n.op}{right}"
        return f"({s})" if parent_prec > prec or (right_side and parent_prec == prec) else s

    return render(node, 0)
