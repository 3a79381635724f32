"""Expression language for surface and metric definitions.

Grammar (infix, standard precedence, ``^`` binds tightest and is
right-associative)::

    expr    := term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := '-' factor | power
    power   := atom ('^' factor)?
    atom    := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Identifiers are declared chart variables (``u, v`` or ``x1, x2, x3``),
declared parameters, or the built-in constants ``pi`` and ``e``.  Only
smooth functions are admitted: ``sin cos tan exp log sqrt``.  Non-smooth
names (``abs``, ``sign``, ``floor``, ...) are rejected at parse time.

Exponents of ``^`` may not contain chart variables; they are evaluated
with the parameter bindings and must come out integer.  This keeps
smoothness auditable while letting families like ``u^k`` sweep an
integer parameter ``k`` without re-parsing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import EvaluationError, ExpressionError, JetOrderError
from .jets import MAX_JET_ORDER, Jet

SMOOTH_FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
NON_SMOOTH_FUNCTIONS = ("abs", "sign", "sgn", "floor", "ceil", "round",
                        "mod", "fmod", "min", "max", "heaviside", "step")
CONSTANTS = {"pi": math.pi, "e": math.e}


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float
    pos: int = 0


@dataclass(frozen=True)
class Ident:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Unary:
    op: str
    x: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"
    pos: int = 0


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"
    pos: int = 0


Node = Union[Num, Ident, Unary, Bin, Call]


# -- tokenizer ---------------------------------------------------------------

_OPS = set("+-*/^(),")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    """Return (kind, lexeme, pos) triples; kind in {num, ident, op, end}."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_e = False
            while j < n:
                c = text[j]
                if c.isdigit() or c == ".":
                    j += 1
                elif c in "eE" and not seen_e and j + 1 < n and (
                        text[j + 1].isdigit() or text[j + 1] in "+-"):
                    seen_e = True
                    j += 2 if text[j + 1] in "+-" else 1
                else:
                    break
            lex = text[i:j]
            try:
                float(lex)
            except ValueError:
                raise ExpressionError(f"malformed number '{lex}'", i)
            toks.append(("num", lex, i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
        elif ch in _OPS:
            toks.append(("op", ch, i))
            i += 1
        else:
            raise ExpressionError(f"unexpected character '{ch}'", i)
    toks.append(("end", "", n))
    return toks


# -- parser -------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, variables: Sequence[str], params: Sequence[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.variables = tuple(variables)
        self.params = tuple(params)

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_op(self, op: str):
        kind, lex, pos = self.next()
        if kind != "op" or lex != op:
            raise ExpressionError(f"expected '{op}', found '{lex or 'end of input'}'", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, lex, pos = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected trailing input '{lex}'", pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, lex, pos = self.peek()
            if kind == "op" and lex in "+-":
                self.next()
                node = Bin(lex, node, self.term(), pos)
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, lex, pos = self.peek()
            if kind == "op" and lex in "*/":
                self.next()
                node = Bin(lex, node, self.factor(), pos)
            else:
                return node

    def factor(self) -> Node:
        kind, lex, pos = self.peek()
        if kind == "op" and lex == "-":
            self.next()
            return Unary("-", self.factor(), pos)
        if kind == "op" and lex == "+":
            self.next()
            return self.factor()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        kind, lex, pos = self.peek()
        if kind == "op" and lex == "^":
            self.next()
            exponent = self.factor()  # right-associative, allows -2 etc.
            self._check_exponent(exponent, pos)
            return Bin("^", base, exponent, pos)
        return base

    def atom(self) -> Node:
        kind, lex, pos = self.next()
        if kind == "num":
            return Num(float(lex), pos)
        if kind == "op" and lex == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "ident":
            nkind, nlex, _ = self.peek()
            if nkind == "op" and nlex == "(":
                self.next()
                arg = self.expr()
                self.expect_op(")")
                if lex in NON_SMOOTH_FUNCTIONS:
                    raise ExpressionError(f"non-smooth function '{lex}' is not allowed", pos)
                if lex not in SMOOTH_FUNCTIONS:
                    raise ExpressionError(f"unknown function '{lex}'", pos)
                return Call(lex, arg, pos)
            if lex in self.variables or lex in self.params or lex in CONSTANTS:
                return Ident(lex, pos)
            raise ExpressionError(f"unknown identifier '{lex}'", pos)
        raise ExpressionError(f"unexpected '{lex or 'end of input'}'", pos)

    def _check_exponent(self, node: Node, pos: int):
        """Exponents may reference parameters and constants but no chart variables."""
        for ident in _idents(node):
            if ident in self.variables:
                raise ExpressionError(
                    "exponent of '^' may not contain chart variables", pos)


def _idents(node: Node):
    if isinstance(node, Ident):
        yield node.name
    elif isinstance(node, Unary):
        yield from _idents(node.x)
    elif isinstance(node, Bin):
        yield from _idents(node.left)
        yield from _idents(node.right)
    elif isinstance(node, Call):
        yield from _idents(node.arg)


# -- public expression object --------------------------------------------------

@dataclass(frozen=True)
class Expression:
    """A parsed expression over a fixed variable tuple."""

    text: str
    ast: Node
    variables: Tuple[str, ...]
    params: Tuple[str, ...]

    def __repr__(self):
        return f"Expression({self.text!r})"


def parse_expression(text: str, variables: Sequence[str],
                     params: Sequence[str] = ()) -> Expression:
    if not isinstance(text, str):
        raise ExpressionError(f"expected an expression string, got {type(text).__name__}")
    ast = _Parser(text, variables, params).parse()
    return Expression(text, ast, tuple(variables), tuple(params))


def _eval_const(node: Node, params: Dict[str, float]) -> float:
    """Evaluate a variable-free subtree to a plain float."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Ident):
        if node.name in CONSTANTS:
            return CONSTANTS[node.name]
        if node.name in params:
            return float(params[node.name])
        raise EvaluationError(f"parameter '{node.name}' is not bound")
    if isinstance(node, Unary):
        return -_eval_const(node.x, params)
    if isinstance(node, Bin):
        a = _eval_const(node.left, params)
        b = _eval_const(node.right, params)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
        if node.op == "^":
            return a ** b
    if isinstance(node, Call):
        return getattr(math, node.fn)(_eval_const(node.arg, params))
    raise EvaluationError("unexpected node in constant subtree")


def _eval_node(node: Node, env: Dict[str, Jet], params: Dict[str, float],
               nvars: int, order: int) -> Jet:
    if isinstance(node, Num):
        return Jet.constant(node.value, nvars, order)
    if isinstance(node, Ident):
        if node.name in env:
            return env[node.name]
        if node.name in CONSTANTS:
            return Jet.constant(CONSTANTS[node.name], nvars, order)
        if node.name in params:
            return Jet.constant(float(params[node.name]), nvars, order)
        raise EvaluationError(f"parameter '{node.name}' is not bound")
    if isinstance(node, Unary):
        return -_eval_node(node.x, env, params, nvars, order)
    if isinstance(node, Bin):
        if node.op == "^":
            e = _eval_const(node.right, params)
            n = round(e)
            if abs(e - n) > 1e-12:
                raise EvaluationError(
                    f"exponent must be an integer, got {e!r}; use sqrt() for half powers")
            base = _eval_node(node.left, env, params, nvars, order)
            return base.pow_int(int(n))
        a = _eval_node(node.left, env, params, nvars, order)
        b = _eval_node(node.right, env, params, nvars, order)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
    if isinstance(node, Call):
        arg = _eval_node(node.arg, env, params, nvars, order)
        return getattr(arg, node.fn)()
    raise EvaluationError("unexpected AST node")


def evaluate_jet(expr: Expression, base: Sequence[float], order: int,
                 params: Optional[Dict[str, float]] = None,
                 max_order: int = None) -> Jet:
    """Evaluate an expression as a Taylor jet at ``base``.

    The jet coefficients equal the Taylor coefficients of the expression
    at the given point through the requested order.  Evaluation is
    deterministic and pure.
    """
    limit = MAX_JET_ORDER if max_order is None else max_order
    if order < 0:
        raise JetOrderError(f"invalid jet order {order}")
    if order > limit:
        raise JetOrderError(f"jet order {order} exceeds configured maximum {limit}")
    params = dict(params or {})
    nvars = len(expr.variables)
    if len(base) != nvars:
        raise EvaluationError(f"expected {nvars} base coordinates, got {len(base)}")
    env = {name: Jet.variable(i, base[i], nvars, order)
           for i, name in enumerate(expr.variables)}
    return _eval_node(expr.ast, env, params, nvars, order)


def evaluate_with_env(expr: Expression, env: Dict[str, Jet],
                      params: Optional[Dict[str, float]] = None) -> Jet:
    """Evaluate with explicit variable-to-jet bindings (composition)."""
    params = dict(params or {})
    some = next(iter(env.values()))
    return _eval_node(expr.ast, env, params, some.nvars, some.order)


def substitute(expr: Expression, mapping: Dict[str, Expression]) -> Expression:
    """Replace variables by expressions (used for reparametrization tests).

    The replacement expressions must all share one variable tuple, which
    becomes the variable tuple of the result.
    """
    new_vars = None
    for rep in mapping.values():
        if new_vars is None:
            new_vars = rep.variables
        elif rep.variables != new_vars:
            raise ExpressionError("substitution expressions must share variables")
    if new_vars is None:
        new_vars = expr.variables

    def rec(node: Node) -> Node:
        if isinstance(node, Ident) and node.name in mapping:
            return mapping[node.name].ast
        if isinstance(node, Unary):
            return Unary(node.op, rec(node.x), node.pos)
        if isinstance(node, Bin):
            return Bin(node.op, rec(node.left), rec(node.right), node.pos)
        if isinstance(node, Call):
            return Call(node.fn, rec(node.arg), node.pos)
        return node

    params = tuple(dict.fromkeys(expr.params + tuple(
        p for rep in mapping.values() for p in rep.params)))
    new_ast = rec(expr.ast)
    return Expression(f"subst({expr.text})", new_ast, new_vars, params)
