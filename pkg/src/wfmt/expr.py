"""Expression trees for guards and assignment right-hand sides.

The language is a small OCL-flavored subset: integer, string and boolean
literals, dotted variable paths, ``not`` and unary minus, the binary
operators ``and or = <> < <= > >= + - * /`` and the collection calls
``size``, ``notEmpty`` and ``isEmpty``.  Precedence, loosest binding
first::

    or  <  and  <  not  <  comparison  <  additive  <  multiplicative  <  unary

``print_expr`` emits a fully parenthesized form; ``parse_expr`` applied to
that form reproduces the original tree.
"""

from __future__ import annotations

from dataclasses import dataclass


class ExprSyntaxError(ValueError):
    """Raised on malformed expression text; carries the 1-based column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: int | str | bool


@dataclass(frozen=True)
class Var(Expr):
    path: tuple[str, ...]  # name plus field accesses, e.g. ("order", "total")


@dataclass(frozen=True)
class Unary(Expr):
    op: str  # "not" or "-"
    operand: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    func: str  # "size", "notEmpty" or "isEmpty"
    arg: Expr


_KEYWORDS = {"and", "or", "not", "true", "false"}
_FUNCS = {"size", "notEmpty", "isEmpty"}
_COMPARE_OPS = {"=", "<>", "<", "<=", ">", ">="}
_ESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT NUM STR OP END
    text: str
    column: int
    value: object = None


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        col = i + 1
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("NUM", text[i:j], col, int(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], col))
            i = j
            continue
        if ch in "\"'":
            quote = ch
            j = i + 1
            out: list[str] = []
            while j < n and text[j] != quote:
                if text[j] == "\\":
                    if j + 1 >= n or text[j + 1] not in _ESCAPES:
                        raise ExprSyntaxError("bad escape in string literal", j + 1)
                    out.append(_ESCAPES[text[j + 1]])
                    j += 2
                else:
                    out.append(text[j])
                    j += 1
            if j >= n:
                raise ExprSyntaxError("unterminated string literal", col)
            tokens.append(_Token("STR", text[i : j + 1], col, "".join(out)))
            i = j + 1
            continue
        if text.startswith("<=", i) or text.startswith(">=", i) or text.startswith("<>", i):
            tokens.append(_Token("OP", text[i : i + 2], col))
            i += 2
            continue
        if ch in "=<>+-*/().":
            tokens.append(_Token("OP", ch, col))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", col)
    tokens.append(_Token("END", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str) -> ExprSyntaxError:
        return ExprSyntaxError(message, self.peek().column)

    def accept_op(self, *ops: str) -> _Token | None:
        tok = self.peek()
        if tok.kind == "OP" and tok.text in ops:
            return self.next()
        return None

    def accept_ident(self, *names: str) -> _Token | None:
        tok = self.peek()
        if tok.kind == "IDENT" and tok.text in names:
            return self.next()
        return None

    def parse(self) -> Expr:
        expr = self.or_expr()
        if self.peek().kind != "END":
            raise self.fail(f"unexpected {self.peek().text!r}")
        return expr

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.accept_ident("or"):
            left = Binary("or", left, self.and_expr())
        return left

    def and_expr(self) -> Expr:
        left = self.not_expr()
        while self.accept_ident("and"):
            left = Binary("and", left, self.not_expr())
        return left

    def not_expr(self) -> Expr:
        if self.accept_ident("not"):
            return Unary("not", self.not_expr())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        tok = self.peek()
        if tok.kind == "OP" and tok.text in _COMPARE_OPS:
            self.next()
            return Binary(tok.text, left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.multiplicative()
        while True:
            tok = self.accept_op("+", "-")
            if tok is None:
                return left
            left = Binary(tok.text, left, self.multiplicative())

    def multiplicative(self) -> Expr:
        left = self.unary()
        while True:
            tok = self.accept_op("*", "/")
            if tok is None:
                return left
            left = Binary(tok.text, left, self.unary())

    def unary(self) -> Expr:
        if self.accept_op("-"):
            return Unary("-", self.unary())
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NUM":
            self.next()
            return Lit(tok.value)
        if tok.kind == "STR":
            self.next()
            return Lit(tok.value)
        if tok.kind == "OP" and tok.text == "(":
            self.next()
            inner = self.or_expr()
            if not self.accept_op(")"):
                raise self.fail("expected ')'")
            return inner
        if tok.kind == "IDENT":
            if tok.text == "true":
                self.next()
                return Lit(True)
            if tok.text == "false":
                self.next()
                return Lit(False)
            if tok.text in _KEYWORDS:
                raise self.fail(f"unexpected keyword {tok.text!r}")
            self.next()
            if self.peek().kind == "OP" and self.peek().text == "(":
                if tok.text not in _FUNCS:
                    raise self.fail(f"unknown function {tok.text!r}")
                self.next()
                arg = self.or_expr()
                if not self.accept_op(")"):
                    raise self.fail("expected ')'")
                return Call(tok.text, arg)
            path = [tok.text]
            while self.accept_op("."):
                part = self.peek()
                if part.kind != "IDENT" or part.text in _KEYWORDS:
                    raise self.fail("expected field name after '.'")
                self.next()
                path.append(part.text)
            return Var(tuple(path))
        raise self.fail(f"unexpected {tok.text!r}" if tok.text else "unexpected end of input")


def parse_expr(text: str) -> Expr:
    """Parse expression text. Raises :class:`ExprSyntaxError` with a column."""
    if not text.strip():
        raise ExprSyntaxError("empty expression", 1)
    return _Parser(_tokenize(text)).parse()


def _quote(value: str) -> str:
    out = value.replace("\\", "\\\\").replace('"', '\\"')
    out = out.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def print_expr(expr: Expr) -> str:
    """Emit the fully parenthesized text form of an expression tree."""
    if isinstance(expr, Lit):
        if isinstance(expr.value, bool):
            return "true" if expr.value else "false"
        if isinstance(expr.value, int):
            return str(expr.value)
        return _quote(expr.value)
    if isinstance(expr, Var):
        return ".".join(expr.path)
    if isinstance(expr, Unary):
        if expr.op == "not":
            return f"(not {print_expr(expr.operand)})"
        return f"(-{print_expr(expr.operand)})"
    if isinstance(expr, Binary):
        return f"({print_expr(expr.left)} {expr.op} {print_expr(expr.right)})"
    if isinstance(expr, Call):
        return f"{expr.func}({print_expr(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")


def expr_variables(expr: Expr) -> set[str]:
    """Root names of all variable paths referenced by the expression."""
    names: set[str] = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.path[0])
        elif isinstance(node, Unary):
            stack.append(node.operand)
        elif isinstance(node, Binary):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Call):
            stack.append(node.arg)
    return names
