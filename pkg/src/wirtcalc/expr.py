"""Expression language over z and z*: AST, parser, printer, jet evaluation.

Grammar (whitespace insignificant, ASCII only)::

    expr    := term (('+' | '-') term)*           left associative
    term    := unary (('*' | '/') unary)*         left associative
    unary   := '-' unary | power
    power   := atom ('^' unary)?                  right associative
    atom    := NUMBER | NUMBER 'i' | 'i' | 'z' | 'zc'
             | NAME '(' expr ')' | '(' expr ')'

so unary minus binds looser than '^' (``-z^2`` is ``-(z^2)``) and tighter
than '*' and '/'.  Exponents must reduce to plain integers with |k| <= 64.
``zc`` is shorthand for ``conj(z)``; ``i`` is a reserved literal.  Function
names: exp log sin cos sqrt conj re im abs abs2 arg.

The parser folds constants in exactly three places so that the printer's
canonical output re-parses to a structurally identical tree: a unary minus
in front of a literal, the two-token complex literal ``a+bi``, and a power
with constant base.  Build ``Const(-5)`` rather than ``Neg(Const(5))`` when
constructing trees by hand, for the same reason.

ASTs are immutable; parsing, printing and evaluation are pure functions.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from . import forward as fw
from . import second as so
from .errors import (ArityError, DomainError, ExprSyntaxError, PoleError,
                     UnknownIdentifier)
from .forward import PRIMITIVES, WirtingerJet
from .second import SecondOrderJet

MAX_POW = 64
_MAX_DEPTH = 200


class Expr:
    """Base class for AST nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Const(Expr):
    value: complex


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


# --------------------------------------------------------------------------
# tokenizer
# --------------------------------------------------------------------------

_OPS = "+-*/^(),"


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    """Returns (kind, payload, offset) triples; kinds are
    'num', 'imag', 'ident', 'op', 'end'."""
    tokens: list[tuple[str, object, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ord(ch) >= 128:
            raise ExprSyntaxError(f"non-ASCII character {ch!r}",
                                  _byte_offset(text, i))
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            try:
                val = float(text[start:i])
            except ValueError:
                raise ExprSyntaxError("malformed number", start) from None
            # trailing 'i' marks an imaginary literal unless it opens a name
            if (i < n and text[i] == "i"
                    and not (i + 1 < n and (text[i + 1].isalnum()
                                            or text[i + 1] == "_"))):
                i += 1
                tokens.append(("imag", val, start))
            else:
                tokens.append(("num", val, start))
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(("ident", text[start:i], start))
            continue
        if ch in _OPS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, object, int]:
        return self.tokens[self.pos]

    def next(self) -> tuple[str, object, int]:
        tok = self.tokens[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, payload, off = self.peek()
        if kind == "op" and payload == op:
            self.next()
            return
        raise ExprSyntaxError(f"expected {op!r}", off)

    def parse(self) -> Expr:
        e = self.expr(0)
        kind, payload, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {payload!r}", off)
        return e

    def expr(self, depth: int) -> Expr:
        if depth > _MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply",
                                  self.peek()[2])
        left = self.term(depth + 1)
        while True:
            kind, payload, off = self.peek()
            if kind == "op" and payload in "+-":
                self.next()
                right = self.term(depth + 1)
                left = self._make_additive(payload, left, right)
            else:
                return left

    @staticmethod
    def _make_additive(op: str, left: Expr, right: Expr) -> Expr:
        # fold the two-token complex literal `a+bi` / `a-bi`
        if (isinstance(left, Const) and isinstance(right, Const)
                and left.value.imag == 0.0 and right.value.real == 0.0
                and right.value.imag != 0.0):
            return Const(left.value + right.value if op == "+"
                         else left.value - right.value)
        return Add(left, right) if op == "+" else Sub(left, right)

    def term(self, depth: int) -> Expr:
        left = self.unary(depth + 1)
        while True:
            kind, payload, off = self.peek()
            if kind == "op" and payload in "*/":
                self.next()
                right = self.unary(depth + 1)
                left = Mul(left, right) if payload == "*" else Div(left, right)
            else:
                return left

    def unary(self, depth: int) -> Expr:
        if depth > _MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply",
                                  self.peek()[2])
        kind, payload, off = self.peek()
        if kind == "op" and payload == "-":
            self.next()
            inner = self.unary(depth + 1)
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Neg(inner)
        return self.power(depth + 1)

    def power(self, depth: int) -> Expr:
        base = self.atom(depth + 1)
        kind, payload, off = self.peek()
        if kind == "op" and payload == "^":
            self.next()
            exp_expr = self.unary(depth + 1)  # right assoc, allows -k
            k = self._as_int_exponent(exp_expr, off)
            if isinstance(base, Const):
                return Const(base.value ** k)
            return Pow(base, k)
        return base

    @staticmethod
    def _as_int_exponent(e: Expr, off: int) -> int:
        if not isinstance(e, Const):
            raise ExprSyntaxError("exponent must be an integer literal", off)
        w = e.value
        if w.imag != 0.0 or w.real != int(w.real):
            raise ExprSyntaxError("exponent must be an integer", off)
        k = int(w.real)
        if abs(k) > MAX_POW:
            raise ExprSyntaxError(f"exponent magnitude exceeds {MAX_POW}", off)
        return k

    def atom(self, depth: int) -> Expr:
        if depth > _MAX_DEPTH:
            raise ExprSyntaxError("expression nested too deeply",
                                  self.peek()[2])
        kind, payload, off = self.next()
        if kind == "num":
            return Const(complex(payload, 0.0))
        if kind == "imag":
            return Const(complex(0.0, payload))
        if kind == "ident":
            name = payload
            if name == "z":
                return Var()
            if name == "zc":
                return Call("conj", Var())
            if name == "i":
                return Const(1j)
            if name in PRIMITIVES:
                nkind, npayload, noff = self.peek()
                if not (nkind == "op" and npayload == "("):
                    raise ArityError(
                        f"{name} expects exactly one parenthesized argument",
                        noff)
                self.next()
                arg = self.expr(depth + 1)
                ckind, cpayload, coff = self.peek()
                if ckind == "op" and cpayload == ",":
                    raise ArityError(f"{name} takes exactly one argument",
                                     coff)
                self.expect_op(")")
                return Call(name, arg)
            raise UnknownIdentifier(name, off)
        if kind == "op" and payload == "(":
            inner = self.expr(depth + 1)
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ExprSyntaxError("unexpected end of input", off)
        raise ExprSyntaxError(f"unexpected token {payload!r}", off)


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises ExprSyntaxError (with the
    byte offset of the problem), UnknownIdentifier or ArityError."""
    if not text or text.isspace():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# printer
# --------------------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _fmt_float(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        raise ValueError("cannot format a non-finite constant")
    if x == int(x) and abs(x) <= 2 ** 53:
        return str(int(x))
    return repr(x)


def _fmt_const(w: complex) -> tuple[str, int]:
    """Rendering plus the effective precedence of the rendered atom."""
    re_, im_ = w.real, w.imag
    if im_ == 0.0:
        s = _fmt_float(re_)
        return s, (_PREC_UNARY if s.startswith("-") else _PREC_ATOM)
    if re_ == 0.0:
        if im_ == 1.0:
            return "i", _PREC_ATOM
        if im_ == -1.0:
            return "-i", _PREC_UNARY
        s = _fmt_float(im_) + "i"
        return s, (_PREC_UNARY if s.startswith("-") else _PREC_ATOM)
    sign = "+" if im_ > 0 else "-"
    mag = abs(im_)
    imag_part = "i" if mag == 1.0 else _fmt_float(mag) + "i"
    return f"({_fmt_float(re_)}{sign}{imag_part})", _PREC_ATOM


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_UNARY
    if isinstance(e, Pow):
        return _PREC_POW
    if isinstance(e, Const):
        return _fmt_const(e.value)[1]
    return _PREC_ATOM


def _fmt(e: Expr) -> str:
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Const):
        return _fmt_const(e.value)[0]
    if isinstance(e, Call):
        return f"{e.func}({_fmt(e.arg)})"
    if isinstance(e, Neg):
        inner = _fmt(e.operand)
        if _prec(e.operand) < _PREC_UNARY:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Pow):
        base = _fmt(e.base)
        if _prec(e.base) < _PREC_ATOM:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Add):
        return _fmt_binary(e.left, "+", e.right, _PREC_ADD)
    if isinstance(e, Sub):
        return _fmt_binary(e.left, "-", e.right, _PREC_ADD)
    if isinstance(e, Mul):
        return _fmt_binary(e.left, "*", e.right, _PREC_MUL)
    if isinstance(e, Div):
        return _fmt_binary(e.left, "/", e.right, _PREC_MUL)
    raise TypeError(f"not an Expr node: {e!r}")


def _fmt_binary(left: Expr, op: str, right: Expr, prec: int) -> str:
    ls = _fmt(left)
    if _prec(left) < prec:
        ls = f"({ls})"
    rs = _fmt(right)
    if _prec(right) <= prec:  # left-assoc: parenthesize equal-prec right side
        rs = f"({rs})"
    return f"{ls}{op}{rs}"


def format_expr(e: Expr) -> str:
    """Canonical minimal-parentheses rendering; ``parse(format_expr(e))``
    is structurally equal to ``e`` for parser-producible trees."""
    return _fmt(e)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _eval0(e: Expr, c: complex) -> complex:
    if isinstance(e, Var):
        return c
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Add):
        return _eval0(e.left, c) + _eval0(e.right, c)
    if isinstance(e, Sub):
        return _eval0(e.left, c) - _eval0(e.right, c)
    if isinstance(e, Mul):
        return _eval0(e.left, c) * _eval0(e.right, c)
    if isinstance(e, Div):
        num = _eval0(e.left, c)
        den = _eval0(e.right, c)
        if abs(den) <= fw.POLE_FLOOR:
            raise PoleError(f"division by a value at a pole: |value| = {abs(den):.3e}")
        return num / den
    if isinstance(e, Neg):
        return -_eval0(e.operand, c)
    if isinstance(e, Pow):
        v = _eval0(e.base, c)
        if e.exponent < 0 and abs(v) <= fw.POLE_FLOOR:
            raise PoleError(f"negative power at a pole: |value| = {abs(v):.3e}")
        return v ** e.exponent
    if isinstance(e, Call):
        v = _eval0(e.arg, c)
        p = PRIMITIVES[e.func]
        p.check_domain(v, order=0)
        try:
            return p.value(v)
        except (ValueError, OverflowError) as exc:  # cmath domain failures
            raise DomainError(str(exc)) from None
    raise TypeError(f"not an Expr node: {e!r}")


def _eval1(e: Expr, c: complex) -> WirtingerJet:
    if isinstance(e, Var):
        return fw.seed_variable(c)
    if isinstance(e, Const):
        return fw.constant(e.value)
    if isinstance(e, Add):
        return fw.add(_eval1(e.left, c), _eval1(e.right, c))
    if isinstance(e, Sub):
        return fw.sub(_eval1(e.left, c), _eval1(e.right, c))
    if isinstance(e, Mul):
        return fw.mul(_eval1(e.left, c), _eval1(e.right, c))
    if isinstance(e, Div):
        return fw.div(_eval1(e.left, c), _eval1(e.right, c))
    if isinstance(e, Neg):
        return fw.neg(_eval1(e.operand, c))
    if isinstance(e, Pow):
        return fw.power_int(_eval1(e.base, c), e.exponent)
    if isinstance(e, Call):
        return fw.apply_primitive(e.func, _eval1(e.arg, c))
    raise TypeError(f"not an Expr node: {e!r}")


def _eval2(e: Expr, c: complex) -> SecondOrderJet:
    if isinstance(e, Var):
        return so.seed_variable2(c)
    if isinstance(e, Const):
        return so.constant2(e.value)
    if isinstance(e, Add):
        return so.add2(_eval2(e.left, c), _eval2(e.right, c))
    if isinstance(e, Sub):
        return so.sub2(_eval2(e.left, c), _eval2(e.right, c))
    if isinstance(e, Mul):
        return so.mul2(_eval2(e.left, c), _eval2(e.right, c))
    if isinstance(e, Div):
        return so.div2(_eval2(e.left, c), _eval2(e.right, c))
    if isinstance(e, Neg):
        return so.neg2(_eval2(e.operand, c))
    if isinstance(e, Pow):
        return so.power_int2(_eval2(e.base, c), e.exponent)
    if isinstance(e, Call):
        return so.apply_primitive2(e.func, _eval2(e.arg, c))
    raise TypeError(f"not an Expr node: {e!r}")


def eval_jet(e, c: complex, order: int = 1):
    """Evaluate expression ``e`` (AST or text) at the point ``c``.

    order 0 returns the plain complex value, order 1 a WirtingerJet and
    order 2 a SecondOrderJet; the value slot is bitwise identical across
    orders.
    """
    if isinstance(e, str):
        e = parse(e)
    c = complex(c)
    if not cmath.isfinite(c):
        raise DomainError(f"non-finite evaluation point: {c!r}")
    if order == 0:
        return _eval0(e, c)
    if order == 1:
        return _eval1(e, c)
    if order == 2:
        return _eval2(e, c)
    raise ValueError(f"order must be 0, 1 or 2, got {order!r}")


def contains_variable(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Add, Sub, Mul, Div)):
        return contains_variable(e.left) or contains_variable(e.right)
    if isinstance(e, Neg):
        return contains_variable(e.operand)
    if isinstance(e, Pow):
        return contains_variable(e.base)
    if isinstance(e, Call):
        return contains_variable(e.arg)
    return False


def parse_complex(text: str) -> complex:
    """Parse a variable-free expression (``1+2i``, ``-3i``, ``0.5``) into a
    complex number.  Shares the expression grammar."""
    e = parse(text)
    if contains_variable(e):
        raise ExprSyntaxError("expected a constant, found the variable z", 0)
    return _eval0(e, 0j)
