"""Expression parser for algebra elements.

Grammar::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' exponent]
    exponent := ['-'] int | '(' ['-'] int '/' int ')'
    atom   := symbol | int | 'q' | '(' expr ')'

Symbols are a, a*, c, c*, b, d, b+, b-, b0, x1, x0, x-1 (elements of the
quantum group) and t, t* (the circle).  A postfix '*' after a, c or t, and a
postfix '+' or '-' after b, belong to the symbol only when the next
non-blank character cannot start a factor; so ``a*c`` is a times c while
``a* * c`` is a* times c, and ``b+c`` is b plus c.  Division is only by
scalars; fractional exponents only apply to q.
"""

from fractions import Fraction

from .scalars import QScalar, ONE, q_pow
from . import qalgebra as qa
from .qalgebra import Element, CircleElement


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(message + where)


class UnknownSymbol(ParseError):
    pass


ALGEBRA_SYMBOLS = ("a", "a*", "c", "c*", "b", "d", "b+", "b-", "b0", "x1",
                   "x0", "x-1")
CIRCLE_SYMBOLS = ("t", "t*")


# ---------------------------------------------------------------------------
# AST

class Node:
    pass


class Num(Node):
    def __init__(self, value):
        self.value = Fraction(value)

    def __repr__(self):
        return f"Num({self.value})"


class QSym(Node):
    def __repr__(self):
        return "Q"


class Sym(Node):
    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return f"Sym({self.name})"


class Power(Node):
    def __init__(self, base, exp):
        self.base = base
        self.exp = Fraction(exp)

    def __repr__(self):
        return f"Power({self.base!r}, {self.exp})"


class Product(Node):
    """factors: list of (op, node) with op '*' or '/'."""

    def __init__(self, factors):
        self.factors = factors

    def __repr__(self):
        return f"Product({self.factors!r})"


class Sum(Node):
    """terms: list of (sign, node) with sign +1 or -1."""

    def __init__(self, terms):
        self.terms = terms

    def __repr__(self):
        return f"Sum({self.terms!r})"


# ---------------------------------------------------------------------------
# parsing

def _starts_factor(ch):
    return ch.isalnum() or ch == "("


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        raise ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def next_nonblank(self, i):
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        return self.text[i] if i < len(self.text) else ""

    def eat(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        node = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        elif self.peek() == "+":
            self.pos += 1
        terms.append((sign, self.term()))
        while self.peek() in ("+", "-") and self.peek():
            sign = 1 if self.peek() == "+" else -1
            self.pos += 1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 \
            else Sum(terms)

    def term(self):
        factors = [("*", self.factor())]
        while self.peek() in ("*", "/") and self.peek():
            op = self.peek()
            self.pos += 1
            factors.append((op, self.factor()))
        return factors[0][1] if len(factors) == 1 else Product(factors)

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = Power(base, self.exponent())
        return base

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def exponent(self):
        if self.peek() == "(":
            self.pos += 1
            sign = 1
            if self.peek() == "-":
                self.pos += 1
                sign = -1
            num = self.integer()
            den = 1
            if self.peek() == "/":
                self.pos += 1
                den = self.integer()
                if den == 0:
                    self.error("zero denominator in exponent")
            self.eat(")")
            return Fraction(sign * num, den)
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        return Fraction(sign * self.integer())

    def atom(self):
        ch = self.peek()
        if not ch:
            self.error("unexpected end of input")
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.eat(")")
            return node
        if ch.isdigit():
            return Num(self.integer())
        if ch.isalpha():
            return self.symbol()
        self.error(f"unexpected {ch!r}")

    def symbol(self):
        start = self.pos
        t = self.text
        i = self.pos
        while i < len(t) and t[i].isalnum():
            i += 1
        word = t[start:i]
        if word == "x" and t[i:i + 2] == "-1":
            word, i = "x-1", i + 2
        elif word in ("a", "c", "t") and i < len(t) and t[i] == "*" \
                and not _starts_factor(self.next_nonblank(i + 1)):
            word, i = word + "*", i + 1
        elif word == "b" and i < len(t) and t[i] in "+-" \
                and not _starts_factor(self.next_nonblank(i + 1)):
            word, i = word + t[i], i + 1
        self.pos = i
        if word == "q":
            return QSym()
        if word in ALGEBRA_SYMBOLS or word in CIRCLE_SYMBOLS:
            return Sym(word)
        raise UnknownSymbol(f"unknown symbol {word!r}", start)


def parse_ast(text):
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# lowering

def _symbols(node, out):
    if isinstance(node, Sym):
        out.add(node.name)
    elif isinstance(node, Power):
        _symbols(node.base, out)
    elif isinstance(node, Product):
        for _, f in node.factors:
            _symbols(f, out)
    elif isinstance(node, Sum):
        for _, f in node.terms:
            _symbols(f, out)
    return out


def _lower(node, kind):
    """kind: 'element', 'circle' or 'scalar'."""
    if isinstance(node, Num):
        return QScalar.from_rational(node.value)
    if isinstance(node, QSym):
        return q_pow(1)
    if isinstance(node, Sym):
        if node.name == "t":
            return CircleElement({1: ONE})
        if node.name == "t*":
            return CircleElement({-1: ONE})
        return qa.generator(node.name)
    if isinstance(node, Power):
        base = _lower(node.base, kind)
        e = node.exp
        if isinstance(node.base, QSym):
            return q_pow(e)
        if e.denominator != 1:
            raise ParseError("fractional exponents apply only to q")
        e = int(e)
        if isinstance(base, QScalar):
            return base ** e
        if isinstance(base, CircleElement) and len(base.terms) == 1 \
                and e < 0:
            (k, c), = base.terms.items()
            return CircleElement({k * e: c ** e})
        if e < 0:
            raise ParseError("negative powers of algebra elements")
        out = qa.one() if isinstance(base, Element) else \
            CircleElement({0: ONE})
        for _ in range(e):
            out = out * base
        return out
    if isinstance(node, Product):
        acc = None
        for op, f in node.factors:
            val = _lower(f, kind)
            if acc is None:
                acc = val
            elif op == "*":
                acc = _times(acc, val)
            else:
                if not isinstance(val, QScalar):
                    raise ParseError("division is only by scalars")
                if not val:
                    raise ParseError("division by zero")
                acc = _times(acc, val.inverse())
        return acc
    if isinstance(node, Sum):
        acc = None
        for sign, f in node.terms:
            val = _lower(f, kind)
            if sign < 0:
                val = -val
            acc = val if acc is None else _plus(acc, val)
        return acc
    raise TypeError(node)


def _times(x, y):
    if isinstance(x, QScalar) and not isinstance(y, QScalar):
        return y.scale(x) if isinstance(y, Element) else y * x
    if isinstance(y, QScalar) and isinstance(x, Element):
        return x.scale(y)
    return x * y


def _plus(x, y):
    if isinstance(x, QScalar) and isinstance(y, Element):
        return qa.as_element(x) + y
    if isinstance(x, QScalar) and isinstance(y, CircleElement):
        return y + x
    return x + y


def lower(node):
    syms = _symbols(node, set())
    alg = syms & set(ALGEBRA_SYMBOLS)
    circ = syms & set(CIRCLE_SYMBOLS)
    if alg and circ:
        raise ParseError("cannot mix circle symbols with algebra symbols")
    kind = "circle" if circ else "element"
    val = _lower(node, kind)
    if isinstance(val, QScalar):
        return CircleElement({0: val}) if circ else qa.as_element(val)
    return val


def parse(text):
    """Parse text into an Element (or CircleElement for t, t*) in normal
    form."""
    return lower(parse_ast(text))


def parse_scalar(text):
    """Parse text that must denote a scalar of Q(s)."""
    val = parse(text)
    if isinstance(val, Element) and val.is_scalar():
        return val.scalar_part()
    if isinstance(val, CircleElement) and set(val.terms) <= {0}:
        return val.terms.get(0, QScalar())
    raise ParseError(f"{text!r} is not a scalar")


def render(x):
    if isinstance(x, CircleElement):
        return qa.render_circle(x)
    return qa.render(x)
