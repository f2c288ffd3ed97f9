"""
Multivariate polynomial module
Sparse polynomials over any field descriptor, monomial orders, formal partial
derivatives, evaluation and the polynomial text syntax
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from exact_arith import FieldElement, render_terms
from errors import IncompatibleContext, ParseError, UnknownVariable


@dataclass(frozen=True)
class MonomialOrder:
    """lex or grevlex over the ring's variable order"""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order '{self.kind}'")

    def key(self, exps):
        if self.kind == "lex":
            return exps
        return (sum(exps),) + tuple(-e for e in reversed(exps))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def order_named(name):
    return MonomialOrder(name)


def monomial_divides(a, b):
    """True when monomial a divides monomial b"""
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolyRing:
    """Ring context: ordered variable names, coefficient field, default order"""

    variables: tuple
    field: object
    order: MonomialOrder = GREVLEX

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariable(name, self.variables) from None

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(self.field.one())

    def constant(self, c):
        if not isinstance(c, FieldElement):
            c = self.field.from_rational(c)
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, c=None):
        c = self.field.one() if c is None else c
        return Polynomial(self, {tuple(exps): c})

    def variable(self, name):
        i = name if isinstance(name, int) else self.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def gens(self):
        return [self.variable(i) for i in range(self.nvars)]

    def parse(self, text, line=None, column=1):
        return parse_polynomial(text, self, line, column)

    def __str__(self):
        return f"{self.field}[{', '.join(self.variables)}]"


class Polynomial:
    """Finite map exponent tuple -> nonzero FieldElement within a PolyRing"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    def _check(self, other):
        if other.ring is not self.ring and other.ring != self.ring:
            raise IncompatibleContext(f"polynomials from {self.ring} and {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            out[m] = c if v is None else v + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, FieldElement) or isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = self.ring.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c):
        if not isinstance(c, FieldElement):
            c = self.ring.field.from_rational(c)
        return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, exps, c=None):
        return Polynomial(
            self.ring,
            {monomial_mul(m, exps): (v if c is None else v * c) for m, v in self.terms.items()},
        )

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def is_one(self):
        return self.is_constant() and self.constant_coefficient().is_one()

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None):
        if self.is_zero():
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    def partial_derivative(self, v):
        """Formal derivative; exponents divisible by the characteristic vanish"""
        i = v if isinstance(v, int) else self.ring.index(v)
        field = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                out[m[:i] + (m[i] - 1,) + m[i + 1:]] = c * field.from_int(m[i])
        return Polynomial(self.ring, out)

    def gradient(self):
        return [self.partial_derivative(i) for i in range(self.ring.nvars)]

    def evaluate(self, at, embed=None):
        """Value at a ResolvedPoint, or at a sequence of values with a coefficient embedding"""
        if hasattr(at, "evaluate"):
            return at.evaluate(self)
        return evaluate_terms(self, list(at), embed)

    def substitute(self, images, embed=None):
        """Replace variable i by images[i] (polynomials of one target ring)"""
        if len(images) != self.ring.nvars:
            raise IncompatibleContext("one image per variable is required")
        if not images:
            raise IncompatibleContext("no target ring for an empty substitution")
        target = images[0].ring
        embed = embed or _default_embed(self.ring.field, target.field)
        result = target.zero()
        for m, c in self.terms.items():
            term = target.constant(embed(c))
            for img, e in zip(images, m):
                if e:
                    term = term * img ** e
            result = result + term
        return result

    def map_coefficients(self, ring, fn):
        """Same exponents in another ring (same variable count) with mapped coefficients"""
        if ring.nvars != self.ring.nvars:
            raise IncompatibleContext(f"{ring} and {self.ring} have different variables")
        return Polynomial(ring, {m: fn(c) for m, c in self.terms.items()})

    def exact_quotient(self, divisor):
        """self / divisor when the division is exact in the ring, else None"""
        self._check(divisor)
        order = self.ring.order
        lm = divisor.leading_monomial(order)
        inv = divisor.terms[lm].inverse()
        remainder = self
        quotient = {}
        while not remainder.is_zero():
            m = remainder.leading_monomial(order)
            if not monomial_divides(lm, m):
                return None
            shift = monomial_div(m, lm)
            c = remainder.terms[m] * inv
            quotient[shift] = c
            remainder = remainder - divisor.mul_monomial(shift, c)
        return Polynomial(self.ring, quotient)

    def univariate_gcd(self, other):
        """Monic gcd in a one-variable ring"""
        if self.ring.nvars != 1:
            raise IncompatibleContext("univariate gcd needs a ring in one variable")
        a, b = self, other
        while not b.is_zero():
            a, b = b, _univariate_remainder(a, b)
        return a.monic()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring is not self.ring and other.ring != self.ring:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, hash(c)) for m, c in self.terms.items()))

    def __str__(self):
        pairs = [(m, str(c)) for m, c in self.sorted_terms()]
        return render_terms(pairs, self.ring.variables)

    def __repr__(self):
        return f"Polynomial({self})"


def _default_embed(source, target):
    if source == target:
        return lambda c: c
    return target.from_base


def _univariate_remainder(a, b):
    lm = b.leading_monomial()
    inv = b.terms[lm].inverse()
    while not a.is_zero() and monomial_divides(lm, a.leading_monomial()):
        m = a.leading_monomial()
        shift = monomial_div(m, lm)
        a = a - b.mul_monomial(shift, a.terms[m] * inv)
    return a


def evaluate_terms(p, values, embed=None):
    """Sum of embed(c) * prod(values[i]^e) with cached powers"""
    if len(values) != p.ring.nvars:
        raise IncompatibleContext(f"{len(values)} values for {p.ring.nvars} variables")
    embed = embed or (lambda c: c)
    powers = [{0: None, 1: v} for v in values]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[e] = power(i, e - 1) * values[i]
        return cache[e]

    total = None
    for m, c in p.terms.items():
        term = embed(c)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = term if total is None else total + term
    if total is None:
        return embed(p.ring.field.zero())
    return total


_TOKEN = re.compile(r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text, line, column):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character '{text[bad]}'", line, column + bad)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), column + start))
        pos = match.end()
    tokens.append(("end", "", column + len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, line, column):
        self.ring = ring
        self.line = line
        self.tokens = _tokenize(text, line, column)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message, token=None):
        token = token or self.peek()
        return ParseError(message, self.line, token[2])

    def expect(self, op):
        token = self.take()
        if token[1] != op:
            raise self.error(f"expected '{op}'", token)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        result = self.expression()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected '{self.peek()[1]}'")
        return result

    def expression(self):
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self):
        result = self.power()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.power()
            elif kind in ("number", "name") or (kind == "op" and value == "("):
                result = result * self.power()
            else:
                return result

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            token = self.take()
            if token[0] != "number":
                raise self.error("exponent must be a nonnegative integer", token)
            base = base ** int(token[1])
        return base

    def atom(self):
        token = self.take()
        kind, value, _ = token
        if kind == "number":
            q = Fraction(int(value))
            if self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                den = self.take()
                if den[0] != "number":
                    raise self.error("expected an integer denominator", den)
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                q = Fraction(int(value), int(den[1]))
            try:
                return self.ring.constant(self.ring.field.from_rational(q))
            except ValueError as exc:
                raise self.error(str(exc), token) from None
        if kind == "name":
            return self.ring.variable(self.ring.index(value))
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect(")")
            return inner
        if kind == "end":
            raise self.error("unexpected end of polynomial", token)
        raise self.error(f"unexpected '{value}'", token)


def parse_polynomial(text, ring, line=None, column=1):
    """Parse the polynomial text syntax (identifiers, ^, optional *, integers, a/b)"""
    return _Parser(text, ring, line, column).parse()
