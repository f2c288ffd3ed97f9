"""
Exact arithmetic module
Rationals, prime fields, triangular extension towers and fraction fields of
affine domains, plus the univariate tools built on them: minimal polynomials
and irreducibility checks. No floating point anywhere.
"""

import itertools
import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache, reduce
from math import gcd, isqrt, prod

import linalg
from config import DEFAULT_SEED, KRONECKER_CANDIDATE_LIMIT, TOWER_PRIMITIVE_ATTEMPTS
from errors import (
    IncompatibleContext,
    InvariantViolation,
    NotFiniteOverBase,
    ZeroDivisorWitness,
)

logger = logging.getLogger(__name__)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def render_terms(pairs, names):
    """Render ordered (exponents, coefficient text) pairs in the problem-file syntax"""
    pieces = []
    for exps, text in pairs:
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        atomic = " " not in text
        if not mono:
            term = text if atomic else f"({text})"
        elif text == "1":
            term = mono
        elif text == "-1":
            term = "-" + mono
        elif atomic:
            term = f"{text}*{mono}"
        else:
            term = f"({text})*{mono}"
        pieces.append(term)
    if not pieces:
        return "0"
    out = pieces[0]
    for term in pieces[1:]:
        out += " - " + term[1:] if term.startswith("-") else " + " + term
    return out


class FieldElement:
    """A value tagged with the field it lives in"""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            raise IncompatibleContext(
                f"cannot combine elements of {self.field} and {other.field}"
            )
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        f = self.field
        return FieldElement(f, f._add(self.value, f._neg(other.value)))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        return invert(self)

    def is_zero(self):
        return self.field._is_zero(self.value)

    def is_one(self):
        return self.field._eq(self.value, self.field._one())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            return False
        return self.field._eq(self.value, other.value)

    def __hash__(self):
        return hash((self.field, self.field.key(self.value)))

    def __str__(self):
        return self.field._format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


class Field(ABC):
    """Field descriptor; elements are FieldElements holding raw values"""

    def element(self, value):
        return FieldElement(self, value)

    def zero(self):
        return FieldElement(self, self._zero())

    def one(self):
        return FieldElement(self, self._one())

    def from_int(self, n):
        return self.from_rational(n)

    @abstractmethod
    def from_rational(self, q): ...

    @abstractmethod
    def from_base(self, c): ...

    @property
    @abstractmethod
    def prime_field(self): ...

    @property
    def characteristic(self):
        return self.prime_field.characteristic

    @property
    def size(self):
        return None

    @abstractmethod
    def _zero(self): ...

    @abstractmethod
    def _one(self): ...

    @abstractmethod
    def _add(self, a, b): ...

    @abstractmethod
    def _neg(self, a): ...

    @abstractmethod
    def _mul(self, a, b): ...

    @abstractmethod
    def _inv(self, a): ...

    @abstractmethod
    def _is_zero(self, a): ...

    def _eq(self, a, b):
        return a == b

    @abstractmethod
    def _format(self, a): ...

    def key(self, a):
        return a


@dataclass(frozen=True)
class BaseField(Field):
    """The rationals or a prime field F_p"""

    kind: str
    modulus: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.modulus != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not is_prime(self.modulus):
                raise ValueError(f"{self.modulus} is not a prime")
        else:
            raise ValueError(f"unknown base field kind '{self.kind}'")

    @property
    def is_rational(self):
        return self.kind == "rationals"

    @property
    def prime_field(self):
        return self

    @property
    def characteristic(self):
        return self.modulus

    @property
    def size(self):
        return None if self.is_rational else self.modulus

    def from_rational(self, q):
        q = Fraction(q)
        if self.is_rational:
            return FieldElement(self, q)
        p = self.modulus
        if q.denominator % p == 0:
            raise ValueError(f"denominator {q.denominator} vanishes in F_{p}")
        return FieldElement(self, q.numerator * pow(q.denominator, -1, p) % p)

    def from_base(self, c):
        if isinstance(c, FieldElement):
            if c.field != self:
                raise IncompatibleContext(f"{c.field} is not {self}")
            return c
        return FieldElement(self, c)

    def random_element(self, rng):
        if self.is_rational:
            return FieldElement(self, Fraction(rng.randint(-3, 3)))
        return FieldElement(self, rng.randrange(self.modulus))

    def _zero(self):
        return Fraction(0) if self.is_rational else 0

    def _one(self):
        return Fraction(1) if self.is_rational else 1

    def _add(self, a, b):
        return a + b if self.is_rational else (a + b) % self.modulus

    def _neg(self, a):
        return -a if self.is_rational else (-a) % self.modulus

    def _mul(self, a, b):
        return a * b if self.is_rational else (a * b) % self.modulus

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("cannot invert zero")
        return 1 / a if self.is_rational else pow(a, -1, self.modulus)

    def _is_zero(self, a):
        return a == 0

    def _format(self, a):
        return str(a)

    def __str__(self):
        return "Q" if self.is_rational else f"F{self.modulus}"


def rationals():
    return BaseField("rationals", 0)


def prime_field(p):
    return BaseField("prime-field", p)


@dataclass(frozen=True)
class FieldTower(Field):
    """Triangular tower base[a_1, ..., a_r]/(p_1(a_1), p_2(a_1, a_2), ...)

    Each step is stored as a sorted tuple of (exponent tuple, raw base value)
    pairs over all r generators and must be monic in its own generator.
    Elements are dicts {exponents: raw base value} in normal form.
    """

    base: BaseField
    names: tuple
    steps: tuple

    def __post_init__(self):
        r = len(self.names)
        if len(self.steps) != r:
            raise ValueError("one step polynomial per generator is required")
        for i, step in enumerate(self.steps):
            for exps, _ in step:
                if len(exps) != r or any(exps[j] for j in range(i + 1, r)):
                    raise ValueError(
                        f"step {i + 1} may only involve {', '.join(self.names[:i + 1])}"
                    )
            d = max((exps[i] for exps, _ in step), default=0)
            if d == 0:
                raise ValueError(f"step {i + 1} has degree 0 in {self.names[i]}")
            top = [(exps, c) for exps, c in step if exps[i] == d]
            lead = tuple(d if j == i else 0 for j in range(r))
            if len(top) != 1 or top[0][0] != lead or not self.base._eq(top[0][1], self.base._one()):
                raise ValueError(f"step {i + 1} is not monic in {self.names[i]}")

    @classmethod
    def from_polynomials(cls, base, names, polynomials):
        """Build from objects exposing .terms = {exponents: base FieldElement}"""
        steps = tuple(
            tuple(sorted((exps, c.value) for exps, c in poly.terms.items()))
            for poly in polynomials
        )
        return cls(base, tuple(names), steps)

    @cached_property
    def degrees(self):
        return tuple(max(exps[i] for exps, _ in step) for i, step in enumerate(self.steps))

    @cached_property
    def _tails(self):
        # a_i^d_i = tail_i
        tails = []
        for i, step in enumerate(self.steps):
            d = self.degrees[i]
            tails.append({exps: self.base._neg(c) for exps, c in step if exps[i] != d})
        return tails

    @cached_property
    def basis(self):
        return list(itertools.product(*(range(d) for d in self.degrees)))

    @property
    def degree(self):
        return prod(self.degrees)

    @property
    def prime_field(self):
        return self.base

    @property
    def size(self):
        return None if self.base.size is None else self.base.size ** self.degree

    def _reduce(self, terms):
        base = self.base
        work = {m: c for m, c in terms.items() if not base._is_zero(c)}
        result = {}
        degrees = self.degrees
        while work:
            e = max(work, key=lambda m: m[::-1])
            c = work.pop(e)
            i = next((j for j in reversed(range(len(e))) if e[j] >= degrees[j]), None)
            if i is None:
                result[e] = c
                continue
            shift = e[:i] + (e[i] - degrees[i],) + e[i + 1:]
            for m, t in self._tails[i].items():
                target = tuple(a + b for a, b in zip(shift, m))
                value = base._add(work.get(target, base._zero()), base._mul(c, t))
                if base._is_zero(value):
                    work.pop(target, None)
                else:
                    work[target] = value
        return result

    def from_terms(self, terms):
        return FieldElement(self, self._reduce(terms))

    def generator(self, i):
        unit = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return self.from_terms({unit: self.base._one()})

    def generators(self):
        return [self.generator(i) for i in range(len(self.names))]

    def from_rational(self, q):
        return self.from_base(self.base.from_rational(q))

    def from_base(self, c):
        c = self.base.from_base(c)
        if c.is_zero():
            return self.zero()
        return FieldElement(self, {(0,) * len(self.names): c.value})

    def coordinates(self, value):
        zero = self.base._zero()
        return [FieldElement(self.base, value.get(b, zero)) for b in self.basis]

    def from_coordinates(self, vector):
        return FieldElement(
            self, {b: c.value for b, c in zip(self.basis, vector) if not c.is_zero()}
        )

    def extension(self):
        return TowerExtension(self)

    def truncated(self, k):
        """The tower of the first k steps"""
        steps = tuple(
            tuple(sorted((exps[:k], c) for exps, c in step)) for step in self.steps[:k]
        )
        return FieldTower(self.base, self.names[:k], steps)

    def step_polynomial(self, i):
        """Step i as a univariate polynomial over the tower of the steps before it"""
        below = self.truncated(i)
        coeffs = {}
        for exps, c in self.steps[i]:
            coeffs.setdefault(exps[i], {})[exps[:i]] = c
        d = self.degrees[i]
        values = [below.from_terms(coeffs.get(k, {})) for k in range(d + 1)]
        return UniPolynomial(below, values, self.names[i])

    def random_element(self, rng):
        return FieldElement(
            self,
            {b: v for b in self.basis if not self.base._is_zero(v := self.base.random_element(rng).value)},
        )

    def _zero(self):
        return {}

    def _one(self):
        return {(0,) * len(self.names): self.base._one()}

    def _add(self, a, b):
        base = self.base
        out = dict(a)
        for m, c in b.items():
            value = base._add(out.get(m, base._zero()), c)
            if base._is_zero(value):
                out.pop(m, None)
            else:
                out[m] = value
        return out

    def _neg(self, a):
        return {m: self.base._neg(c) for m, c in a.items()}

    def _mul(self, a, b):
        base = self.base
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = base._add(out.get(m, base._zero()), base._mul(c1, c2))
        return self._reduce(out)

    def _inv(self, a):
        if not a:
            raise ZeroDivisionError("cannot invert zero")
        return dict(_tower_inverse(self, self.key(a)))

    def _is_zero(self, a):
        return not a

    def _format(self, a):
        ordered = sorted(a.items(), key=lambda item: item[0][::-1], reverse=True)
        return render_terms([(m, self.base._format(c)) for m, c in ordered], self.names)

    def key(self, a):
        return tuple(sorted(a.items()))

    def __str__(self):
        if not self.names:
            return str(self.base)
        relations = ", ".join(
            self._format(dict(step)) for step in self.steps
        )
        return f"{self.base}[{', '.join(self.names)}]/({relations})"


@lru_cache(maxsize=4096)
def _tower_inverse(tower, key):
    """Inverse of the element with sorted items `key`, by solving a * v = 1 on the tower basis

    Memoized per (tower, element); towers are frozen so the key is stable.
    """
    a = dict(key)
    n = len(tower.basis)
    columns = [tower.coordinates(tower._mul(a, {b: tower.base._one()})) for b in tower.basis]
    matrix = linalg.transpose(columns, n)
    rhs = tower.coordinates(tower._one())
    solution = linalg.solve(matrix, rhs, n, tower.base)
    if solution is None:
        w = linalg.normalize_leading(linalg.kernel(matrix, n, tower.base)[0], tower.base)
        raise ZeroDivisorWitness(tower.element(a), tower.from_coordinates(w), context=str(tower))
    return tower.key(tower.from_coordinates(solution).value)


@dataclass(frozen=True)
class FractionField(Field):
    """Fraction field of base[vars]/P for a prime P given by its Groebner basis

    Elements are (numerator, denominator) polynomial pairs in normal form.
    Primality is trusted; a denominator collapsing to zero raises a
    ZeroDivisorWitness.
    """

    ideal: object

    @property
    def ring(self):
        return self.ideal.ring

    @property
    def base(self):
        return self.ring.field

    @property
    def prime_field(self):
        return self.base

    def _canonical(self, num, den):
        num = self.ideal.reduce(num)
        den = self.ideal.reduce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return (num, self.ring.one())
        lc = den.leading_coefficient()
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        if den.is_constant():
            return (num, den)
        if self.ring.nvars == 1 and self.ideal.is_zero_ideal():
            g = num.univariate_gcd(den)
            if not g.is_constant():
                num, den = num.exact_quotient(g), den.exact_quotient(g)
            return (num, den)
        q = num.exact_quotient(den)
        if q is not None:
            return (self.ideal.reduce(q), self.ring.one())
        return (num, den)

    def from_polynomial(self, p):
        if p.ring != self.ring:
            raise IncompatibleContext("polynomial is not in the function ring")
        return FieldElement(self, self._canonical(p, self.ring.one()))

    def variable(self, name):
        return self.from_polynomial(self.ring.variable(name))

    def from_rational(self, q):
        return self.from_base(self.base.from_rational(q))

    def from_base(self, c):
        c = self.base.from_base(c)
        return FieldElement(self, (self.ring.constant(c), self.ring.one()))

    def _zero(self):
        return (self.ring.zero(), self.ring.one())

    def _one(self):
        return (self.ring.one(), self.ring.one())

    def _checked_denominator(self, b, d):
        den = self.ideal.reduce(b * d)
        if den.is_zero():
            raise ZeroDivisorWitness(b, d, context=str(self))
        return den

    def _add(self, a, b):
        (p, q), (r, s) = a, b
        if q == s:
            return self._canonical(p + r, q)
        return self._canonical(p * s + r * q, self._checked_denominator(q, s))

    def _neg(self, a):
        return (-a[0], a[1])

    def _mul(self, a, b):
        (p, q), (r, s) = a, b
        return self._canonical(p * r, self._checked_denominator(q, s))

    def _inv(self, a):
        if a[0].is_zero():
            raise ZeroDivisionError("cannot invert zero")
        return self._canonical(a[1], a[0])

    def _is_zero(self, a):
        return a[0].is_zero()

    def _eq(self, a, b):
        if a[1] == b[1]:
            return self.ideal.reduce(a[0] - b[0]).is_zero()
        return self.ideal.reduce(a[0] * b[1] - b[0] * a[1]).is_zero()

    def _format(self, a):
        num, den = a
        if den.is_one():
            return str(num)
        return f"({num})/({den})"

    def key(self, a):
        return None

    def __str__(self):
        ring = f"{self.base}[{', '.join(self.ring.variables)}]"
        if self.ideal.is_zero_ideal():
            return f"Frac({ring})"
        relations = ", ".join(str(g) for g in self.ideal.polynomials)
        return f"Frac({ring}/({relations}))"


def invert(e):
    """Inverse of a nonzero element; zero divisors surface as ZeroDivisorWitness"""
    if e.is_zero():
        raise ZeroDivisionError(f"cannot invert zero in {e.field}")
    return FieldElement(e.field, e.field._inv(e.value))


class UniPolynomial:
    """Dense univariate polynomial over a field, coefficients low to high"""

    __slots__ = ("field", "coeffs", "variable")

    def __init__(self, field, coeffs, variable="t"):
        coeffs = [field.from_rational(c) if isinstance(c, (int, Fraction)) else c for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)
        self.variable = variable

    @classmethod
    def monomial(cls, field, k, variable="t"):
        return cls(field, [field.zero()] * k + [field.one()], variable)

    def _new(self, coeffs):
        return UniPolynomial(self.field, coeffs, self.variable)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0].is_one()

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return self._new([c * inv for c in self.coeffs])

    def derivative(self):
        return self._new([c * self.field.from_int(k) for k, c in enumerate(self.coeffs)][1:])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.field.zero()
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return self._new([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return self._new([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self._new([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._new([])
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._new(out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        quotient = [self.field.zero()] * max(len(remainder) - len(other.coeffs) + 1, 0)
        inv = other.leading().inverse()
        d = other.degree
        while len(remainder) - 1 >= d and remainder:
            k = len(remainder) - 1 - d
            c = remainder[-1] * inv
            quotient[k] = c
            for j, b in enumerate(other.coeffs):
                remainder[k + j] = remainder[k + j] - c * b
            remainder.pop()
            while remainder and remainder[-1].is_zero():
                remainder.pop()
        return self._new(quotient), self._new(remainder)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def pow_mod(self, exponent, modulus):
        result = self._new([self.field.one()]) % modulus
        base = self % modulus
        while exponent:
            if exponent & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            exponent >>= 1
        return result

    def evaluate(self, x, embed=None):
        """Horner evaluation at x; embed maps coefficients into x's ring"""
        embed = embed or (lambda c: c)
        result = None
        for c in reversed(self.coeffs):
            result = embed(c) if result is None else result * x + embed(c)
        return result

    def __eq__(self, other):
        if not isinstance(other, UniPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        pairs = [((k,), str(c)) for k, c in reversed(list(enumerate(self.coeffs))) if not c.is_zero()]
        return render_terms(pairs, (self.variable,))

    __repr__ = __str__


class FiniteExtension(ABC):
    """A field of known finite dimension over `over`, with coordinates"""

    over: Field
    degree: int

    @abstractmethod
    def one(self): ...

    @abstractmethod
    def multiply(self, a, b): ...

    @abstractmethod
    def coordinates(self, element): ...


class TowerExtension(FiniteExtension):
    def __init__(self, tower):
        self.tower = tower
        self.over = tower.base
        self.degree = tower.degree

    def one(self):
        return self.tower.one()

    def multiply(self, a, b):
        return a * b

    def coordinates(self, element):
        return self.tower.coordinates(element.value)


def minimal_polynomial(e, over, variable="t"):
    """Monic generator of the kernel of evaluation at e, over `over`

    `over` is either a FiniteExtension giving coordinates, the field of e
    itself, or the base of the tower e lives in.
    """
    if isinstance(over, FiniteExtension):
        ext = over
    elif isinstance(e, FieldElement) and e.field == over:
        return UniPolynomial(over, [-e, over.one()], variable)
    elif isinstance(e, FieldElement) and isinstance(e.field, FieldTower) and e.field.base == over:
        ext = e.field.extension()
    else:
        raise NotFiniteOverBase(f"no finite basis of the field of {e} over {over}")
    K = ext.over
    vectors = [ext.coordinates(ext.one())]
    power = ext.one()
    for _ in range(ext.degree):
        power = ext.multiply(power, e)
        target = ext.coordinates(power)
        rows = linalg.transpose(vectors, ext.degree)
        solution = linalg.solve(rows, target, len(vectors), K)
        if solution is not None:
            return UniPolynomial(K, [-c for c in solution] + [K.one()], variable)
        vectors.append(target)
    raise InvariantViolation(f"powers of {e} are independent beyond the degree {ext.degree}")


@dataclass(frozen=True)
class IrreducibilityResult:
    status: str  # "irreducible" | "reducible" | "skipped"
    factor: object = None
    cofactor: object = None
    reason: str = ""


def irreducibility_check(p, trust_point=False, seed=DEFAULT_SEED):
    """Decide irreducibility of a monic univariate polynomial over a base field or tower"""
    if p.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    p = p.monic()
    if p.degree == 1:
        return IrreducibilityResult("irreducible")
    K = p.field
    if K.size is not None:
        return _finite_field_check(p, random.Random(seed))
    if trust_point:
        return IrreducibilityResult("skipped", reason="trust-point mode")
    rational = _as_rational_coefficients(p)
    if rational is None:
        return IrreducibilityResult("skipped", reason="number-field tower over Q")
    factor = _kronecker_factor(rational)
    if factor == "skipped":
        return IrreducibilityResult("skipped", reason="Kronecker candidate limit reached")
    if factor is None:
        return IrreducibilityResult("irreducible")
    g = UniPolynomial(K, [K.from_rational(c) for c in factor], p.variable)
    return IrreducibilityResult("reducible", g, p // g)


def tower_field_check(tower, seed=DEFAULT_SEED, attempts=TOWER_PRIMITIVE_ATTEMPTS):
    """Decide whether a tower over Q is a field through a random element e = sum c_i a_i

    A proper factorization g * h of the minimal polynomial of e gives the zero
    divisors g(e), h(e). An irreducible minimal polynomial of full degree makes
    e primitive and the tower a field; any other outcome resamples e.
    """
    Q = tower.base
    n = tower.degree
    if n <= 1:
        return IrreducibilityResult("irreducible")
    rng = random.Random(seed)
    embed = tower.from_base
    for attempt in range(attempts):
        e = tower.zero()
        for a in tower.generators():
            e = e + a * rng.randint(1, attempt + 1)
        mu = minimal_polynomial(e, Q)
        g = mu.gcd(mu.derivative())
        if g.degree == 0:
            factor = _kronecker_factor([c.value for c in mu.coeffs])
            if factor == "skipped":
                logger.debug("Kronecker limit reached on %s, resampling", mu)
                continue
            if factor is None:
                if mu.degree == n:
                    return IrreducibilityResult("irreducible")
                continue
            g = UniPolynomial(Q, [Q.from_rational(c) for c in factor], mu.variable)
        h = mu // g
        return IrreducibilityResult("reducible", g.evaluate(e, embed), h.evaluate(e, embed))
    return IrreducibilityResult(
        "skipped", reason=f"no primitive element found in {attempts} attempts"
    )


def _as_rational_coefficients(p):
    K = p.field
    if isinstance(K, BaseField):
        return [c.value for c in p.coeffs]
    if isinstance(K, FieldTower) and K.base.is_rational and K.degree == 1:
        zero = (0,) * len(K.names)
        return [c.value.get(zero, Fraction(0)) for c in p.coeffs]
    return None


def _pth_root(c):
    """c^(1/p) in a finite field of size q = p^D is c^(q/p)"""
    K = c.field
    return c ** (K.size // K.characteristic)


def _finite_field_check(p, rng):
    K = p.field
    q = K.size
    dp = p.derivative()
    if dp.is_zero():
        # p(t) = h(t)^char
        char = K.characteristic
        h = UniPolynomial(K, [_pth_root(c) for c in p.coeffs[::char]], p.variable).monic()
        return IrreducibilityResult("reducible", h, p // h)
    g = p.gcd(dp)
    if g.degree > 0:
        return IrreducibilityResult("reducible", g, p // g)
    t = UniPolynomial.monomial(K, 1, p.variable)
    h = t
    for i in range(1, p.degree // 2 + 1):
        h = h.pow_mod(q, p)
        g = p.gcd(h - t)
        if g.degree > 0:
            factor = g if g.degree < p.degree else _equal_degree_split(p, i, rng)
            return IrreducibilityResult("reducible", factor, p // factor)
    return IrreducibilityResult("irreducible")


def _equal_degree_split(f, d, rng, attempts=256):
    """Cantor-Zassenhaus: a proper factor of squarefree f whose factors all have degree d"""
    K = f.field
    q = K.size
    for _ in range(attempts):
        a = UniPolynomial(K, [K.random_element(rng) for _ in range(f.degree)], f.variable)
        if a.degree < 1:
            continue
        if q % 2:
            b = a.pow_mod((q ** d - 1) // 2, f) - UniPolynomial(K, [K.one()], f.variable)
        else:
            k = (q.bit_length() - 1) * d
            b = a % f
            term = b
            for _ in range(k - 1):
                term = (term * term) % f
                b = b + term
        g = f.gcd(b)
        if 0 < g.degree < f.degree:
            return g
    raise InvariantViolation(f"equal-degree splitting of {f} did not terminate")


def _divisors(n):
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _kronecker_factor(coeffs):
    """A monic factor of degree <= n/2 over Q, None if irreducible, 'skipped' past the limit"""
    lcm = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in coeffs), 1)
    ints = [int(c * lcm) for c in coeffs]
    content = reduce(gcd, ints)
    ints = [c // content for c in ints]
    n = len(ints) - 1
    Q = rationals()

    def value_at(a):
        return sum(c * a ** k for k, c in enumerate(ints))

    target = UniPolynomial(Q, [Fraction(c) for c in ints])
    for d in range(1, n // 2 + 1):
        points, values = [], []
        a = 0
        while len(points) < d + 1:
            v = value_at(a)
            if v == 0:
                return [Fraction(-a), Fraction(1)]
            points.append(a)
            values.append(v)
            a = -a if a > 0 else -a + 1
        choices = [_divisors(values[0])] + [
            [s * x for x in _divisors(v) for s in (1, -1)] for v in values[1:]
        ]
        if prod(len(c) for c in choices) > KRONECKER_CANDIDATE_LIMIT:
            return "skipped"
        for combo in itertools.product(*choices):
            g = _interpolate(Q, points, combo)
            if g.degree != d or any(c.value.denominator != 1 for c in g.coeffs):
                continue
            if (target % g).is_zero():
                return [c.value for c in g.monic().coeffs]
    return None


def _interpolate(Q, points, values):
    result = UniPolynomial(Q, [])
    for i, (a, v) in enumerate(zip(points, values)):
        term = UniPolynomial(Q, [Fraction(v)])
        for j, b in enumerate(points):
            if j != i:
                term = term * UniPolynomial(Q, [Fraction(-b, a - b), Fraction(1, a - b)])
        result = result + term
    return result


def separable_polynomial(mu):
    """gcd(mu, mu') == 1"""
    return mu.gcd(mu.derivative()).is_one()
