"""
Groebner basis module
Buchberger's algorithm with Gebauer-Moeller pair elimination, normal forms,
membership, staircases, ideal sum/product, elimination and Krull dimension
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

from errors import IncompatibleContext, NotZeroDimensional, UnitIdeal
from exact_arith import FiniteExtension
from multipoly import (
    LEX,
    Polynomial,
    PolyRing,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal in a fixed ring; zero generators are dropped"""

    ring: PolyRing
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise IncompatibleContext(f"generator {g} is not in {self.ring}")
        object.__setattr__(
            self, "generators", tuple(g for g in self.generators if not g.is_zero())
        )

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic basis sorted by descending leading monomial"""

    ring: PolyRing
    order: object
    polynomials: tuple
    source: IdealPresentation = field(default=None, compare=False, repr=False)

    @cached_property
    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.polynomials]

    def is_unit(self):
        return len(self.polynomials) == 1 and self.polynomials[0].is_constant()

    def is_zero_ideal(self):
        return not self.polynomials

    def reduce(self, p):
        return normal_form(p, self)

    def contains(self, p):
        return normal_form(p, self).is_zero()

    def staircase(self):
        return quotient_staircase(self)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.polynomials) + "}"


def spoly(f, g, lmf, lmg):
    """S-polynomial of monic f and g"""
    lcm = monomial_lcm(lmf, lmg)
    return f.mul_monomial(monomial_div(lcm, lmf)) - g.mul_monomial(monomial_div(lcm, lmg))


def _remainder(p, G, lms, order):
    """Full reduction of p by monic G"""
    work = dict(p.terms)
    rem = {}
    while work:
        m = max(work, key=order.key)
        c = work[m]
        for g, lm in zip(G, lms):
            if monomial_divides(lm, m):
                shift = monomial_div(m, lm)
                for gm, gc in g.terms.items():
                    t = monomial_mul(gm, shift)
                    v = work.get(t)
                    value = -(c * gc) if v is None else v - c * gc
                    if value.is_zero():
                        work.pop(t, None)
                    else:
                        work[t] = value
                work.pop(m, None)
                break
        else:
            rem[m] = work.pop(m)
    return Polynomial(p.ring, rem)


def _select(pairs, lms, order):
    """'normal' strategy: smallest lcm first, ties by pair index"""
    return min(pairs, key=lambda p: (order.key(monomial_lcm(lms[p[0]], lms[p[1]])), p))


def _update(G, P, f, lms, lmf, order):
    """Gebauer-Moeller update of basis and pair set when f joins G"""
    lcm = monomial_lcm
    n = len(G)
    P = {
        p
        for p in P
        if not monomial_divides(lmf, lcm(lms[p[0]], lms[p[1]]))
        or lcm(lms[p[0]], lms[p[1]]) == lcm(lms[p[0]], lmf)
        or lcm(lms[p[0]], lms[p[1]]) == lcm(lms[p[1]], lmf)
    }
    lcm_groups = {}
    for i in range(n):
        lcm_groups.setdefault(lcm(lms[i], lmf), []).append(i)
    minimal_lcms = []
    for L in sorted(lcm_groups, key=order.key):
        if all(not monomial_divides(L_, L) for L_ in minimal_lcms):
            minimal_lcms.append(L)
    new_pairs = set()
    for L in minimal_lcms:
        # product criterion: coprime leading monomials
        if not any(lcm(lms[i], lmf) == monomial_mul(lms[i], lmf) for i in lcm_groups[L]):
            new_pairs.add((min(lcm_groups[L]), n))
    return G + [f], lms + [lmf], P | new_pairs


def _minimalize(G, order):
    kept = []
    for f in sorted(G, key=lambda h: order.key(h.leading_monomial(order))):
        lm = f.leading_monomial(order)
        if all(not monomial_divides(g.leading_monomial(order), lm) for g in kept):
            kept.append(f)
    return kept


def _interreduce(G, order):
    reduced = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1:]
        lms = [h.leading_monomial(order) for h in others]
        reduced.append(_remainder(g, others, lms, order).monic(order))
    return reduced


def buchberger(ideal, order=None):
    """Reduced Groebner basis of an IdealPresentation"""
    ring = ideal.ring
    order = order or ring.order
    G, lms, P = [], [], set()
    for f in ideal.generators:
        f = f.monic(order)
        G, lms, P = _update(G, P, f, lms, f.leading_monomial(order), order)
    unit = any(g.is_constant() for g in G)
    while P and not unit:
        i, j = _select(P, lms, order)
        P.remove((i, j))
        s = spoly(G[i], G[j], lms[i], lms[j])
        r = _remainder(s, G, lms, order)
        if not r.is_zero():
            r = r.monic(order)
            G, lms, P = _update(G, P, r, lms, r.leading_monomial(order), order)
            unit = r.is_constant()
    if unit:
        basis = [ring.one()]
    else:
        basis = _interreduce(_minimalize(G, order), order)
    basis.sort(key=lambda g: order.key(g.leading_monomial(order)), reverse=True)
    logger.debug("Groebner basis in %s: %d generators -> %d elements", ring, len(ideal.generators), len(basis))
    return GroebnerBasis(ring, order, tuple(basis), ideal)


def groebner(ring, generators, order=None):
    return buchberger(IdealPresentation(ring, tuple(generators)), order)


def normal_form(p, G):
    """Unique remainder of p modulo the Groebner basis G"""
    if p.ring != G.ring:
        raise IncompatibleContext(f"{p} is not in {G.ring}")
    return _remainder(p, G.polynomials, G.leading_monomials, G.order)


def quotient_staircase(G):
    """Monomials outside the leading-term ideal, ascending; raises for infinite staircases"""
    n = G.ring.nvars
    if G.is_unit():
        return []
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in G.leading_monomials if lm[i] and sum(lm) == lm[i]]
        if not pure:
            raise NotZeroDimensional(
                f"the quotient by {G} is infinite-dimensional: no leading power of {G.ring.variables[i]}"
            )
        bounds.append(min(pure))
    staircase = [
        m
        for m in itertools.product(*(range(b) for b in bounds))
        if not any(monomial_divides(lm, m) for lm in G.leading_monomials)
    ]
    staircase.sort(key=G.order.key)
    logger.debug("staircase of %s has %d monomials", G, len(staircase))
    return staircase


def staircase_coordinates(p, G, index):
    """Coefficient vector of the normal form of p on a staircase {monomial: position}"""
    field = G.ring.field
    vector = [field.zero()] * len(index)
    for m, c in normal_form(p, G).terms.items():
        vector[index[m]] = c
    return vector


def ideal_product(I, J):
    if I.ring != J.ring:
        raise IncompatibleContext("ideals live in different rings")
    return IdealPresentation(I.ring, tuple(f * g for f in I.generators for g in J.generators))


def ideal_sum(I, J):
    if I.ring != J.ring:
        raise IncompatibleContext("ideals live in different rings")
    return IdealPresentation(I.ring, I.generators + J.generators)


def krull_dimension(G):
    """Size of a maximal variable set free of leading monomials"""
    if G.is_unit():
        raise UnitIdeal(f"the ideal {G} is the unit ideal")
    n = G.ring.nvars
    supports = [{i for i, e in enumerate(lm) if e} for lm in G.leading_monomials]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = set(subset)
            if not any(s <= chosen for s in supports):
                return size
    return 0


def elimination_ideal(ideal, eliminate):
    """Groebner basis of ideal intersected with the ring of the remaining variables"""
    ring = ideal.ring
    drop = [ring.index(v) for v in eliminate]
    keep = [i for i in range(ring.nvars) if i not in drop]
    lex_ring = PolyRing(
        tuple(ring.variables[i] for i in drop + keep), ring.field, LEX
    )
    images = [None] * ring.nvars
    for position, i in enumerate(drop + keep):
        images[i] = lex_ring.variable(position)
    if ring.nvars:
        moved = [g.substitute(images) for g in ideal.generators]
    else:
        moved = [Polynomial(lex_ring, g.terms) for g in ideal.generators]
    G = buchberger(IdealPresentation(lex_ring, tuple(moved)))
    sub_ring = PolyRing(tuple(ring.variables[i] for i in keep), ring.field, ring.order)
    width = len(drop)
    kept = [
        Polynomial(sub_ring, {m[width:]: c for m, c in g.terms.items()})
        for g in G.polynomials
        if not any(any(m[:width]) for m in g.terms)
    ]
    return buchberger(IdealPresentation(sub_ring, tuple(kept)))


class QuotientAlgebra(FiniteExtension):
    """Finite-dimensional quotient ring[x]/G over the coefficient field, staircase coordinates"""

    def __init__(self, G):
        self.basis_gb = G
        self.over = G.ring.field
        self.staircase = quotient_staircase(G)
        self.degree = len(self.staircase)
        self._index = {m: k for k, m in enumerate(self.staircase)}

    def one(self):
        return normal_form(self.basis_gb.ring.one(), self.basis_gb)

    def multiply(self, a, b):
        return normal_form(a * b, self.basis_gb)

    def coordinates(self, element):
        return staircase_coordinates(element, self.basis_gb, self._index)
