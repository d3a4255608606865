import logging
from itertools import product
from operator import sub
from .fp_config import Settings
from .fp_errors import DomainError, RingMismatchError, ResourceCapError
from .fp_poly import MonomialOrder, MvPoly


_logger = logging.getLogger(__name__)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _subtract_multiple(terms, c, mono, g_terms, p):
    for exp, v in g_terms.items():
        shifted = tuple(x + y for x, y in zip(exp, mono))
        w = (terms.get(shifted, 0) - c * v) % p
        if w:
            terms[shifted] = w
        else:
            terms.pop(shifted, None)


def _normal_form(terms, basis, key, p):
    # full remainder of a term dict modulo monic (lm, terms) pairs
    work = dict(terms)
    rem = {}
    while work:
        lm = max(work, key=key)
        c = work[lm]
        for g_lm, g_terms in basis:
            if _divides(g_lm, lm):
                _subtract_multiple(work, c, tuple(map(sub, lm, g_lm)), g_terms, p)
                break
        else:
            rem[lm] = c
            del work[lm]
    return rem


def _make_monic(terms, key, p):
    lm = max(terms, key=key)
    inv = pow(terms[lm], -1, p)
    return lm, {exp: c * inv % p for exp, c in terms.items()}


def divide(f, basis, order=None):
    """Multivariate division: returns (quotients, remainder) with f = sum q_i g_i + r."""
    ring = f.ring
    for g in basis:
        f._check_ring(g)
        if g.is_zero():
            raise DomainError("Cannot divide by the zero polynomial.")
    key = MonomialOrder(order or ring.order).key
    p = ring.prime
    leads = [g.leading_term(order) for g in basis]
    quotients = [dict() for _ in basis]
    work = dict(f.terms)
    rem = {}
    while work:
        lm = max(work, key=key)
        c = work[lm]
        for i, (g_lm, g_lc) in enumerate(leads):
            if _divides(g_lm, lm):
                factor = c * pow(g_lc, -1, p) % p
                mono = tuple(map(sub, lm, g_lm))
                quotients[i][mono] = (quotients[i].get(mono, 0) + factor) % p
                _subtract_multiple(work, factor, mono, basis[i].terms, p)
                break
        else:
            rem[lm] = c
            del work[lm]
    return [MvPoly(ring, q) for q in quotients], MvPoly(ring, rem, prune=False)


def groebner(ideal, order=None, pair_cap=None):
    return ideal.groebner(order, pair_cap)


def _buchberger(ring, generators, order, pair_cap):
    key = order.key
    p = ring.prime
    one = (0,) * ring.num_vars

    seeds = {}
    for g in generators:
        lm, terms = _make_monic(g.terms, key, p)
        if lm == one:
            return [{one: 1}]
        seeds[frozenset(terms.items())] = (lm, terms)
    pending = sorted(seeds.values(), key=lambda t: key(t[0]))

    basis = []
    pairs = set()

    def insert(lm, terms):
        k = len(basis)
        basis.append((lm, terms))
        for i in range(k):
            pairs.add((i, k))

    for lm, terms in pending:
        rem = _normal_form(terms, basis, key, p)
        if not rem:
            continue
        lm, terms = _make_monic(rem, key, p)
        if lm == one:
            return [{one: 1}]
        insert(lm, terms)

    processed = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pairs.discard((i, j))
        lm_i, terms_i = basis[i]
        lm_j, terms_j = basis[j]
        lcm = _lcm(lm_i, lm_j)
        # coprime leading monomials reduce to zero
        if all(a == 0 or b == 0 for a, b in zip(lm_i, lm_j)):
            continue
        chained = False
        for k, entry in enumerate(basis):
            if k in (i, j):
                continue
            if _divides(entry[0], lcm) and (min(i, k), max(i, k)) not in pairs \
                    and (min(j, k), max(j, k)) not in pairs:
                chained = True
                break
        if chained:
            continue
        processed += 1
        if processed > pair_cap:
            raise ResourceCapError(f"Groebner basis computation exceeded the S-pair cap ({pair_cap}).")
        s_poly = {}
        _subtract_multiple(s_poly, p - 1, tuple(map(sub, lcm, lm_i)), terms_i, p)
        _subtract_multiple(s_poly, 1, tuple(map(sub, lcm, lm_j)), terms_j, p)
        rem = _normal_form(s_poly, basis, key, p)
        if not rem:
            continue
        lm, terms = _make_monic(rem, key, p)
        if lm == one:
            return [{one: 1}]
        insert(lm, terms)
    _logger.debug("buchberger: %d generators, %d pairs reduced, basis size %d",
                  len(generators), processed, len(basis))

    # minimal basis: drop elements whose leading monomial another element divides
    minimal = []
    for idx, (lm, terms) in enumerate(basis):
        redundant = False
        for jdx, (other, _) in enumerate(basis):
            if jdx != idx and _divides(other, lm) and (other != lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append((lm, terms))

    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        rem = _normal_form(terms, others, key, p)
        reduced.append(_make_monic(rem, key, p)[1])
    reduced.sort(key=lambda t: key(max(t, key=key)), reverse=True)
    return reduced


class Ideal:
    """Ideal of F_p[x_1..x_n] given by generators, caching reduced Groebner bases per order."""

    def __init__(self, ring, generators=()):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise RingMismatchError(f"Generator {g} is not in the ring {ring.var_names}.")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators = tuple(gens)
        self._gb = {}

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    # wrap an already reduced Groebner basis without recomputing it
    @classmethod
    def from_basis(cls, ring, basis, order=None):
        ideal = cls(ring, basis)
        ideal._gb[MonomialOrder(order or ring.order)] = tuple(basis)
        return ideal

    def _check(self, other):
        if other.ring != self.ring:
            raise RingMismatchError(f"Ring mismatch: {self.ring.var_names} over F_{self.ring.prime} "
                                    f"vs {other.ring.var_names} over F_{other.ring.prime}.")

    def groebner(self, order=None, pair_cap=None):
        order = MonomialOrder(order or self.ring.order)
        cached = self._gb.get(order)
        if cached is not None:
            return cached
        if pair_cap is None:
            pair_cap = Settings.get("gb_pair_cap")
        if not self.generators:
            basis = ()
        else:
            basis = tuple(MvPoly(self.ring, terms, prune=False)
                          for terms in _buchberger(self.ring, self.generators, order, pair_cap))
        # first computation wins
        return self._gb.setdefault(order, basis)

    def reduce(self, f, order=None):
        self._check(f)
        order = MonomialOrder(order or self.ring.order)
        basis = [(g.leading_monomial(order), g.terms) for g in self.groebner(order)]
        rem = _normal_form(f.terms, basis, order.key, self.ring.prime)
        return MvPoly(self.ring, rem, prune=False)

    def member(self, f):
        self._check(f)
        if f.is_zero():
            return True
        return self.reduce(f).is_zero()

    def contains(self, other):
        self._check(other)
        return all(self.member(g) for g in other.generators)

    def equal(self, other):
        return self.contains(other) and other.contains(self)

    def is_unit(self):
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_unit()

    def is_zero(self):
        return not self.generators

    # Rabinowitsch: f in Rad(I) iff 1 in I + (1 - z f) over R[z]
    def radical_member(self, f):
        self._check(f)
        if f.is_zero():
            return True
        big = self.ring.extend("z")
        z = big.var(big.num_vars - 1)
        gens = [g.embed(big) for g in self.generators]
        gens.append(big.one() - z * f.embed(big))
        return Ideal(big, gens).is_unit()

    def scale(self, g):
        self._check(g)
        return Ideal(self.ring, [g * h for h in self.generators])

    def standard_monomials(self, order=None):
        """Exponents of the monomials outside the initial ideal; the ideal must be zero-dimensional."""
        order = MonomialOrder(order or self.ring.order)
        leads = [g.leading_monomial(order) for g in self.groebner(order)]
        bounds = []
        for i, name in enumerate(self.ring.var_names):
            powers = [lm[i] for lm in leads if all(k == 0 for j, k in enumerate(lm) if j != i)]
            if not powers:
                raise DomainError(f"The ideal is not zero-dimensional: no pure power of {name} "
                                  f"among the leading monomials.")
            bounds.append(min(powers))
        return sorted(exp for exp in product(*(range(b) for b in bounds))
                      if not any(_divides(lm, exp) for lm in leads))

    def render(self, order=None):
        return sorted(g.render() for g in self.groebner(order))

    def __repr__(self):
        gens = ", ".join(g.render() for g in self.generators)
        return f"Ideal({gens})"
