from itertools import permutations
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from fsing.fp_config import Settings
from fsing.fp_errors import DomainError, ResourceCapError, RingMismatchError
from fsing.fp_ideals import Ideal, _divides, divide, groebner
from fsing.fp_poly import MonomialOrder, MvPoly, PolyRing


def small_polys(ring, max_terms=3, max_exp=2):
    exps = st.tuples(*[st.integers(0, max_exp)] * ring.num_vars)
    return st.dictionaries(exps, st.integers(1, ring.prime - 1), min_size=1, max_size=max_terms).map(
        lambda terms: MvPoly(ring, terms))


@st.composite
def generator_sets(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    ring = PolyRing(p, ("x", "y", "z"))
    gens = draw(st.lists(small_polys(ring), min_size=1, max_size=3))
    return ring, gens


def as_term_sets(polys):
    return {frozenset(g.terms.items()) for g in polys}


def sympy_basis(ring, gens, order):
    symbols = sympy.symbols(ring.var_names)
    exprs = []
    for g in gens:
        exprs.append(sum(c * sympy.prod([s ** k for s, k in zip(symbols, exp)]) for exp, c in g.terms.items()))
    basis = sympy.groebner(exprs, *symbols, modulus=ring.prime, order=order)
    out = set()
    for expr in basis.exprs:
        poly = sympy.Poly(expr, *symbols, modulus=ring.prime)
        out.add(frozenset((exp, int(c) % ring.prime) for exp, c in poly.terms() if int(c) % ring.prime))
    return out


@given(generator_sets(), st.sampled_from(["grevlex", "lex"]))
@settings(max_examples=60)
def test_groebner_matches_sympy(data, order):
    ring, gens = data
    ideal = Ideal(ring, gens)
    if ideal.is_zero():
        return
    assert as_term_sets(ideal.groebner(order)) == sympy_basis(ring, ideal.generators, order)


@given(generator_sets())
@settings(max_examples=40)
def test_groebner_idempotent(data):
    ring, gens = data
    basis = groebner(Ideal(ring, gens))
    assert Ideal(ring, basis).groebner() == basis
    for g in basis:
        assert g.leading_term()[1] == 1


@given(generator_sets(), st.data())
@settings(max_examples=60)
def test_division_identity(data, draw):
    ring, gens = data
    f = draw.draw(small_polys(ring, max_terms=5, max_exp=4))
    quotients, remainder = divide(f, gens)
    total = remainder
    for q, g in zip(quotients, gens):
        total = total + q * g
    assert total == f
    leads = [g.leading_monomial() for g in gens]
    for exp in remainder.terms:
        assert not any(_divides(lm, exp) for lm in leads)


@given(generator_sets(), st.data())
@settings(max_examples=40)
def test_combinations_are_members(data, draw):
    ring, gens = data
    ideal = Ideal(ring, gens)
    combo = ring.zero()
    for g in gens:
        combo = combo + g * draw.draw(small_polys(ring, max_terms=2))
    assert ideal.member(combo)
    assert ideal.reduce(combo).is_zero()


def test_membership_examples():
    ring = PolyRing(5, ("x", "y"))
    x, y = ring.gens()
    ideal = Ideal(ring, [x.pow(2) - y, x * y - 1])
    assert ideal.member(y.pow(3) - 1)
    assert not ideal.member(x + y)
    assert Ideal(ring, [x + y, x - y]).equal(Ideal(ring, [x, y]))
    assert Ideal(ring, [x, x + 1]).is_unit()
    assert Ideal(ring, [x, y]).render() == ["x", "y"]
    assert not Ideal.zero(ring).member(x)
    assert Ideal.zero(ring).member(ring.zero())


def test_radical_membership():
    ring = PolyRing(5, ("x", "y"))
    x, y = ring.gens()
    ideal = Ideal(ring, [x.pow(2), y.pow(3)])
    assert ideal.radical_member(x + y)
    assert ideal.radical_member(x.pow(2) + y.pow(3))
    assert not ideal.radical_member(x + 1)
    assert not Ideal(ring, [x.pow(2)]).radical_member(y)


def test_standard_monomials():
    ring = PolyRing(5, ("x", "y"))
    x, y = ring.gens()
    assert Ideal(ring, [x.scalar_mul(2), y.pow(2).scalar_mul(3)]).standard_monomials() == [(0, 0), (0, 1)]
    assert Ideal(ring, [x.pow(2), y.pow(2)]).standard_monomials() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    with pytest.raises(DomainError):
        Ideal(ring, [x]).standard_monomials()


def test_pair_cap():
    ring = PolyRing(5, ("x", "y"))
    x, y = ring.gens()
    Settings.update_setting("gb_pair_cap", 0)
    with pytest.raises(ResourceCapError):
        Ideal(ring, [x.pow(2) - y, x * y - 1]).groebner()
    with pytest.raises(ResourceCapError):
        Ideal(ring, [x.pow(2) - y, x * y - 1]).groebner(MonomialOrder.LEX, pair_cap=0)


def test_ring_mismatch():
    a = PolyRing(5, ("x",))
    b = PolyRing(5, ("y",))
    with pytest.raises(RingMismatchError):
        Ideal(a, [b.var("y")])
    with pytest.raises(RingMismatchError):
        Ideal(a, [a.var("x")]).member(b.var("y"))


def test_scale():
    ring = PolyRing(3, ("x", "y"))
    x, y = ring.gens()
    scaled = Ideal(ring, [x, y]).scale(x)
    assert scaled.equal(Ideal(ring, [x.pow(2), x * y]))


@st.composite
def ideal_pairs(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    ring = PolyRing(p, ("x", "y"))
    gens = draw(st.lists(small_polys(ring), min_size=1, max_size=3))
    multipliers = draw(st.lists(small_polys(ring), min_size=len(gens), max_size=len(gens)))
    other = draw(st.lists(small_polys(ring), min_size=1, max_size=3))
    return ring, gens, multipliers, other


@given(ideal_pairs())
@settings(max_examples=100)
def test_equal_is_an_equivalence(data):
    ring, gens, multipliers, other = data
    a = Ideal(ring, gens)
    combined = sum((g * h for g, h in zip(gens, multipliers)), ring.zero())
    b = Ideal(ring, list(reversed(gens)) + [combined])
    c = Ideal.from_basis(ring, a.groebner())
    d = Ideal(ring, other)
    assert a.equal(a)
    assert a.equal(b) and b.equal(a)
    assert b.equal(c) and a.equal(c)
    assert a.equal(d) == d.equal(a)
    for x, y, z in permutations((a, c, d)):
        if x.equal(y) and y.equal(z):
            assert x.equal(z)
