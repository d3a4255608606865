import random
import pytest
from fsing import fp_bfmod as bfmod
from fsing.fp_arith import DigitTuple
from fsing.fp_bfmod import BfContext, QIndex
from fsing.fp_errors import DomainError, RingMismatchError
from fsing.fp_identities import series_mismatches


@pytest.fixture
def ctx5(cusp5):
    _, f = cusp5
    return BfContext.of(f)


def test_operator_examples(ctx5):
    f = ctx5.f
    assert bfmod.act_dt(ctx5.delta(3), 0) == ctx5.delta(4, 4)
    assert bfmod.act_dt(ctx5.delta(3), 1) == ctx5.delta(8)
    assert bfmod.act_dt(ctx5.delta(20), 1).is_zero()
    assert bfmod.act_dt_general(ctx5.delta(3), 5) == bfmod.act_dt(ctx5.delta(3), 1)
    assert bfmod.act_dt_general(ctx5.delta(1), 2) == ctx5.delta(3, 3)
    assert bfmod.act_t_power(ctx5.delta(0), 0) == ctx5.delta(0, f)
    assert bfmod.act_t_power(ctx5.delta(2), 0) == ctx5.delta(2, f) - ctx5.delta(1)
    assert bfmod.act_t_power(ctx5.delta(7), 1) == ctx5.delta(7, f.frobenius_pow(1)) - ctx5.delta(2)
    assert bfmod.act_t(ctx5.delta(2), 2) == bfmod.act_t_power(bfmod.act_t_power(ctx5.delta(2), 0), 0)


def test_element_arithmetic(ctx5):
    w = ctx5.delta(1) + ctx5.delta(3, 2)
    assert (w - w).is_zero()
    assert w.scale(5).is_zero()
    assert 2 * ctx5.delta(1) == ctx5.delta(1, 2)
    assert w.coefficient(2).is_zero()
    assert w.render() == "(1)*delta_1 + (2)*delta_3"
    with pytest.raises(DomainError):
        ctx5.delta(-1)


def test_contexts_do_not_mix(poly, ctx5):
    _, g = poly(5, "x,y", "x^2+y^5")
    with pytest.raises(RingMismatchError):
        ctx5.delta(0) + BfContext.of(g).delta(0)


def test_q_elements(ctx5):
    f = ctx5.f
    assert bfmod.q_element(ctx5, QIndex.of((4,), 5)) == ctx5.delta(4)
    assert bfmod.q_element(ctx5, QIndex.of((4,), 5, m=1)) == ctx5.delta(9)
    assert bfmod.q_element(ctx5, QIndex.of((3,), 5)) == ctx5.delta(4, f) - ctx5.delta(3)
    idx = QIndex.of((2, 3), 5, m=1)
    assert idx.delta_index == 25 + 2 + 15
    assert idx.sign == -1
    assert min(bfmod.q_element(ctx5, idx).coeffs) == idx.delta_index
    with pytest.raises(DomainError):
        QIndex.of((), 5)
    with pytest.raises(DomainError):
        bfmod.q_element(ctx5, QIndex.of((1,), 7))


@pytest.mark.parametrize("digits", [(0,), (3,), (1, 2), (4, 0), (2, 2)])
def test_q_element_is_eigenvector(ctx5, digits):
    idx = QIndex.of(digits, 5, m=1)
    element = bfmod.q_element(ctx5, idx)
    for k, i in enumerate(digits):
        assert bfmod.act_theta(element, k) == element.scale(-i)
    assert bfmod.in_component(element, idx.digits)
    assert bfmod.eigen_decompose(element, len(digits)) == {idx.digits: element}


def test_theta_factorization_matches_direct(poly):
    _, f = poly(3, "x,y", "x^2+y^3")
    ctx = BfContext.of(f)
    rng = random.Random(7)
    for _ in range(3):
        w = bfmod.random_element(ctx, rng, 12)
        for m in range(1, 12):
            assert bfmod.act_theta_general(w, m) == bfmod.theta_direct(w, m)


def test_delta_zero_coordinates(ctx5):
    f = ctx5.f
    coords = bfmod.q_coordinates(ctx5.delta(0), 1)
    assert coords == {QIndex.of((i,), 5): f.pow(i) for i in range(5)}
    assert coords == bfmod.delta_expansion(ctx5, 1)
    assert bfmod.from_q_coordinates(ctx5, coords) == ctx5.delta(0)
    parts = bfmod.eigen_decompose(ctx5.delta(0), 1)
    assert set(parts) == {DigitTuple((i,), 5) for i in range(5)}
    for digits, part in parts.items():
        lifted = DigitTuple((4,) + digits.digits, 5)
        assert bfmod.in_component(bfmod.frobenius_map(part), lifted)


def test_frobenius_map(ctx5):
    f = ctx5.f
    w = ctx5.delta(0) + ctx5.delta(2, f)
    assert bfmod.frobenius_map(w) == ctx5.delta(4) + ctx5.delta(14, f.frobenius_pow(1))


def test_shift_targets():
    digits = DigitTuple((0, 0, 3), 5)
    assert bfmod.t_shift_target(digits, 0) == (DigitTuple((4, 4, 2), 5), False)
    assert bfmod.t_shift_target(DigitTuple((0, 0), 5), 0) == (DigitTuple((4, 4), 5), True)
    assert bfmod.dt_shift_target(DigitTuple((4, 1), 5), 0) == DigitTuple((0, 1), 5)
    assert bfmod.theta_scalar(DigitTuple((3,), 5), 2) == 3
    assert bfmod.theta_scalar(DigitTuple((1, 4), 5), 5) == 1


GRID = [(p, names, src, e)
        for names, src in [("x,y", "x^2+y^3"), ("x", "x")]
        for p in (2, 3, 5)
        for e in (1, 2)]


@pytest.mark.parametrize("p, names, src, e", GRID)
def test_basis_actions(poly, p, names, src, e):
    _, f = poly(p, names, src)
    report = bfmod.verify_basis_actions(BfContext.of(f), e, 3)
    assert report.passed, report.witnesses
    assert report.checked > p ** e * 4 * (3 * e)


@pytest.mark.parametrize("p, names, src, e", GRID + [(3, "x", "x+1", 1)])
def test_level_transformation(poly, p, names, src, e):
    _, f = poly(p, names, src)
    report = bfmod.verify_level_transformation(BfContext.of(f), e)
    assert report.passed, report.witnesses
    assert report.checked == p ** e


@pytest.mark.parametrize("p, names, src, e", GRID)
def test_decomposition(poly, p, names, src, e):
    _, f = poly(p, names, src)
    report = bfmod.verify_decomposition(BfContext.of(f), e, samples=9, seed=p * 10 + e)
    assert report.passed, report.witnesses


def test_level_domain(ctx5):
    with pytest.raises(DomainError):
        bfmod.eigen_decompose(ctx5.delta(0), 0)
    with pytest.raises(DomainError):
        bfmod.verify_basis_actions(ctx5, 0, 1)
    with pytest.raises(DomainError):
        bfmod.act_t(ctx5.delta(0), -1)


def test_mfe_components_cusp(poly):
    ring, f = poly(7, "x,y", "x^2+y^3")
    components = bfmod.mfe_component_ideals(f, 1)
    flagged = sorted(d.digits for d, c in components.items() if c.nonvanishing)
    assert flagged == [(5,), (6,)]
    assert components[DigitTuple((0,), 7)].ideal.is_unit()


def test_mfe_components_smooth(poly):
    _, x = poly(3, "x", "x")
    components = bfmod.mfe_component_ideals(x, 2)
    assert [d.digits for d, c in components.items() if c.nonvanishing] == [(2, 2)]
    with pytest.raises(DomainError):
        bfmod.mfe_component_ideals(x.ring.one(), 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_binomial_series(p):
    assert series_mismatches(p) == []
