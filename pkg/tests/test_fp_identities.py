import pytest
from fsing.fp_errors import DomainError
from fsing.fp_identities import dt, theta, theta_factored, tmul, verify_rt_identities


def test_operators_on_monomials():
    assert dt({7: 1}, 2, 5) == {5: 1}
    assert dt({5: 1}, 1, 5) == {}
    assert dt({1: 1}, 3, 5) == {}
    assert tmul({2: 3}, 4) == {6: 3}
    # theta_m t^n = C(n + m, m) t^n
    assert theta({2: 1}, 1, 5) == {2: 3}
    assert theta({4: 1}, 1, 5) == {}
    assert theta({3: 1}, 5, 5) == {3: 1}
    assert theta_factored({6: 2}, 7, 5) == theta({6: 2}, 7, 5)


@pytest.mark.parametrize("p, order_bound", [(2, 24), (3, 20), (5, 15), (7, 12)])
def test_identities_up_to_200(p, order_bound):
    report = verify_rt_identities(p, 200, order_bound)
    assert report.passed, report.witnesses
    assert report.witnesses == []


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_identities_higher_order(p):
    assert verify_rt_identities(p, 200, 40).passed


def test_small_bound_defaults_order():
    report = verify_rt_identities(3, 4)
    assert report.passed
    assert report.checked > 0


def test_identity_domain():
    with pytest.raises(DomainError):
        verify_rt_identities(4, 10)
    with pytest.raises(DomainError):
        verify_rt_identities(5, -1)
    with pytest.raises(DomainError):
        verify_rt_identities(5, 10, order_bound=0)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_factored_theta_with_large_digits(p):
    # digits up to p - 1 need the inverse of (p - 1)! mod p
    for m in range(1, p * p):
        for n in range(2 * p * p):
            assert theta_factored({n: 1}, m, p) == theta({n: 1}, m, p), (m, n)
