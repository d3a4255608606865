import logging
from math import factorial
from .fp_arith import binom_mod, check_prime
from .fp_errors import DomainError
from .fp_report import VerificationReport


_logger = logging.getLogger(__name__)


# elements of F_p[t] are dicts n -> c with c in [1, p)
def _clean(poly, p):
    return {n: c % p for n, c in poly.items() if c % p}


def _sub(a, b, p):
    out = dict(a)
    for n, c in b.items():
        out[n] = out.get(n, 0) - c
    return _clean(out, p)


def _scale(poly, c, p):
    return _clean({n: v * c for n, v in poly.items()}, p)


def dt(poly, q, p):
    # d_t^[q] . t^n = C(n, q) t^(n - q)
    return _clean({n - q: c * binom_mod(n, q, p) for n, c in poly.items() if n >= q}, p)


def tmul(poly, q):
    return {n + q: c for n, c in poly.items()}


def theta(poly, m, p):
    # theta_m . t^n = C(n + m, m) t^n
    return _clean({n: c * binom_mod(n + m, m, p) for n, c in poly.items()}, p)


def theta_shift(poly, q, j, p):
    out = theta(poly, q, p)
    for n, c in poly.items():
        out[n] = out.get(n, 0) + j * c
    return _clean(out, p)


def theta_factored(poly, m, p):
    q = 1
    while m:
        m, a = divmod(m, p)
        for j in range(a):
            poly = theta_shift(poly, q, j, p)
        poly = _scale(poly, pow(factorial(a) % p, -1, p), p)
        q *= p
    return poly


def _powers_upto(p, bound):
    q = 1
    while q <= bound:
        yield q
        q *= p


def series_mismatches(p):
    """The i < p where sum_{j <= p-i-1} C(i+j, i) x^j differs from (1 - x)^(p-i-1) in F_p[x]."""
    bad = []
    for i in range(p):
        lhs = _clean({j: binom_mod(i + j, i, p) for j in range(p - i)}, p)
        rhs = _clean({j: binom_mod(p - i - 1, j, p) * (-1) ** j for j in range(p - i)}, p)
        if lhs != rhs:
            bad.append(i)
    return bad


def _check_point(report, x, n, order_bound, p):
    K = order_bound
    for m in range(1, K + 1):
        lhs = _sub(tmul(theta(x, m, p), 1), theta(tmul(x, 1), m, p), p)
        rhs = _scale(theta(tmul(x, 1), m - 1, p), -1, p)
        report.record(lhs == rhs, {"identity": "i", "n": n, "m": m})

    for q in _powers_upto(p, K):
        lhs = _sub(dt(tmul(x, q), q, p), tmul(dt(x, q, p), q), p)
        report.record(lhs == x, {"identity": "ii", "n": n, "q": q})

        for r in range(1, K // q + 1):
            lhs = tmul(x, r * q)
            rhs = x
            for j in range(r):
                lhs = dt(lhs, q, p)
                rhs = theta_shift(rhs, q, j, p)
            report.record(lhs == rhs, {"identity": "iii", "n": n, "q": q, "r": r})

    for s in range(1, K + 1):
        for r in range(1, K // s + 1):
            # (sr)! / (s!)^r = prod_{j <= r} C(js, s)
            multinomial = 1
            for j in range(1, r + 1):
                multinomial = multinomial * binom_mod(j * s, s, p) % p
            rhs = x
            for _ in range(r):
                rhs = dt(rhs, s, p)
            report.record(_scale(dt(x, s * r, p), multinomial, p) == rhs,
                          {"identity": "iv", "n": n, "s": s, "r": r})

    for i in range(K + 1):
        for j in range(K + 1 - i):
            lhs = _scale(dt(x, i + j, p), binom_mod(i + j, i, p), p)
            report.record(lhs == dt(dt(x, j, p), i, p), {"identity": "v", "n": n, "i": i, "j": j})

    for i in range(1, K + 1):
        for j in range(i + 1, K + 1):
            report.record(theta(theta(x, j, p), i, p) == theta(theta(x, i, p), j, p),
                          {"identity": "vi", "n": n, "i": i, "j": j})

    for m in range(K + 1):
        report.record(theta(x, m, p) == theta_factored(x, m, p), {"identity": "vii", "n": n, "m": m})

    for qi in _powers_upto(p, K):
        for qj in _powers_upto(p, K):
            lhs = _sub(dt(theta(x, qj, p), qi, p), theta(dt(x, qi, p), qj, p), p)
            rhs = dt(x, qi, p) if qi == qj else {}
            report.record(lhs == rhs, {"identity": "viii", "n": n, "p^i": qi, "p^j": qj})

    # theta_(p^k) t^n = (d_k + 1) t^n, d_k the k-th base-p digit of n
    for k, q in enumerate(_powers_upto(p, max(n, 1))):
        digit = n // q % p
        report.record(theta(x, q, p) == _scale(x, digit + 1, p),
                      {"identity": "structure sheaf", "n": n, "k": k})


def verify_rt_identities(p, bound, order_bound=None):
    check_prime(p)
    if bound < 0:
        raise DomainError(f"Bound must be nonnegative, got {bound}.")
    if order_bound is None:
        order_bound = bound
    if order_bound < 1:
        raise DomainError(f"Operator order bound must be positive, got {order_bound}.")
    report = VerificationReport("rt-identities")
    for n in range(bound + 1):
        _check_point(report, {n: 1}, n, order_bound, p)
    bad = series_mismatches(p)
    for i in range(p):
        report.record(i not in bad, {"identity": "binomial series", "i": i})
    _logger.info("operator identities over F_%d: %d checks", p, report.checked)
    return report
