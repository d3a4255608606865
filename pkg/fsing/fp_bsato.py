import logging
from dataclasses import dataclass
from .fp_arith import DigitTuple, FpScalar, PPowRational
from .fp_errors import DomainError
from .fp_ideals import Ideal
from .fp_report import VerificationReport
from .fp_singular import gamma_set, nu


_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BSFactorization:
    """b_f^(e) as its simple roots; at level 1 also the roots of b_f in F_p."""

    level: int
    prime: int
    gamma: object
    roots: tuple
    char_p_roots: tuple = None

    def contains_root(self, value):
        return any(r == value for r in self.roots)


def bs_poly(f, e):
    gamma = gamma_set(f, e)
    p = gamma.prime
    ordered = gamma.sorted()
    roots = tuple(PPowRational(t.value, e, p) for t in ordered)
    char_p = None
    if e == 1:
        char_p = tuple(FpScalar(t[0], p) for t in ordered)
    _logger.info("b_f at level %d has %d roots", e, len(roots))
    return BSFactorization(e, p, gamma, roots, char_p)


def bs_poly_levels(f, e):
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    return [bs_poly(f, k) for k in range(1, e + 1)]


def verify_main_theorem(f, e, refinement=1):
    if refinement < 1:
        raise DomainError(f"Refinement must be at least 1, got {refinement}.")
    coarse = gamma_set(f, e)
    fine = gamma_set(f, e + refinement)
    p = coarse.prime
    report = VerificationReport("main-theorem")

    # keeping the last e digits is onto Gamma^e
    truncated = fine.project_first(refinement)
    report.record(truncated.tuples == coarse.tuples, {
        "projection": "drop_first",
        "missing": [list(t.digits) for t in sorted(coarse.tuples - truncated.tuples)],
        "extra": [list(t.digits) for t in sorted(truncated.tuples - coarse.tuples)],
    })
    # keeping the first e digits lands inside Gamma^e
    heads = fine.project_last(refinement)
    report.record(heads.tuples <= coarse.tuples, {
        "projection": "drop_last",
        "extra": [list(t.digits) for t in sorted(heads.tuples - coarse.tuples)],
    })
    top = DigitTuple((p - 1,) * e, p)
    report.record(top in coarse.tuples, {"missing": list(top.digits)})

    for t in fine.sorted():
        root = PPowRational(t.drop_first(refinement).value, e, p)
        report.record(any(root == PPowRational(c.value, e, p) for c in coarse.tuples),
                      {"refined": list(t.digits), "root": root.render()})
    report.note({"gamma": coarse.as_lists(), "refined": fine.as_lists()})
    return report


def quasihomogeneous_check(f, weights, degree):
    """Match each root i != -1 of b_f with -sum w_i(u_i + 1)/d over the Jacobian staircase."""
    ring = f.ring
    p = ring.prime
    weights = [int(w) for w in weights]
    if len(weights) != ring.num_vars:
        raise DomainError(f"Expected {ring.num_vars} weights, got {len(weights)}.")
    if degree % p == 0:
        raise DomainError(f"Degree {degree} vanishes modulo {p}.")
    if f.is_zero():
        raise DomainError("f must be a nonzero polynomial.")
    for exp in f.terms:
        weighted = sum(u * w for u, w in zip(exp, weights))
        if (weighted - degree) % p:
            raise DomainError(f"Monomial {ring.monomial(exp).render()} has weighted degree {weighted}, "
                              f"not {degree} modulo {p}.")

    jacobian = Ideal(ring, [f.derivative(i) for i in range(ring.num_vars)])
    staircase = jacobian.standard_monomials()
    inv_d = pow(degree, -1, p)
    predicted = {}
    for u in staircase:
        value = -sum(w * (x + 1) for w, x in zip(weights, u)) * inv_d % p
        predicted.setdefault(value, []).append(ring.monomial(u).render())

    report = VerificationReport("quasihomogeneous")
    for root in bs_poly(f, 1).char_p_roots:
        if root.value == p - 1:
            continue
        matches = predicted.get(root.value, [])
        if report.record(bool(matches), {"root": root.value, "monomials": []}):
            report.note({"root": root.value, "monomials": matches})
    return report


def threshold_roots(f, ideals, e):
    """nu^J(p^e)/p^e is a root of b_f^(e) for every proper J containing f."""
    factorization = bs_poly(f, e)
    report = VerificationReport("threshold-roots")
    for J in ideals:
        if J.is_unit() or not J.member(f):
            raise DomainError(f"{J!r} must be a proper ideal containing f.")
        ratio = PPowRational(nu(f, J, e), e, factorization.prime)
        if report.record(factorization.contains_root(ratio), {"ideal": J.render(), "ratio": ratio.render()}):
            report.note({"ideal": J.render(), "ratio": ratio.render()})
    return report
