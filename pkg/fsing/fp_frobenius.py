import logging
from .fp_errors import DomainError
from .fp_ideals import Ideal
from .fp_poly import MvPoly


_logger = logging.getLogger(__name__)


def frobenius_power(ideal, e):
    if e < 0:
        raise DomainError(f"Frobenius level must be nonnegative, got {e}.")
    if e == 0:
        return ideal
    return Ideal(ideal.ring, [g.frobenius_pow(e) for g in ideal.generators])


# split h over the basis {x^a : 0 <= a_i < p^e} of R over R^(p^e):
# the term c*x^u goes to bucket u mod p^e with residual exponent u // p^e
def root_components(h, e):
    q = h.ring.prime ** e
    buckets = {}
    for exp, c in h.terms.items():
        a = tuple(x % q for x in exp)
        buckets.setdefault(a, {})[tuple(x // q for x in exp)] = c
    return {a: MvPoly(h.ring, terms, prune=False) for a, terms in sorted(buckets.items())}


def frobenius_root(ideal, e):
    """b^[1/p^e]: the ideal generated by every basis component of every generator."""
    if e < 0:
        raise DomainError(f"Frobenius level must be nonnegative, got {e}.")
    if e == 0:
        return ideal
    ring = ideal.ring
    parts = []
    seen = set()
    for h in ideal.generators:
        for g in root_components(h, e).values():
            g = g.monic()
            if g.is_unit():
                return Ideal.unit(ring)
            if g not in seen:
                seen.add(g)
                parts.append(g)
    raw = Ideal(ring, parts)
    # interreduce: the reduced Groebner basis replaces the component list
    root = Ideal.from_basis(ring, raw.groebner())
    _logger.debug("frobenius_root(e=%d): %d components -> %d generators", e, len(parts), len(root.generators))
    return root


def frobenius_power_reduced(ideal, e):
    # J^[p^e] carrying its reduced Groebner basis: the p^e-th powers of the reduced basis of J
    if e < 0:
        raise DomainError(f"Frobenius level must be nonnegative, got {e}.")
    return Ideal.from_basis(ideal.ring, [g.frobenius_pow(e) for g in ideal.groebner()])
