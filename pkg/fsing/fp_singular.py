import logging
from dataclasses import dataclass
from fractions import Fraction
from .fp_arith import DigitTuple, PPowRational, ceil_scaled, p_digits
from .fp_config import Settings
from .fp_errors import DomainError, InvariantError, ResourceCapError
from .fp_frobenius import frobenius_power_reduced, frobenius_root
from .fp_ideals import Ideal


_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GammaSet:
    """Digit tuples (i_1..i_e) at which the p-adic test-ideal chain drops."""

    level: int
    prime: int
    tuples: frozenset

    def __contains__(self, item):
        if not isinstance(item, DigitTuple):
            item = DigitTuple(tuple(item), self.prime)
        return item in self.tuples

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.tuples)

    # largest value first, so (p-1, ..., p-1) leads
    def sorted(self):
        return sorted(self.tuples, key=lambda t: t.value, reverse=True)

    def as_lists(self):
        return [list(t.digits) for t in self.sorted()]

    def project_first(self, count=1):
        return GammaSet(self.level - count, self.prime, frozenset(t.drop_first(count) for t in self.tuples))

    def project_last(self, count=1):
        return GammaSet(self.level - count, self.prime, frozenset(t.drop_last(count) for t in self.tuples))


@dataclass(frozen=True)
class JumpReport:
    """Intervals (m/p^e, (m+1)/p^e] certified to contain an F-jumping exponent."""

    level: int
    prime: int
    jumps: tuple
    chain: tuple

    @property
    def drop_indices(self):
        return [lo.num * self.prime ** (self.level - lo.e) for lo, _ in self.jumps]


@dataclass(frozen=True)
class TauResult:
    ideal: Ideal
    level: int
    stabilized: bool


def _require_nonzero(f, what="f"):
    if f.is_zero():
        raise DomainError(f"{what} must be a nonzero polynomial.")


def _require_nonunit(f):
    _require_nonzero(f)
    if f.is_constant():
        raise DomainError(f"{f} is a unit; it has no F-jumping exponents in (0, 1].")


def _require_level(e, least=1):
    if e < least:
        raise DomainError(f"Level must be at least {least}, got {e}.")


def test_ideal_padic(f, m, e):
    # tau(f^(m/p^e)) = (f^m)^[1/p^e]
    _require_nonzero(f)
    if m < 0 or e < 0:
        raise DomainError(f"m and e must be nonnegative, got m={m}, e={e}.")
    return frobenius_root(Ideal(f.ring, [f.pow(m)]), e)


def test_ideal(f, lam, e_start=1, e_cap=None):
    """Walk the increasing chain (f^ceil(lam p^e))^[1/p^e] until two consecutive levels agree."""
    _require_nonzero(f)
    lam = Fraction(lam)
    if lam < 0:
        raise DomainError(f"lambda must be nonnegative, got {lam}.")
    if e_cap is None:
        e_cap = max(Settings.get("test_ideal_e_cap"), e_start)
    if e_start < 0 or e_cap < e_start:
        raise DomainError(f"Need 0 <= e_start <= e_cap, got e_start={e_start}, e_cap={e_cap}.")
    ring = f.ring
    if lam == 0:
        return TauResult(Ideal.unit(ring), e_start, True)
    p = ring.prime
    previous = None
    for e in range(e_start, e_cap + 1):
        current = frobenius_root(Ideal(ring, [f.pow(ceil_scaled(lam, p, e))]), e)
        if previous is not None and previous.equal(current):
            _logger.info("tau(f^%s) stabilized at level %d", lam, e - 1)
            return TauResult(previous, e - 1, True)
        previous = current
    _logger.warning("tau(f^%s) did not stabilize by level %d", lam, e_cap)
    return TauResult(previous, e_cap, False)


def padic_chain(f, e, h=None):
    # I_m = (h f^m)^[1/p^e] for m = 0..p^e, checked to be weakly decreasing
    _require_nonzero(f)
    ring = f.ring
    if h is None:
        h = ring.one()
    _require_nonzero(h, "h")
    q = ring.prime ** e
    chain = []
    power = h
    for m in range(q + 1):
        chain.append(frobenius_root(Ideal(ring, [power]), e))
        if m < q:
            power = power * f
    for m in range(q):
        if not chain[m].contains(chain[m + 1]):
            raise InvariantError(f"Test-ideal chain is not monotone at m={m}, e={e}.")
    _logger.info("chain at level %d built: %d ideals", e, len(chain))
    return chain


def chain_drops(chain):
    return [m for m in range(len(chain) - 1) if not chain[m + 1].contains(chain[m])]


def _gamma_from_chain(chain, p, e):
    return GammaSet(e, p, frozenset(p_digits(m, p, e) for m in chain_drops(chain)))


def gamma_set(f, e):
    _require_nonunit(f)
    _require_level(e)
    p = f.ring.prime
    return _gamma_from_chain(padic_chain(f, e), p, e)


def gamma_set_relative(f, h, e):
    """Gamma_{f,w}^e for w = h*delta: drops of m -> (h f^m)^[1/p^e]."""
    _require_nonzero(f)
    _require_nonzero(h, "h")
    _require_level(e)
    p = f.ring.prime
    return _gamma_from_chain(padic_chain(f, e, h), p, e)


def f_jumping_exponents(f, e):
    _require_nonunit(f)
    _require_level(e)
    p = f.ring.prime
    chain = padic_chain(f, e)
    jumps = tuple((PPowRational(m, e, p), PPowRational(m + 1, e, p)) for m in chain_drops(chain))
    return JumpReport(e, p, jumps, tuple(chain))


def nu(f, J, e, power_cap=None):
    """Largest r with f^r not in J^[p^e] (0 when there is none)."""
    _require_level(e)
    ring = f.ring
    if J.is_unit():
        raise DomainError("nu is defined only for a proper ideal J.")
    if not J.radical_member(f):
        raise DomainError(f"{f} is not in the radical of the ideal.")
    if power_cap is None:
        power_cap = Settings.get("nu_power_cap")
    k = None
    for j in range(1, power_cap + 1):
        if J.member(f.pow(j)):
            k = j
            break
    if k is None:
        raise ResourceCapError(f"No power f^j with j <= {power_cap} lies in the ideal.")
    bracket = frobenius_power_reduced(J, e)
    # f^0 = 1 is outside the proper ideal J^[q]; (f^k)^q is inside it
    lo, hi = 0, k * ring.prime ** e
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bracket.member(f.pow(mid)):
            hi = mid
        else:
            lo = mid
    _logger.debug("nu search at level %d: k=%d, result %d", e, k, lo)
    return lo


def f_threshold_approximations(f, J, e_max):
    p = f.ring.prime
    return [(e, n, PPowRational(n, e, p)) for e in range(1, e_max + 1) for n in [nu(f, J, e)]]
