import logging
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import factorial
from .fp_arith import WORD_LIMIT, DigitTuple, binom_mod, p_digits
from .fp_errors import DomainError, ExponentOverflowError, InvariantError, RingMismatchError
from .fp_frobenius import frobenius_power_reduced
from .fp_poly import MvPoly, PolyRing
from .fp_report import VerificationReport
from .fp_singular import chain_drops, padic_chain


_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BfContext:
    """The ring R and the polynomial f shared by every element of B_f."""

    ring: PolyRing
    f: MvPoly
    _powers: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.f.ring != self.ring:
            raise RingMismatchError(f"{self.f} does not belong to the ring {self.ring.var_names}.")

    @classmethod
    def of(cls, f):
        return cls(f.ring, f)

    @property
    def prime(self):
        return self.ring.prime

    def f_pow(self, n):
        cached = self._powers.get(n)
        if cached is None:
            cached = self._powers[n] = self.f.pow(n)
        return cached

    def zero(self):
        return BfElement(self, {})

    def delta(self, m, coeff=None):
        if m < 0:
            raise DomainError(f"delta index must be nonnegative, got {m}.")
        a = self.ring.one() if coeff is None else coeff
        if isinstance(a, int):
            a = self.ring.constant(a)
        return BfElement(self, {m: a})


class BfElement:
    """Finite sum of R-multiples of delta_m; zero coefficients are dropped."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=None):
        self.ctx = ctx
        self.coeffs = {m: a for m, a in sorted((coeffs or {}).items()) if not a.is_zero()}

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, m):
        return self.coeffs.get(m, self.ctx.ring.zero())

    def _check(self, other):
        if other.ctx != self.ctx:
            raise RingMismatchError("Elements of B_f for different f cannot be combined.")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, a in other.coeffs.items():
            _accumulate(out, m, a)
        return BfElement(self.ctx, out)

    def __neg__(self):
        return BfElement(self.ctx, {m: -a for m, a in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a):
        return BfElement(self.ctx, {m: c * a for m, c in self.coeffs.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, BfElement):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, frozenset(self.coeffs.items())))

    def render(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({a.render()})*delta_{m}" for m, a in self.coeffs.items())

    def __repr__(self):
        return f"BfElement({self.render()})"


@dataclass(frozen=True, order=True)
class QIndex:
    """Label of Q^m_(i_1..i_e)."""

    digits: DigitTuple
    m: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise DomainError(f"Q index m must be nonnegative, got {self.m}.")
        if self.digits.level < 1:
            raise DomainError("Q index needs at least one digit.")

    @classmethod
    def of(cls, digits, p, m=0):
        return cls(DigitTuple(tuple(digits), p), m)

    @property
    def level(self):
        return self.digits.level

    @property
    def prime(self):
        return self.digits.prime

    @property
    def sign(self):
        return -1 if sum(self.digits) % 2 else 1

    # index of the leading (lowest) delta in the expansion of Q
    @property
    def delta_index(self):
        return self.m * self.prime ** self.level + self.digits.value

    def __str__(self):
        return f"Q^{self.m}{self.digits}"


def _accumulate(out, m, a):
    current = out.get(m)
    out[m] = a if current is None else current + a


def act_t_power(w, k):
    if k < 0:
        raise DomainError(f"Operator level must be nonnegative, got {k}.")
    ctx = w.ctx
    q = ctx.prime ** k
    fq = ctx.f.frobenius_pow(k)
    out = {}
    for m, a in w.coeffs.items():
        _accumulate(out, m, a * fq)
        if m >= q:
            _accumulate(out, m - q, -a)
    return BfElement(ctx, out)


def act_t(w, n):
    # t^n . w, one t^(p^k) per unit of each base-p digit of n
    if n < 0:
        raise DomainError(f"Power of t must be nonnegative, got {n}.")
    k = 0
    while n:
        n, d = divmod(n, w.ctx.prime)
        for _ in range(d):
            w = act_t_power(w, k)
        k += 1
    return w


def act_dt_general(w, n):
    if n < 0:
        raise DomainError(f"Divided-power order must be nonnegative, got {n}.")
    ctx = w.ctx
    p = ctx.prime
    out = {}
    for m, a in w.coeffs.items():
        if m + n >= WORD_LIMIT:
            raise ExponentOverflowError(f"delta index {m} + {n} leaves the 64-bit range.")
        c = binom_mod(m + n, n, p)
        if c:
            out[m + n] = a.scalar_mul(c)
    return BfElement(ctx, out)


def act_dt(w, k):
    if k < 0:
        raise DomainError(f"Operator level must be nonnegative, got {k}.")
    return act_dt_general(w, w.ctx.prime ** k)


def act_theta(w, k):
    return act_dt(act_t_power(w, k), k)


def act_theta_general(w, m):
    # theta_m through its digit factorization prod_i (1/a_i!) prod_{j<a_i} (theta_(p^i) + j)
    if m < 0:
        raise DomainError(f"theta index must be nonnegative, got {m}.")
    p = w.ctx.prime
    k = 0
    while m:
        m, a = divmod(m, p)
        for j in range(a):
            w = act_theta(w, k) + w.scale(j)
        if a > 1:
            w = w.scale(pow(factorial(a) % p, -1, p))
        k += 1
    return w


def theta_direct(w, m):
    return act_dt_general(act_t(w, m), m)


@lru_cache(maxsize=8192)
def q_element(ctx, idx):
    # Q^m_i = (-1)^(sum i) sum_j prod_l C(i_l + j_l, i_l) f^(sum j_l p^(l-1)) delta_(m p^e + sum (i_l + j_l) p^(l-1))
    if idx.prime != ctx.prime:
        raise DomainError(f"Q index over F_{idx.prime} used with f over F_{ctx.prime}.")
    p = ctx.prime
    digits = idx.digits.digits
    base = idx.m * p ** idx.level
    out = {}
    for js in product(*(range(p - i) for i in digits)):
        c = idx.sign
        f_exp = 0
        offset = base
        scale = 1
        for i, j in zip(digits, js):
            c = c * binom_mod(i + j, i, p) % p
            f_exp += j * scale
            offset += (i + j) * scale
            scale *= p
        if c:
            _accumulate(out, offset, ctx.f_pow(f_exp).scalar_mul(c))
    return BfElement(ctx, out)


def _project(w, k, i):
    # -prod_{j != i} (theta_(p^k) + j) . w
    for j in range(w.ctx.prime):
        if j != i:
            w = act_theta(w, k) + w.scale(j)
    return -w


def eigen_decompose(w, e):
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    p = w.ctx.prime
    parts = {(): w} if not w.is_zero() else {}
    for k in range(e):
        split = {}
        for head, part in parts.items():
            for i in range(p):
                piece = _project(part, k, i)
                if not piece.is_zero():
                    split[head + (i,)] = piece
        parts = split
    return {DigitTuple(digits, p): part for digits, part in sorted(parts.items())}


def q_coordinates(w, e):
    # coordinates of w in the Q basis at level e, by back-substitution from the lowest delta
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    ctx = w.ctx
    p = ctx.prime
    q = p ** e
    work = dict(w.coeffs)
    coords = {}
    while work:
        n = min(work)
        m, r = divmod(n, q)
        idx = QIndex(p_digits(r, p, e), m)
        coord = work[n] if idx.sign == 1 else -work[n]
        coords[idx] = coord
        for k, b in q_element(ctx, idx).coeffs.items():
            value = work[k] - coord * b if k in work else -(coord * b)
            if value.is_zero():
                work.pop(k, None)
            else:
                work[k] = value
    return dict(sorted(coords.items(), key=lambda item: item[0].delta_index))


def from_q_coordinates(ctx, coords):
    total = ctx.zero()
    for idx, a in coords.items():
        total = total + q_element(ctx, idx).scale(a)
    return total


def frobenius_map(w):
    # a delta_m -> a^p delta_(p(m+1)-1), the class of a^p / (f-t)^(p(m+1))
    p = w.ctx.prime
    return BfElement(w.ctx, {p * (m + 1) - 1: a.frobenius_pow(1) for m, a in w.coeffs.items()})


def in_component(w, digits):
    return all((act_theta(w, k) + w.scale(i)).is_zero() for k, i in enumerate(digits))


def theta_scalar(digits, m):
    # eigenvalue of theta_m on the component (i_1..i_e), for 0 <= m < p^e
    p = digits.prime
    value = 1
    for i, b in zip(digits, p_digits(m, p, digits.level)):
        value = value * binom_mod(i, b, p) * (-1) ** b % p
    return value


def t_shift_target(digits, position):
    # component reached by t^(p^position) from (i_1..i_e), and whether the shift wraps past i_e
    p = digits.prime
    d = list(digits)
    k = position
    while k < len(d) and d[k] == 0:
        d[k] = p - 1
        k += 1
    if k == len(d):
        return DigitTuple(tuple(d), p), True
    d[k] -= 1
    return DigitTuple(tuple(d), p), False


def dt_shift_target(digits, position):
    d = list(digits)
    d[position] = (d[position] + 1) % digits.prime
    return DigitTuple(tuple(d), digits.prime)


def all_tuples(p, e):
    return [DigitTuple(digits, p) for digits in product(range(p), repeat=e)]


def random_element(ctx, rng, max_index, terms=3, degree=2):
    ring = ctx.ring
    p = ctx.prime
    coeffs = {}
    for _ in range(rng.randint(1, terms)):
        poly = {}
        for _ in range(rng.randint(1, 3)):
            exp = tuple(rng.randint(0, degree) for _ in range(ring.num_vars))
            poly[exp] = rng.randint(1, p - 1)
        coeffs[rng.randrange(max_index)] = MvPoly(ring, poly)
    element = BfElement(ctx, coeffs)
    return element if not element.is_zero() else ctx.delta(0)


def verify_basis_actions(ctx, e, bound, samples=2, seed=0):
    """Action of d_t^[p^(l-1)], t^(p^(l-1)) and theta_(p^(l-1)) on every Q^m with m <= bound."""
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    p = ctx.prime
    report = VerificationReport("basis-actions")
    for digits in all_tuples(p, e):
        for m in range(bound + 1):
            idx = QIndex(digits, m)
            element = q_element(ctx, idx)
            for k, i in enumerate(digits):
                where = {"tuple": list(digits.digits), "m": m, "level": k + 1}
                if i == p - 1:
                    expected = ctx.zero()
                else:
                    expected = q_element(ctx, QIndex(dt_shift_target(digits, k), m)).scale(-(i + 1))
                report.record(act_dt(element, k) == expected, {"law": "d_t", **where})

                target, wrapped = t_shift_target(digits, k)
                if not wrapped:
                    expected = q_element(ctx, QIndex(target, m))
                else:
                    expected = q_element(ctx, QIndex(target, m)).scale(ctx.f.frobenius_pow(e))
                    if m > 0:
                        expected = expected - q_element(ctx, QIndex(target, m - 1))
                report.record(act_t_power(element, k) == expected, {"law": "t", **where})

                report.record(act_theta(element, k) == element.scale(-i), {"law": "theta", **where})
            # Q^m_i is t^n applied to delta_((m+1)p^e - 1), n = sum (p - 1 - i_l) p^(l-1)
            n = sum((p - 1 - i) * p ** k for k, i in enumerate(digits))
            top = ctx.delta((m + 1) * p ** e - 1)
            report.record(act_t(top, n) == element,
                          {"law": "t-power form", "tuple": list(digits.digits), "m": m})

    rng = random.Random(seed)
    for _ in range(samples):
        w = random_element(ctx, rng, 2 * p ** e)
        for digits, part in eigen_decompose(w, e).items():
            for k in range(e):
                where = {"tuple": list(digits.digits), "level": k + 1}
                report.record(in_component(act_dt(part, k), dt_shift_target(digits, k)),
                              {"law": "d_t shift", **where})
                report.record(in_component(act_t_power(part, k), t_shift_target(digits, k)[0]),
                              {"law": "t shift", **where})
    _logger.info("basis actions at level %d: %d checks", e, report.checked)
    return report


def verify_level_transformation(ctx, e):
    """Q^0_i = sum_j (-1)^j C(p-1, j) f^(j p^e) Q^0_(i, j), expanded on both sides."""
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    p = ctx.prime
    q = p ** e
    report = VerificationReport("level-transformation")
    for digits in all_tuples(p, e):
        lhs = q_element(ctx, QIndex(digits, 0))
        rhs = ctx.zero()
        for j in range(p):
            c = binom_mod(p - 1, j, p) * (-1) ** j
            finer = QIndex(DigitTuple(digits.digits + (j,), p), 0)
            rhs = rhs + q_element(ctx, finer).scale(ctx.f_pow(j * q).scalar_mul(c))
        report.record(lhs == rhs, {"tuple": list(digits.digits)})
    return report


def delta_expansion(ctx, e):
    """Q-coordinates of delta_0: (-1)^(sum i) C(p^e - 1, m_i) f^(m_i) at Q^0_i, m_i the value of i."""
    p = ctx.prime
    q = p ** e
    coords = {}
    for digits in all_tuples(p, e):
        idx = QIndex(digits, 0)
        c = binom_mod(q - 1, digits.value, p) * idx.sign
        if c % p:
            coords[idx] = ctx.f_pow(digits.value).scalar_mul(c)
    return coords


def verify_decomposition(ctx, e, samples=3, seed=0):
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    p = ctx.prime
    q = p ** e
    report = VerificationReport("decomposition")

    delta = ctx.delta(0)
    expected = delta_expansion(ctx, e)
    report.record(q_coordinates(delta, e) == expected, {"element": "delta_0", "law": "coordinates"})
    parts = eigen_decompose(delta, e)
    for idx, a in expected.items():
        report.record(parts.get(idx.digits) == q_element(ctx, idx).scale(a),
                      {"element": "delta_0", "law": "component", "tuple": list(idx.digits.digits)})

    rng = random.Random(seed)
    for sample in range(samples):
        w = random_element(ctx, rng, 2 * q)
        where = {"sample": sample}
        parts = eigen_decompose(w, e)
        thetas = range(1, q) if q <= 9 else sorted(rng.sample(range(1, q), 8))
        total = ctx.zero()
        for part in parts.values():
            total = total + part
        report.record(total == w, {"law": "sum", **where})

        coords = q_coordinates(w, e)
        report.record(from_q_coordinates(ctx, coords) == w, {"law": "reconstruction", **where})

        for digits, part in parts.items():
            at = {"tuple": list(digits.digits), **where}
            report.record(in_component(part, digits), {"law": "annihilation", **at})
            report.record(eigen_decompose(part, e) == {digits: part}, {"law": "idempotent", **at})
            own = {idx: a for idx, a in coords.items() if idx.digits == digits}
            report.record(from_q_coordinates(ctx, own) == part, {"law": "projector vs basis", **at})
            for m in thetas:
                report.record(act_theta_general(part, m) == part.scale(theta_scalar(digits, m)),
                              {"law": "theta scalar", "theta": m, **at})
            lifted = DigitTuple((p - 1,) + digits.digits, p)
            report.record(in_component(frobenius_map(part), lifted), {"law": "frobenius", **at})
        report.record(set(parts) == {idx.digits for idx in coords}, {"law": "support", **where})

        if e >= 2:
            lower = eigen_decompose(w, e - 1)
            grouped = {}
            for digits, part in parts.items():
                head = digits.drop_last()
                grouped[head] = grouped[head] + part if head in grouped else part
            grouped = {head: part for head, part in grouped.items() if not part.is_zero()}
            report.record(grouped == lower, {"law": "level compatibility", **where})
    _logger.info("decomposition at level %d: %d checks", e, report.checked)
    return report


@dataclass(frozen=True)
class MfeComponent:
    """(tau(f^(m/p^e)))^[p^e] and its successor for the component of M_f^e at one digit tuple."""

    ideal: object
    next_ideal: object
    nonvanishing: bool


def mfe_component_ideals(f, e):
    """Component ideals of M_f^e; the nonvanishing flags must reproduce Gamma_f^e."""
    if f.is_zero() or f.is_constant():
        raise DomainError(f"{f} must be a nonzero nonunit.")
    if e < 1:
        raise DomainError(f"Level must be at least 1, got {e}.")
    p = f.ring.prime
    chain = padic_chain(f, e)
    bracketed = [frobenius_power_reduced(ideal, e) for ideal in chain]
    components = {}
    for digits in all_tuples(p, e):
        m = digits.value
        current, following = bracketed[m], bracketed[m + 1]
        components[digits] = MfeComponent(current, following, not following.contains(current))
    flagged = {m for m in range(p ** e) if components[p_digits(m, p, e)].nonvanishing}
    if flagged != set(chain_drops(chain)):
        raise InvariantError(f"Component flags at level {e} disagree with the test-ideal chain.")
    return components
