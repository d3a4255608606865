from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import comb
from sympy import isprime
from .fp_errors import DomainError


WORD_LIMIT = 1 << 64


@lru_cache(maxsize=None, typed=True)
def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise DomainError(f"Prime must be an integer, got {p!r}.")
    if p < 2 or p >= WORD_LIMIT:
        raise DomainError(f"Prime {p} is outside the supported range [2, 2^64).")
    if not isprime(p):
        raise DomainError(f"{p} is not a prime.")
    return p


@dataclass(frozen=True)
class FpScalar:
    """An element of F_p, carrying its prime."""

    value: int
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime)

    def _coerce(self, other):
        if isinstance(other, FpScalar):
            if other.prime != self.prime:
                raise DomainError(f"Cannot combine elements of F_{self.prime} and F_{other.prime}.")
            return other.value
        if isinstance(other, int):
            return other % self.prime
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value + v, self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value - v, self.prime)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(v - self.value, self.prime)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FpScalar(self.value * v, self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.prime)

    def __eq__(self, other):
        if isinstance(other, FpScalar):
            return self.prime == other.prime and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.prime
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.prime))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def inverse(self):
        if self.value == 0:
            raise DomainError(f"0 has no inverse in F_{self.prime}.")
        return FpScalar(pow(self.value, -1, self.prime), self.prime)

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True, order=True)
class DigitTuple:
    """Base-p digits (d_1, ..., d_e), least significant first."""

    digits: tuple
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        for d in self.digits:
            if not 0 <= d < self.prime:
                raise DomainError(f"Digit {d} is not in [0, {self.prime}).")

    @property
    def level(self):
        return len(self.digits)

    @property
    def value(self):
        total = 0
        for d in reversed(self.digits):
            total = total * self.prime + d
        return total

    def drop_first(self, count=1):
        return DigitTuple(self.digits[count:], self.prime)

    def drop_last(self, count=1):
        return DigitTuple(self.digits[:len(self.digits) - count], self.prime)

    def __iter__(self):
        return iter(self.digits)

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, index):
        return self.digits[index]

    def __str__(self):
        return "(" + ",".join(str(d) for d in self.digits) + ")"


@total_ordering
@dataclass(frozen=True, eq=False)
class PPowRational:
    """Exact rational num / p^e, stored canonically (e = 0 or p does not divide num)."""

    num: int
    e: int
    prime: int

    def __post_init__(self):
        if self.e < 0:
            raise DomainError(f"Denominator exponent must be nonnegative, got {self.e}.")
        num, e = self.num, self.e
        while e > 0 and num % self.prime == 0:
            num //= self.prime
            e -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "e", e)

    @classmethod
    def from_fraction(cls, q, p):
        q = Fraction(q)
        den, e = q.denominator, 0
        while den % p == 0:
            den //= p
            e += 1
        if den != 1:
            raise DomainError(f"{q} does not have a power of {p} as denominator.")
        return cls(q.numerator, e, p)

    @classmethod
    def from_json(cls, data, p):
        return cls(int(data["num"]), int(data["den_exp"]), p)

    @property
    def denominator(self):
        return self.prime ** self.e

    def to_fraction(self):
        return Fraction(self.num, self.denominator)

    def to_json(self):
        return {"num": str(self.num), "den_exp": self.e}

    def render(self):
        if self.e == 0:
            return str(self.num)
        return f"{self.num}/{self.denominator}"

    def __eq__(self, other):
        if isinstance(other, PPowRational):
            return self.to_fraction() == other.to_fraction()
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, PPowRational):
            return self.to_fraction() < other.to_fraction()
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __str__(self):
        return self.render()


# C(a, b) mod p for single digits
@lru_cache(maxsize=4096)
def _small_binom(a, b, p):
    if b > a:
        return 0
    return comb(a, b) % p


def lucas_binom(m: int, n: int, p: int) -> FpScalar:
    if m < 0 or n < 0:
        raise DomainError(f"Binomial arguments must be nonnegative, got ({m}, {n}).")
    result = 1
    if n > m:
        return FpScalar(0, p)
    while n > 0:
        m, a = divmod(m, p)
        n, b = divmod(n, p)
        if b > a:
            return FpScalar(0, p)
        result = result * _small_binom(a, b, p) % p
    return FpScalar(result, p)


def binom_mod(m: int, n: int, p: int) -> int:
    # C(m, n) mod p as a plain int; 0 when n < 0 or n > m
    if n < 0 or m < 0 or n > m:
        return 0
    return lucas_binom(m, n, p).value


def p_digits(m: int, p: int, e: int) -> DigitTuple:
    if e < 0:
        raise DomainError(f"Level must be nonnegative, got {e}.")
    if m < 0 or m >= p ** e:
        raise DomainError(f"{m} is outside the digit range [0, {p}^{e}).")
    digits = []
    for _ in range(e):
        m, d = divmod(m, p)
        digits.append(d)
    return DigitTuple(tuple(digits), p)


def ceil_scaled(lam, p: int, e: int) -> int:
    q = Fraction(lam) * p ** e
    return -((-q.numerator) // q.denominator)


def c_digits(lam, p: int, e: int) -> DigitTuple:
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}.")
    digits = []
    for _ in range(e):
        c = ceil_scaled(lam, p, 1) - 1
        digits.append(c)
        lam = lam * p - c
    return DigitTuple(tuple(digits), p)
