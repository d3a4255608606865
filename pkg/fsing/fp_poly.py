import re
from dataclasses import dataclass
from enum import Enum
from operator import add
from .fp_arith import FpScalar, WORD_LIMIT, check_prime
from .fp_errors import DomainError, ExponentOverflowError, RingMismatchError


IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _grevlex_key(exp):
    return (sum(exp), tuple(-x for x in reversed(exp)))


def _grlex_key(exp):
    return (sum(exp), exp)


def _lex_key(exp):
    return exp


class MonomialOrder(str, Enum):
    """Term orders on exponent vectors; larger key means larger monomial."""

    GREVLEX = "grevlex"
    LEX = "lex"
    GRLEX = "grlex"

    @property
    def key(self):
        return {"grevlex": _grevlex_key, "lex": _lex_key, "grlex": _grlex_key}[self.value]


@dataclass(frozen=True)
class PolyRing:
    """F_p[x_1, ..., x_n] with named variables and a default term order."""

    prime: int
    var_names: tuple
    order: MonomialOrder = MonomialOrder.GREVLEX

    def __post_init__(self):
        check_prime(self.prime)
        object.__setattr__(self, "var_names", tuple(self.var_names))
        object.__setattr__(self, "order", MonomialOrder(self.order))
        if not self.var_names:
            raise DomainError("A polynomial ring needs at least one variable.")
        for name in self.var_names:
            if not IDENTIFIER.match(name):
                raise DomainError(f"Variable name '{name}' is not an identifier.")
        if len(set(self.var_names)) != len(self.var_names):
            raise DomainError(f"Variable names must be distinct: {', '.join(self.var_names)}.")

    @property
    def num_vars(self):
        return len(self.var_names)

    def index(self, name):
        try:
            return self.var_names.index(name)
        except ValueError:
            raise DomainError(f"Unknown variable '{name}'.")

    def zero(self):
        return MvPoly(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return MvPoly(self, {(0,) * self.num_vars: int(c)})

    def var(self, name_or_index):
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exp = [0] * self.num_vars
        exp[i] = 1
        return MvPoly(self, {tuple(exp): 1})

    def gens(self):
        return tuple(self.var(i) for i in range(self.num_vars))

    def monomial(self, exp, c=1):
        return MvPoly(self, {tuple(exp): int(c)})

    # same ring with one more variable, named so it cannot clash with existing ones
    def extend(self, name="z"):
        while name in self.var_names:
            name += "_"
        return PolyRing(self.prime, self.var_names + (name,), self.order)


class MvPoly:
    """Sparse polynomial over F_p: exponent vector -> coefficient in [0, p)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None, prune=True):
        self.ring = ring
        if not prune:
            self.terms = terms
            return
        p = ring.prime
        n = ring.num_vars
        clean = {}
        for exp, c in (terms or {}).items():
            c = int(c) % p
            if c:
                if len(exp) != n:
                    raise DomainError(f"Exponent vector {exp} does not have {n} entries.")
                clean[tuple(exp)] = c
        self.terms = clean

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(exp) for exp in self.terms)

    def is_unit(self):
        return bool(self.terms) and self.is_constant()

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatchError(f"Ring mismatch: {self.ring.var_names} over F_{self.ring.prime} "
                                    f"vs {other.ring.var_names} over F_{other.ring.prime}.")

    def _coerce(self, other):
        if isinstance(other, MvPoly):
            self._check_ring(other)
            return other
        if isinstance(other, (int, FpScalar)):
            return self.ring.constant(int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.prime
        res = dict(self.terms)
        for exp, c in other.terms.items():
            v = (res.get(exp, 0) + c) % p
            if v:
                res[exp] = v
            else:
                res.pop(exp, None)
        return MvPoly(self.ring, res, prune=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.prime
        return MvPoly(self.ring, {exp: p - c for exp, c in self.terms.items()}, prune=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scalar_mul(self, c):
        c = int(c) % self.ring.prime
        if c == 0:
            return self.ring.zero()
        p = self.ring.prime
        return MvPoly(self.ring, {exp: v * c % p for exp, v in self.terms.items()}, prune=False)

    def max_exponents(self):
        n = self.ring.num_vars
        if not self.terms:
            return (0,) * n
        return tuple(max(exp[i] for exp in self.terms) for i in range(n))

    def _check_product(self, other):
        for a, b in zip(self.max_exponents(), other.max_exponents()):
            if a + b >= WORD_LIMIT:
                raise ExponentOverflowError(f"Exponent {a} + {b} leaves the 64-bit range.")

    def __mul__(self, other):
        if isinstance(other, (int, FpScalar)):
            return self.scalar_mul(other)
        if not isinstance(other, MvPoly):
            return NotImplemented
        self._check_ring(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        self._check_product(other)
        res = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(map(add, ea, eb))
                res[exp] = res.get(exp, 0) + ca * cb
        return MvPoly(self.ring, res)

    __rmul__ = __mul__

    def frobenius_pow(self, e):
        # f^(p^e): coefficients of F_p are Frobenius-fixed, so only exponents scale
        if e < 0:
            raise DomainError(f"Frobenius level must be nonnegative, got {e}.")
        if e == 0:
            return self
        q = self.ring.prime ** e
        top = max(self.max_exponents(), default=0)
        if top * q >= WORD_LIMIT:
            raise ExponentOverflowError(f"Exponent {top} * {self.ring.prime}^{e} leaves the 64-bit range.")
        return MvPoly(self.ring, {tuple(x * q for x in exp): c for exp, c in self.terms.items()},
                      prune=False)

    def _pow_small(self, d):
        result = self.ring.one()
        base = self
        while d:
            if d & 1:
                result = result * base
            d >>= 1
            if d:
                base = base * base
        return result

    def pow(self, m):
        # f^m via the base-p digits of m: f^m = prod_i (f^(d_i))^(p^i)
        if m < 0:
            raise DomainError(f"Exponent must be nonnegative, got {m}.")
        p = self.ring.prime
        result = self.ring.one()
        cache = {}
        level = 0
        while m:
            m, d = divmod(m, p)
            if d:
                if d not in cache:
                    cache[d] = self._pow_small(d)
                result = result * cache[d].frobenius_pow(level)
            level += 1
        return result

    def __pow__(self, m):
        return self.pow(m)

    def derivative(self, var):
        i = var if isinstance(var, int) else self.ring.index(var)
        res = {}
        for exp, c in self.terms.items():
            if exp[i]:
                lowered = list(exp)
                lowered[i] -= 1
                res[tuple(lowered)] = c * exp[i]
        return MvPoly(self.ring, res)

    # -- ordering ----------------------------------------------------------

    def sorted_terms(self, order=None):
        key = MonomialOrder(order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order=None):
        if not self.terms:
            raise DomainError("The zero polynomial has no leading term.")
        key = MonomialOrder(order or self.ring.order).key
        exp = max(self.terms, key=key)
        return exp, self.terms[exp]

    def leading_monomial(self, order=None):
        return self.leading_term(order)[0]

    def monic(self, order=None):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scalar_mul(pow(c, -1, self.ring.prime))

    def coefficient(self, exp):
        return FpScalar(self.terms.get(tuple(exp), 0), self.ring.prime)

    def embed(self, ring):
        if ring.prime != self.ring.prime or ring.var_names[:self.ring.num_vars] != self.ring.var_names:
            raise RingMismatchError(f"{ring.var_names} does not extend {self.ring.var_names}.")
        pad = (0,) * (ring.num_vars - self.ring.num_vars)
        return MvPoly(ring, {exp + pad: c for exp, c in self.terms.items()}, prune=False)

    # -- comparison and text -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MvPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def _render_monomial(self, exp):
        parts = []
        for name, k in zip(self.ring.var_names, exp):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def render(self, order=None):
        if not self.terms:
            return "0"
        out = []
        for exp, c in self.sorted_terms(order):
            mono = self._render_monomial(exp)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            else:
                out.append(f"{c}*{mono}")
        return " + ".join(out)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MvPoly({self.render()!r} over F_{self.ring.prime}[{','.join(self.ring.var_names)}])"
