"""p-adic integers at fixed absolute precision.

An element is a residue mod p^prec together with the number of guaranteed
digits ``prec``.  Arithmetic propagates precision by the min rule; dividing by
p^v costs v digits.  Convention: precision is absolute (digits of the value),
not relative to the valuation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    NonIntegralCoefficient,
    NotAUnit,
    PrecisionExhausted,
    ZeroResidue,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Valuation:
    """Either an exact valuation v, or the lower bound ">= v" when the
    residue vanishes at the working precision."""

    __slots__ = ("v", "exact")

    def __init__(self, v: int, exact: bool = True):
        self.v = v
        self.exact = exact

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact and self.v == other
        if isinstance(other, Valuation):
            return self.exact == other.exact and self.v == other.v
        return NotImplemented

    def __repr__(self):
        return f"{self.v}" if self.exact else f">= {self.v}"


class PadicCtx:
    """Fixed odd prime p and absolute precision N (work mod p^N)."""

    __slots__ = ("p", "N", "modulus", "_teich", "_beta")

    def __init__(self, p: int, N: int):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p}")
        if N < 1:
            raise ValueError(f"precision must be >= 1, got {N}")
        self.p = p
        self.N = N
        self.modulus = p ** N
        self._teich = {}
        self._beta = None

    def __eq__(self, other):
        return (
            isinstance(other, PadicCtx)
            and self.p == other.p
            and self.N == other.N
        )

    def __hash__(self):
        return hash((self.p, self.N))

    def __repr__(self):
        return f"PadicCtx(p={self.p}, N={self.N})"

    def of(self, value, prec: int | None = None) -> "PadicInt":
        return PadicInt(self, value, prec)

    def from_rational(self, q) -> "PadicInt":
        """Reduce an exact rational with denominator prime to p."""
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise NonIntegralCoefficient(
                f"denominator of {q} is divisible by p={self.p}"
            )
        den_inv = pow(q.denominator, -1, self.modulus)
        return PadicInt(self, q.numerator * den_inv)

    def teichmuller(self, a) -> "PadicInt":
        """The (p-1)th root of unity congruent to a mod p, by iterating
        x -> x^p to its fixed point."""
        a0 = int(a.value if isinstance(a, PadicInt) else a) % self.p
        if a0 == 0:
            raise ZeroResidue("Teichmuller lift needs a nonzero residue mod p")
        cached = self._teich.get(a0)
        if cached is None:
            x = a0
            for _ in range(self.N + 2):
                x_next = pow(x, self.p, self.modulus)
                if x_next == x:
                    break
                x = x_next
            else:
                raise AssertionError("Teichmuller iteration failed to settle")
            cached = self._teich[a0] = PadicInt(self, x)
        return cached

    def beta(self) -> "PadicInt":
        """The unique (p-1)th root of 1-p congruent to 1 mod p
        (Newton iteration on x^{p-1} - (1-p))."""
        if self._beta is None:
            p, m = self.p, self.modulus
            target = (1 - p) % m
            x = 1
            for _ in range(self.N + 2):
                fx = (pow(x, p - 1, m) - target) % m
                if fx == 0:
                    break
                dfx = ((p - 1) * pow(x, p - 2, m)) % m
                x = (x - fx * pow(dfx, -1, m)) % m
            else:
                raise AssertionError("beta iteration failed to settle")
            self._beta = PadicInt(self, x)
        return self._beta


class PadicInt:
    __slots__ = ("ctx", "value", "prec")

    def __init__(self, ctx: PadicCtx, value: int, prec: int | None = None):
        if prec is None:
            prec = ctx.N
        if prec < 1:
            raise PrecisionExhausted("no guaranteed digits remain")
        if prec > ctx.N:
            prec = ctx.N
        self.ctx = ctx
        self.prec = prec
        self.value = int(value) % ctx.p ** prec

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicInt):
            if other.ctx != self.ctx:
                raise ValueError("mixed p-adic contexts")
            return other
        if isinstance(other, int):
            return PadicInt(self.ctx, other)
        return None

    def lift(self) -> int:
        return self.value

    def residue(self, k: int) -> int:
        if k > self.prec:
            raise PrecisionExhausted(
                f"residue mod p^{k} requested but only {self.prec} digits known"
            )
        return self.value % self.ctx.p ** k

    def reduce_to(self, prec: int) -> "PadicInt":
        return PadicInt(self.ctx, self.value, min(prec, self.prec))

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.value + o.value, min(self.prec, o.prec))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.value - o.value, min(self.prec, o.prec))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PadicInt(self.ctx, self.value * o.value, min(self.prec, o.prec))

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.ctx, -self.value, self.prec)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        return PadicInt(
            self.ctx, pow(self.value, n, self.ctx.p ** self.prec), self.prec
        )

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = min(self.prec, o.prec)
        pk = self.ctx.p ** k
        return self.value % pk == o.value % pk

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} + O({self.ctx.p}^{self.prec})"

    # -- structure -------------------------------------------------------

    def valuation(self) -> Valuation:
        if self.value == 0:
            return Valuation(self.prec, exact=False)
        v, x, p = 0, self.value, self.ctx.p
        while x % p == 0:
            x //= p
            v += 1
        return Valuation(v, exact=True)

    def is_unit(self) -> bool:
        return self.value % self.ctx.p != 0

    def invert(self) -> "PadicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self!r} has positive valuation")
        pk = self.ctx.p ** self.prec
        return PadicInt(self.ctx, pow(self.value, -1, pk), self.prec)

    def div_int(self, k: int) -> "PadicInt":
        """Exact division by a nonzero integer; the p-part of k costs digits."""
        if k == 0:
            raise ZeroDivisionError
        if k < 0:
            return (-self).div_int(-k)
        v, u, p = 0, k, self.ctx.p
        while u % p == 0:
            u //= p
            v += 1
        if v == 0:
            return self * PadicInt(self.ctx, pow(u, -1, p ** self.prec))
        if v >= self.prec:
            raise PrecisionExhausted(
                f"dividing by p^{v} leaves no guaranteed digits (prec {self.prec})"
            )
        if self.value % p ** v != 0:
            raise NonIntegralCoefficient(
                f"{self!r} is not divisible by p^{v} at the working precision"
            )
        new_prec = self.prec - v
        pk = p ** new_prec
        val = (self.value // p ** v) * pow(u, -1, pk)
        return PadicInt(self.ctx, val, new_prec)
