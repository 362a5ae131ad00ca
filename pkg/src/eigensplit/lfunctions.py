"""Exact Bernoulli numbers and p-adic L-values on the omega-twisted branches.

Bernoulli numbers follow t/(e^t - 1), computed by the defining recurrence
over exact rationals and cached (optionally on disk, one `n<TAB>num<TAB>den`
record per line).  L_p(1-n, omega^i) at interpolation points is the exact
rational -(1 - p^{n-1}) B_n / n; elsewhere the value is produced by the
finite Euler-MacLaurin style sum mod p^K, which agrees with the rational
interpolation at every admissible point (tested, not assumed).
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import (
    CongruenceClassMismatch,
    PoleAtZeroCharacter,
    PrecisionExhausted,
    UsageError,
)
from .padic import PadicCtx, PadicInt, is_prime


class BernoulliTable:
    """Contiguous table B_0..B_top of exact rationals, disk-backed."""

    def __init__(self, path: str | None = None):
        self.path = path
        self.values = [Fraction(1)]
        if path is not None and os.path.exists(path):
            self._load()

    def _load(self):
        rows = {}
        with open(self.path) as fh:
            for line in fh:
                parts = line.split()
                if len(parts) != 3:
                    continue
                n, num, den = (int(t) for t in parts)
                rows[n] = Fraction(num, den)
        loaded = [Fraction(1)]
        while len(loaded) in rows:
            loaded.append(rows[len(loaded)])
        self.values = loaded

    def _store(self):
        if self.path is None:
            return
        directory = os.path.dirname(self.path) or "."
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                for n, b in enumerate(self.values):
                    fh.write(f"{n}\t{b.numerator}\t{b.denominator}\n")
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get(self, n: int) -> Fraction:
        if n < 0:
            raise UsageError("Bernoulli index must be >= 0")
        if n >= len(self.values):
            self._extend(n)
            self._store()
        return self.values[n]

    def _extend(self, top: int):
        # sum_{k<=n} C(n+1,k) B_k = 0
        vals = self.values
        for n in range(len(vals), top + 1):
            if n > 2 and n % 2 == 1:
                vals.append(Fraction(0))
                continue
            total = Fraction(0)
            for k in range(n):
                if vals[k]:
                    total += comb(n + 1, k) * vals[k]
            vals.append(-total / (n + 1))


_table = BernoulliTable()


def configure_cache(directory: str | None):
    """Point the Bernoulli table at `directory`/bernoulli.tsv (None for
    in-memory only); keeps already-computed values."""
    global _table
    path = None if directory is None else os.path.join(directory, "bernoulli.tsv")
    fresh = BernoulliTable(path)
    if len(_table.values) > len(fresh.values):
        fresh.values = list(_table.values)
        fresh._store()
    _table = fresh


def bernoulli(n: int) -> Fraction:
    return _table.get(n)


class LValue:
    """A p-adic L-value with its argument and certification data.

    `rational` is set when the value came from the exact interpolation
    formula, in which case valuations are exact; otherwise only digits
    mod p^guaranteed_prec are meaningful.
    """

    __slots__ = ("value", "s", "character_exponent", "guaranteed_prec", "rational")

    def __init__(self, value: PadicInt, s: int, character_exponent: int,
                 guaranteed_prec: int, rational: Fraction | None = None):
        self.value = value
        self.s = s
        self.character_exponent = character_exponent
        self.guaranteed_prec = guaranteed_prec
        self.rational = rational

    def certified_valuation(self) -> int:
        if self.rational is not None:
            q = self.rational
            p = self.value.ctx.p
            v = 0
            num, den = q.numerator, q.denominator
            while num % p == 0:
                num //= p
                v += 1
            while den % p == 0:
                den //= p
                v -= 1
            return v
        v = self.value.valuation()
        if not v.exact or v.v >= self.guaranteed_prec - 1:
            raise PrecisionExhausted(
                f"valuation >= {min(self.value.prec, self.guaranteed_prec)} "
                f"not certifiable at precision {self.guaranteed_prec}"
            )
        return v.v

    def __repr__(self):
        return (
            f"LValue(s={self.s}, char={self.character_exponent}, "
            f"value={self.value!r})"
        )


def _check_character(p: int, i: int) -> int:
    if not is_prime(p) or p == 2:
        raise UsageError(f"{p} is not an odd prime")
    i %= p - 1
    if i == 0:
        raise PoleAtZeroCharacter(
            "the trivial-character branch has a pole and is never needed"
        )
    if i % 2 != 0:
        raise UsageError(f"odd character exponent {i} has no L-values here")
    return i


def lp_neg(p: int, i: int, n: int, prec: int = 4) -> LValue:
    """L_p(1-n, omega^i) = -(1 - p^{n-1}) B_n / n for n = i mod p-1."""
    i = _check_character(p, i)
    if n < 1:
        raise UsageError("interpolation index n must be >= 1")
    if (n - i) % (p - 1) != 0:
        raise CongruenceClassMismatch(
            f"n = {n} is not congruent to {i} mod {p - 1}"
        )
    q = -Fraction(1 - p ** (n - 1), n) * bernoulli(n)
    ctx = PadicCtx(p, prec)
    return LValue(ctx.from_rational(q), 1 - n, i, prec, rational=q)


def _one_unit_part(ctx: PadicCtx, a: int) -> PadicInt:
    # <a> = a / omega(a)
    return ctx.of(a) * ctx.teichmuller(a).invert()


def _binom(x: int, j: int) -> int:
    """C(x, j) for any integer x (falling factorial over j!)."""
    num = 1
    for t in range(j):
        num *= x - t
    return num // (1 if j == 0 else _factorial(j))


@lru_cache(maxsize=None)
def _factorial(j: int) -> int:
    out = 1
    for t in range(2, j + 1):
        out *= t
    return out


def lp_at(p: int, i: int, s: int, M: int = 3) -> LValue:
    """L_p(s, omega^i) mod p^M at any integer s except the excluded s = 1.

    Evaluated by the classical finite sum over a = 1..p-1 of
    omega^i(a) <a>^{1-s} sum_j C(1-s, j) (p/a)^j B_j, divided by p(s-1);
    the j-th term has valuation >= j-1, so the tail past j = K+1 is
    invisible mod p^K.
    """
    i = _check_character(p, i)
    if s == 1:
        raise UsageError("s = 1 is outside the implemented range")
    vs = 0
    step = s - 1
    while step % p == 0:
        step //= p
        vs += 1
    K = M + 2 + vs
    ctx = PadicCtx(p, K)
    e_red = (1 - s) % (p ** (K - 1) * (p - 1))
    total = ctx.of(0)
    for a in range(1, p):
        inner = Fraction(0)
        for j in range(K + 2):
            b = bernoulli(j)
            if b:
                inner += _binom(1 - s, j) * Fraction(p, a) ** j * b
        bracket = _one_unit_part(ctx, a)
        term = ctx.teichmuller(a) ** i
        term = term * ctx.of(pow(bracket.lift(), e_red, ctx.modulus))
        term = term * ctx.from_rational(inner)
        total = total + term
    value = total.div_int(p).div_int(s - 1)
    return LValue(value.reduce_to(M), s, i, M)


def lp_value(p: int, i: int, s: int, M: int = 3) -> LValue:
    """Dispatch: exact interpolation when s = 1-n with n = i mod p-1 and
    n >= 1; the congruence-class evaluation otherwise."""
    i = _check_character(p, i)
    n = 1 - s
    if n >= 1 and (n - i) % (p - 1) == 0:
        return lp_neg(p, i, n)
    return lp_at(p, i, s, M)


DEFAULT_SCAN_CAP = 60


def irregular_pairs(p: int, k_max: int | None = None) -> list:
    """Even k in 2..p-3 with p dividing numerator(B_k); for p > 200 the
    scan is capped (k <= 60) unless k_max widens it."""
    if not is_prime(p) or p == 2:
        raise UsageError(f"{p} is not an odd prime")
    top = p - 3
    if k_max is not None:
        top = min(top, k_max)
    elif p > 200:
        top = min(top, DEFAULT_SCAN_CAP)
    out = []
    for k in range(2, top + 1, 2):
        if bernoulli(k).numerator % p == 0:
            out.append(k)
    return out


@lru_cache(maxsize=None)
def regularity_certificate(p: int):
    """True if the full even scan comes back empty, False if a pair was
    found, None when the scan was capped and silent."""
    top = p - 3
    found = irregular_pairs(p)
    if found:
        return False
    if p > 200 and top > DEFAULT_SCAN_CAP:
        return None
    return True
