"""The height-1 Lubin-Tate group with multiplication-by-p series X^p + pX.

Everything is computed over exact rationals and only reduced to p-adic
coefficients at the boundary, so the p-integrality of the strict isomorphism
is a theorem we can check, not a rounding artifact.  The logarithm is derived
degree by degree from log([p]X) = p log(X); the strict isomorphism to the
multiplicative group is the solution of log_G(theta) = log(1+X).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import NonIntegralCoefficient, PrecisionExhausted, VerificationError
from .padic import is_prime
from .series import TruncSeries, log_one_plus_x


def _check_args(p: int, T: int):
    if not is_prime(p) or p == 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if T < 2:
        raise ValueError(f"truncation must be >= 2, got {T}")


def default_trunc(p: int) -> int:
    """Enough to see X^{p^2}: covers the tower recursion and the mod X^p
    congruence with slack."""
    return p * p + 1


# raw Fraction-list kernels; TruncSeries wrapping at this size would dominate
# the runtime for p = 13 at T = 170

def _mul(a, b, T):
    out = [Fraction(0)] * T
    for i, ai in enumerate(a):
        if not ai:
            continue
        lim = T - i
        for j, bj in enumerate(b[:lim]):
            if bj:
                out[i + j] += ai * bj
    return out


def _pow(a, n, T):
    result = None
    base = list(a[:T])
    while n:
        if n & 1:
            result = list(base) if result is None else _mul(result, base, T)
        n >>= 1
        if n:
            base = _mul(base, base, T)
    if result is None:
        result = [Fraction(1)] + [Fraction(0)] * (T - 1)
    return result


def _inv(a, T):
    out = [Fraction(1) / a[0]] + [Fraction(0)] * (T - 1)
    t = 1
    while t < T:
        t = min(2 * t, T)
        prod = _mul(a[:t], out[:t], t)
        corr = [-c for c in prod]
        corr[0] += 2
        out = _mul(out[:t], corr, t)
    return out


@lru_cache(maxsize=None)
def _log_coeffs(p: int, T: int) -> tuple:
    # log([p]X) = p log X, solved upward from c_1 = 1;
    # [X^m]((X^p + pX)^n) = C(n,j) p^{n-j} at j = (m-n)/(p-1)
    c = [Fraction(0)] * T
    if T > 1:
        c[1] = Fraction(1)
    for m in range(2, T):
        acc = Fraction(0)
        for n in range(1, m):
            d, r = divmod(m - n, p - 1)
            if r == 0 and d <= n:
                acc += c[n] * comb(n, d) * Fraction(p) ** (n - d)
        c[m] = -acc / (Fraction(p) ** m - p)
    return tuple(c)


def lubin_tate_log(p: int, T: int | None = None) -> TruncSeries:
    """log_G mod X^T; its support lies in exponents = 1 mod (p-1)."""
    _check_args(p, T := T or default_trunc(p))
    return TruncSeries(list(_log_coeffs(p, T)))


@lru_cache(maxsize=None)
def _theta_coeffs(p: int, T: int) -> tuple:
    # Newton solve of log_G(theta) = log(1+X), doubling correctness;
    # log_G is supported on exponents = 1 mod (p-1), so an evaluation
    # walks that progression with one fixed-step powering per term
    log_c = _log_coeffs(p, T + 1)
    target = [Fraction(0)] + [Fraction((-1) ** (k + 1), k) for k in range(1, T)]

    def log_at(g, t):
        out = list(g[:t]) + [Fraction(0)] * max(0, t - len(g))
        h = _pow(g, p - 1, t)
        power = list(g[:t]) + [Fraction(0)] * max(0, t - len(g))
        m = 1
        while m + (p - 1) < t:
            power = _mul(power, h, t)
            m += p - 1
            cm = log_c[m]
            if cm:
                for k in range(t):
                    if power[k]:
                        out[k] += cm * power[k]
        return out

    def dlog_at(g, t):
        # log_G'(g) = sum_m m c_m g^{m-1}; the m = 1 term is 1
        out = [Fraction(1)] + [Fraction(0)] * (t - 1)
        h = _pow(g, p - 1, t)
        power = None
        m = 1
        while (m - 1) + (p - 1) < t:
            power = h if power is None else _mul(power, h, t)
            m += p - 1
            cm = log_c[m]
            if cm:
                cmm = cm * m
                for k in range(t):
                    if power[k]:
                        out[k] += cmm * power[k]
        return out

    g = [Fraction(0), Fraction(1)]
    t = 2
    while t < T:
        t = min(2 * t - 1, T)
        g = g + [Fraction(0)] * (t - len(g))
        err = log_at(g, t)
        for k in range(t):
            err[k] -= target[k]
        upd = _mul(err, _inv(dlog_at(g, t), t), t)
        g = [a - b for a, b in zip(g, upd)]
    for k, ck in enumerate(g):
        if ck.denominator % p == 0:
            raise NonIntegralCoefficient(
                f"theta coefficient of X^{k} = {ck} is not p-integral"
            )
    return tuple(g)


def theta(p: int, T: int | None = None) -> TruncSeries:
    """The strict isomorphism theta = exp_G(log(1+X)), exact and p-integral."""
    _check_args(p, T := T or default_trunc(p))
    return TruncSeries(list(_theta_coeffs(p, T)))


class FormalGroupData:
    """log and (lazily) exp for the group, at a fixed truncation."""

    __slots__ = ("p", "trunc", "log_series", "_exp")

    def __init__(self, p: int, trunc: int | None = None):
        _check_args(p, trunc := trunc or default_trunc(p))
        self.p = p
        self.trunc = trunc
        self.log_series = lubin_tate_log(p, trunc)
        self._exp = None

    @property
    def exp_series(self) -> TruncSeries:
        if self._exp is None:
            self._exp = self.log_series.reversion()
        return self._exp

    def theta(self) -> TruncSeries:
        return theta(self.p, self.trunc)

    def __repr__(self):
        return f"FormalGroupData(p={self.p}, trunc={self.trunc})"


def p_series(fg: FormalGroupData) -> TruncSeries:
    """exp_G(p log_G X); verified to equal X^p + pX on the nose."""
    got = fg.exp_series.compose(fg.log_series.scale(fg.p))
    for k, ck in enumerate(got.coeffs):
        want = Fraction(fg.p) if k == 1 else Fraction(1) if k == fg.p else Fraction(0)
        if k < got.trunc and ck != want:
            raise VerificationError(
                f"[p]-series coefficient of X^{k} is {ck}, expected {want}"
            )
    return got


def cw_tower_x(ring, trunc: int | None = None):
    """x_n = theta(zeta_n - 1) in the level-n cyclotomic ring; the tower
    satisfies x_0^p + p x_0 = 0 and x_{n+1}^p + p x_{n+1} = x_n."""
    p = ring.ctx.p
    T = trunc or default_trunc(p)
    if T < ring.pi_prec + 1:
        raise PrecisionExhausted(
            f"theta truncated at {T} cannot fill pi-precision {ring.pi_prec}"
        )
    # evaluation error has pi-valuation > top; cap at the storage
    # resolution of the digit vector, not the equality tolerance
    top = min(T - 1, ring.degree * ring.ctx.N - 1)
    th = _theta_coeffs(p, top + 1)
    pi = ring.uniformizer()
    acc = ring.from_scalar(ring.ctx.from_rational(th[top]))
    for k in range(top - 1, 0, -1):
        acc = acc * pi + ring.from_scalar(ring.ctx.from_rational(th[k]))
    return acc * pi
