"""Cyclotomic rings Z_p[zeta] at levels 0 and 1, in pi-adic digits.

Level n holds zeta of order p^{n+1}; pi = zeta - 1 is a uniformizer with
Eisenstein minimal polynomial Phi_{p^{n+1}}(1+X), and an element is stored as
its digit vector sum c_j pi^j, j < degree, with PadicInt digits.  Since
p = (unit) pi^degree and the digit positions j + degree*v_p(c_j) are pairwise
distinct, pi-valuations are read straight off the digits.  Equality always
means equality mod pi^{pi_prec}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import (
    IndistinguishableFromZero,
    NotAUnitExponent,
    NotInBaseField,
    NotInSubfield,
    NotOneUnit,
    PrecisionExhausted,
)
from .padic import PadicCtx, PadicInt


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class CycRing:
    __slots__ = (
        "ctx", "level", "degree", "pi_prec", "modulus_tail",
        "_galois_images", "_base", "_embed_powers",
    )

    def __init__(self, ctx: PadicCtx, level: int, pi_prec: int | None = None):
        if level not in (0, 1):
            raise ValueError(f"level must be 0 or 1, got {level}")
        p = ctx.p
        if ctx.N < level + 1:
            raise ValueError(
                f"need at least {level + 1} p-adic digits for the level-{level} "
                f"Galois action, ctx has {ctx.N}"
            )
        d = p ** level * (p - 1)
        if pi_prec is None:
            pi_prec = p + 3
        if not 1 <= pi_prec <= ctx.N * d:
            raise ValueError(
                f"pi_prec {pi_prec} outside 1..{ctx.N * d} supported by ctx"
            )
        self.ctx = ctx
        self.level = level
        self.degree = d
        self.pi_prec = pi_prec
        # lower coefficients of the monic Eisenstein modulus of pi
        if level == 0:
            tail = [comb(p, j + 1) for j in range(d)]
        else:
            full = [0] * (d + 1)
            for k in range(p):
                for j in range(min(k * p, d) + 1):
                    full[j] += comb(k * p, j)
            assert full[d] == 1
            tail = full[:d]
        assert tail[0] == p
        self.modulus_tail = [t % ctx.modulus for t in tail]
        self._galois_images = {}
        self._base = None
        self._embed_powers = None

    def __eq__(self, other):
        return (
            isinstance(other, CycRing)
            and self.ctx == other.ctx
            and self.level == other.level
            and self.pi_prec == other.pi_prec
        )

    def __hash__(self):
        return hash((self.ctx, self.level, self.pi_prec))

    def __repr__(self):
        return (
            f"CycRing(p={self.ctx.p}, level={self.level}, "
            f"pi_prec={self.pi_prec})"
        )

    # -- constructors ----------------------------------------------------

    def zero(self) -> "CycElt":
        return CycElt(self, [self.ctx.of(0)] * self.degree)

    def one(self) -> "CycElt":
        return self.from_scalar(1)

    def from_scalar(self, c) -> "CycElt":
        c = c if isinstance(c, PadicInt) else self.ctx.of(c)
        coeffs = [self.ctx.of(0)] * self.degree
        coeffs[0] = c
        return CycElt(self, coeffs)

    def uniformizer(self) -> "CycElt":
        coeffs = [self.ctx.of(0)] * self.degree
        coeffs[1] = self.ctx.of(1)
        return CycElt(self, coeffs)

    def zeta(self) -> "CycElt":
        return self.uniformizer() + 1

    def from_coeffs(self, coeffs) -> "CycElt":
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            raise ValueError("too many digits")
        coeffs += [0] * (self.degree - len(coeffs))
        return CycElt(
            self,
            [c if isinstance(c, PadicInt) else self.ctx.of(c) for c in coeffs],
        )

    def base_ring(self) -> "CycRing":
        if self.level == 0:
            raise ValueError("level 0 has no lower cyclotomic level")
        if self._base is None:
            self._base = CycRing(self.ctx, 0, self.pi_prec)
        return self._base

    # pi_0 = (1 + pi_1)^p - 1 and its powers; degrees stay below p(p-1)
    # so no modular reduction ever mixes in

    def _embeds(self):
        if self._embed_powers is None:
            p = self.ctx.p
            e = self.zeta() ** p - 1
            powers = [self.one()]
            for _ in range(p - 2):
                powers.append(powers[-1] * e)
            self._embed_powers = powers
        return self._embed_powers


@lru_cache(maxsize=None)
def cyc_ring(p: int, level: int, prec: int = 4, pi_prec: int | None = None) -> CycRing:
    """Canonical ring instances keyed by (p, level, prec, pi_prec)."""
    return CycRing(PadicCtx(p, prec), level, pi_prec)


class CycElt:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycRing, coeffs):
        assert len(coeffs) == ring.degree
        self.ring = ring
        self.coeffs = list(coeffs)

    def _coerce(self, other):
        if isinstance(other, CycElt):
            if other.ring != self.ring:
                raise ValueError("mixed cyclotomic rings")
            return other
        if isinstance(other, (int, PadicInt)):
            return self.ring.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.ring, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycElt(self.ring, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycElt(self.ring, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ring.degree
        zero = self.ring.ctx.of(0)
        raw = [zero] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                if b:
                    raw[i + j] = raw[i + j] + a * b
        tail = self.ring.modulus_tail
        for deg in range(2 * d - 2, d - 1, -1):
            c = raw[deg]
            if not c:
                continue
            base = deg - d
            for j, m in enumerate(tail):
                if m:
                    raw[base + j] = raw[base + j] - c * m
        return CycElt(self.ring, raw[:d])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined here")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).vanishes_mod_pi(self.ring.pi_prec)

    def __repr__(self):
        digs = ", ".join(str(c.value) for c in self.coeffs)
        return f"CycElt[{digs}]"

    # -- pi-adic structure ----------------------------------------------

    def vanishes_mod_pi(self, M: int) -> bool:
        d = self.ring.degree
        for j, c in enumerate(self.coeffs):
            need = _ceil_div(M - j, d)
            if need <= 0:
                continue
            if need > c.prec:
                raise PrecisionExhausted(
                    f"digit {j} has {c.prec} p-adic digits, need {need} "
                    f"to test mod pi^{M}"
                )
            if c.value % self.ring.ctx.p ** need != 0:
                return False
        return True

    def pi_valuation(self) -> int:
        """Exact pi-valuation read off the digit positions."""
        d = self.ring.degree
        exact_min = None
        bound_min = None
        for j, c in enumerate(self.coeffs):
            v = c.valuation()
            if v.exact:
                cand = j + d * v.v
                if exact_min is None or cand < exact_min:
                    exact_min = cand
            else:
                cand = j + d * v.v
                if bound_min is None or cand < bound_min:
                    bound_min = cand
        if exact_min is None:
            raise IndistinguishableFromZero(
                "every digit vanishes at the working precision"
            )
        if bound_min is not None and bound_min < exact_min:
            raise PrecisionExhausted(
                f"a vanished digit could hide valuation {bound_min} < {exact_min}"
            )
        return exact_min

    def is_one_unit(self) -> bool:
        try:
            return (self - 1).pi_valuation() >= 1
        except IndistinguishableFromZero:
            return True


# -- Galois action and norms -----------------------------------------------

def galois_apply(a: int, x: CycElt) -> CycElt:
    """sigma_a, the automorphism zeta -> zeta^a, i.e. pi -> (1+pi)^a - 1."""
    ring = x.ring
    q = ring.ctx.p ** (ring.level + 1)
    a = int(a.value if isinstance(a, PadicInt) else a) % q
    if a % ring.ctx.p == 0:
        raise NotAUnitExponent(f"{a} is not a unit mod {q}")
    if a == 1:
        return x
    image = ring._galois_images.get(a)
    if image is None:
        image = ring.zeta() ** a - 1
        ring._galois_images[a] = image
    acc = ring.from_scalar(x.coeffs[-1])
    for j in range(ring.degree - 2, -1, -1):
        acc = acc * image + x.coeffs[j]
    return acc


def norm_down(x: CycElt) -> CycElt:
    """Norm from level 1 to level 0; the Galois group of the step is
    represented by a = 1 + kp mod p^2."""
    ring = x.ring
    if ring.level != 1:
        raise ValueError("norm_down starts at level 1")
    p = ring.ctx.p
    acc = x
    for k in range(1, p):
        acc = acc * galois_apply(1 + k * p, x)
    # peel off the level-0 digit vector against the staircase basis
    # pi_0^j, whose top digit sits at position p*j with coefficient 1
    powers = ring._embeds()
    residual = acc
    out = [ring.ctx.of(0)] * (p - 1)
    for j in range(p - 2, -1, -1):
        c = residual.coeffs[p * j]
        out[j] = c
        residual = residual - powers[j] * c
    if not residual.vanishes_mod_pi(ring.pi_prec):
        raise NotInSubfield("norm does not lie in the level-0 subring")
    return CycElt(ring.base_ring(), out)


def embed_up(x: CycElt, ring1: CycRing) -> CycElt:
    """Include level 0 into level 1 via pi_0 -> (1+pi_1)^p - 1."""
    if x.ring.level != 0 or ring1.level != 1:
        raise ValueError("embed_up goes from level 0 to level 1")
    if ring1.base_ring() != x.ring:
        raise ValueError("rings are not aligned")
    powers = ring1._embeds()
    acc = ring1.zero()
    for j, c in enumerate(x.coeffs):
        if c:
            acc = acc + powers[j] * c
    return acc


def norm_to_qp(x: CycElt) -> PadicInt:
    """Norm all the way to Z_p; at level 1 it factors through norm_down."""
    ring = x.ring
    if ring.level == 1:
        return norm_to_qp(norm_down(x))
    p = ring.ctx.p
    acc = x
    for a in range(2, p):
        acc = acc * galois_apply(a, x)
    scalar = acc.coeffs[0]
    if not (acc - scalar).vanishes_mod_pi(ring.pi_prec):
        raise NotInBaseField("norm has nonscalar digits")
    return scalar


# -- Z_p-powers of one-units and the eigenprojection -----------------------

def _stable_exponent_prec(ring: CycRing, v0: int) -> int:
    # raising a one-unit with v(u-1) = v to the p-th power moves v to
    # min(degree + v, p v); find how many p-power steps reach pi_prec
    v, k = v0, 0
    while v < ring.pi_prec:
        v = min(ring.degree + v, ring.ctx.p * v)
        k += 1
    return k


def unit_pow_zp(u: CycElt, c) -> CycElt:
    """u^c for a Z_p exponent c, on one-units only."""
    ring = u.ring
    if not u.is_one_unit():
        raise NotOneUnit("Z_p-powers need a 1-unit base")
    try:
        v0 = (u - 1).pi_valuation()
    except IndistinguishableFromZero:
        return ring.one()
    k = _stable_exponent_prec(ring, v0)
    q = ring.ctx.p ** k
    if isinstance(c, PadicInt):
        if c.prec < k:
            raise PrecisionExhausted(
                f"exponent known mod p^{c.prec}, need p^{k} for stability"
            )
        e = c.value % q
    else:
        e = int(c) % q
    return u ** e


def eigen_unit(i: int, u: CycElt) -> CycElt:
    """The omega^i idempotent applied to a one-unit:
    product over a in F_p^* of sigma_{omega(a)}(u)^{omega(a)^{-i}/(p-1)}."""
    ring = u.ring
    if not u.is_one_unit():
        raise NotOneUnit("eigenprojection acts on 1-units")
    ctx = ring.ctx
    p = ctx.p
    i = i % (p - 1)
    inv_order = ctx.of(p - 1).invert()
    acc = ring.one()
    for a in range(1, p):
        w = ctx.teichmuller(a)
        conj = galois_apply(w, u)
        w_inv_i = ctx.teichmuller(pow(a, -1, p)) ** i
        acc = acc * unit_pow_zp(conj, w_inv_i * inv_order)
    return acc


def extended_valuation(x: CycElt) -> int:
    """pi-valuation in pi-units (p has valuation degree)."""
    return x.pi_valuation()


def eigen_valuation(u: CycElt) -> Fraction:
    """Average pi-valuation of the Teichmuller-twisted conjugates, the
    valuation the omega-eigenprojection sees; 1/(p-1) sum_a v(sigma_a u)."""
    ring = u.ring
    ctx = ring.ctx
    total = sum(
        extended_valuation(galois_apply(ctx.teichmuller(a), u))
        for a in range(1, ctx.p)
    )
    return Fraction(total, ctx.p - 1)


# -- the omega^1 non-torsion certificate -----------------------------------

def as_mu_element(ctx: PadicCtx, lam) -> PadicInt:
    """Normalize lambda: an int is read as a residue and lifted to its
    Teichmuller representative, a PadicInt is taken as given."""
    from .errors import LambdaIsOne

    if not isinstance(lam, PadicInt):
        lam = ctx.teichmuller(lam)
    if lam.value % ctx.p == 1:
        raise LambdaIsOne("lambda = 1 is excluded")
    return lam


def eps1_intermediate_congruence(ring: CycRing, lam) -> bool:
    """(1 - pi/(lambda-1))^p = 1 - p pi/(lambda-1) mod pi^{p+1}."""
    ctx = ring.ctx
    p = ctx.p
    lam = as_mu_element(ctx, lam)
    w = (lam - 1).invert()
    pi = ring.uniformizer()
    lhs = (ring.one() - pi * w) ** p
    rhs = ring.one() - pi * (w * p)
    return (lhs - rhs).vanishes_mod_pi(p + 1)


def unit_is_p_torsion(u: CycElt) -> bool:
    """Whether a 1-unit satisfies u^p = 1 mod pi^{p+1}.

    Caution: this window is too shallow to detect non-torsion.  For any
    1-unit congruent to a p-th root of unity mod pi^2, u^p - 1 lands in
    pi^{2p-1} or deeper, so the test is satisfied by plenty of units of
    infinite order; see nontorsion_certified for a sound criterion.
    """
    p = u.ring.ctx.p
    if u.ring.pi_prec < p + 2:
        raise PrecisionExhausted(
            f"need pi_prec >= {p + 2} to certify mod pi^{p + 1}"
        )
    return (u ** p - 1).vanishes_mod_pi(p + 1)


def nontorsion_certified(u: CycElt) -> bool:
    """Certify that a 1-unit is not a p-th root of unity.

    The torsion 1-units are exactly mu_p, so u is certified once it
    differs from every zeta^k at the stored resolution.  Returns False
    when some comparison is indistinguishable from zero; that is honest
    inconclusiveness, not a torsion proof.
    """
    ring = u.ring
    zeta = ring.zeta()
    for k in range(ring.ctx.p):
        try:
            (u - zeta ** k).pi_valuation()
        except (IndistinguishableFromZero, PrecisionExhausted):
            return False
    return True


def check_eps1_nontorsion(ring: CycRing, lam) -> bool:
    """The pi^{p+1} criterion on eigen_unit(1, u_0(lambda)), taken
    literally: true iff the p-th power differs from 1 mod pi^{p+1}.

    As the unit_is_p_torsion note explains, the p-th power of the
    projected unit is always 1 to this depth, so the criterion cannot
    come out true; the sound replacement is nontorsion_certified on
    eigen_unit(1, lang_unit(ring, lam)), which certifies every
    lambda except -1 (where the projection is exactly a primitive
    p-th root of unity)."""
    from .kummer import lang_unit

    u = lang_unit(ring, lam)
    return not unit_is_p_torsion(eigen_unit(1, u))


class NormCompatiblePair:
    """A level-1 unit with its norm at level 0, checked on construction."""

    __slots__ = ("u1", "u0")

    def __init__(self, u1: CycElt, u0: CycElt):
        if u1.ring.level != 1 or u0.ring.level != 0:
            raise ValueError("pair wants (level 1, level 0)")
        if norm_down(u1) != u0:
            raise NotInSubfield("norm_down(u1) differs from u0")
        self.u1 = u1
        self.u0 = u0

    def __repr__(self):
        return f"NormCompatiblePair(u1={self.u1!r}, u0={self.u0!r})"
