"""Kummer homomorphisms on 1-units, with the Lang and Coates-Wiles units.

A 1-unit u at level 0 is f(pi) for a polynomial f of degree < p-1 with
constant term 1 mod p, unique mod (p, X^{p-1}); phi_i(u) reads the i-th
invariant-derivative coefficient of log f at 0, mod p.  The pi-digit form
of u IS such an f, so the representative is a coefficient copy.
"""

from __future__ import annotations

from .cyclotomic import (
    CycElt,
    CycRing,
    NormCompatiblePair,
    as_mu_element,
    eigen_unit,
    nontorsion_certified,
    unit_pow_zp,
)
from .errors import NoneFound, NotOneUnit, UsageError
from .formal_groups import cw_tower_x
from .padic import PadicInt
from .series import TruncSeries


class UnitRep:
    """A level-0 1-unit together with its polynomial representative."""

    __slots__ = ("u", "f")

    def __init__(self, u: CycElt):
        if u.ring.level != 0:
            raise UsageError("representatives live at level 0")
        if not u.is_one_unit():
            raise NotOneUnit("not congruent to 1 mod pi")
        self.u = u
        self.f = TruncSeries(list(u.coeffs))

    def evaluate_at_pi(self) -> CycElt:
        ring = self.u.ring
        pi = ring.uniformizer()
        acc = ring.from_scalar(self.f.coeffs[-1])
        for j in range(len(self.f.coeffs) - 2, -1, -1):
            acc = acc * pi + self.f.coeffs[j]
        return acc

    def __repr__(self):
        return f"UnitRep({self.u!r})"


def kummer_phi(i: int, u: CycElt) -> int:
    """D^i(log f_u) at X = 0, mod p, with D = (1+X) d/dX."""
    p = u.ring.ctx.p
    if not 1 <= i <= p - 2:
        raise UsageError(f"phi_{i} undefined, need 1 <= i <= {p - 2}")
    f = UnitRep(u).f
    # dividing out the constant term shifts log f by a constant,
    # which every D^i with i >= 1 kills
    g = f.scale(f.constant_term().invert())
    series = g.log()
    for _ in range(i):
        series = series.invariant_derivative()
    return series.constant_term().residue(1)


def lang_unit(ring: CycRing, lam) -> CycElt:
    """u_0(lambda) = omega(lambda-1)^{-1} (lambda - zeta), a 1-unit."""
    if ring.level != 0:
        raise UsageError("Lang units live at level 0")
    ctx = ring.ctx
    lam = as_mu_element(ctx, lam)
    scalar = ctx.teichmuller((lam.value - 1) % ctx.p).invert()
    u = (ring.from_scalar(lam) - ring.zeta()) * scalar
    assert u.is_one_unit()
    return u


def cw_unit(ring: CycRing, trunc: int | None = None) -> CycElt:
    """beta - theta(zeta - 1), the bottom Coates-Wiles unit."""
    beta = ring.ctx.beta()
    u = ring.from_scalar(beta) - cw_tower_x(ring, trunc)
    assert u.is_one_unit()
    return u


def cw_unit_pair(ring1: CycRing, trunc: int | None = None) -> NormCompatiblePair:
    """The levels 0 and 1 Coates-Wiles units as a norm-compatible pair;
    the norm relation is checked on construction.

    The norm lands at level 0, where one pi-digit is p level-1 digits
    fine, so theta is evaluated to depth p * pi_prec."""
    if ring1.level != 1:
        raise UsageError("pair construction starts at level 1")
    from .formal_groups import default_trunc

    p = ring1.ctx.p
    if trunc is None:
        trunc = max(default_trunc(p), p * ring1.base_ring().pi_prec + 1)
    u1 = cw_unit_level1(ring1, trunc)
    u0 = cw_unit(ring1.base_ring(), trunc)
    return NormCompatiblePair(u1, u0)


def cw_unit_level1(ring1: CycRing, trunc: int | None = None) -> CycElt:
    beta = ring1.ctx.beta()
    u = ring1.from_scalar(beta) - cw_tower_x(ring1, trunc)
    assert u.is_one_unit()
    return u


def lang_generator_search(ring: CycRing, i: int) -> PadicInt:
    """Least lambda (by Teichmuller preimage 2..p-1) whose Lang unit has
    nonvanishing phi_i."""
    p = ring.ctx.p
    for a in range(2, p):
        lam = ring.ctx.teichmuller(a)
        if kummer_phi(i, lang_unit(ring, lam)) != 0:
            return lam
    raise NoneFound(f"no Lang unit with phi_{i} != 0; should not happen")


def generator_certificate(i: int, u) -> bool:
    """Nonvanishing of phi_i, plus the nontorsion check when i = 1."""
    if isinstance(u, NormCompatiblePair):
        u = u.u0
    if kummer_phi(i, u) == 0:
        return False
    if i == 1:
        return nontorsion_certified(eigen_unit(1, u))
    return True


def bernoulli_criterion_surrogate(ring: CycRing, i: int) -> dict:
    """phi_i of the omega^i projection of the uniformizer class.

    sigma_a(pi)/pi splits as omega(a) times a 1-unit t_a; the projection
    of (pi) onto the omega^i eigenspace is, modulo torsion, the product
    of t_a^{omega(a)^{-i}/(p-1)}.  The classical criterion predicts the
    result vanishes mod p exactly when p divides the Bernoulli number
    B_i; the comparison is reported, not asserted.
    """
    from .lfunctions import bernoulli

    ctx = ring.ctx
    p = ctx.p
    if ring.level != 0:
        raise UsageError("surrogate is a level-0 computation")
    if not 2 <= i <= p - 3 or i % 2 != 0:
        raise UsageError(f"criterion applies to even i in 2..{p - 3}")
    zeta = ring.zeta()
    inv_order = ctx.of(p - 1).invert()
    acc = ring.one()
    for a in range(1, p):
        # sigma_a(pi)/pi = 1 + (1+pi) + ... + (1+pi)^{a-1}, a unit with
        # residue a; twisting by omega(a)^{-1} makes it a 1-unit
        r = ring.zero()
        power = ring.one()
        for _ in range(a):
            r = r + power
            power = power * zeta
        t = r * ctx.teichmuller(pow(a, -1, p))
        e = ctx.teichmuller(pow(a, -1, p)) ** i * inv_order
        acc = acc * unit_pow_zp(t, e)
    phi = kummer_phi(i, acc)
    b = bernoulli(i)
    coprime = b.numerator % p != 0
    return {
        "i": i,
        "phi": phi,
        "generates": phi != 0,
        "bernoulli_coprime_to_p": coprime,
        "agree": (phi != 0) == coprime,
    }
