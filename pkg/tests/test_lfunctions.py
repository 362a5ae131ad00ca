"""Bernoulli numbers and p-adic L-values, checked against independent routes."""

from fractions import Fraction

import pytest

from eigensplit.errors import (
    PoleAtZeroCharacter,
    PrecisionExhausted,
    UsageError,
)
from eigensplit.lfunctions import (
    bernoulli,
    configure_cache,
    irregular_pairs,
    lp_at,
    lp_neg,
    lp_value,
    regularity_certificate,
)


def _bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    # independent oracle; this variant yields B_1 = +1/2, so only use
    # it away from n = 1
    row = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(1, n + 1):
        for j in range(n + 1 - m):
            row[j] = (j + 1) * (row[j] - row[j + 1])
    return row[0]


def test_bernoulli_against_independent_recurrence():
    for n in range(0, 42, 2):
        assert bernoulli(n) == _bernoulli_akiyama_tanigawa(n)
    assert bernoulli(1) == Fraction(-1, 2)
    for n in range(3, 41, 2):
        assert bernoulli(n) == 0


def test_bernoulli_known_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)


def test_von_staudt_clausen():
    from eigensplit.padic import is_prime

    for n in range(2, 102, 2):
        s = bernoulli(n)
        for q in range(2, n + 2):
            if is_prime(q) and n % (q - 1) == 0:
                s += Fraction(1, q)
        assert s.denominator == 1


def test_irregular_pairs():
    assert irregular_pairs(5) == []
    assert irregular_pairs(7) == []
    assert irregular_pairs(37) == [32]
    assert irregular_pairs(59) == [44]
    assert 12 in irregular_pairs(691)


def test_regularity_certificate():
    assert regularity_certificate(5) is True
    assert regularity_certificate(7) is True
    assert regularity_certificate(37) is False
    # beyond the scan cap, a clean scan proves nothing either way
    assert regularity_certificate(211) is None


def test_character_guards():
    with pytest.raises(PoleAtZeroCharacter):
        lp_neg(5, 0, 4)
    with pytest.raises(UsageError):
        lp_neg(5, 3, 3)
    with pytest.raises(UsageError):
        lp_at(5, 1, 2)
    with pytest.raises(UsageError):
        lp_at(5, 2, 1)  # s = 1 is outside the domain here


def test_lp_neg_exact_rational():
    # -(1 - p^{n-1}) B_n / n, computed here from scratch
    for p, i, n in ((5, 2, 2), (5, 2, 6), (7, 4, 4), (7, 2, 8)):
        val = lp_neg(p, i, n)
        expect = -(1 - Fraction(p) ** (n - 1)) * bernoulli(n) / n
        assert val.rational == expect
        assert val.s == 1 - n


def test_lp_two_routes_agree_at_negative_integers():
    # the finite character-sum route must reproduce the exact
    # interpolation values
    for p, i, n_list in ((5, 2, (2, 6, 10, 14)), (7, 2, (2, 8, 14)),
                         (7, 4, (4, 10, 16))):
        for n in n_list:
            s = 1 - n
            a = lp_at(p, i, s, M=3)
            b = lp_neg(p, i, n)
            assert a.value.residue(3) == b.value.residue(3)


def test_lp_at_positive_s_against_kummer_congruence():
    # L_p(s) at positive s has no closed form; compare against the exact
    # value at a negative integer in the same character class congruent
    # to s modulo p^2 in weight space
    a = lp_at(5, 2, 3, M=2)
    b = lp_neg(5, 2, 98)  # 1 - 98 = -97 = 3 mod 4*25, 98 = 2 mod 4
    assert a.value.residue(2) == b.value.residue(2)


def test_lp_value_dispatch():
    v1 = lp_value(5, 2, -1)
    assert v1.rational is not None
    v2 = lp_value(5, 2, 3)
    assert v2.rational is None
    assert lp_value(5, 2, -1).certified_valuation() == 0


def test_kummer_congruence_spot_checks():
    # (1 - p^{m-1}) B_m/m = (1 - p^{n-1}) B_n/n mod p^{k+1}
    # for m = n mod p^k (p-1), m, n not 0 mod p-1
    cases = [
        (5, 2, 22, 2),   # k = 1: agree mod 25
        (5, 6, 26, 2),
        (7, 2, 44, 2),   # k = 1: agree mod 49
        (7, 2, 8, 1),    # k = 0: agree mod 7
        (7, 4, 10, 1),
    ]
    for p, m, n, k in cases:
        em = (1 - Fraction(p) ** (m - 1)) * bernoulli(m) / m
        en = (1 - Fraction(p) ** (n - 1)) * bernoulli(n) / n
        diff = em - en
        assert diff.denominator % p != 0
        assert diff.numerator % p ** k == 0


def test_certified_valuation_precision_contract():
    # the (37, 32) pair puts one power of 37 into L_37(s, omega^32)
    exact = lp_neg(37, 32, 32)
    assert exact.certified_valuation() == 1
    shallow = lp_at(37, 32, 5, M=2)
    with pytest.raises(PrecisionExhausted):
        shallow.certified_valuation()
    deeper = lp_at(37, 32, 5, M=3)
    assert deeper.certified_valuation() == 1


def test_unit_lvalue_has_valuation_zero():
    for p, i in ((5, 2), (7, 2), (7, 4)):
        assert lp_at(p, i, 2, M=3).certified_valuation() == 0


def test_cache_round_trip(tmp_path):
    try:
        configure_cache(str(tmp_path))
        x = bernoulli(30)
        assert (tmp_path / "bernoulli.tsv").exists()
        # a fresh configure re-reads the file
        configure_cache(str(tmp_path))
        assert bernoulli(30) == x
    finally:
        configure_cache(None)
