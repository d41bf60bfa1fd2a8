"""Supernomial representations: values, symmetries, recurrences, duality."""

import itertools
from fractions import Fraction

import pytest

from qsuper.errors import DomainError, ParityError
from qsuper.qpoly import ONE, ZERO, HalfInt, QPoly, qbinomial
from qsuper.supernomial import (
    LVec,
    as_lvec,
    big_t,
    big_t_explicit,
    check_recurrence,
    check_recurrence_n,
    check_recurrence_q1,
    check_tilde_recurrence,
    q_supernomial,
    supernomial_q1,
    tilde_from_qsup,
    tilde_t,
)


def halves(ell, lo, hi):
    """HalfInt indices a with a + ell/2 integral in [lo, hi]."""
    for a2 in range(2 * lo, 2 * hi + 1):
        if (a2 + ell) % 2 == 0:
            yield HalfInt(a2)


class TestLVec:
    def test_weights(self):
        L = LVec((1, 2, 7))
        assert L.ell == (10, 19, 26)
        assert L.ell_n == 1 + 4 + 21
        assert L.quadratic_form() == 10 * 1 + 19 * 2 + 26 * 7

    def test_nonnegativity_predicate(self):
        assert LVec((0, 3)).is_nonnegative
        assert not LVec((1, -1)).is_nonnegative


class TestQ1:
    def test_zero_vector(self):
        assert supernomial_q1((0, 0), 0) == 1
        assert supernomial_q1((0, 0), 1) == 0

    def test_small_product(self):
        # (1+x)(1+x+x^2) expanded independently
        conv = [1, 2, 2, 1]
        vals = [supernomial_q1((1, 1), HalfInt(t)) for t in (-3, -1, 1, 3)]
        assert vals == conv

    def test_middle_trinomial(self):
        assert supernomial_q1((0, 2), 0) == 3

    def test_multinomial_reduction(self):
        # single-slot vector reduces to coefficients of (1+x+...+x^n)^L
        for n in (1, 2, 3):
            for big_l in range(0, 4):
                coeffs = [1]
                for _ in range(big_l):
                    new = [0] * (len(coeffs) + n)
                    for i, c in enumerate(coeffs):
                        for d in range(n + 1):
                            new[i + d] += c
                    coeffs = new
                entries = tuple(big_l if j == n else 0 for j in range(1, n + 1))
                ell = as_lvec(entries).ell_n
                for w, c in enumerate(coeffs):
                    assert supernomial_q1(entries, HalfInt(2 * w - ell)) == c

    def test_q1_recurrence(self):
        for entries in itertools.product(range(0, 4), repeat=3):
            L = LVec(entries)
            for n in (1, 2):
                for a in halves(L.ell_n, -8, 8):
                    assert check_recurrence_q1(L, a, n)

    def test_parity_error(self):
        with pytest.raises(ParityError):
            supernomial_q1((1, 1), 0)  # ell is odd, integer index invalid


class TestQSupernomial:
    def test_examples(self):
        assert q_supernomial((1, 1), HalfInt.parse("-1/2")) == QPoly({0: 1, 1: 1})
        assert q_supernomial((1, 1), HalfInt.parse("3/2")) == ONE
        assert q_supernomial((1, 1), HalfInt.parse("-5/2")) == ZERO

    def test_single_slot_collapses_to_qbinomial(self):
        for big_l in range(0, 7):
            for a in halves(big_l, -4, 4):
                want = qbinomial(big_l, (a.twice + big_l) // 2)
                assert q_supernomial((big_l,), a) == want

    def test_q1_specialization(self):
        from qsuper.qpoly import eval_at_one

        for entries in [(1, 1), (2, 1), (0, 3), (1, 1, 1)]:
            L = LVec(entries)
            for a in halves(L.ell_n, -6, 6):
                assert eval_at_one(q_supernomial(L, a)) == supernomial_q1(L, a)

    def test_symmetry_window(self):
        for entries in [(1, 1), (2, 1), (0, 3), (2, 0, 2), (1, 1, 1)]:
            L = LVec(entries)
            for a in halves(L.ell_n, 0, 6):
                assert q_supernomial(L, a) == q_supernomial(L, -a)
                assert big_t(L, a) == big_t(L, -a)


class TestBigT:
    def test_rank_one(self):
        assert big_t((2,), 0) == qbinomial(2, 1)

    def test_single_slot_prefactor(self):
        for n in (2, 3):
            for big_l in range(0, 5):
                for a in halves(big_l, -3, 3):
                    entries = (big_l,) + (0,) * (n - 1)
                    pre = Fraction((n - 1) * a.twice * a.twice, 4 * n)
                    want = qbinomial(big_l, (big_l + a.twice) // 2).shifted(pre)
                    assert big_t(entries, a) == want

    def test_zero_padding(self):
        for entries in [(1, 1), (2, 0), (0, 2)]:
            L = LVec(entries)
            for a in halves(L.ell_n, -3, 3):
                small = big_t(L, a)
                padded = big_t(entries + (0,), a)
                if small.is_zero():
                    assert padded.is_zero()
                else:
                    extra = Fraction(a.twice * a.twice, 4 * 2 * 3)
                    assert padded == small.shifted(extra)

    def test_fractional_exponents_observed(self):
        # half-odd index against even rank gives genuinely fractional powers
        val = big_t((1, 0), HalfInt(1))
        assert val == QPoly({Fraction(1, 8): 1})


class TestExplicit:
    @pytest.mark.parametrize(
        "entries", [(2,), (1, 1), (2, 1), (1, 2), (2, 2), (1, 1, 1), (2, 0, 1)]
    )
    def test_agrees_with_dual(self, entries):
        L = LVec(entries)
        for a in halves(L.ell_n, -L.ell_n, L.ell_n):
            if abs(a.twice) > L.ell_n:
                continue
            assert big_t_explicit(L, a) == big_t(L, a)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            big_t_explicit((1, -1), HalfInt(0))
        with pytest.raises(DomainError):
            big_t_explicit((1, 1), HalfInt(9))


class TestTilde:
    def test_examples(self):
        assert tilde_t((1, 1), 0) == ONE
        assert tilde_t((2, 1), 0) == ONE
        assert tilde_t((1, 1), 1) == QPoly({1: 1, 2: 1})
        assert tilde_t((1, 1), 2) == QPoly({3: 1, 4: 1})
        assert tilde_t((1, 1), -1) == ZERO

    def test_duality_route(self):
        for entries in [(1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (1, 0, 1)]:
            for a in range(0, 9):
                assert tilde_t(entries, a) == tilde_from_qsup(entries, a)


class TestRecurrences:
    def test_examples(self):
        assert check_recurrence((3, 1), HalfInt(1), 1)
        assert check_recurrence((-1, 2), HalfInt(1), 1)
        assert check_recurrence((2, 2, 2), 0, 2)

    def test_negative_entries_window(self):
        for entries in itertools.product(range(-2, 3), repeat=2):
            L = LVec(entries)
            cap = max(0, sum(j * max(x, 0) for j, x in enumerate(entries, 1))) + 2
            for w in range(0, cap + 1):
                assert check_recurrence(L, HalfInt(2 * w - L.ell_n), 1)

    def test_level_bounds(self):
        with pytest.raises(DomainError):
            check_recurrence((1, 1), HalfInt(1), 2)

    def test_tilde_transcriptions(self):
        assert check_tilde_recurrence((2, 1), 2, 1)
        assert check_tilde_recurrence((1, 2, 1), 3, 2)
        for entries in itertools.product(range(0, 3), repeat=3):
            L = LVec(entries)
            for level in (1, 2):
                for a in range(0, L.ell_n + 2):
                    assert check_tilde_recurrence(L, a, level)

    def test_boundary_forms(self):
        assert check_recurrence_n((1, 2), 2)
        assert check_recurrence_n((0, 2), 0)
        assert check_recurrence_n((2, 2), 3)
        with pytest.raises(DomainError):
            check_recurrence_n((2, 1), 1)
