"""Truncated series: inverse Pochhammer, string functions, b-functions,
branching functions, character limits."""

from fractions import Fraction

import pytest

from qsuper.errors import DomainError, ParityError
from qsuper.qpoly import ONE, QPoly, truncate
from qsuper.supernomial import LVec, big_t
from qsuper.qpoly import HalfInt
from qsuper.tsdecomp import build_ts
from qsuper.identities import BFParams, make_bf
from qsuper.qseries import (
    BranchParams,
    SeriesCtx,
    StringParams,
    b_function,
    b_function_via_escalation,
    branching_function,
    branching_sigma_for_limit,
    branching_via_bosonic_limit,
    durfee_rectangle_series,
    fermionic_f_escalated,
    inv_pochhammer,
    inv_pochhammer_inf,
    limit_check_supernomial,
    multi_limit_f,
    poch_inf_shifted,
    stabilized_limit,
    string_function,
    string_symmetry_checks,
    vira_char_limit,
    vira_char_via_escalation,
)


def lqf(n, L):
    return sum(
        (
            Fraction(L[i - 1]) * (Fraction(min(i, j)) - Fraction(i * j, n)) * L[j - 1]
            for i in range(1, n)
            for j in range(1, n)
        ),
        Fraction(0),
    )


CTX8 = SeriesCtx(Fraction(8))
CTX12 = SeriesCtx(Fraction(12))


class TestInvPochhammer:
    def test_examples(self):
        assert inv_pochhammer(0, CTX12) == ONE
        assert inv_pochhammer(1, SeriesCtx(4)) == QPoly({0: 1, 1: 1, 2: 1, 3: 1, 4: 1})
        assert inv_pochhammer(2, SeriesCtx(4)) == QPoly({0: 1, 1: 1, 2: 2, 3: 2, 4: 3})

    def test_partition_counts(self):
        # 1/(q)_inf counts all partitions
        series = inv_pochhammer_inf(SeriesCtx(10))
        assert [series.coefficient(n) for n in range(0, 11)] == [
            1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42,
        ]

    def test_negative_a_rejected(self):
        with pytest.raises(DomainError):
            inv_pochhammer(-1, CTX8)


class TestPochInfShifted:
    def test_zero_base(self):
        # exponent 0 reproduces the finite-order Euler product
        from qsuper.qpoly import pochhammer

        got = poch_inf_shifted(Fraction(0), Fraction(10))
        want = truncate(pochhammer(1, 10), 10)
        assert got == want

    def test_negative_exponent_factors(self):
        # fractional negative base dodges the vanishing factor
        got = poch_inf_shifted(Fraction(-3, 2), Fraction(3))
        assert got.coefficient(Fraction(-1, 2)) == -1

    def test_vanishing_factor(self):
        # an integral negative base always hits (1 - q^0) = 0
        assert poch_inf_shifted(Fraction(-2), Fraction(3)).is_zero()
        assert poch_inf_shifted(Fraction(-3), Fraction(5)).is_zero()


class TestSupernomialLimit:
    @pytest.mark.parametrize(
        "entries,a,m",
        [((0, 0), 2, 1), ((0, 0), 2, 2), ((1, 0, 1), 3, 2), ((2,), 4, 1), ((0, 0), 0, 1)],
    )
    def test_limit(self, entries, a, m):
        assert limit_check_supernomial(entries, a, m, SeriesCtx(6))


class TestStringFunctions:
    def test_rank_one(self):
        assert string_function(StringParams(1, (), 0, 0), CTX12) == inv_pochhammer_inf(CTX12)

    def test_parity_validation(self):
        with pytest.raises(ParityError):
            string_function(StringParams(2, (1,), 0, 0), CTX8)

    @pytest.mark.parametrize(
        "sp",
        [
            StringParams(2, (1,), 0, 1),
            StringParams(2, (2,), 0, 2),
            StringParams(3, (1, 0), 1, 2),
            StringParams(3, (1, 1), 1, 2),
        ],
    )
    def test_symmetries(self, sp):
        assert string_symmetry_checks(sp, CTX8)

    def test_limit_of_dual_supernomial(self):
        for n, lbar, sigma, a in [(2, (1,), 0, 1), (2, (0,), 0, 0), (3, (1, 1), 1, 2)]:
            sp = StringParams(n, lbar, sigma, a)
            c = string_function(sp, CTX8)
            pre = -Fraction(n) * lqf(n, lbar) / (4 * (n + 2))

            def at(lam, lbar=lbar, sigma=sigma, a=a, pre=pre):
                return big_t(LVec(tuple(lbar) + (lam + sigma,)), HalfInt(a)).shifted(pre)

            assert stabilized_limit(at, CTX8) == c


class TestBFunction:
    def test_h1_reduces_to_string(self):
        for n, lbar, sigma, a in [(2, (1,), 0, 1), (2, (2,), 0, 2), (3, (1, 1), 0, 3)]:
            degrees = {i + 1: lbar[i] for i in range(n - 1)}
            b = b_function(n, a, degrees, {n: sigma}, CTX8)
            pre = Fraction(n) * lqf(n, lbar) / (4 * (n + 2))
            c = string_function(StringParams(n, lbar, sigma, a), CTX8)
            assert b == truncate(c.shifted(pre), CTX8.order)

    @pytest.mark.parametrize(
        "n,a,degrees,sigmas",
        [
            (2, 2, {2: 1}, {1: 0}),
            (2, 2, {}, {1: 0, 2: 1}),
            (3, 1, {1: 1, 3: 0}, {2: 0}),
        ],
    )
    def test_matches_escalated_dual(self, n, a, degrees, sigmas):
        ctx = SeriesCtx(6)
        assert b_function(n, a, degrees, sigmas, ctx) == b_function_via_escalation(
            n, a, degrees, sigmas, ctx
        )

    def test_parity_validation(self):
        with pytest.raises(ParityError):
            b_function(2, 1, {1: 0}, {2: 1}, CTX8)


class TestBranching:
    def test_limit_correspondence(self):
        for p, k, n, a, b, lbar, sigma in [
            (5, 1, 2, 1, 3, (0,), 1),
            (5, 1, 2, 1, 3, (0,), 0),
            (7, 1, 2, 2, 4, (0,), 1),
            (9, 2, 2, 1, 3, (0,), 1),
        ]:
            ts = build_ts(p, k)
            bf = BFParams(ts, n, a, b, LVec(tuple(lbar) + (sigma,)))
            bp = BranchParams(
                n, p - k * n, p, bf.r, a, tuple(lbar),
                branching_sigma_for_limit(bf, sigma),
            )
            assert branching_function(bp, CTX8) == branching_via_bosonic_limit(
                bf, sigma, CTX8
            )

    def test_fermionic_representation(self):
        for p, k, n, a, b, lbar, sigma in [
            (5, 1, 2, 1, 3, (0,), 1),
            (7, 1, 2, 2, 4, (0,), 0),
        ]:
            ts = build_ts(p, k)
            bf = BFParams(ts, n, a, b, LVec(tuple(lbar) + (sigma,)))
            bp = BranchParams(
                n, p - k * n, p, bf.r, a, tuple(lbar),
                branching_sigma_for_limit(bf, sigma),
            )
            chi = branching_function(bp, CTX8)
            pre = -Fraction((b - a) ** 2, 4 * n) - lqf(n, lbar) / 4
            degrees = {i + 1: lbar[i] for i in range(n - 1)}
            mlf = multi_limit_f(
                ts, n, a, b, degrees, {n: sigma}, SeriesCtx(CTX8.order - pre)
            )
            assert chi == truncate(mlf.shifted(pre), CTX8.order)

    def test_label_validation(self):
        with pytest.raises(DomainError):
            BranchParams(2, 5, 3, 1, 1, (0,), 0)
        with pytest.raises(ParityError):
            BranchParams(2, 3, 5, 1, 2, (0,), 0)


class TestVirasoro:
    def test_direct_equals_escalated(self):
        cases = [(5, 1, 1, 1, 2, 1, 10), (5, 1, 2, 2, 2, 2, 8), (7, 2, 1, 1, 2, 1, 8)]
        for p, k, n, a, b, m, order in cases:
            ts = build_ts(p, k)
            par = (a + b) % 2
            entries = tuple((par if i == m else 0) for i in range(1, n + 1))
            bf = BFParams(ts, n, a, b, LVec(entries))
            ctx = SeriesCtx(order)
            assert vira_char_limit(bf, ctx) == vira_char_via_escalation(bf, m, ctx)

    def test_m_independence(self):
        ts = build_ts(5, 1)
        bf = BFParams(ts, 2, 2, 2, LVec((0, 0)))
        ctx = SeriesCtx(8)
        assert vira_char_via_escalation(bf, 1, ctx) == vira_char_via_escalation(bf, 2, ctx)

    def test_leading_terms(self):
        # j = 0 dominates at order zero for a genuine family
        bf = make_bf(7, 2, 1, 1, 2, (1,))
        assert vira_char_limit(bf, SeriesCtx(0)) == ONE

    def test_degenerate_family_vanishes(self):
        # for unit k the two theta families coincide under an index shift,
        # so the normalized character telescopes to zero; the escalated
        # limit reproduces that
        bf = make_bf(5, 1, 1, 1, 2, (1,))
        ctx = SeriesCtx(10)
        assert vira_char_limit(bf, ctx).is_zero()
        assert vira_char_via_escalation(bf, 1, ctx).is_zero()

    def test_even_direction_parity_guard(self):
        bf = make_bf(5, 1, 2, 1, 2, (1, 0))
        with pytest.raises(ParityError):
            vira_char_via_escalation(bf, 2, SeriesCtx(6))


class TestMultiLimit:
    def test_two_component_case(self):
        ts = build_ts(7, 1)
        bf = BFParams(ts, 2, 1, 3, LVec((0, 1)))
        ctx = SeriesCtx(6)
        assert multi_limit_f(ts, 2, 1, 3, {}, {1: 0, 2: 1}, ctx) == fermionic_f_escalated(
            bf, {1: 0, 2: 1}, ctx
        )


class TestDurfeeSeries:
    def test_identity_to_order_twenty(self):
        ctx = SeriesCtx(20)
        ref = inv_pochhammer_inf(ctx)
        for m in range(0, 4):
            assert durfee_rectangle_series(m, ctx) == ref

    def test_truncation_idempotent(self):
        ctx = SeriesCtx(9)
        val = durfee_rectangle_series(2, ctx)
        assert truncate(val, ctx.order) == val
