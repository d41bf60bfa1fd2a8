"""Kernel tests: Gaussian binomials, Pochhammer products, the reciprocal
substitution, and exact serialization."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qsuper.errors import DomainError, ParityError
from qsuper.qpoly import (
    ONE,
    ZERO,
    HalfInt,
    QPoly,
    divexact,
    divexact_one_minus_q,
    eval_at_one,
    pochhammer,
    q_factorial_poch,
    qbinomial,
    substitute_recip,
    truncate,
)


def poly(d):
    return QPoly(d)


class TestQbinomial:
    def test_examples(self):
        assert qbinomial(2, 1) == poly({0: 1, 1: 1})
        assert qbinomial(5, 0) == ONE
        assert qbinomial(1, 2) == ZERO
        assert qbinomial(-1, 1) == poly({-1: -1})

    def test_negative_bottom_is_zero(self):
        assert qbinomial(3, -1) == ZERO
        assert qbinomial(-2, -1) == ZERO

    def test_degree_and_nonnegativity(self):
        for L in range(0, 9):
            for a in range(0, L + 1):
                p = qbinomial(L, a)
                assert all(c > 0 for c in p.terms.values())
                if a:
                    assert p.max_exp() == a * (L - a)
                    assert p.min_exp() == 0

    @pytest.mark.parametrize("L", range(-4, 9))
    @pytest.mark.parametrize("a", range(-2, 11))
    def test_pascal_recurrences(self, L, a):
        lhs = qbinomial(L, a)
        assert lhs == qbinomial(L - 1, a - 1) + qbinomial(L - 1, a).shifted(a)
        assert lhs == qbinomial(L - 1, a) + qbinomial(L - 1, a - 1).shifted(L - a)

    def test_binomial_product_expansion(self):
        # (1 + x q^0)(1 + x q^1)...(1 + x q^{L-1}) recovered coefficient-wise
        for L in range(0, 9):
            coeffs = {0: ONE}
            for i in range(L):
                new = dict(coeffs)
                for xp, val in coeffs.items():
                    new[xp + 1] = new.get(xp + 1, ZERO) + val.shifted(i)
                coeffs = new
            for a in range(0, L + 2):
                want = coeffs.get(a, ZERO)
                assert want == qbinomial(L, a).shifted(a * (a - 1) // 2)

    def test_eval_at_one_matches_binomial(self):
        for L in range(0, 13):
            for a in range(0, L + 1):
                assert eval_at_one(qbinomial(L, a)) == math.comb(L, a)


class TestRecip:
    def test_examples(self):
        assert substitute_recip(poly({0: 1, 1: 1})) == poly({0: 1, -1: 1})
        assert substitute_recip(ZERO) == ZERO

    def test_reciprocal_transform(self):
        for L in range(0, 11):
            for a in range(0, L + 1):
                qb = qbinomial(L, a)
                assert substitute_recip(qb) == qb.shifted(-a * (L - a))

    @given(
        st.dictionaries(
            st.fractions(max_denominator=4, min_value=-9, max_value=9),
            st.integers(min_value=-50, max_value=50),
            max_size=8,
        )
    )
    def test_involution(self, terms):
        p = QPoly(terms)
        assert substitute_recip(substitute_recip(p)) == p


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(1, 2) == poly({0: 1, 1: -1, 2: -1, 3: 1})
        assert pochhammer(1, 0) == ONE
        assert pochhammer(0, 3) == ZERO

    def test_fractional_base(self):
        p = pochhammer(Fraction(1, 2), 1)
        assert p == poly({0: 1, Fraction(1, 2): -1})

    def test_negative_length_rejected(self):
        with pytest.raises(DomainError):
            pochhammer(1, -1)


class TestDivision:
    def test_one_minus_q_sparse_gap(self):
        p = ONE - QPoly.monomial(2)
        assert divexact_one_minus_q(p, 1) == poly({0: 1, 1: 1})

    def test_remainder_detected(self):
        with pytest.raises(DomainError):
            divexact_one_minus_q(ONE - QPoly.monomial(3), 2)

    def test_divexact_roundtrip(self):
        num = q_factorial_poch(5)
        den = q_factorial_poch(3)
        quot = divexact(num, den)
        assert quot * den == num

    def test_divexact_rejects_nondivisor(self):
        with pytest.raises(DomainError):
            divexact(poly({0: 1, 1: 1}), poly({0: 1, 2: 1}))


class TestTruncate:
    def test_examples(self):
        p = poly({0: 1, 1: 1, 5: 1})
        assert truncate(p, 2) == poly({0: 1, 1: 1})
        assert truncate(p, 5) == p
        assert truncate(qbinomial(10, 5), 3) == poly({0: 1, 1: 1, 2: 2, 3: 3})

    @given(
        st.dictionaries(
            st.integers(min_value=-6, max_value=12),
            st.integers(min_value=-9, max_value=9),
            max_size=10,
        ),
        st.integers(min_value=-6, max_value=12),
    )
    def test_idempotent(self, terms, order):
        p = truncate(QPoly(terms), order)
        assert truncate(p, order) == p


class TestSerialization:
    def test_sorted_triples(self):
        p = poly({Fraction(1, 2): 3, -1: 2, 4: -7})
        assert p.to_json_terms() == [[-1, 1, "2"], [1, 2, "3"], [4, 1, "-7"]]

    @given(
        st.dictionaries(
            st.fractions(max_denominator=8, min_value=-20, max_value=20),
            st.integers(min_value=-(10 ** 30), max_value=10 ** 30),
            max_size=12,
        )
    )
    def test_roundtrip_bit_exact(self, terms):
        p = QPoly(terms)
        assert QPoly.from_json_terms(p.to_json_terms()) == p


class TestHalfInt:
    def test_parse(self):
        assert HalfInt.parse("-1/2").twice == -1
        assert HalfInt.parse("3").twice == 6
        assert HalfInt.parse("7/2").as_fraction() == Fraction(7, 2)

    def test_addition_closed(self):
        a = HalfInt(3) + HalfInt(1)
        assert isinstance(a, HalfInt) and a.twice == 4

    def test_coerce_rejects_thirds(self):
        with pytest.raises(ParityError):
            HalfInt.coerce(Fraction(1, 3))

    def test_ordering_and_hash(self):
        assert HalfInt(1) < HalfInt(3)
        assert hash(HalfInt(4)) == hash(Fraction(2))
