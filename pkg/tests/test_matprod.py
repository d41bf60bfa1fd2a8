"""q=1 incidence-matrix family and its supernomial identity."""

import itertools

import pytest

from qsuper.errors import DomainError, ParityError
from qsuper.matprod import (
    build_family,
    family_commutes,
    matrix_identity_check,
    monomial_matrix,
)


class TestFamily:
    def test_smallest_case(self):
        fam = build_family(4)
        assert fam[0] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert fam[1] == ((0, 1, 0), (1, 0, 1), (0, 1, 0))
        assert fam[2] == ((0, 0, 1), (0, 1, 0), (1, 0, 0))

    @pytest.mark.parametrize("p", range(4, 10))
    def test_commuting(self, p):
        assert family_commutes(p)

    def test_p_validation(self):
        with pytest.raises(DomainError):
            build_family(3)


class TestIdentity:
    def test_examples(self):
        assert matrix_identity_check(4, (2,), 1, 1)
        assert matrix_identity_check(5, (0, 0), 2, 2)
        assert matrix_identity_check(6, (1, 0, 1), 2, 4)

    def test_parity_guard(self):
        with pytest.raises(ParityError):
            matrix_identity_check(6, (1, 0, 1), 2, 3)

    def test_label_bounds(self):
        with pytest.raises(DomainError):
            matrix_identity_check(5, (0, 0), 0, 2)

    @pytest.mark.parametrize("p", [4, 5, 6])
    def test_window(self, p):
        n = p - 3
        for entries in itertools.product(range(0, 4), repeat=n):
            if sum(entries) > 3:
                continue
            odd = sum(entries[i] for i in range(0, n, 2))
            for a in range(1, p):
                for b in range(1, p):
                    if (a + b + odd) % 2:
                        continue
                    assert matrix_identity_check(p, entries, a, b)

    def test_identity_matrix_case(self):
        mat = monomial_matrix(5, (0, 0))
        assert mat == tuple(
            tuple(1 if i == j else 0 for j in range(4)) for i in range(4)
        )
