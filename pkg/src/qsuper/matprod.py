"""Commuting family of incidence-matrix powers and its supernomial identity
at q = 1.

The family starts from the identity and the path-graph incidence matrix on
p-1 nodes and extends by the Chebyshev-style three-term product rule; matrix
elements of monomials in the family are alternating sums of supernomial
coefficients.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .errors import DomainError, ParityError
from .supernomial import LVec, as_lvec, supernomial_q1
from .qpoly import HalfInt

Matrix = Tuple[Tuple[int, ...], ...]


def _identity(size: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    size = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def build_family(p: int) -> List[Matrix]:
    """A_0 = I, A_1 = path incidence on p-1 nodes, A_{k+1} = A_k A_1 - A_{k-1}.

    Returns [A_0, ..., A_{p-2}]; construction checks that A_{p-2} is the
    antidiagonal flip Y and that A_k Y = A_{p-k-2}.
    """
    if p < 4:
        raise DomainError("need p >= 4")
    size = p - 1
    fam = [_identity(size)]
    a1 = tuple(
        tuple(1 if abs(i - j) == 1 else 0 for j in range(size)) for i in range(size)
    )
    fam.append(a1)
    for _ in range(2, p - 1):
        fam.append(_mat_sub(_mat_mul(fam[-1], a1), fam[-2]))
    flip = tuple(
        tuple(1 if i + j == size - 1 else 0 for j in range(size)) for i in range(size)
    )
    if fam[p - 2] != flip:
        raise DomainError("family failed its antidiagonal invariant")
    for k in range(p - 1):
        if _mat_mul(fam[k], flip) != fam[p - k - 2]:
            raise DomainError("family failed its flip-shift invariant")
    return fam


def family_commutes(p: int) -> bool:
    fam = build_family(p)
    return all(
        _mat_mul(fam[i], fam[j]) == _mat_mul(fam[j], fam[i])
        for i in range(len(fam))
        for j in range(i + 1, len(fam))
    )


def monomial_matrix(p: int, L: Sequence[int]) -> Matrix:
    """A_1^{L_1} A_2^{L_2} ... A_{p-3}^{L_{p-3}}."""
    L = as_lvec(L)
    if L.n != p - 3:
        raise DomainError("degree vector must have length p-3")
    if not L.is_nonnegative:
        raise DomainError("degree vector must be nonnegative")
    fam = build_family(p)
    out = _identity(p - 1)
    for idx, mult in enumerate(L.entries, start=1):
        for _ in range(mult):
            out = _mat_mul(out, fam[idx])
    return out


def supernomial_matrix_element(p: int, L: LVec, a: int, b: int) -> int:
    """Alternating supernomial sum for the (a, b) matrix element."""
    ell = L.ell_n
    total = 0
    for sign, off in ((1, b - a), (-1, b + a)):
        j = -(ell + abs(off)) // (2 * p) - 1
        while 2 * p * j + off <= ell:
            idx2 = off + 2 * p * j
            if abs(idx2) <= ell:
                total += sign * supernomial_q1(L, HalfInt(idx2))
            j += 1
    return total


def matrix_identity_check(p: int, L: Sequence[int], a: int, b: int) -> bool:
    """Matrix element of the monomial equals the alternating supernomial sum."""
    L = as_lvec(L)
    if not (1 <= a <= p - 1 and 1 <= b <= p - 1):
        raise DomainError("need 1 <= a, b <= p-1")
    odd_weight = sum(L.entries[i] for i in range(0, L.n, 2))
    if (a + b + odd_weight) % 2:
        raise ParityError("a + b + L_1 + L_3 + ... must be even")
    mat = monomial_matrix(p, L.entries)
    return mat[a - 1][b - 1] == supernomial_matrix_element(p, L, a, b)
