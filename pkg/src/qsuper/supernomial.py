"""Supernomial coefficients in all four representations.

A degree vector L of length N encodes the product prod_j (1+x+...+x^j)^L_j.
The q-analogue is a chain of q-binomials summed over compositions; its q->1/q
companion T carries a rational prefactor, and a further variant (tilde form)
is the generating function of admissible partitions.

The composition sums are evaluated by a suffix dynamic programme over states
(remaining degree suffix, leading composition part, remaining weight).  Inner
products run on dense integer-exponent arrays (numpy, with an exact overflow
guard that falls back to arbitrary precision), because the identity sweeps
evaluate hundreds of thousands of these chains.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, ParityError
from .qpoly import (
    ONE,
    ZERO,
    HalfInt,
    QPoly,
    divexact,
    pochhammer,
    q_factorial_poch,
    qbinomial,
    substitute_recip,
)

LLike = Union["LVec", Sequence[int]]

_INT64_SAFE = 1 << 62


class LVec:
    """Integer degree vector L with the derived weight vector ell.

    ell_i = sum_j min(i,j) L_j; in particular ell_N = sum_j j*L_j, which is
    asserted against an independent recomputation on construction.
    """

    __slots__ = ("entries", "ell")

    def __init__(self, entries: Sequence[int]):
        entries = tuple(int(x) for x in entries)
        if not entries:
            raise DomainError("LVec needs length >= 1")
        self.entries = entries
        n = len(entries)
        self.ell = tuple(
            sum(min(i, j) * entries[j - 1] for j in range(1, n + 1))
            for i in range(1, n + 1)
        )
        assert self.ell[-1] == sum(j * entries[j - 1] for j in range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def ell_n(self) -> int:
        return self.ell[-1]

    @property
    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.entries)

    def quadratic_form(self) -> int:
        """L T^{-1} L = sum_{i,j} min(i,j) L_i L_j."""
        return sum(e * l for e, l in zip(self.ell, self.entries))

    def shifted(self, deltas: dict) -> "LVec":
        """New LVec with entries[i-1] += delta; indices outside 1..N drop."""
        new = list(self.entries)
        for idx, d in deltas.items():
            if 1 <= idx <= len(new):
                new[idx - 1] += d
        return LVec(new)

    def __eq__(self, other):
        return isinstance(other, LVec) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"LVec{self.entries}"


def as_lvec(L: LLike) -> LVec:
    return L if isinstance(L, LVec) else LVec(L)


# ---------------------------------------------------------------------------
# dense integer-exponent engine
# ---------------------------------------------------------------------------

class _DP:
    """Dense Laurent polynomial: offset, coefficient array, and an upper
    bound on the sum of absolute coefficients.  The bound is propagated, not
    recomputed, and decides when int64 convolution is provably exact.
    """

    __slots__ = ("off", "arr", "bound")

    def __init__(self, off: int, arr, bound: int):
        self.off = off
        self.arr = arr
        self.bound = bound

    def is_zero(self) -> bool:
        return self.arr.shape[0] == 0

    def to_qpoly(self) -> QPoly:
        terms = {}
        off = self.off
        for i, c in enumerate(self.arr.tolist()):
            if c:
                terms[off + i] = int(c)
        return QPoly(terms, _trusted=True)


_DP_ZERO = _DP(0, np.zeros(0, dtype=np.int64), 0)


def _dp_trim(off: int, arr, bound: int) -> _DP:
    nz = np.nonzero(arr)[0]
    if nz.shape[0] == 0:
        return _DP_ZERO
    lo, hi = int(nz[0]), int(nz[-1])
    return _DP(off + lo, arr[lo:hi + 1], bound)


def _dp_from_qpoly(p: QPoly) -> _DP:
    if p.is_zero():
        return _DP_ZERO
    exps = list(p.terms)
    if any(not isinstance(e, int) for e in exps):
        raise DomainError("dense engine needs integer exponents")
    lo, hi = min(exps), max(exps)
    bound = sum(abs(c) for c in p.terms.values())
    dtype = np.int64 if bound < _INT64_SAFE else object
    arr = np.zeros(hi - lo + 1, dtype=dtype)
    for e, c in p.terms.items():
        arr[e - lo] = c
    return _DP(lo, arr, bound)


def _dp_mul(a: _DP, b: _DP) -> _DP:
    if a.is_zero() or b.is_zero():
        return _DP_ZERO
    bound = a.bound * b.bound
    if bound < _INT64_SAFE and a.arr.dtype == np.int64 and b.arr.dtype == np.int64:
        arr = np.convolve(a.arr, b.arr)
    else:
        arr = np.convolve(a.arr.astype(object), b.arr.astype(object))
    return _dp_trim(a.off + b.off, arr, bound)


def _dp_sum(items) -> _DP:
    """Sum of (exponent_shift, _DP) pairs."""
    items = [(s, p) for s, p in items if not p.is_zero()]
    if not items:
        return _DP_ZERO
    if len(items) == 1:
        s, p = items[0]
        return _DP(p.off + s, p.arr, p.bound)
    lo = min(s + p.off for s, p in items)
    hi = max(s + p.off + p.arr.shape[0] for s, p in items)
    bound = sum(p.bound for _, p in items)
    use_obj = bound >= _INT64_SAFE or any(p.arr.dtype != np.int64 for _, p in items)
    arr = np.zeros(hi - lo, dtype=object if use_obj else np.int64)
    for s, p in items:
        start = s + p.off - lo
        if use_obj and p.arr.dtype == np.int64:
            arr[start:start + p.arr.shape[0]] += p.arr.astype(object)
        else:
            arr[start:start + p.arr.shape[0]] += p.arr
    return _dp_trim(lo, arr, bound)


@lru_cache(maxsize=100_000)
def _dp_qbin(top: int, bottom: int) -> _DP:
    return _dp_from_qpoly(qbinomial(top, bottom))


class _LRU:
    """Minimal LRU cache for suffix layers (values can be large)."""

    def __init__(self, cap: int):
        self.cap = cap
        self.data: OrderedDict = OrderedDict()

    def get(self, key):
        v = self.data.get(key)
        if v is not None:
            self.data.move_to_end(key)
        return v

    def put(self, key, value):
        self.data[key] = value
        if len(self.data) > self.cap:
            self.data.popitem(last=False)


_SUFFIX_LAYERS = _LRU(4000)


def _suffix_layer(suffix: tuple, sigma: int) -> dict:
    """Map j -> chain value over all compositions of sigma whose first part,
    at this suffix level, is j.

    For suffix (L_k,...,L_N) the entry at j collects
      sum over j_{k+1}+...+j_N = sigma - j of
        q^{sum_{m>k} j_{m-1}(L_m+...+L_N - j_m)} * chained q-binomials,
    including the leading binomial qbin(L_k + j_{k+1}, j).
    """
    key = (suffix, sigma)
    hit = _SUFFIX_LAYERS.get(key)
    if hit is not None:
        return hit
    if len(suffix) == 1:
        qb = _dp_qbin(suffix[0], sigma)
        layer = {} if qb.is_zero() else {sigma: qb}
    else:
        head = suffix[0]
        rest = suffix[1:]
        u_next = sum(rest)
        layer = {}
        for j in range(sigma + 1):
            sub = _suffix_layer(rest, sigma - j)
            items = []
            for jp, val in sub.items():
                qb = _dp_qbin(head + jp, j)
                if qb.is_zero():
                    continue
                items.append((j * (u_next - jp), _dp_mul(qb, val)))
            tot = _dp_sum(items)
            if not tot.is_zero():
                layer[j] = tot
    _SUFFIX_LAYERS.put(key, layer)
    return layer


@lru_cache(maxsize=100_000)
def _qsup_by_weight(entries: tuple, weight: int) -> QPoly:
    """q-supernomial as a function of the composition weight a + ell_N/2."""
    if weight < 0:
        return ZERO
    layer = _suffix_layer(entries, weight)
    return _dp_sum([(0, v) for v in layer.values()]).to_qpoly()


def clear_caches():
    _SUFFIX_LAYERS.data.clear()
    _qsup_by_weight.cache_clear()
    _dp_qbin.cache_clear()
    _supq1_chain.cache_clear()
    _supq1_product.cache_clear()


def _weight_of(L: LVec, a) -> int:
    a = HalfInt.coerce(a)
    twice = a.twice + L.ell_n
    if twice % 2:
        raise ParityError(
            f"index {a} incompatible with L={L.entries}: a + ell_N/2 not an integer"
        )
    return twice // 2


# ---------------------------------------------------------------------------
# the four representations
# ---------------------------------------------------------------------------

def q_supernomial(L: LLike, a) -> QPoly:
    """q-analogue of the supernomial: composition-chained q-binomials."""
    L = as_lvec(L)
    return _qsup_by_weight(L.entries, _weight_of(L, a))


def supernomial_q1(L: LLike, a) -> int:
    """Coefficient of x^{a + ell_N/2} in prod_j (1+x+...+x^j)^{L_j}.

    Evaluated by the chained-binomial sum; for nonnegative L the direct
    product expansion is computed as well and the two must agree.
    """
    L = as_lvec(L)
    w = _weight_of(L, a)
    if w < 0:
        return 0
    total = 0
    for j1 in range(w + 1):
        total += _supq1_chain(L.entries, j1, w - j1)
    if L.is_nonnegative:
        assert total == _supq1_product(L.entries).get(w, 0), "representations disagree"
    return total


def _comb_gen(n: int, k: int) -> int:
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(k - n - 1, k)


@lru_cache(maxsize=400_000)
def _supq1_chain(entries: tuple, j_head: int, rest_weight: int) -> int:
    """Binomial chain with leading part j_head over the given suffix."""
    if len(entries) == 1:
        return _comb_gen(entries[0], j_head) if rest_weight == 0 else 0
    head, rest = entries[0], entries[1:]
    total = 0
    for j_next in range(rest_weight + 1):
        sub = _supq1_chain(rest, j_next, rest_weight - j_next)
        if sub:
            c = _comb_gen(head + j_next, j_head)
            if c:
                total += c * sub
    return total


@lru_cache(maxsize=8192)
def _supq1_product(entries: tuple) -> dict:
    """Direct expansion of prod_j (1+x+...+x^j)^{L_j} for L in Z_+^N."""
    coeffs = [1]
    for j, mult in enumerate(entries, start=1):
        for _ in range(mult):
            new = [0] * (len(coeffs) + j)
            for i, c in enumerate(coeffs):
                if c:
                    for d in range(j + 1):
                        new[i + d] += c
            coeffs = new
    return {i: c for i, c in enumerate(coeffs) if c}


def big_t(L: LLike, a) -> QPoly:
    """Dual q-supernomial: rational power of q times the q->1/q supernomial."""
    L = as_lvec(L)
    a = HalfInt.coerce(a)
    base = q_supernomial(L, a)
    if base.is_zero():
        return ZERO
    pre = Fraction(L.quadratic_form(), 4) - Fraction(a.twice * a.twice, 4 * L.n)
    return substitute_recip(base).shifted(pre)


def tilde_t(L: LLike, a: int) -> QPoly:
    """Modified dual supernomial; the generating function of admissible
    partitions when L is nonnegative."""
    L = as_lvec(L)
    a = HalfInt.coerce(a)
    if not a.is_integer:
        raise ParityError("tilde form takes an integer index")
    a = a.twice // 2
    if a < 0:
        return ZERO
    entries = L.entries
    n = L.n
    prefix = [0]
    for x in entries[:-1]:
        prefix.append(prefix[-1] + x)

    @lru_cache(maxsize=None)
    def chain(k: int, j_here: int, rest: int) -> QPoly:
        # levels k..N with j_k = j_here, remaining weight for j_{k+1..N}
        local = QPoly.monomial(j_here * (j_here + prefix[k - 1]))
        if k == n:
            if rest != 0:
                return ZERO
            return qbinomial(entries[n - 1], j_here) * local
        total = ZERO
        for j_next in range(rest + 1):
            qb = qbinomial(entries[k - 1] + j_next, j_here)
            if qb.is_zero():
                continue
            sub = chain(k + 1, j_next, rest - j_next)
            if sub.is_zero():
                continue
            total = total + qb * sub
        return total * local

    out = ZERO
    for j1 in range(a + 1):
        out = out + chain(1, j1, a - j1)
    return out


def tilde_from_qsup(L: LLike, a: int) -> QPoly:
    """Same value through the duality route: q^{a ell_1} times the
    reciprocal-substituted q-supernomial at index a - ell_N/2."""
    L = as_lvec(L)
    base = q_supernomial(L, HalfInt(2 * a - L.ell_n))
    return substitute_recip(base).shifted(a * L.ell[0])


def big_t_explicit(L: LLike, a) -> QPoly:
    """Explicit lattice-sum form of the dual supernomial for nonnegative L:
    a quadratic-form exponent times Pochhammer ratios, summed over a
    restricted box with the two boundary variables eliminated."""
    L = as_lvec(L)
    a = HalfInt.coerce(a)
    if not L.is_nonnegative:
        raise DomainError("explicit form needs a nonnegative degree vector")
    if abs(a.twice) > L.ell_n:
        raise DomainError("index outside [-ell_N/2, ell_N/2]")
    n = L.n
    entries = (0,) + L.entries  # prepend L_0 = 0
    af = a.as_fraction()
    ell1 = Fraction(L.ell[0])

    def c_inv(i: int, j: int) -> Fraction:
        return Fraction(min(i, j)) - Fraction(i * j, n)

    def boxes(i: int, budget: int, zs: tuple):
        if i == n:
            yield zs
            return
        for z in range(budget + 1):
            yield from boxes(i + 1, budget - z, zs + (z,))

    total = ZERO
    for zs in boxes(1, L.ell[0], ()):
        m = [Fraction(z) - Fraction(entries[i + 1], 2) for i, z in enumerate(zs)]
        cinv_m = [
            sum(c_inv(i, j + 1) * m[j] for j in range(n - 1)) for i in range(1, n)
        ]
        first = cinv_m[0] if n > 1 else Fraction(0)
        last = cinv_m[-1] if n > 1 else Fraction(0)
        m0 = ell1 / 2 + af / n - first
        mN = -af / n - last
        if m0.denominator != 1 or m0 < 0:
            continue
        zN = Fraction(entries[n], 2) + mN
        if zN.denominator != 1 or zN < 0:
            continue
        ms = [m0] + m + [mN]
        zfull = [int(m0)] + list(zs) + [int(zN)]
        quad = sum(
            m[i] * m[j] * c_inv(i + 1, j + 1)
            for i in range(n - 1)
            for j in range(n - 1)
        )
        exps = []
        acc = Fraction(0)
        for j in range(n + 1):
            acc += ms[j] - Fraction(entries[j], 2)
            exps.append(acc)
        assert exps[-1] == 0, "x_N must equal one"
        num = ONE
        den = ONE
        for j in range(n + 1):
            if entries[j]:
                num = num * pochhammer(exps[j] + 1, entries[j])
            den = den * q_factorial_poch(zfull[j])
        total = total + divexact(num, den).shifted(quad)
    return total


# ---------------------------------------------------------------------------
# recurrences
# ---------------------------------------------------------------------------

def _shift_vec(L: LVec, n: int, deltas) -> LVec:
    """L + sum of deltas in unit directions; out-of-range directions vanish."""
    new = list(L.entries)
    for idx, d in deltas:
        if 1 <= idx <= L.n:
            new[idx - 1] += d
    return LVec(new)


def check_recurrence(L: LLike, a, n: int) -> bool:
    """Three-term recurrences of the q-supernomial and its dual at level n,
    valid for 1 <= n <= N-1 and any integer degree vector."""
    L = as_lvec(L)
    a = HalfInt.coerce(a)
    if not 1 <= n <= L.n - 1:
        raise DomainError("level must satisfy 1 <= n <= N-1")
    drop = _shift_vec(L, n, [(n, -2)])
    swap = _shift_vec(L, n, [(n - 1, 1), (n, -2), (n + 1, 1)])
    lhs = q_supernomial(L, a)
    rhs = q_supernomial(drop, a).shifted(L.ell[n - 1] - n) + q_supernomial(swap, a)
    if lhs != rhs:
        return False
    lhs_t = big_t(L, a)
    rhs_t = big_t(drop, a) + big_t(swap, a).shifted(Fraction(L.entries[n - 1] - 1, 2))
    return lhs_t == rhs_t


def check_recurrence_q1(L: LLike, a, n: int) -> bool:
    """q=1 supernomial recurrence at level n."""
    L = as_lvec(L)
    drop = _shift_vec(L, n, [(n, -2)])
    swap = _shift_vec(L, n, [(n - 1, 1), (n, -2), (n + 1, 1)])
    return supernomial_q1(L, a) == supernomial_q1(swap, a) + supernomial_q1(drop, a)


def check_tilde_recurrence(L: LLike, a: int, n: int) -> bool:
    """Tilde-form transcription of the dual recurrence at level 1 <= n <= N-1."""
    L = as_lvec(L)
    if not 1 <= n <= L.n - 1:
        raise DomainError("level must satisfy 1 <= n <= N-1")
    swap = _shift_vec(L, n, [(n - 1, 1), (n, -2), (n + 1, 1)])
    drop = _shift_vec(L, n, [(n, -2)])
    lhs = tilde_t(L, a)
    if n == 1:
        rhs = tilde_t(swap, a).shifted(a) + tilde_t(drop, a - 1).shifted(2 * a - 1)
    else:
        off = 2 * a - n + sum((n - i) * L.entries[i - 1] for i in range(1, n))
        rhs = tilde_t(swap, a) + tilde_t(drop, a - n).shifted(off)
    return lhs == rhs


def check_recurrence_n(L: LLike, a: int) -> bool:
    """Both boundary (top-level) recurrences of the tilde form, which need
    N >= 2 and L - 2 e_N nonnegative."""
    L = as_lvec(L)
    n = L.n
    if n < 2:
        raise DomainError("boundary recurrences need N >= 2")
    if L.entries[-1] < 2 or not L.is_nonnegative:
        raise DomainError("boundary recurrences need L - 2 e_N nonnegative")
    ell1 = L.ell[0]
    tail = sum((n - i) * L.entries[i - 1] for i in range(1, n + 1))
    tail1 = sum((n - i + 1) * L.entries[i - 1] for i in range(1, n + 1))
    half = _shift_vec(L, n, [(n - 1, 1), (n, -1)])
    drop = _shift_vec(L, n, [(n, -2)])
    swap = _shift_vec(L, n, [(n - 1, 1), (n, -2)])
    lhs = tilde_t(L, a)
    first = (
        tilde_t(half, a - 1).shifted(ell1)
        + tilde_t(drop, a - n).shifted(2 * a - n + tail)
        + tilde_t(swap, a)
    )
    second = (
        tilde_t(half, a)
        + tilde_t(drop, a - n).shifted(2 * a - n + tail)
        + tilde_t(swap, a - n - 1).shifted(2 * a - n - 1 + tail1)
    )
    return lhs == first and lhs == second
