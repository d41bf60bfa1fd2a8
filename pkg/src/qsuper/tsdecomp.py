"""Takahashi-Suzuki decomposition of a rational p/k with 0 < 2k < p.

The continued fraction expansion of p/k (with the terminal value shifted by
two) determines zone lengths nu_j, zone boundaries t_m, a fractional
incidence matrix and its Cartan companion, the y recursions, Takahashi and
truncated Takahashi lengths, and the parity vectors used to restrict
fermionic sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import List, Optional, Tuple

from .errors import DomainError


def _validate_pk(p: int, k: int):
    if not (0 < 2 * k < p):
        raise DomainError(f"need 0 < 2k < p, got p={p}, k={k}")
    if gcd(p, k) != 1:
        raise DomainError(f"p and k must be coprime, got p={p}, k={k}")


def continued_fraction(p: int, k: int) -> Tuple[int, Tuple[int, ...]]:
    """(n, nu) with p/k = 1 + nu_0 + 1/(nu_1 + 1/(... + 1/(nu_n + 2))).

    For n = 0 the terminal shift attaches directly: p/k = nu_0 + 3.  The
    deepest entry nu_n may be zero; all intermediate entries are >= 1.
    """
    _validate_pk(p, k)
    x = Fraction(p, k) - 1
    nu: List[int] = []
    while True:
        if x.denominator == 1:
            # terminal level: x = nu_n + 2
            last = int(x) - 2
            if last < 0:
                raise DomainError(f"no continued fraction expansion for {p}/{k}")
            nu.append(last)
            return len(nu) - 1, tuple(nu)
        whole = int(x)  # floor; the fractional tail is 1/(next level) < 1
        nu.append(whole)
        x = 1 / (x - whole)


def cf_value(nu: Tuple[int, ...]) -> Fraction:
    """Reconstruct p/k from the expansion; exact round-trip."""
    x = Fraction(nu[-1] + 2)
    for v in reversed(nu[:-1]):
        x = v + 1 / x
    return x + 1


@dataclass(frozen=True)
class TSData:
    """Full decomposition of p/k."""

    p: int
    k: int
    n: int
    nu: Tuple[int, ...]
    t: Tuple[int, ...]                     # t_0 = -1, t_1, ..., t_{n+1}
    ib: Tuple[Tuple[int, ...], ...]        # fractional incidence matrix
    b: Tuple[Tuple[int, ...], ...]         # 2*I - ib
    y: Tuple[int, ...]                     # y_{-1}..y_{n+1}
    ybar: Tuple[int, ...]                  # ybar_{-1}..ybar_{n+1}
    taka: Tuple[int, ...]                  # l_{j+1} for j = 0..t_{n+1}+1
    takabar: Tuple[int, ...]               # truncated lengths, same indexing
    qvec: Tuple[Tuple[int, ...], ...] = field(repr=False)  # Q^{(1)}..Q^{(t_{n+1}+1)}

    @property
    def dim(self) -> int:
        """Size t_{n+1} of the incidence matrix / fermionic lattice."""
        return self.t[-1]

    def zone(self, j: int) -> int:
        """The zone index m with t_m < j <= t_{m+1} + (m == n)."""
        for m in range(self.n + 1):
            if self.t[m] < j <= self.t[m + 1] + (1 if m == self.n else 0):
                return m
        raise DomainError(f"no zone contains index {j}")

    def u_vector(self, alpha: int) -> Tuple[int, ...]:
        """Unit vector at alpha minus the zone-boundary tail, in dimension
        t_{n+1}; components outside 1..t_{n+1} vanish."""
        m = self.zone(alpha) if alpha >= 1 else 0
        u = [0] * self.dim
        if 1 <= alpha <= self.dim:
            u[alpha - 1] += 1
        for i in range(m + 1, self.n + 1):
            ti = self.t[i]
            if 1 <= ti <= self.dim:
                u[ti - 1] -= 1
        return tuple(u)

    def q_combination(self, coeffs) -> Tuple[int, ...]:
        """Integer combination sum_j coeffs[j] * Q^{(j)} (1-based j)."""
        out = [0] * self.dim
        for j, c in coeffs:
            if not c:
                continue
            vec = self.qvec[j - 1]
            for i in range(self.dim):
                out[i] += c * vec[i]
        return tuple(out)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "nu": list(self.nu),
            "t": list(self.t),
            "incidence": [list(r) for r in self.ib],
            "cartan": [list(r) for r in self.b],
            "y": list(self.y),
            "ybar": list(self.ybar),
            "takahashi_lengths": list(self.taka),
            "truncated_takahashi_lengths": list(self.takabar),
            "parity_vectors": [list(v) for v in self.qvec],
        }


def _build_ib(n: int, nu: Tuple[int, ...], t: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    size = t[-1]
    delta_nu0 = 1 if nu[n] == 0 else 0
    special = {t[m] for m in range(1, n - delta_nu0 + 1)}
    rows = []
    for i in range(1, size + 1):
        row = [0] * size
        if i == size:
            # boundary row
            if i - 1 >= 1:
                row[i - 2] += 1
            if delta_nu0:
                row[i - 1] += 1
        elif i in special:
            if i - 1 >= 1:
                row[i - 2] += 1
            row[i - 1] += 1
            if i + 1 <= size:
                row[i] -= 1
        else:
            if i - 1 >= 1:
                row[i - 2] += 1
            if i + 1 <= size:
                row[i] += 1
        rows.append(tuple(row))
    return tuple(rows)


def _build_qvecs(n, nu, t) -> Tuple[Tuple[int, ...], ...]:
    size = t[-1]
    vecs = []
    for j in range(1, size + 2):
        m = None
        for mm in range(n + 1):
            if t[mm] < j <= t[mm + 1] + (1 if mm == n else 0):
                m = mm
                break
        if m is None:
            raise DomainError(f"parity vector index {j} out of zone range")
        q = [None] * (size + 2)  # 1-based, allow index t_{m'}+1 == size+1

        def fetch(idx: int) -> int:
            if idx == size + 1:
                # only legal reference: deepest zone collapsed (nu_n = 0)
                if nu[n] == 0 and j == t[n] + 1:
                    return 0
                raise DomainError("parity recursion referenced an undefined entry")
            return q[idx]

        for i in range(size, 0, -1):
            if i >= j:
                q[i] = 0
            elif i >= t[m]:
                q[i] = j - i
            else:
                for mp in range(m, 0, -1):
                    if t[mp - 1] <= i < t[mp]:
                        q[i] = fetch(i + 1) + fetch(t[mp] + 1)
                        break
                else:
                    raise DomainError("parity recursion fell through")
        vecs.append(tuple(q[1:size + 1]))
    return tuple(vecs)


@lru_cache(maxsize=1024)
def build_ts(p: int, k: int) -> TSData:
    """Fully populated decomposition of p/k."""
    n, nu = continued_fraction(p, k)
    assert cf_value(nu) == Fraction(p, k)
    t = (-1,) + tuple(sum(nu[:m]) for m in range(1, n + 2))
    y = [0, 1]       # y_{-1}, y_0
    ybar = [-1, 1]
    for m in range(n + 1):
        coef = nu[m] + (2 if m == n else 0) + (1 if m == 0 else 0)
        y.append(y[-2] + coef * y[-1])
        ybar.append(ybar[-2] + coef * ybar[-1])
    if y[-1] != p or ybar[-1] != p - k:
        raise DomainError(f"decomposition of {p}/{k} failed its own invariants")
    taka = []
    takabar = []
    for j in range(0, t[-1] + 2):
        m = None
        for mm in range(n + 1):
            if t[mm] < j <= t[mm + 1] + (1 if mm == n else 0):
                m = mm
                break
        if m is None:
            raise DomainError(f"Takahashi index {j} out of zone range")
        taka.append(y[m] + (j - t[m]) * y[m + 1])
        takabar.append(ybar[m] + (j - t[m]) * ybar[m + 1])
    ib = _build_ib(n, nu, t)
    size = t[-1]
    b = tuple(
        tuple((2 if i == j else 0) - ib[i][j] for j in range(size))
        for i in range(size)
    )
    qvec = _build_qvecs(n, nu, t)
    return TSData(
        p=p, k=k, n=n, nu=nu, t=t, ib=ib, b=b,
        y=tuple(y), ybar=tuple(ybar),
        taka=tuple(taka), takabar=tuple(takabar), qvec=qvec,
    )


def takahashi_index(ts: TSData, v: int) -> Optional[int]:
    """alpha with l_{alpha+1} == v, or None when v is not a Takahashi length."""
    if v < 1:
        raise DomainError("Takahashi lengths are positive")
    try:
        return ts.taka.index(v)
    except ValueError:
        return None


def valid_pk_pairs(p_max: int):
    """All coprime (p, k) with 0 < 2k < p <= p_max."""
    for p in range(3, p_max + 1):
        for k in range(1, (p - 1) // 2 + 1):
            if 2 * k < p and gcd(p, k) == 1:
                yield p, k
