"""Truncated q-series evaluators for the limit theorems: inverse Pochhammer
series, string-like functions, multi-limit b-functions, generalized
branching functions, and normalized character limits.

Everything returns a QPoly truncated at the context order.  Summation
supports are either bounded soundly through the positive-definite quadratic
forms (with exact integer-root bounds) or, where linear terms of both signs
preclude a clean a-priori bound, by escalating shells accepted only after
three consecutive radii agree to the truncation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, Optional, Sequence, Tuple

from .errors import ConvergenceError, DomainError, ParityError
from .qpoly import (
    ONE,
    ZERO,
    HalfInt,
    QPoly,
    pochhammer,
    qbinomial,
    substitute_recip,
    truncate,
)
from .supernomial import LVec, as_lvec, big_t, q_supernomial
from .tsdecomp import TSData, takahashi_index
from .identities import BFParams, bosonic_b, compute_delta


@dataclass(frozen=True)
class SeriesCtx:
    """Truncation order plus escalation budgets."""

    order: Fraction = Fraction(12)
    shell_budget: int = 60
    escalation_budget: int = 60

    def __post_init__(self):
        object.__setattr__(self, "order", Fraction(self.order))


# ---------------------------------------------------------------------------
# basic truncated series
# ---------------------------------------------------------------------------

@lru_cache(maxsize=65536)
def _geometric(step: int, order: Fraction) -> QPoly:
    """1/(1-q^step) to the given order."""
    terms = {}
    e = 0
    while e <= order:
        terms[e] = 1
        e += step
    return QPoly(terms, _trusted=True)


def inv_pochhammer(a: int, ctx: SeriesCtx, order: Optional[Fraction] = None) -> QPoly:
    """1/(q)_a truncated."""
    if a < 0:
        raise DomainError("inverse Pochhammer needs a >= 0")
    order = ctx.order if order is None else Fraction(order)
    if order < 0:
        return ZERO
    out = ONE
    for i in range(1, a + 1):
        out = truncate(out * _geometric(i, order), order)
    return out


def inv_pochhammer_inf(ctx: SeriesCtx, order: Optional[Fraction] = None) -> QPoly:
    """1/(q)_infinity truncated; factors beyond the order are identically 1."""
    order = ctx.order if order is None else Fraction(order)
    if order < 0:
        return ZERO
    return inv_pochhammer(max(0, int(order)), ctx, order)


def poch_inf_shifted(exponent, order) -> QPoly:
    """(x q)_infinity with x = q^exponent, truncated at `order`.

    Finitely many factors carry nonpositive exponents; the loop tracks the
    total negative shift still pending so intermediate truncation stays
    exact, and stops once further factors cannot reach the order.
    """
    exponent = Fraction(exponent)
    order = Fraction(order)
    pending = Fraction(0)
    i = 1
    while exponent + i < 0:
        pending += exponent + i
        i += 1
    acc = ONE
    i = 1
    while True:
        f = exponent + i
        if f == 0:
            return ZERO
        if f > 0 and f > order - pending - min(0, acc.min_exp()):
            break
        acc = acc * (ONE - QPoly.monomial(f))
        if acc.is_zero():
            return ZERO
        if f < 0:
            pending -= f
        acc = truncate(acc, order - pending)
        if acc.is_zero():
            return ZERO
        i += 1
        if i > 100_000:
            raise ConvergenceError("infinite product failed to terminate")
    return acc


def stabilized_limit(evaluate, ctx: SeriesCtx, start: int = 0, step: int = 2):
    """Escalate a parameter until three consecutive truncated values agree."""
    history = []
    for t in range(ctx.escalation_budget):
        val = truncate(evaluate(start + step * t), ctx.order)
        history.append(val)
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1]
    raise ConvergenceError(
        f"no stabilization within {ctx.escalation_budget} escalation steps"
    )


# ---------------------------------------------------------------------------
# supernomial limit (weight held fixed)
# ---------------------------------------------------------------------------

def limit_check_supernomial(L, a: int, m: int, ctx: SeriesCtx) -> bool:
    """The q-supernomial at index a - ell_N/2 tends to 1/(q)_a as the m-th
    degree entry grows, independent of m."""
    L = as_lvec(L)
    if a < 0:
        raise DomainError("need a >= 0")
    if not 1 <= m <= L.n:
        raise DomainError("component index out of range")

    def at(lam: int) -> QPoly:
        grown = list(L.entries)
        grown[m - 1] += lam
        gl = LVec(grown)
        return q_supernomial(gl, HalfInt(2 * a - gl.ell_n))

    return stabilized_limit(at, ctx) == inv_pochhammer(a, ctx)


# ---------------------------------------------------------------------------
# string-like functions
# ---------------------------------------------------------------------------

def _cinv(n: int, i: int, j: int) -> Fraction:
    """Inverse Cartan entry of the rank n-1 path graph."""
    return Fraction(min(i, j)) - Fraction(i * j, n)


def _cinv_vec(n: int, vec: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(
        sum((_cinv(n, i, j + 1) * vec[j] for j in range(n - 1)), Fraction(0))
        for i in range(1, n)
    )


def _l_quadratic(n: int, L: Sequence) -> Fraction:
    return sum(
        (
            Fraction(L[i - 1]) * _cinv(n, i, j) * L[j - 1]
            for i in range(1, n)
            for j in range(1, n)
        ),
        Fraction(0),
    )


@dataclass(frozen=True)
class StringParams:
    """Label of a string-like function: rank N, degree vector of length N-1,
    a parity sigma, and an integer index a."""

    n: int
    L: Tuple[int, ...]
    sigma: int
    a: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need N >= 1")
        object.__setattr__(self, "L", tuple(int(x) for x in self.L))
        if len(self.L) != self.n - 1:
            raise DomainError("degree vector must have length N-1")
        if any(x < 0 for x in self.L):
            raise DomainError("degree vector must be nonnegative")
        if self.sigma not in (0, 1):
            raise DomainError("sigma must be 0 or 1")

    @property
    def r(self) -> int:
        wsum = sum(j * self.L[j - 1] for j in range(1, self.n))
        return self.a - wsum + self.n * self.sigma


def string_function(sp: StringParams, ctx: SeriesCtx) -> QPoly:
    """Normalized string-like series: a Gaussian-weighted positive lattice
    sum over the path-graph quadratic form, divided by (q)_infinity."""
    n = sp.n
    r = sp.r
    if r % 2:
        raise ParityError("index fails the parity condition")
    pre = _l_quadratic(n, sp.L) / (2 * (n + 2))
    inner_order = ctx.order - pre
    if n == 1:
        csum = ONE
    else:
        cl = _cinv_vec(n, [Fraction(x) for x in sp.L])
        cmax = max(cl) if cl else Fraction(0)
        csq = sum(c * c for c in cl)
        s = isqrt(max(0, int(inner_order + csq))) + 1
        cap = int(2 * cmax) + 2 * s + 2
        csum = ZERO
        for m in itertools.product(range(cap + 1), repeat=n - 1):
            mf = [Fraction(x) for x in m]
            quad = _l_quadratic(n, mf)
            expo = quad - sum(mf[j - 1] * cl[j - 1] for j in range(1, n))
            if expo > inner_order:
                continue
            if (Fraction(r, 2 * n) - _cinv_vec(n, mf)[0]).denominator != 1:
                continue
            term = QPoly.monomial(expo)
            for mi in m:
                term = truncate(term * inv_pochhammer(mi, ctx, inner_order - expo),
                                inner_order)
            csum = csum + term
    if csum.is_zero():
        return ZERO
    pinf = inv_pochhammer_inf(ctx, inner_order - min(0, csum.min_exp()))
    return truncate(csum * pinf, inner_order).shifted(pre)


def string_symmetry_checks(sp: StringParams, ctx: SeriesCtx) -> bool:
    """Index negation, shift by 2N, reflection with sigma flip, and degree
    vector reversal all preserve the series."""
    base = string_function(sp, ctx)
    n = sp.n
    variants = [
        StringParams(n, sp.L, sp.sigma, -sp.a),
        StringParams(n, sp.L, sp.sigma, sp.a + 2 * n),
        StringParams(n, sp.L, 1 - sp.sigma, n - sp.a),
        StringParams(n, tuple(reversed(sp.L)), (sp.sigma + sum(sp.L)) % 2, sp.a),
    ]
    return all(string_function(v, ctx) == base for v in variants)


# ---------------------------------------------------------------------------
# b-functions (multi-limit of the dual supernomial)
# ---------------------------------------------------------------------------

def b_function(
    n: int,
    a: int,
    degrees: Dict[int, int],
    sigmas: Dict[int, int],
    ctx: SeriesCtx,
) -> QPoly:
    """Limit of the dual supernomial with the components named in `sigmas`
    sent to infinity along the given parities; `degrees` holds the finite
    components.  The two dicts must partition {1..N}; the index a is twice
    the supernomial index.
    """
    kset = sorted(sigmas)
    kbar = sorted(degrees)
    if not kset:
        raise DomainError("at least one component must grow")
    if sorted(kset + kbar) != list(range(1, n + 1)):
        raise DomainError("degree and parity components must partition 1..N")
    if any(degrees[j] < 0 for j in kbar):
        raise DomainError("finite degrees must be nonnegative")
    if any(sigmas[j] not in (0, 1) for j in kset):
        raise DomainError("parities must be 0 or 1")
    if (a + sum(k * degrees[k] for k in kbar) + sum(k * sigmas[k] for k in kset)) % 2:
        raise ParityError("index fails the parity condition")
    kh = max(kset)
    h = len(kset)
    order = ctx.order

    def attempt(radius: int) -> QPoly:
        total = ZERO
        ranges = []
        for i in range(1, n):
            if i in degrees:
                ranges.append(
                    [Fraction(z) - Fraction(degrees[i], 2) for z in range(radius + 1)]
                )
            else:
                ranges.append(
                    [Fraction(w) - Fraction(sigmas[i], 2)
                     for w in range(-radius, radius + 1)]
                )
        for m in itertools.product(*ranges):
            cm = _cinv_vec(n, m)
            mu = Fraction(a, 2 * n) + (cm[-1] if n > 1 else Fraction(0))
            m_n = -mu
            if n in degrees:
                zn = Fraction(degrees[n], 2) + m_n
                if zn.denominator != 1 or zn < 0:
                    continue
            else:
                if (m_n + Fraction(sigmas[n], 2)).denominator != 1:
                    continue
            quad = _l_quadratic(n, m)
            # x_j exponents, k_h <= j <= N (x_N = 1)
            xi = {}
            for j in range(kh, n):
                tail = sum(degrees.get(t, 0) for t in range(j + 1, n + 1))
                d = (cm[j - 1] if j <= n - 1 else Fraction(0)) - (
                    cm[j] if j + 1 <= n - 1 else Fraction(0)
                )
                xi[j] = Fraction(a, 2 * n) + Fraction(tail, 2) + d
            xi[n] = Fraction(0)
            finite = []
            fin_min = Fraction(0)
            dead = False
            for j in range(kh + 1, n + 1):
                lj = degrees[j]
                if lj:
                    pj = pochhammer(xi[j] + 1, lj)
                    if pj.is_zero():
                        dead = True
                        break
                    finite.append(pj)
                    fin_min += min(0, pj.min_exp())
            if dead:
                continue
            head = poch_inf_shifted(xi[kh], order - quad - fin_min)
            if head.is_zero():
                continue
            acc = head.shifted(quad)
            for pj in finite:
                acc = acc * pj
            if acc.is_zero() or acc.min_exp() > order:
                continue
            inv_order = order - acc.min_exp()
            for _ in range(h + 1):
                acc = truncate(acc * inv_pochhammer_inf(ctx, inv_order), order)
            for j in kbar:
                if j < n:
                    z = int(m[j - 1] + Fraction(degrees[j], 2))
                else:
                    z = int(zn)
                acc = truncate(acc * inv_pochhammer(z, ctx, inv_order), order)
            total = total + acc
        return truncate(total, order)

    history = []
    radius = int(order) + 4
    for _ in range(ctx.shell_budget):
        history.append(attempt(radius))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1]
        radius += 2
    raise ConvergenceError("b-function shells failed to stabilize")


def b_function_via_escalation(
    n: int,
    a: int,
    degrees: Dict[int, int],
    sigmas: Dict[int, int],
    ctx: SeriesCtx,
) -> QPoly:
    """The same limit taken literally: grow the infinite components of the
    degree vector (parity fixed) inside the dual supernomial."""

    def at(lam: int) -> QPoly:
        entries = [
            degrees[i] if i in degrees else lam + sigmas[i] for i in range(1, n + 1)
        ]
        return big_t(LVec(entries), HalfInt(a))

    return stabilized_limit(at, ctx)


# ---------------------------------------------------------------------------
# generalized branching functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchParams:
    """Coset label (P, P') of level N, boundary labels (r, s), degree vector
    of length N-1, and a parity sigma."""

    n: int
    p_small: int
    p_big: int
    r: int
    s: int
    L: Tuple[int, ...]
    sigma: int

    def __post_init__(self):
        n, P, Pp = self.n, self.p_small, self.p_big
        if not (0 < P < Pp):
            raise DomainError("need 0 < P < P'")
        if (Pp - P) % n:
            raise DomainError("P' - P must be divisible by N")
        if gcd((Pp - P) // n, Pp) != 1:
            raise DomainError("(P'-P)/N and P' must be coprime")
        if not (1 <= self.r < P and 1 <= self.s < Pp):
            raise DomainError("need 1 <= r < P and 1 <= s < P'")
        object.__setattr__(self, "L", tuple(int(x) for x in self.L))
        if len(self.L) != n - 1 or any(x < 0 for x in self.L):
            raise DomainError("degree vector must be nonnegative of length N-1")
        wsum = sum(j * self.L[j - 1] for j in range(1, n))
        if (self.r - self.s + wsum + n * self.sigma) % 2:
            raise ParityError("labels fail the parity condition")


def branching_function(bp: BranchParams, ctx: SeriesCtx) -> QPoly:
    """Generalized branching function: string-like coefficients times
    alternating theta-style sums restricted to congruence classes."""
    n, P, Pp = bp.n, bp.p_small, bp.p_big
    pre = -_l_quadratic(n, bp.L) / (2 * (n + 2))
    inner_order = ctx.order - pre

    strings = {}
    for m2 in range((bp.r - bp.s) % 2, n + 1, 2):
        strings[m2] = string_function(
            StringParams(n, bp.L, bp.sigma, m2), SeriesCtx(inner_order)
        )
    min_c = min(
        (v.min_exp() for v in strings.values() if not v.is_zero()), default=Fraction(0)
    )
    theta_order = inner_order - min(0, min_c)
    jmax = isqrt(max(0, int(Fraction(n) * theta_order / (P * Pp)))) + 4

    def theta(x: int, quad_sign: int) -> Dict[int, QPoly]:
        out = {m2: ZERO for m2 in strings}
        for j in range(-jmax - 1, jmax + 2):
            if quad_sign == 1:
                e = Fraction(j, n) * (j * P * Pp + Pp * bp.r - P * bp.s)
            else:
                e = Fraction(j * Pp + bp.s, n) * (j * P + bp.r)
            if e > theta_order:
                continue
            if abs(j) == jmax + 1:
                raise ConvergenceError("character theta window too small")
            half = x + 2 * Pp * j  # twice the class value
            for m2 in strings:
                if (half - m2) % (2 * n) == 0 or (half + m2) % (2 * n) == 0:
                    out[m2] = out[m2] + QPoly.monomial(e)
                    break
        return out

    plus = theta(bp.r - bp.s, 1)
    minus = theta(bp.r + bp.s, -1)
    total = ZERO
    for m2, c in strings.items():
        diff = plus[m2] - minus[m2]
        if c.is_zero() or diff.is_zero():
            continue
        total = total + truncate(c * diff, inner_order)
    return truncate(total, inner_order).shifted(pre)


def branching_sigma_for_limit(bf: BFParams, sigma: int) -> int:
    """Parity label of the branching function matching the large-degree
    limit taken along parity `sigma`.

    Folding the dual-supernomial indices (b -+ a)/2 + p j into the
    fundamental class window shifts them against the theta labels by
    N(b - bbar)/2 periods; when b - bbar is odd this is half a period,
    which exchanges the two parity sectors of the string-like functions.
    """
    return sigma ^ ((bf.b - bf.bbar) % 2)


def branching_via_bosonic_limit(bf: BFParams, sigma: int, ctx: SeriesCtx) -> QPoly:
    """The branching function as the stabilized large-degree limit of the
    alternating dual-supernomial sum, normalized by the stated prefactor.
    bf.L must end in sigma so every escalation step keeps the label parity.
    """
    n = bf.n
    lbar = bf.L.entries[:-1]
    pre = -Fraction((bf.b - bf.a) ** 2, 4 * n) - _l_quadratic(n, lbar) / 4

    def at(lam: int) -> QPoly:
        entries = lbar + (bf.L.entries[-1] + lam,)
        grown = BFParams(bf.ts, n, bf.a, bf.b, LVec(entries))
        return bosonic_b(grown).shifted(pre)

    return stabilized_limit(at, ctx)


# ---------------------------------------------------------------------------
# multi-limit fermionic sums and character limits
# ---------------------------------------------------------------------------

def multi_limit_f(
    ts: TSData,
    n: int,
    a: int,
    b: int,
    degrees: Dict[int, int],
    sigmas: Dict[int, int],
    ctx: SeriesCtx,
) -> QPoly:
    """Fermionic lattice sum with the components named in `sigmas` sent to
    infinity: their binomials become inverse Pochhammer factors and the
    parity source uses sigma in place of the degree."""
    kset = sorted(sigmas)
    kbar = sorted(degrees)
    if sorted(kset + kbar) != list(range(1, n + 1)):
        raise DomainError("degree and parity components must partition 1..N")
    alpha = takahashi_index(ts, a)
    beta = takahashi_index(ts, b)
    if alpha is None or beta is None:
        raise DomainError("a and b must be Takahashi lengths")
    dim = ts.dim
    u_a = ts.u_vector(alpha)
    u_b = ts.u_vector(beta)
    source = [u_a[j] + u_b[j] + degrees.get(j + 1, 0) for j in range(dim)]
    linear = [0] * dim
    for i in range(ts.n + 1):
        for j in range(ts.t[i] + 1, ts.t[i + 1] + 1):
            if 1 <= j <= dim:
                linear[j - 1] = u_b[j - 1] if i % 2 else u_a[j - 1]
    coeffs = [
        (j, u_a[j - 1] + u_b[j - 1] + degrees.get(j, 0) + sigmas.get(j, 0))
        for j in range(1, dim + 1)
    ]
    boundary = (1 if alpha == dim + 1 else 0) + (1 if beta == dim + 1 else 0)
    coeffs.append((dim + 1, boundary))
    parity = [x % 2 for x in ts.q_combination(coeffs)]
    probe = [sum(ts.ib[i][j] * parity[j] for j in range(dim)) for i in range(dim)]
    if any((probe[j] + source[j]) % 2 for j in range(dim) if j + 1 not in sigmas):
        raise ParityError("occupation vector is not integral on the parity class")
    bmat = [
        [(2 if i == j else 0) - ts.ib[i][j] for j in range(dim)] for i in range(dim)
    ]
    delta = compute_delta(ts, a, b)

    def attempt(radius: int) -> QPoly:
        total = ZERO
        axes = [range(parity[j], radius + 1, 2) for j in range(dim)]
        for m in itertools.product(*axes):
            quad = sum(
                m[i] * sum(bmat[i][j] * m[j] for j in range(dim)) for i in range(dim)
            )
            lin = sum(linear[i] * m[i] for i in range(dim))
            expo = Fraction(quad, 4) - Fraction(lin, 2) + delta
            if expo > ctx.order:
                continue
            ibm = [sum(ts.ib[i][j] * m[j] for j in range(dim)) for i in range(dim)]
            prod = ONE
            for j in range(dim):
                if j + 1 in sigmas:
                    prod = truncate(
                        prod * inv_pochhammer(m[j], ctx, ctx.order - expo),
                        ctx.order - expo,
                    )
                else:
                    top = (ibm[j] + source[j]) // 2
                    if top < m[j]:
                        prod = ZERO
                    else:
                        prod = prod * qbinomial(top, m[j])
                if prod.is_zero():
                    break
            if prod.is_zero():
                continue
            total = total + truncate(prod.shifted(expo), ctx.order)
        return truncate(total, ctx.order)

    history = []
    radius = 2 * int(ctx.order) + 6
    for _ in range(ctx.shell_budget):
        history.append(attempt(radius))
        if len(history) >= 3 and history[-1] == history[-2] == history[-3]:
            return history[-1]
        radius += 2
    raise ConvergenceError("multi-limit fermionic shells failed to stabilize")


def fermionic_f_escalated(bf: BFParams, sigmas: Dict[int, int], ctx: SeriesCtx) -> QPoly:
    """Escalate the named components of the degree vector inside the
    polynomial fermionic form; bf.L must carry the base parities."""
    from .identities import fermionic_f

    def at(lam: int) -> QPoly:
        entries = list(bf.L.entries)
        for j in sigmas:
            entries[j - 1] = bf.L.entries[j - 1] + lam
        return fermionic_f(BFParams(bf.ts, bf.n, bf.a, bf.b, LVec(entries)))

    return stabilized_limit(at, ctx)


def vira_char_limit(bf: BFParams, ctx: SeriesCtx) -> QPoly:
    """Normalized character series: alternating theta terms over the
    inverse Pochhammer of infinite order."""
    ts = bf.ts
    p, k = ts.p, ts.k
    a, b, bbar = bf.a, bf.b, bf.bbar
    total = ZERO
    jmax = isqrt(max(0, int(ctx.order)) // (p * k) + 1) + p + 3
    for j in range(-jmax - 1, jmax + 2):
        e1 = j * (p * k * j + p * (b - bbar) - k * a)
        e2 = (p * j + a) * (k * j + b - bbar)
        if min(e1, e2) <= ctx.order and abs(j) == jmax + 1:
            raise ConvergenceError("character theta window too small")
        if e1 <= ctx.order:
            total = total + QPoly.monomial(e1)
        if e2 <= ctx.order:
            total = total - QPoly.monomial(e2)
    return truncate(total * inv_pochhammer_inf(ctx), ctx.order)


def vira_char_via_escalation(bf: BFParams, m: int, ctx: SeriesCtx) -> QPoly:
    """The same series as the large-degree limit of the reciprocal-variable
    bosonic sum along the m-th unit direction."""
    if not 1 <= m <= bf.n:
        raise DomainError("component index out of range")
    want = (bf.a + bf.b) % 2  # parity ell_N = m * degree must match a+b
    if m % 2 == 0 and want:
        raise ParityError("even direction cannot reach the required parity")
    start = want if m % 2 else 0

    def at(lam: int) -> QPoly:
        entries = tuple(lam if i == m else 0 for i in range(1, bf.n + 1))
        L = LVec(entries)
        grown = BFParams(bf.ts, bf.n, bf.a, bf.b, L)
        return substitute_recip(bosonic_b(grown)).shifted(
            Fraction(L.quadratic_form(), 4)
        )

    return stabilized_limit(at, ctx, start=start, step=2)


# ---------------------------------------------------------------------------
# successive Durfee rectangle identity
# ---------------------------------------------------------------------------

def durfee_rectangle_series(m: int, ctx: SeriesCtx) -> QPoly:
    """Sum over rectangles with fixed excess difference:
    sum_{n >= m} q^{(n-m)(n+m)} / ((q)_{n-m} (q)_{n+m}), truncated."""
    if m < 0:
        raise DomainError("need m >= 0")
    total = ZERO
    n = m
    while (n - m) * (n + m) <= ctx.order:
        quad = (n - m) * (n + m)
        rest = ctx.order - quad
        term = truncate(
            inv_pochhammer(n - m, ctx, rest) * inv_pochhammer(n + m, ctx, rest), rest
        )
        total = total + term.shifted(quad)
        n += 1
    return truncate(total, ctx.order)
