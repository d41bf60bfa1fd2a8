"""Exact arithmetic kernel: half-integers, sparse Laurent polynomials in q,
and the Gaussian (q-binomial) primitives everything else is built from.

A QPoly is a finite map {exponent: coefficient} with arbitrary-precision
integer coefficients and exact rational exponents.  Integer exponents are
stored as plain ints, fractional ones as Fraction; the two never collide as
dict keys because Python hashes equal numbers equally.  No zero coefficient
is ever stored, so equality is structural equality of the maps.

All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import DomainError, ParityError

Exponent = Union[int, Fraction]
Scalar = Union[int, Fraction]


def _canon_exp(e):
    """Collapse integral Fractions to plain ints so keys stay canonical."""
    if type(e) is int:
        return e
    if isinstance(e, Fraction):
        return e.numerator if e.denominator == 1 else e
    if isinstance(e, int):
        return int(e)
    raise TypeError(f"exponent must be int or Fraction, got {type(e)!r}")


class HalfInt:
    """An exact half-integer d/2, stored as the doubled integer d.

    Supernomial indices live here: they are genuine half-odd-integers
    whenever the underlying degree vector has odd weighted sum.
    """

    __slots__ = ("twice",)

    def __init__(self, twice: int):
        if not isinstance(twice, int):
            raise TypeError("HalfInt stores the doubled value as an int")
        self.twice = twice

    @classmethod
    def coerce(cls, value) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return cls(2 * value.numerator)
            if value.denominator == 2:
                return cls(value.numerator)
            raise ParityError(f"{value} is not a half-integer")
        raise TypeError(f"cannot coerce {value!r} to HalfInt")

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse '3', '-1/2', '7/2' style strings."""
        s = text.strip().replace("−", "-")
        if "/" in s:
            num, den = s.split("/", 1)
            return cls.coerce(Fraction(int(num), int(den)))
        return cls(2 * int(s))

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other):
        return HalfInt(self.twice + HalfInt.coerce(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt(self.twice - HalfInt.coerce(other).twice)

    def __neg__(self):
        return HalfInt(-self.twice)

    def __eq__(self, other):
        try:
            return self.twice == HalfInt.coerce(other).twice
        except (TypeError, ParityError):
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt.coerce(other).twice

    def __le__(self, other):
        return self.twice <= HalfInt.coerce(other).twice

    def __hash__(self):
        return hash(self.as_fraction())

    def __repr__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


class QPoly:
    """Sparse Laurent polynomial in q with exact rational exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, int] | None = None, *, _trusted=False):
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms  # caller guarantees canonical form
        else:
            canon = {}
            for e, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError("coefficients must be ints")
                if c:
                    canon[_canon_exp(e)] = c
            self.terms = canon

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QPoly":
        return cls({}, _trusted=True)

    @classmethod
    def one(cls) -> "QPoly":
        return cls({0: 1}, _trusted=True)

    @classmethod
    def monomial(cls, exponent, coefficient: int = 1) -> "QPoly":
        if coefficient == 0:
            return cls.zero()
        return cls({_canon_exp(exponent): coefficient}, _trusted=True)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self):
        if not self.terms:
            raise DomainError("min_exp of the zero polynomial")
        return min(self.terms)

    def max_exp(self):
        if not self.terms:
            raise DomainError("max_exp of the zero polynomial")
        return max(self.terms)

    def coefficient(self, exponent) -> int:
        return self.terms.get(_canon_exp(exponent), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, QPoly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return QPoly.zero()
            return QPoly({e: c * other for e, c in self.terms.items()}, _trusted=True)
        a, b = self.terms, other.terms
        if not a or not b:
            return QPoly.zero()
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            (e1, c1), = a.items()
            return QPoly({_canon_exp(e1 + e2): c1 * c2 for e2, c2 in b.items()}, _trusted=True)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = _canon_exp(e1 + e2)
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return QPoly(out, _trusted=True)

    __rmul__ = __mul__

    def shifted(self, exponent, coefficient: int = 1) -> "QPoly":
        """Multiply by coefficient * q**exponent without a generic mul."""
        if coefficient == 0:
            return QPoly.zero()
        exponent = _canon_exp(exponent)
        if exponent == 0 and coefficient == 1:
            return self
        return QPoly(
            {_canon_exp(e + exponent): c * coefficient for e, c in self.terms.items()},
            _trusted=True,
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=Fraction):
            c = self.terms[e]
            bits.append(f"{'+' if c >= 0 and bits else ''}{c}*q^{e}")
        return "".join(bits)

    # -- serialization -----------------------------------------------------

    def to_json_terms(self) -> list:
        """Sorted [exponent_num, exponent_den, coefficient_decimal_string] triples."""
        out = []
        for e in sorted(self.terms, key=Fraction):
            f = Fraction(e)
            out.append([f.numerator, f.denominator, str(self.terms[e])])
        return out

    @classmethod
    def from_json_terms(cls, triples: Iterable) -> "QPoly":
        terms = {}
        for num, den, coef in triples:
            terms[_canon_exp(Fraction(int(num), int(den)))] = int(coef)
        return cls(terms)


ZERO = QPoly.zero()
ONE = QPoly.one()


# ---------------------------------------------------------------------------
# exact division
# ---------------------------------------------------------------------------

def divexact_one_minus_q(p: QPoly, power: int) -> QPoly:
    """Exact division by (1 - q**power), power > 0.  Raises if not divisible.

    If p = Q * (1 - q^k) then Q_e = p_e + Q_{e-k}; the carry walks each
    residue class of exponents mod k in ascending order and must return to
    zero past the last term of the class.
    """
    if power <= 0:
        raise DomainError("power must be positive")
    if p.is_zero():
        return ZERO
    classes: dict = {}
    for e, c in p.terms.items():
        f = Fraction(e)
        r = f - power * (f / power).__floor__()
        classes.setdefault(r, []).append((f, c))
    quot = {}
    for items in classes.values():
        items.sort()
        carry = 0
        next_rung = None
        for e, c in items:
            if carry:
                rung = next_rung
                while rung < e:
                    quot[_canon_exp(rung)] = carry
                    rung += power
            carry += c
            if carry:
                quot[_canon_exp(e)] = carry
            next_rung = e + power
        if carry:
            raise DomainError("division by (1-q^n) left a remainder")
    return QPoly(quot, _trusted=True)


def divexact(num: QPoly, den: QPoly) -> QPoly:
    """Exact Laurent division; the divisor's leading coefficient must be a unit."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return ZERO
    lead = den.max_exp()
    lc = den.terms[lead]
    if lc not in (1, -1):
        raise DomainError("divexact needs a divisor with unit leading coefficient")
    min_allowed = Fraction(num.min_exp()) - Fraction(den.min_exp())
    rem = dict(num.terms)
    quot = {}
    while rem:
        e = max(rem, key=Fraction)
        qe = _canon_exp(e - lead)
        if Fraction(qe) < min_allowed:
            raise DomainError("divexact: divisor does not divide numerator")
        qc = rem[e] * lc  # divide by +-1
        quot[qe] = qc
        for de, dc in den.terms.items():
            ke = _canon_exp(qe + de)
            s = rem.get(ke, 0) - qc * dc
            if s:
                rem[ke] = s
            else:
                rem.pop(ke, None)
    return QPoly(quot, _trusted=True)


# ---------------------------------------------------------------------------
# q-binomials and Pochhammer products
# ---------------------------------------------------------------------------

@lru_cache(maxsize=200_000)
def qbinomial(L: int, a: int) -> QPoly:
    """Gaussian polynomial: (q^{L-a+1})_a / (q)_a for a >= 0, else 0.

    For 0 <= a <= L this is the classical q-binomial with nonnegative
    coefficients; for L < 0 it is the Laurent value the finite products
    imply.  For 0 <= L < a the numerator vanishes and the result is 0.
    """
    if a < 0:
        return ZERO
    if a == 0:
        return ONE
    if 0 <= L < a:
        return ZERO
    if 2 * a > L >= 0:
        return qbinomial(L, L - a)  # symmetry keeps the products short
    p = ONE
    for i in range(1, a + 1):
        p = p * (ONE - QPoly.monomial(L - a + i))
        p = divexact_one_minus_q(p, i)
    return p


def pochhammer(s, n: int) -> QPoly:
    """Finite Pochhammer product (q^s)_n = prod_{i=0}^{n-1} (1 - q^{s+i})."""
    if n < 0:
        raise DomainError("pochhammer needs n >= 0; negative n lives in the series module")
    p = ONE
    s = Fraction(s)
    for i in range(n):
        p = p * (ONE - QPoly.monomial(_canon_exp(s + i)))
    return p


@lru_cache(maxsize=4096)
def q_factorial_poch(n: int) -> QPoly:
    """(q)_n for n >= 0, cached."""
    return pochhammer(1, n)


def substitute_recip(p: QPoly) -> QPoly:
    """q -> 1/q: negate every exponent.  An involution."""
    return QPoly({_canon_exp(-e): c for e, c in p.terms.items()}, _trusted=True)


def eval_at_one(p: QPoly) -> int:
    """Sum of the coefficients (the q=1 specialisation)."""
    return sum(p.terms.values())


def truncate(p: QPoly, order) -> QPoly:
    """Drop all terms with exponent strictly above order."""
    order = Fraction(order)
    return QPoly({e: c for e, c in p.terms.items() if e <= order}, _trusted=True)
