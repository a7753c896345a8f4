"""Exact rational arithmetic and polynomials in the binomial basis.

Polynomials are stored as coefficient tuples (c_0, ..., c_d) meaning
P(x) = sum_j c_j * C(x, j), where C(x, j) is the generalized binomial
coefficient.  The binomial basis is the canonical representation; the
power basis is available as a view.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import ConstantPolynomial

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, strings like '3/7' and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def binom(x, j: int) -> Fraction:
    """Generalized binomial coefficient x(x-1)...(x-j+1)/j! with binom(x, 0) = 1."""
    if j < 0:
        raise ValueError("binom needs j >= 0")
    x = as_rational(x)
    num = Fraction(1)
    for i in range(j):
        num *= x - i
    return num / factorial(j)


class BinomPoly:
    """Polynomial in the binomial basis; trailing zero coefficients are trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "BinomPoly":
        return cls([0])

    @classmethod
    def from_power_basis(cls, power_coeffs) -> "BinomPoly":
        """Convert a_0 + a_1 x + ... to the binomial basis.

        Uses c_j = (finite difference)^j P(0) = sum_i (-1)^(j-i) C(j,i) P(i).
        """
        ps = [as_rational(a) for a in power_coeffs]

        def at(x: Fraction) -> Fraction:
            acc = Fraction(0)
            for a in reversed(ps):
                acc = acc * x + a
            return acc

        d = len(ps) - 1
        cs = []
        for j in range(d + 1):
            c = Fraction(0)
            for i in range(j + 1):
                term = binom(j, i) * at(Fraction(i))
                c += term if (j - i) % 2 == 0 else -term
            cs.append(c)
        return cls(cs)

    def to_power_basis(self) -> tuple[Fraction, ...]:
        """Power-basis coefficients (a_0, ..., a_d)."""
        out = [Fraction(0)] * len(self.coeffs)
        # expand C(x, j) = x(x-1)...(x-j+1)/j! term by term
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            poly = [Fraction(1)]
            for i in range(j):
                # multiply by (x - i)
                nxt = [Fraction(0)] * (len(poly) + 1)
                for m, a in enumerate(poly):
                    nxt[m + 1] += a
                    nxt[m] -= a * i
                poly = nxt
            scale = c / factorial(j)
            for m, a in enumerate(poly):
                out[m] += a * scale
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return tuple(out)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (Fraction(0),)

    def __call__(self, q) -> Fraction:
        return eval_poly(self, q)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinomPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "BinomPoly") -> "BinomPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return BinomPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __sub__(self, other: "BinomPoly") -> "BinomPoly":
        return self + BinomPoly([-c for c in other.coeffs])

    def __repr__(self):
        return f"BinomPoly({[format_rational(c) for c in self.coeffs]})"

    def to_json(self) -> dict:
        return {"basis": "binomial", "coeffs": [format_rational(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "BinomPoly":
        if obj.get("basis") != "binomial":
            raise ValueError("expected binomial-basis polynomial")
        return cls([Fraction(s) for s in obj["coeffs"]])


def eval_poly(P: BinomPoly, q) -> Fraction:
    q = as_rational(q)
    total = Fraction(0)
    for j, c in enumerate(P.coeffs):
        if c != 0:
            total += c * binom(q, j)
    return total


def shift_diff(P: BinomPoly, r) -> BinomPoly:
    """The difference polynomial Q_r with Q_r(q) = P(q + r) - P(q).

    Vandermonde: C(q+r, j) = sum_i C(q, i) C(r, j-i), so the C(q, i)
    coefficient of Q_r is sum_{j > i} c_j C(r, j - i).
    """
    r = as_rational(r)
    d = P.degree
    out = [Fraction(0)] * (d + 1)
    for i in range(d + 1):
        for j in range(i + 1, d + 1):
            out[i] += P.coeffs[j] * binom(r, j - i)
    return BinomPoly(out)


def derived_sequence(P: BinomPoly) -> list[BinomPoly]:
    """Iterate P_j(x) = P_{j-1}(x+1) - P_{j-1}(x) - P_{j-1}(1) down to a linear polynomial.

    Requires deg P >= 1 and P(0) = 0.  Returns [P_0, ..., P_{d-1}]; the last
    element is d! * a_d * x where a_d is the leading power-basis coefficient.
    """
    d = P.degree
    if d < 1:
        raise ConstantPolynomial("derived_sequence needs a nonconstant polynomial")
    if eval_poly(P, 0) != 0:
        raise ValueError("derived_sequence needs P(0) = 0")
    seq = [P]
    cur = P
    for _ in range(d - 1):
        # P(x+1) - P(x) shifts binomial coefficients down one slot
        diff = BinomPoly(cur.coeffs[1:])
        c1 = eval_poly(cur, 1)
        seq.append(diff - BinomPoly([c1]))
        cur = seq[-1]
    last = seq[-1]
    lead = P.to_power_basis()[-1]
    expected = BinomPoly([0, factorial(d) * lead])
    if last != expected:
        raise AssertionError(f"derived sequence did not terminate at d! a_d x: {last} vs {expected}")
    return seq
