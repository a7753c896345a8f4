"""Exact p-adic values, adele classes, and the circle character.

An adele class is stored as a canonical triple

    (real_angle, tail, parts)

standing for the adele with real coordinate ``real_angle``, component
``tail + parts[p]`` at each listed prime p, and component ``tail`` at every
other prime, taken modulo the diagonally embedded rationals.  The rational
``tail`` is what diagonal reduction leaves behind at the unlisted primes;
carrying it explicitly is what makes the Q-vector-space laws hold exactly.
Canonical form: real_angle in [0,1), every finite component in Z_p, zero
deviations omitted.  Elements representable this way form a dense
Q-vector subspace of the full adele class group, closed under all
operations below.

p-adic values are rational numbers plus Q-linear combinations of digit
streams.  Streams are pure functions of their parameters, so equality and
serialization are exact; digit-limited streams raise InsufficientPrecision
when an operation needs digits beyond what is known.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientPrecision
from .exactq import as_rational, format_rational

# Sign convention for e_Q; other constructions of the character differ from
# this one by an automorphism of the circle, so the sign is selectable.
_EQ_SIGN = 1


def set_eq_sign(sign: int) -> None:
    global _EQ_SIGN
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _EQ_SIGN = sign


def _vp(x: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


class DigitStream:
    """A unit of Z_p given by a deterministic digit sequence (digit 0 nonzero)."""

    key: tuple

    def digit(self, i: int) -> int:
        raise NotImplementedError

    def residue(self, p: int, m: int) -> int:
        """The stream value mod p^m."""
        acc = 0
        pw = 1
        for i in range(m):
            acc += self.digit(i) * pw
            pw *= p
        return acc

    def __eq__(self, other):
        return isinstance(other, DigitStream) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def to_json(self) -> dict:
        raise NotImplementedError


class SquareStream(DigitStream):
    """Aperiodic 0/1 digits: indicator of perfect squares, shifted by seed and prime.

    Digit 0 is pinned to 1 so the value is a unit of Z_p.
    """

    def __init__(self, prime: int, seed: int):
        self.prime = prime
        self.seed = seed
        self.key = ("squares", prime, seed)

    def digit(self, i: int) -> int:
        if i == 0:
            return 1
        return 1 if _is_square(i + self.seed + self.prime) else 0

    def to_json(self) -> dict:
        return {"kind": "squares", "seed": self.seed}


class LiteralStream(DigitStream):
    """Finitely many known digits; reading past the end fails loudly."""

    def __init__(self, prime: int, digits: tuple[int, ...]):
        if not digits or digits[0] == 0:
            raise ValueError("literal stream must start with a nonzero digit")
        if any(not (0 <= d < prime) for d in digits):
            raise ValueError("digits out of range")
        self.prime = prime
        self.digits_known = tuple(digits)
        self.key = ("digits", prime, self.digits_known)

    def digit(self, i: int) -> int:
        if i >= len(self.digits_known):
            raise InsufficientPrecision(
                f"digit {i} of a {len(self.digits_known)}-digit literal {self.prime}-adic"
            )
        return self.digits_known[i]

    def to_json(self) -> dict:
        return {"kind": "digits", "digits": list(self.digits_known)}


def _stream_from_json(prime: int, obj: dict) -> DigitStream:
    kind = obj["kind"]
    if kind == "squares":
        return SquareStream(prime, obj["seed"])
    if kind == "digits":
        return LiteralStream(prime, tuple(obj["digits"]))
    raise ValueError(f"unknown stream kind {kind!r}")


class PAdicNumber:
    """Exact value in Q_p: a rational plus a Q-linear combination of digit streams."""

    __slots__ = ("prime", "rat", "terms")

    def __init__(self, prime: int, rat=0, terms=None):
        self.prime = prime
        self.rat = as_rational(rat)
        clean = {}
        if terms:
            for stream, coeff in terms.items():
                c = as_rational(coeff)
                if c != 0:
                    clean[stream] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, r, prime: int) -> "PAdicNumber":
        return cls(prime, as_rational(r))

    @classmethod
    def from_digits(cls, prime: int, valuation: int, digits) -> "PAdicNumber":
        """Digit-list p-adic p^valuation * (d_0 + d_1 p + ...); leading zeros shift the valuation.

        An all-zero digit list is taken to be exactly zero.
        """
        ds = list(digits)
        v = valuation
        while ds and ds[0] == 0:
            ds.pop(0)
            v += 1
        if not ds:
            return cls(prime, 0)
        stream = LiteralStream(prime, tuple(ds))
        return cls(prime, 0, {stream: Fraction(prime) ** v})

    @classmethod
    def from_stream(cls, prime: int, stream: DigitStream) -> "PAdicNumber":
        return cls(prime, 0, {stream: Fraction(1)})

    # -- algebra ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.rat == 0 and not self.terms

    def __add__(self, other: "PAdicNumber") -> "PAdicNumber":
        if self.prime != other.prime:
            raise ValueError("prime mismatch")
        terms = dict(self.terms)
        for s, c in other.terms.items():
            terms[s] = terms.get(s, Fraction(0)) + c
        return PAdicNumber(self.prime, self.rat + other.rat, terms)

    def __neg__(self) -> "PAdicNumber":
        return self.scale(-1)

    def __sub__(self, other: "PAdicNumber") -> "PAdicNumber":
        return self + (-other)

    def scale(self, q) -> "PAdicNumber":
        q = as_rational(q)
        if q == 0:
            return PAdicNumber(self.prime, 0)
        return PAdicNumber(
            self.prime, self.rat * q, {s: c * q for s, c in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, PAdicNumber)
            and self.prime == other.prime
            and self.rat == other.rat
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.prime, self.rat, frozenset(self.terms.items())))

    # -- digit-level views ---------------------------------------------

    def _min_valuation_bound(self) -> int:
        """A lower bound for the valuation (exact per-component, before cancellation)."""
        vals = []
        if self.rat != 0:
            vals.append(_vp(self.rat, self.prime))
        for _, c in self.terms.items():
            vals.append(_vp(c, self.prime))
        return min(vals)

    def _int_residue(self, m: int) -> int:
        """self mod p^m as an integer; every component must have valuation >= 0."""
        if m <= 0:
            return 0
        p = self.prime
        mod = p**m
        acc = 0
        if self.rat != 0:
            a, b = self.rat.numerator, self.rat.denominator
            if b % p == 0:
                raise ValueError("negative-valuation rational in integral residue")
            acc = a * pow(b, -1, mod) % mod
        for stream, coeff in self.terms.items():
            f = _vp(coeff, p)
            if f < 0:
                raise ValueError("negative-valuation term in integral residue")
            if f >= m:
                continue
            unit = coeff / Fraction(p) ** f
            a, b = unit.numerator, unit.denominator
            sub = p ** (m - f)
            contrib = a * pow(b, -1, sub) % sub * stream.residue(p, m - f) % sub
            acc = (acc + contrib * p**f) % mod
        return acc

    def frac_part(self) -> Fraction:
        """The unique r in [0,1) with p-power denominator and self - r in Z_p."""
        if self.is_zero():
            return Fraction(0)
        p = self.prime
        e = max(0, -self._min_valuation_bound())
        if e == 0:
            return Fraction(0)
        shifted = self.scale(Fraction(p) ** e)
        return Fraction(shifted._int_residue(e), p**e)

    def in_zp(self) -> bool:
        return self.frac_part() == 0

    def valuation(self):
        """Exact valuation, or None for (symbolic) zero."""
        if self.is_zero():
            return None
        p = self.prime
        v0 = self._min_valuation_bound()
        unit_candidate = self.scale(Fraction(p) ** (-v0))
        m = 8
        while True:
            r = unit_candidate._int_residue(m)
            if r != 0:
                low = 0
                while r % p == 0:
                    r //= p
                    low += 1
                return v0 + low
            if m > 4096:
                raise InsufficientPrecision(
                    "cannot determine valuation: digits vanish beyond scan depth"
                )
            m *= 2

    def digits(self, count: int) -> tuple[int, ...]:
        """First `count` digits starting at the valuation."""
        v = self.valuation()
        if v is None:
            return (0,) * count
        unit = self.scale(Fraction(self.prime) ** (-v))
        r = unit._int_residue(count)
        out = []
        for _ in range(count):
            out.append(r % self.prime)
            r //= self.prime
        return tuple(out)

    def known_precision(self):
        """Digits available beyond the valuation, or None when unbounded."""
        limits = []
        for stream, coeff in self.terms.items():
            if isinstance(stream, LiteralStream):
                limits.append(_vp(coeff, self.prime) + len(stream.digits_known))
        if not limits:
            return None
        v = self._min_valuation_bound()
        return min(limits) - v

    # -- serialization --------------------------------------------------

    def to_json(self, display_digits: int = 64) -> dict:
        if self.is_zero():
            return {"valuation": None, "digits": [], "precision": 0, "source": {"kind": "rational", "value": "0/1"}}
        kp = self.known_precision()
        n = display_digits if kp is None else min(display_digits, kp)
        v = self.valuation()
        obj = {"valuation": v, "digits": list(self.digits(n)), "precision": n}
        if not self.terms:
            obj["source"] = {"kind": "rational", "value": format_rational(self.rat)}
        elif self.rat == 0 and len(self.terms) == 1:
            (stream, coeff), = self.terms.items()
            if coeff == 1 and not isinstance(stream, LiteralStream):
                obj["source"] = stream.to_json()
            elif coeff == 1:
                obj["source"] = None  # digit list above is authoritative
            else:
                obj["source"] = self._combo_json()
        else:
            obj["source"] = self._combo_json()
        return obj

    def _combo_json(self) -> dict:
        return {
            "kind": "combo",
            "rat": format_rational(self.rat),
            "terms": sorted(
                (
                    {"coeff": format_rational(c), "stream": s.to_json()}
                    for s, c in self.terms.items()
                ),
                key=lambda t: (t["stream"]["kind"], str(t["stream"]), t["coeff"]),
            ),
        }

    @classmethod
    def from_json(cls, prime: int, obj: dict) -> "PAdicNumber":
        src = obj.get("source")
        if src is None:
            return cls.from_digits(prime, obj["valuation"], obj["digits"])
        kind = src["kind"]
        if kind == "rational":
            return cls.from_rational(Fraction(src["value"]), prime)
        if kind == "combo":
            acc = cls.from_rational(Fraction(src["rat"]), prime)
            for t in src["terms"]:
                stream = _stream_from_json(prime, t["stream"])
                acc = acc + cls(prime, 0, {stream: Fraction(t["coeff"])})
            return acc
        return cls(prime, 0, {_stream_from_json(prime, src): Fraction(1)})


@dataclass(frozen=True)
class CircleValue:
    """A point of the circle written as a rational angle in [0,1)."""

    angle: Fraction

    @classmethod
    def of(cls, x) -> "CircleValue":
        return cls(as_rational(x) % 1)

    @classmethod
    def zero(cls) -> "CircleValue":
        return cls(Fraction(0))

    def __add__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue((self.angle + other.angle) % 1)

    def __sub__(self, other: "CircleValue") -> "CircleValue":
        return CircleValue((self.angle - other.angle) % 1)

    def __neg__(self) -> "CircleValue":
        return CircleValue((-self.angle) % 1)

    def times(self, n: int) -> "CircleValue":
        return CircleValue((self.angle * n) % 1)

    def to_complex(self) -> complex:
        # the only place angles become floats
        return complex(
            math.cos(2 * math.pi * float(self.angle)),
            math.sin(2 * math.pi * float(self.angle)),
        )


class AdeleClassElement:
    """Canonical representative of a point of the adele class group (see module docstring)."""

    __slots__ = ("real_angle", "tail", "parts")

    def __init__(self, real_angle, tail, parts, _canonical=False):
        if not _canonical:
            raise TypeError("use the constructors: canonicalize, diagonal, from_real, ...")
        self.real_angle = real_angle
        self.tail = tail
        self.parts = parts

    # -- canonicalization ---------------------------------------------

    @classmethod
    def _from_raw(cls, real: Fraction, tail: Fraction, parts: dict[int, PAdicNumber]) -> "AdeleClassElement":
        """Reduce (real; tail + dev_p at p) modulo diagonal Q to canonical form."""
        devs = {p: x for p, x in parts.items() if not x.is_zero()}
        primes = set(devs) | set(_prime_factors(tail.denominator))
        s = Fraction(0)
        for p in sorted(primes):
            comp = PAdicNumber.from_rational(tail, p)
            if p in devs:
                comp = comp + devs[p]
            s += comp.frac_part()
        shift = s + math.floor(real - s)
        return cls(real - shift, tail - shift, devs, _canonical=True)

    @classmethod
    def canonicalize(cls, real, parts=None) -> "AdeleClassElement":
        """Class of the adele with the given real coordinate and finite components.

        `parts` maps primes to rationals or PAdicNumbers; unlisted primes carry
        component zero.
        """
        real = as_rational(real)
        devs = {}
        if parts:
            for p, x in parts.items():
                if not isinstance(x, PAdicNumber):
                    x = PAdicNumber.from_rational(x, p)
                devs[p] = x
        return cls._from_raw(real, Fraction(0), devs)

    @classmethod
    def zero(cls) -> "AdeleClassElement":
        return cls(Fraction(0), Fraction(0), {}, _canonical=True)

    @classmethod
    def diagonal(cls, q) -> "AdeleClassElement":
        """The class of a diagonally embedded rational: always the zero class."""
        q = as_rational(q)
        return cls._from_raw(q, q, {})

    @classmethod
    def from_real(cls, angle) -> "AdeleClassElement":
        return cls.canonicalize(angle, {})

    @classmethod
    def from_part(cls, p: int, value) -> "AdeleClassElement":
        return cls.canonicalize(0, {p: value})

    # -- algebra --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.real_angle == 0 and self.tail == 0 and not self.parts

    def __add__(self, other: "AdeleClassElement") -> "AdeleClassElement":
        parts = dict(self.parts)
        for p, x in other.parts.items():
            parts[p] = parts[p] + x if p in parts else x
        return AdeleClassElement._from_raw(
            self.real_angle + other.real_angle, self.tail + other.tail, parts
        )

    def __neg__(self) -> "AdeleClassElement":
        return self.scalar_mul(-1)

    def __sub__(self, other: "AdeleClassElement") -> "AdeleClassElement":
        return self + (-other)

    def scalar_mul(self, q) -> "AdeleClassElement":
        """The Q-vector-space action q . a."""
        q = as_rational(q)
        if q == 0:
            return AdeleClassElement.zero()
        return AdeleClassElement._from_raw(
            self.real_angle * q,
            self.tail * q,
            {p: x.scale(q) for p, x in self.parts.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, AdeleClassElement)
            and self.real_angle == other.real_angle
            and self.tail == other.tail
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((self.real_angle, self.tail, frozenset(self.parts.items())))

    def __repr__(self):
        ps = {p: "..." for p in sorted(self.parts)}
        return f"AdeleClassElement(real={self.real_angle}, tail={self.tail}, parts={ps})"

    def component_at(self, p: int) -> PAdicNumber:
        """The Z_p component of the canonical representative at prime p."""
        comp = PAdicNumber.from_rational(self.tail, p)
        if p in self.parts:
            comp = comp + self.parts[p]
        return comp

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "real": format_rational(self.real_angle),
            "tail": format_rational(self.tail),
            "padic": {str(p): self.parts[p].to_json() for p in sorted(self.parts)},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AdeleClassElement":
        parts = {
            int(p): PAdicNumber.from_json(int(p), sub) for p, sub in obj["padic"].items()
        }
        out = cls(Fraction(obj["real"]), Fraction(obj.get("tail", "0/1")), parts, _canonical=True)
        # inputs may be non-canonical; normalize defensively
        return cls._from_raw(out.real_angle, out.tail, out.parts)


def e_Q(a: AdeleClassElement) -> CircleValue:
    """The distinguished circle character of the adele class group.

    On canonical elements this is the real angle (all finite components are
    integral); equivalently (a_oo - sum_p frac_p(a_p)) mod 1.  Trivial on
    diagonal Q by construction.
    """
    return CircleValue.of(_EQ_SIGN * a.real_angle)


def scalar_mul(q, a: AdeleClassElement) -> AdeleClassElement:
    return a.scalar_mul(q)


def add(a: AdeleClassElement, b: AdeleClassElement) -> AdeleClassElement:
    return a + b


def frac_p(x: PAdicNumber) -> Fraction:
    return x.frac_part()


def canonicalize(real, parts=None) -> AdeleClassElement:
    return AdeleClassElement.canonicalize(real, parts)


def generic_element(primes, precision: int = 64, seed: int = 0) -> AdeleClassElement:
    """Deterministic element of prod Z_p with aperiodic digit streams.

    The streams are square-position indicators, reproducible from the seed and
    lazily extensible, so precision only sets the serialization display depth.
    """
    if precision < 16:
        raise ValueError("generic_element needs precision >= 16")
    parts = {p: PAdicNumber.from_stream(p, SquareStream(p, seed)) for p in primes}
    return AdeleClassElement._from_raw(Fraction(0), Fraction(0), parts)
