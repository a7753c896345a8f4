"""Polynomial phases Q -> S^1 in their unique tuple encoding.

A degree-k phase is the tuple (c, a_1, ..., a_k): a circle constant and adele
classes, standing for phi(q) = c * e_Q(sum_j a_j C(q, j)).  The tuple is the
whole algebra: products, derivatives and multilinearization are tuple
manipulations, checked against direct evaluation in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .adele import AdeleClassElement, CircleValue, e_Q
from .errors import ZeroDegree
from .exactq import as_rational, binom


class PhasePolynomial:
    __slots__ = ("c", "coeffs")

    def __init__(self, c: CircleValue, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.c = c
        self.coeffs = tuple(cs)

    @classmethod
    def trivial(cls) -> "PhasePolynomial":
        return cls(CircleValue.zero(), ())

    @classmethod
    def constant(cls, c: CircleValue) -> "PhasePolynomial":
        return cls(c, ())

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_trivial(self) -> bool:
        return self.c.angle == 0 and not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, PhasePolynomial)
            and self.c == other.c
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.c, self.coeffs))

    def inverse(self) -> "PhasePolynomial":
        return PhasePolynomial(-self.c, tuple(-a for a in self.coeffs))

    def to_json(self) -> dict:
        from .exactq import format_rational

        return {
            "c": format_rational(self.c.angle),
            "coeffs": [a.to_json() for a in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PhasePolynomial":
        return cls(
            CircleValue.of(Fraction(obj["c"])),
            [AdeleClassElement.from_json(a) for a in obj["coeffs"]],
        )


def eval_phase(phi: PhasePolynomial, q) -> CircleValue:
    q = as_rational(q)
    out = phi.c
    for j, a in enumerate(phi.coeffs, start=1):
        out = out + e_Q(a.scalar_mul(binom(q, j)))
    return out


def phase_product(phi: PhasePolynomial, psi: PhasePolynomial) -> PhasePolynomial:
    """Pointwise product: componentwise tuple addition after padding."""
    k = max(phi.degree, psi.degree)
    zero = AdeleClassElement.zero()
    a = list(phi.coeffs) + [zero] * (k - phi.degree)
    b = list(psi.coeffs) + [zero] * (k - psi.degree)
    return PhasePolynomial(phi.c + psi.c, [x + y for x, y in zip(a, b)])


def phase_derivative(phi: PhasePolynomial, q, require_lowering: bool = False) -> PhasePolynomial:
    """The multiplicative derivative t -> phi(t+q) phi(t)^-1 as a tuple.

    Constant: phi(q) * conj(c).  Coefficients: a'_i(q) = sum_{j>i} C(q, j-i) a_j,
    one degree lower.  A constant phase differentiates to the trivial phase
    (needed for the derivative to be a homomorphism); pass require_lowering to
    get a ZeroDegree error instead when no lower-degree tuple exists.
    """
    q = as_rational(q)
    k = phi.degree
    if k == 0:
        if require_lowering and q != 0:
            raise ZeroDegree("cannot lower the degree of a constant phase")
        return PhasePolynomial.trivial()
    const = eval_phase(phi, q) - phi.c
    new = []
    for i in range(1, k):
        acc = AdeleClassElement.zero()
        for j in range(i + 1, k + 1):
            acc = acc + phi.coeffs[j - 1].scalar_mul(binom(q, j - i))
        new.append(acc)
    return PhasePolynomial(const, new)


def multilinearize(phi, k: int, qs) -> CircleValue:
    """The k-fold derivative at zero, D^k phi(q_1..q_k), as an alternating sum.

    `phi` may be a PhasePolynomial or any callable Q -> CircleValue (the latter
    is how non-polynomial negative controls enter).
    """
    qs = [as_rational(q) for q in qs]
    if len(qs) != k:
        raise ValueError("need exactly k arguments")
    evaluate = (lambda t: eval_phase(phi, t)) if isinstance(phi, PhasePolynomial) else phi
    total = CircleValue.zero()
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            val = evaluate(sum((qs[i] for i in subset), Fraction(0)))
            total = total + val if (k - size) % 2 == 0 else total - val
    return total


class MultilinearForm:
    """eta(q_1..q_k) = e_Q(q_1 ... q_k * alpha)."""

    __slots__ = ("arity", "generator")

    def __init__(self, arity: int, generator: AdeleClassElement):
        self.arity = arity
        self.generator = generator

    def __call__(self, *qs) -> CircleValue:
        if len(qs) != self.arity:
            raise ValueError("arity mismatch")
        prod = Fraction(1)
        for q in qs:
            prod *= as_rational(q)
        return e_Q(self.generator.scalar_mul(prod))

    def is_zero(self) -> bool:
        return self.generator.is_zero()


def leading_coefficient(phi: PhasePolynomial) -> MultilinearForm:
    """The multilinear form matching D^k phi for a degree-k phase."""
    k = phi.degree
    gen = phi.coeffs[-1] if k > 0 else AdeleClassElement.zero()
    return MultilinearForm(k, gen)
