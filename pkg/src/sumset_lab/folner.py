"""Folner sequences in Q: enumeration, exact densities, translation defects.

Two families are provided.  Harmonic is the textbook sequence
Phi_N = { sum_{n<=N} a_n / n : |a_n| <= N }, which explodes combinatorially;
FactorialGrid is the tractable grid Phi_N = { k / N! : |k| <= N * N! }, which
is Folner with defect O(1/N) for fixed shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import SizeCap
from .exactq import as_rational

DEFAULT_TUPLE_CAP = 5_000_000

HARMONIC = "harmonic"
FACTORIAL_GRID = "factorial"


@dataclass(frozen=True)
class FolnerFamily:
    kind: str
    tuple_cap: int = DEFAULT_TUPLE_CAP
    # Temperedness is recorded, not verified: the factorial grid is nested so
    # the standard criterion is immediate; Harmonic's is not asserted.
    tempered: bool = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.kind not in (HARMONIC, FACTORIAL_GRID):
            raise ValueError(f"unknown Folner family {self.kind!r}")
        if self.tempered is None:
            object.__setattr__(self, "tempered", self.kind == FACTORIAL_GRID)


def family(kind: str, tuple_cap: int = DEFAULT_TUPLE_CAP) -> FolnerFamily:
    return FolnerFamily(kind=kind, tuple_cap=tuple_cap)


def enumerate_family(fam: FolnerFamily, N: int) -> frozenset[Fraction]:
    """The exact value set Phi_N, deduplicated."""
    if N < 1:
        raise ValueError("N >= 1 required")
    if fam.kind == FACTORIAL_GRID:
        q = factorial(N)
        if 2 * N * q + 1 > fam.tuple_cap:
            raise SizeCap(f"factorial grid size {2*N*q+1} exceeds cap {fam.tuple_cap}")
        return frozenset(Fraction(k, q) for k in range(-N * q, N * q + 1))
    # Harmonic: cap on the nominal tuple count, then enumerate with staged
    # deduplication (same value set, far fewer intermediate states).
    if (2 * N + 1) ** N > fam.tuple_cap:
        raise SizeCap(f"harmonic tuple count {(2*N+1)**N} exceeds cap {fam.tuple_cap}")
    values = {Fraction(0)}
    for n in range(1, N + 1):
        step = Fraction(1, n)
        values = {v + a * step for v in values for a in range(-N, N + 1)}
    return frozenset(values)


def sorted_family(fam: FolnerFamily, N: int) -> list[Fraction]:
    return sorted(enumerate_family(fam, N))


@dataclass(frozen=True)
class RationalSetPredicate:
    """A pure membership test over Q, with an optional explicit finite support."""

    name: str
    member: callable
    support: frozenset = None  # type: ignore[assignment]

    def __call__(self, q) -> bool:
        return bool(self.member(as_rational(q)))


def predicate_all() -> RationalSetPredicate:
    return RationalSetPredicate("all", lambda q: True)


def predicate_empty() -> RationalSetPredicate:
    return RationalSetPredicate("empty", lambda q: False)


def predicate_translate(A: RationalSetPredicate, x) -> RationalSetPredicate:
    x = as_rational(x)
    return RationalSetPredicate(f"{A.name}+{x}", lambda q: A(q - x))


def circle_norm(q) -> Fraction:
    """Distance from q to the nearest integer."""
    q = as_rational(q) % 1
    return min(q, 1 - q)


def return_time_set(delta) -> RationalSetPredicate:
    """D_delta = { q : ||q|| < delta }, the rotation return-time set."""
    delta = as_rational(delta)
    if not (0 < delta <= Fraction(1, 2)):
        raise ValueError("need 0 < delta <= 1/2")
    return RationalSetPredicate(f"delta:{delta}", lambda q: circle_norm(q) < delta)


def density(A: RationalSetPredicate, fam: FolnerFamily, N: int) -> Fraction:
    """|A intersect Phi_N| / |Phi_N| exactly."""
    phi = enumerate_family(fam, N)
    count = sum(1 for q in phi if A(q))
    return Fraction(count, len(phi))


def folner_defect(fam: FolnerFamily, N: int, x) -> Fraction:
    """|(Phi_N + x) symmetric-difference Phi_N| / |Phi_N| exactly."""
    x = as_rational(x)
    phi = enumerate_family(fam, N)
    shifted = {q + x for q in phi}
    return Fraction(len(phi.symmetric_difference(shifted)), len(phi))
