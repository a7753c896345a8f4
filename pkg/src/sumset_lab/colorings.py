"""The explicit 5-coloring of the positive integers and its pattern checkers.

Colors: odd numbers get ODD; an even n gets even_{ij} where i is the binary
digit of n in position 2*v2(n) and j is the dyadic class of v2(n).  The two
even mechanisms are what blocks monochromatic {b_i, b_i^2 + b_j} patterns:
equal 2-adic valuations flip the c-bit, and a doubling gap in valuations
flips the dyadic class because v2(x^2 + y) = 2 v2(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

ODD = "odd"
EVEN00 = "even00"
EVEN01 = "even01"
EVEN10 = "even10"
EVEN11 = "even11"
COLORS = (ODD, EVEN00, EVEN01, EVEN10, EVEN11)

CASE_ODD_MEMBER = "odd_member"
CASE_EQUAL_VALUATION = "equal_valuation"
CASE_DOUBLING = "doubling"
CASE_NONE = "no_case_applies"


def v2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return (n & -n).bit_length() - 1


def c_bit(n: int) -> int:
    """Binary digit of n in position 2*v2(n)."""
    if n < 1:
        raise ValueError("n >= 1 required")
    return (n >> (2 * v2(n))) & 1


def d_dyadic(m: int) -> int:
    """floor(log2 m) mod 2, computed exactly from the bit length."""
    if m < 1:
        raise ValueError("m >= 1 required")
    return (m.bit_length() - 1) % 2


def five_color(n: int) -> str:
    if n % 2 == 1:
        return ODD
    return f"even{c_bit(n)}{d_dyadic(v2(n))}"


def pattern_values(B) -> list[int]:
    """{b_i} together with {b_i^2 + b_j : i < j} for an increasing sequence B."""
    B = sorted(B)
    vals = list(B)
    for i, j in combinations(range(len(B)), 2):
        vals.append(B[i] * B[i] + B[j])
    return vals


def pattern_colors(coloring, B) -> set:
    return {coloring(n) for n in pattern_values(B)}


@dataclass(frozen=True)
class CaseReport:
    case: str
    witness: tuple | None = None


def classify_case(B) -> CaseReport:
    """Which mechanism of the counterexample proof applies to B, with a witness.

    Checked in the proof's order: an odd member, then an equal-valuation pair,
    then a doubling pair x < y with 2 v2(x) < v2(y).
    """
    B = sorted(B)
    if len(B) < 2:
        raise ValueError("need |B| >= 2")
    for b in B:
        if b % 2 == 1:
            return CaseReport(CASE_ODD_MEMBER, (b,))
    for x, y in combinations(B, 2):
        if v2(x) == v2(y):
            return CaseReport(CASE_EQUAL_VALUATION, (x, y))
    for x, y in combinations(B, 2):
        if 2 * v2(x) < v2(y):
            return CaseReport(CASE_DOUBLING, (x, y))
    return CaseReport(CASE_NONE)


def bergelson_triple_search(coloring, bound: int):
    """First pair b1 < b2 <= bound with coloring constant on {b1, b2, b1^2 + b2}.

    Lexicographic scan; returns (b1, b2) or None.  Whether the 5-coloring
    admits such a triple below a given bound is reported, never asserted.
    """
    if bound < 2:
        raise ValueError("bound >= 2 required")
    for b1 in range(1, bound + 1):
        c = coloring(b1)
        for b2 in range(b1 + 1, bound + 1):
            if coloring(b2) == c and coloring(b1 * b1 + b2) == c:
                return (b1, b2)
    return None


def counterexample_scan(max_n: int, sizes=(2, 3)) -> list[tuple]:
    """All case-covered B in {1..max_n} whose pattern is monochromatic (expected none).

    Only B inside a single color class can violate (the pattern contains B),
    so the scan runs per class; the pair values b_i^2 + b_j are then checked
    until a second color appears.
    """
    color = [None] + [five_color(n) for n in range(1, max_n + 1)]
    vals = [0] + [v2(n) for n in range(1, max_n + 1)]
    classes: dict[str, list[int]] = {}
    for n in range(1, max_n + 1):
        classes.setdefault(color[n], []).append(n)

    violations = []
    for cls, members in classes.items():
        for size in sizes:
            for B in combinations(members, size):
                if cls == ODD:
                    case_applies = True
                else:
                    vs = [vals[b] for b in B]
                    case_applies = len(set(vs)) < len(vs) or any(
                        2 * vs[i] < vs[j]
                        for i in range(len(vs))
                        for j in range(i + 1, len(vs))
                    )
                if not case_applies:
                    continue
                mono = True
                for i, j in combinations(range(size), 2):
                    if five_color(B[i] * B[i] + B[j]) != cls:
                        mono = False
                        break
                if mono:
                    violations.append(B)
    return violations
