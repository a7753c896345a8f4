"""Ordered hypergraph Ramsey numbers, the exact measure-theoretic Ramsey bound,
corner counting on Z_n x Z_n, the greedy piecewise-syndetic sumset builder, and
difference-set search.

Everything here is exact rational arithmetic or exhaustive search with
deterministic orderings; searches that can legitimately come up empty return
sentinel results instead of raising.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import BudgetExceeded, MeanTooSmall, PartitionOfUnityViolated
from .exactq import as_rational, binom

ABOVE_CAP = "above_cap"

MAX_RAMSEY_VERTICES = 8
MAX_RAMSEY_COLORS = 3


@dataclass(frozen=True)
class OrderedHypergraph:
    """Vertices 1..m with distinct sorted l-subsets as edges."""

    m: int
    l: int
    edges: tuple

    @classmethod
    def of(cls, m: int, l: int, edges) -> "OrderedHypergraph":
        es = tuple(sorted(tuple(sorted(e)) for e in edges))
        for e in es:
            if len(e) != l or len(set(e)) != l or not all(1 <= v <= m for v in e):
                raise ValueError(f"bad edge {e}")
        if len(set(es)) != len(es):
            raise ValueError("duplicate edges")
        return cls(m, l, es)

    @classmethod
    def monotone_path3(cls) -> "OrderedHypergraph":
        return cls.of(3, 2, [(1, 2), (2, 3)])

    @classmethod
    def efs_pattern(cls, d: int) -> "OrderedHypergraph":
        """2d-1 vertices with the two d-blocks {1..d} and {d..2d-1} as edges."""
        return cls.of(2 * d - 1, d, [tuple(range(1, d + 1)), tuple(range(d, 2 * d))])

    def to_json(self) -> dict:
        return {"m": self.m, "l": self.l, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "OrderedHypergraph":
        return cls.of(obj["m"], obj["l"], [tuple(e) for e in obj["edges"]])


def contains_ordered_copy(coloring: dict, n: int, H: OrderedHypergraph, color) -> bool:
    """Does the colored complete l-uniform K_n hold a monochromatic increasing copy of H?

    `coloring` maps sorted l-tuples of {1..n} to colors.
    """
    if n < H.m:
        return False
    for image in combinations(range(1, n + 1), H.m):
        ok = True
        for e in H.edges:
            mapped = tuple(image[v - 1] for v in e)
            if coloring[mapped] != color:
                ok = False
                break
        if ok:
            return True
    return False


def _edge_list(n: int, l: int) -> list[tuple]:
    return list(combinations(range(1, n + 1), l))


def _coloring_avoids(H: OrderedHypergraph, n: int, r: int) -> bool:
    """Is there an r-coloring of K_n^(l) with no monochromatic ordered copy of H?

    Colorings are enumerated as base-r counters over the lexicographic edge
    order; the first edge's color is pinned to 0 by color symmetry.
    """
    edges = _edge_list(n, H.l)
    if not edges:
        return True
    copies = []
    for image in combinations(range(1, n + 1), H.m):
        copies.append(tuple(tuple(image[v - 1] for v in e) for e in H.edges))
    if not copies:
        return True
    index = {e: i for i, e in enumerate(edges)}
    copy_idx = [tuple(index[e] for e in c) for c in copies]

    assign = [0] * len(edges)
    while True:
        coloring_hit = any(
            len({assign[i] for i in c}) == 1 for c in copy_idx
        )
        if not coloring_hit:
            return True
        # increment the base-r counter, keeping edge 0 pinned to color 0
        pos = len(edges) - 1
        while pos >= 1:
            assign[pos] += 1
            if assign[pos] < r:
                break
            assign[pos] = 0
            pos -= 1
        if pos < 1:
            return False


def ordered_ramsey_number(H: OrderedHypergraph, r: int, cap: int):
    """Least n <= cap with every r-coloring of K_n^(l) containing ordered H, else ABOVE_CAP."""
    if cap > MAX_RAMSEY_VERTICES or r > MAX_RAMSEY_COLORS:
        raise BudgetExceeded(
            f"caps of n <= {MAX_RAMSEY_VERTICES}, r <= {MAX_RAMSEY_COLORS} exceeded"
        )
    for n in range(H.m, cap + 1):
        if not _coloring_avoids(H, n, r):
            return n
    return ABOVE_CAP


@dataclass(frozen=True)
class FiniteProbabilitySpace:
    weights: tuple  # rational weights on points 0..n-1 summing to 1

    @classmethod
    def of(cls, weights) -> "FiniteProbabilitySpace":
        ws = tuple(as_rational(w) for w in weights)
        if any(w < 0 for w in ws) or sum(ws) != 1:
            raise ValueError("weights must be nonnegative and sum to 1")
        return cls(ws)

    @classmethod
    def uniform(cls, n: int) -> "FiniteProbabilitySpace":
        return cls.of([Fraction(1, n)] * n)

    @property
    def size(self) -> int:
        return len(self.weights)


def measure_ramsey_lhs(space: FiniteProbabilitySpace, phis, H: OrderedHypergraph) -> Fraction:
    """sum_k integral over X^m of prod_{e in E(H)} phi_k(x_e), exactly.

    Each phi_k maps l-tuples of points to rationals in [0,1]; the family must
    be a pointwise partition of unity.
    """
    n = space.size
    for xs in product(range(n), repeat=H.l):
        total = sum(phi(xs) for phi in phis)
        if total != 1:
            raise PartitionOfUnityViolated(f"sum phi_k{xs} = {total} != 1")
    lhs = Fraction(0)
    for xs in product(range(n), repeat=H.m):
        w = Fraction(1)
        for x in xs:
            w *= space.weights[x]
        if w == 0:
            continue
        for phi in phis:
            term = w
            for e in H.edges:
                term *= phi(tuple(xs[v - 1] for v in e))
                if term == 0:
                    break
            lhs += term
    return lhs


def measure_ramsey_bound_check(
    space: FiniteProbabilitySpace, phis, H: OrderedHypergraph, r: int, cap: int = MAX_RAMSEY_VERTICES
) -> dict:
    """Exact check of lhs >= 1 / C(R_<(H, r), m)."""
    lhs = measure_ramsey_lhs(space, phis, H)
    R = ordered_ramsey_number(H, r, cap)
    if R == ABOVE_CAP:
        return {"lhs": lhs, "ramsey_number": ABOVE_CAP, "rhs": None, "status": "no_assertion"}
    rhs = 1 / binom(R, H.m)
    return {
        "lhs": lhs,
        "ramsey_number": R,
        "rhs": rhs,
        "status": "pass" if lhs >= rhs else "fail",
    }


# -- corners on Z_n x Z_n ------------------------------------------------


@dataclass(frozen=True)
class CornersInstance:
    n: int
    F: tuple  # n x n table of rationals in [0,1]

    @classmethod
    def of(cls, table) -> "CornersInstance":
        rows = tuple(tuple(as_rational(x) for x in row) for row in table)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("table must be square")
        if any(not (0 <= x <= 1) for row in rows for x in row):
            raise ValueError("entries must lie in [0,1]")
        return cls(n, rows)

    @classmethod
    def random(cls, n: int, density, seed: int, denom: int = 16) -> "CornersInstance":
        """Deterministic random table with entries j/denom biased toward `density`."""
        rng = random.Random(seed)
        density = as_rational(density)
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                if rng.random() < float(density):
                    row.append(Fraction(rng.randrange(denom // 2, denom + 1), denom))
                else:
                    row.append(Fraction(rng.randrange(0, denom // 2 + 1), denom))
            rows.append(tuple(row))
        return cls(n, tuple(rows))

    def mean(self) -> Fraction:
        return sum(sum(row, Fraction(0)) for row in self.F) / (self.n * self.n)


def corners_count(inst: CornersInstance) -> Fraction:
    """(1/n^3) sum_{x,y,t} F(x,y) F(x+t,y) F(x,y+t), exactly.

    The inner double sum is grouped by t; indices are mod n.
    """
    n, F = inst.n, inst.F
    total = Fraction(0)
    for t in range(n):
        for x in range(n):
            xt = (x + t) % n
            row_x, row_xt = F[x], F[xt]
            for y in range(n):
                a = row_x[y]
                if a == 0:
                    continue
                b = row_xt[y]
                if b == 0:
                    continue
                c = row_x[(y + t) % n]
                if c != 0:
                    total += a * b * c
    return total / Fraction(n**3)


def markov_level_set(inst: CornersInstance, eps) -> dict:
    """The effective chain of the functional corners bound, asserted exactly.

    Requires mean(F) >= eps; forms E = {F >= eps/2}; checks the Markov density
    bound and corners(F) >= (eps/2)^3 * corners(1_E).
    """
    eps = as_rational(eps)
    mean = inst.mean()
    if mean < eps:
        raise MeanTooSmall(f"mean {mean} < eps {eps}")
    half = eps / 2
    indicator = CornersInstance.of(
        [[1 if x >= half else 0 for x in row] for row in inst.F]
    )
    e_density = indicator.mean()
    density_ok = e_density >= half
    corners_f = corners_count(inst)
    corners_e = corners_count(indicator)
    corner_ok = corners_f >= half**3 * corners_e
    return {
        "mean": mean,
        "eps": eps,
        "level_set_density": e_density,
        "density_bound": half,
        "density_ok": density_ok,
        "corners_f": corners_f,
        "corners_lower": half**3 * corners_e,
        "corners_ok": corner_ok,
        "status": "pass" if density_ok and corner_ok else "fail",
    }


# -- greedy sumset builder -----------------------------------------------

EXHAUSTED = "exhausted"
GREEDY_PREFIX_CAP = 20


@dataclass
class SumsetResult:
    status: str  # "found" | "exhausted"
    B: tuple | None = None
    shift: int | None = None
    chain: tuple = ()
    coloring: dict | None = None


def greedy_sumset_builder(A, k: int, m: int, horizon: int) -> SumsetResult:
    """Greedy realization of the piecewise-syndetic construction.

    A is a membership predicate on positive integers, valid up to `horizon`;
    T = A u (A-1) u ... u (A-k) must be thick enough to extend greedily.
    Builds c_1 < c_2 < ..., colors pairs by the least shift t with
    c_i^2 + c_j in A - t, extracts a size-m monochromatic subset by exhaustive
    search over the built prefix, and re-verifies every inclusion before
    returning.
    """

    def in_T(x: int) -> bool:
        return any(A(x + t) for t in range(k + 1))

    chain = [1]
    while len(chain) < GREEDY_PREFIX_CAP:
        squares = [c * c for c in chain]
        nxt = None
        for cand in range(chain[-1] + 1, horizon + 1):
            if cand + squares[-1] > horizon:
                break
            if all(in_T(cand + s) for s in squares):
                nxt = cand
                break
        if nxt is None:
            break
        chain.append(nxt)

    if len(chain) < m:
        return SumsetResult(EXHAUSTED, chain=tuple(chain))

    coloring = {}
    for i, j in combinations(range(len(chain)), 2):
        value = chain[i] ** 2 + chain[j]
        color = next((t for t in range(k + 1) if A(value + t)), None)
        if color is None:
            return SumsetResult(EXHAUSTED, chain=tuple(chain))
        coloring[(i, j)] = color

    if m <= 6:
        subsets = combinations(range(len(chain)), m)
    else:
        # greedy beyond the exhaustive regime: extend a monochromatic clique
        subsets = _greedy_cliques(len(chain), coloring, m)
    for S in subsets:
        colors = {coloring[(i, j)] for i, j in combinations(S, 2)}
        if len(colors) == 1:
            t = colors.pop()
            B = tuple(chain[i] for i in S)
            for i, j in combinations(range(len(B)), 2):
                if not A(B[i] ** 2 + B[j] + t):
                    raise AssertionError("re-verification failed on a reported inclusion")
            return SumsetResult("found", B, t, tuple(chain), coloring)
    return SumsetResult(EXHAUSTED, chain=tuple(chain), coloring=coloring)


def _greedy_cliques(n: int, coloring: dict, m: int):
    for t in sorted({c for c in coloring.values()}):
        S = []
        for v in range(n):
            if all(coloring[(u, v)] == t for u in S):
                S.append(v)
            if len(S) == m:
                yield tuple(S)
                break


# -- difference sets -------------------------------------------------------

NOT_FOUND = "not_found"


def delta_set_search(A, size: int, grid=None, budget: int = 200_000):
    """b_1 < ... < b_size with every later-minus-earlier difference in A, or None.

    A is a finite set of rationals.  The default candidate grid starts the
    chain at 0 and steps by positive elements of A (complete up to translation,
    since differences of a valid chain are exactly such steps); an explicit
    grid is searched by DFS in increasing order instead.
    """
    A = {as_rational(a) for a in A}
    if size < 2:
        raise ValueError("size >= 2 required")
    steps = sorted(a for a in A if a > 0)
    nodes = 0

    if grid is not None:
        grid = sorted({as_rational(g) for g in grid})

    def extensions(chain):
        if grid is None:
            return [chain[-1] + s for s in steps]
        return [g for g in grid if g > chain[-1]]

    def dfs(chain):
        nonlocal nodes
        if len(chain) == size:
            return tuple(chain)
        for cand in extensions(chain):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("delta-set search budget exceeded")
            if all(cand - b in A for b in chain):
                out = dfs(chain + [cand])
                if out is not None:
                    return out
        return None

    starts = [Fraction(0)] if grid is None else grid
    for b1 in starts:
        out = dfs([b1])
        if out is not None:
            return out
    return None
