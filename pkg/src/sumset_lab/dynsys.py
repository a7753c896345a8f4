"""Concrete simulable Q-systems: affine skew products on powers of the adele
class group (or on torus angles with integer time), their dual characters,
empirical averages, Weyl sums, and a finite-depth search for the nested-open-
set progression scheme.

Two affine action formulas occur, both exact:

  binomial   v_i -> v_i + sum_{j<i} C(q, i-j) v_j + C(q, i) alpha
  power      v_i -> v_i + sum_{0<j<i} C(i, j) q^(i-j) v_j + q^i alpha

The binomial form is the structured tower action; the power form is the
counterexample system whose orbit of the origin is (q alpha, q^2 alpha, ...).
Both satisfy the group law apply(q+r) = apply(q) o apply(r).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .adele import AdeleClassElement, CircleValue, e_Q
from .errors import PreconditionFailed
from .exactq import BinomPoly, as_rational, binom, eval_poly
from .folner import FolnerFamily, sorted_family

QADELIC = "qadelic"
ZTORUS = "ztorus"
BINOMIAL = "binomial"
POWER = "power"


def _scale(component, coeff: Fraction):
    if isinstance(component, AdeleClassElement):
        return component.scalar_mul(coeff)
    if coeff.denominator != 1:
        raise ValueError("torus coordinates admit only integer scalars")
    return component.times(coeff.numerator)


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(coeff: Fraction, v):
    return tuple(_scale(a, coeff) for a in v)


@dataclass(frozen=True)
class SkewSystem:
    variant: str
    l: int
    k: int
    alpha: tuple  # vector of l components
    basis: str = BINOMIAL
    # for ZTorus the rational alpha stands in for an irrational; reports flag it
    alpha_is_approximation: bool = False

    def __post_init__(self):
        if self.variant not in (QADELIC, ZTORUS):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.basis not in (BINOMIAL, POWER):
            raise ValueError(f"unknown basis {self.basis!r}")
        if len(self.alpha) != self.l:
            raise ValueError("alpha has wrong dimension")

    def zero_vector(self) -> tuple:
        zero = AdeleClassElement.zero() if self.variant == QADELIC else CircleValue.zero()
        return (zero,) * self.l

    def zero_point(self) -> "OrbitPoint":
        return OrbitPoint((self.zero_vector(),) * self.k)


def qadelic_system(l: int, k: int, alpha, basis: str = BINOMIAL) -> SkewSystem:
    return SkewSystem(QADELIC, l, k, tuple(alpha), basis)


def remark_system(alpha: AdeleClassElement) -> SkewSystem:
    """The power-basis skew product on two coordinates: orbit of 0 is (q a, q^2 a)."""
    return SkewSystem(QADELIC, 1, 2, (alpha,), POWER)


def ztorus_system(d: int, alpha_angles, alpha_is_approximation: bool = True) -> SkewSystem:
    alpha = tuple(CircleValue.of(a) for a in alpha_angles)
    return SkewSystem(ZTORUS, len(alpha), d, alpha, BINOMIAL, alpha_is_approximation)


@dataclass(frozen=True)
class OrbitPoint:
    coords: tuple  # k vectors, each of l components

    def __iter__(self):
        return iter(self.coords)


def apply(system: SkewSystem, q, point: OrbitPoint) -> OrbitPoint:
    """The time-q map of the affine skew action."""
    q = as_rational(q)
    if system.variant == ZTORUS and q.denominator != 1:
        raise ValueError("ZTorus systems have integer time")
    vs = point.coords
    if len(vs) != system.k:
        raise ValueError("point has wrong tower height")
    out = []
    for i in range(1, system.k + 1):
        if system.basis == BINOMIAL:
            acc = _vec_scale(binom(q, i), system.alpha)
            for j in range(1, i):
                acc = _vec_add(acc, _vec_scale(binom(q, i - j), vs[j - 1]))
        else:
            acc = _vec_scale(q**i, system.alpha)
            for j in range(1, i):
                acc = _vec_add(acc, _vec_scale(binom(i, j) * q ** (i - j), vs[j - 1]))
        out.append(_vec_add(vs[i - 1], acc))
    return OrbitPoint(tuple(out))


@dataclass(frozen=True)
class CharacterObservable:
    """g_w(v) = e_Q(sum_i w_i . v_i) for rational covectors w_1..w_k of length l."""

    w: tuple  # k tuples of l Fractions

    @classmethod
    def of(cls, rows) -> "CharacterObservable":
        return cls(tuple(tuple(as_rational(x) for x in row) for row in rows))

    @classmethod
    def constant_one(cls, k: int, l: int) -> "CharacterObservable":
        return cls(((Fraction(0),) * l,) * k)

    def is_trivial(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.w)


def char_eval(g: CharacterObservable, point: OrbitPoint) -> CircleValue:
    total = CircleValue.zero()
    for row, vec in zip(g.w, point.coords):
        for coeff, comp in zip(row, vec):
            if coeff == 0:
                continue
            if isinstance(comp, AdeleClassElement):
                total = total + e_Q(comp.scalar_mul(coeff))
            else:
                if coeff.denominator != 1:
                    raise ValueError("torus characters need integer covectors")
                total = total + comp.times(coeff.numerator)
    return total


def char_derivative_identity(
    system: SkewSystem, g: CharacterObservable, q, point: OrbitPoint
) -> tuple[CircleValue, CharacterObservable]:
    """The derivative of a tower character along time q.

    Returns the predicted constant e_Q(sum_j C(q,j) w_j(alpha)) and the shifted
    character w'_i(q) = sum_{j>i} C(q, j-i) w_j, and checks the identity
    g_w(S^q v) conj(g_w(v)) = const * g_{w'}(v) exactly at the given point.
    """
    if system.variant != QADELIC or system.basis != BINOMIAL:
        raise ValueError("character derivative identity needs the binomial adelic action")
    q = as_rational(q)
    k, l = system.k, system.l
    const_class = AdeleClassElement.zero()
    for j in range(1, k + 1):
        w_j_alpha = AdeleClassElement.zero()
        for c in range(l):
            if g.w[j - 1][c] != 0:
                w_j_alpha = w_j_alpha + system.alpha[c].scalar_mul(g.w[j - 1][c])
        const_class = const_class + w_j_alpha.scalar_mul(binom(q, j))
    const = e_Q(const_class)
    rows = []
    for i in range(1, k + 1):
        row = [Fraction(0)] * l
        for j in range(i + 1, k + 1):
            b = binom(q, j - i)
            for c in range(l):
                row[c] += b * g.w[j - 1][c]
        rows.append(tuple(row))
    shifted = CharacterObservable(tuple(rows))

    lhs = char_eval(g, apply(system, q, point)) - char_eval(g, point)
    rhs = const + char_eval(shifted, point)
    if lhs != rhs:
        raise AssertionError(f"character derivative identity failed: {lhs} != {rhs}")
    return const, shifted


def rotation_apply(system: SkewSystem, t, z: tuple) -> tuple:
    """The rotation R^t on the base factor V: z + t * alpha."""
    t = as_rational(t)
    return _vec_add(z, _vec_scale(t, system.alpha))


def empirical_average(
    system: SkewSystem,
    P: BinomPoly,
    f: CharacterObservable,
    g: CharacterObservable,
    base: OrbitPoint,
    fam: FolnerFamily,
    N: int,
    mode: str = "sigma",
) -> complex:
    """(1/|Phi_N|) sum_q f(T^q base) g(R^{pi(q)} z0) with z0 the first coordinate.

    mode "sigma" twists the rotation by P(q)+q, mode "lambda" by P(q).
    """
    if mode not in ("sigma", "lambda"):
        raise ValueError("mode must be 'sigma' or 'lambda'")
    if system.variant != QADELIC:
        raise ValueError("empirical averages run on adelic systems")
    times = sorted_family(fam, N)
    z0 = base.coords[0]
    g_row = g.w[0]
    total = 0j
    for q in times:
        t = eval_poly(P, q) + (q if mode == "sigma" else 0)
        angle = char_eval(f, apply(system, q, base))
        z = rotation_apply(system, t, z0)
        for coeff, comp in zip(g_row, z):
            if coeff != 0:
                angle = angle + e_Q(comp.scalar_mul(coeff))
        total += angle.to_complex()
    return total / len(times)


def weyl_sum(betas, fam: FolnerFamily, N: int) -> complex:
    """(1/|Phi_N|) sum_q e_Q(sum_j q^j beta_j), power-basis Weyl sum."""
    betas = list(betas)
    if not betas:
        raise ValueError("need at least one beta")
    times = sorted_family(fam, N)
    total = 0j
    for q in times:
        angle = CircleValue.zero()
        for j, beta in enumerate(betas, start=1):
            if not beta.is_zero():
                angle = angle + e_Q(beta.scalar_mul(q**j))
        total += angle.to_complex()
    return total / len(times)


# -- open boxes --------------------------------------------------------


@dataclass(frozen=True)
class CoordConstraint:
    """Open real-angle interval and/or required leading digits at listed primes."""

    interval: tuple | None = None  # (lo, hi) with 0 <= lo < hi <= 1, open
    digits: tuple = ()  # ((prime, (d0, d1, ...)), ...)

    def __post_init__(self):
        if self.interval is not None:
            lo, hi = self.interval
            if not (0 <= lo < hi <= 1):
                raise ValueError("interval must satisfy 0 <= lo < hi <= 1")


@dataclass(frozen=True)
class OpenBox:
    """Membership-decidable neighborhood: per-(tower,component) constraints."""

    constraints: tuple = ()  # ((i, c, CoordConstraint), ...) with 1-based i, 0-based c

    @classmethod
    def whole_space(cls) -> "OpenBox":
        return cls(())

    @classmethod
    def real_interval(cls, lo, hi, i: int = 1, c: int = 0) -> "OpenBox":
        return cls(((i, c, CoordConstraint((as_rational(lo), as_rational(hi)))),))

    def is_whole_space(self) -> bool:
        return not self.constraints


def _component_matches(comp, con: CoordConstraint) -> bool:
    if con.interval is not None:
        angle = comp.real_angle if isinstance(comp, AdeleClassElement) else comp.angle
        lo, hi = con.interval
        if not (lo < angle < hi):
            return False
    for p, pattern in con.digits:
        if not isinstance(comp, AdeleClassElement):
            return False
        got = comp.component_at(p).digits(len(pattern))
        if got != tuple(pattern):
            return False
    return True


def point_in_box(point: OrbitPoint, box: OpenBox) -> bool:
    for i, c, con in box.constraints:
        if not _component_matches(point.coords[i - 1][c], con):
            return False
    return True


def _single_interval(box: OpenBox) -> tuple:
    if len(box.constraints) != 1 or box.constraints[0][2].interval is None:
        raise PreconditionFailed("need a single real-angle interval constraint")
    return box.constraints[0][2].interval


def boxes_sum_disjoint(U: OpenBox, V: OpenBox) -> bool:
    """(V + U) intersect U = empty, on single-interval boxes without wraparound."""
    ulo, uhi = _single_interval(U)
    vlo, vhi = _single_interval(V)
    if vhi + uhi > 1:
        raise PreconditionFailed("interval sum wraps around the circle; cannot certify")
    slo, shi = vlo + ulo, vhi + uhi
    return min(shi, uhi) <= max(slo, ulo)


# -- progression search ------------------------------------------------


@dataclass
class EfsResult:
    status: str  # "found" | "not_found" | "budget"
    times: tuple | None = None
    nodes: int = 0
    certified: bool = False


def _chain_certified(system, x0, P, U, V, times) -> bool:
    """Independent recheck of the whole inclusion system, no memoization."""
    if len(set(times)) != len(times):
        return False
    for s in times:
        if not point_in_box(apply(system, s, x0), U):
            return False
    for a, si in enumerate(times):
        for sj in times[a + 1 :]:
            if not point_in_box(apply(system, eval_poly(P, si) + sj, x0), V):
                return False
    return True


def efs_search(
    system: SkewSystem,
    x0: OrbitPoint,
    P: BinomPoly,
    U: OpenBox,
    V: OpenBox,
    depth: int,
    fam: FolnerFamily,
    N: int,
    node_budget: int = 100_000,
) -> EfsResult:
    """Greedy backtracking realization of the nested-open-set scheme at finite depth.

    Searches for distinct times s_1 < ... inside Phi_N with T^{s_i} x0 in U and
    T^{P(s_i)+s_j} x0 in V for all i < j.  Any returned chain is re-certified
    independently before being reported.
    """
    if depth < 1:
        raise ValueError("depth >= 1 required")
    times = sorted_family(fam, N)
    candidates = [s for s in times if point_in_box(apply(system, s, x0), U)]
    v_memo: dict[Fraction, bool] = {}

    def in_v(t: Fraction) -> bool:
        if t not in v_memo:
            v_memo[t] = point_in_box(apply(system, t, x0), V)
        return v_memo[t]

    nodes = 0
    chain: list[Fraction] = []

    def dfs(start: int) -> bool:
        nonlocal nodes
        if len(chain) == depth:
            return True
        for idx in range(start, len(candidates)):
            s = candidates[idx]
            nodes += 1
            if nodes > node_budget:
                return False
            if all(in_v(eval_poly(P, si) + s) for si in chain):
                chain.append(s)
                if dfs(idx + 1):
                    return True
                chain.pop()
        return False

    found = dfs(0)
    if found:
        result = tuple(chain)
        if not _chain_certified(system, x0, P, U, V, result):
            raise AssertionError("search produced an uncertifiable chain")
        return EfsResult("found", result, nodes, True)
    return EfsResult("budget" if nodes > node_budget else "not_found", None, nodes, False)


def remark_counterexample_check(
    alpha: AdeleClassElement, U: OpenBox, V: OpenBox, fam: FolnerFamily, N: int
) -> dict:
    """Exhaustive finite check of the no-shift counterexample.

    Builds A = { q in Phi_N : q alpha in U, q^2 alpha in V } and verifies that
    b1^2 + b2 avoids A for every pair; requires (V + U) and U disjoint.
    """
    if not boxes_sum_disjoint(U, V):
        raise PreconditionFailed("(V + U) meets U; the obstruction argument needs disjointness")
    ucon = U.constraints[0][2]
    vcon = V.constraints[0][2]

    memo: dict[Fraction, bool] = {}

    def in_A(q: Fraction) -> bool:
        if q not in memo:
            memo[q] = _component_matches(alpha.scalar_mul(q), ucon) and _component_matches(
                alpha.scalar_mul(q * q), vcon
            )
        return memo[q]

    A = [q for q in sorted_family(fam, N) if in_A(q)]
    violations = []
    for b1 in A:
        for b2 in A:
            if in_A(b1 * b1 + b2):
                violations.append((b1, b2))
    return {
        "A_size": len(A),
        "pairs_checked": len(A) * len(A),
        "violations": violations,
        "status": "pass" if not violations else "fail",
    }


def vdc_diagnostic(u, fam: FolnerFamily, N: int, R: int) -> dict:
    """Finite-N view of the differencing data: no inequality is asserted.

    Reports |avg u|^2 over Phi_N together with the shift correlations
    z(r) = (1/|Phi_N|) sum_q u(q+r) conj(u(q)) averaged over r in Phi_R,
    both as |avg_r z(r)| (the differencing bound's quantity) and as the
    mean of |z(r)|.
    """
    times = sorted_family(fam, N)
    shifts = sorted_family(fam, R)
    vals = {q: u(q) for q in times}
    avg = sum(vals[q] for q in times) / len(times)

    def z(r: Fraction) -> complex:
        return sum(u(q + r) * vals[q].conjugate() for q in times) / len(times)

    zs = [z(r) for r in shifts]
    return {
        "avg_norm_sq": abs(avg) ** 2,
        "z_avg_abs": abs(sum(zs) / len(zs)),
        "z_abs_mean": sum(abs(w) for w in zs) / len(zs),
        "N": N,
        "R": R,
        "terms": len(times),
        "shifts": len(shifts),
    }
