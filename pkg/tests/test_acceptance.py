"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
All tolerances and budgets are pinned here; exact checks use rational
equality, calibrated numeric checks use the frozen thresholds.
"""

import json
import random
import time
from fractions import Fraction as F
from itertools import combinations, product

from sumset_lab import adele, colorings, dynsys, folner, phasepoly, ramseycomb
from sumset_lab.adele import AdeleClassElement, CircleValue, e_Q, generic_element
from sumset_lab.cli import ROTATION_FIXTURES, main, parse_poly
from sumset_lab.dynsys import CharacterObservable, OpenBox
from sumset_lab.exactq import BinomPoly
from sumset_lab.folner import FACTORIAL_GRID, family, return_time_set

FAM = family(FACTORIAL_GRID)


def report(num: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {num:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    assert ok, line


def test_criterion_01_coloring_suite():
    t0 = time.monotonic()
    violations = colorings.counterexample_scan(300, (2, 3))
    eq_bad = [
        (x, y)
        for x in range(2, 301, 2)
        for y in range(x + 2, 301, 2)
        if colorings.v2(x) == colorings.v2(y)
        and colorings.five_color(y) == colorings.five_color(x * x + y)
    ]
    dbl_bad = []
    for a in range(1, 10):
        for b in range(2 * a + 1, 21):
            for ox, oy in ((1, 1), (3, 5), (5, 3), (7, 1)):
                x, y = 2**a * ox, 2**b * oy
                if colorings.v2(x * x + y) != 2 * colorings.v2(x):
                    dbl_bad.append((x, y))
                elif colorings.five_color(x) == colorings.five_color(x * x + y):
                    dbl_bad.append((x, y))
    dt = time.monotonic() - t0
    ok = not violations and not eq_bad and not dbl_bad and dt < 30
    report(1, ok, f"coloring scan to 300: {len(violations)} violations, "
                  f"{len(eq_bad)}+{len(dbl_bad)} mechanism failures, {dt:.1f}s (< 30s)")


def _random_adeles(n, seed):
    rng = random.Random(seed)
    streams = [generic_element([p], 64, s) for p in (2, 3) for s in range(3)]
    out = []
    for _ in range(n):
        kind = rng.randrange(10)
        if kind < 5:
            a = AdeleClassElement.from_real(F(rng.randrange(-40, 41), rng.randrange(1, 24)))
        elif kind < 9:
            p = rng.choice([2, 3, 5, 7])
            a = AdeleClassElement.from_part(p, F(rng.randrange(1, 60), p ** rng.randrange(0, 4)))
            if kind == 8:
                a = a + AdeleClassElement.from_real(F(rng.randrange(-9, 10), rng.randrange(1, 9)))
        else:
            a = rng.choice(streams).scalar_mul(F(rng.randrange(1, 9), rng.randrange(1, 9)))
        out.append(a)
    return out


def test_criterion_02_adelic_character_exactness():
    t0 = time.monotonic()
    n = 10_000
    rng = random.Random(99)
    elements = _random_adeles(n, 7)
    partners = _random_adeles(n, 8)
    qs = [F(rng.randrange(-30, 31), rng.randrange(1, 16)) for _ in range(n)]
    q2s = [F(rng.randrange(-30, 31), rng.randrange(1, 16)) for _ in range(n)]

    well_defined = sum(
        1 for a, q in zip(elements, qs) if e_Q(a + AdeleClassElement.diagonal(q)) == e_Q(a)
    )
    char_law = sum(
        1 for a, b in zip(elements, partners) if e_Q(a + b) == e_Q(a) + e_Q(b)
    )
    linear = sum(
        1
        for a, q1, q2 in zip(elements, qs, q2s)
        if a.scalar_mul(q1 + q2) == a.scalar_mul(q1) + a.scalar_mul(q2)
    )
    idem = sum(
        1
        for a in elements
        if AdeleClassElement._from_raw(a.real_angle, a.tail, dict(a.parts)) == a
    )
    dt = time.monotonic() - t0
    ok = well_defined == char_law == linear == idem == n and dt < 10
    report(2, ok, f"{well_defined}/{n} well-defined, {char_law}/{n} character law, "
                  f"{linear}/{n} Q-linear, {idem}/{n} idempotent, {dt:.1f}s (< 10s)")


def test_criterion_03_weyl_equidistribution():
    t0 = time.monotonic()
    zero = AdeleClassElement.zero()
    ok = dynsys.weyl_sum([zero, zero], FAM, 4) == 1.0
    worst = 0.0
    for seed in range(1, 6):
        beta = generic_element([2], 64, seed)
        m3 = abs(dynsys.weyl_sum([zero, beta], FAM, 3))
        m6 = abs(dynsys.weyl_sum([zero, beta], FAM, 6))
        worst = max(worst, m6)
        ok = ok and m6 < m3 and m6 < 0.15
    dt = time.monotonic() - t0
    ok = ok and dt < 60
    report(3, ok, f"|S_6| <= {worst:.4f} (< 0.15), strictly below |S_3|, "
                  f"zero case exactly 1.0, {dt:.1f}s (< 60s)")


def test_criterion_04_rotation_fs_check():
    t0 = time.monotonic()
    f = CharacterObservable.constant_one(1, 1)
    worst = 0.0
    ok = True
    for seed, w, ptext in ROTATION_FIXTURES:
        alpha = generic_element([2], 64, seed)
        system = dynsys.qadelic_system(1, 1, (alpha,))
        g = CharacterObservable.of([[F(w)]])
        avg = dynsys.empirical_average(
            system, parse_poly(ptext), f, g, system.zero_point(), FAM, 6, "lambda"
        )
        worst = max(worst, abs(avg))
        ok = ok and abs(avg) < 0.2
    alpha = generic_element([2], 64, 1)
    system = dynsys.qadelic_system(1, 1, (alpha,))
    const = dynsys.empirical_average(
        system, parse_poly("x^2"), f, CharacterObservable.of([[0]]),
        system.zero_point(), FAM, 6, "lambda",
    )
    ok = ok and const == 1.0
    dt = time.monotonic() - t0
    report(4, ok, f"10 fixtures |avg| <= {worst:.4f} (< 0.2), constant exactly 1.0, {dt:.1f}s")


def test_criterion_05_remark_counterexample():
    t0 = time.monotonic()
    alpha = generic_element([2], 64, 1)
    U = OpenBox.real_interval(F(0), F(1, 8))
    V = OpenBox.real_interval(F(1, 2), F(5, 8))
    rep = dynsys.remark_counterexample_check(alpha, U, V, FAM, 6)
    ok = rep["status"] == "pass"

    system = dynsys.remark_system(alpha)
    box = dynsys.OpenBox(
        (
            (1, 0, dynsys.CoordConstraint((F(0), F(1, 8)))),
            (2, 0, dynsys.CoordConstraint((F(1, 2), F(5, 8)))),
        )
    )
    for depth in (2, 3, 4):
        res = dynsys.efs_search(
            system, system.zero_point(), BinomPoly.from_power_basis([0, 0, 1]),
            box, box, depth, FAM, 5,
        )
        ok = ok and res.status == "not_found"
    dt = time.monotonic() - t0
    ok = ok and dt < 60
    report(5, ok, f"|A|={rep['A_size']} at N=6, {rep['pairs_checked']} pairs, 0 violations, "
                  f"efs not_found for depths 2-4, {dt:.1f}s (< 60s)")


def test_criterion_06_phase_algebra():
    t0 = time.monotonic()
    rng = random.Random(5)

    def rand_class():
        if rng.randrange(2):
            return AdeleClassElement.from_real(F(rng.randrange(-12, 13), rng.randrange(1, 10)))
        p = rng.choice([2, 3])
        return AdeleClassElement.from_part(p, F(rng.randrange(1, 20), p ** rng.randrange(0, 3)))

    def rand_q():
        return F(rng.randrange(-8, 9), rng.randrange(1, 8))

    def rand_nonzero_class():
        while True:
            a = rand_class()
            if not a.is_zero():
                return a

    n = 1000
    derivative = symmetry = kernel = leading = 0
    for _ in range(n):
        k = rng.randrange(1, 6)
        # top coefficient nonzero so deg phi = k (leading_coefficient precondition)
        phi = phasepoly.PhasePolynomial(
            CircleValue.of(F(rng.randrange(0, 7), 7)),
            [rand_class() for _ in range(k - 1)] + [rand_nonzero_class()],
        )
        q, t = rand_q(), rand_q()
        d = phasepoly.phase_derivative(phi, q)
        if phasepoly.eval_phase(d, t) == phasepoly.eval_phase(phi, t + q) - phasepoly.eval_phase(phi, t):
            derivative += 1
        kk = min(k, 3)
        qs = [rand_q() for _ in range(kk)]
        perm = list(qs)
        rng.shuffle(perm)
        if phasepoly.multilinearize(phi, kk, qs) == phasepoly.multilinearize(phi, kk, perm):
            symmetry += 1
        low = phasepoly.PhasePolynomial(phi.c, phi.coeffs[:-1])
        full = [rand_q() for _ in range(k)]
        if phasepoly.multilinearize(low, k, full).angle == 0:
            kernel += 1
        if phasepoly.multilinearize(phi, k, full) == phasepoly.leading_coefficient(phi)(*full):
            leading += 1

    chars = 0
    for _ in range(100):
        k, l = rng.randrange(1, 5), rng.randrange(1, 3)
        system = dynsys.qadelic_system(l, k, tuple(rand_class() for _ in range(l)))
        g = CharacterObservable.of(
            [[F(rng.randrange(-3, 4), rng.randrange(1, 3)) for _ in range(l)] for _ in range(k)]
        )
        pt = dynsys.OrbitPoint(tuple(tuple(rand_class() for _ in range(l)) for _ in range(k)))
        dynsys.char_derivative_identity(system, g, rand_q(), pt)
        chars += 1
    dt = time.monotonic() - t0
    ok = derivative == symmetry == kernel == leading == n and chars == 100 and dt < 30
    report(6, ok, f"{derivative}/{n} derivative, {symmetry}/{n} symmetry, {kernel}/{n} kernel, "
                  f"{leading}/{n} leading, {chars}/100 char-derivative, {dt:.1f}s (< 30s)")


def _brute_force_path3_ramsey(cap: int):
    H = ramseycomb.OrderedHypergraph.monotone_path3()
    for n in range(3, cap + 1):
        edges = list(combinations(range(1, n + 1), 2))
        found_avoider = False
        for assignment in product(range(2), repeat=len(edges)):
            coloring = dict(zip(edges, assignment))
            if not any(
                ramseycomb.contains_ordered_copy(coloring, n, H, c) for c in range(2)
            ):
                found_avoider = True
                break
        if not found_avoider:
            return n
    return None


def test_criterion_07_ramsey():
    t0 = time.monotonic()
    H = ramseycomb.OrderedHypergraph.monotone_path3()
    R = ramseycomb.ordered_ramsey_number(H, 2, 8)
    oracle = _brute_force_path3_ramsey(6)
    ok = R == oracle == 5

    rng = random.Random(13)
    passed = 0
    for _ in range(200):
        npts = rng.randrange(2, 5)
        weights = [rng.randrange(1, 7) for _ in range(npts)]
        total = sum(weights)
        space = ramseycomb.FiniteProbabilitySpace.of([F(w, total) for w in weights])
        table = {}
        for xs in product(range(npts), repeat=2):
            c = rng.randrange(0, 13)
            table[xs] = F(c, 12)
        phi1 = lambda xs, t=table: t[xs]
        phi2 = lambda xs, t=table: 1 - t[xs]
        rep = ramseycomb.measure_ramsey_bound_check(space, [phi1, phi2], H, 2)
        if rep["status"] == "pass":
            passed += 1
    dt = time.monotonic() - t0
    ok = ok and passed == 200 and dt < 120
    report(7, ok, f"R_<(path3,2) = {R} = oracle, {passed}/200 bound checks exact, "
                  f"{dt:.1f}s (< 120s)")


def _naive_corners(inst):
    n, Ft = inst.n, inst.F
    total = F(0)
    for x in range(n):
        for y in range(n):
            for t in range(n):
                total += Ft[x][y] * Ft[(x + t) % n][y] * Ft[x][(y + t) % n]
    return total / F(n**3)


def test_criterion_08_corners():
    t0 = time.monotonic()
    rng = random.Random(21)
    matches = 0
    markov_pass = markov_applicable = 0
    for i in range(50):
        n = rng.randrange(2, 13)
        inst = ramseycomb.CornersInstance.random(n, F(1, 2), seed=1000 + i)
        if ramseycomb.corners_count(inst) == _naive_corners(inst):
            matches += 1
        eps = F(1, 2)
        if inst.mean() >= eps:
            markov_applicable += 1
            if ramseycomb.markov_level_set(inst, eps)["status"] == "pass":
                markov_pass += 1
    dt = time.monotonic() - t0
    ok = matches == 50 and markov_pass == markov_applicable and dt < 60
    report(8, ok, f"{matches}/50 oracle matches, markov {markov_pass}/{markov_applicable}, "
                  f"{dt:.1f}s (< 60s)")


def test_criterion_09_greedy_builder():
    t0 = time.monotonic()
    rng = random.Random(7)
    members = set()
    pos = 1
    while pos < 10**5:
        members.add(pos)
        pos += rng.randrange(1, 6)
    sets = [
        ("even", lambda n: n % 2 == 0, 1),
        ("mod3", lambda n: n % 3 in (0, 1), 2),
        ("syndetic", lambda n: n in members, 5),
    ]
    ok = True
    summary = []
    for name, A, k in sets:
        res = ramseycomb.greedy_sumset_builder(A, k, 4, 10**5)
        good = res.status == "found" and all(
            A(res.B[i] ** 2 + res.B[j] + res.shift)
            for i in range(4)
            for j in range(i + 1, 4)
        )
        ok = ok and good
        summary.append(f"{name}:{res.status}")
    dt = time.monotonic() - t0
    ok = ok and dt < 30
    report(9, ok, f"{', '.join(summary)}; all inclusions re-verified, {dt:.1f}s (< 30s)")


def test_criterion_10_density():
    t0 = time.monotonic()
    ok = True
    gaps = []
    for delta in (F(1, 8), F(1, 4), F(3, 8)):
        d = folner.density(return_time_set(delta), FAM, 6)
        gaps.append(abs(d - 2 * delta))
        ok = ok and abs(d - 2 * delta) <= F(2, 6)
    defects = [folner.folner_defect(FAM, N, 1) for N in range(2, 7)]
    ok = ok and all(a >= b for a, b in zip(defects, defects[1:]))
    dt = time.monotonic() - t0
    report(10, ok, f"max |density - 2d| = {max(gaps)} (<= 1/3), defect non-increasing "
                   f"{[str(d) for d in defects]}, {dt:.1f}s")


def test_criterion_11_cli_determinism(tmp_path):
    t0 = time.monotonic()
    fixtures = [
        ["color-check", "--max", "60"],
        ["bergelson", "--bound", "200"],
        ["weyl", "--N", "3:4", "--seed", "2", "--format", "csv"],
        ["rotation-avg", "--N", "3", "--count", "3", "--tol", "1"],
        ["efs", "--system", "rotation", "--N", "3", "--depth", "2"],
        ["remark-check", "--N", "4"],
        ["density", "--N", "3:5", "--format", "csv"],
        ["defect", "--N", "2:5", "--format", "csv"],
        ["build-sumset", "--set", "random-syndetic", "--seed", "3", "--m", "3", "--horizon", "2000"],
        ["delta-find", "--A", "1,2,3", "--size", "3"],
        ["ramsey", "--H", "path3", "--expect", "5"],
        ["measure-ramsey", "--instances", "15", "--seed", "4"],
        ["corners", "--n", "8", "--eps", "1/2", "--seed", "7"],
        ["phase-check", "--instances", "30", "--seed", "6"],
        ["derived-seq", "--P", "x^3"],
        ["vdc-report", "--N", "3", "--R", "2"],
    ]
    ok = True
    for i, cmd in enumerate(fixtures):
        outs = []
        for run in range(2):
            path = tmp_path / f"f{i}_{run}"
            code = main(cmd + ["--out", str(path)])
            ok = ok and code == 0
            outs.append(path.read_bytes())
        ok = ok and outs[0] == outs[1] and len(outs[0]) > 0
    dt = time.monotonic() - t0
    report(11, ok, f"{len(fixtures)} CLI fixtures byte-identical across repeated runs, {dt:.1f}s")
