import random
from fractions import Fraction as F
from itertools import combinations, product

import pytest

from sumset_lab.errors import BudgetExceeded, MeanTooSmall, PartitionOfUnityViolated
from sumset_lab.ramseycomb import (
    ABOVE_CAP,
    CornersInstance,
    FiniteProbabilitySpace,
    OrderedHypergraph,
    contains_ordered_copy,
    corners_count,
    delta_set_search,
    greedy_sumset_builder,
    markov_level_set,
    measure_ramsey_bound_check,
    measure_ramsey_lhs,
    ordered_ramsey_number,
)

rng = random.Random(31)
PATH3 = OrderedHypergraph.monotone_path3()


def complete_coloring(n, l, fn):
    return {e: fn(e) for e in combinations(range(1, n + 1), l)}


def test_contains_ordered_copy_examples():
    single = OrderedHypergraph.of(2, 2, [(1, 2)])
    col = complete_coloring(4, 2, lambda e: (e[0] + e[1]) % 2)
    assert contains_ordered_copy(col, 4, single, 0)
    assert contains_ordered_copy(col, 4, single, 1)

    # n = m: only the identity embedding
    tri = OrderedHypergraph.of(3, 2, [(1, 2), (2, 3)])
    col3 = {(1, 2): 0, (1, 3): 1, (2, 3): 0}
    assert contains_ordered_copy(col3, 3, tri, 0)
    assert not contains_ordered_copy(col3, 3, tri, 1)

    # fixture on K4: color by whether the edge contains vertex 1
    col4 = complete_coloring(4, 2, lambda e: 1 if 1 in e else 0)
    # any increasing path i<j<k avoiding vertex 1 is color 0: (2,3),(3,4)
    assert contains_ordered_copy(col4, 4, PATH3, 0)
    # color-1 edges all share vertex 1, so no increasing 2-edge path: needs {1,j},{j,k}
    assert not contains_ordered_copy(col4, 4, PATH3, 1)


def brute_force_ramsey(H, r, cap):
    """Independent oracle: enumerate all colorings with no pruning."""
    for n in range(H.m, cap + 1):
        edges = list(combinations(range(1, n + 1), H.l))
        all_hit = True
        for assignment in product(range(r), repeat=len(edges)):
            coloring = dict(zip(edges, assignment))
            if not any(contains_ordered_copy(coloring, n, H, c) for c in range(r)):
                all_hit = False
                break
        if all_hit:
            return n
    return ABOVE_CAP


def test_ordered_ramsey_examples():
    single2 = OrderedHypergraph.of(2, 2, [(1, 2)])
    assert ordered_ramsey_number(single2, 2, 8) == 2
    single3 = OrderedHypergraph.of(3, 3, [(1, 2, 3)])
    assert ordered_ramsey_number(single3, 2, 8) == 3
    assert ordered_ramsey_number(PATH3, 2, 8) == 5
    assert ordered_ramsey_number(OrderedHypergraph.efs_pattern(2), 2, 8) == 5


def test_ordered_ramsey_vs_brute_force():
    assert brute_force_ramsey(PATH3, 2, 6) == 5
    assert ordered_ramsey_number(PATH3, 2, 6) == 5


def test_ordered_ramsey_matches_classical_triangle():
    K3 = OrderedHypergraph.of(3, 2, [(1, 2), (1, 3), (2, 3)])
    assert ordered_ramsey_number(K3, 2, 8) == 6  # R(3,3) = 6


def test_ordered_ramsey_above_cap_and_budget():
    K3 = OrderedHypergraph.of(3, 2, [(1, 2), (1, 3), (2, 3)])
    assert ordered_ramsey_number(K3, 2, 5) == ABOVE_CAP
    with pytest.raises(BudgetExceeded):
        ordered_ramsey_number(PATH3, 2, 9)
    with pytest.raises(BudgetExceeded):
        ordered_ramsey_number(PATH3, 4, 8)


def test_measure_ramsey_lhs_examples():
    sp = FiniteProbabilitySpace.uniform(3)
    assert measure_ramsey_lhs(sp, [lambda xs: F(1)], PATH3) == 1
    empty = OrderedHypergraph.of(2, 2, [])
    assert measure_ramsey_lhs(sp, [lambda xs: F(1)], empty) == 1  # empty product

    sp2 = FiniteProbabilitySpace.uniform(2)
    phi1 = lambda xs: F(1) if xs[0] == 0 else F(0)
    phi2 = lambda xs: F(1) - phi1(xs)
    # direct summation over the 8 triples: split by first coordinate
    assert measure_ramsey_lhs(sp2, [phi1, phi2], PATH3) == F(1, 2)


def test_measure_ramsey_partition_violation():
    sp = FiniteProbabilitySpace.uniform(2)
    with pytest.raises(PartitionOfUnityViolated):
        measure_ramsey_lhs(sp, [lambda xs: F(1, 3)], PATH3)


def test_measure_ramsey_relabeling_invariance():
    sp = FiniteProbabilitySpace.uniform(3)
    table = {}
    for xs in product(range(3), repeat=2):
        v = F(rng.randrange(0, 13), 12)
        table[xs] = v
    phi1 = lambda xs: table[xs]
    phi2 = lambda xs: 1 - table[xs]
    base = measure_ramsey_lhs(sp, [phi1, phi2], PATH3)
    perm = [2, 0, 1]
    phi1p = lambda xs: table[tuple(perm[x] for x in xs)]
    phi2p = lambda xs: 1 - phi1p(xs)
    assert measure_ramsey_lhs(sp, [phi1p, phi2p], PATH3) == base


def test_measure_ramsey_bound_check():
    sp = FiniteProbabilitySpace.uniform(2)
    rep = measure_ramsey_bound_check(sp, [lambda xs: F(1)], PATH3, 1)
    assert rep["status"] == "pass" and rep["lhs"] == 1

    # adversarial: all mass on one color still passes
    phi1 = lambda xs: F(1)
    phi2 = lambda xs: F(0)
    rep = measure_ramsey_bound_check(sp, [phi1, phi2], PATH3, 2)
    assert rep["status"] == "pass"

    K3 = OrderedHypergraph.of(3, 2, [(1, 2), (1, 3), (2, 3)])
    rep = measure_ramsey_bound_check(sp, [phi1, phi2], K3, 2, cap=5)
    assert rep["status"] == "no_assertion" and rep["ramsey_number"] == ABOVE_CAP


def test_corners_examples():
    n = 5
    ones = CornersInstance.of([[1] * n for _ in range(n)])
    assert corners_count(ones) == 1
    zeros = CornersInstance.of([[0] * n for _ in range(n)])
    assert corners_count(zeros) == 0
    single = CornersInstance.of([[1 if (i, j) == (2, 3) else 0 for j in range(n)] for i in range(n)])
    assert corners_count(single) == F(1, n**3)


def naive_corners(inst):
    n, Ft = inst.n, inst.F
    total = F(0)
    for x in range(n):
        for y in range(n):
            for t in range(n):
                total += Ft[x][y] * Ft[(x + t) % n][y] * Ft[x][(y + t) % n]
    return total / F(n**3)


def test_corners_vs_naive_oracle():
    for seed in range(8):
        n = rng.randrange(2, 9)
        inst = CornersInstance.random(n, F(1, 2), seed)
        assert corners_count(inst) == naive_corners(inst)


def test_corners_t0_lower_bound():
    for seed in range(5):
        inst = CornersInstance.random(6, F(2, 3), seed)
        t0_term = sum(x**3 for row in inst.F for x in row) / F(6**3)
        assert corners_count(inst) >= t0_term


def test_markov_level_set():
    n = 6
    eps = F(1, 2)
    flat = CornersInstance.of([[eps] * n for _ in range(n)])
    rep = markov_level_set(flat, eps)
    assert rep["level_set_density"] == 1 and rep["status"] == "pass"

    for seed in range(6):
        inst = CornersInstance.random(8, F(3, 4), seed)
        if inst.mean() >= eps:
            assert markov_level_set(inst, eps)["status"] == "pass"

    low = CornersInstance.of([[F(1, 8)] * n for _ in range(n)])
    with pytest.raises(MeanTooSmall):
        markov_level_set(low, eps)


def test_greedy_sumset_builder_examples():
    res = greedy_sumset_builder(lambda n: n % 2 == 0, 1, 3, 4000)
    assert res.status == "found"
    for i in range(len(res.B)):
        for j in range(i + 1, len(res.B)):
            assert (res.B[i] ** 2 + res.B[j] + res.shift) % 2 == 0

    res = greedy_sumset_builder(lambda n: True, 0, 4, 1000)
    assert res.B == (1, 2, 3, 4) and res.shift == 0

    res = greedy_sumset_builder(lambda n: n < 5, 1, 3, 1000)
    assert res.status == "exhausted"


def test_greedy_sumset_builder_random_syndetic():
    members = set()
    pos = 1
    r = random.Random(7)
    while pos < 10**5:
        members.add(pos)
        pos += r.randrange(1, 6)
    res = greedy_sumset_builder(lambda n: n in members, 5, 4, 10**5)
    assert res.status == "found"
    for i in range(len(res.B)):
        for j in range(i + 1, len(res.B)):
            assert res.B[i] ** 2 + res.B[j] + res.shift in members


def test_hypergraph_json_round_trip():
    doc = {"m": 3, "l": 2, "edges": [[1, 2], [2, 3]]}
    H = OrderedHypergraph.from_json(doc)
    assert H == PATH3
    assert H.to_json() == doc
    with pytest.raises(ValueError):
        OrderedHypergraph.of(3, 2, [(1, 2), (1, 2)])
    with pytest.raises(ValueError):
        OrderedHypergraph.of(3, 2, [(1, 4)])


def test_delta_set_search_examples():
    out = delta_set_search({1, 2, 3}, 3, grid=[0, 1, 2, 3])
    assert out == (0, 1, 2)  # frozen from our DFS order; differences {1, 2} inside A
    diffs = {out[j] - out[i] for i in range(3) for j in range(i + 1, 3)}
    assert diffs <= {F(1), F(2), F(3)}

    assert delta_set_search({F(1)}, 3) is None
    assert delta_set_search({F(7, 3)}, 2) == (0, F(7, 3))

    out = delta_set_search({F(1, 2), F(1), F(3, 2)}, 3)
    assert out is not None
    assert all(out[j] - out[i] in {F(1, 2), F(1), F(3, 2)} for i in range(3) for j in range(i + 1, 3))
