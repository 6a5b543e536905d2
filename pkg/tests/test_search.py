"""Search engine: completeness, determinism, budgets, limits, certificates."""

from __future__ import annotations

import itertools
import math
import random

import pytest

from gallai_lab.coloring import ColoredCompleteGraph
from gallai_lab.detectors import find_mono_cycle, find_rainbow_triangle
from gallai_lab.errors import BadParameters, OverLimit
from gallai_lab.search import (
    BUDGET_EXCEEDED,
    EXHAUSTED,
    FOUND,
    AvoidanceProblem,
    SearchReport,
    SearchStats,
    enumerate_avoiding,
    exists_avoiding,
    feasibility_limit,
    parse_limit_overrides,
    reports_equivalent,
    search_gallai_ramsey,
    search_ramsey,
    verify_certificate,
)

from oracles import automorphism_count, random_coloring


# -- enumeration completeness -------------------------------------------------------


def _orbit_sum(colorings) -> int:
    total = 0
    for g in colorings:
        total += math.factorial(g.n) // automorphism_count(g)
    return total


def test_enumeration_covers_every_labeled_coloring():
    # a forbidden length above n constrains nothing, so the canonical
    # representatives must tile the full k^C(n,2) space by orbit size
    for n, k in [(3, 2), (4, 2), (5, 2), (4, 3), (6, 2)]:
        reps = enumerate_avoiding(AvoidanceProblem.uniform(n, k, n + 1))
        assert _orbit_sum(reps) == k ** (n * (n - 1) // 2)
        words = {g.edge_colors() for g in reps}
        assert len(words) == len(reps), "duplicate canonical representative"


def test_seen_set_regime_counts_like_min_image(monkeypatch):
    # forcing the hash fallback on tiny orders must not change what is kept:
    # each isomorphism class still appears exactly once, in the branch of its
    # minimal edge color
    import gallai_lab.search as search_mod

    monkeypatch.setattr(search_mod, "CANONICAL_LEVEL_CAP", 2)

    def key_of(g):
        mat = [[0] * g.n for _ in range(g.n)]
        for u in range(g.n):
            for v in range(u + 1, g.n):
                mat[u][v] = mat[v][u] = g.color_of(u, v)
        return search_mod._canonical_key(mat, g.n)

    for n, k in [(4, 2), (5, 2), (4, 3)]:
        reps = enumerate_avoiding(AvoidanceProblem.uniform(n, k, n + 1))
        assert _orbit_sum(reps) == k ** (n * (n - 1) // 2)
        keys = {key_of(g) for g in reps}
        assert len(keys) == len(reps), "isomorphic duplicates across branches"


def test_enumeration_matches_bruteforce_filter_with_rainbow():
    # level-by-level filtering must agree with filtering all labelings at once
    n, k, m = 4, 3, 3
    reps = enumerate_avoiding(AvoidanceProblem.uniform(n, k, m, rainbow=True))
    expected = 0
    for flat in itertools.product(range(1, k + 1), repeat=n * (n - 1) // 2):
        g = ColoredCompleteGraph(n, k, list(flat))
        if find_rainbow_triangle(g) is not None:
            continue
        if any(find_mono_cycle(g, c, m) is not None for c in range(1, k + 1)):
            continue
        expected += 1
    assert _orbit_sum(reps) == expected
    for g in reps:
        assert find_rainbow_triangle(g) is None
        for c in range(1, k + 1):
            assert find_mono_cycle(g, c, m) is None


def test_exists_avoiding_mono_triangles():
    # two-color triangle avoidance dies exactly at six vertices
    out5 = exists_avoiding(AvoidanceProblem.uniform(5, 2, 3))
    assert out5.status == FOUND
    g = out5.coloring
    assert find_mono_cycle(g, 1, 3) is None and find_mono_cycle(g, 2, 3) is None
    out6 = exists_avoiding(AvoidanceProblem.uniform(6, 2, 3))
    assert out6.status == EXHAUSTED and out6.coloring is None


def test_exhaustion_is_monotone_in_order():
    # once no avoider exists, adding vertices cannot revive one
    for n in (6, 7, 8):
        out = exists_avoiding(AvoidanceProblem.uniform(n, 2, 3))
        assert out.status == EXHAUSTED
    for n in (7, 8, 9):
        out = exists_avoiding(AvoidanceProblem(n, 2, (4, 5)))
        assert out.status == EXHAUSTED


def test_exists_avoiding_mixed_lengths():
    # C_4 in color 1 / C_5 in color 2: threshold is 7
    assert exists_avoiding(AvoidanceProblem(6, 2, (4, 5))).status == FOUND
    assert exists_avoiding(AvoidanceProblem(7, 2, (4, 5))).status == EXHAUSTED


def test_found_colorings_are_always_clean():
    rng = random.Random(30)
    for _ in range(20):
        n = rng.randint(2, 6)
        k = rng.randint(1, 3)
        m = rng.randint(3, 6)
        rainbow = k >= 3
        out = exists_avoiding(AvoidanceProblem.uniform(n, k, m, rainbow=rainbow))
        if out.status != FOUND:
            continue
        g = out.coloring
        if rainbow:
            assert find_rainbow_triangle(g) is None
        for c in range(1, k + 1):
            assert find_mono_cycle(g, c, m) is None


# -- budget and limits ----------------------------------------------------------------


def test_budget_exceeded_is_reported_not_mistaken_for_exhaustion():
    out = exists_avoiding(AvoidanceProblem.uniform(6, 2, 3), budget=3)
    assert out.status == BUDGET_EXCEEDED
    assert out.coloring is None
    assert out.stats.nodes <= 3


def test_budget_split_keeps_thread_counts_identical():
    p = AvoidanceProblem.uniform(6, 2, 3)
    for budget in (3, 10, 50, None):
        a = exists_avoiding(p, budget=budget, threads=1)
        b = exists_avoiding(p, budget=budget, threads=2)
        assert a.status == b.status
        assert a.coloring == b.coloring
        assert (a.stats.nodes, a.stats.canonical, a.stats.rejected) == (
            b.stats.nodes,
            b.stats.canonical,
            b.stats.rejected,
        )


def test_feasibility_limits():
    assert feasibility_limit(1) == 64
    assert feasibility_limit(2) == 9
    assert feasibility_limit(3) == 7
    assert feasibility_limit(4) == 6
    assert feasibility_limit(9) == 6
    assert feasibility_limit(2, {2: 11}) == 11
    with pytest.raises(OverLimit):
        exists_avoiding(AvoidanceProblem.uniform(10, 2, 5))
    # raising the limit unlocks the order; the search space above the
    # threshold is empty so this stays quick
    out = exists_avoiding(AvoidanceProblem.uniform(10, 2, 5), limit_overrides={2: 10})
    assert out.status == EXHAUSTED


def test_parse_limit_overrides():
    assert parse_limit_overrides("2:10,3:8") == {2: 10, 3: 8}
    assert parse_limit_overrides(" 4 : 7 ") == {4: 7}
    assert parse_limit_overrides("") == {}
    with pytest.raises(ValueError):
        parse_limit_overrides("2=10")


def test_bad_problem_parameters():
    with pytest.raises(BadParameters):
        AvoidanceProblem(5, 2, (3,))
    with pytest.raises(BadParameters):
        AvoidanceProblem(5, 2, (3, 2))
    with pytest.raises(BadParameters):
        search_ramsey(2, 5)
    with pytest.raises(BadParameters):
        search_gallai_ramsey(5, 0)


# -- threshold searches -----------------------------------------------------------------


def test_search_ramsey_small_exact_values():
    assert search_ramsey(3, 3).value == 6
    assert search_ramsey(4, 4).value == 6
    rep = search_ramsey(4, 5)
    assert rep.value == 7 == rep.lower == rep.upper
    assert rep.witness.n == 6
    assert verify_certificate(rep).valid


def test_search_ramsey_partial_prefers_construction_witness():
    rep = search_ramsey(5, 7)  # true value 13, beyond the k=2 limit of 9
    assert rep.value is None and rep.upper is None
    assert rep.lower == 13
    assert rep.witness.n == 12
    assert verify_certificate(rep).valid


def test_search_ramsey_respects_n_max():
    rep = search_ramsey(5, 5, n_max=6)
    assert rep.value is None
    # construction on 8 vertices plus a failed probe at 9 pins the bound
    assert rep.lower == 9
    assert verify_certificate(rep).valid


def test_search_gallai_single_color_is_the_cycle_order():
    for m in (5, 6, 7):
        rep = search_gallai_ramsey(m, 1)
        assert rep.value == m
        assert verify_certificate(rep).valid


def test_search_gallai_two_colors_matches_plain_ramsey():
    a = search_gallai_ramsey(5, 2)
    b = search_ramsey(5, 5)
    assert a.value == b.value == 9


def test_search_reports_are_thread_count_invariant():
    a = search_ramsey(4, 5, threads=1)
    b = search_ramsey(4, 5, threads=2)
    assert reports_equivalent(a, b)
    c = search_gallai_ramsey(5, 3, n_max=7, threads=1)
    d = search_gallai_ramsey(5, 3, n_max=7, threads=2)
    assert reports_equivalent(c, d)


def test_search_gallai_partial_uses_doubled_construction():
    rep = search_gallai_ramsey(7, 3, n_max=6)
    assert rep.value is None
    assert rep.lower == 25  # 3 * 2^3 + 1
    assert rep.witness.n == 24
    assert verify_certificate(rep).valid


def test_formula_cross_check_trips_on_contradiction(monkeypatch):
    import gallai_lab.search as search_mod

    monkeypatch.setattr(search_mod, "ramsey_formula", lambda m, n: 99)
    with pytest.raises(AssertionError):
        search_mod.search_ramsey(4, 4)


# -- report serialization and verification ------------------------------------------------


def test_report_json_round_trip():
    rep = search_ramsey(4, 4)
    d = rep.to_json_dict(witness_file="w.txt")
    assert d["witness_file"] == "w.txt"
    assert set(d["stats"].keys()) == {"nodes", "canonical", "rejected", "ms"}
    again = SearchReport.from_json_dict(d, witness=rep.witness)
    assert reports_equivalent(rep, again)


def test_reports_equivalent_ignores_wall_time_only():
    rep = search_ramsey(3, 3)
    clone = SearchReport.from_json_dict(rep.to_json_dict(), witness=rep.witness)
    clone.stats.ms = rep.stats.ms + 1000
    assert reports_equivalent(rep, clone)
    clone.stats.nodes += 1
    assert not reports_equivalent(rep, clone)


def test_verify_certificate_rejects_tampering():
    rep = search_ramsey(4, 5)
    assert verify_certificate(rep).valid

    bent = SearchReport.from_json_dict(rep.to_json_dict(), witness=rep.witness)
    bent.lower = rep.lower + 1
    assert not verify_certificate(bent).valid

    wrong_witness = SearchReport.from_json_dict(
        rep.to_json_dict(), witness=random_coloring(random.Random(0), 6, 2)
    )
    check = verify_certificate(wrong_witness)
    assert not check.valid and check.witness is not None

    missing = SearchReport.from_json_dict(rep.to_json_dict(), witness=None)
    assert not verify_certificate(missing).valid

    alien = SearchReport.from_json_dict(rep.to_json_dict(), witness=rep.witness)
    alien.family = "Folkman"
    assert not verify_certificate(alien).valid


def test_verify_certificate_checks_partial_shape():
    rep = search_ramsey(5, 7)
    bent = SearchReport.from_json_dict(rep.to_json_dict(), witness=rep.witness)
    bent.upper = 99
    assert not verify_certificate(bent).valid
