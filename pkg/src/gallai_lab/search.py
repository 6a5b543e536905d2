"""Exhaustive search for colorings avoiding forbidden structures.

Colorings are grown one vertex at a time (the new vertex's color vector to
all earlier vertices), pruning as soon as a forbidden structure appears;
partial colorings are kept only in canonical form (lexicographically minimal
color word under vertex relabeling) so each isomorphism class is expanded
once.  The search is split into one branch per color of the first edge;
budgets are divided over branches up front, so thread count never changes
which nodes are counted and reports come out identical either way.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .coloring import ColoredCompleteGraph
from .constructions import (
    build_extremal_odd,
    build_ramsey_cycle_lower,
    ramsey_formula,
    random_gallai,
)
from .detectors import (
    Witness,
    _exact_cycle_from,
    find_mono_cycle,
    find_rainbow_triangle,
)
from .errors import BadParameters, OverLimit

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget_exceeded"

DEFAULT_LIMITS = {1: 64, 2: 9, 3: 7}
FALLBACK_LIMIT = 6
CANONICAL_LEVEL_CAP = 8
MAX_PROBE_ORDER = 64


def feasibility_limit(k: int, overrides: dict[int, int] | None = None) -> int:
    if overrides and k in overrides:
        return overrides[k]
    return DEFAULT_LIMITS.get(k, FALLBACK_LIMIT)


def parse_limit_overrides(text: str) -> dict[int, int]:
    """Parse '2:10,3:8' style limit overrides (as in GALLAI_LAB_LIMITS)."""
    out: dict[int, int] = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        k, _, n = piece.partition(":")
        try:
            out[int(k)] = int(n)
        except ValueError:
            raise ValueError(f"bad limit override {piece!r}, expected 'k:n'") from None
    return out


@dataclass(frozen=True)
class AvoidanceProblem:
    """What to avoid: per-color cycle orders, optionally rainbow triangles."""

    n: int
    k: int
    forbidden: tuple[int, ...]
    rainbow_triangle_forbidden: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise BadParameters(f"order {self.n} must be at least 1")
        if self.k < 1:
            raise BadParameters(f"palette {self.k} must be at least 1")
        if len(self.forbidden) != self.k:
            raise BadParameters(
                f"{len(self.forbidden)} forbidden cycle orders for palette {self.k}"
            )
        for m in self.forbidden:
            if m < 3:
                raise BadParameters(f"forbidden cycle order {m} must be at least 3")

    @classmethod
    def uniform(cls, n: int, k: int, m: int, rainbow: bool = False) -> "AvoidanceProblem":
        return cls(n, k, (m,) * k, rainbow)


@dataclass
class SearchStats:
    nodes: int = 0
    canonical: int = 0
    rejected: int = 0
    ms: int = 0

    def absorb(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.canonical += other.canonical
        self.rejected += other.rejected
        self.ms += other.ms

    def to_json_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "canonical": self.canonical,
            "rejected": self.rejected,
            "ms": self.ms,
        }


@dataclass
class SearchOutcome:
    status: str
    coloring: ColoredCompleteGraph | None
    stats: SearchStats


class _BudgetHit(Exception):
    pass


def _is_min_image(colors: list[list[int]], ell: int) -> bool:
    """True when no vertex relabeling yields a smaller color word.

    The word reads the colors of (label i, label r) for r = 1..ell-1,
    i = 0..r-1; under the identity labeling entry (r, i) is colors[i][r].
    Backtracks over images, pruning branches whose prefix is already larger.
    """
    img = [0] * ell
    used = [False] * ell

    def place(r: int) -> bool:
        # False means a strictly smaller word was found
        for cand in range(ell):
            if used[cand]:
                continue
            crow = colors[cand]
            verdict = 0
            for i in range(r):
                a = crow[img[i]]
                b = colors[i][r]
                if a != b:
                    verdict = -1 if a < b else 1
                    break
            if verdict == 1:
                continue
            if verdict == -1:
                return False
            if r + 1 < ell:
                used[cand] = True
                img[r] = cand
                deeper = place(r + 1)
                used[cand] = False
                if not deeper:
                    return False
        return True

    for first in range(ell):
        img[0] = first
        used[first] = True
        ok = place(1) if ell > 1 else True
        used[first] = False
        if not ok:
            return False
    return True


def _canonical_key(colors: list[list[int]], ell: int) -> tuple[int, ...]:
    """The minimal color word over all relabelings (seen-set key above the cap)."""
    best: list[int] | None = None
    img = [0] * ell
    used = [False] * ell

    def place(r: int, word: list[int]) -> None:
        nonlocal best
        if r == ell:
            if best is None or word < best:
                best = list(word)
            return
        for cand in range(ell):
            if used[cand]:
                continue
            crow = colors[cand]
            grown = word + [crow[img[i]] for i in range(r)]
            if best is not None and grown > best[: len(grown)]:
                continue
            used[cand] = True
            img[r] = cand
            place(r + 1, grown)
            used[cand] = False

    place(0, [])
    assert best is not None
    return tuple(best)


class _BranchRun:
    """Enumeration restricted to one color of the edge {0,1}.

    A canonical coloring's word starts with its minimal edge color, so the
    branches partition all canonical colorings and never overlap.
    """

    def __init__(self, problem: AvoidanceProblem, first_color: int, budget: int | None,
                 collect: list[ColoredCompleteGraph] | None = None):
        self.p = problem
        n, k = problem.n, problem.k
        self.colors = [[0] * n for _ in range(n)]
        self.masks = [[0] * n for _ in range(k + 1)]
        self.first = first_color
        self.budget = budget
        self.collect = collect
        self.nodes = 0
        self.canonical = 0
        self.rejected = 0
        self.found: ColoredCompleteGraph | None = None
        self.exceeded = False
        self.seen: dict[int, set[tuple[int, ...]]] = {}

    def run(self) -> "_BranchRun":
        c = self.first
        self.colors[0][1] = self.colors[1][0] = c
        self.masks[c][0] |= 2
        self.masks[c][1] |= 1
        try:
            self._count_node()
            self.canonical += 1
            self._extend(2)
        except _BudgetHit:
            self.exceeded = True
        return self

    def _count_node(self) -> None:
        if self.budget is not None and self.nodes >= self.budget:
            raise _BudgetHit
        self.nodes += 1

    def _done(self) -> bool:
        return self.found is not None and self.collect is None

    def _to_graph(self) -> ColoredCompleteGraph:
        n = self.p.n
        flat = []
        for v in range(1, n):
            flat.extend(self.colors[v][:v])
        return ColoredCompleteGraph(n, self.p.k, flat)

    def _extend(self, v: int) -> None:
        if v == self.p.n:
            g = self._to_graph()
            if self.found is None:
                self.found = g
            if self.collect is not None:
                self.collect.append(g)
            return
        self._assign(v, 0)

    def _assign(self, v: int, u: int) -> None:
        if self._done():
            return
        if u == v:
            self._complete_vertex(v)
            return
        colors = self.colors
        masks = self.masks
        bu = 1 << u
        bv = 1 << v
        for c in range(1, self.p.k + 1):
            if not self._edge_ok(u, v, c):
                continue
            colors[u][v] = colors[v][u] = c
            masks[c][u] |= bv
            masks[c][v] |= bu
            self._assign(v, u + 1)
            masks[c][u] ^= bv
            masks[c][v] ^= bu
            colors[u][v] = colors[v][u] = 0
            if self._done():
                return

    def _edge_ok(self, u: int, v: int, c: int) -> bool:
        if self.p.forbidden[c - 1] == 3 and (self.masks[c][u] & self.masks[c][v]):
            return False
        if self.p.rainbow_triangle_forbidden and self.p.k >= 3:
            cu = self.colors[u]
            cv = self.colors[v]
            for w in range(u):
                c1 = cu[w]
                c2 = cv[w]
                if c1 != c2 and c1 != c and c2 != c:
                    return False
        return True

    def _complete_vertex(self, v: int) -> None:
        self._count_node()
        universe = (1 << v) - 1
        for c in range(1, self.p.k + 1):
            m = self.p.forbidden[c - 1]
            row = self.masks[c][v]
            if row.bit_count() < 2 or m > v + 1:
                continue
            if _exact_cycle_from(self.masks[c], v, m, universe) is not None:
                return
        level = v + 1
        if level == self.p.n and self.collect is None:
            # decision mode: any completion certifies "found", canonicity is moot
            self.canonical += 1
            self._extend(level)
            return
        if level <= CANONICAL_LEVEL_CAP:
            ok = _is_min_image(self.colors, level)
        else:
            key = _canonical_key(self.colors, level)
            if key[0] != self.first:
                # the class belongs to the branch of its minimal edge color
                ok = False
            else:
                bucket = self.seen.setdefault(level, set())
                ok = key not in bucket
                if ok:
                    bucket.add(key)
        if not ok:
            self.rejected += 1
            return
        self.canonical += 1
        self._extend(level)


def _split_budget(budget: int | None, parts: int) -> list[int | None]:
    if budget is None:
        return [None] * parts
    share = budget // parts
    extra = budget % parts
    return [share + (1 if i < extra else 0) for i in range(parts)]


def exists_avoiding(
    problem: AvoidanceProblem,
    budget: int | None = None,
    threads: int = 1,
    limit_overrides: dict[int, int] | None = None,
) -> SearchOutcome:
    """Decide whether any coloring of K_n avoids everything the problem forbids.

    Returns found (with a coloring), exhausted, or budget_exceeded.  The
    budget is a hard cap on expanded nodes, split over first-edge branches
    up front, so results do not depend on the thread count.
    """
    limit = feasibility_limit(problem.k, limit_overrides)
    if problem.n > limit:
        raise OverLimit(problem.n, problem.k, limit)
    t0 = time.monotonic()
    stats = SearchStats()
    if problem.n == 1:
        stats.nodes = stats.canonical = 1
        stats.ms = int((time.monotonic() - t0) * 1000)
        return SearchOutcome(FOUND, ColoredCompleteGraph(1, problem.k, []), stats)
    budgets = _split_budget(budget, problem.k)
    runs = [_BranchRun(problem, c, budgets[c - 1]) for c in range(1, problem.k + 1)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda r: r.run(), runs))
    else:
        for r in runs:
            r.run()
            if r.found is not None:
                break
    found = None
    exceeded = False
    for r in runs:
        stats.nodes += r.nodes
        stats.canonical += r.canonical
        stats.rejected += r.rejected
        if r.found is not None:
            found = r.found
            break
        if r.exceeded:
            exceeded = True
    stats.ms = int((time.monotonic() - t0) * 1000)
    if found is not None:
        return SearchOutcome(FOUND, found, stats)
    if exceeded:
        return SearchOutcome(BUDGET_EXCEEDED, None, stats)
    return SearchOutcome(EXHAUSTED, None, stats)


def enumerate_avoiding(
    problem: AvoidanceProblem, limit_overrides: dict[int, int] | None = None
) -> list[ColoredCompleteGraph]:
    """All canonical colorings avoiding the forbidden structures (test scale)."""
    limit = feasibility_limit(problem.k, limit_overrides)
    if problem.n > limit:
        raise OverLimit(problem.n, problem.k, limit)
    if problem.n == 1:
        return [ColoredCompleteGraph(1, problem.k, [])]
    out: list[ColoredCompleteGraph] = []
    for c in range(1, problem.k + 1):
        run = _BranchRun(problem, c, None, collect=out)
        run.run()
    return out


# -- threshold searches ---------------------------------------------------------


@dataclass
class SearchReport:
    family: str
    params: dict
    value: int | None
    lower: int
    upper: int | None
    witness: ColoredCompleteGraph | None
    stats: SearchStats

    def to_json_dict(self, witness_file: str | None = None) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "witness_file": witness_file,
            "stats": self.stats.to_json_dict(),
        }

    def to_json(self, witness_file: str | None = None) -> str:
        return json.dumps(self.to_json_dict(witness_file), indent=2) + "\n"

    @classmethod
    def from_json_dict(
        cls, d: dict, witness: ColoredCompleteGraph | None = None
    ) -> "SearchReport":
        return cls(
            family=d["family"],
            params=d["params"],
            value=d["value"],
            lower=d["lower"],
            upper=d["upper"],
            witness=witness,
            stats=SearchStats(**d.get("stats", {})),
        )


def reports_equivalent(a: SearchReport, b: SearchReport) -> bool:
    """Equality up to wall time, which is the one nondeterministic field."""
    return (
        a.family == b.family
        and a.params == b.params
        and a.value == b.value
        and a.lower == b.lower
        and a.upper == b.upper
        and a.witness == b.witness
        and (a.stats.nodes, a.stats.canonical, a.stats.rejected)
        == (b.stats.nodes, b.stats.canonical, b.stats.rejected)
    )


def _sweep_clean(g: ColoredCompleteGraph, forbidden: Sequence[int], rainbow: bool) -> bool:
    if rainbow and find_rainbow_triangle(g) is not None:
        return False
    for c in range(1, g.k + 1):
        if find_mono_cycle(g, c, forbidden[c - 1]) is not None:
            return False
    return True


def _probe_random_lower(
    k: int,
    forbidden: tuple[int, ...],
    rainbow: bool,
    start_order: int,
    seed: int,
    tries: int = 32,
) -> ColoredCompleteGraph | None:
    """Push the lower-bound witness upward with seeded random colorings."""
    rng = random.Random(seed)
    best = None
    order = start_order
    while order <= MAX_PROBE_ORDER:
        hit = None
        for _ in range(tries):
            if rainbow:
                g = random_gallai(order, k, rng.randrange(2**32))
            else:
                flat = [rng.randint(1, k) for _ in range(order * (order - 1) // 2)]
                g = ColoredCompleteGraph(order, k, flat)
            if _sweep_clean(g, forbidden, rainbow):
                hit = g
                break
        if hit is None:
            break
        best = hit
        order += 1
    return best


def _run_threshold(
    family: str,
    params: dict,
    k: int,
    forbidden: tuple[int, ...],
    rainbow: bool,
    n_max: int | None,
    budget: int | None,
    threads: int,
    seed: int,
    limit_overrides: dict[int, int] | None,
    construction: ColoredCompleteGraph | None,
) -> SearchReport:
    limit = feasibility_limit(k, limit_overrides)
    cap = limit if n_max is None else min(n_max, limit)
    stats = SearchStats()
    last_found: ColoredCompleteGraph | None = None
    value: int | None = None
    inconclusive = False
    for order in range(1, cap + 1):
        problem = AvoidanceProblem(order, k, forbidden, rainbow)
        out = exists_avoiding(problem, budget=budget, threads=threads)
        stats.absorb(out.stats)
        if out.status == FOUND:
            last_found = out.coloring
            continue
        if out.status == EXHAUSTED:
            value = order
            break
        inconclusive = True
        break
    if value is not None:
        return SearchReport(family, params, value, value, value, last_found, stats)
    # partial: keep the largest verified witness we can get our hands on
    witness = last_found
    if construction is not None and (witness is None or construction.n > witness.n):
        witness = construction
    if not inconclusive:
        probe_from = (witness.n if witness is not None else 0) + 1
        probed = _probe_random_lower(k, forbidden, rainbow, probe_from, seed)
        if probed is not None:
            witness = probed
    lower = (witness.n if witness is not None else 0) + 1
    return SearchReport(family, params, None, lower, None, witness, stats)


def search_ramsey(
    m: int,
    n: int,
    n_max: int | None = None,
    budget: int | None = None,
    threads: int = 1,
    seed: int = 0,
    limit_overrides: dict[int, int] | None = None,
) -> SearchReport:
    """The least order whose 2-colorings all contain a C_m in color 1 or C_n in color 2."""
    if m < 3 or n < 3:
        raise BadParameters(f"cycle orders m={m}, n={n} must be at least 3")
    construction = None
    if m % 2 == 1 and 5 <= m <= n and 2 * n - 2 <= 64:
        construction, _ = build_ramsey_cycle_lower(m, n)
    params = {"m": m, "n": n, "n_max": n_max, "seed": seed}
    report = _run_threshold(
        "Ramsey", params, 2, (m, n), False, n_max, budget, threads, seed,
        limit_overrides, construction,
    )
    formula = ramsey_formula(m, n)
    if report.value is not None and formula is not None and report.value != formula:
        raise AssertionError(
            f"search value {report.value} contradicts the closed form {formula} for R(C_{m}, C_{n})"
        )
    return report


def search_gallai_ramsey(
    m: int,
    k: int,
    n_max: int | None = None,
    budget: int | None = None,
    threads: int = 1,
    seed: int = 0,
    limit_overrides: dict[int, int] | None = None,
) -> SearchReport:
    """The least order forcing, in every rainbow-triangle-free k-coloring, a mono C_m.

    With k <= 2 every coloring is trivially rainbow-triangle-free, so this is
    the plain k-color cycle Ramsey question.  Beyond the exhaustive limit the
    report carries a lower bound backed by a verified witness (the doubled
    extremal coloring when m is odd, else the best probe).
    """
    if m < 3:
        raise BadParameters(f"cycle order m={m} must be at least 3")
    if k < 1:
        raise BadParameters(f"color count k={k} must be at least 1")
    construction = None
    if m % 2 == 1 and m >= 5:
        ell = (m - 1) // 2
        if ell * 2**k <= 64:
            construction, _ = build_extremal_odd(ell, k)
    params = {"m": m, "k": k, "n_max": n_max, "seed": seed}
    return _run_threshold(
        "GallaiRamsey", params, k, (m,) * k, k >= 3, n_max, budget, threads, seed,
        limit_overrides, construction,
    )


# -- certificates ---------------------------------------------------------------


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    reason: str | None = None
    witness: Witness | None = None


def verify_certificate(report: SearchReport) -> CertificateCheck:
    """Recheck a report's arithmetic and witness with the detectors.

    Never re-runs the exhaustion; an exact value is taken on faith from the
    search and only the claims a witness can certify are recomputed.
    """
    if report.family == "Ramsey":
        k = 2
        forbidden = (report.params["m"], report.params["n"])
        rainbow = False
    elif report.family == "GallaiRamsey":
        k = report.params["k"]
        forbidden = (report.params["m"],) * k
        rainbow = k >= 3
    else:
        return CertificateCheck(False, f"unknown family {report.family!r}")
    if report.value is not None:
        if report.lower != report.value or report.upper != report.value:
            return CertificateCheck(False, "exact value disagrees with its bounds")
        expected = report.value - 1
    else:
        if report.upper is not None:
            return CertificateCheck(False, "partial report carries an upper bound")
        expected = report.lower - 1
    g = report.witness
    if g is None:
        return CertificateCheck(False, "no witness coloring attached")
    if g.n != expected:
        return CertificateCheck(False, f"witness order {g.n}, expected {expected}")
    if g.k != k:
        return CertificateCheck(False, f"witness palette {g.k}, expected {k}")
    if rainbow:
        w = find_rainbow_triangle(g)
        if w is not None:
            return CertificateCheck(False, "witness contains a rainbow triangle", w)
    for c in range(1, k + 1):
        w = find_mono_cycle(g, c, forbidden[c - 1])
        if w is not None:
            return CertificateCheck(
                False, f"witness contains a monochromatic C_{forbidden[c - 1]} in color {c}", w
            )
    return CertificateCheck(True)
