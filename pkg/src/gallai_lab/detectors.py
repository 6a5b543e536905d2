"""Substructure detectors that return checkable witnesses.

Every detector is deterministic: ties break toward the lowest-numbered
vertex, and witness vertex lists are canonicalized (cycles start at their
minimum vertex, and the lexicographically smaller orientation wins) so that
equal inputs give byte-equal output.  ``validate_witness`` recomputes each
claim directly on the host graph and is the final word on correctness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .coloring import BitGraph, ColoredCompleteGraph, bits
from .errors import DegreePreconditionFailed, DiracPreconditionFailed

RAINBOW_TRIANGLE = "RainbowTriangle"
MONO_CYCLE = "MonoCycle"
MONO_PATH = "MonoPath"
HAMILTON_CYCLE = "HamiltonCycle"

WITNESS_KINDS = (RAINBOW_TRIANGLE, MONO_CYCLE, MONO_PATH, HAMILTON_CYCLE)


@dataclass(frozen=True)
class Witness:
    """A found substructure: its kind, the color involved (if any), vertices in order."""

    kind: str
    vertices: tuple[int, ...]
    color: int | None = None

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "color": self.color, "vertices": list(self.vertices)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, d: dict) -> "Witness":
        return cls(kind=d["kind"], vertices=tuple(d["vertices"]), color=d["color"])


def canonical_cycle(vs: Sequence[int]) -> tuple[int, ...]:
    """Rotate/reflect a cycle vertex list: minimum vertex first, smaller direction."""
    vs = list(vs)
    i = vs.index(min(vs))
    fwd = vs[i:] + vs[:i]
    bwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, bwd))


def canonical_path(vs: Sequence[int]) -> tuple[int, ...]:
    vs = list(vs)
    return tuple(min(vs, vs[::-1]))


# -- bitset helpers ----------------------------------------------------------


def _nbhd(masks: Sequence[int], group: int) -> int:
    out = 0
    for v in bits(group):
        out |= masks[v]
    return out


def _closure(masks: Sequence[int], seed: int, allowed: int) -> int:
    """Vertices reachable from the seed set by edges staying inside ``allowed``."""
    reach = seed & allowed
    frontier = reach
    while frontier:
        nxt = _nbhd(masks, frontier) & allowed & ~reach
        reach |= nxt
        frontier = nxt
    return reach


# -- exact-length searches ---------------------------------------------------


def _exact_cycle_from(masks: Sequence[int], anchor: int, m: int, universe: int) -> list[int] | None:
    """A cycle of exactly m vertices through ``anchor`` with the others in ``universe``.

    Depth-first over simple paths, pruned by an exact-steps reachability cut:
    from the current endpoint there must be a walk of the remaining length
    through unvisited vertices that lands on a neighbor of the anchor.  The
    cut respects parity, so bipartite classes die at the root for odd m.
    """
    abit = 1 << anchor
    path = [anchor]
    state = {"visited": abit}

    def rec() -> bool:
        last = path[-1]
        d = len(path)
        if d == m:
            return bool(masks[last] & abit)
        avail = universe & ~state["visited"]
        if avail.bit_count() < m - d:
            return False
        y = 1 << last
        for _ in range(m - d):
            y = _nbhd(masks, y) & avail
            if not y:
                return False
        if not (_nbhd(masks, y) & abit):
            return False
        for u in bits(masks[last] & avail):
            path.append(u)
            state["visited"] |= 1 << u
            if rec():
                return True
            path.pop()
            state["visited"] ^= 1 << u
        return False

    return list(path) if rec() else None


def _exact_path_search(masks: Sequence[int], n: int, p: int, universe: int) -> list[int] | None:
    """A simple path of exactly p vertices inside ``universe``, or None."""
    if p < 1 or p > universe.bit_count():
        return None
    if p == 1:
        return [(universe & -universe).bit_length() - 1]
    for s in bits(universe):
        comp = _closure(masks, 1 << s, universe)
        if comp.bit_count() < p:
            continue
        path = [s]
        state = {"visited": 1 << s}

        def rec() -> bool:
            if len(path) == p:
                return True
            last = path[-1]
            avail = universe & ~state["visited"]
            cand = masks[last] & avail
            if not cand:
                return False
            if _closure(masks, cand, avail).bit_count() < p - len(path):
                return False
            for u in bits(cand):
                path.append(u)
                state["visited"] |= 1 << u
                if rec():
                    return True
                path.pop()
                state["visited"] ^= 1 << u
            return False

        if rec():
            return path
    return None


# -- detectors ---------------------------------------------------------------


def find_rainbow_triangle(g: ColoredCompleteGraph) -> Witness | None:
    """First triangle (lex order) whose three edges have three distinct colors."""
    if g.k < 3 or g.n < 3:
        return None
    n = g.n
    full = (1 << n) - 1
    for u in range(n - 2):
        for v in range(u + 1, n - 1):
            c = g.color_of(u, v)
            cand = full & ~((1 << (v + 1)) - 1)
            cand &= ~g.class_mask_row(c, u) & ~g.class_mask_row(c, v)
            for w in bits(cand):
                if g.color_of(u, w) != g.color_of(v, w):
                    return Witness(RAINBOW_TRIANGLE, (u, v, w))
    return None


def find_mono_cycle(g: ColoredCompleteGraph, color: int, m: int) -> Witness | None:
    """A cycle of exactly m vertices inside one color class, or None."""
    if m < 3:
        raise ValueError(f"cycle order {m} must be at least 3")
    if m > g.n:
        return None
    masks = g.class_masks(color)
    full = (1 << g.n) - 1
    for s in range(g.n):
        upper = full & ~((1 << (s + 1)) - 1)
        comp = _closure(masks, 1 << s, upper | (1 << s))
        if comp.bit_count() < m:
            continue
        found = _exact_cycle_from(masks, s, m, upper)
        if found is not None:
            return Witness(MONO_CYCLE, canonical_cycle(found), color)
    return None


def find_mono_path(g: ColoredCompleteGraph, color: int, p: int) -> Witness | None:
    """A path of exactly p vertices inside one color class, or None."""
    if p < 1:
        raise ValueError(f"path order {p} must be at least 1")
    if p > g.n:
        return None
    if p == 1:
        return Witness(MONO_PATH, (0,), color)
    masks = g.class_masks(color)
    found = _exact_path_search(masks, g.n, p, (1 << g.n) - 1)
    if found is None:
        return None
    return Witness(MONO_PATH, canonical_path(found), color)


# -- constructive engines ----------------------------------------------------


def _close_into_cycle(masks: Sequence[int], path: list[int]) -> list[int] | None:
    """Reorder a path whose endpoint neighborhoods lie on it into a cycle.

    Uses the crossing-pair pigeonhole: if deg(first) + deg(last) >= len(path)
    there is an i with first ~ path[i+1] and last ~ path[i]; the two path
    segments then close up.  Returns None only when no crossing exists.
    """
    u = path[0]
    w = path[-1]
    if masks[w] >> u & 1:
        return list(path)
    mu = masks[u]
    mw = masks[w]
    for i in range(1, len(path) - 1):
        if (mu >> path[i + 1] & 1) and (mw >> path[i] & 1):
            return path[: i + 1] + path[i + 1 :][::-1]
    return None


def _grow_path_rotation(masks: Sequence[int], allowed: int, start: int, target: int) -> list[int]:
    """Grow a path from ``start`` inside ``allowed`` by extension and rotation.

    Greedily extends both ends (lowest neighbor first); when stuck, closes the
    maximal path into a cycle and reopens it at a fresh component vertex.
    Returns as soon as the path reaches ``target`` vertices, else returns a
    path spanning start's whole component.  Callers guarantee the degree
    bounds that make the closing step succeed.
    """
    path = [start]
    on = 1 << start
    while True:
        while len(path) < target:
            ext = masks[path[-1]] & allowed & ~on
            if ext:
                v = (ext & -ext).bit_length() - 1
                path.append(v)
                on |= 1 << v
                continue
            ext = masks[path[0]] & allowed & ~on
            if ext:
                v = (ext & -ext).bit_length() - 1
                path.insert(0, v)
                on |= 1 << v
                continue
            break
        if len(path) >= target:
            return path
        outside = allowed & ~on
        w = -1
        for cand in bits(outside):
            if masks[cand] & on:
                w = cand
                break
        if w < 0:
            return path  # spans its component
        cyc = _close_into_cycle(masks, path)
        if cyc is None:  # pragma: no cover - ruled out by caller preconditions
            raise AssertionError("rotation step found no crossing pair")
        hit = masks[w] & on
        j = next(i for i, pv in enumerate(cyc) if hit >> pv & 1)
        path = [w] + cyc[j:] + cyc[:j]
        on |= 1 << w


def dirac_hamiltonian(h: BitGraph) -> Witness:
    """Hamilton cycle of a graph meeting the minimum-degree bound 2*deg >= n."""
    n = h.n
    if n < 3:
        raise ValueError(f"order {n} < 3 admits no cycle")
    for v in range(n):
        d = h.degree(v)
        if 2 * d < n:
            raise DiracPreconditionFailed(v, d, n)
    full = (1 << n) - 1
    path = _grow_path_rotation(h.masks, full, 0, n)
    assert len(path) == n
    cyc = _close_into_cycle(h.masks, path)
    assert cyc is not None
    return Witness(HAMILTON_CYCLE, canonical_cycle(cyc))


def erdos_gallai_path(h: BitGraph, k_edges: int) -> Witness | None:
    """A path with k_edges edges, guaranteed when 2*e(G) > (k_edges-1)*n.

    Follows the classical reduction: repeatedly drop a vertex of degree at
    most (k-1)/2 (the edge bound survives), and once the minimum degree
    reaches k/2 grow a path by extension and rotation inside one component.
    A component swallowed whole is too small to matter and is discarded.
    Below the edge bound this falls back to exact search with no guarantee.
    """
    if k_edges < 1:
        raise ValueError(f"path length {k_edges} must be at least 1")
    n = h.n
    target = k_edges + 1
    masks = h.masks
    color = getattr(h, "color", None)
    active = (1 << n) - 1
    guaranteed: bool | None = None
    while active:
        cnt = active.bit_count()
        e2 = sum((masks[v] & active).bit_count() for v in bits(active))
        bound = e2 > (k_edges - 1) * cnt
        if guaranteed is None:
            guaranteed = bound
        if not bound:
            break
        peeled = False
        for v in bits(active):
            if 2 * (masks[v] & active).bit_count() <= k_edges - 1:
                active ^= 1 << v
                peeled = True
                break
        if peeled:
            continue
        start = (active & -active).bit_length() - 1
        comp = _closure(masks, 1 << start, active)
        path = _grow_path_rotation(masks, comp, start, target)
        if len(path) >= target:
            return Witness(MONO_PATH, canonical_path(path[:target]), color)
        active &= ~comp
    if guaranteed:  # pragma: no cover - the reduction always produces a path
        raise AssertionError("edge bound held but no path was produced")
    found = _exact_path_search(masks, n, target, (1 << n) - 1)
    if found is None:
        return None
    return Witness(MONO_PATH, canonical_path(found), color)


def colored_path_split(
    g: ColoredCompleteGraph, red: int, blue: int, a: int, b: int
) -> Witness:
    """A red path of order a or a blue path of order b.

    Requires deg_red(v) + deg_blue(v) >= a + b - 3 for every vertex (checked)
    and a + b >= 3.  Whichever color carries more than its share of edges is
    dense enough for the edge-count path engine; red is tried first.
    """
    if red == blue:
        raise ValueError("red and blue must be distinct colors")
    for c in (red, blue):
        if not 1 <= c <= g.k:
            raise ValueError(f"color {c} outside palette 1..{g.k}")
    if a < 0 or b < 0 or a + b < 3:
        raise ValueError(f"path orders a={a}, b={b} need a,b >= 0 and a+b >= 3")
    n = g.n
    red_masks = g.class_masks(red)
    blue_masks = g.class_masks(blue)
    required = a + b - 3
    for v in range(n):
        dr = red_masks[v].bit_count()
        db = blue_masks[v].bit_count()
        if dr + db < required:
            raise DegreePreconditionFailed(v, dr, db, required)
    if sum(m.bit_count() for m in red_masks) > n * (a - 2):
        return _dense_color_path(g, red, red_masks, a)
    assert sum(m.bit_count() for m in blue_masks) > n * (b - 2)
    return _dense_color_path(g, blue, blue_masks, b)


def _dense_color_path(
    g: ColoredCompleteGraph, color: int, masks: Sequence[int], order: int
) -> Witness:
    if order <= 1:
        # an order-0 request is vacuous; promote to a single vertex
        return Witness(MONO_PATH, (0,), color)
    if order == 2:
        for u in range(g.n):
            above = masks[u] >> (u + 1)
            if above:
                v = u + 1 + (above & -above).bit_length() - 1
                return Witness(MONO_PATH, (u, v), color)
        raise AssertionError("dense color class has no edge")
    w = erdos_gallai_path(g.color_class(color), order - 1)
    assert w is not None
    return w


# -- validation ---------------------------------------------------------------


def validate_witness(host, w: Witness) -> bool:
    """Recompute a witness claim directly on the host graph.

    ``host`` is a ColoredCompleteGraph for color-aware kinds; HamiltonCycle
    (and color-free cycle/path checks) accept any BitGraph.
    """
    vs = list(w.vertices)
    if len(set(vs)) != len(vs):
        return False
    if any(not 0 <= v < host.n for v in vs):
        return False
    colored = isinstance(host, ColoredCompleteGraph)

    def edge_ok(u: int, v: int) -> bool:
        if colored:
            return w.color is not None and host.color_of(u, v) == w.color
        return host.has_edge(u, v)

    if w.kind == RAINBOW_TRIANGLE:
        if not colored or len(vs) != 3:
            return False
        a, b, c = vs
        cols = {host.color_of(a, b), host.color_of(a, c), host.color_of(b, c)}
        return len(cols) == 3
    if w.kind == MONO_CYCLE:
        if len(vs) < 3:
            return False
        return all(edge_ok(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    if w.kind == MONO_PATH:
        if len(vs) < 1:
            return False
        return all(edge_ok(vs[i], vs[i + 1]) for i in range(len(vs) - 1))
    if w.kind == HAMILTON_CYCLE:
        if colored or sorted(vs) != list(range(host.n)) or len(vs) < 3:
            return False
        return all(host.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))
    return False
