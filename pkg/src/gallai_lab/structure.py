"""Partition structure of rainbow-triangle-free colorings.

A coloring with no rainbow triangle always splits into at least two parts so
that each pair of parts is joined monochromatically and at most two colors
appear between parts.  ``gallai_partition`` finds such a split by trying each
candidate between-color set, contracting the components everything else
spans, and merging any two chunks joined in mixed colors; with
``coarsest=True`` it then greedily merges parts while the split stays valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coloring import (
    BitGraph,
    ColoredCompleteGraph,
    VertexSubset,
    bits,
    induced,
    relabel,
    substitute,
)
from .detectors import (
    MONO_CYCLE,
    Witness,
    dirac_hamiltonian,
    find_rainbow_triangle,
)
from .errors import HypothesisViolated, InvalidPartition, NotGallai


@dataclass(frozen=True)
class GallaiPartition:
    """Parts plus the declared between-part colors; parts are host subsets."""

    n: int
    parts: tuple[VertexSubset, ...]
    between_colors: tuple[int, ...]
    pair_colors: tuple[tuple[int, int, int], ...]  # (i, j, color) for i < j

    def pair_color(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        for a, b, c in self.pair_colors:
            if (a, b) == (i, j):
                return c
        raise KeyError((i, j))

    def to_json_dict(self) -> dict:
        return {
            "parts": [p.vertices() for p in self.parts],
            "between_colors": list(self.between_colors),
            "pair_colors": [list(t) for t in self.pair_colors],
        }


@dataclass(frozen=True)
class PartitionReport:
    ok: bool
    reason: str | None = None
    pair: tuple[int, int] | None = None
    edge: tuple[int, int] | None = None


@dataclass(frozen=True)
class ReducedGraph:
    """One vertex per part, colored by the between-part colors."""

    graph: ColoredCompleteGraph
    partition: GallaiPartition


def validate_partition(g: ColoredCompleteGraph, p: GallaiPartition) -> PartitionReport:
    """Check a partition claim against the host; reports the first violation."""
    if p.n != g.n:
        return PartitionReport(False, f"partition host order {p.n} != graph order {g.n}")
    if not p.parts:
        return PartitionReport(False, "no parts")
    seen = 0
    for idx, part in enumerate(p.parts):
        if part.n != g.n:
            return PartitionReport(False, f"part {idx} lives on a different host")
        if part.mask == 0:
            return PartitionReport(False, f"part {idx} is empty")
        if part.mask & seen:
            return PartitionReport(False, f"part {idx} overlaps an earlier part")
        seen |= part.mask
    if seen != (1 << g.n) - 1:
        missing = ((1 << g.n) - 1) & ~seen
        v = (missing & -missing).bit_length() - 1
        return PartitionReport(False, f"vertex {v} is in no part")
    if g.n >= 2 and len(p.parts) < 2:
        return PartitionReport(False, "fewer than 2 parts")
    if len(p.between_colors) > 2:
        return PartitionReport(False, f"{len(p.between_colors)} between-part colors, at most 2 allowed")
    declared = {}
    for i, j, c in p.pair_colors:
        if not (0 <= i < j < len(p.parts)):
            return PartitionReport(False, f"pair ({i},{j}) is not a valid part pair")
        declared[(i, j)] = c
        if c not in p.between_colors:
            return PartitionReport(
                False, f"pair ({i},{j}) colored {c}, not among between-colors", pair=(i, j)
            )
    t = len(p.parts)
    for j in range(1, t):
        for i in range(j):
            if (i, j) not in declared:
                return PartitionReport(False, f"pair ({i},{j}) has no declared color", pair=(i, j))
            c = declared[(i, j)]
            for u in p.parts[i].vertices():
                row = g.class_mask_row(c, u)
                bad = p.parts[j].mask & ~row
                if bad:
                    v = (bad & -bad).bit_length() - 1
                    return PartitionReport(
                        False,
                        f"edge {{{u},{v}}} has color {g.color_of(u, v)}, pair ({i},{j}) declares {c}",
                        pair=(i, j),
                        edge=(u, v),
                    )
    return PartitionReport(True)


# -- computing a partition -----------------------------------------------------


def _components(mask_rows: Sequence[int], n: int) -> list[int]:
    """Connected components (as bitmasks) of the graph with the given rows."""
    out = []
    left = (1 << n) - 1
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= mask_rows[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        left &= ~comp
    return out


def _candidate_blocks(g: ColoredCompleteGraph, cand: tuple[int, ...]) -> list[int] | None:
    """Blocks for one candidate between-color set, or None if they collapse."""
    n = g.n
    other = [0] * n
    for c in g.colors_used():
        if c in cand:
            continue
        rows = g.class_masks(c)
        for v in range(n):
            other[v] |= rows[v]
    blocks = _components(other, n)
    # merge any two blocks joined in more than one candidate color
    while len(blocks) > 1:
        unions = {c: [0] * len(blocks) for c in cand}
        for c in cand:
            rows = g.class_masks(c)
            for i, bm in enumerate(blocks):
                acc = 0
                for v in bits(bm):
                    acc |= rows[v]
                unions[c][i] = acc
        parent = list(range(len(blocks)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = False
        for j in range(1, len(blocks)):
            for i in range(j):
                joined = [c for c in cand if unions[c][i] & blocks[j]]
                if len(joined) >= 2:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[max(ri, rj)] = min(ri, rj)
                        merged = True
        if not merged:
            break
        grouped: dict[int, int] = {}
        for i, bm in enumerate(blocks):
            grouped.setdefault(find(i), 0)
            grouped[find(i)] |= bm
        blocks = sorted(grouped.values(), key=lambda m: (m & -m))
    if len(blocks) < 2:
        return None
    return blocks


def _block_pair_color(g: ColoredCompleteGraph, bi: int, bj: int) -> int:
    u = (bi & -bi).bit_length() - 1
    v = (bj & -bj).bit_length() - 1
    return g.color_of(u, v)


def _greedy_merge(g: ColoredCompleteGraph, blocks: list[int]) -> list[int]:
    """Merge block pairs while the split stays valid (never below 2 parts)."""
    blocks = sorted(blocks, key=lambda m: (m & -m))
    while len(blocks) > 2:
        t = len(blocks)
        pc = [[0] * t for _ in range(t)]
        for j in range(1, t):
            for i in range(j):
                pc[i][j] = pc[j][i] = _block_pair_color(g, blocks[i], blocks[j])
        pick = None
        for i in range(t - 1):
            for j in range(i + 1, t):
                if all(pc[i][z] == pc[j][z] for z in range(t) if z != i and z != j):
                    pick = (i, j)
                    break
            if pick:
                break
        if pick is None:
            break
        i, j = pick
        merged = blocks[i] | blocks[j]
        blocks = sorted(
            [b for z, b in enumerate(blocks) if z != i and z != j] + [merged],
            key=lambda m: (m & -m),
        )
    return blocks


def _assemble(g: ColoredCompleteGraph, blocks: list[int]) -> GallaiPartition | None:
    ordered = sorted(blocks, key=lambda m: (-m.bit_count(), (m & -m)))
    parts = tuple(VertexSubset(g.n, m) for m in ordered)
    t = len(parts)
    pair_colors = []
    used = set()
    for j in range(1, t):
        for i in range(j):
            c = _block_pair_color(g, parts[i].mask, parts[j].mask)
            pair_colors.append((i, j, c))
            used.add(c)
    if len(used) > 2:
        return None
    p = GallaiPartition(g.n, parts, tuple(sorted(used)), tuple(pair_colors))
    return p if validate_partition(g, p).ok else None


def gallai_partition(g: ColoredCompleteGraph, coarsest: bool = False) -> GallaiPartition:
    """A valid partition of a rainbow-triangle-free coloring.

    Tries every candidate between-color set (singletons first, then pairs,
    ascending) and keeps the valid result with the fewest parts.  With
    ``coarsest=True`` no further pair of returned parts can be merged without
    breaking validity.
    """
    if g.n < 2:
        raise ValueError(f"partition needs at least 2 vertices, got {g.n}")
    rw = find_rainbow_triangle(g)
    if rw is not None:
        raise NotGallai(rw)
    used = sorted(g.colors_used())
    candidates: list[tuple[int, ...]] = [(c,) for c in used]
    candidates += [(a, b) for i, a in enumerate(used) for b in used[i + 1 :]]
    best: GallaiPartition | None = None
    for cand in candidates:
        blocks = _candidate_blocks(g, cand)
        if blocks is None:
            continue
        if coarsest:
            blocks = _greedy_merge(g, blocks)
        part = _assemble(g, blocks)
        if part is None:
            continue
        if best is None or len(part.parts) < len(best.parts):
            best = part
    assert best is not None, "rainbow-triangle-free colorings always admit a partition"
    return best


# -- derived views --------------------------------------------------------------


def reduced_graph(g: ColoredCompleteGraph, p: GallaiPartition) -> ReducedGraph:
    """One vertex per part, pair colors from the partition (validated first)."""
    rep = validate_partition(g, p)
    if not rep.ok:
        raise InvalidPartition(rep)
    t = len(p.parts)
    if t == 1:
        return ReducedGraph(ColoredCompleteGraph(1, g.k, []), p)
    flat = []
    for j in range(1, t):
        for i in range(j):
            flat.append(p.pair_color(i, j))
    return ReducedGraph(ColoredCompleteGraph(t, g.k, flat), p)


def reconstruct(g: ColoredCompleteGraph, p: GallaiPartition) -> ColoredCompleteGraph:
    """Rebuild the host from its reduced graph and induced parts (bit-exact).

    Substitution concatenates parts in order, so the result is relabeled back
    through the concatenation order before returning.
    """
    rg = reduced_graph(g, p)
    blown = substitute(rg.graph, [induced(g, part) for part in p.parts])
    order = [v for part in p.parts for v in part.vertices()]
    return relabel(blown, order)


# -- recoloring and between-part cycles ------------------------------------------


def recolor_small_parts(
    g: ColoredCompleteGraph,
    a_set: VertexSubset,
    b_sets: Sequence[VertexSubset],
    k: int,
    m: int,
) -> ColoredCompleteGraph:
    """Recolor, inside each small set B_i, every edge not colored in 1..k-1 to k.

    Hypotheses (all checked): A and the B_i partition the vertex set, every
    A-to-B_i edge has color i, |B_i| <= m-1, edges between different B sets
    use one of their two indices, and A's internal edges stay within 1..k.
    Under them the result is a k-colored graph that gains no rainbow triangle
    and no monochromatic m-cycle it did not already have.
    """
    if k < 1:
        raise ValueError(f"target palette {k} must be at least 1")
    if m < 2:
        raise ValueError(f"forbidden cycle order {m} must be at least 2")
    sets = [a_set, *b_sets]
    if len(b_sets) != k - 1:
        raise HypothesisViolated(f"expected {k - 1} small sets for palette {k}, got {len(b_sets)}")
    for s in sets:
        if s.n != g.n:
            raise HypothesisViolated("vertex set lives on a different host")
    cover = 0
    for s in sets:
        overlap = s.mask & cover
        if overlap:
            v = (overlap & -overlap).bit_length() - 1
            raise HypothesisViolated(f"vertex {v} appears in two of the sets")
        cover |= s.mask
    if cover != (1 << g.n) - 1:
        missing = ((1 << g.n) - 1) & ~cover
        v = (missing & -missing).bit_length() - 1
        raise HypothesisViolated(f"vertex {v} is in none of the sets")
    for i, b in enumerate(b_sets, start=1):
        if len(b) > m - 1:
            raise HypothesisViolated(f"set B_{i} has {len(b)} vertices, at most {m - 1} allowed")
    for i, b in enumerate(b_sets, start=1):
        for u in a_set.vertices():
            bad = b.mask & ~g.class_mask_row(i, u)
            if bad:
                v = (bad & -bad).bit_length() - 1
                raise HypothesisViolated(
                    f"edge {{{u},{v}}} between A and B_{i} has color {g.color_of(u, v)}, expected {i}"
                )
    for i in range(1, k):
        for j in range(i + 1, k):
            for u in b_sets[i - 1].vertices():
                ok = g.class_mask_row(i, u) | g.class_mask_row(j, u)
                bad = b_sets[j - 1].mask & ~ok
                if bad:
                    v = (bad & -bad).bit_length() - 1
                    raise HypothesisViolated(
                        f"edge {{{u},{v}}} between B_{i} and B_{j} has color {g.color_of(u, v)},"
                        f" expected {i} or {j}"
                    )
    for u in a_set.vertices():
        for v in a_set.vertices():
            if u < v and g.color_of(u, v) > k:
                raise HypothesisViolated(
                    f"edge {{{u},{v}}} inside A has color {g.color_of(u, v)} > {k}"
                )
    flat = list(g.edge_colors())
    for b in b_sets:
        vs = b.vertices()
        for x in range(1, len(vs)):
            for y in range(x):
                u, v = vs[y], vs[x]
                idx = v * (v - 1) // 2 + u
                if not 1 <= flat[idx] <= k - 1:
                    flat[idx] = k
    return ColoredCompleteGraph(g.n, k, flat)


def between_parts_cycle(g: ColoredCompleteGraph, p: GallaiPartition, ell: int) -> Witness:
    """An odd cycle C_{2*ell+1} in the single between-color of a partition.

    Requires (checked): the partition is valid with exactly one between-part
    color, every part has at most ell vertices, and the host has at least
    2*ell+1 vertices.  The between-color class on the lowest 2*ell+1 vertices
    then meets the minimum-degree bound, so a Hamilton cycle of that slice is
    the wanted odd cycle.
    """
    if ell < 1:
        raise ValueError(f"ell {ell} must be at least 1")
    rep = validate_partition(g, p)
    if not rep.ok:
        raise HypothesisViolated(f"invalid partition: {rep.reason}")
    order = 2 * ell + 1
    if g.n < order:
        raise HypothesisViolated(f"host has {g.n} vertices, need at least {order}")
    if len(p.between_colors) != 1:
        raise HypothesisViolated(
            f"between-part colors {list(p.between_colors)}, exactly one required"
        )
    for idx, part in enumerate(p.parts):
        if len(part) > ell:
            raise HypothesisViolated(f"part {idx} has {len(part)} vertices, at most {ell} allowed")
    color = p.between_colors[0]
    sel_mask = (1 << order) - 1
    rows = g.class_masks(color)
    h = BitGraph(order, [rows[v] & sel_mask for v in range(order)])
    ham = dirac_hamiltonian(h)
    return Witness(MONO_CYCLE, ham.vertices, color)
