"""Edge colorings of complete graphs: the core data model.

A coloring assigns one color id (1-based, dense, 0 reserved for "absent") to
every unordered pair of vertices of K_n.  Values are immutable after
construction; every transformation returns a new graph.  The authoritative
store is a flat upper-triangular tuple; per-color adjacency bitsets are
derived once at construction and shared by all detectors.  The bitset fast
path caps the order at 64 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import (
    ArityMismatch,
    ColoringParseError,
    ColorOutOfRange,
    EmptySubset,
    MissingPair,
    SizeLimitExceeded,
)

MAX_VERTICES = 64


def pair_index(u: int, v: int) -> int:
    """Index of the unordered pair {u,v} in the flat triangular store."""
    if u > v:
        u, v = v, u
    return v * (v - 1) // 2 + u


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BitGraph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency rows."""

    __slots__ = ("n", "masks")

    def __init__(self, n: int, masks: Sequence[int] | None = None):
        if n < 0 or n > MAX_VERTICES:
            raise SizeLimitExceeded(f"graph order {n} outside 0..{MAX_VERTICES}")
        self.n = n
        self.masks: list[int] = list(masks) if masks is not None else [0] * n

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BitGraph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        self.masks[u] |= 1 << v
        self.masks[v] |= 1 << u

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.masks[v].bit_count()

    def min_degree(self) -> int:
        return min((self.degree(v) for v in range(self.n)), default=0)

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            for u in bits(self.masks[v] & ((1 << v) - 1)):
                yield (u, v)

    def __repr__(self) -> str:
        return f"BitGraph(n={self.n}, edges={self.edge_count()})"


class ColorClassView(BitGraph):
    """The simple graph formed by one color's edges, on the parent's vertex set."""

    __slots__ = ("parent", "color")

    def __init__(self, parent: "ColoredCompleteGraph", color: int):
        super().__init__(parent.n, parent.class_masks(color))
        self.parent = parent
        self.color = color

    def __repr__(self) -> str:
        return f"ColorClassView(color={self.color}, n={self.n})"


@dataclass(frozen=True)
class VertexSubset:
    """A subset of 0..n-1 of some host graph, stored as a bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 0 or self.n > MAX_VERTICES:
            raise SizeLimitExceeded(f"host order {self.n} outside 0..{MAX_VERTICES}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "VertexSubset":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside 0..{n - 1}")
            mask |= 1 << v
        return cls(n, mask)

    def vertices(self) -> list[int]:
        return list(bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.mask >> v & 1)


class ColoredCompleteGraph:
    """Immutable edge coloring of K_n with colors drawn from 1..k."""

    __slots__ = ("n", "k", "_colors", "_masks")

    def __init__(self, n: int, k: int, colors: Sequence[int]):
        if n < 1:
            raise ValueError(f"graph order {n} must be at least 1")
        if n > MAX_VERTICES:
            raise SizeLimitExceeded(f"graph order {n} exceeds {MAX_VERTICES}")
        if k < 1:
            raise ValueError(f"palette size {k} must be at least 1")
        expected = n * (n - 1) // 2
        if len(colors) != expected:
            raise ValueError(f"expected {expected} edge colors, got {len(colors)}")
        store = tuple(colors)
        for v in range(1, n):
            base = v * (v - 1) // 2
            for u in range(v):
                c = store[base + u]
                if not 1 <= c <= k:
                    raise ColorOutOfRange(u, v, c, k)
        self.n = n
        self.k = k
        self._colors = store
        # Derived per-color adjacency bitsets; the triangular tuple stays
        # authoritative, these exist so detectors never rescan it.
        masks = [[0] * n for _ in range(k + 1)]
        for v in range(1, n):
            base = v * (v - 1) // 2
            for u in range(v):
                c = store[base + u]
                masks[c][u] |= 1 << v
                masks[c][v] |= 1 << u
        self._masks = masks

    # -- reads ------------------------------------------------------------

    def color_of(self, u: int, v: int) -> int:
        if u == v or not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"not an edge of K_{self.n}: {{{u},{v}}}")
        return self._colors[pair_index(u, v)]

    def colors_used(self) -> tuple[int, ...]:
        return tuple(sorted(set(self._colors)))

    def class_masks(self, color: int) -> list[int]:
        """Adjacency bitsets of one color class (a copy; rows are ints)."""
        if not 1 <= color <= self.k:
            raise ValueError(f"color {color} outside palette 1..{self.k}")
        return list(self._masks[color])

    def class_mask_row(self, color: int, v: int) -> int:
        return self._masks[color][v]

    def color_class(self, color: int) -> ColorClassView:
        return ColorClassView(self, color)

    def edge_colors(self) -> tuple[int, ...]:
        return self._colors

    def with_palette(self, k: int) -> "ColoredCompleteGraph":
        """The same coloring with the declared palette widened to ``k``."""
        if k < self.k:
            raise ValueError(f"cannot shrink palette from {self.k} to {k}")
        return ColoredCompleteGraph(self.n, k, self._colors)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredCompleteGraph):
            return NotImplemented
        return (self.n, self.k, self._colors) == (other.n, other.k, other._colors)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._colors))

    def __repr__(self) -> str:
        return f"ColoredCompleteGraph(n={self.n}, k={self.k})"


# -- constructors ----------------------------------------------------------


def build(n: int, k: int, colors: Mapping[tuple[int, int], int]) -> ColoredCompleteGraph:
    """Build a coloring from a pair -> color map (either pair orientation)."""
    flat = []
    for v in range(1, n):
        for u in range(v):
            if (u, v) in colors:
                c = colors[(u, v)]
                if (v, u) in colors and colors[(v, u)] != c:
                    raise ValueError(f"conflicting colors for pair {{{u},{v}}}")
            elif (v, u) in colors:
                c = colors[(v, u)]
            else:
                raise MissingPair(u, v)
            flat.append(c)
    return ColoredCompleteGraph(n, k, flat)


def complete_monochromatic(n: int, k: int, color: int) -> ColoredCompleteGraph:
    """K_n with every edge the given color, declared palette 1..k."""
    if not 1 <= color <= k:
        raise ColorOutOfRange(0, 1, color, k)
    return ColoredCompleteGraph(n, k, [color] * (n * (n - 1) // 2))


def induced(g: ColoredCompleteGraph, s: VertexSubset) -> ColoredCompleteGraph:
    """The coloring induced on subset ``s``, relabeled order-preserving to 0..|s|-1."""
    if s.n != g.n:
        raise ValueError(f"subset host order {s.n} != graph order {g.n}")
    verts = s.vertices()
    if not verts:
        raise EmptySubset("induced subgraph on the empty set")
    flat = []
    for j in range(1, len(verts)):
        for i in range(j):
            flat.append(g.color_of(verts[i], verts[j]))
    return ColoredCompleteGraph(len(verts), g.k, flat)


def substitute(
    base: ColoredCompleteGraph, parts: Sequence[ColoredCompleteGraph]
) -> ColoredCompleteGraph:
    """Blow each base vertex i up into ``parts[i]``.

    Edges inside copy i keep their colors from parts[i]; edges between copies
    i and j take the base color of {i,j}.  The result palette is the maximum
    of all declared palettes.
    """
    if len(parts) != base.n:
        raise ArityMismatch(base.n, len(parts))
    total = sum(p.n for p in parts)
    if total > MAX_VERTICES:
        raise SizeLimitExceeded(f"substitution result has {total} > {MAX_VERTICES} vertices")
    k = max(base.k, max(p.k for p in parts))
    offsets = []
    at = 0
    for p in parts:
        offsets.append(at)
        at += p.n
    owner = []
    for i, p in enumerate(parts):
        owner.extend([i] * p.n)
    flat = []
    for v in range(1, total):
        iv = owner[v]
        for u in range(v):
            iu = owner[u]
            if iu == iv:
                flat.append(parts[iu].color_of(u - offsets[iu], v - offsets[iv]))
            else:
                flat.append(base.color_of(iu, iv))
    return ColoredCompleteGraph(total, k, flat)


def relabel(g: ColoredCompleteGraph, perm: Sequence[int]) -> ColoredCompleteGraph:
    """Apply a vertex permutation: vertex i of ``g`` becomes ``perm[i]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm is not a permutation of the vertex set")
    flat = [0] * (g.n * (g.n - 1) // 2)
    for v in range(1, g.n):
        for u in range(v):
            flat[pair_index(perm[u], perm[v])] = g.color_of(u, v)
    return ColoredCompleteGraph(g.n, g.k, flat)


# -- text serialization ------------------------------------------------------
#
# Line 1 is "n k".  For i = 1..n-1, the next line holds i space-separated
# color ids, entry j giving the color of {j,i} for j < i.  Lines starting
# with '#' are comments and are ignored by the parser.  A trailing newline
# is required.


def serialize(g: ColoredCompleteGraph, comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{g.n} {g.k}")
    for v in range(1, g.n):
        out.append(" ".join(str(g.color_of(u, v)) for u in range(v)))
    return "\n".join(out) + "\n"


def parse(text: str) -> ColoredCompleteGraph:
    if not text.endswith("\n"):
        raise ColoringParseError("missing trailing newline")
    header: tuple[int, int] | None = None
    flat: list[int] = []
    row = 0
    n = k = 0
    for ln, raw in enumerate(text.split("\n")[:-1], start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if header is None:
            if len(fields) != 2:
                raise ColoringParseError("expected header 'n k'", ln)
            try:
                n, k = int(fields[0]), int(fields[1])
            except ValueError:
                raise ColoringParseError("expected header 'n k'", ln) from None
            if not 1 <= n <= MAX_VERTICES:
                raise ColoringParseError(f"order {n} outside 1..{MAX_VERTICES}", ln)
            if k < 1:
                raise ColoringParseError(f"palette size {k} must be at least 1", ln)
            header = (n, k)
            row = 1
            continue
        if row >= n:
            raise ColoringParseError("data after the last expected row", ln)
        if len(fields) != row:
            raise ColoringParseError(f"expected {row} entries, got {len(fields)}", ln)
        for j, f in enumerate(fields):
            try:
                c = int(f)
            except ValueError:
                raise ColoringParseError(f"entry {j} is not an integer", ln) from None
            if not 1 <= c <= k:
                raise ColoringParseError(
                    f"color {c} on pair {{{j},{row}}} outside palette 1..{k}", ln
                )
            flat.append(c)
        row += 1
    if header is None:
        raise ColoringParseError("empty input")
    if row != n:
        raise ColoringParseError(f"expected {n - 1} data rows, got {row - 1}")
    return ColoredCompleteGraph(n, k, flat)
