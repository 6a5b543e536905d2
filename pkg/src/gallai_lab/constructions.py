"""Colorings built to avoid specific structures, plus closed-form thresholds.

The extremal odd-cycle family doubles a monochromatic clique k-1 times, each
time joining two copies in a fresh color: order ell*2^k, no rainbow triangle,
and no monochromatic cycle of 2*ell+1 vertices in any color.  Each builder
returns the coloring together with a recipe describing what it claims, so a
detector sweep can re-check the claims from the artifact alone.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .coloring import (
    MAX_VERTICES,
    ColoredCompleteGraph,
    complete_monochromatic,
    substitute,
)
from .detectors import find_mono_cycle, find_rainbow_triangle
from .errors import BadParameters, SizeLimitExceeded


@dataclass(frozen=True)
class ConstructionRecipe:
    """What a built coloring is and which detector checks it must pass."""

    kind: str
    parameters: tuple[tuple[str, int], ...]
    expected_order: int
    expected_properties: tuple[dict, ...] = field(default_factory=tuple)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "parameters": dict(self.parameters),
            "expected_order": self.expected_order,
            "expected_properties": list(self.expected_properties),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "ConstructionRecipe":
        d = json.loads(text)
        return cls(
            kind=d["kind"],
            parameters=tuple(sorted(d["parameters"].items())),
            expected_order=d["expected_order"],
            expected_properties=tuple(d["expected_properties"]),
        )


def check_recipe(g: ColoredCompleteGraph, recipe: ConstructionRecipe) -> list[str]:
    """Detector sweep over a recipe's claims; returns violation messages."""
    problems = []
    if g.n != recipe.expected_order:
        problems.append(f"order {g.n} != expected {recipe.expected_order}")
    for prop in recipe.expected_properties:
        if prop["forbid"] == "rainbow_triangle":
            w = find_rainbow_triangle(g)
            if w is not None:
                problems.append(f"rainbow triangle {w.vertices}")
        elif prop["forbid"] == "mono_cycle":
            m = prop["length"]
            colors = range(1, g.k + 1) if prop["colors"] == "all" else prop["colors"]
            for c in colors:
                w = find_mono_cycle(g, c, m)
                if w is not None:
                    problems.append(f"monochromatic C_{m} in color {c}: {w.vertices}")
        else:
            problems.append(f"unknown property {prop!r}")
    return problems


def build_extremal_odd(ell: int, k: int) -> tuple[ColoredCompleteGraph, ConstructionRecipe]:
    """The doubled-clique coloring on ell*2^k vertices avoiding C_{2*ell+1}.

    Color 1 induces disjoint cliques of order 2*ell (too small for the cycle);
    every later color induces disjoint balanced complete bipartite graphs
    (no odd cycle at all).  Two colors per doubling step keep it free of
    rainbow triangles.
    """
    if ell < 2:
        raise BadParameters(f"ell {ell} must be at least 2")
    if k < 1:
        raise BadParameters(f"k {k} must be at least 1")
    order = ell * 2**k
    if order > MAX_VERTICES:
        raise SizeLimitExceeded(f"extremal coloring has {order} > {MAX_VERTICES} vertices")
    g = complete_monochromatic(2 * ell, 1, 1)
    for step in range(2, k + 1):
        join = complete_monochromatic(2, step, step)
        g = substitute(join, [g, g])
    recipe = ConstructionRecipe(
        kind="OddCycleExtremal",
        parameters=(("ell", ell), ("k", k)),
        expected_order=order,
        expected_properties=(
            {"forbid": "rainbow_triangle"},
            {"forbid": "mono_cycle", "length": 2 * ell + 1, "colors": "all"},
        ),
    )
    return g, recipe


def build_ramsey_cycle_lower(m: int, n: int) -> tuple[ColoredCompleteGraph, ConstructionRecipe]:
    """Two cliques of order n-1 in color 2, joined completely in color 1.

    For odd m the bipartite color-1 class has no C_m and the color-2
    components are one vertex short of C_n, so K_{2n-2} avoids both.
    """
    if m % 2 == 0 or m < 5:
        raise BadParameters(f"m {m} must be odd and at least 5")
    if n < m:
        raise BadParameters(f"n {n} must be at least m = {m}")
    order = 2 * n - 2
    if order > MAX_VERTICES:
        raise BadParameters(f"lower-bound coloring has {order} > {MAX_VERTICES} vertices")
    clique = complete_monochromatic(n - 1, 2, 2)
    join = complete_monochromatic(2, 2, 1)
    g = substitute(join, [clique, clique])
    recipe = ConstructionRecipe(
        kind="RamseyCycleLower",
        parameters=(("m", m), ("n", n)),
        expected_order=order,
        expected_properties=(
            {"forbid": "mono_cycle", "length": m, "colors": [1]},
            {"forbid": "mono_cycle", "length": n, "colors": [2]},
        ),
    )
    return g, recipe


def random_gallai(n: int, k: int, seed: int) -> ColoredCompleteGraph:
    """A seeded random rainbow-triangle-free coloring of K_n on palette 1..k.

    Recursive substitution: split the vertex range into 2..4 chunks, color the
    chunk pairs with at most two palette colors, recurse into each chunk.
    Every base uses at most two colors, so no rainbow triangle can appear.
    Identical (n, k, seed) always produce the identical coloring.
    """
    if n < 1 or n > MAX_VERTICES:
        raise BadParameters(f"order {n} outside 1..{MAX_VERTICES}")
    if k < 1:
        raise BadParameters(f"palette {k} must be at least 1")
    rng = random.Random(seed)

    def gen(size: int) -> ColoredCompleteGraph:
        if size == 1:
            return ColoredCompleteGraph(1, k, [])
        t = rng.randint(2, min(4, size))
        cuts = sorted(rng.sample(range(1, size), t - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [size])]
        c1 = rng.randint(1, k)
        c2 = rng.randint(1, k)
        flat = [rng.choice((c1, c2)) for _ in range(t * (t - 1) // 2)]
        base = ColoredCompleteGraph(t, k, flat)
        return substitute(base, [gen(s) for s in sizes])

    return gen(n)


def even_cycle_bounds(n: int, k: int) -> tuple[int, int]:
    """Known (lower, upper) bounds for the k-color even-cycle threshold C_{2n}."""
    return ((n - 1) * k + n + 1, (n - 1) * k + 3 * n)


def ramsey_formula(m: int, n: int) -> int | None:
    """Closed-form two-color cycle Ramsey value R(C_m, C_n), or None where undefined.

    Covers 3 <= m <= n with m odd except (3,3); both even with 4 <= m <= n
    except (4,4); and m even, n odd with 4 <= m < n.
    """
    if m % 2 == 1:
        if 3 <= m <= n and (m, n) != (3, 3):
            return 2 * n - 1
        return None
    if n % 2 == 0:
        if 4 <= m <= n and (m, n) != (4, 4):
            return n - 1 + m // 2
        return None
    if 4 <= m < n:
        return max(n - 1 + m // 2, 2 * m - 1)
    return None
