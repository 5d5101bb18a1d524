"""Slow, obviously-correct reference implementations used only by the tests.

Nothing here imports the numpy census code; product sets are built from
explicit tuples so the two routes stay independent.
"""

from __future__ import annotations

import itertools
from math import prod


def column_group(m: int, n: int) -> set[tuple[int, ...]]:
    """Every permutation that only moves points within their column."""
    out = set()
    for choice in itertools.product(itertools.permutations(range(m)), repeat=n):
        out.add(tuple(choice[b][a] * n + b for a in range(m) for b in range(n)))
    return out


def row_group(m: int, n: int) -> set[tuple[int, ...]]:
    out = set()
    for choice in itertools.product(itertools.permutations(range(n)), repeat=m):
        out.add(tuple(a * n + choice[a][b] for a in range(m) for b in range(n)))
    return out


def compose(f, g):
    return tuple(f[y] for y in g)


def product_of(left, right) -> set[tuple[int, ...]]:
    """``{f o g : f in left, g in right}``."""
    return {compose(f, g) for f in left for g in right}


def axis_group(dims, axis: int) -> set[tuple[int, ...]]:
    """Permutations of the lexicographically flattened box that change only ``axis`` (1-based)."""
    i = axis - 1
    points = list(itertools.product(*(range(d) for d in dims)))
    index = {pt: x for x, pt in enumerate(points)}
    fibers = [pt for pt in points if pt[i] == 0]
    out = set()
    for choice in itertools.product(itertools.permutations(range(dims[i])), repeat=len(fibers)):
        table = [0] * len(points)
        for fib, perm in zip(fibers, choice):
            for c in range(dims[i]):
                src = fib[:i] + (c,) + fib[i + 1:]
                dst = fib[:i] + (perm[c],) + fib[i + 1:]
                table[index[src]] = index[dst]
        out.add(tuple(table))
    return out


def schedule_product(dims, schedule) -> set[tuple[int, ...]]:
    """Set of ``g_l o ... o g_1`` with ``g_j`` in the group of ``schedule[j-1]``."""
    current = {tuple(range(prod(dims)))}
    for axis in schedule:
        current = product_of(axis_group(dims, axis), current)
    return current


def poset_automorphisms(leq) -> list[tuple[int, ...]]:
    """Every bijection preserving the order, by trying all of them."""
    size = len(leq)
    return [s for s in itertools.permutations(range(size))
            if all(leq[x][y] == leq[s[x]][s[y]] for x in range(size) for y in range(size))]
