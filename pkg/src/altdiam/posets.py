"""Finite posets, their automorphisms, and flip generation on ``X x X``.

Elements are ``0 .. size-1``; ``leq[x][y]`` is ``x <= y``.  Product elements
``(x, y)`` are indexed ``x * |Q| + y``.  A permutation is a tuple ``perm``
with ``perm[x]`` the image of ``x``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InstanceTooLarge

MAX_POSET = 16

Perm = tuple[int, ...]


@dataclass(frozen=True)
class FinitePoset:
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        leq = tuple(tuple(bool(v) for v in row) for row in self.leq)
        size = len(leq)
        if any(len(r) != size for r in leq):
            raise ValueError("order relation must be square")
        for x in range(size):
            if not leq[x][x]:
                raise ValueError(f"not reflexive at {x}")
            for y in range(size):
                if x != y and leq[x][y] and leq[y][x]:
                    raise ValueError(f"not antisymmetric: {x} and {y}")
                if leq[x][y]:
                    for z in range(size):
                        if leq[y][z] and not leq[x][z]:
                            raise ValueError(f"not transitive: {x} <= {y} <= {z}")
        object.__setattr__(self, "leq", leq)

    @property
    def size(self) -> int:
        return len(self.leq)

    @classmethod
    def from_covers(cls, size: int, covers: Iterable[tuple[int, int]]) -> "FinitePoset":
        """Transitive reflexive closure of the pairs ``a < b``."""
        rel = [[x == y for y in range(size)] for x in range(size)]
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size):
                raise ValueError(f"pair {a} < {b} outside 0..{size - 1}")
            rel[a][b] = True
        for k in range(size):
            for i in range(size):
                if rel[i][k]:
                    for j in range(size):
                        if rel[k][j]:
                            rel[i][j] = True
        return cls(tuple(map(tuple, rel)))

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for x in range(self.size):
            for y in range(self.size):
                if x != y and self.leq[x][y] and not any(
                        z not in (x, y) and self.leq[x][z] and self.leq[z][y] for z in range(self.size)):
                    out.append((x, y))
        return out

    def is_trivial(self) -> bool:
        """No two distinct elements are comparable."""
        return all(not self.leq[x][y] for x in range(self.size) for y in range(self.size) if x != y)


def chain(n: int) -> FinitePoset:
    if n < 1:
        raise ValueError("chain needs at least one element")
    return FinitePoset(tuple(tuple(x <= y for y in range(n)) for x in range(n)))


def antichain(n: int) -> FinitePoset:
    if n < 1:
        raise ValueError("antichain needs at least one element")
    return FinitePoset(tuple(tuple(x == y for y in range(n)) for x in range(n)))


def product(P: FinitePoset, Q: FinitePoset) -> FinitePoset:
    """Componentwise order on ``P x Q``, element ``(x, y)`` at ``x * |Q| + y``."""
    q = Q.size
    pts = [(x, y) for x in range(P.size) for y in range(q)]
    return FinitePoset(tuple(
        tuple(P.leq[a][c] and Q.leq[b][d] for c, d in pts) for a, b in pts))


def diamond() -> FinitePoset:
    """``{0,1}^2`` ordered cellwise: 0 = 00 (bottom), 1 = 01, 2 = 10, 3 = 11 (top)."""
    return product(chain(2), chain(2))


def _check(size: int) -> None:
    if size > MAX_POSET:
        raise InstanceTooLarge(f"poset has {size} elements; limit is {MAX_POSET}")


def automorphisms(P: FinitePoset) -> list[Perm]:
    """All order automorphisms in lexicographic order, by backtracking.

    Candidates for ``x`` must share its down-set and up-set sizes and agree
    with every earlier assignment in both directions.
    """
    _check(P.size)
    size, leq = P.size, P.leq
    sig = [(sum(leq[y][x] for y in range(size)), sum(leq[x])) for x in range(size)]
    cands = [[y for y in range(size) if sig[y] == sig[x]] for x in range(size)]
    out: list[Perm] = []
    image = [-1] * size
    used = [False] * size

    def extend(x: int) -> None:
        if x == size:
            out.append(tuple(image))
            return
        for y in cands[x]:
            if used[y]:
                continue
            if all(leq[x][z] == leq[y][image[z]] and leq[z][x] == leq[image[z]][y] for z in range(x)):
                image[x] = y
                used[y] = True
                extend(x + 1)
                used[y] = False
        image[x] = -1

    extend(0)
    return out


@dataclass(frozen=True)
class MonotoneBijection:
    """Order automorphism of ``poset``; ``perm[x]`` is the image of ``x``."""

    poset: FinitePoset
    perm: Perm

    def __post_init__(self):
        perm = tuple(int(v) for v in self.perm)
        size, leq = self.poset.size, self.poset.leq
        if sorted(perm) != list(range(size)):
            raise ValueError(f"not a bijection of range({size}): {perm}")
        for x in range(size):
            for y in range(size):
                if leq[x][y] != leq[perm[x]][perm[y]]:
                    raise ValueError(f"order not preserved at {x}, {y}")
        object.__setattr__(self, "perm", perm)

    def __call__(self, x: int) -> int:
        return self.perm[x]


def compose(f: Perm, g: Perm) -> Perm:
    """``f o g``."""
    return tuple(f[y] for y in g)


def invert(f: Perm) -> Perm:
    out = [0] * len(f)
    for x, y in enumerate(f):
        out[y] = x
    return tuple(out)


def flip(P: FinitePoset) -> Perm:
    """``(x, y) -> (y, x)`` on ``P x P``."""
    s = P.size
    return tuple(y * s + x for x in range(s) for y in range(s))


@dataclass(frozen=True)
class StageSubgroups:
    aut: tuple[Perm, ...]
    left: tuple[Perm, ...]
    right: tuple[Perm, ...]
    pure_left: tuple[Perm, ...]
    pure_right: tuple[Perm, ...]


def stage_subgroups(P: FinitePoset, Q: FinitePoset) -> StageSubgroups:
    """Stage groups of ``Aut(P x Q)``.

    ``left`` fixes the ``Q`` coordinate, ``right`` fixes the ``P`` coordinate;
    the pure groups apply a single automorphism of one factor in every fiber.
    """
    X = product(P, Q)
    _check(X.size)
    q = Q.size
    aut = automorphisms(X)
    left = tuple(h for h in aut if all(h[i] % q == i % q for i in range(X.size)))
    right = tuple(h for h in aut if all(h[i] // q == i // q for i in range(X.size)))
    pure_left = tuple(sorted(
        tuple(g[x] * q + y for x in range(P.size) for y in range(q)) for g in automorphisms(P)))
    pure_right = tuple(sorted(
        tuple(x * q + g[y] for x in range(P.size) for y in range(q)) for g in automorphisms(Q)))
    return StageSubgroups(tuple(aut), left, right, pure_left, pure_right)


def generating_subset(elements: Sequence[Perm]) -> list[Perm]:
    """Greedy generators: keep each element not yet in the span of the kept ones."""
    gens: list[Perm] = []
    span: set[Perm] = set()
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = closure(gens, len(g))
    return gens


def closure(generators: Sequence[Perm], size: int) -> set[Perm]:
    """Subgroup generated by ``generators``, by breadth-first multiplication."""
    ident = tuple(range(size))
    seen = {ident}
    queue = deque([ident])
    gens = [tuple(g) for g in generators]
    gens += [invert(g) for g in gens]
    while queue:
        h = queue.popleft()
        for g in gens:
            k = tuple(g[y] for y in h)
            if k not in seen:
                seen.add(k)
                queue.append(k)
    return seen


@dataclass(frozen=True)
class FlipReport:
    flip_in_closure: bool
    closure_size: int
    aut_size: int
    left_size: int
    right_size: int


def flip_generated(P: FinitePoset) -> FlipReport:
    """Is the coordinate flip of ``P x P`` generated by the two stage groups?"""
    groups = stage_subgroups(P, P)
    gens = generating_subset(groups.left) + generating_subset(groups.right)
    span = closure(gens, P.size ** 2)
    return FlipReport(flip(P) in span, len(span), len(groups.aut), len(groups.left), len(groups.right))


def all_posets(size: int) -> list[FinitePoset]:
    """One representative per isomorphism class of posets on ``size`` points."""
    pairs = [(x, y) for x in range(size) for y in range(size) if x != y]
    seen: set[tuple] = set()
    out = []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = [[x == y for y in range(size)] for x in range(size)]
        for (x, y), b in zip(pairs, bits):
            rel[x][y] = b
        try:
            P = FinitePoset(tuple(map(tuple, rel)))
        except ValueError:
            continue
        key = min(
            tuple(P.leq[s[x]][s[y]] for x in range(size) for y in range(size))
            for s in itertools.permutations(range(size)))
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


def parse_poset(text: str) -> FinitePoset:
    """Size on the first line, then one ``a < b`` pair per line."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty poset description")
    size = int(lines[0])
    covers = []
    for ln in lines[1:]:
        a, sep, b = ln.partition("<")
        if not sep:
            raise ValueError(f"expected 'a < b', got {ln!r}")
        covers.append((int(a), int(b)))
    return FinitePoset.from_covers(size, covers)


def format_poset(P: FinitePoset) -> str:
    return "\n".join([str(P.size)] + [f"{a} < {b}" for a, b in P.covers()]) + "\n"
