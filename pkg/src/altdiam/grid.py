"""Permutations of a finite product grid and their row/column stages.

A grid permutation acts on the points ``(a, b)`` with ``0 <= a < m`` (row)
and ``0 <= b < n`` (column).  Internally the points are flattened row-major,
``a * n + b``, and a permutation is the tuple of flat images.

Permutations act from the left and compose right to left::

    compose(f, g)(x) == f(g(x))

Two subgroups matter:

* an **L-stage** (column stage) only changes the row index, independently in
  every column, so it preserves the column projection;
* an **R-stage** (row stage) only changes the column index, independently in
  every row.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatch,
    DuplicateSource,
    MissingSource,
    NotInjective,
    RangeViolation,
    UnsupportedWord,
)

Point = tuple[int, int]


class Kind(str, enum.Enum):
    L = "L"
    R = "R"
    BOTH = "Both"
    NEITHER = "Neither"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class GridPermutation:
    """Bijection of the ``m x n`` grid, stored as flat row-major images.

    Use :func:`build` (or :meth:`from_table`) to construct validated instances.
    """

    m: int
    n: int
    table: tuple[int, ...]

    @classmethod
    def from_table(cls, m: int, n: int, table: Sequence[int]) -> "GridPermutation":
        table = tuple(int(x) for x in table)
        if m < 1 or n < 1:
            raise DimensionMismatch(f"grid must be at least 1x1, got {m}x{n}")
        if len(table) != m * n:
            raise DimensionMismatch(f"table has {len(table)} entries, expected {m * n}")
        seen = [False] * (m * n)
        for x, y in enumerate(table):
            if not 0 <= y < m * n:
                raise RangeViolation(divmod(y, n) if y >= 0 else (y, 0))
            if seen[y]:
                raise NotInjective(divmod(y, n))
            seen[y] = True
        return cls(m, n, table)

    @classmethod
    def identity(cls, m: int, n: int) -> "GridPermutation":
        return cls(m, n, tuple(range(m * n)))

    @classmethod
    def flip(cls, m: int) -> "GridPermutation":
        """The coordinate swap ``(a, b) -> (b, a)`` on the square ``m x m`` grid."""
        return cls(m, m, tuple(b * m + a for a in range(m) for b in range(m)))

    def __call__(self, point: Point) -> Point:
        a, b = point
        if not (0 <= a < self.m and 0 <= b < self.n):
            raise RangeViolation(point)
        return divmod(self.table[a * self.n + b], self.n)

    def points(self) -> Iterator[Point]:
        for a in range(self.m):
            for b in range(self.n):
                yield (a, b)

    def pairs(self) -> list[tuple[Point, Point]]:
        return [(p, self(p)) for p in self.points()]

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.table))

    def inverse(self) -> "GridPermutation":
        inv = [0] * len(self.table)
        for x, y in enumerate(self.table):
            inv[y] = x
        return GridPermutation(self.m, self.n, tuple(inv))

    def transpose(self) -> "GridPermutation":
        """Conjugate by the coordinate swap; the result lives on the ``n x m`` grid."""
        m, n, t = self.m, self.n, self.table
        out = [0] * (m * n)
        for a in range(m):
            for b in range(n):
                a2, b2 = divmod(t[a * n + b], n)
                out[b * m + a] = b2 * m + a2
        return GridPermutation(n, m, tuple(out))

    def __matmul__(self, other: "GridPermutation") -> "GridPermutation":
        return compose(self, other)


def build(m: int, n: int, pairs: Iterable[tuple[Point, Point]]) -> GridPermutation:
    """Validate a list of ``((a, b), (a2, b2))`` pairs and return the bijection."""
    if m < 1 or n < 1:
        raise DimensionMismatch(f"grid must be at least 1x1, got {m}x{n}")
    size = m * n
    table = [-1] * size
    hit = [False] * size
    for src, dst in pairs:
        src, dst = tuple(src), tuple(dst)
        for pt in (src, dst):
            if len(pt) != 2 or not (0 <= pt[0] < m and 0 <= pt[1] < n):
                raise RangeViolation(pt)
        x = src[0] * n + src[1]
        y = dst[0] * n + dst[1]
        if table[x] != -1:
            raise DuplicateSource(src)
        if hit[y]:
            raise NotInjective(dst)
        table[x] = y
        hit[y] = True
    for x, y in enumerate(table):
        if y == -1:
            raise MissingSource(divmod(x, n))
    return GridPermutation(m, n, tuple(table))


def compose(f: GridPermutation, g: GridPermutation) -> GridPermutation:
    """Return ``f o g``, i.e. apply ``g`` first."""
    if (f.m, f.n) != (g.m, g.n):
        raise DimensionMismatch(f"cannot compose {f.m}x{f.n} with {g.m}x{g.n}")
    ft = f.table
    return GridPermutation(f.m, f.n, tuple(ft[y] for y in g.table))


def invert(p: GridPermutation) -> GridPermutation:
    return p.inverse()


def stage_kind(p: GridPermutation) -> Kind:
    n = p.n
    keeps_col = keeps_row = True
    for x, y in enumerate(p.table):
        if x == y:
            continue
        if x % n != y % n:
            keeps_col = False
        if x // n != y // n:
            keeps_row = False
        if not (keeps_col or keeps_row):
            return Kind.NEITHER
    if keeps_col and keeps_row:
        return Kind.BOTH
    return Kind.L if keeps_col else Kind.R


@dataclass(frozen=True, slots=True)
class Stage:
    """One element of the column group (``L``) or the row group (``R``).

    ``kind == "L"``: ``perms[b]`` permutes the row indices of column ``b``,
    so the stage maps ``(a, b) -> (perms[b][a], b)``.

    ``kind == "R"``: ``perms[a]`` permutes the column indices of row ``a``,
    so the stage maps ``(a, b) -> (a, perms[a][b])``.
    """

    kind: Kind
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        kind = Kind(self.kind)
        if kind not in (Kind.L, Kind.R):
            raise ValueError(f"stage kind must be L or R, got {kind}")
        object.__setattr__(self, "kind", kind)
        perms = tuple(tuple(int(v) for v in q) for q in self.perms)
        if not perms:
            raise DimensionMismatch("stage needs at least one local permutation")
        width = len(perms[0])
        for q in perms:
            if len(q) != width or sorted(q) != list(range(width)):
                raise ValueError(f"not a permutation of range({width}): {q}")
        object.__setattr__(self, "perms", perms)

    @classmethod
    def _trusted(cls, kind: Kind, perms) -> "Stage":
        # skips validation; callers guarantee kind is L/R and perms are bijections
        s = object.__new__(cls)
        object.__setattr__(s, "kind", kind)
        object.__setattr__(s, "perms", perms)
        return s

    @property
    def shape(self) -> tuple[int, int]:
        if self.kind is Kind.L:
            return len(self.perms[0]), len(self.perms)
        return len(self.perms), len(self.perms[0])

    @classmethod
    def identity(cls, kind: Kind | str, m: int, n: int) -> "Stage":
        if Kind(kind) is Kind.L:
            return cls(Kind.L, (tuple(range(m)),) * n)
        return cls(Kind.R, (tuple(range(n)),) * m)

    def table(self) -> list[int]:
        perms = self.perms
        if self.kind is Kind.L:
            n = len(perms)
            out = [0] * (n * len(perms[0]))
            for b, q in enumerate(perms):
                for a, a2 in enumerate(q):
                    out[a * n + b] = a2 * n + b
            return out
        n = len(perms[0])
        out = []
        for a, q in enumerate(perms):
            base = a * n
            out.extend([base + b2 for b2 in q])
        return out


def as_grid_permutation(s: Stage, m: int | None = None, n: int | None = None) -> GridPermutation:
    shape = s.shape
    if (m, n) != (None, None) and (m, n) != shape:
        raise DimensionMismatch(f"{s.kind}-stage has shape {shape}, expected {(m, n)}")
    return GridPermutation(shape[0], shape[1], tuple(s.table()))


def compose_all(stages: Sequence[Stage], m: int, n: int) -> GridPermutation:
    """Compose stages listed in application order (first applied first)."""
    table = None
    for s in stages:
        if s.shape != (m, n):
            raise DimensionMismatch(f"{s.kind}-stage has shape {s.shape}, expected {(m, n)}")
        t = s.table()
        table = t if table is None else [t[y] for y in table]
    return GridPermutation(m, n, tuple(range(m * n)) if table is None else tuple(table))


@dataclass(frozen=True)
class Decomposition:
    """Alternating stages in application order.

    The represented permutation is ``stages[-1] o ... o stages[0]``.
    """

    m: int
    n: int
    stages: tuple[Stage, ...]
    order: str | None = None

    def compose(self) -> GridPermutation:
        return compose_all(self.stages, self.m, self.n)

    @property
    def kinds(self) -> str:
        return "".join(s.kind.value for s in self.stages)


def normalize_word(word: str | Iterable[str]) -> str:
    """Upper-case a word over ``{L, R}`` and merge repeated letters.

    Merging is exact because each letter names a group: ``G_L G_L = G_L``.
    ``"1"`` and ``""`` both denote the empty word.
    """
    letters = "".join(word).upper().replace(" ", "")
    if letters == "1":
        letters = ""
    for ch in letters:
        if ch not in "LR":
            raise UnsupportedWord(f"word {word!r} uses letter {ch!r}; only L and R allowed")
    out = []
    for ch in letters:
        if not out or out[-1] != ch:
            out.append(ch)
    return "".join(out)


def _columns_hit_every_row(p: GridPermutation) -> bool:
    m, n, t = p.m, p.n, p.table
    for b in range(n):
        seen = 0
        for a in range(m):
            seen |= 1 << (t[a * n + b] // n)
        if seen != (1 << m) - 1:
            return False
    return True


def _rows_hit_every_column(p: GridPermutation) -> bool:
    m, n, t = p.m, p.n, p.table
    for a in range(m):
        seen = 0
        for b in range(n):
            seen |= 1 << (t[a * n + b] % n)
        if seen != (1 << n) - 1:
            return False
    return True


def in_word(p: GridPermutation, word: str | Iterable[str]) -> bool:
    """Decide membership of ``p`` in the product set ``G_{w1} G_{w2} ...``.

    The word is read as a composition product, so its last letter acts first:
    ``RL`` is the set of ``r o l``.  After merging repeated letters every word
    has a closed-form test:

    * ``RL``: in every column ``b``, ``a -> row(p(a, b))`` is a bijection;
    * ``LR``: in every row ``a``, ``b -> column(p(a, b))`` is a bijection;
    * three or more alternating letters: always true.
    """
    w = normalize_word(word)
    if w == "":
        return p.is_identity()
    if w in ("L", "R"):
        return stage_kind(p) in (Kind(w), Kind.BOTH)
    if w == "RL":
        return _columns_hit_every_row(p)
    if w == "LR":
        return _rows_hit_every_column(p)
    return True
