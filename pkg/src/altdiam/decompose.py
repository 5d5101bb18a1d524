"""Alternating factorizations of grid permutations.

The two-factor algorithm rewrites the matrix ``X[a][b] = p(a, b)``:

1. a row stage moves entries within rows until every column holds each row
   label exactly once (one Hall matching per column);
2. a column stage sorts every column by row label;
3. a row stage puts every entry at its column label.

The k-factor version recurses into the middle column stage.  Finite-support
permutations of an unbounded grid are embedded in their bounding box first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConsistencyViolation,
    DimensionMismatch,
    DuplicateSource,
    MissingSource,
    NotInjective,
    RangeViolation,
)
from .grid import Decomposition, GridPermutation, Kind, Stage
from .matching import match_counts

__all__ = [
    "MultiGridPermutation",
    "MultiStage",
    "SparsePermutation",
    "SparseDecomposition",
    "Verification",
    "decompose_two",
    "decompose_multi",
    "decompose_finite_support",
    "verify_decomposition",
    "verify_multi",
    "verify_sparse",
    "row_stage_for_columns",
]


def _row_pass(m: int, n: int, table: Sequence[int]):
    # src[a][c] = original column of the entry moved to (a, c)
    labels = [[v // n for v in table[a * n:(a + 1) * n]] for a in range(m)]
    src = [list(range(n)) for _ in range(m)]
    counts = [[0] * m for _ in range(m)]
    for a in range(m):
        ca = counts[a]
        for v in labels[a]:
            ca[v] += 1
    # the last column is forced: one entry per row is left
    for c in range(n - 1):
        match = match_counts(counts)
        for a in range(m):
            target = match[a]
            lab = labels[a]
            if lab[c] != target:
                j = lab.index(target, c + 1)
                lab[c], lab[j] = target, lab[c]
                s = src[a]
                s[c], s[j] = s[j], s[c]
            counts[a][target] -= 1
    return src


def row_stage_for_columns(m: int, n: int, table: Sequence[int]):
    """First row stage of the RLR algorithm.

    Returns ``(perms, entries)`` where ``perms[a]`` is the column permutation
    of row ``a`` and ``entries[a][c]`` is the flat image now sitting at
    ``(a, c)``.  Afterwards every column holds each row label exactly once.
    """
    src = _row_pass(m, n, table)
    perms = []
    for a in range(m):
        tau = [0] * n
        for c, b in enumerate(src[a]):
            tau[b] = c
        perms.append(tuple(tau))
    entries = [[table[a * n + b] for b in src[a]] for a in range(m)]
    return tuple(perms), entries


def _rlr(m: int, n: int, table: Sequence[int]):
    src = _row_pass(m, n, table)
    full = (1 << m) - 1
    r1 = []
    lam = [[0] * m for _ in range(n)]
    r3 = [[0] * n for _ in range(m)]
    seen = [0] * n
    for a in range(m):
        tau = [0] * n
        base = a * n
        for c, b in enumerate(src[a]):
            tau[b] = c
            target, b2 = divmod(table[base + b], n)
            lam[c][a] = target
            seen[c] |= 1 << target
            r3[target][c] = b2
        r1.append(tuple(tau))
    # the column sort relies on every column being a bijection onto row labels
    for c in range(n):
        if seen[c] != full:
            raise ConsistencyViolation(f"column {c} misses a row label after the first row stage")
    return tuple(r1), tuple(map(tuple, lam)), tuple(map(tuple, r3))


def decompose_two(p: GridPermutation, order: str = "RLR") -> Decomposition:
    """Factor ``p`` into three alternating stages.

    ``order="RLR"`` returns row, column, row stages (application order);
    ``order="LRL"`` runs the same algorithm on the transposed grid.
    """
    order = order.upper()
    if order == "RLR":
        r1, lam, r3 = _rlr(p.m, p.n, p.table)
        stages = (Stage._trusted(Kind.R, r1), Stage._trusted(Kind.L, lam), Stage._trusted(Kind.R, r3))
    elif order == "LRL":
        q = p.transpose()
        r1, lam, r3 = _rlr(q.m, q.n, q.table)
        stages = (Stage._trusted(Kind.L, r1), Stage._trusted(Kind.R, lam), Stage._trusted(Kind.L, r3))
    else:
        raise ValueError(f"order must be RLR or LRL, got {order!r}")
    return Decomposition(p.m, p.n, stages, order)


# ---------------------------------------------------------------------------
# k-fold products


def _coords(x: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        x, r = divmod(x, d)
        out.append(r)
    return tuple(reversed(out))


def _flat(coords: Sequence[int], dims: Sequence[int]) -> int:
    x = 0
    for c, d in zip(coords, dims):
        x = x * d + c
    return x


@dataclass(frozen=True)
class MultiGridPermutation:
    """Bijection of ``range(d1) x ... x range(dk)``, flat lexicographic images."""

    dims: tuple[int, ...]
    table: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatch(f"dims must be a nonempty list of positive sizes, got {dims}")
        object.__setattr__(self, "dims", dims)
        table = tuple(int(v) for v in self.table)
        if len(table) != prod(dims):
            raise DimensionMismatch(f"table has {len(table)} entries, expected {prod(dims)}")
        seen = set()
        for y in table:
            if not 0 <= y < len(table):
                raise RangeViolation((y,))
            if y in seen:
                raise NotInjective(_coords(y, dims))
            seen.add(y)
        object.__setattr__(self, "table", table)

    @classmethod
    def from_pairs(cls, dims: Sequence[int], pairs: Iterable) -> "MultiGridPermutation":
        dims = tuple(dims)
        size = prod(dims)
        table = [-1] * size
        hit = [False] * size
        for src, dst in pairs:
            src, dst = tuple(src), tuple(dst)
            for pt in (src, dst):
                if len(pt) != len(dims) or not all(0 <= c < d for c, d in zip(pt, dims)):
                    raise RangeViolation(pt)
            x, y = _flat(src, dims), _flat(dst, dims)
            if table[x] != -1:
                raise DuplicateSource(src)
            if hit[y]:
                raise NotInjective(dst)
            table[x], hit[y] = y, True
        for x, y in enumerate(table):
            if y == -1:
                raise MissingSource(_coords(x, dims))
        return cls(dims, tuple(table))

    @classmethod
    def from_grid(cls, p: GridPermutation) -> "MultiGridPermutation":
        return cls((p.m, p.n), p.table)

    def __call__(self, point: Sequence[int]) -> tuple[int, ...]:
        return _coords(self.table[_flat(point, self.dims)], self.dims)


@dataclass(frozen=True)
class MultiStage:
    """Permutation that only changes coordinate ``axis`` (1-based).

    ``perms[j]`` is the permutation of ``range(dims[axis - 1])`` used at the
    ``j``-th assignment of the other coordinates, those being enumerated in
    lexicographic order with ``axis`` removed.
    """

    axis: int
    dims: tuple[int, ...]
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        dims = tuple(self.dims)
        if not 1 <= self.axis <= len(dims):
            raise DimensionMismatch(f"axis {self.axis} outside 1..{len(dims)}")
        d = dims[self.axis - 1]
        others = prod(dims) // d
        if len(self.perms) != others:
            raise DimensionMismatch(f"axis-{self.axis} stage needs {others} local permutations, got {len(self.perms)}")
        for q in self.perms:
            if sorted(q) != list(range(d)):
                raise ValueError(f"not a permutation of range({d}): {q}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def identity(cls, axis: int, dims: Sequence[int]) -> "MultiStage":
        d = dims[axis - 1]
        return cls(axis, tuple(dims), (tuple(range(d)),) * (prod(dims) // d))

    def table(self) -> tuple[int, ...]:
        dims, i = self.dims, self.axis - 1
        other_dims = dims[:i] + dims[i + 1:]
        out = []
        for x in range(prod(dims)):
            c = _coords(x, dims)
            j = _flat(c[:i] + c[i + 1:], other_dims)
            c2 = c[:i] + (self.perms[j][c[i]],) + c[i + 1:]
            out.append(_flat(c2, dims))
        return tuple(out)

    def as_permutation(self) -> MultiGridPermutation:
        return MultiGridPermutation(self.dims, self.table())


def multi_schedule(k: int) -> tuple[int, ...]:
    """``(k, k-1, ..., 2, 1, 2, ..., k)``: the 2k-1 axis schedule."""
    return tuple(range(k, 0, -1)) + tuple(range(2, k + 1))


def decompose_multi(p: MultiGridPermutation) -> list[MultiStage]:
    """Factor ``p`` into ``2k - 1`` single-axis stages (application order).

    The axes follow :func:`multi_schedule`.  The outermost split treats the
    last coordinate as the column and everything before it as the row.
    """
    dims = p.dims
    k = len(dims)
    if k == 1:
        return [MultiStage(1, dims, (p.table,))]
    rows, cols = prod(dims[:-1]), dims[-1]
    r1, lam, r3 = _rlr(rows, cols, p.table)
    fibers = [decompose_multi(MultiGridPermutation(dims[:-1], lam[b])) for b in range(cols)]
    middle = []
    for j, sub in enumerate(fibers[0]):
        # distinct fibers act on disjoint supports, so slot j of every fiber
        # can be merged into one stage
        axis = sub.axis
        n_sub_others = len(sub.perms)
        perms = [None] * (n_sub_others * cols)
        for b in range(cols):
            fiber_stage = fibers[b][j]
            for s in range(n_sub_others):
                perms[s * cols + b] = fiber_stage.perms[s]
        middle.append(MultiStage(axis, dims, tuple(perms)))
    return [MultiStage(k, dims, tuple(r1)), *middle, MultiStage(k, dims, tuple(r3))]


def fiber_permutations(p: MultiGridPermutation):
    """Per-fiber pieces of the middle stage of the outermost split.

    Returns one permutation of the whole space per value of the last
    coordinate; each moves only points of its own fiber.  Used to check that
    pieces from distinct fibers commute.
    """
    dims = p.dims
    rows, cols = prod(dims[:-1]), dims[-1]
    _, lam, _ = _rlr(rows, cols, p.table)
    out = []
    for b in range(cols):
        table = list(range(rows * cols))
        for a in range(rows):
            table[a * cols + b] = lam[b][a] * cols + b
        out.append(MultiGridPermutation(dims, tuple(table)))
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Verification:
    """Outcome of a decomposition check; truthy iff the check passed."""

    ok: bool
    message: str = "OK"
    cell: tuple[int, ...] | None = None
    expected: tuple[int, ...] | None = None
    actual: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _apply_stages(stages, m, n):
    # pointwise images straight from the local permutations
    plan = [(s.kind is Kind.L, s.perms) for s in stages]
    got = []
    for a in range(m):
        for b in range(n):
            x, y = a, b
            for is_l, perms in plan:
                if is_l:
                    x = perms[y][x]
                else:
                    y = perms[x][y]
            got.append(x * n + y)
    return got


def _first_mismatch(got, want):
    for x, (g, w) in enumerate(zip(got, want)):
        if g != w:
            return x
    return None


def verify_decomposition(d: Decomposition, p: GridPermutation) -> Verification:
    """Check alternation, declared order, stage shapes and the composition."""
    if (d.m, d.n) != (p.m, p.n):
        raise DimensionMismatch(f"decomposition is {d.m}x{d.n}, target is {p.m}x{p.n}")
    kinds = d.kinds
    for i in range(1, len(kinds)):
        if kinds[i] == kinds[i - 1]:
            return Verification(False, f"stages {i - 1} and {i} are both {kinds[i]}")
    if d.order is not None and d.order.upper() != kinds:
        return Verification(False, f"declared order {d.order} but stages are {kinds or 'empty'}")
    for i, s in enumerate(d.stages):
        if s.shape != (p.m, p.n):
            return Verification(False, f"stage {i} has shape {s.shape}, expected {(p.m, p.n)}")
    got = _apply_stages(d.stages, p.m, p.n)
    x = _first_mismatch(got, p.table)
    if x is None:
        return Verification(True)
    n = p.n
    cell = divmod(x, n)
    return Verification(False, f"mismatch at {cell}: expected {divmod(p.table[x], n)}, got {divmod(got[x], n)}",
                        cell, divmod(p.table[x], n), divmod(got[x], n))


def verify_multi(stages: Sequence[MultiStage], p: MultiGridPermutation,
                 schedule: Sequence[int] | None = None) -> Verification:
    if schedule is None:
        schedule = multi_schedule(len(p.dims))
    axes = tuple(s.axis for s in stages)
    if axes != tuple(schedule):
        return Verification(False, f"axis schedule {axes} differs from {tuple(schedule)}")
    table = list(range(prod(p.dims)))
    for i, s in enumerate(stages):
        if s.dims != p.dims:
            raise DimensionMismatch(f"stage {i} has dims {s.dims}, target has {p.dims}")
        t = s.table()
        table = [t[y] for y in table]
    x = _first_mismatch(table, p.table)
    if x is None:
        return Verification(True)
    cell = _coords(x, p.dims)
    exp, act = _coords(p.table[x], p.dims), _coords(table[x], p.dims)
    return Verification(False, f"mismatch at {cell}: expected {exp}, got {act}", cell, exp, act)


# ---------------------------------------------------------------------------
# finite support


@dataclass(frozen=True)
class SparsePermutation:
    """Finite-support permutation of the unbounded grid ``N x N``.

    Points absent from ``support`` are fixed.
    """

    support: Mapping[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        sup = {}
        for src, dst in dict(self.support).items():
            src, dst = tuple(int(v) for v in src), tuple(int(v) for v in dst)
            for pt in (src, dst):
                if len(pt) != 2 or min(pt) < 0:
                    raise RangeViolation(pt)
            sup[src] = dst
        images = set()
        for dst in sup.values():
            if dst in images:
                raise NotInjective(dst)
            images.add(dst)
        for dst in images:
            if dst not in sup:
                raise NotInjective(dst)  # fixed point outside the support is also hit
        object.__setattr__(self, "support", sup)

    @classmethod
    def from_pairs(cls, pairs) -> "SparsePermutation":
        sup = {}
        for src, dst in pairs:
            src = tuple(src)
            if src in sup:
                raise DuplicateSource(src)
            sup[src] = tuple(dst)
        return cls(sup)

    def __call__(self, point):
        point = tuple(point)
        return self.support.get(point, point)

    def bounding_grid(self) -> tuple[int, int]:
        if not self.support:
            return (0, 0)
        pts = list(self.support)
        return (max(a for a, _ in pts) + 1, max(b for _, b in pts) + 1)

    def embed(self) -> GridPermutation:
        m, n = self.bounding_grid()
        table = list(range(m * n))
        for (a, b), (a2, b2) in self.support.items():
            table[a * n + b] = a2 * n + b2
        return GridPermutation(m, n, tuple(table))


@dataclass(frozen=True)
class SparseDecomposition:
    """A decomposition on the bounding grid; stages fix everything outside it."""

    m: int
    n: int
    decomposition: Decomposition | None

    @property
    def stages(self) -> tuple[Stage, ...]:
        return () if self.decomposition is None else self.decomposition.stages


def decompose_finite_support(p: SparsePermutation, order: str = "RLR") -> SparseDecomposition:
    m, n = p.bounding_grid()
    if m == 0:
        return SparseDecomposition(0, 0, None)
    return SparseDecomposition(m, n, decompose_two(p.embed(), order))


def verify_sparse(d: SparseDecomposition, p: SparsePermutation) -> Verification:
    if d.decomposition is None:
        if p.support and any(k != v for k, v in p.support.items()):
            return Verification(False, "empty decomposition for a non-identity permutation")
        return Verification(True)
    m, n = d.m, d.n
    for (a, b), (a2, b2) in p.support.items():
        if max(a, a2) >= m or max(b, b2) >= n:
            return Verification(False, f"support point {(a, b)} -> {(a2, b2)} leaves the {m}x{n} grid")
    return verify_decomposition(d.decomposition, p.embed())
