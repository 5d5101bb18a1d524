"""Perfect matchings under doubly regular count matrices.

A square nonnegative integer matrix whose rows and columns all sum to the same
``n >= 1`` always dominates some permutation matrix (Hall's theorem).  The
grid decomposition peels one such permutation off per column.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, NoPerfectMatching, NotBalanced


@dataclass(frozen=True)
class MultiplicityMatrix:
    """``entries[a][b]`` counts how often value ``b`` sits in row ``a``."""

    entries: tuple[tuple[int, ...], ...]
    regularity: int

    def __post_init__(self):
        size = len(self.entries)
        for row in self.entries:
            if len(row) != size:
                raise DimensionMismatch("multiplicity matrix must be square")
            if any(v < 0 for v in row):
                raise ValueError("multiplicity matrix entries must be nonnegative")
        for a, row in enumerate(self.entries):
            if sum(row) != self.regularity:
                raise NotBalanced(a, sum(row), self.regularity)
        for b in range(size):
            col = sum(row[b] for row in self.entries)
            if col != self.regularity:
                raise NotBalanced(b, col, self.regularity)

    @property
    def size(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Matching:
    """``match[a]`` is the column matched to row ``a``."""

    match: tuple[int, ...]

    def __getitem__(self, a: int) -> int:
        return self.match[a]

    def __len__(self) -> int:
        return len(self.match)

    def as_permutation_matrix(self) -> list[list[int]]:
        size = len(self.match)
        return [[int(self.match[a] == b) for b in range(size)] for a in range(size)]


def multiplicity_matrix(proj: Sequence[Sequence[int]]) -> MultiplicityMatrix:
    """Count matrix of an ``m x n`` array over ``range(m)``.

    Every value must occur exactly ``n`` times overall.
    """
    m = len(proj)
    if m == 0:
        raise DimensionMismatch("projection has no rows")
    n = len(proj[0])
    counts = [[0] * m for _ in range(m)]
    totals = [0] * m
    for a, row in enumerate(proj):
        if len(row) != n:
            raise DimensionMismatch("projection rows differ in length")
        for v in row:
            if not 0 <= v < m:
                raise ValueError(f"value {v} outside range({m})")
            counts[a][v] += 1
            totals[v] += 1
    for v, c in enumerate(totals):
        if c != n:
            raise NotBalanced(v, c, n)
    return MultiplicityMatrix(tuple(tuple(r) for r in counts), n)


def _augment(adj, match_row, match_col, root, visited) -> bool:
    # Iterative Kuhn search from an unmatched root whose direct neighbours
    # are all taken.  Each reached row grabs a free column before any deeper
    # rerouting is tried; columns are scanned in increasing order.
    stack = [[root, 0]]
    via: list[int] = []
    while stack:
        top = stack[-1]
        row_adj = adj[top[0]]
        i = top[1]
        while i < len(row_adj) and visited[row_adj[i]]:
            i += 1
        if i == len(row_adj):
            stack.pop()
            if via:
                via.pop()
            continue
        b = row_adj[i]
        top[1] = i + 1
        visited[b] = True
        nxt = match_col[b]
        via.append(b)
        for f in adj[nxt]:
            if match_col[f] == -1:
                match_col[f] = nxt
                match_row[nxt] = f
                for (row, _), col in zip(stack, via):
                    match_col[col] = row
                    match_row[row] = col
                return True
        stack.append([nxt, 0])
    return False


def match_counts(counts: Sequence[Sequence[int]]) -> list[int]:
    """Raw matching on a list-of-lists count matrix; returns ``match[a]``."""
    size = len(counts)
    match_row = [-1] * size
    match_col = [-1] * size
    adj = None
    for a in range(size):
        row = counts[a]
        for b in range(size):
            if row[b] and match_col[b] == -1:
                match_col[b] = a
                match_row[a] = b
                break
        else:
            if adj is None:
                adj = [[b for b in range(size) if r[b] > 0] for r in counts]
            visited = [False] * size
            if not _augment(adj, match_row, match_col, a, visited):
                reached = [b for b in range(size) if visited[b]]
                violator = {a} | {match_col[b] for b in reached}
                raise NoPerfectMatching(violator, reached)
    return match_row


def hall_matching(N: MultiplicityMatrix) -> Matching:
    """Permutation ``match`` with ``N[a][match[a]] >= 1`` for every row.

    Deterministic: rows are processed in increasing order and each row takes
    the lowest-index free column it can reach directly before trying to
    reroute earlier rows.
    """
    return Matching(tuple(match_counts(N.entries)))
