"""Linear algebra over prime fields and block-stage factorization.

A matrix of size ``m + n`` is split into blocks with the ``m x m`` block on the
top left.  Stages are classified by which rows they may change:

* an **L-stage** only changes the top ``m`` rows, so it has the form
  ``[[P, Q], [0, I]]``;
* an **R-stage** only changes the bottom ``n`` rows, so it has the form
  ``[[I, 0], [R, S]]``.

Every invertible matrix is a product ``L1 @ R @ L2`` of three such stages
(and, conjugating by the block swap, ``R1 @ L @ R2``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import ConsistencyViolation, DimensionMismatch, FieldTooLarge, NotInvertible
from .grid import Kind


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        p = self.p
        if not 2 <= p < 1 << 16:
            raise ValueError(f"modulus must satisfy 2 <= p < 65536, got {p}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
            d += 1

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix with entries reduced to ``0 .. p-1``."""

    field: PrimeField
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.field.p
        rows = tuple(tuple(int(v) % p for v in row) for row in self.entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, p: int | PrimeField, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        f = p if isinstance(p, PrimeField) else PrimeField(p)
        return cls(f, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, field: PrimeField, size: int) -> "FieldMatrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.field != other.field:
            raise DimensionMismatch("matrices over different fields")
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        p = self.p
        cols = list(zip(*other.entries))
        return FieldMatrix(self.field, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
            for row in self.entries))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            v == (i == j) for i, row in enumerate(self.entries) for j, v in enumerate(row))


def _row_echelon(rows: list[list[int]], p: int) -> int:
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][j]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][j], p - 2, p)
        prow = [v * inv % p for v in rows[rank]]
        rows[rank] = prow
        for r in range(len(rows)):
            if r != rank and rows[r][j]:
                c = rows[r][j]
                rows[r] = [(v - c * w) % p for v, w in zip(rows[r], prow)]
        rank += 1
    return rank


def rank(M: FieldMatrix) -> int:
    return _row_echelon([list(r) for r in M.entries], M.p)


def is_invertible(M: FieldMatrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def inverse(M: FieldMatrix) -> FieldMatrix:
    size = M.rows
    if size != M.cols:
        raise NotInvertible(f"{M.rows}x{M.cols} matrix is not square")
    aug = [list(r) + [int(i == j) for j in range(size)] for i, r in enumerate(M.entries)]
    p = M.p
    for j in range(size):
        piv = next((r for r in range(j, size) if aug[r][j]), None)
        if piv is None:
            raise NotInvertible("matrix is singular")
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = pow(aug[j][j], p - 2, p)
        aug[j] = [v * inv % p for v in aug[j]]
        for r in range(size):
            if r != j and aug[r][j]:
                c = aug[r][j]
                aug[r] = [(v - c * w) % p for v, w in zip(aug[r], aug[j])]
    return FieldMatrix(M.field, tuple(tuple(r[size:]) for r in aug))


@dataclass(frozen=True)
class BlockSplit:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"block sizes must be positive, got ({self.m}, {self.n})")

    @property
    def size(self) -> int:
        return self.m + self.n

    def swapped(self) -> "BlockSplit":
        return BlockSplit(self.n, self.m)


def _is_l_form(M: FieldMatrix, split: BlockSplit) -> bool:
    m, size = split.m, split.size
    return all(M.entries[i][j] == (i == j) for i in range(m, size) for j in range(size))


def _is_r_form(M: FieldMatrix, split: BlockSplit) -> bool:
    m, size = split.m, split.size
    return all(M.entries[i][j] == (i == j) for i in range(m) for j in range(size))


def linear_stage_kind(M: FieldMatrix, split: BlockSplit) -> Kind:
    if M.rows != split.size or M.cols != split.size:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix does not fit split {split.m}+{split.n}")
    if M.is_identity():
        return Kind.BOTH
    if not is_invertible(M):
        return Kind.NEITHER
    if _is_l_form(M, split):
        return Kind.L
    if _is_r_form(M, split):
        return Kind.R
    return Kind.NEITHER


@dataclass(frozen=True)
class LinearStage:
    kind: Kind
    matrix: FieldMatrix
    split: BlockSplit

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        got = linear_stage_kind(self.matrix, self.split)
        if kind not in (Kind.L, Kind.R) or got not in (kind, Kind.BOTH):
            raise ValueError(f"matrix is not an invertible {kind}-stage for split "
                             f"{self.split.m}+{self.split.n} (classified {got})")


@dataclass(frozen=True)
class LinearDecomposition:
    """Three stages whose product ``stages[0] @ stages[1] @ stages[2]`` is the input."""

    stages: tuple[LinearStage, LinearStage, LinearStage]
    order: str
    log: tuple[str, ...] = field(default=(), compare=False)

    def product(self) -> FieldMatrix:
        a, b, c = (s.matrix for s in self.stages)
        return a @ b @ c


class _Reducer:
    """Row reduction of ``work`` that records every operation into ``acc``.

    Keeps ``acc @ original == work`` at all times.
    """

    def __init__(self, work, p, log, stage):
        self.work = work
        self.p = p
        self.acc = [[int(i == j) for j in range(len(work))] for i in range(len(work))]
        self.log = log
        self.stage = stage

    def swap(self, i, j):
        for mat in (self.work, self.acc):
            mat[i], mat[j] = mat[j], mat[i]
        self.log.append(f"{self.stage}: swap rows {i} and {j}")

    def scale(self, i, c):
        p = self.p
        for mat in (self.work, self.acc):
            mat[i] = [v * c % p for v in mat[i]]
        self.log.append(f"{self.stage}: row {i} *= {c}")

    def add(self, target, src, c):
        # row[target] += c * row[src]
        p = self.p
        for mat in (self.work, self.acc):
            mat[target] = [(v + c * w) % p for v, w in zip(mat[target], mat[src])]
        self.log.append(f"{self.stage}: row {target} += {c} * row {src}")


def decompose_linear(M: FieldMatrix, split: BlockSplit) -> LinearDecomposition:
    """Factor an invertible ``M`` as ``L1 @ R @ L2``.

    Three reductions turn ``M`` into the identity: top-row operations make the
    top-left block the identity, bottom-row operations clear the bottom-left
    block and normalize the bottom-right block, and top-row operations clear
    the top-right block.  The stages are the inverses of the three
    accumulated operation products.
    """
    if M.rows != split.size or M.cols != split.size:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix does not fit split {split.m}+{split.n}")
    if not is_invertible(M):
        raise NotInvertible("matrix is singular")
    p, m, size = M.p, split.m, split.size
    log: list[str] = []
    work = [list(r) for r in M.entries]

    # top-left block -> identity, touching only top rows
    red1 = _Reducer(work, p, log, "L1")
    for j in range(m):
        piv = next((r for r in range(j, m) if work[r][j]), None)
        if piv is not None:
            if piv != j:
                red1.swap(j, piv)
        else:
            # rows j..m-1 vanish on columns <= j; borrow a bottom row
            for b in range(m, size):
                reduced = (work[b][j] - sum(work[b][i] * work[i][j] for i in range(j))) % p
                if reduced:
                    red1.add(j, b, 1)
                    for i in range(j):
                        if work[j][i]:
                            red1.add(j, i, p - work[j][i])
                    break
            else:
                raise ConsistencyViolation(f"no pivot for column {j} of an invertible matrix")
        if work[j][j] != 1:
            red1.scale(j, pow(work[j][j], p - 2, p))
        for r in range(m):
            if r != j and work[r][j]:
                red1.add(r, j, p - work[r][j])

    # bottom-left -> 0 and bottom-right -> identity, touching only bottom rows
    red2 = _Reducer(work, p, log, "R")
    for b in range(m, size):
        for i in range(m):
            if work[b][i]:
                red2.add(b, i, p - work[b][i])
    for j in range(m, size):
        piv = next((r for r in range(j, size) if work[r][j]), None)
        if piv is None:
            raise ConsistencyViolation(f"bottom-right block singular at column {j}")
        if piv != j:
            red2.swap(j, piv)
        if work[j][j] != 1:
            red2.scale(j, pow(work[j][j], p - 2, p))
        for r in range(m, size):
            if r != j and work[r][j]:
                red2.add(r, j, p - work[r][j])

    # top-right -> 0, touching only top rows
    red3 = _Reducer(work, p, log, "L2")
    for r in range(m):
        for j in range(m, size):
            if work[r][j]:
                red3.add(r, j, p - work[r][j])

    if any(work[i][j] != (i == j) for i in range(size) for j in range(size)):
        raise ConsistencyViolation("reduction did not reach the identity")
    f = M.field
    l1, r, l2 = (inverse(FieldMatrix(f, tuple(map(tuple, red.acc)))) for red in (red1, red2, red3))
    return LinearDecomposition(
        (LinearStage(Kind.L, l1, split), LinearStage(Kind.R, r, split), LinearStage(Kind.L, l2, split)),
        "LRL", tuple(log))


def block_swap(field: PrimeField, split: BlockSplit) -> FieldMatrix:
    """Permutation matrix sending coordinates ``(x_A, x_B)`` to ``(x_B, x_A)``."""
    m, n = split.m, split.n
    size = m + n
    rows = [[0] * size for _ in range(size)]
    for i in range(n):
        rows[i][m + i] = 1
    for i in range(m):
        rows[n + i][i] = 1
    return FieldMatrix(field, tuple(map(tuple, rows)))


def decompose_linear_rlr(M: FieldMatrix, split: BlockSplit) -> LinearDecomposition:
    """Factor ``M`` as ``R1 @ L @ R2`` by conjugating with the block swap."""
    S = block_swap(M.field, split)
    S_inv = inverse(S)
    swapped = decompose_linear(S @ M @ S_inv, split.swapped())
    stages = []
    for st, kind in zip(swapped.stages, (Kind.R, Kind.L, Kind.R)):
        stages.append(LinearStage(kind, S_inv @ st.matrix @ S, split))
    return LinearDecomposition(tuple(stages), "RLR", swapped.log)


def decompose(M: FieldMatrix, split: BlockSplit, order: str = "LRL") -> LinearDecomposition:
    order = order.upper()
    if order == "LRL":
        return decompose_linear(M, split)
    if order == "RLR":
        return decompose_linear_rlr(M, split)
    raise ValueError(f"order must be LRL or RLR, got {order!r}")


def general_linear_group(size: int, p: int) -> Iterator[FieldMatrix]:
    """All invertible ``size x size`` matrices over ``F_p``, lexicographically."""
    f = PrimeField(p)
    vectors = list(itertools.product(range(p), repeat=size))
    for rows in itertools.product(vectors, repeat=size):
        if _row_echelon([list(r) for r in rows], p) == size:
            yield FieldMatrix(f, rows)


def stage_group(kind: Kind | str, split: BlockSplit, p: int) -> list[FieldMatrix]:
    """Every matrix classified as a ``kind``-stage (identity included), by brute force."""
    kind = Kind(kind)
    f = PrimeField(p)
    size = split.size
    out = []
    for flat in itertools.product(range(p), repeat=size * size):
        M = FieldMatrix(f, tuple(flat[i * size:(i + 1) * size] for i in range(size)))
        if linear_stage_kind(M, split) in (kind, Kind.BOTH):
            out.append(M)
    return out


def swap_not_in_lr(p: int) -> bool:
    """True iff the 2x2 swap is no product ``L @ R`` of 1+1 block stages over ``F_p``.

    Both stage groups are found by classifying all ``p**4`` matrices, then
    every product is compared with the swap.
    """
    if p > 5:
        raise FieldTooLarge(f"exhaustive check limited to p <= 5, got {p}")
    split = BlockSplit(1, 1)
    swap = FieldMatrix.from_rows(p, [[0, 1], [1, 0]])
    lefts = stage_group(Kind.L, split, p)
    rights = stage_group(Kind.R, split, p)
    return all(l @ r != swap for l in lefts for r in rights)


in_LR_linear_counterexample_check = swap_not_in_lr
