"""Exhaustive product-set census over small symmetric groups.

Permutations of ``K`` points are rows of a ``uint8`` array; sets of
permutations are boolean masks indexed by lexicographic (Lehmer) rank, so a
full ``S_9`` bitset costs 362880 bytes.

Word convention: ``product_set("RL", (m, n))`` is ``{r o l}``, the leftmost
letter acting last.  Axis schedules (``lower_bound_check``) are listed in
application order instead, first applied first.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Sequence

import numpy as np

from .errors import ConsistencyViolation, InstanceTooLarge
from .grid import GridPermutation, in_word, normalize_word

WORDS = ("1", "L", "R", "LR", "RL", "LRL", "RLR")
MAX_HIERARCHY_LEVEL = 6
_CHUNK = 1 << 22  # uint8 cells per composition batch


@lru_cache(maxsize=None)
def all_perms(k: int) -> np.ndarray:
    """All permutations of ``range(k)`` in lexicographic order, shape ``(k!, k)``."""
    out = np.array(list(itertools.permutations(range(k))), dtype=np.uint8)
    out.setflags(write=False)
    return out.reshape(factorial(k), k)


def rank_perms(P: np.ndarray) -> np.ndarray:
    """Lexicographic rank of every row of ``P``."""
    P = np.asarray(P)
    k = P.shape[1]
    r = np.zeros(P.shape[0], dtype=np.int64)
    for i in range(k):
        smaller = (P[:, i + 1:] < P[:, i:i + 1]).sum(axis=1)
        r = r * (k - i) + smaller
    return r


def unrank(rank: int, k: int) -> tuple[int, ...]:
    items = list(range(k))
    out = []
    for i in range(k, 0, -1):
        q, rank = divmod(rank, factorial(i - 1))
        out.append(items.pop(q))
    return tuple(out)


def _check_size(dims: Sequence[int]) -> None:
    cells = prod(dims)
    cap = 9 if len(dims) <= 2 else 8
    if cells > cap:
        raise InstanceTooLarge(f"{'x'.join(map(str, dims))} has {cells} cells; the census cap is {cap}")


@lru_cache(maxsize=None)
def axis_group(dims: tuple[int, ...], axis: int) -> np.ndarray:
    """Every permutation that only changes coordinate ``axis`` (1-based).

    The group is a direct product of ``S_d`` over the fibers of that axis.
    """
    K = prod(dims)
    d = dims[axis - 1]
    coords = np.array(list(itertools.product(*(range(x) for x in dims))), dtype=np.int64).reshape(K, len(dims))
    others = np.delete(coords, axis - 1, axis=1)
    other_dims = dims[:axis - 1] + dims[axis:]
    fiber_id = np.ravel_multi_index(others.T, other_dims) if other_dims else np.zeros(K, dtype=np.int64)
    n_fibers = K // d
    # fiber_points[f][c] = flat point of fiber f with coordinate value c
    fiber_points = np.zeros((n_fibers, d), dtype=np.int64)
    fiber_points[fiber_id, coords[:, axis - 1]] = np.arange(K)
    local = all_perms(d).astype(np.int64)
    choice = np.indices((len(local),) * n_fibers).reshape(n_fibers, -1).T
    out = np.empty((choice.shape[0], K), dtype=np.uint8)
    for f in range(n_fibers):
        pts = fiber_points[f]
        out[:, pts] = pts[local[choice[:, f]]]
    out.setflags(write=False)
    return out


def letter_group(letter: str, m: int, n: int) -> np.ndarray:
    return axis_group((m, n), 1 if letter == "L" else 2)


@dataclass
class PermSet:
    """A set of permutations of ``prod(dims)`` points as a rank bitset."""

    dims: tuple[int, ...]
    mask: np.ndarray

    @classmethod
    def identity(cls, dims: Sequence[int]) -> "PermSet":
        mask = np.zeros(factorial(prod(dims)), dtype=bool)
        mask[0] = True
        return cls(tuple(dims), mask)

    @classmethod
    def from_group(cls, dims: Sequence[int], group: np.ndarray) -> "PermSet":
        mask = np.zeros(factorial(prod(dims)), dtype=bool)
        mask[rank_perms(group)] = True
        return cls(tuple(dims), mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, perm) -> bool:
        table = perm.table if hasattr(perm, "table") else perm
        return bool(self.mask[rank_perms(np.array([table], dtype=np.uint8))[0]])

    def __and__(self, other: "PermSet") -> "PermSet":
        return PermSet(self.dims, self.mask & other.mask)

    def __or__(self, other: "PermSet") -> "PermSet":
        return PermSet(self.dims, self.mask | other.mask)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermSet) and self.dims == other.dims and bool(np.array_equal(self.mask, other.mask))

    @property
    def is_full(self) -> bool:
        return bool(self.mask.all())

    def ranks(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def perms(self) -> np.ndarray:
        return all_perms(prod(self.dims))[self.mask]


def left_multiply(group: np.ndarray, s: PermSet, threads: int = 1) -> PermSet:
    """``{g o x : g in group, x in s}``."""
    K = prod(s.dims)
    total = factorial(K)
    elems = s.perms()
    if len(elems) == total:
        return PermSet(s.dims, s.mask.copy())
    per_batch = max(1, _CHUNK // max(1, elems.size))
    batches = [group[i:i + per_batch] for i in range(0, len(group), per_batch)]

    def run(batch):
        hit = np.zeros(total, dtype=bool)
        hit[rank_perms(batch[:, elems].reshape(-1, K))] = True
        return hit

    mask = np.zeros(total, dtype=bool)
    if threads > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for hit in pool.map(run, batches):
                mask |= hit
    else:
        for b in batches:
            mask |= run(b)
            if mask.all():
                break
    return PermSet(s.dims, mask)


def product_set(word: str | Sequence[int], dims: Sequence[int], threads: int = 1) -> PermSet:
    """The exact set ``G_{w1} o G_{w2} o ... o G_{wl}``.

    ``word`` is a string over ``{L, R}`` (two factors, composition order) or a
    sequence of 1-based axes (any number of factors, application order).
    """
    dims = tuple(int(d) for d in dims)
    _check_size(dims)
    if isinstance(word, str):
        if len(dims) != 2:
            raise ValueError("letter words need exactly two factors")
        w = normalize_word(word)
        axes_applied = [1 if ch == "L" else 2 for ch in reversed(w)]
    else:
        axes_applied = [int(a) for a in word]
        for a in axes_applied:
            if not 1 <= a <= len(dims):
                raise ValueError(f"axis {a} outside 1..{len(dims)}")
    s = PermSet.identity(dims)
    for axis in axes_applied:
        s = left_multiply(axis_group(dims, axis), s, threads)
    return s


@dataclass
class HierarchyRow:
    level: int
    sigma: int
    pi: int
    delta: int
    union: int


@dataclass
class CensusReport:
    m: int
    n: int
    total: int
    sizes: dict[str, int]
    intersection_LR_RL: int
    union_LR_RL: int
    hierarchy: list[HierarchyRow]
    collapse_level: int | None
    collapse_kind: str | None
    checks: dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def _hierarchy(m: int, n: int, threads: int = 1):
    dims = (m, n)
    gl, gr = letter_group("L", m, n), letter_group("R", m, n)
    sigma, pi = PermSet.from_group(dims, gl), PermSet.from_group(dims, gr)
    rows = []
    collapse = (None, None)
    for level in range(1, MAX_HIERARCHY_LEVEL + 1):
        delta = sigma & pi
        union = sigma | pi
        rows.append(HierarchyRow(level, len(sigma), len(pi), len(delta), len(union)))
        if delta.is_full:
            collapse = (level, "delta")
            break
        if union.is_full and collapse == (None, None):
            collapse = (level, "union")
        sigma, pi = left_multiply(gl, pi, threads), left_multiply(gr, sigma, threads)
    return rows, collapse


def hierarchy(m: int, n: int, threads: int = 1) -> list[HierarchyRow]:
    """Rows ``(i, |Sigma_i|, |Pi_i|, |Delta_i|, |Sigma_i u Pi_i|)``.

    ``Sigma_1 = G_L``, ``Pi_1 = G_R``, ``Sigma_{i+1} = G_L Pi_i`` and
    ``Pi_{i+1} = G_R Sigma_i``; iteration stops once ``Delta_i`` is the
    whole group, or after six levels.
    """
    _check_size((m, n))
    return _hierarchy(m, n, threads)[0]


def census(m: int, n: int, threads: int = 1, check_membership: bool = True) -> CensusReport:
    """Sizes of every distinct product set for the ``m x n`` grid.

    Raises :class:`ConsistencyViolation` if a closed-form count or the
    column/row bijection test disagrees with enumeration.
    """
    dims = (m, n)
    _check_size(dims)
    K = m * n
    sets = {w: product_set("" if w == "1" else w, dims, threads) for w in WORDS}
    sizes = {w: len(sets[w]) for w in WORDS}
    rows, (level, kind) = _hierarchy(m, n, threads)
    checks = {
        "L": sizes["L"] == factorial(m) ** n,
        "R": sizes["R"] == factorial(n) ** m,
        "LR": sizes["LR"] == factorial(m) ** n * factorial(n) ** m,
        "RL": sizes["RL"] == sizes["LR"],
        "LRL": sizes["LRL"] == factorial(K),
        "RLR": sizes["RLR"] == factorial(K),
    }
    if check_membership:
        rl, lr = sets["RL"].mask, sets["LR"].mask
        ok_rl = ok_lr = True
        for r, t in enumerate(itertools.permutations(range(K))):
            p = GridPermutation(m, n, t)
            ok_rl &= in_word(p, "RL") == rl[r]
            ok_lr &= in_word(p, "LR") == lr[r]
        checks["membership_RL"] = bool(ok_rl)
        checks["membership_LR"] = bool(ok_lr)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise ConsistencyViolation(f"census {m}x{n}: checks failed: {failed}")
    return CensusReport(
        m=m, n=n, total=factorial(K), sizes=sizes,
        intersection_LR_RL=len(sets["LR"] & sets["RL"]),
        union_LR_RL=len(sets["LR"] | sets["RL"]),
        hierarchy=rows, collapse_level=level, collapse_kind=kind, checks=checks)


@dataclass
class LowerBoundReport:
    dims: tuple[int, ...]
    schedule: tuple[int, ...]
    covered: bool
    size: int
    total: int
    witness: tuple[int, ...] | None  # flat table of a permutation outside the product

    def to_dict(self) -> dict:
        return asdict(self)


def lower_bound_check(dims: Sequence[int], schedule: Sequence[int], threads: int = 1) -> LowerBoundReport:
    """Does the axis schedule (application order) reach every permutation?

    A schedule in which two distinct axes occur at most once can never cover
    the group when every factor has at least two points; covering such a
    schedule would mean a bug, reported as :class:`ConsistencyViolation`.
    """
    dims = tuple(int(d) for d in dims)
    schedule = tuple(int(a) for a in schedule)
    _check_size(dims)
    s = product_set(schedule, dims, threads)
    total = factorial(prod(dims))
    covered = s.is_full
    rare = [a for a in range(1, len(dims) + 1) if schedule.count(a) <= 1]
    if covered and len(rare) >= 2 and all(d >= 2 for d in dims):
        raise ConsistencyViolation(f"schedule {schedule} covers Sym with axes {rare} used at most once")
    witness = None
    if not covered:
        r = int(np.argmin(s.mask))
        witness = unrank(r, prod(dims))
        if s.mask[rank_perms(np.array([witness]))[0]]:
            raise ConsistencyViolation("witness is inside the product set")
    return LowerBoundReport(dims, schedule, covered, len(s), total, witness)


def union_gap_table(max_cells: int = 9, threads: int = 1) -> list[tuple[int, int, int, int]]:
    """``(m, n, |G_LR u G_RL|, (mn)!)`` for every grid with ``2 <= m, n`` and ``mn <= max_cells``."""
    out = []
    for m in range(2, max_cells + 1):
        for n in range(2, max_cells // m + 1):
            lr = product_set("LR", (m, n), threads)
            rl = product_set("RL", (m, n), threads)
            out.append((m, n, len(lr | rl), factorial(m * n)))
    return out
