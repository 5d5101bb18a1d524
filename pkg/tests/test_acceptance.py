"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run ``pytest tests/test_acceptance.py`` for a PASS/FAIL line per criterion
in the terminal summary, or ``python tests/test_acceptance.py`` to print the
same lines directly.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from math import factorial
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from altdiam import (  # noqa: E402
    BlockSplit,
    FieldMatrix,
    GridPermutation,
    Kind,
    MultiGridPermutation,
    SparsePermutation,
    census,
    decompose_finite_support,
    decompose_linear,
    decompose_multi,
    decompose_two,
    flip_generated,
    hierarchy,
    in_LR_linear_counterexample_check,
    in_word,
    linear_stage_kind,
    lower_bound_check,
    product_set,
    verify_decomposition,
    verify_multi,
    verify_sparse,
)
from altdiam.linalg import general_linear_group, is_invertible  # noqa: E402
from altdiam.posets import all_posets, antichain, chain, diamond  # noqa: E402

from oracles import schedule_product  # noqa: E402

CRITERIA = {
    1: "exhaustive two-factor round trip on 2x2, 2x3, 3x3 in both orders",
    2: "closed-form sizes of LR and LRL products",
    3: "RL membership test agrees with the enumerated product set",
    4: "hierarchy collapses at level 3 on 2x2 and 2x3",
    5: "three factors: 5-stage schedule and the length-4 lower bound",
    6: "linear LRL factorization over GL(2,F2), GL(2,F3), GL(4,F2)",
    7: "poset flip generation and the size-3 dichotomy",
    8: "finite-support batch decomposes and verifies",
}


def criterion(number: int):
    def mark(fn):
        fn.criterion = number
        return pytest.mark.acceptance(fn)
    return mark


@criterion(1)
def test_criterion_1_two_factor_round_trip():
    failures = 0
    for m, n in [(2, 2), (2, 3)]:
        for t in itertools.permutations(range(m * n)):
            p = GridPermutation(m, n, t)
            for order in ("RLR", "LRL"):
                d = decompose_two(p, order)
                failures += not (len(d.stages) == 3 and d.kinds == order and verify_decomposition(d, p))
    start = time.perf_counter()
    for t in itertools.permutations(range(9)):
        p = GridPermutation(3, 3, t)
        for order in ("RLR", "LRL"):
            d = decompose_two(p, order)
            failures += not (len(d.stages) == 3 and d.kinds == order and verify_decomposition(d, p))
    elapsed = time.perf_counter() - start
    assert failures == 0
    assert elapsed < 60, f"3x3 sweep took {elapsed:.1f} s"


@criterion(2)
def test_criterion_2_counting_formulas():
    for m, n in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        r = census(m, n, check_membership=False)
        formula = factorial(m) ** n * factorial(n) ** m
        assert r.sizes["LR"] == r.sizes["RL"] == formula
        assert r.sizes["LRL"] == r.sizes["RLR"] == factorial(m * n)
        if m * n > 6:
            # product of two groups with trivial intersection has |G_L| |G_R| elements
            gl = product_set("L", (m, n))
            gr = product_set("R", (m, n))
            assert len(gl & gr) == 1
            assert len(gl) * len(gr) == formula
    assert census(2, 3, check_membership=False).sizes["LR"] == 288
    assert census(3, 3, check_membership=False).sizes["LR"] == 46656


@criterion(3)
def test_criterion_3_membership_oracle():
    for m in range(1, 7):
        for n in range(1, 7 // m + 1):
            if m * n > 6:
                continue
            rl = product_set("RL", (m, n))
            for r, t in enumerate(itertools.permutations(range(m * n))):
                assert in_word(GridPermutation(m, n, t), "RL") == bool(rl.mask[r])


@criterion(4)
def test_criterion_4_hierarchy():
    for m, n in [(2, 2), (2, 3)]:
        rows = hierarchy(m, n)
        full = factorial(m * n)
        assert rows[-1].level == 3
        assert rows[-1].sigma == rows[-1].pi == rows[-1].delta == full
        assert all(row.delta < full for row in rows[:-1])


@criterion(5)
def test_criterion_5_multi_factor():
    rng = random.Random(20240531)
    dims = (2, 2, 2)
    for _ in range(1000):
        t = list(range(8))
        rng.shuffle(t)
        p = MultiGridPermutation(dims, tuple(t))
        stages = decompose_multi(p)
        assert [s.axis for s in stages] == [3, 2, 1, 2, 3]
        assert verify_multi(stages, p)
    r = lower_bound_check(dims, (3, 2, 1, 2))
    assert r.covered is False and r.witness is not None
    assert tuple(r.witness) not in schedule_product(dims, (3, 2, 1, 2))
    assert lower_bound_check(dims, (3, 2, 1, 2, 3)).covered


@criterion(6)
def test_criterion_6_linear():
    start = time.perf_counter()
    counts = {}
    for size, p, split in [(2, 2, BlockSplit(1, 1)), (2, 3, BlockSplit(1, 1)), (4, 2, BlockSplit(2, 2))]:
        count = 0
        for M in general_linear_group(size, p):
            d = decompose_linear(M, split)
            assert d.product() == M
            assert [s.kind for s in d.stages] == [Kind.L, Kind.R, Kind.L]
            for s in d.stages:
                assert linear_stage_kind(s.matrix, split) in (s.kind, Kind.BOTH)
            count += 1
        counts[(size, p)] = count
    elapsed = time.perf_counter() - start
    assert counts == {(2, 2): 6, (2, 3): 48, (4, 2): 20160}
    assert elapsed < 30, f"linear sweep took {elapsed:.1f} s"
    swap = FieldMatrix.from_rows(2, [[0, 1], [1, 0]])
    d = decompose_linear(swap, BlockSplit(1, 1))
    assert d.product() == swap and all(is_invertible(s.matrix) for s in d.stages)
    assert in_LR_linear_counterexample_check(2) is True


@criterion(7)
def test_criterion_7_posets():
    assert flip_generated(chain(2)).flip_in_closure is False
    assert flip_generated(diamond()).flip_in_closure is False
    assert flip_generated(antichain(2)).flip_in_closure is True
    exceptions = [P for k in (1, 2, 3) for P in all_posets(k)
                  if flip_generated(P).flip_in_closure != P.is_trivial()]
    assert exceptions == []


@criterion(8)
def test_criterion_8_sparse():
    rng = random.Random(8675309)
    cells = [(a, b) for a in range(50) for b in range(50)]
    for _ in range(100):
        k = rng.randint(0, 20)
        points = rng.sample(cells, k)
        images = points[:]
        rng.shuffle(images)
        p = SparsePermutation(dict(zip(points, images)))
        d = decompose_finite_support(p)
        assert verify_sparse(d, p)
        if d.decomposition is not None:
            whole = d.decomposition.compose()
            for a in range(d.m):
                for b in range(d.n):
                    assert whole((a, b)) == p((a, b))


def _main() -> int:
    tests = sorted((v for v in globals().values() if callable(v) and hasattr(v, "criterion")),
                   key=lambda f: f.criterion)
    bad = 0
    for fn in tests:
        start = time.perf_counter()
        try:
            fn()
            verdict = "PASS"
        except AssertionError as exc:
            verdict, bad = f"FAIL ({exc})", bad + 1
        print(f"criterion {fn.criterion}: {verdict}  {CRITERIA[fn.criterion]}  [{time.perf_counter() - start:.1f} s]")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(_main())
