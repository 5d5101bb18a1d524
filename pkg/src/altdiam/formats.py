"""Text and JSON forms of every object the command line reads or writes.

All integers are 0-based.  ``dumps`` is the single JSON writer; it sorts keys
so that identical objects always serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .census import CensusReport, LowerBoundReport
from .decompose import (
    MultiGridPermutation,
    MultiStage,
    SparseDecomposition,
    SparsePermutation,
    _coords,
)
from .grid import Decomposition, GridPermutation, Kind, Stage, build
from .linalg import BlockSplit, FieldMatrix, LinearDecomposition, LinearStage
from .posets import FlipReport


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _is_json(text: str) -> bool:
    return text.lstrip().startswith(("{", "["))


def _pairs(items, dim: int | None = None):
    out = []
    for item in items:
        if len(item) != 2:
            raise ValueError(f"expected [source, target], got {item!r}")
        src, dst = (tuple(int(v) for v in pt) for pt in item)
        if dim is not None and (len(src) != dim or len(dst) != dim):
            raise ValueError(f"expected {dim}-coordinate points, got {item!r}")
        out.append((src, dst))
    return out


# -- grid permutations ------------------------------------------------------

def grid_to_json(p: GridPermutation) -> dict:
    return {"m": p.m, "n": p.n, "map": [[list(src), list(dst)] for src, dst in p.pairs()]}


def grid_from_json(obj: dict) -> GridPermutation:
    return build(int(obj["m"]), int(obj["n"]), _pairs(obj["map"], 2))


def grid_to_text(p: GridPermutation) -> str:
    lines = [f"{p.m} {p.n}"]
    lines += [f"{a} {b} -> {a2} {b2}" for (a, b), (a2, b2) in p.pairs()]
    return "\n".join(lines) + "\n"


def _data_lines(text: str) -> list[str]:
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    return [ln for ln in lines if ln]


def grid_from_text(text: str) -> GridPermutation:
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty permutation file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"first line must be 'm n', got {lines[0]!r}")
    m, n = int(head[0]), int(head[1])
    pairs = []
    for ln in lines[1:]:
        left, sep, right = ln.partition("->")
        src, dst = left.split(), right.split()
        if not sep or len(src) != 2 or len(dst) != 2:
            raise ValueError(f"expected 'a b -> a2 b2', got {ln!r}")
        pairs.append(((int(src[0]), int(src[1])), (int(dst[0]), int(dst[1]))))
    return build(m, n, pairs)


def read_grid(text: str) -> GridPermutation:
    return grid_from_json(json.loads(text)) if _is_json(text) else grid_from_text(text)


# -- two-factor decompositions ----------------------------------------------

def stage_to_json(s: Stage) -> dict:
    return {"kind": s.kind.value, "perms": [list(q) for q in s.perms]}


def decomposition_to_json(d: Decomposition) -> dict:
    return {"m": d.m, "n": d.n, "order": d.order or d.kinds,
            "stages": [stage_to_json(s) for s in d.stages]}


def decomposition_from_json(obj: dict) -> Decomposition:
    stages = tuple(Stage(Kind(s["kind"]), s["perms"]) for s in obj["stages"])
    if "m" in obj:
        m, n = int(obj["m"]), int(obj["n"])
    elif stages:
        m, n = stages[0].shape
    else:
        raise ValueError("decomposition without stages must state m and n")
    return Decomposition(m, n, stages, obj.get("order"))


# -- several factors ----------------------------------------------------------

def multi_to_json(p: MultiGridPermutation) -> dict:
    return {"dims": list(p.dims),
            "map": [[list(_coords(x, p.dims)), list(_coords(y, p.dims))] for x, y in enumerate(p.table)]}


def multi_from_json(obj: dict) -> MultiGridPermutation:
    dims = tuple(int(d) for d in obj["dims"])
    return MultiGridPermutation.from_pairs(dims, _pairs(obj["map"], len(dims)))


def multi_stages_to_json(stages: list[MultiStage], dims) -> dict:
    return {"dims": list(dims), "schedule": [s.axis for s in stages],
            "stages": [{"axis": s.axis, "perms": [list(q) for q in s.perms]} for s in stages]}


def multi_stages_from_json(obj: dict) -> list[MultiStage]:
    dims = tuple(int(d) for d in obj["dims"])
    return [MultiStage(int(s["axis"]), dims, tuple(tuple(q) for q in s["perms"])) for s in obj["stages"]]


# -- finite support -----------------------------------------------------------

def sparse_to_json(p: SparsePermutation) -> dict:
    return {"support": [[list(src), list(dst)] for src, dst in sorted(p.support.items())]}


def sparse_from_json(obj: dict) -> SparsePermutation:
    return SparsePermutation.from_pairs(_pairs(obj["support"], 2))


def sparse_decomposition_to_json(d: SparseDecomposition, order: str) -> dict:
    out = {"m": d.m, "n": d.n, "order": order, "stages": [stage_to_json(s) for s in d.stages]}
    out["sparse"] = True
    return out


def sparse_decomposition_from_json(obj: dict) -> SparseDecomposition:
    m, n = int(obj["m"]), int(obj["n"])
    if not obj["stages"]:
        return SparseDecomposition(m, n, None)
    return SparseDecomposition(m, n, decomposition_from_json(obj))


# -- matrices over F_p --------------------------------------------------------

def matrix_to_json(M: FieldMatrix) -> dict:
    return {"p": M.p, "rows": M.tolist()}


def matrix_from_json(obj: dict) -> FieldMatrix:
    return FieldMatrix.from_rows(int(obj["p"]), obj["rows"])


def matrix_to_text(M: FieldMatrix) -> str:
    lines = [f"{M.p} {M.rows} {M.cols}"] + [" ".join(map(str, r)) for r in M.tolist()]
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str) -> FieldMatrix:
    lines = _data_lines(text)
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 3:
        raise ValueError(f"first line must be 'p rows cols', got {lines[0]!r}")
    p, r, c = (int(v) for v in head)
    rows = [[int(v) for v in ln.split()] for ln in lines[1:]]
    if len(rows) != r or any(len(row) != c for row in rows):
        raise ValueError(f"expected {r} rows of {c} entries")
    return FieldMatrix.from_rows(p, rows)


def read_matrix(text: str) -> FieldMatrix:
    return matrix_from_json(json.loads(text)) if _is_json(text) else matrix_from_text(text)


def linear_stage_to_json(s: LinearStage) -> dict:
    return {"kind": s.kind.value, "split": {"m": s.split.m, "n": s.split.n},
            "p": s.matrix.p, "rows": s.matrix.tolist()}


def linear_stage_from_json(obj: dict) -> LinearStage:
    split = BlockSplit(int(obj["split"]["m"]), int(obj["split"]["n"]))
    return LinearStage(Kind(obj["kind"]), matrix_from_json(obj), split)


def linear_decomposition_to_json(d: LinearDecomposition) -> dict:
    return {"order": d.order, "stages": [linear_stage_to_json(s) for s in d.stages]}


def linear_decomposition_from_json(obj: dict) -> LinearDecomposition:
    stages = tuple(linear_stage_from_json(s) for s in obj["stages"])
    if len(stages) != 3:
        raise ValueError(f"linear decomposition needs 3 stages, got {len(stages)}")
    return LinearDecomposition(stages, obj.get("order", "".join(s.kind.value for s in stages)))


# -- reports ------------------------------------------------------------------

def census_to_json(r: CensusReport) -> dict:
    return r.to_dict()


def census_to_csv(r: CensusReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["m", "n", "word", "size", "total"])
    for word, size in r.sizes.items():
        w.writerow([r.m, r.n, word, size, r.total])
    return buf.getvalue()


def lower_bound_to_json(r: LowerBoundReport) -> dict:
    out = r.to_dict()
    out["dims"], out["schedule"] = list(r.dims), list(r.schedule)
    if r.witness is not None:
        out["witness"] = list(r.witness)
    return out


def flip_report_to_json(r: FlipReport) -> dict:
    return {"flip_in_closure": r.flip_in_closure, "closure_size": r.closure_size,
            "aut_size": r.aut_size, "left_size": r.left_size, "right_size": r.right_size}
