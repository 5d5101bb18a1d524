"""``altdiam`` command line.

Exit status: 0 on success, 1 on domain errors (bad permutation, singular
matrix, failed verification), 2 on usage errors.  Results go to stdout and
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import formats
from .census import WORDS, census, lower_bound_check
from .decompose import (
    decompose_finite_support,
    decompose_multi,
    decompose_two,
    verify_decomposition,
    verify_multi,
    verify_sparse,
)
from .errors import AltDiamError, ConsistencyViolation
from .grid import Decomposition, in_word, stage_kind
from .linalg import BlockSplit, decompose as decompose_matrix, linear_stage_kind
from .posets import all_posets, antichain, chain, diamond, flip_generated, parse_poset


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _split(text: str) -> BlockSplit:
    vals = _int_list(text, "--split")
    if len(vals) != 2 or min(vals) < 1:
        raise UsageError(f"--split expects 'm,n' with positive sizes, got {text!r}")
    return BlockSplit(*vals)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("ALTDIAM_THREADS")
    if env is None:
        return 1
    try:
        n = int(env)
    except ValueError:
        raise UsageError(f"ALTDIAM_THREADS must be an integer, got {env!r}") from None
    if n < 1:
        raise UsageError("ALTDIAM_THREADS must be at least 1")
    return n


def _perm_row(q) -> str:
    return " ".join(map(str, q))


def _render_stages(stages, label) -> str:
    lines = []
    for i, s in enumerate(stages, 1):
        lines.append(f"stage {i}: {label(s)}")
        lines += [f"  {j:>3}: {_perm_row(q)}" for j, q in enumerate(s.perms)]
    return "\n".join(lines) + "\n"


def _render_decomposition(d: Decomposition) -> str:
    head = f"{d.kinds} on the {d.m}x{d.n} grid (stages in application order)\n"

    def label(s):
        return "L (per column: new row of each row)" if s.kind.value == "L" \
            else "R (per row: new column of each column)"
    return head + _render_stages(d.stages, label)


def _emit(out, args, obj, text: str) -> None:
    out.write(formats.dumps(obj) if args.json else text)


def cmd_decompose(args, out) -> int:
    p = formats.read_grid(_read(args.input))
    d = decompose_two(p, args.order.upper())
    _emit(out, args, formats.decomposition_to_json(d), _render_decomposition(d))
    return 0


def cmd_decompose_multi(args, out) -> int:
    p = formats.multi_from_json(json.loads(_read(args.input)))
    stages = decompose_multi(p)
    text = f"{len(stages)} stages on dims {'x'.join(map(str, p.dims))}, axes {' '.join(str(s.axis) for s in stages)}\n"
    text += _render_stages(stages, lambda s: f"axis {s.axis}")
    _emit(out, args, formats.multi_stages_to_json(stages, p.dims), text)
    return 0


def cmd_decompose_sparse(args, out) -> int:
    p = formats.sparse_from_json(json.loads(_read(args.input)))
    order = args.order.upper()
    d = decompose_finite_support(p, order)
    if d.decomposition is None:
        text = "identity: empty support, no stages\n"
    else:
        text = f"support of {len(p.support)} points inside the {d.m}x{d.n} box; all other points fixed\n"
        text += _render_decomposition(d.decomposition)
    _emit(out, args, formats.sparse_decomposition_to_json(d, order), text)
    return 0


def cmd_decompose_linear(args, out) -> int:
    M = formats.read_matrix(_read(args.input))
    split = _split(args.split)
    d = decompose_matrix(M, split, args.order.upper())
    if args.json:
        obj = formats.linear_decomposition_to_json(d)
        if args.log:
            obj["log"] = list(d.log)
        out.write(formats.dumps(obj))
        return 0
    lines = [f"{d.order} over F_{M.p}, split {split.m}+{split.n} (M = product left to right)"]
    for i, s in enumerate(d.stages, 1):
        lines.append(f"stage {i}: {s.kind.value}")
        lines += ["  " + " ".join(f"{v:>{len(str(M.p - 1))}}" for v in row) for row in s.matrix.tolist()]
    if args.log:
        lines.append("operations:")
        lines += [f"  {entry}" for entry in d.log]
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_classify(args, out) -> int:
    text = _read(args.input)
    if args.split:
        M = formats.read_matrix(text)
        kind = linear_stage_kind(M, _split(args.split))
        _emit(out, args, {"kind": kind.value}, f"{kind.value}\n")
        return 0
    p = formats.read_grid(text)
    kind = stage_kind(p)
    words = {w: in_word(p, "" if w == "1" else w) for w in WORDS}
    body = f"kind: {kind.value}\n" + "".join(f"  {w:<4} {'yes' if v else 'no'}\n" for w, v in words.items())
    _emit(out, args, {"kind": kind.value, "words": words}, body)
    return 0


def cmd_verify(args, out) -> int:
    if args.decomposition == "-" and args.target == "-":
        raise UsageError("only one of DECOMPOSITION and TARGET may be read from stdin")
    obj = json.loads(_read(args.decomposition))
    target = _read(args.target)
    if "schedule" in obj or (obj.get("stages") and "axis" in obj["stages"][0]):
        res = verify_multi(formats.multi_stages_from_json(obj), formats.multi_from_json(json.loads(target)))
    elif obj.get("sparse"):
        res = verify_sparse(formats.sparse_decomposition_from_json(obj),
                            formats.sparse_from_json(json.loads(target)))
    elif obj.get("stages") and "split" in obj["stages"][0]:
        d = formats.linear_decomposition_from_json(obj)
        M = formats.read_matrix(target)
        if d.product() == M:
            res_ok, msg = True, "OK"
        else:
            got, want = d.product().tolist(), M.tolist()
            cell = next((i, j) for i in range(len(want)) for j in range(len(want[0])) if got[i][j] != want[i][j])
            res_ok, msg = False, f"mismatch at {cell}: expected {want[cell[0]][cell[1]]}, got {got[cell[0]][cell[1]]}"
        return _verdict(args, out, res_ok, msg, None)
    else:
        res = verify_decomposition(formats.decomposition_from_json(obj), formats.read_grid(target))
    return _verdict(args, out, res.ok, res.message, res.cell)


def _verdict(args, out, ok: bool, message: str, cell) -> int:
    obj = {"ok": ok, "message": message}
    if cell is not None:
        obj["cell"] = list(cell)
    _emit(out, args, obj, message + "\n")
    return 0 if ok else 1


def cmd_census(args, out) -> int:
    if args.m < 1 or args.n < 1:
        raise UsageError("grid sizes must be positive")
    r = census(args.m, args.n, threads=_threads(args))
    if args.csv:
        out.write(formats.census_to_csv(r))
        return 0
    if args.json:
        out.write(formats.dumps(formats.census_to_json(r)))
        return 0
    w = max(len(str(r.total)), 5) + 2
    lines = [f"census of the {r.m}x{r.n} grid, |Sym| = {r.total}", f"{'word':<6}{'size':>{w}}"]
    lines += [f"{word:<6}{size:>{w}}" for word, size in r.sizes.items()]
    lines.append(f"|LR n RL| = {r.intersection_LR_RL}   |LR u RL| = {r.union_LR_RL}")
    lines.append(f"{'level':<6}{'Sigma':>{w}}{'Pi':>{w + 1}}{'Delta':>{w + 1}}{'union':>{w + 1}}")
    for h in r.hierarchy:
        lines.append(f"{h.level:<6}{h.sigma:>{w}}{h.pi:>{w + 1}}{h.delta:>{w + 1}}{h.union:>{w + 1}}")
    if r.collapse_level is None:
        lines.append("no collapse within the level cap")
    else:
        lines.append(f"collapse at level {r.collapse_level} ({r.collapse_kind})")
    out.write("\n".join(lines) + "\n")
    return 0


def cmd_lower_bound(args, out) -> int:
    dims = _int_list(args.dims, "DIMS")
    schedule = _int_list(args.schedule, "SCHEDULE")
    if not dims or any(d < 1 for d in dims):
        raise UsageError("DIMS must list positive sizes")
    if any(not 1 <= a <= len(dims) for a in schedule):
        raise UsageError(f"SCHEDULE axes must lie in 1..{len(dims)}")
    r = lower_bound_check(dims, schedule, threads=_threads(args))
    text = f"schedule {' '.join(map(str, schedule))} reaches {r.size} of {r.total} permutations\n"
    text += "covered\n" if r.covered else f"not covered; witness {_perm_row(r.witness)}\n"
    _emit(out, args, formats.lower_bound_to_json(r), text)
    return 0


def cmd_poset(args, out) -> int:
    if args.sweep is not None:
        rows, bad = [], 0
        for size in range(1, args.sweep + 1):
            for P in all_posets(size):
                rep = flip_generated(P)
                agree = rep.flip_in_closure == P.is_trivial()
                bad += not agree
                rows.append({"size": size, "covers": [list(c) for c in P.covers()],
                             "trivial": P.is_trivial(), **formats.flip_report_to_json(rep), "agrees": agree})
        text = "".join(
            f"{r['size']}  {r['covers']!s:<24} trivial={r['trivial']!s:<5} flip={r['flip_in_closure']!s:<5}"
            f" closure={r['closure_size']} aut={r['aut_size']}\n" for r in rows)
        text += f"{len(rows)} posets, {bad} exceptions\n"
        _emit(out, args, {"posets": rows, "exceptions": bad}, text)
        return 0 if bad == 0 else 1
    if args.chain is not None:
        P = chain(args.chain)
    elif args.antichain is not None:
        P = antichain(args.antichain)
    elif args.diamond:
        P = diamond()
    elif args.input is not None:
        P = parse_poset(_read(args.input))
    else:
        raise UsageError("poset needs a FILE, --chain N, --antichain N, --diamond or --sweep K")
    rep = formats.flip_report_to_json(flip_generated(P))
    text = "".join(f"{k}: {v}\n" for k, v in rep.items())
    _emit(out, args, rep, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="altdiam", description="Alternating stage factorizations of product permutations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        p.set_defaults(func=func)
        return p

    p = add("decompose", cmd_decompose, "factor a grid permutation into three stages")
    p.add_argument("input", help="permutation file (text or JSON), '-' for stdin")
    p.add_argument("--order", choices=["rlr", "lrl", "RLR", "LRL"], default="rlr")

    p = add("decompose-multi", cmd_decompose_multi, "factor a k-fold product permutation into 2k-1 stages")
    p.add_argument("input", help="JSON with dims and map, '-' for stdin")

    p = add("decompose-sparse", cmd_decompose_sparse, "factor a finite-support permutation of N x N")
    p.add_argument("input", help="JSON with support, '-' for stdin")
    p.add_argument("--order", choices=["rlr", "lrl", "RLR", "LRL"], default="rlr")

    p = add("decompose-linear", cmd_decompose_linear, "factor an invertible block matrix over F_p")
    p.add_argument("input", help="matrix file (text or JSON), '-' for stdin")
    p.add_argument("--split", required=True, help="block sizes m,n")
    p.add_argument("--order", choices=["lrl", "rlr", "LRL", "RLR"], default="lrl")
    p.add_argument("--log", action="store_true", help="also print the row operations")

    p = add("classify", cmd_classify, "stage kind and word membership of a permutation or matrix")
    p.add_argument("input", help="permutation or matrix file, '-' for stdin")
    p.add_argument("--split", help="treat input as a matrix with block sizes m,n")

    p = add("verify", cmd_verify, "check a decomposition against its target")
    p.add_argument("decomposition", help="decomposition JSON, '-' for stdin")
    p.add_argument("target", help="target permutation or matrix, '-' for stdin")

    p = add("census", cmd_census, "sizes of all product sets on the m x n grid")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--csv", action="store_true", help="one CSV row per word")
    p.add_argument("--threads", type=int, help="worker threads (default: $ALTDIAM_THREADS or 1)")

    p = add("lower-bound", cmd_lower_bound, "does an axis schedule reach every permutation?")
    p.add_argument("dims", help="factor sizes, e.g. 2,2,2")
    p.add_argument("schedule", help="axes in application order, e.g. 3,2,1,2")
    p.add_argument("--threads", type=int)

    p = add("poset", cmd_poset, "is the flip of X x X generated by the stage groups?")
    p.add_argument("input", nargs="?", help="poset file: size, then 'a < b' lines")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--chain", type=int, metavar="N")
    g.add_argument("--antichain", type=int, metavar="N")
    g.add_argument("--diamond", action="store_true")
    g.add_argument("--sweep", type=int, metavar="K", help="check every poset with at most K points")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", None) is not None and args.threads < 1:
        err.write("altdiam: --threads must be at least 1\n")
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"altdiam: {exc}\n")
        return 2
    except (AltDiamError, ConsistencyViolation) as exc:
        err.write(f"altdiam: {type(exc).__name__}: {exc}\n")
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        err.write(f"altdiam: malformed input: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
