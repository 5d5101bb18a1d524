"""
Which permutations need three stages?
=====================================

Two stages reach only a fraction of the symmetric group.  The census counts
every product set exactly on grids up to nine cells.
"""

from altdiam import GridPermutation, census, in_word, union_gap_table

flip = GridPermutation.flip(2)
for word in ("L", "R", "LR", "RL", "LRL"):
    print(f"flip in {word:<3}:", in_word(flip, word))

r = census(2, 3)
print("sizes on the 2x3 grid:", r.sizes)
print("|LR n RL| =", r.intersection_LR_RL, " |LR u RL| =", r.union_LR_RL, " of", r.total)

for row in r.hierarchy:
    print(f"level {row.level}: Sigma {row.sigma:>4}  Pi {row.pi:>4}  Delta {row.delta:>4}")
print("collapse at level", r.collapse_level)

# even together the two-stage sets miss permutations on every small grid
for m, n, union, total in union_gap_table(max_cells=8):
    print(f"{m}x{n}: {union} of {total}")
