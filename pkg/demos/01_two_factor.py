"""
Three stages for a grid permutation
===================================

Shuffle the cells of a 3 x 4 grid, then undo the shuffle with a row stage,
a column stage and another row stage.
"""

import random

from altdiam import GridPermutation, decompose_two, verify_decomposition

rng = random.Random(1)
table = list(range(12))
rng.shuffle(table)
p = GridPermutation.from_table(3, 4, table)

# where does each cell go?
for src, dst in p.pairs()[:4]:
    print(src, "->", dst)

d = decompose_two(p, "RLR")
print("stage kinds:", d.kinds)
for s in d.stages:
    print(s.kind.value, [list(q) for q in s.perms])

# applying the stages one after another reproduces p
print("verified:", bool(verify_decomposition(d, p)))

# the column-first version comes from running the same routine on the transpose
print("LRL verified:", bool(verify_decomposition(decompose_two(p, "LRL"), p)))
