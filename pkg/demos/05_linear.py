"""
Block matrices over a prime field
=================================

The linear analogue: an invertible matrix on F_p^m x F_p^n factors as
[[P,Q],[0,I]] . [[I,0],[R,S]] . [[P',Q'],[0,I]].
"""

from altdiam import BlockSplit, FieldMatrix, decompose_linear, swap_not_in_lr

swap = FieldMatrix.from_rows(2, [[0, 1], [1, 0]])
d = decompose_linear(swap, BlockSplit(1, 1))
for s in d.stages:
    print(s.kind.value, s.matrix.tolist())
print("product is the swap:", d.product() == swap)
print("row operations:", *d.log, sep="\n  ")

# two stages are not enough for the swap
for p in (2, 3, 5):
    print(f"swap outside L.R over F_{p}:", swap_not_in_lr(p))

A = FieldMatrix.from_rows(7, [[3, 1, 4, 1], [5, 2, 6, 5], [3, 5, 0, 2], [1, 4, 2, 6]])
print("4x4 over F_7 reproduces:", decompose_linear(A, BlockSplit(2, 2)).product() == A)
