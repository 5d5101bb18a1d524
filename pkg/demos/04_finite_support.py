"""
Permutations of an unbounded grid
=================================

A permutation of N x N that moves finitely many points lives inside a
bounding box, and the box decomposition fixes everything outside it.
"""

from altdiam import SparsePermutation, decompose_finite_support, verify_sparse

p = SparsePermutation({(0, 0): (5, 7), (5, 7): (0, 0)})
d = decompose_finite_support(p)
print("bounding box:", (d.m, d.n), "stages:", d.decomposition.kinds)
print("verified:", bool(verify_sparse(d, p)))

cycle = SparsePermutation({(0, 0): (1, 1), (1, 1): (2, 0), (2, 0): (0, 0)})
d = decompose_finite_support(cycle, "LRL")
print("3-cycle box:", (d.m, d.n), d.decomposition.kinds, bool(verify_sparse(d, cycle)))
