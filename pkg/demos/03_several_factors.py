"""
Products of three sets
======================

A permutation of {0,1}^3 needs five single-axis stages, and four are not enough.
"""

from altdiam import MultiGridPermutation, decompose_multi, lower_bound_check, verify_multi

# the cyclic shift of the eight cells in lexicographic order
shift = MultiGridPermutation((2, 2, 2), tuple((x + 1) % 8 for x in range(8)))
stages = decompose_multi(shift)
print("axes in application order:", [s.axis for s in stages])
print("verified:", bool(verify_multi(stages, shift)))

five = lower_bound_check((2, 2, 2), (3, 2, 1, 2, 3))
four = lower_bound_check((2, 2, 2), (3, 2, 1, 2))
print("five stages reach", five.size, "of", five.total)
print("four stages reach", four.size, "of", four.total, "- missed, e.g.", four.witness)
