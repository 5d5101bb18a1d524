"""
Order-preserving permutations
=============================

On a product of posets the flip (x, y) -> (y, x) is an automorphism, but the
stage groups only generate it when the order is trivial.
"""

from altdiam import antichain, automorphisms, chain, diamond, flip_generated, product, stage_subgroups
from altdiam.posets import all_posets

print("Aut(D x D) has", len(automorphisms(product(diamond(), diamond()))), "elements")
g = stage_subgroups(diamond(), diamond())
print("stage groups equal the pure groups:", set(g.left) == set(g.pure_left), set(g.right) == set(g.pure_right))

for name, P in [("chain(2)", chain(2)), ("diamond", diamond()), ("antichain(2)", antichain(2))]:
    r = flip_generated(P)
    print(f"{name:<13} flip generated: {r.flip_in_closure!s:<5}  closure {r.closure_size}  aut {r.aut_size}")

for k in (1, 2, 3):
    for P in all_posets(k):
        print(k, P.covers(), "trivial" if P.is_trivial() else "", flip_generated(P).flip_in_closure)
