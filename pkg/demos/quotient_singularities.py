"""Cyclic quotient singularities: every count, two ways.

For C^2 / (Z/N) acting diagonally, the graded pieces of each isotypic
component are lattice-point counts.  A generating-function oracle
(Molien's formula evaluated exactly in the group ring of Z/N) must
reproduce them coefficient by coefficient.  The correction term and the
inverse-monomial counts follow the same pattern: closed-form walk vs
brute-force enumeration.
"""

from dxext.quotients import (
    DiagonalGroupAction,
    distinct_characters,
    hypersurface_cech_dims,
    isotypic_dims,
    molien_isotypic_dims,
    one_minus_g_span_dims,
    rend_cohomology_dims,
)

MAX_DEG = 8

for order, weights in ((2, (1, 1)), (3, (1, 2)), (4, (1, 3))):
    action = DiagonalGroupAction(order=order, generators=(weights,), n=2)
    print(f"Z/{order} with weights {weights}:")
    print("  free away from the origin:", action.is_free_away_from_origin())
    total = [0] * (MAX_DEG + 1)
    for chi in distinct_characters(action):
        lattice = isotypic_dims(action, chi, MAX_DEG)
        molien = molien_isotypic_dims(action, chi, MAX_DEG)
        mark = "ok" if list(lattice.dims) == list(molien.dims) else "MISMATCH"
        print(f"  chi = {chi.exponents}: {list(lattice.dims)}  molien {mark}")
        for m in range(MAX_DEG + 1):
            total[m] += lattice[m]
    print("  partition of unity:", total == [m + 1 for m in range(MAX_DEG + 1)])
    print()

action = DiagonalGroupAction(order=2, generators=((1, 1),), n=2)
print("Z/2 on C^2, the simplest isolated case:")
rend = rend_cohomology_dims(action, 6)
print("  correction-term dims:", list(rend.dims), "(degree 2 -> 4, degree 4 -> 16)")
span = one_minus_g_span_dims(action, 6)
print("  (1-g)-span dims:     ", list(span.dims))
for exps in ((0, 0), (1, 0)):
    from dxext.quotients import Character

    cech = hypersurface_cech_dims(action, Character(exps), 6)
    print(f"  inverse monomials, chi {exps}:", list(cech.dims))
