"""Residue-partition compactifications of the naturals and their lattice order."""
from contact_duality import Ideal, LocalContactAlgebra, Overlap, Partition, UltPeriodicAlgebra, c_rho
from contact_duality.extensions import beta_ncr, compare_ncr, enumerate_ka, inf_ncr, sup_ncr

A = UltPeriodicAlgebra(6)
L = LocalContactAlgebra(A, Overlap(A), Ideal.finite_elements())
mod2 = Partition(A, 2, [[0], [1]])
mod3 = Partition(A, 3, [[0], [1], [2]])

print("one-point relation:", c_rho(L).describe())
print("greatest relation:", beta_ncr(L).describe())
print("mod 2 vs mod 3:", compare_ncr(mod2, mod3).verdict)
print("sup:", sup_ncr(L, [mod2, mod3]).describe())
print("inf:", inf_ncr(L, [mod2, mod3]).describe())
print("declared family size:", len(enumerate_ka(L)))
