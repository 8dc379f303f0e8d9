"""
Sparse families, Toeplitz graphs and the comb
=============================================

For sparse rung or cycle patterns the essential spectrum is a union over
right limits: the free matrix and one two-sided rank-one or rank-two
perturbation, whose eigenvalues come from a small determinant.
"""
import numpy as np

from graph_spectra.asymptotics import (SparseLadderJacobi, TwoSidedPerturbation, banded_toeplitz_spectrum,
                                       comb_neighbors, comb_spectrum, finite_section, simon_stolz_partial_sums,
                                       sparse_family_essential_spectrum, toeplitz_neighbors,
                                       two_sided_determinant_numerator, two_sided_eigenvalues)

for kind in ("ladder", "cycle-chain"):
    sp = sparse_family_essential_spectrum(kind)
    print(kind, [(b.lo, b.hi) for b in sp.bands])

# the cycle-chain right limit: D(z) = (z^2 - 1)^2 (3 z^2 - 1)
k = 2 ** 0.5 - 1
pert = TwoSidedPerturbation(((0, "offdiagonal", k), (1, "offdiagonal", k)))
print("numerator:", two_sided_determinant_numerator(pert), "eigenvalues:", two_sided_eigenvalues(pert))

# Simon-Stolz partial sums stay bounded along a very sparse rung set
S = simon_stolz_partial_sums(SparseLadderJacobi(tuple(2 ** j for j in range(1, 16))), 0.5, 20000)
print("Simon-Stolz S_N at N = 10, 1000, 20000:", S[9], S[999], S[-1])

# Toeplitz graph with steps 1 and 2: spectrum is the range of 2cos t + 2cos 2t
print("toeplitz (1,1):", banded_toeplitz_spectrum([1, 1]).band_union())
_, ev = finite_section(toeplitz_neighbors([1, 1]), 4000)
print("   section extremes:", ev[0], ev[-1])

# Comb: a path with one pendant vertex per spine vertex
print("comb:", comb_spectrum().band_union())
_, ev = finite_section(comb_neighbors(), 4000)
print("   smallest |eigenvalue| of the section:", np.min(np.abs(ev)))
