"""
Graphs with one tail
====================

A finite graph with an infinite path glued to one vertex.  The adjacency
operator splits into a finite matrix F and a finite-rank Jacobi matrix J;
F carries eigenvalues hidden in [-2, 2], J carries the eigenvalues outside.
"""
import math

import numpy as np

from graph_spectra import TailSpec, build_complete, build_star, reduce_single_tail, spectrum_of_canonical
from graph_spectra.asymptotics import finite_section
from graph_spectra.catalog import flower_spec, star_spec
from graph_spectra.schur import flower_discrete_spectrum, schur_discrete_spectrum
from graph_spectra.solve import canonical_spectrum

# Star with 5 leaves, tail at the root.  J has a_1 = sqrt 5, so the
# eigenvalues are +-(2 + 1/2) and F = 0 on the 4-dimensional complement.
spec = star_spec(5)
cf = reduce_single_tail(spec.finite, spec.tails[0])
print("star: F =", cf.finite_component.shape, "J =", cf.jacobi_components[0])
sp = spectrum_of_canonical(cf)
print("  discrete:", sp.discrete(), " hidden:", sp.hidden())

# The Schur route solves P(lam, G) - x P(lam, G - v) = 0 with lam = x + 1/x
print("  Schur:", [lam for lam, _ in schur_discrete_spectrum(spec.finite, spec.tails[0].attach)])

# Brute force: the N x N section reproduces both eigenvalues and the hidden 0
_, ev = finite_section(spec, 2000)
print("  section N=2000:", ev[0], ev[-1], "zeros:", int(np.sum(np.abs(ev) < 1e-8)))

# Weighted star: eigenvalues appear once the weight norm passes sqrt 2;
# at sqrt 2 exactly the Jost root sits at z = +-1 (a resonance)
for w in ([0.84, 1.12], [1, 1], [0.9, 1.2]):
    sp = spectrum_of_canonical(reduce_single_tail(build_star(w), TailSpec(3)))
    print(f"  |w| = {math.hypot(*w):.3f}: eigenvalues {sp.discrete()} resonances {list(sp.resonances)}")

# Complete graph K_6: one eigenvalue above 2, and -1 hidden four times
sp = spectrum_of_canonical(reduce_single_tail(build_complete(6), TailSpec(6)))
print("K_6:", sp.discrete(), sp.hidden())

# Flower of four triangles: closed form, canonical form and the transcendental equation
print("flower:", sorted(canonical_spectrum(flower_spec([3] * 4)).discrete()), flower_discrete_spectrum([2] * 4))
