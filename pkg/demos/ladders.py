"""
Ladders and periodic Jacobi matrices
====================================

Ladders with rungs on a periodic pattern split into two periodic Jacobi
matrices J^+ + I and J^- - I.  Bands come from the discriminant; a root of
p_N in a gap is an eigenvalue only when the sign rule accepts it.
"""
import numpy as np

from graph_spectra.asymptotics import finite_section
from graph_spectra.families import chain_of_cycles, complete_ladder, half_ladder, simon_ladder
from graph_spectra.periodic import classify_gap_roots, discriminant, essential_bands
from graph_spectra.reduction import verify_invariant_decomposition

for model in (complete_ladder(), half_ladder(), simon_ladder(2), simon_ladder(3)):
    # the prescribed basis is checked vector by vector against the graph
    ok = verify_invariant_decomposition(model.neighbors, model.basis, model.canonical)
    sp = model.spectrum()
    print(f"{model.name}: basis ok={ok} bands={sp.band_union()}")
    print("   points:", [(round(e.value, 9), e.multiplicity, e.kind) for e in sp.eigenvalues])

# Octagon ladder: J^+ has period 3; p_3 has one root per gap
Jp = simon_ladder(3).canonical.jacobi_components[0]
print("discriminant:", discriminant(Jp))
print("bands of J^+:", essential_bands(Jp).bands)
for g in classify_gap_roots(Jp):
    print(f"   root {g.value:+.6f} in gap {g.gap_index}: {g.status}")

# The accepted root shows up in a large section, up to the shift +1
_, ev = finite_section(simon_ladder(3), 1500)
phi = (1 + 5 ** 0.5) / 2
print("nearest section eigenvalue to phi:", ev[np.argmin(np.abs(ev - phi))])

# Chain of octagons: closed gap at 0 and eigenvalues +-sqrt 3
sp = chain_of_cycles(4).spectrum()
print("chain of octagons:", sp.band_union(), sp.discrete(), list(sp.notes))
