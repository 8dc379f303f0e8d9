"""Method dispatch: spectra of tailed graphs by the canonical-form and
Schur routes, named infinite families, and finite-section residuals."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import families as fam
from .asymptotics import (SparseCycleChainJacobi, SparseLadderJacobi, banded_toeplitz_spectrum,
                          comb_neighbors, comb_spectrum, finite_section, toeplitz_neighbors)
from .graph import InfiniteGraphSpec, TailSpec
from .jacobi import FiniteRankJacobi, spectral_measure
from .reduction import (CanonicalForm, multi_ray_attach, rays_at_every_vertex, reduce_single_tail,
                        spectrum_of_canonical)
from .schur import schur_discrete_spectrum
from .spectrum import assemble_spectrum

__all__ = ["FAMILIES", "Solution", "family_model", "canonical_form", "canonical_spectrum",
           "schur_spectrum", "discrepancy", "section_residuals", "measure_of", "neighbors_of"]


def _int(params, key, default=None):
    if key not in params and default is None:
        raise ValueError(f"family parameter {key!r} is required")
    return int(params.get(key, default))


FAMILIES = {
    "complete-ladder": lambda p: fam.complete_ladder(),
    "half-ladder": lambda p: fam.half_ladder(),
    "lantern": lambda p: fam.lantern(),
    "simon-ladder": lambda p: fam.simon_ladder(_int(p, "period")),
    "hexagon-ladder": lambda p: fam.simon_ladder(2),
    "octagon-ladder": lambda p: fam.simon_ladder(3),
    "squares": lambda p: fam.squares(False),
    "diagonal-squares": lambda p: fam.squares(True),
    "cubes": lambda p: fam.cubes(),
    "chain-of-cycles": lambda p: fam.chain_of_cycles(_int(p, "n")),
    "chain-of-hexagons": lambda p: fam.chain_of_cycles(3),
    "chain-of-octagons": lambda p: fam.chain_of_cycles(4),
    "cycle-two-tails": lambda p: fam.cycle_two_tails(_int(p, "n")),
}
CLOSED_FORM = ("toeplitz", "comb", "sparse-ladder", "sparse-cycle-chain")


def family_model(fid, params=None):
    params = params or {}
    if fid not in FAMILIES:
        raise ValueError(f"unknown family id {fid!r}; known: {sorted(FAMILIES) + list(CLOSED_FORM)}")
    return FAMILIES[fid](params)


def _sparse_canonical(fid, params):
    if fid == "sparse-ladder":
        rungs = tuple(int(x) for x in params.get("rungs", ()))
        comps = [SparseLadderJacobi(rungs, 1), SparseLadderJacobi(rungs, -1)]
        return CanonicalForm(np.zeros((0, 0)), comps, notes=["rung set given as a finite prefix"])
    sizes = tuple(int(x) for x in params.get("sizes", ()))
    notes = ["cycle sizes given as a finite prefix",
             "the blocks J_{0,n_j-1} add eigenvalues 2cos(pi k/n_j) inside [-2,2] (not listed)"]
    return CanonicalForm(np.zeros((0, 0)), [SparseCycleChainJacobi(sizes)], notes=notes)


def canonical_form(spec: InfiniteGraphSpec):
    """CanonicalForm for a tailed spec or a named family with one."""
    if spec.kind == "family":
        if spec.family in ("sparse-ladder", "sparse-cycle-chain"):
            return _sparse_canonical(spec.family, spec.params)
        return family_model(spec.family, spec.params).canonical
    g, tails = spec.finite, spec.tails
    if len(tails) == 1:
        return reduce_single_tail(g, tails[0])
    if all(t.is_unit for t in tails):
        counts = Counter(t.attach for t in tails)
        if len(counts) == 1:
            (v, p), = counts.items()
            return multi_ray_attach(g, v, p)
        if set(counts) == set(g.vertices) and len(set(counts.values())) == 1 and g.is_unweighted:
            return rays_at_every_vertex(g, next(iter(counts.values())))[0]
    raise ValueError("canonical method handles one tail, p unit rays at one vertex, or p unit rays "
                     "at every vertex; use a named family for other multi-tail graphs")


def canonical_spectrum(spec: InfiniteGraphSpec):
    if spec.kind == "family":
        if spec.family == "toeplitz":
            return banded_toeplitz_spectrum(spec.params.get("alpha", [1]))
        if spec.family == "comb":
            return comb_spectrum()
    return spectrum_of_canonical(canonical_form(spec))


def schur_spectrum(spec: InfiniteGraphSpec):
    """[-2, 2] plus the discrete spectrum from the main equation; only
    single unit tails are admissible."""
    if spec.kind == "family":
        raise ValueError("Schur method applies to a finite graph with one tail, not to families")
    if len(spec.tails) != 1:
        raise ValueError("Schur method needs exactly one tail")
    t = spec.tails[0]
    if not t.is_unit:
        raise ValueError("Schur method needs a unit-weight tail and bridge")
    pts = schur_discrete_spectrum(spec.finite, t.attach)
    return assemble_spectrum([(-2.0, 2.0, 1)], [(lam, 1) for lam, _ in pts],
                             ["Schur method: only eigenvalues off [-2,2] are visible"])


def discrepancy(a, b):
    """Max distance between sorted discrete spectra (inf on count mismatch)."""
    da, db = sorted(a.discrete()), sorted(b.discrete())
    if len(da) != len(db):
        return math.inf
    return max((abs(x - y) for x, y in zip(da, db)), default=0.0)


def neighbors_of(spec: InfiniteGraphSpec):
    if spec.kind == "tailed":
        return fam.tailed_neighbors(spec)
    if spec.family == "toeplitz":
        return toeplitz_neighbors(spec.params.get("alpha", [1]))
    if spec.family == "comb":
        return comb_neighbors()
    if spec.family in FAMILIES:
        return family_model(spec.family, spec.params).neighbors
    return None


def section_residuals(spec: InfiniteGraphSpec, spectrum, N):
    """For each discrete eigenvalue, distance to the nearest eigenvalue of
    the N x N finite section."""
    nb = neighbors_of(spec)
    if nb is None:
        raise ValueError("no finite-section oracle for this spec")
    if spec.kind == "tailed":
        _, ev = finite_section(spec, N)
    else:
        _, ev = finite_section(nb, N)
    return {f"{x:.17g}": float(np.min(np.abs(ev - x))) for x in spectrum.discrete()}


def measure_of(spec: InfiniteGraphSpec):
    """Spectral measure of the Jacobi component of a single-tail spec."""
    cf = canonical_form(spec)
    comps = [J for J in cf.jacobi_components if isinstance(J, FiniteRankJacobi)]
    if len(comps) != 1:
        raise ValueError("measure needs a spec with exactly one finite-rank Jacobi component")
    return spectral_measure(comps[0])
