"""Spectrum container: bands with multiplicity, classified eigenvalues and
qualitative notes, plus the assembly step shared by every method."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .poly import Interval

__all__ = ["Band", "Eigenvalue", "Spectrum", "assemble_spectrum", "cluster_values",
           "CLUSTER_TOL", "BAND_MERGE_TOL", "EDGE_NOTE_TOL"]

CLUSTER_TOL = 1e-9
BAND_MERGE_TOL = 1e-12
EDGE_NOTE_TOL = 1e-9
INF = math.inf


@dataclass(frozen=True)
class Band:
    interval: Interval
    multiplicity: float = 1

    @property
    def lo(self):
        return self.interval.lo

    @property
    def hi(self):
        return self.interval.hi

    @property
    def degenerate(self):
        return self.interval.lo == self.interval.hi


@dataclass(frozen=True)
class Eigenvalue:
    """``kind`` is 'discrete' (off every band) or 'hidden' (on a band);
    multiplicity may be math.inf.  ``note`` flags edge cases."""
    value: float
    multiplicity: float
    kind: str
    note: str | None = None

    @property
    def infinite(self):
        return self.multiplicity == INF


@dataclass(frozen=True)
class Spectrum:
    bands: tuple = ()
    eigenvalues: tuple = ()
    notes: tuple = ()
    resonances: tuple = ()

    def discrete(self):
        return [e.value for e in self.eigenvalues if e.kind == "discrete"]

    def hidden(self):
        return [(e.value, e.multiplicity) for e in self.eigenvalues if e.kind == "hidden"]

    def band_union(self):
        """Bands as plain (lo, hi) pairs after merging touching intervals."""
        out = []
        for b in self.bands:
            if out and b.lo <= out[-1][1] + BAND_MERGE_TOL:
                out[-1] = (out[-1][0], max(out[-1][1], b.hi))
            else:
                out.append((b.lo, b.hi))
        return out

    def in_bands(self, x, tol=BAND_MERGE_TOL):
        return any(b.lo - tol <= x <= b.hi + tol for b in self.bands)

    def multiplicity_on_band(self, x):
        return sum(b.multiplicity for b in self.bands if b.lo <= x <= b.hi and not b.degenerate)

    def eigenvalue_near(self, x, tol=1e-8):
        for e in self.eigenvalues:
            if abs(e.value - x) <= tol:
                return e
        return None

    def to_json(self):
        def mult(m):
            return "inf" if m == INF else int(m)
        return {
            "bands": [[b.lo, b.hi, mult(b.multiplicity)] for b in self.bands],
            "eigenvalues": [{"value": e.value, "mult": mult(e.multiplicity), "class": e.kind,
                             **({"note": e.note} if e.note else {})} for e in self.eigenvalues],
            "resonances": list(self.resonances),
            "notes": list(self.notes),
        }


def cluster_values(pairs, tol=CLUSTER_TOL):
    """Group (value, multiplicity) pairs whose values lie within ``tol``
    of a running cluster mean; multiplicities add."""
    out = []
    for v, m in sorted(pairs, key=lambda p: p[0]):
        if out and abs(v - out[-1][0]) <= tol * max(1.0, abs(v)):
            v0, m0 = out[-1]
            w = 0.5 if (m0 == INF or m == INF) else m0 / (m0 + m)
            out[-1] = (w * v0 + (1 - w) * v, m0 + m)
        else:
            out.append((v, m))
    return out


def _sweep(bands):
    """Merge (lo, hi, mult) intervals into disjoint segments with summed
    multiplicity; degenerate intervals are kept only off the bands."""
    proper = [(lo, hi, m) for lo, hi, m in bands if hi - lo > BAND_MERGE_TOL]
    points = sorted({x for lo, hi, _ in proper for x in (lo, hi)})
    merged = []
    for lo, hi in zip(points, points[1:]):
        mid = 0.5 * (lo + hi)
        m = sum(mm for a, b, mm in proper if a <= mid <= b)
        if m == 0:
            continue
        if merged and merged[-1][2] == m and abs(merged[-1][1] - lo) <= BAND_MERGE_TOL:
            merged[-1] = (merged[-1][0], hi, m)
        else:
            merged.append((lo, hi, m))
    points_only = [(lo, hi, m) for lo, hi, m in bands if hi - lo <= BAND_MERGE_TOL]
    for lo, hi, m in points_only:
        x = 0.5 * (lo + hi)
        if not any(a - BAND_MERGE_TOL <= x <= b + BAND_MERGE_TOL for a, b, _ in merged):
            merged.append((x, x, m))
    merged.sort()
    return [Band(Interval(lo, hi), m) for lo, hi, m in merged]


def assemble_spectrum(bands, eigenvalues, notes=(), resonances=()):
    """Build a Spectrum from raw pieces.

    bands: iterable of (lo, hi, multiplicity).
    eigenvalues: iterable of (value, multiplicity); classification is by
    position: on a band means hidden, off every band means discrete.
    """
    bl = _sweep(list(bands))
    ev = []
    for v, m in cluster_values(list(eigenvalues)):
        inside = any(b.lo - BAND_MERGE_TOL <= v <= b.hi + BAND_MERGE_TOL for b in bl)
        near = any(min(abs(v - b.lo), abs(v - b.hi)) <= EDGE_NOTE_TOL for b in bl)
        ev.append(Eigenvalue(float(v), m, "hidden" if inside else "discrete", "edge" if near else None))
    return Spectrum(tuple(bl), tuple(ev), tuple(notes), tuple(sorted(resonances)))
