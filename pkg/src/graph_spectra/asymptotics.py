"""Finite-section oracle, two-sided perturbation determinants, right limits
of the sparse ladder and cycle chain, Simon-Stolz partial sums, and the
closed-form spectra of a banded Toeplitz graph and the complete comb."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import linalg

from .graph import InfiniteGraphSpec
from .jacobi import EIGEN_MARGIN, FiniteRankJacobi
from .periodic import PeriodicJacobi
from .poly import RealPolynomial, chebyshev_t, joukowski, real_roots_in_interval
from .spectrum import assemble_spectrum

__all__ = [
    "ORACLE_CAP", "SparseLadderJacobi", "SparseCycleChainJacobi", "TwoSidedPerturbation",
    "finite_section", "two_sided_perturbation_determinant", "two_sided_determinant_numerator",
    "two_sided_eigenvalues", "right_limits", "sparse_family_essential_spectrum",
    "simon_stolz_partial_sums", "toeplitz_symbol_polynomial", "banded_toeplitz_spectrum",
    "toeplitz_neighbors", "comb_spectrum", "comb_neighbors",
]

ORACLE_CAP = 10_000
STOLZ_CAP = 100_000
SPARSE_NOTE = "sparsity of the index sequence is asserted by the caller"
SINGULAR_NOTE = "strongly sparse case: spectrum on (-2,2) expected purely singular (annotation only)"


# ---------------------------------------------------------------------
# Sparse one-sided Jacobi matrices
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class SparseLadderJacobi:
    """J^{+-} of a ladder with rungs at Lambda: b_n = sign for n in Lambda,
    a_n = 1.  Only a finite prefix of Lambda is stored."""
    rungs: tuple = ()
    sign: int = 1
    notes: tuple = (SPARSE_NOTE,)

    def __post_init__(self):
        r = tuple(sorted(int(x) for x in self.rungs))
        if any(x < 1 for x in r) or len(set(r)) != len(r):
            raise ValueError("rung indices must be distinct positive integers")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "rungs", r)

    def b_at(self, n):
        return self.sign if n in self.rungs else 0

    def a_at(self, n):
        return 1.0

    def diagonals(self, N):
        return (np.array([float(self.b_at(n)) for n in range(1, N + 1)]), np.ones(max(N - 1, 0)))

    def spectrum_pieces(self):
        sp = sparse_family_essential_spectrum(self)
        return ([(b.lo, b.hi, 1) for b in sp.bands], [], list(sp.notes))


@dataclass(frozen=True)
class SparseCycleChainJacobi:
    """Jacobi part of a chain of cycles C_{2 n_j}: b = 0, a_n = sqrt 2 at
    n = 1, r_j, r_j + 1 with r_j = n_1 + ... + n_j, a_n = 1 otherwise."""
    sizes: tuple = ()
    notes: tuple = (SPARSE_NOTE,)

    def __post_init__(self):
        s = tuple(int(x) for x in self.sizes)
        if any(x < 2 for x in s):
            raise ValueError("cycle sizes n_j must be >= 2")
        object.__setattr__(self, "sizes", s)
        marks = {1}
        r = 0
        for n in s:
            r += n
            marks |= {r, r + 1}
        object.__setattr__(self, "_marks", frozenset(marks))

    def b_at(self, n):
        return 0

    def a_at(self, n):
        return math.sqrt(2) if n in self._marks else 1.0

    def diagonals(self, N):
        return np.zeros(N), np.array([self.a_at(n) for n in range(1, N)])

    def spectrum_pieces(self):
        sp = sparse_family_essential_spectrum(self)
        return ([(b.lo, b.hi, 1) for b in sp.bands], [], list(sp.notes))


# ---------------------------------------------------------------------
# Finite sections
# ---------------------------------------------------------------------

def _jacobi_diagonals(spec, N):
    if isinstance(spec, (FiniteRankJacobi, PeriodicJacobi, SparseLadderJacobi, SparseCycleChainJacobi)):
        return spec.diagonals(N)
    return None


def finite_section(spec, N):
    """Principal N x N block of a one-sided operator and its sorted
    eigenvalues.  ``spec`` may be a Jacobi matrix (finite rank, periodic,
    sparse), a tailed InfiniteGraphSpec, a FamilyModel, or a neighbours
    function on 1, 2, ..."""
    from .families import FamilyModel, section_matrix, tailed_section

    if N < 1:
        raise ValueError("section size must be >= 1")
    if N > ORACLE_CAP:
        raise ValueError(f"oracle size cap: N = {N} exceeds {ORACLE_CAP}")
    diag = _jacobi_diagonals(spec, N)
    if diag is not None:
        d, e = diag
        A = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        ev = linalg.eigvalsh_tridiagonal(d, e) if N > 1 else d.copy()
        return A, np.sort(ev)
    if isinstance(spec, InfiniteGraphSpec):
        A = tailed_section(spec, N)
    elif isinstance(spec, FamilyModel):
        A = spec.section(N)
    elif callable(spec):
        A = section_matrix(spec, N)
    else:
        raise TypeError(f"cannot truncate {type(spec).__name__}")
    return A, np.sort(linalg.eigvalsh(A))


# ---------------------------------------------------------------------
# Two-sided perturbations of J_0(Z)
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class TwoSidedPerturbation:
    """J - J_0(Z) as (site, kind, value); 'offdiagonal' at site i is the
    bond (i, i+1) and its value is added to the free weight 1."""
    entries: tuple = ()

    def __post_init__(self):
        seen = set()
        for site, kind, value in self.entries:
            if kind not in ("diagonal", "offdiagonal"):
                raise ValueError(f"unknown entry kind {kind!r}")
            if kind == "offdiagonal" and not value > -1:
                raise ValueError("offdiagonal values must exceed -1 to keep weights positive")
            if (site, kind) in seen:
                raise ValueError(f"duplicate entry at site {site}")
            seen.add((site, kind))

    def support(self):
        s = set()
        for site, kind, _ in self.entries:
            s.add(site)
            if kind == "offdiagonal":
                s.add(site + 1)
        return sorted(s)

    def matrix(self):
        """Perturbation restricted to its support, with the site list."""
        sites = self.support()
        pos = {s: i for i, s in enumerate(sites)}
        V = np.zeros((len(sites), len(sites)))
        for site, kind, value in self.entries:
            if kind == "diagonal":
                V[pos[site], pos[site]] += value
            else:
                V[pos[site], pos[site + 1]] += value
                V[pos[site + 1], pos[site]] += value
        return V, sites

    def operator_section(self, half_width):
        """J on sites -half_width..half_width (for oracle checks)."""
        n = 2 * half_width + 1
        A = np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
        for site, kind, value in self.entries:
            i = site + half_width
            if kind == "diagonal":
                A[i, i] += value
            else:
                A[i, i + 1] += value
                A[i + 1, i] += value
        return A


def two_sided_perturbation_determinant(pert: TwoSidedPerturbation, z):
    """det(I + V R(lambda)) over the support of V, where
    r_ij = z^{|i-j|} / (z - 1/z) is the free resolvent on Z at z + 1/z."""
    z = complex(z)
    if not 0 < abs(z) < 1:
        raise ValueError("z must satisfy 0 < |z| < 1")
    if abs(z * z - 1) < 1e-14:
        raise ValueError("resolvent singular at z^2 = 1")
    V, sites = pert.matrix()
    if not sites:
        return complex(1.0)
    s = np.array(sites)
    R = z ** np.abs(s[:, None] - s[None, :]) / (z - 1 / z)
    return complex(np.linalg.det(np.eye(len(sites)) + V @ R))


def _poly_det(M):
    """Determinant of a small matrix of RealPolynomial entries (cofactors)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    out = RealPolynomial()
    for j in range(n):
        if M[0][j].is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _poly_det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def two_sided_determinant_numerator(pert: TwoSidedPerturbation):
    """Polynomial D(z) = (z^2 - 1)^s det(I + V R), s = |support|."""
    V, sites = pert.matrix()
    if not sites:
        return RealPolynomial((1.0,))
    if len(sites) > 8:
        raise ValueError("perturbation support too large for the cofactor expansion")
    n = len(sites)
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            p = RealPolynomial((-1.0, 0.0, 1.0)) if i == j else RealPolynomial()
            for k in range(n):
                if V[i, k] != 0:
                    p = p + RealPolynomial((0.0, 1.0)).shift_power(abs(sites[k] - sites[j])) * float(V[i, k])
            row.append(p)
        M.append(row)
    return _poly_det(M)


def _deflate_unit_roots(D, rel=1e-10):
    """Divide out factors z - 1 and z + 1; float rounding would otherwise
    split a multiple root at +-1 into a pair straddling the unit circle."""
    for r in (1.0, -1.0):
        while D.degree >= 1:
            scale = sum(abs(float(c)) for c in D.coeffs)
            if abs(float(D(r))) > rel * scale:
                break
            D = divmod(D, RealPolynomial((-r, 1.0)))[0]
    return D


def two_sided_eigenvalues(pert: TwoSidedPerturbation, margin=EIGEN_MARGIN):
    """Eigenvalues of J_0(Z) + V off [-2, 2] as z + 1/z over the roots of
    the determinant numerator in (-1, 1)."""
    D = _deflate_unit_roots(two_sided_determinant_numerator(pert))
    if D.degree < 1:
        return []
    out = []
    for x, m in real_roots_in_interval(D, (-1.0, 1.0), tol=1e-14).roots:
        if x != 0 and abs(x) < 1 - margin:
            out.extend([joukowski(x)] * m)
    return sorted(out)


def right_limits(family):
    """Catalog of right limits (up to shift) of the sparse families; the
    free matrix J_0(Z) is always included."""
    free = TwoSidedPerturbation(())
    if isinstance(family, SparseLadderJacobi):
        return [free] if not family.rungs else [free, TwoSidedPerturbation(((0, "diagonal", float(family.sign)),))]
    if isinstance(family, SparseCycleChainJacobi):
        if not family.sizes:
            return [free]
        k = math.sqrt(2) - 1
        return [free, TwoSidedPerturbation(((0, "offdiagonal", k), (1, "offdiagonal", k)))]
    raise TypeError("right limits are catalogued only for the sparse ladder and cycle chain")


def sparse_family_essential_spectrum(family):
    """Essential spectrum as the union of right-limit spectra.

    ``family``: 'ladder' (both components J^+- with infinitely many rungs),
    'cycle-chain', 'trivial', or a SparseLadderJacobi / SparseCycleChainJacobi
    whose prefix stands in for an infinite sparse sequence (an empty prefix
    means the free matrix)."""
    if family == "ladder":
        parts = [SparseLadderJacobi((1,), 1), SparseLadderJacobi((1,), -1)]
    elif family == "cycle-chain":
        parts = [SparseCycleChainJacobi((2,))]
    elif family == "trivial":
        parts = [SparseLadderJacobi(())]
    elif isinstance(family, (SparseLadderJacobi, SparseCycleChainJacobi)):
        parts = [family]
    else:
        raise ValueError(f"unknown sparse family {family!r}")
    bands = [(-2.0, 2.0, 1)]
    notes = [SPARSE_NOTE]
    nontrivial = False
    for part in parts:
        for rl in right_limits(part):
            if rl.entries:
                nontrivial = True
            for x in two_sided_eigenvalues(rl):
                bands.append((x, x, 1))
    if nontrivial:
        notes.append(SINGULAR_NOTE)
    return assemble_spectrum(bands, [], notes)


# ---------------------------------------------------------------------
# Simon-Stolz diagnostic
# ---------------------------------------------------------------------

def simon_stolz_partial_sums(spec, lam, N):
    """S_k = sum_{n <= k} ||T_n(lambda)||^{-2}, k = 1..N, with T_n the
    transfer-matrix products; products are renormalized and their log
    norms accumulated so nothing overflows."""
    if not -2 < lam < 2:
        raise ValueError("diagnostic defined on (-2,2)")
    if N < 0 or N > STOLZ_CAP:
        raise ValueError(f"N must lie in 0..{STOLZ_CAP}")
    out = []
    M = np.eye(2)
    lognorm = 0.0
    total = 0.0
    for n in range(1, N + 1):
        a = float(spec.a_at(n))
        b = float(spec.b_at(n))
        A = np.array([[(lam - b) / a, -1.0 / a], [a, 0.0]])
        M = A @ M
        s = np.linalg.norm(M, 2)
        lognorm += math.log(s)
        M /= s
        total += math.exp(-2 * lognorm)
        out.append(total)
    return out


# ---------------------------------------------------------------------
# Toeplitz graphs and the comb
# ---------------------------------------------------------------------

def toeplitz_symbol_polynomial(alpha):
    """p with phi(e^{i theta}) = sum_j 2 alpha_j cos(j theta) = p(cos theta)."""
    alpha = [int(a) for a in alpha]
    if any(a not in (0, 1) for a in alpha):
        raise ValueError("Toeplitz graph symbol coefficients must be 0 or 1")
    p = RealPolynomial()
    for j, a in enumerate(alpha, start=1):
        if a:
            p = p + chebyshev_t(j) * 2
    return p


def banded_toeplitz_spectrum(alpha):
    """p([-1, 1]) from the values of p at +-1 and its critical points."""
    p = toeplitz_symbol_polynomial(alpha)
    if p.is_zero:
        return assemble_spectrum([(0.0, 0.0, 1)], [], ["empty graph: zero operator"])
    cand = [Fraction(-1), Fraction(1)]
    dp = p.deriv()
    if dp.degree >= 1:
        rep = real_roots_in_interval(dp, (-1.0, 1.0), tol=1e-15)
        cand += [r for r, _ in rep.roots]
    vals = [p(c) for c in cand]
    return assemble_spectrum([(float(min(vals)), float(max(vals)), 1)], [], [])


def toeplitz_neighbors(alpha):
    steps = [j for j, a in enumerate(alpha, start=1) if int(a)]

    def neighbors(v):
        return [(v + j, 1) for j in steps] + [(v - j, 1) for j in steps if v - j >= 1]
    return neighbors


def comb_neighbors():
    """Spine 2k-1 (path), tooth 2k joined to 2k-1."""
    def neighbors(v):
        if v % 2 == 0:
            return [(v - 1, 1)]
        out = [(v + 1, 1), (v + 2, 1)]
        if v > 1:
            out.append((v - 2, 1))
        return out
    return neighbors


def comb_spectrum():
    """zeta^{-1}([-2, 2]) for zeta(x) = x - 1/x; on each half-line zeta is
    increasing, so each branch maps onto one interval."""
    ends = {}
    for c in (-2, 2):
        # x - 1/x = c  <=>  x^2 - c x - 1 = 0
        rep = real_roots_in_interval(RealPolynomial((-1, -c, 1)), tol=1e-15)
        ends[c] = sorted(r for r, _ in rep.roots)
    neg = (ends[-2][0], ends[2][0])
    pos = (ends[-2][1], ends[2][1])
    return assemble_spectrum([(neg[0], neg[1], 1), (pos[0], pos[1], 1)], [], [])
