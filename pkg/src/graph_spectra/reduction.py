"""Reduction of a finite graph with tails to a finite component plus Jacobi
components, prescribed-basis verification, and spectrum assembly.

The single-tail reduction is a Krylov (Lanczos) tridiagonalization of
A(g) started from the attachment vertex.  The Krylov chain, read
backwards and continued by the tail, is the Jacobi component; the
compression of A(g) to the orthogonal complement is the finite component.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .graph import TailSpec, WeightedGraph, adjacency_matrix
from .jacobi import FiniteRankJacobi, discrete_spectrum, jost_resonances, snap_square
from .periodic import PeriodicJacobi, classify_gap_roots, essential_bands
from .poly import as_rational
from .spectrum import INF, assemble_spectrum, cluster_values

__all__ = [
    "CanonicalForm", "KrylovChain", "krylov_chain", "reduce_single_tail", "multi_ray_attach",
    "rays_at_every_vertex", "spectrum_of_canonical", "PrescribedBasis",
    "verify_invariant_decomposition", "finite_eigenvalues", "BREAKDOWN_REL_TOL",
    "EXACT_MAX_ORDER",
]

BREAKDOWN_REL_TOL = 1e-10
EXACT_MAX_ORDER = 64


@dataclass
class CanonicalForm:
    """F (finite component) plus Jacobi components and free copies of J_0.

    ``shifts[i]`` is added to the diagonal of ``jacobi_components[i]``
    (families such as ladders produce +-I + J).  ``infinite_blocks``
    holds small matrices repeated infinitely often, each contributing
    its eigenvalues with infinite multiplicity.
    """
    finite_component: np.ndarray
    jacobi_components: list
    free_copies: int = 0
    shifts: list = None
    infinite_blocks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    krylov_dim: int | None = None
    basis: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.finite_component = np.asarray(self.finite_component, dtype=float).reshape(
            (len(self.finite_component), len(self.finite_component)) if len(self.finite_component) else (0, 0))
        if self.shifts is None:
            self.shifts = [0.0] * len(self.jacobi_components)
        if len(self.shifts) != len(self.jacobi_components):
            raise ValueError("one shift per Jacobi component is required")

    @property
    def finite_dim(self):
        return self.finite_component.shape[0]


# ---------------------------------------------------------------------
# Krylov chain
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class KrylovChain:
    """alpha_1..alpha_k, beta_1^2..beta_{k-1}^2 and orthonormal vectors
    (columns of Q) of the Krylov space of A started at a unit vector."""
    alpha: tuple
    beta_sq: tuple
    Q: np.ndarray
    exact: bool

    @property
    def k(self):
        return len(self.alpha)


def _is_rational_matrix(A):
    vals = [as_rational(x) for x in A.ravel()]
    if any(v is None for v in vals):
        return None
    n = A.shape[0]
    return [[vals[i * n + j] for j in range(n)] for i in range(n)]


def _exact_chain(R, v):
    """Monic Stieltjes recursion in rational arithmetic."""
    n = len(R)
    nz = [[(j, R[i][j]) for j in range(n) if R[i][j] != 0] for i in range(n)]
    mat = lambda x: [sum((c * x[j] for j, c in nz[i]), Fraction(0)) for i in range(n)]
    dot = lambda x, y: sum((a * b for a, b in zip(x, y) if a and b), Fraction(0))
    prev = [Fraction(0)] * n
    cur = [Fraction(0)] * n
    cur[v] = Fraction(1)
    alphas, betas, vecs = [], [], [cur]
    norm_prev, norm_cur = None, Fraction(1)
    while True:
        Ax = mat(cur)
        a = dot(Ax, cur) / norm_cur
        alphas.append(a)
        b2 = (norm_cur / norm_prev) if norm_prev is not None else Fraction(0)
        nxt = [Ax[i] - a * cur[i] - b2 * prev[i] for i in range(n)]
        nn = dot(nxt, nxt)
        if nn == 0 or len(alphas) == n:
            break
        betas.append(nn / norm_cur)
        prev, cur, norm_prev, norm_cur = cur, nxt, norm_cur, nn
        vecs.append(cur)
    Q = np.array([[float(x) for x in vec] for vec in vecs]).T
    Q /= np.linalg.norm(Q, axis=0)
    return alphas, betas, Q


def _float_chain(A, v, tol):
    n = A.shape[0]
    Q = np.zeros((n, 0))
    q = np.zeros(n)
    q[v] = 1.0
    alphas, betas = [], []
    while True:
        Q = np.column_stack([Q, q])
        w = A @ q
        a = float(q @ w)
        alphas.append(a)
        w = w - Q @ (Q.T @ w)
        w = w - Q @ (Q.T @ w)
        b = float(np.linalg.norm(w))
        if b < tol or Q.shape[1] == n:
            break
        betas.append(b * b)
        q = w / b
    return alphas, betas, Q


def krylov_chain(A, v, *, exact=None):
    """Lanczos chain of symmetric A from e_v (0-based v).

    Rational matrices up to order EXACT_MAX_ORDER use exact arithmetic for
    the coefficients; otherwise full reorthogonalization in floats with
    breakdown at BREAKDOWN_REL_TOL * ||A||.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("adjacency must be square")
    if not np.allclose(A, A.T, rtol=1e-12, atol=1e-12):
        raise ValueError("adjacency matrix is not symmetric")
    R = None
    if exact is not False and A.shape[0] <= EXACT_MAX_ORDER:
        R = _is_rational_matrix(A)
    if R is not None:
        alphas, betas, Q = _exact_chain(R, v)
        return KrylovChain(tuple(alphas), tuple(betas), Q, True)
    if exact:
        raise ValueError("exact Krylov chain needs a small rational matrix")
    tol = BREAKDOWN_REL_TOL * max(np.linalg.norm(A, 2), 1.0)
    alphas, betas, Q = _float_chain(A, v, tol)
    return KrylovChain(tuple(alphas), tuple(betas), Q, False)


def _complement_compression(A, Q):
    n, k = Q.shape
    if k == n:
        return np.zeros((0, 0)), np.zeros((n, 0))
    full, _ = np.linalg.qr(np.column_stack([Q, np.eye(n)]), mode="reduced")
    # the first k columns span the Krylov space; the rest complete it
    W = full[:, k:n]
    W = W - Q @ (Q.T @ W)
    W, _ = np.linalg.qr(W)
    F = W.T @ A @ W
    return 0.5 * (F + F.T), W


def reduce_single_tail(g: WeightedGraph, tail: TailSpec, *, exact=None):
    """Canonical form F(g) + J(g) for g with one tail at ``tail.attach``."""
    g._check_vertex(tail.attach)
    if not g.is_connected():
        warnings.warn("graph is not connected; the finite component absorbs the other parts")
    A = adjacency_matrix(g)
    chain = krylov_chain(A, tail.attach - 1, exact=exact)
    k = chain.k
    b = list(reversed(chain.alpha))
    a2 = list(reversed(chain.beta_sq)) + [snap_square(tail.bridge)] + [snap_square(w) for w in tail.tail_weights]
    b += [0] * (len(a2) + 1 - len(b))
    J = FiniteRankJacobi(b=b, a_squared=a2)
    F, W = _complement_compression(A, chain.Q)
    notes = []
    if F.shape[0] == g.n - 1 and g.n > 1:
        notes.append("finite component has dimension n-1")
    basis = np.column_stack([W, chain.Q[:, ::-1]]) if g.n else None
    return CanonicalForm(F, [J], 0, notes=notes, krylov_dim=k, basis=basis)


def multi_ray_attach(g: WeightedGraph, v: int, p: int, *, exact=None):
    """p unit rays at v: one tail with bridge sqrt(p) plus p-1 free copies."""
    if p < 1:
        raise ValueError("p must be >= 1")
    cf = reduce_single_tail(g, TailSpec(v, bridge=math.sqrt(p) if p > 1 else 1), exact=exact)
    cf.free_copies = p - 1
    return cf


def rays_at_every_vertex(g: WeightedGraph, p: int):
    """p unit rays at each vertex: components J({lam_j}, {sqrt p}) per
    eigenvalue of A(g) and (p-1) n free copies."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if not g.is_unweighted:
        raise ValueError("rays at every vertex is stated for unweighted graphs")
    lams = np.linalg.eigvalsh(adjacency_matrix(g)) if g.n else np.zeros(0)
    comps = [FiniteRankJacobi(b=[_clean(l)], a_squared=[p]) for l in lams]
    cf = CanonicalForm(np.zeros((0, 0)), comps, (p - 1) * g.n, krylov_dim=None)
    return cf, spectrum_of_canonical(cf)


def _clean(x, tol=1e-13):
    r = round(x)
    return r if abs(x - r) <= tol else float(x)


# ---------------------------------------------------------------------
# Spectrum assembly
# ---------------------------------------------------------------------

def finite_eigenvalues(F):
    if F.shape[0] == 0:
        return []
    return cluster_values([(float(x), 1) for x in np.linalg.eigvalsh(F)])


def spectrum_of_canonical(cf: CanonicalForm):
    bands, eigs, notes, resonances = [], [], list(cf.notes), []
    for J, s in zip(cf.jacobi_components, cf.shifts):
        s = float(s)
        if isinstance(J, FiniteRankJacobi):
            bands.append((-2 + s, 2 + s, 1))
            eigs.extend((lam + s, 1) for lam, _ in discrete_spectrum(J))
            for z in jost_resonances(J):
                resonances.append(z + 1 / z + s)
        elif isinstance(J, PeriodicJacobi):
            bs = essential_bands(J)
            bands.extend((iv.lo + s, iv.hi + s, 1) for iv in bs.bands)
            for gap in bs.gaps:
                if not gap.open:
                    notes.append(f"closed gap at {gap.interval.lo + s:.12g}")
            for gr in classify_gap_roots(J, bs):
                if gr.status == "eigenvalue":
                    eigs.append((gr.value + s, 1))
                elif gr.status == "indeterminate":
                    notes.append(f"sign rule indeterminate at {gr.value + s:.12g}")
        elif hasattr(J, "spectrum_pieces"):
            b, e, nn = J.spectrum_pieces()
            bands.extend((lo + s, hi + s, m) for lo, hi, m in b)
            eigs.extend((v + s, m) for v, m in e)
            notes.extend(nn)
        else:
            raise TypeError(f"unsupported Jacobi component {type(J).__name__}")
    if cf.free_copies:
        bands.append((-2.0, 2.0, cf.free_copies))
    eigs.extend(finite_eigenvalues(cf.finite_component))
    for M in cf.infinite_blocks:
        M = np.atleast_2d(np.asarray(M, dtype=float))
        eigs.extend((v, INF) for v, _ in cluster_values([(float(x), 1) for x in np.linalg.eigvalsh(M)]))
    return assemble_spectrum(bands, eigs, notes, resonances)


# ---------------------------------------------------------------------
# Prescribed-basis verification
# ---------------------------------------------------------------------

@dataclass
class PrescribedBasis:
    """Explicit orthonormal family for an invariant decomposition.

    finite: vectors spanning the finite component (dict vertex -> coeff),
        in the order used by ``claimed.finite_component``.
    chains: one callable k -> vector (k >= 1) per Jacobi component.
    blocks: one callable k -> list of vectors per infinite block; block k
        is acted on by the matching ``claimed.infinite_blocks`` matrix.
    head: number of leading chain/block indices that are irregular;
        checks run over head + 3 * period indices.
    """
    finite: list = field(default_factory=list)
    chains: list = field(default_factory=list)
    blocks: list = field(default_factory=list)
    period: int = 1
    head: int = 1


def _apply(neighbors, vec):
    out = {}
    for v, c in vec.items():
        for u, w in neighbors(v):
            out[u] = out.get(u, 0.0) + float(w) * c
    return out


def _combine(terms):
    out = {}
    for coef, vec in terms:
        if coef == 0:
            continue
        for v, c in vec.items():
            out[v] = out.get(v, 0.0) + coef * c
    return out


def _dot(x, y):
    if len(x) > len(y):
        x, y = y, x
    return sum(c * y.get(v, 0.0) for v, c in x.items())


def _close(x, y, tol):
    keys = set(x) | set(y)
    return all(abs(x.get(k, 0.0) - y.get(k, 0.0)) <= tol for k in keys)


def verify_invariant_decomposition(neighbors: Callable, basis: PrescribedBasis, claimed: CanonicalForm,
                                   tol=1e-12):
    """True iff A maps each prescribed vector as the claimed components say.

    ``neighbors(v)`` lists (u, weight) for vertex v of the infinite graph.
    Raises ValueError naming the first offending pair when the family is
    not orthonormal.
    """
    K = basis.head + 3 * basis.period
    labelled = [(("finite", i), v) for i, v in enumerate(basis.finite)]
    chains = []
    for c, fn in enumerate(basis.chains):
        vecs = [fn(k) for k in range(1, K + 2)]
        chains.append(vecs)
        labelled += [(("chain", c, k + 1), v) for k, v in enumerate(vecs[:K])]
    blocks = []
    for c, fn in enumerate(basis.blocks):
        vecs = [fn(k) for k in range(1, K + 1)]
        blocks.append(vecs)
        labelled += [(("block", c, k + 1, j), v) for k, blk in enumerate(vecs) for j, v in enumerate(blk)]
    for i, (li, x) in enumerate(labelled):
        for lj, y in labelled[i:]:
            target = 1.0 if li == lj else 0.0
            if abs(_dot(x, y) - target) > 1e-10:
                raise ValueError(f"basis not orthonormal: <{li}, {lj}> = {_dot(x, y):.3e}")
    F = claimed.finite_component
    for i, f in enumerate(basis.finite):
        want = _combine([(F[j, i], basis.finite[j]) for j in range(len(basis.finite))])
        if not _close(_apply(neighbors, f), want, tol):
            return False
    for c, vecs in enumerate(chains):
        J = claimed.jacobi_components[c]
        s = float(claimed.shifts[c])
        for k in range(1, K + 1):
            terms = [(float(J.b_at(k)) + s, vecs[k - 1]), (J.a_at(k), vecs[k])]
            if k > 1:
                terms.append((J.a_at(k - 1), vecs[k - 2]))
            if not _close(_apply(neighbors, vecs[k - 1]), _combine(terms), tol):
                return False
    for c, vecs in enumerate(blocks):
        M = np.atleast_2d(np.asarray(claimed.infinite_blocks[c], dtype=float))
        for blk in vecs:
            for j, v in enumerate(blk):
                want = _combine([(M[i, j], blk[i]) for i in range(len(blk))])
                if not _close(_apply(neighbors, v), want, tol):
                    return False
    return True
