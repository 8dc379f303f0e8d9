"""Infinite graph families with explicit canonical forms: ladders, the
lantern, chains of squares, cubes and cycles, the cycle with two tails.

Each family exposes its vertex neighbourhoods (for finite sections and
basis checks), its claimed canonical form and the explicit orthonormal
basis realizing it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .graph import InfiniteGraphSpec, build_cycle
from .jacobi import FiniteRankJacobi
from .periodic import PeriodicJacobi
from .reduction import CanonicalForm, PrescribedBasis, spectrum_of_canonical

__all__ = [
    "FamilyModel", "section_matrix", "tailed_neighbors", "tailed_section", "complete_ladder",
    "half_ladder", "lantern", "simon_ladder", "squares", "cubes", "chain_of_cycles",
    "cycle_two_tails", "ladder_neighbors", "cycle_chain_neighbors", "free_path_matrix",
]

S = 1 / math.sqrt(2)
R3 = 1 / math.sqrt(3)
R6 = 1 / math.sqrt(6)


@dataclass
class FamilyModel:
    name: str
    neighbors: Callable
    canonical: CanonicalForm
    basis: PrescribedBasis | None = None
    params: dict = field(default_factory=dict)

    def spectrum(self):
        return spectrum_of_canonical(self.canonical)

    def section(self, N):
        return section_matrix(self.neighbors, N)


def section_matrix(neighbors, N):
    """Principal N x N block of the adjacency operator (vertices 1..N)."""
    A = np.zeros((N, N))
    for v in range(1, N + 1):
        for u, w in neighbors(v):
            if u <= N:
                A[v - 1, u - 1] = float(w)
    return A


def free_path_matrix(p):
    """J_{0,p}: adjacency of the path on p vertices."""
    return np.diag(np.ones(p - 1), 1) + np.diag(np.ones(p - 1), -1) if p > 1 else np.zeros((1, 1))


# ---------------------------------------------------------------------
# Finite graphs with tails
# ---------------------------------------------------------------------

def tailed_neighbors(spec: InfiniteGraphSpec):
    """Neighbourhoods of a finite graph with tails.  Tail t (0-based) has
    its k-th vertex (k >= 1) numbered n + (k-1) T + t + 1."""
    g = spec.finite
    n, T = g.n, len(spec.tails)
    adj = {v: [] for v in g.vertices}
    for i, j, w in g.edges:
        adj[i].append((j, w))
        adj[j].append((i, w))

    def tail_id(t, k):
        return n + (k - 1) * T + t + 1

    def weight(t, k):
        tw = spec.tails[t].tail_weights
        return tw[k - 1] if k <= len(tw) else 1

    def neighbors(v):
        if v <= n:
            out = list(adj[v])
            out += [(tail_id(t, 1), tl.bridge) for t, tl in enumerate(spec.tails) if tl.attach == v]
            return out
        t = (v - n - 1) % T
        k = (v - n - 1) // T + 1
        out = [(tail_id(t, k + 1), weight(t, k))]
        out.append((spec.tails[t].attach, spec.tails[t].bridge) if k == 1 else (tail_id(t, k - 1), weight(t, k - 1)))
        return out

    return neighbors


def tailed_section(spec: InfiniteGraphSpec, N):
    if N < spec.finite.n:
        raise ValueError("section must contain the finite graph")
    return section_matrix(tailed_neighbors(spec), N)


# ---------------------------------------------------------------------
# Ladders
# ---------------------------------------------------------------------

def ladder_neighbors(rung: Callable[[int], bool]):
    """Ladder on pairs (2n-1, 2n), rails 2n-1 ~ 2n+1 and 2n ~ 2n+2, rung
    {2n-1, 2n} present when rung(n)."""
    def neighbors(v):
        out = [(v + 2, 1)]
        if v > 2:
            out.append((v - 2, 1))
        n = (v + 1) // 2
        if rung(n):
            out.append((v + 1 if v % 2 else v - 1, 1))
        return out
    return neighbors


def _ladder_chain(sign):
    return lambda k: {2 * k - 1: S, 2 * k: sign * S}


def complete_ladder():
    J0 = FiniteRankJacobi()
    cf = CanonicalForm(np.zeros((0, 0)), [J0, J0], shifts=[1.0, -1.0])
    basis = PrescribedBasis(chains=[_ladder_chain(1), _ladder_chain(-1)])
    return FamilyModel("complete-ladder", ladder_neighbors(lambda n: True), cf, basis)


def simon_ladder(period):
    """Ladder whose rungs sit at n = 1, 1 + period, 1 + 2 period, ...;
    the components J^+- = J({+-chi_n}, {1}) are period-periodic."""
    if period < 1:
        raise ValueError("period must be >= 1")
    b = [1] + [0] * (period - 1)
    Jp = PeriodicJacobi(b, [1] * period)
    Jm = PeriodicJacobi([-x for x in b], [1] * period)
    cf = CanonicalForm(np.zeros((0, 0)), [Jp, Jm])
    basis = PrescribedBasis(chains=[_ladder_chain(1), _ladder_chain(-1)], period=period, head=1)
    rung = lambda n: (n - 1) % period == 0
    return FamilyModel(f"simon-ladder-{period}", ladder_neighbors(rung), cf, basis, {"period": period})


def half_ladder():
    """Vertex 1 joined to 2 and 3; pairs (2n, 2n+1) with all rungs."""
    def neighbors(v):
        if v == 1:
            return [(2, 1), (3, 1)]
        out = [(v + 2, 1), (v + 1 if v % 2 == 0 else v - 1, 1)]
        out.append((v - 2, 1) if v > 3 else (1, 1))
        return out

    Jp = FiniteRankJacobi(b=[-1], a_squared=[2])
    cf = CanonicalForm(np.zeros((0, 0)), [Jp, FiniteRankJacobi()], shifts=[1.0, -1.0])
    chain_p = lambda k: {1: 1.0} if k == 1 else {2 * (k - 1): S, 2 * (k - 1) + 1: S}
    chain_m = lambda k: {2 * k: S, 2 * k + 1: -S}
    basis = PrescribedBasis(chains=[chain_p, chain_m], head=2)
    return FamilyModel("half-ladder", neighbors, cf, basis)


def lantern():
    """K_4 on 1..4 (the primed vertices) with 3 ~ 5 and 4 ~ 6, followed by
    a ladder on 4 + k whose first rung {5, 6} is absent."""
    K4 = {1: [2, 3, 4], 2: [1, 3, 4], 3: [1, 2, 4, 5], 4: [1, 2, 3, 6]}
    lad = ladder_neighbors(lambda n: n >= 2)

    def neighbors(v):
        if v <= 4:
            return [(u, 1) for u in K4[v]]
        out = [(u + 4, w) for u, w in lad(v - 4)]
        if v == 5:
            out.append((3, 1))
        elif v == 6:
            out.append((4, 1))
        return out

    Jp = FiniteRankJacobi(b=[0, 0, -1], a_squared=[4])
    Jm = FiniteRankJacobi(b=[0, 1])
    cf = CanonicalForm(np.array([[-1.0]]), [Jp, Jm], shifts=[1.0, -1.0])
    h = lambda k, s: {4 + 2 * k - 1: S, 4 + 2 * k: s * S}
    chain_p = lambda k: {1: S, 2: S} if k == 1 else ({3: S, 4: S} if k == 2 else h(k - 2, 1))
    chain_m = lambda k: {3: S, 4: -S} if k == 1 else h(k - 1, -1)
    basis = PrescribedBasis(finite=[{1: S, 2: -S}], chains=[chain_p, chain_m], head=3)
    return FamilyModel("lantern", neighbors, cf, basis)


# ---------------------------------------------------------------------
# Squares and cubes
# ---------------------------------------------------------------------

def squares(diagonal=False):
    """Chain of squares: junctions 3k-2, tops 3k-1, bottoms 3k; with
    ``diagonal`` each square also has the edge {3k-1, 3k}."""
    def neighbors(v):
        r = v % 3
        if r == 1:  # junction 3k-2
            out = [(v + 1, 1), (v + 2, 1)]
            if v > 1:
                out += [(v - 1, 1), (v - 2, 1)]
            return out
        junction = v - 1 if r == 2 else v - 2
        out = [(junction, 1), (junction + 3, 1)]
        if diagonal:
            out.append((v + 1 if r == 2 else v - 1, 1))
        return out

    if diagonal:
        J = PeriodicJacobi([0, 1], a_squared=[2, 2])
        block = [[-1.0]]
    else:
        J = PeriodicJacobi([0], a_squared=[2])
        block = [[0.0]]
    cf = CanonicalForm(np.zeros((0, 0)), [J], infinite_blocks=[block])
    chain = lambda j: {3 * ((j + 1) // 2) - 2: 1.0} if j % 2 else {3 * (j // 2) - 1: S, 3 * (j // 2): S}
    blk = lambda k: [{3 * k - 1: S, 3 * k: -S}]
    basis = PrescribedBasis(chains=[chain], blocks=[blk], period=2)
    return FamilyModel("diagonal-squares" if diagonal else "squares", neighbors, cf, basis)


_CUBE_EDGES = [(1, 2), (1, 3), (1, 4), (2, 5), (4, 5), (2, 6), (3, 6), (3, 7), (4, 7), (5, 8), (6, 8), (7, 8)]


def cubes():
    """Chain of cubes sharing a vertex; cube k (k >= 0) occupies
    7k+1..7k+8 with junctions 7k+1 and 7k+8."""
    local = {i: [] for i in range(1, 9)}
    for i, j in _CUBE_EDGES:
        local[i].append(j)
        local[j].append(i)

    def neighbors(v):
        out = []
        k, r = divmod(v - 1, 7)
        out += [(7 * k + u, 1) for u in local[r + 1]]
        if r == 0 and k > 0:
            out += [(7 * (k - 1) + u, 1) for u in local[8]]
        return out

    J = PeriodicJacobi([0, 0, 0], a_squared=[3, 4, 3])
    swap = [[0.0, 1.0], [1.0, 0.0]]
    cf = CanonicalForm(np.zeros((0, 0)), [J], infinite_blocks=[swap, swap])

    def chain(j):
        k, r = divmod(j - 1, 3)
        base = 7 * k
        if r == 0:
            return {base + 1: 1.0}
        idx = (2, 3, 4) if r == 1 else (5, 6, 7)
        return {base + i: R3 for i in idx}

    def blk1(k):
        b = 7 * (k - 1)
        return [{b + 2: R6, b + 3: R6, b + 4: -2 * R6}, {b + 5: -R6, b + 6: 2 * R6, b + 7: -R6}]

    def blk2(k):
        b = 7 * (k - 1)
        return [{b + 2: S, b + 3: -S}, {b + 5: S, b + 7: -S}]

    basis = PrescribedBasis(chains=[chain], blocks=[blk1, blk2], period=3)
    return FamilyModel("cubes", neighbors, cf, basis)


# ---------------------------------------------------------------------
# Chains of even cycles
# ---------------------------------------------------------------------

def cycle_chain_neighbors(size: Callable[[int], int]):
    """Chain of cycles C_{2 n_k}; cycle k occupies m_{k-1}+1..m_k+1 with
    m_k = 2(n_1 + ... + n_k) - k, junctions m_{k-1}+1 and pairs
    (m_{k-1}+2j, m_{k-1}+2j+1) at distance j from the junction."""
    @lru_cache(maxsize=None)
    def m(k):
        return 0 if k == 0 else m(k - 1) + 2 * size(k) - 1

    def cycle_edges(k):
        base, n = m(k - 1), size(k)
        loc = lambda l: base + l
        if n == 1:
            raise ValueError("cycle sizes n_k must be >= 2")
        edges = [(1, 2), (1, 3)]
        for j in range(1, n - 1):
            edges += [(2 * j, 2 * j + 2), (2 * j + 1, 2 * j + 3)]
        edges += [(2 * n - 2, 2 * n), (2 * n - 1, 2 * n)]
        return [(loc(a), loc(b)) for a, b in edges]

    def neighbors(v):
        k = 1
        while m(k) + 1 < v:
            k += 1
        ks = [k]
        if v == m(k) + 1:
            ks.append(k + 1)
        out = []
        for kk in ks:
            for a, b in cycle_edges(kk):
                if a == v:
                    out.append((b, 1))
                elif b == v:
                    out.append((a, 1))
        return out

    return neighbors, m


def chain_of_cycles(N):
    """All cycles C_{2N}: Jacobi part N-periodic with a = (sqrt2, 1.., 1, sqrt2)
    plus infinitely many copies of J_{0, N-1}."""
    if N < 2:
        raise ValueError("cycles need n >= 2")
    neighbors, m = cycle_chain_neighbors(lambda k: N)
    a2 = [2] + [1] * (N - 2) + [2] if N > 2 else [2, 2]
    J = PeriodicJacobi([0] * N, a_squared=a2)
    cf = CanonicalForm(np.zeros((0, 0)), [J], infinite_blocks=[free_path_matrix(N - 1)])

    def chain(i):
        k, r = divmod(i - 1, N)
        base = m(k)
        return {base + 1: 1.0} if r == 0 else {base + 2 * r: S, base + 2 * r + 1: S}

    def blk(k):
        base = m(k - 1)
        return [{base + 2 * j: S, base + 2 * j + 1: -S} for j in range(1, N)]

    basis = PrescribedBasis(chains=[chain], blocks=[blk], period=N)
    return FamilyModel(f"chain-of-cycles-{N}", neighbors, cf, basis, {"n": N})


# ---------------------------------------------------------------------
# Cycle with two tails
# ---------------------------------------------------------------------

def cycle_two_tails(n):
    """C_{2n+1} in natural order with tails at the adjacent vertices 2n and
    2n+1; tail vertices 2n+2, 2n+4, ... and 2n+3, 2n+5, ..."""
    if n < 2:
        raise ValueError("cycle with two tails needs n >= 2")
    from .graph import TailSpec
    spec = InfiniteGraphSpec(build_cycle(2 * n + 1), (TailSpec(2 * n), TailSpec(2 * n + 1)))
    b = [0] * n + [1]
    Jp = FiniteRankJacobi(b=b, a_squared=[2])
    Jm = FiniteRankJacobi(b=[0] * (n - 1) + [-1])
    cf = CanonicalForm(np.zeros((0, 0)), [Jp, Jm])

    def h(k, s):
        if k < n:
            return {n + k: S, n - k: s * S}
        i = k - n
        return {2 * n + 2 * i: S, 2 * n + 2 * i + 1: s * S}

    chain_p = lambda j: {n: 1.0} if j == 1 else h(j - 1, 1)
    chain_m = lambda j: h(j, -1)
    basis = PrescribedBasis(chains=[chain_p, chain_m], head=n + 2)
    return FamilyModel(f"cycle-two-tails-{n}", tailed_neighbors(spec), cf, basis, {"n": n, "spec": spec})
