"""Discrete spectrum of a finite graph with one unit tail from the main
equation P(lambda, G) - x P(lambda, G minus n) = 0, lambda = x + 1/x, plus
Schwenk's recursion and the closed form for flowers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import optimize

from .graph import WeightedGraph, adjacency_matrix, delete_vertices
from .jacobi import EIGEN_MARGIN
from .poly import RealPolynomial, characteristic_polynomial, joukowski, joukowski_pullback, real_roots_in_interval

__all__ = ["GreensData", "schwenk_characteristic", "greens_function_finite", "main_equation_polynomial",
           "schur_discrete_spectrum", "flower_phi", "flower_discrete_spectrum"]


@dataclass(frozen=True)
class GreensData:
    """G_v(lambda) = numerator / denominator = P(G minus v) / P(G)."""
    numerator: RealPolynomial
    denominator: RealPolynomial

    def __call__(self, lam):
        return self.numerator(lam) / self.denominator(lam)


def _subgraph_charpoly(g, vs):
    if len(vs) == g.n:
        return RealPolynomial((Fraction(1),))
    return characteristic_polynomial(adjacency_matrix(delete_vertices(g, vs)))


def schwenk_characteristic(g: WeightedGraph, v: int):
    """P(lambda, g) by Schwenk's vertex recursion, expanding first at v."""
    g._check_vertex(v)
    if not g.is_unweighted:
        raise ValueError("Schwenk recursion implemented for unit weights")
    adj = {u: frozenset(nb) for u, nb in g.adjacency_lists().items()}
    lam = RealPolynomial((0, 1))

    def cycles(S, w):
        out = []

        def dfs(path, seen):
            u = path[-1]
            for x in adj[u]:
                if x not in S:
                    continue
                if x == w and len(path) >= 3 and path[1] < path[-1]:
                    out.append(frozenset(path))
                elif x not in seen and x != w:
                    seen.add(x)
                    path.append(x)
                    dfs(path, seen)
                    path.pop()
                    seen.discard(x)
        dfs([w], {w})
        return out

    @lru_cache(maxsize=None)
    def P(S):
        if not S:
            return RealPolynomial((Fraction(1),))
        w = v if v in S else min(S)
        rest = S - {w}
        out = lam * P(rest)
        for u in adj[w] & S:
            out = out - P(rest - {u})
        for Z in cycles(S, w):
            out = out - P(S - Z) * 2
        return out

    return P(frozenset(g.vertices))


def greens_function_finite(g: WeightedGraph, v: int):
    g._check_vertex(v)
    return GreensData(_subgraph_charpoly(g, {v}), characteristic_polynomial(adjacency_matrix(g)))


def main_equation_polynomial(g: WeightedGraph, attach: int):
    """x^n P(x + 1/x, G) - x^2 * x^(n-1) P(x + 1/x, G minus attach)."""
    G = greens_function_finite(g, attach)
    return joukowski_pullback(G.denominator) - joukowski_pullback(G.numerator).shift_power(2)


def schur_discrete_spectrum(g: WeightedGraph, attach: int, margin=EIGEN_MARGIN):
    """Sorted (lambda, x) over roots x in (-1, 1) of the main equation,
    each repeated by its multiplicity.  Only points off [-2, 2] are
    visible to this method."""
    g._check_vertex(attach)
    poly = main_equation_polynomial(g, attach)
    out = []
    for x, m in real_roots_in_interval(poly, (-1.0, 1.0), tol=1e-13).roots:
        if x == 0 or abs(x) >= 1 - margin:
            continue
        out.extend([(joukowski(x), x)] * m)
    return sorted(out)


# ---------------------------------------------------------------------
# Flowers
# ---------------------------------------------------------------------

def _ratio(k, t, c):
    """(sinh kt + c sinh t) / sinh (k+1)t in overflow-free form."""
    num = -math.exp(-t) * math.expm1(-2 * k * t) - c * math.exp(-k * t) * math.expm1(-2 * t)
    den = -math.expm1(-2 * (k + 1) * t)
    return num / den


def flower_phi(ks, t, sign):
    """phi_1 (sign=+1) or phi_2 (sign=-1) of the flower equations."""
    if sign > 0:
        return 2 * sum(_ratio(k, t, 1.0) for k in ks)
    return 2 * sum(_ratio(k, t, (-1.0) ** (k + 1)) for k in ks)


def flower_discrete_spectrum(ks):
    """(lambda_+, lambda_-) = (2 cosh t_+, -2 cosh t_-) for petals whose
    cycles have k_j + 1 vertices."""
    ks = [int(k) for k in ks]
    if len(ks) < 2:
        raise ValueError("flower needs n >= 2 petals")
    if any(k < 2 for k in ks):
        raise ValueError("each petal path length k_j must be >= 2")
    out = []
    for sign in (1, -1):
        f = lambda t: flower_phi(ks, t, sign) * math.exp(-t) - 1.0
        lo, hi = 1e-12, 40.0
        if not (f(lo) > 0 > f(hi)):
            raise RuntimeError("flower equation lost its bracket")
        t = optimize.brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
        out.append(sign * 2 * math.cosh(t))
    return out[0], out[1]
