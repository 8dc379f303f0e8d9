"""Fixture graphs with tails and a catalog of checks against closed forms.

Expected values come from closed-form formulas, from numpy.roots on
published Jost polynomials, or from dense truncations of published Jacobi
entries; never from the code under test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .asymptotics import (banded_toeplitz_spectrum, comb_spectrum, sparse_family_essential_spectrum)
from .graph import (InfiniteGraphSpec, TailSpec, build_complete, build_flower, build_from_edges,
                    build_star)
from .solve import canonical_spectrum, family_model, schur_spectrum

__all__ = [
    "star_spec", "weighted_star_spec", "multiple_star_spec", "two_ray_spec", "t112_spec", "tree_spec",
    "flag_spec", "complete_spec", "flower_spec", "SINGLE_TAIL_FIXTURES", "Fixture", "FIXTURES",
    "run_fixture", "joukowski_pairs_from_roots",
]


# ---------------------------------------------------------------------
# Tailed fixture graphs (vertex numbering follows the published figures)
# ---------------------------------------------------------------------

def _tailed(g, attach, bridge=1):
    return InfiniteGraphSpec(g, (TailSpec(attach, bridge),))


def star_spec(n):
    """S_n with the tail at the root n+1."""
    return _tailed(build_star([1] * n), n + 1)


def weighted_star_spec(weights):
    return _tailed(build_star(list(weights)), len(weights) + 1)


def multiple_star_spec(n, p):
    """S_{n,p}: ray q is q, n+q, ..., (p-1)n+q, with (p-1)n+q next to the
    root pn+1."""
    edges = [((i - 1) * n + q, i * n + q) for i in range(1, p) for q in range(1, n + 1)]
    edges += [((p - 1) * n + q, p * n + 1) for q in range(1, n + 1)]
    return _tailed(build_from_edges(p * n + 1, edges), p * n + 1)


def two_ray_spec(n):
    """T_{n,n-1}: the path 1, 2, 4, ..., 2n-2, 2n, 2n-1, ..., 5, 3, tail at 2n."""
    order = [1] + list(range(2, 2 * n + 1, 2)) + list(range(2 * n - 1, 2, -2))
    edges = list(zip(order, order[1:]))
    return _tailed(build_from_edges(2 * n, edges), 2 * n)


def t112_spec():
    return _tailed(build_from_edges(5, [(1, 2), (2, 5), (3, 5), (4, 5)]), 5)


def tree_spec():
    edges = [(1, 6), (2, 6), (3, 6), (6, 8), (8, 7), (4, 7), (5, 7)]
    return _tailed(build_from_edges(8, edges), 8)


def flag_spec():
    edges = [(1, 3), (3, 6), (2, 5), (5, 8), (4, 7), (7, 9), (1, 2), (2, 4), (3, 5), (5, 7), (6, 8), (8, 9)]
    return _tailed(build_from_edges(9, edges), 9)


def complete_spec(n):
    return _tailed(build_complete(n), n)


def flower_spec(petal_orders):
    g = build_flower(list(petal_orders))
    return _tailed(g, g.n)


def joukowski_pairs_from_roots(coeffs_desc):
    """x + 1/x over the real roots of a polynomial in (-1, 1)."""
    r = np.roots(coeffs_desc)
    xs = sorted(float(z.real) for z in r if abs(z.imag) < 1e-9 and 0 < abs(z.real) < 1)
    return sorted(x + 1 / x for x in xs)


# ---------------------------------------------------------------------
# Closed-form expectations
# ---------------------------------------------------------------------

def star_expected(n):
    s = math.sqrt(n - 1)
    return [-(s + 1 / s), s + 1 / s]


def complete_expected(n):
    x6 = 0.5 * (math.sqrt((n + 2) / (n - 2)) - 1)
    return [x6 + 1 / x6]


def flower3_expected(n):
    d = math.sqrt(8 * n - 3)
    xs = [(-1 + d) / (2 * (2 * n - 1)), (-1 - d) / (2 * (2 * n - 1))]
    return sorted(x + 1 / x for x in xs)


def multiple_star_expected(n, p):
    # -sqrt(n) u = (n-1)(x^{2p} + ... + x^2) - 1
    c = [0.0] * (2 * p + 1)
    for k in range(1, p + 1):
        c[2 * k] = n - 1
    c[0] = -1
    return joukowski_pairs_from_roots(c[::-1])


def _jacobi_eigs_off_band(a, size=400):
    """Eigenvalues off [-2, 2] of J({0}, {a_1, .., a_q, 1, 1, ..}) from a
    dense truncation; they converge geometrically in the size."""
    off = np.ones(size - 1)
    off[: len(a)] = a
    ev = np.linalg.eigvalsh(np.diag(off, 1) + np.diag(off, -1))
    return sorted(float(x) for x in ev if abs(x) > 2 + 1e-6)


def t32_published_jost_eigenvalues():
    """Eigenvalues from the printed degree-10 polynomial; it disagrees with the
    printed Jacobi entries, which the finite section confirms."""
    a = math.sqrt(2) - 1
    return joukowski_pairs_from_roots([-a, 0, -2 * a, 0, -(2.5 * a - 1), 0, -(2 * a + 1.5), 0, -a, 0, 1])


def t32_expected():
    r = math.sqrt(2)
    return _jacobi_eigs_off_band([1, 1 / r, 1 / r, 1, r])


def t112_expected():
    return joukowski_pairs_from_roots([-2, 0, -2, 0, -1, 0, 1])


def tree_published_jost_eigenvalues():
    return joukowski_pairs_from_roots(np.polymul([1, 0, 1], [-1, 0, 1, 0, 2, 0, -1]))


def tree_expected():
    return _jacobi_eigs_off_band([2 * math.sqrt(0.6), 1 / math.sqrt(10), math.sqrt(2.5), math.sqrt(2)])


def flag_expected():
    return joukowski_pairs_from_roots([-1, 0, 0, 0, 0, 0, -6, 0, 1])


# single-tail fixtures used by the cross-method and oracle checks
SINGLE_TAIL_FIXTURES = {
    "star-5": star_spec(5),
    "multiple-star-3-2": multiple_star_spec(3, 2),
    "multiple-star-4-3": multiple_star_spec(4, 3),
    "two-ray-3": two_ray_spec(3),
    "two-ray-4": two_ray_spec(4),
    "t112": t112_spec(),
    "tree": tree_spec(),
    "flag": flag_spec(),
    "complete-5": complete_spec(5),
    "flower-c3-3": flower_spec([3, 3, 3]),
    "flower-4-5-6": flower_spec([4, 5, 6]),
}


# ---------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------

@dataclass
class Fixture:
    """``run`` returns (label, computed, expected) triples; the fixture
    passes when every |computed - expected| <= tol."""
    name: str
    run: Callable[[], list]
    tol: float = 1e-9
    tags: tuple = field(default_factory=tuple)


def _discrete(spec, expected):
    sp = canonical_spectrum(spec)
    got = sorted(sp.discrete())
    out = [("count", len(got), len(expected))]
    out += [(f"lambda[{i}]", g, e) for i, (g, e) in enumerate(zip(got, expected))]
    return out, sp


def _hidden(sp, value, mult):
    e = sp.eigenvalue_near(value, 1e-8)
    return [(f"hidden {value:.6g} mult", e.multiplicity if e else 0, mult)]


def _bands(sp, expected):
    got = sp.band_union()
    out = [("band count", len(got), len(expected))]
    for i, ((lo, hi), (elo, ehi)) in enumerate(zip(got, expected)):
        out += [(f"band[{i}].lo", lo, elo), (f"band[{i}].hi", hi, ehi)]
    return out


def _points(sp):
    return sorted(b.lo for b in sp.bands if b.degenerate)


def _fx_star():
    out, sp = _discrete(star_spec(5), star_expected(5))
    return out + _hidden(sp, 0.0, 4)


def _fx_weighted_star():
    w = [0.9, 1.2]  # norm 1.5
    nw = math.hypot(*w)
    s = math.sqrt(nw * nw - 1)
    out, _ = _discrete(weighted_star_spec(w), [-(s + 1 / s), s + 1 / s])
    out2, _ = _discrete(weighted_star_spec([0.84, 1.12]), [])  # norm 1.4
    return out + out2


def _fx_multiple_star():
    out, sp = _discrete(multiple_star_spec(3, 2), multiple_star_expected(3, 2))
    return out + _hidden(sp, 1.0, 2) + _hidden(sp, -1.0, 2)


def _fx_t32():
    return _discrete(two_ray_spec(3), t32_expected())[0]


def _fx_t112():
    out, sp = _discrete(t112_spec(), t112_expected())
    return out + _hidden(sp, 0.0, 1)


def _fx_tree():
    out, sp = _discrete(tree_spec(), tree_expected())
    return out + _hidden(sp, 0.0, 3)


def _fx_flag():
    # hidden part: F = 0 + J_{0,3} up to basis signs, so {0, 0, +-sqrt 2}
    out, sp = _discrete(flag_spec(), flag_expected())
    return out + _hidden(sp, 0.0, 2) + _hidden(sp, math.sqrt(2), 1) + _hidden(sp, -math.sqrt(2), 1)


def _fx_complete():
    out, sp = _discrete(complete_spec(6), complete_expected(6))
    return out + _hidden(sp, -1.0, 4)


def _fx_flower():
    out, sp = _discrete(flower_spec([3] * 4), flower3_expected(4))
    return out + _hidden(sp, -1.0, 4) + _hidden(sp, 1.0, 3)


def _fx_cross(name):
    spec = SINGLE_TAIL_FIXTURES[name]

    def run():
        a, b = sorted(canonical_spectrum(spec).discrete()), sorted(schur_spectrum(spec).discrete())
        return [("count", len(a), len(b))] + [(f"lambda[{i}]", x, y) for i, (x, y) in enumerate(zip(a, b))]
    return run


def _fx_family(fid, bands, eigs=(), hidden=(), params=None):
    def run():
        sp = family_model(fid, params).spectrum()
        out = _bands(sp, bands)
        got = sorted(sp.discrete())
        out.append(("discrete count", len(got), len(eigs)))
        out += [(f"lambda[{i}]", g, e) for i, (g, e) in enumerate(zip(got, sorted(eigs)))]
        for v, m in hidden:
            out += _hidden(sp, v, m)
        return out
    return run


R2, R5, R17 = math.sqrt(2), math.sqrt(5), math.sqrt(17)


def _fx_sparse(kind, point):
    def run():
        sp = sparse_family_essential_spectrum(kind)
        pts = _points(sp)
        return [("points", len(pts), 2), ("-point", pts[0], -point), ("+point", pts[-1], point)]
    return run


def _fx_toeplitz():
    b = banded_toeplitz_spectrum([1, 1]).band_union()
    return [("lo", b[0][0], -2.25), ("hi", b[0][1], 4.0)]


def _fx_comb():
    b = comb_spectrum().band_union()
    exp = [(-R2 - 1, -R2 + 1), (R2 - 1, R2 + 1)]
    return [(f"end[{i}{j}]", b[i][j], exp[i][j]) for i in range(2) for j in range(2)]


def _fx_octagon_rule():
    from .periodic import classify_gap_roots
    from .families import simon_ladder
    Jp = simon_ladder(3).canonical.jacobi_components[0]
    st = {round(g.value, 9): g.status for g in classify_gap_roots(Jp)}
    phi = (1 + R5) / 2
    return [("lambda7+ accepted", st.get(round(phi, 9)) == "eigenvalue", True),
            ("lambda8+ rejected", st.get(round(1 - phi, 9)) == "not-eigenvalue", True)]


FIXTURES = [
    Fixture("star-5", _fx_star, tags=("star",)),
    Fixture("weighted-star-threshold", _fx_weighted_star, tags=("star",)),
    Fixture("multiple-star-3-2", _fx_multiple_star, tags=("star",)),
    Fixture("two-ray-3-2", _fx_t32, tags=("tree",)),
    Fixture("t112", _fx_t112, tags=("tree",)),
    Fixture("tree", _fx_tree, tags=("tree",)),
    Fixture("flag", _fx_flag, tags=("cycle",)),
    Fixture("complete-6", _fx_complete, tags=("complete",)),
    Fixture("flower-c3-4", _fx_flower, tags=("flower", "cycle")),
    *[Fixture(f"cross-{k}", _fx_cross(k), tags=("cross",)) for k in SINGLE_TAIL_FIXTURES],
    Fixture("complete-ladder", _fx_family("complete-ladder", [(-3, 3)]), tags=("ladder",)),
    Fixture("half-ladder", _fx_family("half-ladder", [(-3, 3)], hidden=[(1 - R5, 1)]), tags=("ladder",)),
    Fixture("hexagon-ladder", _fx_family("hexagon-ladder", [(-(1 + R17) / 2, (1 + R17) / 2)]), tags=("ladder",)),
    Fixture("octagon-ladder", _fx_family("octagon-ladder", [(-1 - R2, 1 + R2)],
                                         hidden=[((1 + R5) / 2, 1), (-(1 + R5) / 2, 1)]), tags=("ladder",)),
    Fixture("octagon-ladder-sign-rule", _fx_octagon_rule, tags=("ladder",)),
    Fixture("chain-of-octagons", _fx_family(
        "chain-of-octagons", [(-math.sqrt(6), -2), (-R2, R2), (2, math.sqrt(6))], eigs=[-math.sqrt(3), math.sqrt(3)],
        hidden=[(0.0, math.inf), (R2, math.inf), (-R2, math.inf)]), tags=("cycle", "chain")),
    Fixture("chain-of-hexagons", _fx_family(
        "chain-of-hexagons", [(-(1 + R17) / 2, (1 - R17) / 2), (-1, 1), ((R17 - 1) / 2, (1 + R17) / 2)],
        eigs=[-R2, R2], hidden=[(1.0, math.inf), (-1.0, math.inf)]), tags=("cycle", "chain")),
    Fixture("diagonal-squares", _fx_family(
        "diagonal-squares", [((1 - math.sqrt(33)) / 2, 0), (1, (1 + math.sqrt(33)) / 2)],
        hidden=[(-1.0, math.inf)]), tags=("chain",)),
    Fixture("cubes", _fx_family(
        "cubes", [(-1 - math.sqrt(7), -2), (1 - math.sqrt(7), math.sqrt(7) - 1), (2, 1 + math.sqrt(7))],
        hidden=[(1.0, math.inf), (-1.0, math.inf)]), tags=("chain",)),
    Fixture("sparse-ladder", _fx_sparse("ladder", R5), tags=("ladder", "sparse")),
    Fixture("sparse-cycle-chain", _fx_sparse("cycle-chain", 4 / math.sqrt(3)), tags=("cycle", "sparse")),
    Fixture("toeplitz", _fx_toeplitz, tol=1e-12, tags=("toeplitz",)),
    Fixture("comb", _fx_comb, tol=1e-12, tags=("comb",)),
]


def run_fixture(fx: Fixture, tol=None, inject_failure=False):
    """(passed, max residual, detail) for one fixture."""
    tol = fx.tol if tol is None else tol
    try:
        rows = fx.run()
    except Exception as exc:  # a crashing fixture is a failure, not an abort
        return False, math.inf, f"{type(exc).__name__}: {exc}"
    if inject_failure and rows:
        label, got, exp = rows[-1]
        rows[-1] = (label, got, float(exp) + 1e-3)
    worst, where = 0.0, ""
    for label, got, exp in rows:
        if got == exp:
            r = 0.0
        elif isinstance(got, bool) or isinstance(exp, bool) or math.isinf(float(got)) or math.isinf(float(exp)):
            r = math.inf
        else:
            r = abs(float(got) - float(exp))
        if r > worst:
            worst, where = r, label
    return worst <= tol, worst, where
