"""N-periodic Jacobi matrices: orthogonal polynomials, transfer matrices,
discriminant, bands, gap eigenvalues and the Weyl function.

Internally the recurrence runs on the monic polynomials
P_{n+1} = (lambda - b_n) P_n - a_{n-1}^2 P_{n-1}, P_0 = 0, P_1 = 1,
which stay exact when b_n and a_n^2 are rational; then
p_n = P_n / (a_1 ... a_{n-1}).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .jacobi import snap_square, _exact_sqrt
from .poly import Interval, RealPolynomial, as_rational, real_roots_in_interval

__all__ = [
    "PeriodicJacobi", "BandStructure", "Gap", "GapRoot", "first_kind_polynomials",
    "second_kind_polynomials", "transfer_matrix", "discriminant", "gamma_polynomial",
    "essential_bands", "gap_eigenvalues", "classify_gap_roots", "weyl_function",
    "EDGE_TOL", "CLOSED_GAP_TOL",
]

EDGE_TOL = 1e-9
CLOSED_GAP_TOL = 1e-10
INDETERMINATE_TOL = 1e-12


def _exactify(x):
    r = as_rational(x)
    return r if r is not None else float(x)


@dataclass(frozen=True)
class PeriodicJacobi:
    """Jacobi matrix with b_{n+N} = b_n, a_{n+N} = a_n."""
    b: tuple
    a: tuple = ()
    a_squared: tuple | None = None

    def __post_init__(self):
        b = tuple(_exactify(x) for x in self.b)
        if self.a_squared is not None:
            a2 = tuple(_exactify(x) for x in self.a_squared)
        else:
            a2 = tuple(snap_square(x) for x in self.a)
        if len(b) == 0 or len(b) != len(a2):
            raise ValueError("periodic Jacobi matrix needs N >= 1 entries in both b and a")
        if any(not float(x) > 0 for x in a2):
            raise ValueError("off-diagonal entries must be positive")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a_squared", a2)
        object.__setattr__(self, "a", tuple(math.sqrt(float(x)) for x in a2))

    @property
    def N(self):
        return len(self.b)

    @property
    def is_exact(self):
        return all(isinstance(x, Fraction) for x in self.b + self.a_squared)

    def b_at(self, n):
        return self.b[(n - 1) % self.N]

    def a2_at(self, n):
        return self.a_squared[(n - 1) % self.N]

    def a_at(self, n):
        return self.a[(n - 1) % self.N]

    def stripped(self, k=1):
        k %= self.N
        return PeriodicJacobi(self.b[k:] + self.b[:k], a_squared=self.a_squared[k:] + self.a_squared[:k])

    def prod_a(self):
        """(exact-or-float) product a_1 ... a_N."""
        p2 = math.prod(self.a_squared)
        if self.is_exact:
            r = _exact_sqrt(p2)
            if r is not None:
                return r
        return math.sqrt(float(p2))

    def matrix(self, size):
        d = np.array([float(self.b_at(n)) for n in range(1, size + 1)])
        e = np.array([self.a_at(n) for n in range(1, size)])
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)

    def diagonals(self, size):
        return (np.array([float(self.b_at(n)) for n in range(1, size + 1)]),
                np.array([self.a_at(n) for n in range(1, size)]))


def _monic(J, upto, shift=0):
    """P_0..P_upto for the ``shift``-stripped matrix."""
    exact = J.is_exact
    conv = (lambda x: x) if exact else float
    one = Fraction(1) if exact else 1.0
    P = [RealPolynomial(), RealPolynomial((one,))]
    for n in range(1, upto):
        bn = conv(J.b_at(n + shift))
        a2prev = conv(J.a2_at(n - 1 + shift)) if n > 1 else one
        P.append(RealPolynomial((-bn, one)) * P[n] - P[n - 1] * a2prev)
    return P[: upto + 1]


def _prefix_prod_a(J, n, shift=0):
    """a_{1+shift} ... a_{n-1+shift}, exact when possible."""
    p2 = math.prod(J.a2_at(j + shift) for j in range(1, n)) if n > 1 else Fraction(1)
    if J.is_exact:
        r = _exact_sqrt(p2)
        if r is not None:
            return r
    return math.sqrt(float(p2))


def first_kind_polynomials(J, upto):
    """[p_0, ..., p_upto] with p_0 = 0, p_1 = 1."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    P = _monic(J, upto)
    return [P[n] / _prefix_prod_a(J, n) if n > 1 else P[n] for n in range(upto + 1)]


def second_kind_polynomials(J, upto):
    """[q_0, ..., q_upto] with q_0 = -1, q_1 = 0, q_n = p^{(1)}_{n-1} / a_1."""
    if upto < 1:
        raise ValueError("upto must be >= 1")
    p1 = first_kind_polynomials(J.stripped(1), max(upto - 1, 1))
    a1 = _exact_sqrt(J.a2_at(1)) if J.is_exact else None
    a1 = a1 if a1 is not None else J.a_at(1)
    out = [RealPolynomial((-1,)), RealPolynomial()]
    for n in range(2, upto + 1):
        out.append(p1[n - 1] / a1)
    return out[: upto + 1]


def transfer_matrix(J, lam, n):
    """T_n(lambda) = A_n ... A_1, A_k = [[(lambda-b_k)/a_k, -1/a_k], [a_k, 0]]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    T = np.eye(2)
    for k in range(1, n + 1):
        ak = J.a_at(k)
        A = np.array([[(lam - float(J.b_at(k))) / ak, -1.0 / ak], [ak, 0.0]])
        T = A @ T
    return T


def _numerators(J):
    """P_{N+1} and a_N^2 P^{(1)}_{N-1} (monic forms)."""
    N = J.N
    P = _monic(J, N + 1)
    P1 = _monic(J, max(N - 1, 1), shift=1)
    a2N = J.a2_at(N) if J.is_exact else float(J.a2_at(N))
    tail = P1[N - 1] * a2N if N >= 2 else RealPolynomial()
    return P[N + 1], tail, P


def discriminant(J):
    """D = p_{N+1} - (a_N / a_1) p^{(1)}_{N-1}; degree N, leading coefficient 1 / prod a."""
    top, tail, _ = _numerators(J)
    return (top - tail) / J.prod_a()


def gamma_polynomial(J):
    """gamma_N = p_{N+1} + (a_N / a_1) p^{(1)}_{N-1}."""
    top, tail, _ = _numerators(J)
    return (top + tail) / J.prod_a()


@dataclass(frozen=True)
class Gap:
    interval: Interval
    index_from_right: int
    open: bool

    @property
    def sign(self):
        """-1 on odd-numbered gaps counted from the right, +1 on even ones."""
        return -1 if self.index_from_right % 2 else 1


@dataclass(frozen=True)
class BandStructure:
    bands: tuple
    gaps: tuple

    @property
    def N(self):
        return len(self.bands)

    def open_gaps(self):
        return [g for g in self.gaps if g.open]

    def contains(self, x, tol=0.0):
        return any(b.contains(x, tol) for b in self.bands)

    def bands_right_of(self, x):
        return sum(1 for b in self.bands if b.lo > x)


def _band_edges(J):
    top, tail, _ = _numerators(J)
    num = top - tail
    pa = J.prod_a()
    edges = []
    for target in (2 * pa, -2 * pa):
        rep = real_roots_in_interval(num - target, tol=1e-13)
        for r, m in rep.roots:
            if m > 2:
                raise ValueError(f"degenerate band edge: discriminant root of multiplicity {m} at {r}")
            edges.extend([r] * m)
    if not J.is_exact or not isinstance(pa, Fraction):
        edges = _augment_closed_gaps(J, num, float(pa), edges)
    edges.sort()
    if len(edges) != 2 * J.N:
        raise ValueError(f"found {len(edges)} band edges, expected {2 * J.N}")
    return edges


def _augment_closed_gaps(J, num, pa, edges):
    """Float discriminants lose double roots; add them back from critical
    points where |D| = 2 within CLOSED_GAP_TOL."""
    D = num.to_float() / pa
    dD = D.deriv()
    if dD.degree < 1:
        return edges
    for c, _ in real_roots_in_interval(dD, tol=1e-13).roots:
        val = D(c)
        if abs(abs(val) - 2) <= CLOSED_GAP_TOL * max(1.0, abs(D.lc)):
            width = math.sqrt(4 * CLOSED_GAP_TOL / max(abs(dD.deriv()(c)), 1e-300)) + 1e-9
            edges = [e for e in edges if abs(e - c) > width]
            edges.extend([c, c])
    return edges


def essential_bands(J):
    e = _band_edges(J)
    bands = tuple(Interval(e[2 * k], e[2 * k + 1]) for k in range(J.N))
    gaps = []
    for j in range(J.N - 1):
        lo, hi = bands[j].hi, bands[j + 1].lo
        iv = Interval(min(lo, hi), max(lo, hi))
        gaps.append(Gap(iv, J.N - 1 - j, iv.length > CLOSED_GAP_TOL))
    return BandStructure(bands, tuple(gaps))


@dataclass(frozen=True)
class GapRoot:
    """A root of p_N in a gap closure and its verdict: 'eigenvalue',
    'not-eigenvalue', 'edge' or 'indeterminate'."""
    value: float
    gap_index: int
    status: str
    gamma: float


def classify_gap_roots(J, bands=None):
    bands = bands or essential_bands(J)
    P = _monic(J, J.N)
    gam = gamma_polynomial(J)
    out = []
    if J.N < 2:
        return out
    roots = [r for r, _ in real_roots_in_interval(P[J.N], tol=1e-13).roots]
    for g in bands.gaps:
        inside = [r for r in roots if g.interval.lo - EDGE_TOL <= r <= g.interval.hi + EDGE_TOL]
        for r in inside:
            gv = float(gam(r))
            if not g.open or min(r - g.interval.lo, g.interval.hi - r) <= EDGE_TOL:
                status = "edge"
            elif abs(gv) < INDETERMINATE_TOL:
                status = "indeterminate"
            elif np.sign(gv) == -g.sign:
                status = "eigenvalue"
            else:
                status = "not-eigenvalue"
            out.append(GapRoot(r, g.index_from_right, status, gv))
    return out


def gap_eigenvalues(J):
    """Roots of p_N inside open gaps that pass the sign rule."""
    return [g.value for g in classify_gap_roots(J) if g.status == "eigenvalue"]


def weyl_function(J, lam):
    """m(lambda) = integral of dmu(t) / (t - lambda) off the spectrum."""
    bands = essential_bands(J)
    if bands.contains(lam):
        raise ValueError(f"lambda = {lam} lies in a band")
    N = J.N
    Pn = _monic(J, N)[N]
    pn_val = float(Pn(lam))
    scale = sum(abs(float(c)) * abs(lam) ** k for k, c in enumerate(Pn.coeffs))
    if abs(pn_val) <= 1e-12 * scale:
        raise ValueError(f"pole: p_N vanishes at lambda = {lam}")
    D = float(discriminant(J)(lam))
    g = float(gamma_polynomial(J)(lam))
    s = (-1) ** bands.bands_right_of(lam)
    root = s * math.sqrt(max(D * D - 4, 0.0))
    pa = float(J.prod_a())
    aN_pN = float(J.a2_at(N)) * pn_val / pa
    if abs(-g + root) >= abs(-g - root):
        return (-g + root) / (2 * aN_pN)
    # product form avoids cancellation: m1 m2 = q_{N+1} / (a_N p_N)
    qs = second_kind_polynomials(J, N + 1)
    return 2 * float(qs[N + 1](lam)) / (-g - root)
