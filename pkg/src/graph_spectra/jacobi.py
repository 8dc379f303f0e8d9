"""Finite-rank one-sided Jacobi matrices: Jost polynomial, perturbation
determinant, discrete spectrum and spectral measure.

J = J({b_j}, {a_j}) has diagonal b_1, b_2, ... and off-diagonal
a_1, a_2, ...; beyond index q it equals the free matrix (b = 0, a = 1).
Off-diagonal entries are stored through their squares so that weights
like sqrt(2) keep an exact representation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from .poly import RealPolynomial, as_rational, real_roots_in_interval, joukowski

__all__ = [
    "FiniteRankJacobi", "SpectralMeasure", "jost_polynomial", "perturbation_determinant",
    "discrete_spectrum", "jost_resonances", "spectral_measure",
    "jost_determinant_identity_check", "jost_modulus_polynomial", "free_resolvent_entry",
    "EIGEN_MARGIN", "snap_square",
]

EIGEN_MARGIN = 1e-9
FLOAT_TRIM_TOL = 1e-13


def snap_square(a):
    """a**2, snapped to a ratio of small integers when a is the float image
    of the square root of one (e.g. math.sqrt(2) -> 2)."""
    r = as_rational(a)
    if r is not None:
        return r * r
    sq = float(a) * float(a)
    cand = Fraction(sq).limit_denominator(1024)
    if abs(float(cand) - sq) <= 4 * np.finfo(float).eps * max(1.0, sq):
        return cand
    return sq


def _exactify(x):
    r = as_rational(x)
    return r if r is not None else float(x)


def _is_free(b, a2, exact):
    if exact:
        return b == 0 and a2 == 1
    return abs(float(b)) <= FLOAT_TRIM_TOL and abs(float(a2) - 1) <= FLOAT_TRIM_TOL


@dataclass(frozen=True)
class FiniteRankJacobi:
    """Eventually free Jacobi matrix.

    ``b`` and ``a`` (or ``a_squared``) list the leading entries; shorter
    lists are padded with free values.  Trailing free entries are trimmed
    so that ``q`` is minimal.
    """
    b: tuple = ()
    a: tuple = ()
    a_squared: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        b = [_exactify(x) for x in self.b]
        if self.a_squared is not None:
            a2 = [_exactify(x) for x in self.a_squared]
        else:
            for x in self.a:
                if not float(x) > 0:
                    raise ValueError(f"off-diagonal entries must be positive, got {x}")
            a2 = [snap_square(x) for x in self.a]
        if any(not float(x) > 0 for x in a2):
            raise ValueError("off-diagonal entries must be positive")
        q = max(len(b), len(a2))
        b += [Fraction(0)] * (q - len(b))
        a2 += [Fraction(1)] * (q - len(a2))
        while q and _is_free(b[q - 1], a2[q - 1], isinstance(b[q - 1], Fraction) and isinstance(a2[q - 1], Fraction)):
            q -= 1
        b, a2 = b[:q], a2[:q]
        object.__setattr__(self, "b", tuple(b))
        object.__setattr__(self, "a_squared", tuple(a2))
        object.__setattr__(self, "a", tuple(math.sqrt(float(x)) for x in a2))

    @property
    def q(self):
        return len(self.b)

    @property
    def is_exact(self):
        return all(isinstance(x, Fraction) for x in self.b + self.a_squared)

    def b_at(self, n):
        return self.b[n - 1] if 1 <= n <= self.q else Fraction(0)

    def a2_at(self, n):
        return self.a_squared[n - 1] if 1 <= n <= self.q else Fraction(1)

    def a_at(self, n):
        return math.sqrt(float(self.a2_at(n)))

    def prod_a(self):
        """Product a_1 ... a_q (the infinite product reduces to it)."""
        return math.prod(self.a) if self.a else 1.0

    def matrix(self, N):
        """N x N principal section."""
        d = np.array([float(self.b_at(n)) for n in range(1, N + 1)])
        e = np.array([self.a_at(n) for n in range(1, N)])
        return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)

    def diagonals(self, N):
        return (np.array([float(self.b_at(n)) for n in range(1, N + 1)]),
                np.array([self.a_at(n) for n in range(1, N)]))

    def __repr__(self):
        return f"FiniteRankJacobi(b={list(map(float, self.b))}, a={list(self.a)})"


# ---------------------------------------------------------------------
# Jost polynomial
# ---------------------------------------------------------------------

def _scaled_jost(J):
    """v_0 = (a_1 ... a_q) u(z) as a polynomial in z.

    With v_n = (a_n ... a_q) u_n the recurrence becomes
    v_{n-1} = (z + 1/z - b_n) v_n - a_n^2 v_{n+1}, started from
    v_{q+1} = z^{q+1}, v_{q+2} = z^{q+2}; multiplying by z keeps it
    polynomial and the division by z is exact for n >= 1.
    """
    q = J.q
    exact = J.is_exact
    one = Fraction(1) if exact else 1.0
    zpow = lambda k: RealPolynomial((0,) * k + (one,))
    v_next, v = zpow(q + 2), zpow(q + 1)
    for n in range(q + 1, 0, -1):
        bn = J.b_at(n) if exact else float(J.b_at(n))
        a2 = J.a2_at(n) if exact else float(J.a2_at(n))
        zv = RealPolynomial((one, -bn, one)) * v - (v_next * a2).shift_power(1)
        v_next, v = v, zv.shift_power(-1)
    return v


def jost_polynomial(J):
    """Jost function u(z) = u_0(z) of a finite-rank Jacobi matrix."""
    v = _scaled_jost(J)
    pa2 = math.prod(J.a_squared) if J.a_squared else Fraction(1)
    if J.is_exact:
        root = _exact_sqrt(pa2)
        if root is not None:
            return v / root
    return v.to_float() / math.sqrt(float(pa2))


def _exact_sqrt(x):
    x = Fraction(x)
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def jost_modulus_polynomial(J):
    """Q with |u(e^{it})|^2 = Q(2 cos t).

    With u = sum c_k z^k, |u|^2 = d_0 + sum_m 2 d_m cos(mt) where
    d_m = sum_k c_{k+m} c_k, and 2 cos(mt) = 2 T_m(x/2).
    """
    from .poly import chebyshev_t
    c = jost_polynomial(J).float_coeffs()
    deg = len(c) - 1
    Q = RealPolynomial((float(np.dot(c, c)),))
    for m in range(1, deg + 1):
        dm = float(np.dot(c[m:], c[:-m]))
        Q = Q + chebyshev_t(m).scale_argument(Fraction(1, 2)).to_float() * (2 * dm)
    return Q


# ---------------------------------------------------------------------
# Perturbation determinant
# ---------------------------------------------------------------------

def _check_disk_point(z):
    if z == 0 or abs(z) >= 1 or z * z == 1:
        raise ValueError(f"resolvent formula singular or outside the disk at z = {z}")


def free_resolvent_entry(i, j, z):
    """Entry r_ij of (J_0 - lambda)^{-1}, lambda = z + 1/z, |z| < 1."""
    return (z ** abs(i - j) - z ** (i + j)) / (z - 1 / z)


def perturbation_determinant(J, z):
    """det(I + (J - J_0) R(lambda, J_0)) at lambda = z + 1/z.

    The perturbation lives on sites 1..q+1, so the determinant is that of
    a (q+1) x (q+1) matrix.
    """
    _check_disk_point(z)
    q = J.q
    if q == 0:
        return complex(1.0) if isinstance(z, complex) else 1.0
    m = q + 1
    D = np.zeros((m, m), dtype=complex if isinstance(z, complex) else float)
    for n in range(1, m + 1):
        D[n - 1, n - 1] = float(J.b_at(n))
        if n < m:
            D[n - 1, n] = D[n, n - 1] = J.a_at(n) - 1.0
    R = np.array([[free_resolvent_entry(i, j, z) for j in range(1, m + 1)] for i in range(1, m + 1)])
    return np.linalg.det(np.eye(m) + D @ R)


def jost_determinant_identity_check(J, z):
    """|u(z) - L(z) / (a_1 ... a_q)|."""
    L = perturbation_determinant(J, z)
    u = jost_polynomial(J)(z)
    return abs(u - L / J.prod_a())


# ---------------------------------------------------------------------
# Spectrum and spectral measure
# ---------------------------------------------------------------------

def _disk_roots(J, margin):
    u = jost_polynomial(J)
    if u.degree < 1:
        return u, [], []
    rep = real_roots_in_interval(u, (-1.0, 1.0), tol=1e-13)
    inside, edge = [], []
    for z, _ in rep.roots:
        (inside if abs(z) < 1 - margin else edge).append(z)
    edge.extend(z for z, _ in rep.boundary)
    return u, inside, edge


def discrete_spectrum(J, margin=EIGEN_MARGIN):
    """Sorted (lambda_j, z_j) over Jost roots z_j strictly inside (-1, 1)."""
    _, inside, _ = _disk_roots(J, margin)
    return sorted((joukowski(z), z) for z in inside)


def jost_resonances(J, margin=EIGEN_MARGIN):
    """Jost roots within ``margin`` of z = +-1 (threshold resonances).

    These never count as eigenvalues."""
    _, _, edge = _disk_roots(J, margin)
    return sorted(edge)


@dataclass(frozen=True)
class SpectralMeasure:
    """w(x) dx on [-2, 2] plus point masses at the discrete eigenvalues."""
    ac_weight: Callable
    masses: tuple
    jost: RealPolynomial

    def _t_integrand(self, f):
        c = self.jost.float_coeffs()

        def g(t):
            u = np.polynomial.polynomial.polyval(np.exp(1j * t), c)
            return f(2 * math.cos(t)) * 2 * math.sin(t) ** 2 / (math.pi * abs(u) ** 2)
        return g

    def ac_integral(self, f=lambda x: 1.0):
        val, _ = integrate.quad(self._t_integrand(f), 0.0, math.pi, epsabs=1e-13, epsrel=1e-12, limit=200)
        return val

    def total_mass(self):
        return self.ac_integral() + sum(s for _, s in self.masses)

    def moment(self, k):
        return self.ac_integral(lambda x: x ** k) + sum(s * lam ** k for lam, s in self.masses)


def spectral_measure(J):
    u = jost_polynomial(J)
    c = u.float_coeffs()
    du = u.deriv()

    def w(x):
        x = np.asarray(x, dtype=float)
        t = np.arccos(np.clip(x / 2, -1, 1))
        uu = np.polynomial.polynomial.polyval(np.exp(1j * t), c)
        return np.sqrt(np.clip(4 - x * x, 0, None)) / (2 * np.pi * np.abs(uu) ** 2)

    masses = []
    for lam, z in discrete_spectrum(J):
        u_inv = u(1 / z)
        if u_inv == 0:
            raise ValueError(f"u(1/z) vanishes at z = {z}; mass formula undefined")
        masses.append((lam, z * (1 - z ** -2) ** 2 / (du(z) * u_inv)))
    return SpectralMeasure(w, tuple(masses), u)
