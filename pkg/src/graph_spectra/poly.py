"""Real polynomials, Chebyshev families, Sturm root isolation and the
Joukowski substitution.

Coefficients are stored in ascending order.  A polynomial whose
coefficients are all :class:`fractions.Fraction` is *exact*; arithmetic
between exact polynomials stays exact, anything touching a float falls
back to double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

__all__ = [
    "RealPolynomial", "Interval", "RootReport", "chebyshev_t", "chebyshev_u",
    "descartes_bound", "real_roots_in_interval", "square_free_decomposition",
    "sturm_sequence", "joukowski", "joukowski_inverse_in_disk",
    "joukowski_pullback", "characteristic_polynomial", "as_rational",
]

DEFAULT_ROOT_TOL = 1e-11


def as_rational(x, max_den=1024):
    """Return ``x`` as a Fraction if it is exactly a ratio of small integers,
    otherwise None.  Floats qualify only when their binary value has a
    denominator not exceeding ``max_den``."""
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (Integral, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            return None
        f = Fraction(float(x))
        return f if f.denominator <= max_den else None
    return None


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, Integral, np.integer)):
        return Fraction(int(c))
    if isinstance(c, Rational):
        return Fraction(c)
    return float(c)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"interval needs lo <= hi, got [{self.lo}, {self.hi}]")

    @property
    def length(self):
        return self.hi - self.lo

    def contains(self, x, tol=0.0):
        return self.lo - tol <= x <= self.hi + tol

    def __iter__(self):
        yield self.lo
        yield self.hi


@dataclass(frozen=True)
class RealPolynomial:
    coeffs: tuple = ()

    def __post_init__(self):
        c = [_coerce(x) for x in self.coeffs]
        if not all(isinstance(x, Fraction) for x in c):
            c = [float(x) for x in c]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls((lead,))
        for r in roots:
            p = p * cls((-_coerce(r), 1))
        return p

    # -- basic properties ---------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_exact(self):
        return all(isinstance(c, Fraction) for c in self.coeffs)

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def to_float(self):
        return RealPolynomial(tuple(float(c) for c in self.coeffs))

    def to_exact(self):
        """Exact copy; floats are converted with their full binary value."""
        return RealPolynomial(tuple(Fraction(c) for c in self.coeffs))

    def float_coeffs(self):
        return np.array([float(c) for c in self.coeffs], dtype=float)

    # -- evaluation ---------------------------------------------------
    def __call__(self, x):
        if isinstance(x, np.ndarray):
            if not self.coeffs:
                return np.zeros_like(x, dtype=float)
            return np.polynomial.polynomial.polyval(x, self.float_coeffs())
        exact_x = isinstance(x, (Fraction, Integral)) and not isinstance(x, bool)
        cs = self.coeffs if (exact_x and self.is_exact) else [float(c) for c in self.coeffs]
        acc = 0
        for c in reversed(cs):
            acc = acc * x + c
        return acc

    def deriv(self):
        return RealPolynomial(tuple(k * self.coeffs[k] for k in range(1, len(self.coeffs))))

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other):
        if isinstance(other, RealPolynomial):
            return other
        return RealPolynomial((other,))

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RealPolynomial(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return RealPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero or other.is_zero:
            return RealPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPolynomial(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, RealPolynomial):
            q, r = divmod(self, scalar)
            if not r.is_zero:
                raise ValueError("polynomial division is not exact")
            return q
        if isinstance(scalar, (Fraction, Integral)) and self.is_exact:
            s = Fraction(scalar)
            return RealPolynomial(tuple(c / s for c in self.coeffs))
        return RealPolynomial(tuple(float(c) / float(scalar) for c in self.coeffs))

    def __pow__(self, k):
        out = RealPolynomial((1,))
        for _ in range(int(k)):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RealPolynomial(), self
        quo = [0] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quo[k] = c
            if c == 0:
                continue
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= c * b
        rem = rem[: len(other.coeffs) - 1]
        return RealPolynomial(tuple(quo)), RealPolynomial(tuple(rem))

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            other = RealPolynomial((other,))
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def allclose(self, other, tol=1e-12):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return all(abs(float(self[k]) - float(other[k])) <= tol * (1 + abs(float(other[k])))
                   for k in range(n))

    def compose(self, inner):
        inner = self._lift(inner)
        out = RealPolynomial()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def scale_argument(self, s):
        """Return p(s x)."""
        s = _coerce(s)
        return RealPolynomial(tuple(c * s ** k for k, c in enumerate(self.coeffs)))

    def shift_power(self, k):
        """Multiply by x**k (k >= 0) or divide by x**(-k) when exact."""
        if k >= 0:
            return RealPolynomial((0,) * k + self.coeffs)
        if any(c != 0 for c in self.coeffs[:-k]):
            raise ValueError("polynomial is not divisible by the requested power of x")
        return RealPolynomial(self.coeffs[-k:])

    def monic(self):
        if self.is_zero:
            return self
        return self / self.lc

    def gcd(self, other):
        """Monic greatest common divisor; exact inputs only."""
        a, b = self.to_exact(), self._lift(other).to_exact()
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def __repr__(self):
        if self.is_zero:
            return "RealPolynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if k == 0 else f"{c}*x" if k == 1 else f"{c}*x^{k}")
        return "RealPolynomial(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------
# Chebyshev families
# ---------------------------------------------------------------------

def _three_term(first, second, n):
    two_x = RealPolynomial((0, 2))
    if n == 0:
        return first
    prev, cur = first, second
    for _ in range(n - 1):
        prev, cur = cur, two_x * cur - prev
    return cur


def chebyshev_t(n):
    """Chebyshev polynomial of the first kind, T_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _three_term(RealPolynomial((1,)), RealPolynomial((0, 1)), n)


def chebyshev_u(n):
    """Chebyshev polynomial of the second kind, U_n (U_{-1} = 0)."""
    if n < -1:
        raise ValueError("n must be >= -1")
    if n == -1:
        return RealPolynomial()
    return _three_term(RealPolynomial((1,)), RealPolynomial((0, 2)), n)


# ---------------------------------------------------------------------
# Root counting and isolation
# ---------------------------------------------------------------------

def descartes_bound(p):
    """Number of sign changes in the coefficient sequence, an upper bound
    for the number of positive roots counted with multiplicity (equal to
    it modulo 2)."""
    if p.is_zero:
        raise ValueError("indeterminate sign count: zero polynomial")
    signs = [c > 0 for c in p.coeffs if c != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def square_free_decomposition(p):
    """Yun's algorithm over the rationals.

    Returns a list of (factor, multiplicity) with pairwise coprime monic
    square-free factors whose product (with multiplicities) is p / lc(p).
    """
    f = p.to_exact()
    if f.degree < 1:
        return []
    fp = f.deriv()
    a = f.gcd(fp)
    b = f / a
    c = fp / a
    d = c - b.deriv()
    out = []
    i = 1
    while b.degree >= 1:
        g = b.gcd(d)
        b = b / g
        c = d / g
        if g.degree >= 1:
            out.append((g, i))
        d = c - b.deriv()
        i += 1
    return out


def sturm_sequence(g):
    """Sturm sequence of an exact square-free polynomial; each member is
    rescaled by a positive constant to keep coefficients small."""
    seq = [g, g.deriv()]
    while not seq[-1].is_zero and seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero:
            break
        seq.append(r / abs(r.lc))
    return [s / abs(s.lc) for s in seq if not s.is_zero]


def _sign_changes(seq, x):
    vals = [s(x) for s in seq]
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _cauchy_bound(p):
    lead = abs(p.lc)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=0)


def _isolate(g, lo, hi, tol):
    """Roots of the exact square-free g in (lo, hi]; g(lo), g(hi) != 0."""
    seq = sturm_sequence(g)
    roots = []
    stack = [(lo, hi, _sign_changes(seq, lo), _sign_changes(seq, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        count = va - vb
        if count <= 0:
            continue
        if count == 1:
            roots.append(_polish(g, *_refine(g, a, b, tol)))
            continue
        m = (a + b) / 2
        if g(m) == 0:
            roots.append(m)
            delta = (b - a) / 4
            while True:
                ml, mr = m - delta, m + delta
                if g(ml) != 0 and g(mr) != 0 and _sign_changes(seq, ml) - _sign_changes(seq, mr) == 1:
                    break
                delta /= 2
            stack.append((a, ml, va, _sign_changes(seq, ml)))
            stack.append((mr, b, _sign_changes(seq, mr), vb))
            continue
        vm = _sign_changes(seq, m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    return roots


def _refine(g, a, b, tol):
    """Exact bisection of a bracket holding one simple root."""
    ga = g(a) > 0
    half_tol = Fraction(tol) / 4
    while b - a > half_tol:
        m = (a + b) / 2
        gm = g(m)
        if gm == 0:
            return m, m
        if (gm > 0) == ga:
            a = m
        else:
            b = m
    return a, b


def _polish(g, a, b):
    """Float Newton steps kept inside the certified bracket [a, b]."""
    if a == b:
        return a
    lo, hi = float(a), float(b)
    cf = g.float_coeffs()
    dcf = np.polynomial.polynomial.polyder(cf)
    x = 0.5 * (lo + hi)
    for _ in range(4):
        d = np.polynomial.polynomial.polyval(x, dcf)
        if d == 0:
            break
        nx = x - np.polynomial.polynomial.polyval(x, cf) / d
        if not lo <= nx <= hi:
            break
        x = nx
    return Fraction(x)


@dataclass(frozen=True)
class RootReport:
    """Roots strictly inside the interval and roots within ``tol`` of an
    endpoint (boundary suspects), each as sorted (root, multiplicity)."""
    roots: tuple
    boundary: tuple

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def values(self):
        return [r for r, _ in self.roots]


def real_roots_in_interval(p, iv=(-math.inf, math.inf), tol=DEFAULT_ROOT_TOL):
    """Real roots of p in the open interval ``iv`` with multiplicities.

    Square-free decomposition, Sturm isolation and exact bisection.  Roots
    closer than ``tol`` to a finite endpoint are not returned as roots but
    listed in ``RootReport.boundary``.  Float coefficients are converted to
    their exact binary values, so multiplicities are detected only when
    they are exact.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has every number as a root")
    lo, hi = iv
    f = p.to_exact()
    if f.degree < 1:
        return RootReport((), ())
    bound = _cauchy_bound(f) + 1
    ftol = Fraction(tol)
    a = -bound if lo == -math.inf else max(Fraction(lo) - ftol, -bound)
    b = bound if hi == math.inf else min(Fraction(hi) + ftol, bound)
    inside, edge = [], []
    for g, mult in square_free_decomposition(f):
        aa, bb = a, b
        step = ftol / 2
        while g(aa) == 0:
            aa -= step
        while g(bb) == 0:
            bb += step
        for r in _isolate(g, aa, bb, tol):
            rf = float(r)
            near = (lo != -math.inf and abs(r - Fraction(lo)) <= ftol) or \
                   (hi != math.inf and abs(r - Fraction(hi)) <= ftol)
            if near:
                edge.append((rf, mult))
            elif (lo == -math.inf or rf > lo) and (hi == math.inf or rf < hi):
                inside.append((rf, mult))
    return RootReport(tuple(sorted(inside)), tuple(sorted(edge)))


# ---------------------------------------------------------------------
# Joukowski map
# ---------------------------------------------------------------------

def joukowski(z):
    """lambda = z + 1/z."""
    if z == 0:
        raise ValueError("joukowski map undefined at z = 0")
    return z + 1 / z


def joukowski_inverse_in_disk(lam):
    """The preimage of real lambda, |lambda| > 2, inside (-1, 1)."""
    lam = float(lam)
    if abs(lam) <= 2:
        raise ValueError("inside essential spectrum, no disk preimage on reals")
    return 2.0 / (lam + math.copysign(math.sqrt(lam * lam - 4.0), lam))


def joukowski_pullback(p):
    """x**deg(p) * p(x + 1/x) as a polynomial in x."""
    d = p.degree
    if d < 0:
        return RealPolynomial()
    # (x + 1/x)^k x^d = x^(d-k) (x^2 + 1)^k
    x2p1 = RealPolynomial((1, 0, 1))
    out = RealPolynomial()
    power = RealPolynomial((1,))
    for k, c in enumerate(p.coeffs):
        if k > 0:
            power = power * x2p1
        if c != 0:
            out = out + (power * c).shift_power(d - k)
    return out


# ---------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------

def _faddeev_leverrier(entries):
    n = len(entries)
    A = np.array(entries, dtype=object)
    ident = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], dtype=object)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = np.array([[Fraction(0)] * n for _ in range(n)], dtype=object)
    for k in range(1, n + 1):
        M = A.dot(M) + coeffs[n - k + 1] * ident
        AM = A.dot(M)
        coeffs[n - k] = -sum(AM[i, i] for i in range(n)) / k
    return RealPolynomial(tuple(coeffs))


def _interpolated_charpoly(M):
    n = M.shape[0]
    radius = max(1.0, float(np.max(np.sum(np.abs(M), axis=1))))
    t = np.cos(np.pi * (np.arange(n + 1) + 0.5) / (n + 1))
    vals = np.array([np.linalg.det(radius * tk * np.eye(n) - M) for tk in t])
    cheb = np.polynomial.chebyshev.chebfit(t, vals, n)
    power = np.polynomial.chebyshev.cheb2poly(cheb)
    coeffs = [power[k] / radius ** k for k in range(n + 1)]
    coeffs[n] = 1.0
    return RealPolynomial(tuple(coeffs))


def characteristic_polynomial(M):
    """Monic det(lambda I - M).

    Exact (Faddeev-LeVerrier over the rationals) when every entry is a
    ratio of small integers, otherwise by interpolation at Chebyshev
    points.
    """
    if isinstance(M, np.ndarray) and M.dtype != object:
        arr = M
    else:
        arr = np.array(M, dtype=object)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"characteristic polynomial needs a square matrix, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        return RealPolynomial((1,))
    exact = [[as_rational(x) for x in row] for row in arr.tolist()]
    if all(x is not None for row in exact for x in row):
        return _faddeev_leverrier(exact)
    return _interpolated_charpoly(np.array(arr, dtype=float))
