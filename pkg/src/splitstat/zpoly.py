"""Exact invariants of monic integer polynomials.

Discriminants via fraction-free elimination of the Sylvester matrix,
the Dedekind p-maximality test, and discriminant prime divisors.
"""

import random
from dataclasses import dataclass, field
from math import gcd, isqrt

from . import fppoly
from .errors import ReduciblePolynomialError
from .fppoly import FieldPolynomial

RHO_MIN_COFACTOR = 10**6
RHO_ITERATION_CAP = 10**6


@dataclass(frozen=True)
class IntPolynomial:
    """Monic polynomial X^n + a_{n-1}X^{n-1} + ... + a_0 over the integers.

    coeffs holds (a_0, ..., a_{n-1}); the leading 1 is implicit.
    """

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("degree must be at least 1")

    @property
    def degree(self):
        return len(self.coeffs)

    @property
    def height(self):
        return max(abs(c) for c in self.coeffs)

    def all_coeffs(self):
        """(a_0, ..., a_{n-1}, 1) in ascending degree order."""
        return self.coeffs + (1,)

    def __call__(self, x):
        value = 1
        for c in reversed(self.coeffs):
            value = value * x + c
        return value


@dataclass(frozen=True)
class DiscriminantReport:
    value: int
    factored_part: dict = field(hash=False)
    cofactor: int


def _bareiss_det(m):
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    m = [row[:] for row in m]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(a, b):
    """Res(a, b) for integer coefficient lists in ascending degree order."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        raise ValueError("resultant of zero polynomial")
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    size = da + db
    rows = []
    for i in range(db):
        rows.append([0] * i + list(reversed(a)) + [0] * (db - 1 - i))
    for i in range(da):
        rows.append([0] * i + list(reversed(b)) + [0] * (da - 1 - i))
    return _bareiss_det(rows)


def discriminant(f):
    """disc(f) = (-1)^(n(n-1)/2) Res(f, f'), exact.

    Degree 1 is defined as 1 (empty-product convention).  Degrees 2 and 3
    use the classical closed forms; higher degrees go through the Sylvester
    matrix with Bareiss elimination.
    """
    n = f.degree
    if n == 1:
        return 1
    if n == 2:
        a0, a1 = f.coeffs
        return a1 * a1 - 4 * a0
    if n == 3:
        c, b, a = f.coeffs
        return (
            18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c
        )
    coeffs = list(f.all_coeffs())
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(coeffs, deriv)


def _int_poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def dedekind_is_p_maximal(f, p, rng_seed=0):
    """Dedekind criterion: True iff p does not divide the index of Z[alpha].

    Factors f mod p, lifts the radical g and cofactor h with coefficients
    in [0, p), forms M = (g*h - f)/p and tests gcd(M, g, h) = 1 mod p.
    Raises ReduciblePolynomialError when the lift exposes a proper integer
    factorization of f.
    """
    n = f.degree
    fbar = fppoly.reduce_mod_p(f, p)
    factors = fppoly.full_factor_mod_p(fbar, rng_seed)
    radical = [1]
    for g, _mult in factors:
        radical = fppoly._mul(radical, list(g.coeffs), p)
    hbar = fppoly._divmod([c % p for c in f.all_coeffs()], radical, p)[0]

    # Lifts with representatives in [0, p); both monic by construction.
    g_lift = list(radical)
    h_lift = list(hbar)
    gh = _int_poly_mul(g_lift, h_lift)
    fz = list(f.all_coeffs())
    diff = [x - y for x, y in zip(gh, fz + [0] * (len(gh) - len(fz)))]
    if any(c % p for c in diff):
        raise ArithmeticError("Dedekind lift not divisible by p; factorization bug")
    m = [c // p for c in diff]
    if all(c == 0 for c in m) and 0 < len(g_lift) - 1 < n:
        raise ReduciblePolynomialError(
            "f factors over the integers as the lifted g*h"
        )
    mbar = [c % p for c in m]
    g1 = fppoly._gcd(mbar, radical, p)
    g2 = fppoly._gcd(g1, hbar, p)
    return len(g2) == 1


def is_probable_prime(n):
    """Deterministic Miller-Rabin for the sizes handled here (< 3.3e24)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n, rng, cap=RHO_ITERATION_CAP):
    """One Brent-rho attempt; returns a nontrivial factor or None."""
    if n % 2 == 0:
        return 2
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    iterations = 0
    x = ys = y
    while g == 1 and iterations < cap:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
            iterations += min(m, r - k) + m
        r *= 2
    if g == n:
        g = 1
        while g == 1 and iterations < cap:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            iterations += 1
    return g if 1 < g < n else None


def _factor_with_rho(n, rng, found, leftover):
    if n == 1:
        return
    if is_probable_prime(n):
        found[n] = found.get(n, 0) + 1
        return
    factor = None
    for _ in range(8):
        factor = _brent_rho(n, rng)
        if factor:
            break
    if factor is None:
        leftover.append(n)
        return
    _factor_with_rho(factor, rng, found, leftover)
    _factor_with_rho(n // factor, rng, found, leftover)


def discriminant_prime_divisors(f, trial_bound, rng_seed=0):
    """Factor |disc(f)| by trial division up to trial_bound, then Brent rho.

    Large cofactors (>= RHO_MIN_COFACTOR) get a bounded rho pass; whatever
    resists ends up in the cofactor.  cofactor != 1 means the factorization
    is incomplete, not failed.
    """
    if trial_bound < 2:
        raise ValueError("trial_bound must be at least 2")
    d = abs(discriminant(f))
    factored = {}
    if d == 0:
        return DiscriminantReport(value=discriminant(f), factored_part={}, cofactor=0)
    c = d
    q = 2
    while q <= trial_bound and q * q <= c:
        while c % q == 0:
            factored[q] = factored.get(q, 0) + 1
            c //= q
        q += 1 if q == 2 else 2
    if 1 < c <= trial_bound:
        factored[c] = factored.get(c, 0) + 1
        c = 1
    if c >= RHO_MIN_COFACTOR:
        rng = random.Random(rng_seed)
        found = {}
        leftover = []
        _factor_with_rho(c, rng, found, leftover)
        c = 1
        for piece in leftover:
            c *= piece
        for prime, e in found.items():
            factored[prime] = factored.get(prime, 0) + e
    return DiscriminantReport(value=discriminant(f), factored_part=factored, cofactor=c)


def is_perfect_square(n):
    if n < 0:
        return False
    root = isqrt(n)
    return root * root == n
