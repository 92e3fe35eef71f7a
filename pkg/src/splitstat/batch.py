"""Vectorized kernels for cubic families.

These are pure accelerations: every result is defined by (and tested
against) the scalar routines in fppoly and family.  Coefficients must fit
in 64-bit machine words and moduli stay below 2^20 so double-width
products never overflow.
"""

import numpy as np

from . import family as _family
from .zpoly import discriminant, is_perfect_square

MAX_KERNEL_PRIME = 2**20
MAX_KERNEL_HEIGHT = 2**62

# Codes emitted by _cubic_codes.
SPLIT, TRANSPOSITION, INERT, ABSENT = 0, 1, 2, 3

CODE_TYPES = {SPLIT: (3, 0, 0), TRANSPOSITION: (1, 1, 0), INERT: (0, 0, 1)}


def _square_mod_f(c0, c1, c2, a, b, c, p):
    """(c0 + c1 X + c2 X^2)^2 reduced modulo X^3 + aX^2 + bX + c, mod p."""
    s0 = (c0 * c0) % p
    s1 = (2 * c0 * c1) % p
    s2 = (c1 * c1 + 2 * c0 * c2) % p
    s3 = (2 * c1 * c2) % p
    s4 = (c2 * c2) % p
    # X^4 -> eliminate via X^3 = -aX^2 - bX - c
    s3 = (s3 - a * s4) % p
    s2 = (s2 - b * s4) % p
    s1 = (s1 - c * s4) % p
    s2 = (s2 - a * s3) % p
    s1 = (s1 - b * s3) % p
    s0 = (s0 - c * s3) % p
    return s0, s1, s2


def _times_x_mod_f(c0, c1, c2, a, b, c, p):
    t = c2
    return (-c * t) % p, (c0 - b * t) % p, (c1 - a * t) % p


def _frobenius_mod_f(a, b, c, p):
    """X^p modulo X^3 + aX^2 + bX + c, coefficient arrays mod p."""
    zeros = np.zeros_like(a)
    c0, c1, c2 = zeros, np.ones_like(a), zeros  # the polynomial X
    for bit in bin(p)[3:]:
        c0, c1, c2 = _square_mod_f(c0, c1, c2, a, b, c, p)
        if bit == "1":
            c0, c1, c2 = _times_x_mod_f(c0, c1, c2, a, b, c, p)
    return c0, c1, c2


def _cubic_codes(a0, a1, a2, p):
    """Splitting-type codes for cubics X^3 + a2 X^2 + a1 X + a0 mod p.

    Input arrays are arbitrary int64 coefficients; output is an int8 array
    with SPLIT / TRANSPOSITION / INERT / ABSENT per polynomial.
    """
    a = np.remainder(a2, p)
    b = np.remainder(a1, p)
    c = np.remainder(a0, p)
    disc = (
        (18 * ((a * b) % p)) % p * c
        - (4 * ((a * a) % p)) % p * ((a * c) % p)
        + ((a * a) % p) * ((b * b) % p)
        - (4 * ((b * b) % p)) % p * b
        - (27 * c) % p * c
    ) % p
    codes = np.full(a.shape, ABSENT, dtype=np.int8)
    sf = disc != 0
    if not sf.any():
        return codes

    u0, u1, u2 = _frobenius_mod_f(a, b, c, p)
    u1 = (u1 - 1) % p  # u = X^p - X mod f

    zero_u = (u0 == 0) & (u1 == 0) & (u2 == 0)
    deg0 = (~zero_u) & (u1 == 0) & (u2 == 0)
    deg1 = (u1 != 0) & (u2 == 0)
    deg2 = u2 != 0

    codes[sf & zero_u] = SPLIT
    codes[sf & deg0] = INERT

    # deg(u) = 1: one candidate root -u0/u1; homogeneous evaluation of f.
    w1 = (
        -((((u0 * u0) % p) * u0) % p)
        + a * ((u0 * u0) % p) % p * u1
        - b * u0 % p * ((u1 * u1) % p)
        + c * ((((u1 * u1) % p) * u1) % p)
    ) % p
    codes[sf & deg1 & (w1 == 0)] = TRANSPOSITION
    codes[sf & deg1 & (w1 != 0)] = INERT

    # deg(u) = 2: fraction-free Euclid, f mod u then u mod that.
    r0 = (u2 * c) % p
    r1 = (u2 * b - u0) % p
    r2 = (u2 * a - u1) % p
    v1 = (u2 * r1 - r2 * u1) % p
    v0 = (u2 * r0 - r2 * u0) % p
    both_zero = sf & deg2 & (v0 == 0) & (v1 == 0)
    if both_zero.any():
        raise AssertionError("degree-2 gcd for a squarefree cubic")
    w2 = (u2 * ((v0 * v0) % p) - u1 * ((v0 * v1) % p) + u0 * ((v1 * v1) % p)) % p
    codes[sf & deg2 & (v1 != 0) & (w2 == 0)] = TRANSPOSITION
    codes[sf & deg2 & (v1 != 0) & (w2 != 0)] = INERT
    codes[sf & deg2 & (v1 == 0)] = INERT
    return codes


def _coeff_arrays(polys):
    a0 = np.array([f.coeffs[0] for f in polys], dtype=np.int64)
    a1 = np.array([f.coeffs[1] for f in polys], dtype=np.int64)
    a2 = np.array([f.coeffs[2] for f in polys], dtype=np.int64)
    return a0, a1, a2


def supports(polys, max_prime):
    if not polys or any(f.degree != 3 for f in polys):
        return False
    if max_prime >= MAX_KERNEL_PRIME:
        return False
    return all(f.height < MAX_KERNEL_HEIGHT for f in polys)


def cubic_count_matrix(polys, primes):
    """Per-polynomial counts of each cubic splitting type over the primes.

    Returns an int64 array of shape (len(polys), 4): columns are the codes
    SPLIT, TRANSPOSITION, INERT, ABSENT.
    """
    a0, a1, a2 = _coeff_arrays(polys)
    m = len(polys)
    counts = np.zeros((m, 4), dtype=np.int64)
    rows = np.arange(m)
    for p in primes:
        codes = _cubic_codes(a0, a1, a2, int(p))
        counts[rows, codes] += 1
    return counts


def certify_cubics(polys, table, budget):
    """Vectorized equivalent of certify_sn over a cubic family."""
    if not supports(polys, table.primes[-1] if table.primes else 0):
        return [_family.certify_sn(f, table, budget) for f in polys]

    m = len(polys)
    a0, a1, a2 = _coeff_arrays(polys)
    disc = [discriminant(f) for f in polys]

    seen_irr = np.zeros(m, dtype=bool)
    seen_tr = np.zeros(m, dtype=bool)
    used = np.zeros(m, dtype=np.int64)
    done = np.zeros(m, dtype=bool)
    witnesses = [[] for _ in range(m)]

    zero_disc = np.array([d == 0 for d in disc], dtype=bool)
    done |= zero_disc

    for p in table.primes:
        active = np.nonzero(~done)[0]
        if active.size == 0:
            break
        codes = _cubic_codes(a0[active], a1[active], a2[active], int(p))
        present = codes != ABSENT
        used[active[present]] += 1

        irr_idx = active[(codes == INERT) & ~seen_irr[active]]
        for i in irr_idx:
            witnesses[i].append((p, (0, 0, 1)))
        seen_irr[irr_idx] = True

        tr_idx = active[(codes == TRANSPOSITION) & ~seen_tr[active]]
        for i in tr_idx:
            witnesses[i].append((p, (1, 1, 0)))
        seen_tr[tr_idx] = True

        done |= (seen_irr & seen_tr) | (used >= budget)

    certs = []
    for i, f in enumerate(polys):
        if zero_disc[i]:
            certs.append(
                _family.GaloisCertificate(status=_family.REDUCIBLE, witnesses=())
            )
        elif seen_irr[i] and seen_tr[i]:
            certs.append(
                _family.GaloisCertificate(
                    status=_family.SN_CERTIFIED, witnesses=tuple(witnesses[i])
                )
            )
        elif seen_irr[i] and is_perfect_square(disc[i]):
            certs.append(
                _family.GaloisCertificate(
                    status=_family.AN_CANDIDATE, witnesses=tuple(witnesses[i])
                )
            )
        elif not seen_irr[i] and _family._integer_root(f) is not None:
            certs.append(
                _family.GaloisCertificate(
                    status=_family.REDUCIBLE, witnesses=tuple(witnesses[i])
                )
            )
        else:
            certs.append(
                _family.GaloisCertificate(
                    status=_family.UNDETERMINED, witnesses=tuple(witnesses[i])
                )
            )
    return certs
