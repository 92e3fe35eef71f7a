"""Exact combinatorics of splitting types.

A splitting type for degree n is a tuple r = (r_1, ..., r_n) of
multiplicities with sum i*r_i = n, i.e. an integer partition of n.
All constants are exact rationals (fractions.Fraction); callers take a
floating view on demand.
"""

from fractions import Fraction
from math import comb, factorial

from .errors import NonConvergenceError
from .primes import sieve_primes

MAX_ENUM_DEGREE = 20


def type_degree(r):
    return sum((i + 1) * m for i, m in enumerate(r))


def validate_type(r):
    """Check r is a well-formed splitting type; returns its degree n."""
    if not r or any(m < 0 for m in r):
        raise ValueError("splitting type entries must be nonnegative")
    n = len(r)
    if type_degree(r) != n:
        raise ValueError("sum of i*r_i = %d does not match n = %d" % (type_degree(r), n))
    return n


def enumerate_types(n):
    """All splitting types of degree n (partition multiplicity vectors).

    Deterministic lexicographic order on the multiplicity vectors,
    largest-part-first generation; the count is the partition number p(n).
    """
    if not 1 <= n <= MAX_ENUM_DEGREE:
        raise ValueError("degree must be between 1 and %d" % MAX_ENUM_DEGREE)
    out = []

    def rec(remaining, max_part, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(remaining, max_part), 0, -1):
            k = 1
            while k * part <= remaining:
                acc[part - 1] = k
                rec(remaining - k * part, part - 1, acc)
                k += 1
            acc[part - 1] = 0

    rec(n, n, [0] * n)
    return sorted(out)


def delta(r):
    """Density of the conjugacy class with cycle type r in S_n."""
    validate_type(r)
    d = Fraction(1)
    for i, m in enumerate(r, start=1):
        d /= Fraction(i) ** m * factorial(m)
    return d


def class_size(r):
    """Order of the conjugacy class: n! * delta(r), always integral."""
    n = validate_type(r)
    size = factorial(n) * delta(r)
    if size.denominator != 1:
        raise ArithmeticError("class size %s is not integral" % size)
    return size.numerator


def _mobius(d):
    m = 1
    q = 2
    while q * q <= d:
        if d % q == 0:
            d //= q
            if d % q == 0:
                return 0
            m = -m
        q += 1
    if d > 1:
        m = -m
    return m


def irreducible_count(p, k):
    """Number of monic irreducible degree-k polynomials over GF(p)."""
    if k < 1:
        raise ValueError("k must be positive")
    total = 0
    for d in range(1, k + 1):
        if k % d == 0:
            total += _mobius(d) * p ** (k // d)
    assert total % k == 0
    return total // k


def class_count(n, r, p):
    """Number of squarefree monic degree-n polynomials mod p of type r."""
    if len(r) != n:
        raise ValueError("type length does not match n")
    validate_type(r)
    out = 1
    for k, m in enumerate(r, start=1):
        if m:
            out *= comb(irreducible_count(p, k), m)
    return out


def paper_second_order(r):
    """Published closed form for the p^(n-1) coefficient of the class count.

    Kept verbatim for side-by-side comparison with the empirically
    extracted coefficient; the two disagree on some types.
    """
    validate_type(r)
    r1 = r[0]
    r2 = r[1] if len(r) >= 2 else 0
    num = Fraction(r2 * (r2 - 1) * (r1 + 1) * (r1 + 2))
    den = Fraction(2 ** (r2 + 1) * factorial(r1) * factorial(r2))
    return delta(r) * num / den


def paper_degree2_coefficient(r2):
    """Published intermediate constant for the degree-2 binomial expansion."""
    return Fraction(-r2 * (r2 - 1), 2**r2 * factorial(r2))


def empirical_second_order(r, p_min, p_max, bound=8):
    """Second-order coefficient of class_count(n,r,p)/p^n about delta(r).

    Computes c(p) = p*(class_count/p^n - delta(r)) exactly over the primes
    in [p_min, p_max] and extracts the limit by Richardson extrapolation
    from the two largest primes; raises NonConvergenceError when the c(p)
    do not stay within O(1/p) of c(p_max).
    """
    n = validate_type(r)
    primes = [p for p in sieve_primes(p_max).primes if p >= p_min]
    if len(primes) < 3:
        raise ValueError("need at least 3 primes in [p_min, p_max]")
    d = delta(r)
    cs = [p * (Fraction(class_count(n, r, p), p**n) - d) for p in primes]
    c_last = cs[-1]
    for p, c in zip(primes, cs):
        if abs(c - c_last) * p > bound:
            raise NonConvergenceError(
                "second-order coefficient does not stabilize for r=%s" % (r,)
            )
    p1, p2 = primes[-2], primes[-1]
    c1, c2 = cs[-2], cs[-1]
    limit = Fraction(p2 * c2 - p1 * c1, p2 - p1)
    for p, c in zip(primes, cs):
        if abs(c - limit) * p > bound:
            raise NonConvergenceError(
                "extrapolated coefficient %s not within O(1/p) of data" % limit
            )
    return limit


def moment_constant(k, r):
    """Leading constant of the k-th centered moment of the splitting count."""
    if k < 1:
        raise ValueError("k must be positive")
    d = delta(r)
    if k % 2 == 0:
        half = k // 2
        return (d - d * d) ** half * Fraction(factorial(k), 2**half * factorial(half))
    half = (k - 1) // 2
    return d**half * Fraction(factorial(k), 2**half * factorial(half))


def gaussian_moment(k):
    """k-th moment of the standard normal distribution, exact."""
    if k < 1:
        raise ValueError("k must be positive")
    if k % 2 == 1:
        return Fraction(0)
    half = k // 2
    return Fraction(factorial(k), 2**half * factorial(half))


def parity(r):
    """'even' or 'odd': the sign of any permutation with cycle type r."""
    validate_type(r)
    transpositions = sum(i * m for i, m in enumerate(r))  # sum (i-1)*r_i
    return "even" if transpositions % 2 == 0 else "odd"


def splits_in_alternating(r):
    """Whether the S_n class of type r splits into two A_n classes.

    Only defined for even classes; splits iff all cycle lengths are odd
    and pairwise distinct.
    """
    if parity(r) != "even":
        raise ValueError("class of type %s does not lie in A_n" % (r,))
    for i, m in enumerate(r, start=1):
        if m == 0:
            continue
        if i % 2 == 0 or m > 1:
            return False
    return True
