"""Polynomial family generation and cycle-type Galois certification.

Families are streams of monic IntPolynomial values, either the full
coefficient box [-N, N]^n in lexicographic order or reproducible uniform
samples.  Certification is sound but not complete: a polynomial is
declared S_n only when reduction witnesses prove it, and everything the
witness scan cannot settle is reported as excluded.
"""

import hashlib
import random
from dataclasses import dataclass
from itertools import product

from . import fppoly
from .errors import RegimeError, ResourceLimitError
from .fppoly import _gcd, _pow_mod, _sub, reduce_mod_p
from .primes import sieve_primes
from .zpoly import IntPolynomial, discriminant, is_perfect_square

EXHAUSTIVE_BUDGET = 10**8

SN_CERTIFIED = "SnCertified"
AN_CANDIDATE = "AnCandidate"
REDUCIBLE = "Reducible"
UNDETERMINED = "Undetermined"

# Integer-root search for reducibility proofs trial-divides the constant
# term only up to this bound; larger constant terms stay Undetermined.
ROOT_DIVISOR_BOUND = 10**4


@dataclass(frozen=True)
class FamilySpec:
    n: int
    height_bound: int
    mode: str = "exhaustive"
    sample_size: int = 0
    seed: int = 0
    certifier_prime_budget: int = 25

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("degree must be positive")
        if self.height_bound < 0:
            raise ValueError("height bound must be nonnegative")
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError("mode must be 'exhaustive' or 'sampled'")
        if self.mode == "sampled" and self.sample_size < 1:
            raise ValueError("sampled mode requires sample_size >= 1")
        if self.mode == "exhaustive":
            if (2 * self.height_bound + 1) ** self.n > EXHAUSTIVE_BUDGET:
                raise ResourceLimitError(
                    "exhaustive family of size (2N+1)^n exceeds budget %d"
                    % EXHAUSTIVE_BUDGET
                )

    @property
    def size(self):
        if self.mode == "exhaustive":
            return (2 * self.height_bound + 1) ** self.n
        return self.sample_size


def _subseed(seed, index):
    """Stable per-index sub-seed so sharded generation reproduces the stream."""
    digest = hashlib.sha256(b"%d:%d" % (seed, index)).digest()
    return int.from_bytes(digest[:16], "big")


def generate(spec):
    """Stream the family: all of the box lexicographically, or seeded draws."""
    n, big_n = spec.n, spec.height_bound
    if spec.mode == "exhaustive":
        for tail in product(range(-big_n, big_n + 1), repeat=n):
            yield IntPolynomial(coeffs=tail)
    else:
        for index in range(spec.sample_size):
            rng = random.Random(_subseed(spec.seed, index))
            yield IntPolynomial(
                coeffs=tuple(rng.randrange(-big_n, big_n + 1) for _ in range(n))
            )


@dataclass(frozen=True)
class GaloisCertificate:
    status: str
    witnesses: tuple


def _cubic_type(a0, a1, a2, p):
    """Splitting type of X^3 + a2 X^2 + a1 X + a0 mod p, or None.

    Fast path used by certification and batch statistics; must agree with
    fppoly.splitting_type_mod_p on every input.
    """
    a, b, c = a2 % p, a1 % p, a0 % p
    disc = (
        18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c
    ) % p
    if disc == 0:
        return None
    if p < 512:
        roots = 0
        for x in range(p):
            if (((x + a) * x + b) * x + c) % p == 0:
                roots += 1
    else:
        f = [c, b, a, 1]
        h = _pow_mod([0, 1], p, f, p)
        g = _gcd(f, _sub(h, [0, 1], p), p)
        roots = len(g) - 1
    if roots == 3:
        return (3, 0, 0)
    if roots == 1:
        return (1, 1, 0)
    return (0, 0, 1)


def _quadratic_type(a0, a1, p):
    """Splitting type of X^2 + a1 X + a0 mod p, or None."""
    if p == 2:
        if a1 % 2 == 0:
            return None
        return (0, 1) if a0 % 2 else (2, 0)
    disc = (a1 * a1 - 4 * a0) % p
    if disc == 0:
        return None
    return (2, 0) if pow(disc, (p - 1) // 2, p) == 1 else (0, 1)


def _splitting_type(f, p):
    if f.degree == 2:
        a0, a1 = f.coeffs
        return _quadratic_type(a0, a1, p)
    if f.degree == 3:
        a0, a1, a2 = f.coeffs
        return _cubic_type(a0, a1, a2, p)
    return fppoly.splitting_type_mod_p(f, p)


def _is_transposition_type(r):
    """Exactly one degree-2 factor and every other factor degree odd."""
    if len(r) < 2 or r[1] != 1:
        return False
    return all(m == 0 for i, m in enumerate(r, start=1) if i % 2 == 0 and i != 2)


def _is_long_cycle_type(r):
    n = len(r)
    if r[n - 1] == 1:
        return True
    return n >= 2 and r[n - 2] == 1 and (n == 2 or r[0] == 1)


def _integer_root(f):
    """An integer root of f, or None; searches divisors of the constant term.

    Divisors are recovered by trial division up to ROOT_DIVISOR_BOUND, so a
    huge constant term with only large divisors can miss roots; callers fall
    back to Undetermined in that case.
    """
    a0 = f.coeffs[0]
    if a0 == 0:
        return 0
    target = abs(a0)
    small = []
    d = 1
    while d * d <= target and d <= ROOT_DIVISOR_BOUND:
        if target % d == 0:
            small.append(d)
            small.append(target // d)
        d += 1
    for t in small:
        for root in (t, -t):
            if f(root) == 0:
                return root
    return None


def certify_sn(f, table, budget):
    """Cycle-type certification of G_f = S_n from reductions modulo primes.

    Scans primes from the table that do not divide disc(f), spending at
    most `budget` of them, and certifies S_n from an irreducible reduction
    (transitivity and a long cycle) plus a transposition-generating type.
    Square discriminant with an irreducible witness downgrades to
    AnCandidate; an explicit integer factorization yields Reducible;
    everything else is Undetermined.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    n = f.degree
    d = discriminant(f)
    if d == 0:
        # gcd(f, f') is a proper factor over Q.
        return GaloisCertificate(status=REDUCIBLE, witnesses=())

    witnesses = []
    seen_irreducible = False
    seen_transposition = False
    seen_long_cycle = False
    used = 0
    for p in table.primes:
        if used >= budget:
            break
        if d % p == 0:
            continue
        used += 1
        r = _splitting_type(f, p)
        assert r is not None
        new = False
        if r[n - 1] == 1 and not seen_irreducible:
            seen_irreducible = True
            seen_long_cycle = True
            new = True
        if _is_transposition_type(r) and not seen_transposition:
            seen_transposition = True
            new = True
        if _is_long_cycle_type(r) and not seen_long_cycle:
            seen_long_cycle = True
            new = True
        if new:
            witnesses.append((p, r))
        if seen_irreducible and seen_transposition and seen_long_cycle:
            return GaloisCertificate(status=SN_CERTIFIED, witnesses=tuple(witnesses))

    if seen_irreducible and is_perfect_square(d):
        return GaloisCertificate(status=AN_CANDIDATE, witnesses=tuple(witnesses))
    if not seen_irreducible and _integer_root(f) is not None:
        return GaloisCertificate(status=REDUCIBLE, witnesses=tuple(witnesses))
    return GaloisCertificate(status=UNDETERMINED, witnesses=tuple(witnesses))


def certify_stream(polys, table, budget):
    """Certificates for a sequence of polynomials (vectorized when possible)."""
    polys = list(polys)
    if polys and all(f.degree == 3 for f in polys):
        try:
            from . import batch

            return batch.certify_cubics(polys, table, budget)
        except ImportError:
            pass
    return [certify_sn(f, table, budget) for f in polys]


def fiber_probability(spec, targets, table=None, budget=None):
    """Empirical probability that a certified f hits all congruence fibers.

    targets is a list of (p, FieldPolynomial) pairs with distinct primes;
    returns (empirical, reference) where reference = 1 / prod(p_i^n).
    Enforces prod(p_i^n) < 2N, the regime in which the fibers are near
    uniform.
    """
    n, big_n = spec.n, spec.height_bound
    primes = [p for p, _g in targets]
    if len(set(primes)) != len(primes):
        raise ValueError("target primes must be distinct")
    for p, g in targets:
        if g.p != p or g.degree != n or not g.is_monic:
            raise ValueError("each target must be monic of degree n over its prime")
    modulus_power = 1
    for p in primes:
        modulus_power *= p**n
    if modulus_power >= 2 * big_n:
        raise RegimeError(
            "prod p_i^n = %d is not below 2N = %d" % (modulus_power, 2 * big_n)
        )
    if table is None:
        table = sieve_primes(1000)
    if budget is None:
        budget = spec.certifier_prime_budget

    polys = list(generate(spec))
    certs = certify_stream(polys, table, budget)
    certified = 0
    hits = 0
    for f, cert in zip(polys, certs):
        if cert.status != SN_CERTIFIED:
            continue
        certified += 1
        if all(reduce_mod_p(f, p).coeffs == g.coeffs for p, g in targets):
            hits += 1
    if certified == 0:
        raise RegimeError("no certified polynomials in family")
    return hits / certified, 1.0 / modulus_power


def export_lines(polys, certs):
    """Line format: a_0 ... a_{n-1} as decimals, then the certificate status."""
    for f, cert in zip(polys, certs):
        yield " ".join(str(c) for c in f.coeffs) + " " + cert.status


def write_snapshot(path, polys, certs):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in export_lines(polys, certs):
            fh.write(line + "\n")
