"""Family-level statistics: indicators, counting functions, moments, CLT.

Every aggregate runs over the certified subfamily only and reports how
many polynomials were excluded.  Exact per-prime references come from the
splitting-type combinatorics; asymptotic constants are never substituted
where an exact count is available.
"""

import csv
import io
import json
import math
import weakref
from dataclasses import dataclass, field

from . import batch, family as family_mod, splittypes
from .errors import EmptyFamilyError, OutOfRangeError
from .primes import prime_count, sieve_primes
from .zpoly import dedekind_is_p_maximal, discriminant

DEFAULT_CERTIFIER_TABLE_LIMIT = 1000
DEFAULT_K_MAX = 6


@dataclass(frozen=True, eq=False)
class CertifiedFamily:
    """The certified subfamily of a polynomial stream, plus exclusion count."""

    polys: tuple
    excluded: int
    description: str = ""

    def __len__(self):
        return len(self.polys)


@dataclass(frozen=True)
class ClassFunction:
    """A class function on S_n, given by its value on every splitting type."""

    name: str
    values: dict = field(hash=False)

    def __call__(self, r):
        return self.values[tuple(r)]


def certify_family(polys, table=None, budget=25, description=""):
    """Certify a stream and keep only the S_n-certified polynomials."""
    if table is None:
        table = sieve_primes(DEFAULT_CERTIFIER_TABLE_LIMIT)
    polys = list(polys)
    certs = family_mod.certify_stream(polys, table, budget)
    kept = tuple(
        f for f, c in zip(polys, certs) if c.status == family_mod.SN_CERTIFIED
    )
    return CertifiedFamily(
        polys=kept, excluded=len(polys) - len(kept), description=description
    )


def _as_certified(family):
    if isinstance(family, CertifiedFamily):
        return family
    return certify_family(family)


def _require_nonempty(cf):
    if len(cf.polys) == 0:
        raise EmptyFamilyError("no certified polynomials in family")


# ---------------------------------------------------------------------------
# Per-polynomial counting

def splitting_indicator(f, r, p):
    """1 iff f has splitting type r mod p; 0 otherwise (incl. non-squarefree)."""
    splittypes.validate_type(r)
    return 1 if family_mod._splitting_type(f, p) == tuple(r) else 0


def prime_splitting_count(f, r, x, table):
    """pi_{f,r}(x): number of primes p <= x at which f has type r."""
    splittypes.validate_type(r)
    if x > table.limit:
        raise OutOfRangeError("x exceeds prime table limit")
    r = tuple(r)
    count = 0
    for p in table.primes:
        if p > x:
            break
        if family_mod._splitting_type(f, p) == r:
            count += 1
    return count


def class_function_count(f, phi, x, table):
    """Sum of phi over the Frobenius types at primes p <= x.

    Primes with non-squarefree reduction contribute 0.
    """
    if x > table.limit:
        raise OutOfRangeError("x exceeds prime table limit")
    total = 0.0
    for p in table.primes:
        if p > x:
            break
        r = family_mod._splitting_type(f, p)
        if r is not None:
            total += phi(r)
    return total


# ---------------------------------------------------------------------------
# Count profiles (cached per certified family)

_PROFILE_CACHE = weakref.WeakKeyDictionary()


def _count_profile(cf, x, table):
    """Per-polynomial pi_{f,r}(x) for every type r, plus non-squarefree counts.

    Returns (counts, nonsq) where counts maps each splitting type to a list
    of per-polynomial counts.  Cached on the CertifiedFamily instance.
    """
    if x > table.limit:
        raise OutOfRangeError("x exceeds prime table limit")
    key = (float(x), table.limit)
    cache = _PROFILE_CACHE.setdefault(cf, {})
    if key in cache:
        return cache[key]

    polys = cf.polys
    primes = [p for p in table.primes if p <= x]
    n = polys[0].degree if polys else 0
    types = splittypes.enumerate_types(n) if polys else []
    if polys and batch.supports(list(polys), primes[-1] if primes else 0):
        matrix = batch.cubic_count_matrix(list(polys), primes)
        counts = {
            (3, 0, 0): matrix[:, batch.SPLIT].tolist(),
            (1, 1, 0): matrix[:, batch.TRANSPOSITION].tolist(),
            (0, 0, 1): matrix[:, batch.INERT].tolist(),
        }
        nonsq = matrix[:, batch.ABSENT].tolist()
    else:
        counts = {r: [0] * len(polys) for r in types}
        nonsq = [0] * len(polys)
        for i, f in enumerate(polys):
            for p in primes:
                r = family_mod._splitting_type(f, p)
                if r is None:
                    nonsq[i] += 1
                else:
                    counts[r][i] += 1
    cache[key] = (counts, nonsq)
    return counts, nonsq


# ---------------------------------------------------------------------------
# Family aggregates

def family_indicator_moments(family, r, p):
    """Mean and variance of the type-r indicator at p over the certified family.

    The exact reference is class_count(n,r,p)/p^n; the reference variance
    is q(1-q) for that q.
    """
    cf = _as_certified(family)
    _require_nonempty(cf)
    n = splittypes.validate_type(r)
    values = [splitting_indicator(f, r, p) for f in cf.polys]
    mean = sum(values) / len(values)
    variance = mean - mean * mean
    reference = splittypes.class_count(n, tuple(r), p) / p**n
    return mean, variance, reference


def exact_chebotarev_reference(n, r, x, table):
    """Sum over p <= x of class_count(n,r,p)/p^n, in ascending prime order."""
    total = 0.0
    for p in table.primes:
        if p > x:
            break
        total += splittypes.class_count(n, tuple(r), p) / p**n
    return total


def family_chebotarev_mean(family, r, x, table):
    """Empirical mean of pi_{f,r}(x) and its exact finite-p reference."""
    cf = _as_certified(family)
    _require_nonempty(cf)
    n = splittypes.validate_type(r)
    counts, _ = _count_profile(cf, x, table)
    values = counts[tuple(r)]
    mean = math.fsum(values) / len(values)
    return mean, exact_chebotarev_reference(n, r, x, table)


def family_centered_moment(family, r, x, k, table, k_max=DEFAULT_K_MAX,
                           center="asymptotic"):
    """Empirical k-th moment of the centered count pi_{f,r}(x), with reference.

    center selects the subtracted term: "asymptotic" uses delta(r) pi(x);
    "exact" uses the finite-p mean sum of class_count/p^n, which removes a
    deterministic O(log log x) bias that dominates the odd moments.
    Reference is C_{k,r} pi(x)^{k/2} for even k and 0 for odd k.
    """
    if not 1 <= k <= k_max:
        raise ValueError("k must be between 1 and %d" % k_max)
    if center not in ("asymptotic", "exact"):
        raise ValueError("center must be 'asymptotic' or 'exact'")
    cf = _as_certified(family)
    _require_nonempty(cf)
    n = splittypes.validate_type(r)
    counts, _ = _count_profile(cf, x, table)
    values = counts[tuple(r)]
    if center == "asymptotic":
        center = float(splittypes.delta(r)) * prime_count(x, table)
    else:
        center = exact_chebotarev_reference(n, tuple(r), x, table)
    moment = math.fsum((c - center) ** k for c in values) / len(values)
    if k % 2 == 0:
        reference = float(splittypes.moment_constant(k, r)) * prime_count(
            x, table
        ) ** (k / 2)
    else:
        reference = 0.0
    return moment, reference


def normal_cdf(b):
    """Standard normal CDF, absolute error well below 1e-10."""
    return 0.5 * math.erfc(-b / math.sqrt(2.0))


def ks_distance(sample):
    """Exact sup distance between the sample's empirical CDF and Phi."""
    ordered = sorted(sample)
    n = len(ordered)
    worst = 0.0
    for i, v in enumerate(ordered, start=1):
        phi = normal_cdf(v)
        worst = max(worst, abs(i / n - phi), abs((i - 1) / n - phi))
    return worst


@dataclass(frozen=True)
class StatReport:
    """Aggregated family statistics for one splitting type."""

    description: str
    n: int
    r: tuple
    x: float
    family_size: int
    excluded: int
    empirical_mean: float
    empirical_variance: float
    reference_mean: float
    reference_variance: float
    moments: dict = field(hash=False)
    clt_sample: tuple = ()
    ks_distance: float = 0.0

    def to_json_dict(self):
        return {
            "description": self.description,
            "n": self.n,
            "r": list(self.r),
            "x": self.x,
            "family_size": self.family_size,
            "excluded": self.excluded,
            "empirical_mean": self.empirical_mean,
            "empirical_variance": self.empirical_variance,
            "reference_mean": self.reference_mean,
            "reference_variance": self.reference_variance,
            "moments": {str(k): list(v) for k, v in sorted(self.moments.items())},
            "ks_distance": self.ks_distance,
            "clt_sample_size": len(self.clt_sample),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True) + "\n"

    def sample_csv(self):
        """CSV of the CLT sample: one normalized value per row."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "normalized_count"])
        for i, v in enumerate(self.clt_sample):
            writer.writerow([i, repr(v)])
        return buf.getvalue()


def clt_report(family, r, x, table, k_max=DEFAULT_K_MAX):
    """Normalized splitting counts for every certified f, with KS distance.

    v(f) = (pi_{f,r}(x) - delta pi(x)) / sqrt((delta - delta^2) pi(x)).
    """
    cf = _as_certified(family)
    _require_nonempty(cf)
    n = splittypes.validate_type(r)
    pix = prime_count(x, table)
    if pix < 30:
        raise ValueError("pi(x) must be at least 30 for a meaningful normalization")
    if len(cf.polys) < 100:
        raise ValueError("family must contain at least 100 certified polynomials")
    counts, _ = _count_profile(cf, x, table)
    values = counts[tuple(r)]
    d = float(splittypes.delta(r))
    scale = math.sqrt((d - d * d) * pix)
    sample = tuple((c - d * pix) / scale for c in values)
    mean = math.fsum(values) / len(values)
    variance = math.fsum((c - mean) ** 2 for c in values) / len(values)
    moments = {}
    for k in range(1, k_max + 1):
        moments[k] = family_centered_moment(cf, r, x, k, table, k_max=k_max)
    return StatReport(
        description=cf.description,
        n=n,
        r=tuple(r),
        x=float(x),
        family_size=len(cf.polys),
        excluded=cf.excluded,
        empirical_mean=mean,
        empirical_variance=variance,
        reference_mean=exact_chebotarev_reference(n, r, x, table),
        reference_variance=(d - d * d) * pix,
        moments=moments,
        clt_sample=sample,
        ks_distance=ks_distance(sample),
    )


def ramified_average(family, bound):
    """Average number of primes p <= bound dividing disc(f); ref sum 1/p."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    cf = _as_certified(family)
    _require_nonempty(cf)
    primes = sieve_primes(bound).primes
    total = 0
    for f in cf.polys:
        d = discriminant(f)
        total += sum(1 for p in primes if d % p == 0)
    reference = math.fsum(1.0 / p for p in primes)
    return total / len(cf.polys), reference


def index_prime_average(family, bound, rng_seed=0):
    """Average number of primes p <= bound dividing the index a_f.

    Only primes with p^2 | disc(f) are submitted to the Dedekind test,
    since the index appears squared in the discriminant; the reference is
    the leading term sum of 1/p^2.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    cf = _as_certified(family)
    _require_nonempty(cf)
    primes = sieve_primes(bound).primes
    total = 0
    for f in cf.polys:
        d = discriminant(f)
        for p in primes:
            if d % (p * p) == 0 and not dedekind_is_p_maximal(f, p, rng_seed):
                total += 1
    reference = math.fsum(1.0 / (p * p) for p in primes)
    return total / len(cf.polys), reference


def split_lower_bound_fraction(family, x, table):
    """Fraction of certified f with at least delta*pi(x)/2 totally split primes."""
    cf = _as_certified(family)
    _require_nonempty(cf)
    pix = prime_count(x, table)
    if pix < 30:
        raise ValueError("pi(x) must be at least 30")
    n = cf.polys[0].degree
    split_type = tuple([n] + [0] * (n - 1))
    counts, _ = _count_profile(cf, x, table)
    floor_value = float(splittypes.delta(split_type)) * pix / 2.0
    values = counts[split_type]
    return sum(1 for c in values if c >= floor_value) / len(values)
