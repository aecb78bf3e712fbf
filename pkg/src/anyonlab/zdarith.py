"""Exact arithmetic over Z_d for composite d, plus formal-Laurent-series units.

Everything here is pure and deterministic: gcd certificates come from a pinned
subtraction schedule, and series inversion runs per prime power (ascending)
before a CRT merge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import NotAUnit


@dataclass(frozen=True)
class Modulus:
    """Qudit dimension d >= 2 with its prime-power factorization cached."""

    d: int
    prime_powers: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.d}")
        object.__setattr__(self, "prime_powers", tuple(_factor(self.d)))

    def reduce(self, a: int) -> int:
        return a % self.d


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class FormalSeries:
    """Finite chunk of a formal Laurent series: sum of a_i x^i from lowest_degree up.

    Coefficients are stored explicitly (no implicit zeros beyond the stored
    order) and reduced into [0, d) by the constructor helpers below.
    """

    lowest_degree: int
    coefficients: tuple[int, ...]

    def degree_range(self) -> tuple[int, int]:
        return self.lowest_degree, self.lowest_degree + len(self.coefficients) - 1

    def coefficient(self, degree: int) -> int:
        i = degree - self.lowest_degree
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0


def make_series(lowest_degree: int, coefficients, modulus: Modulus) -> FormalSeries:
    """Build a FormalSeries with coefficients reduced into [0, d)."""
    return FormalSeries(lowest_degree, tuple(c % modulus.d for c in coefficients))


def ext_gcd_chain(values: list[int], modulus: Modulus) -> tuple[int, list[int]]:
    """gcd of values together with d, plus a certificate combination.

    Returns (g, coeffs) with g = gcd(values + [d]) reduced into [0, d) and
    sum(coeffs[i] * values[i]) = g (mod d).  The combination is produced by a
    pinned schedule: repeatedly subtract the smallest positive entry from every
    other entry (batched floor multiples), smallest chosen by first index.
    """
    if not values:
        raise ValueError("ext_gcd_chain needs a nonempty value list")
    d = modulus.d
    work = [v % d for v in values] + [d]
    n = len(values)
    # coeff rows over the original values; the appended d carries no tracking
    # since multiples of d vanish mod d.
    coeffs = [[1 if i == j else 0 for j in range(n)] for i in range(n)] + [[0] * n]

    while True:
        nonzero = [i for i, v in enumerate(work) if v != 0]
        if len(nonzero) <= 1:
            break
        s = min(nonzero, key=lambda i: (work[i], i))
        progressed = False
        for j in nonzero:
            if j == s:
                continue
            q = work[j] // work[s]
            if q:
                work[j] -= q * work[s]
                coeffs[j] = [(cj - q * cs) % d for cj, cs in zip(coeffs[j], coeffs[s])]
                progressed = True
        if not progressed:
            break

    nonzero = [i for i, v in enumerate(work) if v != 0]
    if not nonzero:
        return 0, [0] * n
    i = nonzero[0]
    g = work[i] % d
    if g == 0:
        return 0, [0] * n
    return g, [c % d for c in coeffs[i]]


def zd_inverse(a: int, modulus: Modulus) -> int:
    """Multiplicative inverse of a mod d; raises NotAUnit for zero divisors."""
    a = a % modulus.d
    try:
        return pow(a, -1, modulus.d)
    except ValueError:
        raise NotAUnit(f"{a} is not invertible mod {modulus.d}") from None


def unit_multiplier_to_gcd(a: int, modulus: Modulus) -> int:
    """Unit u with u*a = gcd(a, d) (mod d).

    Used to normalize elimination pivots to the smallest positive member of
    their associate class.
    """
    d = modulus.d
    a = a % d
    if a == 0:
        return 1
    g = gcd(a, d)
    b = a // g
    m = d // g
    # b is invertible mod m; lift a representative to a unit mod d.
    u = pow(b, -1, m)
    while gcd(u, d) != 1:
        u += m
    return u % d


def series_is_unit(f: FormalSeries, modulus: Modulus) -> bool:
    """True iff gcd of all stored coefficients together with d equals 1."""
    if not f.coefficients:
        raise ValueError("series has no stored coefficients")
    g = modulus.d
    for c in f.coefficients:
        g = gcd(g, c % modulus.d)
    return g == 1


def series_inverse(f: FormalSeries, modulus: Modulus, order: int) -> FormalSeries:
    """Inverse series g with f*g = 1 (mod d) through relative degree `order`.

    Per prime power p^k dividing d: invert f mod p by recursive coefficient
    solving (Z_p((x)) is a field), then apply k-1 Hensel corrections
    g_{j+1} = g_j - alpha * p^j * h with f*g_j = 1 + p^j * alpha and h the
    mod-p inverse.  The per-prime inverses are merged with the CRT, primes
    ascending.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if not series_is_unit(f, modulus):
        raise NotAUnit("series coefficients share a factor with d")
    d = modulus.d

    # Dense view of f over its stored window.
    f_lo = f.lowest_degree
    f_co = [c % d for c in f.coefficients]

    partial: list[tuple[int, dict[int, int]]] = []
    for p, k in modulus.prime_powers:
        pk = p**k
        partial.append((pk, _inverse_mod_prime_power(f_lo, f_co, p, k, order)))

    # CRT merge degree by degree over the union of supports.
    degrees = sorted({deg for _, inv in partial for deg in inv})
    merged: dict[int, int] = {}
    for deg in degrees:
        merged[deg] = _crt([(pk, inv.get(deg, 0)) for pk, inv in partial]) % d

    if not merged:
        merged = {0: 0}
    lo = min(merged)
    hi = max(merged)
    coeffs = [merged.get(i, 0) for i in range(lo, hi + 1)]
    result = FormalSeries(lo, tuple(coeffs))

    _check_inverse(f_lo, f_co, result, d, f_lo + order)
    return result


def _series_mul(a: dict[int, int], b: dict[int, int], mod: int, hi: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, ca in a.items():
        if ca == 0:
            continue
        for j, cb in b.items():
            k = i + j
            if k > hi or cb == 0:
                continue
            out[k] = (out.get(k, 0) + ca * cb) % mod
    return {k: v for k, v in out.items() if v}


def _inverse_mod_prime_power(f_lo, f_co, p, k, order) -> dict[int, int]:
    pk = p**k
    # Field inverse mod p: find the lowest degree with a coefficient not
    # divisible by p, then solve coefficients recursively.
    v = None
    for i, c in enumerate(f_co):
        if c % p != 0:
            v = f_lo + i
            break
    assert v is not None  # guaranteed by the unit test on gcd
    lead_inv = pow(f_co[v - f_lo] % p, -1, p)

    # g has lowest degree -v; compute through absolute degree `order` plus a
    # margin so every Hensel correction product stays exact where it matters.
    rel = max(order + v, 0) + (k - 1) * (len(f_co) + 2) + len(f_co) + 2

    h: dict[int, int] = {}
    for j in range(rel + 1):
        acc = 0
        for i in range(1, j + 1):
            cf = f_co[v + i - f_lo] if 0 <= v + i - f_lo < len(f_co) else 0
            acc += cf * h.get(-v + j - i, 0)
        if j == 0:
            h[-v] = lead_inv % p
        else:
            c = (-lead_inv * acc) % p
            if c:
                h[-v + j] = c
    if k == 1:
        return h

    # Each correction consumes (v - f_lo) degrees of exact precision: the
    # product f*g is only trustworthy through exact_hi + f_lo, and the
    # correction alpha*h only through that minus v.
    f_dict = {f_lo + i: c % pk for i, c in enumerate(f_co) if c % pk}
    g = dict(h)
    exact_hi = -v + rel
    for j in range(1, k):
        pj = p**j
        prod_hi = exact_hi + f_lo
        prod = _series_mul(f_dict, g, pk, prod_hi)
        alpha = {}
        for deg, c in prod.items():
            if deg == 0:
                c = c - 1
            if c % pk:
                assert c % pj == 0, "Hensel residual not divisible by p^j"
                alpha[deg] = (c // pj) % pk
        exact_hi = prod_hi - v
        corr = _series_mul(alpha, h, pk, exact_hi)
        for deg, c in corr.items():
            g[deg] = (g.get(deg, 0) - pj * c) % pk
        g = {deg: c for deg, c in g.items() if c and deg <= exact_hi}
        if not g:
            g = {0: 0}
    return g


def _crt(residues: list[tuple[int, int]]) -> int:
    x, m = 0, 1
    for mod, r in residues:
        # solve x' = x (mod m), x' = r (mod mod)
        t = ((r - x) * pow(m % mod, -1, mod)) % mod
        x = x + m * t
        m *= mod
    return x % m


def _check_inverse(f_lo, f_co, g: FormalSeries, d: int, through_degree: int):
    for deg in range(f_lo + g.lowest_degree, through_degree + 1):
        acc = 0
        for i, cf in enumerate(f_co):
            acc += cf * g.coefficient(deg - (f_lo + i))
        want = 1 if deg == 0 else 0
        if acc % d != want:
            raise AssertionError(
                f"series inverse check failed at degree {deg}: got {acc % d}"
            )
