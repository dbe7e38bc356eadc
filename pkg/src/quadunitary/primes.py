"""Rational prime behavior in the nine rings: classification and witnesses.

An odd prime p ramifies exactly when p | d, splits when d is a nonzero square
mod p and is inert otherwise; p = 2 ramifies for d = -1, -2, splits for
d = -7 and is inert for the remaining six rings.  Witness primes above split
and ramified p are produced constructively (Cornacchia descent) and reduced
to the canonical sector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .rings import DomainError, QInt, Ring, arg_less, canonical_associate, ring

# Deterministic Miller-Rabin witness schedule: certified below 3.3 * 10**24,
# kept as the fixed schedule above that as well (inputs are desk scale).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_MR_CERTIFIED = 3_317_044_064_679_887_385_961_981


def _sieve(limit: int) -> bytearray:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray((limit - i * i) // i + 1)
    return sieve


@lru_cache(maxsize=None)
def small_primes(limit: int = 10_000) -> tuple[int, ...]:
    return tuple(primes_up_to(limit))


def primes_up_to(limit: int) -> list[int]:
    sieve = _sieve(limit)
    return [i for i in range(limit + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_CERTIFIED else _MR_BASES + _MR_EXTRA
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd prime p, in {-1, 0, 1}."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo odd prime p, or None when a is a nonresidue."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


@dataclass(frozen=True)
class PrimeClass:
    """How a rational prime p sits in a ring, with canonical witnesses.

    kind is "inert" (pi is p itself, norm p**2), "ramified" (pi**2 ~ p) or
    "split" (p ~ pi * pi_bar with pi and pi_bar nonassociated).  For split p
    the labels are oriented: pi is the member of the canonical pair with the
    smaller argument, decided exactly.
    """

    p: int
    d: int
    kind: str
    pi: QInt
    pi_bar: QInt | None = None


def classify(p: int, r: Ring) -> str:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        return r.two_behavior
    if r.d % p == 0:
        return "ramified"
    return "split" if legendre(r.d, p) == 1 else "inert"


def _cornacchia(m: int, p: int) -> tuple[int, int]:
    """Solve x^2 + m*y^2 = p for odd prime p with -m a square mod p; m in {1, 2}."""
    r0 = sqrt_mod(-m, p)
    assert r0 is not None, (m, p)
    r = max(r0, p - r0)
    a, b = p, r
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    rem = p - b * b
    assert rem % m == 0, (m, p)
    y = isqrt(rem // m)
    assert y * y == rem // m, (m, p)
    return b, y


def _cornacchia4(d: int, p: int) -> tuple[int, int]:
    """Solve x^2 + |d|*y^2 = 4p with x = y (mod 2), for d = 1 (mod 4), |d| < 4p."""
    if p == 2:
        t = isqrt(d + 8)
        assert t * t == d + 8, (d, p)
        return t, 1
    assert -d < 4 * p, (d, p)
    x0 = sqrt_mod(d, p)
    assert x0 is not None, (d, p)
    if (x0 - d) % 2:
        x0 = p - x0
    a, b = 2 * p, x0
    limit = isqrt(4 * p)
    while b > limit:
        a, b = b, a % b
    c = 4 * p - b * b
    assert c % (-d) == 0, (d, p)
    y = isqrt(c // -d)
    assert y * y == c // -d, (d, p)
    assert (b - y) % 2 == 0, (d, p)
    return b, y


@lru_cache(maxsize=None)
def _prime_above(p: int, d: int) -> PrimeClass:
    r = ring(d)
    kind = classify(p, r)
    if kind == "inert":
        return PrimeClass(p, d, kind, r.element(p))
    if kind == "ramified":
        if d == -1:
            seed = r.element(1, 1)  # 1 + i
        elif d == -2:
            seed = r.element(0, 1)  # sqrt(-2)
        else:
            seed = r.element(-1, 2)  # sqrt(d), ramified p = |d|
        pi, _ = canonical_associate(seed)
        assert pi.norm() == p, (p, d)
        return PrimeClass(p, d, kind, pi)
    if r.half_integral:
        x, y = _cornacchia4(d, p)
        seed = r.element((x - y) // 2, y)
    else:
        x, y = _cornacchia(-d, p)
        seed = r.element(x, y)
    assert seed.norm() == p, (p, d)
    w1, _ = canonical_associate(seed)
    w2, _ = canonical_associate(seed.conj())
    assert w1 != w2, (p, d)
    if arg_less(w2, w1):
        w1, w2 = w2, w1
    return PrimeClass(p, d, kind, w1, w2)


def prime_above(p: int, r: Ring) -> PrimeClass:
    """Canonical data for the primes of the ring lying above p.  Memoized."""
    return _prime_above(p, r.d)


def xi(r: Ring) -> QInt:
    """The distinguished even prime: 1+i for d=-1, sqrt(-2) for d=-2, 2 otherwise.

    Undefined for d = -7, where 2 splits into two nonassociated primes.
    """
    if r.d == -7:
        raise DomainError("xi is undefined for d=-7 (2 splits)")
    if r.d == -1:
        return r.element(1, 1)
    if r.d == -2:
        return r.element(0, 1)
    return r.element(2)
