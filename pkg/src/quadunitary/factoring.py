"""Unique factorization: rational integers and ring elements.

Integer factorization is trial division over a cached prime table followed by
Brent's variant of Pollard rho, sized for desk-scale inputs.  Element
factorization routes through the integer factorization of the norm: inert
primes contribute half their norm exponent, ramified primes the full
exponent, and split exponents are separated by repeated exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd, isqrt

from .primes import is_prime, prime_above, small_primes
from .rings import DomainError, QInt, Ring, canonical_associate, exact_div, index_of_unit

# Norms above this need an explicit opt-in; factoring them may be slow.
NORM_CEILING = 1 << 64


def _pollard_brent(n: int) -> int:
    # Deterministic parameter schedule; n is odd, composite, not a prime power.
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
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
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise AssertionError(f"pollard rho parameter schedule exhausted for {n}")


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


@lru_cache(maxsize=1 << 15)
def factor_int(n: int) -> tuple[tuple[int, int], ...]:
    """Sorted prime factorization ((p, e), ...) of n >= 1."""
    if n < 1:
        raise DomainError("factor_int needs n >= 1")
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    if n > 1:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            _factor_into(n, out)
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class FactorEntry:
    """One canonical prime power pi**exponent, with its rational prime context."""

    prime: QInt
    exponent: int
    p: int
    kind: str


@dataclass(frozen=True)
class Factorization:
    """z = unit * product(prime**exponent) over nonassociated canonical primes."""

    ring: Ring
    unit_index: int
    entries: tuple[FactorEntry, ...]

    @property
    def factors(self) -> tuple[tuple[QInt, int], ...]:
        return tuple((e.prime, e.exponent) for e in self.entries)

    @property
    def unit(self) -> QInt:
        return self.ring.units()[self.unit_index]

    @property
    def distinct_prime_count(self) -> int:
        return len(self.entries)

    def value(self) -> QInt:
        return reduce(
            lambda acc, e: acc * e.prime**e.exponent, self.entries, self.unit
        )


def is_ring_prime(z: QInt) -> bool:
    """Primality audit: norm is a rational prime, or the square of an inert prime."""
    n = z.norm()
    if n < 2:
        return False
    if is_prime(n):
        return True
    q = isqrt(n)
    if q * q != n or not is_prime(q):
        return False
    return prime_above(q, z.ring).kind == "inert"


def factor_element(z: QInt, allow_large: bool = False) -> Factorization:
    """Factor a nonzero element into canonical sector primes and a unit.

    Entries are sorted by (norm, coordinates).  Norms above NORM_CEILING are
    refused unless allow_large is set.
    """
    if z.is_zero:
        raise DomainError("cannot factor zero")
    n = z.norm()
    if n > NORM_CEILING and not allow_large:
        raise DomainError(
            f"norm {n} exceeds the desk-scale ceiling; pass allow_large to override"
        )
    entries: list[FactorEntry] = []
    rest = z
    for p, e in factor_int(n):
        pc = prime_above(p, z.ring)
        if pc.kind == "inert":
            assert e % 2 == 0, (z, p)
            exp = e // 2
            entries.append(FactorEntry(pc.pi, exp, p, pc.kind))
            for _ in range(exp):
                rest = exact_div(rest, pc.pi)  # type: ignore[arg-type]
                assert rest is not None
        elif pc.kind == "ramified":
            entries.append(FactorEntry(pc.pi, e, p, pc.kind))
            for _ in range(e):
                rest = exact_div(rest, pc.pi)  # type: ignore[arg-type]
                assert rest is not None
        else:
            e1 = 0
            while e1 < e:
                q = exact_div(rest, pc.pi)
                if q is None:
                    break
                rest = q
                e1 += 1
            e2 = e - e1
            assert pc.pi_bar is not None
            for _ in range(e2):
                rest = exact_div(rest, pc.pi_bar)
                assert rest is not None, (z, p)
            if e1:
                entries.append(FactorEntry(pc.pi, e1, p, pc.kind))
            if e2:
                entries.append(FactorEntry(pc.pi_bar, e2, p, pc.kind))
    assert rest.is_unit, (z, rest)
    entries.sort(key=lambda fe: (fe.prime.norm(), fe.prime.a, fe.prime.b))
    return Factorization(z.ring, index_of_unit(rest), tuple(entries))


def rho(pi: QInt, z: QInt) -> int:
    """The pi-adic exponent of nonzero z for a ring prime pi."""
    if z.is_zero:
        raise DomainError("rho is undefined at zero")
    if not is_ring_prime(pi):
        raise DomainError(f"{pi!r} is not prime")
    count = 0
    current = z
    while True:
        q = exact_div(current, pi)
        if q is None:
            return count
        current = q
        count += 1


def coprime(x: QInt, y: QInt) -> bool:
    """True when x and y share no nonunit common divisor."""
    if x.ring.d != y.ring.d:
        raise DomainError("mixed-ring operands")
    if x.is_zero or y.is_zero:
        return (x.is_zero and y.is_unit) or (y.is_zero and x.is_unit)
    g = gcd(x.norm(), y.norm())
    if g == 1:
        return True
    # A shared rational prime in the norms forces a shared ring prime except
    # in the split case, where the two may use opposite members of the pair.
    for p, _ in factor_int(g):
        pc = prime_above(p, x.ring)
        if pc.kind != "split":
            return False
        x_pi = exact_div(x, pc.pi) is not None
        x_bar = exact_div(x, pc.pi_bar) is not None  # type: ignore[arg-type]
        y_pi = exact_div(y, pc.pi) is not None
        y_bar = exact_div(y, pc.pi_bar) is not None  # type: ignore[arg-type]
        if (x_pi and y_pi) or (x_bar and y_bar):
            return False
    return True
