"""Unitary divisor power sums and their normalized indices.

A divisor x of z is unitary when x lies in the canonical sector and is
coprime to z/x; a nonzero z with r distinct prime divisors has exactly 2**r
of them, one per subset of the full prime powers of z.  delta_star(z, n) is
the sum of |x|**n over unitary divisors x, computed by the multiplicative
product over prime powers, and i_star(z, n) = delta_star(z, n) / |z|**n is
the index whose integer target values define multiperfect elements.  A
sum-over-divisors oracle is kept alongside the product formula so the two
routes can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .factoring import FactorEntry, Factorization, factor_element
from .radicals import RadicalValue
from .rings import DomainError, QInt, canonical_associate

# ---------------------------------------------------------------------------
# unitary divisors


class UnitaryDivisorSet:
    """The 2**r unitary divisors of z, enumerable lazily in subset order."""

    def __init__(self, z: QInt, factorization: Factorization | None = None):
        if z.is_zero:
            raise DomainError("zero has no unitary divisors")
        self.z = z
        self.factorization = factorization or factor_element(z)

    def __len__(self) -> int:
        return 1 << len(self.factorization.entries)

    def __iter__(self):
        entries = self.factorization.entries
        ring = self.z.ring
        powers = [e.prime**e.exponent for e in entries]
        for mask in range(1 << len(entries)):
            x = ring.one()
            for j, pw in enumerate(powers):
                if mask >> j & 1:
                    x = x * pw
            yield canonical_associate(x)[0]

    def sorted_list(self) -> list[QInt]:
        return sorted(self, key=lambda x: (x.norm(), x.a, x.b))


def unitary_divisors(z: QInt, factorization: Factorization | None = None) -> UnitaryDivisorSet:
    return UnitaryDivisorSet(z, factorization)


# ---------------------------------------------------------------------------
# product formula

def _entry_abs_power(entry: FactorEntry, k: int) -> RadicalValue:
    # |pi|**k: inert primes have integral |pi| = p; otherwise |pi| = sqrt(p).
    if entry.kind == "inert":
        return RadicalValue.from_rational(Fraction(entry.p) ** k)
    return RadicalValue.sqrt_power(entry.p, k)


def _product_over_primes(fac: Factorization, n: int) -> RadicalValue:
    value = RadicalValue.from_rational(1)
    for entry in fac.entries:
        value = value * (_entry_abs_power(entry, entry.exponent * n) + 1)
    return value


def delta_star(z: QInt, n: int, factorization: Factorization | None = None) -> RadicalValue:
    """Sum of |x|**n over unitary divisors x of z; n may be any integer.

    Computed as product(1 + |pi**alpha|**n) over the prime powers of z.
    """
    if z.is_zero:
        raise DomainError("delta_star is undefined at zero")
    fac = factorization or factor_element(z)
    return _product_over_primes(fac, n)


def i_star(z: QInt, n: int, factorization: Factorization | None = None) -> RadicalValue:
    """delta_star(z, n) / |z|**n = product(1 + |pi**alpha|**(-n)); duality with -n."""
    if z.is_zero:
        raise DomainError("i_star is undefined at zero")
    fac = factorization or factor_element(z)
    return _product_over_primes(fac, -n)


def i_star_is_rational(z: QInt, n: int, factorization: Factorization | None = None) -> bool:
    """True iff every prime of z with irrational |pi| has alpha * n even."""
    fac = factorization or factor_element(z)
    return all(
        e.kind == "inert" or (e.exponent * n) % 2 == 0 for e in fac.entries
    )


# ---------------------------------------------------------------------------
# sum-over-divisors oracle

def delta_star_oracle(z: QInt, n: int, factorization: Factorization | None = None) -> RadicalValue:
    """Literal sum of |x|**n over the unitary divisors; no product shortcut.

    Each divisor norm is tracked as an exponent vector over rational primes,
    so |x|**n reduces exactly without refactoring.
    """
    if z.is_zero:
        raise DomainError("delta_star is undefined at zero")
    fac = factorization or factor_element(z)
    entries = fac.entries
    # per entry: (p, exponent of p in N(pi**alpha))
    norm_exps = [
        (e.p, e.exponent * (2 if e.kind == "inert" else 1)) for e in entries
    ]
    total: dict[int, Fraction] = {}
    for mask in range(1 << len(entries)):
        exps: dict[int, int] = {}
        for j, (p, e) in enumerate(norm_exps):
            if mask >> j & 1:
                exps[p] = exps.get(p, 0) + e
        # |x|**n = product p**(e*n/2): collect rational part and squarefree key
        coeff = Fraction(1)
        key = 1
        for p, e in exps.items():
            en = e * n
            coeff *= Fraction(p) ** (en // 2) if en % 2 == 0 else Fraction(p) ** ((en - 1) // 2)
            if en % 2:
                key *= p
        total[key] = total.get(key, Fraction(0)) + coeff
    return RadicalValue(total)


# ---------------------------------------------------------------------------
# rational-integer unitary divisor sums

def sigma_star_int(n: int, k: int = 1) -> int:
    """Unitary divisor power sum over the positive integers: product(1 + p**(e*k))."""
    if n < 1:
        raise DomainError("sigma_star_int needs n >= 1")
    from .factoring import factor_int

    result = 1
    for p, e in factor_int(n):
        result *= 1 + p ** (e * k)
    return result


# ---------------------------------------------------------------------------
# certified zeta-ratio bounds

_SCALE = 10**18


def _zeta_scaled(s2: int, terms: int) -> tuple[int, int]:
    """Scaled-integer bracket for zeta(s2/2): returns (lo, hi) at _SCALE.

    Partial sum with per-term integer-sqrt brackets plus integral tail bounds
    M**(1-s)/(s-1) on both sides.  Requires s2 > 2.
    """
    lo = hi = 0
    scale_sq = _SCALE * _SCALE
    for k in range(1, terms + 1):
        # k**(-s2/2) = _SCALE**2 / sqrt(k**s2 * _SCALE**2), root at full scale
        r = isqrt(k**s2 * scale_sq)
        lo += scale_sq // (r + 1)
        hi += scale_sq // r + 1
    # tail between integral bounds from terms+1 and terms
    s2m2 = s2 - 2
    r_hi = isqrt(terms**s2m2 * scale_sq)
    r_lo = isqrt((terms + 1) ** s2m2 * scale_sq)
    hi += 2 * scale_sq // (s2m2 * r_hi) + 1
    lo += 2 * scale_sq // (s2m2 * (r_lo + 1))
    return lo, hi


def _interval(s2: int, terms: int = 4000) -> tuple[Fraction, Fraction]:
    lo, hi = _zeta_scaled(s2, terms)
    return Fraction(lo, _SCALE), Fraction(hi, _SCALE)


@dataclass(frozen=True)
class ZetaCheck:
    label: str
    lo: Fraction
    hi: Fraction
    limit: Fraction

    @property
    def passed(self) -> bool:
        return self.hi < self.limit

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "lo": str(self.lo),
            "hi": str(self.hi),
            "approx": float((self.lo + self.hi) / 2),
            "width": float(self.width),
            "limit": str(self.limit),
            "passed": self.passed,
        }


def zeta_bound_check(terms: int = 4000) -> list[ZetaCheck]:
    """Certify the four zeta-ratio constants below 2 with rigorous intervals.

    The constants bound i_star indices: (zeta(5/2)/zeta(5))**2 covers n >= 5,
    (4/5)(zeta(2)/zeta(4))**2 covers n = 4 away from d = -7,
    (41/50)(zeta(2)/zeta(4))**2 covers n = 4 at d = -7, and
    (zeta(3)/zeta(6))**2 covers rational values at odd n >= 3.
    """
    z52 = _interval(5, terms)
    z5 = _interval(10, terms)
    z2 = _interval(4, terms)
    z4 = _interval(8, terms)
    z3 = _interval(6, terms)
    z6 = _interval(12, terms)

    def ratio_sq(num, den, scale: Fraction) -> tuple[Fraction, Fraction]:
        lo = scale * (num[0] / den[1]) ** 2
        hi = scale * (num[1] / den[0]) ** 2
        return lo, hi

    checks = []
    for label, num, den, scale in (
        ("(zeta(5/2)/zeta(5))^2", z52, z5, Fraction(1)),
        ("(4/5)*(zeta(2)/zeta(4))^2", z2, z4, Fraction(4, 5)),
        ("(41/50)*(zeta(2)/zeta(4))^2", z2, z4, Fraction(41, 50)),
        ("(zeta(3)/zeta(6))^2", z3, z6, Fraction(1)),
    ):
        lo, hi = ratio_sq(num, den, scale)
        checks.append(ZetaCheck(label, lo, hi, Fraction(2)))
    return checks
