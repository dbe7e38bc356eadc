"""Exact arithmetic in the nine imaginary quadratic unique-factorization rings.

Each ring O(sqrt(d)) for d in K = {-163, -67, -43, -19, -11, -7, -3, -2, -1}
is handled in integer coordinates over the integral basis {1, w}: w = sqrt(d)
when d = 2, 3 (mod 4) and w = (1 + sqrt(d))/2 when d = 1 (mod 4).  Everything
in this module is exact; no floating point is used anywhere, including the
angular comparisons that define the canonical sector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

K = (-163, -67, -43, -19, -11, -7, -3, -2, -1)


class DomainError(ValueError):
    """An argument lies outside the operation's domain."""


@dataclass(frozen=True)
class Ring:
    """One of the nine rings, identified by its squarefree d < 0."""

    d: int

    def __post_init__(self) -> None:
        if self.d not in K:
            raise DomainError(f"ring must be one of {list(K)}, got {self.d}")

    @property
    def half_integral(self) -> bool:
        """True when the basis element is (1 + sqrt(d))/2 rather than sqrt(d)."""
        return self.d % 4 == 1

    @property
    def unit_count(self) -> int:
        if self.d == -1:
            return 4
        if self.d == -3:
            return 6
        return 2

    @property
    def two_behavior(self) -> str:
        # 2 ramifies for d = -1, -2, splits for d = -7, and is inert otherwise.
        if self.d in (-1, -2):
            return "ramified"
        if self.d == -7:
            return "split"
        return "inert"

    @property
    def omega_text(self) -> str:
        if self.half_integral:
            return f"(1+sqrt({self.d}))/2"
        return f"sqrt({self.d})"

    def element(self, a: int, b: int = 0) -> "QInt":
        return QInt(self, a, b)

    def zero(self) -> "QInt":
        return QInt(self, 0, 0)

    def one(self) -> "QInt":
        return QInt(self, 1, 0)

    def units(self) -> tuple["QInt", ...]:
        return _units(self.d)

    def parse(self, text: str) -> "QInt":
        return parse_element(self, text)

    def from_rational_parts(self, x: Fraction, y: Fraction) -> "QInt":
        """Build the element x + y*sqrt(d) from rational parts, or fail."""
        if self.half_integral:
            b = 2 * y
            a = x - y
        else:
            a, b = x, y
        if a.denominator != 1 or b.denominator != 1:
            raise DomainError(f"{x} + {y}*sqrt({self.d}) is not integral here")
        return QInt(self, int(a), int(b))


@lru_cache(maxsize=None)
def ring(d: int) -> Ring:
    return Ring(d)


@dataclass(frozen=True)
class QInt:
    """An element a + b*w of one of the nine rings, in integral coordinates."""

    ring: Ring
    a: int
    b: int

    def _coerce(self, other) -> "QInt":
        if isinstance(other, QInt):
            if other.ring.d != self.ring.d:
                raise DomainError("mixed-ring operands")
            return other
        if isinstance(other, int):
            return QInt(self.ring, other, 0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "QInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QInt(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> "QInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QInt(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> "QInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self) -> "QInt":
        return QInt(self.ring, -self.a, -self.b)

    def __mul__(self, other) -> "QInt":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, e = self.a, self.b, o.a, o.b
        if self.ring.half_integral:
            # w^2 = w + (d-1)/4
            m = (self.ring.d - 1) // 4
            return QInt(self.ring, a * c + b * e * m, a * e + b * c + b * e)
        return QInt(self.ring, a * c + b * e * self.ring.d, a * e + b * c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QInt":
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = QInt(self.ring, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QInt":
        """Complex conjugate, expressed in the same integral basis."""
        if self.ring.half_integral:
            return QInt(self.ring, self.a + self.b, -self.b)
        return QInt(self.ring, self.a, -self.b)

    def norm(self) -> int:
        """The field norm z * conj(z); a nonnegative rational integer."""
        if self.ring.half_integral:
            return self.a * self.a + self.a * self.b + self.b * self.b * (1 - self.ring.d) // 4
        return self.a * self.a - self.ring.d * self.b * self.b

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def is_unit(self) -> bool:
        return self.norm() == 1

    def doubled_parts(self) -> tuple[int, int]:
        """Integers (X, Y) with z = (X + Y*sqrt(d))/2.  Exact sign data."""
        if self.ring.half_integral:
            return 2 * self.a + self.b, self.b
        return 2 * self.a, 2 * self.b

    def rational_parts(self) -> tuple[Fraction, Fraction]:
        x2, y2 = self.doubled_parts()
        return Fraction(x2, 2), Fraction(y2, 2)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"QInt({self.ring.d}, {self.a}, {self.b})"

    def pretty(self) -> str:
        return pretty_element(self)


@lru_cache(maxsize=None)
def _units(d: int) -> tuple[QInt, ...]:
    # Fixed documented order: 1, -1 everywhere; then i, -i for d = -1;
    # then w, -w, conj(w), -conj(w) for d = -3 (w a primitive sixth root).
    r = ring(d)
    out = [QInt(r, 1, 0), QInt(r, -1, 0)]
    if d == -1:
        out += [QInt(r, 0, 1), QInt(r, 0, -1)]
    elif d == -3:
        out += [QInt(r, 0, 1), QInt(r, 0, -1), QInt(r, 1, -1), QInt(r, -1, 1)]
    return tuple(out)


@lru_cache(maxsize=None)
def _unit_index_map(d: int) -> dict[tuple[int, int], int]:
    return {(u.a, u.b): i for i, u in enumerate(_units(d))}


@lru_cache(maxsize=None)
def _unit_inverse_indices(d: int) -> tuple[int, ...]:
    units = _units(d)
    lookup = _unit_index_map(d)
    inv = []
    for u in units:
        for v in units:
            w = u * v
            if w.a == 1 and w.b == 0:
                inv.append(lookup[(v.a, v.b)])
                break
    return tuple(inv)


def unit_by_index(r: Ring, index: int) -> QInt:
    units = r.units()
    if not 0 <= index < len(units):
        raise DomainError(f"unit index {index} out of range for d={r.d}")
    return units[index]


def index_of_unit(u: QInt) -> int:
    idx = _unit_index_map(u.ring.d).get((u.a, u.b))
    if idx is None:
        raise DomainError(f"{u!r} is not a unit")
    return idx


def in_sector(z: QInt) -> bool:
    """Membership in the half-open fundamental angular sector of z's ring.

    The sector is arg in [0, pi/2) for d = -1, [0, pi/3) for d = -3 and
    [0, pi) otherwise, and contains exactly one associate of every nonzero
    element.  Decided from integer coordinates only.
    """
    if z.is_zero:
        raise DomainError("the zero element has no sector membership")
    if z.ring.d in (-1, -3):
        # Both reduce to first coordinate positive, second nonnegative.
        return z.a > 0 and z.b >= 0
    return z.b > 0 or (z.b == 0 and z.a > 0)


def arg_less(z1: QInt, z2: QInt) -> bool:
    """Exact comparison arg(z1) < arg(z2) for nonzero elements with arg in [0, pi)."""
    x1, y1 = z1.doubled_parts()
    x2, y2 = z2.doubled_parts()
    if y1 < 0 or y2 < 0:
        raise DomainError("arg_less expects arguments in the closed upper half plane")
    if y1 == 0:
        return y2 != 0
    if y2 == 0:
        return False
    # cot is strictly decreasing on (0, pi)
    return x1 * y2 > x2 * y1


def canonical_associate(z: QInt) -> tuple[QInt, int]:
    """The unique associate of z in the sector, plus the unit index u with z = u * w."""
    if z.is_zero:
        raise DomainError("zero has no canonical associate")
    units = z.ring.units()
    inverses = _unit_inverse_indices(z.ring.d)
    for i, u in enumerate(units):
        w = z * u
        if in_sector(w):
            return w, inverses[i]
    raise AssertionError(f"unit orbit of {z!r} missed the sector")


def is_associate(x: QInt, y: QInt) -> bool:
    if x.ring.d != y.ring.d:
        raise DomainError("mixed-ring operands")
    if x.is_zero or y.is_zero:
        return x.is_zero and y.is_zero
    if x.norm() != y.norm():
        return False
    return canonical_associate(x)[0] == canonical_associate(y)[0]


def exact_div(x: QInt, y: QInt) -> QInt | None:
    """x / y when y divides x exactly in the ring, else None."""
    if x.ring.d != y.ring.d:
        raise DomainError("mixed-ring operands")
    if y.is_zero:
        raise DomainError("division by zero")
    num = x * y.conj()
    n = y.norm()
    if num.a % n or num.b % n:
        return None
    return QInt(x.ring, num.a // n, num.b // n)


def format_element(z: QInt) -> str:
    """Canonical coordinate syntax "a+b*w".  Round-trips through parse_element."""
    if z.b == 0:
        return str(z.a)
    if z.a == 0:
        return f"{z.b}*w"
    return f"{z.a}{'+' if z.b >= 0 else ''}{z.b}*w"


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pretty_element(z: QInt) -> str:
    """Radical syntax "x+y*sqrt(d)" with rational x, y (halves for d = 1 mod 4)."""
    x, y = z.rational_parts()
    root = "i" if z.ring.d == -1 else f"sqrt({z.ring.d})"
    if y == 0:
        return _frac_text(x)
    if y == 1:
        ytext = root
    elif y == -1:
        ytext = f"-{root}"
    else:
        ytext = f"{_frac_text(y)}*{root}"
    if x == 0:
        return ytext
    sep = "+" if y > 0 else ""
    return f"{_frac_text(x)}{sep}{ytext}"


_TERM_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?"
    r"(?:\*?(?P<sym>w|i|sqrt\(-?\d+\)))?$"
)


def _split_terms(text: str) -> list[str]:
    # Split on +/- at paren depth 0, keeping signs attached; "sqrt(-3)" stays whole.
    terms: list[str] = []
    current = ""
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and current not in ("", "+", "-"):
            terms.append(current)
            current = ch
            continue
        current += ch
    if current:
        terms.append(current)
    return terms


def parse_element(r: Ring, text: str) -> QInt:
    """Parse "a+b*w", plain integers, or radical syntax "x+y*sqrt(d)".

    Rational coefficients such as "3/2+1/2*sqrt(-3)" are accepted whenever the
    result has integral coordinates.  The radicand must match the ring.
    """
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty element")
    x = Fraction(0)  # rational part
    y = Fraction(0)  # coefficient of sqrt(d)
    wc = Fraction(0)  # coefficient of the basis element w
    for term in _split_terms(s):
        m = _TERM_RE.match(term)
        if not m or (m.group("coef") is None and m.group("sym") is None):
            raise DomainError(f"cannot parse element term {term!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        sym = m.group("sym")
        if sym is None:
            x += coef
        elif sym == "w":
            wc += coef
        else:
            radicand = -1 if sym == "i" else int(sym[5:-1])
            if radicand != r.d:
                raise DomainError(f"radicand {radicand} does not belong to d={r.d}")
            y += coef
    if r.half_integral:
        x += wc / 2
        y += wc / 2
    else:
        y += wc
    return r.from_rational_parts(x, y)
