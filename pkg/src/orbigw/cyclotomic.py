r"""
Exact arithmetic in the cyclotomic field Q(zeta_n).

Elements are stored in the power basis 1, zeta, ..., zeta^{phi(n)-1} with
rational coordinates, reduced modulo the n-th cyclotomic polynomial.  All
operations are exact; there is no floating point anywhere in this module.

The rationals themselves are ``fractions.Fraction`` (arbitrary precision,
always in lowest terms with positive denominator), which is exactly the
coefficient type the rest of the engine builds on.

Example::

    >>> z = Cyclotomic.zeta(5)
    >>> sum(z**k for k in range(5))
    Cyclotomic(5, [0])
    >>> (z**3 * z**2).is_one()
    True
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Union

Rational = Fraction

Coefficient = Union["Cyclotomic", Fraction, int]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of polynomials given as coefficient lists (low degree first)."""
    num = list(num)
    quot = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    dlead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] / dlead
        if c:
            quot[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    rem = num[: len(den) - 1]
    while rem and not rem[-1]:
        rem.pop()
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    num = [Fraction(0)] * (n + 1)
    num[0], num[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    while len(num) > 1 and not num[-1]:
        num.pop()
    return tuple(num)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power basis coordinates of zeta^e mod Phi_n, for e = 0 .. max(n, 2*phi(n)) - 1."""
    phi = list(cyclotomic_polynomial(n))
    d = len(phi) - 1
    top = max(n, 2 * d)
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for _ in range(top):
        rows.append(tuple(cur))
        # multiply by zeta and reduce by Phi_n
        nxt = [Fraction(0)] + cur
        if nxt[d]:
            lead = nxt.pop()
            for j in range(d):
                nxt[j] -= lead * phi[j]
        else:
            nxt.pop()
        cur = nxt
    return tuple(rows)


class Cyclotomic:
    """An exact element of Q(zeta_n) in the power basis of zeta_n."""

    __slots__ = ("order", "coords")

    def __init__(self, order: int, coords: Iterable[Coefficient]):
        d = euler_phi(order)
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coords]
        if len(cs) > d:
            raise ValueError(f"at most {d} coordinates for order {order}")
        cs += [Fraction(0)] * (d - len(cs))
        self.order = order
        self.coords = tuple(cs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(order: int) -> "Cyclotomic":
        return Cyclotomic(order, [])

    @staticmethod
    def one(order: int) -> "Cyclotomic":
        return Cyclotomic(order, [Fraction(1)])

    @staticmethod
    def from_rational(order: int, q: Fraction | int) -> "Cyclotomic":
        return Cyclotomic(order, [Fraction(q)])

    @staticmethod
    def zeta(order: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k, for any integer k (reduced mod n)."""
        return Cyclotomic(order, _power_table(order)[k % order])

    # -- basic structure ----------------------------------------------------

    def _coerce(self, other: Coefficient) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(f"mixed cyclotomic orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coords[0]

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: Coefficient):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, [-a for a in self.coords])

    def __sub__(self, other: Coefficient):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other: Coefficient):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: Coefficient):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Cyclotomic.zero(self.order)
            return Cyclotomic(self.order, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = len(self.coords)
        raw = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(o.coords):
                if b:
                    raw[i + j] += a * b
        table = _power_table(self.order)
        out = list(raw[:d])
        for e in range(d, 2 * d - 1):
            c = raw[e]
            if c:
                row = table[e]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(self.order, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        if self.is_rational():
            return Cyclotomic.from_rational(self.order, 1 / self.coords[0])
        phi = list(cyclotomic_polynomial(self.order))
        a = list(self.coords)
        while a and not a[-1]:
            a.pop()
        # extended gcd of a(x) and Phi_n(x); they are coprime since Phi_n is irreducible
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0]:
            q, r = _poly_divmod(r0, r1)
            if not r:
                r = [Fraction(0)]
            s = list(s0)
            s += [Fraction(0)] * (len(q) + len(s1) - 1 - len(s))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s[i + j] -= qi * sj
            r0, r1, s0, s1 = r1, r, s1, s
            if len(r1) == 1 and r1[0]:
                break
        unit = r1[0]
        inv = [c / unit for c in s1]
        d = euler_phi(self.order)
        # s1 may exceed the basis length; reduce by the power table
        table = _power_table(self.order)
        out = [Fraction(0)] * d
        for e, c in enumerate(inv):
            if c:
                row = table[e]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        result = Cyclotomic(self.order, out)
        assert (result * self).is_one()
        return result

    def __truediv__(self, other: Coefficient):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, [a / other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Coefficient):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.order, self.coords))

    def __repr__(self) -> str:
        coords = list(self.coords)
        while len(coords) > 1 and not coords[-1]:
            coords.pop()
        return f"Cyclotomic({self.order}, {[str(c) for c in coords]})"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    @staticmethod
    def from_json(order: int, data: list[str]) -> "Cyclotomic":
        return Cyclotomic(order, [Fraction(s) for s in data])


def as_cyclotomic(order: int, value: Coefficient) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        if value.order != order:
            raise ValueError(f"mixed cyclotomic orders {value.order} and {order}")
        return value
    return Cyclotomic.from_rational(order, value)
