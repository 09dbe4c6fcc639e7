"""Exact arithmetic in the quadratic rings Z[tau] and Z[beta].

``tau = (sqrt(5) - 1) / 2`` satisfies ``tau**2 = 1 - tau`` and
``beta = sqrt(2) - 1`` satisfies ``beta**2 = 1 - 2*beta``.  Both are units,
so every integer power is again an element of the ring.

Elements are stored as a pair of Python integers ``(a, b)`` meaning
``a + b*theta``; Python integers never overflow, so compositions that square
coefficients stay exact.  Signs and comparisons use integer arithmetic only.
"""
from __future__ import annotations

import re
from functools import lru_cache

__all__ = [
    "ZTau",
    "ZBeta",
    "tau_power",
    "beta_power",
    "sign",
    "parse_ring_element",
]


def _sign(a, b, q, d):
    # 2*value = p + b*sqrt(d) with p = 2a + bq
    p = 2 * a + b * q
    if p >= 0 and b >= 0:
        return 0 if p == 0 and b == 0 else 1
    if p <= 0 and b <= 0:
        return -1
    # mixed signs: compare p**2 with d*b**2
    diff = p * p - d * b * b
    s = (diff > 0) - (diff < 0)
    return s if p > 0 else -s


class _QuadraticInteger:
    """``a + b*theta`` with ``theta**2 = P + Q*theta``.

    Subclasses fix ``P``, ``Q``, the discriminant ``D = Q**2 + 4P`` and the
    symbol used by the text form.  ``theta`` is the positive root
    ``(Q + sqrt(D)) / 2``.
    """

    __slots__ = ("a", "b")
    P = 0
    Q = 0
    D = 0
    SYMBOL = "?"

    def __init__(self, a=0, b=0):
        self.a = a
        self.b = b

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, cls):
            return other
        if isinstance(other, int):
            return cls(other, 0)
        return NotImplemented

    @classmethod
    def one(cls):
        return cls(1, 0)

    @classmethod
    def zero(cls):
        return cls(0, 0)

    @classmethod
    def generator(cls):
        return cls(0, 1)

    def __add__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return type(self)(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return type(self)(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return type(self)(-self.a, -self.b)

    def __mul__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return type(self)(a * c + self.P * bd, a * d + b * c + self.Q * bd)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((type(self).__name__, self.a, self.b))

    def sign(self) -> int:
        return _sign(self.a, self.b, self.Q, self.D)

    def __lt__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return _sign(self.a - other.a, self.b - other.b, self.Q, self.D) < 0

    def __le__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return _sign(self.a - other.a, self.b - other.b, self.Q, self.D) <= 0

    def __gt__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return _sign(self.a - other.a, self.b - other.b, self.Q, self.D) > 0

    def __ge__(self, other):
        if type(other) is not type(self):
            other = self._coerce(other)
            if other is NotImplemented:
                return other
        return _sign(self.a - other.a, self.b - other.b, self.Q, self.D) >= 0

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result, base = self.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def inverse_generator(self):
        # theta * (theta - Q) = P, and P = 1 for both rings
        return type(self)(-self.Q, 1)

    def __float__(self):
        theta = (self.Q + self.D ** 0.5) / 2
        return self.a + self.b * theta

    def __str__(self):
        sign = "-" if self.b < 0 else "+"
        return f"{self.a}{sign}{abs(self.b)}*{self.SYMBOL}"

    def __repr__(self):
        return f"{type(self).__name__}({self.a}, {self.b})"

    @classmethod
    def parse(cls, text: str):
        """Parse ``"a+b*t"`` style text (also plain integers and ``"t"``)."""
        return _parse(cls, text)

    def to_json(self):
        return str(self)


class ZTau(_QuadraticInteger):
    """Element ``a + b*tau`` of Z[tau], reduced with ``tau**2 = 1 - tau``."""

    __slots__ = ()
    P = 1
    Q = -1
    D = 5
    SYMBOL = "t"


class ZBeta(_QuadraticInteger):
    """Element ``a + b*beta`` of Z[beta], reduced with ``beta**2 = 1 - 2*beta``."""

    __slots__ = ()
    P = 1
    Q = -2
    D = 8
    SYMBOL = "s"


def _power(cls, e: int):
    base = cls.generator() if e >= 0 else cls.generator().inverse_generator()
    n = abs(e)
    result = cls.one()
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


@lru_cache(maxsize=None)
def tau_power(e: int) -> ZTau:
    """Exact ``tau**e`` for any integer ``e``."""
    return _power(ZTau, e)


@lru_cache(maxsize=None)
def beta_power(e: int) -> ZBeta:
    """Exact ``beta**e`` for any integer ``e``."""
    return _power(ZBeta, e)


def sign(u: _QuadraticInteger) -> int:
    return u.sign()


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(\*?\s*([ts]))?")


def _parse(cls, text: str):
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty ring element")
    a = b = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse ring element {text!r}")
        sgn, digits, tail, sym = m.groups()
        if not digits and not sym:
            raise ValueError(f"cannot parse ring element {text!r}")
        if tail and tail.startswith("*") and not digits:
            raise ValueError(f"cannot parse ring element {text!r}")
        if sym is not None and sym != cls.SYMBOL:
            raise ValueError(f"symbol {sym!r} does not belong to {cls.__name__}")
        value = int(digits) if digits else 1
        if sgn == "-":
            value = -value
        if sym:
            b += value
        else:
            a += value
        pos = m.end()
    return cls(a, b)


def parse_ring_element(text: str, ring: str = "tau"):
    cls = ZTau if ring == "tau" else ZBeta
    return cls.parse(text)
