"""Exact arithmetic on rational angles of the circle R/Z.

Angles are reduced fractions in [0, 1).  The only dynamics here is the
degree-d multiplication map ``tau(a) = d*a mod 1``; everything downstream
(portraits, transition matrices) is built on top of these primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class AngleParseError(ValueError):
    """Raised for malformed angle text or a zero denominator."""


class Angle:
    """A rational point of R/Z stored as the canonical reduced p/q in [0, 1)."""

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise AngleParseError("angle denominator must be nonzero")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("Angle is immutable")

    @classmethod
    def parse(cls, text: str) -> "Angle":
        """Parse 'p/q' (optionally unreduced or negative) or a bare integer."""
        parts = text.strip().split("/")
        try:
            if len(parts) == 1:
                return cls(int(parts[0]))
            if len(parts) == 2:
                return cls(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise AngleParseError(f"malformed angle {text!r}") from exc
        raise AngleParseError(f"malformed angle {text!r}")

    @classmethod
    def from_fraction(cls, f: Fraction) -> "Angle":
        return cls(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def shifted(self, delta: Fraction) -> "Angle":
        """The angle moved by delta along the circle (mod 1)."""
        f = self.fraction + delta
        return Angle(f.numerator, f.denominator)

    def negated(self) -> "Angle":
        return Angle(-self.num, self.den)

    def __eq__(self, other):
        return isinstance(other, Angle) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __lt__(self, other):
        return self.num * other.den < other.num * self.den

    def __le__(self, other):
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other):
        return self.num * other.den > other.num * self.den

    def __ge__(self, other):
        return self.num * other.den >= other.num * self.den

    def __str__(self):
        return f"{self.num}/{self.den}"

    def __repr__(self):
        return f"Angle({self.num}, {self.den})"


def angle_from_fraction(p: int, q: int) -> Angle:
    """Reduced representative of p/q mod 1 (q may be negative, never zero)."""
    return Angle(p, q)


def check_degree(d: int) -> int:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"degree must be an integer >= 2, got {d!r}")
    return d


def tau(a: Angle, d: int) -> Angle:
    """Multiplication map d*a mod 1.  The result denominator divides a.den."""
    return Angle(a.num * d, a.den)


@dataclass(frozen=True)
class OrbitSummary:
    """Forward orbit tau(a), tau^2(a), ... up to the first repetition."""

    preperiod: int
    period: int
    points: tuple

    def __post_init__(self):
        assert len(self.points) == self.preperiod + self.period


def forward_orbit(a: Angle, d: int) -> OrbitSummary:
    """Enumerate tau(a), tau^2(a), ... and report preperiod and period.

    The orbit starts at the first image: ``a`` itself appears only if some
    iterate returns to it.
    """
    check_degree(d)
    seen = {}
    points = []
    x = tau(a, d)
    while x not in seen:
        seen[x] = len(points)
        points.append(x)
        x = tau(x, d)
    preperiod = seen[x]
    return OrbitSummary(preperiod, len(points) - preperiod, tuple(points))


def arc_length(a: Angle, b: Angle) -> Fraction:
    """Length of the counterclockwise arc from a to b (in [0, 1))."""
    return (b.fraction - a.fraction) % 1


def in_open_arc(x: Angle, a: Angle, b: Angle) -> bool:
    """True iff x lies strictly inside the counterclockwise open arc (a, b)."""
    if a == b:
        raise ValueError("empty/full arc is ambiguous: endpoints coincide")
    t = (x.fraction - a.fraction) % 1
    return 0 < t < arc_length(a, b)
