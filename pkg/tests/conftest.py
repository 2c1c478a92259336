"""Shared fixtures: worked example portraits and a random-portrait generator."""

from fractions import Fraction

import pytest

from coreentropy.angles import Angle
from coreentropy.portrait import PortraitError, post_set, validate


def A(text):
    return Angle.parse(text)


def portrait(degree, *sets):
    return validate(degree, [[A(t) for t in s.split()] for s in sets])


# degree-3 worked example with postcritical set {0, 1/5, 2/5, 3/5, 4/5}
def cubic_example():
    return portrait(3, "0 1/3", "7/15 4/5")


# two markings of the same cubic polynomial (a preperiodic one)
def cubic_marking_pair():
    return (
        portrait(3, "11/216 83/216", "89/216 161/216"),
        portrait(3, "11/216 83/216 155/216"),
    )


# two markings of z^3 - (3/2)z
def chebyshev_marking_pair():
    return (
        portrait(3, "7/12 1/4", "11/12 1/4"),
        portrait(3, "1/4 7/12", "3/4 1/12"),
    )


@pytest.fixture
def cubic():
    return cubic_example()


# ---------------------------------------------------------------------------
# random valid portraits
# ---------------------------------------------------------------------------

# how the criticality d - 1 is split across elements (element size s
# contributes s - 1)
_SIZE_SPLITS = {2: ((2,),), 3: ((3,), (2, 2)), 4: ((4,), (3, 2), (2, 2, 2))}


def _den_pool(degree, max_den):
    """Denominators whose multiplication orbits close up quickly.

    Divisors of d^e * (d^k - 1) give preperiod <= e and period dividing k,
    which keeps postcritical sets small enough for exhaustive checks.
    """
    pool = set()
    for k in range(1, 7):
        m = degree ** k - 1
        divs = [t for t in range(1, m + 1) if m % t == 0]
        for e in range(3):
            scale = degree ** e
            for t in divs:
                q = scale * t
                if 2 <= q <= max_den:
                    pool.add(q)
    return sorted(pool)


_POOL_CACHE = {}


def random_portrait(rng, degree, max_den=400, max_post=12):
    """A uniformly-scrambled valid portrait with angle denominators <= max_den.

    Every element is built as {a + j/d : j in J}, which collapses by
    construction; only the hull-crossing axiom is left to rejection.
    Portraits with large postcritical sets are rejected as well so that
    downstream exhaustive checks stay cheap.
    """
    key = (degree, max_den)
    if key not in _POOL_CACHE:
        _POOL_CACHE[key] = _den_pool(degree, max_den)
    pool = _POOL_CACHE[key]
    while True:
        sizes = rng.choice(_SIZE_SPLITS[degree])
        raw = []
        for size in sizes:
            q = rng.choice(pool)
            p = rng.randrange(q)
            offsets = rng.sample(range(degree), size)
            raw.append([Angle(p * degree + j * q, q * degree) for j in offsets])
        if any(x.den > max_den for el in raw for x in el):
            continue
        try:
            P = validate(degree, raw)
        except PortraitError:
            continue
        if len(post_set(P)) > max_post:
            continue
        return P


def rotated(P, k):
    """The portrait moved by the conjugating rotation k/(degree - 1)."""
    shift = Fraction(k, P.degree - 1)
    return validate(
        P.degree, [[a.shifted(shift) for a in e.angles] for e in P.elements]
    )


def reflected(P):
    """The portrait under the conjugating reflection x -> -x."""
    return validate(P.degree, [[a.negated() for a in e.angles] for e in P.elements])
