"""Rational critical portraits: validation, unlinked classes, separation sets.

A degree-d critical portrait is a collection of finite circle subsets, each
collapsed to a single angle by the multiplication map, with pairwise
non-crossing hulls and total criticality d - 1.  The separation set of an
angle pair lists, in crossing order, the portrait elements whose hulls the
chord between them crosses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .angles import Angle, AngleParseError, arc_length, check_degree, forward_orbit, in_open_arc, tau


class PortraitError(ValueError):
    """Base class for portrait validation failures."""

    code = "PortraitError"


class ElementTooSmall(PortraitError):
    code = "ElementTooSmall"


class NotCollapsing(PortraitError):
    code = "NotCollapsing"


class CriticalityMismatch(PortraitError):
    code = "CriticalityMismatch"


class HullsCross(PortraitError):
    code = "HullsCross"


class PortraitParseError(ValueError):
    """Malformed portrait text or structured input."""


@dataclass(frozen=True)
class PortraitElement:
    """One element: a sorted tuple of >= 2 angles collapsed by tau."""

    angles: tuple

    def __contains__(self, x: Angle) -> bool:
        return x in self.angles

    def __len__(self):
        return len(self.angles)

    def image(self, d: int) -> Angle:
        return tau(self.angles[0], d)

    def gap_index(self, x: Angle):
        """Index i such that x lies in the open arc (angles[i], angles[i+1]).

        Returns None when x is one of the element's angles.  Gap i runs from
        angles[i] counterclockwise to angles[(i+1) % len], the last one
        wrapping through 0.
        """
        if x in self.angles:
            return None
        k = len(self.angles)
        for i in range(k):
            if in_open_arc(x, self.angles[i], self.angles[(i + 1) % k]):
                return i
        raise AssertionError("unreachable: circle gaps cover the complement")

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.angles) + "}"


@dataclass(frozen=True)
class CriticalPortrait:
    degree: int
    elements: tuple

    def __str__(self):
        sets = ", ".join(str(e) for e in self.elements)
        return f"degree {self.degree}: {sets}"


@dataclass(frozen=True)
class UnlinkedClass:
    """One of the d components of the circle minus the portrait hulls."""

    arcs: tuple  # (start, end) Angle pairs, counterclockwise
    total_length: Fraction


def _element_non_crossing(a: PortraitElement, b: PortraitElement) -> bool:
    """True iff hull(a) and hull(b) meet in at most one circle point.

    Shared circle points are allowed (at most one).  All points of b not
    shared with a must sit inside a single open gap of a, and when a point is
    shared that gap must be adjacent to it.
    """
    shared = [x for x in b.angles if x in a.angles]
    if len(shared) >= 2:
        return False
    rest = [x for x in b.angles if x not in a.angles]
    gaps = {a.gap_index(x) for x in rest}
    if len(gaps) > 1:
        return False
    if shared and rest:
        g = gaps.pop()
        k = len(a.angles)
        i = a.angles.index(shared[0])
        # gaps adjacent to vertex i are gap i (after it) and gap i-1 (before it)
        if g not in (i % k, (i - 1) % k):
            return False
    return True


def validate(degree: int, raw_sets) -> CriticalPortrait:
    """Validate the portrait axioms, reporting the first violated one.

    Check order: ElementTooSmall, NotCollapsing, CriticalityMismatch,
    HullsCross.
    """
    check_degree(degree)
    elements = []
    for s in raw_sets:
        angles = tuple(sorted(set(s)))
        if len(angles) < 2:
            raise ElementTooSmall(f"element {{{', '.join(map(str, angles))}}} has fewer than 2 angles")
        elements.append(PortraitElement(angles))
    for e in elements:
        images = {tau(x, degree) for x in e.angles}
        if len(images) != 1:
            raise NotCollapsing(f"element {e} does not collapse under the degree-{degree} map")
    criticality = sum(len(e) - 1 for e in elements)
    if criticality != degree - 1:
        raise CriticalityMismatch(
            f"total criticality {criticality} != degree - 1 = {degree - 1}"
        )
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if not (_element_non_crossing(elements[i], elements[j])
                    and _element_non_crossing(elements[j], elements[i])):
                raise HullsCross(f"hulls of {elements[i]} and {elements[j]} cross")
    return CriticalPortrait(degree, tuple(elements))


def crit_set(P: CriticalPortrait):
    """Union of all element angle-sets, sorted."""
    out = set()
    for e in P.elements:
        out.update(e.angles)
    return sorted(out)


def post_set(P: CriticalPortrait):
    """Union of the strictly forward orbits (n >= 1) of all critical angles."""
    out = set()
    for x in crit_set(P):
        out.update(forward_orbit(x, P.degree).points)
    return sorted(out)


def unlinked_classes(P: CriticalPortrait):
    """The d unlinked classes, each a set of arcs of exact total length 1/d."""
    crit = crit_set(P)
    m = len(crit)
    gaps = []  # (start, end, midpoint)
    for t in range(m):
        start, end = crit[t], crit[(t + 1) % m]
        mid = Angle.from_fraction((start.fraction + arc_length(start, end) / 2) % 1)
        gaps.append((start, end, mid))
    groups = {}
    for start, end, mid in gaps:
        sig = tuple(e.gap_index(mid) for e in P.elements)
        groups.setdefault(sig, []).append((start, end))
    classes = []
    for arcs in groups.values():
        total = sum((arc_length(a, b) for a, b in arcs), Fraction(0))
        classes.append(UnlinkedClass(tuple(arcs), total))
    classes.sort(key=lambda c: c.arcs[0][0])
    if len(classes) != P.degree:
        raise AssertionError(
            f"expected {P.degree} unlinked classes, found {len(classes)}"
        )
    for c in classes:
        if c.total_length != Fraction(1, P.degree):
            raise AssertionError(f"unlinked class has length {c.total_length} != 1/{P.degree}")
    return classes


def separated_by(x: Angle, y: Angle, element: PortraitElement) -> bool:
    """True iff the chord xy crosses hull(element).

    Combinatorially: x, y outside the element and both open arcs between
    them contain at least one element angle.
    """
    if x == y or x in element or y in element:
        return False
    fwd = any(in_open_arc(t, x, y) for t in element.angles)
    bwd = any(in_open_arc(t, y, x) for t in element.angles)
    return fwd and bwd


def _on_x_side(J: PortraitElement, K: PortraitElement, x: Angle) -> bool:
    """True iff hull(J), minus any shared vertex, sits in the gap of K holding x."""
    g = K.gap_index(x)
    assert g is not None
    k = len(K.angles)
    lo, hi = K.angles[g], K.angles[(g + 1) % k]
    return all(t in K.angles or in_open_arc(t, lo, hi) for t in J.angles)


def separation_set(x: Angle, y: Angle, P: CriticalPortrait):
    """Ordered 1-based indices of elements crossed by the chord xy, from x to y.

    The crossing order is by x-side containment: a crossed hull comes earlier
    when it sits on x's side of the others.  Returns () for non-separated
    pairs (including x == y).
    """
    crossed = [i for i, e in enumerate(P.elements) if separated_by(x, y, e)]
    if len(crossed) <= 1:
        return tuple(i + 1 for i in crossed)

    def rank(i):
        return sum(
            1
            for j in crossed
            if j != i and _on_x_side(P.elements[j], P.elements[i], x)
        )

    ranked = sorted(crossed, key=rank)
    assert sorted(rank(i) for i in crossed) == list(range(len(crossed)))
    return tuple(i + 1 for i in ranked)


# ---------------------------------------------------------------------------
# portrait file format
# ---------------------------------------------------------------------------

def parse_portrait_text(text: str) -> CriticalPortrait:
    """Parse the line-based portrait format.

    Line 1: ``degree <d>``; then one ``set <p/q> <p/q> ...`` per element.
    ``#`` starts a comment, blank lines are ignored.
    """
    degree = None
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "degree":
            if degree is not None or len(parts) != 2:
                raise PortraitParseError(f"line {lineno}: bad degree line {raw!r}")
            try:
                degree = int(parts[1])
            except ValueError as exc:
                raise PortraitParseError(f"line {lineno}: bad degree {parts[1]!r}") from exc
        elif parts[0] == "set":
            try:
                sets.append([Angle.parse(tok) for tok in parts[1:]])
            except AngleParseError as exc:
                raise PortraitParseError(f"line {lineno}: {exc}") from exc
        else:
            raise PortraitParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if degree is None:
        raise PortraitParseError("missing 'degree <d>' line")
    if not sets:
        raise PortraitParseError("portrait has no 'set' lines")
    return validate(degree, sets)


def parse_portrait_json(obj) -> CriticalPortrait:
    """Parse the structured format: {"degree": d, "sets": [["p/q", ...], ...]}."""
    try:
        degree = obj["degree"]
        raw_sets = obj["sets"]
    except (TypeError, KeyError) as exc:
        raise PortraitParseError("expected object with 'degree' and 'sets'") from exc
    if not isinstance(degree, int):
        raise PortraitParseError("'degree' must be an integer")
    try:
        sets = [[Angle.parse(tok) for tok in group] for group in raw_sets]
    except (TypeError, AngleParseError) as exc:
        raise PortraitParseError(f"bad 'sets' entry: {exc}") from exc
    return validate(degree, sets)


def portrait_to_text(P: CriticalPortrait) -> str:
    lines = [f"degree {P.degree}"]
    for e in P.elements:
        lines.append("set " + " ".join(str(a) for a in e.angles))
    return "\n".join(lines) + "\n"
