"""Portrait validation, unlinked classes, separation sets, file formats."""

import json
import random
from fractions import Fraction

import pytest

from conftest import A, cubic_example, portrait, random_portrait, reflected, rotated
from coreentropy.angles import Angle
from coreentropy.portrait import (
    CriticalityMismatch,
    ElementTooSmall,
    HullsCross,
    NotCollapsing,
    PortraitParseError,
    crit_set,
    parse_portrait_json,
    parse_portrait_text,
    portrait_to_text,
    post_set,
    separated_by,
    separation_set,
    unlinked_classes,
    validate,
)


class TestValidate:
    def test_accepts_worked_example(self):
        P = cubic_example()
        assert P.degree == 3
        assert [len(e) for e in P.elements] == [2, 2]

    def test_element_angles_sorted_and_deduplicated(self):
        P = portrait(2, "3/4 1/4 3/4")
        assert P.elements[0].angles == (A("1/4"), A("3/4"))

    def test_element_too_small(self):
        with pytest.raises(ElementTooSmall) as exc:
            validate(2, [[A("1/2")]])
        assert exc.value.code == "ElementTooSmall"

    def test_not_collapsing(self):
        with pytest.raises(NotCollapsing) as exc:
            validate(2, [[A("1/4"), A("1/2")]])
        assert exc.value.code == "NotCollapsing"

    def test_criticality_mismatch(self):
        with pytest.raises(CriticalityMismatch) as exc:
            validate(3, [[A("0"), A("1/3")]])
        assert exc.value.code == "CriticalityMismatch"

    def test_hulls_cross(self):
        # both chords collapse under x4 but their hulls interleave
        with pytest.raises(HullsCross) as exc:
            validate(4, [[A("0"), A("1/2")], [A("1/4"), A("3/4")], [A("1/8"), A("3/8")]])
        assert exc.value.code == "HullsCross"

    def test_error_priority_size_before_collapse(self):
        # the singleton element must be reported before the non-collapsing one
        with pytest.raises(ElementTooSmall):
            validate(2, [[A("1/4"), A("1/2")], [A("0")]])

    def test_shared_vertex_allowed(self):
        # two elements of the Chebyshev marking share the angle 1/4
        P = portrait(3, "7/12 1/4", "11/12 1/4")
        assert len(P.elements) == 2

    def test_triangle_crossed_by_chord_rejected(self):
        # the chord {1/8, 3/8} cuts through two sides of the triangle
        with pytest.raises(HullsCross):
            validate(
                4, [[A("0"), A("1/4"), A("1/2")], [A("1/8"), A("3/8")]]
            )


class TestSets:
    def test_crit_and_post_of_worked_example(self):
        P = cubic_example()
        assert crit_set(P) == [A("0"), A("1/3"), A("7/15"), A("4/5")]
        assert post_set(P) == [A("0"), A("1/5"), A("2/5"), A("3/5"), A("4/5")]

    def test_post_of_periodic_quadratic(self):
        P = portrait(2, "3/14 5/7")
        assert post_set(P) == [A("3/7"), A("5/7"), A("6/7")]


class TestUnlinkedClasses:
    def test_quadratic(self):
        P = portrait(2, "1/4 3/4")
        classes = unlinked_classes(P)
        assert len(classes) == 2
        assert all(c.total_length == Fraction(1, 2) for c in classes)

    def test_worked_example(self):
        P = cubic_example()
        classes = unlinked_classes(P)
        assert len(classes) == 3
        assert all(c.total_length == Fraction(1, 3) for c in classes)
        # the class holding the arc (0, 1/3) is exactly that arc
        first = [c for c in classes if c.arcs[0] == (A("0"), A("1/3"))]
        assert len(first) == 1 and len(first[0].arcs) == 1

    def test_random_portraits(self):
        rng = random.Random(7)
        for _ in range(25):
            P = random_portrait(rng, rng.choice((2, 3, 4)))
            classes = unlinked_classes(P)
            assert len(classes) == P.degree
            assert all(c.total_length == Fraction(1, P.degree) for c in classes)


class TestSeparation:
    def test_separated_by(self):
        P = cubic_example()
        e1, e2 = P.elements
        assert not separated_by(A("0"), A("1/5"), e1)
        assert separated_by(A("0"), A("3/5"), e2)
        # endpoints touching an element are never separated by it
        assert not separated_by(A("0"), A("2/5"), e1)

    def test_separation_sets_of_worked_example(self):
        P = cubic_example()
        assert separation_set(A("0"), A("1/5"), P) == ()
        assert separation_set(A("0"), A("3/5"), P) == (2,)
        assert separation_set(A("1/5"), A("3/5"), P) == (1, 2)
        assert separation_set(A("3/5"), A("1/5"), P) == (2, 1)
        assert separation_set(A("2/5"), A("3/5"), P) == (2,)

    def test_trivial_cases(self):
        P = cubic_example()
        assert separation_set(A("1/7"), A("1/7"), P) == ()

    def test_order_reverses_with_endpoints(self):
        rng = random.Random(11)
        for _ in range(20):
            P = random_portrait(rng, rng.choice((3, 4)))
            post = post_set(P)
            for i in range(len(post)):
                for j in range(i + 1, len(post)):
                    s = separation_set(post[i], post[j], P)
                    assert separation_set(post[j], post[i], P) == tuple(reversed(s))


class TestConjugations:
    def test_rotation_and_reflection_stay_valid(self):
        rng = random.Random(3)
        for _ in range(15):
            d = rng.choice((2, 3, 4))
            P = random_portrait(rng, d)
            for k in range(1, d - 1):
                assert rotated(P, k).degree == d
            R = reflected(P)
            assert sorted(len(e) for e in R.elements) == sorted(len(e) for e in P.elements)


class TestFileFormat:
    TEXT = "# comment\ndegree 3\nset 0 1/3   # inline\n\nset 7/15 4/5\n"

    def test_parse_text(self):
        P = parse_portrait_text(self.TEXT)
        assert P == cubic_example()

    def test_roundtrip(self):
        P = cubic_example()
        assert parse_portrait_text(portrait_to_text(P)) == P

    def test_parse_errors(self):
        for text in (
            "set 0 1/2",                      # missing degree
            "degree 2",                       # no sets
            "degree 2\ndegree 2\nset 0 1/2",  # duplicate degree
            "degree x\nset 0 1/2",            # bad number
            "degree 2\nset 0 1//2",           # malformed angle
            "degree 2\nfoo 0 1/2",            # unknown directive
        ):
            with pytest.raises(PortraitParseError):
                parse_portrait_text(text)

    def test_parse_json(self):
        obj = {"degree": 3, "sets": [["0", "1/3"], ["7/15", "4/5"]]}
        assert parse_portrait_json(obj) == cubic_example()
        with pytest.raises(PortraitParseError):
            parse_portrait_json({"degree": "3", "sets": []})
        with pytest.raises(PortraitParseError):
            parse_portrait_json({"sets": []})
        with pytest.raises(PortraitParseError):
            parse_portrait_json(json.loads('{"degree": 2, "sets": [["0", "oops"]]}'))
