import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homlab.errors import BadParameter, ClosureViolation, NoMinimum, NoTop, UnknownElement
from homlab.poset import (
    build_poset,
    is_directed,
    is_linear,
    leq,
    make_chain,
    make_D,
    make_F,
    maximal_elements,
    named_poset,
    strict_tops_below_top,
    top,
    trivial,
    upper_bounds,
)

CANNED = [trivial(), make_F(1), make_F(2), make_F(3), make_D(2), make_D(3), make_chain(2), make_chain(3)]


def test_build_F2_is_antichain_over_zero():
    p = build_poset(["0", "c1", "c2"], [("0", "c1"), ("0", "c2")], "0")
    assert p == make_F(2)
    assert not leq(p, "c1", "c2") and not leq(p, "c2", "c1")


def test_build_singleton():
    p = build_poset(["0"], [], "0")
    assert len(p) == 1 and leq(p, "0", "0")


def test_build_diamond_closes_transitively():
    p = build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "0")
    assert leq(p, "0", "1")
    assert not leq(p, "1", "0")


def test_cycle_rejected():
    with pytest.raises(ClosureViolation):
        build_poset(["0", "a", "b"], [("0", "a"), ("a", "b"), ("b", "a")])


def test_missing_minimum_rejected():
    with pytest.raises(NoMinimum):
        build_poset(["0", "a", "b"], [("0", "a")])


def test_unknown_element():
    with pytest.raises(UnknownElement):
        leq(make_F(2), "c1", "zz")
    with pytest.raises(KeyError):
        upper_bounds(make_F(2), "zz", "0")


def test_leq_examples():
    D2 = make_D(2)
    assert leq(D2, "c1", "1")
    assert not leq(make_F(2), "c1", "c2")


def test_linear_examples():
    assert is_linear(make_chain(3))
    assert not is_linear(make_F(2))
    assert is_linear(trivial())
    assert is_linear(make_F(1))


def test_directed_examples():
    assert is_directed(make_D(2))
    assert not is_directed(make_F(2))
    assert is_directed(make_chain(3))


def test_maximal_elements():
    assert maximal_elements(make_F(2)) == {"c1", "c2"}
    assert maximal_elements(make_D(2)) == {"1"}
    assert maximal_elements(trivial()) == {"0"}
    assert len(maximal_elements(make_chain(3))) == 1


def test_strict_tops_below_top():
    assert strict_tops_below_top(make_D(2)) == ["c1", "c2"]
    chain = build_poset(["0", "a", "1"], [("0", "a"), ("a", "1")])
    assert strict_tops_below_top(chain) == ["a"]
    assert strict_tops_below_top(make_D(3)) == ["c1", "c2", "c3"]
    with pytest.raises(NoTop):
        strict_tops_below_top(make_F(2))


def test_upper_bounds():
    D2 = make_D(2)
    assert upper_bounds(D2, "c1", "c2") == {"1"}
    assert upper_bounds(make_F(2), "c1", "c2") == set()
    for p in CANNED:
        for x in p.elements:
            assert upper_bounds(p, "0", x) == {y for y in p.elements if leq(p, x, y)}


def test_make_parameters():
    assert len(make_D(2)) == 4 and is_directed(make_D(2))
    for bad in (lambda: make_F(0), lambda: make_D(1), lambda: make_chain(0)):
        with pytest.raises(BadParameter):
            bad()
    assert top(make_D(2)) == "1" and top(make_F(2)) is None


def test_named_shorthands():
    assert named_poset("F2") == make_F(2)
    assert named_poset("D3") == make_D(3)
    assert named_poset("chain3") == make_chain(3)
    assert named_poset("trivial") == trivial()
    with pytest.raises(BadParameter):
        named_poset("lattice7")


def test_covers_roundtrip():
    for p in CANNED:
        assert build_poset(p.elements, p.covers(), p.min) == p


# --------------------------------------------------------------------------- properties


def check_laws(p):
    E = p.elements
    for a in E:
        assert leq(p, a, a)
        assert leq(p, p.min, a)
    for a, b in itertools.product(E, E):
        if a != b:
            assert not (leq(p, a, b) and leq(p, b, a))
    for a, b, c in itertools.product(E, E, E):
        if leq(p, a, b) and leq(p, b, c):
            assert leq(p, a, c)
    if is_linear(p):
        assert is_directed(p)
    if top(p) is not None:
        assert is_directed(p)
    all_bounded = all(upper_bounds(p, a, b) for a, b in itertools.product(E, E))
    assert all_bounded == is_directed(p)


@pytest.mark.parametrize("p", CANNED, ids=repr)
def test_laws_canned(p):
    check_laws(p)


@st.composite
def random_posets(draw):
    n = draw(st.integers(1, 7))
    names = ["0"] + [f"e{i}" for i in range(1, n)]
    # edges only go forward in the list, so the closure is acyclic
    covers = [("0", x) for x in names[1:]]
    for i in range(1, n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                covers.append((names[i], names[j]))
    return build_poset(names, covers)


@given(random_posets())
@settings(max_examples=150, deadline=None)
def test_laws_random(p):
    check_laws(p)


@given(random_posets())
@settings(max_examples=50, deadline=None)
def test_order_matrix_closed(p):
    m = p.leq_matrix.astype(int)
    assert ((m @ m > 0) <= p.leq_matrix).all()
