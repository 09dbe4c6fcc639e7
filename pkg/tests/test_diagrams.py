import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irrthompson.diagrams import (
    Piece,
    PLMap,
    TreePairDiagram,
    canonical_triple,
    classify,
    diagram_from_json,
    diagram_to_dot,
    diagram_to_json,
    equals,
    equals_diagrammatic,
    evaluate,
    invert,
    reduce,
    refine_domain,
    refine_range,
    to_plmap,
)
from irrthompson.presentation import compile_word, generator
from irrthompson.rings import ZTau, tau_power
from irrthompson.trees import LEAF, TAU, Node, caret_count, count_carets, expand_leaf, leaf_count, unify

from conftest import words
from oracles import same_map, word_map

t = ZTau(0, 1)
ID = TreePairDiagram.identity()


@st.composite
def diagrams(draw, max_carets=6):
    n = draw(st.integers(0, max_carets))
    trees = []
    for _ in range(2):
        tree = LEAF
        for _ in range(n):
            tree = expand_leaf(tree, draw(st.integers(1, leaf_count(tree))), draw(st.sampled_from("xy")))
        trees.append(tree)
    perm = draw(st.permutations(range(n + 1)))
    return TreePairDiagram(trees[0], perm, trees[1])


# ---------------------------------------------------------------- examples


def test_x0_plmap_pieces():
    f = to_plmap(generator("x0"))
    t4 = tau_power(4)
    assert t4 == ZTau(2, -3)
    assert f.breakpoints() == [t4, t * t]
    p0, p1, p2 = f.pieces
    assert (p0.dom_left, p0.dom_right, p0.img_left, p0.slope) == (ZTau(0, 0), t4, ZTau(0, 0), -2)
    assert (p1.dom_left, p1.dom_right, p1.img_left, p1.slope) == (t4, t * t, t * t, 0)
    assert (p2.dom_left, p2.img_left, p2.slope) == (t * t, t * t + tau_power(3), 1)


def test_evaluate_identity():
    assert evaluate(ID, t) == t


def test_evaluate_c1():
    assert evaluate(generator("c1"), t * t) == t


def test_evaluate_outside_unit_interval():
    with pytest.raises(ValueError):
        evaluate(ID, ZTau(0, 0))
    with pytest.raises(ValueError):
        evaluate(ID, ZTau(2, 0))


def test_reduce_hidden_cancellation():
    v = compile_word("y0 y0 x1^-1 x0^-1")
    assert reduce(v).is_trivial()


def test_reduce_single_caret_identity():
    x = TAU.caret("x")
    assert reduce(TreePairDiagram(x, (0, 1), x)).is_trivial()


def test_reduce_keeps_genuine_carets():
    assert reduce(generator("x0")).identical(generator("x0"))


@pytest.mark.parametrize("word, kind", [("x0", "F"), ("y3", "F"), ("c1", "T"), ("p0", "V"), ("c2 x1", "T")])
def test_classify_generators(word, kind):
    assert classify(compile_word(word)) == kind


@pytest.mark.parametrize("n", range(1, 9))
def test_c_order(n):
    c = generator("c", n)
    acc = ID
    for k in range(1, n + 3):
        acc = acc * c
        assert acc.plmap.is_identity() == (k == n + 2)


def test_composition_reads_left_to_right():
    a, b = generator("x0"), generator("c1")
    probe = t * t
    assert evaluate(a * b, probe) == evaluate(b, evaluate(a, probe))


def test_bad_permutation_rejected():
    x = TAU.caret("x")
    with pytest.raises(ValueError):
        TreePairDiagram(x, (0, 0), x)
    with pytest.raises(ValueError):
        TreePairDiagram(x, (0,), LEAF)


def test_json_round_trip_example():
    v = compile_word("p0 c2")
    data = json.loads(json.dumps(diagram_to_json(v)))
    assert sorted(data["perm"]) == list(range(1, v.leaves + 1))
    assert diagram_from_json(data).identical(v)


def test_dot_labels_by_class():
    assert "&#9675;" in diagram_to_dot(generator("c1"))
    assert "&#9675;" not in diagram_to_dot(generator("x0"))
    dot = diagram_to_dot(generator("p0"))
    assert "cluster_domain" in dot and "cluster_range" in dot


def test_plmap_left_continuity():
    f = to_plmap(generator("p0"))
    # the first breakpoint belongs to the piece on its left
    b = f.breakpoints()[0]
    p = f.pieces[0]
    assert f(b) == p.img_left + tau_power(p.slope) * (b - p.dom_left)


def test_plmap_inverse_checks_tiling():
    bad = PLMap([Piece(ZTau(0, 0), ZTau(1, 0), ZTau(0, 1), 0)], TAU, merge=False)
    assert not bad.image_tiles()


# ---------------------------------------------------------------- properties


@given(diagrams())
def test_plmap_is_bijection(v):
    f = v.plmap
    assert f.domain_tiles() and f.image_tiles()


@given(diagrams(), diagrams())
def test_compose_matches_plmap_composition(u, v):
    assert (u * v).plmap == u.plmap.then(v.plmap)


@given(diagrams(), diagrams(), diagrams())
def test_associativity(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(diagrams())
def test_inverse_law(v):
    assert (v * invert(v)).plmap.is_identity()
    assert reduce(invert(v) * v).is_trivial()
    assert v.plmap.inverse() == invert(v).plmap


@given(diagrams())
def test_reduce_preserves_element(v):
    r = reduce(v)
    assert r == v
    assert caret_count(r.domain) <= caret_count(v.domain)
    assert reduce(r).identical(r)


@given(diagrams(), st.integers(0, 20), st.sampled_from("xy"))
def test_expansion_preserves_element(v, i, caret):
    i = i % v.leaves
    w = v.expand(i + 1, caret)
    assert w == v and not w.identical(v)
    assert reduce(w) == reduce(v)


@given(diagrams(), diagrams())
def test_equals_agrees_with_diagrammatic(u, v):
    assert equals(u, v) == equals_diagrammatic(u, v)
    assert equals(u, u) and equals_diagrammatic(u, u)


@given(diagrams())
def test_canonical_triple(v):
    c = canonical_triple(v)
    assert c == v
    assert count_carets(c.range, "y") == 0


@given(diagrams(), diagrams())
def test_refinement_keeps_element(u, v):
    common, _, _ = unify(u.range, v.domain)
    assert refine_range(u, common) == u
    assert refine_domain(v, common) == v


@given(diagrams())
def test_classification_invariant_under_reduction(v):
    assert classify(v) == classify(reduce(v))


@given(diagrams())
def test_json_round_trip(v):
    assert diagram_from_json(json.dumps(diagram_to_json(v))).identical(v)


@given(words(max_size=10))
def test_words_match_oracle(w):
    assert same_map(compile_word(w).plmap.pieces, word_map(w))


@given(diagrams(), st.integers(-3, 3))
def test_power(v, n):
    direct = ID
    base = v if n >= 0 else invert(v)
    for _ in range(abs(n)):
        direct = direct * base
    assert v**n == direct


def test_is_trivial_vs_identity():
    x = TAU.caret("x")
    v = TreePairDiagram(x, (0, 1), x)
    assert v == ID and not v.is_trivial()
    assert Node("x", (LEAF, LEAF)) == x
