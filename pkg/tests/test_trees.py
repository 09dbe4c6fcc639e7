import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from irrthompson.rings import ZBeta, ZTau, tau_power
from irrthompson.trees import (
    BETA,
    LEAF,
    TAU,
    Node,
    ShapeMismatchError,
    basic_move,
    caret_count,
    enumerate_trees,
    expand_leaf,
    exposed_carets,
    is_exposed,
    leaf_count,
    leaf_depths,
    leaf_index,
    leaf_intervals,
    leaf_path,
    make_exposed,
    make_type,
    parse_path,
    realize,
    replay,
    spine,
    subtree_at,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    unify,
    widths,
)

X = TAU.caret("x")
Y = TAU.caret("y")
t = ZTau(0, 1)


def trees(system, max_carets=6):
    """Random trees grown by expanding random leaves."""

    @st.composite
    def build(draw):
        tree = LEAF
        for _ in range(draw(st.integers(0, max_carets))):
            leaf = draw(st.integers(1, leaf_count(tree)))
            caret = draw(st.sampled_from(list(system.carets)))
            tree = expand_leaf(tree, leaf, caret, system)
        return tree

    return build()


def _moves(tree, system, path=()):
    """Every tree one basic move away from ``tree``."""
    if tree is LEAF:
        return
    for src, partners in system.move_partners.items():
        _, pos, child = src
        kid = tree.children[pos]
        if kid is not LEAF and kid.caret == child and tree.caret == src[0]:
            for dst in partners:
                yield basic_move(tree, (), system, source=src, target=dst)
    for k, c in enumerate(tree.children):
        for moved in _moves(c, system):
            kids = list(tree.children)
            kids[k] = moved
            yield Node(tree.caret, tuple(kids))


def _key(tree, system):
    return tuple(leaf_intervals(tree, system))


# ---------------------------------------------------------------- examples


def test_single_x_caret_intervals():
    assert leaf_intervals(X) == [(ZTau(0, 0), 2), (t * t, 1)]


def test_single_y_caret_intervals():
    assert leaf_intervals(Y) == [(ZTau(0, 0), 1), (t, 2)]


def test_x_with_x_on_right_intervals():
    tree = Node("x", (LEAF, X))
    assert leaf_intervals(tree) == [(ZTau(0, 0), 2), (t**2, 3), (t**2 + t**3, 2)]


def test_unify_x_and_y_widths():
    common, sa, sb = unify(X, Y)
    assert widths(common) == [t**2, t**3, t**2]
    assert replay(X, sa) == common and replay(Y, sb) == common


def test_basic_move_binary_example():
    left = Node("x", (LEAF, X))
    right = Node("y", (Y, LEAF))
    assert basic_move(left) == right
    assert basic_move(right) == left


def test_binary_has_one_move_pair():
    assert TAU.move_classes == [[("x", 1, "x"), ("y", 0, "y")]]


def test_ternary_move_pairs():
    pairs = sorted(tuple(g) for g in BETA.move_classes)
    assert pairs == [
        (("a", 1, "a"), ("b", 0, "b")),
        (("a", 1, "b"), ("b", 0, "c")),
        (("b", 2, "a"), ("c", 1, "b")),
        (("b", 2, "b"), ("c", 1, "c")),
    ]


def test_ternary_caret_widths():
    for kind, incs in BETA.carets.items():
        total = sum((BETA.power(e) for e in incs), ZBeta(0, 0))
        assert total == 1, kind


def test_no_move_raises():
    with pytest.raises(ShapeMismatchError):
        basic_move(X)


def test_paths_and_indices():
    tree = Node("x", (Y, X))
    assert parse_path("LR") == (0, 1)
    assert leaf_path(tree, 3) == (1, 0)
    assert leaf_index(tree, "R") == 3
    assert subtree_at(tree, "L") == Y
    with pytest.raises(IndexError):
        leaf_path(tree, 5)


def test_spine_shape():
    s = spine(3)
    assert caret_count(s) == 3 and leaf_depths(s, TAU) == [2, 3, 4, 3]


def test_make_exposed_example():
    tree = Node("y", (LEAF, X))
    new, path, expansions = make_exposed(tree)
    assert is_exposed(subtree_at(new, path)) and subtree_at(new, path).caret == "y"
    grown = tree
    for leaf, caret in expansions:
        grown = expand_leaf(grown, leaf, caret)
    assert leaf_intervals(grown) == leaf_intervals(new)


def test_realize_impossible():
    assert realize([1, 1]) is None
    assert realize([2, 1]) == X


def test_dot_output():
    dot = tree_to_dot(Node("x", (Y, LEAF)))
    assert dot.startswith("digraph") and dot.count("->") == 4


# ---------------------------------------------------------------- exhaustive


@pytest.mark.parametrize("system, limit", [(TAU, 4), (BETA, 3)])
def test_same_intervals_iff_connected_by_moves(system, limit):
    """Brute force over every tree with a given caret count."""
    for n in range(limit + 1):
        all_trees = list(enumerate_trees(n, system))
        index = {tr: k for k, tr in enumerate(all_trees)}
        parent = list(range(len(all_trees)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for tr in all_trees:
            for moved in _moves(tr, system):
                assert _key(moved, system) == _key(tr, system)
                parent[find(index[tr])] = find(index[moved])
        by_key: dict = {}
        for tr in all_trees:
            by_key.setdefault(_key(tr, system), set()).add(find(index[tr]))
        assert all(len(roots) == 1 for roots in by_key.values())


# ---------------------------------------------------------------- properties


@given(trees(TAU))
def test_intervals_partition_unit(tree):
    iv = leaf_intervals(tree)
    end = iv[-1][0] + tau_power(iv[-1][1])
    assert end == 1 and iv[0][0] == 0
    assert len(iv) == caret_count(tree) + 1


@given(trees(BETA, 5))
def test_beta_intervals_partition_unit(tree):
    iv = leaf_intervals(tree, BETA)
    assert iv[-1][0] + BETA.power(iv[-1][1]) == 1
    assert len(iv) == 2 * caret_count(tree) + 1


@given(trees(TAU), trees(TAU))
def test_unify_gives_common_refinement(a, b):
    common, sa, sb = unify(a, b)
    assert replay(a, sa) == common and replay(b, sb) == common
    cuts = {p for p, _ in leaf_intervals(common)}
    assert {p for p, _ in leaf_intervals(a)} <= cuts
    assert {p for p, _ in leaf_intervals(b)} <= cuts


@given(trees(BETA, 4), trees(BETA, 4))
def test_beta_unify(a, b):
    common, sa, sb = unify(a, b, BETA)
    assert replay(a, sa, BETA) == common and replay(b, sb, BETA) == common


@given(trees(TAU))
def test_realize_round_trip(tree):
    again = realize(leaf_depths(tree, TAU))
    assert again is not None and leaf_intervals(again) == leaf_intervals(tree)


@given(trees(TAU), st.sampled_from("xy"))
def test_make_type_keeps_cuts(tree, caret):
    new = make_type(tree, caret)
    assert new.caret == caret
    cuts = {p for p, _ in leaf_intervals(new)}
    assert {p for p, _ in leaf_intervals(tree)} <= cuts


@given(trees(TAU))
def test_json_round_trip(tree):
    assert tree_from_json(tree_to_json(tree)) == tree


@given(trees(BETA, 4))
def test_beta_json_round_trip(tree):
    assert tree_from_json(tree_to_json(tree, BETA), BETA) == tree


@given(trees(TAU))
def test_moves_preserve_intervals(tree):
    for moved in itertools.islice(_moves(tree, TAU), 10):
        assert leaf_intervals(moved) == leaf_intervals(tree)


@given(trees(TAU))
def test_exposed_carets_are_exposed(tree):
    for p in exposed_carets(tree):
        assert is_exposed(subtree_at(tree, p))
