"""Caret trees encoding regular subdivisions of an interval.

A *caret system* fixes the ring and the caret types.  Each caret type is a
tuple of depth increments: a leaf of depth ``d`` (width ``lam**d``) split by a
caret of type ``(e1, e2, ...)`` yields children of depths ``d+e1, d+e2, ...``.

* ``TAU`` -- binary carets over Z[tau]: ``x = (2, 1)`` puts the short
  interval first, ``y = (1, 2)`` the long one.
* ``BETA`` -- ternary carets over Z[beta]: ``a = (2, 1, 1)``,
  ``b = (1, 2, 1)``, ``c = (1, 1, 2)`` named by the position of the short
  (``beta**2``) interval.

Trees are immutable.  Leaves are the singleton :data:`LEAF`; internal nodes
are :class:`Node` named tuples.  A *path* is a tuple of child positions from
the root (``0``/``1`` = ``L``/``R`` for binary trees).  Leaf *indices* in the
public functions are 1-based in-order positions.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from functools import cached_property
from typing import NamedTuple, Sequence, Union

from .rings import ZBeta, ZTau, beta_power, tau_power

__all__ = [
    "LEAF",
    "Node",
    "CaretSystem",
    "TAU",
    "BETA",
    "Op",
    "ShapeMismatchError",
    "leaf_count",
    "caret_count",
    "count_carets",
    "leaf_depths",
    "leaf_intervals",
    "widths",
    "subtree_at",
    "replace_at",
    "expand_leaf",
    "leaf_path",
    "basic_move",
    "make_type",
    "make_exposed",
    "unify",
    "replay",
    "realize",
    "spine",
    "is_exposed",
    "exposed_carets",
    "parse_path",
    "tree_to_json",
    "tree_from_json",
    "tree_to_dot",
    "enumerate_trees",
    "two_caret_shapes",
]


class ShapeMismatchError(ValueError):
    """A basic move was requested on a subtree of the wrong shape."""


class _Leaf:
    __slots__ = ()

    def __repr__(self):
        return "LEAF"

    def __reduce__(self):
        return (_leaf, ())


def _leaf():
    return LEAF


LEAF = _Leaf()


class Node(NamedTuple):
    caret: str
    children: tuple

    @property
    def left(self):
        return self.children[0]

    @property
    def right(self):
        return self.children[-1]

    def __repr__(self):
        inner = ", ".join(repr(c) for c in self.children)
        return f"{self.caret}({inner})"


Tree = Union[_Leaf, Node]
Path = tuple


class CaretSystem:
    """Ring, caret types and derived basic moves for one family of groups."""

    def __init__(self, name, ring, power, carets, symbol):
        self.name = name
        self.ring = ring
        self.power = power
        # insertion order is the preference order used by unify/realize
        self.carets = dict(carets)
        self.symbol = symbol
        arities = {len(v) for v in self.carets.values()}
        if len(arities) != 1:
            raise ValueError("all caret types must have the same arity")
        self.arity = arities.pop()
        self.leaves = (LEAF,) * self.arity

    def __repr__(self):
        return f"CaretSystem({self.name!r})"

    def __reduce__(self):
        return (_system_by_name, (self.name,))

    def caret(self, kind: str, *children) -> Node:
        if kind not in self.carets:
            raise ValueError(f"unknown caret type {kind!r} for {self.name}")
        if not children:
            children = self.leaves
        if len(children) != self.arity:
            raise ValueError(f"{self.name} carets have {self.arity} children")
        return Node(kind, tuple(children))

    @cached_property
    def shapes(self) -> dict:
        """Depth tuple of every two-caret shape ``(root, position, child)``."""
        return two_caret_shapes(self)

    @cached_property
    def move_classes(self) -> list:
        """Groups (size >= 2) of two-caret shapes giving the same subdivision."""
        groups: dict = {}
        for shape, depths in self.shapes.items():
            groups.setdefault(depths, []).append(shape)
        return [sorted(g, key=self._shape_key) for g in groups.values() if len(g) > 1]

    def _shape_key(self, shape):
        order = list(self.carets)
        return (order.index(shape[0]), shape[1], order.index(shape[2]))

    @cached_property
    def move_partners(self) -> dict:
        partners = {}
        for group in self.move_classes:
            for s in group:
                partners[s] = [t for t in group if t != s]
        return partners

    @cached_property
    def _conversions(self) -> dict:
        # shortest chains of moves changing the root caret type
        edges: dict = {c: [] for c in self.carets}
        for group in self.move_classes:
            for s, t in itertools.permutations(group, 2):
                if s[0] != t[0]:
                    edges[s[0]].append((s, t))
        table = {}
        for start in self.carets:
            seen = {start: []}
            queue = deque([start])
            while queue:
                cur = queue.popleft()
                for s, t in edges[cur]:
                    if t[0] not in seen:
                        seen[t[0]] = seen[cur] + [(s, t)]
                        queue.append(t[0])
            for goal, route in seen.items():
                table[start, goal] = route
        return table

    def conversion(self, source: str, target: str) -> list:
        try:
            return self._conversions[source, target]
        except KeyError:
            raise ValueError(
                f"no chain of basic moves turns a {source}-caret into a {target}-caret"
            ) from None

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()


TAU = CaretSystem("tau", ZTau, tau_power, {"x": (2, 1), "y": (1, 2)}, "t")
BETA = CaretSystem(
    "beta", ZBeta, beta_power, {"a": (2, 1, 1), "b": (1, 2, 1), "c": (1, 1, 2)}, "s"
)


def _system_by_name(name):
    return {"tau": TAU, "beta": BETA}[name]


class Op(NamedTuple):
    """One step of a unification script.

    ``kind`` is ``"expand"`` (``caret`` is the new caret type) or ``"move"``
    (``source``/``target`` are the two-caret shapes exchanged).
    """

    kind: str
    path: tuple
    caret: str | None = None
    source: tuple | None = None
    target: tuple | None = None


# ---------------------------------------------------------------- counting


def leaf_count(t: Tree) -> int:
    if t is LEAF:
        return 1
    return sum(leaf_count(c) for c in t.children)


def caret_count(t: Tree) -> int:
    if t is LEAF:
        return 0
    return 1 + sum(caret_count(c) for c in t.children)


def count_carets(t: Tree, kind: str) -> int:
    if t is LEAF:
        return 0
    return (t.caret == kind) + sum(count_carets(c, kind) for c in t.children)


def leaf_depths(t: Tree, system: CaretSystem, depth: int = 0) -> list:
    out: list = []
    _depths(t, system.carets, depth, out)
    return out


def _depths(t, carets, d, out):
    if t is LEAF:
        out.append(d)
        return
    for child, e in zip(t.children, carets[t.caret]):
        _depths(child, carets, d + e, out)


def leaf_intervals(t: Tree, system: CaretSystem = TAU) -> list:
    """In-order ``(left, depth)`` pairs; leaf ``k`` is ``[left, left + lam**depth)``."""
    pos = system.zero()
    out = []
    for d in leaf_depths(t, system):
        out.append((pos, d))
        pos = pos + system.power(d)
    return out


def widths(t: Tree, system: CaretSystem = TAU) -> list:
    return [system.power(d) for d in leaf_depths(t, system)]


def spine(carets: int, system: CaretSystem = TAU, kind: str | None = None) -> Tree:
    """Right-leaning chain of ``carets`` carets (all of the preferred type)."""
    kind = kind or next(iter(system.carets))
    t: Tree = LEAF
    for _ in range(carets):
        t = Node(kind, system.leaves[:-1] + (t,))
    return t


# ---------------------------------------------------------------- addressing


def parse_path(path) -> tuple:
    """Accept ``"LRR"``, ``"012"`` or a sequence of ints."""
    if isinstance(path, str):
        steps = []
        for ch in path.upper():
            if ch == "L":
                steps.append(0)
            elif ch == "R":
                steps.append(1)
            elif ch.isdigit():
                steps.append(int(ch))
            else:
                raise ValueError(f"bad path step {ch!r}")
        return tuple(steps)
    return tuple(path)


def subtree_at(t: Tree, path) -> Tree:
    for step in parse_path(path):
        if t is LEAF:
            raise IndexError("path runs past a leaf")
        t = t.children[step]
    return t


def replace_at(t: Tree, path, new: Tree) -> Tree:
    path = parse_path(path)
    if not path:
        return new
    if t is LEAF:
        raise IndexError("path runs past a leaf")
    step = path[0]
    kids = list(t.children)
    kids[step] = replace_at(kids[step], path[1:], new)
    return Node(t.caret, tuple(kids))


def leaf_path(t: Tree, index: int) -> tuple:
    """Path of the ``index``-th leaf (1-based)."""
    if index < 1:
        raise IndexError("leaf index out of range")
    path = []
    remaining = index
    while t is not LEAF:
        for k, child in enumerate(t.children):
            n = leaf_count(child)
            if remaining <= n:
                path.append(k)
                t = child
                break
            remaining -= n
        else:
            raise IndexError("leaf index out of range")
    if remaining != 1:
        raise IndexError("leaf index out of range")
    return tuple(path)


def leaf_index(t: Tree, path) -> int:
    """1-based index of the first leaf below ``path``."""
    index = 1
    for step in parse_path(path):
        for child in t.children[:step]:
            index += leaf_count(child)
        t = t.children[step]
    return index


def expand_leaf(t: Tree, leaf: int, caret: str, system: CaretSystem = TAU) -> Tree:
    """Replace leaf number ``leaf`` (1-based) by a single caret."""
    return replace_at(t, leaf_path(t, leaf), system.caret(caret))


# ---------------------------------------------------------------- basic moves


def _match_shapes(t: Tree, system: CaretSystem):
    if t is LEAF:
        return []
    found = []
    for pos, child in enumerate(t.children):
        if child is not LEAF:
            shape = (t.caret, pos, child.caret)
            if shape in system.move_partners:
                found.append(shape)
    return found


def _apply_shape(t: Node, source, target) -> Node:
    _, pos, _ = source
    inner = t.children[pos]
    slots = t.children[:pos] + inner.children + t.children[pos + 1 :]
    root, tpos, tchild = target
    n = len(t.children)
    new_inner = Node(tchild, slots[tpos : tpos + n])
    return Node(root, slots[:tpos] + (new_inner,) + slots[tpos + n :])


def basic_move(t: Tree, path=(), system: CaretSystem = TAU, source=None, target=None) -> Tree:
    """Exchange the two-caret configuration at ``path`` for an equivalent one.

    For binary trees the move is unique: ``x(., x(., .)) <-> y(y(., .), .)``.
    Ternary trees may offer several; pass ``source``/``target`` shapes
    ``(root, position, child)`` to pick one.
    """
    path = parse_path(path)
    sub = subtree_at(t, path)
    candidates = _match_shapes(sub, system)
    if source is not None:
        if tuple(source) not in candidates:
            raise ShapeMismatchError(f"subtree at {path} does not have shape {source}")
        candidates = [tuple(source)]
    if not candidates:
        raise ShapeMismatchError(f"no basic move applies at {path}")
    if len(candidates) > 1:
        raise ShapeMismatchError(f"ambiguous basic move at {path}: {candidates}")
    src = candidates[0]
    partners = system.move_partners[src]
    if target is not None:
        if tuple(target) not in partners:
            raise ShapeMismatchError(f"{target} is not equivalent to {src}")
        dst = tuple(target)
    elif len(partners) == 1:
        dst = partners[0]
    else:
        raise ShapeMismatchError(f"ambiguous target for {src}: {partners}")
    return replace_at(t, path, _apply_shape(sub, src, dst))


def make_type(t: Tree, caret: str, system: CaretSystem = TAU, _rec=None, _path=()) -> Tree:
    """Same subdivision (refined if needed) with a ``caret`` at the root.

    Leaves met along the way are expanded; ``_rec`` collects the script.
    """
    if t is LEAF:
        if _rec is not None:
            _rec.append(Op("expand", _path, caret=caret))
        return system.caret(caret)
    if t.caret == caret:
        return t
    for source, target in system.conversion(t.caret, caret):
        _, pos, child_type = source
        child = make_type(t.children[pos], child_type, system, _rec, _path + (pos,))
        kids = list(t.children)
        kids[pos] = child
        t = _apply_shape(Node(t.caret, tuple(kids)), source, target)
        if _rec is not None:
            _rec.append(Op("move", _path, source=source, target=target))
    return t


def is_exposed(t: Tree) -> bool:
    return t is not LEAF and all(c is LEAF for c in t.children)


def exposed_carets(t: Tree, kind: str | None = None, _path=()) -> list:
    """Paths of carets whose children are all leaves."""
    if t is LEAF:
        return []
    if is_exposed(t):
        return [_path] if kind in (None, t.caret) else []
    out = []
    for k, c in enumerate(t.children):
        out.extend(exposed_carets(c, kind, _path + (k,)))
    return out


def make_exposed(t: Tree, ynode=()) -> tuple:
    """Rearrange a y-caret with a bare left leg into an exposed y-caret.

    Two x-carets are added on the left leaf, turned into y-carets by a basic
    move, and the top pair is turned back into x-carets.  Returns
    ``(tree, exposed_path, expansions)`` where ``expansions`` lists the
    ``(leaf_index, caret)`` expansions, in order, that a partner tree needs.
    """
    ynode = parse_path(ynode)
    node = subtree_at(t, ynode)
    if node is LEAF or node.caret != "y" or node.left is not LEAF:
        raise ValueError("make_exposed needs a y-caret whose left child is a leaf")
    first = leaf_index(t, ynode)
    expansions = [(first, "x"), (first + 1, "x")]
    for leaf, caret in expansions:
        t = expand_leaf(t, leaf, caret)
    t = basic_move(t, ynode + (0,))
    t = basic_move(t, ynode)
    exposed = ynode + (0,)
    assert is_exposed(subtree_at(t, exposed)) and subtree_at(t, exposed).caret == "y"
    return t, exposed, expansions


# ---------------------------------------------------------------- unification


def _unify(a, b, system, path, ra, rb):
    if a is LEAF and b is LEAF:
        return a, b
    if a is LEAF:
        a = system.caret(b.caret)
        ra.append(Op("expand", path, caret=b.caret))
    elif b is LEAF:
        b = system.caret(a.caret)
        rb.append(Op("expand", path, caret=a.caret))
    elif a.caret != b.caret:
        order = list(system.carets)
        if order.index(a.caret) <= order.index(b.caret):
            b = make_type(b, a.caret, system, rb, path)
        else:
            a = make_type(a, b.caret, system, ra, path)
    ka, kb = [], []
    for k, (ca, cb) in enumerate(zip(a.children, b.children)):
        na, nb = _unify(ca, cb, system, path + (k,), ra, rb)
        ka.append(na)
        kb.append(nb)
    return Node(a.caret, tuple(ka)), Node(b.caret, tuple(kb))


def unify(a: Tree, b: Tree, system: CaretSystem = TAU) -> tuple:
    """Common refinement of two trees.

    Returns ``(common, script_a, script_b)``: replaying each script (leaf
    expansions and basic moves, see :func:`replay`) on its input yields
    ``common``.  Where the roots disagree the caret later in the system's
    preference order is converted.
    """
    ra: list = []
    rb: list = []
    ca, cb = _unify(a, b, system, (), ra, rb)
    assert ca == cb
    return ca, ra, rb


def replay(t: Tree, script: Sequence[Op], system: CaretSystem = TAU) -> Tree:
    for op in script:
        if op.kind == "expand":
            if subtree_at(t, op.path) is not LEAF:
                raise ValueError(f"script expands a non-leaf at {op.path}")
            t = replace_at(t, op.path, system.caret(op.caret))
        elif op.kind == "move":
            t = basic_move(t, op.path, system, source=op.source, target=op.target)
        else:
            raise ValueError(f"unknown script op {op.kind!r}")
    return t


# ---------------------------------------------------------------- realization


def realize(depths: Sequence[int], system: CaretSystem = TAU, root_depth: int = 0):
    """A tree whose leaves have the given depths, or ``None`` if none exists.

    Splits are tried in the system's caret preference order, so a subdivision
    reachable by x-carets alone comes back as an all-x tree.
    """
    n = len(depths)
    if n == 0:
        return None
    power = system.power
    prefix = [system.zero()]
    for d in depths:
        prefix.append(prefix[-1] + power(d))
    if prefix[-1] != power(root_depth):
        return None
    where = {p: i for i, p in enumerate(prefix)}
    carets = list(system.carets.items())
    memo: dict = {}

    def build(i, j, d):
        key = (i, j)
        if key in memo:
            return memo[key]
        if j - i == 1:
            result = LEAF if depths[i] == d else None
            memo[key] = result
            return result
        result = None
        for kind, incs in carets:
            cuts = [i]
            pos = prefix[i]
            for e in incs[:-1]:
                pos = pos + power(d + e)
                m = where.get(pos)
                if m is None or m >= j:
                    break
                cuts.append(m)
            else:
                cuts.append(j)
                kids = []
                for k, e in enumerate(incs):
                    sub = build(cuts[k], cuts[k + 1], d + e)
                    if sub is None:
                        break
                    kids.append(sub)
                else:
                    result = Node(kind, tuple(kids))
                    break
        memo[key] = result
        return result

    return build(0, n, root_depth)


# ---------------------------------------------------------------- enumeration


def enumerate_trees(carets: int, system: CaretSystem = TAU):
    """All trees with exactly ``carets`` carets (every shape, every typing)."""
    if carets == 0:
        yield LEAF
        return
    arity = system.arity
    for split in _compositions(carets - 1, arity):
        for kind in system.carets:
            for kids in itertools.product(*(list(enumerate_trees(k, system)) for k in split)):
                yield Node(kind, tuple(kids))


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def two_caret_shapes(system: CaretSystem) -> dict:
    """Map every shape ``(root, position, child)`` to its leaf-depth tuple."""
    out = {}
    for root, incs in system.carets.items():
        for pos in range(system.arity):
            for child in system.carets:
                kids = list(system.leaves)
                kids[pos] = system.caret(child)
                t = Node(root, tuple(kids))
                out[root, pos, child] = tuple(leaf_depths(t, system))
    return out


# ---------------------------------------------------------------- formats


def tree_to_json(t: Tree, system: CaretSystem = TAU):
    if t is LEAF:
        return "leaf"
    if system.arity == 2:
        return {
            "caret": t.caret,
            "left": tree_to_json(t.left, system),
            "right": tree_to_json(t.right, system),
        }
    return {"caret": t.caret, "children": [tree_to_json(c, system) for c in t.children]}


def tree_from_json(data, system: CaretSystem = TAU) -> Tree:
    if isinstance(data, str):
        if data == "leaf":
            return LEAF
        data = json.loads(data)
        return tree_from_json(data, system)
    if not isinstance(data, dict) or "caret" not in data:
        raise ValueError(f"not a tree: {data!r}")
    kind = str(data["caret"]).lower()
    if "children" in data:
        kids = data["children"]
    else:
        kids = [data["left"], data["right"]]
    return system.caret(kind, *(tree_from_json(k, system) for k in kids))


def tree_to_dot(t: Tree, name: str = "tree", labels: Sequence | None = None, prefix: str = "n") -> str:
    """Graphviz source; leaves are labelled 1, 2, ... unless ``labels`` given."""
    lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
    lines.extend(_dot_body(t, labels, prefix))
    lines.append("}")
    return "\n".join(lines)


def _dot_body(t, labels, prefix):
    lines = []
    counter = itertools.count()
    leaf_no = itertools.count()

    def walk(node):
        ident = f"{prefix}{next(counter)}"
        if node is LEAF:
            k = next(leaf_no)
            label = labels[k] if labels is not None else k + 1
            lines.append(f'  {ident} [shape=plaintext, label="{label}"];')
            return ident
        lines.append(f'  {ident} [label="{node.caret}"];')
        for child in node.children:
            lines.append(f"  {ident} -> {walk(child)};")
        return ident

    walk(t)
    return lines
