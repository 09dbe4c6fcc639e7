"""Tree-pair-permutation diagrams and their piecewise-linear maps.

A diagram ``(domain, perm, range)`` sends leaf ``i`` of the domain tree
affinely onto leaf ``perm[i]`` of the range tree.  Permutations are stored
0-based; the JSON form is 1-based.

Products are read left to right: ``f * g`` applies ``f`` first.  Equality
(``==``) is equality of group elements, decided on the canonical
:class:`PLMap`; use :meth:`TreePairDiagram.identical` to compare
representations.
"""
from __future__ import annotations

import json
from typing import NamedTuple, Sequence

from .trees import (
    LEAF,
    TAU,
    CaretSystem,
    Node,
    caret_count,
    count_carets,
    leaf_count,
    leaf_depths,
    leaf_intervals,
    realize,
    tree_from_json,
    tree_to_json,
    unify,
    _dot_body,
)

__all__ = [
    "Piece",
    "PLMap",
    "TreePairDiagram",
    "InvariantError",
    "to_plmap",
    "compose",
    "invert",
    "reduce",
    "equals",
    "equals_diagrammatic",
    "classify",
    "canonical_triple",
    "evaluate",
    "refine_range",
    "refine_domain",
    "diagram_to_json",
    "diagram_from_json",
    "diagram_to_dot",
]


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


# ---------------------------------------------------------------- PL maps


class Piece(NamedTuple):
    dom_left: object
    dom_right: object
    img_left: object
    slope: int

    def img_right(self, power):
        return self.img_left + power(self.slope) * (self.dom_right - self.dom_left)


class PLMap:
    """Left-continuous piecewise-linear bijection of (0, 1].

    Pieces are ``(dom_left, dom_right]`` intervals in domain order, each
    mapped with slope ``lam**slope`` onto ``(img_left, ...]``.  Adjacent
    pieces are merged whenever the slope is the same and the image continues,
    so two maps are equal exactly when their piece tuples are.
    """

    __slots__ = ("pieces", "system")

    def __init__(self, pieces: Sequence[Piece], system: CaretSystem = TAU, merge=True):
        self.system = system
        self.pieces = tuple(_merge(pieces, system.power)) if merge else tuple(pieces)

    @classmethod
    def identity(cls, system: CaretSystem = TAU):
        return cls([Piece(system.zero(), system.one(), system.zero(), 0)], system)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.system is other.system and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        body = ", ".join(
            f"({p.dom_left}, {p.dom_right}] -> {p.img_left} @ {self.system.symbol}^{p.slope}"
            for p in self.pieces
        )
        return f"PLMap[{body}]"

    def is_identity(self) -> bool:
        return self == PLMap.identity(self.system)

    def __call__(self, t):
        if not (t > 0 and t <= 1):
            raise ValueError(f"{t} is outside (0, 1]")
        power = self.system.power
        for p in self.pieces:
            if p.dom_left < t <= p.dom_right:
                return p.img_left + power(p.slope) * (t - p.dom_left)
        raise InvariantError("pieces do not cover (0, 1]")

    def breakpoints(self) -> list:
        return [p.dom_left for p in self.pieces[1:]]

    def then(self, other: PLMap) -> PLMap:
        """The map ``t -> other(self(t))``."""
        power = self.system.power
        qs = other.pieces
        out = []
        for p in self.pieces:
            fa = p.img_left
            fb = p.img_right(power)
            back = power(-p.slope)
            # first piece of ``other`` ending beyond fa
            lo, hi = 0, len(qs) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if qs[mid].dom_right <= fa:
                    lo = mid + 1
                else:
                    hi = mid
            for q in qs[lo:]:
                if q.dom_left >= fb:
                    break
                y0 = fa if fa > q.dom_left else q.dom_left
                y1 = fb if fb < q.dom_right else q.dom_right
                x0 = p.dom_left + back * (y0 - fa)
                x1 = p.dom_left + back * (y1 - fa)
                img = q.img_left + power(q.slope) * (y0 - q.dom_left)
                out.append(Piece(x0, x1, img, p.slope + q.slope))
        return PLMap(out, self.system)

    def inverse(self) -> PLMap:
        power = self.system.power
        flipped = [
            Piece(p.img_left, p.img_right(power), p.dom_left, -p.slope) for p in self.pieces
        ]
        flipped.sort(key=lambda q: float(q.dom_left))
        # float only orders distinct tiles; verify exactly
        for a, b in zip(flipped, flipped[1:]):
            if a.dom_right != b.dom_left:
                raise InvariantError("image pieces do not tile (0, 1]")
        return PLMap(flipped, self.system)

    def image_tiles(self) -> bool:
        """Do the image intervals tile (0, 1] exactly?"""
        power = self.system.power
        spans = sorted(
            ((p.img_left, p.img_right(power)) for p in self.pieces), key=lambda s: float(s[0])
        )
        pos = self.system.zero()
        for lo, hi in spans:
            if lo != pos or not hi > lo:
                return False
            pos = hi
        return pos == self.system.one()

    def domain_tiles(self) -> bool:
        pos = self.system.zero()
        for p in self.pieces:
            if p.dom_left != pos or not p.dom_right > p.dom_left:
                return False
            pos = p.dom_right
        return pos == self.system.one()

    def is_continuous(self) -> bool:
        power = self.system.power
        return all(
            a.img_right(power) == b.img_left for a, b in zip(self.pieces, self.pieces[1:])
        )


def _merge(pieces, power):
    out = []
    for p in pieces:
        if out:
            last = out[-1]
            if (
                last.slope == p.slope
                and last.dom_right == p.dom_left
                and last.img_right(power) == p.img_left
            ):
                out[-1] = Piece(last.dom_left, p.dom_right, last.img_left, last.slope)
                continue
        out.append(p)
    return out


# ---------------------------------------------------------------- diagrams


class TreePairDiagram:
    """One element of V_tau (or V_beta) as ``(domain, perm, range)``."""

    __slots__ = ("domain", "perm", "range", "system", "_plmap")

    def __init__(self, domain, perm, range, system: CaretSystem = TAU, check: bool = True):
        self.domain = domain
        self.perm = tuple(perm)
        self.range = range
        self.system = system
        self._plmap = None
        if check:
            k = leaf_count(domain)
            if leaf_count(range) != k:
                raise ValueError("domain and range trees have different leaf counts")
            if sorted(self.perm) != list(range_(k)):
                raise ValueError(f"perm {self.perm} is not a permutation of {k} leaves")

    @classmethod
    def identity(cls, system: CaretSystem = TAU):
        return cls(LEAF, (0,), LEAF, system, check=False)

    @property
    def leaves(self) -> int:
        return len(self.perm)

    @property
    def carets(self) -> int:
        return len(self.perm) - 1

    def __repr__(self):
        one_based = [p + 1 for p in self.perm]
        return f"TreePairDiagram({self.domain!r}, {one_based}, {self.range!r})"

    def identical(self, other) -> bool:
        return (
            self.system is other.system
            and self.domain == other.domain
            and self.perm == other.perm
            and self.range == other.range
        )

    @property
    def plmap(self) -> PLMap:
        if self._plmap is None:
            self._plmap = to_plmap(self)
        return self._plmap

    def __eq__(self, other):
        if not isinstance(other, TreePairDiagram):
            return NotImplemented
        return equals(self, other)

    def __hash__(self):
        return hash(self.plmap)

    def __mul__(self, other):
        if not isinstance(other, TreePairDiagram):
            return NotImplemented
        return compose(self, other)

    def __invert__(self):
        return invert(self)

    def inverse(self):
        return invert(self)

    def __pow__(self, n: int):
        if n < 0:
            return invert(self) ** (-n)
        result = TreePairDiagram.identity(self.system)
        base = self
        while n:
            if n & 1:
                result = compose(result, base)
            base = compose(base, base)
            n >>= 1
        return result

    def __call__(self, t):
        return evaluate(self, t)

    def is_trivial(self) -> bool:
        """Is this literally the one-leaf identity diagram?"""
        return self.domain is LEAF and self.range is LEAF

    def expand(self, leaf: int, caret: str):
        """Add ``caret`` at domain leaf ``leaf`` (1-based) and at its image."""
        return expand_diagram(self, leaf - 1, caret)

    def count(self, caret: str) -> int:
        return count_carets(self.domain, caret) + count_carets(self.range, caret)


range_ = range


def expand_diagram(v: TreePairDiagram, i: int, caret: str) -> TreePairDiagram:
    """Expansion at 0-based domain leaf ``i``; the image leaf gets the same caret."""
    from .trees import expand_leaf

    j = v.perm[i]
    sys = v.system
    domain = expand_leaf(v.domain, i + 1, caret, sys)
    rng = expand_leaf(v.range, j + 1, caret, sys)
    n = sys.arity
    perm = []
    for a, b in enumerate(v.perm):
        if a == i:
            perm.extend(j + t for t in range_(n))
        else:
            perm.append(b + (n - 1 if b > j else 0))
    return TreePairDiagram(domain, perm, rng, sys, check=False)


# ---------------------------------------------------------------- semantics


def to_plmap(v: TreePairDiagram) -> PLMap:
    sys = v.system
    power = sys.power
    dom = leaf_intervals(v.domain, sys)
    rng = leaf_intervals(v.range, sys)
    pieces = []
    for i, (left, d) in enumerate(dom):
        img_left, e = rng[v.perm[i]]
        pieces.append(Piece(left, left + power(d), img_left, e - d))
    return PLMap(pieces, sys)


def evaluate(v: TreePairDiagram, t):
    """Exact image of ``t`` in (0, 1] under the left-continuous map."""
    return v.plmap(t)


def equals(u: TreePairDiagram, v: TreePairDiagram) -> bool:
    """Do ``u`` and ``v`` define the same map of (0, 1]?"""
    if u.system is not v.system:
        return False
    if u.identical(v):
        return True
    return u.plmap == v.plmap


def equals_diagrammatic(u: TreePairDiagram, v: TreePairDiagram) -> bool:
    """Cross-check of :func:`equals`: reduce ``u * v**-1`` to the trivial diagram."""
    return reduce(compose(u, invert(v))).is_trivial()


def invert(v: TreePairDiagram) -> TreePairDiagram:
    inv = [0] * len(v.perm)
    for i, j in enumerate(v.perm):
        inv[j] = i
    return TreePairDiagram(v.range, inv, v.domain, v.system, check=False)


# ---------------------------------------------------------------- refinement


def _groups(old_tree, new_tree, system):
    """Relative depths of the leaves of ``new_tree`` inside each old leaf."""
    power = system.power
    one = system.one()
    new = leaf_depths(new_tree, system)
    k = 0
    out = []
    for d in leaf_depths(old_tree, system):
        acc = system.zero()
        rel = []
        while acc != one:
            if k >= len(new) or acc > one:
                raise InvariantError("new tree does not refine the old one")
            e = new[k] - d
            acc = acc + power(e)
            rel.append(e)
            k += 1
        out.append(rel)
    if k != len(new):
        raise InvariantError("new tree does not refine the old one")
    return out


def _graft(t, subtrees, counter=None):
    if counter is None:
        counter = [0]
    if t is LEAF:
        sub = subtrees[counter[0]]
        counter[0] += 1
        return sub
    return Node(t.caret, tuple(_graft(c, subtrees, counter) for c in t.children))


def _refinements(groups, system):
    subs = []
    for rel in groups:
        if len(rel) == 1:
            subs.append(LEAF)
            continue
        sub = realize(rel, system)
        if sub is None:
            raise InvariantError(f"refinement {rel} is not realizable")
        subs.append(sub)
    return subs


def refine_range(v: TreePairDiagram, new_range) -> TreePairDiagram:
    """Same element with ``new_range`` (a refinement of ``v.range``) as range."""
    if new_range == v.range:
        return v
    sys = v.system
    groups = _groups(v.range, new_range, sys)
    subs = _refinements(groups, sys)
    starts = _offsets(len(g) for g in groups)
    domain = _graft(v.domain, [subs[j] for j in v.perm])
    perm = []
    for j in v.perm:
        perm.extend(range_(starts[j], starts[j] + len(groups[j])))
    return TreePairDiagram(domain, perm, new_range, sys, check=False)


def refine_domain(v: TreePairDiagram, new_domain) -> TreePairDiagram:
    """Same element with ``new_domain`` (a refinement of ``v.domain``) as domain."""
    if new_domain == v.domain:
        return v
    sys = v.system
    groups = _groups(v.domain, new_domain, sys)
    subs = _refinements(groups, sys)
    k = len(v.perm)
    inv = [0] * k
    for i, j in enumerate(v.perm):
        inv[j] = i
    rng = _graft(v.range, [subs[inv[j]] for j in range_(k)])
    starts = _offsets(len(groups[inv[j]]) for j in range_(k))
    perm = []
    for i, j in enumerate(v.perm):
        perm.extend(range_(starts[j], starts[j] + len(groups[i])))
    return TreePairDiagram(new_domain, perm, rng, sys, check=False)


def _offsets(sizes):
    out = []
    pos = 0
    for s in sizes:
        out.append(pos)
        pos += s
    return out


def compose(f: TreePairDiagram, g: TreePairDiagram) -> TreePairDiagram:
    """``f`` then ``g``."""
    if f.system is not g.system:
        raise ValueError("cannot compose diagrams from different groups")
    if f.range == g.domain:
        fr, gr = f, g
    else:
        common, _, _ = unify(f.range, g.domain, f.system)
        fr = refine_range(f, common)
        gr = refine_domain(g, common)
    perm = tuple(gr.perm[j] for j in fr.perm)
    return TreePairDiagram(fr.domain, perm, gr.range, f.system, check=False)


# ---------------------------------------------------------------- reduction


def reduce(v: TreePairDiagram) -> TreePairDiagram:
    """Remove redundant carets, including hidden cancellations.

    Runs of ``arity`` consecutive domain leaves that land, in order and with
    one common slope, on consecutive range leaves are merged whenever both
    coarser subdivisions are still realizable by some tree; the trees are then
    rebuilt from the subdivisions.  The element is unchanged and every merge
    removes one caret from each tree.
    """
    sys = v.system
    n = sys.arity
    dom = leaf_depths(v.domain, sys)
    rng = leaf_depths(v.range, sys)
    perm = list(v.perm)
    carets = list(sys.carets.values())
    merged_any = False
    i = 0
    while i + n <= len(perm):
        j0 = perm[i]
        hit = None
        if all(perm[i + t] == j0 + t for t in range_(1, n)):
            shift = rng[j0] - dom[i]
            if all(rng[j0 + t] - dom[i + t] == shift for t in range_(1, n)):
                for incs in carets:
                    base = dom[i] - incs[0]
                    if all(dom[i + t] == base + incs[t] for t in range_(n)):
                        hit = base
                        break
        if hit is not None:
            new_dom = dom[:i] + [hit] + dom[i + n :]
            new_rng = rng[:j0] + [hit + shift] + rng[j0 + n :]
            if realize(new_dom, sys) is not None and realize(new_rng, sys) is not None:
                dom, rng = new_dom, new_rng
                perm = [p if p <= j0 else p - (n - 1) for t, p in enumerate(perm) if not (i < t < i + n)]
                merged_any = True
                i = max(0, i - n)
                continue
        i += 1
    if not merged_any:
        return v
    return TreePairDiagram(realize(dom, sys), perm, realize(rng, sys), sys, check=False)


# ---------------------------------------------------------------- classification


def classify(v: TreePairDiagram) -> str:
    """``"F"``, ``"T"`` or ``"V"``: the smallest of the three groups containing ``v``."""
    k = len(v.perm)
    s = v.perm[0]
    if all(v.perm[i] == (i + s) % k for i in range_(k)):
        return "F" if s == 0 else "T"
    return "V"


# ---------------------------------------------------------------- canonical triples


def _all_x(t):
    from .trees import make_type

    if t is LEAF:
        return t
    t = make_type(t, "x", TAU)
    return Node("x", (_all_x(t.left), _all_x(t.right)))


def _normalize(t):
    # y-carets end up with a bare left leg; only x-carets are ever added
    if t is LEAF:
        return t
    t = Node(t.caret, tuple(_normalize(c) for c in t.children))
    return t if t.caret == "x" else _fix_y(t)


def _fix_y(t):
    left, c = t.children
    if left is LEAF:
        return t
    if left.caret == "y":
        # y(y(l, b), c) -> x(l, x(b, c))
        return Node("x", (left.left, Node("x", (left.right, c))))
    a, b = left.children
    b1, b2 = _x_rooted(b).children
    # x(a, x(b1, b2)) -> y(y(a, b1), b2), then y(y(P, b2), c) -> x(P, x(b2, c))
    return Node("x", (_fix_y(Node("y", (a, b1))), Node("x", (b2, c))))


def _x_rooted(b):
    if b is LEAF:
        return Node("x", (LEAF, LEAF))
    if b.caret == "x":
        return b
    # y(l, e): refine l by two x-carets, then two basic moves
    return Node("x", (Node("y", (LEAF, LEAF)), Node("x", (LEAF, b.right))))


def _x_chain(t):
    if t is LEAF:
        return t
    if t.caret == "x":
        return Node("x", (t.left, _x_chain(t.right)))
    return Node("x", (Node("y", (LEAF, LEAF)), Node("x", (LEAF, _x_chain(t.right)))))


def _is_normal(t) -> bool:
    if t is LEAF:
        return True
    if t.caret == "y" and t.left is not LEAF:
        return False
    return all(_is_normal(c) for c in t.children)


def _right_chain_x(t) -> bool:
    while t is not LEAF:
        if t.caret != "x":
            return False
        t = t.right
    return True


def canonical_triple(v: TreePairDiagram) -> TreePairDiagram:
    """Equivalent diagram with an all-x range tree and a domain tree whose
    y-carets have no left children (binary groups only).

    The domain's right-hand chain is also made of x-carets, which is what the
    normal-form reader in :mod:`irrthompson.presentation` relies on.
    """
    if v.system is not TAU:
        raise ValueError("canonical triples are defined for the tau groups")
    v = reduce(v)
    v = refine_range(v, _all_x(v.range))
    v = refine_domain(v, _normalize(v.domain))
    v = refine_domain(v, _x_chain(v.domain))
    if count_carets(v.range, "y") or not _is_normal(v.domain) or not _right_chain_x(v.domain):
        raise InvariantError("canonical triple construction broke its own postcondition")
    return v


# ---------------------------------------------------------------- formats


def diagram_to_json(v: TreePairDiagram) -> dict:
    return {
        "domain": tree_to_json(v.domain, v.system),
        "perm": [p + 1 for p in v.perm],
        "range": tree_to_json(v.range, v.system),
    }


def diagram_from_json(data, system: CaretSystem = TAU) -> TreePairDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    perm = [int(p) - 1 for p in data["perm"]]
    return TreePairDiagram(
        tree_from_json(data["domain"], system), perm, tree_from_json(data["range"], system), system
    )


def diagram_to_dot(v: TreePairDiagram, name: str = "diagram") -> str:
    """Both trees side by side.

    Domain leaves are numbered in order.  Range leaves carry the number of
    the domain leaf landing there; for elements of T only the image of leaf 1
    is marked, with a circle.
    """
    k = len(v.perm)
    kind = classify(v)
    inv = [0] * k
    for i, j in enumerate(v.perm):
        inv[j] = i
    if kind == "V":
        labels = [str(inv[j] + 1) for j in range_(k)]
    else:
        labels = ["&#9675;" if inv[j] == 0 else "" for j in range_(k)]
        if kind == "F":
            labels = [""] * k
    lines = [f"digraph {name} {{", "  node [shape=circle, fontsize=10];"]
    lines.append("  subgraph cluster_domain {")
    lines.append('    label="domain";')
    lines.extend("  " + s for s in _dot_body(v.domain, [str(i + 1) for i in range_(k)], "d"))
    lines.append("  }")
    lines.append("  subgraph cluster_range {")
    lines.append('    label="range";')
    lines.extend("  " + s for s in _dot_body(v.range, labels, "r"))
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines)


def diagram_summary(v: TreePairDiagram) -> dict:
    return {
        "leaves": v.leaves,
        "carets": caret_count(v.domain),
        "class": classify(v),
    }
