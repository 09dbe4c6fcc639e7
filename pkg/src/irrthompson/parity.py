"""The y-parity homomorphism and the generation of its kernel by permutations.

``y_parity`` sends ``x_n``, ``c_n`` and ``pi_n`` to 0 and ``y_n`` to 1.  On a
diagram it is the number of y-carets in both trees, mod 2: expansions add
two carets of one type, basic moves change the y-count by 0 or 2.

The factorization routines follow the constructive argument that the kernel
V_xz is generated by permutations and then by proper transpositions; every
stage is recorded so tests can check the intermediate diagrams too.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .diagrams import (
    TreePairDiagram,
    canonical_triple,
    classify,
    compose,
    equals,
    expand_diagram,
    invert,
    reduce,
    refine_domain,
)
from .presentation import compile_word, GeneratorSymbol, GeneratorWord
from .trees import (
    LEAF,
    TAU,
    Node,
    basic_move,
    count_carets,
    expand_leaf,
    exposed_carets,
    is_exposed,
    leaf_count,
    leaf_index,
    leaf_intervals,
    leaf_path,
    make_exposed,
    replace_at,
    subtree_at,
)

__all__ = [
    "ParityError",
    "y_parity",
    "member",
    "GROUPS",
    "z_generator",
    "ProperTransposition",
    "PermutationFactorization",
    "factor_into_permutations",
    "factor_into_proper_transpositions",
    "conjugator",
    "CommutatorResult",
    "commutator_transposition",
    "random_proper_transposition",
    "product",
]

GROUPS = ("Ftau", "Ttau", "Vtau", "Txz", "Vxz")


class ParityError(ValueError):
    """The element is not in the kernel of the y-parity map."""


def y_parity(v: TreePairDiagram) -> int:
    return (count_carets(v.domain, "y") + count_carets(v.range, "y")) % 2


def member(v: TreePairDiagram, group: str) -> bool:
    """Membership in F_tau, T_tau, V_tau or the index-two kernels T_xz, V_xz."""
    kind = classify(v)
    if group == "Ftau":
        return kind == "F"
    if group == "Ttau":
        return kind in ("F", "T")
    if group == "Vtau":
        return True
    if group == "Txz":
        return kind in ("F", "T") and y_parity(v) == 0
    if group == "Vxz":
        return y_parity(v) == 0
    raise ValueError(f"unknown group {group!r}; expected one of {GROUPS}")


@lru_cache(maxsize=None)
def z_generator(n: int) -> TreePairDiagram:
    """``z_n = y_{2n} y_{2n+2}``, a kernel element of F_tau."""
    if n < 0:
        raise ValueError("z_n needs n >= 0")
    return compile_word(GeneratorWord([GeneratorSymbol("y", 2 * n), GeneratorSymbol("y", 2 * n + 2)]))


def product(factors, system=TAU) -> TreePairDiagram:
    result = TreePairDiagram.identity(system)
    for f in factors:
        result = compose(result, getattr(f, "diagram", f))
    return result


# ---------------------------------------------------------------- permutations


def _is_permutation_diagram(v: TreePairDiagram) -> bool:
    return v.domain == v.range


def _perm_fixing(k, assign) -> tuple:
    """A permutation of ``range(k)`` with the prescribed values, others in order."""
    perm = [None] * k
    used = set()
    for i, val in assign.items():
        perm[i] = val
        used.add(val)
    rest = iter(j for j in range(k) if j not in used)
    return tuple(p if p is not None else next(rest) for p in perm)


def _inverse(perm) -> tuple:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _remove_pair(v: TreePairDiagram, dpath, rpath) -> TreePairDiagram:
    """Delete an exposed caret in each tree whose leaves map onto each other in order."""
    n = v.system.arity
    i = leaf_index(v.domain, dpath) - 1
    j = leaf_index(v.range, rpath) - 1
    if any(v.perm[i + t] != j + t for t in range(n)):
        raise AssertionError("carets are not matched by the permutation")
    perm = [p if p <= j else p - (n - 1) for t, p in enumerate(v.perm) if not (i < t < i + n)]
    return TreePairDiagram(
        replace_at(v.domain, dpath, LEAF), perm, replace_at(v.range, rpath, LEAF), v.system, check=False
    )


def _y_paths(t, path=()):
    if t is LEAF:
        return []
    out = [path] if t.caret == "y" else []
    for k, c in enumerate(t.children):
        out.extend(_y_paths(c, path + (k,)))
    return out


@dataclass
class PermutationFactorization:
    """Factors ``(S, sigma, S)`` with ``v = factors[0] * factors[1] * ...``.

    ``stages`` holds the remaining diagram after each elimination step and
    ``y_counts`` its y-caret count (both trees); ``pairings`` is the number
    of y-pair eliminations.
    """

    factors: list = field(default_factory=list)
    stages: list = field(default_factory=list)
    y_counts: list = field(default_factory=list)
    pairings: int = 0

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]


def _record(result, v):
    result.stages.append(v)
    result.y_counts.append(count_carets(v.domain, "y") + count_carets(v.range, "y"))


def _pull_off(result, v, sigma):
    # v = (T, sigma^-1, T) * (T, pi o sigma, S)
    if any(s != i for i, s in enumerate(sigma)):
        result.factors.append(TreePairDiagram(v.domain, _inverse(sigma), v.domain, v.system, check=False))
    return TreePairDiagram(v.domain, tuple(v.perm[s] for s in sigma), v.range, v.system, check=False)


def factor_into_permutations(v: TreePairDiagram) -> PermutationFactorization:
    """Write an element of V_xz as a product of permutation diagrams.

    The y-carets of the domain tree are paired off left to right: one of the
    pair is made exposed, a y-caret added under the other (and, through the
    permutation, in the range tree) turns it into x-carets, and a leaf
    permutation lines up the two exposed y-carets so they cancel.  The
    all-x diagram that remains is dismantled one exposed pair at a time.
    """
    if y_parity(v) != 0:
        raise ParityError("element has odd y-parity, so it is not in V_xz")
    result = PermutationFactorization()
    if _is_permutation_diagram(v):
        _record(result, v)
        if not reduce(v).is_trivial():
            result.factors.append(v)
        return result
    v = canonical_triple(v)
    _record(result, v)
    while True:
        ys = _y_paths(v.domain)
        if not ys:
            break
        if count_carets(v.range, "y"):
            raise AssertionError("range tree picked up a y-caret")
        exposed = [p for p in ys if is_exposed(subtree_at(v.domain, p))]
        if not exposed:
            tree, _, _ = make_exposed(v.domain, ys[0])
            v = refine_domain(v, tree)
            ys = _y_paths(v.domain)
            exposed = [p for p in ys if is_exposed(subtree_at(v.domain, p))]
        c1 = exposed[0]
        c2 = next(p for p in ys if p != c1)
        if subtree_at(v.domain, c2).children[0] is not LEAF:
            raise AssertionError("y-caret with a non-trivial left child")
        # add a y-caret on the left leaf of c2, mirrored in the range tree
        leaf = leaf_index(v.domain, c2) - 1
        v = expand_diagram(v, leaf, "y")
        # y(y(a, b), r) -> x(a, x(b, r))
        v = TreePairDiagram(basic_move(v.domain, c2), v.perm, v.range, v.system, check=False)
        if c1[: len(c2) + 1] == c2 + (1,):
            # the move pushed c2's right subtree one level down
            c1 = c2 + (1, 1) + c1[len(c2) + 1 :]
        i1 = leaf_index(v.domain, c1) - 1
        d1 = _path_of_leaf_parent(v.range, v.perm[leaf])
        j1 = leaf_index(v.range, d1) - 1
        inv = _inverse(v.perm)
        sigma = _perm_fixing(len(v.perm), {i1: inv[j1], i1 + 1: inv[j1 + 1]})
        v = _pull_off(result, v, sigma)
        v = _remove_pair(v, c1, d1)
        result.pairings += 1
        _record(result, v)
    # only x-carets left: cancel exposed pairs directly
    while not v.is_trivial():
        dpath = exposed_carets(v.domain)[0]
        rpath = exposed_carets(v.range)[0]
        i1 = leaf_index(v.domain, dpath) - 1
        j1 = leaf_index(v.range, rpath) - 1
        inv = _inverse(v.perm)
        sigma = _perm_fixing(len(v.perm), {i1: inv[j1], i1 + 1: inv[j1 + 1]})
        v = _pull_off(result, v, sigma)
        v = _remove_pair(v, dpath, rpath)
        _record(result, v)
    return result


def _path_of_leaf_parent(t, leaf0):
    """Path of the caret just above leaf ``leaf0`` (0-based)."""
    return leaf_path(t, leaf0 + 1)[:-1]


# ---------------------------------------------------------------- transpositions


class ProperTransposition:
    """``(T, pi, T)`` with ``pi`` a 2-cycle and ``T`` carrying at least three carets."""

    __slots__ = ("diagram",)

    def __init__(self, diagram: TreePairDiagram):
        if diagram.domain != diagram.range:
            raise ValueError("a proper transposition has equal domain and range trees")
        moved = [i for i, p in enumerate(diagram.perm) if p != i]
        if len(moved) != 2:
            raise ValueError(f"permutation {diagram.perm} is not a transposition")
        if diagram.carets < 3:
            raise ValueError("a proper transposition needs at least three carets")
        self.diagram = diagram

    @classmethod
    def on(cls, tree, a: int, b: int, system=TAU):
        """Swap 0-based leaves ``a`` and ``b`` of ``tree``."""
        from .trees import leaf_count

        perm = list(range(leaf_count(tree)))
        perm[a], perm[b] = perm[b], perm[a]
        return cls(TreePairDiagram(tree, perm, tree, system))

    @property
    def tree(self):
        return self.diagram.domain

    @property
    def involved(self) -> tuple:
        return tuple(i for i, p in enumerate(self.diagram.perm) if p != i)

    def __repr__(self):
        a, b = self.involved
        return f"ProperTransposition({self.tree!r}, swap {a + 1}<->{b + 1})"

    def __eq__(self, other):
        other = getattr(other, "diagram", other)
        return equals(self.diagram, other)

    def __hash__(self):
        return hash(self.diagram)


def _pad_orbit(v: TreePairDiagram) -> TreePairDiagram:
    """Add an x-caret under every leaf of the smallest cycle; trees stay equal."""
    k = len(v.perm)
    seen = set()
    best = None
    for s in range(k):
        if s in seen:
            continue
        orbit = [s]
        seen.add(s)
        j = v.perm[s]
        while j != s:
            orbit.append(j)
            seen.add(j)
            j = v.perm[j]
        if best is None or len(orbit) < len(best):
            best = orbit
    for leaf in sorted(best, reverse=True):
        v = expand_diagram(v, leaf, "x")
    return v


def _transpositions(perm) -> list:
    """Transpositions ``(a, b)`` whose left-to-right product is ``perm``."""
    out = []
    seen = set()
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cycle = [s]
        seen.add(s)
        j = perm[s]
        while j != s:
            cycle.append(j)
            seen.add(j)
            j = perm[j]
        # (c0 c1 ... cm) applied first-to-last: swap (c0 cm), ..., (c0 c1) read right to left
        for t in range(len(cycle) - 1, 0, -1):
            out.append((cycle[0], cycle[t]))
    return out


def _check_transpositions(perm, swaps):
    cur = list(range(len(perm)))
    for a, b in swaps:
        step = list(range(len(perm)))
        step[a], step[b] = b, a
        cur = [step[c] for c in cur]
    return tuple(cur) == tuple(perm)


def factor_into_proper_transpositions(v: TreePairDiagram) -> list:
    """Proper transpositions whose left-to-right product is ``v`` (parity 0 only)."""
    out = []
    for f in factor_into_permutations(v).factors:
        while f.carets < 3:
            f = _pad_orbit(f)
        swaps = _transpositions(f.perm)
        if not _check_transpositions(f.perm, swaps):
            swaps = list(reversed(swaps))
        assert _check_transpositions(f.perm, swaps)
        out.extend(ProperTransposition.on(f.domain, a, b, f.system) for a, b in swaps)
    return out


# ---------------------------------------------------------------- conjugacy


def _expand_uninvolved(t: ProperTransposition, caret: str) -> ProperTransposition:
    d = t.diagram
    a, b = t.involved
    leaf = next(i for i in range(d.leaves) if i not in (a, b))
    new = expand_diagram(d, leaf, caret)
    return ProperTransposition(new)


def conjugator(t1: ProperTransposition, t2: ProperTransposition) -> TreePairDiagram:
    """``g`` in V_xz with ``g * t2 * g**-1 == t1``.

    Both trees are padded with x-carets at uninvolved leaves until they have
    the same size.  If the y-counts then differ in parity, a y-caret goes on
    an uninvolved leaf of one tree and an x-caret on the other.
    """
    while t1.diagram.leaves < t2.diagram.leaves:
        t1 = _expand_uninvolved(t1, "x")
    while t2.diagram.leaves < t1.diagram.leaves:
        t2 = _expand_uninvolved(t2, "x")
    if (count_carets(t1.tree, "y") + count_carets(t2.tree, "y")) % 2:
        t1 = _expand_uninvolved(t1, "y")
        t2 = _expand_uninvolved(t2, "x")
    a, b = t1.involved
    c, d = t2.involved
    sigma = _perm_fixing(t1.diagram.leaves, {a: c, b: d})
    return TreePairDiagram(t1.tree, sigma, t2.tree, TAU)


def random_proper_transposition(rng: random.Random, carets=(3, 8), y_bias: float = 0.5):
    """Random tree with the requested caret count and a random leaf swap."""
    n = rng.randint(*carets)
    t = LEAF
    for _ in range(n):
        leaf = rng.randint(1, leaf_count(t))
        t = expand_leaf(t, leaf, "y" if rng.random() < y_bias else "x")
    a, b = rng.sample(range(n + 1), 2)
    return ProperTransposition.on(t, a, b)


# ---------------------------------------------------------------- commutators


class CommutatorResult(NamedTuple):
    w: ProperTransposition
    g: TreePairDiagram
    h: TreePairDiagram
    u: TreePairDiagram
    tree: object  # the tree U' carrying g, h and w
    l: tuple  # (left, depth) of the moved interval
    k: tuple  # (left, depth) of its image


def _disjoint(power, a, b) -> bool:
    (la, da), (lb, db) = a, b
    return la + power(da) <= lb or lb + power(db) <= la


def _tree_with_leaves(targets, system=TAU, max_extra=6):
    """A caret tree having each interval ``(left, depth)`` in ``targets`` as a leaf."""
    power = system.power
    deepest = max(d for _, d in targets)
    memo = {}

    def build(lo, d):
        key = (lo, d)
        if key in memo:
            return memo[key]
        hi = lo + power(d)
        inside = [(l, e) for l, e in targets if lo <= l and l + power(e) <= hi]
        if not inside:
            memo[key] = LEAF
            return LEAF
        if any(l == lo and e == d for l, e in inside):
            memo[key] = LEAF if len(inside) == 1 else None
            return memo[key]
        if d > deepest + max_extra:
            memo[key] = None
            return None
        for caret, incs in system.carets.items():
            kids = []
            pos = lo
            ok = True
            for inc in incs:
                child_hi = pos + power(d + inc)
                for l, e in inside:
                    r = l + power(e)
                    if l < child_hi < r or l < pos < r:
                        ok = False
                        break
                if not ok:
                    break
                kid = build(pos, d + inc)
                if kid is None:
                    ok = False
                    break
                kids.append(kid)
                pos = child_hi
            if ok:
                memo[key] = Node(caret, tuple(kids))
                return memo[key]
        memo[key] = None
        return None

    return build(system.zero(), 0)


def _find_moved_interval(v: TreePairDiagram, rounds: int):
    power = v.system.power
    cur = reduce(v)
    for _ in range(rounds + 1):
        dom = leaf_intervals(cur.domain, cur.system)
        rng = leaf_intervals(cur.range, cur.system)
        for i, j in enumerate(cur.perm):
            l, k = dom[i], rng[j]
            if not _disjoint(power, l, k):
                continue
            # go one level deeper until a common tree with >= 3 carets exists
            for _ in range(4):
                tree = _tree_with_leaves([l, k], cur.system)
                if tree is not None and _caret_total(tree) >= 3:
                    return l, k, tree
                l = (l[0], l[1] + 2)
                k = (k[0], k[1] + 2)
        for i in reversed(range(cur.leaves)):
            cur = expand_diagram(cur, i, "x")
    raise ValueError("no interval moved off itself within the search bound")


def _caret_total(t) -> int:
    if t is LEAF:
        return 0
    return 1 + sum(_caret_total(c) for c in t.children)


def _swap_diagram(tree, a, b):
    perm = list(range(leaf_count(tree)))
    perm[a], perm[b] = perm[b], perm[a]
    return TreePairDiagram(tree, perm, tree, TAU, check=False)


def _commutator(a, b):
    return compose(compose(compose(invert(a), invert(b)), a), b)


def commutator_transposition(v: TreePairDiagram, rounds: int = 6) -> CommutatorResult:
    """A proper transposition in the normal closure of ``v``.

    Finds an interval ``l`` that ``v`` maps affinely onto a disjoint interval
    ``k``, splits both with an x-caret, and forms ``u = [g, v]`` with ``g``
    swapping the halves of ``l``, then ``w = [h, u]`` with ``h`` swapping the
    left halves of ``l`` and ``k``.  Here ``[a, b] = a**-1 b**-1 a b``.  The
    result swaps ``l`` with ``k``.
    """
    if v.system is not TAU:
        raise ValueError("only the tau groups are supported")
    if v.plmap.is_identity():
        raise ValueError("the identity has trivial normal closure")
    l, k, base = _find_moved_interval(v, rounds)
    intervals = leaf_intervals(base, TAU)
    il, ik = intervals.index(l), intervals.index(k)
    tree = base
    for leaf in sorted((il, ik), reverse=True):
        tree = expand_leaf(tree, leaf + 1, "x")
    l0 = il if il < ik else il + 1
    k0 = ik + 1 if il < ik else ik
    g = _swap_diagram(tree, l0, l0 + 1)
    u = _commutator(g, v)
    h = _swap_diagram(tree, l0, k0)
    w = _commutator(h, u)
    wt = ProperTransposition.on(base, il, ik)
    if not equals(w, wt.diagram):
        raise AssertionError("double commutator is not the expected transposition")
    return CommutatorResult(wt, g, h, u, tree, l, k)
