"""Generators, words, normal forms and relator verification for T_tau and V_tau.

Word syntax: whitespace-separated tokens ``x0 y3 c2 p1`` with an optional
exponent suffix ``^<int>`` (``c2^-1``).  Kinds are case-insensitive and ``p``
stands for the transposition generators pi_n.  Words are read left to right,
so ``compile_word("x0 c1")`` applies ``x0`` first.

Generator shapes (spines are right-leaning chains of x-carets):

* ``x_n``, ``y_n``: domain is the spine with ``n+1`` carets plus an x- (or
  y-) caret hung at leaf ``n+1``; range is the spine with ``n+2`` carets.
* ``c_n``: the spine with ``n+1`` carets on both sides, leaf ``i`` sent to
  leaf ``i+1`` and the last leaf to the first.  It has order ``n+2``.
* ``pi_n``: the spine with ``n+2`` carets on both sides, leaves ``n+1`` and
  ``n+2`` swapped.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

from .diagrams import TreePairDiagram, canonical_triple, compose, expand_diagram
from .trees import LEAF, TAU, Node, expand_leaf, spine

__all__ = [
    "GeneratorSymbol",
    "GeneratorWord",
    "WordSyntaxError",
    "InvalidIndexError",
    "parse_word",
    "generator",
    "compile_word",
    "to_normal_word",
    "split_normal_word",
    "is_normal_word",
    "RelatorInstance",
    "relator_instances",
    "index_raising_instances",
    "RelatorReport",
    "verify_relators",
    "verify_instances",
    "random_word",
    "FAMILIES",
]

KINDS = ("x", "y", "c", "p")


class WordSyntaxError(ValueError):
    """A generator word could not be parsed."""


class InvalidIndexError(ValueError):
    """A generator index outside its allowed range."""


class GeneratorSymbol(NamedTuple):
    kind: str
    index: int
    exponent: int = 1

    def __str__(self):
        base = f"{self.kind}{self.index}"
        return base if self.exponent == 1 else f"{base}^{self.exponent}"

    def inverse(self) -> GeneratorSymbol:
        return GeneratorSymbol(self.kind, self.index, -self.exponent)

    def validate(self) -> GeneratorSymbol:
        if self.kind not in KINDS:
            raise InvalidIndexError(f"unknown generator kind {self.kind!r}")
        lowest = 1 if self.kind == "c" else 0
        if self.index < lowest:
            raise InvalidIndexError(f"{self.kind}_{self.index}: index must be at least {lowest}")
        if self.exponent == 0:
            raise InvalidIndexError("zero exponent")
        return self

    def normalized(self) -> GeneratorSymbol | None:
        """Reduce torsion exponents; ``None`` if the symbol is trivial."""
        if self.kind == "c":
            order = self.index + 2
        elif self.kind == "p":
            order = 2
        else:
            return self
        e = self.exponent % order
        return GeneratorSymbol(self.kind, self.index, e) if e else None


class GeneratorWord(tuple):
    """An immutable sequence of :class:`GeneratorSymbol`."""

    def __new__(cls, symbols: Iterable = ()):
        return super().__new__(cls, (s if isinstance(s, GeneratorSymbol) else GeneratorSymbol(*s) for s in symbols))

    @classmethod
    def parse(cls, text: str) -> GeneratorWord:
        return parse_word(text)

    def __str__(self):
        return " ".join(str(s) for s in self)

    def __repr__(self):
        return f"GeneratorWord({str(self)!r})"

    def __add__(self, other):
        return GeneratorWord(tuple(self) + tuple(other))

    def inverse(self) -> GeneratorWord:
        return GeneratorWord(s.inverse() for s in reversed(self))

    def y_exponent_sum(self) -> int:
        return sum(s.exponent for s in self if s.kind == "y")

    def length(self) -> int:
        return sum(abs(s.exponent) for s in self)


_TOKEN = re.compile(r"^([xycpXYCP])_?(\d+)(?:\^\(?([+-]?\d+)\)?)?$")


def parse_word(text) -> GeneratorWord:
    """Parse ``"x0 y3^2 c2^-1 p1"``; ``1`` or an empty string is the empty word."""
    if isinstance(text, GeneratorWord):
        return text
    symbols = []
    for tok in str(text).replace(",", " ").split():
        if tok in ("1", "e"):
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise WordSyntaxError(f"bad generator token {tok!r}")
        kind, index, exponent = m.groups()
        sym = GeneratorSymbol(kind.lower(), int(index), int(exponent) if exponent else 1)
        try:
            symbols.append(sym.validate())
        except InvalidIndexError as exc:
            raise WordSyntaxError(str(exc)) from exc
    return GeneratorWord(symbols)


# ---------------------------------------------------------------- generators


def _spine(carets):
    return spine(carets, TAU, "x")


def _cycle(k, m=1):
    return tuple((i + m) % k for i in range(k))


def _transposition(k, a):
    perm = list(range(k))
    perm[a], perm[a + 1] = perm[a + 1], perm[a]
    return tuple(perm)


@lru_cache(maxsize=None)
def _base(kind: str, n: int) -> TreePairDiagram:
    if kind in ("x", "y"):
        domain = expand_leaf(_spine(n + 1), n + 1, kind, TAU)
        return TreePairDiagram(domain, range(n + 3), _spine(n + 2), TAU, check=False)
    if kind == "c":
        return TreePairDiagram(_spine(n + 1), _cycle(n + 2), _spine(n + 1), TAU, check=False)
    return TreePairDiagram(_spine(n + 2), _transposition(n + 3, n), _spine(n + 2), TAU, check=False)


@lru_cache(maxsize=4096)
def _power(kind: str, n: int, e: int) -> TreePairDiagram:
    if kind == "c":
        k = n + 2
        return TreePairDiagram(_spine(n + 1), _cycle(k, e % k), _spine(n + 1), TAU, check=False)
    if kind == "p" and e % 2 == 0:
        return TreePairDiagram.identity()
    base = _base(kind, n)
    if kind == "p":
        return base
    return base ** e


def generator(sym, index: int | None = None, exponent: int = 1) -> TreePairDiagram:
    """Diagram of a generator symbol (or ``generator("x", 2)``)."""
    if isinstance(sym, str):
        if index is None:
            word = parse_word(sym)
            if len(word) != 1:
                raise WordSyntaxError(f"{sym!r} is not a single generator")
            sym = word[0]
        else:
            sym = GeneratorSymbol(sym.lower(), index, exponent)
    sym = GeneratorSymbol(*sym).validate()
    return _power(sym.kind, sym.index, sym.exponent)


def _native_size(sym):
    # leaf count of the spine on which a c or p symbol is a pure permutation
    return sym.index + 2 if sym.kind == "c" else sym.index + 3


def _run_diagram(k, perm):
    return TreePairDiagram(_spine(k - 1), perm, _spine(k - 1), TAU, check=False)


def compile_word(word) -> TreePairDiagram:
    """Left-to-right product of the generators in ``word``.

    Runs of c and p symbols that live on one common spine are multiplied as
    plain permutations before any tree work happens.
    """
    word = parse_word(word) if not isinstance(word, GeneratorWord) else word
    result = TreePairDiagram.identity()
    run_k = 0
    run_perm = None
    has_c = False

    def flush():
        nonlocal result, run_perm, run_k, has_c
        if run_perm is not None:
            result = compose(result, _run_diagram(run_k, run_perm))
        run_perm, run_k, has_c = None, 0, False

    for sym in word:
        sym.validate()
        if sym.kind in ("c", "p"):
            k = _native_size(sym)
            fits = run_perm is not None and (
                (sym.kind == "p" and (k <= run_k or not has_c))
                or (sym.kind == "c" and (k == run_k or (not has_c and k >= run_k)))
            )
            if not fits:
                flush()
            if run_perm is None:
                run_k, run_perm = k, tuple(range(k))
            if k > run_k:
                run_perm = run_perm + tuple(range(run_k, k))
                run_k = k
            if sym.kind == "c":
                step = _cycle(run_k, sym.exponent % run_k)
                has_c = True
            elif sym.exponent % 2:
                step = _transposition(run_k, sym.index)
            else:
                continue
            run_perm = tuple(step[j] for j in run_perm)
            continue
        flush()
        result = compose(result, generator(sym))
    flush()
    return result


# ---------------------------------------------------------------- normal forms


def _peel(t) -> list:
    """Read a positive word off a tree whose right chain is made of x-carets.

    The tree ``T`` satisfies ``(T, id, spine) = word``.  Every y-caret must
    have a bare left leg, which makes the word seminormal.
    """
    letters = []
    i = 0
    while t is not LEAF:
        left, right = t.children
        if t.caret != "x":
            raise ValueError("right chain must consist of x-carets")
        if left is LEAF:
            t = right
            i += 1
            continue
        if left.caret == "y" and left.left is not LEAF:
            raise ValueError("y-caret with a non-trivial left child")
        letters.append((left.caret, i))
        a, b = left.children
        t = Node("x", (a, Node("x", (b, right))))
    return _group(letters)


def _group(letters) -> list:
    out = []
    for kind, i in letters:
        if out and out[-1].kind == kind and out[-1].index == i:
            out[-1] = GeneratorSymbol(kind, i, out[-1].exponent + 1)
        else:
            out.append(GeneratorSymbol(kind, i, 1))
    return out


def _sort_into_transpositions(rho, k) -> list:
    """Indices ``j`` with ``p_j1 ... p_jr`` (left to right) equal to ``rho``.

    ``rho`` must fix the last leaf so that only ``p_j`` with ``j <= k-3`` occur.
    """
    inv = [0] * k
    for i, r in enumerate(rho):
        inv[r] = i
    swaps = []
    arr = inv[:]
    for end in range(k - 1, 0, -1):
        for a in range(end):
            if arr[a] > arr[a + 1]:
                arr[a], arr[a + 1] = arr[a + 1], arr[a]
                swaps.append(a)
    return list(reversed(swaps))


def _middle(perm, k) -> list:
    if all(p == i for i, p in enumerate(perm)):
        return []
    n = k - 2
    s = perm[0]
    if all(perm[i] == (i + s) % k for i in range(k)):
        return [GeneratorSymbol("c", n, s)]
    inv = [0] * k
    for i, p in enumerate(perm):
        inv[p] = i
    m = (k - 1 - inv[k - 1]) % k
    back = _cycle(k, -m)
    rho = [perm[back[i]] for i in range(k)]
    out = [GeneratorSymbol("c", n, m)] if m else []
    out.extend(GeneratorSymbol("p", j, 1) for j in _sort_into_transpositions(rho, k))
    return out


def to_normal_word(v: TreePairDiagram) -> GeneratorWord:
    """A word ``p m q^-1`` for ``v``.

    ``p`` is a seminormal positive word ``x_0^a0 y_0^e0 x_1^a1 ...`` with
    ``e_i`` in {0, 1}, ``q`` is a positive x-word and ``m`` spells the leaf
    permutation: one power of ``c_n`` for elements of T, a power of ``c_n``
    followed by transpositions ``p_j`` otherwise.
    """
    ct = canonical_triple(v)
    if ct.leaves == 2 and ct.perm != (0, 1):
        ct = expand_diagram(ct, 0, "x")
    k = ct.leaves
    p = _peel(ct.domain)
    q = _peel(ct.range)
    return GeneratorWord(p + _middle(ct.perm, k) + [s.inverse() for s in reversed(q)])


def split_normal_word(word) -> tuple:
    """Split into ``(p, m, q_inverse)``; raises ``ValueError`` on other shapes."""
    word = parse_word(word)
    i = 0
    while i < len(word) and word[i].kind in "xy" and word[i].exponent > 0:
        i += 1
    j = i
    while j < len(word) and word[j].kind in "cp":
        j += 1
    p, m, q = word[:i], word[i:j], word[j:]
    if any(s.kind != "x" or s.exponent > 0 for s in q):
        raise ValueError(f"{word} is not of the form p m q^-1")
    return GeneratorWord(p), GeneratorWord(m), GeneratorWord(q)


def _seminormal(symbols, allow_y) -> bool:
    last = (-1, "")
    for s in symbols:
        if s.exponent <= 0 or (s.kind == "y" and (not allow_y or s.exponent != 1)):
            return False
        key = (s.index, s.kind)
        if key <= last:
            return False
        last = key
    return True


def is_normal_word(word, element_class: str | None = None) -> bool:
    """Does ``word`` satisfy the ``p m q^-1`` grammar?

    With ``element_class="F"`` the middle must be empty; with ``"T"`` it must be
    at most a single c power.
    """
    try:
        p, m, qi = split_normal_word(word)
    except ValueError:
        return False
    if not _seminormal(p, True) or not _seminormal(qi.inverse(), False):
        return False
    if element_class == "F" and m:
        return False
    if element_class == "T" and (len(m) > 1 or any(s.kind != "c" for s in m)):
        return False
    return True


# ---------------------------------------------------------------- relators


class RelatorInstance(NamedTuple):
    family: str
    lhs: GeneratorWord
    rhs: GeneratorWord
    indices: dict

    def __str__(self):
        return f"({self.family}) {self.lhs or '1'} = {self.rhs or '1'}  {self.indices}"

    def y_parity_balanced(self) -> bool:
        return (self.lhs.y_exponent_sum() - self.rhs.y_exponent_sum()) % 2 == 0


FAMILIES = (
    "1.1", "1.2", "1.3", "1.4", "1.5",
    "2.1", "2.2", "2.3", "2.4",
    "3.1", "3.2",
    "4.1", "4.2", "4.3", "4.4", "4.5", "4.6", "4.7",
    "5.1", "5.2", "5.3", "5.4",
    "6.1", "6.2", "6.3", "6.4",
)


def _w(*parts) -> GeneratorWord:
    return GeneratorWord(GeneratorSymbol(*p) for p in parts)


def relator_instances(max_index: int, families: Sequence[str] | None = None) -> list:
    """Every instance of the listed families with all parameters ``<= max_index``."""
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    wanted = set(families or FAMILIES)
    out = []

    def add(family, lhs, rhs, **indices):
        if family in wanted:
            out.append(RelatorInstance(family, _w(*lhs), _w(*rhs), indices))

    r = range(max_index + 1)
    for i in r:
        for j in r:
            if i < j:
                add("1.1", [("x", j), ("x", i)], [("x", i), ("x", j + 1)], i=i, j=j)
                add("1.2", [("x", j), ("y", i)], [("y", i), ("x", j + 1)], i=i, j=j)
                add("1.3", [("y", j), ("x", i)], [("x", i), ("y", j + 1)], i=i, j=j)
                add("1.4", [("y", j), ("y", i)], [("y", i), ("y", j + 1)], i=i, j=j)
    for n in r:
        add("1.5", [("y", n, 2)], [("x", n), ("x", n + 1)], n=n)
    for n in range(1, max_index + 1):
        for k in range(n):
            add("2.1", [("x", k), ("c", n + 1)], [("c", n), ("x", k + 1)], k=k, n=n)
        add("2.2", [("c", n), ("x", 0)], [("c", n + 1, 2)], n=n)
        add("2.3", [("c", n)], [("x", n), ("c", n + 1)], n=n)
        add("2.4", [("c", n, n + 2)], [], n=n)
        for k in range(n):
            add("3.1", [("y", k), ("c", n + 1)], [("c", n), ("y", k + 1)], k=k, n=n)
        add("3.2", [("c", n), ("y", 0)], [("y", n + 1, -1), ("c", n + 1, 2)], n=n)
    for i in r:
        for j in r:
            if j >= i + 2:
                add("4.1", [("p", i), ("x", j)], [("x", j), ("p", i)], i=i, j=j)
        add("4.2", [("p", i), ("x", i + 1)], [("x", i), ("p", i + 1), ("p", i)], i=i)
        add("4.3", [("p", i), ("x", i)], [("x", i + 1), ("p", i), ("p", i + 1)], i=i)
        for j in range(i):
            add("4.4", [("p", i), ("x", j)], [("x", j), ("p", i + 1)], i=i, j=j)
        add("4.5", [("p", i, 2)], [], i=i)
        add("4.6", [("p", i + 1), ("p", i)] * 3, [], i=i)
        for j in r:
            if j >= i + 2:
                add("4.7", [("p", i), ("p", j)], [("p", j), ("p", i)], i=i, j=j)
    for n in range(1, max_index + 1):
        for k in range(1, n):
            add("5.1", [("c", n), ("p", k)], [("p", k - 1), ("c", n)], k=k, n=n)
        add("5.2", [("c", n), ("p", 0)], [("p", i) for i in range(n)] + [("c", n, 2)], n=n)
        add("5.3", [("c", n, 2), ("p", 0)], [("p", i) for i in reversed(range(n))] + [("c", n)], n=n)
        add("5.4", [("c", n, 3), ("p", 0)], [("p", n - 1), ("c", n, 3)], n=n)
    for i in r:
        for j in r:
            if j >= i + 2:
                add("6.1", [("p", i), ("y", j)], [("y", j), ("p", i)], i=i, j=j)
        add("6.2", [("p", i), ("y", i + 1)], [("y", i), ("p", i + 1), ("p", i)], i=i)
        add("6.3", [("p", i), ("y", i)], [("y", i + 1), ("p", i), ("p", i + 1)], i=i)
        for j in range(i):
            add("6.4", [("p", i), ("y", j)], [("y", j), ("p", i + 1)], i=i, j=j)
    return out


def index_raising_instances(max_n: int) -> list:
    """Index-raising identities ``c_n^m = x_{n+1-m} c_{n+1}^m`` and
    ``c_n^m = c_{n+1}^{m+1} x_{m-1}^-1`` for ``1 <= m <= n+1 <= max_n + 1``."""
    out = []
    for n in range(1, max_n + 1):
        for m in range(1, n + 2):
            out.append(RelatorInstance(
                "raise-left", _w(("c", n, m)), _w(("x", n + 1 - m), ("c", n + 1, m)), {"n": n, "m": m}))
            out.append(RelatorInstance(
                "raise-right", _w(("c", n, m)), _w(("c", n + 1, m + 1), ("x", m - 1, -1)), {"n": n, "m": m}))
    return out


@dataclass
class RelatorReport:
    counts: dict = field(default_factory=dict)  # family -> [passed, total]
    failures: list = field(default_factory=list)  # (instance, lhs PLMap, rhs PLMap)

    @property
    def ok(self) -> bool:
        return not self.failures

    def lines(self) -> list:
        out = [f"{fam}: {p}/{t}" for fam, (p, t) in self.counts.items()]
        for inst, lhs, rhs in self.failures:
            out.append(f"FAIL {inst}")
            out.append(f"  lhs {lhs}")
            out.append(f"  rhs {rhs}")
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "families": {f: {"passed": p, "total": t} for f, (p, t) in self.counts.items()},
            "failures": [
                {"family": i.family, "lhs": str(i.lhs), "rhs": str(i.rhs), "indices": i.indices,
                 "lhs_map": repr(a), "rhs_map": repr(b)}
                for i, a, b in self.failures
            ],
        }


def verify_instances(instances: Iterable[RelatorInstance]) -> RelatorReport:
    report = RelatorReport()
    for inst in instances:
        lhs = compile_word(inst.lhs).plmap
        rhs = compile_word(inst.rhs).plmap
        tally = report.counts.setdefault(inst.family, [0, 0])
        tally[1] += 1
        if lhs == rhs:
            tally[0] += 1
        else:
            report.failures.append((inst, lhs, rhs))
    order = {f: i for i, f in enumerate(FAMILIES)}
    report.counts = dict(sorted(report.counts.items(), key=lambda kv: (order.get(kv[0], len(order)), kv[0])))
    return report


def verify_relators(max_index: int = 6, families: Sequence[str] | None = None) -> RelatorReport:
    """Compile both sides of every relator instance and compare exactly."""
    return verify_instances(relator_instances(max_index, families))


# ---------------------------------------------------------------- random words


def random_word(length: int, max_index: int = 4, rng: random.Random | int | None = None,
                kinds: str = "xycp", parity: int | None = None) -> GeneratorWord:
    """Uniform random word of exactly ``length`` letters (exponents +-1).

    With ``parity`` set, the number of y letters is forced to that parity by
    swapping the last letter for an x or y letter when needed.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    symbols = []
    for _ in range(length):
        kind = rng.choice(kinds)
        lo = 1 if kind == "c" else 0
        hi = max(max_index, 1)
        symbols.append(GeneratorSymbol(kind, rng.randint(lo, hi), rng.choice((1, -1))))
    if parity is not None:
        ys = sum(1 for s in symbols if s.kind == "y")
        if ys % 2 != parity % 2:
            if not symbols:
                raise ValueError("an empty word has even parity")
            last = symbols[-1]
            new_kind = "x" if last.kind == "y" else "y"
            symbols[-1] = GeneratorSymbol(new_kind, rng.randint(0, max_index), rng.choice((1, -1)))
    return GeneratorWord(symbols)
