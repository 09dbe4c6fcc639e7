"""The ternary group V_beta over Z[beta], beta = sqrt(2) - 1.

Carets split an interval into three pieces whose widths are ``beta**2``,
``beta``, ``beta`` in some order: an a-caret puts the short piece first, a
b-caret in the middle, a c-caret last.  Spines are right-leaning chains of
a-carets.  Diagrams, composition, reduction and equality are the same code
as for the tau groups, run over the :data:`~irrthompson.trees.BETA` system.

Generators ``x_i`` and ``y_i`` hang one extra a- or b-caret (respectively)
at leaf ``i+1`` of the spine with ``i//2 + 1`` carets; that tree is the
domain and the spine with ``i//2 + 2`` carets the range.  ``p_i`` swaps
leaves ``i+1`` and ``i+2`` of a spine whose last leaf is not involved.

Two homomorphisms to Z/2: ``beta_parity`` counts b-carets (the y-type) and
``perm_sign`` is the sign of the leaf permutation, which a ternary expansion
cannot change because it replaces one symbol by three adjacent ones.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import NamedTuple

from .diagrams import TreePairDiagram, compose, equals, reduce
from .presentation import GeneratorSymbol, GeneratorWord, InvalidIndexError, parse_word
from .trees import BETA, count_carets, expand_leaf, spine

__all__ = [
    "BetaDiagram",
    "X_CARET",
    "Y_CARET",
    "SPINE_CARET",
    "beta_generator",
    "beta_transposition",
    "compile_beta_word",
    "beta_compose",
    "beta_equals",
    "beta_reduce",
    "beta_identity",
    "beta_parity",
    "perm_sign",
    "Index4Class",
    "index4_class",
    "beta_relator_instances",
    "verify_beta_relators",
    "random_beta_word",
]

BetaDiagram = TreePairDiagram

SPINE_CARET = "a"
X_CARET = "a"
Y_CARET = "b"


def _spine(carets):
    return spine(carets, BETA, SPINE_CARET)


@lru_cache(maxsize=None)
def beta_generator(kind: str, n: int) -> BetaDiagram:
    """``x_n`` or ``y_n`` of F_beta as a diagram over Z[beta]."""
    if kind not in ("x", "y"):
        raise InvalidIndexError(f"F_beta has x and y generators, not {kind!r}")
    if n < 0:
        raise InvalidIndexError("generator index must be non-negative")
    caret = X_CARET if kind == "x" else Y_CARET
    m = n // 2
    domain = expand_leaf(_spine(m + 1), n + 1, caret, BETA)
    return TreePairDiagram(domain, range(2 * m + 5), _spine(m + 2), BETA, check=False)


@lru_cache(maxsize=None)
def beta_transposition(n: int) -> BetaDiagram:
    """Swap leaves ``n+1`` and ``n+2`` of the smallest spine leaving its last leaf alone."""
    if n < 0:
        raise InvalidIndexError("transposition index must be non-negative")
    m = (n + 1) // 2 + 1
    k = 2 * m + 1
    perm = list(range(k))
    perm[n], perm[n + 1] = perm[n + 1], perm[n]
    return TreePairDiagram(_spine(m), perm, _spine(m), BETA, check=False)


def beta_identity() -> BetaDiagram:
    return TreePairDiagram.identity(BETA)


def _symbol_diagram(sym: GeneratorSymbol) -> BetaDiagram:
    if sym.kind == "p":
        base = beta_transposition(sym.index)
        return base if sym.exponent % 2 else beta_identity()
    if sym.kind == "c":
        raise InvalidIndexError("V_beta words use x, y and p only")
    base = beta_generator(sym.kind, sym.index)
    return base ** sym.exponent


def compile_beta_word(word) -> BetaDiagram:
    """Left-to-right product of the generators of a word over {x, y, p}."""
    word = parse_word(word)
    result = beta_identity()
    for sym in word:
        result = compose(result, _symbol_diagram(sym))
    return result


def beta_compose(u: BetaDiagram, v: BetaDiagram) -> BetaDiagram:
    return compose(u, v)


def beta_equals(u: BetaDiagram, v: BetaDiagram) -> bool:
    return equals(u, v)


def beta_reduce(v: BetaDiagram) -> BetaDiagram:
    return reduce(v)


def beta_parity(v: BetaDiagram) -> int:
    """Number of y-type carets in both trees, mod 2."""
    return (count_carets(v.domain, Y_CARET) + count_carets(v.range, Y_CARET)) % 2


def perm_sign(v: BetaDiagram) -> int:
    """0 for an even leaf permutation, 1 for an odd one."""
    perm = list(v.perm)
    seen = [False] * len(perm)
    transpositions = 0
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        transpositions += length - 1
    return transpositions % 2


class Index4Class(NamedTuple):
    rho: int
    phi: int

    def __add__(self, other):
        return Index4Class((self.rho + other.rho) % 2, (self.phi + other.phi) % 2)


def index4_class(v: BetaDiagram) -> Index4Class:
    """``(perm_sign, beta_parity)``; the kernel is the index-four subgroup."""
    return Index4Class(perm_sign(v), beta_parity(v))


class BetaRelator(NamedTuple):
    family: str
    lhs: GeneratorWord
    rhs: GeneratorWord
    indices: dict


def beta_relator_instances(max_index: int = 5) -> list:
    """``a_i b_j = b_j a_{i+2}`` (``i > j``, ``a, b`` in {x, y}) and ``y_k^2 = x_k x_{k+1}``."""
    out = []
    for i in range(max_index + 1):
        for j in range(i):
            for a in "xy":
                for b in "xy":
                    lhs = GeneratorWord([GeneratorSymbol(a, i), GeneratorSymbol(b, j)])
                    rhs = GeneratorWord([GeneratorSymbol(b, j), GeneratorSymbol(a, i + 2)])
                    out.append(BetaRelator(f"shift-{a}{b}", lhs, rhs, {"i": i, "j": j}))
    for k in range(max_index + 1):
        lhs = GeneratorWord([GeneratorSymbol("y", k, 2)])
        rhs = GeneratorWord([GeneratorSymbol("x", k), GeneratorSymbol("x", k + 1)])
        out.append(BetaRelator("square", lhs, rhs, {"k": k}))
    return out


def verify_beta_relators(max_index: int = 5):
    """``(counts, failures)`` with counts keyed by family."""
    counts: dict = {}
    failures = []
    for rel in beta_relator_instances(max_index):
        ok = equals(compile_beta_word(rel.lhs), compile_beta_word(rel.rhs))
        tally = counts.setdefault(rel.family, [0, 0])
        tally[1] += 1
        tally[0] += ok
        if not ok:
            failures.append(rel)
    return counts, failures


def random_beta_word(length: int, max_index: int = 4, rng=None, kinds: str = "xyp") -> GeneratorWord:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    return GeneratorWord(
        GeneratorSymbol(rng.choice(kinds), rng.randint(0, max_index), rng.choice((1, -1)))
        for _ in range(length)
    )
