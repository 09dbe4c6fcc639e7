# The y-parity map, factoring its kernel into proper transpositions, and the
# ternary group V_beta with its two Z/2 invariants.
#
# Run with:  python3 demos/03_parity_and_vbeta.py

import random

from irrthompson import compile_word, conjugator, y_parity
from irrthompson.parity import (
    commutator_transposition,
    factor_into_permutations,
    factor_into_proper_transpositions,
    member,
    product,
    random_proper_transposition,
)
from irrthompson.vbeta import (
    beta_generator,
    beta_transposition,
    compile_beta_word,
    index4_class,
    verify_beta_relators,
)

# %% y-parity: y generators count 1, everything else 0.
for text in ["x0", "y0", "y0 y2", "c2 p1", "y1 c3 y0"]:
    v = compile_word(text)
    print(f"{text:10s} parity {y_parity(v)}  in V_xz: {member(v, 'Vxz')}")

# %% An even element is a product of permutation diagrams.  Each y-pairing
# step drops the y-caret count by exactly two.
v = compile_word("y0 y3 x1 p0 c2")
trail = factor_into_permutations(v)
print("y-counts along the way:", trail.y_counts, " pairings:", trail.pairings)
factors = factor_into_proper_transpositions(v)
print(len(factors), "proper transpositions, product matches:", product(factors) == v)

# %% Any two proper transpositions are conjugate inside V_xz.
rng = random.Random(1)
t1, t2 = random_proper_transposition(rng), random_proper_transposition(rng)
g = conjugator(t1, t2)
print("g t2 g^-1 == t1:", g * t2.diagram * g.inverse() == t1.diagram, " parity of g:", y_parity(g))

# %% A double commutator of a non-trivial element yields a proper transposition.
res = commutator_transposition(compile_word("x0"))
print("transposition from x0:", res.w)

# %% V_beta: ternary carets over Z[beta], beta = sqrt 2 - 1.
counts, failures = verify_beta_relators(4)
print("V_beta relators:", {k: f"{p}/{t}" for k, (p, t) in counts.items()}, "failures:", len(failures))
y0, p0 = beta_generator("y", 0), beta_transposition(0)
for name, w in [("1", compile_beta_word("")), ("y0", y0), ("p0", p0), ("y0 p0", y0 * p0)]:
    print(f"index-4 class of {name:6s}", tuple(index4_class(w)))
