# Relator verification and p m q^-1 normal words for T_tau and V_tau.
#
# Run with:  python3 demos/02_relators_and_normal_forms.py

from irrthompson import compile_word, to_normal_word, verify_relators
from irrthompson.presentation import (
    index_raising_instances,
    parse_word,
    random_word,
    split_normal_word,
    verify_instances,
)

# %% Every relator family, all indices up to 4, compared as exact PL maps.
report = verify_relators(4)
for line in report.lines():
    print(line)
print("all pass:", report.ok)

# %% Identities that raise the index of a rotation c_n.
print("index-raising identities:", verify_instances(index_raising_instances(5)).ok)

# %% A relator is a trivial element; a mis-ordered one is not.
print("y0^2 == x0 x1:", compile_word("y0^2") == compile_word("x0 x1"))
print("x1 x0 == x0 x1:", compile_word("x1 x0") == compile_word("x0 x1"))

# %% Normal words: seminormal positive word, a permutation middle, and an
# inverted x-word.  The middle of an element of T is a single power of c.
for text in ["x1 c2", "y0 c3 x2^-1", "p0 y1 c2^-1", random_word(8, 3, 7)]:
    word = parse_word(str(text))
    nf = to_normal_word(compile_word(word))
    p, m, q = split_normal_word(nf)
    print(f"{str(word):28s} -> p=[{p}]  middle=[{m}]  q^-1=[{q}]")
    assert compile_word(nf) == compile_word(word)
