# Exact arithmetic, tau-subdivisions and tree pair diagrams.
#
# Run with:  python3 demos/01_subdivisions_and_diagrams.py

from irrthompson import ZTau, compile_word, evaluate, reduce, tau_power, unify
from irrthompson.diagrams import canonical_triple, classify, diagram_to_dot
from irrthompson.trees import TAU, Node, LEAF, leaf_intervals, widths

# %% The ring Z[tau].  tau = (sqrt 5 - 1)/2 satisfies tau^2 = 1 - tau, so every
# element is a + b*tau with integer a, b, and signs are decided without floats.
t = ZTau(0, 1)
print("tau^2      =", t * t)
print("tau^-1     =", tau_power(-1))
print("tau^4      =", tau_power(4), "~", float(tau_power(4)))
print("1 - 2*tau  has sign", ZTau(1, -2).sign())

# %% Carets.  An x-caret cuts an interval into widths (tau^2, tau), a y-caret
# into (tau, tau^2).  Leaves are reported as (left endpoint, depth).
x, y = TAU.caret("x"), TAU.caret("y")
print("x:", leaf_intervals(x))
print("y:", leaf_intervals(y))
print("x(., x):", leaf_intervals(Node("x", (LEAF, x))))

# %% The two carets give different cuts; their common refinement has widths
# tau^2, tau^3, tau^2 and is reached by leaf expansions plus basic moves.
common, script_x, script_y = unify(x, y)
print("common refinement widths:", [str(w) for w in widths(common)])
print("steps from x:", [op.kind for op in script_x], " from y:", [op.kind for op in script_y])

# %% Words compile to diagrams, read left to right.
v = compile_word("x0 c2 p1")
print("x0 c2 p1 ->", v)
print("class:", classify(v), " image of tau:", evaluate(v, t))

# %% Reduction removes hidden cancellations: y0^2 = x0 x1, so this is trivial.
w = compile_word("y0 y0 x1^-1 x0^-1")
print("y0 y0 x1^-1 x0^-1 has", w.carets, "carets before reduction,",
      reduce(w).carets, "after")

# %% Canonical triples: all-x range, y-carets only with bare left legs.
print("canonical triple of y1 c2:", canonical_triple(compile_word("y1 c2")))

# %% DOT output for graphviz.
print(diagram_to_dot(compile_word("c1"))[:200], "...")
