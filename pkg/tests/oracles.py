"""Reference implementations that share no code with the diagram machinery.

Generator maps are written down from closed-form spine breakpoints and
composed as plain lists of affine pieces ``(a, b, c, e)``: the interval
``(a, b]`` goes to ``(c, c + tau**e * (b - a)]``.
"""
from irrthompson.rings import ZTau, tau_power

ONE = ZTau(1, 0)
ZERO = ZTau(0, 0)


def spine_leaves(carets):
    """``(left, exponent)`` of each leaf of the x-spine, widths ``tau**exponent``."""
    out = []
    pos, e = ZERO, 0
    for _ in range(carets):
        out.append((pos, e + 2))
        pos = pos + tau_power(e + 2)
        e += 1
    out.append((pos, e))
    return out


def _pieces(dom, rng, perm):
    return [(a, a + tau_power(d), rng[perm[i]][0], rng[perm[i]][1] - d) for i, (a, d) in enumerate(dom)]


def generator_map(kind, n):
    if kind in ("x", "y"):
        leaves = spine_leaves(n + 1)
        left, d = leaves[n]
        first, second = (2, 1) if kind == "x" else (1, 2)
        split = [(left, d + first), (left + tau_power(d + first), d + second)]
        dom = leaves[:n] + split + leaves[n + 1 :]
        rng = spine_leaves(n + 2)
        return _pieces(dom, rng, list(range(n + 3)))
    if kind == "c":
        leaves = spine_leaves(n + 1)
        k = n + 2
        return _pieces(leaves, leaves, [(i + 1) % k for i in range(k)])
    if kind == "p":
        leaves = spine_leaves(n + 2)
        perm = list(range(n + 3))
        perm[n], perm[n + 1] = n + 1, n
        return _pieces(leaves, leaves, perm)
    raise ValueError(kind)


def inverse(f):
    out = [(c, c + tau_power(e) * (b - a), a, -e) for a, b, c, e in f]
    return sorted(out, key=lambda p: float(p[0]))


def then(f, g):
    """``f`` followed by ``g``; quadratic in the number of pieces, no shortcuts."""
    out = []
    for a, b, c, e in f:
        d = c + tau_power(e) * (b - a)
        for ga, gb, gc, ge in g:
            lo = c if c > ga else ga
            hi = d if d < gb else gb
            if not lo < hi:
                continue
            x0 = a + tau_power(-e) * (lo - c)
            x1 = a + tau_power(-e) * (hi - c)
            out.append((x0, x1, gc + tau_power(ge) * (lo - ga), e + ge))
    return out


def word_map(word):
    f = [(ZERO, ONE, ZERO, 0)]
    for sym in word:
        g = generator_map(sym.kind, sym.index)
        if sym.exponent < 0:
            g = inverse(g)
        for _ in range(abs(sym.exponent)):
            f = then(f, g)
    return f


def is_identity(f):
    return all(e == 0 and a == c for a, b, c, e in f)


def same_map(f, g):
    return is_identity(then(f, inverse(g)))
