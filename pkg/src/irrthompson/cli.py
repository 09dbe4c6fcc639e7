"""Command-line front end: ``python3 -m irrthompson <command> ...``.

Elements are given as generator words (``"x0 y1^-1 c2"``) or as JSON
diagrams (an argument starting with ``{``, or ``@file.json``).  Exit codes:
0 success, 1 a negative answer from ``eq``, 2 parse errors, 3 domain errors
(for example odd parity in ``factor``), 4 internal invariant failures.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import diagrams as dg
from .parity import ParityError, factor_into_proper_transpositions, member, y_parity
from .presentation import (
    InvalidIndexError,
    WordSyntaxError,
    compile_word,
    is_normal_word,
    parse_word,
    random_word,
    split_normal_word,
    to_normal_word,
    verify_relators,
)
from .rings import parse_ring_element
from .trees import BETA, TAU
from .vbeta import compile_beta_word, index4_class, verify_beta_relators

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INVARIANT = 4


class ParseError(ValueError):
    pass


class DomainError(ValueError):
    pass


def _system(ring):
    return BETA if ring == "beta" else TAU


def _element(text: str, ring: str) -> dg.TreePairDiagram:
    text = text.strip()
    try:
        if text.startswith("@"):
            with open(text[1:]) as fh:
                text = fh.read().strip()
        if text.startswith("{"):
            return dg.diagram_from_json(json.loads(text), _system(ring))
        word = parse_word(text)
        return compile_beta_word(word) if ring == "beta" else compile_word(word)
    except (WordSyntaxError, InvalidIndexError, json.JSONDecodeError, KeyError) as exc:
        raise ParseError(str(exc)) from exc
    except OSError as exc:
        raise ParseError(f"cannot read {text[1:]}: {exc}") from exc


def _diagram_text(v: dg.TreePairDiagram) -> str:
    perm = " ".join(str(p + 1) for p in v.perm)
    return f"domain: {v.domain!r}\nperm:   [{perm}]\nrange:  {v.range!r}"


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _tau_only(args, what):
    if args.ring != "tau":
        raise DomainError(f"{what} is only available for the tau groups")


# ---------------------------------------------------------------- commands


def cmd_eval(args):
    v = _element(args.word, args.ring)
    try:
        t = parse_ring_element(args.at, args.ring)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    try:
        image = dg.evaluate(v, t)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    _emit(args, {"at": str(t), "value": str(image)}, str(image))


def cmd_reduce(args):
    v = dg.reduce(_element(args.word, args.ring))
    _emit(args, dg.diagram_to_json(v), _diagram_text(v))


def cmd_eq(args):
    u = _element(args.word1, args.ring)
    v = _element(args.word2, args.ring)
    same = dg.equals(u, v)
    _emit(args, {"equal": same}, "equal" if same else "not equal")
    return EXIT_OK if same else EXIT_FALSE


def cmd_classify(args):
    v = _element(args.word, args.ring)
    kind = dg.classify(v)
    _emit(args, {"class": kind}, kind)


def cmd_parity(args):
    v = _element(args.word, args.ring)
    if args.ring == "beta":
        cls = index4_class(v)
        _emit(args, {"parity": cls.phi, "sign": cls.rho}, f"{cls.phi}")
    else:
        p = y_parity(v)
        _emit(args, {"parity": p, "Vxz": p == 0, "Txz": member(v, "Txz")}, str(p))


def cmd_normal_form(args):
    _tau_only(args, "normal-form")
    v = _element(args.word, args.ring)
    word = to_normal_word(v)
    p, m, q = split_normal_word(word)
    if not dg.equals(compile_word(word), v) or not is_normal_word(word):
        raise dg.InvariantError("normal form does not recompile to the input")
    payload = {"word": str(word), "p": str(p), "middle": str(m), "q_inverse": str(q)}
    _emit(args, payload, str(word) or "1")


def cmd_factor(args):
    _tau_only(args, "factor")
    v = _element(args.word, args.ring)
    try:
        factors = factor_into_proper_transpositions(v)
    except ParityError as exc:
        raise DomainError(str(exc)) from exc
    payload = {"factors": []}
    lines = []
    for f in factors:
        a, b = f.involved
        payload["factors"].append({"diagram": dg.diagram_to_json(f.diagram), "swap": [a + 1, b + 1]})
        lines.append(f"swap {a + 1}<->{b + 1} on {f.tree!r}")
    _emit(args, payload, "\n".join(lines) if lines else "(identity)")


def cmd_relcheck(args):
    if args.ring == "beta":
        counts, failures = verify_beta_relators(args.max_index)
        payload = {
            "ok": not failures,
            "families": {f: {"passed": p, "total": t} for f, (p, t) in counts.items()},
            "failures": [f"{r.lhs} = {r.rhs}" for r in failures],
        }
        lines = [f"{f:10s} {p}/{t}" for f, (p, t) in counts.items()]
        lines += [f"FAIL {r.family} {r.lhs} = {r.rhs}" for r in failures]
        ok = not failures
    else:
        if args.max_index < 2:
            raise DomainError("--max-index must be at least 2")
        report = verify_relators(args.max_index)
        payload = report.to_json()
        lines = [f"{f:5s} {p:4d}/{t:<4d} {'pass' if p == t else 'FAIL'}" for f, (p, t) in report.counts.items()]
        lines += [f"FAIL {inst}" for inst, _, _ in report.failures]
        ok = report.ok
    lines.append("all families pass" if ok else "relator failures found")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_render(args):
    v = _element(args.word, args.ring)
    dot = dg.diagram_to_dot(v)
    if args.dot == "-":
        print(dot)
    else:
        with open(args.dot, "w") as fh:
            fh.write(dot + "\n")
        _emit(args, {"dot": args.dot}, f"wrote {args.dot}")


def cmd_random(args):
    kinds = "xyp" if args.ring == "beta" else "xycp"
    word = random_word(args.length, args.max_index, args.seed, kinds=kinds, parity=args.parity)
    _emit(args, {"word": str(word), "seed": args.seed}, str(word))


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--ring", choices=("tau", "beta"), default="tau", help="group family")

    parser = argparse.ArgumentParser(prog="irrthompson", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("eval", cmd_eval, "exact image of a point")
    p.add_argument("word")
    p.add_argument("--at", required=True, help='point in (0, 1], e.g. "0+1*t"')
    add("reduce", cmd_reduce, "reduced diagram").add_argument("word")
    p = add("eq", cmd_eq, "compare two elements")
    p.add_argument("word1")
    p.add_argument("word2")
    add("classify", cmd_classify, "F, T or V").add_argument("word")
    add("parity", cmd_parity, "y-parity (and permutation sign for beta)").add_argument("word")
    add("normal-form", cmd_normal_form, "p m q^-1 normal word").add_argument("word")
    add("factor", cmd_factor, "proper transpositions (parity 0 only)").add_argument("word")
    p = add("relcheck", cmd_relcheck, "verify relator families")
    p.add_argument("--max-index", type=int, default=6)
    p = add("render", cmd_render, "Graphviz DOT of the diagram")
    p.add_argument("word")
    p.add_argument("--dot", required=True, help="output file, or - for stdout")
    p = add("random", cmd_random, "seeded random word")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--parity", type=int, choices=(0, 1))
    p.add_argument("--max-index", type=int, default=4)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        code = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (dg.InvariantError, AssertionError) as exc:
        print(f"internal invariant failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK if code is None else code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
