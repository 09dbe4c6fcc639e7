"""Irrational-slope Thompson groups F_tau, T_tau, V_tau and V_beta.

Elements are tree-pair-permutation diagrams over exact quadratic integers;
see :mod:`irrthompson.diagrams` for conventions (products read left to
right, 0-based permutations internally).
"""
from .rings import ZBeta, ZTau, beta_power, parse_ring_element, tau_power
from .trees import BETA, LEAF, TAU, CaretSystem, Node, basic_move, spine, unify
from .diagrams import (
    PLMap,
    TreePairDiagram,
    canonical_triple,
    classify,
    compose,
    equals,
    equals_diagrammatic,
    evaluate,
    invert,
    reduce,
    to_plmap,
)
from .presentation import (
    GeneratorSymbol,
    GeneratorWord,
    compile_word,
    generator,
    parse_word,
    relator_instances,
    to_normal_word,
    verify_relators,
)
from .parity import (
    ProperTransposition,
    commutator_transposition,
    conjugator,
    factor_into_permutations,
    factor_into_proper_transpositions,
    member,
    y_parity,
    z_generator,
)
from .vbeta import beta_generator, beta_parity, compile_beta_word, index4_class, perm_sign

__version__ = "0.1.0"

__all__ = [
    "PLMap",
    "TreePairDiagram",
    "canonical_triple",
    "classify",
    "compose",
    "equals",
    "equals_diagrammatic",
    "evaluate",
    "invert",
    "reduce",
    "to_plmap",
    "GeneratorSymbol",
    "GeneratorWord",
    "compile_word",
    "generator",
    "parse_word",
    "relator_instances",
    "to_normal_word",
    "verify_relators",
    "ProperTransposition",
    "commutator_transposition",
    "conjugator",
    "factor_into_permutations",
    "factor_into_proper_transpositions",
    "member",
    "y_parity",
    "z_generator",
    "ZBeta",
    "ZTau",
    "beta_power",
    "parse_ring_element",
    "tau_power",
    "BETA",
    "LEAF",
    "TAU",
    "CaretSystem",
    "Node",
    "basic_move",
    "spine",
    "unify",
    "beta_generator",
    "beta_parity",
    "compile_beta_word",
    "index4_class",
    "perm_sign",
]
