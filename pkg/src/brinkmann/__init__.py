"""Brinkmann orbit problems for endomorphisms of free groups."""

from .decide import No, Reason, Yes, brcp, brp, consistency_id
from .endo import Endomorphism, apply, compose, coset_of_kernel_eq, iterate_apply, parse_map
from .oracle import (
    FoundAt,
    NoNever,
    Unknown,
    conj_into_coset,
    detect_orbit_cycle,
    oracle_conj_coset,
    oracle_coset_membership,
    orbit_trace,
)
from .stallings import (
    StallingsAutomaton,
    build,
    coset_intersects,
    express,
    expression_table,
    member,
    preimage,
)
from .text import parse_word, render
from .words import (
    CyclicWord,
    Word,
    cyclically_reduce,
    invert,
    is_conjugate,
    multiply,
    primitive_root,
    reduce,
)

__all__ = [
    "CyclicWord", "Endomorphism", "FoundAt", "No", "NoNever", "Reason", "StallingsAutomaton",
    "Unknown", "Word", "Yes", "apply", "brcp", "brp", "build", "compose", "conj_into_coset",
    "consistency_id", "coset_intersects", "coset_of_kernel_eq", "cyclically_reduce",
    "detect_orbit_cycle", "express", "expression_table", "invert", "is_conjugate",
    "iterate_apply", "member", "multiply", "oracle_conj_coset", "oracle_coset_membership",
    "orbit_trace", "parse_map", "parse_word", "preimage", "primitive_root", "reduce", "render",
]
