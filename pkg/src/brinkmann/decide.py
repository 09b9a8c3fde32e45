"""Decision procedures for the Brinkmann problems over F_n.

``brp(u, v, phi)`` asks whether ``u.phi^k == v`` for some ``k >= 0``;
``brcp(u, v, phi)`` asks the same up to conjugacy.  Both return
:class:`Yes`, :class:`No` or :class:`Unknown`; the last only when an oracle
run ran out of depth.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

from .endo import Endomorphism, _apply_encoded, apply
from .oracle import (
    DEFAULT_LENGTH_BUDGET,
    FoundAt,
    NoNever,
    OracleAnswer,
    Unknown,
    default_max_depth,
    oracle_conj_coset,
    oracle_coset_membership,
)
from .stallings import image_automaton, member, preimage
from .words import RankError, Word, _core_encoded, _encode, is_conjugate


class Reason(enum.Enum):
    NotInImage = "NotInImage"
    OrbitCycleExhausted = "OrbitCycleExhausted"
    FiniteWindowExhausted = "FiniteWindowExhausted"


@dataclass(frozen=True)
class Yes:
    """``k`` is the least exponent found.

    For brp the witness is ``u.phi^k`` itself (equal to v).  For brcp it is
    a conjugator g with ``g^-1 (u.phi^k) g == v``; it is ``None`` only if
    ``u.phi^k`` is too long to write down within the length budget.
    """

    k: int
    witness: Optional[Word]


@dataclass(frozen=True)
class No:
    reason: Reason


Decision = Union[Yes, No, Unknown]

ConjOracle = Callable[[Word, Word, Endomorphism, int], OracleAnswer]


def _check(u: Word, v: Word, phi: Endomorphism) -> None:
    if u.rank != phi.rank or v.rank != phi.rank:
        raise RankError(f"rank mismatch: u {u.rank}, v {v.rank}, endomorphism {phi.rank}")


def brp(u: Word, v: Word, phi: Endomorphism, max_depth: Optional[int] = None) -> Decision:
    _check(u, v, phi)
    if max_depth is None:
        max_depth = default_max_depth()
    if u == v:
        return Yes(0, v)
    if not member(image_automaton(phi), v):
        return No(Reason.NotInImage)
    v_prime = preimage(phi, v)
    # for k >= 1: u.phi^k == v  iff  u.phi^(k-1) lies in v'.ker(phi)
    ans = oracle_coset_membership(u, v_prime, phi, max_depth)
    if isinstance(ans, FoundAt):
        return Yes(ans.k + 1, v)
    if isinstance(ans, NoNever):
        return No(Reason.OrbitCycleExhausted)
    return ans


def _scan(phi: Endomorphism, u: Word, v: Word, lo: int, hi: int) -> Optional[int]:
    """Least j in [lo, hi] with u.phi^j conjugate to v."""
    rank = phi.rank
    target = _core_encoded(_encode(v.letters, rank))
    doubled = target + target
    c = _core_encoded(_encode(u.letters, rank))
    for j in range(hi + 1):
        if j >= lo and len(c) == len(target) and c in doubled:
            return j
        if j < hi:
            c = _core_encoded(_apply_encoded(phi, c))
    return None


def _conjugacy_witness(phi: Endomorphism, u: Word, v: Word, j: int) -> Optional[Word]:
    x = u
    for _ in range(j):
        x = apply(phi, x)
        if len(x) > DEFAULT_LENGTH_BUDGET:
            return None
    ok, g = is_conjugate(x, v)
    assert ok
    return g


def brcp(
    u: Word,
    v: Word,
    phi: Endomorphism,
    max_depth: Optional[int] = None,
    oracle: ConjOracle = oracle_conj_coset,
) -> Decision:
    """Two oracle runs, then a finite conjugacy scan.

    If u.phi^k ~ v.ker(phi) then u.phi^(k+1) ~ v.phi.  If no p >= 0 has
    v.phi^(p+1) ~ v.ker(phi), no orbit point past k is conjugate to v.  If
    such a p exists, u.phi^(k+p+2) ~ u.phi^(k+1), so the orbit has finitely
    many conjugacy classes and indices 0..k+p+1 cover all of them.  ``oracle``
    may return any valid k, not only the least one.
    """
    _check(u, v, phi)
    if max_depth is None:
        max_depth = default_max_depth()
    first = oracle(u, v, phi, max_depth)
    if isinstance(first, NoNever):
        return No(Reason.OrbitCycleExhausted)
    if isinstance(first, Unknown):
        return first
    k = first.k
    # [0, k] lies in both windows below; scanning it first turns some
    # Unknown answers of the second run into certified hits
    j = _scan(phi, u, v, 0, k)
    if j is not None:
        return Yes(j, _conjugacy_witness(phi, u, v, j))
    second = oracle(apply(phi, v), v, phi, max_depth)
    if isinstance(second, Unknown):
        return second
    if isinstance(second, NoNever):
        return No(Reason.FiniteWindowExhausted)
    j = _scan(phi, u, v, k + 1, k + second.k + 1)
    if j is not None:
        return Yes(j, _conjugacy_witness(phi, u, v, j))
    return No(Reason.FiniteWindowExhausted)


def consistency_id(u: Word, v: Word) -> Tuple[bool, bool]:
    """Check brp/brcp against word and conjugacy problems for phi = id."""
    phi = Endomorphism.identity(u.rank)
    wp = isinstance(brp(u, v, phi), Yes) == (u == v)
    cp = isinstance(brcp(u, v, phi), Yes) == is_conjugate(u, v)[0]
    return wp, cp
