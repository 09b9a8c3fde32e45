"""Bounded orbit oracles with cycle detection.

Both oracles walk the orbit u, u.phi, u.phi^2, ... and evaluate an exact
per-step predicate.  They answer

* ``FoundAt(k)`` for the least k at which the predicate holds,
* ``NoNever`` once the orbit state repeats with no hit so far (every later
  state is then one already tested), or
* ``Unknown(depth)`` when the depth or length budget runs out first.

The coset oracle uses the exact reduced word as state.  The conjugacy
oracle uses the canonical cyclic word, which is enough because conjugate
words have conjugate images.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple, Union

from .endo import Endomorphism, _apply_encoded, apply
from .stallings import build_cached, coset_intersects, image_automaton
from .words import (
    RankError,
    Word,
    _core_encoded,
    _decode,
    _encode,
    canonical_form,
    cyclic_core,
    invert,
    is_conjugate,
    primitive_root,
    product,
)

DEFAULT_MAX_DEPTH = 10_000
DEFAULT_LENGTH_BUDGET = 1_000_000

EXACT = "exact"
CYCLIC = "cyclic"


def default_max_depth() -> int:
    return int(os.environ.get("BRINKMANN_MAX_DEPTH", DEFAULT_MAX_DEPTH))


@dataclass(frozen=True)
class FoundAt:
    k: int
    state: Word  # orbit state at step k; replaying the predicate on it gives True


@dataclass(frozen=True)
class NoNever:
    preperiod: int
    period: int


@dataclass(frozen=True)
class Unknown:
    depth: int


OracleAnswer = Union[FoundAt, NoNever, Unknown]


@dataclass
class OrbitTrace:
    mode: str
    steps: List[Tuple[int, Word, Optional[bool]]] = field(default_factory=list)
    cycle: Optional[Tuple[int, int]] = None
    answer: Optional[OracleAnswer] = None


def _check(*words: Word, phi: Endomorphism) -> None:
    for w in words:
        if w.rank != phi.rank:
            raise RankError(f"rank mismatch: word {w.rank}, endomorphism {phi.rank}")


class _CyclicSeen:
    """Conjugacy classes seen so far, bucketed by letter counts.

    Avoids computing a canonical rotation per step: two cyclically reduced
    words are conjugate iff one is a factor of the other doubled.
    """

    def __init__(self, rank: int):
        self._alphabet = _encode(tuple(x for i in range(1, rank + 1) for x in (i, -i)), rank)
        self._buckets: dict = {}

    def _key(self, s: str):
        return tuple(map(s.count, self._alphabet))

    def get(self, s: str) -> Optional[int]:
        for t, k in self._buckets.get(self._key(s), ()):
            if s in t + t:
                return k
        return None

    def __setitem__(self, s: str, k: int) -> None:
        self._buckets.setdefault(self._key(s), []).append((s, k))


def _walk(
    phi: Endomorphism,
    u: Word,
    max_depth: int,
    mode: str,
    predicate: Optional[Callable[[str], bool]],
    length_budget: int = DEFAULT_LENGTH_BUDGET,
    trace: Optional[OrbitTrace] = None,
) -> OracleAnswer:
    """Shared orbit loop over encoded words.

    ``predicate`` sees the encoded image of the current state under phi;
    with ``predicate=None`` the loop only looks for a cycle.  In cyclic mode
    the state is some cyclically reduced conjugate of the orbit word.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    if mode not in (EXACT, CYCLIC):
        raise ValueError(f"unknown mode {mode!r}")
    rank = phi.rank
    cyclic = mode == CYCLIC

    def word(s: str) -> Word:
        w = Word._trusted(_decode(s, rank), rank)
        return canonical_form(w) if cyclic else w

    seen = _CyclicSeen(rank) if cyclic else {}
    state = _encode(u.letters, rank)
    if cyclic:
        state = _core_encoded(state)
    seen[state] = 0
    stored = len(state)
    for k in range(max_depth):
        image = _apply_encoded(phi, state)
        hit = predicate(image) if predicate is not None else None
        if trace is not None:
            trace.steps.append((k, word(state), hit))
        if hit:
            return FoundAt(k, word(state))
        nxt = _core_encoded(image) if cyclic else image
        j = seen.get(nxt)
        if j is not None:
            if trace is not None:
                trace.cycle = (j, k + 1 - j)
            return NoNever(j, k + 1 - j)
        stored += len(nxt)
        if stored > length_budget:
            return Unknown(k + 1)
        seen[nxt] = k + 1
        state = nxt
    return Unknown(max_depth)


def _coset_predicate(v_prime: Word, phi: Endomorphism) -> Callable[[str], bool]:
    target = _encode(apply(phi, v_prime).letters, phi.rank)
    return target.__eq__


def _conj_predicate(v: Word, phi: Endomorphism) -> Callable[[str], bool]:
    V = apply(phi, v)
    n = len(_core_encoded(_encode(V.letters, phi.rank)))

    def test(image: str) -> bool:
        # conjugate words have cores of equal length; skip decoding otherwise
        if len(_core_encoded(image)) != n:
            return False
        return _conj_images(Word._trusted(_decode(image, phi.rank), phi.rank), V, phi)

    return test


def detect_orbit_cycle(
    phi: Endomorphism, u: Word, max_depth: int, mode: str = EXACT
) -> Optional[Tuple[int, int]]:
    """(preperiod, period) of the orbit of u, if a state repeats within max_depth steps."""
    _check(u, phi=phi)
    ans = _walk(phi, u, max_depth, mode, None)
    if isinstance(ans, NoNever):
        return ans.preperiod, ans.period
    return None


def oracle_coset_membership(
    u: Word,
    v_prime: Word,
    phi: Endomorphism,
    max_depth: Optional[int] = None,
    length_budget: int = DEFAULT_LENGTH_BUDGET,
) -> OracleAnswer:
    """Search the least k >= 0 with ``u.phi^k in v_prime.ker(phi)``."""
    _check(u, v_prime, phi=phi)
    if max_depth is None:
        max_depth = default_max_depth()
    return _walk(phi, u, max_depth, EXACT, _coset_predicate(v_prime, phi), length_budget)


def conj_into_coset(u_prime: Word, v: Word, phi: Endomorphism) -> bool:
    """Decide whether u_prime is conjugate into the coset v.ker(phi).

    u' ~ v.ker(phi)  iff  some g has (g^-1 u' g)phi = v.phi
                     iff  some h in im(phi) has h^-1 U h = V,
    with U = u'.phi and V = v.phi.  When U and V are nontrivial and conjugate
    by g0, the conjugators from U to V are exactly root(U)^m g0, so the
    question is whether that cyclic coset meets im(phi).
    """
    _check(u_prime, v, phi=phi)
    return _conj_images(apply(phi, u_prime), apply(phi, v), phi)


def _conj_images(U: Word, V: Word, phi: Endomorphism) -> bool:
    """Is some h in im(phi) with h^-1 U h == V?"""
    if not U.letters or not V.letters:
        return not U.letters and not V.letters
    ok, g0 = is_conjugate(U, V)
    if not ok:
        return False
    H = image_automaton(phi)
    c, w = cyclic_core(U)
    r, _ = primitive_root(c)
    # root(U) = w r w^-1, so r^m (w^-1 g0 w) must lie in w^-1 im(phi) w
    if w.letters:
        wi = invert(w)
        H = build_cached(tuple(product([wi, h, w], phi.rank) for h in H.generator_words), phi.rank)
        g0 = product([wi, g0, w], phi.rank)
    return coset_intersects(r, g0, H) is not None


def oracle_conj_coset(
    u: Word,
    v: Word,
    phi: Endomorphism,
    max_depth: Optional[int] = None,
    length_budget: int = DEFAULT_LENGTH_BUDGET,
) -> OracleAnswer:
    """Search the least k >= 0 with ``u.phi^k`` conjugate into ``v.ker(phi)``.

    The returned state is the canonical cyclic word of ``u.phi^k``.
    """
    _check(u, v, phi=phi)
    if max_depth is None:
        max_depth = default_max_depth()
    return _walk(phi, u, max_depth, CYCLIC, _conj_predicate(v, phi), length_budget)


def orbit_trace(
    phi: Endomorphism,
    u: Word,
    max_depth: int,
    mode: str = EXACT,
    target: Optional[Word] = None,
) -> OrbitTrace:
    """Record the orbit walk.

    With a ``target`` the predicate is the coset test against it (exact
    mode) or the conjugate-into-coset test (cyclic mode).
    """
    _check(u, phi=phi)
    predicate = None
    if target is not None:
        _check(target, phi=phi)
        if mode == EXACT:
            predicate = _coset_predicate(target, phi)
        else:
            predicate = _conj_predicate(target, phi)
    trace = OrbitTrace(mode)
    trace.answer = _walk(phi, u, max_depth, mode, predicate, trace=trace)
    return trace
