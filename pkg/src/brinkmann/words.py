"""Reduced words in a free group of finite rank.

A letter is a nonzero int: ``+i`` is the generator x_i and ``-i`` its
inverse, for ``1 <= i <= rank``.  A :class:`Word` always holds a freely
reduced letter tuple; the empty tuple is the identity.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple


class RankError(ValueError):
    """A letter or operand does not fit the ambient rank."""


@dataclass(frozen=True)
class Word:
    letters: Tuple[int, ...]
    rank: int

    def __post_init__(self):
        letters = self.letters
        if not isinstance(letters, tuple):
            letters = tuple(letters)
            object.__setattr__(self, "letters", letters)
        rank = self.rank
        prev = 0
        for x in letters:
            if x == 0 or x > rank or x < -rank:
                raise RankError(f"letter {x} outside rank {rank}")
            if x == -prev:
                raise ValueError(f"letters {letters} are not freely reduced")
            prev = x

    @classmethod
    def _trusted(cls, letters: Tuple[int, ...], rank: int) -> "Word":
        # skips validation; only for letters already known to be reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "rank", rank)
        return w

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls((), rank)

    @classmethod
    def generator(cls, i: int, rank: int) -> "Word":
        return cls((i,), rank)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, m: int) -> "Word":
        return power(self, m)

    def __str__(self) -> str:
        from .text import render

        return render(self)

    def is_identity(self) -> bool:
        return not self.letters

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]


def _free_reduce(raw: Iterable[int]) -> list:
    out: list = []
    for x in raw:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def reduce(raw: Iterable[int], rank: int) -> Word:
    """Freely reduce a raw letter sequence.

    >>> reduce([1, -1, 2], 2).letters
    (2,)
    """
    raw = tuple(raw)
    for x in raw:
        if x == 0 or x > rank or x < -rank:
            raise RankError(f"letter {x} outside rank {rank}")
    return Word._trusted(tuple(_free_reduce(raw)), rank)


def _check_ranks(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise RankError(f"rank mismatch: {u.rank} vs {v.rank}")


def multiply(u: Word, v: Word) -> Word:
    _check_ranks(u, v)
    a, b = u.letters, v.letters
    # only the junction can cancel
    i = 0
    n = min(len(a), len(b))
    while i < n and a[len(a) - 1 - i] == -b[i]:
        i += 1
    return Word._trusted(a[: len(a) - i] + b[i:], u.rank)


def product(words: Sequence[Word], rank: int) -> Word:
    raw: list = []
    for w in words:
        if w.rank != rank:
            raise RankError(f"rank mismatch: {w.rank} vs {rank}")
        raw.extend(w.letters)
    return Word._trusted(tuple(_free_reduce(raw)), rank)


def invert(u: Word) -> Word:
    return Word._trusted(tuple(-x for x in reversed(u.letters)), u.rank)


def power(u: Word, m: int) -> Word:
    if m < 0:
        u, m = invert(u), -m
    if m == 0 or not u.letters:
        return Word((), u.rank)
    core = cyclically_reduce(u)
    c, w = core.canonical, core.conjugator
    # u = w c w^-1 with c cyclically reduced, so c^m is reduced as written
    return product([w, Word._trusted(c.letters * m, u.rank), invert(w)], u.rank)


def conjugate(u: Word, g: Word) -> Word:
    """Return ``g^-1 u g``."""
    return product([invert(g), u, g], u.rank)


# -- cyclic words ---------------------------------------------------------


def letter_key(x: int) -> int:
    """Order a1 < A1 < a2 < A2 < ... used for canonical rotations."""
    return 2 * x - 1 if x > 0 else -2 * x


def _lcp(s: str, i: int, j: int, n: int) -> int:
    """Length of the common prefix of s[i:i+n] and s[j:j+n], compared in C."""
    k, step = 0, 1
    while k < n:
        m = min(step, n - k)
        if s[i + k : i + k + m] == s[j + k : j + k + m]:
            k += m
            step *= 2
            continue
        lo, hi = 0, m - 1  # first mismatch is at offset in [lo, hi]
        while lo < hi:
            mid = (lo + hi) // 2
            if s[i + k : i + k + mid + 1] == s[j + k : j + k + mid + 1]:
                lo = mid + 1
            else:
                hi = mid
        return k + lo
    return n


def _least_rotation(text: str) -> int:
    """Start index of the lexicographically least rotation (two-pointer scan)."""
    n = len(text)
    if n < 2:
        return 0
    s = text * 2
    i, j = 0, 1
    while i < n and j < n:
        k = _lcp(s, i, j, n)
        if k == n:
            break
        if s[i + k] > s[j + k]:
            i += k + 1
        else:
            j += k + 1
        if i == j:
            j += 1
    return min(i, j)


@dataclass(frozen=True)
class CyclicWord:
    """Canonical representative of a conjugacy class.

    ``canonical == conjugator^-1 * original * conjugator``.
    """

    canonical: Word
    conjugator: Word


def _strip(u: Word) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split u = w c w^-1 with c cyclically reduced; return (w, c)."""
    a = u.letters
    i, j = 0, len(a) - 1
    while i < j and a[i] == -a[j]:
        i += 1
        j -= 1
    return a[:i], a[i : j + 1]


def cyclic_core(u: Word) -> Tuple[Word, Word]:
    """Return (c, w) with u = w c w^-1 and c cyclically reduced (no rotation)."""
    w, c = _strip(u)
    return Word._trusted(c, u.rank), Word._trusted(w, u.rank)


def cyclically_reduce(u: Word) -> CyclicWord:
    w, c = _strip(u)
    if not c:
        return CyclicWord(Word._trusted((), u.rank), Word._trusted(w, u.rank))
    r = _least_rotation(_encode(c, u.rank))
    # rotating c = xy to yx conjugates by x
    return CyclicWord(Word._trusted(c[r:] + c[:r], u.rank), Word._trusted(w + c[:r], u.rank))


def canonical_form(u: Word) -> Word:
    return cyclically_reduce(u).canonical


# -- string codec ---------------------------------------------------------
# Long orbit words are processed as strings so that the inner loops run in C.
# Letter x is encoded as chr(letter_key(x)), which keeps the rotation order.


@functools.lru_cache(maxsize=None)
def _codec(rank: int):
    enc = tuple(chr(letter_key(x)) if x else "" for x in range(-rank, rank + 1))
    dec = [0] * (2 * rank + 1)
    for i in range(1, rank + 1):
        dec[letter_key(i)], dec[letter_key(-i)] = i, -i
    pairs = [chr(2 * i - 1) + chr(2 * i) for i in range(1, rank + 1)]
    pairs += [p[::-1] for p in pairs]
    cancel = re.compile("|".join(map(re.escape, pairs))) if rank else None
    return enc, tuple(dec), cancel


def _encode(letters: Sequence[int], rank: int) -> str:
    enc = _codec(rank)[0]
    return "".join(map(enc.__getitem__, map(rank.__add__, letters)))


def _decode(s: str, rank: int) -> Tuple[int, ...]:
    return tuple(map(_codec(rank)[1].__getitem__, map(ord, s)))


def _core_encoded(s: str) -> str:
    """Cyclic core of an encoded reduced word."""
    i, j = 0, len(s) - 1
    # encoded x and x^-1 are the adjacent code points 2i-1 and 2i
    while i < j and s[i] != s[j] and (ord(s[i]) + 1) >> 1 == (ord(s[j]) + 1) >> 1:
        i += 1
        j -= 1
    return s[i : j + 1]


def _reduce_encoded(s: str, rank: int) -> str:
    """Freely reduce an encoded word."""
    cancel = _codec(rank)[2]
    if cancel is None:
        return s
    # each pass deletes adjacent inverse pairs; deep cascades fall back to a stack
    for _ in range(8):
        t = cancel.sub("", s)
        if len(t) == len(s):
            return t
        s = t
    return _encode(_free_reduce(_decode(s, rank)), rank)


def is_conjugate(u: Word, v: Word) -> Tuple[bool, Optional[Word]]:
    """Decide conjugacy; on success also return g with g^-1 u g = v."""
    _check_ranks(u, v)
    wu, cu = _strip(u)
    wv, cv = _strip(v)
    if len(cu) != len(cv):
        return False, None
    if not cu:
        g = product([Word._trusted(wu, u.rank), invert(Word._trusted(wv, u.rank))], u.rank)
        return True, g
    i = (_encode(cu, u.rank) * 2).find(_encode(cv, u.rank))
    if i < 0:
        return False, None
    T = Word._trusted
    g = product([T(wu, u.rank), T(cu[:i], u.rank), invert(T(wv, u.rank))], u.rank)
    return True, g


def primitive_root(u: Word) -> Tuple[Word, int]:
    """Return (root, e) with u = root^e and root not a proper power."""
    if not u.letters:
        raise ValueError("the identity has no primitive root")
    w, c = _strip(u)
    s = _encode(c, u.rank)
    d = (s * 2).find(s, 1)
    T = Word._trusted
    root = product([T(w, u.rank), T(c[:d], u.rank), invert(T(w, u.rank))], u.rank)
    return root, len(c) // d
