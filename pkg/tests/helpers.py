"""Brute-force oracles and random generators for the test suite.

Nothing here calls the algorithms under test (folding, canonical rotation,
cycle detection); only plain multiplication and map application.
"""

from __future__ import annotations

import random
from functools import lru_cache

from hypothesis import strategies as st

from brinkmann.endo import Endomorphism, apply, compose
from brinkmann.words import Word, invert, multiply


@lru_cache(maxsize=None)
def all_words(rank: int, max_len: int) -> tuple:
    """Every reduced word of length <= max_len, shortest first."""
    out = [Word((), rank)]
    layer = [()]
    alphabet = [x for i in range(1, rank + 1) for x in (i, -i)]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in alphabet:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out.extend(Word(w, rank) for w in nxt)
        layer = nxt
    return tuple(out)


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> Word:
    n = rng.randint(min_len, max_len)
    letters = []
    while len(letters) < n:
        x = rng.choice([1, -1]) * rng.randint(1, rank)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(tuple(letters), rank)


def random_endo(rng: random.Random, rank: int, max_len: int) -> Endomorphism:
    return Endomorphism(rank, tuple(random_word(rng, rank, max_len) for _ in range(rank)))


def nielsen_move(rng: random.Random, rank: int) -> Endomorphism:
    images = [Word((i,), rank) for i in range(1, rank + 1)]
    kind = rng.choice(["invert", "swap", "multiply"] if rank > 1 else ["invert"])
    i = rng.randrange(rank)
    if kind == "invert":
        images[i] = invert(images[i])
    elif kind == "swap":
        j = rng.choice([j for j in range(rank) if j != i])
        images[i], images[j] = images[j], images[i]
    else:
        j = rng.choice([j for j in range(rank) if j != i])
        other = images[j] if rng.random() < 0.5 else invert(images[j])
        images[i] = multiply(images[i], other) if rng.random() < 0.5 else multiply(other, images[i])
    return Endomorphism(rank, tuple(images))


def random_automorphism(rng: random.Random, rank: int, moves: int) -> Endomorphism:
    phi = Endomorphism.identity(rank)
    for _ in range(moves):
        phi = compose(phi, nielsen_move(rng, rank))
    return phi


def conj(g: Word, u: Word) -> Word:
    """g^-1 u g"""
    return multiply(multiply(invert(g), u), g)


def naive_class(u: Word) -> tuple:
    """Conjugacy-class key: sorted set of rotations of the cyclic core."""
    a = list(u.letters)
    while len(a) >= 2 and a[0] == -a[-1]:
        a = a[1:-1]
    if not a:
        return ()
    return min(tuple(a[i:] + a[:i]) for i in range(len(a)))


def naive_class_word(u: Word) -> Word:
    return Word(naive_class(u), u.rank)


def brute_conjugator(u: Word, v: Word, bound: int):
    for g in all_words(u.rank, bound):
        if conj(g, u) == v:
            return g
    return None


def brute_subgroup(gens, rank: int, max_factors: int) -> set:
    """All reduced products of <= max_factors generators and inverses."""
    letters = list(gens) + [invert(g) for g in gens]
    seen = {Word((), rank)}
    layer = {Word((), rank)}
    for _ in range(max_factors):
        layer = {multiply(w, g) for w in layer for g in letters}
        seen |= layer
    return seen


def orbit_words(phi: Endomorphism, u: Word, steps: int, cap: int = 20_000):
    """u.phi^j for j = 0..steps, stopping early on a repeat or a word over ``cap``.

    Returns (words, complete) where ``complete`` means every j <= steps is
    covered, either directly or because the orbit repeated.
    """
    out = [u]
    seen = {u}
    x = u
    for _ in range(steps):
        x = apply(phi, x)
        if x in seen:
            return out, True
        if len(x) > cap:
            return out, False
        seen.add(x)
        out.append(x)
    return out, True


def plain_core(u: Word) -> Word:
    a = list(u.letters)
    while len(a) >= 2 and a[0] == -a[-1]:
        a = a[1:-1]
    return Word(tuple(a), u.rank)


def _text(u: Word) -> str:
    return "".join(chr(1000 + x) for x in u.letters)


def plain_conjugate(u: Word, v: Word) -> bool:
    """Cores of equal length, one a factor of the other doubled."""
    cu, cv = plain_core(u), plain_core(v)
    return len(cu) == len(cv) and _text(cv) in _text(cu) * 2


def brute_brp(phi, u, v, steps=200):
    """(least k or None, complete)"""
    words, complete = orbit_words(phi, u, steps)
    for k, w in enumerate(words):
        if w == v:
            return k, True
    return None, complete


def brute_brcp(phi, u, v, steps=200, cap=20_000):
    """(least k or None, complete); iterates on cores, which stay conjugate to u.phi^k."""
    c = plain_core(u)
    seen = set()
    for k in range(steps + 1):
        if plain_conjugate(c, v):
            return k, True
        if c in seen:
            return None, True
        seen.add(c)
        c = plain_core(apply(phi, c))
        if len(c) > cap:
            return None, False
    return None, True


# -- hypothesis strategies -------------------------------------------------


@st.composite
def words(draw, rank=2, max_len=8):
    raw = draw(st.lists(st.sampled_from([x for i in range(1, rank + 1) for x in (i, -i)]), max_size=max_len))
    out = []
    for x in raw:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(tuple(out), rank)


@st.composite
def endos(draw, rank=2, max_len=3):
    return Endomorphism(rank, tuple(draw(words(rank, max_len)) for _ in range(rank)))
