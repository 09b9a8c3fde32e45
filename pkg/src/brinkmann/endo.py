"""Endomorphisms of F_n given by generator images.

Maps act on the right, as in ``(u)phi``: ``apply(phi, u)`` is the image of
``u`` and ``compose(phi, psi)`` is "first phi, then psi".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from .text import ParseError, parse_word, render
from .words import RankError, Word, _decode, _encode, _reduce_encoded, invert


@dataclass(frozen=True)
class Endomorphism:
    rank: int
    images: Tuple[Word, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.rank:
            raise RankError(f"expected {self.rank} images, got {len(images)}")
        for w in images:
            if w.rank != self.rank:
                raise RankError(f"image {w} has rank {w.rank}, expected {self.rank}")

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, tuple(Word.generator(i, rank) for i in range(1, rank + 1)))

    @classmethod
    def from_strings(cls, images: Sequence[str], rank: int) -> "Endomorphism":
        return cls(rank, tuple(parse_word(s, rank) for s in images))

    def _translation(self) -> Dict[int, str]:
        # encoded letter -> encoded image, built once per map
        table = self.__dict__.get("_table")
        if table is None:
            table = {}
            for i, w in enumerate(self.images, start=1):
                img = _encode(w.letters, self.rank)
                table[ord(_encode((i,), self.rank))] = img
                table[ord(_encode((-i,), self.rank))] = _encode(invert(w).letters, self.rank)
            object.__setattr__(self, "_table", table)
        return table

    def __call__(self, u: Word) -> Word:
        return apply(self, u)

    def __str__(self) -> str:
        return ";".join(f"{render(Word.generator(i + 1, self.rank))}={render(w)}" for i, w in enumerate(self.images))


def apply(phi: Endomorphism, u: Word) -> Word:
    """Image ``(u)phi``, freely reduced."""
    if u.rank != phi.rank:
        raise RankError(f"rank mismatch: word {u.rank}, endomorphism {phi.rank}")
    rank = phi.rank
    return Word._trusted(_decode(_apply_encoded(phi, _encode(u.letters, rank)), rank), rank)


def _apply_encoded(phi: Endomorphism, s: str) -> str:
    return _reduce_encoded(s.translate(phi._translation()), phi.rank)


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """The map ``u -> ((u)phi)psi``."""
    if phi.rank != psi.rank:
        raise RankError(f"rank mismatch: {phi.rank} vs {psi.rank}")
    return Endomorphism(phi.rank, tuple(apply(psi, w) for w in phi.images))


def iterate_apply(phi: Endomorphism, u: Word, k: int) -> Word:
    """``(u)phi^k``; ``k = 0`` returns ``u``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        u = apply(phi, u)
    return u


def coset_of_kernel_eq(x: Word, v_prime: Word, phi: Endomorphism) -> bool:
    """Decide ``x in v_prime * ker(phi)``, i.e. ``(x)phi == (v_prime)phi``."""
    return apply(phi, x) == apply(phi, v_prime)


# -- text formats ---------------------------------------------------------

_INLINE_SEP = re.compile(r"[;\n]")


def _generator_index(name: str, rank: int) -> int:
    w = parse_word(name, rank)
    if len(w) != 1 or w.letters[0] < 0:
        raise ParseError(f"{name!r} is not a generator name")
    return w.letters[0]


def _from_pairs(pairs, rank: int) -> Endomorphism:
    images: Dict[int, Word] = {}
    for lhs, rhs in pairs:
        i = _generator_index(lhs.strip(), rank)
        if i in images:
            raise ParseError(f"generator {lhs.strip()!r} given twice")
        images[i] = parse_word(rhs, rank)
    missing = [i for i in range(1, rank + 1) if i not in images]
    if missing:
        names = ", ".join(render(Word.generator(i, rank)) for i in missing)
        raise ParseError(f"no image given for {names}")
    return Endomorphism(rank, tuple(images[i] for i in range(1, rank + 1)))


def parse_map(text: str, rank: int) -> Endomorphism:
    """Parse ``a=ab;b=b`` or the line format ``a -> a b``.

    Every generator must be given an image.  Blank lines and ``#`` comments
    are skipped in the line format.
    """
    pairs = []
    for chunk in _INLINE_SEP.split(text):
        chunk = chunk.split("#", 1)[0].strip()
        if not chunk:
            continue
        if "->" in chunk:
            lhs, rhs = chunk.split("->", 1)
        elif "=" in chunk:
            lhs, rhs = chunk.split("=", 1)
        else:
            raise ParseError(f"cannot read map entry {chunk!r}")
        pairs.append((lhs, rhs))
    return _from_pairs(pairs, rank)


def format_map(phi: Endomorphism) -> str:
    """Line format accepted by :func:`parse_map`."""
    lines = []
    for i, w in enumerate(phi.images):
        lines.append(f"{render(Word.generator(i + 1, phi.rank))} -> {render(w)}")
    return "\n".join(lines) + "\n"


def to_document(phi: Endomorphism) -> dict:
    return {"rank": phi.rank, "images": [render(w) for w in phi.images]}


def from_document(doc: dict) -> Endomorphism:
    rank = int(doc["rank"])
    images = doc["images"]
    if len(images) != rank:
        raise ParseError(f"expected {rank} images, got {len(images)}")
    return Endomorphism.from_strings(images, rank)
