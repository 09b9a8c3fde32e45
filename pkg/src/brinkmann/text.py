"""Text syntax for words.

Lowercase ``a, b, c, ...`` are the generators x1, x2, x3, ...; uppercase
letters are their inverses.  ``x3`` / ``x3^-1`` name generators explicitly,
any token may carry an integer exponent (``a^3``, ``B^-2``), and ``1`` or the
empty string is the identity.  Whitespace, ``*`` and ``.`` separate tokens.
"""

from __future__ import annotations

import re
import string

from .words import RankError, Word, reduce


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|([A-Za-z])|(1))(?:\^(-?\d+))?\s*[*.]?")


def parse_word(text: str, rank: int) -> Word:
    """Parse ``text`` into a reduced word of the given rank.

    >>> parse_word("aBa", 2).letters
    (1, -2, 1)
    >>> parse_word("x2^-1 a", 2).letters
    (-2, 1)
    """
    raw = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos] == "^":
                raise ParseError(f"malformed exponent at position {pos} in {text!r}")
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos} in {text!r}")
        xs, digits, ch, one, exp = m.groups()
        e = int(exp) if exp is not None else 1
        if one is not None:
            letter = None
        elif xs is not None:
            letter = int(digits)
            if letter == 0:
                raise ParseError("generators are numbered from x1")
        elif ch.islower():
            letter = ord(ch) - ord("a") + 1
        else:
            letter = -(ord(ch) - ord("A") + 1)
        if letter is not None:
            if abs(letter) > rank:
                raise ParseError(f"generator {m.group(0).strip()!r} is beyond rank {rank}")
            raw.extend([letter if e > 0 else -letter] * abs(e))
        pos = m.end()
    try:
        return reduce(raw, rank)
    except RankError as exc:
        raise ParseError(str(exc)) from exc


def _letter(x: int, rank: int) -> str:
    if rank <= 26:
        c = string.ascii_lowercase[abs(x) - 1]
        return c if x > 0 else c.upper()
    return f"x{x}" if x > 0 else f"x{-x}^-1"


def render(w: Word) -> str:
    """Inverse of :func:`parse_word`; the identity renders as ``1``."""
    if not w.letters:
        return "1"
    sep = "" if w.rank <= 26 else " "
    return sep.join(_letter(x, w.rank) for x in w.letters)


def render_abstract(w: Word, symbol: str = "g") -> str:
    """Render a word over subgroup-generator symbols, e.g. ``g1 g2^-1``."""
    if not w.letters:
        return "1"
    parts = []
    i = 0
    a = w.letters
    while i < len(a):
        j = i
        while j < len(a) and a[j] == a[i]:
            j += 1
        e = (j - i) * (1 if a[i] > 0 else -1)
        name = f"{symbol}{abs(a[i])}"
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)
