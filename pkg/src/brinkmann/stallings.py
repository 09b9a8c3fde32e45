"""Stallings automata of finitely generated subgroups of F_n.

The automaton is built from a bouquet of petals (one closed path per
generator) by folding.  Folding runs on a union-find over vertices with a
worklist of label clashes.  Every edge also carries an *abstract label*: a
word over symbols g1..gm standing for the input generators, with the
property that along any closed path at the base, substituting the
generators into the product of abstract labels gives the path's label in
F_n.  Vertex merges keep this property by shifting the potential of the
absorbed vertex, which is what the weighted union-find stores.
"""

from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .endo import Endomorphism
from .text import render
from .words import RankError, Word, _free_reduce, invert, letter_key, multiply, product


class NotInSubgroupError(ValueError):
    pass


class _Folder:
    def __init__(self, rank: int, ngens: int):
        self.rank = rank
        self.eps = Word((), ngens)
        self.parent: List[int] = []
        self.offset: List[Word] = []
        self.slots: List[Optional[Dict[int, Tuple[int, int]]]] = []
        self.edges: List[Tuple[int, int, int, Word]] = []
        self.alive: List[bool] = []
        self.pending: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []
        self.base = self.new_vertex()

    def new_vertex(self) -> int:
        v = len(self.parent)
        self.parent.append(v)
        self.offset.append(self.eps)
        self.slots.append({})
        return v

    def find(self, v: int) -> int:
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # nearest-to-root first, so each parent's offset is already absolute
        for x in reversed(path):
            p = self.parent[x]
            if p != root:
                self.offset[x] = multiply(self.offset[p], self.offset[x])
                self.parent[x] = root
        return root

    def potential(self, v: int) -> Word:
        return self.eps if self.find(v) == v else self.offset[v]

    def half(self, h):
        e, d = h
        s, lab, t, a = self.edges[e]
        if d > 0:
            return s, lab, t, a
        return t, -lab, s, invert(a)

    def effective(self, h) -> Word:
        s, _, t, a = self.half(h)
        return product([self.potential(s), a, invert(self.potential(t))], a.rank)

    def insert(self, h) -> None:
        s, lab, _, _ = self.half(h)
        slot = self.slots[self.find(s)]
        cur = slot.get(lab)
        if cur is None or not self.alive[cur[0]]:
            slot[lab] = h
        else:
            self.pending.append((cur, h))

    def add_edge(self, s: int, lab: int, t: int, a: Word) -> None:
        e = len(self.edges)
        self.edges.append((s, lab, t, a))
        self.alive.append(True)
        self.insert((e, 1))
        self.insert((e, -1))

    def fold(self) -> None:
        while self.pending:
            h1, h2 = self.pending.pop()
            if not self.alive[h2[0]]:
                continue
            if not self.alive[h1[0]]:
                self.insert(h2)
                continue
            t1 = self.find(self.half(h1)[2])
            t2 = self.find(self.half(h2)[2])
            self.alive[h2[0]] = False
            if t1 == t2:
                continue
            a1, a2 = self.effective(h1), self.effective(h2)
            if t2 == self.base:
                y, x, delta = t1, t2, multiply(invert(a2), a1)
            else:
                y, x, delta = t2, t1, multiply(invert(a1), a2)
            self.parent[y] = x
            self.offset[y] = delta
            moved = self.slots[y]
            self.slots[y] = None
            for h in moved.values():
                if self.alive[h[0]]:
                    self.insert(h)

    def result(self):
        """Live edges on root vertices, labels made positive."""
        out = []
        for e, (s, lab, t, _) in enumerate(self.edges):
            if not self.alive[e]:
                continue
            a = self.effective((e, 1))
            s, t = self.find(s), self.find(t)
            if lab < 0:
                s, lab, t, a = t, -lab, s, invert(a)
            out.append((s, lab, t, a))
        return out


def _prune(edges, base: int):
    degree: Dict[int, int] = {}
    incident: Dict[int, List[int]] = {}
    for i, (s, _, t, _) in enumerate(edges):
        for v in (s, t):
            degree[v] = degree.get(v, 0) + 1
            incident.setdefault(v, []).append(i)
    dead = set()
    queue = [v for v, d in degree.items() if d == 1 and v != base]
    while queue:
        v = queue.pop()
        if degree[v] != 1:
            continue
        (i,) = [i for i in incident[v] if i not in dead]
        dead.add(i)
        s, _, t, _ = edges[i]
        for w in (s, t):
            degree[w] -= 1
            if w != base and degree[w] == 1:
                queue.append(w)
    return [e for i, e in enumerate(edges) if i not in dead]


class StallingsAutomaton:
    """Folded core graph of a subgroup, with base vertex 0.

    Vertices are numbered in breadth-first order from the base, visiting
    labels in the order a < A < b < B < ..., so two automata of the same
    subgroup have identical ``edges``.
    """

    base = 0

    def __init__(self, rank: int, generator_words: Tuple[Word, ...], raw_edges, old_base: int):
        self.rank = rank
        self.generator_words = generator_words
        adj: Dict[int, List[Tuple[int, int, int]]] = {}
        for i, (s, lab, t, _) in enumerate(raw_edges):
            adj.setdefault(s, []).append((lab, t, i))
            adj.setdefault(t, []).append((-lab, s, i))
        order = {old_base: 0}
        queue = deque([old_base])
        while queue:
            v = queue.popleft()
            for lab, t, _ in sorted(adj.get(v, []), key=lambda x: letter_key(x[0])):
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        edges = sorted(
            ((order[s], lab, order[t], a) for s, lab, t, a in raw_edges),
            key=lambda e: (e[0], e[1], e[2]),
        )
        self.num_vertices = len(order)
        self.edges: Tuple[Tuple[int, int, int], ...] = tuple((s, lab, t) for s, lab, t, _ in edges)
        self.edge_labels: Tuple[Word, ...] = tuple(a for *_, a in edges)
        self._trans: List[Dict[int, Tuple[int, int, int]]] = [{} for _ in range(self.num_vertices)]
        for i, (s, lab, t) in enumerate(self.edges):
            self._trans[s][lab] = (t, i, 1)
            self._trans[t][-lab] = (s, i, -1)

    @property
    def ngens(self) -> int:
        return len(self.generator_words)

    def vertices(self) -> range:
        return range(self.num_vertices)

    def degree(self, v: int) -> int:
        return len(self._trans[v])

    def step(self, v: int, x: int) -> Optional[int]:
        hit = self._trans[v].get(x)
        return None if hit is None else hit[0]

    def out(self, v: int) -> Dict[int, Tuple[int, int, int]]:
        """Map of signed label -> (target, edge index, direction)."""
        return self._trans[v]

    def read(self, u: Word, start: int = 0) -> Optional[int]:
        """End vertex of the path labelled ``u`` from ``start``, if it exists."""
        if u.rank != self.rank:
            raise RankError(f"rank mismatch: word {u.rank}, automaton {self.rank}")
        v = start
        trans = self._trans
        for x in u.letters:
            hit = trans[v].get(x)
            if hit is None:
                return None
            v = hit[0]
        return v

    def subgroup_rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def to_dot(self) -> str:
        lines = ["digraph stallings {", "  rankdir=LR;"]
        for v in self.vertices():
            shape = "doublecircle" if v == self.base else "circle"
            lines.append(f"  {v} [shape={shape}];")
        for s, lab, t in self.edges:
            lines.append(f'  {s} -> {t} [label="{render(Word((lab,), self.rank))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        gens = ", ".join(render(w) for w in self.generator_words)
        return f"<StallingsAutomaton <{gens}> rank={self.rank} |V|={self.num_vertices} |E|={len(self.edges)}>"


def build(generators: Sequence[Word], rank: int) -> StallingsAutomaton:
    """Fold the petal bouquet of ``generators`` into a core automaton."""
    generators = tuple(generators)
    for w in generators:
        if w.rank != rank:
            raise RankError(f"generator {w} has rank {w.rank}, expected {rank}")
    m = len(generators)
    f = _Folder(rank, m)
    eps = Word((), m)
    for i, w in enumerate(generators, start=1):
        prev = f.base
        n = len(w.letters)
        for j, x in enumerate(w.letters):
            last = j == n - 1
            nxt = f.base if last else f.new_vertex()
            f.add_edge(prev, x, nxt, Word((i,), m) if last else eps)
            prev = nxt
    f.fold()
    edges = _prune(f.result(), f.base)
    return StallingsAutomaton(rank, generators, edges, f.base)


@functools.lru_cache(maxsize=512)
def build_cached(generators: Tuple[Word, ...], rank: int) -> StallingsAutomaton:
    """:func:`build` memoized on the generator tuple; treat the result as read-only."""
    return build(generators, rank)


def image_automaton(phi: Endomorphism) -> StallingsAutomaton:
    """Automaton of im(phi) = <(x_1)phi, ..., (x_n)phi>, cached per map."""
    return build_cached(phi.images, phi.rank)


def member(H: StallingsAutomaton, u: Word) -> bool:
    return H.read(u) == H.base


# -- expressing members ----------------------------------------------------


@dataclass(frozen=True)
class ExpressionTable:
    """Spanning tree of an automaton plus one abstract word per edge.

    ``tree_edge[v]`` is the (edge, direction) used to reach ``v`` from its
    tree parent (``None`` at the base).  ``edge_words[e]`` is ``1`` on tree
    edges; on a non-tree edge it expresses the corresponding free-basis
    element of the subgroup over the input generators.
    """

    tree_edge: Tuple[Optional[Tuple[int, int]], ...]
    edge_words: Tuple[Word, ...]

    def non_tree_edges(self) -> List[int]:
        tree = {h[0] for h in self.tree_edge if h is not None}
        return [e for e in range(len(self.edge_words)) if e not in tree]


def _spanning_tree(H: StallingsAutomaton):
    tree_edge: List[Optional[Tuple[int, int]]] = [None] * H.num_vertices
    prefix: List[Optional[Word]] = [None] * H.num_vertices
    prefix[H.base] = Word((), H.rank)
    order = [H.base]
    queue = deque([H.base])
    while queue:
        v = queue.popleft()
        for lab in sorted(H.out(v), key=letter_key):
            t, e, d = H.out(v)[lab]
            if prefix[t] is None:
                prefix[t] = multiply(prefix[v], Word((lab,), H.rank))
                tree_edge[t] = (e, d)
                order.append(t)
                queue.append(t)
    return tree_edge, prefix, order


def expression_table(H: StallingsAutomaton) -> ExpressionTable:
    tree_edge, _, order = _spanning_tree(H)
    m = H.ngens
    # pot[v]: abstract label of the tree path from the base to v
    pot: List[Optional[Word]] = [None] * H.num_vertices
    pot[H.base] = Word((), m)
    for v in order[1:]:
        e, d = tree_edge[v]
        s, _, t = H.edges[e]
        if d > 0:
            pot[v] = multiply(pot[s], H.edge_labels[e])
        else:
            pot[v] = multiply(pot[t], invert(H.edge_labels[e]))
    words = tuple(
        product([pot[s], H.edge_labels[e], invert(pot[t])], m) for e, (s, _, t) in enumerate(H.edges)
    )
    return ExpressionTable(tuple(tree_edge), words)


def basis(H: StallingsAutomaton) -> List[Word]:
    """Free basis of the subgroup read off the non-tree edges (in edge order)."""
    tree_edge, prefix, _ = _spanning_tree(H)
    tree = {h[0] for h in tree_edge if h is not None}
    out = []
    for e, (s, lab, t) in enumerate(H.edges):
        if e not in tree:
            out.append(product([prefix[s], Word((lab,), H.rank), invert(prefix[t])], H.rank))
    return out


def substitute(w: Word, words: Sequence[Word], rank: int) -> Word:
    """Replace symbol i of ``w`` by ``words[i-1]`` and reduce."""
    raw: list = []
    for x in w.letters:
        if x > 0:
            raw.extend(words[x - 1].letters)
        else:
            raw.extend(-y for y in reversed(words[-x - 1].letters))
    return Word(tuple(_free_reduce(raw)), rank)


def express(H: StallingsAutomaton, u: Word, table: Optional[ExpressionTable] = None) -> Word:
    """Write a member ``u`` as a word over the generator symbols g1..gm.

    The result is a :class:`Word` of rank ``m``; ``substitute`` of it into
    ``H.generator_words`` reduces to ``u``.
    """
    if table is None:
        table = expression_table(H)
    if u.rank != H.rank:
        raise RankError(f"rank mismatch: word {u.rank}, automaton {H.rank}")
    v = H.base
    raw: list = []
    for x in u.letters:
        hit = H.out(v).get(x)
        if hit is None:
            raise NotInSubgroupError(f"{u} is not in subgroup")
        v, e, d = hit
        a = table.edge_words[e]
        raw.extend(a.letters if d > 0 else invert(a).letters)
    if v != H.base:
        raise NotInSubgroupError(f"{u} is not in subgroup")
    return Word(tuple(_free_reduce(raw)), H.ngens)


def preimage(phi: Endomorphism, v: Word) -> Optional[Word]:
    """Some ``v'`` with ``(v')phi == v``, or ``None`` if v is not in im(phi)."""
    H = image_automaton(phi)
    if not member(H, v):
        return None
    w = express(H, v)
    # symbol gi stands for (x_i)phi, so w read over x_i is a preimage
    return Word(w.letters, phi.rank)


# -- cyclic cosets ---------------------------------------------------------


def coset_window(r: Word, g0: Word, H: StallingsAutomaton) -> int:
    """Half-width of the exponent range scanned by :func:`coset_intersects`.

    For |m| >= m0 = ceil(|g0|/|r|) + 1 the reduced form of r^m g0 is
    r^(m -+ m0) followed by a fixed tail; reading r repeatedly from the base
    gives an eventually periodic vertex sequence whose preperiod plus period
    is at most |V| + 1.
    """
    m0 = math.ceil(len(g0) / len(r)) + 1
    return m0 + H.num_vertices + 1


def coset_intersects(r: Word, g0: Word, H: StallingsAutomaton) -> Optional[int]:
    """Some integer m with ``r^m g0`` in H (smallest |m|, positive first), or None.

    ``r`` must be nonempty and cyclically reduced.
    """
    if not r.letters:
        raise ValueError("r must be nonempty")
    if not r.is_cyclically_reduced():
        raise ValueError("r must be cyclically reduced")
    if r.rank != H.rank or g0.rank != H.rank:
        raise RankError("rank mismatch")
    bound = coset_window(r, g0, H)
    ri = invert(r)
    pos = neg = g0
    if member(H, g0):
        return 0
    for m in range(1, bound + 1):
        pos = multiply(r, pos)
        if member(H, pos):
            return m
        neg = multiply(ri, neg)
        if member(H, neg):
            return -m
    return None
