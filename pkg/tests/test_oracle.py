import random

import pytest
from hypothesis import given, settings

from brinkmann.endo import Endomorphism, apply, coset_of_kernel_eq, iterate_apply, parse_map
from brinkmann.oracle import (
    CYCLIC,
    EXACT,
    FoundAt,
    NoNever,
    Unknown,
    conj_into_coset,
    detect_orbit_cycle,
    oracle_conj_coset,
    oracle_coset_membership,
    orbit_trace,
)
from brinkmann.text import parse_word
from brinkmann.words import canonical_form, is_conjugate
from helpers import all_words, conj, endos, naive_class_word, random_endo, random_word, words


def W(s, rank=2):
    return parse_word(s, rank)


def M(s, rank=2):
    return parse_map(s, rank)


ID = Endomorphism.identity(2)
SWAP = M("a=b;b=a")
GROW = M("a=ab;b=b")


def test_detect_cycle_examples():
    assert detect_orbit_cycle(SWAP, W("a"), 10) == (0, 2)
    assert detect_orbit_cycle(ID, W("abA"), 10) == (0, 1)
    assert detect_orbit_cycle(GROW, W("a"), 50) is None
    # conjugation by b: words grow, classes are fixed
    inner = M("a=baB;b=b")
    assert detect_orbit_cycle(inner, W("a"), 50, EXACT) is None
    assert detect_orbit_cycle(inner, W("a"), 50, CYCLIC) == (0, 1)
    with pytest.raises(ValueError):
        detect_orbit_cycle(ID, W("a"), 0)


def test_detect_cycle_preperiod():
    # a -> b -> 1 -> 1
    phi = M("a=b;b=1")
    assert detect_orbit_cycle(phi, W("a"), 10) == (2, 1)


def test_coset_oracle_examples():
    assert oracle_coset_membership(W("ab"), W("ab"), ID, 10) == FoundAt(0, W("ab"))
    assert oracle_coset_membership(W("a"), W("ab"), SWAP, 10) == NoNever(0, 2)
    assert oracle_coset_membership(W("a"), W("aB"), GROW, 50) == Unknown(50)


def test_conj_oracle_examples():
    ans = oracle_conj_coset(W("ab"), W("ba"), ID, 10)
    assert isinstance(ans, FoundAt) and ans.k == 0
    assert oracle_conj_coset(W("a"), W("ab"), SWAP, 10) == NoNever(0, 2)
    ans = oracle_conj_coset(W("a"), W("abb"), GROW, 50)
    assert isinstance(ans, FoundAt) and ans.k == 2


def test_length_budget_gives_unknown():
    phi = M("a=ab;b=ba")
    ans = oracle_coset_membership(W("a"), W("b"), phi, 1000, length_budget=500)
    assert isinstance(ans, Unknown) and ans.depth < 20


def test_conj_into_coset_examples():
    for u in all_words(2, 3):
        for v in all_words(2, 2):
            assert conj_into_coset(u, v, ID) == is_conjugate(u, v)[0]
    assert conj_into_coset(W("b"), W("b"), M("a=a;b=1"))
    assert not conj_into_coset(W("a"), W("b"), M("a=a;b=1"))
    assert conj_into_coset(W("a"), W("a"), M("a=aa;b=b"))


def test_conj_into_coset_example_brute_force():
    phi = M("a=aa;b=b")
    target = apply(phi, W("a"))
    assert any(apply(phi, conj(g, W("a"))) == target for g in all_words(2, 4))


def _brute_conj_into_coset(u, v, phi, bound=6):
    target = apply(phi, v)
    return any(apply(phi, conj(g, u)) == target for g in all_words(2, bound))


def test_conj_into_coset_vs_brute_force():
    rng = random.Random(23)
    positives = 0
    for _ in range(150):
        phi = random_endo(rng, 2, 3)
        u = random_word(rng, 2, 5)
        v = random_word(rng, 2, 5)
        if rng.random() < 0.5:
            v = conj(random_word(rng, 2, 2), u)
        op = conj_into_coset(u, v, phi)
        bf = _brute_conj_into_coset(u, v, phi)
        positives += bf
        assert op == bf, (phi, u, v)
    assert positives > 20


def _replay(pred, phi, u, k, cyclic):
    x = u
    for j in range(k + 1):
        state = canonical_form(x) if cyclic else x
        if j == k:
            return pred(state)
        assert not pred(state)
        x = apply(phi, x)


def test_certificates_replay_and_minimal():
    rng = random.Random(29)
    for _ in range(200):
        rank = rng.randint(1, 3)
        phi = random_endo(rng, rank, 3)
        u, v = random_word(rng, rank, 4), random_word(rng, rank, 4)
        a = oracle_coset_membership(u, v, phi, 100)
        if isinstance(a, FoundAt):
            assert a.state == iterate_apply(phi, u, a.k)
            assert _replay(lambda x: coset_of_kernel_eq(x, v, phi), phi, u, a.k, False)
        b = oracle_conj_coset(u, v, phi, 100)
        if isinstance(b, FoundAt):
            assert _replay(lambda x: conj_into_coset(x, v, phi), phi, u, b.k, True)


def test_no_never_soundness():
    rng = random.Random(31)
    depth = 25
    seen = 0
    for _ in range(120):
        rank = rng.randint(1, 3)
        phi = random_endo(rng, rank, 3)
        u, v = random_word(rng, rank, 4), random_word(rng, rank, 4)
        if isinstance(oracle_coset_membership(u, v, phi, depth), NoNever):
            seen += 1
            x, target = u, apply(phi, v)
            for _ in range(4 * depth):
                assert apply(phi, x) != target
                x = apply(phi, x)
        ans = oracle_conj_coset(u, v, phi, depth)
        if isinstance(ans, NoNever):
            seen += 1
            c = naive_class_word(u)
            for _ in range(4 * depth):
                assert not conj_into_coset(c, v, phi)
                c = naive_class_word(apply(phi, c))
    assert seen > 50


@settings(max_examples=100)
@given(endos(2, 3), words(2, 6), words(2, 3))
def test_cyclic_successor_well_defined(phi, w, g):
    assert canonical_form(apply(phi, w)) == canonical_form(apply(phi, conj(g, w)))


def test_monotone_depth():
    rng = random.Random(37)
    for _ in range(150):
        rank = rng.randint(1, 2)
        phi = random_endo(rng, rank, 3)
        u, v = random_word(rng, rank, 4), random_word(rng, rank, 4)
        for oracle in (oracle_coset_membership, oracle_conj_coset):
            prev = None
            for depth in (1, 3, 10, 40):
                ans = oracle(u, v, phi, depth)
                if prev is not None and not isinstance(prev, Unknown):
                    assert ans == prev
                prev = ans


def test_orbit_trace():
    tr = orbit_trace(SWAP, W("a"), 10, EXACT, W("ab"))
    assert [(k, w, p) for k, w, p in tr.steps] == [(0, W("a"), False), (1, W("b"), False)]
    assert tr.cycle == (0, 2)
    assert tr.answer == NoNever(0, 2)
    tr = orbit_trace(M("a=baB;b=b"), W("a"), 5, CYCLIC)
    assert tr.steps == [(0, W("a"), None)]
    assert tr.cycle == (0, 1)
    tr = orbit_trace(GROW, W("a"), 3)
    assert [w for _, w, _ in tr.steps] == [W("a"), W("ab"), W("abb")]
    assert tr.cycle is None and tr.answer == Unknown(3)
