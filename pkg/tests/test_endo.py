import pytest
from hypothesis import given, settings

from brinkmann.endo import (
    Endomorphism,
    apply,
    compose,
    coset_of_kernel_eq,
    format_map,
    from_document,
    iterate_apply,
    parse_map,
    to_document,
)
from brinkmann.text import ParseError, parse_word
from brinkmann.words import RankError, Word, invert, multiply
from helpers import all_words, endos, words


def W(s, rank=2):
    return parse_word(s, rank)


def M(s, rank=2):
    return parse_map(s, rank)


ID = Endomorphism.identity(2)


def test_apply_examples():
    assert apply(M("a=ab;b=b"), W("a")) == W("ab")
    assert apply(ID, W("abAAb")) == W("abAAb")
    assert apply(M("a=a;b=1"), W("baB")) == W("a")


def test_apply_rank_mismatch():
    with pytest.raises(RankError):
        apply(ID, W("a", 3))


def test_compose_examples():
    phi = M("a=ab;b=b")
    assert compose(phi, ID) == phi
    swap = M("a=b;b=a")
    assert compose(swap, swap) == ID
    assert compose(phi, phi).images[0] == W("abb")


def test_compose_order_is_first_then_second():
    phi, psi = M("a=ab;b=b"), M("a=b;b=a")
    # a -phi-> ab -psi-> ba
    assert compose(phi, psi).images[0] == W("ba")


def test_iterate_examples():
    phi = M("a=ab;b=b")
    assert iterate_apply(phi, W("aB"), 0) == W("aB")
    assert iterate_apply(phi, W("a"), 2) == W("abb")
    assert iterate_apply(M("a=b;b=a"), W("a"), 3) == W("b")
    with pytest.raises(ValueError):
        iterate_apply(phi, W("a"), -1)


def test_coset_of_kernel_examples():
    assert coset_of_kernel_eq(W("ab"), W("ab"), ID)
    assert not coset_of_kernel_eq(W("ab"), W("ba"), ID)
    assert coset_of_kernel_eq(W("ba"), W("a"), M("a=a;b=1"))
    assert not coset_of_kernel_eq(W("a"), W("b"), M("a=aa;b=b"))


@given(endos(3, 3), words(3, 6), words(3, 6))
def test_homomorphism(phi, u, v):
    assert apply(phi, multiply(u, v)) == multiply(apply(phi, u), apply(phi, v))
    assert apply(phi, invert(u)) == invert(apply(phi, u))


@settings(max_examples=50)
@given(endos(2, 3), words(2, 4))
def test_iterate_additive(phi, u):
    for j in range(3):
        for k in range(3):
            assert iterate_apply(phi, u, j + k) == iterate_apply(phi, iterate_apply(phi, u, j), k)


@given(endos(2, 3), endos(2, 3), words(2, 6))
def test_compose_coherence(phi, psi, u):
    assert apply(compose(phi, psi), u) == apply(psi, apply(phi, u))


@settings(max_examples=60, deadline=None)
@given(endos(2, 2), words(2, 4), words(2, 4))
def test_coset_of_kernel_vs_brute_force(phi, x, vp):
    direct = coset_of_kernel_eq(x, vp, phi)
    hit = any(
        not apply(phi, w).letters and multiply(vp, w) == x for w in all_words(2, 6)
    )
    if hit:
        assert direct
    if not direct:
        assert not hit


def test_map_formats():
    phi = M("a=ab;b=b")
    assert parse_map("a -> a b\nb -> b\n", 2) == phi
    assert parse_map("# comment\n\na -> ab   # trailing\nb -> b", 2) == phi
    assert parse_map(format_map(phi), 2) == phi
    assert from_document(to_document(phi)) == phi
    assert to_document(phi) == {"rank": 2, "images": ["ab", "b"]}
    assert parse_map("a=1;b=x1", 2).images == (Word((), 2), W("a"))


@pytest.mark.parametrize("text", ["a=ab", "a=ab;a=b;b=b", "ab=a;b=b", "A=a;b=b", "a:b;b=b", "a=c;b=b"])
def test_map_errors(text):
    with pytest.raises(ParseError):
        parse_map(text, 2)
