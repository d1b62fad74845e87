import itertools

import pytest

from fctool.coxeter import (
    affine_length,
    ball,
    build_system,
    canonical_word,
    check_relations,
    commutation_class,
    count_reduced_words,
    descents,
    element_of,
    enumerate_fc,
    find_braid,
    heap_relations,
    is_fully_commutative,
    is_reduced,
    is_reduced_phi,
    length,
    parse_word,
    require_reduced,
    system_from_subscript,
)
from fctool.errors import AlphabetError, NotFCError, NotReducedError, RankError, SystemMismatchError


@pytest.fixture(scope="module")
def B4():
    return system_from_subscript("Btilde", 4)


@pytest.fixture(scope="module")
def D4t():
    return system_from_subscript("Dtilde", 4)


@pytest.mark.parametrize("family", ["D", "Btilde", "Ctilde", "Dtilde"])
@pytest.mark.parametrize("sub", [3, 4, 5])
def test_matrices_satisfy_relations(family, sub):
    assert check_relations(system_from_subscript(family, sub)) == []


def test_generator_names(B4, D4t):
    assert B4.generators == ("sb1", "s1", "s2", "s3", "t")
    assert D4t.generators == ("sb1", "s1", "s2", "s3", "sb3")
    assert system_from_subscript("Ctilde", 3).generators == ("s0", "s1", "s2", "t")


def test_small_rank_rejected():
    with pytest.raises(RankError):
        build_system("Btilde", 2)


def test_bad_token(B4):
    with pytest.raises(AlphabetError) as exc:
        parse_word(B4, "s1 s9")
    assert exc.value.position == 1 and exc.value.token == "s9"


def test_identity_spellings(B4):
    assert parse_word(B4, "1") == ()
    assert parse_word(B4, "") == ()
    assert parse_word(B4, "s1,s2") == ("s1", "s2")


def test_core_word_is_reduced(B4):
    assert is_reduced(B4, parse_word(B4, "s3 s2 s1 sb1 s2 s3"))


def test_braids(B4):
    assert not is_reduced(B4, ("t", "s3", "t", "s3", "t", "s3", "t", "s3"))
    assert is_reduced(B4, ("t", "s3", "t", "s3"))
    assert not is_fully_commutative(B4, ("t", "s3", "t", "s3"))
    assert find_braid(B4, ("s1", "s2", "s1")) is not None
    assert find_braid(B4, ("s1", "sb1", "s2")) is None


def test_descents_and_length(B4):
    x = element_of(B4, ("s1", "s2"))
    assert descents(B4, x, "left") == ("s1",)
    assert descents(B4, x, "right") == ("s2",)
    assert length(B4, x) == 2
    assert canonical_word(B4, element_of(B4, ("s2", "s1", "s2"))) == ("s1", "s2", "s1")


def test_mismatch(B4, D4t):
    with pytest.raises(SystemMismatchError):
        length(D4t, element_of(B4, ("t",)))


def test_require_reduced(B4):
    with pytest.raises(NotReducedError):
        require_reduced(B4, ("s1", "s1"))


def test_affine_length(B4, D4t):
    assert affine_length(B4, ("t", "s3", "t")) == 2
    assert affine_length(D4t, ("s2", "sb3")) == 1
    with pytest.raises(NotFCError):
        affine_length(D4t, ("s2", "sb3", "s2"))


def test_commutation_class(B4):
    assert len(commutation_class(B4, ("s1", "sb1", "s2"))) == 2
    assert count_reduced_words(B4, ("s1", "s2", "s1")) == 2


def test_heap_down_sets(B4):
    up, down = heap_relations(B4, ("s1", "s2", "s3"))
    # a chain: s1 < s2 < s3
    assert up == [0b111, 0b110, 0b100]
    assert down == [0b001, 0b011, 0b111]
    up, _ = heap_relations(B4, ("s1", "sb1"))
    assert up == [0b01, 0b10]


def test_type_D_counts():
    for sub, count in ((3, 14), (4, 48), (5, 167)):
        sy = system_from_subscript("D", sub)
        assert len(enumerate_fc(sy, 64)) == count


def test_type_D4_order():
    assert len(ball(system_from_subscript("D", 4), 64)) == 192


def test_reduced_tests_agree_exhaustively():
    sy = system_from_subscript("Dtilde", 4)
    for word in itertools.product(sy.generators, repeat=4):
        assert is_reduced(sy, word) == is_reduced_phi(sy, word)


def test_ball_is_sorted(B4):
    words = [w for _, w in ball(B4, 4)]
    key = [(len(w), tuple(B4.index[x] for x in w)) for w in words]
    assert key == sorted(key)
