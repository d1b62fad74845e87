import json

import pytest

from fctool.coxeter import ball, element_of, find_braid, is_reduced, shortlex_word, system_from_subscript
from fctool.errors import DomainError, IntervalError, InvalidFormError, NotFCError
from fctool.normal_forms import (
    BAffineOne,
    BFirst,
    BSecond,
    DAffineOne,
    DForm,
    DSecond,
    affine_blocks,
    enumerate_fc,
    extremal,
    form_affine_length,
    form_from_json,
    form_to_json,
    interval,
    matching_forms,
    parse,
    parse_B,
    parse_D,
    psi,
    render,
    validate,
)


@pytest.fixture(scope="module")
def B4():
    return system_from_subscript("Btilde", 4)


@pytest.fixture(scope="module")
def D4t():
    return system_from_subscript("Dtilde", 4)


def test_intervals():
    assert interval(2, 3) == ("s2", "s3")
    assert interval(1, 3) == ("s1", "s2", "s3")
    assert interval(-1, 3) == ("sb1", "s2", "s3")
    assert interval(0, 3) == ("s1", "sb1", "s2", "s3")
    assert interval(-3, 3) == ("s3", "s2", "s1", "sb1", "s2", "s3")
    assert interval(4, 3) == ()
    with pytest.raises(IntervalError):
        interval(-4, 3)


def test_single_t(B4):
    assert parse_B(B4, "t") == BAffineOne(3, 4, DForm(()))


def test_second_type_example(B4):
    f = parse_B(B4, "sb1 s2 s3 t s1 s2 s3 t")
    assert f == BSecond(3, (), -1, 2, DForm(()))
    assert form_affine_length(f) == 2


def test_affine_length_two_through_one_t_block(B4):
    # the first t block is followed by a staircase, so this has affine length 1
    f = parse_B(B4, "s3 s2 s1 sb1 s2 s3 t s3 s2")
    assert f.kind == "affine1"
    assert f == BAffineOne(3, -3, DForm(((3, 3), (2, 2))))


def test_first_type(B4):
    f = parse_B(B4, "t s3 s2 s1 sb1 s2 s3 t")
    assert f == BFirst(3, 4, 1, 4)
    assert render(f) == ("t", "s3", "s2", "s1", "sb1", "s2", "s3", "t")


def test_affine_D_examples(D4t):
    assert parse_D(D4t, "sb3") == DAffineOne(3, 4, 3, DForm(()))
    f = parse_D(D4t, "s3 s2 s1 sb1 s2 sb3 s3")
    assert f.kind == "affine1"


def test_affine_D_second_type_psi(D4t):
    w = "s1 s2 s3 sb1 s2 sb3 s1 s2 s3 sb1 s2 sb3"
    f = parse_D(D4t, w)
    assert isinstance(f, DSecond) and f.k == 2
    g = parse_D(D4t, psi(D4t, tuple(w.split())))
    assert g.kind == "second" and g.psi1 != f.psi1


def test_not_fc(B4):
    with pytest.raises(NotFCError):
        parse_B(B4, "s1 s2 s1")


def test_rank_three_unsupported():
    with pytest.raises(DomainError):
        parse(system_from_subscript("Btilde", 3), "t")


def test_invalid_form_rejected():
    with pytest.raises(InvalidFormError):
        validate(BFirst(3, 4, 0, 4))


def test_type_D_count():
    assert len(list(enumerate_fc(system_from_subscript("D", 4)))) == 48


@pytest.mark.parametrize("family", ["Btilde", "Dtilde"])
def test_bijection_small(family):
    sy = system_from_subscript(family, 4)
    oracle = {x for x, w in ball(sy, 7) if find_braid(sy, w) is None}
    seen = set()
    for form, word in enumerate_fc(sy, 7, 7):
        assert is_reduced(sy, word)
        x = element_of(sy, word)
        assert x not in seen
        seen.add(x)
        assert parse(sy, x) == form
    assert seen == oracle


def test_uniqueness_by_exhaustive_search(B4):
    for x, w in ball(B4, 6):
        if find_braid(B4, w) is None:
            assert matching_forms(B4, x) == [parse(B4, x)]


def test_enumeration_order(D4t):
    keys = []
    for form, word in enumerate_fc(D4t, 6, 6):
        keys.append((form_affine_length(form), len(word), tuple(D4t.index[c] for c in word)))
    assert keys == sorted(keys)


def test_json_round_trip(B4, D4t):
    for sy in (B4, D4t):
        for form, word in enumerate_fc(sy, 8, 3):
            doc = form_to_json(form, sy)
            assert doc["word"] == list(render(form))
            assert doc["length"] == len(word)
            again = form_from_json(json.dumps(doc))
            assert again == form


def test_json_schema(B4):
    doc = form_to_json(parse_B(B4, "t"), B4)
    assert set(doc) >= {"class", "params", "psi1", "word", "length", "affine_length"}
    assert doc["class"] == "affine1"


def test_psi_is_an_involution(D4t):
    for x, w in ball(D4t, 6):
        assert psi(D4t, psi(D4t, x)) == x
    assert psi(D4t, ("s1", "s2")) == ("sb1", "s2")
    with pytest.raises(DomainError):
        psi(system_from_subscript("Btilde", 4), ("s1",))


def test_psi_closure(D4t):
    for x, w in ball(D4t, 7):
        if find_braid(D4t, w) is None:
            a, b = parse(D4t, x), parse(D4t, psi(D4t, x))
            assert a.kind == b.kind


def test_extremal():
    sy = system_from_subscript("D", 4)
    assert extremal(sy, ("s3",), "B")
    assert not extremal(sy, ("s1", "s2"), "B")
    assert extremal(sy, ("s2", "s3", "s1", "s2"), "D")


def test_affine_blocks(B4):
    blocks, tail = affine_blocks(B4, ("sb1", "s2", "s3", "t", "s1", "s2", "s3", "t", "s3"))
    assert blocks == [("sb1", "s2", "s3", "t"), ("s1", "s2", "s3", "t")]
    assert tail == ("s3",)


def test_closed_affine_length_matches_letters(B4, D4t):
    for sy, letter in ((B4, "t"), (D4t, "sb3")):
        for form, word in enumerate_fc(sy, 9, 9):
            assert form_affine_length(form) == word.count(letter)
