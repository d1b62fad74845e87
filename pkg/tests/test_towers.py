import pytest

from fctool.coxeter import element_of, length, system_from_subscript
from fctool.errors import AlphabetError, DomainError
from fctool.normal_forms import enumerate_fc, parse, render
from fctool.towers import (
    centralizer_check,
    check_IJ,
    check_square,
    embed,
    length_theorem_check,
    map_I,
    map_J,
    source_target,
    substitute,
    substituted_word,
    tier,
)


def test_Ln_on_t():
    assert substitute("Ln", 3, ("t",)) == ("s3", "t", "s3")


def test_Gn_and_embeddings():
    assert substitute("Gn", 3, ("sb2",)) == ("s3", "s2", "sb3", "s2", "s3")
    assert embed("beta", 3, ("sb1",)) == ("s0", "s1", "s0")
    assert embed("delta", 3, ("sb2",)) == ("t", "s2", "t")
    assert substitute("Fn", 3, ("s1", "t")) == ("s1", "s3", "t", "s3")


def test_systems():
    src, dst = source_target("Ln", 3)
    assert (src.family, src.rank, dst.rank) == ("Btilde", 4, 5)
    src, dst = source_target("delta", 4)
    assert (src.family, dst.family) == ("Dtilde", "Btilde")


def test_errors():
    with pytest.raises(AlphabetError):
        substitute("Ln", 3, ("sb3",))
    with pytest.raises(DomainError):
        substitute("beta", 3, ("t",))


@pytest.mark.parametrize("n", [3, 4])
def test_squares(n):
    rep = check_square(n, injectivity_radius=5)
    assert rep.ok, str(rep)


@pytest.mark.parametrize("map_id", ["Ln", "Fn"])
def test_length_law(map_id):
    rep = length_theorem_check(map_id, 3, 6)
    assert rep.ok, str(rep)


def test_length_law_example():
    src, dst = source_target("Ln", 3)
    w = ("t", "s2", "t")
    assert length(dst, element_of(dst, substitute("Ln", 3, w))) == 3 + 2 * 2


def test_centralizer():
    assert centralizer_check(3, samples=50, radius=6).ok


@pytest.mark.parametrize("family", ["Btilde", "Dtilde"])
def test_IJ_small(family):
    rep = check_IJ(family, 4, 7)
    assert rep.ok, str(rep)


def test_I_J_on_second_type():
    B4 = system_from_subscript("Btilde", 4)
    f = parse(B4, "sb1 s2 s3 t s1 s2 s3 t")
    assert render(map_I(f)) == ("sb1", "s2", "s3", "s4", "t", "s1", "s2", "s3", "s4", "t")
    j = render(map_J(f))
    assert j[0] == "t" and len(j) == 10


def test_I_equals_J_off_second_type():
    sy = system_from_subscript("Dtilde", 4)
    for form, _ in enumerate_fc(sy, 6, 6):
        if tier(form) != "W2":
            assert map_I(form) == map_J(form)


def test_forms_agree_with_word_substitution():
    for family in ("Btilde", "Dtilde"):
        src = system_from_subscript(family, 4)
        dst = system_from_subscript(family, 5)
        for form, _ in enumerate_fc(src, 7, 7):
            for which, fn in (("I", map_I), ("J", map_J)):
                assert element_of(dst, render(fn(form))) == element_of(dst, substituted_word(form, which))
