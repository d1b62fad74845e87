import pytest

from fctool.coxeter import element_of, find_braid, shortlex_word, system_from_subscript
from fctool.errors import AlphabetError, NotFCError
from fctool.laurent import ONE, P, Q
from fctool.normal_forms import enumerate_fc
from fctool.temperley_lieb import (
    TLElt,
    V,
    Z,
    check_faithful,
    check_tl_relations,
    expansion_report,
    reduce_word,
    tl_morphism_image,
)

B4 = system_from_subscript("Btilde", 4)


def T(word, sy=B4):
    return reduce_word(sy, word)


def test_braid_rewritten_by_V():
    # s1 s2 s1 = -(s1 s2 + s2 s1 + s1 + s2 + 1)
    x = T("s1 s2 s1")
    want = -(T("s1 s2") + T("s2 s1") + T("s1") + T("s2") + TLElt.one(B4))
    assert x == want


def test_braid_rewritten_by_Z():
    x = T("t s3 t s3")
    want = -(T("t s3 t") + T("s3 t s3") + T("t s3") + T("s3 t") + T("t") + T("s3") + TLElt.one(B4))
    assert x == want


def test_V_and_Z_vanish():
    assert not V(T("s1"), T("s2"))
    assert not Z(T("s3"), T("t"))


def test_keys_are_fc():
    x = T("s1 s2 s1 s3 s2 t s3 t")
    for k, _ in x.items():
        assert find_braid(B4, k) is None


def test_basis_requires_fc():
    with pytest.raises(NotFCError):
        TLElt.basis(B4, ("s1", "s2", "s1"))
    with pytest.raises(AlphabetError):
        reduce_word(B4, ("s1", "x"))


@pytest.mark.parametrize("family", ["Btilde", "Dtilde"])
def test_relations(family):
    assert check_tl_relations(system_from_subscript(family, 4)) == []


def test_type_D_dimension():
    sy = system_from_subscript("D", 4)
    fc = {shortlex_word(element_of(sy, w)) for _, w in enumerate_fc(sy)}
    assert len(fc) == 48
    keys = set()
    for w in fc:
        keys.update(k for k, _ in T(w + w[::-1], sy).items())
        keys.update(k for k, _ in T(w + ("s2", "s1", "s3", "s2"), sy).items())
    assert keys <= fc


def test_basicB():
    x = tl_morphism_image("Qn", 3, ("t",))
    assert x.coeff(("s3", "t", "s3")) == P
    assert x.coeff(("s3", "t")) == P - 1
    assert len(x.body) == 2


def test_basicD_top_terms():
    x = tl_morphism_image("Pn", 3, ("sb2",))
    assert len(x.body) == 13
    assert x.coeff(("s3", "s2", "sb3")) == ONE
    assert x.coeff(()) == P * P - P


def test_json():
    x = tl_morphism_image("Pn", 3, ("sb2",))
    doc = x.to_json()
    assert all(item["fc"] for item in doc)
    assert TLElt.from_json(x.system, doc) == x


@pytest.mark.parametrize("family", ["Btilde", "Dtilde"])
def test_expansions_small(family):
    stats = {}
    checked, bad = expansion_report(family, 4, 7, 3, stats)
    assert bad == []
    assert stats.get("second", 0) > 0


def test_faithful_small():
    count, r = check_faithful("Qn", 3, 5)
    assert count == r
