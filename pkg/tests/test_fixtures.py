from fctool import fixtures
from fctool.coxeter import element_of


def test_tables_load():
    assert len(fixtures.load("appendix_a")["words"]) == 48
    for name in ("appendix_b", "appendix_c"):
        data = fixtures.load(name)
        assert data["groups"]
        for g in data["groups"]:
            assert g["class"] in ("first", "second", "affine1")
            assert all("line" in p for p in g["parts"])


def test_appendix_a():
    rep = fixtures.check_appendix_a()
    assert rep.ok, str(rep)
    assert rep.matched == 48


def test_psi1_groups_contain_images():
    data = fixtures.load("appendix_c")
    group = next(g for g in data["groups"] if g["class"] == "second" and g.get("psi1"))
    words = {w for w, _, _ in fixtures.instances(data, group)}
    assert ("sb1", "s2", "s3", "s1", "s2", "sb3", "sb1", "s2", "s3", "s1", "s2", "sb3") in words


def test_errata_must_fail():
    # a misprint annotation on a conforming instance is reported as a failure
    data = fixtures.load("appendix_b")
    data["groups"] = [
        {"class": "affine1", "parts": [{"choose": [["t"]], "line": 0, "errata": [["t"]], "why": "test"}]}
    ]
    system = fixtures.fixture_system(data)
    (word, lines, why), = fixtures.instances(data, data["groups"][0])
    assert why == "test"
    assert fixtures.check_instance(system, word, "affine1") is None


def test_family_tables():
    for name, misprints in (("appendix_b", 108), ("appendix_c", 7)):
        rep = fixtures.check_family_table(name)
        assert rep.ok, str(rep)
        assert len(rep.errata) == misprints
        assert set(rep.by_class) == {"first", "second", "affine1"}


def test_uniqueness_notes():
    for name in ("appendix_b", "appendix_c"):
        data = fixtures.load(name)
        sy = fixtures.fixture_system(data)
        note = data["uniqueness"]
        readings = [sum((tuple(p) for p in r["parts"]), ()) for r in note["readings"]]
        assert len({element_of(sy, w) for w in readings}) == 1
