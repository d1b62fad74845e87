"""Verification suites run by ``fctool verify`` and by the acceptance tests.

Each suite takes an optional subscript and length bound and returns a list
of Reports. A suite passes when every report does.
"""

import json
import time
from importlib import resources

from . import fixtures
from .coxeter import (
    ball,
    check_relations as group_relations,
    is_reduced,
    is_reduced_phi,
    system_from_subscript,
)
from .hecke import check_independent, check_leading, check_relations as hecke_relations, morphism_image
from .laurent import LaurentPoly
from .temperley_lieb import check_faithful, check_tl_relations, expansion_report, tl_morphism_image
from .towers import Report, centralizer_check, check_IJ, check_square, length_theorem_check


def _done(report, start):
    report.seconds = round(time.perf_counter() - start, 3)
    return report


def suite_appendix_a(rank=None, max_length=None):
    t = time.perf_counter()
    return [_done(fixtures.check_appendix_a(), t)]


def _family(name):
    t = time.perf_counter()
    rep = fixtures.check_family_table(name)
    rep.notes = [f"{len(rep.errata)} printed instances confirmed as misprints"]
    missing, _ = fixtures.affine_one_coverage(name)
    if missing:
        rep.notes.append(
            f"{len(missing)} affine length one elements are not listed, e.g. {' '.join(missing[0])}"
        )
    return [_done(rep, t)]


def suite_appendix_b(rank=None, max_length=None):
    return _family("appendix_b")


def suite_appendix_c(rank=None, max_length=None):
    return _family("appendix_c")


def suite_relations(rank=None, max_length=None):
    """Group relations on the matrices, Hecke tower relations, TL relations."""
    n = rank or 4
    out = []
    t = time.perf_counter()
    rep = Report(f"group relations, subscript {n}")
    for fam in ("D", "Btilde", "Ctilde", "Dtilde"):
        rep.checked += 1
        for bad in group_relations(system_from_subscript(fam, n)):
            rep.fail(f"{fam}: {bad}")
    out.append(_done(rep, t))
    t = time.perf_counter()
    rep = Report("Hecke tower relations")
    for map_id, k in (("Qn", 3), ("Rn", 3), ("Pn", 4)):
        rep.checked += 1
        for bad in hecke_relations(map_id, k):
            rep.fail(f"{map_id} n={k}: {bad}")
    out.append(_done(rep, t))
    t = time.perf_counter()
    rep = Report(f"Temperley-Lieb relations, subscript {n}")
    for fam in ("Btilde", "Dtilde"):
        rep.checked += 1
        for bad in check_tl_relations(system_from_subscript(fam, n)):
            rep.fail(f"{fam}: {bad}")
    out.append(_done(rep, t))
    return out


def reduced_word_agreement(system, max_length):
    """Compare the two reducedness tests on every word of length <= max_length
    whose proper prefixes are reduced (longer words cannot be reduced)."""
    rep = Report(f"reduced words {system.family} rank {system.rank} l<={max_length}")
    gens = system.generators
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for g in gens:
                u = w + (g,)
                rep.checked += 1
                a, b = is_reduced(system, u), is_reduced_phi(system, u)
                if a != b:
                    rep.fail(f"{' '.join(u)}: incremental says {a}, root multiset says {b}")
                if a:
                    nxt.append(u)
        frontier = nxt
    return rep


def suite_reduced_words(rank=None, max_length=None):
    t = time.perf_counter()
    system = system_from_subscript("Btilde", rank or 4)
    return [_done(reduced_word_agreement(system, 8 if max_length is None else max_length), t)]


def suite_towers(rank=None, max_length=None):
    out = []
    ns = (rank,) if rank else (3, 4)
    for n in ns:
        t = time.perf_counter()
        out.append(_done(check_square(n), t))
    L = 8 if max_length is None else max_length
    for n in ns:
        for map_id in ("Ln", "Fn"):
            t = time.perf_counter()
            out.append(_done(length_theorem_check(map_id, n, L), t))
    for fam in ("Btilde", "Dtilde"):
        t = time.perf_counter()
        out.append(_done(check_IJ(fam, max(rank or 4, 4), 10 if max_length is None else max_length), t))
    for n in ns:
        t = time.perf_counter()
        out.append(_done(centralizer_check(n), t))
    return out


def suite_hecke_leading(rank=None, max_length=None):
    n = rank or 3
    L = 6 if max_length is None else max_length
    out = []
    for map_id in ("Qn", "Rn"):
        t = time.perf_counter()
        rep = Report(f"leading term of {map_id} n={n} l<={L}")
        rep.checked, bad = check_leading(map_id, n, L)
        for b in bad:
            rep.fail(b)
        out.append(_done(rep, t))
    return out


def expansions():
    text = resources.files("fctool").joinpath("data", "expansions.json").read_text()
    return json.loads(text)["expansions"]


def _instantiate(word, n):
    return tuple(x.format(n=n, m=n - 1) for x in word)


def check_basic_expansion(entry, n):
    """Compare the TL image of one generator with a stored expansion."""
    rep = Report(f"{entry['name']} n={n}")
    got = tl_morphism_image(entry["map"], n, _instantiate(entry["source"], n))
    want = {}
    for term in entry["terms"]:
        p_coeffs = {int(e): v for e, v in term["coeff"].items()}
        want[_instantiate(term["word"], n)] = LaurentPoly({-e: v for e, v in p_coeffs.items()})
    dst = got.system
    from .coxeter import element_of, shortlex_word

    want = {shortlex_word(element_of(dst, k)): v for k, v in want.items()}
    rep.checked = len(want)
    if len(got.body) != len(want):
        rep.fail(f"{len(got.body)} terms, expected {len(want)}")
    for k, v in want.items():
        if got.coeff(k) != v:
            rep.fail(f"coefficient of T[{' '.join(k)}] is {got.coeff(k)}, expected {v}")
    return rep


def suite_tl_expansions(rank=None, max_length=None):
    out = []
    for entry in expansions():
        for n in (3, 4):
            t = time.perf_counter()
            out.append(_done(check_basic_expansion(entry, n), t))
    L = 10 if max_length is None else max_length
    for fam in ("Btilde", "Dtilde"):
        t = time.perf_counter()
        stats = {}
        n = max(rank or 4, 4)
        rep = Report(f"leading strata {fam} {n} -> {n + 1}, l<={L}")
        rep.checked, bad = expansion_report(fam, n, L, 3, stats)
        for b in bad:
            rep.fail(b)
        rep.stats = stats
        out.append(_done(rep, t))
    return out


def suite_independence(rank=None, max_length=None):
    L = 8 if max_length is None else max_length
    out = []
    t = time.perf_counter()
    src = system_from_subscript("Btilde", 3)
    words = [w for _, w in ball(src, L)]
    rep = Report(f"Hecke Q_3 images, l<={L}")
    rep.checked = len(words)
    if not check_independent([morphism_image("Qn", 3, w) for w in words]):
        rep.fail("the images are linearly dependent")
    out.append(_done(rep, t))
    for map_id, n in (("Qn", 3), ("Pn", 4)):
        t = time.perf_counter()
        rep = Report(f"Temperley-Lieb {map_id} n={n} images, l<={L}")
        count, r = check_faithful(map_id, n, L)
        rep.checked = count
        if r != count:
            rep.fail(f"rank {r} of {count} images")
        out.append(_done(rep, t))
    return out


SUITES = {
    "appendixA": suite_appendix_a,
    "appendixB": suite_appendix_b,
    "appendixC": suite_appendix_c,
    "relations": suite_relations,
    "reduced-words": suite_reduced_words,
    "towers": suite_towers,
    "hecke-leading": suite_hecke_leading,
    "tl-expansions": suite_tl_expansions,
    "independence": suite_independence,
}


def run(name, rank=None, max_length=None):
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn(rank, max_length))
        return out
    return SUITES[name](rank, max_length)


def summary(name, reports):
    return {
        "suite": name,
        "pass": all(r.ok for r in reports),
        "reports": [
            {
                "name": r.name,
                "pass": r.ok,
                "checked": r.checked,
                "failures": len(r.failures),
                "first_failure": r.failures[0] if r.failures else None,
                "seconds": getattr(r, "seconds", None),
                "notes": getattr(r, "notes", []),
            }
            for r in reports
        ],
    }
