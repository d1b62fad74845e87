"""Tables of fully commutative elements shipped as data files, and their checks.

Each table lives in ``fctool/data`` as JSON. Words are token lists and every
entry carries the ``line`` it was transcribed from, so a failing instance can
be traced back to the printed table. The affine tables describe infinite
families as products of parts:

* ``{"choose": [w1, w2, ...]}`` picks one word,
* ``{"repeat": [b1, b2, ...], "min": a, "max": b}`` repeats the blocks
  cyclically r times for a <= r <= b,
* ``{"fixture": name, "minus": [...]}`` picks a word of another table.

A group flagged ``"psi1"`` also contains the image of every instance under
the swap s1 <-> sb1.

Printed entries known to be wrong are kept, not deleted. A part may list
``"errata"`` (choices that are misprints, with the reason in ``"why"``) and a
group may carry an ``"erratum"`` reason. Such instances are expected to fail
and are reported separately; one that passes is itself a failure, so the
annotations cannot hide anything.
"""

import itertools
import json
from importlib import resources

from .coxeter import (
    element_of,
    enumerate_fc as bfs_fc,
    find_braid,
    format_word,
    is_reduced,
    parse_word,
    shortlex_word,
    system_from_subscript,
)
from .errors import FCToolError
from .normal_forms import enumerate_fc, matching_forms, parse, psi1_word
from .towers import Report


def load(name):
    text = resources.files("fctool").joinpath("data", name + ".json").read_text()
    return json.loads(text)


def fixture_system(data):
    return system_from_subscript(data["family"], data["subscript"])


def _words_of(name):
    return [tuple(e["word"]) for e in load(name)["words"]]


def _part_choices(system, part):
    line = part["line"]
    if "choose" in part:
        errata = {tuple(w) for w in part.get("errata", [])}
        return [(tuple(w), line, part["why"] if tuple(w) in errata else None) for w in part["choose"]]
    if "repeat" in part:
        blocks = [tuple(b) for b in part["repeat"]]
        out = []
        for r in range(part["min"], part["max"] + 1):
            w = ()
            for i in range(r):
                w += blocks[i % len(blocks)]
            out.append((w, line, None))
        return out
    words = _words_of(part["fixture"])
    minus = part.get("minus", [])
    if minus:
        drop = set()
        for m in minus:
            try:
                drop.add(element_of(system, tuple(m)))
            except FCToolError:
                pass
        words = [w for w in words if element_of(system, w) not in drop]
    return [(w, line, None) for w in words]


def instances(data, group):
    """(word, lines, erratum) for every instance of a group, psi1 images included.

    ``erratum`` is None for a regular instance and the recorded reason otherwise.
    """
    system = fixture_system(data)
    seen = set()
    for combo in itertools.product(*(_part_choices(system, p) for p in group["parts"])):
        word = sum((w for w, _, _ in combo), ())
        lines = sorted({ln for _, ln, _ in combo})
        why = group.get("erratum") or next((y for _, _, y in combo if y), None)
        for w in (word, psi1_word(word)) if group.get("psi1") else (word,):
            w = tuple(w)
            if w not in seen:
                seen.add(w)
                yield w, lines, why


def _describe(word, lines):
    return f"{format_word(word)} (lines {', '.join(map(str, lines))})"


def check_instance(system, word, expected):
    """None when the word is a reduced fc word whose form has the expected class."""
    try:
        parse_word(system, word)
    except FCToolError as exc:
        return f"not a word of {system.family}: {exc}"
    if not is_reduced(system, word):
        return "not reduced"
    if find_braid(system, word) is not None:
        return "not fully commutative"
    try:
        form = parse(system, element_of(system, word))
    except FCToolError as exc:
        return f"no normal form: {exc}"
    if form.kind != expected:
        return f"class {form.kind}, expected {expected}"
    return None


def check_appendix_a():
    data = load("appendix_a")
    system = fixture_system(data)
    report = Report("appendixA")
    listed = {}
    for e in data["words"]:
        report.checked += 1
        word = tuple(e["word"])
        bad = check_instance(system, word, "finite")
        if bad:
            report.fail(f"{_describe(word, [e['line']])}: {bad}")
            continue
        listed[element_of(system, word)] = e["line"]
    if len(listed) != data["count"]:
        report.fail(f"{len(listed)} distinct elements listed, expected {data['count']}")
    found = {element_of(system, w) for _, w in enumerate_fc(system)}
    oracle = {x for x, _ in bfs_fc(system, 64)}
    if found != oracle:
        report.fail("normal-form enumeration differs from the breadth-first search")
    for x in sorted(oracle - set(listed), key=shortlex_word):
        report.fail(f"fc element {format_word(shortlex_word(x))} missing from the table")
    for x in sorted(set(listed) - oracle, key=shortlex_word):
        report.fail(f"listed element {format_word(shortlex_word(x))} is not fc")
    report.matched = len(set(listed) & oracle)
    return report


def check_family_table(name):
    """Every instance of every group parses to its declared class.

    Instances annotated as misprints must fail; they are collected in
    ``report.errata`` as (word, lines, reason, observed problem).
    """
    data = load(name)
    system = fixture_system(data)
    report = Report({"appendix_b": "appendixB", "appendix_c": "appendixC"}.get(name, name))
    report.by_class = {}
    report.errata = []
    for group in data["groups"]:
        for word, lines, why in instances(data, group):
            report.checked += 1
            bad = check_instance(system, word, group["class"])
            if why:
                if bad:
                    report.errata.append((word, lines, why, bad))
                else:
                    report.fail(f"{_describe(word, lines)} is marked as a misprint but conforms")
                continue
            report.by_class[group["class"]] = report.by_class.get(group["class"], 0) + 1
            if bad:
                report.fail(f"{_describe(word, lines)}: {bad}")
    uniqueness_check(data, report)
    return report


def uniqueness_check(data, report):
    """The two degenerate readings of the note give one element with one form."""
    system = fixture_system(data)
    note = data["uniqueness"]
    target = element_of(system, tuple(note["word"]))
    report.checked += 1
    for reading in note["readings"]:
        w = sum((tuple(p) for p in reading["parts"]), ())
        if element_of(system, w) != target:
            report.fail(f"{reading['class']} reading {format_word(w)} is a different element (line {note['line']})")
    forms = matching_forms(system, target)
    if len(forms) != 1:
        report.fail(f"{format_word(note['word'])} has {len(forms)} forms (line {note['line']})")
    elif forms[0].kind != "affine1":
        report.fail(f"{format_word(note['word'])} parses as {forms[0].kind}, expected affine1")


def affine_one_coverage(name):
    """Affine length 1 elements that the table lists versus those that exist.

    Returns (missing, extra) as sorted word lists. This is informational:
    the tables make no claim to completeness that the checks rely on.
    """
    data = load(name)
    system = fixture_system(data)
    listed = set()
    for group in data["groups"]:
        if group["class"] != "affine1":
            continue
        for word, _, _ in instances(data, group):
            try:
                if is_reduced(system, word) and find_braid(system, word) is None:
                    listed.add(element_of(system, word))
            except FCToolError:
                pass
    actual = {element_of(system, w) for f, w in enumerate_fc(system, max_affine=1) if f.kind == "affine1"}
    missing = sorted((shortlex_word(x) for x in actual - listed), key=lambda w: (len(w), w))
    extra = sorted((shortlex_word(x) for x in listed - actual), key=lambda w: (len(w), w))
    return missing, extra
