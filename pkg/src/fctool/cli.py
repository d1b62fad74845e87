"""The ``fctool`` command: enumerate, verify, map.

``--rank`` is always the subscript of the group, so ``--family Btilde
--rank 4`` is affine B_4 with five generators.

Exit codes: 0 success, 1 a verification failed, 2 bad arguments or input,
3 an enumeration budget was exceeded (see FCTOOL_BUDGET).
"""

import argparse
import json
import sys

from . import suites
from .coxeter import (
    affine_generator,
    ball,
    element_of,
    find_braid,
    format_word,
    parse_word,
    shortlex_word,
    system_from_subscript,
)
from .errors import BudgetError, FCToolError
from .normal_forms import enumerate_fc, form_affine_length, form_to_json, parse, render
from .towers import embed, map_I, map_J, source_target, substitute

FAMILIES = ("D", "Btilde", "Ctilde", "Dtilde")


class UsageError(Exception):
    pass


def _letter_count(system, word):
    gen = affine_generator(system)
    return sum(1 for x in word if x == gen) if gen else 0


def _affine(system, word):
    """Affine length, or None where it is undefined (non-fc words of affine D)."""
    if system.family == "Dtilde" and find_braid(system, word) is not None:
        return None
    return _letter_count(system, word)


def _sort_key(system, word):
    return (_letter_count(system, word), len(word), tuple(system.index[x] for x in word))


# enumerate ----------------------------------------------------------------


def enumerate_rows(family, rank, max_length=None, max_affine=None, fc_only=False):
    system = system_from_subscript(family, rank)
    if max_length is None and family != "D" and not (fc_only and max_affine is not None):
        raise UsageError("--max-length is required for affine families (or --fc-only with --max-affine)")
    rows = []
    if fc_only and family != "Ctilde":
        cap = max_affine if max_affine is not None else (max_length or 0)
        for form, word in enumerate_fc(system, max_length, cap):
            row = form_to_json(form, system)
            row["word"] = list(word)
            rows.append(row)
    else:
        bound = max_length if max_length is not None else 10**6
        for _, word in ball(system, bound):
            fc = find_braid(system, word) is None
            if fc_only and not fc:
                continue
            aff = _affine(system, word)
            if max_affine is not None and aff is not None and aff > max_affine:
                continue
            rows.append({"word": list(word), "length": len(word), "affine_length": aff, "fc": fc})
    rows.sort(key=lambda r: _sort_key(system, r["word"]))
    return system, rows


def series(rows):
    by_len, by_aff = [], []
    for r in rows:
        for lst, k in ((by_len, r["length"]), (by_aff, r["affine_length"])):
            if k is None:
                continue
            while len(lst) <= k:
                lst.append(0)
            lst[k] += 1
    return {"length": by_len, "affine_length": by_aff}


def cmd_enumerate(args, out):
    system, rows = enumerate_rows(args.family, args.rank, args.max_length, args.max_affine, args.fc_only)
    if args.format == "json":
        doc = {"family": args.family, "rank": args.rank, "count": len(rows), "rows": rows}
        if args.series:
            doc["series"] = series(rows)
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for r in rows:
            aff = "-" if r["affine_length"] is None else r["affine_length"]
            kind = r.get("class", "fc" if r.get("fc") else "not-fc")
            out.write(f"{format_word(r['word'])}\tl={r['length']}\tL={aff}\t{kind}\n")
        out.write(f"# {len(rows)} rows\n")
        if args.series:
            s = series(rows)
            out.write(f"# length series {s['length']}\n# affine length series {s['affine_length']}\n")
    return 0


# verify -------------------------------------------------------------------


def cmd_verify(args, out):
    reports = suites.run(args.suite, args.rank, args.max_length)
    summary = suites.summary(args.suite, reports)
    if args.format == "text":
        for r in reports:
            out.write(str(r) + "\n")
            for note in getattr(r, "notes", []):
                out.write(f"  note: {note}\n")
            if getattr(r, "matched", None) is not None:
                out.write(f"  {r.matched}/{r.checked} matched\n")
        out.write(("PASS" if summary["pass"] else "FAIL") + f" suite {args.suite}\n")
    out.write(json.dumps(summary, sort_keys=True) + "\n")
    return 0 if summary["pass"] else 1


# map ----------------------------------------------------------------------


def _side(system, word):
    return {"word": list(word), "length": len(word), "affine_length": _affine(system, word)}


def _nf_family(args, word):
    if args.family:
        return args.family
    n = args.rank - 1
    return "Dtilde" if f"sb{n}" in word and "t" not in word else "Btilde"


def cmd_map(args, out):
    op, n = args.op, args.rank
    tokens = args.word.replace(",", " ").split()
    if tokens == ["1"]:
        tokens = []
    doc = {"op": op, "rank": n}
    if op in ("Ln", "Fn", "Gn", "beta", "delta"):
        src, dst = source_target(op, n)
        word = parse_word(src, tokens)
        x = element_of(src, word)
        image = substitute(op, n, word) if op in ("Ln", "Fn", "Gn") else embed(op, n, word)
        canon = shortlex_word(element_of(dst, image))
        doc["source"] = _side(src, shortlex_word(x))
        doc["image"] = _side(dst, canon)
        doc["image"]["substituted"] = list(image)
        text = f"{format_word(image)}  l: {len(shortlex_word(x))} -> {len(canon)}"
    elif op in ("I", "J"):
        family = _nf_family(args, tokens)
        src = system_from_subscript(family, n)
        dst = system_from_subscript(family, n + 1)
        word = parse_word(src, tokens)
        form = parse(src, element_of(src, word))
        img = (map_I if op == "I" else map_J)(form)
        iw = render(img)
        doc["source"] = form_to_json(form, src)
        doc["image"] = form_to_json(img, dst)
        text = (
            f"{format_word(iw)}  l: {len(render(form))} -> {len(iw)}"
            f"  L: {form_affine_length(form)} -> {form_affine_length(img)}  class {doc['image']['class']}"
        )
    else:
        from .hecke import morphism_image, tower_systems
        from .temperley_lieb import tl_morphism_image

        src, dst = tower_systems(op, n)
        word = parse_word(src, tokens)
        key = shortlex_word(element_of(src, word))
        img = tl_morphism_image(op, n, key) if args.algebra == "tl" else morphism_image(op, n, key)
        doc["algebra"] = args.algebra
        doc["source"] = _side(src, key)
        doc["image"] = img.to_json()
        doc["terms"] = len(img.body)
        top = max((len(k) for k in img.body.terms), default=0)
        doc["image_length"] = top
        text = repr(img)
    if args.format == "json":
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")
    return 0


# entry point --------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="fctool", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list group elements or fully commutative elements")
    e.add_argument("--family", choices=FAMILIES, required=True)
    e.add_argument("--rank", type=int, required=True, help="subscript of the group")
    e.add_argument("--max-length", type=int)
    e.add_argument("--max-affine", type=int)
    e.add_argument("--fc-only", action="store_true")
    e.add_argument("--series", action="store_true")
    e.add_argument("--format", choices=("json", "text"), default="text")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=tuple(suites.SUITES) + ("all",), required=True)
    v.add_argument("--rank", type=int)
    v.add_argument("--max-length", type=int)
    v.add_argument("--format", choices=("json", "text"), default="text")

    m = sub.add_parser("map", help="apply a tower map to a word")
    m.add_argument("--op", choices=("I", "J", "Ln", "Fn", "Gn", "beta", "delta", "Qn", "Pn", "Rn"), required=True)
    m.add_argument("--rank", type=int, required=True, help="subscript of the source")
    m.add_argument("--word", required=True)
    m.add_argument("--family", choices=("Btilde", "Dtilde"), help="source family for I and J")
    m.add_argument("--algebra", choices=("hecke", "tl"), default="hecke", help="target of Qn, Pn, Rn")
    m.add_argument("--format", choices=("json", "text"), default="json")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"enumerate": cmd_enumerate, "verify": cmd_verify, "map": cmd_map}[args.command]
    try:
        return handler(args, out)
    except BudgetError as exc:
        print(f"fctool: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (UsageError, FCToolError) as exc:
        print(f"fctool: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
