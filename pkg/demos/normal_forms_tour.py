"""Walk through the fully commutative elements of affine B_4 and D_4.

Counts elements by affine length, shows one normal form of each class, and
checks that a few words parse back to themselves.
"""

from collections import Counter

from fctool.coxeter import element_of, format_word, system_from_subscript
from fctool.normal_forms import enumerate_fc, form_affine_length, parse, render

for family in ("Btilde", "Dtilde"):
    sy = system_from_subscript(family, 4)
    forms = list(enumerate_fc(sy, 10, 3))
    print(f"{family} subscript 4: {len(forms)} fc elements with l <= 10, L <= 3")
    print("  by affine length:", dict(sorted(Counter(form_affine_length(f) for f, _ in forms).items())))
    shown = set()
    for form, word in forms:
        if form.kind in shown:
            continue
        shown.add(form.kind)
        print(f"  {form.kind:8s} {format_word(word)}")
    w = forms[-1][1]
    again = render(parse(sy, element_of(sy, w)))
    print(f"  round trip of {format_word(w)}: {format_word(again)}")
