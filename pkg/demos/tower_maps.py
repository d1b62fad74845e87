"""Send elements up the affine B tower and watch their lengths.

L_n replaces each t by a conjugate of t, adding two letters per t.
I acts on normal forms and keeps the class and affine length.
"""

from fctool.coxeter import element_of, format_word, shortlex_word, system_from_subscript
from fctool.normal_forms import form_affine_length, parse, render
from fctool.towers import map_I, source_target, substitute

word = ("t", "s2", "s1", "sb1", "s2", "t")
n = 3
for _ in range(3):
    _, dst = source_target("Ln", n)
    reduced = shortlex_word(element_of(dst, substitute("Ln", n, word)))
    print(f"L_{n}: {format_word(word)} (l={len(word)}) -> {format_word(reduced)} (l={len(reduced)})")
    word, n = reduced, n + 1

form = parse(system_from_subscript("Btilde", 4), ("t", "s3", "s2", "s1", "sb1", "s2", "s3", "t"))
for n in (4, 5, 6):
    print(f"I at {n}: {format_word(render(form))}  class {form.kind}, L={form_affine_length(form)}")
    form = map_I(form)
