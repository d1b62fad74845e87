"""Group level towers and the injections I, J between fully commutative sets.

Ranks here are subscripts: ``L_n`` goes from affine B_n to affine B_{n+1},
so for n = 3 it sends ``t`` to ``s3 t s3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coxeter import (
    affine_length,
    ball,
    element_of,
    is_reduced,
    is_reduced_phi,
    length,
    shortlex_word,
    system_from_subscript,
)
from .errors import AlphabetError, DomainError, InvalidFormError
from .normal_forms import (
    BAffineOne,
    BFirst,
    BSecond,
    DAffineOne,
    DFirst,
    DForm,
    DSecond,
    Finite,
    form_problem,
    psi1_param,
    render,
)

# source family, target family, and the image of each moving generator
_MAPS = {
    "Fn": ("Ctilde", "Ctilde"),
    "Ln": ("Btilde", "Btilde"),
    "Gn": ("Dtilde", "Dtilde"),
}


def _images(map_id, n):
    if map_id in ("Fn", "Ln"):
        return {"t": (f"s{n}", "t", f"s{n}")}
    if map_id == "Gn":
        return {f"sb{n - 1}": (f"s{n}", f"s{n - 1}", f"sb{n}", f"s{n - 1}", f"s{n}")}
    if map_id == "beta":
        return {"sb1": ("s0", "s1", "s0")}
    if map_id == "delta":
        return {f"sb{n - 1}": ("t", f"s{n - 1}", "t")}
    raise DomainError(f"unknown map {map_id!r}")


def source_target(map_id, n):
    """(source system, target system) for a map at subscript n."""
    if map_id in _MAPS:
        src, dst = _MAPS[map_id]
        return system_from_subscript(src, n), system_from_subscript(dst, n + 1)
    if map_id == "beta":
        return system_from_subscript("Btilde", n), system_from_subscript("Ctilde", n)
    if map_id == "delta":
        return system_from_subscript("Dtilde", n), system_from_subscript("Btilde", n)
    raise DomainError(f"unknown map {map_id!r}")


def _apply(map_id, n, word):
    src, _ = source_target(map_id, n)
    img = _images(map_id, n)
    out = []
    for pos, x in enumerate(word):
        if x not in src.index:
            raise AlphabetError(f"{x!r} is not a generator of {src.family} {n}", pos, x)
        out.extend(img.get(x, (x,)))
    return tuple(out)


def substitute(map_id, n, word):
    """Image of a word under F_n, L_n or G_n, letter by letter."""
    if map_id not in _MAPS:
        raise DomainError(f"{map_id!r} is not one of Fn, Ln, Gn")
    return _apply(map_id, n, word)


def embed(map_id, n, word):
    """Image of a word under beta (affine B into affine C) or delta_n (affine D into affine B)."""
    if map_id not in ("beta", "delta"):
        raise DomainError(f"{map_id!r} is not beta or delta")
    return _apply(map_id, n, word)


def map_element(map_id, n, element):
    _, dst = source_target(map_id, n)
    return element_of(dst, _apply(map_id, n, shortlex_word(element)))


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, msg):
        self.failures.append(msg)

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        head = f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures"
        return head + ("\n  " + self.failures[0] if self.failures else "")


def check_homomorphism(map_id, n, report=None):
    """Images of the generators satisfy every defining relation of the source."""
    src, dst = source_target(map_id, n)
    report = report or Report(f"{map_id} homomorphy n={n}")
    img = {g: element_of(dst, _apply(map_id, n, (g,))) for g in src.generators}
    one = dst.identity
    for a in src.generators:
        for b in src.generators:
            m = src.m_of(a, b)
            if m == 0 or src.index[a] > src.index[b]:
                continue
            report.checked += 1
            x = img[a] * img[b] if a != b else img[a]
            power = one
            for _ in range(m if a != b else 2):
                power = power * x
            if power != one:
                report.fail(f"relation ({a} {b})^{m} fails under {map_id}")
    return report


def check_square(n, injectivity_radius=6):
    """The two squares beta.L = F.beta and delta.G = L.delta, plus homomorphy and injectivity."""
    rep = Report(f"commuting squares n={n}")
    bsrc = system_from_subscript("Btilde", n)
    for g in bsrc.generators:
        rep.checked += 1
        left = embed("beta", n + 1, substitute("Ln", n, (g,)))
        right = substitute("Fn", n, embed("beta", n, (g,)))
        c = system_from_subscript("Ctilde", n + 1)
        if element_of(c, left) != element_of(c, right):
            rep.fail(f"beta L_n and F_n beta differ on {g}")
    dsrc = system_from_subscript("Dtilde", n)
    for g in dsrc.generators:
        rep.checked += 1
        left = embed("delta", n + 1, substitute("Gn", n, (g,)))
        right = substitute("Ln", n, embed("delta", n, (g,)))
        b = system_from_subscript("Btilde", n + 1)
        if element_of(b, left) != element_of(b, right):
            rep.fail(f"delta G_n and L_n delta differ on {g}")
    for map_id, k in (("Fn", n), ("Ln", n), ("Gn", n), ("beta", n), ("beta", n + 1), ("delta", n), ("delta", n + 1)):
        check_homomorphism(map_id, k, rep)
    if injectivity_radius is not None:
        for map_id in ("Ln", "Gn"):
            check_injective(map_id, n, injectivity_radius, rep)
    return rep


def check_injective(map_id, n, radius, report=None):
    src, dst = source_target(map_id, n)
    report = report or Report(f"{map_id} injectivity n={n}")
    seen = {}
    for element, word in ball(src, radius):
        report.checked += 1
        image = element_of(dst, _apply(map_id, n, word))
        if image in seen:
            report.fail(f"{map_id} identifies {' '.join(seen[image])} and {' '.join(word)}")
        seen[image] = word
    return report


def length_theorem_check(map_id, n, max_len):
    """l(image) = l(w) + 2 L(w), affine length kept, substituted word reduced."""
    if map_id not in ("Fn", "Ln"):
        raise DomainError("the length law holds for Fn and Ln")
    src, dst = source_target(map_id, n)
    rep = Report(f"{map_id} length law n={n} l<={max_len}")
    for element, word in ball(src, max_len):
        rep.checked += 1
        image_word = _apply(map_id, n, word)
        image = element_of(dst, image_word)
        lw, aw = len(word), affine_length(src, word)
        if length(dst, image) != lw + 2 * aw:
            rep.fail(f"l({' '.join(image_word)}) != {lw} + 2*{aw}")
        elif affine_length(dst, shortlex_word(image)) != aw:
            rep.fail(f"affine length changes on {' '.join(word)}")
        elif not is_reduced_phi(dst, image_word) or not is_reduced(dst, image_word):
            rep.fail(f"{' '.join(image_word)} is not reduced")
    return rep


def centralizer_check(n, samples=200, radius=8, seed=0):
    """t_{n+1} commutes with L_n(x) for random x in the ball."""
    import random

    src, dst = source_target("Ln", n)
    rep = Report(f"centralizer n={n}")
    elements = ball(src, radius)
    rng = random.Random(seed)
    t = element_of(dst, ("t",))
    for _, word in rng.sample(elements, min(samples, len(elements))):
        rep.checked += 1
        x = element_of(dst, _apply("Ln", n, word))
        if t * x != x * t:
            rep.fail(f"t does not commute with L_n({' '.join(word)})")
    return rep


# I and J on forms ---------------------------------------------------------


def _check(form):
    bad = form_problem(form)
    if bad:
        raise InvalidFormError(f"{form!r}: {bad}")
    return form


def tier(form):
    """'W1' for first type and affine length one, 'W2' for second type, 'D' for finite."""
    if isinstance(form, (Finite, DForm)):
        return "D"
    return "W2" if form.kind == "second" else "W1"


def _first_type_like(form):
    """sn <-(n-1),n-1] sbn <f,n]^-1 with f <= n: the shape of a first type
    element with k = 0, filed with affine length one."""
    return form.i == form.n and form.j == -(form.n - 1) and bool(form.v.terms)


def map_I(form):
    """I(w) as a form one rank up."""
    _check(form)
    n = form.n
    m = n + 1
    if isinstance(form, Finite):
        return Finite(m, form.v)
    if isinstance(form, BFirst):
        return _check(BFirst(m, form.i, form.k, form.f))
    if isinstance(form, BAffineOne):
        return _check(BAffineOne(m, form.i, DForm(((m, m),) + form.v.terms)))
    if isinstance(form, BSecond):
        return _check(BSecond(m, form.i_list, form.j_start, form.k, form.w_r))
    if isinstance(form, DFirst):
        if form.eps:
            return _check(DFirst(m, 0, 0, m, form.k + 1, form.f))
        if form.eta:
            return _check(DFirst(m, 0, 0, -n, form.k, form.f))
        return _check(DFirst(m, 0, 0, form.i, form.k, form.f))
    if isinstance(form, DAffineOne):
        if _first_type_like(form):
            return _check(DAffineOne(m, m + 1, -n, DForm(((m, m),) + form.v.terms)))
        if form.i != n + 1:
            return _check(DAffineOne(m, form.i, form.j, form.v))
        return _check(DAffineOne(m, m + 1, form.j, DForm(((m, m),) + form.v.terms)))
    if isinstance(form, DSecond):
        return _check(DSecond(m, form.i_list, form.j_list, form.k, form.w_r, form.psi1))
    raise TypeError(form)


def map_J(form):
    """J(w) as a form one rank up; equal to I(w) off the second type."""
    if tier(form) != "W2":
        return map_I(form)
    _check(form)
    m = form.n + 1
    if isinstance(form, BSecond):
        blocks = list(form.i_list) + list(form.j_list())
        new = [m + 1] + blocks[:-1]
        w_r = DForm(((blocks[-1], m),) + form.w_r.terms)
        il = tuple(x for x in new if abs(x) != 1)
        js = [x for x in new if abs(x) == 1]
        return _check(BSecond(m, il, js[0] if js else 1, len(js), w_r))
    # affine D: work on the unswapped parameters, then swap back if needed
    seq = [x for pair in zip(form.i_list, form.j_list) for x in pair] + [-1, 1] * form.k
    new = [m + 1] + seq[:-1]
    w_r = ((seq[-1], m),) + form.w_r.terms
    pairs = list(zip(new[0::2], new[1::2]))
    k = 0
    while k < len(pairs) and set(map(abs, pairs[len(pairs) - 1 - k])) == {1}:
        k += 1
    chain = pairs[: len(pairs) - k]
    flag = form.psi1
    cand = DSecond(m, tuple(a for a, _ in chain), tuple(b for _, b in chain), k, DForm(w_r), flag)
    if form_problem(cand) is None:
        return cand
    swapped = DSecond(
        m,
        tuple(psi1_param(a) for a, _ in chain),
        tuple(psi1_param(b) for _, b in chain),
        k,
        DForm(tuple((psi1_param(a), b) for a, b in w_r)),
        not flag,
    )
    return _check(swapped)


def substituted_word(form, which):
    """Word-level definition of I or J: rewrite the affine letter in the
    rendered normal form.  Used as an independent check of map_I/map_J."""
    n = form.n
    m = n + 1
    word = render(form)
    t = tier(form)
    if t == "D":
        return word
    if isinstance(form, (BFirst, BSecond, BAffineOne)):
        if t == "W2":
            rep = (f"s{m}", "t") if which == "I" else ("t", f"s{m}")
        else:
            rep = (f"s{m}", "t", f"s{m}")
        out = []
        for x in word:
            out.extend(rep if x == "t" else (x,))
        return tuple(out)
    sb = f"sb{n}"
    if t == "W2":
        rep = (f"s{m}", f"s{n}", f"sb{m}") if which == "I" else (f"sb{m}", f"s{n}", f"s{m}")
    elif isinstance(form, DAffineOne) and form.i != n + 1 and not _first_type_like(form):
        rep = (f"s{m}", f"s{n}", f"sb{m}")
    else:
        rep = (f"s{n}", f"sb{m}", f"s{m}")
    out = []
    first = True
    for x in word:
        if x == sb:
            if first and isinstance(form, DFirst) and form.eps:
                out.extend((f"s{m}", f"sb{m}", f"s{n}"))
            else:
                out.extend(rep)
            first = False
        else:
            out.append(x)
    return tuple(out)


def check_IJ(family, n, max_len):
    """Injectivity, length laws, type preservation and Im I & Im J for
    fc elements of length <= max_len; ``n`` is the subscript of the source."""
    from .coxeter import affine_generator, descent_set
    from .normal_forms import enumerate_fc, form_affine_length

    src = system_from_subscript(family, n)
    dst = system_from_subscript(family, n + 1)
    rep = Report(f"I, J on {family} {n} -> {n + 1}, l<={max_len}")
    img_I, img_J, low = {}, {}, set()
    top = affine_generator(dst)
    for form, word in enumerate_fc(src, max_len, max_len):
        rep.checked += 1
        fi, fj = map_I(form), map_J(form)
        wi, wj = render(fi), render(fj)
        for which, f, w in (("I", fi, wi), ("J", fj, wj)):
            if element_of(dst, w) != element_of(dst, substituted_word(form, which)):
                rep.fail(f"{which} form and substitution differ on {' '.join(word)}")
            if form_affine_length(f) != form_affine_length(form):
                rep.fail(f"{which} changes the affine length of {' '.join(word)}")
            if tier(f) != tier(form):
                rep.fail(f"{which} changes the type of {' '.join(word)}")
        L = form_affine_length(form)
        want = len(word) + (L if family == "Btilde" and tier(form) == "W2" else 2 * L)
        if len(wi) != want or len(wj) != want:
            rep.fail(f"length law fails on {' '.join(word)}")
        if family == "Btilde" and tier(form) == "W2":
            if top not in descent_set(element_of(dst, wj)):
                rep.fail(f"J({' '.join(word)}) does not start with t")
            if top in descent_set(element_of(dst, wi)):
                rep.fail(f"I({' '.join(word)}) starts with t")
        ei, ej = element_of(dst, wi), element_of(dst, wj)
        if ei in img_I or ej in img_J:
            rep.fail(f"I or J is not injective at {' '.join(word)}")
        img_I[ei] = word
        img_J[ej] = word
        if tier(form) != "W2":
            low.add(ei)
    both = set(img_I) & set(img_J)
    if both != low:
        rep.fail(f"Im I & Im J has {len(both)} elements, I(W1 + D) has {len(low)}")
    return rep
