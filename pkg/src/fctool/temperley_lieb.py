"""Temperley-Lieb algebras on the fully commutative basis T_w.

The algebra is the Hecke algebra modulo the ideal generated by the sums
of g_w over each dihedral parabolic <s, t> with m(s, t) = 3 or 4.
Multiplying T_u by a generator either shortens u (quadratic relation),
gives another basis element, or creates a braid, which is rewritten with

    V(x, y) = xyx + xy + yx + x + y + 1 = 0          (m = 3)
    Z(x, y) = xyxy + xyx + yxy + xy + yx + x + y + 1 = 0   (m = 4)

into strictly shorter words.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .coxeter import (
    affine_generator,
    bring_braid_together,
    build_system,
    element_of,
    find_braid,
    parse_word,
    shortlex_word,
)
from .errors import DomainError, NotFCError, SystemMismatchError
from .hecke import _element, _gen_index, _order, coefficient_matrix, generator_program, tower_systems
from .laurent import ONE, P, Q, LaurentPoly, LinComb, add_into, rank

QM1 = Q - 1


class TLElt:
    __slots__ = ("system", "body")

    def __init__(self, system, body=None):
        self.system = system
        if body is None:
            body = LinComb()
        elif isinstance(body, dict):
            body = LinComb(body)
        self.body = body

    @classmethod
    def one(cls, system):
        return cls(system, {(): ONE})

    @classmethod
    def basis(cls, system, word, coeff=ONE):
        """T_w for an fc element w, given by any reduced word."""
        if isinstance(word, str):
            word = parse_word(system, word)
        key = shortlex_word(element_of(system, tuple(word)))
        if find_braid(system, key) is not None:
            raise NotFCError(f"{' '.join(key)} is not fully commutative")
        return cls(system, {key: coeff})

    def _same(self, other):
        if self.system != other.system:
            raise SystemMismatchError(f"{self.system!r} and {other.system!r}")

    def __add__(self, other):
        self._same(other)
        return TLElt(self.system, self.body + other.body)

    def __sub__(self, other):
        self._same(other)
        return TLElt(self.system, self.body - other.body)

    def __neg__(self):
        return TLElt(self.system, -self.body)

    def scale(self, c):
        return TLElt(self.system, self.body.scale(c))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return mult(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, TLElt) and self.system == other.system and self.body == other.body

    def __hash__(self):
        return hash((self.system, self.body))

    def __bool__(self):
        return bool(self.body)

    def coeff(self, word):
        return self.body.coeff(tuple(word))

    def items(self):
        return self.body.items()

    def to_json(self):
        return [
            {"basis_word": list(k), "coeff": v.to_json(), "fc": True}
            for k, v in sorted(self.body.items(), key=lambda kv: _order(self.system, kv[0]))
        ]

    @classmethod
    def from_json(cls, system, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        out = cls(system)
        for item in obj:
            out = out + cls.basis(system, tuple(item["basis_word"]), LaurentPoly.from_json(item["coeff"]))
        return out

    def __repr__(self):
        if not self.body:
            return "0"
        parts = []
        for k, v in sorted(self.body.items(), key=lambda kv: _order(self.system, kv[0])):
            parts.append(f"({v}) T[{' '.join(k) or '1'}]")
        return " + ".join(parts)


# the reduction engine -------------------------------------------------------


def _shorter_monomials(x, y, m):
    """The monomials other than the leading one in V(x, y) or Z(x, y)."""
    if m == 3:
        return [(x, y), (y, x), (x,), (y,), ()]
    if m == 4:
        return [(x, y, x), (y, x, y), (x, y), (y, x), (x,), (y,), ()]
    raise DomainError(f"no Temperley-Lieb relation for m = {m}")


@lru_cache(maxsize=None)
def _times_gen(system, u, i):
    """T_u T_s as a tuple of (key, coeff) pairs; u is an fc ShortLex word."""
    e = _element(system, u)
    s = system.generators[i]
    us = shortlex_word(e.right_mul(i))
    if e.column_sign(i) < 0:
        # s is a right descent: T_u T_s = q T_us + (q - 1) T_u
        return ((us, Q), (u, QM1))
    word = u + (s,)
    chain = find_braid(system, word)
    if chain is None:
        return ((us, ONE),)
    prefix, braid, suffix = bring_braid_together(system, word, chain)
    assert len(braid) >= 3, "braid chain too short"
    acc = {}
    for mono in _shorter_monomials(braid[0], braid[1], len(braid)):
        for k, c in _reduce(system, prefix + mono + suffix):
            add_into(acc, k, -c)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _reduce(system, word):
    """T_{x1} ... T_{xk} on the fc basis, as (key, coeff) pairs."""
    if not word:
        return (((), ONE),)
    head = _reduce(system, word[:-1])
    i = system.index[word[-1]]
    acc = {}
    for k, c in head:
        for k2, c2 in _times_gen(system, k, i):
            add_into(acc, k2, c * c2)
    return tuple(acc.items())


def mult_right_gen(t, s):
    """t T_s."""
    sy = t.system
    i = _gen_index(sy, s)
    acc = {}
    for k, c in t.body.items():
        for k2, c2 in _times_gen(sy, k, i):
            add_into(acc, k2, c * c2)
    return TLElt(sy, LinComb._raw(acc))


def mult_right_inverse(t, s):
    """t T_s^-1 with T_s^-1 = p T_s + (p - 1)."""
    return mult_right_gen(t, s).scale(P) + t.scale(P - 1)


def reduce_word(system, word):
    """Image of the product T_{x1} ... T_{xk} of any word on the fc basis."""
    if isinstance(word, str):
        word = parse_word(system, word)
    word = tuple(word)
    for pos, x in enumerate(word):
        if x not in system.index:
            from .errors import AlphabetError

            raise AlphabetError(f"unknown generator {x!r}", pos, x)
    return TLElt(system, dict(_reduce(system, word)))


def mult(a, b):
    a._same(b)
    sy = a.system
    acc = {}
    for k1, c1 in a.body.items():
        for k2, c2 in b.body.items():
            for k, c in _reduce(sy, k1 + k2):
                add_into(acc, k, c1 * c2 * c)
    return TLElt(sy, LinComb._raw(acc))


def V(x, y):
    """xyx + xy + yx + x + y + 1 for TL elements."""
    one = TLElt.one(x.system)
    return x * y * x + x * y + y * x + x + y + one


def Z(x, y):
    one = TLElt.one(x.system)
    return x * y * x * y + x * y * x + y * x * y + x * y + y * x + x + y + one


def check_tl_relations(system):
    """Every defining relation, evaluated through the engine; returns failures."""
    gens = system.generators
    T = {g: reduce_word(system, (g,)) for g in gens}
    one = TLElt.one(system)
    bad = []
    for a in gens:
        if T[a] * T[a] != T[a].scale(QM1) + one.scale(Q):
            bad.append(f"T_{a}^2 != (q-1) T_{a} + q")
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            m = system.m_of(a, b)
            if m == 2:
                if T[a] * T[b] != T[b] * T[a]:
                    bad.append(f"T_{a} and T_{b} do not commute")
                continue
            left, right = one, one
            for k in range(m):
                left = left * (T[a] if k % 2 == 0 else T[b])
                right = right * (T[b] if k % 2 == 0 else T[a])
            if left != right:
                bad.append(f"braid relation fails for {a}, {b}")
            rel = V(T[a], T[b]) if m == 3 else Z(T[a], T[b])
            if rel:
                bad.append(f"{'V' if m == 3 else 'Z'}(T_{a}, T_{b}) != 0")
    return bad


# tower morphisms ------------------------------------------------------------


def tl_morphism_image(map_id, n, word):
    """Image of h_w under Q_n (affine B) or P_n (affine D), w fc."""
    if map_id not in ("Qn", "Pn", "Rn"):
        raise DomainError(f"unknown map {map_id!r}")
    src, dst = tower_systems(map_id, n)
    if isinstance(word, str):
        word = parse_word(src, word)
    key = shortlex_word(element_of(src, tuple(word)))
    if find_braid(src, key) is not None:
        raise NotFCError(f"{' '.join(key)} is not fully commutative")
    acc = TLElt.one(dst)
    for g in key:
        for x, inv in generator_program(map_id, n, g):
            acc = mult_right_inverse(acc, x) if inv else mult_right_gen(acc, x)
    return acc


def affine_len_of_key(system, word):
    gen = affine_generator(system)
    return sum(1 for x in word if x == gen)


def leading_terms(t):
    """(max affine length, top terms, rest), top = longest terms of maximal affine length."""
    sy = t.system
    if not t.body:
        return 0, LinComb(), LinComb()
    aff = {k: affine_len_of_key(sy, k) for k in t.body.terms}
    top_l = max(aff.values())
    top_len = max(len(k) for k, a in aff.items() if a == top_l)
    top = {k: v for k, v in t.body.items() if aff[k] == top_l and len(k) == top_len}
    rest = {k: v for k, v in t.body.items() if k not in top}
    return top_l, LinComb(top), LinComb(rest)


def source_fc_basis(map_id, n, max_len):
    from .coxeter import ball

    src, _ = tower_systems(map_id, n)
    return [w for _, w in ball(src, max_len) if find_braid(src, w) is None]


def check_faithful(map_id, n, max_len):
    """(number of basis elements, rank of their images)."""
    words = source_fc_basis(map_id, n, max_len)
    imgs = [tl_morphism_image(map_id, n, w) for w in words]
    return len(words), rank(coefficient_matrix(imgs))


def tl_system(family, sub):
    from .coxeter import system_from_subscript

    return system_from_subscript(family, sub)


# leading terms of tower images ---------------------------------------


def _key_of(system, word):
    return shortlex_word(element_of(system, tuple(word)))


def _starts_with(system, key, prefix):
    """Does the element of ``key`` have a reduced word beginning with ``prefix``?"""
    e = _element(system, key)
    for x in prefix:
        i = system.index[x]
        if e.column_sign(i, inverse=True) >= 0:
            return False
        e = e.left_mul(i)
    return True


def in_image_I(form):
    """Is an affine length one form of affine D in the image of I?"""
    from .normal_forms import DAffineOne, DForm, form_problem
    from .towers import map_I

    m = form.n
    cands = []
    if form.i <= m - 1:
        cands.append(DAffineOne(m - 1, form.i, form.j, form.v))
    if form.i == m + 1 and form.v.terms[:1] == ((m, m),):
        rest = DForm(form.v.terms[1:])
        cands.append(DAffineOne(m - 1, m, form.j, rest))
        cands.append(DAffineOne(m - 1, m - 1, -(m - 2), rest))
    for c in cands:
        if form_problem(c) is None and map_I(c) == form:
            return True
    return False


def expansion_report(family, n, max_len, max_affine=3, stats=None):
    """Leading strata of Q_n (affine B) or P_n (affine D) images.

    ``n`` is the subscript of the source.  Returns (checked, failures).
    If ``stats`` is a dict it receives the number of elements seen per case.
    """
    if stats is None:
        stats = {}

    def seen(case):
        stats[case] = stats.get(case, 0) + 1

    from .coxeter import system_from_subscript
    from .normal_forms import DAffineOne, enumerate_fc, form_affine_length, parse, render
    from .towers import _first_type_like, map_I, map_J, tier

    map_id = {"Btilde": "Qn", "Dtilde": "Pn"}[family]
    src = system_from_subscript(family, n)
    dst = system_from_subscript(family, n + 1)
    bad = []
    checked = 0
    for form, word in enumerate_fc(src, max_len, max_affine):
        L = form_affine_length(form)
        img = tl_morphism_image(map_id, n, word)
        key_I = _key_of(dst, render(map_I(form)))
        key_J = _key_of(dst, render(map_J(form)))
        lI = len(key_I)
        where = " ".join(word) or "1"
        checked += 1

        def expect(key, coeff):
            if img.coeff(key) != coeff:
                bad.append(f"{where}: coefficient of T[{' '.join(key)}] is {img.coeff(key)}, expected {coeff}")

        t = tier(form)
        if family == "Dtilde" and isinstance(form, DAffineOne) and not _first_type_like(form):
            # affine length one: I(w), possibly I(w bar), then terms outside Im I
            nn = form.n
            allowed = {key_I}
            below = all(f"s{nn}" not in x for x in form.v.word())
            seen("affine1")
            if form.i <= nn and below:
                seen("affine1 with I(w bar)")
                expect(key_I, ONE)
                bar = list(interval_word(form.i, nn - 1)) + [f"sb{nn}"]
                bar += list(interval_word(form.j, nn)) + list(form.v.word())
                key_bar = _key_of(dst, render(map_I(parse(src, _element(src, tuple(bar))))))
                expect(key_bar, P)
                allowed.add(key_bar)
            else:
                expect(key_I, P if form.i == nn + 1 else ONE)
            for k, c in img.items():
                a = affine_len_of_key(dst, k)
                if a > 1 or len(k) > lI:
                    bad.append(f"{where}: term T[{' '.join(k)}] is above the leading stratum")
                elif a == 1 and len(k) == lI and k not in allowed:
                    if in_image_I(parse(dst, _element(dst, k))):
                        bad.append(f"{where}: term T[{' '.join(k)}] lies in Im I")
            continue
        if t != "W2":
            seen({"D": "finite", "W1": "first"}[t] if L != 1 else "affine1")
            lead = P ** L if (family == "Btilde" or t == "W1") else ONE
            if t == "D":
                lead = ONE
            expect(key_I, lead)
            for k, c in img.items():
                if k != key_I and (affine_len_of_key(dst, k) > L or len(k) >= lI):
                    bad.append(f"{where}: term T[{' '.join(k)}] is not below T_I")
            continue
        if family == "Btilde":
            expect(key_I, LaurentPoly({0: (-1) ** L}))
            expect(key_J, LaurentPoly({-L: (-1) ** L}))
        else:
            expect(key_I, ONE)
            expect(key_J, P ** (2 * L))
        precise = family == "Btilde" and form.i_list[:1] == (form.n + 1,) and not form.w_r.terms
        seen("second")
        if precise:
            seen("second with left factor t s t")
        tsn = ("t", f"s{form.n + 1}", "t")
        for k, c in img.items():
            if k in (key_I, key_J):
                continue
            a = affine_len_of_key(dst, k)
            if a > L or (a == L and len(k) >= lI):
                bad.append(f"{where}: term T[{' '.join(k)}] is not below T_I")
            elif precise and a == L and not (_starts_with(dst, k, tsn) and len(k) < lI):
                bad.append(f"{where}: term T[{' '.join(k)}] lacks the left factor t s t")
    return checked, bad


def interval_word(m, k):
    from .normal_forms import interval

    return interval(m, k)
