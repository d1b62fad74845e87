"""Iwahori-Hecke algebras on the basis g_w, and the towers Q_n, R_n, P_n.

Basis keys are ShortLex words, so an element is never stored twice.
Coefficients live in Z[q, q^-1]; ``P`` is q^-1.
"""

from __future__ import annotations

import json

from .coxeter import (
    affine_generator,
    element_of,
    parse_word,
    shortlex_word,
    system_from_subscript,
)
from .errors import DomainError, SystemMismatchError
from .laurent import ONE, P, Q, ZERO, LaurentPoly, LinComb, add_into, rank

_elements = {}


def _element(system, word):
    key = (system.key, word)
    e = _elements.get(key)
    if e is None:
        e = element_of(system, word)
        _elements[key] = e
    return e


class HeckeElt:
    __slots__ = ("system", "body")

    def __init__(self, system, body=None):
        self.system = system
        if body is None:
            body = LinComb()
        elif isinstance(body, dict):
            body = LinComb(body)
        self.body = body

    @classmethod
    def basis(cls, system, word=(), coeff=ONE):
        if isinstance(word, str):
            word = parse_word(system, word)
        key = shortlex_word(element_of(system, tuple(word)))
        return cls(system, {key: coeff})

    @classmethod
    def one(cls, system):
        return cls(system, {(): ONE})

    def _same(self, other):
        if self.system != other.system:
            raise SystemMismatchError(f"{self.system!r} and {other.system!r}")

    def __add__(self, other):
        self._same(other)
        return HeckeElt(self.system, self.body + other.body)

    def __sub__(self, other):
        self._same(other)
        return HeckeElt(self.system, self.body - other.body)

    def __neg__(self):
        return HeckeElt(self.system, -self.body)

    def scale(self, c):
        return HeckeElt(self.system, self.body.scale(c))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return mult(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.system == other.system and self.body == other.body

    def __hash__(self):
        return hash((self.system, self.body))

    def __bool__(self):
        return bool(self.body)

    def coeff(self, word):
        return self.body.coeff(tuple(word))

    def items(self):
        return self.body.items()

    def specialize(self, value=1):
        """Coefficients evaluated at q = value, as {word: number}."""
        out = {}
        for k, v in self.body.items():
            x = v(value)
            if x:
                out[k] = x
        return out

    def to_json(self):
        return [
            {"basis_word": list(k), "coeff": v.to_json()}
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
            parts.append(f"({v}) g[{' '.join(k) or '1'}]")
        return " + ".join(parts)


def _order(system, word):
    return (len(word), tuple(system.index[x] for x in word))


def _gen_index(system, s):
    if isinstance(s, int):
        return s
    try:
        return system.index[s]
    except KeyError:
        raise DomainError(f"{s!r} is not a generator of {system!r}") from None


def mult_left_gen(s, h):
    """g_s h, using g_s g_w = g_sw, or q g_sw + (q-1) g_w when s is a left descent of w."""
    sy = h.system
    i = _gen_index(sy, s)
    out = {}
    qm1 = Q - 1
    for w, c in h.body.items():
        e = _element(sy, w)
        sw = shortlex_word(e.left_mul(i))
        if e.column_sign(i, inverse=True) < 0:
            add_into(out, sw, c * Q)
            add_into(out, w, c * qm1)
        else:
            add_into(out, sw, c)
    return HeckeElt(sy, LinComb._raw(out))


def mult_right_gen(h, s):
    """h g_s, the mirror image of ``mult_left_gen``."""
    sy = h.system
    i = _gen_index(sy, s)
    out = {}
    qm1 = Q - 1
    for w, c in h.body.items():
        e = _element(sy, w)
        ws = shortlex_word(e.right_mul(i))
        if e.column_sign(i) < 0:
            add_into(out, ws, c * Q)
            add_into(out, w, c * qm1)
        else:
            add_into(out, ws, c)
    return HeckeElt(sy, LinComb._raw(out))


def mult(h1, h2):
    """Bilinear product: each basis word of h1 is folded onto h2 from the right end."""
    h1._same(h2)
    total = HeckeElt(h1.system)
    for w, c in h1.body.items():
        acc = h2
        for x in reversed(w):
            acc = mult_left_gen(x, acc)
        total = total + acc.scale(c)
    return total


def gen_inverse(system, s):
    """g_s^-1 = p g_s + (p - 1)."""
    i = _gen_index(system, s)
    g = system.generators[i]
    return HeckeElt(system, {(g,): P, (): P - 1})


def mult_right_inverse(h, s):
    """h g_s^-1."""
    return mult_right_gen(h, s).scale(P) + h.scale(P - 1)


# towers -------------------------------------------------------------------

_HECKE_MAPS = {"Rn": "Ctilde", "Qn": "Btilde", "Pn": "Dtilde"}


def generator_program(map_id, n, g):
    """Image of generator g as a list of (letter, inverse?) factors."""
    if map_id in ("Rn", "Qn"):
        if g == "t":
            return [(f"s{n}", False), ("t", False), (f"s{n}", True)]
        return [(g, False)]
    if map_id == "Pn":
        if g == f"sb{n - 1}":
            return [
                (f"s{n}", False),
                (f"s{n - 1}", False),
                (f"sb{n}", False),
                (f"s{n - 1}", True),
                (f"s{n}", True),
            ]
        return [(g, False)]
    raise DomainError(f"unknown Hecke map {map_id!r}")


def tower_systems(map_id, n):
    fam = _HECKE_MAPS.get(map_id)
    if fam is None:
        raise DomainError(f"unknown Hecke map {map_id!r}")
    return system_from_subscript(fam, n), system_from_subscript(fam, n + 1)


def morphism_image(map_id, n, word):
    """Image of e_w (w given by any reduced word) under R_n, Q_n or P_n."""
    src, dst = tower_systems(map_id, n)
    if isinstance(word, str):
        word = parse_word(src, word)
    word = shortlex_word(element_of(src, tuple(word)))
    acc = HeckeElt.one(dst)
    for g in word:
        for x, inv in generator_program(map_id, n, g):
            acc = mult_right_inverse(acc, x) if inv else mult_right_gen(acc, x)
    return acc


def check_relations(map_id, n):
    """Failures of the Hecke relations among the generator images (empty when all hold)."""
    src, dst = tower_systems(map_id, n)
    img = {}
    for g in src.generators:
        acc = HeckeElt.one(dst)
        for x, inv in generator_program(map_id, n, g):
            acc = mult_right_inverse(acc, x) if inv else mult_right_gen(acc, x)
        img[g] = acc
    return relation_failures(src, img, HeckeElt.one(dst), Q)


def relation_failures(src, img, one, q):
    """Check quadratic and braid relations for a dict generator -> image."""
    bad = []
    gens = src.generators
    for a in gens:
        if img[a] * img[a] != one.scale(q) + img[a].scale(q - 1):
            bad.append(f"quadratic relation fails for {a}")
    for i, a in enumerate(gens):
        for b in gens[i + 1:]:
            m = src.m_of(a, b)
            left, right = one, one
            for k in range(m):
                left = left * (img[a] if k % 2 == 0 else img[b])
                right = right * (img[b] if k % 2 == 0 else img[a])
            if left != right:
                bad.append(f"braid relation of length {m} fails for {a}, {b}")
    return bad


def affine_len_of_key(system, word):
    gen = affine_generator(system)
    return sum(1 for x in word if x == gen)


def leading_decomposition(h):
    """Split h by maximal affine length, then maximal Coxeter length.

    Returns (max_affine, top, rest) with ``top`` the terms of maximal
    length among those of maximal affine length.
    """
    sy = h.system
    if sy.family not in ("Btilde", "Ctilde"):
        raise DomainError("affine length of arbitrary keys is defined in affine B and C")
    if not h.body:
        return 0, LinComb(), LinComb()
    aff = {k: affine_len_of_key(sy, k) for k in h.body.terms}
    top_l = max(aff.values())
    top_len = max(len(k) for k, a in aff.items() if a == top_l)
    top = {k: v for k, v in h.body.items() if aff[k] == top_l and len(k) == top_len}
    rest = {k: v for k, v in h.body.items() if k not in top}
    return top_l, LinComb(top), LinComb(rest)


def check_leading(map_id, n, max_len):
    """Failures of the leading-term shape of Q_n / R_n images on the ball."""
    from .coxeter import ball
    from .towers import substitute

    if map_id not in ("Qn", "Rn"):
        raise DomainError("the leading-term shape is stated for Qn and Rn")
    src, dst = tower_systems(map_id, n)
    group_map = "Ln" if map_id == "Qn" else "Fn"
    bad = []
    count = 0
    for element, word in ball(src, max_len):
        count += 1
        img = morphism_image(map_id, n, word)
        target = shortlex_word(element_of(dst, substitute(group_map, n, word)))
        L = affine_len_of_key(src, word)
        coeff = img.coeff(target)
        if not coeff.is_monomial() or next(iter(coeff.c.values())) != 1:
            bad.append(f"coefficient {coeff} of the top term of {' '.join(word)} is not a power of q")
            continue
        for k, v in img.items():
            if k == target:
                continue
            if len(k) >= len(target) or affine_len_of_key(dst, k) > L:
                bad.append(f"term {' '.join(k)} of the image of {' '.join(word)} breaks the bounds")
                break
    return count, bad


def coefficient_matrix(elts):
    keys = sorted({k for e in elts for k in e.body.terms}, key=lambda w: (len(w), w))
    col = {k: i for i, k in enumerate(keys)}
    rows = []
    for e in elts:
        row = [ZERO] * len(keys)
        for k, v in e.body.items():
            row[col[k]] = v
        rows.append(row)
    return rows


def check_independent(elts):
    """True iff the elements are linearly independent over Q(q)."""
    elts = list(elts)
    if not elts:
        return True
    return rank(coefficient_matrix(elts)) == len(elts)
