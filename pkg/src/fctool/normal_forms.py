"""Normal forms of fully commutative elements.

Interval words (``m`` is the left parameter, ``k`` the right end)::

    <i, k]   = s_i s_{i+1} ... s_k            i >= 2
    <1, k]   = s1 s2 ... s_k
    <-1, k]  = sb1 s2 ... s_k
    <0, k]   = s1 sb1 s2 ... s_k
    <-i, k]  = s_i ... s2 s1 sb1 s2 ... s_k   i >= 2
    <k+1, k] = the empty word

Finite type D elements are products <m1,n1] ... <mr,nr] with decreasing
right ends.  Affine B and affine D elements are products of blocks that
each end with the affine generator, followed by a finite tail.

Every form here is a frozen dataclass.  ``render`` gives its word,
``parse`` finds the unique form of an element, and ``enumerate_forms``
lists all forms up to a length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .coxeter import (
    GroupElement,
    affine_length,
    build_system,
    descent_set,
    shortlex_word,
    element_of,
    find_braid,
    is_reduced,
)
from .errors import DomainError, IntervalError, InvalidFormError, NotFCError

# intervals --------------------------------------------------------------


def interval(m, k):
    """Word of <m, k]."""
    if m == k + 1:
        return ()
    if k < 1 or m > k + 1 or abs(m) > k:
        raise IntervalError(f"<{m},{k}] is not defined")
    tail = tuple(f"s{i}" for i in range(2, k + 1))
    if m >= 2:
        return tuple(f"s{i}" for i in range(m, k + 1))
    if m == 1:
        return ("s1",) + tail
    if m == -1:
        return ("sb1",) + tail
    if m == 0:
        return ("s1", "sb1") + tail
    return tuple(f"s{i}" for i in range(-m, 1, -1)) + ("s1", "sb1") + tail


def interval_length(m, k):
    if m == k + 1:
        return 0
    if m >= 1:
        return k - m + 1
    if m == -1:
        return k
    if m == 0:
        return k + 1
    return -m + k


def interval_inverse(m, k):
    """Word of <m, k]^-1, the letters of <m,k] reversed."""
    w = interval(m, k)[::-1]
    # keep the convention that s1 is written before sb1
    return _normalise_pair(w)


def _normalise_pair(word):
    w = list(word)
    for i in range(len(w) - 1):
        if w[i] == "sb1" and w[i + 1] == "s1":
            w[i], w[i + 1] = "s1", "sb1"
    return tuple(w)


def psi1_word(word):
    """Swap s1 and sb1."""
    sw = {"s1": "sb1", "sb1": "s1"}
    return _normalise_pair(tuple(sw.get(x, x) for x in word))


def psi1_param(m):
    return -m if abs(m) == 1 else m


# forms ------------------------------------------------------------------


@dataclass(frozen=True)
class DForm:
    """Element of finite type D_{n+1}: a product of intervals <m, k]."""

    terms: tuple = ()

    kind = "finite"

    def word(self):
        out = ()
        for m, k in self.terms:
            out += interval(m, k)
        return out

    @property
    def length(self):
        return sum(interval_length(m, k) for m, k in self.terms)

    def psi1(self):
        return DForm(tuple((psi1_param(m), k) for m, k in self.terms))

    def params(self):
        return {"terms": [list(t) for t in self.terms]}


@dataclass(frozen=True)
class Finite:
    """An affine length 0 element, wrapping its type D form."""

    n: int
    v: DForm
    kind = "finite"

    def params(self):
        return {"terms": [list(t) for t in self.v.terms]}


@dataclass(frozen=True)
class BFirst:
    """<i,n] t (<-n,n] t)^k <f,n]^-1 in affine B_{n+1}."""

    n: int
    i: int
    k: int
    f: int
    kind = "first"

    def params(self):
        return {"i": self.i, "k": self.k, "f": self.f}


@dataclass(frozen=True)
class BSecond:
    """<i1,n]t ... <ip,n]t  <j1,n]t ... <jk,n]t  w_r in affine B_{n+1}.

    The j's alternate between 1 and -1 starting from ``j_start``.
    """

    n: int
    i_list: tuple
    j_start: int
    k: int
    w_r: DForm
    kind = "second"

    def j_list(self):
        return tuple(self.j_start * (-1) ** s for s in range(self.k))

    def params(self):
        return {
            "i_list": list(self.i_list),
            "j_start": self.j_start,
            "k": self.k,
            "w_r": [list(t) for t in self.w_r.terms],
        }


@dataclass(frozen=True)
class BAffineOne:
    """<i,n] t v with v in finite type D."""

    n: int
    i: int
    v: DForm
    kind = "affine1"

    def params(self):
        return {"i": self.i, "v": [list(t) for t in self.v.terms]}


@dataclass(frozen=True)
class DFirst:
    """sbn^eps sn^eta <i,n-1] sbn (sn <-(n-1),n-1] sbn)^k <f,n]^-1 in affine D_{n+1}."""

    n: int
    eps: int
    eta: int
    i: int
    k: int
    f: int
    kind = "first"

    def params(self):
        return {"eps": self.eps, "eta": self.eta, "i": self.i, "k": self.k, "f": self.f}


@dataclass(frozen=True)
class DSecond:
    """Blocks <i,n]<j,n-1] sbn, then k blocks <-1,n]<1,n-1] sbn, then w_r.

    With ``psi1`` set the whole word is the image under the swap of s1
    and sb1.
    """

    n: int
    i_list: tuple
    j_list: tuple
    k: int
    w_r: DForm
    psi1: bool = False
    kind = "second"

    def params(self):
        return {
            "i_list": list(self.i_list),
            "j_list": list(self.j_list),
            "k": self.k,
            "w_r": [list(t) for t in self.w_r.terms],
        }


@dataclass(frozen=True)
class DAffineOne:
    """<i,n]<j,n-1] sbn v with v in finite type D."""

    n: int
    i: int
    j: int
    v: DForm
    kind = "affine1"

    def params(self):
        return {"i": self.i, "j": self.j, "v": [list(t) for t in self.v.terms]}


# rendering --------------------------------------------------------------


def render(form):
    """The reduced word displayed by a form."""
    if isinstance(form, DForm):
        return form.word()
    if isinstance(form, Finite):
        return form.v.word()
    n = form.n
    if isinstance(form, BFirst):
        w = interval(form.i, n) + ("t",)
        w += (interval(-n, n) + ("t",)) * form.k
        return w + interval_inverse(form.f, n)
    if isinstance(form, BSecond):
        w = ()
        for i in form.i_list:
            w += interval(i, n) + ("t",)
        for j in form.j_list():
            w += interval(j, n) + ("t",)
        return w + form.w_r.word()
    if isinstance(form, BAffineOne):
        return interval(form.i, n) + ("t",) + form.v.word()
    sb = f"sb{n}"
    sn = f"s{n}"
    if isinstance(form, DFirst):
        w = (sb,) * form.eps + (sn,) * form.eta + interval(form.i, n - 1) + (sb,)
        w += ((sn,) + interval(-(n - 1), n - 1) + (sb,)) * form.k
        return w + interval_inverse(form.f, n)
    if isinstance(form, DSecond):
        w = ()
        for i, j in zip(form.i_list, form.j_list):
            w += interval(i, n) + interval(j, n - 1) + (sb,)
        w += (interval(-1, n) + interval(1, n - 1) + (sb,)) * form.k
        w += form.w_r.word()
        return psi1_word(w) if form.psi1 else w
    if isinstance(form, DAffineOne):
        return interval(form.i, n) + interval(form.j, n - 1) + (sb,) + form.v.word()
    raise TypeError(f"not a form: {form!r}")


def form_affine_length(form):
    if isinstance(form, (DForm, Finite)):
        return 0
    if isinstance(form, BFirst):
        return form.k + 1
    if isinstance(form, DFirst):
        return form.k + 1 + form.eps
    if isinstance(form, (BAffineOne, DAffineOne)):
        return 1
    if isinstance(form, BSecond):
        return len(form.i_list) + form.k
    if isinstance(form, DSecond):
        return len(form.i_list) + form.k
    raise TypeError(form)


def form_system(form):
    if isinstance(form, (BFirst, BSecond, BAffineOne)):
        return build_system("Btilde", form.n + 2)
    if isinstance(form, (DFirst, DSecond, DAffineOne)):
        return build_system("Dtilde", form.n + 2)
    raise TypeError("finite forms carry no family; pass the system explicitly")


# validation: finite type D ------------------------------------------------


def dform_problem(terms, n):
    """Why ``terms`` is not a fully commutative form in D_{n+1}, or None."""
    prev = n + 1
    for m, k in terms:
        if not (1 <= k < prev):
            return "right ends must decrease from at most n down to at least 1"
        if abs(m) > k:
            return f"|{m}| exceeds {k}"
        prev = k
    ms = [m for m, _ in terms]
    ones = [m for m in ms if abs(m) == 1]
    if any(a == b for a, b in zip(ones, ones[1:])):
        return "occurrences of 1 and -1 must alternate"
    if not ms:
        return None
    # (1): a decreasing run of values >= 2 followed by +-1's
    s = 0
    while s < len(ms) and ms[s] >= 2 and (s == 0 or ms[s] < ms[s - 1]):
        s += 1
    if all(abs(m) == 1 for m in ms[s:]):
        return None
    # (2): decreasing, then a last value that is <= 0 and not -1
    head, last = ms[:-1], ms[-1]
    if (
        all(a > b for a, b in zip(head, head[1:]))
        and (not head or (head[-1] > -last and head[-1] > 1))
        and last <= 0
        and last != -1
    ):
        return None
    return "parameters fit neither pattern of the classification"


@lru_cache(maxsize=None)
def all_dforms(n):
    """Every fully commutative form of D_{n+1}, sorted by length."""
    out = []

    def rec(prefix, top):
        if dform_problem(prefix, n) is None:
            out.append(DForm(tuple(prefix)))
        for k in range(top - 1, 0, -1):
            for m in range(-k, k + 1):
                cand = prefix + [(m, k)]
                # prune on the alternation and ordering rules that only
                # get worse when more terms are added
                if _dform_prefix_ok(cand):
                    rec(cand, k)

    rec([], n + 1)
    out.sort(key=lambda f: (f.length, f.word()))
    return tuple(out)


def _dform_prefix_ok(terms):
    ms = [m for m, _ in terms]
    ones = [m for m in ms if abs(m) == 1]
    if any(a == b for a, b in zip(ones, ones[1:])):
        return False
    # once a value <= 1 appears only +-1 (or a single final <= 0) may follow
    for a, b in zip(ms, ms[1:]):
        if a >= 2 and b >= 2 and b >= a:
            return False
        if a <= 1 and abs(b) != 1:
            return False
        if a <= 0 and a != -1:
            return False
    return True


def dforms_by_length(n):
    table = {}
    for f in all_dforms(n):
        table.setdefault(f.length, []).append(f)
    return table


def _left_descents_of_word(system, word):
    return set(descent_set(element_of(system, word), "left"))


# validation: affine B -------------------------------------------------------


def _bsys(n):
    return build_system("Btilde", n + 2)


def _dsys(n):
    return build_system("Dtilde", n + 2)


def _is_alternating_tail(terms, first_sign, n):
    """<first_sign, r1] <-first_sign, r2] ... with n >= r1 > r2 > ... >= 1."""
    sign = first_sign
    prev = n + 1
    for m, k in terms:
        if m != sign or not (1 <= k < prev):
            return False
        sign = -sign
        prev = k
    return True


def form_problem(form):
    """Reason why a form breaks the classification, or None when valid."""
    if isinstance(form, DForm):
        raise TypeError("use dform_problem for finite forms")
    n = form.n
    if isinstance(form, Finite):
        return dform_problem(form.v.terms, n)
    if isinstance(form, BFirst):
        if n < 3:
            return "affine B forms need n >= 3"
        if not (-n <= form.i <= n + 1) or not (-n <= form.f <= n + 1):
            return "i and f must lie in [-n, n+1]"
        if form.k < 1:
            return "first type has affine length at least 2"
        return None
    if isinstance(form, BAffineOne):
        if n < 3:
            return "affine B forms need n >= 3"
        i, v = form.i, form.v
        if not (-n <= i <= n + 1):
            return "i must lie in [-n, n+1]"
        bad = dform_problem(v.terms, n)
        if bad:
            return bad
        if _inverse_interval_index(v, n) is not None:
            return None
        rest = v.terms[_staircase(v.terms, n):]
        if i > 1:
            if all(abs(m) < i for m, _ in rest):
                return None
            return "v is neither <h,n]^-1 nor a staircase followed by terms below i"
        if i in (1, -1):
            if _is_alternating_tail(rest, -i, n):
                return None
            return "v must be <h,n]^-1 or a staircase then an alternating tail"
        return "v must be <h,n]^-1"
    if isinstance(form, BSecond):
        if n < 3:
            return "affine B forms need n >= 3"
        il, k = form.i_list, form.k
        p = len(il)
        if p + k < 2:
            return "second type has affine length at least 2"
        if p > n + 1:
            return "p exceeds n+1"
        if form.j_start not in (1, -1):
            return "j_start must be 1 or -1"
        if k == 0 and form.j_start != 1:
            return "j_start is fixed to 1 when k = 0"
        if p:
            if il[0] > n + 1:
                return "i_1 exceeds n+1"
            if any(a <= b for a, b in zip(il[:-1], il[1:-1])):
                return "i_1 > ... > i_{p-1} fails"
            if p >= 2 and not il[-2] > abs(il[-1]):
                return "i_{p-1} > |i_p| fails"
            if p >= 2 and il[-1] <= 0 and il[-2] <= 1:
                return "i_p <= 0 needs i_{p-1} > 1"
            ip = il[-1]
            if abs(ip) == 1:
                return "blocks with +-1 are counted in the j sequence"
            if ip < -n:
                return "i_p below -n"
            if ip <= 0:
                if k or form.w_r.terms:
                    return "i_p <= 0 forces k = 0 and w_r = 1"
                if ip == -n:
                    return "i_p = -n belongs to the first type"
                return None
        bad = dform_problem(form.w_r.terms, n)
        if bad:
            return bad
        if k:
            last_j = form.j_start * (-1) ** (k - 1)
            if not _is_alternating_tail(form.w_r.terms, -last_j, n):
                return "w_r must continue the alternation of the j's"
            return None
        # k == 0, p >= 2, i_p >= 2
        if form.w_r.terms and not abs(form.w_r.terms[0][0]) < il[-1]:
            return "|m_1| < i_p fails"
        return None
    if isinstance(form, DFirst):
        if n < 3:
            return "affine D forms need n >= 3"
        if form.eps not in (0, 1) or form.eta not in (0, 1) or form.eps * form.eta:
            return "eps, eta in {0,1} with eps*eta = 0"
        if form.eps + form.eta and form.i != -(n - 1):
            return "eps + eta > 0 forces i = -(n-1)"
        if not (-(n - 1) <= form.i <= n):
            return "i must lie in [-(n-1), n]"
        if not (-n <= form.f <= n + 1):
            return "f must lie in [-n, n+1]"
        if form.k + 1 + form.eps < 2 or form.k < 0:
            return "first type has affine length at least 2"
        return None
    if isinstance(form, DAffineOne):
        return _daffine_one_problem(form)
    if isinstance(form, DSecond):
        return _dsecond_problem(form)
    raise TypeError(form)


def _staircase(terms, n):
    """Number of leading terms (n,n), (n-1,n-1), ..."""
    s = 0
    while s < len(terms) and terms[s] == (n - s, n - s):
        s += 1
    return s


def _inverse_interval_index(v, n):
    """h with v = <h,n]^-1, or None."""
    for h in range(-n, n + 2):
        if _dform_of_word(n, interval_inverse(h, n)) == v:
            return h
    return None


@lru_cache(maxsize=None)
def _dform_lookup(n):
    sy = build_system("D", n + 1)
    return {element_of(sy, f.word()): f for f in all_dforms(n)}


def _dform_of_word(n, word):
    return _dform_lookup(n).get(element_of(build_system("D", n + 1), word))


def _daffine_one_problem(form):
    n, i, j, v = form.n, form.i, form.j, form.v
    if n < 3:
        return "affine D forms need n >= 3"
    bad = dform_problem(v.terms, n)
    if bad:
        return bad
    if i == n + 1 and j == n:
        return None
    if not (abs(j) <= n - 1):
        return "|j| <= n-1 fails"
    if not (i == -1 or 1 <= i <= n + 1):
        return "i must be -1 or in [1, n+1]"
    if not (abs(j) < i or (j == -i and abs(j) == 1)):
        return "|j| < i or j = -i = +-1 fails"
    if j == 0 and i < 2:
        return "j = 0 needs i > 1"
    if abs(j) == 1:
        allowed = {"sb1" if j == 1 else "s1"}
        if i == n + 1:
            allowed.add(f"s{n}")
        lv = _left_descents_of_word(build_system("D", n + 1), v.word())
        if not lv <= allowed:
            return "left descents of v not allowed"
        return None
    if j < -1 or j == 0:
        if i <= n and not (i == n and j == -(n - 1)):
            return None if not v.terms else "v must be trivial"
        return None if _inverse_interval_index(v, n) is not None else "v must be <f,n]^-1"
    # j > 1
    if not v.terms or abs(v.terms[0][0]) < j:
        return None
    if i <= n:
        return "|m_1| < j fails"
    if _inverse_interval_index(v, n) is not None:
        return None
    s = _staircase(v.terms, n)
    if s and (s == len(v.terms) or abs(v.terms[s][0]) < j):
        return None
    return "tail of v does not fit"


def _dsecond_problem(form):
    n = form.n
    if n < 3:
        return "affine D forms need n >= 3"
    il, jl, k = form.i_list, form.j_list, form.k
    p = len(il)
    if len(jl) != p:
        return "i and j lists differ in length"
    if p + k < 2:
        return "second type has affine length at least 2"
    unflag = form
    if p:
        chain = [x for pair in zip(il, jl) for x in pair]
        if chain[0] > n + 1:
            return "i_1 exceeds n+1"
        if any(a <= b for a, b in zip(chain[:-2], chain[1:-1])):
            return "the chain i_1 > j_1 > ... > i_p fails"
        ip, jp = il[-1], jl[-1]
        if not (ip > abs(jp) >= 0):
            return "i_p > |j_p| fails"
        if ip <= 1:
            return "i_p > 1 fails"
        if jl[0] == n and il[0] != n + 1:
            return "j_1 = n needs i_1 = n+1"
        if jp == -1:
            return "j_p = -1 (the swapped form carries the flag)"
        if jp <= 0:
            if k or form.w_r.terms:
                return "j_p <= 0 forces k = 0 and w_r = 1"
            if jp == -(n - 1):
                return "j_p = -(n-1) belongs to the first type"
    bad = dform_problem(form.w_r.terms, n)
    if bad:
        return bad
    jp = jl[-1] if p else None
    if k or jp == 1:
        if not _is_alternating_tail(form.w_r.terms, -1, n):
            return "w_r must alternate starting from -1"
    elif jp is not None and jp > 1:
        if form.w_r.terms and not abs(form.w_r.terms[0][0]) < jp:
            return "|m_1| < j_p fails"
    if form.psi1 and not (k or jp == 1):
        return "the swap flag is only used when the form is not swap invariant"
    return None


def is_valid(form):
    return form_problem(form) is None


def validate(form):
    bad = form_problem(form) if not isinstance(form, DForm) else None
    if bad:
        raise InvalidFormError(bad)
    return form


# enumeration ------------------------------------------------------------


def _dforms_upto(n, max_len):
    return [f for f in all_dforms(n) if f.length <= max_len]


def _decreasing(lo, hi, size):
    """Strictly decreasing tuples of ``size`` integers in [lo, hi]."""
    for c in itertools.combinations(range(hi, lo - 1, -1), size):
        yield c


def candidate_forms(family, n, L, max_len):
    """A superset of the valid forms with affine length L and length <= max_len."""
    if family == "Btilde":
        yield from _b_candidates(n, L, max_len)
    elif family == "Dtilde":
        yield from _d_candidates(n, L, max_len)
    else:
        raise DomainError(f"no affine forms for {family}")


def _b_candidates(n, L, max_len):
    if L == 0:
        for v in _dforms_upto(n, max_len):
            yield Finite(n, v)
        return
    if L == 1:
        for i in range(-n, n + 2):
            rest = max_len - interval_length(i, n) - 1
            for v in _dforms_upto(n, rest):
                yield BAffineOne(n, i, v)
        return
    k = L - 1
    for i in range(-n, n + 2):
        for f in range(-n, n + 2):
            yield BFirst(n, i, k, f)
    for p in range(0, min(L, n + 1) + 1):
        kk = L - p
        for il in _decreasing(-n, n + 1, p):
            used = sum(interval_length(i, n) for i in il) + L
            for js in ((1, -1) if kk else (1,)):
                used2 = used + sum(interval_length(js * (-1) ** s, n) for s in range(kk))
                if used2 > max_len:
                    continue
                for w in _dforms_upto(n, max_len - used2):
                    yield BSecond(n, il, js, kk, w)


def _d_candidates(n, L, max_len):
    if L == 0:
        for v in _dforms_upto(n, max_len):
            yield Finite(n, v)
        return
    if L == 1:
        for i in range(-n, n + 2):
            for j in range(-(n - 1), n + 1):
                try:
                    used = interval_length(i, n) + interval_length(j, n - 1) + 1
                    interval(i, n), interval(j, n - 1)
                except IntervalError:
                    continue
                for v in _dforms_upto(n, max_len - used):
                    yield DAffineOne(n, i, j, v)
        return
    for eps in (0, 1):
        for eta in (0, 1):
            k = L - 1 - eps
            if k < 0:
                continue
            for i in range(-(n - 1), n + 1):
                for f in range(-n, n + 2):
                    yield DFirst(n, eps, eta, i, k, f)
    for p in range(0, L + 1):
        kk = L - p
        for chain in _decreasing(-(n - 1), n + 1, 2 * p):
            il, jl = chain[0::2], chain[1::2]
            try:
                used = sum(interval_length(i, n) + interval_length(j, n - 1) for i, j in zip(il, jl))
                for i, j in zip(il, jl):
                    interval(i, n), interval(j, n - 1)
            except IntervalError:
                continue
            used += L + kk * (interval_length(-1, n) + interval_length(1, n - 1))
            if used > max_len:
                continue
            for w in _dforms_upto(n, max_len - used):
                for flag in (False, True):
                    yield DSecond(n, il, jl, kk, w, flag)


def _valid_forms(family, n, L, max_len):
    for form in candidate_forms(family, n, L, max_len):
        if form_problem(form) is None:
            yield form


@lru_cache(maxsize=None)
def _form_index(family, n, L, length):
    """element -> list of valid forms with this affine length and length."""
    sy = build_system(family, n + 2)
    table = {}
    for form in _valid_forms(family, n, L, length):
        word = render(form)
        if len(word) != length:
            continue
        table.setdefault(element_of(sy, word), []).append(form)
    return table


def _key(system, word):
    return (len(word), tuple(system.index[x] for x in word))


def _max_length_bound(family, n, L):
    # every block and the final tail are at most a few intervals long
    return (L + 1) * (4 * n + 2) + n * (n + 1)


# parsing ----------------------------------------------------------------


def _as_element(system, x):
    if isinstance(x, GroupElement):
        if x.system != system:
            from .errors import SystemMismatchError

            raise SystemMismatchError("element belongs to another system")
        return x
    return element_of(system, x if isinstance(x, str) else tuple(x))


def _require_fc(system, element):
    from .coxeter import is_fully_commutative

    if not is_fully_commutative(system, element):
        raise NotFCError(f"{' '.join(shortlex_word(element))} is not fully commutative")


def parse_finite_D(system, x):
    """Form of an fc element of D_{n+1}, or of the parabolic D_{n+1} inside
    affine B or affine D (generators sb1, s1, ..., sn)."""
    element = _as_element(system, x)
    word = shortlex_word(element)
    if system.family == "D":
        n = system.n
    elif system.family in ("Btilde", "Dtilde"):
        n = system.n
        allowed = {"sb1"} | {f"s{i}" for i in range(1, n + 1)}
        if not set(word) <= allowed:
            raise DomainError("element is outside the finite parabolic subgroup")
    else:
        raise DomainError(f"no finite type D forms for {system.family}")
    found = _dform_of_word(n, word)
    if found is None:
        _require_fc(system, element)
        raise DomainError("element is outside the finite parabolic subgroup")
    return found


def _parse_affine(system, x, family):
    if system.family != family:
        raise DomainError(f"expected a {family} system, got {system.family}")
    if family == "Btilde" and system.n < 3:
        raise DomainError("Unsupported: affine B_3 has no normal forms here")
    element = _as_element(system, x)
    _require_fc(system, element)
    word = shortlex_word(element)
    n = system.n
    L = affine_length(system, word)
    hits = _form_index(family, n, L, len(word)).get(element, [])
    if not hits:
        raise InvalidFormError(f"no form found for {' '.join(word)}")
    if len(hits) > 1:
        raise InvalidFormError(f"{len(hits)} forms found for {' '.join(word)}")
    return hits[0]


def parse_B(system, x):
    return _parse_affine(system, x, "Btilde")


def parse_D(system, x):
    return _parse_affine(system, x, "Dtilde")


def parse(system, x):
    if system.family == "D":
        return parse_finite_D(system, x)
    if system.family == "Btilde":
        return parse_B(system, x)
    if system.family == "Dtilde":
        return parse_D(system, x)
    raise DomainError(f"no normal forms for {system.family}")


def render_B(form):
    validate(form)
    return render(form)


render_D = render_B


def matching_forms(system, x):
    """Every valid form representing ``x``: exhaustive search of the grid.

    Slow, and meant as an oracle for the uniqueness of ``parse``.
    """
    element = _as_element(system, x)
    word = shortlex_word(element)
    L = affine_length(system, word)
    out = []
    for form in _valid_forms(system.family, system.n, L, len(word)):
        w = render(form)
        if len(w) == len(word) and element_of(system, w) == element:
            out.append(form)
    return out


# enumeration of forms -----------------------------------------------------


def enumerate_fc(system, max_len=None, max_affine=0, budget=None):
    """(form, word) for every fc element in the bounds.

    Sorted by affine length, then length, then ShortLex.
    """
    from .coxeter import budget_limit
    from .errors import BudgetError

    limit = budget_limit(budget)
    if max_len is not None and max_len < 0 or max_affine < 0:
        raise DomainError("bounds must be non-negative")
    n = system.n
    if system.family == "D":
        forms = [f for f in all_dforms(n) if max_len is None or f.length <= max_len]
        if len(forms) > limit:
            raise BudgetError(f"{len(forms)} forms exceed the budget {limit}")
        out = [(f, f.word()) for f in forms]
        out.sort(key=lambda p: _key(system, p[1]))
        yield from out
        return
    if system.family not in ("Btilde", "Dtilde"):
        raise DomainError(f"no normal forms for {system.family}")
    if system.family == "Btilde" and n < 3:
        raise DomainError("Unsupported: affine B_3 has no normal forms here")
    count = 0
    for L in range(max_affine + 1):
        bound = _max_length_bound(system.family, n, L) if max_len is None else max_len
        batch = []
        for form in _valid_forms(system.family, n, L, bound):
            w = render(form)
            if len(w) <= bound:
                batch.append((form, w))
                count += 1
                if count > limit:
                    raise BudgetError(f"more than {limit} forms")
        batch.sort(key=lambda p: _key(system, p[1]))
        yield from batch


# json -------------------------------------------------------------------

_CLASSES = {
    DForm: "finite",
    Finite: "finite",
    BFirst: "first",
    BSecond: "second",
    BAffineOne: "affine1",
    DFirst: "first",
    DSecond: "second",
    DAffineOne: "affine1",
}


def form_to_json(form, system=None):
    if isinstance(form, DForm):
        fam, n = ("D", system.n) if system is not None else ("D", None)
    elif isinstance(form, Finite):
        fam, n = (system.family if system is not None else None), form.n
    else:
        fam, n = form_system(form).family, form.n
    word = render(form)
    return {
        "class": _CLASSES[type(form)],
        "family": fam,
        "n": n,
        "params": form.params(),
        "psi1": bool(getattr(form, "psi1", False)) if isinstance(form, DSecond) else False,
        "word": list(word),
        "length": len(word),
        "affine_length": form_affine_length(form),
    }


def _terms(x):
    return DForm(tuple((int(m), int(k)) for m, k in x))


def form_from_json(obj):
    """Inverse of ``form_to_json``; the form is validated."""
    import json

    if isinstance(obj, str):
        obj = json.loads(obj)
    cls, fam, n, p = obj["class"], obj.get("family"), obj.get("n"), obj["params"]
    if cls == "finite":
        v = _terms(p["terms"])
        form = v if fam in (None, "D") else Finite(n, v)
    elif fam == "Btilde":
        if cls == "first":
            form = BFirst(n, p["i"], p["k"], p["f"])
        elif cls == "second":
            form = BSecond(n, tuple(p["i_list"]), p["j_start"], p["k"], _terms(p["w_r"]))
        else:
            form = BAffineOne(n, p["i"], _terms(p["v"]))
    elif fam == "Dtilde":
        if cls == "first":
            form = DFirst(n, p["eps"], p["eta"], p["i"], p["k"], p["f"])
        elif cls == "second":
            form = DSecond(n, tuple(p["i_list"]), tuple(p["j_list"]), p["k"], _terms(p["w_r"]), bool(obj.get("psi1")))
        else:
            form = DAffineOne(n, p["i"], p["j"], _terms(p["v"]))
    else:
        raise InvalidFormError(f"unknown family {fam!r}")
    if isinstance(form, DForm):
        if n is not None:
            bad = dform_problem(form.terms, n)
            if bad:
                raise InvalidFormError(bad)
        return form
    return validate(form)


# symmetries and extremality ---------------------------------------------


def psi(system, x, which=1):
    """Swap s1 with sb1 (which=1) or sn with sbn (which='n', affine D only)."""
    if system.family not in ("D", "Dtilde"):
        raise DomainError("psi is defined for types D and affine D")
    if which == 1:
        a, b = "s1", "sb1"
    elif which == "n" or (which == system.n and system.family == "Dtilde"):
        if system.family != "Dtilde":
            raise DomainError("psi_n is only defined in affine D")
        a, b = f"s{system.n}", f"sb{system.n}"
    else:
        raise DomainError(f"unknown psi {which!r}")
    swap = {a: b, b: a}
    if isinstance(x, GroupElement):
        word = shortlex_word(x)
        return element_of(system, tuple(swap.get(c, c) for c in word))
    return tuple(swap.get(c, c) for c in x)


def extremal(system, x, kind):
    """B-extremal: sn occurs.  D-extremal: s_{n-1} occurs twice."""
    element = _as_element(system, x)
    if system.family != "D":
        raise DomainError("extremality is defined in finite type D")
    _require_fc(system, element)
    word = shortlex_word(element)
    n = system.n
    if kind == "B":
        return f"s{n}" in word
    if kind == "D":
        return sum(1 for c in word if c == f"s{n - 1}") == 2
    raise DomainError(f"unknown kind {kind!r}")


# block peeling ----------------------------------------------------------


def affine_blocks(system, word):
    """Split a reduced fc word into blocks, each ending with the affine letter.

    Repeatedly take the down-set of the first affine letter in the heap,
    i.e. push every letter that commutes past it to the right.  Returns
    (blocks, tail), where ``tail`` has no affine letter.
    """
    from .coxeter import affine_generator, heap_relations

    gen = affine_generator(system)
    if gen is None:
        raise DomainError("finite systems have no affine letter")
    word = tuple(word)
    blocks = []
    while gen in word:
        _, down = heap_relations(system, word)
        pos = word.index(gen)
        mask = down[pos]
        blocks.append(tuple(c for i, c in enumerate(word) if mask >> i & 1))
        word = tuple(c for i, c in enumerate(word) if not mask >> i & 1)
    return blocks, word
