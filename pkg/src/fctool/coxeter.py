"""Coxeter systems of type D, affine B, affine C and affine D.

Elements are stored through the geometric (Tits) representation on the
span of the simple roots, with exact entries in Z[sqrt 2].  A generator
s sends a simple root a_t to a_t - 2cos(pi/m(s,t)) a_s, so the only
coefficients that occur are 0, 1 and sqrt 2.

Generators are named by tokens:

    sb1            sigma_{1 bar}
    s1 ... sN      sigma_1 ... sigma_N
    sbN            sigma_{N bar}   (affine D only)
    t              the affine node of affine B and C
    s0             the extra node of affine C

Inside a system the tokens are ordered s0 < sb1 < s1 < ... < sN < sbN < t,
which is the order used for ShortLex words.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import AlphabetError, BudgetError, NotFCError, NotReducedError, RankError, SystemMismatchError

FAMILIES = ("D", "Btilde", "Ctilde", "Dtilde")
MIN_RANK = {"D": 3, "Btilde": 4, "Ctilde": 3, "Dtilde": 4}
DEFAULT_BUDGET = 2_000_000


def budget_limit(budget=None):
    if budget is not None:
        return int(budget)
    return int(os.environ.get("FCTOOL_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class QuadInt:
    """An element a + b*sqrt(2) of Z[sqrt 2]."""

    a: int = 0
    b: int = 0

    def __add__(self, other):
        other = _quad(other)
        return QuadInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_quad(other))

    def __rsub__(self, other):
        return _quad(other) - self

    def __mul__(self, other):
        other = _quad(other)
        return QuadInt(self.a * other.a + 2 * self.b * other.b, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def sign(self):
        return _quad_sign(self.a, self.b)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return self.a + self.b * 2 ** 0.5

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt2"


def _quad(x):
    return x if isinstance(x, QuadInt) else QuadInt(int(x), 0)


def _quad_sign(a, b):
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1
    # mixed signs: compare a^2 with 2 b^2
    d = a * a - 2 * b * b
    if a > 0:
        return 1 if d > 0 else -1
    return -1 if d > 0 else 1


class CoxeterSystem:
    """A Coxeter system from one of the four families.

    ``rank`` is the number of generators.  ``n`` is the largest index of
    an ordinary generator ``s_i``.
    """

    def __init__(self, family, rank):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if rank < MIN_RANK[family]:
            raise RankError(f"{family} needs rank >= {MIN_RANK[family]}, got {rank}")
        self.family = family
        self.rank = rank
        self.n = rank - 1 if family == "D" else rank - 2
        n = self.n
        gens = []
        if family == "Ctilde":
            gens.append("s0")
        else:
            gens.append("sb1")
        gens += [f"s{i}" for i in range(1, n + 1)]
        if family == "Dtilde":
            gens.append(f"sb{n}")
        if family in ("Btilde", "Ctilde"):
            gens.append("t")
        self.generators = tuple(gens)
        self.index = {g: i for i, g in enumerate(gens)}
        r = len(gens)
        m = [[2] * r for _ in range(r)]
        for i in range(r):
            m[i][i] = 1

        def edge(x, y, val):
            i, j = self.index[x], self.index[y]
            m[i][j] = m[j][i] = val

        for i in range(1, n):
            edge(f"s{i}", f"s{i + 1}", 3)
        if family == "Ctilde":
            edge("s0", "s1", 4)
        else:
            edge("sb1", "s2", 3)
        if family in ("Btilde", "Ctilde"):
            edge(f"s{n}", "t", 4)
        if family == "Dtilde":
            edge(f"sb{n}", f"s{n - 1}", 3)
            if n == 2:
                # affine D_3 is the 4-cycle of affine A_3
                edge("sb1", "sb2", 3)
        self.m = tuple(tuple(row) for row in m)
        # neighbours with weight 1 (m=3) or sqrt 2 (m=4)
        self.adj = tuple(
            tuple((j, m[i][j] == 4) for j in range(r) if j != i and m[i][j] > 2) for i in range(r)
        )
        self.has_sqrt2 = any(4 in row for row in m)
        self._canon = {}
        ident = _identity(r)
        zeros = (0,) * (r * r) if self.has_sqrt2 else None
        self.identity = GroupElement(self, ident, zeros, ident, zeros)
        self.gen_elements = tuple(self.identity.left_mul(i) for i in range(r))

    # convenience -------------------------------------------------------
    @property
    def key(self):
        return (self.family, self.rank)

    @property
    def subscript(self):
        """Subscript used in the usual names D_m, affine B_m and so on."""
        return self.rank if self.family == "D" else self.rank - 1

    def m_of(self, x, y):
        return self.m[self.index[x]][self.index[y]]

    def commute(self, x, y):
        return self.m[self.index[x]][self.index[y]] == 2

    def __repr__(self):
        return f"CoxeterSystem({self.family!r}, {self.rank})"

    def __eq__(self, other):
        return isinstance(other, CoxeterSystem) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


def _identity(r):
    return tuple(1 if i == j else 0 for i in range(r) for j in range(r))


@lru_cache(maxsize=None)
def build_system(family, rank):
    return CoxeterSystem(family, rank)


def system_from_subscript(family, sub):
    """The system usually written with subscript ``sub`` (D_4, affine B_4 ...)."""
    if family == "D":
        return build_system(family, sub)
    return build_system(family, sub + 1)


class GroupElement:
    """An element of W, held as the pair of matrices of w and w^-1.

    Column j of ``w`` is the image of the j-th simple root.  Entries are
    stored as flat tuples of the rational and sqrt 2 parts.
    """

    __slots__ = ("system", "a", "b", "ia", "ib", "_hash")

    def __init__(self, system, a, b, ia, ib):
        self.system = system
        self.a, self.b, self.ia, self.ib = a, b, ia, ib
        self._hash = None

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.a == other.a
            and self.b == other.b
            and self.system == other.system
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b))
        return self._hash

    def __repr__(self):
        return f"<{self.system.family}{self.system.rank} {' '.join(shortlex_word(self)) or '1'}>"

    @property
    def matrix(self):
        r = self.system.rank
        b = self.b or (0,) * (r * r)
        return [[QuadInt(self.a[i * r + j], b[i * r + j]) for j in range(r)] for i in range(r)]

    def inverse(self):
        return GroupElement(self.system, self.ia, self.ib, self.a, self.b)

    def left_mul(self, s):
        """s * w for a generator index s."""
        sy = self.system
        a, b = _row_update(sy, self.a, self.b, s)
        ia, ib = _col_update(sy, self.ia, self.ib, s)
        return GroupElement(sy, a, b, ia, ib)

    def right_mul(self, s):
        """w * s for a generator index s."""
        sy = self.system
        a, b = _col_update(sy, self.a, self.b, s)
        ia, ib = _row_update(sy, self.ia, self.ib, s)
        return GroupElement(sy, a, b, ia, ib)

    def __mul__(self, other):
        if other.system != self.system:
            raise SystemMismatchError("elements from different systems")
        r = self.system.rank
        a, b = _matmul(r, self.a, self.b, other.a, other.b)
        ia, ib = _matmul(r, other.ia, other.ib, self.ia, self.ib)
        return GroupElement(self.system, a, b, ia, ib)

    def column_sign(self, s, inverse=False):
        """Sign of the root w(a_s) (or w^-1(a_s))."""
        r = self.system.rank
        a = self.ia if inverse else self.a
        b = self.ib if inverse else self.b
        for i in range(r):
            x = a[i * r + s]
            y = b[i * r + s] if b is not None else 0
            if x or y:
                return _quad_sign(x, y)
        return 0


def _row_update(sy, a, b, s):
    r = sy.rank
    a = list(a)
    base = s * r
    if b is None:
        for j in range(r):
            v = -a[base + j]
            for k, _ in sy.adj[s]:
                v += a[k * r + j]
            a[base + j] = v
        return tuple(a), None
    b = list(b)
    for j in range(r):
        va = -a[base + j]
        vb = -b[base + j]
        for k, root2 in sy.adj[s]:
            if root2:
                va += 2 * b[k * r + j]
                vb += a[k * r + j]
            else:
                va += a[k * r + j]
                vb += b[k * r + j]
        a[base + j] = va
        b[base + j] = vb
    return tuple(a), tuple(b)


def _col_update(sy, a, b, s):
    r = sy.rank
    a = list(a)
    cola = [a[i * r + s] for i in range(r)]
    if b is None:
        for i in range(r):
            a[i * r + s] = -cola[i]
        for j, _ in sy.adj[s]:
            for i in range(r):
                a[i * r + j] += cola[i]
        return tuple(a), None
    b = list(b)
    colb = [b[i * r + s] for i in range(r)]
    for i in range(r):
        a[i * r + s] = -cola[i]
        b[i * r + s] = -colb[i]
    for j, root2 in sy.adj[s]:
        for i in range(r):
            if root2:
                a[i * r + j] += 2 * colb[i]
                b[i * r + j] += cola[i]
            else:
                a[i * r + j] += cola[i]
                b[i * r + j] += colb[i]
    return tuple(a), tuple(b)


def _matmul(r, a1, b1, a2, b2):
    ra = [0] * (r * r)
    rb = None if b1 is None else [0] * (r * r)
    for i in range(r):
        for k in range(r):
            x = a1[i * r + k]
            y = b1[i * r + k] if b1 is not None else 0
            if not (x or y):
                continue
            for j in range(r):
                u = a2[k * r + j]
                if b1 is None:
                    ra[i * r + j] += x * u
                else:
                    v = b2[k * r + j]
                    ra[i * r + j] += x * u + 2 * y * v
                    rb[i * r + j] += x * v + y * u
    return tuple(ra), (tuple(rb) if rb is not None else None)


# words ------------------------------------------------------------------

_TOKEN = re.compile(r"s0|sb\d+|s\d+|t")


def parse_word(system, text):
    """Parse a space separated word such as ``"sb1 s2 s3 t"``.

    Commas are accepted as separators, and the empty string (or ``"1"``)
    is the identity.
    """
    if isinstance(text, (list, tuple)):
        tokens = list(text)
    else:
        tokens = text.replace(",", " ").split()
        if tokens == ["1"]:
            tokens = []
    pos = 0
    for tok in tokens:
        if tok not in system.index:
            raise AlphabetError(
                f"token {tok!r} at position {pos} is not a generator of {system.family} rank {system.rank}",
                position=pos,
                token=tok,
            )
        pos += 1
    return tuple(tokens)


def format_word(word):
    return " ".join(word) if word else "1"


def element_of(system, word):
    """Multiply out a word.  Does not require the word to be reduced."""
    if isinstance(word, str):
        word = parse_word(system, word)
    w = system.identity
    idx = system.index
    for tok in reversed(word):
        try:
            w = w.left_mul(idx[tok])
        except KeyError:
            raise AlphabetError(f"unknown generator {tok!r}", token=tok) from None
    return w


def _check(system, element):
    if element.system != system:
        raise SystemMismatchError(f"element of {element.system!r} used with {system!r}")


def descents(system, element, side="left"):
    """Left or right descent set, as a tuple of tokens in alphabet order."""
    _check(system, element)
    return descent_set(element, side)


def descent_set(element, side="left"):
    sy = element.system
    inv = side == "left"
    return tuple(g for i, g in enumerate(sy.generators) if element.column_sign(i, inverse=inv) < 0)


def canonical_word(system, element):
    """ShortLex-least reduced word, built from the smallest left descent."""
    _check(system, element)
    return shortlex_word(element)


def shortlex_word(element):
    sy = element.system
    cache = sy._canon
    hit = cache.get(element)
    if hit is not None:
        return hit
    out = []
    trail = []
    w = element
    while True:
        hit = cache.get(w)
        if hit is not None:
            break
        for i in range(sy.rank):
            if w.column_sign(i, inverse=True) < 0:
                out.append(i)
                trail.append(w)
                w = w.left_mul(i)
                break
        else:
            hit = ()
            cache[w] = hit
            break
    # fill in the cache for every suffix we walked through
    word = hit
    for i, x in zip(reversed(out), reversed(trail)):
        word = (sy.generators[i],) + word
        cache[x] = word
    return word


def length(system, element):
    _check(system, element)
    return len(shortlex_word(element))


def count_occurrences(word, gen):
    return sum(1 for x in word if x == gen)


def affine_generator(system):
    if system.family in ("Btilde", "Ctilde"):
        return "t"
    if system.family == "Dtilde":
        return f"sb{system.n}"
    return None


def affine_length(system, x):
    """Occurrences of t (affine B, C) or sbN (affine D) in a reduced word.

    ``x`` is a word or an element.  In affine D the count is only
    meaningful for fully commutative elements.
    """
    if isinstance(x, GroupElement):
        _check(system, x)
        word = shortlex_word(x)
    else:
        word = tuple(x)
    gen = affine_generator(system)
    if gen is None:
        return 0
    if system.family == "Dtilde":
        if not is_reduced(system, word) or find_braid(system, word) is not None:
            raise NotFCError(f"{format_word(word)} is not fully commutative")
    return count_occurrences(word, gen)


def is_reduced(system, word):
    """Incremental test: each new letter must not be a right descent."""
    w = system.identity
    idx = system.index
    for tok in word:
        s = idx[tok]
        if w.column_sign(s) < 0:
            return False
        w = w.right_mul(s)
    return True


def phi_multiset(system, word):
    """The reflections h_j = u_j s_j u_j^-1 with u_j the prefix before j."""
    out = []
    u = system.identity
    idx = system.index
    for tok in word:
        s = idx[tok]
        out.append(u.right_mul(s) * u.inverse())
        u = u.right_mul(s)
    return out


def is_reduced_phi(system, word):
    """A word is reduced exactly when its reflections are pairwise distinct."""
    hs = phi_multiset(system, word)
    return len(set(hs)) == len(hs)


def require_reduced(system, word):
    if not is_reduced(system, word):
        raise NotReducedError(f"{format_word(word)} is not reduced")


def enumerate_ball(system, max_length, budget=None):
    """All elements of length <= max_length as (element, canonical word).

    Output is sorted by length and then ShortLex.  Raises BudgetError
    when the number of elements would pass the ceiling.
    """
    return ball(system, max_length, budget)


def _ball_levels(system, max_length, budget=None):
    limit = budget_limit(budget)
    gens = system.generators
    prev = {}
    level = {system.identity: ()}
    yield [(system.identity, ())]
    total = 1
    for _ in range(max_length):
        nxt = {}
        for w, word in level.items():
            for i in range(system.rank):
                x = w.left_mul(i)
                if x in prev:
                    continue
                cand = (i,) + word
                old = nxt.get(x)
                if old is None or cand < old:
                    nxt[x] = cand
        total += len(nxt)
        if total > limit:
            raise BudgetError(f"more than {limit} elements of length <= {max_length}")
        if not nxt:
            return
        prev, level = level, nxt
        yield [(x, tuple(gens[i] for i in word)) for x, word in sorted(nxt.items(), key=lambda kv: kv[1])]


def commutation_class(system, word, budget=None):
    """Every word obtained from ``word`` by swapping commuting neighbours."""
    limit = budget_limit(budget)
    start = tuple(word)
    require_reduced(system, start)
    seen = {start}
    todo = deque([start])
    while todo:
        w = todo.popleft()
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if x != y and system.commute(x, y):
                v = w[:i] + (y, x) + w[i + 2:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > limit:
                        raise BudgetError("commutation class too large")
                    todo.append(v)
    return seen


# heaps ------------------------------------------------------------------

def heap_relations(system, word):
    """Bitmasks ``up[i]`` and ``down[i]`` of the heap order on positions."""
    k = len(word)
    up = [0] * k
    for i in range(k - 1, -1, -1):
        mask = 1 << i
        x = word[i]
        for j in range(i + 1, k):
            if not system.commute(x, word[j]):
                mask |= up[j]
        up[i] = mask
    down = [0] * k
    for i in range(k):
        for j in range(k):
            if (up[j] >> i) & 1:
                down[i] |= 1 << j
    return up, down


def find_braid(system, word):
    """A convex alternating chain s,t,s,... of length m(s,t) >= 3 in the heap.

    Returns the tuple of positions, or None.  The chain may be brought
    together as a factor by commutations alone.
    """
    if len(word) < 3:
        return None
    up, down = heap_relations(system, word)
    letters = sorted(set(word), key=system.index.get)
    for ai, s in enumerate(letters):
        for t in letters[ai + 1:]:
            m = system.m_of(s, t)
            if m < 3:
                continue
            pos = [i for i, x in enumerate(word) if x == s or x == t]
            for start in range(len(pos) - m + 1):
                win = pos[start:start + m]
                if any(word[win[q]] == word[win[q + 1]] for q in range(m - 1)):
                    continue
                mask = 0
                for q in win:
                    mask |= 1 << q
                if up[win[0]] & down[win[-1]] == mask:
                    return tuple(win)
    return None


def bring_braid_together(system, word, chain):
    """Reorder ``word`` by commutations so that ``chain`` becomes a factor.

    Returns (prefix, braid, suffix).
    """
    up, _ = heap_relations(system, word)
    above = up[chain[0]]
    cset = set(chain)
    before = [word[i] for i in range(len(word)) if not (above >> i) & 1]
    after = [word[i] for i in range(len(word)) if (above >> i) & 1 and i not in cset]
    return tuple(before), tuple(word[i] for i in chain), tuple(after)


def is_fully_commutative(system, x, method="heap"):
    """Full commutativity of an element or of a reduced word.

    ``method="heap"`` looks for a convex alternating chain in the heap;
    ``method="class"`` scans every word of the commutation class for a
    factor sts (m=3) or stst (m=4).
    """
    if isinstance(x, GroupElement):
        _check(system, x)
        word = shortlex_word(x)
    else:
        word = tuple(x)
        require_reduced(system, word)
    if method == "heap":
        return find_braid(system, word) is None
    for w in commutation_class(system, word):
        if _has_braid_factor(system, w):
            return False
    return True


def _has_braid_factor(system, w):
    for i in range(len(w) - 2):
        s, t = w[i], w[i + 1]
        if s == t:
            continue
        m = system.m_of(s, t)
        if m < 3 or i + m > len(w):
            continue
        if all(w[i + q] == (s if q % 2 == 0 else t) for q in range(m)):
            return True
    return False


def enumerate_fc(system, max_length, budget=None):
    """Fully commutative elements of length <= max_length, ShortLex order."""
    return [(x, w) for x, w in ball(system, max_length, budget) if find_braid(system, w) is None]


def ball(system, max_length, budget=None):
    """Same as enumerate_ball."""
    out = []
    for lev in _ball_levels(system, max_length, budget):
        for x, w in lev:
            system._canon[x] = w
            out.append((x, w))
    return out


def count_reduced_words(system, word):
    """Number of reduced words of the element, by dynamic programming on descents."""
    sy = system
    memo = {}

    def rec(w):
        hit = memo.get(w)
        if hit is not None:
            return hit
        ds = [i for i in range(sy.rank) if w.column_sign(i, inverse=True) < 0]
        if not ds:
            return 1
        tot = sum(rec(w.left_mul(i)) for i in ds)
        memo[w] = tot
        return tot

    return rec(element_of(system, word))


def check_relations(system):
    """Check s^2 = 1 and (st)^m = 1 on the matrices; returns a list of failures."""
    bad = []
    e = system.identity
    g = system.gen_elements
    for i in range(system.rank):
        if g[i] * g[i] != e:
            bad.append((system.generators[i],))
        for j in range(i + 1, system.rank):
            p = g[i] * g[j]
            x = e
            m = system.m[i][j]
            for k in range(1, m + 1):
                x = x * p
                if x == e and k < m:
                    bad.append((system.generators[i], system.generators[j], "order too small"))
                    break
            if x != e:
                bad.append((system.generators[i], system.generators[j]))
    return bad
