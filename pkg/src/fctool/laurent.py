"""Laurent polynomials in q with integer coefficients, and exact rank.

``P`` stands for p = q^-1.  Polynomials are immutable and hashable.
"""

from __future__ import annotations

import json
from fractions import Fraction


class LaurentPoly:
    __slots__ = ("c", "_h")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self.c = {int(e): int(v) for e, v in dict(coeffs).items() if v}
        self._h = None

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _lp(other)
        c = dict(self.c)
        for e, v in other.c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        return self + (-_lp(other))

    def __rsub__(self, other):
        return _lp(other) - self

    def __mul__(self, other):
        other = _lp(other)
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self.c.items()
            if v not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({-e * (-k): v ** (-k)})
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by q^k."""
        return LaurentPoly({e + k: v for e, v in self.c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.c.items()))
        return self._h

    def __bool__(self):
        return bool(self.c)

    # inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.c

    def degree(self):
        return max(self.c) if self.c else None

    def low_degree(self):
        return min(self.c) if self.c else None

    def is_monomial(self):
        return len(self.c) == 1

    def is_unit(self):
        """A signed power of q, the units of Z[q, q^-1]."""
        return len(self.c) == 1 and next(iter(self.c.values())) in (1, -1)

    def __call__(self, value):
        """Evaluate at a number (Fractions for negative powers of integers)."""
        tot = 0
        for e, v in self.c.items():
            tot += v * (Fraction(value) ** e if e < 0 else value ** e)
        return tot

    def __repr__(self):
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c, reverse=True):
            v = self.c[e]
            if e == 0:
                mono = str(v)
            else:
                base = "q" if e == 1 else f"q^{e}"
                mono = base if v == 1 else ("-" + base if v == -1 else f"{v}*{base}")
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")

    # serialisation ------------------------------------------------------
    def to_json(self):
        return {"coeffs": {str(e): v for e, v in sorted(self.c.items())}}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({int(e): v for e, v in obj["coeffs"].items()})


def _lp(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    raise TypeError(f"cannot treat {x!r} as a Laurent polynomial")


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
Q = LaurentPoly({1: 1})
P = LaurentPoly({-1: 1})


# polynomial helpers over Z[q] (dicts with non-negative exponents) -------

def _clear(row):
    """Shift a row of Laurent polynomials so every exponent is >= 0."""
    lows = [x.low_degree() for x in row if x]
    if not lows:
        return list(row)
    k = min(lows)
    return [x.shift(-k) for x in row]


def exact_div(a, b):
    """Exact quotient a / b in Z[q, q^-1].  Raises ValueError if inexact."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return ZERO
    # long division on ordinary polynomials, after shifting
    la, lb = a.low_degree(), b.low_degree()
    num = {e - la: v for e, v in a.c.items()}
    den = {e - lb: v for e, v in b.c.items()}
    dd = max(den)
    lead = den[dd]
    quot = {}
    while num:
        top = max(num)
        if top < dd:
            raise ValueError("inexact division")
        v = num[top]
        if v % lead:
            raise ValueError("inexact division")
        f = v // lead
        k = top - dd
        quot[k] = f
        for e, w in den.items():
            x = num.get(e + k, 0) - f * w
            if x:
                num[e + k] = x
            else:
                num.pop(e + k, None)
    return LaurentPoly(quot).shift(la - lb)


def bareiss_rank(matrix):
    """Rank over Q(q) by fraction-free elimination in Z[q]."""
    rows = [_clear(list(r)) for r in matrix if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    m = [list(r) for r in rows]
    rank = 0
    prev = ONE
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            row = m[i]
            for j in range(col + 1, ncols):
                row[j] = exact_div(pr[col] * row[j] - row[col] * pr[j], prev)
            row[col] = ZERO
        prev = pr[col]
        rank += 1
        if rank == len(m):
            break
    return rank


def specialized_rank(matrix, value):
    """Rank over Q of the matrix with q replaced by ``value`` (sparse elimination)."""
    rows = []
    for r in matrix:
        d = {}
        for j, x in enumerate(r):
            if x:
                v = x(value)
                if v:
                    d[j] = Fraction(v)
        if d:
            rows.append(d)
    return sparse_rank(rows)


def sparse_rank(rows):
    """Rank of a list of sparse rows {column: Fraction} over Q."""
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = max(row)
            p = pivots.get(col)
            if p is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            f = row[col]
            for k, v in p.items():
                x = row.get(k, 0) - f * v
                if x:
                    row[k] = x
                else:
                    row.pop(k, None)
    return rank


def rank(matrix, values=(2, 3)):
    """Exact rank over Q(q) of a matrix of Laurent polynomials.

    Specialising q can only lower the rank, so a specialisation that
    already reaches min(rows, cols) settles it.  Otherwise fall back to
    fraction-free elimination over Z[q].
    """
    matrix = [list(r) for r in matrix]
    if not matrix:
        return 0
    bound = min(len(matrix), len(matrix[0]))
    for v in values:
        if specialized_rank(matrix, v) == bound:
            return bound
    return bareiss_rank(matrix)


class LinComb:
    """Finite combination of hashable keys with LaurentPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            v = _lp(v)
            if v:
                self.terms[k] = v

    @classmethod
    def _raw(cls, terms):
        out = cls.__new__(cls)
        out.terms = terms
        return out

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LinComb._raw(out)

    def __neg__(self):
        return LinComb._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _lp(c)
        if not c:
            return LinComb()
        return LinComb._raw({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, key):
        return self.terms.get(key, ZERO)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*{k!r}" for k, v in self.terms.items())


def add_into(acc, key, coeff):
    """acc[key] += coeff on a plain dict, dropping zeros."""
    s = acc.get(key, ZERO) + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)
