"""The boundary operator, its matrices, and Betti numbers."""

import csv
import io
import json
from dataclasses import dataclass, field
from bisect import bisect_left
from functools import lru_cache

from .algebra import KIND_SHIFT, Generator, _bracket_gen
from .chains import Chain, canonicalize, complex_slice, word_weight
from .linalg import ExactMatrix, rank

__all__ = [
    "boundary", "boundary_factors", "boundary_matrix", "betti", "HomologyReport",
    "HomologyRow", "a1_operator", "boundary_prime", "BasisViolation",
]


class BasisViolation(AssertionError):
    """A boundary image left the enumerated target basis (a weight bug, never user error)."""


def _add_into(out, word, coeff):
    v = out.get(word, 0) + coeff
    if v:
        out[word] = v
    else:
        out.pop(word, None)


def boundary_factors(factors):
    """Boundary of the wedge of ``factors`` taken in the given order, as a dict.

    For positions ``i < j`` (1-based) the term is
    ``(-1)^(i-1 + a_i * sum_{i<s<j} a_s)`` times the word with ``A_i`` removed
    and ``A_j`` replaced by ``[A_i, A_j]``.  Only parities enter the sign.
    """
    factors = tuple(factors)
    m = len(factors)
    out = {}
    for i in range(m):
        a_i = factors[i]
        between = 0
        for j in range(i + 1, m):
            a_j = factors[j]
            sign = -1 if (i + a_i.parity * between) % 2 else 1
            between += a_j.parity
            br = _bracket_gen(a_i, a_j)
            if not br:
                continue
            head = factors[:i] + factors[i + 1:j]
            tail = factors[j + 1:]
            for g, c in br:
                word, s = canonicalize(head + (g,) + tail)
                if s:
                    _add_into(out, word, sign * s * c)
    return out


def _insert(rest, g, origin):
    """Insert ``g`` into the sorted tuple ``rest``, starting from slot ``origin``.

    Returns ``(word, sign)`` with the Koszul sign of the moves, sign 0 for a
    repeated even factor.
    """
    pos = bisect_left(rest, g)
    if pos < len(rest) and rest[pos] == g and not (g >> KIND_SHIFT) & 1:
        return None, 0
    if pos < origin:
        crossed = rest[pos:origin]
    else:
        crossed = rest[origin:pos]
    odd = sum((x >> KIND_SHIFT) & 1 for x in crossed) if (g >> KIND_SHIFT) & 1 else 0
    sign = -1 if (len(crossed) - odd) % 2 else 1
    return rest[:pos] + (g,) + rest[pos:], sign


@lru_cache(maxsize=200_000)
def _boundary_word(word):
    """Boundary of a canonical word as a tuple of (word, coeff) pairs.

    Same terms as :func:`boundary_factors`; the bracket is put back in place
    by bisection (``_insert`` inlined) instead of a full re-sort.
    """
    m = len(word)
    par = [(g >> KIND_SHIFT) & 1 for g in word]
    out = {}
    get = out.get
    for i in range(m):
        a_i = word[i]
        p_i = par[i]
        head = word[:i]
        between = 0
        for j in range(i + 1, m):
            sign = -1 if (i + p_i * between) & 1 else 1
            between += par[j]
            br = _bracket_gen(a_i, word[j])
            if not br:
                continue
            rest = head + word[i + 1:j] + word[j + 1:]
            origin = j - 1
            for g, c in br:
                pos = bisect_left(rest, g)
                odd_g = (g >> KIND_SHIFT) & 1
                if pos < m - 2 and rest[pos] == g and not odd_g:
                    continue
                crossed = rest[pos:origin] if pos < origin else rest[origin:pos]
                moves = len(crossed)
                if odd_g:
                    moves -= sum((x >> KIND_SHIFT) & 1 for x in crossed)
                w2 = rest[:pos] + (g,) + rest[pos:]
                v = get(w2, 0) + (-sign if moves & 1 else sign) * c
                if v:
                    out[w2] = v
                else:
                    del out[w2]
    return tuple(out.items())


def boundary(c):
    """Linear boundary of a Chain; the degree drops by one."""
    out = {}
    for word, coeff in c.terms.items():
        for w2, c2 in _boundary_word(word):
            _add_into(out, w2, coeff * c2)
    return Chain._raw(out)


def boundary_columns(slc, m):
    """Columns of the boundary ``C_m -> C_{m-1}`` as tuples of ``(row, coeff)``.

    Images are computed without caching so that large slices stay in memory.
    """
    dst = slc.basis(m - 1).index
    cols = []
    for word in slc.basis(m).words:
        col = []
        for w2, c2 in _boundary_word.__wrapped__(word):
            row = dst.get(w2)
            if row is None:
                raise BasisViolation(
                    f"boundary of {word} contains {w2} outside the basis of C_{m - 1}")
            col.append((row, c2))
        cols.append(tuple(col))
    return cols


def boundary_matrix(slc, m, columns=None):
    """Matrix of the boundary from ``C_m`` to ``C_{m-1}``; column k is the image of word k."""
    src = slc.basis(m)
    dst = slc.basis(m - 1)
    if columns is None:
        columns = boundary_columns(slc, m)
    entries = {(row, col): c for col, image in enumerate(columns) for row, c in image}
    return ExactMatrix(len(dst), len(src), entries, dst, src)


def d_squared_failures(slc, limit=1):
    """Basis words whose boundary squared is nonzero, as ``(word, residue)`` pairs.

    Works one degree at a time: only the previous degree's columns are kept.
    """
    rng = slc.m_range
    if rng is None:
        return []
    lo, hi = rng
    failures = []
    prev = boundary_columns(slc, lo)
    for m in range(lo + 1, hi + 1):
        cur = boundary_columns(slc, m)
        for k, image in enumerate(cur):
            acc = {}
            for row, c in image:
                for row2, c2 in prev[row]:
                    acc[row2] = acc.get(row2, 0) + c * c2
            residue = {r: v for r, v in acc.items() if v}
            if residue:
                dst = slc.basis(m - 2).words
                failures.append((slc.basis(m).words[k],
                                 Chain._raw({dst[r]: v for r, v in residue.items()})))
                if len(failures) >= limit:
                    return failures
        prev = cur
    return failures


@dataclass
class HomologyRow:
    m: int
    dim: int
    rank: int
    betti: int


@dataclass
class HomologyReport:
    n: int
    w: int
    h: int
    rows: list = field(default_factory=list)

    def column(self, name):
        return tuple(getattr(r, name) for r in self.rows)

    @property
    def dims(self):
        return self.column("dim")

    @property
    def ranks(self):
        return self.column("rank")

    @property
    def bettis(self):
        return self.column("betti")

    def euler_characteristic(self):
        return sum((-1) ** r.m * r.dim for r in self.rows)

    def to_dict(self):
        return {"n": self.n, "w": self.w, "h": self.h,
                "rows": [{"m": r.m, "dim": r.dim, "rank": r.rank, "betti": r.betti}
                         for r in self.rows]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["n"], d["w"], d["h"], [HomologyRow(**r) for r in d["rows"]])

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_csv(self, header=True, prefix=False):
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        if header:
            out.writerow((["n", "w", "h"] if prefix else []) + ["m", "dim", "rank", "betti"])
        for r in self.rows:
            out.writerow(([self.n, self.w, self.h] if prefix else []) + [r.m, r.dim, r.rank, r.betti])
        return buf.getvalue()


def betti(slc):
    """Dimensions, boundary ranks and Betti numbers of a ComplexSlice."""
    report = HomologyReport(slc.n, slc.w, slc.h)
    rng = slc.m_range
    if rng is None:
        return report
    lo, hi = rng
    ranks = {m: rank(boundary_matrix(slc, m)) for m in range(lo, hi + 1)}
    ranks[hi + 1] = 0
    for m in range(lo, hi + 1):
        dim = len(slc.basis(m))
        report.rows.append(HomologyRow(m, dim, ranks[m], dim - ranks[m] - ranks[m + 1]))
    return report


def homology(n, w, h):
    return betti(complex_slice(n, w, h))


# -- the II shift and its correction term ------------------------------------------

def _constant_one(n=1):
    return Generator(0, (), (0,) * n)


def a1_operator(bs):
    """(-1)^b sum_j B_1 ^ .. B_j^ .. ^ B_b ^ [1, B_j] for functions B_1..B_b (0 if b = 0)."""
    bs = tuple(bs)
    if any(g.kind != 1 for g in bs):
        raise ValueError("the correction term is defined on functions only")
    b = len(bs)
    if not b:
        return Chain()
    one = _constant_one(bs[0].n)
    out = {}
    for j in range(b):
        rest = bs[:j] + bs[j + 1:]
        for g, c in _bracket_gen(one, bs[j]):
            word, s = canonicalize(rest + (g,))
            if s:
                _add_into(out, word, (-1) ** b * s * c)
    return Chain._raw(out)


def _split_abc(word):
    a = tuple(g for g in word if g.kind == 0)
    b = tuple(g for g in word if g.kind == 1)
    c = tuple(g for g in word if g.kind == 2)
    if a + b + c != tuple(word):
        raise ValueError(f"{word} is not an n = 1 canonical word")
    return a, b, c


def correction_term(word):
    """As ^ A1(Bs) ^ Cs for a canonical n = 1 word As ^ Bs ^ Cs."""
    a, b, c = _split_abc(word)
    out = {}
    for w1, c1 in a1_operator(b).terms.items():
        w2, s = canonicalize(a + w1 + c)
        if s:
            _add_into(out, w2, s * c1)
    return Chain._raw(out)


def one_wedge(chain, copies=1, n=1):
    """Left wedge by ``copies`` copies of the constant function 1."""
    ones = (_constant_one(n),) * copies
    out = {}
    for word, coeff in chain.terms.items():
        w2, s = canonicalize(ones + word)
        if s:
            _add_into(out, w2, s * coeff)
    return Chain._raw(out)


def boundary_prime(c):
    """``1 ^ d(x) + As ^ A1(Bs) ^ Cs`` on weight (2, -2) chains; lands in weight (3, -3)."""
    out = Chain()
    for word, coeff in c.terms.items():
        if word_weight(word) != (2, -2):
            raise ValueError(f"{word} does not have weight (2, -2)")
        single = Chain({word: 1})
        out = out + coeff * (one_wedge(boundary(single)) + correction_term(word))
    return out

