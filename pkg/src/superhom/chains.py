"""Wedge words, chains and the doubly weighted chain space bases.

A wedge word is a tuple of Generators in canonical (non-decreasing) order.
Swapping adjacent factors of parities ``p, q`` costs ``-(-1)^(p q)``: even
symbols anticommute, odd symbols commute.  A word with a repeated even factor
is zero.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .algebra import KIND_SHIFT, Generator, LinearCombination, generators_upto, make_generator

__all__ = [
    "Chain", "ChainBasis", "ComplexSlice", "canonicalize", "chain_from_factors",
    "wedge", "enumerate_basis", "m_range", "complex_slice", "word_weight",
    "closed_form_basis", "ii_multiply", "W2_BASES",
]


def canonicalize(factors):
    """Sort ``factors`` into canonical order.

    Returns ``(word, sign)``; ``sign`` is 0 and ``word`` empty when two equal
    even factors occur.
    """
    word = list(factors)
    sign = 1
    # insertion sort, one adjacent transposition at a time
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j] < word[j - 1]:
            if not ((word[j] & word[j - 1]) >> KIND_SHIFT) & 1:
                sign = -sign
            word[j], word[j - 1] = word[j - 1], word[j]
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b and not (a >> KIND_SHIFT) & 1:
            return (), 0
    return tuple(word), sign


def _word_order(word):
    return word


class Chain(LinearCombination):
    """Rational combination of canonical wedge words."""

    __slots__ = ()

    @staticmethod
    def _order(word):
        return _word_order(word)

    @property
    def degree(self):
        degrees = {len(w) for w in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous chain with degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def __str__(self):
        from .notation import format_chain
        return format_chain(self)


def chain_from_factors(factors, coeff=1):
    word, sign = canonicalize(factors)
    if not sign:
        return Chain()
    return Chain({word: sign * coeff})


def wedge(a, b):
    """Bilinear wedge product of two chains (or generators)."""
    if isinstance(a, Generator):
        a = Chain({(a,): 1})
    if isinstance(b, Generator):
        b = Chain({(b,): 1})
    out = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            word, sign = canonicalize(wa + wb)
            if sign:
                v = out.get(word, 0) + sign * ca * cb
                if v:
                    out[word] = v
                else:
                    out.pop(word, None)
    return Chain._raw(out)


def word_weight(word):
    """Double weight ``(w, h)`` of a word: sum of kinds, ``-m`` plus sum of degrees."""
    return sum(g.kind for g in word), sum(g.degree for g in word) - len(word)


@dataclass
class ChainBasis:
    words: list
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.words = sorted(self.words, key=_word_order)
        self.index = {w: i for i, w in enumerate(self.words)}
        if len(self.index) != len(self.words):
            raise ValueError("duplicate words in basis")

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word):
        return word in self.index


def _k(i, j):
    """The n = 1 generator spanning K[i][j]."""
    if i == 0:
        return make_generator(1, (), (j,))
    if i == 1:
        return make_generator(0, (), (j,))
    return make_generator(0, (1,), (j,))


# -- enumeration ------------------------------------------------------------------

def _distinct_parts(count, total, low=0):
    """Strictly increasing ``count``-tuples of ints >= low summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    # smallest possible sum with first part v is count*v + count*(count-1)/2
    v = low
    while count * v + count * (count - 1) // 2 <= total:
        for rest in _distinct_parts(count - 1, total - v, v + 1):
            yield (v,) + rest
        v += 1


def _multiset_parts(count, total, low=0):
    """Non-decreasing ``count``-tuples of ints >= low summing to ``total``."""
    if count == 0:
        if total == 0:
            yield ()
        return
    v = low
    while count * v <= total:
        for rest in _multiset_parts(count - 1, total - v, v):
            yield (v,) + rest
        v += 1


def _enumerate_line(w, h, m):
    """n = 1: words d/dx-part ^ function-part ^ dx-part with a + b + c = m, b + 2c = w."""
    total = m + h
    if total < 0:
        return []
    words = []
    for c in range(w // 2 + 1):
        b = w - 2 * c
        a = m - b - c
        if a < 0:
            continue
        for da in range(total + 1):
            for av in _distinct_parts(a, da):
                for db in range(total - da + 1):
                    dc = total - da - db
                    for bv in _multiset_parts(b, db):
                        for cv in _distinct_parts(c, dc):
                            words.append(
                                tuple(_k(0, j) for j in av)
                                + tuple(_k(1, j) for j in bv)
                                + tuple(_k(2, j) for j in cv))
    return words


def _picks(gens, count, budget, distinct, start=0):
    """Non-decreasing ``count``-tuples from ``gens`` (sorted by degree) with degree sum <= budget."""
    if count == 0:
        yield (), 0
        return
    for i in range(start, len(gens)):
        g = gens[i]
        # every later pick has degree >= g.degree
        if count * g.degree > budget:
            break
        for rest, d in _picks(gens, count - 1, budget - g.degree, distinct, i + 1 if distinct else i):
            yield (g,) + rest, d + g.degree


def _enumerate_general(n, w, h, m):
    """Words as one block per kind, kinds increasing (the canonical order is kind first)."""
    total = m + h
    if total < 0:
        return []
    top = n + 1
    gens = {k: generators_upto(n, total, kinds=[k]) for k in range(top + 1)}
    words = []

    def blocks(k, prefix, left_m, left_w, left_d):
        if k > top:
            if left_m == 0 and left_w == 0 and left_d == 0:
                words.append(prefix)
            return
        for c in range(left_m + 1):
            rem = left_m - c
            rest_w = left_w - k * c
            if rest_w < 0:
                break
            # the remaining factors all have kinds in k+1..top
            if not (k + 1) * rem <= rest_w <= top * rem:
                continue
            for block, d in _picks(gens[k], c, left_d, distinct=not k & 1):
                blocks(k + 1, prefix + block, rem, rest_w, left_d - d)

    blocks(0, (), m, w, total)
    return words


def enumerate_basis(n, w, h, m, method=None):
    """Canonical words with ``m`` factors and double weight ``(w, h)``."""
    if n < 1 or w < 0:
        raise ValueError("need n >= 1 and w >= 0")
    if m < 1:
        return ChainBasis([])
    if method is None:
        method = "line" if n == 1 else "general"
    if method == "line":
        if n != 1:
            raise ValueError("the (a, b, c) enumeration is for n = 1")
        return ChainBasis(_enumerate_line(w, h, m))
    return ChainBasis(_enumerate_general(n, w, h, m))


def _field_degrees(n):
    """Degrees of the vector field generators in increasing order."""
    deg = 0
    while True:
        for _ in range(n * comb(deg + n - 1, n - 1)):
            yield deg
        deg += 1


def _max_fields(n, w, h):
    """Largest feasible number of vector field factors, or -1."""
    a_max = -1
    a, least = 0, 0
    for deg in _field_degrees(n):
        if least - a <= w + h:
            a_max = a
        elif deg >= 1:
            # least - a never decreases from here on
            break
        a, least = a + 1, least + deg
    return a_max


@lru_cache(maxsize=256)
def _nonempty_bases(n, w, h):
    a_max = _max_fields(n, w, h)
    if a_max < 0:
        return ()
    out = []
    for m in range(max(1, -h), a_max + w + 1):
        basis = enumerate_basis(n, w, h, m)
        if len(basis):
            out.append((m, basis))
    return tuple(out)


def m_range(n, w, h):
    """``(mL, mH)``, the extreme degrees with a nonempty basis, or None for an empty complex.

    Vector fields are the only factors that can occur more than ``w`` times
    and they must be distinct, so their count ``a`` obeys
    ``least_degree_sum(a) <= a + w + h``; this bounds ``m <= a + w``.
    """
    found = _nonempty_bases(n, w, h)
    if not found:
        return None
    return found[0][0], found[-1][0]


@dataclass
class ComplexSlice:
    n: int
    w: int
    h: int
    bases: dict

    @property
    def m_range(self):
        if not self.bases:
            return None
        return min(self.bases), max(self.bases)

    def basis(self, m):
        return self.bases.get(m) or ChainBasis([])

    def dims(self):
        return {m: len(b) for m, b in sorted(self.bases.items())}


def complex_slice(n, w, h):
    found = dict(_nonempty_bases(n, w, h))
    bases = {}
    if found:
        lo, hi = min(found), max(found)
        bases = {m: found.get(m) or ChainBasis([]) for m in range(lo, hi + 1)}
    return ComplexSlice(n, w, h, bases)


# -- the weight (2, -2) complex and its shifts --------------------------------------



# C^{2+k}_{2,-2} as (kind, degree) factor lists, k = 0..3
W2_BASES = {
    0: [[(0, 0), (2, 0)], [(1, 0), (1, 0)]],
    1: [[(0, 0), (0, 1), (2, 0)], [(0, 0), (1, 0), (1, 1)], [(0, 1), (1, 0), (1, 0)]],
    2: [[(0, 0), (0, 1), (1, 0), (1, 1)], [(0, 0), (0, 2), (1, 0), (1, 0)]],
    3: [[(0, 0), (0, 1), (0, 2), (1, 0), (1, 0)]],
}


def closed_form_basis(w, k):
    """Basis of ``C^{w+k}_{w,-w}`` built as ``1^(w-2) ^ C^{2+k}_{2,-2}`` (n = 1, w > 2)."""
    if w <= 2:
        raise ValueError("closed forms need w > 2")
    if k not in W2_BASES:
        raise ValueError(f"k must be 0..3, got {k}")
    one = _k(1, 0)
    words = []
    for spec in W2_BASES[k]:
        word, sign = canonicalize([one] * (w - 2) + [_k(i, j) for i, j in spec])
        assert sign, spec
        words.append(word)
    return ChainBasis(words)


def ii_multiply(w, c):
    """Prepend ``w - 2`` copies of the constant function 1 to a weight (2, -2) chain."""
    if w <= 2:
        raise ValueError("II needs w > 2")
    ones = (Generator(0, (), (0,)),) * (w - 2)
    out = Chain()
    for word, coeff in c.terms.items():
        if word_weight(word) != (2, -2):
            raise ValueError(f"word {word} does not have weight (2, -2)")
        out = out + chain_from_factors(ones + word, coeff)
    return out
