"""Brute-force cross-checks.

Nothing here calls the engine's enumeration, sorting or elimination code.
Generators are plain ``(direction, dx, exps)`` triples.
"""

from fractions import Fraction
from itertools import combinations, product


def naive_rank(grid):
    """Textbook Gauss-Jordan rank of a dense list-of-lists over Q."""
    a = [[Fraction(x) for x in row] for row in grid]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        support = [k for k, y in enumerate(a[r]) if y != 0]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                row = a[i]
                for k in support:
                    row[k] -= f * a[r][k]
        r += 1
        if r == nrows:
            break
    return r


def kind_of(gen):
    direction, dx, _ = gen
    return 0 if direction else len(dx) + 1


def degree_of(gen):
    return sum(gen[2])


def order_key(gen):
    """Kind, then degree, then direction or form indices, then exponents."""
    direction, dx, exps = gen
    return kind_of(gen), sum(exps), ((direction,) if direction else tuple(dx)), tuple(exps)


def all_generators(n, cap):
    gens = []
    for exps in product(range(cap + 1), repeat=n):
        if sum(exps) > cap:
            continue
        for p in range(1, n + 1):
            gens.append((p, (), exps))
        for q in range(n + 1):
            for dx in combinations(range(1, n + 1), q):
                gens.append((0, dx, exps))
    return gens


def naive_enumerate(n, w, h, m, cap):
    """All m-factor words of double weight (w, h), as frozen multisets of triples.

    Every multiset of generators of degree <= cap is generated, then
    filtered.  Partial multisets are abandoned as soon as a weight sum
    overshoots or an even generator repeats, since no extension of them can
    pass the filter.
    """
    if cap < m + h:
        raise ValueError("cap must be at least m + h")
    gens = all_generators(n, cap)
    target_deg = m + h
    found = set()
    chosen = []

    def rec(start, kinds, degs):
        if len(chosen) == m:
            if kinds == w and degs == target_deg and not _repeated_even(chosen):
                found.add(frozenset(_count(chosen).items()))
            return
        for i in range(start, len(gens)):
            g = gens[i]
            k, d = kind_of(g), degree_of(g)
            if kinds + k > w or degs + d > target_deg:
                continue
            if k % 2 == 0 and chosen and chosen[-1] == g:
                continue
            chosen.append(g)
            rec(i, kinds + k, degs + d)
            chosen.pop()

    if m >= 1 and target_deg >= 0:
        rec(0, 0, 0)
    return found


def _count(seq):
    out = {}
    for g in seq:
        out[g] = out.get(g, 0) + 1
    return out


def _repeated_even(seq):
    return any(c > 1 and kind_of(g) % 2 == 0 for g, c in _count(seq).items())


def as_multiset(word):
    """Engine word -> the oracle's frozen multiset of triples."""
    return frozenset(_count([(g.direction, tuple(g.dx), tuple(g.exps)) for g in word]).items())


def koszul_sign(perm, parities):
    """Sign of listing factors in the order ``perm`` (new position -> old index).

    Each pair of factors whose relative order is reversed contributes
    ``-(-1)^(p q)``.
    """
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation")
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                if not (parities[perm[a]] and parities[perm[b]]):
                    sign = -sign
    return sign


def sorting_permutation(triples):
    """Stable permutation putting the triples in canonical order."""
    return sorted(range(len(triples)), key=lambda i: order_key(triples[i]))
