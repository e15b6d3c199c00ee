"""Polynomial vector fields and differential forms on R^n as a Lie superalgebra.

A basis symbol is a :class:`Generator`: either ``x^P d/dx_p`` (a vector field)
or ``x^P dx_A`` (a form, ``A`` a strictly increasing index tuple).  Its kind
index is 0 for vector fields and ``q + 1`` for a q-form; the parity is the
kind mod 2.  Generators of kind ``i`` with polynomial degree ``j`` span the
space written ``K[i][j]`` below; their double weight is ``(i, j - 1)``.

All coefficients are :class:`fractions.Fraction`.
"""

from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Generator", "Element", "LinearCombination",
    "vector_field", "function", "form",
    "exterior_derivative", "interior_product", "lie_derivative",
    "bracket", "euler_field", "double_weight", "original_weights",
    "generators_upto", "permutation_sign", "make_generator", "KIND_SHIFT",
]


def permutation_sign(seq):
    """Return ``(sign, sorted_tuple)`` for a sequence of distinct ints, or ``(0, None)``."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq))
                     if seq[i] > seq[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


# Bit layout of a Generator, least significant first: n, exponents, slot
# entries, degree, kind.  Fields are fixed width and the most significant
# field is compared first, so integer order is the canonical order
# (kind, degree, slot, exps).
N_MAX = 15
_N_BITS = 4
_EXP_BITS = 16
_IDX_BITS = 4
_DEG_BITS = 24
_EXP_SHIFT = _N_BITS
_SLOT_SHIFT = _EXP_SHIFT + _EXP_BITS * N_MAX
_DEG_SHIFT = _SLOT_SHIFT + _IDX_BITS * N_MAX
KIND_SHIFT = _DEG_SHIFT + _DEG_BITS

_FIELDS = {}


class Generator(int):
    """One basis symbol of the superalgebra.

    Built from ``direction`` (coordinate index ``1..n`` of a vector field, 0
    for a form), ``dx`` (form indices, empty for vector fields and functions)
    and ``exps`` (exponent vector of the monomial coefficient).

    The value is an integer packing the sort key ``(kind, degree, slot, exps)``
    with ``slot = (direction,)`` or ``dx``; hashing and the canonical order
    are plain integer operations.  ``g >> KIND_SHIFT`` is the kind.
    """

    __slots__ = ()

    def __new__(cls, direction, dx, exps):
        dx, exps = tuple(dx), tuple(exps)
        n = len(exps)
        if not 1 <= n <= N_MAX:
            raise ValueError(f"ambient dimension must be in 1..{N_MAX}")
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        if any(e >= 1 << _EXP_BITS for e in exps):
            raise ValueError(f"exponent too large in {exps}")
        if direction:
            if not 1 <= direction <= n or dx:
                raise ValueError(f"bad vector field direction {direction} for n={n}")
            kind, slot = 0, (direction,)
        else:
            if any(not 1 <= k <= n for k in dx) or any(a >= b for a, b in zip(dx, dx[1:])):
                raise ValueError(f"form indices {dx} must increase strictly within 1..{n}")
            kind, slot = len(dx) + 1, dx
        degree = sum(exps)
        code = (kind << KIND_SHIFT) | (degree << _DEG_SHIFT) | n
        for i, k in enumerate(slot):
            code |= k << (_SLOT_SHIFT + _IDX_BITS * (N_MAX - 1 - i))
        for i, e in enumerate(exps):
            code |= e << (_EXP_SHIFT + _EXP_BITS * (N_MAX - 1 - i))
        self = int.__new__(cls, code)
        _FIELDS.setdefault(code, (kind, degree, slot, exps))
        return self

    def __getnewargs__(self):
        return self.direction, self.dx, self.exps

    def __repr__(self):
        return f"Generator(direction={self.direction}, dx={self.dx}, exps={self.exps})"

    def __str__(self):
        from .notation import format_generator
        return format_generator(self)

    def __format__(self, spec):
        return format(str(self), spec)

    @property
    def key(self):
        return _FIELDS[self]

    @property
    def kind(self):
        return self >> KIND_SHIFT

    @property
    def degree(self):
        return _FIELDS[self][1]

    @property
    def parity(self):
        return (self >> KIND_SHIFT) & 1

    @property
    def direction(self):
        f = _FIELDS[self]
        return 0 if f[0] else f[2][0]

    @property
    def dx(self):
        f = _FIELDS[self]
        return f[2] if f[0] else ()

    @property
    def exps(self):
        return _FIELDS[self][3]

    @property
    def n(self):
        return len(_FIELDS[self][3])

    @property
    def is_field(self):
        return self.kind == 0

    @property
    def form_degree(self):
        k = self.kind
        return k - 1 if k else 0


@lru_cache(maxsize=None)
def make_generator(direction, dx, exps):
    """Interned Generator constructor."""
    return Generator(direction, dx, exps)


def vector_field(direction, exps):
    if isinstance(exps, int):
        exps = (exps,)
    return make_generator(direction, (), tuple(exps))


def function(exps):
    if isinstance(exps, int):
        exps = (exps,)
    return make_generator(0, (), tuple(exps))


def form(indices, exps):
    if isinstance(exps, int):
        exps = (exps,)
    return make_generator(0, tuple(indices), tuple(exps))


def double_weight(g):
    """(redefined primary weight, secondary weight, parity) of a generator."""
    return g.kind, g.degree - 1, g.parity


def original_weights(g):
    """Weights in the original sign convention, where forms carry ``-kind``."""
    return -g.kind, g.degree - 1


class LinearCombination:
    """Finite rational combination of hashable basis keys; zero terms are pruned."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in (terms.items() if isinstance(terms, dict) else terms):
                c = clean.get(k, 0) + Fraction(c)
                if c:
                    clean[k] = c
                else:
                    clean.pop(k, None)
        self.terms = clean

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: self._order(kv[0])))

    @staticmethod
    def _order(key):
        return key

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return self._raw(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._raw({k: -c for k, c in self.terms.items()})

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return self._raw({})
        return self._raw({k: c * scalar for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __getitem__(self, key):
        return self.terms.get(key, Fraction(0))

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class Element(LinearCombination):
    """A vector of the superalgebra: rational combination of Generators."""

    __slots__ = ()

    def __str__(self):
        from .notation import format_element
        return format_element(self)


def _as_element(x):
    if isinstance(x, Generator):
        return Element({x: 1})
    return x


# -- polynomial helpers -----------------------------------------------------

def _shift(exps, k, delta):
    out = list(exps)
    out[k - 1] += delta
    return tuple(out)


def _add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _check_n(a, b):
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: n={a.n} vs n={b.n}")


# -- generator level operations ---------------------------------------------

def _d_gen(g):
    """d(x^P dx_A) as a dict."""
    out = {}
    for k in range(1, g.n + 1):
        pk = g.exps[k - 1]
        if not pk:
            continue
        sign, idx = permutation_sign((k,) + g.dx)
        if not sign:
            continue
        h = make_generator(0, idx, _shift(g.exps, k, -1))
        out[h] = out.get(h, 0) + sign * pk
    return out


def _interior_gen(x, a):
    if a.direction or not x.direction:
        raise TypeError("interior product needs a vector field and a form")
    if x.direction not in a.dx:
        return {}
    pos = a.dx.index(x.direction)
    rest = a.dx[:pos] + a.dx[pos + 1:]
    return {make_generator(0, rest, _add(x.exps, a.exps)): -1 if pos % 2 else 1}


def _wedge_forms(a, b):
    sign, idx = permutation_sign(a.dx + b.dx)
    if not sign:
        return None
    return sign, make_generator(0, idx, _add(a.exps, b.exps))


def _accumulate(out, items, scale=1):
    for g, c in items:
        v = out.get(g, 0) + scale * c
        if v:
            out[g] = v
        else:
            out.pop(g, None)


@lru_cache(maxsize=None)
def _bracket_gen(a, b):
    """Super bracket of two generators, returned as a tuple of (Generator, coeff)."""
    _check_n(a, b)
    out = {}
    if a.direction and b.direction:
        # [f d_p, g d_q] = f d_p(g) d_q - g d_q(f) d_p
        p, q = a.direction, b.direction
        if b.exps[p - 1]:
            _accumulate(out, [(make_generator(q, (), _shift(_add(a.exps, b.exps), p, -1)),
                               b.exps[p - 1])])
        if a.exps[q - 1]:
            _accumulate(out, [(make_generator(p, (), _shift(_add(a.exps, b.exps), q, -1)),
                               -a.exps[q - 1])])
    elif a.direction:
        out = _lie_gen(a, b)
    elif b.direction:
        out = {g: -c for g, c in _lie_gen(b, a).items()}
    else:
        w = _wedge_forms(a, b)
        if w is not None:
            sign, g = w
            sign = -sign if a.form_degree % 2 else sign
            _accumulate(out, [(h, sign * c) for h, c in _d_gen(g).items()])
    return tuple(sorted(out.items()))


def _lie_gen(x, a):
    """Lie derivative of the form ``a`` along the vector field ``x`` (direct formula)."""
    p = x.direction
    out = {}
    # x(g) dx_A
    if a.exps[p - 1]:
        _accumulate(out, [(make_generator(0, a.dx, _shift(_add(x.exps, a.exps), p, -1)),
                           a.exps[p - 1])])
    # g * (dx_p replaced by d f)
    if p in a.dx:
        pos = a.dx.index(p)
        for k in range(1, x.n + 1):
            fk = x.exps[k - 1]
            if not fk:
                continue
            sign, idx = permutation_sign(a.dx[:pos] + (k,) + a.dx[pos + 1:])
            if sign:
                _accumulate(out, [(make_generator(0, idx, _shift(_add(x.exps, a.exps), k, -1)),
                                   sign * fk)])
    return out


# -- element level operations -------------------------------------------------

def _bilinear(a, b, fn):
    a, b = _as_element(a), _as_element(b)
    out = {}
    for ga, ca in a.terms.items():
        for gb, cb in b.terms.items():
            res = fn(ga, gb)
            if isinstance(res, dict):
                res = res.items()
            _accumulate(out, res, ca * cb)
    return Element._raw(out)


def exterior_derivative(e):
    """d on an Element made of forms."""
    e = _as_element(e)
    out = {}
    for g, c in e.terms.items():
        if g.direction:
            raise TypeError(f"exterior derivative of a vector field {g}")
        _accumulate(out, _d_gen(g).items(), c)
    return Element._raw(out)


def interior_product(x, e):
    """Contraction i_X e of forms by vector fields, bilinear."""
    return _bilinear(x, e, _interior_gen)


def _require(e, fields):
    for g in _as_element(e).terms:
        if bool(g.direction) != fields:
            want = "vector fields" if fields else "forms"
            raise TypeError(f"expected {want}, got {g}")


def lie_derivative(x, e):
    """L_X e computed through Cartan's formula i_X d e + d i_X e."""
    _require(x, True)
    _require(e, False)
    return interior_product(x, exterior_derivative(e)) + \
        exterior_derivative(interior_product(x, e))


def bracket(a, b):
    """The super bracket, extended bilinearly over generators.

    vector field with vector field is the Lie bracket, a vector field acts on
    a form by Lie derivative, and ``[alpha, beta] = (-1)^deg(alpha) d(alpha ^ beta)``.
    The remaining order ``[alpha, X]`` is ``-[X, alpha]`` (super antisymmetry,
    vector fields being even).
    """
    return _bilinear(a, b, _bracket_gen)


def euler_field(n):
    if n < 1:
        raise ValueError("n must be at least 1")
    return Element({make_generator(k, (), tuple(int(i == k) for i in range(1, n + 1))): 1
                    for k in range(1, n + 1)})


def _monomials(n, deg):
    if n == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _monomials(n - 1, deg - first):
            yield (first,) + rest


def generators_upto(n, max_degree, kinds=None):
    """All generators for dimension ``n`` with degree <= max_degree, in canonical order."""
    from itertools import combinations
    out = []
    for deg in range(max_degree + 1):
        for exps in _monomials(n, deg):
            for p in range(1, n + 1):
                out.append(make_generator(p, (), exps))
            for q in range(n + 1):
                for idx in combinations(range(1, n + 1), q):
                    out.append(make_generator(0, idx, exps))
    if kinds is not None:
        out = [g for g in out if g.kind in kinds]
    return sorted(out)
