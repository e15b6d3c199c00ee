"""Sparse exact matrices over Q and fraction-free rank."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm


@dataclass
class ExactMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)   # (row, col) -> Fraction
    row_basis: object = None
    col_basis: object = None

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v = Fraction(v)
            if v:
                clean[r, c] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, grid):
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(grid)
                                for c, v in enumerate(row) if v})

    def to_dense(self):
        grid = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            grid[r][c] = v
        return grid

    @property
    def shape(self):
        return self.rows, self.cols

    def columns(self):
        """Columns as ``{row: value}`` dicts, in column order."""
        cols = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, u in by_row.get(k, ()):
                out[r, c] = out.get((r, c), 0) + v * u
        return ExactMatrix(self.rows, other.cols, out)


def _primitive(vec):
    g = 0
    for x in vec.values():
        g = gcd(g, x)
        if g == 1:
            return vec
    if g > 1:
        return {k: x // g for k, x in vec.items()}
    return vec


def _integer_column(col):
    scale = lcm(*(v.denominator for v in col.values()))
    return _primitive({r: int(v * scale) for r, v in col.items()})


def rank(mat):
    """Exact rank over Q by sparse fraction-free elimination.

    Columns are scaled to primitive integer vectors and reduced one at a time
    against the pivots found so far; a pivot is keyed by its first nonzero row.
    Each step is ``v <- b v - a p`` followed by division by the content, so
    all arithmetic stays in the integers.
    """
    pivots = {}
    for col in mat.columns():
        if not col:
            continue
        v = _integer_column(col)
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = v
                break
            a, b = v[lead], p[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: b * x for k, x in v.items()}
            for k, x in p.items():
                y = new.get(k, 0) - a * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            v = _primitive(new)
    return len(pivots)


def bareiss_rank(mat):
    """Dense Bareiss elimination; first nonzero pivot scanning columns left to right."""
    rows = {}
    for (r, c), v in mat.entries.items():
        rows.setdefault(r, {})[c] = v
    a = []
    for r in sorted(rows):
        scale = lcm(*(v.denominator for v in rows[r].values()))
        line = [0] * mat.cols
        for c, v in rows[r].items():
            line[c] = int(v * scale)
        a.append(line)
    nrows, ncols = len(a), mat.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                # exact by Sylvester's identity
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r
