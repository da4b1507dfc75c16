"""Exact sparse linear algebra over the rationals.

Rank and kernels are computed by fraction-free Bareiss elimination on
integer-cleared rows; no pivot thresholds are ever involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseRationalMatrix:
    """Rows stored as {column: coefficient} dicts."""

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict() for _ in range(nrows)] if rows is None else rows

    @staticmethod
    def from_columns(columns, ncoords):
        """Matrix whose j-th column is the sparse vector columns[j]."""
        m = SparseRationalMatrix(ncoords, len(columns))
        for j, col in enumerate(columns):
            for i, c in col.items():
                if c:
                    m.rows[i][j] = c
        return m

    def set(self, i, j, c):
        if c:
            self.rows[i][j] = c
        elif j in self.rows[i]:
            del self.rows[i][j]

    def transpose(self):
        out = SparseRationalMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, c in row.items():
                out.rows[j][i] = c
        return out

    def _integer_rows(self):
        """Denominator-cleared, content-reduced copies of the nonzero rows."""
        out = []
        for row in self.rows:
            if not row:
                continue
            denom = 1
            for c in row.values():
                if isinstance(c, Fraction):
                    denom = denom * c.denominator // gcd(denom, c.denominator)
            ints = {j: int(c * denom) for j, c in row.items()}
            g = 0
            for v in ints.values():
                g = gcd(g, v)
            if g > 1:
                ints = {j: v // g for j, v in ints.items()}
            out.append(ints)
        return out

    def rank(self):
        return _bareiss_rank(self._integer_rows())

    def nullity(self):
        return self.ncols - self.rank()

    def kernel_basis(self):
        """Basis of the right kernel as a list of {column: Fraction} vectors."""
        echelon, pivots = _row_echelon(self._integer_rows())
        pivot_cols = set(pivots)
        free_cols = [j for j in range(self.ncols) if j not in pivot_cols]
        basis = []
        for f in free_cols:
            vec = {f: Fraction(1)}
            # back substitution
            for r in range(len(echelon) - 1, -1, -1):
                row = echelon[r]
                p = pivots[r]
                s = Fraction(0)
                for j, c in row.items():
                    if j != p and j in vec:
                        s += c * vec[j]
                if s:
                    vec[p] = -s / row[p]
            basis.append({j: c for j, c in vec.items() if c})
        return basis

    def image_contains(self, vector):
        """True when the column span contains the given {row: coeff} vector."""
        rows = self._integer_rows()
        r0 = _bareiss_rank([dict(r) for r in rows])
        aug = SparseRationalMatrix(self.nrows, self.ncols + 1)
        for i, row in enumerate(self.rows):
            aug.rows[i] = dict(row)
        for i, c in vector.items():
            if c:
                aug.rows[i][self.ncols] = c
        return aug.rank() == r0


def _row_echelon(rows):
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    echelon = []
    pivots = []
    work = [r for r in rows if r]
    while work:
        # choose pivot: the sparsest row with the least leading column
        best = min(work, key=lambda r: (min(r), len(r)))
        work.remove(best)
        p = min(best)
        echelon.append(best)
        pivots.append(p)
        bp = best[p]
        nxt = []
        for row in work:
            c = row.get(p)
            if c is None:
                nxt.append(row)
                continue
            new = {}
            for j, v in row.items():
                if j == p:
                    continue
                w = v * bp - best.get(j, 0) * c
                if w:
                    new[j] = w
            for j, v in best.items():
                if j != p and j not in row:
                    w = -v * c
                    if w:
                        new[j] = w
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {j: v // g for j, v in new.items()}
                nxt.append(new)
        work = nxt
    return echelon, pivots


def _bareiss_rank(rows):
    return len(_row_echelon(rows)[0])


def rank_of_columns(columns, ncoords=None):
    """Rank of a family of sparse column vectors {coord: coeff}."""
    cols = [c for c in columns if c]
    if not cols:
        return 0
    # transpose: rows indexed by coordinate
    rows = {}
    for j, col in enumerate(cols):
        for i, c in col.items():
            if c:
                rows.setdefault(i, {})[j] = c
    m = SparseRationalMatrix(len(rows), len(cols), list(rows.values()))
    return m.rank()


def kernel_dimension_of_columns(columns):
    """dim ker of the linear map with the given columns."""
    return len(columns) - rank_of_columns(columns)


def solve_membership(columns, vector):
    """Is `vector` in the span of `columns`? (all sparse {coord: coeff})."""
    cols = [c for c in columns]
    r0 = rank_of_columns(cols)
    return rank_of_columns(cols + [vector]) == r0
