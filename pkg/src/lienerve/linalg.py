"""Exact sparse linear algebra over the rationals.

Matrices are stored as dicts (row, col) -> Fraction with no explicit zeros.
Vectors are dicts index -> Fraction.  Everything is immutable by convention:
functions never mutate their arguments and return fresh objects.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add(u, v):
    out = dict(u)
    for i, c in v.items():
        s = out.get(i, ZERO) + c
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_scale(u, c):
    c = Fraction(c)
    if not c:
        return {}
    return {i: c * x for i, x in u.items()}


def vec_sub(u, v):
    return vec_add(u, vec_scale(v, -1))


def vec_eq(u, v):
    return all(c == v.get(i, ZERO) for i, c in u.items()) and \
        all(c == u.get(i, ZERO) for i, c in v.items())


class SparseMatrix:
    """Rational matrix stored sparsely; indices must stay in range."""

    def __init__(self, rows, cols, entries=None):
        assert rows >= 0 and cols >= 0
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), c in entries.items():
                assert 0 <= i < rows and 0 <= j < cols, (i, j, rows, cols)
                c = Fraction(c)
                if c:
                    self.entries[(i, j)] = c

    @classmethod
    def from_rows(cls, data):
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            assert len(row) == cols
            for j, c in enumerate(row):
                if c:
                    entries[(i, j)] = Fraction(c)
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return "SparseMatrix(%d, %d, %r)" % (self.rows, self.cols, self.entries)

    def is_zero(self):
        return not self.entries

    def get(self, i, j):
        return self.entries.get((i, j), ZERO)

    def add(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        entries = dict(self.entries)
        for k, c in other.entries.items():
            s = entries.get(k, ZERO) + c
            if s:
                entries[k] = s
            else:
                entries.pop(k, None)
        return SparseMatrix(self.rows, self.cols, entries)

    def scale(self, c):
        c = Fraction(c)
        return SparseMatrix(self.rows, self.cols,
                            {k: c * v for k, v in self.entries.items()} if c else {})

    def mul(self, other):
        assert self.cols == other.rows, (self.cols, other.rows)
        by_row = {}
        for (i, j), c in other.entries.items():
            by_row.setdefault(i, []).append((j, c))
        entries = {}
        for (i, k), c in self.entries.items():
            for j, d in by_row.get(k, ()):
                s = entries.get((i, j), ZERO) + c * d
                entries[(i, j)] = s
        return SparseMatrix(self.rows, other.cols,
                            {k: v for k, v in entries.items() if v})

    def apply(self, vec):
        """Matrix times a column vector given as a dict."""
        out = {}
        for (i, j), c in self.entries.items():
            x = vec.get(j, ZERO)
            if x:
                s = out.get(i, ZERO) + c * x
                out[i] = s
        return {i: c for i, c in out.items() if c}

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(j, i): c for (i, j), c in self.entries.items()})

    def column(self, j):
        return {i: c for (i, jj), c in self.entries.items() if jj == j}

    def dense_rows(self):
        return [[self.get(i, j) for j in range(self.cols)]
                for i in range(self.rows)]


def _rref(rows_as_dicts, ncols):
    """Reduced row echelon form of sparse rows; returns (rows, pivot cols)."""
    rows = [dict(r) for r in rows_as_dicts if r]
    pivots = []
    reduced = []
    for col in range(ncols):
        pivot_row = None
        for r in rows:
            if r.get(col):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows.remove(pivot_row)
        inv = ONE / pivot_row[col]
        pivot_row = {j: inv * c for j, c in pivot_row.items()}
        for other in list(rows):
            c = other.get(col)
            if c:
                updated = vec_sub(other, vec_scale(pivot_row, c))
                rows.remove(other)
                if updated:
                    rows.append(updated)
        for other in reduced:
            c = other.get(col)
            if c:
                delta = vec_scale(pivot_row, -c)
                for j, x in delta.items():
                    s = other.get(j, ZERO) + x
                    if s:
                        other[j] = s
                    else:
                        other.pop(j, None)
        reduced.append(pivot_row)
        pivots.append(col)
        if not rows:
            break
    return reduced, pivots


def rank(M):
    rows = [{}] * 0
    by_row = {}
    for (i, j), c in M.entries.items():
        by_row.setdefault(i, {})[j] = c
    _, pivots = _rref(list(by_row.values()), M.cols)
    return len(pivots)


def kernel_basis(M):
    """Basis of ker M as a list of column-vector dicts."""
    by_row = {}
    for (i, j), c in M.entries.items():
        by_row.setdefault(i, {})[j] = c
    reduced, pivots = _rref(list(by_row.values()), M.cols)
    pivot_set = set(pivots)
    pivot_of = {}
    for r, col in zip(reduced, pivots):
        pivot_of[col] = r
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = {free: ONE}
        for col in pivots:
            c = pivot_of[col].get(free)
            if c:
                v[col] = -c
        basis.append(v)
    return basis


def solve_affine(M, b):
    """Solve M x = b; returns (particular, kernel basis) or None."""
    assert all(0 <= i < M.rows for i in b), "b length mismatch"
    by_row = {}
    for (i, j), c in M.entries.items():
        by_row.setdefault(i, {})[j] = c
    aug = []
    for i in range(M.rows):
        row = dict(by_row.get(i, {}))
        c = b.get(i, ZERO)
        if c:
            row[M.cols] = c
        if row:
            aug.append(row)
    reduced, pivots = _rref(aug, M.cols + 1)
    if M.cols in pivots:
        return None
    x0 = {}
    for r, col in zip(reduced, pivots):
        c = r.get(M.cols)
        if c:
            x0[col] = c
    return x0, kernel_basis(M)


def image_basis(M):
    """Columns of M reduced to an independent spanning set of the image."""
    by_row = {}
    for (i, j), c in M.transpose().entries.items():
        by_row.setdefault(i, {})[j] = c
    reduced, _ = _rref(list(by_row.values()), M.rows)
    return reduced


def span_matrix(vectors, dim):
    """Matrix whose columns are the given vectors in an ambient space."""
    entries = {}
    for j, v in enumerate(vectors):
        for i, c in v.items():
            assert 0 <= i < dim
            entries[(i, j)] = c
    return SparseMatrix(dim, len(vectors), entries)


def in_span(vectors, dim, target):
    """Coordinates of target in span(vectors), or None."""
    sol = solve_affine(span_matrix(vectors, dim), target)
    if sol is None:
        return None
    return sol[0]


def invert(M):
    """Inverse of a square invertible matrix; raises on singular input."""
    assert M.rows == M.cols
    cols = {}
    for j in range(M.rows):
        sol = solve_affine(M, {j: ONE})
        if sol is None:
            raise ValueError("singular matrix")
        cols[j] = sol[0]
    entries = {}
    for j, col in cols.items():
        for i, c in col.items():
            entries[(i, j)] = c
    return SparseMatrix(M.rows, M.cols, entries)


def is_injective(M):
    return rank(M) == M.cols


def quotient_representatives(cycles, boundaries, dim):
    """Representatives of span(cycles)/span(boundaries).

    Both families live in an ambient space of the given dimension; the
    boundaries are assumed to lie inside the span of the cycles.
    """
    selected = []
    current = list(boundaries)
    for v in cycles:
        if in_span(current, dim, v) is None:
            selected.append(v)
            current.append(v)
    return selected
