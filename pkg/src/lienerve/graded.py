"""Finite-basis Z-graded spaces and cochain complexes with degree +1
differentials.

Basis elements are addressed as (degree, label) pairs; elements of a complex
are dicts (degree, label) -> Fraction.  Sign conventions are fixed once here:
Koszul rule for tensor products, d_{C[n]} = (-1)^n d_C for shifts, and
graded-symmetric multisets for symmetric powers.
"""

import itertools
from fractions import Fraction
from math import comb

from .linalg import (SparseMatrix, ZERO, ONE, kernel_basis, solve_affine,
                     span_matrix, in_span, quotient_representatives, rank,
                     vec_add, vec_scale)


class GradedSpace:
    def __init__(self, components):
        self.components = {}
        for d, labels in components.items():
            labels = tuple(labels)
            assert len(set(labels)) == len(labels), \
                "duplicate labels in degree %d" % d
            if labels:
                self.components[int(d)] = labels
        self._index = {}
        for d, labels in self.components.items():
            for i, l in enumerate(labels):
                self._index[(d, l)] = i

    def degrees(self):
        return sorted(self.components)

    def dim(self, d):
        return len(self.components.get(d, ()))

    def total_dim(self):
        return sum(len(v) for v in self.components.values())

    def labels(self, d):
        return self.components.get(d, ())

    def basis(self):
        for d in self.degrees():
            for l in self.components[d]:
                yield (d, l)

    def index(self, d, label):
        return self._index[(d, label)]

    def __eq__(self, other):
        return isinstance(other, GradedSpace) and \
            self.components == other.components

    def __repr__(self):
        return "GradedSpace(%r)" % (self.components,)


def component_vector(space, d, element):
    """Degree-d part of an element dict, as an index->Fraction vector."""
    out = {}
    for (deg, label), c in element.items():
        if deg == d and c:
            out[space.index(deg, label)] = c
    return out


def element_from_vector(space, d, vec):
    labels = space.labels(d)
    return {(d, labels[i]): c for i, c in vec.items() if c}


class ComplexError(Exception):
    pass


class CochainComplex:
    def __init__(self, space, differential, check=True):
        self.space = space
        self.differential = {}
        for d, M in differential.items():
            assert M.rows == space.dim(d + 1) and M.cols == space.dim(d), \
                "differential shape mismatch at degree %d" % d
            if not M.is_zero():
                self.differential[int(d)] = M
        if check:
            err = self.square_zero_violation()
            if err is not None:
                raise ComplexError("d∘d != 0 at degree %d" % err)

    def diff_matrix(self, d):
        M = self.differential.get(d)
        if M is None:
            return SparseMatrix.zero(self.space.dim(d + 1), self.space.dim(d))
        return M

    def square_zero_violation(self):
        for d in list(self.differential):
            if not self.diff_matrix(d + 1).mul(self.diff_matrix(d)).is_zero():
                return d
        return None

    def d(self, element):
        """Apply the differential to an element dict."""
        out = {}
        for deg in {dg for (dg, _l) in element}:
            vec = component_vector(self.space, deg, element)
            img = self.diff_matrix(deg).apply(vec)
            out.update(element_from_vector(self.space, deg + 1, img))
        return out

    def __eq__(self, other):
        if not isinstance(other, CochainComplex):
            return False
        if self.space != other.space:
            return False
        degs = set(self.differential) | set(other.differential)
        return all(self.diff_matrix(d) == other.diff_matrix(d) for d in degs)

    def __repr__(self):
        return "CochainComplex(%r)" % (self.space,)


def zero_complex():
    return CochainComplex(GradedSpace({}), {})


class ChainMap:
    """Degree-0 map of complexes commuting with the differentials."""

    def __init__(self, source, target, blocks, check=True):
        self.source = source
        self.target = target
        self.blocks = {}
        for d, M in blocks.items():
            assert M.rows == target.space.dim(d) and M.cols == source.space.dim(d)
            if not M.is_zero():
                self.blocks[int(d)] = M
        if check and not self.commutes():
            raise ComplexError("chain map does not commute with differentials")

    def block(self, d):
        M = self.blocks.get(d)
        if M is None:
            return SparseMatrix.zero(self.target.space.dim(d),
                                     self.source.space.dim(d))
        return M

    def commutes(self):
        degs = set(self.blocks) | set(self.source.differential) \
            | set(self.target.differential)
        for d in degs:
            lhs = self.target.diff_matrix(d).mul(self.block(d))
            rhs = self.block(d + 1).mul(self.source.diff_matrix(d))
            if lhs != rhs:
                return False
        return True

    def apply(self, element):
        out = {}
        for deg in {dg for (dg, _l) in element}:
            vec = component_vector(self.source.space, deg, element)
            img = self.block(deg).apply(vec)
            out = vec_add(out, element_from_vector(self.target.space, deg, img))
        return out


def cohomology_at(C, d):
    """(dimension, representative element dicts) of H^d(C)."""
    if C.square_zero_violation() is not None:
        raise ComplexError("not a complex")
    cycles = kernel_basis(C.diff_matrix(d))
    prev = C.diff_matrix(d - 1)
    boundaries = [prev.column(j) for j in range(prev.cols)]
    boundaries = [b for b in boundaries if b]
    dim_b = rank(span_matrix(boundaries, C.space.dim(d))) if boundaries else 0
    reps = quotient_representatives(cycles, boundaries, C.space.dim(d))
    assert len(reps) == len(cycles) - dim_b
    return len(reps), [element_from_vector(C.space, d, v) for v in reps]


def shift(C, n):
    """C[n]^i = C^{i+n} with d_{C[n]} = (-1)^n d_C."""
    space = GradedSpace({d - n: labels for d, labels in C.space.components.items()})
    sign = ONE if n % 2 == 0 else -ONE
    diff = {d - n: M.scale(sign) for d, M in C.differential.items()}
    return CochainComplex(space, diff, check=False)


def tensor_label(a, b):
    return "%s⊗%s" % (a, b)


def tensor(C, D):
    """Tensor product complex with Koszul signs."""
    components = {}
    for dc in C.space.degrees():
        for dd in D.space.degrees():
            deg = dc + dd
            for a in C.space.labels(dc):
                for b in D.space.labels(dd):
                    components.setdefault(deg, []).append(tensor_label(a, b))
    space = GradedSpace(components)

    entries = {}
    for dc in C.space.degrees():
        for dd in D.space.degrees():
            deg = dc + dd
            for a in C.space.labels(dc):
                for b in D.space.labels(dd):
                    col = space.index(deg, tensor_label(a, b))
                    # dc part: da ⊗ b
                    Mc = C.diff_matrix(dc)
                    ja = C.space.index(dc, a)
                    for (i, j), c in Mc.entries.items():
                        if j != ja:
                            continue
                        a2 = C.space.labels(dc + 1)[i]
                        row = space.index(deg + 1, tensor_label(a2, b))
                        entries[(deg, row, col)] = \
                            entries.get((deg, row, col), ZERO) + c
                    # dd part: (-1)^{deg a} a ⊗ db
                    Md = D.diff_matrix(dd)
                    jb = D.space.index(dd, b)
                    sgn = ONE if dc % 2 == 0 else -ONE
                    for (i, j), c in Md.entries.items():
                        if j != jb:
                            continue
                        b2 = D.space.labels(dd + 1)[i]
                        row = space.index(deg + 1, tensor_label(a, b2))
                        entries[(deg, row, col)] = \
                            entries.get((deg, row, col), ZERO) + sgn * c
    diff = {}
    for (deg, row, col), c in entries.items():
        if c:
            diff.setdefault(deg, {})[(row, col)] = c
    diff = {deg: SparseMatrix(space.dim(deg + 1), space.dim(deg), m)
            for deg, m in diff.items()}
    return CochainComplex(space, diff)


def truncate_good(C):
    """Good truncation τ^{<=0}: replace degree 0 by ker(d^0), drop degrees > 0.

    Returns (truncated complex, inclusion ChainMap into C).
    """
    ker = kernel_basis(C.diff_matrix(0))
    components = {d: labels for d, labels in C.space.components.items() if d < 0}
    components[0] = tuple("ker0_%d" % i for i in range(len(ker)))
    space = GradedSpace(components)

    diff = {}
    blocks = {}
    for d, labels in C.space.components.items():
        if d < 0:
            blocks[d] = SparseMatrix.identity(len(labels))
            if d < -1:
                diff[d] = C.diff_matrix(d)
    if ker:
        blocks[0] = span_matrix(ker, C.space.dim(0))
        # d^{-1} lands in ker d^0; rewrite it in the kernel basis
        prev = C.diff_matrix(-1)
        entries = {}
        for j in range(prev.cols):
            col = prev.column(j)
            coords = in_span(ker, C.space.dim(0), col)
            assert coords is not None, "d^{-1} image not in ker d^0"
            for i, c in coords.items():
                entries[(i, j)] = c
        diff[-1] = SparseMatrix(len(ker), C.space.dim(-1), entries)
    trunc = CochainComplex(space, diff)
    inc = ChainMap(trunc, C, blocks)
    return trunc, inc


def multiset_label(items):
    """Canonical label for a graded multiset of (degree, label) pairs."""
    parts = ["%s[%d]" % (l, d) for (d, l) in sorted(items)]
    return "·".join(parts) if parts else "1"


def sym_multisets(space, n):
    """Graded-symmetric multisets of size n: odd-degree labels at most once."""
    basis = sorted(space.basis())
    results = []

    def rec(start, remaining, acc):
        if remaining == 0:
            results.append(tuple(acc))
            return
        for i in range(start, len(basis)):
            d, l = basis[i]
            if d % 2 != 0 and acc and acc[-1] == (d, l):
                continue
            acc.append((d, l))
            rec(i if d % 2 == 0 else i + 1, remaining - 1, acc)
            acc.pop()

    rec(0, n, [])
    return results


def sym_power(V, n):
    """n-th graded symmetric power of a graded space."""
    assert n >= 0
    components = {}
    for ms in sym_multisets(V, n):
        deg = sum(d for d, _l in ms)
        components.setdefault(deg, []).append(multiset_label(ms))
    return GradedSpace(components)


def dold_kan_truncated(C, L):
    """Level dimensions and homotopy-group dimensions of the simplicial
    vector space associated to a complex concentrated in degrees <= 0."""
    for d in C.space.degrees():
        if d > 0 and C.space.dim(d):
            raise ComplexError("nonzero component in positive degree %d" % d)
    level_dims = []
    for nlevel in range(L + 1):
        level_dims.append(sum(comb(nlevel, k) * C.space.dim(-k)
                              for k in range(nlevel + 1)))
    pi_dims = [cohomology_at(C, -i)[0] for i in range(L + 1)]
    return level_dims, pi_dims
