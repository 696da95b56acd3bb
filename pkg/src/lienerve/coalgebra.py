"""Cocommutative dg coalgebras with a group-like unit: axioms, canonical
filtration, reduced parts, and duals of local artinian dg algebras.

Comultiplication values and other tensor-square elements are dicts
(key, key) -> Fraction over pairs of (degree, label) basis keys.
"""

from fractions import Fraction

from .linalg import (SparseMatrix, ZERO, ONE, vec_add, vec_scale, vec_sub,
                     kernel_basis)
from .graded import GradedSpace, CochainComplex, ComplexError
from .algebra import koszul_sign, ArtinianDgAlgebra
from .filtration import FilteredComplex


class CoalgebraError(Exception):
    pass


class UnitalCoalgebra:
    """Finite-basis cocommutative dg coalgebra with a group-like unit.

    delta maps basis keys to tensor-square dicts; counit maps basis keys
    to scalars (missing keys count as zero); unit is a basis key.
    """

    def __init__(self, complex_, delta, counit, unit, check=True):
        self.complex = complex_
        self.space = complex_.space
        self.delta_table = {}
        for k, val in delta.items():
            val = {p: Fraction(c) for p, c in val.items() if c}
            self.delta_table[k] = val
        self.counit_table = {k: Fraction(c) for k, c in counit.items() if c}
        self.unit = unit
        if check:
            cert = self.violation()
            if cert:
                raise CoalgebraError(cert)

    def delta_basis(self, k):
        return dict(self.delta_table.get(k, {}))

    def delta(self, x):
        out = {}
        for k, c in x.items():
            out = vec_add(out, vec_scale(self.delta_basis(k), c))
        return out

    def counit(self, x):
        return sum((c * self.counit_table.get(k, ZERO) for k, c in x.items()),
                   ZERO)

    def d(self, x):
        return self.complex.d(x)

    # -- axioms -----------------------------------------------------------

    def violation(self):
        basis = list(self.space.basis())
        if self.complex.square_zero_violation() is not None:
            return "d∘d != 0"
        if self.unit not in set(basis):
            return "unit not in basis"
        if self.counit_table.get(self.unit, ZERO) != ONE:
            return "ε(1) != 1"
        if self.delta_basis(self.unit) != {(self.unit, self.unit): ONE}:
            return "Δ(1) != 1⊗1"
        if self.d({self.unit: ONE}):
            return "d(1) != 0"
        for k in basis:
            D = self.delta_basis(k)
            for (a, b) in D:
                if a[0] + b[0] != k[0]:
                    return "Δ not degree-additive at %r" % (k,)
            # counit axioms: (ε⊗id)Δ = id = (id⊗ε)Δ
            left = {}
            right = {}
            for (a, b), c in D.items():
                left = vec_add(left, {b: c * self.counit_table.get(a, ZERO)})
                right = vec_add(right, {a: c * self.counit_table.get(b, ZERO)})
            if left != {k: ONE} or right != {k: ONE}:
                return "counit axiom fails at %r" % (k,)
            # cocommutativity: Δ = T∘Δ with T(a⊗b) = (-1)^{|a||b|} b⊗a
            twisted = {}
            for (a, b), c in D.items():
                twisted = vec_add(twisted,
                                  {(b, a): c * koszul_sign(a[0], b[0])})
            if twisted != D:
                return "not cocommutative at %r" % (k,)
        for k in basis:
            # coassociativity on the tensor cube
            lhs = {}
            rhs = {}
            for (a, b), c in self.delta_basis(k).items():
                for (a1, a2), c2 in self.delta_basis(a).items():
                    lhs = vec_add(lhs, {(a1, a2, b): c * c2})
                for (b1, b2), c2 in self.delta_basis(b).items():
                    rhs = vec_add(rhs, {(a, b1, b2): c * c2})
            if lhs != rhs:
                return "not coassociative at %r" % (k,)
        for k in basis:
            # Δ is a coderivation: Δ(dx) = Σ da⊗b + (-1)^{|a|} a⊗db
            lhs = self.delta(self.d({k: ONE}))
            rhs = {}
            for (a, b), c in self.delta_basis(k).items():
                for a2, c2 in self.d({a: ONE}).items():
                    rhs = vec_add(rhs, {(a2, b): c * c2})
                sgn = ONE if a[0] % 2 == 0 else -ONE
                for b2, c2 in self.d({b: ONE}).items():
                    rhs = vec_add(rhs, {(a, b2): sgn * c * c2})
            if lhs != rhs:
                return "d is not a coderivation at %r" % (k,)
        for k in basis:
            # ε is a chain map to k (concentrated in degree 0)
            if self.counit(self.d({k: ONE})):
                return "ε∘d != 0 at %r" % (k,)
        if not is_unital(self):
            return "canonical filtration is not exhausting"
        return None

    # -- reduced part -----------------------------------------------------

    def reduced_keys(self):
        return [k for k in self.space.basis() if k != self.unit]

    def project(self, x):
        """Projection X -> X̄ along the unit: x - ε(x)·1, written in the
        adapted basis v_k = k - ε(k)·1 (coordinates are just the non-unit
        coefficients)."""
        return {k: c for k, c in x.items() if k != self.unit}

    def include(self, v):
        """Inclusion X̄ -> X of an adapted-coordinate element."""
        out = {}
        for k, c in v.items():
            out = vec_add(out, vec_scale(self._adapted(k), c))
        return out

    def _adapted(self, k):
        e = self.counit_table.get(k, ZERO)
        out = {k: ONE}
        if e:
            out[self.unit] = -e
        return out

    def delta_bar_basis(self, k):
        """Δ̄(v_k) in adapted coordinates on both tensor factors."""
        v = self._adapted(k)
        full = self.delta(v)
        full = vec_sub(full, {(self.unit, kk): c for kk, c in v.items()})
        full = vec_sub(full, {(kk, self.unit): c for kk, c in v.items()})
        out = {}
        for (a, b), c in full.items():
            pa = self.project(self._adapted_inverse(a))
            pb = self.project(self._adapted_inverse(b))
            for ka, ca in pa.items():
                for kb, cb in pb.items():
                    out = vec_add(out, {(ka, kb): c * ca * cb})
        return out

    def _adapted_inverse(self, k):
        # p applied to a plain basis vector: k - ε(k)·1 has adapted
        # coordinates {k: 1} for k != 1 and 0 for the unit
        return {k: ONE} if k != self.unit else {}

    def reduced(self):
        """ker ε as a cochain complex, in the adapted basis."""
        comps = {}
        for (d, l) in self.reduced_keys():
            comps.setdefault(d, []).append(l)
        space = GradedSpace(comps)
        diff = {}
        for d in space.degrees():
            entries = {}
            for j, l in enumerate(space.labels(d)):
                img = self.project(self.d(self._adapted((d, l))))
                for (dd, l2), c in img.items():
                    entries[(space.index(dd, l2), j)] = c
            M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
            if not M.is_zero():
                diff[d] = M
        return CochainComplex(space, diff)


def verify_coalgebra(X):
    cert = X.violation()
    return (cert is None), (cert or "ok")


def _delta_bar_iterate(X, n):
    """Matrix data of Δ̄^{(n)} ∘ p : X -> X̄^{⊗ n+1} as a dict basis key ->
    dict[tuple of reduced keys] -> Fraction."""
    out = {}
    for k in X.space.basis():
        cur = {(kk,): c for kk, c in X.project(X._adapted_inverse(k)).items()}
        if k == X.unit:
            cur = {}
        for _ in range(n):
            nxt = {}
            for word, c in cur.items():
                head = word[0]
                for (a, b), c2 in X.delta_bar_basis(head).items():
                    key = (a, b) + word[1:]
                    nxt = vec_add(nxt, {key: c * c2})
            cur = nxt
        out[k] = cur
    return out


def canonical_filtration(X, n):
    """X_n = ker(X -> X̄^{⊗ n+1}) as a sub-basis selection; raises if the
    kernel is not spanned by basis vectors."""
    if n < 0:
        raise CoalgebraError("filtration level must be >= 0")
    table = _delta_bar_iterate(X, n)
    keys = sorted(X.space.basis())
    word_index = {}
    entries = {}
    for j, k in enumerate(keys):
        for word, c in table[k].items():
            word_index.setdefault(word, len(word_index))
            entries[(word_index[word], j)] = c
    M = SparseMatrix(len(word_index), len(keys), entries)
    ker = kernel_basis(M)
    support = set()
    for v in ker:
        support.update(v)
    if len(ker) != len(support):
        raise CoalgebraError("canonical filtration level %d is not "
                             "spanned by basis vectors" % n)
    return frozenset(keys[i] for i in support)


def is_unital(X):
    """True iff the canonical filtration exhausts the space."""
    total = X.space.total_dim()
    prev = -1
    for n in range(total + 1):
        level = canonical_filtration(X, n)
        if len(level) == total:
            return True
        if len(level) == prev:
            return False
        prev = len(level)
    return False


def filtration_length(X):
    """Least n with X_n = X."""
    total = X.space.total_dim()
    for n in range(total + 1):
        if len(canonical_filtration(X, n)) == total:
            return n
    raise CoalgebraError("filtration is not exhausting")


def canonical_filtered_complex(X):
    """The canonical filtration as a filtered complex (level -1 empty)."""
    n = filtration_length(X)
    levels = {-1: frozenset()}
    for i in range(n + 1):
        levels[i] = canonical_filtration(X, i)
    return FilteredComplex(X.complex, levels)


class CoalgebraMap:
    """Unit-preserving map of unital coalgebras given by degree-wise
    matrices; must be a chain map compatible with Δ and ε."""

    def __init__(self, source, target, blocks, check=True):
        self.source = source
        self.target = target
        self.blocks = {}
        for d, M in blocks.items():
            assert M.rows == target.space.dim(d) and \
                M.cols == source.space.dim(d)
            if not M.is_zero():
                self.blocks[int(d)] = M
        if check:
            cert = self.violation()
            if cert:
                raise CoalgebraError(cert)

    def apply(self, x):
        out = {}
        for (d, l), c in x.items():
            j = self.source.space.index(d, l)
            M = self.blocks.get(d)
            if M is None:
                continue
            labels = self.target.space.labels(d)
            for (i, jj), cc in M.entries.items():
                if jj == j:
                    out = vec_add(out, {(d, labels[i]): c * cc})
        return out

    def violation(self):
        if self.apply({self.source.unit: ONE}) != {self.target.unit: ONE}:
            return "unit not preserved"
        for k in self.source.space.basis():
            x = {k: ONE}
            if self.target.counit(self.apply(x)) != self.source.counit(x):
                return "counit not preserved at %r" % (k,)
            lhs = self.target.delta(self.apply(x))
            rhs = {}
            for (a, b), c in self.source.delta_basis(k).items():
                fa = self.apply({a: ONE})
                fb = self.apply({b: ONE})
                for ka, ca in fa.items():
                    for kb, cb in fb.items():
                        rhs = vec_add(rhs, {(ka, kb): c * ca * cb})
            if lhs != rhs:
                return "Δ not preserved at %r" % (k,)
            if self.apply(self.source.d(x)) != self.target.d(self.apply(x)):
                return "not a chain map at %r" % (k,)
        return None


def dual_artinian(A):
    """The dual unital coalgebra A* of a local artinian dg algebra.

    Grading: the dual of a degree-d basis element sits in degree -d; the
    comultiplication is the transpose of the product with Koszul signs and
    the differential is the (signed) transpose of d.
    """
    if not isinstance(A, ArtinianDgAlgebra):
        raise CoalgebraError("dual_artinian requires a local artinian input")
    keys = list(A.space.basis())
    comps = {}
    for (d, l) in keys:
        comps.setdefault(-d, []).append(l)
    space = GradedSpace(comps)

    def dual_key(k):
        return (-k[0], k[1])

    # d*(x̂) = -(-1)^{|x|} (x̂ ∘ d)
    diff_entries = {}
    for k in keys:
        sgn = -ONE if k[0] % 2 == 0 else ONE
        for y in keys:
            c = A.d({y: ONE}).get(k, ZERO)
            if c:
                dk, dy = dual_key(k), dual_key(y)
                # x̂ in degree -|x| maps to components ŷ with |y| = |x|-1
                diff_entries.setdefault(dk[0], {})[(
                    space.index(dy[0], dy[1]),
                    space.index(dk[0], dk[1]))] = sgn * c
    diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
            for d, m in diff_entries.items()}
    complex_ = CochainComplex(space, diff)

    delta = {}
    for x in keys:
        val = {}
        for a in keys:
            for b in keys:
                c = A.multiply_basis(a, b).get(x, ZERO)
                if c:
                    val = vec_add(val, {(dual_key(a), dual_key(b)):
                                        koszul_sign(a[0], b[0]) * c})
        delta[dual_key(x)] = val
    counit = {dual_key(A.unit): ONE}
    return UnitalCoalgebra(complex_, delta, counit, dual_key(A.unit))


def point_coalgebra():
    """k·1 alone."""
    space = GradedSpace({0: ["1"]})
    C = CochainComplex(space, {})
    one = (0, "1")
    return UnitalCoalgebra(C, {one: {(one, one): ONE}}, {one: ONE}, one)


def two_group_likes():
    """Non-unital example: a second group-like g with Δg = g⊗g; the
    canonical filtration never captures the g - 1 direction."""
    space = GradedSpace({0: ["1", "g"]})
    C = CochainComplex(space, {})
    one, g = (0, "1"), (0, "g")
    return UnitalCoalgebra(C, {one: {(one, one): ONE}, g: {(g, g): ONE}},
                           {one: ONE, g: ONE}, one, check=False)
