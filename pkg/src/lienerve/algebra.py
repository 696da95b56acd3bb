"""Finite-dimensional graded-commutative dg algebras and artinian local
dg algebras, by structure constants."""

from fractions import Fraction

from .linalg import ONE, vec_add, vec_scale, span_matrix, in_span, rank
from .graded import GradedSpace, CochainComplex, component_vector


class AlgebraError(Exception):
    pass


def koszul_sign(d1, d2):
    return -ONE if (d1 % 2) and (d2 % 2) else ONE


class CommutativeDgAlgebra:
    """Graded-commutative dg algebra on an explicit finite basis.

    product maps ordered pairs of basis keys (degree, label) to element
    dicts; missing pairs multiply to zero.  unit is a basis key or None
    (non-unital algebras such as maximal ideals are allowed).
    """

    def __init__(self, complex_, product, unit=None, check=True):
        self.complex = complex_
        self.space = complex_.space
        self.product = {}
        for (k1, k2), val in product.items():
            val = {k: Fraction(c) for k, c in val.items() if c}
            if val:
                self.product[(k1, k2)] = val
        self.unit = unit
        if check:
            err = self.violation()
            if err:
                raise AlgebraError(err)

    def multiply_basis(self, k1, k2):
        return dict(self.product.get((k1, k2), {}))

    def multiply(self, x, y):
        out = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                out = vec_add(out, vec_scale(self.multiply_basis(k1, k2), c1 * c2))
        return out

    def d(self, x):
        return self.complex.d(x)

    def violation(self):
        basis = list(self.space.basis())
        for k1 in basis:
            for k2 in basis:
                lhs = self.multiply_basis(k1, k2)
                rhs = vec_scale(self.multiply_basis(k2, k1),
                                koszul_sign(k1[0], k2[0]))
                if lhs != rhs:
                    return "not graded-commutative at %r, %r" % (k1, k2)
                for k, _c in lhs.items():
                    if k[0] != k1[0] + k2[0]:
                        return "product not degree-additive at %r, %r" % (k1, k2)
        for k1 in basis:
            for k2 in basis:
                for k3 in basis:
                    lhs = self.multiply(self.multiply_basis(k1, k2), {k3: ONE})
                    rhs = self.multiply({k1: ONE}, self.multiply_basis(k2, k3))
                    if lhs != rhs:
                        return "not associative at %r,%r,%r" % (k1, k2, k3)
        for k1 in basis:
            for k2 in basis:
                # Leibniz: d(ab) = da·b + (-1)^{|a|} a·db
                lhs = self.d(self.multiply_basis(k1, k2))
                rhs = vec_add(
                    self.multiply(self.d({k1: ONE}), {k2: ONE}),
                    vec_scale(self.multiply({k1: ONE}, self.d({k2: ONE})),
                              ONE if k1[0] % 2 == 0 else -ONE))
                if lhs != rhs:
                    return "Leibniz fails at %r, %r" % (k1, k2)
        if self.unit is not None:
            for k in basis:
                if self.multiply_basis(self.unit, k) != {k: ONE}:
                    return "unit law fails at %r" % (k,)
            if self.d({self.unit: ONE}):
                return "d(1) != 0"
        return None


class ArtinianDgAlgebra(CommutativeDgAlgebra):
    """Local artinian dg algebra: unit plus a nilpotent maximal ideal,
    concentrated in degrees <= 0."""

    def __init__(self, complex_, product, unit, maximal_ideal, order, check=True):
        self.maximal_ideal = frozenset(maximal_ideal)
        self.order = int(order)
        super().__init__(complex_, product, unit=unit, check=check)
        if check:
            err = self._artinian_violation()
            if err:
                raise AlgebraError(err)

    def _artinian_violation(self):
        basis = set(self.space.basis())
        if self.unit not in basis:
            return "unit not in basis"
        if basis != self.maximal_ideal | {self.unit}:
            return "basis must be unit plus maximal ideal"
        for (d, _l) in basis:
            if d > 0:
                return "positive-degree component"
        for k in self.maximal_ideal:
            img = self.d({k: ONE})
            if any(kk not in self.maximal_ideal for kk in img):
                return "d does not preserve the maximal ideal"
        # m^{order+1} = 0: iterate products of ideal spans
        current = [{k: ONE} for k in sorted(self.maximal_ideal)]
        for _step in range(self.order):
            nxt = []
            for v in current:
                for k in sorted(self.maximal_ideal):
                    p = self.multiply(v, {k: ONE})
                    if p:
                        nxt.append(p)
            current = nxt
            if not current:
                break
        if current:
            return "maximal ideal not nilpotent at stated order"
        return None

    def ideal_algebra(self):
        """The maximal ideal as a non-unital dg algebra."""
        comps = {}
        for d in self.space.degrees():
            keep = [l for l in self.space.labels(d)
                    if (d, l) in self.maximal_ideal]
            if keep:
                comps[d] = keep
        space = GradedSpace(comps)
        from .linalg import SparseMatrix
        diff = {}
        for d in space.degrees():
            entries = {}
            for j, l in enumerate(space.labels(d)):
                img = self.d({(d, l): ONE})
                for (dd, l2), c in img.items():
                    entries[(space.index(dd, l2), j)] = c
            M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
            if not M.is_zero():
                diff[d] = M
        C = CochainComplex(space, diff)
        product = {}
        for k1 in self.maximal_ideal:
            for k2 in self.maximal_ideal:
                val = {k: c for k, c in self.multiply_basis(k1, k2).items()
                       if k in self.maximal_ideal}
                if val:
                    product[(k1, k2)] = val
        return CommutativeDgAlgebra(C, product, unit=None, check=False)


def base_field():
    """The algebra k itself."""
    space = GradedSpace({0: ["1"]})
    C = CochainComplex(space, {})
    return ArtinianDgAlgebra(C, {((0, "1"), (0, "1")): {(0, "1"): ONE}},
                             unit=(0, "1"), maximal_ideal=frozenset(), order=0)


def truncated_polynomial_algebra(n_pow, eps_degree=0, var="ε"):
    """k[ε]/(ε^{n_pow}) with deg ε given; artinian local."""
    assert n_pow >= 1
    labels = {}
    keys = []
    for i in range(n_pow):
        d = i * eps_degree
        label = "1" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
        labels.setdefault(d, []).append(label)
        keys.append((d, label))
    # odd-degree ε squares to zero automatically only if we skip those keys
    if eps_degree % 2 and n_pow > 2:
        raise AlgebraError("odd generator forces ε^2 = 0")
    space = GradedSpace(labels)
    C = CochainComplex(space, {})
    product = {}
    for i in range(n_pow):
        for j in range(n_pow):
            if i + j < n_pow and not (eps_degree % 2 and i == j == 1):
                product[(keys[i], keys[j])] = {keys[i + j]: ONE}
    return ArtinianDgAlgebra(C, product, unit=keys[0],
                             maximal_ideal=frozenset(keys[1:]),
                             order=n_pow - 1)


def dual_numbers(n):
    """A_n = k[ε]/(ε^2) with deg ε = -n."""
    assert n >= 0
    return truncated_polynomial_algebra(2, eps_degree=-n)


def product_algebra_kk():
    """B = k x k, commutative, degree 0 (not local)."""
    space = GradedSpace({0: ["e1", "e2"]})
    C = CochainComplex(space, {})
    k1, k2 = (0, "e1"), (0, "e2")
    product = {(k1, k1): {k1: ONE}, (k2, k2): {k2: ONE}}
    return CommutativeDgAlgebra(C, product, unit=None)
