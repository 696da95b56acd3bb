"""dg Lie algebras by structure constants: axioms, free Lie algebras on a
Lyndon-type basis, nilpotency, enveloping algebras with PBW data, and the
truncated Baker-Campbell-Hausdorff machinery.

Elements are dicts (degree, label) -> Fraction as everywhere else.
"""

from fractions import Fraction
from functools import lru_cache

from .linalg import (SparseMatrix, ZERO, ONE, vec_add, vec_scale, vec_sub,
                     span_matrix, in_span, rank)
from .graded import GradedSpace, CochainComplex, sym_multisets, tensor_label
from .algebra import koszul_sign


class LieError(Exception):
    pass


class DgLieAlgebra:
    """Finite-basis dg Lie algebra.  bracket maps ordered pairs of basis
    keys to element dicts; antisymmetry is completed at construction and
    the axioms are verified unless check=False."""

    def __init__(self, complex_, bracket, check=True):
        self.complex = complex_
        self.space = complex_.space
        self.bracket_table = {}
        for (k1, k2), val in bracket.items():
            val = {k: Fraction(c) for k, c in val.items() if c}
            if val:
                self.bracket_table[(k1, k2)] = val
        # complete by graded antisymmetry
        for (k1, k2), val in list(self.bracket_table.items()):
            rev = (k2, k1)
            flip = vec_scale(val, -koszul_sign(k1[0], k2[0]))
            if rev not in self.bracket_table:
                if flip:
                    self.bracket_table[rev] = flip
        if check:
            cert = self.violation()
            if cert:
                raise LieError(cert)

    def bracket_basis(self, k1, k2):
        return dict(self.bracket_table.get((k1, k2), {}))

    def bracket(self, x, y):
        out = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                out = vec_add(out, vec_scale(self.bracket_basis(k1, k2), c1 * c2))
        return out

    def d(self, x):
        return self.complex.d(x)

    def violation(self):
        basis = list(self.space.basis())
        if self.complex.square_zero_violation() is not None:
            return "d∘d != 0"
        for k1 in basis:
            for k2 in basis:
                b = self.bracket_basis(k1, k2)
                for k, _c in b.items():
                    if k[0] != k1[0] + k2[0]:
                        return "bracket not degree-additive at (%s, %s)" % (k1, k2)
                anti = vec_add(b, vec_scale(self.bracket_basis(k2, k1),
                                            koszul_sign(k1[0], k2[0])))
                if anti:
                    return "antisymmetry fails at (%s, %s)" % (k1, k2)
        for k1 in basis:
            for k2 in basis:
                # Leibniz: d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
                lhs = self.d(self.bracket_basis(k1, k2))
                rhs = vec_add(self.bracket(self.d({k1: ONE}), {k2: ONE}),
                              vec_scale(self.bracket({k1: ONE}, self.d({k2: ONE})),
                                        ONE if k1[0] % 2 == 0 else -ONE))
                if lhs != rhs:
                    return "Leibniz fails at (%s, %s)" % (k1, k2)
        for k1 in basis:
            for k2 in basis:
                for k3 in basis:
                    # graded Jacobi in Leibniz form:
                    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
                    lhs = self.bracket({k1: ONE}, self.bracket_basis(k2, k3))
                    rhs = vec_add(
                        self.bracket(self.bracket_basis(k1, k2), {k3: ONE}),
                        vec_scale(self.bracket({k2: ONE},
                                               self.bracket_basis(k1, k3)),
                                  koszul_sign(k1[0], k2[0])))
                    if lhs != rhs:
                        return "Jacobi fails at (%s, %s, %s)" % (k1, k2, k3)
        return None


def verify_dgla(g):
    """(ok, certificate) for the dg Lie axioms."""
    cert = g.violation()
    return (cert is None), (cert or "ok")


def abelian_lie(complex_):
    return DgLieAlgebra(complex_, {}, check=False)


def sl2():
    """sl2 with [h,e] = 2e, [h,f] = -2f, [e,f] = h, zero differential."""
    space = GradedSpace({0: ["e", "f", "h"]})
    C = CochainComplex(space, {})
    e, f, h = (0, "e"), (0, "f"), (0, "h")
    bracket = {(h, e): {e: Fraction(2)},
               (h, f): {f: Fraction(-2)},
               (e, f): {h: ONE}}
    return DgLieAlgebra(C, bracket)


def heisenberg():
    """Generators a, b, c in degree 0 with [a,b] = c."""
    space = GradedSpace({0: ["a", "b", "c"]})
    C = CochainComplex(space, {})
    a, b = (0, "a"), (0, "b")
    return DgLieAlgebra(C, {(a, b): {(0, "c"): ONE}})


def quadratic_ac():
    """The (a, c) algebra: a degree 1, c degree 2, da = c, [a,a] = c."""
    space = GradedSpace({1: ["a"], 2: ["c"]})
    C = CochainComplex(space, {1: SparseMatrix(1, 1, {(0, 0): ONE})})
    a = (1, "a")
    return DgLieAlgebra(C, {(a, a): {(2, "c"): ONE}})


# ---------------------------------------------------------------------------
# Free Lie algebras on a Lyndon-type basis

def lyndon_words(n_letters, max_len):
    """All Lyndon words over 0..n_letters-1 of length <= max_len (Duval)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m <= max_len:
            out.append(tuple(w))
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == n_letters - 1:
            w.pop()
    return sorted(out, key=lambda t: (len(t), t))


def _std_factorization(w):
    """Standard factorization of a Lyndon word: w = u v with v the
    lexicographically smallest proper suffix (itself Lyndon)."""
    assert len(w) >= 2
    best = None
    for i in range(1, len(w)):
        suf = w[i:]
        if best is None or suf < best[1]:
            best = (w[:i], suf)
    return best


def _tree_of_lyndon(w):
    if len(w) == 1:
        return ("g", w[0])
    u, v = _std_factorization(w)
    return ("b", _tree_of_lyndon(u), _tree_of_lyndon(v))


def tree_weight(t):
    if t[0] == "g":
        return 1
    return tree_weight(t[1]) + tree_weight(t[2])


def tree_degree(t, gen_degrees):
    if t[0] == "g":
        return gen_degrees[t[1]]
    return tree_degree(t[1], gen_degrees) + tree_degree(t[2], gen_degrees)


def tree_label(t, gen_labels):
    if t[0] == "g":
        return gen_labels[t[1]]
    return "[%s,%s]" % (tree_label(t[1], gen_labels),
                        tree_label(t[2], gen_labels))


def _tensor_concat(x, y):
    out = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            k = w1 + w2
            s = out.get(k, ZERO) + c1 * c2
            out[k] = s
    return {k: c for k, c in out.items() if c}


def _tensor_bracket(x, dx, y, dy):
    """Graded commutator in the tensor algebra; dx, dy are the degrees."""
    return vec_sub(_tensor_concat(x, y),
                   vec_scale(_tensor_concat(y, x), koszul_sign(dx, dy)))


def _tree_tensor(t, gen_degrees):
    if t[0] == "g":
        return {(t[1],): ONE}
    x = _tree_tensor(t[1], gen_degrees)
    y = _tree_tensor(t[2], gen_degrees)
    return _tensor_bracket(x, tree_degree(t[1], gen_degrees),
                           y, tree_degree(t[2], gen_degrees))


class FreeLieTruncated:
    """Free graded Lie algebra on labelled generators, truncated above a
    bracket-weight bound W (i.e. the free nilpotent quotient of class W).

    The basis consists of standard-bracketed Lyndon words, extended by the
    squares [u, u] of odd-degree Lyndon elements.  Structure constants are
    computed through the embedding into the tensor algebra.
    """

    def __init__(self, generators, W, differential_on_generators=None):
        if W < 1:
            raise LieError("weight bound must be >= 1")
        self.generators = list(generators)
        self.W = W
        gen_labels = [l for (l, _d) in self.generators]
        gen_degrees = [d for (_l, d) in self.generators]
        self.gen_degrees = gen_degrees

        trees = []
        for w in lyndon_words(len(self.generators), W):
            trees.append(_tree_of_lyndon(w))
        for t in list(trees):
            if tree_degree(t, gen_degrees) % 2 and 2 * tree_weight(t) <= W:
                trees.append(("b", t, t))
        self.trees = trees

        self.key_of_tree = {}
        comps = {}
        self.weight_of = {}
        for t in trees:
            deg = tree_degree(t, gen_degrees)
            label = tree_label(t, gen_labels)
            key = (deg, label)
            self.key_of_tree[self._tree_id(t)] = key
            comps.setdefault(deg, []).append(label)
            self.weight_of[key] = tree_weight(t)
        space = GradedSpace(comps)

        # coordinates in the tensor algebra, per (weight, degree) block
        self._blocks = {}
        for t in trees:
            wt = tree_weight(t)
            deg = tree_degree(t, gen_degrees)
            self._blocks.setdefault((wt, deg), []).append(t)
        self._block_data = {}
        for (wt, deg), ts in self._blocks.items():
            word_index = {}
            vecs = []
            for t in ts:
                tv = _tree_tensor(t, gen_degrees)
                for wword in tv:
                    word_index.setdefault(wword, len(word_index))
                vecs.append(tv)
            cols = [{word_index[w]: c for w, c in tv.items()} for tv in vecs]
            self._block_data[(wt, deg)] = (word_index, cols, ts)

        # structure constants
        bracket = {}
        for t1 in trees:
            for t2 in trees:
                wt = tree_weight(t1) + tree_weight(t2)
                if wt > W:
                    continue
                k1 = self.key_of_tree[self._tree_id(t1)]
                k2 = self.key_of_tree[self._tree_id(t2)]
                tv = _tensor_bracket(_tree_tensor(t1, gen_degrees), k1[0],
                                     _tree_tensor(t2, gen_degrees), k2[0])
                val = self._coords(tv, wt, k1[0] + k2[0])
                if val:
                    bracket[(k1, k2)] = val

        diff = {}
        if differential_on_generators is not None:
            if callable(differential_on_generators):
                # callback receives the partially built object (basis and
                # weights ready) plus the bracket table
                on_gens = differential_on_generators(self, bracket)
            else:
                on_gens = differential_on_generators
            d_on_basis = self._extend_derivation(on_gens, bracket)
            for d in space.degrees():
                entries = {}
                for j, l in enumerate(space.labels(d)):
                    for (dd, l2), c in d_on_basis.get((d, l), {}).items():
                        entries[(space.index(dd, l2), j)] = c
                M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
                if not M.is_zero():
                    diff[d] = M
        complex_ = CochainComplex(space, diff)
        self.algebra = DgLieAlgebra(complex_, bracket, check=False)
        self.space = space

    @staticmethod
    def _tree_id(t):
        return t

    def _coords(self, tensor_elem, wt, deg):
        """Express a tensor-algebra Lie element in the truncated basis."""
        if not tensor_elem:
            return {}
        word_index, cols, ts = self._block_data[(wt, deg)]
        target = {}
        for w, c in tensor_elem.items():
            if w not in word_index:
                raise LieError("element outside the Lie span")
            target[word_index[w]] = c
        coords = in_span(cols, len(word_index), target)
        if coords is None:
            raise LieError("element outside the Lie span")
        out = {}
        gen_labels = [l for (l, _d) in self.generators]
        for j, c in coords.items():
            key = self.key_of_tree[self._tree_id(ts[j])]
            out[key] = c
        return out

    def generator_key(self, i):
        return self.key_of_tree[("g", i)]

    def dims_by_weight(self):
        out = {}
        for key, wt in self.weight_of.items():
            out[wt] = out.get(wt, 0) + 1
        return out

    def _extend_derivation(self, on_generators, bracket):
        """Extend a degree-+1 map given on generators to a derivation,
        recursively over the bracket trees."""
        table = {}

        def bracket_el(x, y):
            out = {}
            for k1, c1 in x.items():
                for k2, c2 in y.items():
                    out = vec_add(out, vec_scale(bracket.get((k1, k2), {}),
                                                 c1 * c2))
            return out

        def dval(t):
            key = self.key_of_tree[self._tree_id(t)]
            if key in table:
                return table[key]
            if t[0] == "g":
                val = dict(on_generators.get(t[1], {}))
            else:
                k1 = self.key_of_tree[self._tree_id(t[1])]
                val = vec_add(bracket_el(dval(t[1]),
                                         {self.key_of_tree[self._tree_id(t[2])]: ONE}),
                              vec_scale(bracket_el({k1: ONE}, dval(t[2])),
                                        ONE if k1[0] % 2 == 0 else -ONE))
            table[key] = val
            return val

        for t in self.trees:
            dval(t)
        return table

    def extend_lie_map(self, target, on_generators):
        """Extend a generator assignment to a map into another dg Lie
        algebra; returns the value table on basis keys."""
        table = {}

        def val(t):
            key = self.key_of_tree[self._tree_id(t)]
            if key in table:
                return table[key]
            if t[0] == "g":
                v = dict(on_generators.get(t[1], {}))
            else:
                v = target.bracket(val(t[1]), val(t[2]))
            table[key] = v
            return v

        for t in self.trees:
            val(t)
        return table


def witt_dimension(n_letters, w):
    """Number of Lyndon words of length w (necklace/Witt formula)."""
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += _mobius(d) * n_letters ** (w // d)
    return total // w


def _mobius(n):
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def free_lie(generators, W):
    return FreeLieTruncated(generators, W)


# ---------------------------------------------------------------------------
# Nilpotency

def lower_central_series(g, max_steps=None):
    """γ_1 = g, γ_{k+1} = [g, γ_k]; returns the list of per-step spanning
    vectors (element dicts), stopping at zero or at the step bound."""
    basis = [{k: ONE} for k in g.space.basis()]
    dim = g.space.total_dim()
    if max_steps is None:
        max_steps = dim + 1
    series = [basis]
    current = basis
    for _ in range(max_steps):
        nxt = []
        for x in basis:
            for y in current:
                v = g.bracket(x, y)
                if v:
                    nxt.append(v)
        nxt = _independent(g, nxt)
        series.append(nxt)
        if not nxt:
            break
        if _same_span(g, current, nxt):
            break
        current = nxt
    return series


def _flatten(g, v):
    idx = {}
    for i, k in enumerate(sorted(g.space.basis())):
        idx[k] = i
    return {idx[k]: c for k, c in v.items()}


def _independent(g, vectors):
    dim = g.space.total_dim()
    out = []
    flat = []
    for v in vectors:
        fv = _flatten(g, v)
        if fv and in_span(flat, dim, fv) is None:
            out.append(v)
            flat.append(fv)
    return out


def _same_span(g, a, b):
    dim = g.space.total_dim()
    fa = [_flatten(g, v) for v in a]
    fb = [_flatten(g, v) for v in b]
    return all(in_span(fa, dim, v) is not None for v in fb) and \
        all(in_span(fb, dim, v) is not None for v in fa)


def nilpotency_index(g):
    """Least c with γ_{c+1} = 0, or None if not nilpotent within dim+1
    steps."""
    series = lower_central_series(g)
    for i, layer in enumerate(series):
        if not layer:
            return i  # γ_{i+1} = 0 with γ numbered from 1
    return None


class NilpotentDgLie:
    """dg Lie algebra together with its verified nilpotency index."""

    def __init__(self, underlying, index=None):
        self.underlying = underlying
        self.space = underlying.space
        if index is None:
            index = nilpotency_index(underlying)
            if index is None:
                raise LieError("not nilpotent within the step bound")
        self.index = index

    def bracket(self, x, y):
        return self.underlying.bracket(x, y)

    def d(self, x):
        return self.underlying.d(x)


# ---------------------------------------------------------------------------
# Tensoring with a commutative dg algebra, semidirect products

def tensor_cdga_lie(B, g):
    """The dg Lie algebra B ⊗ g for a graded-commutative dg algebra B:
    [a⊗x, b⊗y] = (-1)^{|x||b|} ab ⊗ [x,y], differential by Leibniz."""
    comps = {}
    for (da, la) in B.space.basis():
        for (dx, lx) in g.space.basis():
            comps.setdefault(da + dx, []).append(tensor_label(la, lx))
    space = GradedSpace(comps)

    def key(ka, kx):
        return (ka[0] + kx[0], tensor_label(ka[1], kx[1]))

    bracket = {}
    for ka in B.space.basis():
        for kx in g.space.basis():
            for kb in B.space.basis():
                for ky in g.space.basis():
                    prod = B.multiply_basis(ka, kb)
                    br = g.bracket_basis(kx, ky)
                    if not prod or not br:
                        continue
                    sgn = koszul_sign(kx[0], kb[0])
                    val = {}
                    for kc, c1 in prod.items():
                        for kz, c2 in br.items():
                            val = vec_add(val, {key(kc, kz): sgn * c1 * c2})
                    if val:
                        bracket[(key(ka, kx), key(kb, ky))] = val

    diff_entries = {}
    for ka in B.space.basis():
        for kx in g.space.basis():
            src = key(ka, kx)
            img = {}
            for kc, c in B.d({ka: ONE}).items():
                img = vec_add(img, {key(kc, kx): c})
            sgn = ONE if ka[0] % 2 == 0 else -ONE
            for kz, c in g.d({kx: ONE}).items():
                img = vec_add(img, {key(ka, kz): sgn * c})
            d = src[0]
            for tgt, c in img.items():
                diff_entries.setdefault(d, {})[(
                    space.index(tgt[0], tgt[1]), space.index(d, src[1]))] = c
    diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
            for d, m in diff_entries.items()}
    complex_ = CochainComplex(space, diff)
    return DgLieAlgebra(complex_, bracket, check=False)


def semidirect(g, h, action):
    """Semidirect product g ⋉ h; action maps basis keys of g to dicts
    sending basis keys of h to element dicts of h.  The action must be by
    derivations compatible with brackets and differentials (validated)."""

    def act(kg, x):
        table = action.get(kg, {})
        out = {}
        for kh, c in x.items():
            out = vec_add(out, vec_scale(table.get(kh, {}), c))
        return out

    cert = _validate_action(g, h, act)
    if cert:
        raise LieError("invalid action: " + cert)

    comps = {}
    for (d, l) in g.space.basis():
        comps.setdefault(d, []).append("g:" + l)
    for (d, l) in h.space.basis():
        comps.setdefault(d, []).append("h:" + l)
    space = GradedSpace(comps)

    def gk(k):
        return (k[0], "g:" + k[1])

    def hk(k):
        return (k[0], "h:" + k[1])

    bracket = {}
    for k1 in g.space.basis():
        for k2 in g.space.basis():
            val = g.bracket_basis(k1, k2)
            if val:
                bracket[(gk(k1), gk(k2))] = {gk(k): c for k, c in val.items()}
    for k1 in h.space.basis():
        for k2 in h.space.basis():
            val = h.bracket_basis(k1, k2)
            if val:
                bracket[(hk(k1), hk(k2))] = {hk(k): c for k, c in val.items()}
    for k1 in g.space.basis():
        for k2 in h.space.basis():
            val = act(k1, {k2: ONE})
            if val:
                bracket[(gk(k1), hk(k2))] = {hk(k): c for k, c in val.items()}

    diff_entries = {}
    for (kind, alg, wrap) in (("g", g, gk), ("h", h, hk)):
        for k in alg.space.basis():
            img = alg.d({k: ONE})
            for tgt, c in img.items():
                wk, wt = wrap(k), wrap(tgt)
                diff_entries.setdefault(k[0], {})[(
                    space.index(wt[0], wt[1]), space.index(wk[0], wk[1]))] = c
    diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
            for d, m in diff_entries.items()}
    complex_ = CochainComplex(space, diff)
    return DgLieAlgebra(complex_, bracket)


def _validate_action(g, h, act):
    for kg in g.space.basis():
        for k1 in h.space.basis():
            for k2 in h.space.basis():
                lhs = act(kg, h.bracket_basis(k1, k2))
                rhs = vec_add(h.bracket(act(kg, {k1: ONE}), {k2: ONE}),
                              vec_scale(h.bracket({k1: ONE}, act(kg, {k2: ONE})),
                                        koszul_sign(kg[0], k1[0])))
                if lhs != rhs:
                    return "not a derivation at %s on (%s, %s)" % (kg, k1, k2)
    for ka in g.space.basis():
        for kb in g.space.basis():
            for k1 in h.space.basis():
                lhs = act_elem(act, g.bracket_basis(ka, kb), {k1: ONE})
                rhs = vec_sub(act(ka, act(kb, {k1: ONE})),
                              vec_scale(act(kb, act(ka, {k1: ONE})),
                                        koszul_sign(ka[0], kb[0])))
                if lhs != rhs:
                    return "not equivariant at (%s, %s)" % (ka, kb)
    for kg in g.space.basis():
        for k1 in h.space.basis():
            lhs = h.d(act(kg, {k1: ONE}))
            rhs = vec_add(act_elem(act, g.d({kg: ONE}), {k1: ONE}),
                          vec_scale(act(kg, h.d({k1: ONE})),
                                    ONE if kg[0] % 2 == 0 else -ONE))
            if lhs != rhs:
                return "not a chain map at %s on %s" % (kg, k1)
    return None


def act_elem(act, gx, hx):
    out = {}
    for kg, c in gx.items():
        out = vec_add(out, vec_scale(act(kg, hx), c))
    return out


# ---------------------------------------------------------------------------
# Enveloping algebra, PBW

class EnvelopingTruncated:
    """Universal enveloping algebra truncated above monomial length W.

    The PBW basis consists of nondecreasing monomials in the totally
    ordered basis of g, with odd-degree factors appearing at most once.
    Products are computed by straightening; components of length > W are
    dropped (quotient by the length filtration).
    """

    def __init__(self, g, W):
        self.g = g
        self.W = W
        self.order = sorted(g.space.basis())
        self.rank_of = {k: i for i, k in enumerate(self.order)}
        self.monomials = []
        for n in range(W + 1):
            for ms in sym_multisets(g.space, n):
                self.monomials.append(tuple(ms))
        self.monomial_index = {m: i for i, m in enumerate(self.monomials)}
        self._straighten_cache = {}

    def monomial_degree(self, m):
        return sum(k[0] for k in m)

    def straighten(self, word):
        """Normal form of an arbitrary word (tuple of basis keys) as a dict
        monomial -> coefficient, truncated above length W."""
        word = tuple(word)
        cached = self._straighten_cache.get(word)
        if cached is not None:
            return dict(cached)
        out = self._straighten_impl(word)
        out = {m: c for m, c in out.items() if len(m) <= self.W and c}
        self._straighten_cache[word] = dict(out)
        return out

    def _straighten_impl(self, word):
        for i in range(len(word) - 1):
            u, v = word[i], word[i + 1]
            if self.rank_of[u] > self.rank_of[v]:
                swapped = word[:i] + (v, u) + word[i + 2:]
                out = vec_scale(self._straighten_impl(swapped),
                                koszul_sign(u[0], v[0]))
                br = self.g.bracket_basis(u, v)
                for k, c in br.items():
                    sub = word[:i] + (k,) + word[i + 2:]
                    out = vec_add(out, vec_scale(self._straighten_impl(sub), c))
                return out
            if u == v and u[0] % 2:
                # odd square: u·u = ½[u,u]
                br = self.g.bracket_basis(u, u)
                out = {}
                for k, c in br.items():
                    sub = word[:i] + (k,) + word[i + 2:]
                    out = vec_add(out, vec_scale(self._straighten_impl(sub),
                                                 c / 2))
                return out
        return {word: ONE}

    def multiply(self, x, y):
        """Product of two dicts monomial -> coefficient."""
        out = {}
        for m1, c1 in x.items():
            for m2, c2 in y.items():
                if len(m1) + len(m2) > self.W:
                    continue
                out = vec_add(out, vec_scale(self.straighten(m1 + m2), c1 * c2))
        return out

    def monomial_counts_by_length(self):
        out = {}
        for m in self.monomials:
            out[len(m)] = out.get(len(m), 0) + 1
        return out


def symmetrization_values(env):
    """Images in U of the graded-symmetric basis monomials:
    sym(x1...xn) = (1/n!) Σ_σ ε(σ) x_{σ(1)}···x_{σ(n)}."""
    import itertools
    out = {}
    for m in env.monomials:
        n = len(m)
        if n == 0:
            out[m] = {(): ONE}
            continue
        total = {}
        count = 0
        for perm in set(itertools.permutations(range(n))):
            word = tuple(m[i] for i in perm)
            sign = _koszul_permutation_sign(m, perm)
            total = vec_add(total, vec_scale(env.straighten(word), sign))
            count += 1
        out[m] = vec_scale(total, Fraction(1, count))
    return out


def _koszul_permutation_sign(m, perm):
    """Koszul sign of permuting the factors of a graded word."""
    sign = ONE
    seq = list(perm)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                if m[seq[j]][0] % 2 and m[seq[i]][0] % 2:
                    sign = -sign
    return sign


def symmetrization_bijective_per_length(env):
    """Check that symmetrization is bijective on monomials of each length."""
    values = symmetrization_values(env)
    by_len = {}
    for m, v in values.items():
        by_len.setdefault(len(m), []).append(v)
    for n, vecs in by_len.items():
        flat = []
        for v in vecs:
            flat.append({env.monomial_index[m]: c for m, c in v.items()})
        if rank(span_matrix(flat, len(env.monomials))) != len(vecs):
            return False
    return True


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff, truncated by nilpotency

@lru_cache(maxsize=None)
def _bch_words(depth):
    """BCH as a list of (coefficient, word over {0,1}); evaluating each word
    as a left-nested bracket and summing reproduces log(exp x · exp y) up to
    bracket depth `depth` (exact for algebras nilpotent of that class)."""
    # truncated free associative algebra on two even symbols
    def mul(a, b):
        out = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = w1 + w2
                if len(w) <= depth:
                    out[w] = out.get(w, ZERO) + c1 * c2
        return {w: c for w, c in out.items() if c}

    X = {(0,): ONE}
    Y = {(1,): ONE}

    def expm(v):
        out = {(): ONE}
        term = {(): ONE}
        for n in range(1, depth + 1):
            term = vec_scale(mul(term, v), Fraction(1, n))
            out = vec_add(out, term)
        return out

    prod = mul(expm(X), expm(Y))
    z = dict(prod)
    z.pop((), None)  # z = exp(x)exp(y) - 1
    log = {}
    power = {(): ONE}
    for n in range(1, depth + 1):
        power = mul(power, z)
        log = vec_add(log, vec_scale(power, Fraction((-1) ** (n - 1), n)))
    # Dynkin projection: word w of length n contributes coeff/n times the
    # left-nested bracket [[...[w1,w2],w3],...,wn]
    return tuple((c / len(w), w) for w, c in sorted(log.items()) if w)


def bch(bracket_fn, x, y, depth):
    """log(exp x · exp y) for x, y in a Lie algebra nilpotent of class
    <= depth, using the given bracket callable."""
    elems = (x, y)
    out = {}
    for coeff, word in _bch_words(depth):
        val = elems[word[0]]
        ok = True
        for i in word[1:]:
            val = bracket_fn(val, elems[i])
            if not val:
                ok = False
                break
        if ok and val:
            out = vec_add(out, vec_scale(val, coeff))
    return out


class GaugeElement:
    """Group element exp(y) of the nilpotent group exp(g^0), stored by its
    logarithm.  host must provide bracket(x, y) and a nilpotency index."""

    def __init__(self, host, log):
        self.host = host
        for (d, _l) in log:
            if d != 0:
                raise LieError("gauge logarithm must be in degree 0")
        self.log = {k: Fraction(c) for k, c in log.items() if c}

    def multiply(self, other):
        assert self.host is other.host
        return GaugeElement(self.host,
                            bch(self.host.bracket, self.log, other.log,
                                self.host.index))

    def inverse(self):
        return GaugeElement(self.host, vec_scale(self.log, -1))

    def is_identity(self):
        return not self.log

    def __eq__(self, other):
        return isinstance(other, GaugeElement) and self.host is other.host \
            and self.log == other.log


def exp_element(host, y):
    """Exponential of a degree-0 element of a nilpotent dg Lie algebra."""
    return GaugeElement(host, y)
