"""Increasing exhaustive filtrations on cochain complexes, the tensor
filtration, the Rees functor to graded k[t]-modules and its adjoint.

Filtration levels are stored as sub-basis selections (coordinate subspaces
of the total complex): a level is the span of a subset of basis labels.
All filtrations appearing in the computations admit such adapted bases.
"""

from fractions import Fraction

from .linalg import (SparseMatrix, ONE, rank, span_matrix, in_span, invert,
                     is_injective)
from .graded import (GradedSpace, CochainComplex, ChainMap, tensor,
                     tensor_label, cohomology_at, element_from_vector)


class FiltrationError(Exception):
    pass


class FilteredComplex:
    """Cochain complex with an increasing filtration by sub-bases.

    levels maps i -> set of (degree, label) pairs; levels below the floor
    are zero and the top stored level is the whole space.
    """

    def __init__(self, total, levels, check=True):
        self.total = total
        self.levels = {int(i): frozenset(sel) for i, sel in levels.items()}
        if not self.levels:
            self.levels = {0: frozenset(total.space.basis())}
        self.floor = min(self.levels)
        self.ceiling = max(self.levels)
        if check:
            self._validate()

    def _validate(self):
        everything = frozenset(self.total.space.basis())
        prev = frozenset()
        for i in range(self.floor, self.ceiling + 1):
            sel = self.level(i)
            if not prev <= sel:
                raise FiltrationError("levels not nested at %d" % i)
            for (d, l) in sel:
                if (d, l) not in everything:
                    raise FiltrationError("unknown basis element %r" % ((d, l),))
            prev = sel
        if self.level(self.ceiling) != everything:
            raise FiltrationError("top level must equal the total space")
        for i in range(self.floor, self.ceiling + 1):
            if not self._is_subcomplex(self.level(i)):
                raise FiltrationError("level %d is not a subcomplex" % i)

    def _is_subcomplex(self, sel):
        for (d, l) in sel:
            img = self.total.d({(d, l): ONE})
            if any(k not in sel for k in img):
                return False
        return True

    def level(self, i):
        if i < self.floor:
            return frozenset()
        if i > self.ceiling:
            return self.levels[self.ceiling]
        return self.levels[i]

    def weight(self, key):
        """Least filtration level containing a basis element."""
        for i in range(self.floor, self.ceiling + 1):
            if key in self.level(i):
                return i
        raise KeyError(key)

    def level_dims(self, i):
        dims = {}
        for (d, _l) in self.level(i):
            dims[d] = dims.get(d, 0) + 1
        return dims

    def level_complex(self, i):
        """The level-i subcomplex with its own (restricted) basis."""
        return subcomplex_on(self.total, self.level(i))


def subcomplex_on(C, selection):
    """Restrict a complex to a d-stable coordinate subspace."""
    comps = {}
    for d in C.space.degrees():
        keep = [l for l in C.space.labels(d) if (d, l) in selection]
        if keep:
            comps[d] = keep
    space = GradedSpace(comps)
    diff = {}
    for d in space.degrees():
        entries = {}
        for j, l in enumerate(space.labels(d)):
            img = C.d({(d, l): ONE})
            for (dd, l2), c in img.items():
                assert dd == d + 1
                entries[(space.index(dd, l2), j)] = c
        M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
        if not M.is_zero():
            diff[d] = M
    return CochainComplex(space, diff)


def trivial_filtration(C, jump=0):
    return FilteredComplex(C, {jump - 1: frozenset(),
                               jump: frozenset(C.space.basis())})


def tensor_filtered(X, Y):
    """Tensor product with (X⊗Y)_n = sum of X_p ⊗ Y_q over p+q = n."""
    T = tensor(X.total, Y.total)
    weight = {}
    for (dx, lx) in X.total.space.basis():
        for (dy, ly) in Y.total.space.basis():
            weight[(dx + dy, tensor_label(lx, ly))] = \
                X.weight((dx, lx)) + Y.weight((dy, ly))
    floor = X.floor + Y.floor
    ceiling = X.ceiling + Y.ceiling
    levels = {}
    for n in range(floor, ceiling + 1):
        levels[n] = frozenset(k for k, w in weight.items() if w <= n)
    return FilteredComplex(T, levels)


class GradedRModule:
    """Graded module over k[t] (deg t = 1) stored by weight components.

    Weights beyond the stored ceiling stabilize: the component repeats and
    t acts as the identity there.  Weights below the stored floor are zero.
    """

    def __init__(self, weights, tmaps, check=True):
        self.weights = {int(i): C for i, C in weights.items()}
        self.tmaps = {int(i): f for i, f in tmaps.items()}
        assert self.weights, "empty module needs one stored weight"
        self.floor = min(self.weights)
        self.ceiling = max(self.weights)
        for i in range(self.floor, self.ceiling):
            assert i in self.tmaps, "missing t-map at weight %d" % i
            assert self.tmaps[i].source is self.weights[i]
            assert self.tmaps[i].target is self.weights[i + 1]
        self.flat = all(self._tmap_injective(i)
                        for i in range(self.floor, self.ceiling))

    def _tmap_injective(self, i):
        f = self.tmaps[i]
        return all(is_injective(f.block(d))
                   for d in f.source.space.degrees())

    def component(self, i):
        if i < self.floor:
            return CochainComplex(GradedSpace({}), {})
        if i > self.ceiling:
            return self.weights[self.ceiling]
        return self.weights[i]

    def dims(self, i):
        C = self.component(i)
        return {d: C.space.dim(d) for d in C.space.degrees()}


def rees(V):
    """Rees functor: weight-i component is the level-i subcomplex, with t
    acting by the inclusions.  The output is torsion-free by construction."""
    weights = {}
    tmaps = {}
    for i in range(V.floor, V.ceiling + 1):
        weights[i] = V.level_complex(i)
    for i in range(V.floor, V.ceiling):
        src, tgt = weights[i], weights[i + 1]
        blocks = {}
        for d in src.space.degrees():
            entries = {}
            for j, l in enumerate(src.space.labels(d)):
                entries[(tgt.space.index(d, l), j)] = ONE
            blocks[d] = SparseMatrix(tgt.space.dim(d), src.space.dim(d), entries)
        tmaps[i] = ChainMap(src, tgt, blocks)
    return GradedRModule(weights, tmaps)


def phi(M):
    """Left adjoint of the Rees functor: colimit along t with levels the
    images of the weight components."""
    top = M.component(M.ceiling)
    # composite maps weight i -> ceiling
    composite = {}
    ident = {d: SparseMatrix.identity(top.space.dim(d))
             for d in top.space.degrees()}
    current = ident
    composite[M.ceiling] = current
    for i in range(M.ceiling - 1, M.floor - 1, -1):
        f = M.tmaps[i]
        current = {d: composite[i + 1].get(d, SparseMatrix.zero(
            top.space.dim(d), f.target.space.dim(d))).mul(f.block(d))
            for d in f.source.space.degrees()}
        composite[i] = current

    # adapted basis per degree: extend through the image flag
    new_labels = {}       # degree -> list of labels
    new_level_of = {}     # (degree, label) -> weight
    change = {}           # degree -> list of column vectors in top coords
    for d in top.space.degrees():
        chosen = []
        labels = []
        for i in range(M.floor, M.ceiling + 1):
            comp = M.component(i)
            mat = composite[i].get(d)
            if mat is None and comp.space.dim(d):
                mat = SparseMatrix.zero(top.space.dim(d), comp.space.dim(d))
            cols = [mat.column(j) for j in range(comp.space.dim(d))] if mat else []
            for col in cols:
                if col and in_span(chosen, top.space.dim(d), col) is None:
                    chosen.append(col)
                    label = "phi%d_%d" % (d, len(labels))
                    labels.append(label)
                    new_level_of[(d, label)] = i
        if len(chosen) != top.space.dim(d):
            raise FiltrationError(
                "stored weights do not exhaust the colimit in degree %d" % d)
        new_labels[d] = labels
        change[d] = chosen

    space = GradedSpace(new_labels)
    P = {d: span_matrix(change[d], top.space.dim(d)) for d in space.degrees()}
    Pinv = {d: invert(P[d]) for d in space.degrees()}
    diff = {}
    for d in space.degrees():
        if space.dim(d + 1) == 0:
            continue
        Mtop = top.diff_matrix(d)
        nd = Pinv[d + 1].mul(Mtop.mul(P[d]))
        if not nd.is_zero():
            diff[d] = nd
    total = CochainComplex(space, diff)
    levels = {}
    for i in range(M.floor, M.ceiling + 1):
        levels[i] = frozenset(k for k, w in new_level_of.items() if w <= i)
    if M.floor - 1 not in levels:
        levels[M.floor - 1] = frozenset()
    return FilteredComplex(total, levels)


def associated_graded(V):
    """gr_n = V_n / V_{n-1} with the induced differential; returns a dict
    level -> CochainComplex on the labels new at that level."""
    out = {}
    for n in range(V.floor, V.ceiling + 1):
        fresh = V.level(n) - V.level(n - 1)
        if not fresh:
            continue
        comps = {}
        for d in V.total.space.degrees():
            keep = [l for l in V.total.space.labels(d) if (d, l) in fresh]
            if keep:
                comps[d] = keep
        space = GradedSpace(comps)
        diff = {}
        for d in space.degrees():
            entries = {}
            for j, l in enumerate(space.labels(d)):
                img = V.total.d({(d, l): ONE})
                for (dd, l2), c in img.items():
                    if (dd, l2) in fresh:
                        entries[(space.index(dd, l2), j)] = c
            M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
            if not M.is_zero():
                diff[d] = M
        out[n] = CochainComplex(space, diff)
    return out


def is_admissible(V, kind, unit=None):
    """Admissibility of a filtration: coalgebra case needs X_{-1} = 0 and
    X_0 = k·unit; Lie case needs g_0 = 0.  Returns (bool, certificate)."""
    if kind == "coalgebra":
        if V.level(-1):
            return False, "X_{-1} != 0"
        lvl0 = V.level(0)
        if unit is None or lvl0 != frozenset({unit}):
            return False, "X_0 != k·1"
        return True, "ok"
    if kind == "lie":
        if V.level(0):
            return False, "g_0 != 0"
        return True, "ok"
    raise ValueError("kind must be 'coalgebra' or 'lie'")


def _induces_iso_on_h(f, d):
    """Does a chain map induce an isomorphism on H^d?"""
    ns, reps_s = cohomology_at(f.source, d)
    nt, _ = cohomology_at(f.target, d)
    if ns != nt:
        return False
    # images of source representatives must stay independent mod boundaries
    from .graded import component_vector
    prev = f.target.diff_matrix(d - 1)
    boundaries = [prev.column(j) for j in range(prev.cols)]
    boundaries = [b for b in boundaries if b]
    dim = f.target.space.dim(d)
    current = list(boundaries)
    for rep in reps_s:
        img = component_vector(f.target.space, d, f.apply(rep))
        if in_span(current, dim, img) is not None:
            return False
        current.append(img)
    return True


def filtered_qis_check(f, X, Y, window):
    """Check that a level-preserving map of filtered complexes induces
    cohomology isomorphisms on every stored level within a degree window."""
    lo, hi = window
    for i in range(min(X.floor, Y.floor), max(X.ceiling, Y.ceiling) + 1):
        src = subcomplex_on(X.total, X.level(i))
        tgt = subcomplex_on(Y.total, Y.level(i))
        # restrict f to the level; it must preserve the selection
        blocks = {}
        for d in src.space.degrees():
            entries = {}
            for j, l in enumerate(src.space.labels(d)):
                img = f.apply({(d, l): ONE})
                for (dd, l2), c in img.items():
                    if (dd, l2) not in Y.level(i):
                        raise FiltrationError(
                            "map does not preserve level %d" % i)
                    entries[(tgt.space.index(dd, l2), j)] = c
            blocks[d] = SparseMatrix(tgt.space.dim(d), src.space.dim(d), entries)
        for d in tgt.space.degrees():
            blocks.setdefault(d, SparseMatrix.zero(tgt.space.dim(d),
                                                   src.space.dim(d)))
        g = ChainMap(src, tgt, blocks)
        for d in range(lo, hi + 1):
            if not _induces_iso_on_h(g, d):
                return False
    return True


def rees_tensor_dims(MX, MY, max_weight):
    """Dimensions per (weight, degree) of the graded tensor product
    rees(X) ⊗_R rees(Y), computed from the coequalizer presentation."""
    out = {}
    for n in range(MX.floor + MY.floor, max_weight + 1):
        # generators: ⊕_{p+q=n} (MX_p ⊗ MY_q), relations from weight n-1
        gen_index = {}
        for p in range(MX.floor, n - MY.floor + 1):
            q = n - p
            A, B = MX.component(p), MY.component(q)
            for (da, la) in A.space.basis():
                for (db, lb) in B.space.basis():
                    gen_index[(p, da, la, db, lb)] = len(gen_index)
        rel_cols = []
        for p in range(MX.floor, n - 1 - MY.floor + 1):
            q = n - 1 - p
            A, B = MX.component(p), MY.component(q)
            tA = MX.tmaps.get(p)
            tB = MY.tmaps.get(q)
            for (da, la) in A.space.basis():
                for (db, lb) in B.space.basis():
                    col = {}
                    # (t a) ⊗ b
                    if p + 1 > MX.ceiling:
                        ta = {(da, la): ONE}
                    else:
                        ta = tA.apply({(da, la): ONE})
                    for (d2, l2), c in ta.items():
                        idx = gen_index[(p + 1, d2, l2, db, lb)]
                        col[idx] = col.get(idx, 0) + c
                    # minus a ⊗ (t b)
                    if q + 1 > MY.ceiling:
                        tb = {(db, lb): ONE}
                    else:
                        tb = tB.apply({(db, lb): ONE})
                    for (d2, l2), c in tb.items():
                        idx = gen_index[(p, da, la, d2, l2)]
                        col[idx] = col.get(idx, 0) - c
                    col = {i: Fraction(c) for i, c in col.items() if c}
                    if col:
                        rel_cols.append(col)
        # split by degree
        deg_of = {}
        for (p, da, la, db, lb), idx in gen_index.items():
            deg_of[idx] = da + db
        dims = {}
        for d in set(deg_of.values()):
            idxs = [i for i, dd in deg_of.items() if dd == d]
            reindex = {i: j for j, i in enumerate(idxs)}
            cols = []
            for col in rel_cols:
                if any(i in reindex for i in col):
                    cols.append({reindex[i]: c for i, c in col.items()})
            nrel = rank(span_matrix(cols, len(idxs))) if cols else 0
            dims[d] = len(idxs) - nrel
        out[n] = {d: v for d, v in dims.items() if v}
    return out
