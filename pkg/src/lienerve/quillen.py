"""The adjoint pair between unital dg coalgebras and dg Lie algebras:
symmetric-coalgebra construction on a Lie algebra, free-Lie construction on
a coalgebra, twisting cochains, the adjunction bijections with unit and
counit maps, homology via abelianization, and the standard-cofibrant
presentation of sl2.

Both functors produce infinite-dimensional objects in general; everything
here is truncated, the coalgebra side by symmetric degree N and the Lie
side by bracket weight W, and each operation states the window on which
the truncation is exact.
"""

from fractions import Fraction
from math import factorial

from .linalg import (SparseMatrix, ZERO, ONE, vec_add, vec_scale, vec_sub,
                     solve_affine, in_span, rank)
from .graded import (GradedSpace, CochainComplex, sym_multisets,
                     multiset_label, cohomology_at)
from .algebra import koszul_sign
from .lie import DgLieAlgebra, FreeLieTruncated, LieError, sl2
from .coalgebra import (UnitalCoalgebra, CoalgebraMap, CoalgebraError,
                        filtration_length, _delta_bar_iterate)


class QuillenError(Exception):
    pass


def shift_key(k):
    """Suspension s: a basis element of degree d names one of degree d-1."""
    return (k[0] - 1, k[1])


def unshift_key(k):
    return (k[0] + 1, k[1])


def wedge_canonical(word):
    """Sort a word of graded keys into the canonical multiset order,
    tracking the Koszul sign; None when an odd key repeats."""
    word = list(word)
    sign = ONE
    for i in range(1, len(word)):
        j = i
        while j > 0 and word[j] < word[j - 1]:
            if word[j][0] % 2 and word[j - 1][0] % 2:
                sign = -sign
            word[j], word[j - 1] = word[j - 1], word[j]
            j -= 1
    for i in range(1, len(word)):
        if word[i] == word[i - 1] and word[i][0] % 2:
            return None
    return tuple(word), sign


def _move_to_front_sign(degrees, i):
    sign = ONE
    for k in range(i):
        if degrees[i] % 2 and degrees[k] % 2:
            sign = -sign
    return sign


class ChevalleyCoalgebra:
    """⊕_{n<=N} S^n(g[1]) with the coderivation differential d0 + d1.

    d0 extends the internal differential of g[1]; d1 extends the bracket
    corestriction S^2(g[1]) -> g[1].  Both lower or preserve the symmetric
    degree, so the truncation is an honest subcoalgebra with d^2 = 0.
    """

    def __init__(self, g, N, check=True):
        self.g = g
        self.N = N
        shifted = GradedSpace({d - 1: labels for d, labels
                               in g.space.components.items()})
        self.shifted = shifted

        self.multisets = []
        for n in range(N + 1):
            self.multisets.extend(tuple(ms) for ms in sym_multisets(shifted, n))
        self.key_of = {}
        self.multiset_of = {}
        self.sym_degree = {}
        comps = {}
        for ms in self.multisets:
            deg = sum(d for d, _l in ms)
            key = (deg, multiset_label(ms))
            self.key_of[ms] = key
            self.multiset_of[key] = ms
            self.sym_degree[key] = len(ms)
            comps.setdefault(deg, []).append(key[1])
        space = GradedSpace(comps)
        self.unit = self.key_of[()]

        diff_entries = {}
        delta = {}
        for ms in self.multisets:
            key = self.key_of[ms]
            for tgt, c in self._differential_value(ms).items():
                diff_entries.setdefault(key[0], {})[(
                    space.index(tgt[0], tgt[1]),
                    space.index(key[0], key[1]))] = c
            delta[key] = self._delta_value(ms)
        diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
                for d, m in diff_entries.items()}
        complex_ = CochainComplex(space, diff)
        self.coalgebra = UnitalCoalgebra(complex_, delta, {self.unit: ONE},
                                         self.unit, check=check)
        self.space = space

    def _wedge(self, word):
        can = wedge_canonical(word)
        if can is None:
            return {}
        ms, sign = can
        if len(ms) > self.N:
            return {}
        return {self.key_of[ms]: sign}

    def _differential_value(self, ms):
        degs = [d for d, _l in ms]
        out = {}
        for i in range(len(ms)):
            # d0: apply -s∘d∘s^{-1} to the i-th factor
            sgn = _move_to_front_sign(degs, i)
            rest = ms[:i] + ms[i + 1:]
            for k2, c in self.g.d({unshift_key(ms[i]): ONE}).items():
                out = vec_add(out, vec_scale(
                    self._wedge((shift_key(k2),) + rest), -sgn * c))
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                sgn = _move_to_front_sign(degs, i)
                degs_wo = degs[:i] + degs[i + 1:]
                sgn *= _move_to_front_sign(degs_wo, j - 1)
                rest = ms[:i] + ms[i + 1:j] + ms[j + 1:]
                x, y = unshift_key(ms[i]), unshift_key(ms[j])
                # corestriction: sx·sy -> (-1)^{|x|} s[x,y]
                bsgn = ONE if x[0] % 2 == 0 else -ONE
                for k2, c in self.g.bracket_basis(x, y).items():
                    out = vec_add(out, vec_scale(
                        self._wedge((shift_key(k2),) + rest), sgn * bsgn * c))
        return out

    def _delta_value(self, ms):
        n = len(ms)
        degs = [d for d, _l in ms]
        out = {}
        for mask in range(2 ** n):
            left = tuple(ms[i] for i in range(n) if mask & (1 << i))
            right = tuple(ms[i] for i in range(n) if not mask & (1 << i))
            sign = ONE
            for p in range(n):
                if mask & (1 << p):
                    continue
                for q in range(p + 1, n):
                    if mask & (1 << q) and degs[p] % 2 and degs[q] % 2:
                        sign = -sign
            out = vec_add(out, {(self.key_of[left], self.key_of[right]): sign})
        return out


def chevalley_C(g, N, check=True):
    return ChevalleyCoalgebra(g, N, check=check)


class CobarLie:
    """Free Lie algebra on reduced(X)[-1], truncated at bracket weight W,
    with the differential extending the internal differential and the
    reduced comultiplication."""

    def __init__(self, X, W):
        self.X = X
        self.W = W
        reduced_complex = X.reduced()
        self.reduced_keys = list(reduced_complex.space.basis())
        self.gen_index = {k: i for i, k in enumerate(self.reduced_keys)}
        generators = [(l, d + 1) for (d, l) in self.reduced_keys]

        def dgen(fl, bracket):
            table = {}
            for i, key in enumerate(self.reduced_keys):
                val = {}
                for k2, c in reduced_complex.d({key: ONE}).items():
                    val = vec_add(val, {fl.generator_key(self.gen_index[k2]):
                                        -c})
                for (a, b), c in X.delta_bar_basis(key).items():
                    ga = fl.generator_key(self.gen_index[a])
                    gb = fl.generator_key(self.gen_index[b])
                    sgn = ONE if a[0] % 2 == 0 else -ONE
                    val = vec_add(val, vec_scale(bracket.get((ga, gb), {}),
                                                 Fraction(-1, 2) * sgn * c))
                table[i] = val
            return table

        self.fl = FreeLieTruncated(generators, W,
                                   differential_on_generators=dgen)
        self.algebra = self.fl.algebra
        self.space = self.fl.space

    def generator_key(self, reduced_key):
        return self.fl.generator_key(self.gen_index[reduced_key])


def cobar_L(X, W):
    return CobarLie(X, W)


def convolution_lie(X, g, check=True):
    """The convolution dg Lie algebra Hom(X̄, g) with bracket
    [f,h] = μ ∘ (f⊗h) ∘ Δ̄ and differential f -> d∘f - (-1)^{|f|} f∘d."""
    xkeys = [k for k in X.space.basis() if k != X.unit]
    gkeys = list(g.space.basis())

    def fkey(kx, kg):
        return (kg[0] - kx[0], "%s[%d]↦%s[%d]" % (kx[1], kx[0], kg[1], kg[0]))

    comps = {}
    for kx in xkeys:
        for kg in gkeys:
            d, l = fkey(kx, kg)
            comps.setdefault(d, []).append(l)
    space = GradedSpace(comps)

    bracket = {}
    for kx1 in xkeys:
        for kg1 in gkeys:
            for kx2 in xkeys:
                for kg2 in gkeys:
                    deg2 = kg2[0] - kx2[0]
                    val = {}
                    for x in xkeys:
                        c = X.delta_bar_basis(x).get((kx1, kx2), ZERO)
                        if not c:
                            continue
                        sgn = koszul_sign(deg2, kx1[0])
                        for kw, cw in g.bracket_basis(kg1, kg2).items():
                            val = vec_add(val, {fkey(x, kw): sgn * c * cw})
                    if val:
                        bracket[(fkey(kx1, kg1), fkey(kx2, kg2))] = val

    reduced_complex = X.reduced()
    diff_entries = {}
    for kx in xkeys:
        for kg in gkeys:
            src = fkey(kx, kg)
            img = {}
            for kw, c in g.d({kg: ONE}).items():
                img = vec_add(img, {fkey(kx, kw): c})
            sgn = -ONE if src[0] % 2 == 0 else ONE
            for ky in xkeys:
                c = reduced_complex.d({ky: ONE}).get(kx, ZERO)
                if c:
                    img = vec_add(img, {fkey(ky, kg): sgn * c})
            for tgt, c in img.items():
                diff_entries.setdefault(src[0], {})[(
                    space.index(tgt[0], tgt[1]),
                    space.index(src[0], src[1]))] = c
    diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
            for d, m in diff_entries.items()}
    complex_ = CochainComplex(space, diff)
    return DgLieAlgebra(complex_, bracket, check=check)


class TwistingCochain:
    """Degree-1 element τ of Hom(X̄, g) satisfying dτ + ½[τ,τ] = 0,
    stored as a table reduced-key -> element of g."""

    def __init__(self, X, g, table, check=True):
        self.X = X
        self.g = g
        self.table = {}
        for k, val in table.items():
            val = {kk: Fraction(c) for kk, c in val.items() if c}
            for (d, _l) in val:
                if d != k[0] + 1:
                    raise QuillenError("twisting cochain is not of degree 1")
            if val:
                self.table[k] = val
        if check:
            cert = self.mc_violation()
            if cert:
                raise QuillenError(cert)

    def value(self, reduced_key):
        return dict(self.table.get(reduced_key, {}))

    def mc_violation(self):
        reduced_complex = self.X.reduced()
        for k in reduced_complex.space.basis():
            total = self.g.d(self.value(k))
            for k2, c in reduced_complex.d({k: ONE}).items():
                total = vec_add(total, vec_scale(self.value(k2), c))
            for (a, b), c in self.X.delta_bar_basis(k).items():
                sgn = ONE if a[0] % 2 == 0 else -ONE
                total = vec_add(total, vec_scale(
                    self.g.bracket(self.value(a), self.value(b)),
                    Fraction(1, 2) * sgn * c))
            if total:
                return "Maurer-Cartan fails at %r" % (k,)
        return None


def sample_twisting_cochain(X, g, rng, tries=8):
    """Random twisting cochain X̄ -> g, found by solving the MC equation
    stage by stage along the canonical filtration of X (the bracket term
    only sees strictly lower stages, so each stage is an affine system).
    Returns None if sampling keeps hitting inconsistent stages."""
    from .coalgebra import canonical_filtration, filtration_length
    length = filtration_length(X)
    levels = [canonical_filtration(X, n) for n in range(length + 1)]
    reduced_complex = X.reduced()
    rkeys = list(reduced_complex.space.basis())
    stage_of = {}
    for k in rkeys:
        for n, level in enumerate(levels):
            if k in level:
                stage_of[k] = n
                break
    for _attempt in range(tries):
        table = {}
        ok = True
        for n in range(1, length + 1):
            stage_keys = [k for k in rkeys if stage_of[k] == n]
            if not stage_keys:
                continue
            # unknowns: coefficients of τ(k) in g^{deg k + 1}
            var_index = {}
            for k in stage_keys:
                for kg in g.space.basis():
                    if kg[0] == k[0] + 1:
                        var_index[(k, kg)] = len(var_index)
            rows = {}
            rhs = {}
            eqn = {}

            def eq_row(k, kg):
                if (k, kg) not in eqn:
                    eqn[(k, kg)] = len(eqn)
                return eqn[(k, kg)]

            for k in stage_keys:
                # linear: d_g τ(k)
                for (kk, kg), idx in var_index.items():
                    if kk != k:
                        continue
                    for kw, c in g.d({kg: ONE}).items():
                        r = eq_row(k, kw)
                        rows[(r, idx)] = rows.get((r, idx), ZERO) + c
                # linear: τ(d k) — d preserves the stage
                for k2, c in reduced_complex.d({k: ONE}).items():
                    if stage_of.get(k2) == n:
                        for kg in g.space.basis():
                            if (k2, kg) in var_index:
                                r = eq_row(k, kg)
                                idx = var_index[(k2, kg)]
                                rows[(r, idx)] = rows.get((r, idx), ZERO) + c
                    else:
                        for kg, cg in table.get(k2, {}).items():
                            r = eq_row(k, kg)
                            rhs[r] = rhs.get(r, ZERO) + c * cg
                # quadratic in lower stages only
                for (a, b), c in X.delta_bar_basis(k).items():
                    sgn = ONE if a[0] % 2 == 0 else -ONE
                    br = g.bracket(table.get(a, {}), table.get(b, {}))
                    for kw, cw in br.items():
                        r = eq_row(k, kw)
                        rhs[r] = rhs.get(r, ZERO) + \
                            Fraction(1, 2) * sgn * c * cw
            M = SparseMatrix(len(eqn), len(var_index), rows)
            sol = solve_affine(M, {r: -c for r, c in rhs.items()})
            if sol is None:
                ok = False
                break
            x0, kernel = sol
            pick = dict(x0)
            for kv in kernel:
                coeff = Fraction(rng.randint(-2, 2))
                if coeff:
                    for i, c in kv.items():
                        s = pick.get(i, ZERO) + coeff * c
                        pick[i] = s
            for (k, kg), idx in var_index.items():
                c = pick.get(idx, ZERO)
                if c:
                    table.setdefault(k, {})[kg] = c
        if ok:
            return TwistingCochain(X, g, table)
    return None


class LieAlgebraMap:
    """Map of dg Lie algebras given by a value table on source basis keys.

    When the source is a bracket-weight truncation, pass weight_of/cap so
    bracket preservation is only required below the cap.
    """

    def __init__(self, source, target, table, weight_of=None, cap=None,
                 check=True):
        self.source = source
        self.target = target
        self.table = {k: {kk: Fraction(c) for kk, c in v.items() if c}
                      for k, v in table.items()}
        self.weight_of = weight_of
        self.cap = cap
        if check:
            cert = self.violation()
            if cert:
                raise QuillenError(cert)

    def apply(self, x):
        out = {}
        for k, c in x.items():
            out = vec_add(out, vec_scale(self.table.get(k, {}), c))
        return out

    def violation(self):
        keys = list(self.source.space.basis())
        for k in keys:
            if self.weight_of is not None and self.weight_of[k] + 1 > self.cap:
                # d on a top-weight element is itself truncated
                continue
            lhs = self.apply(self.source.d({k: ONE}))
            rhs = self.target.d(self.apply({k: ONE}))
            if lhs != rhs:
                return "not a chain map at %r" % (k,)
        for k1 in keys:
            for k2 in keys:
                if self.weight_of is not None and \
                        self.weight_of[k1] + self.weight_of[k2] > self.cap:
                    continue
                lhs = self.apply(self.source.bracket_basis(k1, k2))
                rhs = self.target.bracket(self.apply({k1: ONE}),
                                          self.apply({k2: ONE}))
                if lhs != rhs:
                    return "bracket not preserved at (%r, %r)" % (k1, k2)
        return None


# ---------------------------------------------------------------------------
# Adjunction

def coalgebra_map_from_twisting(tau, N, check=True, chev=None):
    """The coalgebra map X -> ⊕_{n<=N} S^n(g[1]) determined by τ:
    x -> ε(x)·1 + Σ_n (1/n!) (sτ)^{⊗n}(Δ̄-iterate of x)."""
    X, g = tau.X, tau.g
    length = filtration_length(X)
    if N < length:
        raise QuillenError("symmetric bound %d below filtration length %d"
                           % (N, length))
    if chev is None:
        chev = chevalley_C(g, N, check=check)
    blocks = {}
    for k in X.space.basis():
        value = {}
        eps = X.counit_table.get(k, ZERO)
        if eps:
            value[chev.unit] = eps
        for n in range(1, length + 1):
            words = _delta_bar_iterate(X, n - 1)[k]
            for word, c in words.items():
                # expand the product of the sτ(k_i), all of degree 0
                current = {(): c * Fraction(1, factorial(n))}
                for kx in word:
                    nxt = {}
                    for w, cc in current.items():
                        for kg, cg in tau.value(kx).items():
                            nxt = vec_add(nxt, {w + (shift_key(kg),): cc * cg})
                    current = nxt
                for w, cc in current.items():
                    value = vec_add(value, vec_scale(chev._wedge(w), cc))
        d = k[0]
        for (dd, l), c in value.items():
            assert dd == d
            blocks.setdefault(d, {})[(
                chev.space.index(dd, l), X.space.index(d, k[1]))] = c
    blocks = {d: SparseMatrix(chev.space.dim(d), X.space.dim(d), m)
              for d, m in blocks.items()}
    return CoalgebraMap(X, chev.coalgebra, blocks, check=check), chev


def lie_map_from_twisting(tau, W, check=True, cobar=None):
    """The Lie map ℒ(X) -> g determined by τ: generator s^{-1}x̄ -> τ(x̄)."""
    X, g = tau.X, tau.g
    length = filtration_length(X)
    if W < length:
        raise QuillenError("weight bound %d below filtration length %d"
                           % (W, length))
    if cobar is None:
        cobar = CobarLie(X, W)
    on_gens = {i: tau.value(k) for i, k in enumerate(cobar.reduced_keys)}
    table = cobar.fl.extend_lie_map(g, on_gens)
    return LieAlgebraMap(cobar.algebra, g, table,
                         weight_of=cobar.fl.weight_of, cap=W,
                         check=check), cobar


def adjunction_transport(tau, N, W, check=True):
    """Both adjuncts of a twisting cochain."""
    F, chev = coalgebra_map_from_twisting(tau, N, check=check)
    G, cobar = lie_map_from_twisting(tau, W, check=check)
    return F, chev, G, cobar


def twisting_from_coalgebra_map(F, chev, check=True):
    """Recover τ as the corestriction of F to S^1(g[1])."""
    X = F.source
    table = {}
    for k in X.space.basis():
        if k == X.unit:
            continue
        val = {}
        for kk, c in F.apply(X._adapted(k)).items():
            ms = chev.multiset_of[kk]
            if len(ms) == 1:
                val = vec_add(val, {unshift_key(ms[0]): c})
        table[k] = val
    return TwistingCochain(X, chev.g, table, check=check)


def twisting_from_lie_map(G, cobar, check=True):
    """Recover τ as the restriction of G to the generators."""
    table = {k: G.table.get(cobar.generator_key(k), {})
             for k in cobar.reduced_keys}
    return TwistingCochain(cobar.X, G.target, table, check=check)


def universal_twisting(X, W):
    """τ_X in Hom(X̄, ℒ(X)): x̄ -> the generator s^{-1}x̄."""
    cobar = CobarLie(X, W)
    table = {k: {cobar.generator_key(k): ONE} for k in cobar.reduced_keys}
    return TwistingCochain(X, cobar.algebra, table), cobar


def unit_map(X, W, N, check=True):
    """i_X: X -> 𝒞(ℒ(X)); returns (coalgebra map, chevalley of ℒX, cobar)."""
    tau, cobar = universal_twisting(X, W)
    F, chev = coalgebra_map_from_twisting(tau, N, check=check)
    return F, chev, cobar


def counit_map(g, N, W, check=True):
    """p_g: ℒ(𝒞(g)) -> g; returns (Lie map, chevalley, cobar of 𝒞g)."""
    chev = chevalley_C(g, N, check=check)
    X = chev.coalgebra
    table = {}
    for k in X.space.basis():
        if k == X.unit:
            continue
        ms = chev.multiset_of[k]
        table[k] = {unshift_key(ms[0]): ONE} if len(ms) == 1 else {}
    tau = TwistingCochain(X, g, table, check=check)
    G, cobar = lie_map_from_twisting(tau, W, check=check)
    return G, chev, cobar


def cobar_functor_map(f, W):
    """ℒ(f) for a coalgebra map f: X -> Y, induced on generators."""
    src = CobarLie(f.source, W)
    tgt = CobarLie(f.target, W)
    on_gens = {}
    for i, k in enumerate(src.reduced_keys):
        img = tgt.X.project(f.apply(f.source._adapted(k)))
        on_gens[i] = {tgt.generator_key(k2): c for k2, c in img.items()}
    table = src.fl.extend_lie_map(tgt.algebra, on_gens)
    return LieAlgebraMap(src.algebra, tgt.algebra, table,
                         weight_of=src.fl.weight_of, cap=W,
                         check=False), src, tgt


def chain_splitting(F):
    """A degree-wise splitting q of an injective chain map F with
    q∘F = id and q∘d = d∘q, or None if none exists."""
    src, tgt = F.source, F.target
    if hasattr(src, "complex"):
        src_c, tgt_c = src.complex, tgt.complex
    else:
        src_c, tgt_c = src, tgt
    degrees = sorted(set(src_c.space.degrees()) | set(tgt_c.space.degrees()))
    var_index = {}
    for d in degrees:
        for i in range(src_c.space.dim(d)):
            for j in range(tgt_c.space.dim(d)):
                var_index[(d, i, j)] = len(var_index)
    rows = {}
    rhs = {}
    row_count = 0

    def add_equation(coeffs, value):
        nonlocal row_count
        for v, c in coeffs.items():
            if c:
                rows[(row_count, var_index[v])] = c
        if value:
            rhs[row_count] = value
        row_count += 1

    for d in degrees:
        # q∘F = id on degree d
        Fd = F.blocks.get(d, SparseMatrix.zero(tgt_c.space.dim(d),
                                               src_c.space.dim(d)))
        for i in range(src_c.space.dim(d)):
            for i2 in range(src_c.space.dim(d)):
                coeffs = {}
                for (r, c_), cval in Fd.entries.items():
                    if c_ == i2:
                        coeffs[(d, i, r)] = cval
                add_equation(coeffs, ONE if i == i2 else ZERO)
        # q∘d_tgt = d_src∘q from degree d to d+1
        dT = tgt_c.diff_matrix(d)
        dS = src_c.diff_matrix(d)
        for i in range(src_c.space.dim(d + 1)):
            for j in range(tgt_c.space.dim(d)):
                coeffs = {}
                for (r, c_), cval in dT.entries.items():
                    if c_ == j:
                        coeffs[(d + 1, i, r)] = \
                            coeffs.get((d + 1, i, r), ZERO) + cval
                for (r, c_), cval in dS.entries.items():
                    if r == i:
                        coeffs[(d, c_, j)] = \
                            coeffs.get((d, c_, j), ZERO) - cval
                add_equation(coeffs, ZERO)
    M = SparseMatrix(row_count, len(var_index), rows)
    sol = solve_affine(M, rhs)
    if sol is None:
        return None
    x0 = sol[0]
    out = {}
    for (d, i, j), idx in var_index.items():
        c = x0.get(idx, ZERO)
        if c:
            out.setdefault(d, {})[(i, j)] = c
    return {d: SparseMatrix(src_c.space.dim(d), tgt_c.space.dim(d), m)
            for d, m in out.items()}


# ---------------------------------------------------------------------------
# Homology via the reduced coalgebra, abelianization, sl2 example

def abelianization(g):
    """g/[g,g] as a cochain complex.

    For a weight-truncated free Lie algebra this is the generator space
    with the weight-1 part of the differential; in general the quotient is
    computed by linear algebra."""
    if isinstance(g, FreeLieTruncated):
        gen_keys = [g.generator_key(i) for i in range(len(g.generators))]
        comps = {}
        for (d, l) in gen_keys:
            comps.setdefault(d, []).append(l)
        space = GradedSpace(comps)
        diff_entries = {}
        keep = set(gen_keys)
        for k in gen_keys:
            for k2, c in g.algebra.d({k: ONE}).items():
                if k2 in keep:
                    diff_entries.setdefault(k[0], {})[(
                        space.index(k2[0], k2[1]),
                        space.index(k[0], k[1]))] = c
        diff = {d: SparseMatrix(space.dim(d + 1), space.dim(d), m)
                for d, m in diff_entries.items()}
        return CochainComplex(space, diff)

    # general case: quotient by the span of all brackets
    bracket_span = {}
    for k1 in g.space.basis():
        for k2 in g.space.basis():
            v = g.bracket_basis(k1, k2)
            if v:
                d = k1[0] + k2[0]
                vec = {g.space.index(dd, l): c for (dd, l), c in v.items()}
                bracket_span.setdefault(d, []).append(vec)
    chosen = {}
    for d in g.space.degrees():
        span = list(bracket_span.get(d, []))
        picks = []
        for j in range(g.space.dim(d)):
            cand = {j: ONE}
            if in_span(span, g.space.dim(d), cand) is None:
                picks.append(j)
                span.append(cand)
        chosen[d] = picks
    comps = {d: ["ab_%s" % g.space.labels(d)[j] for j in chosen[d]]
             for d in g.space.degrees() if chosen[d]}
    space = GradedSpace(comps)

    def project(d, vec):
        # coordinates of the class of vec in the chosen complement
        span = bracket_span.get(d, [])
        cols = list(span) + [{j: ONE} for j in chosen[d]]
        coords = in_span(cols, g.space.dim(d), vec)
        assert coords is not None
        return {i - len(span): c for i, c in coords.items()
                if i >= len(span)}

    diff = {}
    for d in g.space.degrees():
        entries = {}
        for jj, j in enumerate(chosen[d]):
            label = g.space.labels(d)[j]
            img = g.d({(d, label): ONE})
            vec = {g.space.index(dd, l): c for (dd, l), c in img.items()}
            if chosen.get(d + 1):
                for i, c in project(d + 1, vec).items():
                    entries[(i, jj)] = c
        M = SparseMatrix(space.dim(d + 1), space.dim(d), entries)
        if not M.is_zero():
            diff[d] = M
    return CochainComplex(space, diff)


def homology_C_bar(g, N, window, check=False):
    """Cohomology dimensions of the reduced symmetric coalgebra on g,
    degree by degree over the window (inclusive pair).

    Degrees whose boundaries could receive contributions from symmetric
    degree N+1 are invalid at this bound; asking for them is an error that
    reports the excluded degrees."""
    chev = chevalley_C(g, N, check=check)
    red = chev.coalgebra.reduced()
    has_bracket = any(g.bracket_basis(k1, k2)
                      for k1 in g.space.basis() for k2 in g.space.basis())
    invalid = set()
    if has_bracket:
        for ms in sym_multisets(chev.shifted, N + 1):
            invalid.add(sum(d for d, _l in ms) + 1)
    lo, hi = window
    requested = list(range(lo, hi + 1))
    bad = sorted(set(requested) & invalid)
    if bad:
        raise QuillenError("window includes degrees %s not valid at "
                           "symmetric bound %d" % (bad, N))
    return {d: cohomology_at(red, d)[0] for d in requested}


class Sl2Example:
    """Standard-cofibrant presentation: free Lie algebra on e, f, h in
    degree 0 and x, y, z in degree -1 with dx = [h,e] - 2e,
    dy = [h,f] + 2f, dz = [e,f] - h, plus the surjection onto sl2."""

    def __init__(self, W=2):
        def dgen(fl, bracket):
            e = fl.generator_key(0)
            f = fl.generator_key(1)
            h = fl.generator_key(2)

            def br(k1, k2):
                val = dict(bracket.get((k1, k2), {}))
                return val

            return {3: vec_add(br(h, e), {e: Fraction(-2)}),
                    4: vec_add(br(h, f), {f: Fraction(2)}),
                    5: vec_add(br(e, f), {h: -ONE})}

        self.fl = FreeLieTruncated(
            [("e", 0), ("f", 0), ("h", 0), ("x", -1), ("y", -1), ("z", -1)],
            W, differential_on_generators=dgen)
        self.algebra = self.fl.algebra
        self.target = sl2()
        on_gens = {0: {(0, "e"): ONE}, 1: {(0, "f"): ONE},
                   2: {(0, "h"): ONE}, 3: {}, 4: {}, 5: {}}
        table = self.fl.extend_lie_map(self.target, on_gens)
        self.projection = LieAlgebraMap(self.algebra, self.target, table,
                                        weight_of=self.fl.weight_of, cap=W)

    def abelianization(self):
        return abelianization(self.fl)


def sl2_example(W=2):
    return Sl2Example(W)
