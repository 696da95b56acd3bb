import random
from fractions import Fraction

import pytest

from lienerve.linalg import SparseMatrix, ONE, vec_add, vec_scale, vec_sub
from lienerve.graded import GradedSpace, CochainComplex, cohomology_at
from lienerve.algebra import dual_numbers, truncated_polynomial_algebra
from lienerve.lie import (DgLieAlgebra, LieError, verify_dgla, abelian_lie,
                          sl2, heisenberg, quadratic_ac, free_lie,
                          lyndon_words, witt_dimension, lower_central_series,
                          nilpotency_index, NilpotentDgLie, tensor_cdga_lie,
                          semidirect, EnvelopingTruncated,
                          symmetrization_bijective_per_length, bch,
                          GaugeElement, exp_element)


def test_sl2_axioms():
    g = sl2()
    ok, cert = verify_dgla(g)
    assert ok, cert
    e, f, h = (0, "e"), (0, "f"), (0, "h")
    assert g.bracket({e: ONE}, {f: ONE}) == {h: ONE}
    assert g.bracket({f: ONE}, {e: ONE}) == {h: -ONE}


def test_heisenberg_and_ac_axioms():
    assert verify_dgla(heisenberg())[0]
    assert verify_dgla(quadratic_ac())[0]


def test_jacobi_violation_rejected():
    space = GradedSpace({0: ["a", "b", "c"]})
    C = CochainComplex(space, {})
    a, b, c = (0, "a"), (0, "b"), (0, "c")
    bad = {(a, b): {c: ONE}, (b, c): {a: ONE}, (a, c): {a: ONE}}
    with pytest.raises(LieError):
        DgLieAlgebra(C, bad)


def test_leibniz_violation_rejected():
    # da = c, [a,b] = a: d[a,b] = c but [da,b] + [a,db] = [c,b] = 0
    space = GradedSpace({0: ["a", "b"], 1: ["c"]})
    C = CochainComplex(space, {0: SparseMatrix(1, 2, {(0, 0): ONE})})
    a, b = (0, "a"), (0, "b")
    with pytest.raises(LieError):
        DgLieAlgebra(C, {(a, b): {a: ONE}})


def test_degree_violation_rejected():
    space = GradedSpace({0: ["a", "b"], 1: ["c"]})
    C = CochainComplex(space, {})
    a, b = (0, "a"), (0, "b")
    with pytest.raises(LieError):
        DgLieAlgebra(C, {(a, b): {(1, "c"): ONE}})


def test_lyndon_word_counts_match_witt():
    for n_letters in (1, 2, 3):
        words = lyndon_words(n_letters, 5)
        by_len = {}
        for w in words:
            by_len[len(w)] = by_len.get(len(w), 0) + 1
        for w in range(1, 6):
            assert by_len.get(w, 0) == witt_dimension(n_letters, w)


def test_free_lie_even_dims_match_witt():
    fl = free_lie([("x", 0), ("y", 0)], 4)
    dims = fl.dims_by_weight()
    assert dims == {1: 2, 2: 1, 3: 2, 4: 3}
    fl3 = free_lie([("x", 0), ("y", 0), ("z", 0)], 3)
    assert fl3.dims_by_weight() == {1: 3, 2: 3, 3: 8}


def test_free_lie_axioms_small():
    fl = free_lie([("x", 0), ("y", 0)], 3)
    ok, cert = verify_dgla(fl.algebra)
    assert ok, cert


def test_free_lie_one_odd_generator():
    # one odd generator a: basis a, [a,a]; the triple bracket vanishes
    fl = free_lie([("a", 1)], 4)
    assert fl.dims_by_weight() == {1: 1, 2: 1}
    a = fl.generator_key(0)
    sq = fl.algebra.bracket({a: ONE}, {a: ONE})
    assert len(sq) == 1
    assert fl.algebra.bracket({a: ONE}, sq) == {}


def test_free_lie_mixed_degrees_axioms():
    fl = free_lie([("a", 1), ("b", 0)], 3)
    ok, cert = verify_dgla(fl.algebra)
    assert ok, cert
    # odd squares appear: [a,a] at weight 2
    assert fl.dims_by_weight()[2] == 2  # [a,b] and [a,a]


def test_free_lie_derivation_differential():
    # d a = -1/2 [a,a] on one odd degree-1 generator squares to zero
    fl_plain = free_lie([("a", 1)], 3)
    sq_key = [k for k, w in fl_plain.weight_of.items() if w == 2][0]
    from lienerve.lie import FreeLieTruncated
    fl = FreeLieTruncated([("a", 1)], 3,
                          differential_on_generators={0: {sq_key: Fraction(-1, 2)}})
    ok, cert = verify_dgla(fl.algebra)
    assert ok, cert
    a = fl.generator_key(0)
    assert fl.algebra.d({a: ONE}) == {sq_key: Fraction(-1, 2)}


def test_extend_lie_map():
    fl = free_lie([("x", 0), ("y", 0)], 2)
    h = heisenberg()
    table = fl.extend_lie_map(h, {0: {(0, "a"): ONE}, 1: {(0, "b"): ONE}})
    bracket_key = [k for k, w in fl.weight_of.items() if w == 2][0]
    assert table[bracket_key] == {(0, "c"): ONE}


def test_lower_central_series_heisenberg():
    h = heisenberg()
    series = lower_central_series(h)
    assert len(series[1]) == 1
    assert series[2] == []
    assert nilpotency_index(h) == 2


def test_nilpotency_abelian_and_sl2():
    space = GradedSpace({0: ["x", "y"]})
    g = abelian_lie(CochainComplex(space, {}))
    assert nilpotency_index(g) == 1
    assert nilpotency_index(sl2()) is None


def test_free_lie_nilpotency_equals_weight_bound():
    fl = free_lie([("x", 0), ("y", 0)], 3)
    assert nilpotency_index(fl.algebra) == 3


def test_tensor_cdga_lie_dual_numbers():
    g = tensor_cdga_lie(dual_numbers(1), sl2())
    assert g.space.dim(0) == 3
    assert g.space.dim(-1) == 3
    ok, cert = verify_dgla(g)
    assert ok, cert
    # [ε⊗e, ε⊗f] = ε²⊗h = 0
    ee = (-1, "ε⊗e")
    ef = (-1, "ε⊗f")
    assert g.bracket({ee: ONE}, {ef: ONE}) == {}


def test_tensor_cdga_lie_with_differential():
    # base: unit u, a (deg 0), b (deg 1), da = b, all ideal products zero
    space = GradedSpace({0: ["1", "a"], 1: ["b"]})
    C = CochainComplex(space, {0: SparseMatrix(1, 2, {(0, 1): ONE})})
    one, a, b = (0, "1"), (0, "a"), (1, "b")
    from lienerve.algebra import CommutativeDgAlgebra
    B = CommutativeDgAlgebra(C, {(one, one): {one: ONE},
                                 (one, a): {a: ONE}, (a, one): {a: ONE},
                                 (one, b): {b: ONE}, (b, one): {b: ONE}},
                             unit=one)
    g = tensor_cdga_lie(B, heisenberg())
    ok, cert = verify_dgla(g)
    assert ok, cert
    assert g.d({(0, "a⊗a"): ONE}) == {(1, "b⊗a"): ONE}


def test_semidirect_product():
    space = GradedSpace({0: ["x"]})
    g = abelian_lie(CochainComplex(space, {}))
    h_space = GradedSpace({0: ["a", "b"]})
    h = abelian_lie(CochainComplex(h_space, {}))
    action = {(0, "x"): {(0, "a"): {(0, "b"): ONE}}}
    s = semidirect(g, h, action)
    assert s.space.total_dim() == 3
    ok, cert = verify_dgla(s)
    assert ok, cert
    assert s.bracket({(0, "g:x"): ONE}, {(0, "h:a"): ONE}) == {(0, "h:b"): ONE}
    assert nilpotency_index(s) == 2


def test_semidirect_rejects_bad_action():
    space = GradedSpace({0: ["x"]})
    g = abelian_lie(CochainComplex(space, {}))
    h = heisenberg()
    # sending a -> a is not a derivation of [a,b] = c
    action = {(0, "x"): {(0, "a"): {(0, "a"): ONE}}}
    with pytest.raises(LieError):
        semidirect(g, h, action)


def test_enveloping_sl2_counts():
    env = EnvelopingTruncated(sl2(), 2)
    assert env.monomial_counts_by_length() == {0: 1, 1: 3, 2: 6}


def test_enveloping_sl2_relation():
    env = EnvelopingTruncated(sl2(), 2)
    e, f, h = (0, "e"), (0, "f"), (0, "h")
    ef = env.multiply({(e,): ONE}, {(f,): ONE})
    fe = env.multiply({(f,): ONE}, {(e,): ONE})
    assert vec_sub(ef, fe) == {(h,): ONE}


def test_enveloping_odd_square():
    env = EnvelopingTruncated(quadratic_ac(), 2)
    a, c = (1, "a"), (2, "c")
    # a·a = (1/2)[a,a] = c/2
    assert env.multiply({(a,): ONE}, {(a,): ONE}) == {(c,): Fraction(1, 2)}


def test_enveloping_associativity_random():
    rng = random.Random(11)
    env = EnvelopingTruncated(sl2(), 3)
    singles = [{(k,): ONE} for k in sl2().space.basis()]
    for _ in range(10):
        x, y, z = (rng.choice(singles) for _ in range(3))
        lhs = env.multiply(env.multiply(x, y), z)
        rhs = env.multiply(x, env.multiply(y, z))
        assert lhs == rhs


def test_symmetrization_bijective():
    assert symmetrization_bijective_per_length(EnvelopingTruncated(sl2(), 2))
    assert symmetrization_bijective_per_length(
        EnvelopingTruncated(quadratic_ac(), 2))
    assert symmetrization_bijective_per_length(
        EnvelopingTruncated(heisenberg(), 3))


def test_bch_heisenberg():
    h = NilpotentDgLie(heisenberg())
    assert h.index == 2
    a, b, c = (0, "a"), (0, "b"), (0, "c")
    z = bch(h.bracket, {a: ONE}, {b: ONE}, h.index)
    assert z == {a: ONE, b: ONE, c: Fraction(1, 2)}


def test_bch_depth3_free():
    # z = x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12
    fl = free_lie([("x", 0), ("y", 0)], 3)
    g = fl.algebra
    x = {fl.generator_key(0): ONE}
    y = {fl.generator_key(1): ONE}
    xy = g.bracket(x, y)
    expected = vec_add(vec_add(x, y), vec_scale(xy, Fraction(1, 2)))
    expected = vec_add(expected, vec_scale(g.bracket(x, xy), Fraction(1, 12)))
    expected = vec_add(expected, vec_scale(g.bracket(y, xy), Fraction(-1, 12)))
    assert bch(g.bracket, x, y, 3) == expected


def test_bch_group_laws():
    fl = free_lie([("x", 0), ("y", 0)], 4)
    host = NilpotentDgLie(fl.algebra, index=4)
    rng = random.Random(13)
    keys = [k for k in fl.space.basis()]
    def rand_el():
        return {k: Fraction(rng.randint(-2, 2)) for k in keys
                if rng.random() < 0.5}
    for _ in range(5):
        u = exp_element(host, rand_el())
        v = exp_element(host, rand_el())
        w = exp_element(host, rand_el())
        assert u.multiply(u.inverse()).is_identity()
        assert u.multiply(v).multiply(w) == u.multiply(v.multiply(w))


def test_gauge_element_rejects_wrong_degree():
    fl = free_lie([("a", 1)], 2)
    host = NilpotentDgLie(fl.algebra, index=2)
    with pytest.raises(LieError):
        GaugeElement(host, {fl.generator_key(0): ONE})
