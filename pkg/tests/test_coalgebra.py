from fractions import Fraction

import pytest

from lienerve.linalg import SparseMatrix, ONE
from lienerve.graded import GradedSpace, CochainComplex
from lienerve.algebra import (ArtinianDgAlgebra, base_field,
                              truncated_polynomial_algebra, dual_numbers)
from lienerve.coalgebra import (UnitalCoalgebra, CoalgebraError, CoalgebraMap,
                                verify_coalgebra, canonical_filtration,
                                is_unital, filtration_length,
                                canonical_filtered_complex, dual_artinian,
                                point_coalgebra, two_group_likes)
from lienerve.filtration import is_admissible


def exterior_two():
    """Λ(a, b) with a, b in degree -1: artinian local of order 2."""
    space = GradedSpace({-2: ["ab"], -1: ["a", "b"], 0: ["1"]})
    C = CochainComplex(space, {})
    one, a, b, ab = (0, "1"), (-1, "a"), (-1, "b"), (-2, "ab")
    product = {(one, one): {one: ONE}, (a, b): {ab: ONE}}
    for k in (a, b, ab):
        product[(one, k)] = {k: ONE}
        product[(k, one)] = {k: ONE}
    product[(b, a)] = {ab: -ONE}
    return ArtinianDgAlgebra(C, product, unit=one,
                             maximal_ideal=frozenset({a, b, ab}), order=2)


def dg_artinian():
    """k ⊕ m with m = span(x deg -1, y deg 0), dx = y, m² = 0."""
    space = GradedSpace({-1: ["x"], 0: ["1", "y"]})
    C = CochainComplex(space, {-1: SparseMatrix(2, 1, {(1, 0): ONE})})
    one, x, y = (0, "1"), (-1, "x"), (0, "y")
    product = {(one, one): {one: ONE}}
    for k in (x, y):
        product[(one, k)] = {k: ONE}
        product[(k, one)] = {k: ONE}
    return ArtinianDgAlgebra(C, product, unit=one,
                             maximal_ideal=frozenset({x, y}), order=1)


def coalgebra_corpus():
    return [point_coalgebra(),
            dual_artinian(dual_numbers(0)),
            dual_artinian(dual_numbers(2)),
            dual_artinian(truncated_polynomial_algebra(3)),
            dual_artinian(truncated_polynomial_algebra(4)),
            dual_artinian(exterior_two()),
            dual_artinian(dg_artinian())]


def test_point_coalgebra():
    X = point_coalgebra()
    assert verify_coalgebra(X)[0]
    assert is_unital(X)
    assert X.reduced().space.total_dim() == 0


def test_broken_counit_rejected():
    space = GradedSpace({0: ["1"]})
    C = CochainComplex(space, {})
    one = (0, "1")
    with pytest.raises(CoalgebraError):
        UnitalCoalgebra(C, {one: {(one, one): ONE}}, {}, one)


def test_dual_of_dual_numbers():
    X = dual_artinian(dual_numbers(0))
    assert verify_coalgebra(X)[0]
    one, eps = (0, "1"), (0, "ε")
    assert X.delta_basis(eps) == {(one, eps): ONE, (eps, one): ONE}
    # ε̂ is primitive, so Δ̄ vanishes on the 1-dim reduced part
    assert X.delta_bar_basis(eps) == {}
    assert X.reduced().space.total_dim() == 1


def test_dual_of_truncated_cubic():
    X = dual_artinian(truncated_polynomial_algebra(3))
    assert verify_coalgebra(X)[0]
    eps, eps2 = (0, "ε"), (0, "ε^2")
    assert X.delta_basis(eps2).get((eps, eps)) == ONE
    assert canonical_filtration(X, 0) == frozenset({(0, "1")})
    assert canonical_filtration(X, 1) == frozenset({(0, "1"), eps})
    assert len(canonical_filtration(X, 2)) == 3
    assert filtration_length(X) == 2


def test_filtration_stabilizes():
    X = dual_artinian(truncated_polynomial_algebra(3))
    total = X.space.total_dim()
    for n in (total, total + 1, total + 3):
        assert len(canonical_filtration(X, n)) == total


def test_two_group_likes_not_unital():
    X = two_group_likes()
    assert not is_unital(X)
    ok, cert = verify_coalgebra(X)
    assert not ok
    assert "exhausting" in cert
    # Δ̄(g - 1) = (g - 1)⊗(g - 1) never dies under iteration
    g = (0, "g")
    assert X.delta_bar_basis(g) == {(g, g): ONE}


def test_dual_exterior_signs():
    # two odd generators force genuine Koszul signs in Δ
    X = dual_artinian(exterior_two())
    ok, cert = verify_coalgebra(X)
    assert ok, cert
    ab = (2, "ab")
    a, b = (1, "a"), (1, "b")
    D = X.delta_basis(ab)
    assert D[(a, b)] == -D[(b, a)]


def test_dual_dg_artinian():
    X = dual_artinian(dg_artinian())
    ok, cert = verify_coalgebra(X)
    assert ok, cert
    # the dual differential sends ŷ to ±x̂
    y_hat = (0, "y")
    img = X.d({y_hat: ONE})
    assert set(img) == {(1, "x")}


def test_corpus_verifies_and_unital():
    for X in coalgebra_corpus():
        ok, cert = verify_coalgebra(X)
        assert ok, cert
        assert is_unital(X)


def test_filtration_length_bounded_by_order():
    for A in (dual_numbers(0), truncated_polynomial_algebra(3),
              truncated_polynomial_algebra(4), exterior_two(), dg_artinian()):
        assert filtration_length(dual_artinian(A)) <= A.order


def test_filtration_dims_match_quotients():
    # X_n = (A/m^{n+1})* so dim X_n = 1 + #(m-basis killed by m^{n+1})
    A = truncated_polynomial_algebra(4)
    X = dual_artinian(A)
    assert [len(canonical_filtration(X, n)) for n in range(4)] == [1, 2, 3, 4]


def test_delta_bar_respects_filtration():
    # Δ̄(x) ∈ X_n ⊗ X_n for x ∈ X_{n+1}
    for X in coalgebra_corpus():
        length = filtration_length(X)
        for n in range(length):
            upper = canonical_filtration(X, n + 1)
            lower = canonical_filtration(X, n)
            for k in upper:
                if k == X.unit:
                    continue
                for (a, b) in X.delta_bar_basis(k):
                    assert a in lower and b in lower


def test_canonical_filtration_admissible():
    for X in coalgebra_corpus():
        V = canonical_filtered_complex(X)
        ok, cert = is_admissible(V, "coalgebra", unit=X.unit)
        assert ok, cert


def test_dual_of_surjection_is_injective_coalgebra_map():
    big = dual_artinian(truncated_polynomial_algebra(3))
    small = dual_artinian(dual_numbers(0))
    # dual of k[ε]/(ε³) -> k[ε]/(ε²): include span(1̂, ε̂)
    blocks = {0: SparseMatrix(3, 2, {
        (big.space.index(0, "1"), small.space.index(0, "1")): ONE,
        (big.space.index(0, "ε"), small.space.index(0, "ε")): ONE})}
    f = CoalgebraMap(small, big, blocks)
    assert f.violation() is None


def test_coalgebra_map_rejects_non_counital():
    X = point_coalgebra()
    with pytest.raises(CoalgebraError):
        CoalgebraMap(X, X, {0: SparseMatrix.zero(1, 1)})


def test_base_field_dual_is_point():
    X = dual_artinian(base_field())
    assert X.space.total_dim() == 1
    assert verify_coalgebra(X)[0]
