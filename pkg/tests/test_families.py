from fractions import Fraction
from itertools import combinations

import pytest

from oracles import case_a_mismatches
from wnlie.errors import CaseARequiresSlN, DuplicatePuncture, NotAffine, NotCommutativeAssociative, NotTraceless, ParseError
from wnlie.exactla import Subspace
from wnlie.families import (
    INF,
    FAMILIES,
    CoordinateAlgebra,
    RationalVectorField,
    affine_construct,
    affine_coordinatize,
    base_field,
    derivation_transport,
    equivariant_products,
    from_family_json,
    ideal_shape_check,
    is_lie_isomorphism,
    kn_genus0,
    loop,
    matrix_algebra,
    product_algebra,
    simple_extension,
    standard_embedding,
    symmetric_product,
    tensor_algebra,
    tensor_derivation,
    truncated_polynomials,
    virasoro_hat,
    witt,
)
from wnlie.fdlie import derivations, jacobi_defect, simple_quotients, sl2, sl2_with_module, sl_n, solvable_radical
from wnlie.fdlie.zoo import matrix_unit
from wnlie.graded import Window, WindowedView


def test_witt_brackets():
    g = witt()
    assert g.hom_bracket((1,), 0, (2,), 0) == {0: 1}
    assert g.hom_bracket((3,), 0, (3,), 0) == {}
    assert g.dim((-1,)) == 1
    assert witt("polynomial").dim((-2,)) == 0 and witt("polynomial").dim((-1,)) == 1
    assert witt("positive").dim((0,)) == 0


def test_virasoro_hat():
    v = virasoro_hat()
    assert v.dim((0,)) == 2
    for m in range(-4, 5):
        assert v.hom_bracket((0,), 1, (m,), 0) == {}
    assert v.cocycle.value(1) == 0
    assert v.cocycle.value(3) / v.cocycle.value(2) == 4
    # [L_2, L_-2] = -4 L_0 + w_2 c
    assert v.hom_bracket((2,), 0, (-2,), 0) == {0: -4, 1: 1}
    view = WindowedView(v, Window.radius(5))
    assert view.interior_jacobi_violations() == []


def test_kn_single_puncture_is_laurent_witt():
    k = kn_genus0([0])
    for a in range(-3, 4):
        for b in range(-3, 4):
            f, g = RationalVectorField.monomial(a), RationalVectorField.monomial(b)
            assert k.bracket(f, g) == RationalVectorField.monomial(a + b - 1).scale(b - a)
    w = k.as_witt()
    for n in range(-3, 4):
        for m in range(-3, 4):
            assert w.hom_bracket((n,), 0, (m,), 0) == witt().hom_bracket((n,), 0, (m,), 0)


def test_kn_errors():
    with pytest.raises(DuplicatePuncture):
        kn_genus0([0, 0])
    with pytest.raises(ValueError):
        kn_genus0([0]).element(parts={1: [1]})
    with pytest.raises(ValueError):
        kn_genus0([0, 1]).as_witt()


def test_kn_partial_fractions():
    # 1/(t(t-1)) = 1/(t-1) - 1/t
    f = RationalVectorField.make((), {0: [-1], 1: [1]})
    num, den = f.num_den()
    assert num == (Fraction(1),)
    assert den == (Fraction(0), Fraction(-1), Fraction(1))
    assert (f - f) == RationalVectorField.make()


def test_kn_filtration_and_symbols():
    k = kn_genus0([0, 1])
    t = RationalVectorField.monomial
    assert k.filtration_index(t(1)) == 0
    assert k.symbol(t(3)) == (2, Fraction(1))
    pole = t(-1, 1)
    assert k.filtration_index(pole, at=1) == 2
    assert k.filtration_index(pole) == 0
    with pytest.raises(ValueError):
        k.filtration_index(pole, at=5)


def test_kn_symbol_bracket_preserving():
    k = kn_genus0([0, 1])
    basis = k.window_basis(6, 3)
    for at in (INF, 0):
        for f, g in combinations(basis, 2):
            n, cf = k.symbol(f, at)
            m, cg = k.symbol(g, at)
            if not (cf and cg):
                continue
            h = k.bracket(f, g)
            assert k.filtration_index(h, at) <= n + m
            assert k.symbol(h, at, level=n + m) == (n + m, (m - n) * cf * cg)


def test_kn_filtration_subspace():
    k = kn_genus0([0, 1])
    basis = k.window_basis(5, 2)
    g2 = k.filtration_subspace(basis, 2)
    for r in g2.rows:
        from wnlie.families import combine

        assert k.filtration_index(combine(basis, r)) <= 2


def test_coordinate_algebras():
    a = truncated_polynomials(3)
    assert a.is_commutative and a.is_associative and a.nilpotency_index() == 3
    m = matrix_algebra(2)
    assert m.dim == 4 and not m.is_commutative and m.is_associative
    f = simple_extension([1, 0, 1])
    assert f.is_commutative and f.nilradical().dim == 0
    p = product_algebra(base_field(), base_field())
    assert p.dim == 2 and p.is_commutative
    assert CoordinateAlgebra.from_json(a.to_json()).mult == a.mult


def test_tensor_algebra_examples():
    g = tensor_algebra(sl2(), truncated_polynomials(2))
    assert g.dim == 6
    rad = solvable_radical(g)
    assert rad == Subspace.coordinate(6, [3, 4, 5])
    g1 = tensor_algebra(sl2(), base_field())
    eye = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert is_lie_isomorphism(g1, sl2(), eye)
    g2 = tensor_algebra(sl2(), product_algebra(base_field(), base_field()))
    assert len(simple_quotients(g2)) == 2
    with pytest.raises(NotCommutativeAssociative):
        tensor_algebra(sl2(), matrix_algebra(2))


def test_symmetric_product():
    e12, e21 = matrix_unit(0, 1, 3), matrix_unit(1, 0, 3)
    got = symmetric_product(3, e12, e21)
    third = Fraction(1, 3)
    assert got == [[Fraction(1, 2) - third, 0, 0], [0, Fraction(1, 2) - third, 0], [0, 0, -third]]
    assert symmetric_product(3, e21, e12) == got
    h = [[Fraction(1), 0], [0, Fraction(-1)]]
    assert symmetric_product(2, h, h) == [[0, 0], [0, 0]]
    with pytest.raises(NotTraceless):
        symmetric_product(2, [[1, 0], [0, 0]], h)


def test_case_b_and_collapse():
    a = truncated_polynomials(3)
    assert jacobi_defect(affine_construct(sl2(), a, "b")) is None
    g = affine_construct(sl_n(3), truncated_polynomials(2), "a")
    assert jacobi_defect(g) is None
    assert g.structurally_equal(affine_construct(sl_n(3), truncated_polynomials(2), "b"))
    with pytest.raises(CaseARequiresSlN):
        affine_construct(sl2(), matrix_algebra(2), "a")


def test_case_a_defect_matches_block_matrix_oracle():
    g = affine_construct(sl_n(3), matrix_algebra(2), "a")
    assert jacobi_defect(g) is not None
    bad, nonzero, checked = case_a_mismatches(g, samples=150)
    assert bad == 0 and nonzero > 0 and checked == 150


def test_equivariant_products():
    assert equivariant_products(sl2()) == 1
    assert equivariant_products(sl_n(3)) == 2


def test_coordinatize_roundtrip():
    g = tensor_algebra(sl2(), truncated_polynomials(3))
    c = affine_coordinatize(g, sl2(), standard_embedding(g))
    a = c.algebra
    assert a.dim == 3 and a.is_commutative and a.is_associative
    assert c.certificate["nilpotency_index"] == 3
    assert is_lie_isomorphism(affine_construct(sl2(), a, "b"), g, c.transport(sl2()))


def test_coordinatize_base_and_not_affine():
    s = sl2()
    eye = [s.unit(i) for i in range(3)]
    c = affine_coordinatize(s, s, eye)
    assert c.algebra.dim == 1
    g = sl2_with_module(4)
    with pytest.raises(NotAffine):
        affine_coordinatize(g, s, [g.unit(i) for i in range(3)])


def test_coordinatize_case_a():
    s = sl_n(3)
    g = affine_construct(s, matrix_algebra(2), "a")
    c = affine_coordinatize(g, s, standard_embedding(g))
    assert c.case == "a" and c.algebra.dim == 4
    assert c.algebra.is_associative and not c.algebra.is_commutative
    assert is_lie_isomorphism(affine_construct(s, c.algebra, "a"), g, c.transport(s))


def test_ideal_shape():
    g = tensor_algebra(sl2(), truncated_polynomials(2))
    e_t, e_1, zero = ideal_shape_check(g, [(0, [0, 1]), (0, [1, 0]), (0, [0, 0])])
    assert e_t.lie_ideal_dim == 3 and e_t.matches
    assert e_1.lie_ideal_dim == 6 and e_1.matches
    assert zero.lie_ideal_dim == 0 and zero.matches


def test_derivation_transport():
    g = tensor_algebra(sl2(), truncated_polynomials(3))
    euler = [[Fraction(0)] * 3 for _ in range(3)]
    euler[1][1], euler[2][2] = Fraction(1), Fraction(2)
    rep = derivation_transport(g, tensor_derivation(g, euler))
    assert rep.delta == euler and not any(rep.inner) and rep.reconstructs
    rep = derivation_transport(g, g.ad(g.unit(4)))
    assert not any(any(r) for r in rep.delta)
    for d in derivations(g).basis:
        assert derivation_transport(g, d).reconstructs


def test_registry():
    assert "witt" in FAMILIES
    g = from_family_json({"family": "witt", "params": {"variant": "positive"}})
    assert g.dim((0,)) == 0
    g = from_family_json({"family": "loop", "s": sl2().to_json()})
    assert g.dim((-7,)) == 3 and g.spec["family"] == "loop"
    with pytest.raises(ParseError):
        from_family_json({"family": "nope"})
    with pytest.raises(ParseError):
        from_family_json({"family": "tensor"})


def test_loop_brackets():
    g = loop(sl2())
    assert g.hom_bracket((2,), 0, (-5,), 2) == {1: 1}
