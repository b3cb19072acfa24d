import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from wnlie.errors import JacobiViolation, NotAnIdeal
from wnlie.exactla import Subspace, field_extension
from wnlie.fdlie import (
    FinDimLie,
    associative_closure,
    center,
    centroid,
    centroid_commutes_on_derived,
    commutant,
    derivations,
    direct_sum,
    extend_scalars,
    filtration_theoremA,
    gl_n,
    h2_trivial,
    heisenberg,
    abelian,
    ideal_generated,
    is_characteristic,
    is_derivation,
    jacobi_defect,
    killing_form,
    largest_perfect_ideal,
    paper_radical,
    quotient,
    random_corpus,
    restrict_scalars,
    series,
    simple_quotients,
    sl2,
    sl2_with_module,
    sl_n,
    solvable_radical,
    two_dim_solvable,
)


def _rand_vec(rng, n):
    return [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]


def test_sl2_chevalley_relations():
    g = sl2()
    e, h, f = (g.unit(i) for i in range(3))
    assert g.bracket(h, e) == [2, 0, 0]
    assert g.bracket(h, f) == [0, 0, -2]
    assert g.bracket(e, f) == h


def test_bracket_antisymmetric_and_bilinear():
    g = sl_n(3)
    rng = random.Random(0)
    for _ in range(10):
        x, y, z = (_rand_vec(rng, g.dim) for _ in range(3))
        assert not any(g.bracket(x, x))
        a = Fraction(rng.randint(-3, 3))
        lhs = g.bracket([a * p + q for p, q in zip(x, y)], z)
        rhs = [a * p + q for p, q in zip(g.bracket(x, z), g.bracket(y, z))]
        assert lhs == rhs


def test_jacobi_defect_zero_on_sl2():
    assert jacobi_defect(sl2()) is None


def test_jacobi_defect_witness():
    # [x,y] = x, [x,z] = y: ad x is nilpotent but the table is not a Lie algebra
    g = FinDimLie(3, {(0, 1): {0: 1}, (0, 2): {1: 1}}, ["x", "y", "z"], check=False)
    rep = jacobi_defect(g)
    assert rep.triple == (0, 1, 2)
    assert rep.defect == [0, 1, 0]
    with pytest.raises(JacobiViolation):
        FinDimLie(3, {(0, 1): {0: 1}, (0, 2): {1: 1}})


def test_cyclic_table_is_lie():
    # [x,y]=z, [y,z]=x, [z,x]=0 happens to satisfy Jacobi
    g = FinDimLie(3, {(0, 1): {2: 1}, (1, 2): {0: 1}}, check=False)
    assert jacobi_defect(g) is None


def test_quotient_gl2_by_center():
    g = gl_n(2)
    q = quotient(g, center(g)).algebra
    assert q.dim == 3
    assert q.bracket_spaces(q.full(), q.full()).dim == 3


def test_direct_sum_and_ideal_generated():
    g = direct_sum(sl2(), sl2())
    assert g.dim == 6 and center(g).dim == 0
    s = sl2()
    assert ideal_generated(s, [s.unit(0)]) == s.full()


def test_series():
    a = two_dim_solvable()
    d = series(a, "derived")
    assert [s.dim for s in d] == [2, 1, 0]
    assert d[1] == Subspace.span(2, [[0, 1]])
    h = heisenberg()
    lc = series(h, "lower_central")
    assert [s.dim for s in lc] == [3, 1, 0]
    assert lc[1] == Subspace.span(3, [[0, 0, 1]])
    assert [s.dim for s in series(sl2())] == [3]


def test_center_and_normalizer():
    assert center(heisenberg()) == Subspace.span(3, [[0, 0, 1]])
    assert center(sl2()).dim == 0
    g = sl2()
    hspan = Subspace.span(3, [[0, 1, 0]])
    assert commutant(g, "normalizer", hspan) == hspan


def test_killing_form_sl2():
    k = killing_form(sl2())
    assert k[1][1] == 8 and k[0][2] == 4 and k[0][0] == 0
    assert not any(any(r) for r in killing_form(abelian(3)))


def test_killing_invariance_sl3():
    g = sl_n(3)
    k = killing_form(g)
    rng = random.Random(1)

    def kf(x, y):
        return sum(x[i] * k[i][j] * y[j] for i in range(g.dim) for j in range(g.dim))

    for _ in range(5):
        x, y, z = (_rand_vec(rng, g.dim) for _ in range(3))
        assert kf(g.bracket(x, y), z) == kf(x, g.bracket(y, z))


def test_solvable_radical():
    assert solvable_radical(sl2()).dim == 0
    g = gl_n(2)
    assert solvable_radical(g) == center(g)
    g = sl2_with_module(2)
    assert solvable_radical(g) == Subspace.coordinate(6, [3, 4, 5])


def test_simple_quotients():
    reps = simple_quotients(direct_sum(sl2(), sl2()))
    assert len(reps) == 2 and all(r.codim == 3 for r in reps)
    reps = simple_quotients(gl_n(2))
    assert len(reps) == 1 and reps[0].codim == 3
    assert simple_quotients(heisenberg()) == []


def test_paper_radical():
    g = gl_n(2)
    assert paper_radical(g) == center(g)
    assert paper_radical(sl2()).dim == 0
    assert paper_radical(two_dim_solvable()).dim == 2


def test_largest_perfect_ideal():
    assert largest_perfect_ideal(heisenberg()).dim == 0
    g = direct_sum(sl2(), two_dim_solvable())
    assert largest_perfect_ideal(g) == Subspace.coordinate(5, [0, 1, 2])
    assert largest_perfect_ideal(sl_n(3)).dim == 8


def test_derivations():
    assert derivations(sl2()).out_dim == 0
    der = derivations(heisenberg())
    assert (der.dim, der.inner_dim, der.out_dim) == (6, 2, 4)
    for d in der.basis:
        assert is_derivation(heisenberg(), d)
    der = derivations(abelian(3))
    assert der.dim == 9 and der.out_dim == 9


def test_heisenberg_der_parameter_form():
    # D(x) = a x + b y + p z, D(y) = c x + d y + q z, D(z) = (a + d) z
    g = heisenberg()
    space = Subspace(9, [sum(d, []) for d in derivations(g).basis])
    a, b, c, d, p, q = (Fraction(v) for v in (2, -1, 3, 5, 7, -4))
    mat = [[a, c, 0], [b, d, 0], [p, q, a + d]]
    assert is_derivation(g, mat)
    assert space.contains(sum(mat, []))
    assert space.dim == 6


def test_characteristic():
    g = sl2_with_module(1)
    assert is_characteristic(g, g.full()).characteristic
    h = heisenberg()
    assert is_characteristic(h, center(h)).characteristic
    a = two_dim_solvable()
    rep = is_characteristic(a, Subspace.span(2, [[0, 1]]))
    # span(y) is invariant under every derivation of this algebra
    assert rep.characteristic
    with pytest.raises(NotAnIdeal):
        is_characteristic(a, Subspace.span(2, [[1, 0]]))


def test_non_characteristic_ideal():
    # abelian: any line is an ideal, GL moves it
    g = abelian(2)
    rep = is_characteristic(g, Subspace.span(2, [[1, 0]]))
    assert not rep.characteristic
    assert is_derivation(g, rep.witness)


def test_centroid():
    c = centroid(sl2())
    assert c.dim == 1 and c.is_field
    qi = field_extension([1, 0, 1])
    g = restrict_scalars(extend_scalars(sl2(), qi))
    c = centroid(g)
    assert g.dim == 6 and c.dim == 2 and c.is_field
    c = centroid(direct_sum(sl2(), sl2()))
    assert c.dim >= 2 and c.is_field is False
    assert centroid_commutes_on_derived(direct_sum(sl2(), sl2()))


def test_associative_closure():
    assert associative_closure(sl2()) == 9
    assert associative_closure(abelian(3)) == 0
    g = restrict_scalars(extend_scalars(sl2(), field_extension([1, 0, 1])))
    assert associative_closure(g) == 18


def _h2_oracle(g):
    """dim H^2 from ranks of the cochain differentials, via sympy."""
    n = g.dim
    pairs = list(combinations(range(n), 2))
    triples = list(combinations(range(n), 3))

    def omega(w, x, y):
        if x == y:
            return 0
        return w[pairs.index((x, y))] if x < y else -w[pairs.index((y, x))]

    d1 = sympy.zeros(len(pairs), n)
    for r, (i, j) in enumerate(pairs):
        for k, c in g.bracket_basis(i, j).items():
            d1[r, k] = -c
    d2 = sympy.zeros(len(triples), len(pairs))
    for col in range(len(pairs)):
        w = [int(t == col) for t in range(len(pairs))]
        for r, (i, j, k) in enumerate(triples):
            val = 0
            for (a, b, c), sign in (((i, j, k), -1), ((i, k, j), 1), ((j, k, i), -1)):
                for m, x in g.bracket_basis(a, b).items():
                    val += sign * x * omega(w, m, c)
            d2[r, col] = val
    return len(pairs) - d2.rank() - d1.rank()


@pytest.mark.parametrize("make", [sl2, heisenberg, two_dim_solvable, lambda: abelian(2), lambda: gl_n(2)])
def test_h2_against_cochain_oracle(make):
    g = make()
    assert h2_trivial(g).dim == _h2_oracle(g)


def test_h2_values():
    assert h2_trivial(sl2()).dim == 0
    assert h2_trivial(abelian(2)).dim == 1
    assert h2_trivial(heisenberg()).dim == 2


def test_filtration_examples():
    g = direct_sum(sl2(), heisenberg())
    rep = filtration_theoremA(g)
    assert rep.finite_radical == Subspace.coordinate(6, [3, 4, 5])
    assert rep.terms[-1].dim == 0 and rep.certified
    h = heisenberg()
    rep = filtration_theoremA(h)
    assert rep.finite_radical == h.full()
    assert rep.terms[0].dim == 0


def test_corpus_radical_identity():
    for g in random_corpus(8, seed=3):
        assert paper_radical(g) == solvable_radical(g)


def test_json_roundtrip():
    g = sl2_with_module(2)
    h = FinDimLie.from_json(g.to_json())
    assert h.structurally_equal(g)
