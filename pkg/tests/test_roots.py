from fractions import Fraction

import pytest

from wnlie.errors import BoundExceeded, NotSplit, RankNotOne, UnsupportedType
from wnlie.families import abelian_tower, loop, loop_graded, virasoro_hat, witt
from wnlie.fdlie import abelian, sl2, sl_n
from wnlie.graded import Window, WindowedView
from wnlie.roots import (
    TorusSpec,
    alpha_string,
    check_torus,
    default_torus,
    is_quasi_minuscule,
    qm_cover_check,
    qm_weights,
    rank1_classify,
    root_data,
    simple_module,
    weight_decomposition,
    weyl_dimension,
)


def _view(g, r=6, rank=1):
    return WindowedView(g, Window.radius(r, rank))


def test_witt_weights_equal_degrees():
    v = _view(witt())
    for ws in weight_decomposition(v, TorusSpec([[1]])):
        assert ws.weight == ws.degree
        assert ws.space.dim == 1


def test_sl2_weights():
    spaces = weight_decomposition(sl2(), TorusSpec([[0, 1, 0]]))
    assert [(ws.weight, ws.space.dim) for ws in spaces] == [((-2,), 1), ((0,), 1), ((2,), 1)]


def test_abelian_single_weight():
    spaces = weight_decomposition(abelian(3), TorusSpec([[1, 2, 0]]))
    assert len(spaces) == 1 and spaces[0].weight == (0,) and spaces[0].space.dim == 3


def test_not_split():
    with pytest.raises(NotSplit) as exc:
        check_torus(sl2(), TorusSpec([[1, 0, -1]]))
    assert exc.value.factor == (Fraction(4), Fraction(0), Fraction(1))


def test_torus_must_commute():
    g = sl2()
    with pytest.raises(ValueError):
        check_torus(g, TorusSpec([[0, 1, 0], [1, 0, 0]]))


def test_witt_root_datum():
    d = root_data(_view(witt()), default_torus(_view(witt())))
    assert d.rank == 1 and d.zero_dim == 1
    assert all(r.real and r.alpha == r.n for r in d.roots)
    assert rank1_classify(d).label == "all_real"
    assert rank1_classify(d).consistent


def test_virasoro_all_real():
    v = _view(virasoro_hat())
    d = root_data(v, default_torus(v))
    assert d.zero_dim == 2
    assert rank1_classify(d).label == "all_real"


def test_abelian_tower_all_imaginary():
    v = _view(abelian_tower())
    d = root_data(v, TorusSpec([]))
    assert d.rank == 1 and not d.has_real_root
    assert rank1_classify(d).label == "all_imaginary"


def test_loop_sl2_rank_two():
    v = _view(loop(sl2()), 4)
    d = root_data(v, default_torus(v))
    assert d.rank == 2
    assert {r.alpha for r in d.roots} == {(-2,), (0,), (2,)}
    with pytest.raises(RankNotOne):
        rank1_classify(d)


def test_alpha_strings():
    d = root_data(sl2(), default_torus(sl2()))
    s = alpha_string(d, ((2,), (0,)), ((-2,), (0,)))
    assert s.ks == [0, 1, 2] and not s.unbounded_in_window
    v = _view(loop(sl2()), 4)
    d = root_data(v, default_torus(v))
    s = alpha_string(d, ((2,), (0,)), ((0,), (1,)))
    # weights of loop sl2 lie in {-2, 0, 2}, so strings through real roots stop
    assert s.ks == [-1, 0, 1] and not s.unbounded_in_window
    # a degree-shifting alpha runs into the window edge: the flag records the boundary hit
    s = alpha_string(d, ((2,), (1,)), ((-2,), (3,)))
    assert s.ks == [0, 1] and s.hits == ["up"]


def test_alpha_string_singleton():
    d = root_data(sl2(), default_torus(sl2()))
    s = alpha_string(d, ((2,), (0,)), ((2,), (0,)))
    assert s.ks == [-2, -1, 0]
    v = _view(loop(sl2()), 2)
    d = root_data(v, default_torus(v))
    # beta + alpha has weight 4 and beta - alpha leaves the window
    s = alpha_string(d, ((2,), (2,)), ((2,), (0,)))
    assert 1 not in s.ks


def test_alpha_string_unbounded_on_loop_of_witt():
    g = loop_graded(witt())
    v = WindowedView(g, Window.radius(3, 2))
    d = root_data(v, default_torus(v))
    s = alpha_string(d, ((1,), (1, 0)), ((0,), (0, 1)))
    assert s.unbounded_in_window


def test_qm_weights():
    assert qm_weights("sl2") == [(1,), (2,)]
    assert len(qm_weights("sl3")) == 3
    assert len(qm_weights(["sl2", "sl2"])) == 8
    with pytest.raises(UnsupportedType):
        qm_weights("g2")


def test_simple_modules():
    m = simple_module("sl2", 3)
    assert sorted(m.weights) == [(-3,), (-1,), (1,), (3,)]
    assert simple_module("sl2", 0).is_trivial
    adj = simple_module("sl3", (1, 1))
    assert adj.dim == 8 and adj.multiplicities()[(0, 0)] == 2
    assert adj.weyl_invariant()
    with pytest.raises(BoundExceeded):
        simple_module("sl3", (6, 6))


def test_module_action_is_representation():
    from wnlie.exactla.linalg import matmul

    m = simple_module("sl3", (2, 1))
    a = m.action
    for k in ("1", "2"):
        e, f, h = a["e" + k], a["f" + k], a["h" + k]
        comm = [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(matmul(e, f), matmul(f, e))]
        assert comm == h


def test_weyl_dimension():
    assert [weyl_dimension("sl2", (m,)) for m in range(5)] == [1, 2, 3, 4, 5]
    assert weyl_dimension("sl3", (1, 0)) == 3 and weyl_dimension("sl3", (1, 1)) == 8
    assert weyl_dimension("sl3", (2, 0)) == 6


def test_qm_cover():
    assert qm_cover_check(simple_module("sl2", 5)).witness == (1,)
    assert qm_cover_check(simple_module("sl2", 4)).witness == (2,)
    v = qm_cover_check(simple_module("sl2", 0))
    assert v.covered and v.trivial


def test_is_quasi_minuscule():
    assert is_quasi_minuscule(simple_module("sl3", (1, 0)))
    assert is_quasi_minuscule(simple_module("sl3", (1, 1)))
    assert not is_quasi_minuscule(simple_module("sl3", (2, 0)))
    assert is_quasi_minuscule(simple_module("sl2", 2))
    assert not is_quasi_minuscule(simple_module("sl2", 3))


def test_sl3_default_torus_rank():
    d = root_data(sl_n(3), default_torus(sl_n(3)))
    assert d.rank == 2 and len(d.roots) == 6
