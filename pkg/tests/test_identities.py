import random
from fractions import Fraction
from itertools import product

import pytest

from wnlie.errors import ParseError, ShapeMismatch
from wnlie.exactla.linalg import identity, matmul
from wnlie.fdlie import abelian, heisenberg, sl2, sl_n
from wnlie.identities import (
    LiePolynomial,
    NcPolynomial,
    central_identity_p2,
    commutator,
    identity_catalog,
    is_central_value,
    lie_expand,
    matrix_units,
    nc_eval,
    random_matrix,
    satisfies_identity,
    standard_polynomial,
    verify_central_identity,
)


def _unit(i, j, d):
    return matrix_units(d)[i * d + j]


def _mat_comm(a, b):
    return [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(matmul(a, b), matmul(b, a))]


def test_nc_eval_basics():
    x0, x1 = NcPolynomial.var(0, 2), NcPolynomial.var(1, 2)
    assert nc_eval(x0 * x1, [_unit(0, 1, 2), _unit(1, 0, 2)]) == _unit(0, 0, 2)
    assert nc_eval(NcPolynomial(1), [_unit(0, 1, 2)]) == [[0, 0], [0, 0]]
    m = random_matrix(random.Random(0), 3)
    assert nc_eval(NcPolynomial.var(0, 1), [m]) == m
    with pytest.raises(ShapeMismatch):
        nc_eval(x0 * x1, [_unit(0, 1, 2), _unit(0, 1, 3)])


def test_is_central_value():
    cv = is_central_value(identity(3))
    assert cv.central and cv.scalar == 1
    assert not is_central_value(_unit(0, 0, 2)).central
    cv = is_central_value([[2, 0], [0, 2]])
    assert cv.central and cv.scalar == 2


def test_p2_matches_direct_matrix_arithmetic():
    p = central_identity_p2()
    rng = random.Random(4)
    for _ in range(20):
        a, b = random_matrix(rng, 2), random_matrix(rng, 2)
        c = _mat_comm(a, b)
        assert nc_eval(p, [a, b]) == matmul(c, c)


def test_p2_on_mat2():
    p = central_identity_p2()
    assert nc_eval(p, [_unit(0, 1, 2), _unit(1, 0, 2)]) == identity(2)
    rep = verify_central_identity(p, 2)
    assert rep.central and rep.checked == 16 and rep.attains_one
    assert rep.attainment_witness == ["E12", "E21"]
    rep = verify_central_identity(p, 2, "randomized", trials=1000, seed=0)
    assert rep.central and rep.checked == 1016


def test_p2_on_mat3_not_central():
    p = central_identity_p2()
    v = nc_eval(p, [_unit(0, 1, 3), _unit(1, 0, 3)])
    assert v == [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    rep = verify_central_identity(p, 3)
    assert not rep.central and rep.noncentral_witness is not None
    w = [_unit(int(s[1]) - 1, int(s[2]) - 1, 3) for s in rep.noncentral_witness]
    assert nc_eval(p, w) == rep.noncentral_value


def test_parallel_sweep_matches_serial():
    p = central_identity_p2()
    a = verify_central_identity(p, 3)
    b = verify_central_identity(p, 3, jobs=2)
    assert a.to_json() == b.to_json()


def test_standard_polynomials():
    x0, x1 = NcPolynomial.var(0, 2), NcPolynomial.var(1, 2)
    assert standard_polynomial(2) == x0 * x1 - x1 * x0
    s4 = standard_polynomial(4)
    units = matrix_units(2)
    for t in product(range(4), repeat=4):
        assert not any(any(r) for r in nc_eval(s4, [units[k] for k in t]))
    s3 = standard_polynomial(3)
    assert nc_eval(s3, [_unit(0, 0, 2), _unit(0, 1, 2), _unit(1, 1, 2)]) == _unit(0, 1, 2)


def test_amitsur_levitzki_mat3_random():
    s6 = standard_polynomial(6)
    assert len(s6.terms) == 720
    rng = random.Random(0)
    for _ in range(15):
        args = [random_matrix(rng, 3) for _ in range(6)]
        assert not any(any(r) for r in nc_eval(s6, args))


def test_nc_json_roundtrip():
    p = central_identity_p2()
    assert NcPolynomial.from_json(p.to_json()) == p
    with pytest.raises(ParseError):
        NcPolynomial.from_json({"nvars": 1, "terms": [{"coeff": "1", "word": [3]}]})


def test_lie_expand():
    x0, x1 = LiePolynomial.var(0), LiePolynomial.var(1)
    n0, n1 = NcPolynomial.var(0, 2), NcPolynomial.var(1, 2)
    assert lie_expand(LiePolynomial.bracket(x0, x1)) == commutator(n0, n1)
    e = lie_expand(LiePolynomial.bracket(LiePolynomial.bracket(x0, x1), x0))
    assert all(len(w) == 3 for w in e.terms) and sum(e.terms.values()) == 0
    assert not lie_expand(LiePolynomial.bracket(x0, x0))


def test_lie_parse():
    lp = LiePolynomial.parse("[[x0,x1],x2] - 2*[x1,x0]")
    assert lp.nvars == 3
    assert lie_expand(lp) == lie_expand(
        LiePolynomial.bracket(LiePolynomial.bracket(LiePolynomial.var(0), LiePolynomial.var(1)), LiePolynomial.var(2))
        + LiePolynomial.bracket(LiePolynomial.var(0), LiePolynomial.var(1)).scale(2)
    )


def test_satisfies_identity():
    comm = identity_catalog()["abelian"]
    assert satisfies_identity(abelian(3), comm).satisfied
    v = satisfies_identity(sl2(), comm)
    assert not v.satisfied and v.value
    assert satisfies_identity(heisenberg(), identity_catalog()["nilpotent2"]).satisfied
    assert satisfies_identity(heisenberg(), comm, "randomized", trials=50).satisfied is False


def test_simple_algebras_escape_catalog():
    for name, lp in identity_catalog().items():
        assert lie_expand(lp), name
        for g in (sl2(), sl_n(3)):
            assert not satisfies_identity(g, lp).satisfied, name
