"""Coordinate algebras, the tensor construction ``s ⊗ A`` and its inverse."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ..errors import (
    CaseARequiresSlN,
    NotADerivation,
    NotAffine,
    NotCommutativeAssociative,
    NotTraceless,
    SplitFailed,
)
from ..exactla.linalg import (
    Echelon,
    Subspace,
    flatten,
    matmul,
    matvec,
    nullspace_sparse,
    solve_linear,
    sparse,
    trace,
)
from ..fdlie.algebra import FinDimLie, ideal_generated
from ..fdlie.zoo import sl_basis

ZERO = Fraction(0)


class CoordinateAlgebra:
    """Unital algebra ``A`` by structure constants ``a_i a_j = sum_k m_ij^k a_k``.

    Commutativity and associativity are computed from the table, not declared.
    """

    def __init__(self, dim: int, mult: dict, unit: int | Sequence = 0, labels=None, name=None, check_unit=True):
        self.dim = dim
        self.mult = {k: {i: (Fraction(c) if isinstance(c, int) else c) for i, c in v.items() if c} for k, v in mult.items()}
        self.labels = list(labels) if labels is not None else [f"a{i}" for i in range(dim)]
        self.name = name
        if isinstance(unit, int):
            u = [ZERO] * dim
            u[unit] = Fraction(1)
        else:
            u = [Fraction(x) if isinstance(x, int) else x for x in unit]
        self.unit = u
        if check_unit:
            for i in range(dim):
                e = self.basis_vector(i)
                if self.mul(u, e) != e or self.mul(e, u) != e:
                    raise ValueError("unit law fails")

    def basis_vector(self, i: int) -> list:
        v = [ZERO] * self.dim
        v[i] = Fraction(1)
        return v

    def mul_basis(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def mul(self, a: Sequence, b: Sequence) -> list:
        out = [ZERO] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, c in self.mul_basis(i, j).items():
                    out[k] += x * y * c
        return out

    @property
    def is_commutative(self) -> bool:
        return all(self.mul_basis(i, j) == self.mul_basis(j, i) for i, j in combinations(range(self.dim), 2))

    @property
    def is_associative(self) -> bool:
        for i, j, k in product(range(self.dim), repeat=3):
            ei, ej, ek = self.basis_vector(i), self.basis_vector(j), self.basis_vector(k)
            if self.mul(self.mul(ei, ej), ek) != self.mul(ei, self.mul(ej, ek)):
                return False
        return True

    def left_matrix(self, a: Sequence) -> list[list]:
        cols = [self.mul(a, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][k] for j in range(self.dim)] for k in range(self.dim)]

    def two_sided_ideal(self, a: Sequence) -> Subspace:
        e = Echelon(self.dim)
        queue = []
        if any(a):
            e.add(sparse(a))
            queue.append(list(a))
        while queue:
            v = queue.pop()
            for i in range(self.dim):
                b = self.basis_vector(i)
                for w in (self.mul(b, v), self.mul(v, b)):
                    s = sparse(w)
                    if s and e.add(s):
                        queue.append(w)
        return Subspace._from_echelon(e)

    def nilradical(self) -> Subspace:
        """Radical of the trace form ``(a, b) -> Tr(L_ab)`` (the nilradical for commutative ``A``)."""
        tr = [[trace(self.left_matrix(self.mul(self.basis_vector(i), self.basis_vector(j)))) for j in range(self.dim)] for i in range(self.dim)]
        return Subspace(self.dim, nullspace_sparse((sparse(r) for r in tr), self.dim))

    def power_of(self, s: Subspace, k: int) -> Subspace:
        cur = s
        for _ in range(k - 1):
            e = Echelon(self.dim)
            for r in cur.rows:
                for t in s.rows:
                    w = sparse(self.mul(list(r), list(t)))
                    if w:
                        e.add(w)
            cur = Subspace._from_echelon(e)
        return cur

    def nilpotency_index(self) -> int:
        """Least ``k`` with ``N^k = 0`` for the nilradical ``N`` (1 when ``N = 0``)."""
        n = self.nilradical()
        if n.dim == 0:
            return 1
        k = 1
        cur = n
        while cur.dim:
            k += 1
            cur = self.power_of(n, k)
            if k > self.dim + 1:
                raise ArithmeticError("trace-form radical is not nilpotent")
        return k

    def is_derivation(self, d: Sequence[Sequence]) -> bool:
        for i, j in product(range(self.dim), repeat=2):
            a, b = self.basis_vector(i), self.basis_vector(j)
            lhs = matvec(d, self.mul(a, b))
            rhs = [x + y for x, y in zip(self.mul(matvec(d, a), b), self.mul(a, matvec(d, b)))]
            if lhs != rhs:
                return False
        return True

    def to_json(self) -> dict:
        from ..exactla.fields import scalar_to_json

        return {
            "dim": self.dim,
            "labels": self.labels,
            "unit": [scalar_to_json(x) for x in self.unit],
            "mult": [
                {"i": i, "j": j, "value": [[k, scalar_to_json(c)] for k, c in sorted(v.items())]}
                for (i, j), v in sorted(self.mult.items())
                if v
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CoordinateAlgebra":
        from ..exactla.fields import QQ

        mult = {(m["i"], m["j"]): {k: QQ(c) for k, c in m["value"]} for m in obj.get("mult", [])}
        unit = obj.get("unit", 0)
        if isinstance(unit, list):
            unit = [QQ(x) for x in unit]
        return cls(int(obj["dim"]), mult, unit, obj.get("labels"))

    def __repr__(self):
        return f"<CoordinateAlgebra {self.name or ''} dim={self.dim}>"


def truncated_polynomials(k: int) -> CoordinateAlgebra:
    """``Q[t]/(t^k)`` in the basis ``1, t, ..., t^(k-1)``."""
    mult = {(i, j): {i + j: 1} for i in range(k) for j in range(k) if i + j < k}
    return CoordinateAlgebra(k, mult, 0, ["1"] + [f"t^{i}" for i in range(1, k)], name=f"Q[t]/(t^{k})")


def simple_extension(minpoly: Sequence) -> CoordinateAlgebra:
    """``Q[x]/(p)`` for monic ``p`` given constant term first."""
    from ..exactla import poly as P

    p = P.normalize(minpoly)
    d = len(p) - 1
    mult = {}
    for i in range(d):
        for j in range(d):
            mono = tuple([Fraction(0)] * (i + j) + [Fraction(1)])
            r = P.divmod_(mono, p)[1]
            mult[(i, j)] = {k: c for k, c in enumerate(r) if c}
    return CoordinateAlgebra(d, mult, 0, ["1"] + [f"x^{i}" for i in range(1, d)], name="Q[x]/(p)")


def matrix_algebra(n: int) -> CoordinateAlgebra:
    """``Mat_n(Q)`` in the basis of matrix units ``E_ij`` (row-major)."""
    mult = {}
    for i, j, k, l in product(range(n), repeat=4):
        if j == k:
            mult[(i * n + j, k * n + l)] = {i * n + l: 1}
    unit = [Fraction(int(i == j)) for i in range(n) for j in range(n)]
    return CoordinateAlgebra(n * n, mult, unit, [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)], name=f"Mat{n}")


def product_algebra(*algs: CoordinateAlgebra) -> CoordinateAlgebra:
    mult = {}
    unit = []
    labels = []
    off = 0
    for idx, a in enumerate(algs):
        for (i, j), v in a.mult.items():
            mult[(i + off, j + off)] = {k + off: c for k, c in v.items()}
        unit += a.unit
        labels += [f"{lab}_{idx}" for lab in a.labels]
        off += a.dim
    return CoordinateAlgebra(off, mult, unit, labels, name="x".join(a.name or "A" for a in algs))


def base_field() -> CoordinateAlgebra:
    return CoordinateAlgebra(1, {(0, 0): {0: 1}}, 0, ["1"], name="Q")


# --- tensor constructions -----------------------------------------------------


def _tensor_index(i: int, j: int, ds: int) -> int:
    """Basis ``x_i ⊗ a_j`` sits at ``j * dim(s) + i``."""
    return j * ds + i


def tensor_algebra(s: FinDimLie, a: CoordinateAlgebra) -> FinDimLie:
    """``s ⊗ A`` for commutative associative ``A``: ``[x⊗a, y⊗b] = [x,y]⊗ab``."""
    if not (a.is_commutative and a.is_associative):
        raise NotCommutativeAssociative("the coordinate algebra must be commutative and associative")
    g = _tensor_bracket(s, a, lambda i, k, j, l: _case_b(s, a, i, k, j, l), check=True)
    g.name = f"{s.name}⊗{a.name}"
    return g


def _tensor_bracket(s: FinDimLie, a: CoordinateAlgebra, rule, check: bool) -> FinDimLie:
    ds, da = s.dim, a.dim
    br = {}
    n = ds * da
    for p, q in combinations(range(n), 2):
        j, i = divmod(p, ds)
        l, k = divmod(q, ds)
        v = rule(i, k, j, l)
        if v:
            br[(p, q)] = v
    labels = [f"{s.labels[i]}({a.labels[j]})" for j in range(da) for i in range(ds)]
    g = FinDimLie(n, br, labels, s.field, check=check)
    g.tensor_factors = (s, a)
    return g


def _case_b(s, a, i, k, j, l) -> dict:
    out: dict = {}
    ab = a.mul_basis(j, l)
    if not ab:
        return out
    for m, c in s.bracket_basis(i, k).items():
        for p, d in ab.items():
            idx = _tensor_index(m, p, s.dim)
            out[idx] = out.get(idx, ZERO) + c * d
    return {x: y for x, y in out.items() if y}


def symmetric_product(n: int, x: Sequence[Sequence], y: Sequence[Sequence]) -> list[list]:
    """Traceless symmetric product ``1/2(xy + yx) - (1/n) Tr(xy) 1`` on ``sl_n``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if trace(x) or trace(y):
        raise NotTraceless("arguments must be traceless")
    xy, yx = matmul(x, y), matmul(y, x)
    t = trace(xy) / n
    return [[(xy[i][j] + yx[i][j]) / 2 - (t if i == j else 0) for j in range(n)] for i in range(n)]


def _sl_coordinates(n: int):
    mats, _ = sl_basis(n)
    cols = [[flatten(m)[k] for m in mats] for k in range(n * n)]

    def coords(m):
        return solve_linear(cols, flatten(m)).particular

    return mats, coords


def _sl_rank(s: FinDimLie) -> int | None:
    """``n`` when ``s`` is ``sl_n`` in the standard basis (as built by the zoo), else None."""
    if s.name and s.name.startswith("sl") and s.name[2:].isdigit():
        return int(s.name[2:])
    return None


def affine_construct(s: FinDimLie, a: CoordinateAlgebra, case: str = "b") -> FinDimLie:
    """Bracket on ``s ⊗ A`` for an arbitrary unital ``A``, returned without a Jacobi check.

    Case ``b``: ``[x(a), y(b)] = [x,y](ab)``. Case ``a`` (``s = sl_n``, ``n >= 3``):
    ``[x(a), y(b)] = [x,y](1/2(ab + ba)) + (x·y)(ab - ba)`` with ``x·y`` the
    traceless symmetric product.
    """
    if case == "b":
        g = _tensor_bracket(s, a, lambda i, k, j, l: _case_b(s, a, i, k, j, l), check=False)
        return g
    if case != "a":
        raise ValueError(f"unknown case {case!r}")
    n = _sl_rank(s)
    if n is None or n < 3:
        raise CaseARequiresSlN("case a needs s = sl_n with n >= 3")
    mats, coords = _sl_coordinates(n)
    sym = {}
    for i in range(s.dim):
        for k in range(s.dim):
            sym[(i, k)] = sparse(coords(symmetric_product(n, mats[i], mats[k])))

    def rule(i, k, j, l):
        ab, ba = a.mul_basis(j, l), a.mul_basis(l, j)
        symm = {p: (ab.get(p, ZERO) + ba.get(p, ZERO)) / 2 for p in set(ab) | set(ba)}
        anti = {p: ab.get(p, ZERO) - ba.get(p, ZERO) for p in set(ab) | set(ba)}
        out: dict = {}
        for coeffs, part in ((s.bracket_basis(i, k), symm), (sym[(i, k)], anti)):
            for m, c in coeffs.items():
                for p, d in part.items():
                    if d:
                        idx = _tensor_index(m, p, s.dim)
                        out[idx] = out.get(idx, ZERO) + c * d
        return {x: y for x, y in out.items() if y}

    return _tensor_bracket(s, a, rule, check=False)


# --- coordinatization ---------------------------------------------------------------


def hom_s(g: FinDimLie, s: FinDimLie, embedding: Sequence[Sequence]) -> list[list[list]]:
    """Basis of ``Hom_s(s, g)``: maps ``phi`` with ``phi([x, y]) = [iota(x), phi(y)]``.

    Maps are ``dim(g) x dim(s)`` matrices; the basis is the canonical echelon
    basis of their row-major flattenings.
    """
    ng, ns = g.dim, s.dim
    emb = [sparse(v) for v in embedding]
    rows = []
    # unknown phi[r][c] at index r * ns + c
    ad_cols = []
    for x in range(ns):
        cols = [g.bracket_sparse(emb[x], {r: Fraction(1)}) for r in range(ng)]
        ad_cols.append(cols)
    for x in range(ns):
        for y in range(ns):
            eq: dict[int, dict] = {}
            for m, c in s.bracket_basis(x, y).items():
                for r in range(ng):
                    eq.setdefault(r, {})
                    eq[r][r * ns + m] = eq[r].get(r * ns + m, ZERO) + c
            # [iota(x), phi(y)] = sum_r phi[r][y] [iota(x), e_r]
            for r in range(ng):
                for k, c in ad_cols[x][r].items():
                    eq.setdefault(k, {})
                    eq[k][r * ns + y] = eq[k].get(r * ns + y, ZERO) - c
            for row in eq.values():
                row = {a: b for a, b in row.items() if b}
                if row:
                    rows.append(row)
    sols = nullspace_sparse(rows, ng * ns)
    space = Subspace(ng * ns, sols)
    return [[list(r[i * ns:(i + 1) * ns]) for i in range(ng)] for r in space.rows]


def equivariant_products(s: FinDimLie) -> int:
    """Dimension of ``Hom_s(s ⊗ s, s)``."""
    n = s.dim
    rows = []
    # unknown B(e_x, e_y)_k at (x * n + y) * n + k
    def var(x, y, k):
        return (x * n + y) * n + k

    for z, x, y in product(range(n), repeat=3):
        eq: dict[int, dict] = {}
        # [z, B(x,y)] = B([z,x], y) + B(x, [z,y])
        for k in range(n):
            for m, c in s.bracket_basis(z, k).items():
                eq.setdefault(m, {})
                eq[m][var(x, y, k)] = eq[m].get(var(x, y, k), ZERO) + c
        for p, c in s.bracket_basis(z, x).items():
            for m in range(n):
                eq.setdefault(m, {})
                eq[m][var(p, y, m)] = eq[m].get(var(p, y, m), ZERO) - c
        for p, c in s.bracket_basis(z, y).items():
            for m in range(n):
                eq.setdefault(m, {})
                eq[m][var(x, p, m)] = eq[m].get(var(x, p, m), ZERO) - c
        for row in eq.values():
            row = {a: b for a, b in row.items() if b}
            if row:
                rows.append(row)
    return len(nullspace_sparse(rows, n ** 3))


@dataclass
class Coordinatization:
    algebra: CoordinateAlgebra
    homs: list
    case: str
    certificate: dict = field(default_factory=dict)

    def transport(self, s: FinDimLie) -> list[list]:
        """Matrix of ``x_i ⊗ a_j -> a_j(x_i)`` from ``s ⊗ A`` (a-major order) to ``g``."""
        ns = s.dim
        ng = len(self.homs[0])
        cols = []
        for j, phi in enumerate(self.homs):
            for i in range(ns):
                cols.append([phi[r][i] for r in range(ng)])
        return [[cols[c][r] for c in range(len(cols))] for r in range(ng)]


def affine_coordinatize(g: FinDimLie, s: FinDimLie, embedding: Sequence[Sequence]) -> Coordinatization:
    """Recover ``A = Hom_s(s, g)`` with the product read off brackets of images."""
    homs = hom_s(g, s, embedding)
    ns, ng = s.dim, g.dim
    images = Subspace(ng, [[phi[r][i] for r in range(ng)] for phi in homs for i in range(ns)])
    cert = {"hom_dim": len(homs), "dim_s": ns, "dim_g": ng, "isotypic": len(homs) * ns == ng and images.dim == ng}
    if not cert["isotypic"]:
        raise NotAffine(f"g is not a sum of adjoint s-modules: dim Hom = {len(homs)}, dim s = {ns}, dim g = {ng}")
    n = _sl_rank(s)
    case = "a" if n is not None and n >= 3 else "b"
    da = len(homs)

    def image(a_idx: int, x: Sequence) -> list:
        return matvec(homs[a_idx], x)

    # [phi_a(x), phi_b(y)] is expanded in the images phi_c(z) (and phi_c(w) in case a)
    if case == "b":
        x, y = _bracket_pair(s)
        z = s.bracket(s.unit(x), s.unit(y))
        basis_cols = [image(c, z) for c in range(da)]
    else:
        mats, coords = _sl_coordinates(n)
        x, y = _index_of(s, "E12"), _index_of(s, "E21")
        z = s.bracket(s.unit(x), s.unit(y))
        w = coords(symmetric_product(n, mats[x], mats[y]))
        basis_cols = [image(c, z) for c in range(da)] + [image(c, w) for c in range(da)]
    mat = [[col[r] for col in basis_cols] for r in range(ng)]
    mult = {}
    for a_idx in range(da):
        for b_idx in range(da):
            val = g.bracket(image(a_idx, s.unit(x)), image(b_idx, s.unit(y)))
            sol = solve_linear(mat, val).particular
            if case == "b":
                prod = sol
            else:
                sy, an = sol[:da], sol[da:]
                prod = [p + q / 2 for p, q in zip(sy, an)]
            mult[(a_idx, b_idx)] = {k: c for k, c in enumerate(prod) if c}
    emb_mat = [[embedding[i][r] for i in range(ns)] for r in range(ng)]
    flat = [flatten(h) for h in homs]
    cols = [[f[k] for f in flat] for k in range(ng * ns)]
    unit = solve_linear(cols, flatten(emb_mat)).particular
    a = CoordinateAlgebra(da, mult, unit, [f"phi{i}" for i in range(da)], name="Hom_s(s,g)")
    cert.update(
        {
            "case": case,
            "commutative": a.is_commutative,
            "associative": a.is_associative,
            "nilpotency_index": a.nilpotency_index() if a.is_commutative and a.is_associative else None,
        }
    )
    return Coordinatization(a, homs, case, cert)


def _bracket_pair(s: FinDimLie) -> tuple[int, int]:
    pairs = s.nonzero_pairs()
    if not pairs:
        raise NotAffine("s must be nonabelian")
    return pairs[0]


def _index_of(s: FinDimLie, label: str) -> int:
    return s.labels.index(label)


def is_lie_isomorphism(g1: FinDimLie, g2: FinDimLie, t: Sequence[Sequence]) -> bool:
    """``t`` (a ``dim g2 x dim g1`` matrix) is bijective and bracket preserving."""
    if g1.dim != g2.dim:
        return False
    if Subspace(g2.dim, [[row[c] for row in t] for c in range(g1.dim)]).dim != g2.dim:
        return False
    cols = [[row[c] for row in t] for c in range(g1.dim)]
    for i, j in combinations(range(g1.dim), 2):
        lhs = matvec(t, g1.bracket(g1.unit(i), g1.unit(j)))
        if lhs != g2.bracket(cols[i], cols[j]):
            return False
    return True


# --- ideals and derivations of s ⊗ A -------------------------------------------------


@dataclass
class IdealShape:
    vector: list
    lie_ideal_dim: int
    coordinate_ideal_dim: int
    matches: bool


def ideal_shape_check(g: FinDimLie, tests: Sequence[Sequence]) -> list[IdealShape]:
    """For each pure tensor ``x ⊗ a`` (given as ``(i, a_vector)``) compare the Lie ideal with ``s ⊗ (A a A)``."""
    s, a = g.tensor_factors
    out = []
    for i, avec in tests:
        v = [ZERO] * g.dim
        for j, c in enumerate(avec):
            if c:
                v[_tensor_index(i, j, s.dim)] = Fraction(c)
        lie = ideal_generated(g, [v]) if any(v) else Subspace(g.dim)
        ia = a.two_sided_ideal(avec)
        rows = []
        for r in ia.rows:
            for k in range(s.dim):
                w = [ZERO] * g.dim
                for j, c in enumerate(r):
                    if c:
                        w[_tensor_index(k, j, s.dim)] = c
                rows.append(w)
        shape = Subspace(g.dim, rows)
        out.append(IdealShape(v, lie.dim, ia.dim, lie == shape))
    return out


@dataclass
class TransportReport:
    inner: list
    delta: list[list]
    delta_is_derivation: bool
    reconstructs: bool


def derivation_transport(g: FinDimLie, d: Sequence[Sequence]) -> TransportReport:
    """Split a derivation of ``s ⊗ A`` as ``ad X + id ⊗ delta``."""
    s, a = g.tensor_factors
    ns, na, n = s.dim, a.dim, g.dim

    def tensor(i, avec):
        v = [ZERO] * n
        for j, c in enumerate(avec):
            if c:
                v[_tensor_index(i, j, ns)] = c
        return v

    # solve d(x ⊗ 1) = [X, x ⊗ 1] for X
    rows, rhs = [], []
    for i in range(ns):
        xi = tensor(i, a.unit)
        target = matvec(d, xi)
        cols = [g.bracket(g.unit(c), xi) for c in range(n)]
        for k in range(n):
            rows.append([cols[c][k] for c in range(n)])
            rhs.append(target[k])
    from ..errors import InconsistentSystem

    try:
        x = solve_linear(rows, rhs).particular
    except InconsistentSystem as exc:
        raise SplitFailed("no inner part matches the derivation on s ⊗ 1") from exc
    adx = g.ad(x)
    rem = [[p - q for p, q in zip(r1, r2)] for r1, r2 in zip(d, adx)]
    # read delta from the first basis vector of s
    delta = [[ZERO] * na for _ in range(na)]
    for j in range(na):
        col = matvec(rem, tensor(0, a.basis_vector(j)))
        for p in range(na):
            delta[p][j] = col[_tensor_index(0, p, ns)]
    rebuilt = [[ZERO] * n for _ in range(n)]
    for j in range(na):
        for i in range(ns):
            src = _tensor_index(i, j, ns)
            for p in range(na):
                if delta[p][j]:
                    rebuilt[_tensor_index(i, p, ns)][src] = delta[p][j]
    if rebuilt != rem:
        raise SplitFailed("the remainder is not of the form id ⊗ delta")
    ok = a.is_derivation(delta)
    if not ok:
        raise NotADerivation("the induced map is not a derivation of A")
    total = [[p + q for p, q in zip(r1, r2)] for r1, r2 in zip(adx, rebuilt)]
    return TransportReport(x, delta, ok, total == [list(r) for r in d])


def tensor_derivation(g: FinDimLie, delta: Sequence[Sequence]) -> list[list]:
    """Matrix of ``id ⊗ delta`` on ``s ⊗ A``."""
    s, a = g.tensor_factors
    ns, na = s.dim, a.dim
    m = [[ZERO] * g.dim for _ in range(g.dim)]
    for j in range(na):
        for i in range(ns):
            for p in range(na):
                if delta[p][j]:
                    m[_tensor_index(i, p, ns)][_tensor_index(i, j, ns)] = Fraction(delta[p][j])
    return m


def standard_embedding(g: FinDimLie) -> list[list]:
    """Images of ``s``'s basis under ``x -> x ⊗ 1`` in ``s ⊗ A``."""
    s, a = g.tensor_factors
    out = []
    for i in range(s.dim):
        v = [ZERO] * g.dim
        for j, c in enumerate(a.unit):
            if c:
                v[_tensor_index(i, j, s.dim)] = c
        out.append(v)
    return out
