"""Structure theory of finite-dimensional Lie algebras by exact linear algebra."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..errors import NotAnIdeal
from ..exactla.fields import QQ
from ..exactla.linalg import (
    Echelon,
    Subspace,
    dense,
    flatten,
    matmul,
    minimal_polynomial,
    nullspace_sparse,
    sparse,
    unflatten,
)
from .algebra import FinDimLie, ideal_generated, quotient, restrict_to

ZERO = Fraction(0)


def series(g: FinDimLie, kind: str = "derived", start: Subspace | None = None) -> list[Subspace]:
    """Derived or lower central series, ending with its first repeated term."""
    if kind not in ("derived", "lower_central"):
        raise ValueError(f"unknown series {kind!r}")
    full = g.full()
    cur = start if start is not None else full
    out = [cur]
    while True:
        nxt = g.bracket_spaces(cur, cur) if kind == "derived" else g.bracket_spaces(full, cur)
        if nxt == cur:
            return out
        out.append(nxt)
        cur = nxt


def commutant(g: FinDimLie, kind: str, s: Subspace | None = None) -> Subspace:
    """Centralizer or normalizer of ``s``; ``center`` ignores ``s``."""
    if kind == "center":
        kind, s = "centralizer", g.full()
    if s is None:
        raise ValueError("a subspace is required")
    if kind not in ("centralizer", "normalizer"):
        raise ValueError(f"unknown commutant {kind!r}")
    rows = []
    for r in s.rows:
        y = sparse(r)
        cols = [g.bracket_sparse({j: Fraction(1)}, y) for j in range(g.dim)]
        if kind == "normalizer":
            cols = [s._echelon.reduce(c) for c in cols]
        for k in range(g.dim):
            row = {j: c[k] for j, c in enumerate(cols) if c.get(k)}
            if row:
                rows.append(row)
    return Subspace(g.dim, nullspace_sparse(rows, g.dim))


def center(g: FinDimLie) -> Subspace:
    return g.memo("center", lambda: commutant(g, "center"))


def killing_form(g: FinDimLie) -> list[list]:
    def compute():
        ads = [g.ad_basis(i) for i in range(g.dim)]
        n = g.dim
        k = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                a, b = ads[i], ads[j]
                t = ZERO
                for p in range(n):
                    ap = a[p]
                    for q in range(n):
                        if ap[q] and b[q][p]:
                            t = t + ap[q] * b[q][p]
                k[i][j] = k[j][i] = t
        return k

    return g.memo("killing", compute)


def killing_orthogonal(g: FinDimLie, s: Subspace) -> Subspace:
    k = killing_form(g)
    rows = []
    for r in s.rows:
        row = {}
        for i in range(g.dim):
            t = ZERO
            for j, y in enumerate(r):
                if y and k[i][j]:
                    t = t + k[i][j] * y
            if t:
                row[i] = t
        if row:
            rows.append(row)
    return Subspace(g.dim, nullspace_sparse(rows, g.dim))


def solvable_radical(g: FinDimLie) -> Subspace:
    """Killing-orthogonal complement of ``[g, g]``."""
    return g.memo("solvable_radical", lambda: killing_orthogonal(g, g.bracket_spaces(g.full(), g.full())))


def is_solvable(g: FinDimLie, s: Subspace | None = None) -> bool:
    return series(g, "derived", s)[-1].dim == 0


def is_perfect(g: FinDimLie) -> bool:
    return g.bracket_spaces(g.full(), g.full()).dim == g.dim


# --- simple quotients -----------------------------------------------------


def _embed(s: Subspace, coords_space: Subspace) -> Subspace:
    """Map a subspace given in the canonical basis of ``s`` back to ambient coordinates."""
    rows = []
    for c in coords_space.rows:
        v = [ZERO] * s.ambient_dim
        for a, x in enumerate(c):
            if x:
                v = [vi + x * si for vi, si in zip(v, s.rows[a])]
        rows.append(v)
    return Subspace(s.ambient_dim, rows)


def _centroid_split(g: FinDimLie, j: Subspace, rng: random.Random) -> Subspace | None:
    """Proper nonzero ideal of ``g`` inside the ideal ``j``, found through the centroid of ``j``."""
    h = restrict_to(g, j)
    rep = centroid(h, seed=rng.randrange(1 << 30))
    if rep.dim <= 1:
        return None
    for _ in range(20):
        theta = _random_combination(rep.basis, rng)
        mp = minimal_polynomial(theta)
        factors = _factor(mp)
        if factors is None:
            return None
        if len(factors) > 1 or factors[0][1] > 1:
            f = factors[0][0]
            ker = _kernel_of_poly(theta, f)
            return _embed(j, ker)
        if len(mp) - 1 == rep.dim:
            return None
    return None


def _factor(p: tuple):
    """Irreducible factors ``[(coeffs, multiplicity)]`` over Q, or None off Q."""
    import sympy

    if any(not isinstance(c, Fraction) for c in p):
        return None
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], x, domain=sympy.QQ)
    _, facs = poly.factor_list()
    out = []
    for f, mult in facs:
        coeffs = tuple(Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs()))
        out.append((coeffs, mult))
    return out


def _poly_of_matrix(m: list[list], p: Sequence) -> list[list]:
    n = len(m)
    acc = [[ZERO] * n for _ in range(n)]
    for c in reversed(p):
        acc = matmul(acc, m)
        for i in range(n):
            acc[i][i] = acc[i][i] + c
    return acc


def _kernel_of_poly(m: list[list], p: Sequence) -> Subspace:
    fm = _poly_of_matrix(m, p)
    return Subspace(len(m), nullspace_sparse((sparse(r) for r in fm), len(m)))


def _random_combination(basis: list[list[list]], rng: random.Random) -> list[list]:
    n = len(basis[0])
    acc = [[ZERO] * n for _ in range(n)]
    for b in basis:
        c = Fraction(rng.randint(-9, 9))
        if c:
            acc = [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(acc, b)]
    return acc


def simple_ideals(g: FinDimLie, seed: int = 0) -> list[Subspace]:
    """Decompose a semisimple algebra into its simple ideals.

    Minimal ideals generated by single basis vectors are split off together
    with their Killing-orthogonal complements; when every basis vector of an
    ideal generates the whole ideal, a reducible centroid element is used to
    split it instead.
    """
    rng = random.Random(seed)
    work = [g.full()]
    out = []
    while work:
        j = work.pop()
        if j.dim == 0:
            continue
        best = None
        for r in j.rows:
            i = ideal_generated(g, [r])
            if 0 < i.dim < j.dim and (best is None or i.dim < best.dim):
                best = i
        if best is None:
            best = _centroid_split(g, j, rng)
        if best is None:
            out.append(j)
            continue
        work.append(best)
        work.append(killing_orthogonal(g, best).intersect(j))
    return sorted(out, key=lambda s: (s.pivots, s.rows))


@dataclass
class IdealReport:
    ideal: Subspace
    codim: int
    quotient: FinDimLie
    quotient_centroid_dim: int

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "codim": self.codim,
            "quotient_dim": self.quotient.dim,
            "quotient_centroid_dim": self.quotient_centroid_dim,
        }


def simple_quotients(g: FinDimLie, seed: int = 0) -> list[IdealReport]:
    """All maximal ideals of codimension > 1 (kernels of the simple quotients)."""

    def compute():
        r = solvable_radical(g)
        q = quotient(g, r)
        if q.algebra.dim == 0:
            return []
        factors = simple_ideals(q.algebra, seed)
        out = []
        for idx, s in enumerate(factors):
            others = Subspace(q.algebra.dim)
            for jdx, t in enumerate(factors):
                if jdx != idx:
                    others = others + t
            m = q.preimage(others)
            qa = quotient(g, m).algebra
            out.append(IdealReport(m, g.dim - m.dim, qa, centroid(qa, seed=seed).dim))
        return out

    return g.memo(("simple_quotients", seed), compute)


def paper_radical(g: FinDimLie, kind: str = "radical") -> Subspace:
    """Intersection of the maximal ideals of codimension > 1 (full algebra if there are none).

    Every maximal ideal of a finite-dimensional algebra has finite codimension,
    so ``radical`` and ``finite_radical`` coincide here.
    """
    if kind not in ("radical", "finite_radical"):
        raise ValueError(f"unknown radical {kind!r}")
    out = g.full()
    for rep in simple_quotients(g):
        out = out.intersect(rep.ideal)
    return out


def largest_perfect_ideal(g: FinDimLie, within: Subspace | None = None) -> Subspace:
    """Stable term of the derived series (of ``within`` when given, an ideal)."""
    return series(g, "derived", within)[-1]


# --- derivations ------------------------------------------------------------


@dataclass
class DerivationAlgebra:
    basis: list[list[list]]
    inner_dim: int
    out_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "inner_dim": self.inner_dim, "out_dim": self.out_dim}


def _by_right(g: FinDimLie):
    """``right[j]`` lists ``(l, [e_l, e_j])`` for nonzero brackets."""
    right = [[] for _ in range(g.dim)]
    for (l, j), v in g._table.items():
        right[j].append((l, v))
    return right


def derivations(g: FinDimLie) -> DerivationAlgebra:
    def compute():
        n = g.dim
        right = _by_right(g)
        rows = []
        for i, j in combinations(range(n), 2):
            cij = g.bracket_basis(i, j)
            eqs: list[dict] = [dict() for _ in range(n)]
            for m, c in cij.items():
                for k in range(n):
                    eqs[k][k * n + m] = eqs[k].get(k * n + m, ZERO) + c
            # [D e_i, e_j]
            for l, v in right[j]:
                for k, c in v.items():
                    eqs[k][l * n + i] = eqs[k].get(l * n + i, ZERO) - c
            # [e_i, D e_j] = -[D e_j, e_i]
            for l, v in right[i]:
                for k, c in v.items():
                    eqs[k][l * n + j] = eqs[k].get(l * n + j, ZERO) + c
            for row in eqs:
                row = {a: b for a, b in row.items() if b}
                if row:
                    rows.append(row)
        basis = [unflatten(v, n) for v in nullspace_sparse(rows, n * n)]
        inner = n - center(g).dim
        return DerivationAlgebra(basis, inner, len(basis) - inner)

    return g.memo("derivations", compute)


def is_derivation(g: FinDimLie, d: Sequence[Sequence]) -> bool:
    from ..exactla.linalg import matvec

    cols = [[row[i] for row in d] for i in range(g.dim)]
    for i, j in combinations(range(g.dim), 2):
        lhs = matvec(d, dense(g.bracket_basis(i, j), g.dim))
        a = g.bracket(cols[i], g.unit(j))
        b = g.bracket(g.unit(i), cols[j])
        if lhs != [x + y for x, y in zip(a, b)]:
            return False
    return True


@dataclass
class CharacteristicReport:
    characteristic: bool
    witness: list[list] | None = None
    vector: list | None = None


def is_characteristic(g: FinDimLie, m: Subspace) -> CharacteristicReport:
    from ..exactla.linalg import matvec

    g.require_ideal(m)
    for d in derivations(g).basis:
        for r in m.rows:
            img = matvec(d, r)
            if not m.contains(img):
                return CharacteristicReport(False, d, list(r))
    return CharacteristicReport(True)


# --- centroid ---------------------------------------------------------------


@dataclass
class CentroidReport:
    basis: list[list[list]]
    commutative: bool
    is_field: bool | None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {"dim": self.dim, "commutative": self.commutative, "is_field": self.is_field}


def centroid_basis(g: FinDimLie) -> list[list[list]]:
    n = g.dim
    rows = []
    # row index of the equation (theta ad_i - ad_i theta)[k][j]
    for i in range(n):
        eqs: dict[tuple[int, int], dict] = {}
        for j in range(n):
            for l, c in g.bracket_basis(i, j).items():
                for k in range(n):
                    e = eqs.setdefault((k, j), {})
                    e[k * n + l] = e.get(k * n + l, ZERO) + c
        # ad_i[k][l] = coefficient of e_k in [e_i, e_l]
        for l in range(n):
            for k, c in g.bracket_basis(i, l).items():
                for j in range(n):
                    e = eqs.setdefault((k, j), {})
                    e[l * n + j] = e.get(l * n + j, ZERO) - c
        for e in eqs.values():
            e = {a: b for a, b in e.items() if b}
            if e:
                rows.append(e)
    return [unflatten(v, n) for v in nullspace_sparse(rows, n * n)]


def centroid(g: FinDimLie, seed: int = 0) -> CentroidReport:
    """Centroid with an exact field test.

    The centroid is a field exactly when it is commutative and some element
    has an irreducible minimal polynomial of degree equal to its dimension
    (a primitive element). Random elements are tried with a fixed seed.
    """

    def compute():
        basis = centroid_basis(g)
        comm = all(matmul(a, b) == matmul(b, a) for a, b in combinations(basis, 2))
        return CentroidReport(basis, comm, _is_field(basis, comm, seed, g.field == QQ))

    return g.memo(("centroid", seed), compute)


def _is_field(basis, comm: bool, seed: int, over_q: bool) -> bool | None:
    if not basis:
        return False
    if not comm:
        return False
    if len(basis) == 1:
        return True
    if not over_q:
        return None
    rng = random.Random(seed)
    for _ in range(30):
        theta = _random_combination(basis, rng)
        mp = minimal_polynomial(theta)
        factors = _factor(mp)
        if len(factors) > 1 or factors[0][1] > 1:
            return False
        if len(mp) - 1 == len(basis):
            return True
    return False


def centroid_commutes_on_derived(g: FinDimLie, basis: list[list[list]] | None = None) -> bool:
    """``theta theta' z = theta' theta z`` for centroid elements and ``z`` in ``[g, g]``."""
    from ..exactla.linalg import matvec

    basis = centroid(g).basis if basis is None else basis
    d1 = g.bracket_spaces(g.full(), g.full())
    for a, b in combinations(basis, 2):
        for z in d1.rows:
            if matvec(a, matvec(b, z)) != matvec(b, matvec(a, z)):
                return False
    return True


def associative_closure(g: FinDimLie) -> int:
    """Dimension of the associative algebra generated by ``ad e_i``."""
    n = g.dim
    gens = [g.ad_basis(i) for i in range(n)]
    e = Echelon(n * n)
    queue = []
    for a in gens:
        v = sparse(flatten(a))
        if v and e.add(v):
            queue.append(a)
    gens = list(queue)
    while queue:
        w = queue.pop()
        for a in gens:
            p = matmul(a, w)
            v = sparse(flatten(p))
            if v and e.add(v):
                queue.append(p)
    return len(e)


# --- cohomology ---------------------------------------------------------------


@dataclass
class H2Report:
    dim: int
    cocycles: list[dict] = field(default_factory=list)
    z_dim: int = 0
    b_dim: int = 0

    def to_json(self) -> dict:
        from ..exactla.fields import scalar_to_json

        return {
            "dim": self.dim,
            "z2_dim": self.z_dim,
            "b2_dim": self.b_dim,
            "cocycles": [
                [[i, j, scalar_to_json(v)] for (i, j), v in sorted(c.items())] for c in self.cocycles
            ],
        }


def h2_trivial(g: FinDimLie) -> H2Report:
    """Second cohomology with trivial coefficients from cocycles modulo coboundaries."""
    n = g.dim
    pairs = list(combinations(range(n), 2))
    index = {p: t for t, p in enumerate(pairs)}
    npairs = len(pairs)

    def omega_row(v: dict, z: int, row: dict, sign=Fraction(1)):
        for m, c in v.items():
            if m == z:
                continue
            t, s = (index[(m, z)], 1) if m < z else (index[(z, m)], -1)
            row[t] = row.get(t, ZERO) + sign * s * c

    rows = []
    for i, j, k in combinations(range(n), 3):
        row: dict = {}
        omega_row(g.bracket_basis(i, j), k, row)
        omega_row(g.bracket_basis(j, k), i, row)
        omega_row(g.bracket_basis(k, i), j, row)
        row = {a: b for a, b in row.items() if b}
        if row:
            rows.append(row)
    z = Subspace(npairs, nullspace_sparse(rows, npairs))
    bvecs = []
    for m in range(n):
        bvecs.append([g.bracket_basis(a, b).get(m, ZERO) for a, b in pairs])
    b = Subspace(npairs, bvecs)
    reps = z.quotient_basis(b)
    cocycles = [{pairs[t]: x for t, x in enumerate(r) if x} for r in reps]
    return H2Report(z.dim - b.dim, cocycles, z.dim, b.dim)


# --- the filtration -----------------------------------------------------------


@dataclass
class FiltrationStep:
    term: Subspace
    radical: Subspace
    perfect_ideal: bool
    central_extension: bool

    def to_json(self) -> dict:
        return {
            "dim": self.term.dim,
            "radical_dim": self.radical.dim,
            "perfect_ideal": self.perfect_ideal,
            "central_extension": self.central_extension,
        }


@dataclass
class FiltrationReport:
    finite_radical: Subspace
    steps: list[FiltrationStep]

    @property
    def terms(self) -> list[Subspace]:
        return [s.term for s in self.steps]

    @property
    def certified(self) -> bool:
        return all(s.perfect_ideal and s.central_extension for s in self.steps)


def radical_of_subalgebra(g: FinDimLie, s: Subspace) -> Subspace:
    if s.dim == 0:
        return s
    h = restrict_to(g, s)
    return _embed(s, paper_radical(h))


def filtration_from(g: FinDimLie, start: Subspace) -> list[FiltrationStep]:
    """Successor steps ``G -> [rad G, rad G]`` from ``start`` down to 0, with certificates.

    Certificates: the term is a perfect ideal of ``g``, and ``rad G / G_next``
    is central in ``G / G_next``, i.e. ``[G, rad G]`` lies in ``G_next``.
    """
    steps = []
    cur = start
    full = g.full()
    while True:
        rad = radical_of_subalgebra(g, cur)
        nxt = g.bracket_spaces(rad, rad)
        perfect = g.bracket_spaces(full, cur) <= cur and g.bracket_spaces(cur, cur) == cur
        central = nxt <= rad and nxt.contains(g.bracket_spaces(cur, rad))
        steps.append(FiltrationStep(cur, rad, perfect, central))
        if cur.dim == 0 or nxt == cur:
            return steps
        cur = nxt


def filtration_theoremA(g: FinDimLie) -> FiltrationReport:
    rf = paper_radical(g, "finite_radical")
    g0 = largest_perfect_ideal(g, rf)
    return FiltrationReport(rf, filtration_from(g, g0))


def require_ideal(g: FinDimLie, m: Subspace) -> None:
    if not g.is_ideal(m):
        raise NotAnIdeal("subspace is not an ideal")
