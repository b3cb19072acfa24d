"""Finite-dimensional Lie algebras given by structure constants."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from ..errors import DimensionMismatch, JacobiViolation, NotADerivationAction, NotAnIdeal, ParseError
from ..exactla.fields import QQ, FieldSpec, scalar_to_json
from ..exactla.linalg import Echelon, Subspace, dense, sparse

ZERO = Fraction(0)


def _axpy(acc: dict, c, vec: dict) -> None:
    for k, v in vec.items():
        nv = acc.get(k, ZERO) + c * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)


class FinDimLie:
    """Lie algebra with basis ``e_0 .. e_{n-1}`` and ``[e_i, e_j] = sum_k c_ij^k e_k``.

    ``brackets`` maps pairs ``(i, j)`` with ``i < j`` to sparse ``{k: c}``
    dicts; the other half of the table is filled in by antisymmetry. Jacobi is
    validated unless ``check=False`` (used only to probe non-Lie tensors).
    """

    def __init__(
        self,
        dim: int,
        brackets: dict,
        labels: Sequence[str] | None = None,
        field: FieldSpec = QQ,
        check: bool = True,
        name: str | None = None,
    ):
        self.dim = dim
        self.field = field
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(dim)]
        if len(self.labels) != dim:
            raise DimensionMismatch(f"{len(self.labels)} labels for dimension {dim}")
        self.name = name
        table: dict[tuple[int, int], dict] = {}
        for (i, j), val in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(f"bracket index ({i}, {j}) out of range")
            if i == j:
                if any(val.values()):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            val = {k: (Fraction(c) if isinstance(c, int) else c) for k, c in val.items() if c}
            for k in val:
                if not 0 <= k < dim:
                    raise DimensionMismatch(f"bracket value index {k} out of range")
            if not val:
                continue
            if i > j:
                i, j = j, i
                val = {k: -c for k, c in val.items()}
            table[(i, j)] = val
            table[(j, i)] = {k: -c for k, c in val.items()}
        self._table = table
        self._memo: dict = {}
        self._lock = threading.Lock()
        self.checked = check
        if check:
            rep = jacobi_defect(self)
            if rep is not None:
                raise JacobiViolation(
                    f"Jacobi fails on basis triple {rep.triple}", triple=rep.triple, defect=rep.defect
                )

    # --- evaluation -------------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._table.get((i, j), {})

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                c = self._table.get((i, j))
                if c:
                    _axpy(out, a * b, c)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> list:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors must have length {self.dim}")
        return dense(self.bracket_sparse(sparse(x), sparse(y)), self.dim, self.field.zero())

    def ad(self, x: Sequence) -> list[list]:
        """Matrix of ``ad x`` acting on column vectors."""
        xs = sparse(x)
        cols = [self.bracket_sparse(xs, {j: Fraction(1)}) for j in range(self.dim)]
        zero = self.field.zero()
        return [[cols[j].get(k, zero) for j in range(self.dim)] for k in range(self.dim)]

    def ad_basis(self, i: int) -> list[list]:
        return self.memo(("ad", i), lambda: self.ad(self.unit(i)))

    def unit(self, i: int) -> list:
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return v

    def nonzero_pairs(self) -> list[tuple[int, int]]:
        return sorted(p for p in self._table if p[0] < p[1])

    def is_abelian(self) -> bool:
        return not self._table

    # --- memo -------------------------------------------------------------

    def memo(self, key, fn: Callable):
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        val = fn()
        with self._lock:
            return self._memo.setdefault(key, val)

    # --- subspace helpers ---------------------------------------------------

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero_space(self) -> Subspace:
        return Subspace(self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace(self.dim, vectors)

    def bracket_spaces(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of all ``[x, y]`` with ``x`` in ``a`` and ``y`` in ``b``."""
        e = Echelon(self.dim)
        bs = [sparse(r) for r in b.rows]
        for r in a.rows:
            x = sparse(r)
            for y in bs:
                v = self.bracket_sparse(x, y)
                if v:
                    e.add(v)
            if len(e) == self.dim:
                break
        return Subspace._from_echelon(e)

    def is_ideal(self, m: Subspace) -> bool:
        return m.contains(self.bracket_spaces(self.full(), m))

    def is_subalgebra(self, m: Subspace) -> bool:
        return m.contains(self.bracket_spaces(m, m))

    def require_ideal(self, m: Subspace) -> None:
        if m.ambient_dim != self.dim:
            raise DimensionMismatch("subspace lives in a different ambient space")
        if not self.is_ideal(m):
            raise NotAnIdeal("subspace is not closed under bracketing with the algebra")

    # --- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        out = []
        for i, j in self.nonzero_pairs():
            val = self._table[(i, j)]
            out.append({"i": i, "j": j, "value": [[k, scalar_to_json(val[k])] for k in sorted(val)]})
        return {"field": self.field.to_json(), "dim": self.dim, "labels": list(self.labels), "brackets": out}

    @classmethod
    def from_json(cls, obj: dict, check: bool = True) -> "FinDimLie":
        try:
            fld = FieldSpec.from_json(obj.get("field", {"kind": "rationals"}))
            dim = int(obj["dim"])
            labels = obj.get("labels")
            brackets = {}
            for pos, b in enumerate(obj.get("brackets", [])):
                where = f"brackets[{pos}]"
                i, j = b["i"], b["j"]
                if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < dim and 0 <= j < dim and i < j):
                    raise ParseError(f"bad bracket indices ({i}, {j})", location=where)
                val = {}
                for k, c in b["value"]:
                    if not (isinstance(k, int) and 0 <= k < dim):
                        raise ParseError(f"bad value index {k}", location=where)
                    val[k] = fld(c)
                brackets[(i, j)] = val
        except ParseError:
            raise
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"malformed algebra: {exc}") from exc
        return cls(dim, brackets, labels, fld, check=check)

    def structurally_equal(self, other: "FinDimLie") -> bool:
        return (
            self.dim == other.dim
            and self.field == other.field
            and self.labels == other.labels
            and self.to_json() == other.to_json()
        )

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FinDimLie{tag} dim={self.dim}>"


@dataclass(frozen=True)
class JacobiReport:
    triple: tuple[int, int, int]
    defect: list
    violations: int


def jacobi_vector(g: FinDimLie, i: int, j: int, k: int) -> dict:
    ei, ej, ek = ({i: Fraction(1)}, {j: Fraction(1)}, {k: Fraction(1)})
    out: dict = {}
    for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
        _axpy(out, Fraction(1), g.bracket_sparse(g.bracket_sparse(a, b), c))
    return out


def jacobi_defect(g: FinDimLie) -> JacobiReport | None:
    """First basis triple violating Jacobi (with the total count), or None."""
    first = None
    count = 0
    for i, j, k in combinations(range(g.dim), 3):
        v = jacobi_vector(g, i, j, k)
        if v:
            count += 1
            if first is None:
                first = ((i, j, k), dense(v, g.dim, g.field.zero()))
    if first is None:
        return None
    return JacobiReport(first[0], first[1], count)


# --- constructions -----------------------------------------------------------


def from_sc(dim: int, brackets: dict, labels=None, field: FieldSpec = QQ, check: bool = True) -> FinDimLie:
    return FinDimLie(dim, brackets, labels, field, check=check)


def from_matrices(mats: Sequence[Sequence[Sequence]], labels=None, field: FieldSpec = QQ) -> FinDimLie:
    """Lie algebra spanned by linearly independent matrices, bracket = commutator."""
    from ..exactla.linalg import flatten, matmul, matsub

    flat = [flatten(m) for m in mats]
    span = Subspace(len(flat[0]), flat)
    if span.dim != len(mats):
        raise ValueError("matrices are linearly dependent")
    # coordinates in the given (not canonical) basis
    n = len(mats)
    cols = [[flat[i][k] for i in range(n)] for k in range(len(flat[0]))]
    from ..exactla.linalg import solve_linear

    br = {}
    for i, j in combinations(range(n), 2):
        c = matsub(matmul(mats[i], mats[j]), matmul(mats[j], mats[i]))
        sol = solve_linear(cols, flatten(c))
        val = sparse(sol.particular)
        if val:
            br[(i, j)] = val
    return FinDimLie(n, br, labels, field)


def restrict_to(g: FinDimLie, m: Subspace, labels=None) -> FinDimLie:
    """The subalgebra ``m`` as an algebra in its canonical basis."""
    if not g.is_subalgebra(m):
        raise ValueError("subspace is not a subalgebra")
    rows = [sparse(r) for r in m.rows]
    piv = m.pivots
    br = {}
    for a, b in combinations(range(m.dim), 2):
        v = g.bracket_sparse(rows[a], rows[b])
        if v:
            val = {idx: v[p] for idx, p in enumerate(piv) if v.get(p)}
            br[(a, b)] = val
    if labels is None:
        labels = [g.labels[p] for p in piv]
    return FinDimLie(m.dim, br, labels, g.field, check=False)


@dataclass
class Quotient:
    """``g / m`` realized on the coordinates complementary to ``m``'s pivots."""

    algebra: FinDimLie
    ideal: Subspace
    columns: list[int]

    def project(self, x: Sequence) -> list:
        r = self.ideal.reduce(x)
        return [r[c] for c in self.columns]

    def lift(self, y: Sequence) -> list:
        n = self.ideal.ambient_dim
        out = [ZERO] * n
        for c, v in zip(self.columns, y):
            out[c] = v
        return out

    def preimage(self, s: Subspace) -> Subspace:
        return self.ideal + Subspace(self.ideal.ambient_dim, [self.lift(r) for r in s.rows])


def quotient(g: FinDimLie, m: Subspace) -> Quotient:
    g.require_ideal(m)
    piv = set(m.pivots)
    cols = [c for c in range(g.dim) if c not in piv]
    pos = {c: idx for idx, c in enumerate(cols)}
    e = m._echelon
    br = {}
    for a, b in combinations(range(len(cols)), 2):
        v = e.reduce(g.bracket_basis(cols[a], cols[b]))
        if v:
            br[(a, b)] = {pos[c]: x for c, x in v.items()}
    q = FinDimLie(len(cols), br, [g.labels[c] for c in cols], g.field, check=False)
    return Quotient(q, m, cols)


def subalgebra_generated(g: FinDimLie, vectors: Iterable[Sequence]) -> Subspace:
    e = Echelon(g.dim)
    found: list[dict] = []
    queue = []
    for v in vectors:
        s = sparse(v)
        if e.add(s):
            queue.append(s)
    while queue:
        v = queue.pop()
        for w in list(found):
            b = g.bracket_sparse(v, w)
            if b and e.add(b):
                queue.append(b)
        found.append(v)
    return Subspace._from_echelon(e)


def ideal_generated(g: FinDimLie, vectors: Iterable[Sequence]) -> Subspace:
    e = Echelon(g.dim)
    queue = []
    for v in vectors:
        s = sparse(v)
        if e.add(s):
            queue.append(s)
    while queue and len(e) < g.dim:
        v = queue.pop()
        for j in range(g.dim):
            b = g.bracket_sparse({j: Fraction(1)}, v)
            if b and e.add(b):
                queue.append(b)
    return Subspace._from_echelon(e)


def direct_sum(*algebras: FinDimLie) -> FinDimLie:
    br = {}
    labels = []
    off = 0
    fld = algebras[0].field if algebras else QQ
    for idx, g in enumerate(algebras):
        for (i, j) in g.nonzero_pairs():
            br[(i + off, j + off)] = {k + off: c for k, c in g.bracket_basis(i, j).items()}
        tag = f"_{idx}" if len(algebras) > 1 else ""
        labels += [f"{lab}{tag}" for lab in g.labels]
        off += g.dim
    return FinDimLie(off, br, labels, fld, check=False)


def semidirect(s: FinDimLie, r: FinDimLie, action: Sequence[Sequence[Sequence]], check: bool = True) -> FinDimLie:
    """``s ⋉ r`` where ``action[i]`` is the matrix by which ``s``'s basis vector ``i`` acts on ``r``.

    The action must be a homomorphism into the derivations of ``r``.
    """
    from ..exactla.linalg import matmul, matsub, matvec

    n, m = s.dim, r.dim
    if len(action) != n or any(len(a) != m or any(len(row) != m for row in a) for a in action):
        raise DimensionMismatch("action must be one dim(r) x dim(r) matrix per basis vector of s")
    if check:
        for i in range(n):
            d = action[i]
            for a, b in combinations(range(m), 2):
                lhs = matvec(d, dense(r.bracket_basis(a, b), m))
                rhs = [x + y for x, y in zip(r.bracket([row[a] for row in d], r.unit(b)), r.bracket(r.unit(a), [row[b] for row in d]))]
                if lhs != rhs:
                    raise NotADerivationAction(f"basis element {s.labels[i]} does not act by a derivation")
        for i, j in combinations(range(n), 2):
            comm = matsub(matmul(action[i], action[j]), matmul(action[j], action[i]))
            target = [[ZERO] * m for _ in range(m)]
            for k, c in s.bracket_basis(i, j).items():
                target = [[t + c * x for t, x in zip(tr, ar)] for tr, ar in zip(target, action[k])]
            if comm != target:
                raise NotADerivationAction(f"action is not a homomorphism on ({s.labels[i]}, {s.labels[j]})")
    br = {}
    for (i, j) in s.nonzero_pairs():
        br[(i, j)] = dict(s.bracket_basis(i, j))
    for (a, b) in r.nonzero_pairs():
        br[(n + a, n + b)] = {n + k: c for k, c in r.bracket_basis(a, b).items()}
    for i in range(n):
        for a in range(m):
            col = {n + k: action[i][k][a] for k in range(m) if action[i][k][a]}
            if col:
                br[(i, n + a)] = col
    return FinDimLie(n + m, br, list(s.labels) + list(r.labels), s.field, check=check)


def change_basis(g: FinDimLie, p: Sequence[Sequence], labels=None) -> FinDimLie:
    """Same algebra in the basis ``f_i = sum_k p[k][i] e_k`` (``p`` invertible)."""
    from ..exactla.linalg import solve_linear

    n = g.dim
    cols = [sparse([p[k][i] for k in range(n)]) for i in range(n)]
    br = {}
    for i, j in combinations(range(n), 2):
        v = g.bracket_sparse(cols[i], cols[j])
        if v:
            sol = solve_linear(p, dense(v, n))
            br[(i, j)] = sparse(sol.particular)
    return FinDimLie(n, br, labels or [f"f{i}" for i in range(n)], g.field, check=False)


def restrict_scalars(g: FinDimLie) -> FinDimLie:
    """View an algebra over ``Q[x]/(p)`` as an algebra over ``Q`` of ``deg(p)`` times the dimension.

    Basis ordering is ``x^a e_i`` at index ``i * deg + a``.
    """
    if g.field.kind == "rationals":
        return g
    fld = g.field
    d = fld.degree
    gen = fld.gen()
    powers = [fld.one()]
    for _ in range(2 * d):
        powers.append(powers[-1] * gen)
    br = {}
    n = g.dim * d
    for i in range(g.dim):
        for j in range(g.dim):
            c = g.bracket_basis(i, j)
            if not c or i == j:
                continue
            for a in range(d):
                for b in range(d):
                    ia, jb = i * d + a, j * d + b
                    if ia >= jb:
                        continue
                    out = {}
                    for k, val in c.items():
                        prod = val * powers[a + b]
                        for t, q in enumerate(prod.coeffs):
                            if q:
                                out[k * d + t] = out.get(k * d + t, ZERO) + q
                    out = {k: v for k, v in out.items() if v}
                    if out:
                        br[(ia, jb)] = out
    labels = [f"{lab}" if a == 0 else f"x^{a}*{lab}" for lab in g.labels for a in range(d)]
    return FinDimLie(n, br, labels, QQ, check=False)


def extend_scalars(g: FinDimLie, fld: FieldSpec) -> FinDimLie:
    if g.field != QQ:
        raise ValueError("only extension from the rationals is supported")
    br = {p: {k: fld(c) for k, c in g.bracket_basis(*p).items()} for p in g.nonzero_pairs()}
    return FinDimLie(g.dim, br, g.labels, fld, check=False)


def build(kind: str, *args, **kwargs):
    """Dispatcher over the construction kinds."""
    table = {
        "from_sc": from_sc,
        "quotient": quotient,
        "subalgebra_generated": subalgebra_generated,
        "ideal_generated": ideal_generated,
        "direct_sum": direct_sum,
        "semidirect": semidirect,
    }
    if kind not in table:
        raise ValueError(f"unknown construction {kind!r}")
    return table[kind](*args, **kwargs)
