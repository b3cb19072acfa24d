"""Exact linear algebra: canonical row reduction, solving, subspaces.

Everything is generic over the scalar type: entries only need ``+ - * /``
and truthiness for the zero test, so ``Fraction`` and
:class:`~wnlie.exactla.fields.FieldElement` both work.

Internally rows are sparse ``{column: value}`` dicts. The systems built by
the structure computations (derivations, centroids, cocycles) have a handful
of nonzeros per row, and dense elimination over ``Fraction`` is far too slow
for them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, InconsistentSystem

ZERO = Fraction(0)


def sparse(vec: Sequence) -> dict:
    return {i: Fraction(x) if isinstance(x, int) else x for i, x in enumerate(vec) if x}


def dense(vec: dict, n: int, zero=ZERO) -> list:
    out = [zero] * n
    for i, x in vec.items():
        out[i] = x
    return out


class Echelon:
    """Reduced row-echelon basis maintained under incremental insertion.

    Pivot rows are kept fully reduced, so every pivot column is zero in every
    other row and the leading entry of each row is 1 at its leftmost nonzero
    column. The resulting basis is the unique RREF of the spanned space.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        r = dict(vec)
        for p in [c for c in r if c in self.rows]:
            c = r.get(p)
            if not c:
                continue
            for k, v in self.rows[p].items():
                nv = r.get(k, ZERO) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return False when it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        lead = r[p]
        if lead != 1:
            r = {k: v / lead for k, v in r.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                for k, v in r.items():
                    nv = row.get(k, ZERO) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        self.rows[p] = r
        return True

    def extend(self, vecs: Iterable[dict]) -> None:
        for v in vecs:
            self.add(v)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def sorted_rows(self) -> list[dict]:
        return [self.rows[p] for p in sorted(self.rows)]

    def kernel_basis(self) -> list[dict]:
        """Basis of the null space of the row space, as sparse vectors."""
        free = [c for c in range(self.ncols) if c not in self.rows]
        col_hits: dict[int, list[tuple[int, object]]] = {}
        for p, row in self.rows.items():
            for k, v in row.items():
                if k != p:
                    col_hits.setdefault(k, []).append((p, v))
        out = []
        for f in free:
            vec = {f: Fraction(1)}
            for p, v in col_hits.get(f, ()):
                vec[p] = -v
            out.append(vec)
        return out


def rref(m: Sequence[Sequence]) -> tuple[list[list], int]:
    """Canonical reduced row-echelon form (same shape, zero rows last) and rank."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    e = Echelon(ncols)
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
        e.add(sparse(row))
    out = [dense(r, ncols) for r in e.sorted_rows()]
    rank = len(out)
    out.extend([ZERO] * ncols for _ in range(nrows - rank))
    return out, rank


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1]


def nullspace_sparse(rows: Iterable[dict], ncols: int) -> list[list]:
    e = Echelon(ncols)
    e.extend(rows)
    return [dense(v, ncols) for v in e.kernel_basis()]


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    if ncols is None:
        ncols = len(m[0]) if m else 0
    return nullspace_sparse((sparse(r) for r in m), ncols)


@dataclass(frozen=True)
class Solution:
    """Affine solution set ``particular + span(kernel)``."""

    particular: list
    kernel: list

    def is_unique(self) -> bool:
        return not self.kernel


def solve_linear(a: Sequence[Sequence], b: Sequence) -> Solution:
    """Solve ``a x = b`` exactly.

    ``b`` is either a vector or a matrix with one column per right-hand side;
    in the matrix case ``particular`` is a matrix of the same column count.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if len(b) != nrows:
        raise DimensionMismatch(f"a has {nrows} rows but b has {len(b)}")
    is_vec = not (nrows and isinstance(b[0], (list, tuple)))
    rhs = [[x] for x in b] if is_vec else [list(r) for r in b]
    k = len(rhs[0]) if rhs else (0 if not is_vec else 1)
    e = Echelon(ncols + k)
    for row, brow in zip(a, rhs):
        if len(row) != ncols:
            raise DimensionMismatch("ragged matrix")
        e.add(sparse(list(row) + brow))
    if any(p >= ncols for p in e.rows):
        raise InconsistentSystem("the system has no solution")
    cols = []
    for j in range(k):
        x = [ZERO] * ncols
        for p, row in e.rows.items():
            x[p] = row.get(ncols + j, ZERO)
        cols.append(x)
    # kernel of the coefficient part alone
    ea = Echelon(ncols)
    for p, row in e.rows.items():
        ea.rows[p] = {c: v for c, v in row.items() if c < ncols}
    kernel = [dense(v, ncols) for v in ea.kernel_basis()]
    if is_vec:
        particular = cols[0] if cols else [ZERO] * ncols
    else:
        particular = [[cols[j][i] for j in range(k)] for i in range(ncols)]
    return Solution(particular, kernel)


class Subspace:
    """Linear subspace of ``K^n`` stored by its canonical RREF basis."""

    __slots__ = ("ambient_dim", "rows", "__dict__")

    def __init__(self, ambient_dim: int, rows: Iterable[Sequence] = ()):
        e = Echelon(ambient_dim)
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in ambient dimension {ambient_dim}")
            e.add(sparse(r))
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(dense(r, ambient_dim)) for r in e.sorted_rows())
        self.__dict__["_echelon"] = e

    @classmethod
    def _from_echelon(cls, e: Echelon) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = e.ncols
        s.rows = tuple(tuple(dense(r, e.ncols)) for r in e.sorted_rows())
        s.__dict__["_echelon"] = e
        return s

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def span(cls, n: int, vectors: Iterable[Sequence]) -> "Subspace":
        return cls(n, vectors)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls(n, [[Fraction(int(i == j)) for j in range(n)] for i in sorted(set(indices))])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    @property
    def basis(self) -> list[list]:
        return [list(r) for r in self.rows]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._echelon.pivots())

    @property
    def _echelon(self) -> Echelon:
        return self.__dict__["_echelon"]

    def _check(self, n: int):
        if n != self.ambient_dim:
            raise DimensionMismatch(f"ambient dimensions {self.ambient_dim} and {n} differ")

    def reduce(self, v: Sequence) -> list:
        """Normal form of ``v`` modulo this subspace (zero at every pivot)."""
        self._check(len(v))
        return dense(self._echelon.reduce(sparse(v)), self.ambient_dim)

    def contains(self, v) -> bool:
        if isinstance(v, Subspace):
            self._check(v.ambient_dim)
            return all(self._echelon.contains(sparse(r)) for r in v.rows)
        self._check(len(v))
        return self._echelon.contains(sparse(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> list:
        """Coefficients of ``v`` in the canonical basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other.ambient_dim)
        e = Echelon(self.ambient_dim)
        e.rows = {p: dict(r) for p, r in self._echelon.rows.items()}
        for r in other.rows:
            e.add(sparse(r))
        return Subspace._from_echelon(e)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus intersection."""
        self._check(other.ambient_dim)
        n = self.ambient_dim
        if not self.rows or not other.rows:
            return Subspace(n)
        e = Echelon(2 * n)
        for r in self.rows:
            e.add({**sparse(r), **{n + i: x for i, x in enumerate(r) if x}})
        for r in other.rows:
            e.add(sparse(r))
        out = [dense({k - n: v for k, v in row.items()}, n) for p, row in e.rows.items() if p >= n]
        return Subspace(n, out)

    def quotient_basis(self, sub: "Subspace") -> list[list]:
        """Vectors of this space completing ``sub``'s basis to a basis of this space."""
        self._check(sub.ambient_dim)
        if not self.contains(sub):
            raise ValueError("argument is not a subspace of this space")
        e = Echelon(self.ambient_dim)
        e.rows = {p: dict(r) for p, r in sub._echelon.rows.items()}
        out = []
        for r in self.rows:
            if e.add(sparse(r)):
                out.append(list(r))
        return out

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def to_json(self) -> list:
        from .fields import scalar_to_json

        return [[scalar_to_json(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, rows: list, ambient_dim: int, fld=None) -> "Subspace":
        from .fields import QQ

        fld = fld or QQ
        return cls(ambient_dim, [[fld(x) for x in r] for r in rows])


def subspace_ops(kind: str, u: Subspace, v):
    """Dispatcher over ``sum | intersection | quotient_basis | membership``."""
    if kind == "sum":
        return u + v
    if kind == "intersection":
        return u.intersect(v)
    if kind == "quotient_basis":
        return u.quotient_basis(v)
    if kind == "membership":
        return u.contains(v)
    raise ValueError(f"unknown subspace operation {kind!r}")


# --- small dense matrix helpers -------------------------------------------


def identity(n: int, one=Fraction(1), zero=ZERO) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(r: int, c: int, zero=ZERO) -> list[list]:
    return [[zero] * c for _ in range(r)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    if len(a[0]) != inner:
        raise DimensionMismatch("inner dimensions differ")
    ncols = len(b[0]) if inner else 0
    out = []
    for row in a:
        acc = [ZERO] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    if bk[j]:
                        acc[j] = acc[j] + x * bk[j]
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*a)] if a else []


def matadd(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matsub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def matscale(a, c):
    return [[c * x for x in r] for r in a]


def trace(a) -> object:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def flatten(a) -> list:
    return [x for r in a for x in r]


def unflatten(v: Sequence, n: int) -> list[list]:
    return [list(v[i * n:(i + 1) * n]) for i in range(len(v) // n)]


def is_zero_matrix(a) -> bool:
    return not any(x for r in a for x in r)


def minimal_polynomial(a: Sequence[Sequence]) -> tuple:
    """Monic minimal polynomial of a square matrix, constant term first."""
    from . import poly as P

    n = len(a)
    e = Echelon(n * n)
    powers = []
    cur = identity(n)
    while True:
        v = sparse(flatten(cur))
        red = e.reduce(v)
        if not red:
            break
        powers.append(flatten(cur))
        e.add(v)
        cur = matmul(cur, a)
    # express cur = sum c_k a^k
    d = len(powers)
    cols = [[powers[k][i] for k in range(d)] for i in range(n * n)]
    sol = solve_linear(cols, flatten(cur))
    return P.normalize([-c for c in sol.particular] + [Fraction(1)])
