"""Split tori, weight decompositions and root data of graded algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence, Union

from ..errors import NotSplit, RankNotOne
from ..exactla import poly as P
from ..exactla.linalg import Subspace, minimal_polynomial, nullspace_sparse, sparse
from ..exactla.poly import format_rational
from ..fdlie.algebra import FinDimLie
from ..fdlie.analysis import _factor
from ..graded.core import WindowedView, add_deg

Algebra = Union[FinDimLie, WindowedView]


@dataclass
class TorusSpec:
    """Commuting elements ``h_1, ..., h_r``.

    For a finite-dimensional algebra each ``h_i`` is a full coordinate vector;
    for a windowed graded algebra it is a vector in the degree-0 component.
    """

    elements: list
    split: bool | None = None

    @property
    def rank(self) -> int:
        return len(self.elements)


def _blocks(v: Algebra) -> list[tuple[object, list[int]]]:
    """Pieces preserved by the torus: one block for ``FinDimLie``, one per degree for a view."""
    if isinstance(v, WindowedView):
        return [(d, idx) for d, idx in v.by_degree.items()]
    return [(None, list(range(v.dim)))]


def _torus_vector(v: Algebra, h: Sequence) -> dict:
    if isinstance(v, WindowedView):
        zero = tuple([0] * v.parent.rank)
        idx = v.by_degree.get(zero, [])
        if len(h) != len(idx):
            raise ValueError(f"torus element needs {len(idx)} degree-0 coordinates")
        return {idx[k]: Fraction(c) for k, c in enumerate(h) if c}
    if len(h) != v.dim:
        raise ValueError(f"torus element needs {v.dim} coordinates")
    return {k: Fraction(c) for k, c in enumerate(h) if c}


def _ad_block(v: Algebra, h: dict, idx: list[int]) -> list[list[Fraction]]:
    """Matrix of ``ad h`` restricted to the span of ``idx`` (which it preserves)."""
    pos = {t: k for k, t in enumerate(idx)}
    n = len(idx)
    m = [[Fraction(0)] * n for _ in range(n)]
    for col, t in enumerate(idx):
        for k, c in v.bracket_sparse(h, {t: Fraction(1)}).items():
            if k not in pos:
                raise ValueError("the torus does not preserve a homogeneous block")
            m[pos[k]][col] = c
    return m


def check_torus(v: Algebra, t: TorusSpec) -> list[dict]:
    """Verify commutation and splitness; returns the sparse torus vectors."""
    hs = [_torus_vector(v, h) for h in t.elements]
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            if v.bracket_sparse(hs[a], hs[b]):
                raise ValueError(f"torus elements {a} and {b} do not commute")
    for h in hs:
        for _, idx in _blocks(v):
            _eigenvalues(_ad_block(v, h, idx))
    t.split = True
    return hs


def _eigenvalues(m: list[list]) -> list[Fraction]:
    """Distinct eigenvalues of a diagonalizable matrix with rational spectrum, else NotSplit."""
    if not m:
        return []
    mp = minimal_polynomial(m)
    roots = P.rational_roots(mp)
    prod = (Fraction(1),)
    for r in roots:
        prod = P.mul(prod, (-r, Fraction(1)))
    if prod == mp:
        return sorted(roots)
    bad = None
    for f, mult in _factor(mp) or []:
        if len(f) > 2:
            bad = f
            break
        if mult > 1:
            bad = P.power(f, mult)
    raise NotSplit(f"minimal polynomial {list(map(str, mp))} of ad h does not split into distinct linear factors", factor=bad)


def _kernel_shift(m: list[list], r: Fraction) -> Subspace:
    n = len(m)
    rows = [sparse([m[i][j] - (r if i == j else 0) for j in range(n)]) for i in range(n)]
    return Subspace(n, nullspace_sparse([x for x in rows if x], n))


@dataclass
class WeightSpace:
    weight: tuple
    degree: tuple | None
    space: Subspace  # in the ambient coordinates of the algebra


def weight_decomposition(v: Algebra, t: TorusSpec, verify: bool = True) -> list[WeightSpace]:
    """Simultaneous eigenspaces of ``ad h_1, ..., ad h_r``, block by block."""
    hs = check_torus(v, t)
    out = []
    for deg, idx in _blocks(v):
        pieces = [((), Subspace.full(len(idx)))]
        for h in hs:
            m = _ad_block(v, h, idx)
            nxt = []
            for r in _eigenvalues(m):
                ker = _kernel_shift(m, r)
                for w, s in pieces:
                    part = s.intersect(ker)
                    if part.dim:
                        nxt.append((w + (r,), part))
            pieces = nxt
        for w, s in pieces:
            rows = []
            for row in s.rows:
                full = [Fraction(0)] * v.dim
                for k, c in enumerate(row):
                    full[idx[k]] = c
                rows.append(full)
            out.append(WeightSpace(w, deg, Subspace(v.dim, rows)))
    out.sort(key=lambda ws: (ws.weight, ws.degree or ()))
    if verify:
        _verify_decomposition(v, out)
    return out


def _verify_decomposition(v: Algebra, spaces: list[WeightSpace]) -> None:
    total = sum(ws.space.dim for ws in spaces)
    if total != v.dim:
        raise ArithmeticError("weight spaces do not span the algebra")
    lookup = {(ws.weight, ws.degree): ws.space for ws in spaces}
    for a, b in product(spaces, repeat=2):
        w = tuple(x + y for x, y in zip(a.weight, b.weight))
        d = None if a.degree is None else add_deg(a.degree, b.degree)
        if isinstance(v, WindowedView) and not v.window.contains(d):
            continue
        target = lookup.get((w, d))
        for x in a.space.rows:
            for y in b.space.rows:
                z = v.bracket_sparse(sparse(x), sparse(y))
                if not z:
                    continue
                vec = [z.get(k, Fraction(0)) for k in range(v.dim)]
                if target is None or not target.contains(vec):
                    raise ArithmeticError(f"bracket of weights {a.weight} and {b.weight} is not in weight {w}")


@dataclass(frozen=True)
class Root:
    alpha: tuple
    n: tuple
    mult: int

    @property
    def real(self) -> bool:
        return any(self.alpha)

    def to_json(self) -> dict:
        n = self.n[0] if len(self.n) == 1 else list(self.n)
        return {"alpha": [format_rational(a) for a in self.alpha], "n": n, "mult": self.mult, "real": self.real}


@dataclass
class RootDatum:
    roots: list[Root]
    zero_dim: int
    lattice_basis: list
    rank: int
    window: object = None
    meta: dict = field(default_factory=dict)

    @property
    def has_real_root(self) -> bool:
        return any(r.real for r in self.roots)

    def occurs(self, alpha: tuple, n: tuple) -> bool:
        """``(alpha, n)`` is a root or the zero weight with a nonzero space."""
        if not any(alpha) and not any(n):
            return self.zero_dim > 0
        return any(r.alpha == alpha and r.n == n for r in self.roots)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "roots": [r.to_json() for r in self.roots],
            "has_real_root": self.has_real_root,
        }


def _lattice(vectors: list[tuple]) -> tuple[int, list]:
    if not vectors:
        return 0, []
    s = Subspace(len(vectors[0]), [list(v) for v in vectors])
    return s.dim, [list(r) for r in s.rows]


def root_data(v: Algebra, t: TorusSpec) -> RootDatum:
    spaces = weight_decomposition(v, t)
    roots = []
    zero = 0
    for ws in spaces:
        n = ws.degree if ws.degree is not None else (0,)
        if not any(ws.weight) and not any(n):
            zero += ws.space.dim
            continue
        roots.append(Root(tuple(ws.weight), tuple(n), ws.space.dim))
    roots.sort(key=lambda r: (r.alpha, r.n))
    rank, basis = _lattice([tuple(r.alpha) + tuple(Fraction(x) for x in r.n) for r in roots])
    meta = dict(getattr(getattr(v, "parent", v), "meta", {}) or {})
    return RootDatum(roots, zero, basis, rank, getattr(v, "window", None), meta)


@dataclass
class Rank1Report:
    label: str
    real: int
    imaginary: int
    expected: str | None
    consistent: bool | None

    def to_json(self) -> dict:
        return {"label": self.label, "real": self.real, "imaginary": self.imaginary, "expected": self.expected, "consistent": self.consistent}


FAMILY_LABELS = {"witt": "all_real", "virasoro_hat": "all_real", "kn_genus0": "all_real"}


def rank1_classify(datum: RootDatum) -> Rank1Report:
    """All roots real (Witt/Virasoro type) or all imaginary."""
    if datum.rank != 1:
        raise RankNotOne(f"root lattice has rank {datum.rank}")
    real = sum(1 for r in datum.roots if r.real)
    imag = len(datum.roots) - real
    label = "all_real" if imag == 0 else "all_imaginary" if real == 0 else "mixed"
    expected = FAMILY_LABELS.get(datum.meta.get("family"))
    return Rank1Report(label, real, imag, expected, None if expected is None else expected == label)


@dataclass
class AlphaString:
    alpha: tuple
    beta: tuple
    ks: list[int]
    unbounded_in_window: bool
    hits: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "alpha": _root_json(self.alpha),
            "beta": _root_json(self.beta),
            "ks": self.ks,
            "unbounded_in_window": self.unbounded_in_window,
            "boundary": self.hits,
        }


def _root_json(r):
    a, n = r
    return {"alpha": [format_rational(x) for x in a], "n": list(n)}


def alpha_string(datum: RootDatum, alpha: tuple, beta: tuple, limit: int = 1000) -> AlphaString:
    """The ``k`` with ``beta + k alpha`` a root (or the zero weight) inside the window.

    Each root is ``(weight, degree)``. A direction that leaves the window while
    still in the string marks it unbounded within the window.
    """
    (a, an), (b, bn) = alpha, beta
    a = tuple(Fraction(x) for x in a)
    b = tuple(Fraction(x) for x in b)
    an, bn = tuple(an), tuple(bn)
    if not any(a):
        raise ValueError("alpha must be a real root")
    if not datum.occurs(b, bn):
        raise ValueError("beta is not a root")
    win = datum.window

    def point(k):
        return tuple(x + k * y for x, y in zip(b, a)), tuple(x + k * y for x, y in zip(bn, an))

    ks = [0]
    hits = []
    for step in (1, -1):
        k = step
        while abs(k) <= limit:
            w, n = point(k)
            if win is not None and not win.contains(n):
                hits.append("up" if step > 0 else "down")
                break
            if not datum.occurs(w, n):
                break
            ks.append(k)
            k += step
    return AlphaString((a, an), (b, bn), sorted(ks), bool(hits), hits)


def default_torus(v: Algebra) -> TorusSpec:
    """Evident torus for the built-in families: ``L_0``, ``h`` or the diagonal ``H_i``."""
    if isinstance(v, WindowedView):
        return TorusSpec(_graded_torus(v.parent))
    labels = v.labels
    hs = [k for k, lab in enumerate(labels) if lab == "h" or (lab.startswith("H") and lab[1:].isdigit())]
    return TorusSpec([[int(k == i) for k in range(v.dim)] for i in hs])


def _graded_torus(g) -> list:
    fam = g.meta.get("family")
    dim0 = g.dim(tuple([0] * g.rank))
    if fam in ("witt", "virasoro_hat", "kn_genus0"):
        return [[1] + [0] * (dim0 - 1)] if dim0 else []
    if getattr(g, "base", None) is not None:
        return default_torus(g.base).elements
    if getattr(g, "inner", None) is not None:
        return _graded_torus(g.inner)
    if fam == "axis_sum":
        return [[int(k == i) for k in range(dim0)] for i in range(dim0)]
    return []
