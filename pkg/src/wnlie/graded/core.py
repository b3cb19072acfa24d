"""Lazily evaluated Z^n-graded Lie algebras and finite degree windows."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

from ..errors import DimensionMismatch, ParseError, WindowOverflow
from ..exactla.fields import QQ, FieldSpec, scalar_to_json
from ..exactla.linalg import Subspace
from ..fdlie.algebra import FinDimLie

Degree = tuple


def as_degree(d) -> Degree:
    if isinstance(d, int):
        return (d,)
    return tuple(int(x) for x in d)


def add_deg(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def neg_deg(a: Degree) -> Degree:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class Component:
    dim: int
    labels: tuple


class GradedLie:
    """Z^n-graded Lie algebra given by providers.

    ``component(deg)`` returns ``(dim, labels)`` and ``bracket(d1, i, d2, j)``
    returns a sparse ``{k: c}`` over the basis of ``component(d1 + d2)``.
    Providers must be pure; their results are memoized.
    """

    def __init__(
        self,
        rank: int,
        component: Callable,
        bracket: Callable,
        name: str | None = None,
        meta: dict | None = None,
        spec: dict | None = None,
        field: FieldSpec = QQ,
    ):
        self.rank = rank
        self._component = component
        self._bracket = bracket
        self.name = name
        self.meta = dict(meta or {})
        self.spec = spec
        self.field = field
        self._comp_cache: dict = {}
        self._br_cache: dict = {}
        self._lock = threading.Lock()

    def component(self, deg) -> Component:
        deg = as_degree(deg)
        if len(deg) != self.rank:
            raise DimensionMismatch(f"degree {deg} has the wrong rank (expected {self.rank})")
        c = self._comp_cache.get(deg)
        if c is None:
            dim, labels = self._component(deg)
            labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(dim))
            c = Component(dim, labels)
            with self._lock:
                self._comp_cache[deg] = c
        return c

    def dim(self, deg) -> int:
        return self.component(deg).dim

    def hom_bracket(self, d1, i: int, d2, j: int) -> dict:
        d1, d2 = as_degree(d1), as_degree(d2)
        key = (d1, i, d2, j)
        v = self._br_cache.get(key)
        if v is None:
            if (d1, i) == (d2, j):
                v = {}
            else:
                v = {k: (Fraction(c) if isinstance(c, int) else c) for k, c in self._bracket(d1, i, d2, j).items() if c}
            with self._lock:
                self._br_cache[key] = v
        return v

    def support(self, window: "Window") -> list[Degree]:
        return [d for d in window.degrees() if self.dim(d)]

    def to_json(self, window: "Window | None" = None) -> dict:
        if self.spec is not None and window is None:
            return dict(self.spec)
        if window is None:
            raise ValueError("an explicit serialization needs a window")
        return explicit_json(self, window)

    def __repr__(self):
        return f"<GradedLie {self.name or ''} rank={self.rank}>"


def explicit(rank: int, components: dict, brackets: dict, name=None, field: FieldSpec = QQ, meta=None) -> GradedLie:
    """Graded algebra from finite tables; components absent from the table are zero.

    ``components`` maps degree -> (dim, labels); ``brackets`` maps
    ``(d1, i, d2, j)`` -> sparse dict, one orientation per pair.
    """
    comps = {as_degree(d): v for d, v in components.items()}
    table = {}
    for (d1, i, d2, j), val in brackets.items():
        d1, d2 = as_degree(d1), as_degree(d2)
        table[(d1, i, d2, j)] = dict(val)
        table[(d2, j, d1, i)] = {k: -c for k, c in val.items()}

    def comp(d):
        return comps.get(d, (0, ()))

    def br(d1, i, d2, j):
        return table.get((d1, i, d2, j), {})

    return GradedLie(rank, comp, br, name=name, field=field, meta=meta)


def explicit_json(g: GradedLie, window: "Window") -> dict:
    comps = []
    brs = []
    support = g.support(window)
    for d in support:
        c = g.component(d)
        comps.append({"degree": list(d), "dim": c.dim, "labels": list(c.labels)})
    for a, d1 in enumerate(support):
        for d2 in support[a:]:
            for i in range(g.dim(d1)):
                for j in range(g.dim(d2)):
                    if d1 == d2 and j <= i:
                        continue
                    v = g.hom_bracket(d1, i, d2, j)
                    if v and window.contains(add_deg(d1, d2)):
                        brs.append(
                            {"d1": list(d1), "i": i, "d2": list(d2), "j": j, "value": [[k, scalar_to_json(v[k])] for k in sorted(v)]}
                        )
    return {"lattice_rank": g.rank, "components": comps, "brackets": brs}


def from_explicit_json(obj: dict) -> GradedLie:
    try:
        rank = int(obj["lattice_rank"])
        comps = {}
        for pos, c in enumerate(obj["components"]):
            d = as_degree(c["degree"])
            if len(d) != rank:
                raise ParseError("degree has the wrong rank", location=f"components[{pos}]")
            comps[d] = (int(c["dim"]), c.get("labels"))
        brs = {}
        for pos, b in enumerate(obj.get("brackets", [])):
            where = f"brackets[{pos}]"
            d1, d2 = as_degree(b["d1"]), as_degree(b["d2"])
            i, j = b["i"], b["j"]
            if d1 not in comps or not 0 <= i < comps[d1][0] or d2 not in comps or not 0 <= j < comps[d2][0]:
                raise ParseError("bracket refers to a missing basis element", location=where)
            target = add_deg(d1, d2)
            tdim = comps.get(target, (0,))[0]
            val = {}
            for k, c in b["value"]:
                if not (isinstance(k, int) and 0 <= k < tdim):
                    raise ParseError(f"bad value index {k}", location=where)
                val[k] = QQ(c)
            brs[(d1, i, d2, j)] = val
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graded algebra: {exc}") from exc
    return explicit(rank, comps, brs)


@dataclass(frozen=True)
class Window:
    """Finite box of degrees; ``mode`` is ``discard`` or ``strict``."""

    box: tuple
    mode: str = "discard"

    def __post_init__(self):
        if self.mode not in ("discard", "strict"):
            raise ValueError(f"unknown window mode {self.mode!r}")

    @classmethod
    def radius(cls, r: int, rank: int = 1, mode: str = "discard") -> "Window":
        return cls(tuple((-r, r) for _ in range(rank)), mode)

    @classmethod
    def interval(cls, lo: int, hi: int, mode: str = "discard") -> "Window":
        return cls(((lo, hi),), mode)

    @property
    def rank(self) -> int:
        return len(self.box)

    def contains(self, d: Degree) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(d, self.box))

    def degrees(self) -> list[Degree]:
        return [tuple(p) for p in product(*[range(lo, hi + 1) for lo, hi in self.box])]

    @property
    def volume(self) -> int:
        v = 1
        for lo, hi in self.box:
            v *= max(hi - lo + 1, 0)
        return v


class WindowedView:
    """The basis of a graded algebra inside a window, in lexicographic degree order."""

    def __init__(self, parent: GradedLie, window: Window):
        if window.rank != parent.rank:
            raise DimensionMismatch("window rank differs from the lattice rank")
        self.parent = parent
        self.window = window
        self.basis: list[tuple[Degree, int]] = []
        self.by_degree: dict[Degree, list[int]] = {}
        for d in window.degrees():
            for i in range(parent.dim(d)):
                self.by_degree.setdefault(d, []).append(len(self.basis))
                self.basis.append((d, i))
        self.index = {b: t for t, b in enumerate(self.basis)}
        self._findim = None
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, t: int) -> Degree:
        return self.basis[t][0]

    @property
    def labels(self) -> list[str]:
        return [f"{self.parent.component(d).labels[i]}" for d, i in self.basis]

    def bracket_basis(self, a: int, b: int) -> dict:
        (d1, i), (d2, j) = self.basis[a], self.basis[b]
        target = add_deg(d1, d2)
        v = self.parent.hom_bracket(d1, i, d2, j)
        if not v:
            return {}
        if not self.window.contains(target):
            if self.window.mode == "strict":
                raise WindowOverflow(f"bracket of degrees {d1} and {d2} leaves the window")
            return {}
        idx = self.by_degree[target]
        return {idx[k]: c for k, c in v.items()}

    def findim(self) -> FinDimLie:
        """Truncated bracket table as an (unchecked) finite-dimensional algebra."""
        if self._findim is None:
            br = {}
            for a, b in combinations(range(self.dim), 2):
                v = self.bracket_basis(a, b)
                if v:
                    br[(a, b)] = v
            g = FinDimLie(self.dim, br, self.labels, self.parent.field, check=False)
            with self._lock:
                if self._findim is None:
                    self._findim = g
        return self._findim

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        return self.findim().bracket_sparse(x, y)

    def is_interior(self, *idx: int) -> bool:
        """All partial degree sums of the given basis elements stay inside the window."""
        degs = [self.degree(t) for t in idx]
        for r in range(2, len(degs) + 1):
            for sub in combinations(degs, r):
                s = sub[0]
                for d in sub[1:]:
                    s = add_deg(s, d)
                if not self.window.contains(s):
                    return False
        return True

    def interior_jacobi_violations(self, limit: int | None = None) -> list[tuple[int, int, int]]:
        from ..fdlie.algebra import jacobi_vector

        g = self.findim()
        bad = []
        for a, b, c in combinations(range(self.dim), 3):
            if self.is_interior(a, b, c) and jacobi_vector(g, a, b, c):
                bad.append((a, b, c))
                if limit and len(bad) >= limit:
                    break
        return bad

    def degree_subspace(self, pred: Callable[[Degree], bool]) -> Subspace:
        idx = [t for t, (d, _) in enumerate(self.basis) if pred(d)]
        return Subspace.coordinate(self.dim, idx)

    def homogeneous_parts(self, s: Subspace) -> dict[Degree, Subspace]:
        out = {}
        for d, idx in self.by_degree.items():
            part = s.intersect(Subspace.coordinate(self.dim, idx))
            if part.dim:
                out[d] = part
        return out

    def is_graded_subspace(self, s: Subspace) -> bool:
        return sum(p.dim for p in self.homogeneous_parts(s).values()) == s.dim

    def vector(self, deg, i: int, coeff=Fraction(1)) -> list:
        v = [Fraction(0)] * self.dim
        v[self.index[(as_degree(deg), i)]] = coeff
        return v


def window_view(g: GradedLie, w: Window) -> WindowedView:
    return WindowedView(g, w)


def graded_from_findim(g: FinDimLie, degrees: Sequence, rank: int = 1) -> GradedLie:
    """Grade a finite-dimensional algebra by assigning a degree to each basis vector.

    The assignment must make the bracket homogeneous.
    """
    degs = [as_degree(d) for d in degrees]
    comps: dict[Degree, list[int]] = {}
    for t, d in enumerate(degs):
        comps.setdefault(d, []).append(t)
    pos = {t: (d, k) for d, ts in comps.items() for k, t in enumerate(ts)}

    def comp(d):
        ts = comps.get(d, [])
        return len(ts), [g.labels[t] for t in ts]

    def br(d1, i, d2, j):
        a, b = comps[d1][i], comps[d2][j]
        out = {}
        target = add_deg(d1, d2)
        for k, c in g.bracket_basis(a, b).items():
            dk, kk = pos[k]
            if dk != target:
                raise ValueError("degree assignment does not make the bracket homogeneous")
            out[kk] = c
        return out

    return GradedLie(rank, comp, br, name=g.name, field=g.field, meta={"finite": True})


def flatten_ids(view: WindowedView, items: Iterable[tuple]) -> list[int]:
    return [view.index[(as_degree(d), i)] for d, i in items]
