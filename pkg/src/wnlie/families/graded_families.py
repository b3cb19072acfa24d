"""Witt, Virasoro, loop and current algebras as lazily graded algebras."""

from __future__ import annotations

import threading
from fractions import Fraction

from ..exactla.fields import QQ, FieldSpec
from ..fdlie.algebra import FinDimLie
from ..graded.core import GradedLie, Window, WindowedView

WITT_VARIANTS = {"laurent": None, "polynomial": -1, "positive": 1}


def witt(variant: str = "laurent", field: FieldSpec = QQ, punctures=None):
    """Witt algebra ``[L_n, L_m] = (m - n) L_{n+m}``.

    ``laurent`` has all ``n``, ``polynomial`` has ``n >= -1`` and ``positive``
    has ``n >= 1``. ``kn_genus0`` returns the rational vector field algebra on
    the line punctured at ``punctures``.
    """
    if variant == "kn_genus0":
        from .kn import KNGenus0

        return KNGenus0(punctures or [], field)
    if variant not in WITT_VARIANTS:
        raise ValueError(f"unknown Witt variant {variant!r}")
    low = WITT_VARIANTS[variant]

    def allowed(n: int) -> bool:
        return low is None or n >= low

    def comp(d):
        n = d[0]
        return (1, [f"L{n}"]) if allowed(n) else (0, ())

    def br(d1, i, d2, j):
        n, m = d1[0], d2[0]
        return {0: field.one() * (m - n)} if m != n else {}

    meta = {
        "family": "witt",
        "variant": variant,
        "simple": variant in ("laurent", "polynomial"),
        "perfect": variant in ("laurent", "polynomial"),
    }
    return GradedLie(1, comp, br, name=f"witt_{variant}", meta=meta, spec={"family": "witt", "variant": variant}, field=field)


class _CocycleCache:
    """Degree-0 cocycle of the Laurent Witt algebra, solved on demand and grown lazily."""

    def __init__(self, radius: int):
        self.radius = radius
        self.values: dict[int, Fraction] = {}
        self.report = None
        self._lock = threading.Lock()

    def value(self, m: int) -> Fraction:
        if m == 0:
            return Fraction(0)
        if m < 0:
            return -self.value(-m)
        if m not in self.values:
            self._solve(max(m, 2 * self.radius) if self.values else max(m, self.radius))
        return self.values[m]

    def _solve(self, radius: int):
        from ..graded.analysis import graded_h2_degree0

        rep = graded_h2_degree0(witt("laurent"), Window.radius(radius))
        if rep.dim != 1:
            raise ArithmeticError(f"expected a one-dimensional degree-0 H^2, found {rep.dim}")
        with self._lock:
            self.radius = radius
            self.values = dict(rep.values)
            self.report = rep


def virasoro_hat(field: FieldSpec = QQ, window: int = 8) -> GradedLie:
    """Central extension of the Laurent Witt algebra by ``c`` in degree 0.

    ``[L_m, L_n] = (n - m) L_{m+n} + delta_{m+n,0} w_m c`` with ``w_m`` taken
    from the degree-0 cohomology solver (normalized by ``w_1 = 0``, ``w_2 = 1``).
    """
    cache = _CocycleCache(window)
    cache.value(2)

    def comp(d):
        n = d[0]
        return (2, ["L0", "c"]) if n == 0 else (1, [f"L{n}"])

    def br(d1, i, d2, j):
        m, n = d1[0], d2[0]
        if (m == 0 and i == 1) or (n == 0 and j == 1):
            return {}
        out = {}
        if n != m:
            out[0] = field.one() * (n - m)
        if m + n == 0 and m != 0:
            w = cache.value(m)
            if w:
                out[1] = field.one() * w
        return out

    g = GradedLie(
        1,
        comp,
        br,
        name="virasoro_hat",
        meta={"family": "virasoro_hat", "simple": False, "perfect": True, "central_extension_of": "witt_laurent"},
        spec={"family": "virasoro_hat", "window": window},
        field=field,
    )
    g.cocycle = cache
    return g


def loop(s: FinDimLie, variant: str = "laurent", low: int | None = None) -> GradedLie:
    """``s ⊗ K[t, t^-1]`` (``laurent``), ``s ⊗ K[t]`` (``current``) or ``s ⊗ t^low K[t]``."""
    if low is None:
        low = {"laurent": None, "current": 0, "positive": 1}[variant]

    def allowed(n):
        return low is None or n >= low

    def comp(d):
        n = d[0]
        return (s.dim, [f"{lab}t^{n}" for lab in s.labels]) if allowed(n) else (0, ())

    def br(d1, i, d2, j):
        return dict(s.bracket_basis(i, j))

    tag = variant if low is None or variant != "positive" else f"t^{low}"
    meta = {"family": "loop", "variant": variant, "base": s.name, "simple": False, "perfect": variant == "laurent"}
    g = GradedLie(1, comp, br, name=f"{s.name}_{tag}", meta=meta, spec=None, field=s.field)
    g.base = s
    return g


def current(s: FinDimLie) -> GradedLie:
    return loop(s, "current")


def loop_graded(g: GradedLie, name: str | None = None) -> GradedLie:
    """``g ⊗ K[u, u^-1]`` with the extra grading coordinate appended."""

    def comp(d):
        c = g.component(d[:-1])
        return c.dim, [f"{lab}u^{d[-1]}" for lab in c.labels]

    def br(d1, i, d2, j):
        return g.hom_bracket(d1[:-1], i, d2[:-1], j)

    meta = {"family": "loop", "variant": "laurent", "base": g.name, "simple": False}
    out = GradedLie(g.rank + 1, comp, br, name=name or f"loop({g.name})", meta=meta, field=g.field)
    out.inner = g
    return out


def multiloop(s: FinDimLie, rank: int = 2) -> GradedLie:
    g = loop(s)
    for _ in range(rank - 1):
        g = loop_graded(g)
    g.name = f"{s.name}_multiloop{rank}"
    return g


def abelian_tower(low: int | None = 1, dim: int = 1) -> GradedLie:
    """Abelian algebra with a ``dim``-dimensional component in every degree ``n >= low`` (all ``n`` if None)."""

    def comp(d):
        n = d[0]
        ok = low is None or n >= low
        return (dim, [f"a{n}_{k}" for k in range(dim)]) if ok else (0, ())

    def br(d1, i, d2, j):
        return {}

    return GradedLie(1, comp, br, name="abelian_tower", meta={"family": "abelian", "simple": False})


def axis_sum(*algebras: GradedLie) -> GradedLie:
    """Direct sum of Z-graded algebras, the k-th placed on the k-th coordinate axis of Z^r."""
    r = len(algebras)

    def parts(d):
        out = []
        nz = [k for k, x in enumerate(d) if x]
        if not nz:
            return [(k, 0) for k in range(r)]
        if len(nz) == 1:
            return [(nz[0], d[nz[0]])]
        return []

    def comp(d):
        labels = []
        for k, n in parts(d):
            labels += [f"{lab}_{k}" for lab in algebras[k].component((n,)).labels]
        return len(labels), labels

    def locate(d, i):
        for k, n in parts(d):
            dim = algebras[k].dim((n,))
            if i < dim:
                return k, n, i
            i -= dim
        raise IndexError(i)

    def br(d1, i, d2, j):
        k1, n1, i1 = locate(d1, i)
        k2, n2, j1 = locate(d2, j)
        if k1 != k2:
            return {}
        v = algebras[k1].hom_bracket((n1,), i1, (n2,), j1)
        if not v:
            return {}
        target = tuple(x + y for x, y in zip(d1, d2))
        off = 0
        for k, n in parts(target):
            if k == k1:
                return {off + idx: c for idx, c in v.items()}
            off += algebras[k].dim((n,))
        return {}

    name = "+".join(a.name or "?" for a in algebras)
    return GradedLie(r, comp, br, name=name, meta={"family": "axis_sum", "simple": False})


def current_derivation_matrix(view: WindowedView) -> list[list[Fraction]]:
    """``d/dt`` on a window of ``s ⊗ K[t]``: ``x t^n -> n x t^(n-1)`` (dropped below the window)."""
    n = view.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for t, (d, i) in enumerate(view.basis):
        k = d[0]
        src = ((k - 1,), i)
        if k and src in view.index:
            m[view.index[src]][t] = Fraction(k)
    return m
