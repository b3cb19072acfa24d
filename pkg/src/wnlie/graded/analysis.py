"""Windowed analyses of graded Lie algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Callable, Sequence

from ..errors import InconsistentSystem, NoReductionFound, NotADerivation, NotAnIdeal, WindowOverflow
from ..exactla.linalg import Subspace, matvec, nullspace_sparse, solve_linear, sparse
from ..exactla.poly import format_rational
from ..fdlie.algebra import ideal_generated, subalgebra_generated
from ..fdlie.analysis import series
from .core import Degree, GradedLie, Window, WindowedView, add_deg, as_degree

ZERO = Fraction(0)


def _dot(pi: Sequence[int], d: Degree) -> int:
    return sum(a * b for a, b in zip(pi, d))


# --- regrading --------------------------------------------------------------


def pushforward(g: GradedLie, pi: Sequence[int], source_window: Window) -> GradedLie:
    """Z-graded algebra with component ``n`` the sum of the source components of the window with ``pi(d) = n``."""
    pi = tuple(int(c) for c in pi)
    if len(pi) != g.rank:
        raise ValueError("pi has the wrong number of coefficients")
    fibers: dict[int, list[Degree]] = {}
    for d in source_window.degrees():
        if g.dim(d):
            fibers.setdefault(_dot(pi, d), []).append(d)
    offsets: dict[int, dict[Degree, int]] = {}
    locate: dict[int, list[tuple[Degree, int]]] = {}
    for n, ds in fibers.items():
        off = 0
        offsets[n] = {}
        locate[n] = []
        for d in ds:
            offsets[n][d] = off
            for i in range(g.dim(d)):
                locate[n].append((d, i))
            off += g.dim(d)

    def comp(n):
        items = locate.get(n[0], [])
        return len(items), [f"{g.component(d).labels[i]}@{list(d)}" for d, i in items]

    def br(n1, i, n2, j):
        d1, i1 = locate[n1[0]][i]
        d2, j1 = locate[n2[0]][j]
        v = g.hom_bracket(d1, i1, d2, j1)
        if not v:
            return {}
        target = add_deg(d1, d2)
        if not source_window.contains(target):
            if source_window.mode == "strict":
                raise WindowOverflow(f"bracket of degrees {d1} and {d2} leaves the source window")
            return {}
        off = offsets[_dot(pi, target)][target]
        return {off + k: c for k, c in v.items()}

    out = GradedLie(1, comp, br, name=f"pushforward({g.name})", field=g.field, meta={"pi": list(pi)})
    out.fibers = fibers
    return out


def _candidates(rank: int, height: int):
    """Integer vectors of max-norm ``height`` with positive last coordinate, lexicographic."""
    rng = range(-height, height + 1)
    for v in product(rng, repeat=rank):
        if v[-1] > 0 and max(abs(x) for x in v) == height:
            yield v


def _kernel_generators(pi: Sequence[int]) -> list[Degree]:
    n = len(pi)
    out = []
    for i in range(n - 1):
        a, b = pi[-1], -pi[i]
        v = [0] * n
        v[i], v[-1] = a, b
        g = gcd(abs(a), abs(b)) or 1
        out.append(tuple(x // g for x in v))
    return out


def abelianization_degrees(view: WindowedView, pred: Callable[[Degree], bool]) -> list[Degree]:
    """Degrees where the subalgebra spanned by the components with ``pred(d)`` has nonzero abelianization."""
    g = view.findim()
    m = view.degree_subspace(pred)
    mm = g.bracket_spaces(m, m)
    parts = view.homogeneous_parts(mm)
    out = []
    for d, idx in view.by_degree.items():
        if pred(d) and len(idx) > (parts[d].dim if d in parts else 0):
            out.append(d)
    return out


@dataclass
class Reduction:
    pi: tuple
    certificate: dict


def verify_reduction(g: GradedLie, window: Window, pi: Sequence[int]) -> bool:
    """Exhaustive fiber scan: no nonzero degree of the window's support lies in ``ker pi``."""
    for d in window.degrees():
        if any(d) and g.dim(d) and _dot(pi, d) == 0:
            return False
    return True


def find_reduction(g: GradedLie, source_window: Window, budget: int | None = None) -> Reduction:
    """Search for ``pi: Z^n -> Z`` with ``ker pi`` meeting the observed support only at 0.

    Candidates run by increasing max-norm, lexicographically, with positive
    last coordinate. A candidate is accepted when (i) its kernel meets the
    window's support only at the origin, (ii) ``pi > 0`` on the abelianization
    degrees of the part with positive last coordinate and ``pi < 0`` on those
    of the negative part, and (iii) its kernel generators lie inside the
    window, so that (i) is actually witnessed by the window.
    """
    if g.rank == 1:
        return Reduction((1,), {"identity": True, "kernel_fiber": []})
    support = g.support(source_window)
    if budget is None:
        budget = max(max(abs(lo), abs(hi)) for lo, hi in source_window.box)
    view = WindowedView(g, Window(source_window.box, "discard"))
    v_plus = abelianization_degrees(view, lambda d: d[-1] > 0)
    v_minus = abelianization_degrees(view, lambda d: d[-1] < 0)
    tried = 0
    offending = None
    for h in range(1, budget + 1):
        for pi in _candidates(g.rank, h):
            tried += 1
            fiber0 = [d for d in support if any(d) and _dot(pi, d) == 0]
            gens = _kernel_generators(pi)
            witnessed = all(source_window.contains(k) for k in gens)
            if fiber0:
                if offending is None:
                    offending = {"pi": list(pi), "fiber": [list(d) for d in fiber0]}
                continue
            if not witnessed:
                continue
            if not all(_dot(pi, d) > 0 for d in v_plus) or not all(_dot(pi, d) < 0 for d in v_minus):
                continue
            dims: dict[int, int] = {}
            for d in support:
                n = _dot(pi, d)
                dims[n] = dims.get(n, 0) + g.dim(d)
            cert = {
                "pi": list(pi),
                "support_size": len(support),
                "kernel_fiber": [],
                "kernel_generators": [list(k) for k in gens],
                "v_plus": [[list(d), _dot(pi, d)] for d in v_plus],
                "v_minus": [[list(d), _dot(pi, d)] for d in v_minus],
                "component_dims": {str(n): dims[n] for n in sorted(dims)},
                "max_component_dim": max(dims.values()) if dims else 0,
                "fiber_scan": verify_reduction(g, source_window, pi),
            }
            return Reduction(tuple(pi), cert)
    raise NoReductionFound(
        f"no admissible regrading of height <= {budget} on the window", offending_fiber=offending, tried=tried
    )


# --- series and probes --------------------------------------------------------


def graded_series(view: WindowedView, kind: str = "derived") -> list[Subspace]:
    if view.window.mode != "discard":
        raise ValueError("series are computed on discard-mode views")
    return series(view.findim(), kind)


@dataclass
class ProbeReport:
    depths: list[int]
    dims: list[int]

    @property
    def stabilized(self) -> bool:
        return len(self.dims) >= 2 and len(set(self.dims[-3:])) == 1

    @property
    def strictly_growing(self) -> bool:
        return all(a < b for a, b in zip(self.dims, self.dims[1:]))

    def to_json(self) -> dict:
        return {"depths": self.depths, "dims": self.dims, "stabilized": self.stabilized, "growing": self.strictly_growing}


def abelian_section_probe(
    g: GradedLie,
    depths: Sequence[int],
    member: Callable[[Degree], bool] | None = None,
    generators: Sequence[tuple] | None = None,
) -> ProbeReport:
    """``dim m/[m,m]`` of a windowed subalgebra on windows of growing radius.

    The subalgebra is either the sum of the components with ``member(d)`` or
    the subalgebra generated by homogeneous basis vectors ``(degree, index)``.
    """
    if (member is None) == (generators is None):
        raise ValueError("give exactly one of member or generators")
    dims = []
    for r in depths:
        view = WindowedView(g, Window.radius(r, g.rank))
        h = view.findim()
        if member is not None:
            m = view.degree_subspace(member)
        else:
            vecs = [view.vector(d, i) for d, i in generators if view.window.contains(as_degree(d))]
            m = subalgebra_generated(h, vecs)
        dims.append(m.dim - h.bracket_spaces(m, m).dim)
    return ProbeReport(list(depths), dims)


# --- derivation filtrations -------------------------------------------------------


def check_interior_derivation(view: WindowedView, d: Sequence[Sequence]) -> tuple[int, int] | None:
    """First basis pair (with bracket degree inside the window) violating the Leibniz rule."""
    g = view.findim()
    n = view.dim
    cols = [sparse([row[i] for row in d]) for i in range(n)]
    for a, b in combinations(range(n), 2):
        if not view.window.contains(add_deg(view.degree(a), view.degree(b))):
            continue
        lhs = sparse(matvec(d, _dense(g.bracket_basis(a, b), n)))
        rhs = g.bracket_sparse(cols[a], {b: Fraction(1)})
        for k, c in g.bracket_sparse({a: Fraction(1)}, cols[b]).items():
            rhs[k] = rhs.get(k, ZERO) + c
        rhs = {k: c for k, c in rhs.items() if c}
        if lhs != rhs:
            return (a, b)
    return None


def _dense(v: dict, n: int) -> list:
    out = [ZERO] * n
    for k, c in v.items():
        out[k] = c
    return out


@dataclass
class DerivationFiltration:
    chain: list[Subspace]
    bracket_law: bool
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"dims": [m.dim for m in self.chain], "bracket_law": self.bracket_law}


def derivation_filtration(view: WindowedView, m1: Subspace, d: Sequence[Sequence]) -> DerivationFiltration:
    """``m_{k+1} = {x in m_k : d x in m_k}`` until the chain stabilizes."""
    g = view.findim()
    if not g.is_ideal(m1):
        raise NotAnIdeal("m1 is not an ideal of the view")
    bad = check_interior_derivation(view, d)
    if bad is not None:
        raise NotADerivation(f"Leibniz rule fails on basis pair {bad}")
    n = view.dim
    chain = [m1]
    cur = m1
    for _ in range(n + 1):
        # x = sum c_a b_a with d x reduced modulo cur equal to zero
        imgs = [cur._echelon.reduce(sparse(matvec(d, list(r)))) for r in cur.rows]
        rows = []
        for k in range(n):
            row = {a: v[k] for a, v in enumerate(imgs) if v.get(k)}
            if row:
                rows.append(row)
        coeffs = nullspace_sparse(rows, cur.dim)
        vecs = []
        for c in coeffs:
            v = [ZERO] * n
            for a, x in enumerate(c):
                if x:
                    v = [vi + x * ri for vi, ri in zip(v, cur.rows[a])]
            vecs.append(v)
        nxt = Subspace(n, vecs)
        if nxt == cur:
            break
        chain.append(nxt)
        cur = nxt
    violations = []
    last = len(chain)
    for k, l in product(range(1, last + 1), repeat=2):
        if l < k:
            continue
        target = chain[min(k + l, last) - 1]
        if not target.contains(g.bracket_spaces(chain[k - 1], chain[l - 1])):
            violations.append((k, l))
    return DerivationFiltration(chain, not violations, violations)


# --- closure ---------------------------------------------------------------------


@dataclass
class ClosureReport:
    closure: Subspace
    quotient_dim: int
    threshold: Fraction
    accepted: list[int]

    def to_json(self) -> dict:
        return {
            "closure_dim": self.closure.dim,
            "quotient_dim": self.quotient_dim,
            "threshold": format_rational(self.threshold),
            "accepted_generators": self.accepted,
        }


def graded_closure(view: WindowedView, m: Subspace) -> ClosureReport:
    """Sum of the ideals ``r = (m, x)`` for homogeneous ``x`` with ``dim r/m`` below half the window volume.

    Window-relative: only ideals visible in the view are enumerated.
    """
    g = view.findim()
    if not g.is_ideal(m):
        raise NotAnIdeal("m is not an ideal of the view")
    threshold = Fraction(view.window.volume, 2)
    cl = m
    accepted = []
    for t in range(view.dim):
        e = [ZERO] * view.dim
        e[t] = Fraction(1)
        if m.contains(e):
            continue
        r = ideal_generated(g, list(m.rows) + [e])
        if r.dim - m.dim < threshold:
            cl = cl + r
            accepted.append(t)
    return ClosureReport(cl, cl.dim - m.dim, threshold, accepted)


# --- degree-zero cohomology ----------------------------------------------------------


@dataclass
class H2Degree0Report:
    dim: int
    z_dim: int
    b_dim: int
    representative: dict
    values: dict
    window: Window

    def ratio(self, m: int, base: int = 2) -> Fraction:
        return self.values[m] / self.values[base]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "z2_dim": self.z_dim,
            "b2_dim": self.b_dim,
            "values": {str(m): format_rational(v) for m, v in sorted(self.values.items())},
        }


def graded_h2_degree0(g: GradedLie, window: Window) -> H2Degree0Report:
    """Degree-0 second cohomology of a Z-graded algebra, windowed.

    Cochains pair ``L_m`` with ``L_{-m}``. For a triple of total degree 0 every
    pairwise bracket lands in the window, so the cocycle condition is imposed
    on all such triples. The representative is shifted by a coboundary to
    vanish on the ``(1, -1)`` pair and scaled so its first nonzero value is 1.
    """
    if g.rank != 1:
        raise ValueError("degree-0 cohomology is implemented for Z-gradings")
    view = WindowedView(g, Window(window.box, "discard"))
    h = view.findim()
    n = view.dim
    deg = [view.degree(t)[0] for t in range(n)]
    pairs = [(a, b) for a, b in combinations(range(n), 2) if deg[a] + deg[b] == 0]
    index = {p: t for t, p in enumerate(pairs)}
    npairs = len(pairs)

    def add_omega(v: dict, z: int, row: dict):
        for mm, c in v.items():
            if mm == z:
                continue
            key, s = ((mm, z), 1) if mm < z else ((z, mm), -1)
            t = index.get(key)
            if t is not None:
                row[t] = row.get(t, ZERO) + s * c

    rows = []
    for a, b, c in combinations(range(n), 3):
        if deg[a] + deg[b] + deg[c] != 0:
            continue
        row: dict = {}
        add_omega(h.bracket_basis(a, b), c, row)
        add_omega(h.bracket_basis(b, c), a, row)
        add_omega(h.bracket_basis(c, a), b, row)
        row = {k: v for k, v in row.items() if v}
        if row:
            rows.append(row)
    z = Subspace(npairs, nullspace_sparse(rows, npairs))
    zero_deg = [t for t in range(n) if deg[t] == 0]
    bvecs = [[h.bracket_basis(a, b).get(f, ZERO) for a, b in pairs] for f in zero_deg]
    b = Subspace(npairs, bvecs)
    reps = z.quotient_basis(b)
    rep_vec = list(reps[0]) if reps else [ZERO] * npairs
    if reps:
        one = [index[p] for p in pairs if deg[p[0]] in (1, -1)]
        if one and b.dim:
            a_mat = [[row[t] for row in b.rows] for t in one]
            try:
                sol = solve_linear(a_mat, [rep_vec[t] for t in one])
                for coef, row in zip(sol.particular, b.rows):
                    if coef:
                        rep_vec = [x - coef * y for x, y in zip(rep_vec, row)]
            except InconsistentSystem:
                pass
    values = {}
    for mdeg in range(1, max((abs(x) for x in deg), default=0) + 1):
        pos = view.by_degree.get((mdeg,), [])
        neg = view.by_degree.get((-mdeg,), [])
        if pos and neg:
            # omega(L_m, L_-m); the view lists negative degrees first
            values[mdeg] = -rep_vec[index[(neg[0], pos[0])]]
    lead = next((v for _, v in sorted(values.items()) if v), None)
    if lead is None:
        lead = next((x for x in rep_vec if x), Fraction(1))
    rep_vec = [x / lead for x in rep_vec]
    values = {m: v / lead for m, v in values.items()}
    representative = {}
    for (a, bb), t in index.items():
        if rep_vec[t]:
            representative[(view.basis[a], view.basis[bb])] = rep_vec[t]
    return H2Degree0Report(z.dim - b.dim, z.dim, b.dim, representative, values, window)


def cocycle_holds(g: GradedLie, window: Window, rep: dict) -> bool:
    """Exact cocycle identity of ``rep`` on every interior basis triple of total degree 0."""
    view = WindowedView(g, Window(window.box, "discard"))
    h = view.findim()
    n = view.dim

    def omega(v: dict, z: int):
        acc = ZERO
        bz = view.basis[z]
        for mm, c in v.items():
            bm = view.basis[mm]
            if (bm, bz) in rep:
                acc += c * rep[(bm, bz)]
            elif (bz, bm) in rep:
                acc -= c * rep[(bz, bm)]
        return acc

    for a, b, c in combinations(range(n), 3):
        if sum(view.degree(t)[0] for t in (a, b, c)) != 0:
            continue
        s = omega(h.bracket_basis(a, b), c) + omega(h.bracket_basis(b, c), a) + omega(h.bracket_basis(c, a), b)
        if s:
            return False
    return True
