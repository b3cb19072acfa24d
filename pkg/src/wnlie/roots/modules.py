"""Highest-weight modules of ``sl_2`` and ``sl_3`` and quasi-minuscule weights."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from ..errors import BoundExceeded, UnsupportedType
from ..exactla.linalg import Echelon, solve_linear

DIM_BOUND = 200


def _rank_of(tag: str) -> int:
    if isinstance(tag, str) and tag.startswith("sl") and tag[2:].isdigit() and int(tag[2:]) >= 2:
        return int(tag[2:]) - 1
    raise UnsupportedType(f"unsupported simple type {tag!r}; only sl_n is tabulated")


def _simple_qm(tag: str) -> list[tuple]:
    """Fundamental (minuscule) weights and the highest root of ``sl_n`` in Dynkin labels."""
    r = _rank_of(tag)
    out = [tuple(int(i == k) for i in range(r)) for k in range(r)]
    top = tuple(int(i in (0, r - 1)) * (2 if r == 1 else 1) for i in range(r))
    if top not in out:
        out.append(top)
    return sorted(out, key=lambda w: (sum(w), tuple(-x for x in w)))


def qm_weights(algebra) -> list[tuple]:
    """Quasi-minuscule weights: per factor a minuscule weight or the highest root, summed over nonempty factor sets."""
    if isinstance(algebra, str):
        return _simple_qm(algebra)
    factors = [_simple_qm(t) for t in algebra]
    ranks = [_rank_of(t) for t in algebra]
    out = []
    for size in range(1, len(factors) + 1):
        for chosen in combinations(range(len(factors)), size):
            for pick in product(*[factors[i] for i in chosen]):
                w = []
                it = iter(pick)
                for i, r in enumerate(ranks):
                    w += list(next(it)) if i in chosen else [0] * r
                out.append(tuple(w))
    return out


def weyl_dimension(tag: str, hw: Sequence[int]) -> int:
    """Weyl dimension formula for ``sl_n``: product over positive roots of ``<lambda + rho, a> / <rho, a>``."""
    r = _rank_of(tag)
    if len(hw) != r:
        raise ValueError(f"{tag} highest weights have {r} labels")
    num = Fraction(1)
    for i in range(r):
        for j in range(i, r):
            num *= Fraction(sum(hw[i : j + 1]) + (j - i + 1), j - i + 1)
    return int(num)


def weyl_reflections(tag: str):
    """Simple reflections on Dynkin labels: ``s_i(l) = l - l_i alpha_i``."""
    r = _rank_of(tag)
    cartan = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)] for i in range(r)]

    def refl(i):
        return lambda w: tuple(w[k] - w[i] * cartan[i][k] for k in range(r))

    return [refl(i) for i in range(r)]


# --- polynomial realization ---------------------------------------------------------
# sl_3 acts on polynomials in x1,x2,x3 (standard) and y1,y2,y3 (dual):
# E_ij = x_i d/dx_j - y_j d/dy_i. sl_2 uses x1, x2 only.

Poly = dict  # monomial exponent tuple -> Fraction


def _apply_unit(p: Poly, i: int, j: int, n: int) -> Poly:
    out: Poly = {}

    def add(mono, c):
        out[mono] = out.get(mono, Fraction(0)) + c

    for mono, c in p.items():
        x, y = list(mono[:n]), list(mono[n:])
        if x[j]:
            nx = list(x)
            nx[j] -= 1
            nx[i] += 1
            add(tuple(nx + y), c * x[j])
        if y[i]:
            ny = list(y)
            ny[i] -= 1
            ny[j] += 1
            add(tuple(x + ny), -c * y[i])
    return {m: c for m, c in out.items() if c}


def _apply_h(p: Poly, k: int, n: int) -> Poly:
    """``H_k = E_kk - E_{k+1,k+1}``."""
    a = _apply_unit(p, k, k, n)
    b = _apply_unit(p, k + 1, k + 1, n)
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, Fraction(0)) - c
    return {m: c for m, c in out.items() if c}


@dataclass
class WeightedModule:
    algebra: str
    highest_weight: tuple
    basis: list[Poly]
    weights: list[tuple]
    action: dict[str, list[list[Fraction]]] = field(default_factory=dict)
    weyl_dim: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_trivial(self) -> bool:
        return self.dim == 1 and not any(self.highest_weight)

    def multiplicities(self) -> dict[tuple, int]:
        out: dict[tuple, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def weyl_invariant(self) -> bool:
        mult = self.multiplicities()
        return all(mult.get(s(w), 0) == m for s in weyl_reflections(self.algebra) for w, m in mult.items())

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "highest_weight": list(self.highest_weight),
            "dim": self.dim,
            "weyl_dim": self.weyl_dim,
            "weights": [[list(w), m] for w, m in sorted(self.multiplicities().items(), reverse=True)],
        }


def simple_module(algebra: str, highest_weight, bound: int = DIM_BOUND) -> WeightedModule:
    """``L(lambda)`` as the span of lowering-operator images of a highest-weight polynomial."""
    if algebra not in ("sl2", "sl3"):
        raise UnsupportedType("simple modules are built for sl2 and sl3")
    hw = (highest_weight,) if isinstance(highest_weight, int) else tuple(highest_weight)
    r = _rank_of(algebra)
    if len(hw) != r or any(x < 0 for x in hw):
        raise ValueError(f"highest weight must be dominant with {r} labels")
    expect = weyl_dimension(algebra, hw)
    if expect > bound:
        raise BoundExceeded(f"L{hw} has dimension {expect} > {bound}")
    n = r + 1
    # x1^a y_n^b has weight a*omega_1 + b*omega_{n-1}
    mono = [0] * (2 * n)
    mono[0] += hw[0]
    mono[n + n - 1] += hw[-1] if r > 1 else 0
    v0: Poly = {tuple(mono): Fraction(1)}
    monos: dict[tuple, int] = {}

    def vec(p):
        for m in p:
            if m not in monos:
                monos[m] = len(monos)
        return {monos[m]: c for m, c in p.items()}

    ech = Echelon(10**9)
    basis, weights = [], []
    queue = [(v0, hw)]
    ech.add(vec(v0))
    basis.append(v0)
    weights.append(hw)
    cartan = [[2 if i == j else -1 if abs(i - j) == 1 else 0 for j in range(r)] for i in range(r)]
    while queue:
        p, w = queue.pop(0)
        for k in range(r):
            q = _apply_unit(p, k + 1, k, n)  # f_k = E_{k+1,k}
            if not q:
                continue
            if ech.add(vec(q)):
                nw = tuple(w[t] - cartan[k][t] for t in range(r))
                basis.append(q)
                weights.append(nw)
                queue.append((q, nw))
                if len(basis) > bound:
                    raise BoundExceeded(f"closure exceeded {bound} vectors")
    m = WeightedModule(algebra, hw, basis, weights, weyl_dim=expect)
    m.action = _action_tables(m, n, vec)
    if m.dim != expect:
        raise ArithmeticError(f"constructed dimension {m.dim} differs from the Weyl dimension {expect}")
    return m


def _action_tables(m: WeightedModule, n: int, vec) -> dict:
    cols = [vec(b) for b in m.basis]
    ncoords = max((k for c in cols for k in c), default=-1) + 1
    mat = [[c.get(k, Fraction(0)) for c in cols] for k in range(ncoords)]

    def coords(p):
        v = vec(p)
        # new monomials outside the span would make the system inconsistent
        rhs = [v.get(k, Fraction(0)) for k in range(ncoords)]
        if any(k >= ncoords for k in v):
            raise ArithmeticError("module is not closed under the action")
        return solve_linear(mat, rhs).particular

    def table(op):
        columns = [coords(op(b)) for b in m.basis]
        return [[columns[j][i] for j in range(m.dim)] for i in range(m.dim)]

    out = {}
    for k in range(n - 1):
        out[f"e{k + 1}"] = table(lambda p, k=k: _apply_unit(p, k, k + 1, n))
        out[f"f{k + 1}"] = table(lambda p, k=k: _apply_unit(p, k + 1, k, n))
        out[f"h{k + 1}"] = table(lambda p, k=k: _apply_h(p, k, n))
    return out


@dataclass
class CoverVerdict:
    covered: bool
    trivial: bool
    witness: tuple | None

    def to_json(self) -> dict:
        return {"covered": self.covered, "trivial": self.trivial, "witness": None if self.witness is None else list(self.witness)}


def qm_cover_check(m: WeightedModule) -> CoverVerdict:
    """A nontrivial simple module has a nonzero quasi-minuscule weight space."""
    if m.is_trivial:
        return CoverVerdict(True, True, None)
    present = set(m.weights)
    for w in qm_weights(m.algebra):
        if w in present:
            return CoverVerdict(True, False, w)
    return CoverVerdict(False, False, None)


def is_quasi_minuscule(m: WeightedModule) -> bool:
    """The weights form one Weyl orbit, possibly together with 0."""
    ws = set(m.weights)
    orbit = {m.highest_weight}
    frontier = [m.highest_weight]
    refl = weyl_reflections(m.algebra)
    while frontier:
        w = frontier.pop()
        for s in refl:
            x = s(w)
            if x not in orbit:
                orbit.add(x)
                frontier.append(x)
    zero = tuple([0] * len(m.highest_weight))
    return ws == orbit or ws == orbit | {zero}
