"""Genus-0 Krichever–Novikov algebras: rational vector fields on a punctured affine line."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from ..errors import DuplicatePuncture
from ..exactla import poly as P
from ..exactla.fields import QQ, FieldSpec
from ..exactla.linalg import Subspace, nullspace_sparse
from ..graded.core import GradedLie

INF = "inf"


def _trim(c: Sequence) -> tuple:
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(Fraction(x) for x in c)


@dataclass(frozen=True)
class RationalVectorField:
    """``f(t) d/dt`` with ``f = poly + sum_a sum_j parts[a][j-1] (t - a)^-j`` (partial-fraction normal form)."""

    poly: tuple
    parts: tuple  # sorted tuple of (a, coefficients for j = 1, 2, ...)

    @classmethod
    def make(cls, poly=(), parts=None) -> "RationalVectorField":
        items = []
        for a, cs in sorted((parts or {}).items()):
            cs = _trim(cs)
            if cs:
                items.append((Fraction(a), cs))
        return cls(P.normalize(poly), tuple(items))

    @classmethod
    def monomial(cls, k: int, at=Fraction(0)) -> "RationalVectorField":
        """``(t - at)^k d/dt``; for ``k >= 0`` expanded into a polynomial."""
        if k >= 0:
            return cls.make(P.power((Fraction(-at), Fraction(1)), k))
        cs = [Fraction(0)] * (-k)
        cs[-1] = Fraction(1)
        return cls.make((), {Fraction(at): cs})

    @property
    def parts_dict(self) -> dict:
        return {a: cs for a, cs in self.parts}

    def __bool__(self):
        return bool(self.poly) or bool(self.parts)

    def __add__(self, other: "RationalVectorField") -> "RationalVectorField":
        parts = dict(self.parts_dict)
        for a, cs in other.parts:
            old = parts.get(a, ())
            n = max(len(old), len(cs))
            parts[a] = [(old[i] if i < len(old) else 0) + (cs[i] if i < len(cs) else 0) for i in range(n)]
        return RationalVectorField.make(P.add(self.poly, other.poly), parts)

    def scale(self, c) -> "RationalVectorField":
        return RationalVectorField.make(P.scale(self.poly, c), {a: [c * x for x in cs] for a, cs in self.parts})

    def __neg__(self):
        return self.scale(Fraction(-1))

    def __sub__(self, other):
        return self + (-other)

    def derivative(self) -> "RationalVectorField":
        parts = {}
        for a, cs in self.parts:
            out = [Fraction(0)] * (len(cs) + 1)
            for j, c in enumerate(cs, start=1):
                out[j] += -j * c
            parts[a] = out
        return RationalVectorField.make(P.derivative(self.poly), parts)

    def num_den(self) -> tuple[tuple, tuple]:
        den = (Fraction(1),)
        for a, cs in self.parts:
            den = P.mul(den, P.power((-a, Fraction(1)), len(cs)))
        num = P.mul(self.poly, den)
        for a, cs in self.parts:
            k = len(cs)
            rest = (Fraction(1),)
            for b, ds in self.parts:
                if b != a:
                    rest = P.mul(rest, P.power((-b, Fraction(1)), len(ds)))
            for j, c in enumerate(cs, start=1):
                if c:
                    term = P.scale(P.mul(rest, P.power((-a, Fraction(1)), k - j)), c)
                    num = P.add(num, term)
        return num, den

    @classmethod
    def from_num_den(cls, num: tuple, den: tuple, poles: Sequence) -> "RationalVectorField":
        """Partial fractions of ``num/den`` where ``den`` splits over the given points."""
        q, r = P.divmod_(num, den)
        parts = {}
        for a in poles:
            k = 0
            d = den
            lin = (-Fraction(a), Fraction(1))
            while True:
                qq, rr = P.divmod_(d, lin)
                if rr:
                    break
                d = qq
                k += 1
            if not k:
                continue
            # Taylor coefficients of r / d at a give the principal part
            s = P.series_div(P.shift(r, a), P.shift(d, a), k)
            parts[a] = [s[k - j] for j in range(1, k + 1)]
        return cls.make(q, parts)

    def __mul__(self, other: "RationalVectorField") -> "RationalVectorField":
        """Product of the coefficient functions (a helper, not a vector field operation)."""
        n1, d1 = self.num_den()
        n2, d2 = other.num_den()
        poles = sorted({a for a, _ in self.parts} | {a for a, _ in other.parts})
        return RationalVectorField.from_num_den(P.mul(n1, n2), P.mul(d1, d2), poles)

    def bracket(self, other: "RationalVectorField") -> "RationalVectorField":
        return self * other.derivative() - other * self.derivative()

    def laurent(self, at, upto: int) -> dict[int, Fraction]:
        """Laurent coefficients (orders < ``upto``) of the vector field in a local parameter at ``at``.

        At a finite point ``a`` the parameter is ``u = t - a`` and the
        coefficient of ``d/du`` is ``f``. At infinity ``u = 1/t`` and
        ``f d/dt = -u^2 f(1/u) d/du``.
        """
        out: dict[int, Fraction] = {}

        def put(o, c):
            if o < upto and c:
                out[o] = out.get(o, Fraction(0)) + c

        if at == INF:
            for k, c in enumerate(self.poly):
                put(2 - k, -c)
            for b, cs in self.parts:
                # (t - b)^-j = u^j (1 - b u)^-j
                for j, c in enumerate(cs, start=1):
                    if not c:
                        continue
                    for k in range(max(upto - 2 - j, 0)):
                        put(2 + j + k, -c * comb(j + k - 1, k) * b**k)
            return {o: c for o, c in out.items() if c}
        a = Fraction(at)
        for k, c in enumerate(P.shift(self.poly, a)):
            put(k, c)
        for b, cs in self.parts:
            for j, c in enumerate(cs, start=1):
                if not c:
                    continue
                if b == a:
                    put(-j, c)
                    continue
                # (u + (a - b))^-j = sum_k binom(-j, k) (a - b)^(-j-k) u^k
                h = a - b
                for k in range(max(upto, 0)):
                    put(k, c * (-1) ** k * comb(j + k - 1, k) * h ** (-j - k))
        return {o: c for o, c in out.items() if c}

    def order_at(self, at) -> int | None:
        """Order of vanishing of the vector field at ``at`` (negative for poles); None for 0."""
        if not self:
            return None
        upto = 4
        while True:
            lc = self.laurent(at, upto)
            if lc:
                return min(lc)
            upto *= 2
            if upto > 4096:
                raise ArithmeticError("order search did not terminate")

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.poly):
            if c:
                terms.append(f"{c}*t^{k}")
        for a, cs in self.parts:
            for j, c in enumerate(cs, start=1):
                if c:
                    terms.append(f"{c}*(t-{a})^-{j}")
        return "(" + (" + ".join(terms) or "0") + ") d/dt"


class KNGenus0:
    """Vector fields on the affine line minus ``punctures``; points at infinity are the punctures and ``inf``."""

    def __init__(self, punctures: Sequence, field: FieldSpec = QQ):
        if field != QQ:
            raise ValueError("genus-0 vector fields are implemented over the rationals")
        pts = [Fraction(p) if not isinstance(p, str) else Fraction(p.strip()) for p in punctures]
        if len(set(pts)) != len(pts):
            raise DuplicatePuncture("punctures must be pairwise distinct")
        self.punctures = sorted(pts)
        self.field = field
        self.meta = {"family": "kn_genus0", "simple": True, "punctures": [str(p) for p in self.punctures]}

    @property
    def spec(self) -> dict:
        return {"family": "kn_genus0", "punctures": [P.format_rational(p) for p in self.punctures]}

    def element(self, poly=(), parts=None) -> RationalVectorField:
        for a in (parts or {}):
            if Fraction(a) not in self.punctures:
                raise ValueError(f"{a} is not a puncture")
        return RationalVectorField.make(poly, parts)

    def bracket(self, f: RationalVectorField, g: RationalVectorField) -> RationalVectorField:
        return f.bracket(g)

    def window_basis(self, max_degree: int, max_pole: int) -> list[RationalVectorField]:
        """``t^k d/dt`` for ``0 <= k <= max_degree`` then ``(t-a)^-j d/dt`` for each puncture."""
        out = [RationalVectorField.monomial(k) for k in range(max_degree + 1)]
        for a in self.punctures:
            out += [RationalVectorField.monomial(-j, a) for j in range(1, max_pole + 1)]
        return out

    def as_witt(self) -> GradedLie:
        """For the single puncture 0: ``L_n = t^(n+1) d/dt`` with brackets computed by vector field arithmetic."""
        if self.punctures != [Fraction(0)]:
            raise ValueError("the Laurent Witt grading needs exactly the puncture 0")

        def comp(d):
            return 1, [f"t^{d[0] + 1}d/dt"]

        def br(d1, i, d2, j):
            f = RationalVectorField.monomial(d1[0] + 1)
            g = RationalVectorField.monomial(d2[0] + 1)
            h = f.bracket(g)
            target = d1[0] + d2[0] + 1
            c = _coefficient_of_monomial(h, target)
            if h - RationalVectorField.monomial(target).scale(c):
                raise ArithmeticError("bracket left the monomial line")
            return {0: c} if c else {}

        return GradedLie(1, comp, br, name="kn_genus0{0}", meta={"family": "kn_genus0", "simple": True})

    # --- pole filtration ---------------------------------------------------

    def filtration_index(self, f: RationalVectorField, at=INF) -> int:
        """Smallest ``n >= 0`` with ``f`` of pole order at most ``n - 1`` at ``at``."""
        self._check_point(at)
        o = f.order_at(at)
        if o is None:
            return 0
        return max(0, 1 - o)

    def symbol(self, f: RationalVectorField, at=INF, level: int | None = None) -> tuple[int, Fraction]:
        """``(n, c)`` meaning ``f`` has symbol ``c L_n`` in ``gr_n``.

        With ``level`` given, ``n = level`` and ``c`` is the image of ``f`` in
        ``g(level)/g(level - 1)`` (zero when ``f`` lies deeper).
        """
        n = self.filtration_index(f, at) if level is None else level
        if n == 0:
            return 0, Fraction(0)
        if level is not None and self.filtration_index(f, at) > level:
            raise ValueError(f"element is not in g({level})")
        lc = f.laurent(at, 2 - n)
        return n, -lc.get(1 - n, Fraction(0))

    def filtration_subspace(self, basis: Sequence[RationalVectorField], n: int, at=INF) -> Subspace:
        """Coordinates of ``g(n)`` inside the span of ``basis``: Laurent coefficients below order ``1 - n`` vanish."""
        self._check_point(at)
        upto = 1 - n
        expansions = [b.laurent(at, upto) for b in basis]
        orders = sorted({o for e in expansions for o in e})
        rows = []
        for o in orders:
            row = {k: e[o] for k, e in enumerate(expansions) if e.get(o)}
            if row:
                rows.append(row)
        return Subspace(len(basis), nullspace_sparse(rows, len(basis)))

    def _check_point(self, at):
        if at != INF and Fraction(at) not in self.punctures:
            raise ValueError("the filtration point must be a puncture or inf")


def _coefficient_of_monomial(h: RationalVectorField, k: int) -> Fraction:
    if k >= 0:
        return h.poly[k] if k < len(h.poly) else Fraction(0)
    cs = h.parts_dict.get(Fraction(0), ())
    return cs[-k - 1] if -k - 1 < len(cs) else Fraction(0)


def combine(basis: Sequence[RationalVectorField], coeffs: Sequence) -> RationalVectorField:
    out = RationalVectorField.make()
    for b, c in zip(basis, coeffs):
        if c:
            out = out + b.scale(c)
    return out


def kn_genus0(punctures: Sequence, field: FieldSpec = QQ) -> KNGenus0:
    return KNGenus0(punctures, field)
