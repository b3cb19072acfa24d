"""Noncommutative and Lie polynomials, matrix evaluation and identity checks."""

from __future__ import annotations

import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence, Union

from ..errors import ParseError, ShapeMismatch
from ..exactla.linalg import identity, matmul
from ..exactla.poly import format_rational, parse_rational

Matrix = list[list[Fraction]]


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class NcPolynomial:
    """Polynomial in noncommuting variables ``x_0, ..., x_{nvars-1}``."""

    def __init__(self, nvars: int, terms=()):
        self.nvars = nvars
        merged: dict[tuple, Fraction] = {}
        for c, w in (terms.items() if isinstance(terms, dict) else terms):
            if isinstance(c, tuple) and not isinstance(w, tuple):
                c, w = w, c
            w = tuple(w)
            if any(not 0 <= x < nvars for x in w):
                raise ValueError(f"word {w} uses a variable outside 0..{nvars - 1}")
            merged[w] = merged.get(w, Fraction(0)) + Fraction(c)
        self.terms = {w: c for w, c in sorted(merged.items(), key=lambda t: (len(t[0]), t[0])) if c}

    @classmethod
    def var(cls, i: int, nvars: int) -> "NcPolynomial":
        return cls(nvars, [(1, (i,))])

    def _lift(self, other: "NcPolynomial") -> int:
        return max(self.nvars, other.nvars)

    def __add__(self, other):
        n = self._lift(other)
        return NcPolynomial(n, [(c, w) for w, c in self.terms.items()] + [(c, w) for w, c in other.terms.items()])

    def __neg__(self):
        return NcPolynomial(self.nvars, [(-c, w) for w, c in self.terms.items()])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NcPolynomial(self.nvars, [(c * other, w) for w, c in self.terms.items()])
        n = self._lift(other)
        return NcPolynomial(n, [(a * b, u + v) for u, a in self.terms.items() for v, b in other.terms.items()])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = NcPolynomial(self.nvars, [(1, ())])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, NcPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    @property
    def is_multilinear(self) -> bool:
        """Every word uses each of the ``nvars`` variables exactly once."""
        return bool(self.terms) and all(sorted(w) == list(range(self.nvars)) for w in self.terms)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "terms": [{"coeff": format_rational(c), "word": list(w)} for w, c in self.terms.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "NcPolynomial":
        try:
            n = int(obj["nvars"])
            terms = []
            for k, t in enumerate(obj.get("terms", [])):
                try:
                    terms.append((parse_rational(t["coeff"]), tuple(int(x) for x in t["word"])))
                except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                    raise ParseError(str(exc), f"terms[{k}]") from exc
            return cls(n, terms)
        except KeyError as exc:
            raise ParseError(f"missing field {exc}", "nvars") from exc
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), "terms") from exc

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms.items():
            word = "".join(f"x{i}" for i in w) or "1"
            parts.append(f"{c}*{word}" if c != 1 else word)
        return " + ".join(parts)


def commutator(a: NcPolynomial, b: NcPolynomial) -> NcPolynomial:
    return a * b - b * a


def standard_polynomial(k: int) -> NcPolynomial:
    """``S_k = sum over permutations of sign(s) x_s(0) ... x_s(k-1)``."""
    if k < 1:
        raise ValueError("k must be positive")
    return NcPolynomial(k, [(_perm_sign(p), p) for p in permutations(range(k))])


def central_identity_p2() -> NcPolynomial:
    """``[x0, x1]^2``, central on 2x2 matrices."""
    c = commutator(NcPolynomial.var(0, 2), NcPolynomial.var(1, 2))
    return c * c


# --- matrix evaluation ----------------------------------------------------------


def _check_args(nvars: int, args: Sequence[Matrix], size: int | None) -> int:
    if len(args) != nvars:
        raise ShapeMismatch(f"expected {nvars} arguments, got {len(args)}")
    sizes = {len(m) for m in args} | {len(r) for m in args for r in m}
    if size is not None:
        sizes.add(size)
    if len(sizes) > 1:
        raise ShapeMismatch("arguments must be square matrices of one size")
    if not sizes:
        raise ShapeMismatch("matrix size is undetermined; pass size")
    return sizes.pop()


def nc_eval(p: NcPolynomial, args: Sequence[Matrix], size: int | None = None) -> Matrix:
    n = _check_args(p.nvars, args, size)
    out = [[Fraction(0)] * n for _ in range(n)]
    cache: dict[tuple, Matrix] = {(): identity(n)}

    def word_value(w):
        if w not in cache:
            cache[w] = matmul(word_value(w[:-1]), args[w[-1]])
        return cache[w]

    for w, c in p.terms.items():
        m = word_value(w)
        for i in range(n):
            row = out[i]
            for j, x in enumerate(m[i]):
                if x:
                    row[j] += c * x
    return out


@dataclass
class CentralValue:
    central: bool
    scalar: Fraction | None


def is_central_value(m: Matrix) -> CentralValue:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ShapeMismatch("matrix must be square")
    if n == 0:
        return CentralValue(True, Fraction(0))
    lam = m[0][0]
    ok = all(m[i][j] == (lam if i == j else 0) for i in range(n) for j in range(n))
    return CentralValue(ok, lam if ok else None)


def matrix_units(d: int) -> list[Matrix]:
    out = []
    for i in range(d):
        for j in range(d):
            m = [[Fraction(0)] * d for _ in range(d)]
            m[i][j] = Fraction(1)
            out.append(m)
    return out


def unit_label(k: int, d: int) -> str:
    i, j = divmod(k, d)
    return f"E{i + 1}{j + 1}"


def random_matrix(rng: random.Random, d: int, bound: int = 3) -> Matrix:
    return [[Fraction(rng.randint(-bound, bound)) for _ in range(d)] for _ in range(d)]


@dataclass
class CentralReport:
    polynomial: NcPolynomial
    d: int
    strategy: str
    checked: int
    central: bool
    attains_one: bool | None
    attainment_witness: list | None = None
    noncentral_witness: list | None = None
    noncentral_value: Matrix | None = None
    note: str = ""

    def to_json(self) -> dict:
        def mats(ms):
            return None if ms is None else [m if isinstance(m, str) else [[format_rational(x) for x in r] for r in m] for m in ms]

        return {
            "polynomial": self.polynomial.to_json(),
            "d": self.d,
            "strategy": self.strategy,
            "checked": self.checked,
            "central": self.central,
            "attains_one": self.attains_one,
            "attainment_witness": mats(self.attainment_witness),
            "noncentral_witness": mats(self.noncentral_witness),
            "noncentral_value": None if self.noncentral_value is None else mats([self.noncentral_value])[0],
            "note": self.note,
        }


def _sweep_units(args):
    """Evaluate ``p`` on matrix-unit tuples; returns (first noncentral, first attainment, count)."""
    p, d, tuples = args
    units = matrix_units(d)
    bad = hit = None
    for t in tuples:
        v = nc_eval(p, [units[k] for k in t], d)
        cv = is_central_value(v)
        if not cv.central and bad is None:
            bad = (t, v)
        if cv.central and cv.scalar == 1 and hit is None:
            hit = t
        if bad is not None and hit is not None:
            break
    return bad, hit, len(tuples)


def verify_central_identity(
    p: NcPolynomial,
    d: int,
    strategy: str = "exhaustive_matrix_units",
    trials: int = 1000,
    seed: int = 0,
    jobs: int = 1,
) -> CentralReport:
    """Check that every value of ``p`` on ``d x d`` matrices is scalar, and look for the value ``1``.

    Exhaustive sweeps cover all matrix-unit tuples; for multilinear ``p`` this
    proves centrality. ``randomized`` draws ``trials`` integer tuples from
    ``seed`` and also runs the unit sweep for the attainment search.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    all_tuples = list(product(range(d * d), repeat=p.nvars))
    chunks = [all_tuples[i::jobs] for i in range(jobs)] if jobs > 1 else [all_tuples]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_sweep_units, [(p, d, c) for c in chunks]))
    else:
        results = [_sweep_units((p, d, all_tuples))]
    # chunks partition the lexicographic sweep, so the minima match a serial run
    bad = min((r[0] for r in results if r[0] is not None), default=None, key=lambda b: b[0])
    hit = min((r[1] for r in results if r[1] is not None), default=None)
    checked = sum(r[2] for r in results)
    report = CentralReport(p, d, strategy, checked, bad is None, hit is not None)
    if hit is not None:
        report.attainment_witness = [unit_label(k, d) for k in hit]
    if bad is not None:
        report.noncentral_witness = [unit_label(k, d) for k in bad[0]]
        report.noncentral_value = bad[1]
    if strategy == "randomized":
        rng = random.Random(seed)
        for _ in range(trials):
            args = [random_matrix(rng, d) for _ in range(p.nvars)]
            v = nc_eval(p, args, d)
            report.checked += 1
            cv = is_central_value(v)
            if not cv.central and report.central:
                report.central = False
                report.noncentral_witness = args
                report.noncentral_value = v
            if cv.central and cv.scalar == 1 and report.attainment_witness is None:
                report.attains_one = True
                report.attainment_witness = args
    elif strategy != "exhaustive_matrix_units":
        raise ValueError(f"unknown strategy {strategy!r}")
    if report.central and not report.attains_one:
        report.attains_one = None
        report.note = "value 1 not attained within the search budget (inconclusive)"
    elif report.central and not p.is_multilinear and strategy == "exhaustive_matrix_units":
        report.note = "not multilinear: the matrix-unit sweep is evidence, not proof"
    return report


# --- Lie polynomials -------------------------------------------------------------

Tree = Union[int, tuple]


class LiePolynomial:
    """Linear combination of bracket monomials; a monomial is a variable index or a pair ``(left, right)``."""

    def __init__(self, terms: Sequence[tuple[Fraction, Tree]], nvars: int | None = None):
        self.terms = [(Fraction(c), t) for c, t in terms if c]
        seen = set()
        for _, t in self.terms:
            seen |= _leaves(t)
        self.nvars = nvars if nvars is not None else (max(seen) + 1 if seen else 0)

    @classmethod
    def var(cls, i: int) -> "LiePolynomial":
        return cls([(1, i)])

    @classmethod
    def bracket(cls, a: "LiePolynomial", b: "LiePolynomial") -> "LiePolynomial":
        return cls([(x * y, (s, t)) for x, s in a.terms for y, t in b.terms], max(a.nvars, b.nvars))

    def __add__(self, other):
        return LiePolynomial(self.terms + other.terms, max(self.nvars, other.nvars))

    def scale(self, c):
        return LiePolynomial([(c * x, t) for x, t in self.terms], self.nvars)

    @property
    def is_multilinear(self) -> bool:
        for _, t in self.terms:
            leaves = _leaf_list(t)
            if sorted(leaves) != list(range(self.nvars)):
                return False
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(_leaf_list(t)) for _, t in self.terms), default=0)

    @classmethod
    def parse(cls, text: str) -> "LiePolynomial":
        """Read expressions like ``[[x0,x1],x2]`` or ``[x0,x1] - 2*[x1,x2]``."""
        pos = 0
        s = text.replace(" ", "")

        def fail(msg):
            raise ParseError(msg, f"char {pos}")

        def atom():
            nonlocal pos
            if s.startswith("[", pos):
                pos += 1
                left = atom()
                if not s.startswith(",", pos):
                    fail("expected ','")
                pos += 1
                right = atom()
                if not s.startswith("]", pos):
                    fail("expected ']'")
                pos += 1
                return (left, right)
            m = re.match(r"x(\d+)", s[pos:])
            if not m:
                fail("expected a variable x<k> or '['")
            pos += m.end()
            return int(m.group(1))

        terms = []
        sign = Fraction(1)
        while pos < len(s):
            coeff = Fraction(1)
            m = re.match(r"([+-]?)(\d+(?:/\d+)?)\*", s[pos:])
            if m:
                coeff = Fraction(m.group(2)) * (-1 if m.group(1) == "-" else 1)
                pos += m.end()
            elif s[pos] in "+-":
                coeff = Fraction(-1 if s[pos] == "-" else 1)
                pos += 1
            terms.append((sign * coeff, atom()))
            if pos < len(s) and s[pos] not in "+-":
                fail("expected '+' or '-'")
        if not terms:
            fail("empty expression")
        return cls(terms)

    def __str__(self):
        def show(t):
            return f"x{t}" if isinstance(t, int) else f"[{show(t[0])},{show(t[1])}]"

        return " + ".join((f"{c}*" if c != 1 else "") + show(t) for c, t in self.terms) or "0"


def _leaves(t: Tree) -> set:
    return {t} if isinstance(t, int) else _leaves(t[0]) | _leaves(t[1])


def _leaf_list(t: Tree) -> list:
    return [t] if isinstance(t, int) else _leaf_list(t[0]) + _leaf_list(t[1])


def lie_expand(lp: LiePolynomial) -> NcPolynomial:
    """Associative expansion with ``[u, v] -> uv - vu``."""
    n = max(lp.nvars, 1)

    def expand(t):
        if isinstance(t, int):
            return NcPolynomial.var(t, n)
        return commutator(expand(t[0]), expand(t[1]))

    out = NcPolynomial(n)
    for c, t in lp.terms:
        out = out + expand(t) * c
    return out


def lie_eval(g, lp: LiePolynomial, args: Sequence[dict]) -> dict:
    """Value of ``lp`` on sparse vectors of a structure-constant algebra."""

    def ev(t):
        if isinstance(t, int):
            return dict(args[t])
        return g.bracket_sparse(ev(t[0]), ev(t[1]))

    out: dict = {}
    for c, t in lp.terms:
        for k, v in ev(t).items():
            out[k] = out.get(k, Fraction(0)) + c * v
    return {k: v for k, v in out.items() if v}


@dataclass
class IdentityVerdict:
    satisfied: bool
    mode: str
    checked: int
    witness: list | None = None
    value: dict | None = None
    witness_labels: list | None = field(default=None)

    def to_json(self) -> dict:
        return {
            "satisfied": self.satisfied,
            "mode": self.mode,
            "checked": self.checked,
            "witness": self.witness_labels or (None if self.witness is None else [{str(k): format_rational(v) for k, v in sorted(w.items())} for w in self.witness]),
            "value": None if self.value is None else {str(k): format_rational(v) for k, v in sorted(self.value.items())},
        }


def satisfies_identity(g, lp: LiePolynomial, strategy: str = "exhaustive", trials: int = 200, seed: int = 0) -> IdentityVerdict:
    """Search basis tuples (or random tuples) for a nonzero value of ``lp`` on ``g``.

    A basis-exhaustive pass proves the identity when ``lp`` is multilinear;
    otherwise random tuples are added and the verdict is only ``sampled``.
    """
    n = lp.nvars
    checked = 0
    if strategy == "exhaustive":
        for t in product(range(g.dim), repeat=n):
            args = [{k: Fraction(1)} for k in t]
            v = lie_eval(g, lp, args)
            checked += 1
            if v:
                return IdentityVerdict(False, "basis-exhaustive", checked, args, v, [g.labels[k] for k in t])
        if lp.is_multilinear:
            return IdentityVerdict(True, "basis-exhaustive (multilinear ⇒ identity)", checked)
    elif strategy != "randomized":
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    for _ in range(trials):
        args = [{k: Fraction(rng.randint(-3, 3)) for k in range(g.dim)} for _ in range(n)]
        args = [{k: c for k, c in a.items() if c} for a in args]
        v = lie_eval(g, lp, args)
        checked += 1
        if v:
            return IdentityVerdict(False, "sampled", checked, args, v)
    return IdentityVerdict(True, "sampled", checked)


def _x(i):
    return LiePolynomial.var(i)


def _br(a, b):
    return LiePolynomial.bracket(a, b)


def identity_catalog() -> dict[str, LiePolynomial]:
    """Lie identities of degree at most 4 used as candidates against simple algebras."""
    x0, x1, x2, x3 = (_x(i) for i in range(4))
    return {
        "abelian": _br(x0, x1),
        "nilpotent2": _br(_br(x0, x1), x2),
        "metabelian": _br(_br(x0, x1), _br(x2, x3)),
        "nilpotent3": _br(_br(_br(x0, x1), x2), x3),
        "engel2": _br(_br(x0, x1), x1),
        "engel3": _br(_br(_br(x0, x1), x1), x1),
        "left_normed_sym3": _br(_br(x0, x1), x2) + _br(_br(x0, x2), x1),
        "standard_lie4": _br(_br(x0, x1), _br(x2, x3)) + _br(_br(x0, x2), _br(x3, x1)) + _br(_br(x0, x3), _br(x1, x2)),
    }
