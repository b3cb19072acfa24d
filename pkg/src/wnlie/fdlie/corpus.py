"""Seeded random corpus of finite-dimensional algebras: Levi factor ⋉ nilpotent module, plus solvable summands."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import FinDimLie, change_basis, direct_sum, semidirect
from .zoo import abelian, heisenberg, sl2, sl2_irrep, sl_basis, sl_n, two_dim_solvable


def kron(a, b):
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def _eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _block_diag(*mats):
    n = sum(len(m) for m in mats)
    out = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(m)
    return out


def _sl2_on_sum(ms):
    reps = [sl2_irrep(m) for m in ms]
    return [_block_diag(*[r[i] for r in reps]) for i in range(3)]


def _heisenberg_action(rho):
    """Extend an action on span(x, y) to h3 by acting trivially on z (traceless => derivation)."""
    return [_block_diag(r, [[Fraction(0)]]) for r in rho]


def _levi_and_module(kind: str, rng: random.Random) -> FinDimLie:
    if kind == "sl2":
        choice = rng.randrange(3)
        if choice == 0:
            ms = [rng.randrange(1, 4)]
        elif choice == 1:
            ms = [rng.randrange(0, 3), rng.randrange(1, 3)]
        else:
            return semidirect(sl2(), heisenberg(), _heisenberg_action(sl2_irrep(1)))
        return semidirect(sl2(), abelian(sum(m + 1 for m in ms)), _sl2_on_sum(ms))
    if kind == "sl3":
        s = sl_n(3)
        mats, _ = sl_basis(3)
        if rng.randrange(2):
            mats = [[[-m[j][i] for j in range(3)] for i in range(3)] for m in mats]
        return semidirect(s, abelian(3), mats)
    if kind == "sl2+sl2":
        s = direct_sum(sl2(), sl2())
        rho = sl2_irrep(1)
        if rng.randrange(2):
            act = [kron(r, _eye(2)) for r in rho] + [kron(_eye(2), r) for r in rho]
            return semidirect(s, abelian(4), act)
        act = list(rho) + [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(3)]
        return semidirect(s, abelian(2), act)
    if kind == "solvable":
        return direct_sum(two_dim_solvable(), heisenberg())
    raise ValueError(kind)


def random_basis_change(n: int, rng: random.Random, density: float = 0.25) -> list[list[Fraction]]:
    """Permuted unipotent upper-triangular matrix with small integer entries."""
    u = _eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                u[i][j] = Fraction(rng.choice([-2, -1, 1, 2]))
    perm = list(range(n))
    rng.shuffle(perm)
    return [u[perm[i]] for i in range(n)]


def random_corpus(count: int = 20, seed: int = 0) -> list[FinDimLie]:
    rng = random.Random(seed)
    kinds = ["sl2", "sl3", "sl2+sl2", "solvable"]
    out = []
    for idx in range(count):
        kind = kinds[idx % len(kinds)] if idx < len(kinds) else rng.choice(kinds)
        g = _levi_and_module(kind, rng)
        extra = rng.randrange(3)
        if extra == 1 and g.dim < 13:
            g = direct_sum(g, two_dim_solvable())
        elif extra == 2 and g.dim < 14:
            g = direct_sum(g, abelian(1))
        h = change_basis(g, random_basis_change(g.dim, rng))
        h.name = f"corpus{idx}:{kind}"
        out.append(h)
    return out
