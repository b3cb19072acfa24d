"""Standard small Lie algebras and representations."""

from __future__ import annotations

from fractions import Fraction

from .algebra import FinDimLie, direct_sum, from_matrices, semidirect


def matrix_unit(i: int, j: int, n: int) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    m[i][j] = Fraction(1)
    return m


def sl_basis(n: int) -> tuple[list, list[str]]:
    """Matrices and labels: ``E_ij`` for ``i != j`` (row-major), then ``H_i = E_ii - E_{i+1,i+1}``."""
    mats, labels = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                mats.append(matrix_unit(i, j, n))
                labels.append(f"E{i + 1}{j + 1}")
    for i in range(n - 1):
        h = matrix_unit(i, i, n)
        h[i + 1][i + 1] = Fraction(-1)
        mats.append(h)
        labels.append(f"H{i + 1}")
    return mats, labels


def sl2() -> FinDimLie:
    """Chevalley basis ``(e, h, f)`` with ``[h,e]=2e``, ``[h,f]=-2f``, ``[e,f]=h``."""
    two = Fraction(2)
    br = {(0, 1): {0: -two}, (0, 2): {1: Fraction(1)}, (1, 2): {2: -two}}
    return FinDimLie(3, br, ["e", "h", "f"], name="sl2")


def sl2_matrices() -> list[list[list[Fraction]]]:
    e = matrix_unit(0, 1, 2)
    f = matrix_unit(1, 0, 2)
    h = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
    return [e, h, f]


def sl_n(n: int) -> FinDimLie:
    if n == 2:
        return sl2()
    mats, labels = sl_basis(n)
    g = from_matrices(mats, labels)
    g.name = f"sl{n}"
    return g


def gl_n(n: int) -> FinDimLie:
    mats = [matrix_unit(i, j, n) for i in range(n) for j in range(n)]
    labels = [f"E{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    g = from_matrices(mats, labels)
    g.name = f"gl{n}"
    return g


def heisenberg() -> FinDimLie:
    """``h3`` with basis ``(x, y, z)`` and ``[x,y]=z``."""
    return FinDimLie(3, {(0, 1): {2: Fraction(1)}}, ["x", "y", "z"], name="h3")


def two_dim_solvable() -> FinDimLie:
    """The nonabelian 2-dim algebra ``[x, y] = y``."""
    return FinDimLie(2, {(0, 1): {1: Fraction(1)}}, ["x", "y"], name="aff1")


def abelian(n: int) -> FinDimLie:
    return FinDimLie(n, {}, [f"a{i}" for i in range(n)], name=f"ab{n}")


def sl2_irrep(m: int) -> list[list[list[Fraction]]]:
    """Matrices of ``(e, h, f)`` on ``V(m)`` in the basis ``v_0..v_m``.

    ``h v_k = (m - 2k) v_k``, ``f v_k = v_{k+1}``, ``e v_k = k(m - k + 1) v_{k-1}``.
    """
    d = m + 1
    e = [[Fraction(0)] * d for _ in range(d)]
    h = [[Fraction(0)] * d for _ in range(d)]
    f = [[Fraction(0)] * d for _ in range(d)]
    for k in range(d):
        h[k][k] = Fraction(m - 2 * k)
        if k + 1 < d:
            f[k + 1][k] = Fraction(1)
        if k > 0:
            e[k - 1][k] = Fraction(k * (m - k + 1))
    return [e, h, f]


def adjoint_matrices(g: FinDimLie) -> list[list[list]]:
    return [g.ad_basis(i) for i in range(g.dim)]


def sl2_with_module(m: int) -> FinDimLie:
    """``sl2 ⋉ V(m)`` with ``V(m)`` an abelian ideal."""
    return semidirect(sl2(), abelian(m + 1), sl2_irrep(m))


__all__ = [
    "abelian",
    "adjoint_matrices",
    "direct_sum",
    "gl_n",
    "heisenberg",
    "matrix_unit",
    "sl2",
    "sl2_irrep",
    "sl2_matrices",
    "sl2_with_module",
    "sl_basis",
    "sl_n",
    "two_dim_solvable",
]
