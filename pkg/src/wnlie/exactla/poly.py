"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of ``Fraction`` coefficients, constant term first,
with no trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = tuple


def normalize(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def scale(p: Poly, c) -> Poly:
    return normalize([c * a for a in p])


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return normalize(out)


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quo[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return normalize(quo), normalize(r[:dq])


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return normalize([i * p[i] for i in range(1, len(p))])


def monic(p: Poly) -> Poly:
    return scale(p, 1 / Fraction(p[-1])) if p else ()


def gcdex(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return (), (), ()
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def power(p: Poly, k: int) -> Poly:
    out: Poly = (Fraction(1),)
    for _ in range(k):
        out = mul(out, p)
    return out


def shift(p: Poly, a) -> Poly:
    """Coefficients of ``p(u + a)`` as a polynomial in ``u``."""
    out: Poly = ()
    for c in reversed(p):
        out = add(mul(out, (Fraction(a), Fraction(1))), (c,) if c else ())
    return out


def series_div(num: Poly, den: Poly, order: int) -> list[Fraction]:
    """First ``order`` Taylor coefficients of ``num/den`` at 0 (``den(0) != 0``)."""
    d0 = den[0]
    out = []
    for k in range(order):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


def integer_primitive(p: Poly) -> list[int]:
    """Scale ``p`` to a primitive integer polynomial with positive leading term."""
    den = 1
    for c in p:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    g = g or 1
    if ints and ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """All distinct rational roots, by the rational-root test."""
    if not p:
        raise ValueError("zero polynomial has every root")
    roots = []
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = integer_primitive(p[k:])
    if len(ints) <= 1:
        return roots
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and evaluate(p, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def parse_rational(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise TypeError(f"cannot read {s!r} as a rational")


def format_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
