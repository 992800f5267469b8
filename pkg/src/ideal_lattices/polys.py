"""Small dense polynomial arithmetic over Z, Q and F_p.

Polynomials are coefficient sequences in ascending degree order. Results
are trimmed (no trailing zeros); the zero polynomial is ``()``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple


def trim(a: Sequence) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def degree(a: Sequence) -> int:
    a = trim(a)
    return len(a) - 1 if a else -1


def derivative(a: Sequence) -> Poly:
    return trim(i * c for i, c in enumerate(a) if i)


# -- rational coefficients ----------------------------------------------------


def _q_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = list(trim(a))
    return trim(q), trim(a)


def gcd_q(a: Sequence, b: Sequence) -> Poly:
    """Monic gcd over the rationals."""
    a, b = trim(Fraction(x) for x in a), trim(Fraction(x) for x in b)
    while b:
        a, b = b, _q_divmod(a, b)[1]
    if not a:
        return ()
    lead = a[-1]
    return tuple(x / lead for x in a)


def is_squarefree_q(a: Sequence[int]) -> bool:
    return degree(gcd_q(a, derivative(a))) == 0


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant via the Sylvester determinant."""
    a, b = trim(a), trim(b)
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return 0
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    hi_a, hi_b = a[::-1], b[::-1]
    for i in range(n):
        rows.append([0] * i + list(hi_a) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(hi_b) + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(a: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial."""
    a = trim(a)
    d = len(a) - 1
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if a[-1] != 1:
        raise ValueError("discriminant is implemented for monic polynomials")
    if d == 1:
        return 1
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(a, derivative(a))


def rational_roots(a: Sequence[int]) -> list[int]:
    """Integer roots of a monic integer polynomial (the only possible rational ones)."""
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial")
    roots = []
    if a[0] == 0:
        roots.append(0)
        a = trim(a[1:])
        while a and a[0] == 0:
            a = a[1:]
    c0 = abs(a[0]) if a else 0
    if len(a) <= 1:
        return roots
    cand = set()
    k = 1
    while k * k <= c0:
        if c0 % k == 0:
            cand.update((k, -k, c0 // k, -(c0 // k)))
        k += 1
    roots.extend(r for r in sorted(cand) if evaluate(a, r) == 0)
    return sorted(roots)


def evaluate(a: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# -- coefficients in F_p ------------------------------------------------------


def mod_p(a: Sequence[int], p: int) -> Poly:
    return trim(c % p for c in a)


def add_p(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n))


def sub_p(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    return trim(((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n))


def mul_p(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(c % p for c in out)


def divmod_p(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(r) - len(b) + 1, 0)
    for shift in range(len(r) - len(b), -1, -1):
        c = r[shift + len(b) - 1] * inv % p
        if c:
            q[shift] = c
            for i, y in enumerate(b):
                r[shift + i] = (r[shift + i] - c * y) % p
    return trim(q), trim(r)


def rem_p(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_p(a, b, p)[1]


def monic_p(a: Poly, p: int) -> Poly:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def gcd_p(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, rem_p(a, b, p)
    return monic_p(a, p)


def powmod_p(h: Poly, e: int, f: Poly, p: int) -> Poly:
    """``h**e mod f`` over F_p by square-and-multiply."""
    result: Poly = (1,)
    base = rem_p(h, f, p)
    while e:
        if e & 1:
            result = rem_p(mul_p(result, base, p), f, p)
        base = rem_p(mul_p(base, base, p), f, p)
        e >>= 1
    return result


def distinct_degree_counts(f: Sequence[int], p: int) -> dict[int, int]:
    """Number of monic irreducible factors of each degree of squarefree ``f`` mod ``p``.

    Distinct-degree factorization: after removing all factors of degree
    below ``i``, ``gcd(f, X^(p^i) - X)`` is the product of those of degree ``i``.
    """
    f = monic_p(mod_p(f, p), p)
    counts: dict[int, int] = {}
    h: Poly = (0, 1)
    i = 0
    while degree(f) >= 2 * (i + 1):
        i += 1
        h = powmod_p(h, p, f, p)
        g = gcd_p(f, sub_p(h, (0, 1), p), p)
        if degree(g) > 0:
            counts[i] = degree(g) // i
            f = divmod_p(f, g, p)[0]
            h = rem_p(h, f, p)
    if degree(f) > 0:
        counts[degree(f)] = counts.get(degree(f), 0) + 1
    return counts


def count_roots_mod_p(f: Sequence[int], p: int) -> int:
    """Number of distinct roots in F_p of a monic integer polynomial."""
    fp = mod_p(f, p)
    d = degree(fp)
    if d <= 0:
        raise ValueError("expected a polynomial of positive degree mod p")
    if d == 1:
        return 1
    if d == 2 and p != 2:
        c0, c1 = fp[0], fp[1]
        disc = (c1 * c1 - 4 * c0) % p
        if disc == 0:
            return 1
        return 2 if pow(disc, (p - 1) // 2, p) == 1 else 0
    if p <= 2 * d:
        return sum(1 for x in range(p) if evaluate(fp, x) % p == 0)
    return degree(gcd_p(fp, sub_p(powmod_p((0, 1), p, fp, p), (0, 1), p), p))
