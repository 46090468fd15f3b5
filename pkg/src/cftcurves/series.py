"""Truncated power series over a table-based finite field.

Series are plain lists of element codes; index i holds the coefficient
of t^i.  All functions take the field and a target precision n.
"""

from __future__ import annotations

from .fields import FiniteField


def mul(K: FiniteField, a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * n
    add, kmul = K.add, K.mul
    for i, ai in enumerate(a[:n]):
        if ai:
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if bj:
                    out[i + j] = add(out[i + j], kmul(ai, bj))
    return out


def add(K: FiniteField, a: list[int], b: list[int], n: int) -> list[int]:
    a = list(a[:n]) + [0] * (n - len(a[:n]))
    for i, bi in enumerate(b[:n]):
        if bi:
            a[i] = K.add(a[i], bi)
    return a


def sub(K: FiniteField, a: list[int], b: list[int], n: int) -> list[int]:
    return add(K, a, [K.neg(c) for c in b[:n]], n)


def scale(K: FiniteField, a: list[int], c: int, n: int) -> list[int]:
    return [K.mul(x, c) for x in a[:n]] + [0] * (n - len(a[:n]))


def inv(K: FiniteField, a: list[int], n: int) -> list[int]:
    """Inverse of a series with nonzero constant term."""
    if not a or a[0] == 0:
        raise ZeroDivisionError("series is not a unit")
    c0 = K.inv(a[0])
    out = [0] * n
    out[0] = c0
    for k in range(1, n):
        s = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j] and out[k - j]:
                s = K.add(s, K.mul(a[j], out[k - j]))
        out[k] = K.neg(K.mul(s, c0))
    return out


def power(K: FiniteField, a: list[int], e: int, n: int) -> list[int]:
    if e < 0:
        return power(K, inv(K, a, n), -e, n)
    result = [1] + [0] * (n - 1)
    base = list(a[:n]) + [0] * (n - len(a[:n]))
    while e:
        if e & 1:
            result = mul(K, result, base, n)
        e >>= 1
        if e:
            base = mul(K, base, base, n)
    return result


def horner(K: FiniteField, coeffs, X: list[int], n: int) -> list[int]:
    """Evaluate the polynomial with K-coefficients ``coeffs`` at the series X."""
    out = [0] * n
    for c in reversed(coeffs):
        out = mul(K, out, X, n)
        if c:
            out[0] = K.add(out[0], c)
    return out


def valuation(a: list[int]) -> int | None:
    for i, c in enumerate(a):
        if c:
            return i
    return None
