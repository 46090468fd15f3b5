"""Exact arithmetic in the cyclotomic integers Z[zeta_n].

Elements are integer coefficient tuples in the power basis
1, z, ..., z^(phi(n)-1), reduced modulo the n-th cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from math import gcd, lcm


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of Phi_n."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] // b[-1]
        out[k - db] = c
        for j in range(db + 1):
            a[k - db + j] -= c * b[j]
    assert not any(a), "inexact cyclotomic division"
    return out


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce(coeffs, n: int) -> tuple[int, ...]:
    phi = cyclotomic_poly(n)
    d = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, d - 1, -1):
        a = c[k]
        if a:
            for j in range(d):
                c[k - d + j] -= a * phi[j]
        c[k] = 0
    c = c[:d] + [0] * (d - len(c))
    return tuple(c)


class CyclotomicElem:
    """An element of Z[zeta_n]."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        self.coeffs = _reduce(coeffs, n)

    @classmethod
    def root(cls, n: int, k: int = 1) -> CyclotomicElem:
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def integer(cls, a: int, n: int = 1) -> CyclotomicElem:
        return cls(n, [a])

    # -- order handling ------------------------------------------------------

    def embed(self, m: int) -> CyclotomicElem:
        """Re-embed into Z[zeta_m] for a multiple m of n."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed order {self.n} into order {m}")
        s = m // self.n
        c = [0] * ((len(self.coeffs) - 1) * s + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            c[i * s] = a
        return CyclotomicElem(m, c)

    def _common(self, other) -> tuple[CyclotomicElem, CyclotomicElem]:
        if isinstance(other, int):
            other = CyclotomicElem(self.n, [other])
        if other.n == self.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.embed(m), other.embed(m)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicElem(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicElem(self.n, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._common(other)
        return CyclotomicElem(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicElem(self.n, [other * x for x in self.coeffs])
        a, b = self._common(other)
        return CyclotomicElem(a.n, _polymul(a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicElem(self.n, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, k: int) -> CyclotomicElem:
        """Divide by a nonzero integer that divides every coefficient."""
        if any(c % k for c in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return CyclotomicElem(self.n, [c // k for c in self.coeffs])

    def conjugate(self) -> CyclotomicElem:
        n = self.n
        c = [0] * n
        for i, a in enumerate(self.coeffs):
            c[(-i) % n] += a
        return CyclotomicElem(n, c)

    def galois(self, k: int) -> CyclotomicElem:
        """Apply zeta -> zeta^k for k coprime to n."""
        n = self.n
        if gcd(k, n) != 1:
            raise ValueError("k must be coprime to n")
        c = [0] * n
        for i, a in enumerate(self.coeffs):
            c[(i * k) % n] += a
        return CyclotomicElem(n, c)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = CyclotomicElem(self.n, [other])
        if not isinstance(other, CyclotomicElem):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        z = self.complex_value(1)
        return hash((round(z.real, 6), round(z.imag, 6)))

    # -- complex embeddings --------------------------------------------------

    def embeddings(self) -> list[int]:
        return [k for k in range(1, self.n + 1) if gcd(k, self.n) == 1]

    def complex_value(self, k: int = 1) -> complex:
        w = cmath.exp(2j * cmath.pi * k / self.n)
        acc = 0j
        for a in reversed(self.coeffs):
            acc = acc * w + a
        return acc

    def complex_abs(self, k: int = 1) -> float:
        return abs(self.complex_value(k))

    def __repr__(self) -> str:
        return f"Cyc({self.n}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*z{self.n}^{i}")
        return " + ".join(terms) if terms else "0"


def _polymul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def zeta(n: int, k: int = 1) -> CyclotomicElem:
    return CyclotomicElem.root(n, k)
