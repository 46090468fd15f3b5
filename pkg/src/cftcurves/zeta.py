"""Zeta numerators and the L-polynomial container."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .curve import Curve
from .cyclotomic import CyclotomicElem


@dataclass
class LPoly:
    """Polynomial in T with coefficients in Z[zeta_order].

    ``omega`` is set for rational L-functions of constant characters: the
    full function is this numerator over (1 - omega T)(1 - q omega T).
    """

    coeffs: list[CyclotomicElem]
    order: int
    q: int
    omega: CyclotomicElem | None = None

    @classmethod
    def from_ints(cls, coeffs, q: int) -> LPoly:
        return cls([CyclotomicElem(1, [c]) for c in coeffs], 1, q)

    def __post_init__(self):
        self.coeffs = [c.embed(self.order) if c.n != self.order else c for c in self.coeffs]
        while len(self.coeffs) > 1 and self.coeffs[-1].is_zero():
            self.coeffs.pop()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def has_poles(self) -> bool:
        return self.omega is not None

    def is_integral(self) -> bool:
        return all(c.is_integer() for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        return [c.to_int() for c in self.coeffs]

    def __mul__(self, other: LPoly) -> LPoly:
        from math import lcm
        n = lcm(self.order, other.order)
        a = [c.embed(n) for c in self.coeffs]
        b = [c.embed(n) for c in other.coeffs]
        out = [CyclotomicElem(n) for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return LPoly(out, n, self.q)

    def reduce_order(self) -> LPoly:
        """Rewrite with integer coefficients when possible."""
        if self.order != 1 and self.is_integral() and self.omega is None:
            return LPoly([CyclotomicElem(1, [c]) for c in self.int_coeffs()], 1, self.q)
        return self

    def complex_coeffs(self, k: int = 1) -> list[complex]:
        return [c.complex_value(k) for c in self.coeffs]

    def inverse_roots(self, k: int = 1, dps: int = 40) -> list:
        if self.degree < 1:
            return []
        with mpmath.workdps(dps):
            w = mpmath.exp(2j * mpmath.pi * k / self.order)
            cs = []
            for c in self.coeffs:
                acc = mpmath.mpc(0)
                for a in reversed(c.coeffs):
                    acc = acc * w + a
                cs.append(acc)
            roots = mpmath.polyroots(list(reversed(cs)), maxsteps=400, extraprec=4 * dps)
            return [1 / r for r in roots]

    def weil_deviation(self) -> float:
        """Largest | |alpha| - sqrt(q) | over inverse roots and complex embeddings."""
        worst = 0.0
        embeddings = [k for k in range(1, self.order + 1) if _coprime(k, self.order)]
        for k in embeddings:
            roots = self.inverse_roots(k)
            with mpmath.workdps(40):
                for a in roots:
                    worst = max(worst, float(abs(abs(a) - mpmath.sqrt(self.q))))
        return worst

    def weil_ok(self, tol: float = 1e-9) -> bool:
        return self.weil_deviation() <= tol

    def functional_equation_ok(self) -> bool:
        """P(T) = q^g T^(2g) P(1/(qT)) for integer numerators of even degree 2g."""
        if not self.is_integral() or self.degree % 2:
            return False
        c = self.int_coeffs()
        g = self.degree // 2
        return all(c[2 * g - i] == self.q ** (g - i) * c[i] for i in range(g + 1))

    def value_at_one(self) -> CyclotomicElem:
        out = CyclotomicElem(self.order)
        for c in self.coeffs:
            out = out + c
        return out

    def key(self) -> tuple:
        return (self.order, self.degree, tuple(c.coeffs for c in self.coeffs),
                None if self.omega is None else self.omega.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LPoly):
            return NotImplemented
        a, b = self.reduce_order(), other.reduce_order()
        if a.degree != b.degree or (a.omega is None) != (b.omega is None):
            return False
        if a.omega is not None and a.omega != b.omega:
            return False
        return all(x == y for x, y in zip(a.coeffs, b.coeffs))

    def to_record(self) -> dict:
        rec = {
            "order": self.order,
            "degree": self.degree,
            "coeffs": [c.to_int() if self.order == 1 else list(c.coeffs) for c in self.coeffs],
        }
        if self.omega is not None:
            rec["pole_omega"] = list(self.omega.coeffs)
        return rec

    def __str__(self) -> str:
        if self.is_integral():
            terms = []
            for i, c in enumerate(self.int_coeffs()):
                if c:
                    terms.append(f"{c}" if i == 0 else f"{c}*T^{i}" if i > 1 else f"{c}*T")
            return " + ".join(terms).replace("+ -", "- ") or "0"
        return " + ".join(f"({c})*T^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero())


def _coprime(a: int, b: int) -> bool:
    from math import gcd
    return gcd(a, b) == 1


def exp_log_series(log_coeffs: list, N: int) -> list:
    """exp(sum_{m>=1} s_m T^m / m) up to T^N, given s_1..s_N (ring elements).

    Uses n A_n = sum_{k=1}^n s_k A_{n-k}; division by n must be exact.
    """
    A = [None] * (N + 1)
    one = log_coeffs[0] * 0 + 1 if log_coeffs else 1
    A[0] = one
    for n in range(1, N + 1):
        acc = A[0] * 0
        for k in range(1, n + 1):
            acc = acc + log_coeffs[k - 1] * A[n - k]
        A[n] = _exact_div(acc, n)
    return A


def _exact_div(x, n: int):
    if isinstance(x, int):
        if x % n:
            raise ArithmeticError(f"{x} not divisible by {n}")
        return x // n
    if isinstance(x, Fraction):
        return x / n
    return x.exact_div(n)


def zeta_l_polynomial(curve: Curve) -> LPoly:
    """Numerator P(T) of Z(X, T), from N_1..N_g and the functional equation."""
    g, q = curve.genus, curve.q
    s = [curve.count_points(m) for m in range(1, g + 1)]
    Z = exp_log_series([Fraction(x) for x in s], g)
    # multiply by (1 - T)(1 - qT) = 1 - (q+1) T + q T^2
    mult = [1, -(q + 1), q]
    c = []
    for i in range(g + 1):
        acc = Fraction(0)
        for j, m in enumerate(mult):
            if 0 <= i - j:
                acc += m * Z[i - j]
        if acc.denominator != 1:
            raise ArithmeticError("zeta numerator is not integral")
        c.append(int(acc))
    full = c + [0] * g
    for i in range(g):
        full[2 * g - i] = q ** (g - i) * c[i]
    return LPoly.from_ints(full, q)


def class_number(curve: Curve) -> int:
    return zeta_l_polynomial(curve).value_at_one().to_int()


def counts_from_zeta(P: LPoly, q: int, N: int) -> list[int]:
    """N_1..N_N predicted by an integer numerator P (Newton's identities)."""
    c = P.int_coeffs() + [0] * (N + 1)
    p = [0] * (N + 1)  # p[m] = sum of m-th powers of the inverse roots
    for m in range(1, N + 1):
        acc = -m * c[m]
        for k in range(1, m):
            acc -= c[k] * p[m - k]
        p[m] = acc
    return [q ** m + 1 - p[m] for m in range(1, N + 1)]
