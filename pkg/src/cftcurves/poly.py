"""Univariate polynomials over a finite field F_q.

Polynomials are tuples of element codes, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  ``PolyRing`` bundles the
arithmetic for one coefficient field.  Prime fields take a fast path with
plain modular integer arithmetic.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .fields import FiniteField, prime_factors

Poly = tuple

SIEVE_LIMIT = 30_000_000


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs a positive argument")
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class PolyRing:
    """Arithmetic in F_q[x]."""

    def __init__(self, F: FiniteField):
        self.F = F
        self.q = F.q
        self.p = F.p
        self._prime = F.r == 1

    def __repr__(self) -> str:
        return f"PolyRing({self.F!r})"

    # -- basics -------------------------------------------------------------

    @staticmethod
    def trim(a) -> Poly:
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return tuple(a)

    @staticmethod
    def deg(a: Poly) -> int:
        return len(a) - 1

    def const(self, c: int) -> Poly:
        return (c,) if c else ()

    def x(self) -> Poly:
        return (0, 1)

    def from_ints(self, coeffs) -> Poly:
        return self.trim(self.F.from_int(c) for c in coeffs)

    def add(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            a, b = b, a
        if self._prime:
            p = self.p
            out = [(x + y) % p for x, y in zip(a, b)] + list(a[len(b):])
        else:
            add = self.F.add
            out = [add(x, y) for x, y in zip(a, b)] + list(a[len(b):])
        return self.trim(out)

    def neg(self, a: Poly) -> Poly:
        if self._prime:
            return tuple(-c % self.p for c in a)
        return tuple(self.F.neg(c) for c in a)

    def sub(self, a: Poly, b: Poly) -> Poly:
        return self.add(a, self.neg(b))

    def scale(self, a: Poly, c: int) -> Poly:
        if c == 0:
            return ()
        if self._prime:
            p = self.p
            return tuple(x * c % p for x in a)
        mul = self.F.mul
        return tuple(mul(x, c) for x in a)

    def shift(self, a: Poly, k: int) -> Poly:
        return (0,) * k + a if a else ()

    def mul(self, a: Poly, b: Poly) -> Poly:
        if not a or not b:
            return ()
        if self._prime:
            p = self.p
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return self.trim(c % p for c in out)
        F = self.F
        add, mul = F.add, F.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = add(out[i + j], mul(ai, bj))
        return self.trim(out)

    def divmod(self, a: Poly, b: Poly) -> tuple[Poly, Poly]:
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if len(a) < len(b):
            return (), a
        db = len(b) - 1
        r = list(a)
        qout = [0] * (len(a) - db)
        if self._prime:
            p = self.p
            inv = pow(b[-1], p - 2, p)
            for k in range(len(a) - 1, db - 1, -1):
                c = r[k] % p
                if c:
                    c = c * inv % p
                    qout[k - db] = c
                    s = k - db
                    for j in range(db):
                        r[s + j] -= c * b[j]
                r[k] = 0
            return self.trim(qout), self.trim(x % p for x in r[:db])
        F = self.F
        inv = F.inv(b[-1])
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if c:
                c = F.mul(c, inv)
                qout[k - db] = c
                s = k - db
                for j in range(db):
                    if b[j]:
                        r[s + j] = F.sub(r[s + j], F.mul(c, b[j]))
            r[k] = 0
        return self.trim(qout), self.trim(r[:db])

    def mod(self, a: Poly, b: Poly) -> Poly:
        if len(a) < len(b):
            return a
        if self._prime and b[-1] == 1:
            # monic fast path, the hot loop of all modular arithmetic
            p = self.p
            db = len(b) - 1
            r = list(a)
            nb = [-c for c in b[:db]]
            for k in range(len(a) - 1, db - 1, -1):
                c = r[k] % p
                if c:
                    s = k - db
                    for j in range(db):
                        r[s + j] += c * nb[j]
            out = [x % p for x in r[:db]]
            while out and out[-1] == 0:
                out.pop()
            return tuple(out)
        return self.divmod(a, b)[1]

    def div_exact(self, a: Poly, b: Poly) -> Poly:
        qq, rr = self.divmod(a, b)
        if rr:
            raise ArithmeticError("inexact polynomial division")
        return qq

    def monic(self, a: Poly) -> Poly:
        if not a or a[-1] == 1:
            return a
        return self.scale(a, self.F.inv(a[-1]))

    def mulmod(self, a: Poly, b: Poly, m: Poly) -> Poly:
        return self.mod(self.mul(a, b), m)

    def powmod(self, a: Poly, e: int, m: Poly) -> Poly:
        result = self.mod((1,), m)
        base = self.mod(a, m)
        while e:
            if e & 1:
                result = self.mulmod(result, base, m)
            e >>= 1
            if e:
                base = self.mulmod(base, base, m)
        return result

    def pow(self, a: Poly, e: int) -> Poly:
        result: Poly = (1,)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def gcd(self, a: Poly, b: Poly) -> Poly:
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def xgcd(self, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
        """Return (g, s, t) with s*a + t*b = g monic."""
        r0, r1 = a, b
        s0, s1 = (1,), ()
        t0, t1 = (), (1,)
        while r1:
            qq, rr = self.divmod(r0, r1)
            r0, r1 = r1, rr
            s0, s1 = s1, self.sub(s0, self.mul(qq, s1))
            t0, t1 = t1, self.sub(t0, self.mul(qq, t1))
        if not r0:
            return (), s0, t0
        c = self.F.inv(r0[-1])
        return self.scale(r0, c), self.scale(s0, c), self.scale(t0, c)

    def invmod(self, a: Poly, m: Poly) -> Poly:
        g, s, _ = self.xgcd(a, m)
        if g != (1,):
            raise ZeroDivisionError("not invertible modulo m")
        return self.mod(s, m)

    def deriv(self, a: Poly) -> Poly:
        F = self.F
        out = []
        for i in range(1, len(a)):
            c = F.from_int(i)
            out.append(F.mul(c, a[i]) if c else 0)
        return self.trim(out)

    def eval(self, a: Poly, x: int) -> int:
        F = self.F
        acc = 0
        for c in reversed(a):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def compose(self, a: Poly, b: Poly) -> Poly:
        out: Poly = ()
        for c in reversed(a):
            out = self.add(self.mul(out, b), self.const(c))
        return out

    def valuation(self, a: Poly, u: Poly) -> int:
        """Exponent of the irreducible u in a (a nonzero)."""
        if not a:
            raise ValueError("valuation of zero")
        k = 0
        while True:
            qq, rr = self.divmod(a, u)
            if rr:
                return k
            a = qq
            k += 1

    # -- codes for monic polynomials ----------------------------------------

    def code(self, a: Poly) -> int:
        """Integer code of a monic polynomial (leading 1 implicit)."""
        c = 0
        for x in reversed(a[:-1]):
            c = c * self.q + x
        return c

    def from_code(self, code: int, d: int) -> Poly:
        out = []
        for _ in range(d):
            out.append(code % self.q)
            code //= self.q
        return tuple(out) + (1,)

    def monics(self, d: int):
        for code in range(self.q ** d):
            yield self.from_code(code, d)

    # -- irreducibility and factoring ---------------------------------------

    def is_irreducible(self, u: Poly) -> bool:
        d = self.deg(u)
        if d <= 0:
            return False
        if d == 1:
            return True
        u = self.monic(u)
        x = self.x()
        q = self.q

        def frob(k: int) -> Poly:
            v = x
            for _ in range(k):
                v = self.powmod(v, q, u)
            return v

        if frob(d) != self.mod(x, u):
            return False
        for ell in prime_factors(d):
            h = self.sub(frob(d // ell), x)
            if self.gcd(h, u) != (1,):
                return False
        return True

    def irreducibles(self, d: int) -> list[Poly]:
        return _irreducibles(self.F, d)

    def squarefree_decomposition(self, a: Poly) -> list[tuple[Poly, int]]:
        """Yun-style decomposition valid in characteristic p."""
        a = self.monic(a)
        if self.deg(a) <= 0:
            return []
        p = self.p
        out: dict[Poly, int] = {}

        def rec(f: Poly, mult: int) -> None:
            if self.deg(f) <= 0:
                return
            fp = self.deriv(f)
            if not fp:
                rec(self._pth_root(f), mult * p)
                return
            c = self.gcd(f, fp)
            w = self.div_exact(f, c)
            i = 1
            while self.deg(w) > 0:
                y = self.gcd(w, c)
                z = self.div_exact(w, y)
                if self.deg(z) > 0:
                    out[z] = out.get(z, 0) + i * mult
                i += 1
                w = y
                c = self.div_exact(c, y)
            if self.deg(c) > 0:
                rec(self._pth_root(c), mult * p)

        rec(a, 1)
        return sorted(out.items(), key=lambda t: (len(t[0]), t[0]))

    def _pth_root(self, f: Poly) -> Poly:
        F = self.F
        p = self.p
        e = self.q // p  # c^(q/p) is the p-th root in F_q
        out = []
        for i in range(0, len(f), p):
            out.append(F.pow(f[i], e) if f[i] else 0)
        return self.trim(out)

    def distinct_degree(self, a: Poly) -> list[tuple[Poly, int]]:
        """Split a squarefree monic polynomial by factor degree."""
        out = []
        x = self.x()
        h = self.mod(x, a) if self.deg(a) > 1 else x
        k = 0
        f = a
        while self.deg(f) >= 2 * (k + 1):
            k += 1
            h = self.powmod(h, self.q, f)
            g = self.gcd(self.sub(h, x), f)
            if self.deg(g) > 0:
                out.append((g, k))
                f = self.div_exact(f, g)
                h = self.mod(h, f)
        if self.deg(f) > 0:
            out.append((f, self.deg(f)))
        return out

    def equal_degree(self, a: Poly, k: int, rng: random.Random) -> list[Poly]:
        n = self.deg(a)
        if n == k:
            return [a]
        if k == 1 and self.q ** 1 <= 64:
            roots = [c for c in range(self.q) if self.eval(a, c) == 0]
            return [(self.F.neg(c), 1) for c in roots]
        e = (self.q ** k - 1) // 2
        while True:
            r = self.trim(rng.randrange(self.q) for _ in range(n))
            if self.deg(r) <= 0:
                continue
            g = self.gcd(r, a)
            if 0 < self.deg(g) < n:
                break
            s = self.sub(self.powmod(r, e, a), (1,))
            g = self.gcd(s, a)
            if 0 < self.deg(g) < n:
                break
        return self.equal_degree(g, k, rng) + self.equal_degree(self.div_exact(a, g), k, rng)

    def factor(self, a: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
        """Monic irreducible factors with multiplicity (leading coefficient dropped)."""
        if not a:
            raise ValueError("cannot factor the zero polynomial")
        rng = random.Random(seed)
        out: dict[Poly, int] = {}
        for sq, mult in self.squarefree_decomposition(a):
            if self.deg(sq) <= 3 and self.q <= 64:
                parts = self._factor_small(sq)
            else:
                parts = []
                for g, k in self.distinct_degree(sq):
                    parts.extend(self.equal_degree(g, k, rng))
            for fac in parts:
                out[fac] = out.get(fac, 0) + mult
        return sorted(out.items(), key=lambda t: (len(t[0]), t[0]))

    def _factor_small(self, a: Poly) -> list[Poly]:
        """Exhaustive root search for squarefree monic a of degree <= 3."""
        F = self.F
        roots = [c for c in range(self.q) if self.eval(a, c) == 0]
        facs = [(F.neg(c), 1) if c else (0, 1) for c in roots]
        rest = a
        for fac in facs:
            rest = self.div_exact(rest, fac)
        if self.deg(rest) > 0:
            facs.append(rest)
        return facs

    # -- quadratic residues -------------------------------------------------

    def jacobi(self, a: Poly, b: Poly) -> int:
        """Jacobi symbol (a/b) for monic b, via quadratic reciprocity."""
        F = self.F
        half = (self.q - 1) // 2
        result = 1
        a = self.mod(a, b)
        while True:
            if self.deg(b) == 0:
                return result
            if not a:
                return 0
            c = a[-1]
            if c != 1:
                if F.quadratic_character(c) == -1 and self.deg(b) % 2:
                    result = -result
                a = self.monic(a)
            if half % 2 and self.deg(a) % 2 and self.deg(b) % 2:
                result = -result
            a, b = self.mod(b, a), a

    def sqrt_mod(self, a: Poly, u: Poly) -> Poly | None:
        """A square root of a in F_q[x]/(u) for irreducible monic u, or None."""
        a = self.mod(a, u)
        if not a:
            return ()
        if self.jacobi(a, u) != 1:
            return None
        d = self.deg(u)
        Q = self.q ** d
        if Q % 4 == 3:
            return self.powmod(a, (Q + 1) // 4, u)
        s, t = 0, Q - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self._nonresidue(u)
        M = s
        c = self.powmod(z, t, u)
        tt = self.powmod(a, t, u)
        R = self.powmod(a, (t + 1) // 2, u)
        one = (1,)
        while tt != one:
            i, t2 = 0, tt
            while t2 != one:
                t2 = self.mulmod(t2, t2, u)
                i += 1
            b = c
            for _ in range(M - i - 1):
                b = self.mulmod(b, b, u)
            M = i
            c = self.mulmod(b, b, u)
            tt = self.mulmod(tt, c, u)
            R = self.mulmod(R, b, u)
        return R

    def _nonresidue(self, u: Poly) -> Poly:
        for c in range(1, self.q):
            if self.jacobi((c,), u) == -1:
                return (c,)
        for k in range(1, self.deg(u)):
            for cand in self.monics(k):
                if self.jacobi(cand, u) == -1:
                    return cand
        raise ArithmeticError("no non-residue found")  # pragma: no cover


@lru_cache(maxsize=None)
def _irreducibles(F: FiniteField, d: int) -> list[Poly]:
    """All monic irreducible polynomials of degree d, in code order.

    A sieve: every reducible monic of degree d is w*h with w irreducible of
    degree e <= d/2 and h monic of degree d-e; products are formed for all
    h at once with numpy.
    """
    R = PolyRing(F)
    q = F.q
    if d == 1:
        return [R.trim((F.neg(c), 1)) if c else (0, 1) for c in range(q)]
    if q ** d > SIEVE_LIMIT:
        raise ValueError(f"degree {d} irreducibles over F_{q} exceed the sieve limit")
    add_t, mul_t = _numpy_tables(F)
    marked = np.zeros(q ** d, dtype=bool)
    weights = q ** np.arange(d, dtype=np.int64)
    for e in range(1, d // 2 + 1):
        k = d - e
        hcodes = np.arange(q ** k, dtype=np.int64)
        hdig = np.empty((q ** k, k + 1), dtype=np.int64)
        rem = hcodes.copy()
        for i in range(k):
            hdig[:, i] = rem % q
            rem //= q
        hdig[:, k] = 1
        for w in _irreducibles(F, e):
            prod = np.zeros((q ** k, d + 1), dtype=np.int64)
            for i, wi in enumerate(w):
                if wi:
                    term = mul_t[wi][hdig]
                    prod[:, i:i + k + 1] = add_t[prod[:, i:i + k + 1], term]
            marked[prod[:, :d] @ weights] = True
    codes = np.flatnonzero(~marked)
    return [R.from_code(int(c), d) for c in codes]


@lru_cache(maxsize=None)
def _numpy_tables(F: FiniteField):
    q = F.q
    if F.r == 1:
        a = np.arange(q)
        return (a[:, None] + a[None, :]) % q, (a[:, None] * a[None, :]) % q
    add_t = np.array([[F.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    mul_t = np.array([[F.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)
    return add_t, mul_t


def count_irreducibles(q: int, d: int) -> int:
    """Gauss's formula for the number of monic irreducibles of degree d."""
    return sum(mobius(d // e) * q ** e for e in divisors(d)) // d


def nullspace(F: FiniteField, rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : M v = 0} for a matrix over F given as rows of codes."""
    M = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(M)):
            if M[i][col]:
                piv = i
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][col])
        M[rank] = [F.mul(inv, v) for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                c = M[i][col]
                row = M[rank]
                M[i] = [F.sub(a, F.mul(c, b)) for a, b in zip(M[i], row)]
        pivots.append(col)
        rank += 1
        if rank == len(M):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(M[i][fc])
        basis.append(v)
    return basis


def solve_affine(F: FiniteField, rows: list[list[int]], rhs: list[int], ncols: int):
    """One solution of M v = rhs plus a nullspace basis, or None if inconsistent."""
    aug = [list(r) + [F.neg(b)] for r, b in zip(rows, rhs)]
    basis = nullspace(F, aug, ncols + 1)
    particular = None
    homog = []
    for v in basis:
        if v[ncols]:
            if particular is None:
                inv = F.inv(v[ncols])
                particular = [F.mul(inv, c) for c in v[:ncols]]
        else:
            homog.append(v[:ncols])
    if particular is None:
        return None
    # homogeneous solutions hidden as differences of affine ones
    for v in basis:
        if v[ncols]:
            inv = F.inv(v[ncols])
            w = [F.sub(F.mul(inv, c), s) for c, s in zip(v[:ncols], particular)]
            if any(w):
                homog.append(w)
    return particular, homog
