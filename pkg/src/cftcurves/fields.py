"""Finite fields F_{p^r} (p odd) with elements encoded as small integers.

An element sum_i c_i t^i of F_p[t]/(m(t)) is encoded as the integer
sum_i c_i p^i.  Multiplication runs through exp/log tables and addition
in proper extensions through a Zech logarithm table, so every field
operation is a handful of list lookups.  Tables are built eagerly, which
limits the field size to a few hundred thousand elements; that is ample
for residue fields and point counting at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

MAX_TABLE_SIZE = 600_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, r) with q = p^r, raising ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fs = prime_factors(q)
    if len(fs) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, r = fs[0], 0
    while q > 1:
        q //= p
        r += 1
    return p, r


# -- raw polynomial helpers over F_p (digit lists, low degree first) -------

def _pmulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    r = len(m) - 1
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for k in range(len(prod) - 1, r - 1, -1):
        c = prod[k] % p
        if c:
            for j in range(r):
                prod[k - r + j] -= c * m[j]
    return [c % p for c in prod[:r]]


def _ppowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    r = len(m) - 1
    result = [1] + [0] * (r - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pmulmod(base, base, m, p)
    return result


def _is_irreducible_fp(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p given by digits."""
    r = len(m) - 1
    if r == 1:
        return True
    x = [0, 1] + [0] * (r - 2)

    def frob_iter(k: int) -> list[int]:
        v = x
        for _ in range(k):
            v = _ppowmod(v, p, m, p)
        return v

    if frob_iter(r) != x:
        return False
    for ell in prime_factors(r):
        h = frob_iter(r // ell)
        g = [(hi - xi) % p for hi, xi in zip(h, x)]
        if _gcd_fp(g, list(m), p) != [1]:
            return False
    return True


def _gcd_fp(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(v):
        v = list(v)
        while v and v[-1] % p == 0:
            v.pop()
        return [c % p for c in v]

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            s = len(a) - len(b)
            for i, bi in enumerate(b):
                a[s + i] = (a[s + i] - c * bi) % p
            a = trim(a)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def lowest_irreducible(p: int, r: int) -> tuple[int, ...]:
    """First monic irreducible of degree r over F_p in code order."""
    for code in range(p ** r):
        digits = [(code // p ** i) % p for i in range(r)] + [1]
        if digits[0] == 0:
            continue
        if _is_irreducible_fp(digits, p):
            return tuple(digits)
    raise ArithmeticError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field with p^r elements.

    ``modulus`` is the monic defining polynomial over F_p as a digit tuple
    (low degree first).  ``gen`` is the primitive element used for the
    log tables (the smallest code that generates the unit group).
    """

    def __init__(self, p: int, r: int = 1, modulus: tuple[int, ...] | None = None):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.r = r
        self.q = p ** r
        if self.q > MAX_TABLE_SIZE:
            raise ValueError(f"field of size {self.q} exceeds table limit")
        if r == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = lowest_irreducible(p, r)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree r")
            if not _is_irreducible_fp(list(modulus), p):
                raise ValueError("modulus is not irreducible")
            self.modulus = modulus
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})" if self.r > 1 else f"GF({self.p})"

    # -- construction -------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.r):
            out.append(a % p)
            a //= p
        return out

    def from_digits(self, ds) -> int:
        code = 0
        for c in reversed(list(ds)):
            code = code * self.p + c % self.p
        return code

    def _build_tables(self) -> None:
        p, r, Q = self.p, self.r, self.q
        n = Q - 1
        m = list(self.modulus)
        if r == 1:
            mul = lambda a, b: [a[0] * b[0] % p]
        else:
            mul = lambda a, b: _pmulmod(a, b, m, p)
        facs = prime_factors(n) if n > 1 else []
        gen = None
        for g in range(1, Q):
            gd = self.digits(g)
            if r == 1:
                ok = all(pow(g, n // ell, p) != 1 for ell in facs)
            else:
                one = [1] + [0] * (r - 1)
                ok = all(_ppowmod(gd, n // ell, m, p) != one for ell in facs)
            if ok:
                gen = g
                break
        assert gen is not None
        self.gen = gen
        exp = [0] * (2 * n)
        log = [-1] * Q
        cur = [1] + [0] * (r - 1)
        gd = self.digits(gen)
        for k in range(n):
            c = self.from_digits(cur)
            exp[k] = c
            log[c] = k
            cur = mul(cur, gd)
        for k in range(n):
            exp[n + k] = exp[k]
        self._exp = exp
        self._log = log
        self._n = n
        self._half = n // 2
        if r > 1:
            zech = [-1] * n
            for k in range(n):
                c = exp[k]
                c1 = c - (c % p) + ((c % p) + 1) % p
                zech[k] = log[c1] if c1 else -1
            self._zech = zech

    # -- arithmetic on codes ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self._n]
        if z < 0:
            return 0
        return self._exp[(la + z) % self._n]

    def neg(self, a: int) -> int:
        if self.r == 1:
            return -a % self.p
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[(self._n - self._log[a]) % self._n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self._n]

    def log(self, a: int) -> int:
        """Discrete logarithm base ``gen``."""
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, k: int) -> int:
        return self._exp[k % self._n]

    def from_int(self, k: int) -> int:
        return k % self.p

    def frobenius(self, a: int, times: int = 1) -> int:
        """a -> a^(p^times)."""
        return self.pow(a, self.p ** times)

    def is_square(self, a: int) -> bool:
        return a == 0 or self._log[a] % 2 == 0

    def sqrt(self, a: int) -> int | None:
        """A square root of a, or None; the root with even-or-smaller log is returned."""
        if a == 0:
            return 0
        la = self._log[a]
        if la % 2:
            return None
        return self._exp[la // 2]

    def quadratic_character(self, a: int) -> int:
        if a == 0:
            return 0
        return 1 if self._log[a] % 2 == 0 else -1

    def elements(self) -> range:
        return range(self.q)

    def order(self, a: int) -> int:
        from math import gcd
        return self._n // gcd(self._n, self._log[a])

    # -- public element wrapper ----------------------------------------------

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.from_digits(value))
        return FieldElem(self, int(value) % self.p if self.r == 1 else int(value))


@dataclass(frozen=True)
class FieldElem:
    """Thin operator-overloading wrapper around an element code."""

    field: FiniteField
    code: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other.code
        return self.field.from_int(int(other))

    def __add__(self, other):
        return FieldElem(self.field, self.field.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.field, self.field.sub(self.code, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElem(self.field, self.field.sub(self._coerce(other), self.code))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.code))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.field, self.field.div(self.code, self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElem(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    @property
    def coords(self) -> list[int]:
        return self.field.digits(self.code)

    def __repr__(self) -> str:
        return f"{self.field!r}({self.code})"


class Extension:
    """F_{q^m} together with a verified embedding of its base field F_q.

    ``field`` is built directly over F_p; ``embed[c]`` is the image of the
    base-field element with code c.
    """

    def __init__(self, base: FiniteField, m: int):
        if m < 1:
            raise ValueError("extension degree must be positive")
        self.base = base
        self.m = m
        if m == 1:
            self.field = base
            self.embed = list(range(base.q))
            return
        F = FiniteField(base.p, base.r * m)
        self.field = F
        self.embed = _find_embedding(base, F)

    @property
    def degree(self) -> int:
        return self.m

    def frobenius_q(self, a: int) -> int:
        """a -> a^q where q is the base field size."""
        return self.field.pow(a, self.base.q)

    def lift(self, c: int) -> int:
        return self.embed[c]


def _find_embedding(base: FiniteField, F: FiniteField) -> list[int]:
    if base.r == 1:
        return list(range(base.p))
    # image of the base generator t: a root of the base modulus in F
    mod = base.modulus
    for theta in range(1, F.q):
        acc = 0
        for c in reversed(mod):
            acc = F.add(F.mul(acc, theta), c)
        if acc == 0:
            break
    else:  # pragma: no cover
        raise ArithmeticError("base modulus has no root in extension")
    powers = [1]
    for _ in range(base.r - 1):
        powers.append(F.mul(powers[-1], theta))
    embed = []
    for code in range(base.q):
        acc = 0
        for c, pw in zip(base.digits(code), powers):
            if c:
                acc = F.add(acc, F.mul(c, pw))
        embed.append(acc)
    return embed


@lru_cache(maxsize=None)
def prime_field(p: int) -> FiniteField:
    return FiniteField(p, 1)


@lru_cache(maxsize=None)
def gf(q: int) -> FiniteField:
    p, r = prime_power(q)
    return FiniteField(p, r)


_EXT_CACHE: dict[tuple[int, int], Extension] = {}


def build_extension(base: FiniteField, m: int) -> Extension:
    key = (id(base), m)
    ext = _EXT_CACHE.get(key)
    if ext is None or ext.base is not base:
        ext = Extension(base, m)
        _EXT_CACHE[key] = ext
    return ext
