"""Unit groups (O/P^n)^* and (O/D)^* with discrete logarithms.

At a place P with residue field K (|K| = p^r) the group of truncated unit
series K[[t]]^*/(1 + t^n) is generated by

* ``g0``       a primitive element of K^* (order |K| - 1), and
* ``(j, i)``   1 + e_i t^j for 1 <= j < n and e_i the i-th F_p-basis vector.

Relations: (|K|-1) g0 = 0 and p (j, i) = dlog(1 + e_i^p t^(jp)), the right
side being empty once jp >= n.  Discrete logs peel digits level by level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import series as S
from .curve import Curve, Place
from .functions import Divisor


class NotAUnit(ValueError):
    """The function vanishes or has a pole at a place of the modulus."""


@dataclass
class LocalUnitGroup:
    curve: Curve
    place: Place
    level: int
    K: object = field(init=False, repr=False)
    names: list = field(init=False)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        self.K = self.curve.frame(self.place, self.level).K
        r = self.K.r
        self.names = ["g0"] + [(j, i) for j in range(1, self.level) for i in range(r)]
        self._index = {nm: k for k, nm in enumerate(self.names)}

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def order(self) -> int:
        Q = self.K.q
        return (Q - 1) * Q ** (self.level - 1)

    def basis_element(self, i: int) -> int:
        return self.K.p ** i

    def generator_series(self, name) -> list[int]:
        n = self.level
        if name == "g0":
            return [self.K.gen] + [0] * (n - 1)
        j, i = name
        s = [1] + [0] * (n - 1)
        s[j] = self.basis_element(i)
        return s

    def relations(self) -> list[list[int]]:
        K, n, p = self.K, self.level, self.K.p
        rows = []
        row = [0] * self.ngens
        row[0] = K.q - 1
        rows.append(row)
        for name in self.names[1:]:
            j, i = name
            row = [0] * self.ngens
            row[self._index[name]] = p
            if j * p < n:
                s = [1] + [0] * (n - 1)
                s[j * p] = K.pow(self.basis_element(i), p)
                for k, c in enumerate(self.dlog(s)):
                    row[k] -= c
            rows.append(row)
        return rows

    def dlog(self, u: list[int]) -> list[int]:
        """Exponent vector of the unit series u (length >= level)."""
        K, n = self.K, self.level
        u = list(u[:n]) + [0] * (n - len(u[:n]))
        if u[0] == 0:
            raise NotAUnit("series has zero constant term")
        out = [0] * self.ngens
        out[0] = K.log(u[0])
        u = S.scale(K, u, K.inv(u[0]), n)
        for j in range(1, n):
            c = u[j]
            if not c:
                continue
            digits = K.digits(c)
            peel = [1] + [0] * (n - 1)
            for i, d in enumerate(digits):
                if d:
                    out[self._index[(j, i)]] = d
                    g = self.generator_series((j, i))
                    peel = S.mul(K, peel, S.power(K, g, d, n), n)
            u = S.mul(K, u, S.inv(K, peel, n), n)
            assert u[j] == 0
        return out

    def series_of(self, vec) -> list[int]:
        K, n = self.K, self.level
        out = [1] + [0] * (n - 1)
        for name, e in zip(self.names, vec):
            if e:
                out = S.mul(K, out, S.power(K, self.generator_series(name), e, n), n)
        return out

    def unit_series(self, a, b) -> list[int]:
        """Expansion of a + y*b to precision ``level`` (must be a unit at P)."""
        fr = self.curve.frame(self.place, self.level)
        K, n = fr.K, self.level
        A = S.horner(K, [fr.emb[c] for c in a], fr.X, n)
        B = S.horner(K, [fr.emb[c] for c in b], fr.X, n) if b else [0] * n
        s = S.add(K, A, S.mul(K, fr.Y, B, n), n)
        if s[0] == 0:
            raise NotAUnit(f"function is not a unit at {self.place.descriptor()}")
        return s


class UnitGroup:
    """(O/D)^* as the product of its local factors, columns concatenated."""

    def __init__(self, curve: Curve, D: Divisor):
        self.curve = curve
        self.D = D
        self.locals: list[LocalUnitGroup] = []
        for P, n in D.items():
            if n < 0:
                raise ValueError("modulus must be effective")
            if P.kind == "inf":
                raise ValueError("moduli supported at infinity are not supported")
            self.locals.append(LocalUnitGroup(curve, P, n))
        self.offsets = []
        k = 0
        for L in self.locals:
            self.offsets.append(k)
            k += L.ngens
        self.ngens = k
        self.columns = [(L.place, nm) for L in self.locals for nm in L.names]

    @property
    def order(self) -> int:
        out = 1
        for L in self.locals:
            out *= L.order
        return out

    def local(self, P: Place) -> LocalUnitGroup:
        for L in self.locals:
            if L.place == P:
                return L
        raise KeyError(P)

    def relations(self) -> list[list[int]]:
        rows = []
        for L, off in zip(self.locals, self.offsets):
            for r in L.relations():
                row = [0] * self.ngens
                row[off:off + L.ngens] = r
                rows.append(row)
        return rows

    def dlog_function(self, a, b) -> list[int]:
        out = []
        for L in self.locals:
            out.extend(L.dlog(L.unit_series(a, b)))
        return out

    def dlog_series(self, targets: dict) -> list[int]:
        out = []
        for L in self.locals:
            out.extend(L.dlog(targets[L.place]))
        return out

    def dlog_constant(self, c: int) -> list[int]:
        out = []
        for L in self.locals:
            fr = self.curve.frame(L.place, L.level)
            out.extend(L.dlog([fr.emb[c]] + [0] * (L.level - 1)))
        return out
