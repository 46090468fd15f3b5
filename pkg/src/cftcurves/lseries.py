"""Dirichlet characters of ray class groups and their L-series.

A character of order n is stored as an exponent vector on the canonical
coordinates of its group: chi(x) = zeta_n^(sum e_i x_i).  L-series are
computed two ways, as an Euler product over places and through the weighted
point-count formula, and compared exactly in Z[zeta_n].
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb, gcd

from .classgroup import RayClassGroup, pullback_vector, ray_class_group
from .curve import INFINITY, Curve, Place
from .cyclotomic import CyclotomicElem
from .fields import build_extension
from .functions import Divisor
from .poly import divisors, mobius
from .snf import enumerate_homs
from .zeta import LPoly, counts_from_zeta, exp_log_series, zeta_l_polynomial


class TheoryViolation(ArithmeticError):
    """A computed object contradicts a theorem (signals a bug, never bad input)."""


@dataclass(frozen=True, eq=False)
class Character:
    group: RayClassGroup
    order: int
    images: tuple[int, ...]

    def __post_init__(self):
        n = self.order
        object.__setattr__(self, "images", tuple(e % n for e in self.images))
        for e, d in zip(self.images, self.group.invariants):
            if d and (e * d) % n:
                raise ValueError("images do not respect the invariant factors")

    # -- evaluation -------------------------------------------------------------

    def exponent(self, x) -> int:
        return sum(e * c for e, c in zip(self.images, x)) % self.order

    def value(self, x) -> CyclotomicElem:
        return CyclotomicElem.root(self.order, self.exponent(x))

    def at_place(self, P: Place) -> int:
        """Exponent of chi(Frob_P)."""
        return self.exponent(self.group.frobenius(P))

    # -- structure --------------------------------------------------------------

    @property
    def curve(self) -> Curve:
        return self.group.curve

    def is_trivial(self) -> bool:
        return not any(self.images)

    @property
    def exact_order(self) -> int:
        g = self.order
        for e in self.images:
            g = gcd(g, e)
        return self.order // g

    def __mul__(self, other: Character) -> Character:
        if other.group is not self.group or other.order != self.order:
            raise ValueError("characters live on different groups")
        return Character(self.group, self.order, tuple(a + b for a, b in zip(self.images, other.images)))

    def __pow__(self, k: int) -> Character:
        return Character(self.group, self.order, tuple(k * e for e in self.images))

    def conjugate(self) -> Character:
        return self ** -1

    def key(self) -> tuple:
        return (self.group.D, self.order, self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and self.group is other.group and \
            self.order == other.order and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.key())

    @cached_property
    def conductor(self) -> Divisor:
        return conductor(self)

    def describe(self) -> dict:
        return {
            "modulus": self.group.D.label(),
            "order": self.order,
            "images": list(self.images),
        }


def characters(G: RayClassGroup, n: int, trivial_on=(), exact: bool = False) -> list[Character]:
    """All chi: G -> mu_n killing the classes in ``trivial_on``."""
    out = []
    for h in enumerate_homs(G.group, n):
        chi = Character(G, n, h)
        if any(chi.exponent(x) for x in trivial_on):
            continue
        if exact and chi.exact_order != n:
            continue
        out.append(chi)
    return out


def dedupe_conjugates(chars: list[Character]) -> list[Character]:
    """Keep one character per kernel (chi ~ chi^k for k prime to the order)."""
    seen, out = set(), []
    for chi in chars:
        n = chi.order
        orbit = {(chi ** k).images for k in range(1, n) if gcd(k, n) == 1}
        if orbit & seen:
            continue
        seen.add(chi.images)
        out.append(chi)
    return out


# ---------------------------------------------------------------------------
# conductors and primitive characters


def _kills_units(chi: Character, P: Place, m: int) -> bool:
    """chi trivial on units at P congruent to 1 mod P^m (all units when m = 0)."""
    G = chi.group
    for name in G.units.local(P).names:
        if name == "g0":
            if m > 0:
                continue
        elif name[0] < m:
            continue
        vec = [0] * G.ncols
        vec[G.unit_column(P, name)] = 1
        if chi.exponent(G.project(vec)):
            return False
    return True


def conductor(chi: Character) -> Divisor:
    out = {}
    for P, n in chi.group.D.items():
        m = 0
        while m < n and not _kills_units(chi, P, m):
            m += 1
        if m:
            out[P] = m
    return Divisor(out)


_PRIMITIVE_CACHE: dict = {}


def primitive(chi: Character) -> Character:
    """The character of Cl_f (f the conductor) inducing chi."""
    G = chi.group
    f = chi.conductor
    if f == G.D:
        return chi
    key = (id(G), chi.order, chi.images)
    hit = _PRIMITIVE_CACHE.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    F = ray_class_group(G.curve, f, orientation=G.orientation)
    col_exp = [chi.exponent(G.project(pullback_vector(G, F, c))) for c in range(F.ncols)]
    images = tuple(sum(a * e for a, e in zip(lift, col_exp)) for lift in F.group.lift_rows)
    out = Character(F, chi.order, images)
    _PRIMITIVE_CACHE[key] = (G, out)
    return out


# ---------------------------------------------------------------------------
# splitting into geometric and constant parts


def degree_character(G: RayClassGroup, n: int, w: int) -> Character:
    """x -> zeta_n^(w deg x)."""
    return Character(G, n, tuple(w * d for d in G.gen_degrees))


def split_character(chi: Character) -> tuple[Character, int]:
    """(chi_g, w) with chi = chi_g * (zeta^w)^deg and chi_g trivial on the section."""
    w = chi.exponent(chi.group.section)
    chi_c = degree_character(chi.group, chi.order, w)
    return chi * chi_c.conjugate(), w


def is_constant(chi: Character) -> bool:
    return split_character(chi)[0].is_trivial()


# ---------------------------------------------------------------------------
# L-series


def _place_profile(chi: Character, N: int) -> dict[int, Counter]:
    """For each degree d <= N: multiplicities of chi(Frob_P) exponents over P not dividing f."""
    G = chi.group
    bad = set(G.D.support)
    prof = {}
    for d in range(1, N + 1):
        cnt = Counter()
        for P in G.curve.places_of_degree(d):
            if P not in bad:
                cnt[chi.at_place(P)] += 1
        prof[d] = cnt
    return prof


def _cyc_series_mul(a, b, N):
    out = [a[0] * 0 for _ in range(N + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(N + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def l_series_euler(chi: Character, N: int) -> list[CyclotomicElem]:
    """Coefficients of prod_P (1 - chi(P) T^deg P)^-1 up to T^N over P prime to the conductor."""
    chi = primitive(chi)
    n = chi.order
    out = [CyclotomicElem.integer(1, n)] + [CyclotomicElem(n) for _ in range(N)]
    for d, cnt in _place_profile(chi, N).items():
        for e, c in sorted(cnt.items()):
            # (1 - z T^d)^(-c) = sum_k C(c+k-1, k) z^k T^(dk)
            factor = [CyclotomicElem(n) for _ in range(N + 1)]
            for k in range(N // d + 1):
                factor[d * k] = CyclotomicElem.root(n, e * k) * comb(c + k - 1, k)
            out = _cyc_series_mul(out, factor, N)
    return out


def point_counts_by_value(chi: Character, m: int, brute_force: bool = False) -> dict[int, int]:
    """N(X, m, zeta^e, chi) for each exponent e: points over F_{q^m} on places
    coprime to the conductor with chi(Frob) = zeta^e."""
    if brute_force:
        return _point_counts_brute(chi, m)
    bad = set(chi.group.D.support)
    out = Counter()
    for d in divisors(m):
        for P in chi.curve.places_of_degree(d):
            if P not in bad:
                out[chi.at_place(P)] += d
    return dict(out)


def _point_counts_brute(chi: Character, m: int) -> dict[int, int]:
    bad = set(chi.group.D.support)
    out = Counter()
    for P, k in points_by_place(chi.curve, m).items():
        if P not in bad:
            out[chi.at_place(P)] += k
    return dict(out)


def points_by_place(curve: Curve, m: int) -> Counter:
    """Walk X(F_{q^m}) point by point and record the place under each point."""
    cache = curve.__dict__.setdefault("_points_by_place", {})
    if m in cache:
        return cache[m]
    F, R = curve.F, curve.R
    ext = build_extension(F, m)
    K, emb = ext.field, ext.embed
    q = F.q
    inv_emb = {v: k for k, v in enumerate(emb)}
    fe = [emb[c] for c in curve.f]

    def ev(coeffs, z):
        acc = 0
        for c in reversed(coeffs):
            acc = K.add(K.mul(acc, z), c)
        return acc

    known: dict[int, tuple] = {}

    def minpoly(z):
        hit = known.get(z)
        if hit is not None:
            return hit
        conj = [z]
        w = K.pow(z, q)
        while w != z:
            conj.append(w)
            w = K.pow(w, q)
        poly = [1]
        for r in conj:  # multiply by (T - r)
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = K.add(nxt[i + 1], c)
                nxt[i] = K.sub(nxt[i], K.mul(c, r))
            poly = nxt
        u = R.trim([inv_emb[c] for c in poly])
        for r in conj:
            known[r] = u
        return u

    out = Counter({INFINITY: 1})
    over: dict = {}
    for x in range(K.q):
        fx = ev(fe, x)
        y = K.sqrt(fx)
        if y is None:
            continue
        u = minpoly(x)
        places = over.get(u)
        if places is None:
            places = over[u] = curve.places_over(u)
        if fx == 0:
            out[places[0]] += 1
            continue
        for yy in (y, K.neg(y)):
            if places[0].kind == "inert":
                P = places[0]
            else:
                P = next(Q for Q in places if ev([emb[c] for c in Q.v], x) == yy)
            out[P] += 1
    cache[m] = out
    return out


def l_series_weighted(chi: Character, N: int, brute_force_upto: int = 0) -> list[CyclotomicElem]:
    """exp( sum_n T^n/n sum_{d|n} sum_zeta zeta^(n/d) sum_{m|d} mu(d/m) N(X,m,zeta,chi) ).

    Counts for m <= ``brute_force_upto`` come from walking points directly.
    """
    chi = primitive(chi)
    n0 = chi.order
    counts = {m: point_counts_by_value(chi, m, brute_force=m <= brute_force_upto)
              for m in range(1, N + 1)}
    s = []
    for nn in range(1, N + 1):
        acc = CyclotomicElem(n0)
        for d in divisors(nn):
            for e in range(n0):
                inner = sum(mobius(d // m) * counts[m].get(e, 0) for m in divisors(d))
                if inner:
                    acc = acc + CyclotomicElem.root(n0, e * (nn // d)) * inner
        s.append(acc)
    return exp_log_series(s, N)


def log_coefficients(chi: Character, N: int) -> list[CyclotomicElem]:
    """s_m = sum_{d|m} d sum_{deg P = d} chi(P)^(m/d), m = 1..N."""
    chi = primitive(chi)
    n0 = chi.order
    prof = _place_profile(chi, N)
    out = []
    for m in range(1, N + 1):
        acc = CyclotomicElem(n0)
        for d in divisors(m):
            for e, c in prof[d].items():
                acc = acc + CyclotomicElem.root(n0, e * (m // d)) * (d * c)
        out.append(acc)
    return out


def predicted_degree(chi: Character) -> int:
    g = chi.curve.genus
    return 2 * g - 2 + chi.conductor.degree


def _twist(coeffs, n: int, w: int) -> list[CyclotomicElem]:
    return [c.embed(n) * CyclotomicElem.root(n, w * i) for i, c in enumerate(coeffs)]


def l_polynomial(chi: Character, margin: int = 2) -> LPoly:
    """L(chi, T) as a polynomial (constant characters: numerator, poles recorded)."""
    chi = primitive(chi)
    n = chi.order
    chi_g, w = split_character(chi)
    if chi_g.is_trivial():
        P = zeta_l_polynomial(chi.curve)
        coeffs = _twist(P.coeffs, n, w)
        omega = CyclotomicElem.root(n, w)
        return LPoly(coeffs, n, chi.curve.q, omega=omega)
    deg = predicted_degree(chi)
    ser = l_series_euler(chi, deg + margin)
    for c in ser[deg + 1:]:
        if not c.is_zero():
            raise TheoryViolation(
                f"L-series of a geometric character on {chi.group.D.label()} does not "
                f"terminate at degree {deg}")
    if ser[deg].is_zero():
        raise TheoryViolation(f"L-polynomial has degree below {deg}")
    return LPoly(ser[:deg + 1], n, chi.curve.q)


def rational_series(L: LPoly, N: int) -> list[CyclotomicElem]:
    """Power series of L (dividing out (1 - wT)(1 - q w T) when poles are present)."""
    n = L.order
    out = [c for c in L.coeffs[:N + 1]] + [CyclotomicElem(n) for _ in range(N + 1 - len(L.coeffs))]
    if L.omega is None:
        return out
    w = L.omega.embed(n)
    for r in (w, w * L.q):
        # divide by (1 - r T): running sum
        acc = []
        prev = CyclotomicElem(n)
        for c in out:
            prev = c + prev * r
            acc.append(prev)
        out = acc
    return out


def constant_twist_check(chi: Character, N: int) -> bool:
    """L(chi, T) = L(chi_g, w T) coefficientwise up to T^N."""
    chi = primitive(chi)
    chi_g, w = split_character(chi)
    lhs = l_series_euler(chi, N)
    rhs = _twist(l_series_euler(chi_g, N), chi.order, w)
    return all(a == b for a, b in zip(lhs, rhs))


def has_poles_off_one(L: LPoly) -> bool:
    """Rational L of a constant character has poles, none at T = 1."""
    if L.omega is None:
        return False
    w = L.omega
    return not (w - 1).is_zero() and not (w * L.q - 1).is_zero()


# ---------------------------------------------------------------------------
# covers


@dataclass
class CoverData:
    character: Character
    P_Y: LPoly
    counts: list[int]
    conductors: list[Divisor]

    @property
    def N1(self) -> int:
        return self.counts[0]

    def to_record(self) -> dict:
        return {
            "character": self.character.describe(),
            "conductors": [f.label() for f in self.conductors],
            "P_Y": self.P_Y.to_record(),
            "genus": self.P_Y.degree // 2,
            "point_counts": self.counts,
            "weil_ok": self.P_Y.weil_ok(),
        }


def cover_zeta(chi: Character, npoints: int = 1) -> CoverData:
    """Zeta data of the cyclic cover cut out by ker(chi)."""
    n = chi.exact_order
    powers = [chi ** (k * (chi.order // n)) for k in range(n)]
    num = LPoly.from_ints([1], chi.curve.q)
    poles = []
    conds = []
    for psi in powers:
        L = l_polynomial(psi)
        conds.append(primitive(psi).group.D)
        num = num * LPoly(L.coeffs, L.order, L.q)
        if L.omega is not None:
            poles.append(L.omega)
    num = num.reduce_order()
    if not num.is_integral():
        raise TheoryViolation("cover zeta numerator is not integral")
    q = chi.curve.q
    # N_m = sum over poles w of w^m (1 + q^m) - sum alpha^m; counts_from_zeta
    # already includes the pole pair of the trivial character
    base = counts_from_zeta(num, q, npoints)
    counts = []
    for m in range(1, npoints + 1):
        pole_sum = CyclotomicElem(chi.order)
        for w in poles:
            pole_sum = pole_sum + (w.embed(chi.order) ** m) * (1 + q ** m)
        if not pole_sum.is_integer():
            raise TheoryViolation("pole contribution is not rational")
        counts.append(base[m - 1] - (q ** m + 1) + pole_sum.to_int())
    return CoverData(chi, num, counts, conds)


def cover_points_direct(chi: Character) -> int:
    """N_1 of a cyclic cover of prime degree, read off the degree-one places:
    split places contribute the degree, ramified ones a single point."""
    n = chi.exact_order
    f = set(chi.conductor.support)
    total = 0
    for P in chi.curve.places_of_degree(1):
        if P in f:
            total += 1
        elif chi.at_place(P) == 0:
            total += n
    return total


def l_spectrum(curve: Curve, moduli: list[Divisor], n: int, orientation: str = "arithmetic",
               bound: int | None = None, level: int | None = None) -> list[tuple]:
    """Sorted multiset of L-polynomial keys of exact-order-n characters over the moduli."""
    out = []
    for D in moduli:
        G = ray_class_group(curve, D, bound, level, orientation=orientation)
        for chi in characters(G, n, exact=True):
            out.append(l_polynomial(chi).key())
    return sorted(out)
