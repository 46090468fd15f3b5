"""Divisors, functions a(x) + y*b(x), Riemann-Roch spaces and congruences."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import series as S
from .curve import INFINITY, Curve, Place
from .fields import prime_field
from .poly import Poly, nullspace


@dataclass(frozen=True)
class CurveFunction:
    """The function a(x) + y*b(x) on ``curve``."""

    curve: Curve = field(compare=False, repr=False)
    a: Poly = ()
    b: Poly = ()

    @classmethod
    def const(cls, curve: Curve, c: int) -> CurveFunction:
        return cls(curve, curve.R.const(c), ())

    @classmethod
    def from_ints(cls, curve: Curve, a, b=()) -> CurveFunction:
        return cls(curve, curve.R.trim(curve._coeff(c) for c in a), curve.R.trim(curve._coeff(c) for c in b))

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __add__(self, other: CurveFunction) -> CurveFunction:
        R = self.curve.R
        return CurveFunction(self.curve, R.add(self.a, other.a), R.add(self.b, other.b))

    def __sub__(self, other: CurveFunction) -> CurveFunction:
        R = self.curve.R
        return CurveFunction(self.curve, R.sub(self.a, other.a), R.sub(self.b, other.b))

    def __neg__(self) -> CurveFunction:
        R = self.curve.R
        return CurveFunction(self.curve, R.neg(self.a), R.neg(self.b))

    def __mul__(self, other) -> CurveFunction:
        R = self.curve.R
        if isinstance(other, int):
            return CurveFunction(self.curve, R.scale(self.a, other), R.scale(self.b, other))
        a = R.add(R.mul(self.a, other.a), R.mul(self.curve.f, R.mul(self.b, other.b)))
        b = R.add(R.mul(self.a, other.b), R.mul(self.b, other.a))
        return CurveFunction(self.curve, a, b)

    def conjugate(self) -> CurveFunction:
        return CurveFunction(self.curve, self.a, self.curve.R.neg(self.b))

    def norm(self) -> Poly:
        return self.curve.norm(self.a, self.b)

    def pole_order(self) -> int:
        return -self.curve.valuation(self.a, self.b, INFINITY)

    def valuation(self, P: Place) -> int:
        return self.curve.valuation(self.a, self.b, P)

    def __repr__(self) -> str:
        from .curve import poly_str
        if not self.b:
            return f"Fn({poly_str(self.a)})"
        return f"Fn({poly_str(self.a)} + y*({poly_str(self.b)}))"


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    __slots__ = ("_items",)

    def __init__(self, mults=None):
        d: dict[Place, int] = {}
        if mults:
            items = mults.items() if isinstance(mults, dict) else mults
            for P, n in items:
                if n:
                    d[P] = d.get(P, 0) + n
        self._items = tuple(sorted(((P, n) for P, n in d.items() if n), key=lambda t: t[0].sort_key()))

    @classmethod
    def of(cls, P: Place, n: int = 1) -> Divisor:
        return cls({P: n})

    def items(self):
        return self._items

    def as_dict(self) -> dict[Place, int]:
        return dict(self._items)

    def __getitem__(self, P: Place) -> int:
        for Q, n in self._items:
            if Q == P:
                return n
        return 0

    @property
    def support(self) -> list[Place]:
        return [P for P, _ in self._items]

    @property
    def degree(self) -> int:
        return sum(n * P.degree for P, n in self._items)

    def is_effective(self) -> bool:
        return all(n >= 0 for _, n in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(list(self._items) + list(other._items))

    def __neg__(self) -> Divisor:
        return Divisor([(P, -n) for P, n in self._items])

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor([(P, k * n) for P, n in self._items])

    __rmul__ = __mul__

    def __le__(self, other: Divisor) -> bool:
        return (other - self).is_effective()

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        if not self._items:
            return "Divisor(0)"
        return "Divisor(" + " + ".join(f"{n}*{P.descriptor()}" for P, n in self._items) + ")"

    def label(self) -> str:
        return " + ".join(f"{n}({P.descriptor()})" if n != 1 else P.descriptor() for P, n in self._items) or "0"

    def to_record(self) -> list:
        return [[P.to_record(), n] for P, n in self._items]

    @classmethod
    def from_record(cls, curve: Curve, rec) -> Divisor:
        if not rec:
            return cls()
        return cls([(curve.place_from_record(p), int(n)) for p, n in rec])


@dataclass
class LocalSeries:
    """Expansion sum c_i t^(valuation+i), i < len(coeffs), in the residue field."""

    place: Place
    valuation: int
    coeffs: list[int]
    K: object = field(repr=False, default=None)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: LocalSeries) -> LocalSeries:
        n = min(self.precision, other.precision)
        return LocalSeries(self.place, self.valuation + other.valuation,
                           S.mul(self.K, self.coeffs, other.coeffs, n), self.K)


def local_expand(curve: Curve, P: Place, phi: CurveFunction, n: int, laurent: bool = False) -> LocalSeries:
    if phi.is_zero():
        raise ValueError("cannot expand the zero function")
    v = curve.valuation(phi.a, phi.b, P)
    if v < 0 and not laurent:
        raise ValueError(f"function has a pole of order {-v} at {P.descriptor()}")
    v, coeffs = curve.expand(phi.a, phi.b, P, n)
    return LocalSeries(P, v, coeffs, curve.frame(P).K)


def riemann_roch_basis(curve: Curve, n: int) -> list[CurveFunction]:
    """Basis of L(n*inf), ordered by pole order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    g = curve.genus
    out = []
    for k in range(n + 1):
        if k % 2 == 0:
            out.append(CurveFunction(curve, (0,) * (k // 2) + (1,), ()))
        elif k >= 2 * g + 1:
            out.append(CurveFunction(curve, (), (0,) * ((k - 2 * g - 1) // 2) + (1,)))
    return out


def rr_dimension(curve: Curve, n: int) -> int:
    return len(riemann_roch_basis(curve, n))


def principal_divisor(curve: Curve, phi: CurveFunction, known: tuple[Poly, ...] = ()) -> Divisor:
    """Divisor of phi.  ``known`` lists irreducible factors of the norm to strip first."""
    if phi.is_zero():
        raise ValueError("principal divisor of zero")
    R = curve.R
    N = phi.norm()
    mults: dict[Place, int] = {}
    factors: list[Poly] = []
    for u in known:
        k = 0
        while True:
            qq, rr = R.divmod(N, u)
            if rr:
                break
            N = qq
            k += 1
        if k:
            factors.append(u)
    if R.deg(N) > 0:
        factors.extend(u for u, _ in R.factor(N))
    for u in factors:
        for P in curve.places_over(u):
            v = curve.valuation(phi.a, phi.b, P)
            if v:
                mults[P] = v
    vinf = curve.valuation(phi.a, phi.b, INFINITY)
    if vinf:
        mults[INFINITY] = vinf
    D = Divisor(mults)
    if D.degree != 0:  # pragma: no cover
        raise ArithmeticError(f"principal divisor of {phi} has degree {D.degree}")
    return D


def is_congruent_one(curve: Curve, phi: CurveFunction, D: Divisor) -> bool:
    if not D.is_effective():
        raise ValueError("modulus must be effective")
    if phi.is_zero():
        return False
    diff = phi - CurveFunction.const(curve, 1)
    if diff.is_zero():
        return True
    for P, n in D.items():
        if curve.valuation(diff.a, diff.b, P) < n:
            return False
    return True


def combine(curve: Curve, basis: list[CurveFunction], coeffs) -> CurveFunction:
    R = curve.R
    a: Poly = ()
    b: Poly = ()
    for c, e in zip(coeffs, basis):
        if c:
            a = R.add(a, R.scale(e.a, c))
            b = R.add(b, R.scale(e.b, c))
    return CurveFunction(curve, a, b)


def _fp_columns(curve: Curve, basis: list[CurveFunction], conditions):
    """F_p-linear matrix of the maps phi -> (expansion at P to precision n).

    Unknowns are the F_p-coordinates of the F_q-coefficients of phi.
    Returns (matrix rows, per-condition row offsets).
    """
    F = curve.F
    p, r = F.p, F.r
    cols = []
    for e in basis:
        for i in range(r):
            c = p ** i  # F_p-basis element of F_q
            a = curve.R.scale(e.a, c)
            b = curve.R.scale(e.b, c)
            col = []
            for P, n in conditions:
                fr = curve.frame(P, n)
                K = fr.K
                if not a and not b:
                    ser = [0] * n
                else:
                    A = S.horner(K, [fr.emb[x] for x in a], fr.X, n)
                    B = S.horner(K, [fr.emb[x] for x in b], fr.X, n)
                    ser = S.add(K, A, S.mul(K, fr.Y, B, n), n)
                for x in ser:
                    col.extend(K.digits(x))
            cols.append(col)
    nrows = len(cols[0]) if cols else 0
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def solve_congruences(curve: Curve, targets: dict[Place, list[int]], n: int):
    """All phi in L(n*inf) with prescribed expansions at affine places.

    ``targets[P]`` is a list of residue-field codes (the first len(...)
    coefficients of phi at P).  Returns (particular, homogeneous basis) as
    CurveFunctions, or None when no solution exists at this level.
    """
    basis = riemann_roch_basis(curve, n)
    conds = [(P, len(t)) for P, t in targets.items()]
    for P, _ in conds:
        if P.kind == "inf":
            raise ValueError("congruence conditions at infinity are not supported")
    Fp = prime_field(curve.p)
    rows = _fp_columns(curve, basis, conds)
    rhs = []
    for P, t in targets.items():
        K = curve.frame(P, len(t)).K
        for x in t:
            rhs.extend(K.digits(x))
    ncols = len(basis) * curve.F.r
    aug = [row + [Fp.neg(c)] for row, c in zip(rows, rhs)]
    null = nullspace(Fp, aug, ncols + 1)
    part = None
    homog = []
    for v in null:
        if v[ncols] and part is None:
            inv = Fp.inv(v[ncols])
            part = [Fp.mul(inv, c) for c in v[:ncols]]
    if part is None:
        return None
    for v in null:
        if v[ncols]:
            inv = Fp.inv(v[ncols])
            w = [Fp.sub(Fp.mul(inv, c), s) for c, s in zip(v[:ncols], part)]
        else:
            w = v[:ncols]
        if any(w):
            homog.append(w)

    def to_fn(vec):
        F = curve.F
        r = F.r
        coeffs = [F.from_digits(vec[k * r:(k + 1) * r]) for k in range(len(basis))]
        return combine(curve, basis, coeffs)

    return to_fn(part), [to_fn(w) for w in homog]


def functions_vanishing_at(curve: Curve, P: Place, n: int) -> list[CurveFunction]:
    """F_q-basis of {phi in L(n*inf) : phi(P) = 0} for an affine place P."""
    R = curve.R
    basis = riemann_roch_basis(curve, n)
    u = P.u
    if P.kind == "inert":
        # reduction is a -> a mod u, y -> beta; use coordinates of a mod u and b mod u
        vecs = [(R.mod(e.a, u), R.mod(e.b, u)) for e in basis]
    elif P.kind == "ram":
        vecs = [(R.mod(e.a, u), ()) for e in basis]
    else:
        vecs = [(R.mod(R.add(e.a, R.mul(P.v, e.b)), u), ()) for e in basis]
    d = R.deg(u)
    rows = []
    for part in range(2):
        for i in range(d):
            row = [(vec[part][i] if i < len(vec[part]) else 0) for vec in vecs]
            if any(row):
                rows.append(row)
    null = nullspace(curve.F, rows, len(basis))
    return [combine(curve, basis, v) for v in null]


def enumerate_projective(F, basis_vectors: list, limit: int | None = None):
    """Nonzero F-combinations of the given vectors, one per scalar class."""
    k = len(basis_vectors)
    count = 0
    for lead in range(k):
        for rest in itertools.product(range(F.q), repeat=k - lead - 1):
            coeffs = [0] * lead + [1] + list(rest)
            yield coeffs
            count += 1
            if limit is not None and count >= limit:
                return
