"""Imaginary hyperelliptic curves y^2 = f(x) over F_q and their places."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import series as S
from .fields import FiniteField, build_extension, gf, prime_power
from .poly import Poly, PolyRing, divisors, mobius


class CurveError(ValueError):
    """Invalid curve data."""


@dataclass(frozen=True)
class Place:
    """A closed point.

    ``kind`` is one of ``inf``, ``split``, ``inert``, ``ram``.  Affine places
    carry the monic irreducible ``u``; split places also carry the branch
    polynomial ``v`` (v^2 = f mod u) and ``sign`` (+1 for the canonical
    branch, -1 for its negative).
    """

    kind: str
    u: Poly = ()
    v: Poly = ()
    sign: int = 0

    @property
    def degree(self) -> int:
        if self.kind == "inf":
            return 1
        d = len(self.u) - 1
        return 2 * d if self.kind == "inert" else d

    @property
    def is_infinite(self) -> bool:
        return self.kind == "inf"

    def sort_key(self):
        order = {"inf": 0, "ram": 1, "split": 2, "inert": 3}[self.kind]
        return (self.degree, order, len(self.u), tuple(reversed(self.u)), -self.sign)

    def __lt__(self, other: Place) -> bool:
        return self.sort_key() < other.sort_key()

    def descriptor(self) -> str:
        if self.kind == "inf":
            return "inf"
        tag = {"split": "+" if self.sign > 0 else "-", "inert": "inert", "ram": "ram"}[self.kind]
        return f"{poly_str(self.u)}:{tag}"

    def to_record(self):
        if self.kind == "inf":
            return "inf"
        branch = {"inert": "inert", "ram": "ramified"}.get(self.kind)
        if branch is None:
            branch = "plus" if self.sign > 0 else "minus"
        return {"u": list(self.u), "branch": branch}

    def __repr__(self) -> str:
        return f"Place({self.descriptor()})"


INFINITY = Place("inf")


def poly_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}*{mon}")
    return "+".join(terms)


@dataclass
class LocalFrame:
    """Residue field data and coordinate expansions at one place.

    ``K`` is the residue field, ``emb`` embeds base-field codes into it.
    For affine places ``alpha`` is the canonical root of u and ``beta`` the
    y-coordinate; ``X``, ``Y`` are the expansions of x and y in the local
    uniformizer (t = x - alpha when unramified, t = y when ramified).
    """

    place: Place
    K: FiniteField
    emb: list[int]
    alpha: int = 0
    beta: int = 0
    prec: int = 0
    X: list[int] | None = None
    Y: list[int] | None = None
    U: list[int] | None = None  # at infinity: w/t^2 where w = 1/x


class Curve:
    """y^2 = f(x) with f monic squarefree of odd degree 2g+1 >= 3, q odd."""

    def __init__(self, q, f, name: str | None = None):
        if isinstance(q, str):
            q = _parse_q(q)
        try:
            p, r = prime_power(int(q))
        except ValueError as exc:
            raise CurveError(str(exc)) from None
        if p == 2:
            raise CurveError("characteristic 2 is not supported")
        self.q = int(q)
        self.p = p
        self.F = gf(self.q)
        self.R = PolyRing(self.F)
        self.f: Poly = self.R.trim(self._coeff(c) for c in f)
        self.name = name or "curve"
        d = self.R.deg(self.f)
        if d < 3 or d % 2 == 0:
            raise CurveError(f"f must have odd degree >= 3 (got degree {d})")
        if self.f[-1] != 1:
            raise CurveError("f must be monic")
        if self.R.deg(self.R.gcd(self.f, self.R.deriv(self.f))) > 0:
            raise CurveError("f is not squarefree")
        self.genus = (d - 1) // 2
        self._places: dict[int, list[Place]] = {}
        self._frames: dict[Place, LocalFrame] = {}
        self._counts: dict[int, int] = {}
        self._over: dict[Poly, list[Place]] = {}

    def _coeff(self, c) -> int:
        F = self.F
        if isinstance(c, (list, tuple)):
            return F.from_digits(c)
        return F.from_int(int(c))

    @property
    def g(self) -> int:
        return self.genus

    def __repr__(self) -> str:
        return f"Curve({self.name}: y^2 = {poly_str(self.f)} over F_{self.q})"

    def to_record(self) -> dict:
        coeffs = [c if self.F.r == 1 else self.F.digits(c) for c in self.f]
        return {"name": self.name, "q": self.q, "f": coeffs}

    @cached_property
    def key(self) -> tuple:
        return (self.q, self.f)

    # -- point counting -----------------------------------------------------

    def count_points(self, m: int) -> int:
        """Number of F_{q^m}-points on the smooth model (one point at infinity)."""
        if m < 1:
            raise ValueError("m must be positive")
        if m not in self._counts:
            ext = build_extension(self.F, m)
            K = ext.field
            vals = _eval_everywhere(K, [ext.embed[c] for c in self.f])
            log = np.asarray(K._log)
            nz = vals != 0
            chi = np.where(nz, np.where(log[vals] % 2 == 0, 1, -1), 0)
            self._counts[m] = int(1 + K.q + chi.sum())
        return self._counts[m]

    def count_points_via_places(self, m: int) -> int:
        return sum(d * self.place_count(d) for d in divisors(m))

    # -- places ---------------------------------------------------------------

    def places_of_degree(self, d: int) -> list[Place]:
        if d < 1:
            raise ValueError("degree must be positive")
        if d not in self._places:
            self._places[d] = sorted(self._enumerate_places(d))
            groups: dict[Poly, list[Place]] = {}
            for P in self._places[d]:
                if P.kind != "inf":
                    groups.setdefault(P.u, []).append(P)
            for u, ps in groups.items():
                self._over.setdefault(u, sorted(ps, key=lambda P: -P.sign))
        return self._places[d]

    def places_up_to(self, d: int) -> list[Place]:
        out = []
        for e in range(1, d + 1):
            out.extend(self.places_of_degree(e))
        return out

    def _enumerate_places(self, d: int) -> list[Place]:
        R, f = self.R, self.f
        out = [INFINITY] if d == 1 else []
        for u in R.irreducibles(d):
            r = R.mod(f, u)
            if not r:
                out.append(Place("ram", u))
            elif R.jacobi(r, u) == 1:
                v = R.sqrt_mod(r, u)
                w = R.neg(v)
                plus, minus = (v, w) if v[-1] < w[-1] else (w, v)
                out.append(Place("split", u, plus, 1))
                out.append(Place("split", u, minus, -1))
        if d % 2 == 0:
            for u in R.irreducibles(d // 2):
                r = R.mod(f, u)
                if r and R.jacobi(r, u) == -1:
                    out.append(Place("inert", u))
        return out

    def place_count(self, d: int) -> int:
        """Number of places of degree d, by residue symbols only."""
        if d in self._places:
            return len(self._places[d])
        R, f = self.R, self.f
        n = 1 if d == 1 else 0
        for u in R.irreducibles(d):
            r = R.mod(f, u)
            n += 1 if not r else (2 if R.jacobi(r, u) == 1 else 0)
        if d % 2 == 0:
            for u in R.irreducibles(d // 2):
                r = R.mod(f, u)
                if r and R.jacobi(r, u) == -1:
                    n += 1
        return n

    def place_counts_via_mobius(self, d: int) -> int:
        total = sum(mobius(d // e) * self.count_points(e) for e in divisors(d))
        if total % d:
            raise ArithmeticError(f"Mobius count for degree {d} is not integral: {total}/{d}")
        return total // d

    def place_type(self, u: Poly) -> str:
        """Splitting behaviour of the monic irreducible u."""
        r = self.R.mod(self.f, u)
        if not r:
            return "ram"
        return "split" if self.R.jacobi(r, u) == 1 else "inert"

    def places_over(self, u: Poly) -> list[Place]:
        hit = self._over.get(u)
        if hit is None:
            hit = self._over[u] = self._places_over(u)
        return hit

    def _places_over(self, u: Poly) -> list[Place]:
        kind = self.place_type(u)
        if kind != "split":
            return [Place(kind, u)]
        R = self.R
        v = R.sqrt_mod(R.mod(self.f, u), u)
        w = R.neg(v)
        plus, minus = (v, w) if v[-1] < w[-1] else (w, v)
        return [Place("split", u, plus, 1), Place("split", u, minus, -1)]

    def validate_place(self, P: Place) -> None:
        if P.kind == "inf":
            return
        R = self.R
        if not P.u or P.u[-1] != 1 or not R.is_irreducible(P.u):
            raise CurveError(f"{P.descriptor()}: u is not monic irreducible")
        kind = self.place_type(P.u)
        if kind != P.kind:
            raise CurveError(f"{P.descriptor()}: expected a {kind} place")
        if kind == "split":
            if R.mod(R.sub(R.mul(P.v, P.v), self.f), P.u):
                raise CurveError(f"{P.descriptor()}: v^2 != f mod u")
            expected = self.places_over(P.u)[0 if P.sign > 0 else 1]
            if expected.v != P.v:
                raise CurveError(f"{P.descriptor()}: branch sign does not match v")

    def place_from_record(self, rec) -> Place:
        if rec == "inf" or rec == {"inf": True}:
            return INFINITY
        if not isinstance(rec, dict) or "u" not in rec:
            raise CurveError(f"bad place descriptor {rec!r}")
        u = self.R.trim(self._coeff(c) for c in rec["u"])
        branch = rec.get("branch")
        places = self.places_over(u) if u and u[-1] == 1 and self.R.is_irreducible(u) else []
        if not places:
            raise CurveError(f"{rec!r}: u is not monic irreducible")
        want = {"plus": ("split", 1), "minus": ("split", -1), "inert": ("inert", 0),
                "ramified": ("ram", 0)}.get(branch)
        if want is None:
            raise CurveError(f"{rec!r}: unknown branch tag {branch!r}")
        for P in places:
            if (P.kind, P.sign) == want:
                return P
        raise CurveError(f"{rec!r}: no such branch over this polynomial")

    # -- valuations -----------------------------------------------------------

    def norm(self, a: Poly, b: Poly) -> Poly:
        R = self.R
        return R.sub(R.mul(a, a), R.mul(self.f, R.mul(b, b)))

    def valuation(self, a: Poly, b: Poly, P: Place) -> int:
        """Order of a + y*b at P (the function must be nonzero)."""
        R = self.R
        if not a and not b:
            raise ValueError("valuation of the zero function")
        if P.kind == "inf":
            va = 2 * R.deg(a) if a else -1
            vb = 2 * R.deg(b) + 2 * self.genus + 1 if b else -1
            return -max(va, vb)
        u = P.u
        if P.kind == "ram":
            return R.valuation(self.norm(a, b), u)
        k = min(_val(R, a, u), _val(R, b, u))
        if P.kind == "inert":
            return k
        if k:
            uk = R.pow(u, k)
            a = R.div_exact(a, uk)
            b = R.div_exact(b, uk)
        m = R.valuation(self.norm(a, b), u)
        if m == 0:
            return k
        # after removing u^k only one branch can carry the zero
        on_this = not R.mod(R.add(a, R.mul(P.v, b)), u)
        return k + (m if on_this else 0)

    # -- local expansions -----------------------------------------------------

    def frame(self, P: Place, prec: int = 1) -> LocalFrame:
        fr = self._frames.get(P)
        if fr is None:
            fr = self._make_frame(P)
            self._frames[P] = fr
        if fr.prec < prec:
            self._extend_frame(fr, prec)
        return fr

    def _make_frame(self, P: Place) -> LocalFrame:
        F = self.F
        if P.kind == "inf":
            return LocalFrame(P, F, list(range(F.q)))
        ext = build_extension(F, P.degree)
        K, emb = ext.field, ext.embed
        uK = [emb[c] for c in P.u]
        alpha = None
        for z in range(K.q):
            acc = 0
            for c in reversed(uK):
                acc = K.add(K.mul(acc, z), c)
            if acc == 0:
                alpha = z
                break
        if alpha is None:  # pragma: no cover
            raise ArithmeticError("no root of u in the residue field")
        fa = _horner_const(K, [emb[c] for c in self.f], alpha)
        if P.kind == "ram":
            beta = 0
        elif P.kind == "split":
            beta = _horner_const(K, [emb[c] for c in P.v], alpha)
        else:
            r = K.sqrt(fa)
            beta = min(r, K.neg(r))
        if K.mul(beta, beta) != fa:  # pragma: no cover
            raise ArithmeticError("inconsistent residue point")
        return LocalFrame(P, K, emb, alpha, beta)

    def _extend_frame(self, fr: LocalFrame, n: int) -> None:
        K, emb = fr.K, fr.emb
        fK = [emb[c] for c in self.f]
        P = fr.place
        if P.kind == "inf":
            # w = t^2 h(w), h(w) = w^(2g+1) f(1/w); iterate U = h(t^2 U)
            h = list(reversed(fK))
            U = [1] + [0] * (n - 1)
            for _ in range(n // 2 + 1):
                W = [0, 0] + U[: n - 2]
                U = S.horner(K, h, W, n)
            fr.U = U
        elif P.kind == "ram":
            taylor = _taylor(K, fK, fr.alpha)
            f1inv = K.inv(taylor[1])
            s = [0] * n
            t2 = [0, 0, 1][:n] + [0] * max(0, n - 3)
            for _ in range(n):
                rest = S.horner(K, [0, 0] + taylor[2:], s, n)
                s = S.scale(K, S.sub(K, t2, rest, n), f1inv, n)
            X = list(s)
            X[0] = K.add(X[0], fr.alpha)
            fr.X = X
            fr.Y = ([0, 1] + [0] * n)[:n]
        else:
            taylor = _taylor(K, fK, fr.alpha) + [0] * n
            y = [fr.beta] + [0] * (n - 1)
            inv2b = K.inv(K.add(fr.beta, fr.beta))
            for i in range(1, n):
                s = taylor[i]
                for j in range(1, i):
                    s = K.sub(s, K.mul(y[j], y[i - j]))
                y[i] = K.mul(s, inv2b)
            fr.X = ([fr.alpha, 1] + [0] * n)[:n]
            fr.Y = y
        fr.prec = n

    def expand(self, a: Poly, b: Poly, P: Place, n: int) -> tuple[int, list[int]]:
        """Valuation v and the n coefficients of t^v, ..., t^(v+n-1)."""
        v = self.valuation(a, b, P)
        if P.kind == "inf":
            return v, self._expand_inf(a, b, n)
        N = v + n
        fr = self.frame(P, N)
        K, emb = fr.K, fr.emb
        A = S.horner(K, [emb[c] for c in a], fr.X, N)
        B = S.horner(K, [emb[c] for c in b], fr.X, N)
        full = S.add(K, A, S.mul(K, fr.Y, B, N), N)
        if any(full[:v]) or (n and full[v] == 0):  # pragma: no cover
            raise ArithmeticError(f"valuation mismatch at {P.descriptor()}")
        return v, full[v:]

    def _expand_inf(self, a: Poly, b: Poly, n: int) -> list[int]:
        g = self.genus
        fr = self.frame(INFINITY, n + 2 * self.R.deg(self.f) + 2)
        K = fr.K
        m = fr.prec
        U = fr.U
        W = [0, 0] + U[: m - 2]
        parts = []
        if a:
            da = len(a) - 1
            sa = S.mul(K, S.power(K, U, -da, m), S.horner(K, list(reversed(a)), W, m), m)
            parts.append((-2 * da, sa))
        if b:
            db = len(b) - 1
            sb = S.mul(K, S.power(K, U, -(g + db), m), S.horner(K, list(reversed(b)), W, m), m)
            parts.append((-(2 * g + 1) - 2 * db, sb))
        v = min(p[0] for p in parts)
        out = [0] * n
        for val, s in parts:
            sh = val - v
            for i in range(n - sh):
                if i < len(s) and s[i]:
                    out[i + sh] = K.add(out[i + sh], s[i])
        return out

    def residue(self, a: Poly, b: Poly, P: Place) -> int:
        """Image of a + y*b in the residue field (the function must be regular at P)."""
        if P.kind == "inf":
            raise ValueError("residues at infinity are not used")
        fr = self.frame(P, 1)
        K, emb = fr.K, fr.emb
        A = _horner_const(K, [emb[c] for c in a], fr.alpha)
        B = _horner_const(K, [emb[c] for c in b], fr.alpha)
        return K.add(A, K.mul(fr.beta, B))


def _val(R: PolyRing, a: Poly, u: Poly) -> int:
    return R.valuation(a, u) if a else 1 << 30


def _horner_const(K: FiniteField, coeffs, z: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = K.add(K.mul(acc, z), c)
    return acc


def _taylor(K: FiniteField, coeffs, alpha: int) -> list[int]:
    """Coefficients of f(alpha + z) as a polynomial in z."""
    n = len(coeffs)
    return S.horner(K, coeffs, [alpha, 1], n)


def _parse_q(s: str) -> int:
    s = s.strip()
    if "^" in s:
        base, exp = s.split("^", 1)
        return int(base) ** int(exp)
    return int(s)


def _eval_everywhere(K: FiniteField, coeffs: list[int]) -> np.ndarray:
    """Values of a polynomial (K-codes) at every element of K, vectorized."""
    xs = np.arange(K.q, dtype=np.int64)
    acc = np.zeros(K.q, dtype=np.int64)
    if K.r == 1:
        for c in reversed(coeffs):
            acc = (acc * xs + c) % K.p
        return acc
    log = np.asarray(K._log, dtype=np.int64)
    exp = np.asarray(K._exp, dtype=np.int64)
    zech = np.asarray(K._zech, dtype=np.int64)
    n = K.q - 1

    def vmul(a, b):
        res = exp[(log[a] + log[b]) % n]
        return np.where((a == 0) | (b == 0), 0, res)

    def vadd_const(a, c):
        if c == 0:
            return a
        lc = log[c]
        la = log[a]
        z = zech[(lc - la) % n]
        s = np.where(z < 0, 0, exp[(la + np.maximum(z, 0)) % n])
        return np.where(a == 0, c, s)

    for c in reversed(coeffs):
        acc = vadd_const(vmul(acc, xs), c)
    return acc
