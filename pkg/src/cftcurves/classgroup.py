"""Divisor class groups and ray class groups as explicit presentations.

Cl_D is presented as the quotient of Z^S x (O/D)^* (S = small places
coprime to D) by the rows (div phi, -dlog(phi mod D)) of S-smooth functions
phi, together with the internal relations of (O/D)^*.  A place P then maps
to its basis vector and a unit u to (0, dlog u).  Construction stops only
when the torsion order equals h * Phi(D) / (q - 1) and the rank is one.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field

from .curve import INFINITY, Curve, Place
from .functions import (
    CurveFunction,
    Divisor,
    combine,
    enumerate_projective,
    functions_vanishing_at,
    principal_divisor,
    solve_congruences,
)
from .snf import AbelianGroup, cokernel, row_basis
from .units import UnitGroup
from .zeta import class_number

log = logging.getLogger(__name__)


class BoundsExceeded(RuntimeError):
    """Insufficient generators or relations within the configured bounds."""


def phi_of_modulus(q: int, D: Divisor) -> int:
    out = 1
    for P, n in D.items():
        Q = q ** P.degree
        out *= (Q - 1) * Q ** (n - 1)
    return out


def default_bound(curve: Curve, D: Divisor) -> int:
    return max(2, 2 * curve.genus - 1, max((P.degree for P in D.support), default=1))


def default_level(curve: Curve, D: Divisor) -> int:
    return 4 * curve.genus + 2 + D.degree


# ---------------------------------------------------------------------------
# relation harvesting (independent of the modulus, cached per curve)


@dataclass
class _Relation:
    fn: CurveFunction
    div: dict


class _Harvest:
    """S-smooth functions in L(n*inf) up to scalars, by exact pole order."""

    def __init__(self, curve: Curve, B: int):
        self.curve = curve
        self.B = B
        self.smooth_polys = []
        seen = set()
        for P in curve.places_up_to(B):
            if P.kind != "inf" and P.u not in seen:
                seen.add(P.u)
                self.smooth_polys.append(P.u)
        self.levels: dict[int, list[_Relation]] = {}

    def level(self, n: int) -> list[_Relation]:
        if n not in self.levels:
            self.levels[n] = self._harvest(n)
        return self.levels[n]

    def _shapes(self, n: int):
        g = self.curve.genus
        if n % 2 == 0:
            da = n // 2
            db = (n - 2 * g - 2) // 2 if n >= 2 * g + 2 else -1
            return da, db, "a"
        if n < 2 * g + 1:
            return None
        db = (n - 2 * g - 1) // 2
        da = (n - 1) // 2
        return da, db, "b"

    def _harvest(self, n: int) -> list[_Relation]:
        shape = self._shapes(n)
        if shape is None:
            return []
        da, db, top = shape
        curve, R = self.curve, self.curve.R
        q = curve.q
        na = da if top == "a" else da + 1  # free coefficients of a
        nb = db + 1 if top == "a" else db
        out = []
        for free in itertools.product(range(q), repeat=na + max(nb, 0)):
            fa = list(free[:na])
            fb = list(free[na:])
            if top == "a":
                a = R.trim(fa + [1])
                b = R.trim(fb)
            else:
                a = R.trim(fa)
                b = R.trim(fb + [1])
            N = curve.norm(a, b)
            factors = []
            for u in self.smooth_polys:
                if R.deg(N) < R.deg(u):
                    break
                qq, rr = R.divmod(N, u)
                if rr:
                    continue
                factors.append(u)
                N = qq
                while True:
                    qq, rr = R.divmod(N, u)
                    if rr:
                        break
                    N = qq
            if R.deg(N) > 0:
                continue
            div = {}
            for u in factors:
                for P in curve.places_over(u):
                    v = curve.valuation(a, b, P)
                    if v:
                        div[P] = v
            if any(P.degree > self.B for P in div):
                continue
            div[INFINITY] = -n
            out.append(_Relation(CurveFunction(curve, a, b), div))
        return out


def _harvest_for(curve: Curve, B: int) -> _Harvest:
    cache = curve.__dict__.setdefault("_harvests", {})
    h = cache.get(B)
    if h is None:
        h = cache[B] = _Harvest(curve, B)
        # keep the smooth-polynomial list ordered by degree for early exit
        h.smooth_polys.sort(key=len)
    return h


# ---------------------------------------------------------------------------
# relations expressing a large place through small ones


def _relation_candidates(curve: Curve, P: Place):
    """Lazily generated (phi, div phi) with phi vanishing to order one at P."""
    cache = curve.__dict__.setdefault("_place_rel", {})
    entry = cache.get(P)
    if entry is None:
        entry = cache[P] = ([], _gen_candidates(curve, P))
    found, gen = entry
    yield from found
    for item in gen:
        found.append(item)
        yield item


def _gen_candidates(curve: Curve, P: Place):
    d, g = P.degree, curve.genus
    for k in range(0, 2 * g + 6):
        n = d + g + k
        basis = functions_vanishing_at(curve, P, n)
        for coeffs in enumerate_projective(curve.F, basis):
            phi = combine(curve, basis, coeffs)
            if phi.is_zero() or (k and phi.pole_order() < n):
                continue
            div = principal_divisor(curve, phi, known=(P.u,)).as_dict()
            if div.get(P) != 1:
                continue
            yield phi, div


# ---------------------------------------------------------------------------


@dataclass
class RayClassGroup:
    curve: Curve
    D: Divisor
    B: int
    level: int
    S: list[Place]
    units: UnitGroup
    group: AbelianGroup
    h: int
    target: int
    nrelations: int
    orientation: str = "arithmetic"
    col_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.col_index = {P: i for i, P in enumerate(self.S)}
        self.ncols = len(self.S) + self.units.ngens
        self._place_deg = [P.degree for P in self.S] + [0] * self.units.ngens
        self.gen_degrees = [self._vec_degree(r) for r in self.group.lift_rows]
        self._artin_cache: dict[Place, tuple] = {}

    # -- basic data -----------------------------------------------------------

    @property
    def invariants(self) -> list[int]:
        return self.group.invariants

    @property
    def torsion_order(self) -> int:
        return self.group.torsion_order

    @property
    def rank(self) -> int:
        return self.group.rank

    def _vec_degree(self, vec) -> int:
        return sum(a * d for a, d in zip(vec, self._place_deg) if a)

    def degree(self, x) -> int:
        return sum(c * d for c, d in zip(x, self.gen_degrees))

    def project(self, vec) -> tuple[int, ...]:
        return self.group.project(vec)

    def zero(self):
        return self.group.zero()

    def place_column(self, P: Place) -> int:
        return self.col_index[P]

    def unit_column(self, P: Place, name) -> int:
        return len(self.S) + self.units.columns.index((P, name))

    @property
    def section(self) -> tuple[int, ...]:
        """A degree-one class: the class of infinity."""
        return self.artin_class(INFINITY)

    # -- classes ----------------------------------------------------------------

    def place_vector(self, P: Place) -> list[int]:
        """Generator-level vector representing the class of the place P."""
        if P in self.D.as_dict():
            raise ValueError(f"{P.descriptor()} divides the modulus")
        vec = [0] * self.ncols
        i = self.col_index.get(P)
        if i is not None:
            vec[i] = 1
            return vec
        phi, div = self.relation_for(P)
        for Q, v in div.items():
            if Q != P:
                vec[self.col_index[Q]] -= v
        for k, c in enumerate(self.units.dlog_function(phi.a, phi.b)):
            vec[len(self.S) + k] += c
        return vec

    def relation_for(self, P: Place, avoid=None):
        """(phi, div phi) with div phi = P + (places in S), phi a unit along D."""
        avoid = set(self.D.support) if avoid is None else avoid
        for phi, div in _relation_candidates(self.curve, P):
            if all(Q == P or (Q in self.col_index and Q not in avoid) for Q in div):
                return phi, div
        raise BoundsExceeded(f"no usable relation for {P.descriptor()}")

    def artin_class(self, P: Place) -> tuple[int, ...]:
        hit = self._artin_cache.get(P)
        if hit is None:
            hit = self._artin_cache[P] = self.project(self.place_vector(P))
        return hit

    def frobenius(self, P: Place) -> tuple[int, ...]:
        """Frobenius class of P under the configured orientation."""
        c = self.artin_class(P)
        return c if self.orientation == "arithmetic" else self.group.neg(c)

    def divisor_class(self, Dv: Divisor) -> tuple[int, ...]:
        out = self.zero()
        for P, n in Dv.items():
            out = self.group.add(out, self.group.scale(self.artin_class(P), n))
        return out

    def unit_class(self, targets: dict) -> tuple[int, ...]:
        """Image of a unit of O/D (given by series at each place of D)."""
        vec = [0] * len(self.S) + self.units.dlog_series(targets)
        return self.project(vec)

    def unit_class_via_lift(self, targets: dict, n: int | None = None, which: int = 0):
        """Same class, computed as the class of div(phi) for a lift phi of the unit."""
        curve = self.curve
        n = n if n is not None else 2 * curve.genus + self.D.degree + 1
        for m in range(n, n + 8):
            sol = solve_congruences(curve, targets, m)
            if sol is None:
                continue
            part, homog = sol
            phi = part
            if which and homog:
                phi = part + homog[(which - 1) % len(homog)]
            if phi.is_zero():
                continue
            return self.divisor_class(principal_divisor(curve, phi)), phi
        raise BoundsExceeded("no lift of the unit found")

    def describe(self) -> dict:
        return {
            "modulus": self.D.to_record(),
            "modulus_label": self.D.label(),
            "invariants": self.invariants,
            "torsion_order": self.torsion_order,
            "expected_torsion_order": self.target,
            "rank": self.rank,
            "generators": [P.descriptor() for P in self.S],
            "generator_degrees": [P.degree for P in self.S],
            "unit_generators": [f"{P.descriptor()}/{nm}" for P, nm in self.units.columns],
            "degree_map": self.gen_degrees,
            "bound_B": self.B,
            "harvest_level": self.level,
            "relations": self.nrelations,
        }


def ray_class_group(
    curve: Curve,
    D: Divisor | None = None,
    B: int | None = None,
    n_max: int | None = None,
    orientation: str = "arithmetic",
    max_rounds: int = 4,
) -> RayClassGroup:
    D = D if D is not None else Divisor()
    if not D.is_effective():
        raise ValueError("modulus must be effective")
    if INFINITY in D.support:
        raise ValueError("moduli supported at infinity are not supported")
    if orientation not in ("arithmetic", "geometric"):
        raise ValueError(f"unknown orientation {orientation!r}")
    cache = curve.__dict__.setdefault("_rcg", {})
    B = B if B is not None else default_bound(curve, D)
    n_max = n_max if n_max is not None else default_level(curve, D)
    key = (D, B, n_max)
    if key in cache:
        G = cache[key]
        if G.orientation != orientation:
            G = _reorient(G, orientation)
        return G
    h = class_number(curve)
    target = h * phi_of_modulus(curve.q, D) // (curve.q - 1) if not D.is_zero() else h
    Bc, nc = B, n_max
    for _ in range(max_rounds):
        G = _attempt(curve, D, Bc, nc, h, target, orientation)
        if G is not None:
            cache[key] = G
            return G
        log.info("bounds B=%d n=%d insufficient for %s; raising", Bc, nc, D.label())
        Bc, nc = Bc + 1, nc + 2
    raise BoundsExceeded(
        f"insufficient generators/relations for modulus {D.label()} (B<={Bc}, n<={nc})")


def _reorient(G: RayClassGroup, orientation: str) -> RayClassGroup:
    import copy
    H = copy.copy(G)
    H.orientation = orientation
    H._artin_cache = G._artin_cache
    return H


def _attempt(curve, D, B, n_max, h, target, orientation):
    Dset = set(D.support)
    S = [P for P in curve.places_up_to(B) if P not in Dset]
    if max((P.degree for P in D.support), default=0) > B:
        return None
    units = UnitGroup(curve, D)
    col = {P: i for i, P in enumerate(S)}
    ncols = len(S) + units.ngens
    base_rows = []
    for r in units.relations():
        base_rows.append([0] * len(S) + r)
    if units.ngens:
        base_rows.append([0] * len(S) + [-c for c in units.dlog_constant(curve.F.gen)])
    harvest = _harvest_for(curve, B)
    basis = row_basis(base_rows, ncols) if base_rows else []
    nrel = len(base_rows)
    for n in range(0, n_max + 1):
        new_rows = []
        for rel in harvest.level(n):
            if any(P in Dset for P in rel.div):
                continue
            row = [0] * ncols
            for P, v in rel.div.items():
                row[col[P]] += v
            if units.ngens:
                for k, c in enumerate(units.dlog_function(rel.fn.a, rel.fn.b)):
                    row[len(S) + k] -= c
            new_rows.append(row)
        if not new_rows:
            continue
        nrel += len(new_rows)
        basis = row_basis(basis + new_rows, ncols)
        if len(basis) < ncols - 1:
            continue
        grp = cokernel(ncols, basis)
        if grp.rank == 1 and grp.torsion_order == target:
            return RayClassGroup(curve, D, B, n, S, units, grp, h, target, nrel, orientation)
        if grp.rank == 1 and grp.torsion_order < target:
            # more relations only shrink the group: S does not generate
            return None
    return None


def level_quotient(G: RayClassGroup, H: RayClassGroup) -> list[tuple[int, ...]]:
    """Images in H = Cl_D' of the canonical generators of G = Cl_D (D' <= D)."""
    if G.curve is not H.curve:
        raise ValueError("groups belong to different curves")
    if not H.D <= G.D:
        raise ValueError("target modulus must divide the source modulus")
    col_images = [_column_image(G, H, c) for c in range(G.ncols)]
    out = []
    for lift in G.group.lift_rows:
        acc = H.zero()
        for c, a in enumerate(lift):
            if a:
                acc = H.group.add(acc, H.group.scale(col_images[c], a))
        out.append(acc)
    return out


def _column_image(G: RayClassGroup, H: RayClassGroup, c: int) -> tuple[int, ...]:
    if c < len(G.S):
        return H.artin_class(G.S[c])
    P, name = G.units.columns[c - len(G.S)]
    level = H.D[P]
    if level == 0:
        return H.zero()
    if name != "g0" and name[0] >= level:
        return H.zero()
    vec = [0] * H.ncols
    vec[H.unit_column(P, name)] = 1
    return H.project(vec)


def apply_hom(images: list[tuple[int, ...]], H: RayClassGroup, x) -> tuple[int, ...]:
    acc = H.zero()
    for img, a in zip(images, x):
        if a:
            acc = H.group.add(acc, H.group.scale(img, a))
    return acc


def pullback_vector(G: RayClassGroup, F: RayClassGroup, col: int) -> list[int]:
    """A G-generator vector mapping to generator ``col`` of F = Cl_f under Cl_D -> Cl_f."""
    vec = [0] * G.ncols
    if col >= len(F.S):
        P, name = F.units.columns[col - len(F.S)]
        vec[G.unit_column(P, name)] = 1
        return vec
    P = F.S[col]
    if P not in set(G.D.support):
        return G.place_vector(P)
    # P divides D but not f: P = -E + (0, dlog_f phi) in Cl_f with E avoiding D
    phi, div = G.relation_for(P)
    for Q, v in div.items():
        if Q != P:
            vec[G.col_index[Q]] -= v
    dl = F.units.dlog_function(phi.a, phi.b)
    for k, c in enumerate(dl):
        if c:
            Q, name = F.units.columns[k]
            vec[G.unit_column(Q, name)] += c
    return vec
