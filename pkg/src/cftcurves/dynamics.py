"""Finite-level model of the class-field dynamical system at a modulus D.

Carrier: pairs (gamma, rho) with gamma in Cl_D and rho = (rho_P) in the
truncations O_P / P^(n_P), modulo (gamma, rho) ~ (gamma - iota(u), u rho) for
u in (O/D)^*.  A place Q prime to D acts by gamma -> gamma - [Q]; a place P
of D multiplies rho_P by the uniformizer and moves gamma by a fixed lift c_P.
Class group elements are written additively throughout.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import series as S
from .classgroup import RayClassGroup, ray_class_group
from .curve import Curve, Place
from .functions import Divisor

# rho_P is None (the zero element) or (k, u) with u a unit series of length n_P - k
Local = tuple[int, tuple[int, ...]] | None


@dataclass(frozen=True)
class SystemPoint:
    gamma: tuple[int, ...]
    rho: tuple[Local, ...]


@dataclass
class LawReport:
    name: str
    samples: int
    passed: bool
    counterexample: str | None = None

    def to_record(self) -> dict:
        rec = {"law": self.name, "samples": self.samples, "passed": self.passed}
        if self.counterexample:
            rec["counterexample"] = self.counterexample
        return rec


@dataclass
class FiniteSystem:
    G: RayClassGroup
    lifts: dict = field(default_factory=dict)

    def __post_init__(self):
        D = self.G.D
        if D.is_zero():
            raise ValueError("the finite system needs a nonzero modulus")
        self.places = [L.place for L in self.G.units.locals]
        self.levels = [L.level for L in self.G.units.locals]
        self.fields = [L.K for L in self.G.units.locals]
        for P in self.lifts:
            if P not in self.places:
                raise ValueError(f"lift given for {P.descriptor()}, which does not divide D")
        self._units = None

    @property
    def curve(self) -> Curve:
        return self.G.curve

    # -- the unit group ------------------------------------------------------------

    def unit_elements(self) -> list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
        """Every u in (O/D)^* as (iota(u), local series), enumerated once."""
        if self._units is None:
            per_place = []
            for K, n in zip(self.fields, self.levels):
                first = range(1, K.q)
                rest = [range(K.q)] * (n - 1)
                per_place.append([tuple(s) for s in itertools.product(first, *rest)])
            out = []
            for combo in itertools.product(*per_place):
                targets = {P: list(s) for P, s in zip(self.places, combo)}
                out.append((self.G.unit_class(targets), combo))
            self._units = out
        return self._units

    @property
    def unit_order(self) -> int:
        return self.G.units.order

    def _mul_local(self, i: int, u: tuple[int, ...], r: Local) -> Local:
        if r is None:
            return None
        k, v = r
        K, n = self.fields[i], self.levels[i]
        m = n - k
        return k, tuple(S.mul(K, list(u[:m]), list(v), m))

    def apply_unit(self, x: SystemPoint, unit) -> SystemPoint:
        cls, series = unit
        gamma = self.G.group.sub(x.gamma, cls)
        rho = tuple(self._mul_local(i, series[i], r) for i, r in enumerate(x.rho))
        return SystemPoint(gamma, rho)

    def canonical(self, x: SystemPoint) -> SystemPoint:
        """Smallest representative over the unit orbit."""
        best = None
        for unit in self.unit_elements():
            y = self.apply_unit(x, unit)
            k = _point_key(y)
            if best is None or k < best[0]:
                best = (k, y)
        return best[1]

    def equivalent(self, x: SystemPoint, y: SystemPoint) -> bool:
        return self.canonical(x) == self.canonical(y)

    # -- the monoid action -----------------------------------------------------------

    def one(self, gamma=None) -> SystemPoint:
        gamma = self.G.zero() if gamma is None else tuple(gamma)
        rho = tuple((0, (1,) + (0,) * (n - 1)) for n in self.levels)
        return SystemPoint(gamma, rho)

    def act_place(self, P: Place, x: SystemPoint) -> SystemPoint:
        if P in self.places:
            i = self.places.index(P)
            r = x.rho[i]
            n = self.levels[i]
            if r is None or r[0] + 1 >= n:
                new = None
            else:
                k, v = r
                new = (k + 1, v[: n - k - 1])
            rho = x.rho[:i] + (new,) + x.rho[i + 1:]
            c = self.lifts.get(P, self.G.zero())
            return SystemPoint(self.G.group.sub(x.gamma, c), rho)
        return SystemPoint(self.G.group.sub(x.gamma, self.G.frobenius(P)), x.rho)

    def act(self, n: Divisor, x: SystemPoint) -> SystemPoint:
        if not n.is_effective():
            raise ValueError("the monoid consists of effective divisors")
        for P, m in n.items():
            for _ in range(m):
                x = self.act_place(P, x)
        return x

    # -- sampling --------------------------------------------------------------------

    def random_gamma(self, rng: random.Random, spread: int = 3) -> tuple[int, ...]:
        return tuple(rng.randrange(d) if d else rng.randint(-spread, spread)
                     for d in self.G.invariants)

    def random_local(self, rng: random.Random, i: int, zero_prob: float = 0.15) -> Local:
        K, n = self.fields[i], self.levels[i]
        if rng.random() < zero_prob:
            return None
        k = rng.randrange(n)
        m = n - k
        return k, tuple([rng.randrange(1, K.q)] + [rng.randrange(K.q) for _ in range(m - 1)])

    def random_point(self, rng: random.Random) -> SystemPoint:
        return SystemPoint(self.random_gamma(rng),
                           tuple(self.random_local(rng, i) for i in range(len(self.places))))

    def random_unit(self, rng: random.Random):
        return rng.choice(self.unit_elements())

    def random_monoid(self, rng: random.Random, places: list[Place], size: int = 3,
                      coprime: bool = False) -> Divisor:
        pool = [P for P in places if not (coprime and P in self.places)]
        out = {}
        for _ in range(rng.randint(0, size)):
            P = rng.choice(pool)
            out[P] = out.get(P, 0) + 1
        return Divisor(out)

    # -- H-subspaces -----------------------------------------------------------------

    def indicator(self, m: list[Place], gamma=None) -> SystemPoint:
        """(gamma, 1_m): the unit at places of m, zero at the other places of D."""
        base = self.one(gamma)
        rho = tuple(r if P in m else None for P, r in zip(self.places, base.rho))
        return SystemPoint(base.gamma, rho)

    def h_subspace_counts(self, m: list[Place]) -> dict:
        """Classes [(gamma, 1_m)] for degree-zero gamma.

        Predicted by the quotient Cl_D^0 / iota(units that are 1 at m) and,
        independently, by the ray class group of D restricted to m.
        """
        one = {P: (1,) + (0,) * (n - 1) for P, n in zip(self.places, self.levels)}
        iota = {cls for cls, ser in self.unit_elements()
                if all(ser[i] == one[P] for i, P in enumerate(self.places) if P in m)}
        tors = list(self.G.group.torsion_elements())
        seen = {self.canonical(self.indicator(m, g)) for g in tors}
        Dm = Divisor({P: n for P, n in zip(self.places, self.levels) if P in m})
        restricted = ray_class_group(self.curve, Dm, orientation=self.G.orientation)
        predicted = len(tors) // len(iota)
        return {
            "m": Dm.label() if not Dm.is_zero() else "0",
            "classes": len(seen),
            "quotient_order": predicted,
            "ray_class_order": restricted.torsion_order,
            "bijective": len(seen) == predicted == restricted.torsion_order,
        }

    def h_subspace_report(self) -> list[dict]:
        out = []
        for r in range(len(self.places) + 1):
            for m in itertools.combinations(self.places, r):
                out.append(self.h_subspace_counts(list(m)))
        return out


def _point_key(x: SystemPoint) -> tuple:
    rho = tuple((-1, ()) if r is None else r for r in x.rho)
    return x.gamma, rho


def build_system(curve: Curve, D: Divisor, lifts: dict | None = None,
                 orientation: str = "arithmetic", **kw) -> FiniteSystem:
    G = ray_class_group(curve, D, orientation=orientation, **kw)
    return FiniteSystem(G, dict(lifts or {}))


def check_action_laws(system: FiniteSystem, samples: int = 100, seed: int = 0,
                      max_degree: int = 3) -> list[LawReport]:
    """Sampled checks of the equivalence, well-definedness, monoid law,
    coprime injectivity and the orbit identity gamma_n = n * 1."""
    rng = random.Random(seed)
    curve = system.curve
    places = curve.places_up_to(max_degree)
    coprime = [P for P in places if P not in system.places]
    generators = places
    reports = []

    # (i) equivalence relation
    bad = None
    for _ in range(samples):
        x = system.random_point(rng)
        u, v = system.random_unit(rng), system.random_unit(rng)
        y = system.apply_unit(x, u)
        z = system.apply_unit(y, v)
        cx, cy, cz = system.canonical(x), system.canonical(y), system.canonical(z)
        if not (cx == cy == cz and system.canonical(cy) == cx):
            bad = f"x={x} u={u[1]} v={v[1]}"
            break
    reports.append(LawReport("equivalence", samples, bad is None, bad))

    # (ii) the action respects the equivalence
    bad = None
    for _ in range(samples):
        x = system.random_point(rng)
        u = system.random_unit(rng)
        P = rng.choice(generators)
        a = system.canonical(system.act_place(P, x))
        b = system.canonical(system.act_place(P, system.apply_unit(x, u)))
        if a != b:
            bad = f"place {P.descriptor()} x={x} u={u[1]}"
            break
    reports.append(LawReport("well_defined", samples, bad is None, bad))

    # (iii) commutativity and associativity of the monoid action
    bad = None
    for _ in range(samples):
        x = system.random_point(rng)
        m = system.random_monoid(rng, generators)
        n = system.random_monoid(rng, generators)
        r = system.random_monoid(rng, generators)
        lhs = system.act(m, system.act(n + r, x))
        mid = system.act(m + n, system.act(r, x))
        rhs = system.act(n, system.act(r, system.act(m, x)))
        if not (system.equivalent(lhs, mid) and system.equivalent(mid, rhs)):
            bad = f"m={m.label()} n={n.label()} r={r.label()} x={x}"
            break
    reports.append(LawReport("monoid_law", samples, bad is None, bad))

    # (iv) places prime to D act injectively on classes
    bad = None
    for _ in range(samples):
        x, y = system.random_point(rng), system.random_point(rng)
        if rng.random() < 0.5:
            y = SystemPoint(system.random_gamma(rng), x.rho)
        n = system.random_monoid(rng, coprime, coprime=True)
        same = system.equivalent(x, y)
        same_after = system.equivalent(system.act(n, x), system.act(n, y))
        if same != same_after:
            bad = f"n={n.label()} x={x} y={y}"
            break
    reports.append(LawReport("coprime_injective", samples, bad is None, bad))

    # (v) orbit identity: n * [(0, 1)] = [(-[n], 1)] for n prime to D
    bad = None
    orbit_samples = max(20, samples // 5)
    big = [P for P in curve.places_up_to(max_degree + 2) if P not in system.places]
    for _ in range(orbit_samples):
        n = system.random_monoid(rng, big, size=4, coprime=True)
        lhs = system.act(n, system.one())
        cls = system.G.divisor_class(n)
        if system.G.orientation == "geometric":
            cls = system.G.group.neg(cls)
        rhs = system.one(system.G.group.neg(cls))
        if not system.equivalent(lhs, rhs):
            bad = f"n={n.label()}"
            break
    reports.append(LawReport("orbit_identity", orbit_samples, bad is None, bad))
    return reports


def saturation_example(system: FiniteSystem) -> dict:
    """P | D applied n_P times identifies points that differed only at P."""
    P, n = system.places[0], system.levels[0]
    x = system.one()
    rho = list(x.rho)
    rho[0] = (1, (1,) + (0,) * (n - 2)) if n > 1 else None
    y = SystemPoint(x.gamma, tuple(rho))
    Dn = Divisor.of(P, n)
    ax, ay = system.act(Dn, x), system.act(Dn, y)
    return {
        "place": P.descriptor(),
        "level": n,
        "distinct_before": not system.equivalent(x, y),
        "equal_after": system.equivalent(ax, ay),
        "component_zero": ax.rho[0] is None,
    }
