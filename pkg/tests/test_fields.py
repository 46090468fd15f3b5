import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cftcurves.fields import Extension, FiniteField, gf
from cftcurves.poly import PolyRing, count_irreducibles, mobius


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (3, 3), (3, 6), (5, 2), (7, 1)])
def test_field_size_and_frobenius(p, r):
    F = FiniteField(p, r)
    assert F.q == p ** r
    nonzero = list(range(1, F.q))
    # Frobenius has order r on the field and fixes exactly F_p
    for a in random.Random(1).sample(nonzero, min(40, len(nonzero))):
        assert F.frobenius(a, r) == a
        assert F.pow(a, F.q - 1) == 1
    fixed = [a for a in F.elements() if F.frobenius(a) == a]
    assert len(fixed) == p


@pytest.mark.parametrize("q", [9, 27, 729])
def test_extensions_of_f3(q):
    F3 = gf(3)
    m = {9: 2, 27: 3, 729: 6}[q]
    E = Extension(F3, m)
    assert E.field.q == q
    assert E.embed == [0, 1, 2]


def test_extension_embedding_is_homomorphism():
    base = gf(9)
    E = Extension(base, 3)
    F = E.field
    for a in base.elements():
        assert E.frobenius_q(E.lift(a)) == E.lift(a)
        for b in base.elements():
            assert E.lift(base.add(a, b)) == F.add(E.lift(a), E.lift(b))
            assert E.lift(base.mul(a, b)) == F.mul(E.lift(a), E.lift(b))


def test_sqrt_examples():
    F = gf(3)
    assert F.sqrt(1) in (1, 2)
    assert F.sqrt(2) is None
    assert F.quadratic_character(2) == -1 and F.quadratic_character(0) == 0
    F9 = gf(9)
    # every element of F_3 is a square in F_9
    assert all(F9.is_square(a) for a in (0, 1, 2))


@given(st.sampled_from([3, 5, 9, 25, 27, 81]), st.data())
def test_field_axioms(q, data):
    F = gf(q)
    a, b, c = (data.draw(st.integers(0, q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.exp(F.log(a)) == a
    assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    r = F.sqrt(a)
    if r is None:
        assert not F.is_square(a)
    else:
        assert F.mul(r, r) == a
    assert F.from_digits(F.digits(a)) == a


def test_invalid_fields():
    with pytest.raises(ValueError):
        FiniteField(2)
    with pytest.raises(ValueError):
        FiniteField(9)
    with pytest.raises(ValueError):
        FiniteField(3, 2, modulus=(1, 0, 1, 0))


# -- polynomials ---------------------------------------------------------------


def _brute_irreducible_counts(R, d):
    """Monic degree-d polynomials minus all products of lower-degree monics."""
    reducible = set()
    for k in range(1, d // 2 + 1):
        for a in R.monics(k):
            for b in R.monics(d - k):
                reducible.add(R.mul(a, b))
    return sum(1 for _ in R.monics(d)) - len(reducible)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_irreducible_counts_f3(d):
    R = PolyRing(gf(3))
    assert len(R.irreducibles(d)) == count_irreducibles(3, d) == _brute_irreducible_counts(R, d)
    assert count_irreducibles(3, d) == sum(mobius(d // e) * 3 ** e for e in range(1, d + 1) if d % e == 0) // d


def test_factor_examples():
    R = PolyRing(gf(3))
    x = R.x()
    # x^3 - x = x (x - 1) (x + 1)
    f = R.sub(R.pow(x, 3), x)
    facs = R.factor(f)
    assert sorted(facs) == sorted([((0, 1), 1), ((1, 1), 1), ((2, 1), 1)])
    # (x^2 + 1)^2 (x + 1)^3
    g = R.mul(R.pow(R.from_ints([1, 0, 1]), 2), R.pow(R.from_ints([1, 1]), 3))
    assert dict(R.factor(g)) == {(1, 0, 1): 2, (1, 1): 3}
    # x^9 - x splits into all monic irreducibles of degree 1 and 2
    h = R.sub(R.pow(x, 9), x)
    facs = R.factor(h)
    assert all(m == 1 for _, m in facs)
    assert sorted(R.deg(p) for p, _ in facs) == [1] * 3 + [2] * 3


polys = st.lists(st.integers(0, 2), min_size=1, max_size=12).filter(lambda c: any(c))


@given(polys, st.integers(0, 1000))
def test_factor_reconstructs(coeffs, seed):
    R = PolyRing(gf(3))
    f = R.trim(tuple(coeffs))
    if R.deg(f) < 1:
        return
    facs = R.factor(f, seed=seed)
    prod = R.const(f[-1])
    for g, m in facs:
        assert R.is_irreducible(g)
        assert g[-1] == 1
        prod = R.mul(prod, R.pow(g, m))
    assert prod == f


@given(polys, polys)
def test_divmod_and_gcd(a, b):
    R = PolyRing(gf(9))
    a, b = R.trim(tuple(a)), R.trim(tuple(b))
    qt, r = R.divmod(a, b)
    assert R.add(R.mul(qt, b), r) == a
    assert R.deg(r) < R.deg(b)
    g, s, t = R.xgcd(a, b)
    assert R.add(R.mul(s, a), R.mul(t, b)) == g
    assert not R.mod(a, g) and not R.mod(b, g)


@given(polys, st.integers(0, 8))
def test_eval_is_ring_map(coeffs, x0):
    R = PolyRing(gf(9))
    F = R.F
    a = R.trim(tuple(coeffs))
    b = R.trim(tuple(reversed(coeffs)))
    assert R.eval(R.mul(a, b), x0) == F.mul(R.eval(a, x0), R.eval(b, x0))
    assert R.eval(R.compose(a, b), x0) == R.eval(a, R.eval(b, x0))
