import pytest
from hypothesis import settings

from cftcurves import Curve, Divisor

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

X_PLUS = [-1, -1, 1, 1, 0, 1]
X_MINUS = [-1, -1, 1, -1, 0, 1]
ELLIPTIC = [1, 1, 0, 1]


@pytest.fixture(scope="session")
def xp():
    return Curve(3, X_PLUS, "X+")


@pytest.fixture(scope="session")
def xm():
    return Curve(3, X_MINUS, "X-")


@pytest.fixture(scope="session")
def ell():
    return Curve(3, ELLIPTIC, "E")


@pytest.fixture(scope="session")
def both(xp, xm):
    return [xp, xm]


def modulus_2pqr(curve, s_index=3, p_index=0):
    """D = 2P + Q + R from the degree-2 places, leaving out the s_index-th one."""
    P2 = curve.places_of_degree(2)
    S = P2[s_index]
    rest = [P for P in P2 if P != S]
    P = rest[p_index]
    Q, R = [x for x in rest if x != P]
    return Divisor({P: 2, Q: 1, R: 1}), S
