"""Smith normal form and finitely generated abelian group presentations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row) if a) for j in range(cols)] for row in A]


def determinant(A: IntMatrix) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(M: IntMatrix, track_left: bool = True):
    """Return (D, U, V) with U*M*V = D diagonal and d_i | d_{i+1}.

    Pivoting always picks the smallest nonzero absolute value in the
    remaining block.  With ``track_left=False`` the returned U is None.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(map(int, r)) for r in M]
    U = identity(m) if track_left else None
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            piv = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
                    if A[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
    return A, U, V


def row_basis(rows: list[list[int]], n: int) -> list[list[int]]:
    """Echelon basis of the lattice spanned by integer row vectors of length n."""
    basis: dict[int, list[int]] = {}
    for v in rows:
        v = list(v)
        for col in range(n):
            if not v[col]:
                continue
            b = basis.get(col)
            if b is None:
                if v[col] < 0:
                    v = [-a for a in v]
                basis[col] = v
                break
            if v[col] % b[col] == 0:
                c = v[col] // b[col]
                v = [a - c * bb for a, bb in zip(v, b)]
                continue
            g, s, t = _xgcd(b[col], v[col])
            nb = [s * bb + t * a for bb, a in zip(b, v)]
            bc, vc = b[col] // g, v[col] // g
            v = [vc * bb - bc * a for bb, a in zip(b, v)]
            if nb[col] < 0:
                nb = [-a for a in nb]
            basis[col] = nb
    out = [basis[c] for c in sorted(basis)]
    # size-reduce entries above later pivots
    for i in range(len(out) - 1, -1, -1):
        pc = next(c for c in range(n) if out[i][c])
        for k in range(i):
            if out[k][pc]:
                c = out[k][pc] // out[i][pc]
                if c:
                    out[k] = [a - c * b for a, b in zip(out[k], out[i])]
    return out


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qq = a // b
        a, b = b, a - qq * b
        x0, x1 = x1, x0 - qq * x1
        y0, y1 = y1, y0 - qq * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass
class AbelianGroup:
    """Z^k / (relation lattice) in canonical coordinates.

    ``invariants`` lists d_1 | d_2 | ... with 0 for free factors and the
    trivial factors 1 removed.  ``proj_cols[i]`` is the column of V that
    produces canonical coordinate i; ``lift_rows[i]`` is a generator-level
    preimage of the i-th canonical basis element.
    """

    generator_count: int
    invariants: list[int]
    proj_cols: list[list[int]] = field(repr=False)
    lift_rows: list[list[int]] = field(repr=False)

    def project(self, x) -> tuple[int, ...]:
        out = []
        for d, col in zip(self.invariants, self.proj_cols):
            s = 0
            for a, c in zip(x, col):
                if a and c:
                    s += a * c
            out.append(s % d if d else s)
        return tuple(out)

    def reduce(self, coords) -> tuple[int, ...]:
        return tuple(c % d if d else c for c, d in zip(coords, self.invariants))

    def add(self, a, b) -> tuple[int, ...]:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a) -> tuple[int, ...]:
        return self.reduce(-x for x in a)

    def sub(self, a, b) -> tuple[int, ...]:
        return self.reduce(x - y for x, y in zip(a, b))

    def scale(self, a, k: int) -> tuple[int, ...]:
        return self.reduce(k * x for x in a)

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.invariants)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariants if d == 0)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.invariants if d]

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def element_order(self, a) -> int:
        from math import lcm
        out = 1
        for x, d in zip(a, self.invariants):
            if d == 0:
                if x:
                    return 0
            else:
                out = lcm(out, d // gcd(d, x))
        return out

    def torsion_elements(self):
        """All elements with zero free coordinates."""
        ranges = [range(d) if d else range(1) for d in self.invariants]
        return itertools.product(*ranges)


def cokernel(generator_count: int, relations) -> AbelianGroup:
    k = generator_count
    rels = [list(map(int, r)) for r in relations]
    for r in rels:
        if len(r) != k:
            raise ValueError("relation length does not match generator count")
    basis = row_basis(rels, k)
    if basis:
        D, _, V = smith_normal_form(basis, track_left=False)
        diag = [D[i][i] for i in range(len(basis))]
    else:
        V = identity(k)
        diag = []
    diag += [0] * (k - len(diag))
    Vinv = _unimodular_inverse(V)
    invariants, cols, lifts = [], [], []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        invariants.append(d)
        cols.append([V[r][i] for r in range(k)])
        lifts.append(list(Vinv[i]))
    order = sorted(range(len(invariants)), key=lambda i: (invariants[i] == 0,))
    return AbelianGroup(
        generator_count=k,
        invariants=[invariants[i] for i in order],
        proj_cols=[cols[i] for i in order],
        lift_rows=[lifts[i] for i in order],
    )


def _unimodular_inverse(V: IntMatrix) -> IntMatrix:
    n = len(V)
    D, U, W = smith_normal_form(V)
    # U V W = I  =>  V^{-1} = W U
    for i in range(n):
        if D[i][i] != 1:
            raise ArithmeticError("matrix is not unimodular")
    return matmul(W, U)


def enumerate_homs(G: AbelianGroup, n: int) -> list[tuple[int, ...]]:
    """All homomorphisms G -> Z/n as images of the canonical generators."""
    if n < 1:
        raise ValueError("n must be positive")
    choices = []
    for d in G.invariants:
        if d == 0:
            choices.append(range(n))
        else:
            g = gcd(d, n)
            choices.append([k * (n // g) for k in range(g)])
    return [tuple(c) for c in itertools.product(*choices)]


def in_lattice(x, G: AbelianGroup) -> bool:
    return all(c == 0 for c in G.project(x))
