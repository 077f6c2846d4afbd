"""Slopes on the one-holed torus and distances in the Farey graph.

A slope is a primitive pair (p, q), normalized to q >= 0 and p = 1 when
q = 0. Slopes p/q and r/s are Farey-adjacent when |ps - qr| = 1; the
distance here is the graph metric of that adjacency graph.

farey_distance uses the mediant-parent recursion: every slope x other
than the basepoint has exactly two neighbors of smaller denominator
(after moving the basepoint to infinity), and any path to infinity must
leave the interval they span through one of them, because edges of the
Farey tessellation never cross. So d(oo, x) = 1 + min over the parents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("slope (0,0) is not a curve")
        g = math.gcd(self.p, self.q)
        p, q = self.p // g, self.q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __str__(self):
        return f"{self.p}/{self.q}"

    @staticmethod
    def parse(text: str) -> "Slope":
        p, _, q = text.partition("/")
        return Slope(int(p), int(q) if q else 1)


INFINITY = Slope(1, 0)

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENT: Matrix = ((1, 0), (0, 1))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat_inv(a: Matrix) -> Matrix:
    ((x, y), (z, w)) = a
    det = x * w - y * z
    if det != 1:
        raise ValueError("only det 1 matrices are invertible here")
    return ((w, -y), (-z, x))


def mat_apply(a: Matrix, s: Slope) -> Slope:
    return Slope(a[0][0] * s.p + a[0][1] * s.q, a[1][0] * s.p + a[1][1] * s.q)


def intersection(a: Slope, b: Slope) -> int:
    """Geometric intersection number of the two curves."""
    return abs(a.p * b.q - a.q * b.p)


def twist_nilpotent(s: Slope) -> Matrix:
    """N with T_s = I + N; N = (p,q)^T (-q, p), N^2 = 0."""
    p, q = s.p, s.q
    return ((-p * q, p * p), (-q * q, p * q))


def twist_matrix(s: Slope, n: int = 1) -> Matrix:
    """n-th power of the twist about s: I + n N_s."""
    ((a, b), (c, d)) = twist_nilpotent(s)
    return ((1 + n * a, n * b), (n * c, 1 + n * d))


def base_change_to_infinity(core: Slope) -> Matrix:
    """Some M in SL2(Z) with M(core) = infinity."""
    # x p + y q = 1; M = [[x, y], [-q, p]] has det 1 and sends (p,q) to (1,0)
    g, x, y = _ext_gcd(core.p, core.q)
    assert g == 1
    return ((x, y), (-core.q, core.p))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


# ---------------------------------------------------------------- distance


@lru_cache(maxsize=None)
def _dist_to_infinity(p: int, q: int) -> int:
    # (p, q) primitive, q >= 0
    if q == 0:
        return 0
    if q == 1:
        return 1
    # parents: s in (0, q) with p*s = +-1 mod q, paired numerators
    s1 = pow(p, -1, q)
    r1 = (p * s1 - 1) // q
    s2 = q - s1
    r2 = (p * s2 + 1) // q
    return 1 + min(_dist_to_infinity(r1, s1), _dist_to_infinity(r2, s2))


def farey_distance(a: Slope, b: Slope) -> int:
    m = base_change_to_infinity(a)
    b2 = mat_apply(m, b)
    return _dist_to_infinity(b2.p, b2.q)


# ---------------------------------------------------------------- subsurface projection


def annular_distance(core: Slope, b: Slope, c: Slope) -> int:
    """Distance between the projections of b and c to the annulus at core.

    Combinatorial model: after a coordinate change sending core to
    infinity, a slope projects to the integer part of its value; the
    output is the gap between the two integers. Changing the coordinate
    matrix alters both integers by the same shift, so the gap is well
    defined.
    """
    if b == core or c == core:
        raise ValueError("empty projection")
    m = base_change_to_infinity(core)
    return abs(_floor_slope(mat_apply(m, b)) - _floor_slope(mat_apply(m, c)))


def _floor_slope(s: Slope) -> int:
    # q > 0 after normalization whenever s != infinity
    return s.p // s.q


def slopes_up_to(bound: int) -> list[Slope]:
    """All primitive p/q with |p| <= bound, 0 <= q <= bound."""
    out = [INFINITY]
    for q in range(1, bound + 1):
        for p in range(-bound, bound + 1):
            if math.gcd(p, q) == 1:
                out.append(Slope(p, q))
    return out
