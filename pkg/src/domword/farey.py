"""Empirics over the Farey graph: projections, displacement, genericity.

Three consumers of the exact slope arithmetic. behrstock_scan measures
the projection constant over an exhaustive slope pool and reports the
witnessing triple; displacement_K evaluates the recursive displacement
bound attached to a word; generic_witness materializes a twist power
that carries its annular relation while avoiding a finite list of
forbidden relation words.

The scan convention (floor of the transformed slope, documented +-2
slack) is the one fixed in slopes.annular_distance; the table built
here is cross-checked against that scalar routine by the tests. The
resulting constant is convention-relative and makes no claim of being
anything but an empirical ceiling for this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fragments import decide_R_w
from .slopes import (
    IDENT,
    Slope,
    base_change_to_infinity,
    farey_distance,
    mat_apply,
    mat_mul,
    slopes_up_to,
    twist_matrix,
)
from .torus import TorusDomain
from .words import DomainLetter, GroupLetter, Word


def _floor_table(pool):
    """T[i, j] = twisting number of pool[j] in the annulus about pool[i].

    valid[i, j] is False exactly on the diagonal of slopes (projection
    of a curve to its own annulus is empty).
    """
    n = len(pool)
    P = np.array([s.p for s in pool], dtype=np.int64)
    Q = np.array([s.q for s in pool], dtype=np.int64)
    T = np.zeros((n, n), dtype=np.int64)
    valid = np.zeros((n, n), dtype=bool)
    for i, core in enumerate(pool):
        (a, b), (c, d) = base_change_to_infinity(core)
        p2 = a * P + b * Q
        q2 = c * P + d * Q
        neg = q2 < 0
        p2 = np.where(neg, -p2, p2)
        q2 = np.where(neg, -q2, q2)
        ok = q2 != 0
        T[i] = np.floor_divide(p2, np.where(ok, q2, 1))
        T[i, ~ok] = 0
        valid[i] = ok
    return T, valid


@dataclass(frozen=True)
class BehrstockReport:
    bound: int
    C_emp: int
    argmax: tuple  # (alpha, core1, core2) as Slopes

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "C_emp": self.C_emp,
            "argmax": {
                "alpha": str(self.argmax[0]),
                "core1": str(self.argmax[1]),
                "core2": str(self.argmax[2]),
            },
        }


def behrstock_scan(bound: int) -> BehrstockReport:
    """Exhaustive projection-constant scan over slopes_up_to(bound).

    For every ordered pair of distinct cores and every third slope
    transverse to both, takes the smaller of the two mutual projection
    distances and maximizes. The triple realizing the maximum (first in
    scan order) is reported alongside the constant.
    """
    if bound < 2:
        raise ValueError("bound must be at least 2")
    pool = slopes_up_to(bound)
    T, valid = _floor_table(pool)
    n = len(pool)
    best = -1
    arg = None
    for i in range(n):
        row = T[i]
        ok = valid[i]
        # axes: j = second core, k = the projected slope alpha
        d1 = np.abs(row[None, :] - row[:, None])
        d2 = np.abs(T - T[:, i][:, None])
        m = np.minimum(d1, d2)
        mask = ok[:, None] & ok[None, :] & valid & valid[:, i][:, None]
        m = np.where(mask, m, -1)
        j, k = np.unravel_index(np.argmax(m), m.shape)
        if m[j, k] > best:
            best = int(m[j, k])
            arg = (pool[k], pool[i], pool[j])
    return BehrstockReport(bound=bound, C_emp=best, argmax=arg)


def displacement_K(word: Word, alpha: Slope) -> int:
    """Displacement ceiling for the orbit of alpha under a relation word.

    Peels letters from the right: an annular letter contributes twice
    its core's Farey distance from the running slope, a group letter
    moves the running slope and costs nothing. Every group element
    satisfying the word's relation against the identity displaces alpha
    by at most this much, which the sampling tests exercise.
    """
    total = 0
    cur = alpha
    for letter in reversed(word):
        if isinstance(letter, GroupLetter):
            cur = mat_apply(letter.g, cur)
            continue
        d = letter.dom
        if d.rank == 2:
            raise ValueError("no uniform bound exists")
        if d.rank != 1:
            raise ValueError("word letters must be annular")
        total += 2 * farey_distance(cur, d.slope)
    return total


def sample_related(word: Word, rng, max_exp: int = 50):
    """A group element satisfying the word's relation, by construction."""
    g = IDENT
    for letter in word:
        if isinstance(letter, GroupLetter):
            g = mat_mul(g, letter.g)
        else:
            g = mat_mul(g, twist_matrix(letter.dom.slope, rng.randint(-max_exp, max_exp)))
    return g


def generic_witness(D: TorusDomain, forbidden, budget: int = 200):
    """A twist power about D's core avoiding every forbidden relation.

    Scans n = 1..budget for a power whose relation to the identity
    refutes each forbidden word exactly. Forbidden words that mention
    D's own annulus can never be avoided (the sought relation implies
    them with zero padding), so they are rejected up front, as are
    full-domain letters.
    """
    if D.rank != 1:
        raise ValueError("the domain must be a proper annulus")
    core = D.slope
    for u in forbidden:
        for letter in u:
            if not isinstance(letter, DomainLetter):
                continue
            if letter.dom.rank == 2:
                raise ValueError("forbidden word letter is not proper")
            if letter.dom.rank != 1:
                raise ValueError("forbidden word letters must be annular")
            if letter.dom.slope == core:
                raise ValueError("forbidden word not in W(D)")
    for n in range(1, budget + 1):
        g = twist_matrix(core, n)
        if all(decide_R_w(g, u, budget)[0] == "refuted" for u in forbidden):
            return g
    raise RuntimeError(f"no witness within budget {budget}")
