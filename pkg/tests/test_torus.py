"""One-holed torus backend.

The lattice is small enough to check exhaustively over a slope sample:
empty < annuli < full, distinct annuli join to full, complement is an
involution that swaps empty and full and fixes annuli.
"""

import itertools

import pytest

from domword.slopes import INFINITY, Slope, mat_mul, twist_matrix
from domword.torus import T_EMPTY, T_FULL, TorusBackend, annulus

BE = TorusBackend()

SLOPES = [INFINITY, Slope(0, 1), Slope(1, 1), Slope(-1, 1), Slope(1, 2)]
SAMPLE = [T_EMPTY, T_FULL] + [annulus(s) for s in SLOPES]


def test_construction_guards():
    with pytest.raises(ValueError):
        annulus(None)
    from domword.torus import TorusDomain

    with pytest.raises(ValueError):
        TorusDomain(1)  # annulus needs a slope
    with pytest.raises(ValueError):
        TorusDomain(2, Slope(0, 1))  # full carries none


def test_containment_order():
    a, b = annulus("0"), annulus("1/2")
    assert BE.contains(T_FULL, a) and BE.contains(a, T_EMPTY)
    assert BE.contains(a, a) and not BE.contains(a, b)
    assert not BE.contains(a, T_FULL)


def test_join_meet_tables():
    a, b = annulus("0"), annulus("1")
    assert BE.join(a, b) == T_FULL
    assert BE.join(a, a) == a
    assert BE.join(T_EMPTY, a) == a
    assert BE.meet(a, b) == T_EMPTY
    assert BE.meet(T_FULL, a) == a
    assert BE.meet(a, a) == a


def test_complement_involution_and_de_morgan():
    for d in SAMPLE:
        assert BE.complement(BE.complement(d)) == d
    for d1, d2 in itertools.product(SAMPLE, repeat=2):
        assert BE.complement(BE.join(d1, d2)) == BE.meet(
            BE.complement(d1), BE.complement(d2)
        )
        assert BE.complement(BE.meet(d1, d2)) == BE.join(
            BE.complement(d1), BE.complement(d2)
        )


def test_boundary():
    a = annulus("3/4")
    assert BE.boundary(a) == a  # the annulus core survives on both sides
    assert BE.boundary(T_FULL) == T_EMPTY
    assert BE.boundary(T_EMPTY) == T_EMPTY


def test_transverse_and_strong_orthogonality():
    a, b = annulus("0"), annulus("1")
    assert BE.is_transverse(a, b)
    assert not BE.is_transverse(a, a)
    assert not BE.is_transverse(T_FULL, a)  # containment, not crossing
    # an annulus lies inside its own boundary, so never strongly
    # orthogonal to itself
    assert BE.strongly_orthogonal(a, T_EMPTY)
    assert not BE.strongly_orthogonal(a, a)


def test_complexity():
    assert BE.complexity_of(annulus("2/3")) == 0
    assert BE.complexity_of(T_FULL) == 2
    with pytest.raises(ValueError):
        BE.complexity_of(T_EMPTY)


def test_action_moves_slopes():
    t = twist_matrix(INFINITY)  # [[1,1],[0,1]]
    assert BE.act_on_domain(t, annulus("0")) == annulus("1")
    assert BE.act_on_domain(t, annulus("1/0")) == annulus("1/0")
    assert BE.act_on_domain(t, T_FULL) == T_FULL


def test_relation_is_exact_twist_membership():
    s = Slope(1, 2)
    a = annulus(s)
    for n in (-3, -1, 0, 1, 5):
        assert BE.is_D_related(twist_matrix(s, n), a)
    assert not BE.is_D_related(twist_matrix(Slope(0, 1)), a)
    # -identity fixes the line of every slope but is no twist power
    minus = ((-1, 0), (0, -1))
    assert not BE.is_D_related(minus, a)
    assert BE.act_on_domain(minus, a) == a  # yet it preserves the domain
    assert BE.is_D_related(minus, T_FULL)
    assert not BE.is_D_related(minus, T_EMPTY)
    assert BE.is_D_related(BE.identity, T_EMPTY)


def test_group_ops():
    t = twist_matrix(Slope(1, 3), 2)
    u = twist_matrix(INFINITY, -1)
    assert BE.multiply(t, BE.invert(t)) == BE.identity
    prod = BE.multiply(t, u)
    assert prod == mat_mul(t, u)


def test_absorber_candidates_pool():
    a, b = annulus("0"), annulus("5/7")
    pool = BE.absorber_candidates([a, b, T_FULL, T_EMPTY, a])
    assert a in pool and b in pool and T_FULL in pool
    assert T_EMPTY not in pool


def test_json_forms():
    assert BE.domain_to_json(T_EMPTY) == "empty"
    assert BE.domain_to_json(T_FULL) == "full"
    assert BE.domain_to_json(annulus("-2/5")) == {"annulus": "-2/5"}
