"""Symbolic mapping classes: twist-and-automorphism arithmetic."""

import pytest

from domword.groups import (
    Generator,
    GraphAut,
    SymbolicBackend,
    compose_auts,
    dumbbell_symbolic_backend,
    identity_aut,
    invert_aut,
)
from domword.pants import Annulus, Block, PantsBackend, dumbbell_graph


def be():
    return dumbbell_symbolic_backend()


def test_group_arithmetic():
    b = be()
    a = b.gen("twist_a")
    assert b.multiply(a, b.invert(a)) == b.identity
    assert b.multiply(b.gen("twist_a", 2), b.gen("twist_a", -1)) == b.gen("twist_a")
    w = b.multiply(b.gen("sigma"), b.gen("twist_a", 3))
    assert b.multiply(w, b.invert(w)) == b.identity
    assert b.multiply(b.invert(w), w) == b.identity
    # the swap is an involution, so sigma equals its own inverse
    assert b.multiply(b.gen("sigma"), b.gen("sigma")) == b.identity
    assert b.gen("sigma", -1) == b.gen("sigma")


def test_conjugation_moves_the_twist_curve():
    b = be()
    # sigma twist_a sigma^-1 twists about the other loop curve
    conj = b.multiply(
        b.multiply(b.gen("sigma"), b.gen("twist_a")), b.gen("sigma", -1)
    )
    vec, aut = conj
    assert aut.is_identity()
    assert vec == (0, 1, 0)
    assert b.support_of(conj) == frozenset({Annulus(1)})
    # and the support transforms equivariantly
    assert b.support_of(conj) == b.act_on_domain(
        b.gen("sigma"), b.support_of(b.gen("twist_a"))
    )


def test_gen_guards():
    b = be()
    with pytest.raises(ValueError):
        b.gen("nope")
    assert b.gen("sigma", 0) == b.identity


def test_sigma_swaps_the_handles():
    b = be()
    s = b.gen("sigma")
    assert b.act_on_domain(s, frozenset({Annulus(0)})) == frozenset({Annulus(1)})
    assert b.act_on_domain(s, frozenset({Annulus(2)})) == frozenset({Annulus(2)})
    t0 = frozenset({Block(frozenset({0}), frozenset({0}))})
    t1 = frozenset({Block(frozenset({1}), frozenset({1}))})
    assert b.act_on_domain(s, t0) == t1
    assert b.act_on_domain(b.multiply(s, s), t0) == t0


def test_twists_act_trivially_on_the_curve_system():
    b = be()
    for d in b.connected_domains():
        assert b.act_on_domain(b.gen("twist_a", 5), d) == d


def test_supports_and_relation():
    b = be()
    t0 = frozenset({Block(frozenset({0}), frozenset({0}))})
    a0 = frozenset({Annulus(0)})
    assert b.is_D_related(b.gen("twist_a"), t0)  # the twist curve sits inside
    # the bridge curve bounds the one-holed torus, and a boundary twist
    # is supported inside the subsurface
    assert b.is_D_related(b.gen("twist_c"), t0)
    assert not b.is_D_related(b.gen("twist_c"), a0)
    assert not b.is_D_related(b.gen("sigma"), t0)
    assert b.is_D_related(b.gen("sigma"), b.full_domain())
    joined = b.multiply(b.gen("twist_a"), b.gen("twist_c"))
    assert b.is_D_related(joined, t0)
    assert not b.is_D_related(joined, a0)
    # empty domain relates only the identity
    assert b.is_D_related(b.identity, frozenset())
    assert not b.is_D_related(b.gen("twist_a"), frozenset())


def test_absorbable_factors():
    b = be()
    t1 = frozenset({Block(frozenset({1}), frozenset({1}))})
    a0 = frozenset({Annulus(0)})
    # twist_a * sigma: right-splitting the twist_a coordinate conjugates
    # it through the swap, so the factor twists about the other loop
    g = b.multiply(b.gen("twist_a"), b.gen("sigma"))
    suffixes = b.absorbable_suffixes(g, [a0, t1])
    assert len(suffixes) == 1
    h, target = suffixes[0]
    assert target == 1 and b.support_of(h) == frozenset({Annulus(1)})
    assert b.multiply(b.multiply(g, b.invert(h)), h) == g
    # from the left no conjugation happens: the factor is twist_a itself
    prefixes = b.absorbable_prefixes(g, [a0, t1])
    assert len(prefixes) == 1
    h, target = prefixes[0]
    assert target == 0 and b.support_of(h) == frozenset({Annulus(0)})
    assert b.multiply(h, b.multiply(b.invert(h), g)) == g


def test_aut_validation():
    graph = dumbbell_graph()
    with pytest.raises(ValueError, match="permutation"):
        SymbolicBackend(
            graph, {"x": Generator("x", frozenset(), GraphAut((0, 0), (0, 1, 2)))}
        )
    # vertex swap with an edge map that forgets to swap the loops
    with pytest.raises(ValueError, match="edge map"):
        SymbolicBackend(
            graph, {"x": Generator("x", frozenset(), GraphAut((1, 0), (0, 1, 2)))}
        )


def test_support_consistency_is_enforced():
    graph = dumbbell_graph()
    pb = PantsBackend(graph)
    swap = GraphAut((1, 0), (1, 0, 2))
    # a swap supported on a single annulus moves pieces it claims to fix
    with pytest.raises(ValueError, match="outside its support"):
        SymbolicBackend(graph, {"x": Generator("x", frozenset({Annulus(2)}), swap)})
    # the honest support works
    SymbolicBackend(graph, {"x": Generator("x", pb.full_domain(), swap)})
    # a graph-trivial generator must be an annular twist
    t0 = frozenset({Block(frozenset({0}), frozenset({0}))})
    with pytest.raises(ValueError, match="single decomposition annulus"):
        SymbolicBackend(
            graph, {"x": Generator("x", t0, identity_aut(graph))}
        )


def test_aut_helpers():
    graph = dumbbell_graph()
    aut = identity_aut(graph)
    assert aut.is_identity()
    swap = GraphAut((1, 0), (1, 0, 2))
    assert compose_auts(swap, swap).is_identity()
    assert invert_aut(swap) == swap
