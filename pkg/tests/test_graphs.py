"""Graph catalog, chain invariant, and rank bound checks.

The frozen chain-search numbers below were produced by the pants
backend itself (build the vertex domain, complement it, count chains),
so the catalogued convention and the literal count stay separately
visible wherever they disagree.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domword.graphs import (
    GeomGraphSpec,
    Orbit,
    arc_and_curve_spec,
    arc_graph_spec,
    bounding_pair_splits,
    builtin_catalog,
    chain_search_k,
    flip_graph_spec,
    graph_of_domains_spec,
    graph_report,
    hatcher_thurston_spec,
    interpretability_verdict,
    k_multiarc_spec,
    k_multicurve_spec,
    k_of_graph,
    k_separating_spec,
    marking_graph_spec,
    multiarc_cut_types,
    multicurve_cut_types,
    nonseparating_spec,
    pants_graph_spec,
    piece_inside_chain,
    rank_bound,
    separating_splits,
    torelli_spec,
)
from domword.ordinals import omega_power
from domword.rank import morley_rank_theory
from domword.surfaces import Signature, euler_characteristic

S20 = Signature(2, 0)
S21 = Signature(2, 1)


# ------------------------------------------------------------- pinned k


def test_pants_k_and_rank():
    spec = pants_graph_spec(S20)
    assert k_of_graph(spec, S20) == 2
    assert rank_bound(spec, S20) == omega_power(2)


def test_pants_backend_cross_check_agrees():
    spec = pants_graph_spec(S20)
    assert chain_search_k(spec, S20) == {"pants decomposition": 2}


@pytest.mark.parametrize(
    "sig",
    [
        Signature(0, 5),
        Signature(0, 6),
        Signature(1, 2),
        Signature(1, 3),
        Signature(2, 0),
        Signature(2, 1),
    ],
)
def test_pants_k_is_two_exhaustively(sig):
    # every admissible signature with at least two decomposition curves
    assert 3 * sig.g + sig.b - 3 >= 2
    spec = pants_graph_spec(sig)
    assert k_of_graph(spec, sig) == 2
    assert chain_search_k(spec, sig) == {"pants decomposition": 2}


def test_marking_k_matches_backend_oracle():
    # a marking fills; the backend complement is empty on both counts
    spec = marking_graph_spec(S20)
    assert k_of_graph(spec, S20) == 1
    assert chain_search_k(spec, S20) == {"complete clean marking": 1}
    assert rank_bound(spec, S20) == omega_power(1)


def test_separating_k_is_3g_minus_4():
    spec = k_separating_spec(S20)
    assert k_of_graph(spec, S20) == 2
    spec3 = k_separating_spec(Signature(3, 0))
    assert k_of_graph(spec3, Signature(3, 0)) == 5


def test_separating_literal_chains_disagree_visibly():
    # the literal count inside a (1,1) piece is its complexity 2, one
    # more than the catalogued curve-system count; both get reported
    spec = k_separating_spec(S20)
    assert chain_search_k(spec, S20) == {"separating curve (1,1)+(1,1)": 3}
    report = graph_report(spec, S20)
    assert report["k"] == 2
    assert "chain_discrepancy" in report["audit"]


def test_nonseparating_k():
    spec = nonseparating_spec(S20)
    assert k_of_graph(spec, S20) == 3  # complement (1,2) carries 2 curves
    assert chain_search_k(spec, S20) == {"nonseparating curve": 4}


def test_hatcher_thurston_k():
    spec = hatcher_thurston_spec(S20)
    assert k_of_graph(spec, S20) == 2
    assert chain_search_k(spec, S20) == {"cut system": 3}


def test_arc_graph_variants():
    paper = arc_graph_spec(S21, "paper")
    audited = arc_graph_spec(S21, "euler-audited")
    assert k_of_graph(paper, S21) == 2
    assert rank_bound(paper, S21) == omega_power(2)
    assert k_of_graph(audited, S21) == 3
    assert rank_bound(audited, S21) == omega_power(3)
    # the paper variant says out loud that its Euler audit fails
    assert "FAILS" in paper.orbits[0].notes
    with pytest.raises(ValueError):
        arc_graph_spec(S21, "folk")
    with pytest.raises(ValueError):
        arc_graph_spec(S20)


def test_flip_and_polygonalization_fill():
    for build in (flip_graph_spec,):
        spec = build(S21)
        assert k_of_graph(spec, S21) == 1
    spec = flip_graph_spec(Signature(0, 3))
    assert k_of_graph(spec, Signature(0, 3)) == 1


def test_graph_of_domains_k_and_flags():
    spec = graph_of_domains_spec(S20)
    assert k_of_graph(spec, S20) == 3
    assert spec.conditions["bounded_vertex_size"] is False
    assert spec.conditions["bounded_intersection"] is False
    assert "separate argument" in spec.notes


# ------------------------------------------------------------- verdicts


def test_pants_verdict_guarded():
    rec = interpretability_verdict(pants_graph_spec(S21), S21)
    assert rec["guard"] == {"condition": "3g+b-2 > 2", "holds": True}
    assert rec["verdict"] == (
        "the curve graph is not interpretable in the pants graph"
    )

    small = Signature(1, 1)
    rec = interpretability_verdict(pants_graph_spec(small), small)
    assert rec["guard"]["holds"] is False
    assert rec["verdict"] is None


def test_separating_verdict():
    rec = interpretability_verdict(k_separating_spec(S20), S20)
    assert rec["guard"]["holds"] is True
    assert rec["verdict"] is not None
    assert rec["graph_bound"] == "w^2"
    assert rec["ambient_rank"] == "w^4"


def test_no_guard_means_no_verdict():
    rec = interpretability_verdict(nonseparating_spec(S20), S20)
    assert rec["strict_drop"] is True
    assert rec["guard"] is None and rec["verdict"] is None


# ------------------------------------------------------------- catalog


def test_catalog_covers_all_fourteen_graphs():
    keys = set(builtin_catalog(S20)) | set(builtin_catalog(S21))
    assert keys == {
        "hatcher-thurston",
        "pants",
        "marking",
        "nonseparating",
        "separating",
        "torelli",
        "schmutz-schaller",
        "multicurve",
        "arc-paper",
        "arc-euler-audited",
        "multiarc",
        "flip",
        "polygonalization",
        "arc-and-curve",
        "domains",
    }


@pytest.mark.parametrize(
    "sig",
    [S20, S21, Signature(1, 2), Signature(0, 5), Signature(3, 0)],
)
def test_rank_bound_below_theory_rank(sig):
    theory = morley_rank_theory(sig)
    for spec in builtin_catalog(sig).values():
        assert rank_bound(spec, sig) <= theory


def test_every_orbit_carries_an_audit_note():
    for sig in (S20, S21):
        for spec in builtin_catalog(sig).values():
            for orbit in spec.orbits:
                assert orbit.notes
            assert set(spec.conditions) == {
                "bounded_vertex_size",
                "bounded_intersection",
                "finite_edge_orbits",
            }


# --------------------------------------------------------- enumerators


def test_separating_splits_small():
    assert separating_splits(S20) == [(Signature(1, 1), Signature(1, 1))]
    assert separating_splits(Signature(3, 0)) == [
        (Signature(1, 1), Signature(2, 1))
    ]
    assert separating_splits(Signature(1, 1)) == []


def test_bounding_pairs_need_genus_three_when_closed():
    # at genus 2 one side would be an annulus, i.e. isotopic curves
    assert bounding_pair_splits(S20) == []
    assert bounding_pair_splits(Signature(3, 0)) == [
        (Signature(1, 2), Signature(1, 2))
    ]


def test_torelli_orbits():
    spec = torelli_spec(S20)
    assert len(spec.orbits) == 1  # separating only at genus 2
    spec3 = torelli_spec(Signature(3, 0))
    labels = {o.label for o in spec3.orbits}
    assert any(lbl.startswith("bounding pair") for lbl in labels)
    with pytest.raises(ValueError):
        torelli_spec(Signature(1, 1))


def test_multicurve_types_genus_two():
    assert multicurve_cut_types(S20, 2) == [
        (Signature(0, 3), Signature(1, 1)),
        (Signature(0, 4),),
    ]
    # three disjoint curves on (2,0) force a pants decomposition
    assert multicurve_cut_types(S20, 3) == [(Signature(0, 3), Signature(0, 3))]


def test_multiarc_types_pants():
    assert multiarc_cut_types(Signature(0, 3), 1) == [
        (Signature(0, 2),),
        (Signature(0, 2), Signature(0, 2)),
    ]
    with pytest.raises(ValueError):
        multiarc_cut_types(S20, 1)


@settings(max_examples=60, deadline=None)
@given(
    g=st.integers(min_value=0, max_value=2),
    b=st.integers(min_value=0, max_value=3),
    k=st.integers(min_value=1, max_value=3),
)
def test_curve_cuts_preserve_euler(g, b, k):
    sig = Signature(g, b)
    for pieces in multicurve_cut_types(sig, k):
        total = sum(euler_characteristic(p) for p in pieces)
        assert total == euler_characteristic(sig)


@settings(max_examples=60, deadline=None)
@given(
    g=st.integers(min_value=0, max_value=2),
    b=st.integers(min_value=1, max_value=3),
    k=st.integers(min_value=1, max_value=3),
)
def test_arc_cuts_raise_euler_by_one_each(g, b, k):
    sig = Signature(g, b)
    for pieces in multiarc_cut_types(sig, k):
        total = sum(euler_characteristic(p) for p in pieces)
        assert total == euler_characteristic(sig) + k


def test_multicurve_and_multiarc_specs_build():
    spec = k_multicurve_spec(S20, 2)
    assert k_of_graph(spec, S20) == 2
    searched = chain_search_k(spec, S20)
    assert set(searched.values()) == {3}  # literal counts, both orbits
    spec = k_multiarc_spec(S21, 2)
    assert all(o.fill is None for o in spec.orbits)
    assert all(v is None for v in chain_search_k(spec, S21).values())


def test_arc_and_curve_mixes_orbits():
    spec = arc_and_curve_spec(S21)
    labels = {o.label for o in spec.orbits}
    assert any(lbl.startswith("arc") for lbl in labels)
    assert any("curve" in lbl for lbl in labels)


# ------------------------------------------------------------ validation


def test_rejects_closed_complement_piece():
    bad = GeomGraphSpec(
        name="bad",
        orbits=(Orbit("x", 1, 0, (Signature(1, 0),)),),
        edge_rule="",
    )
    with pytest.raises(ValueError, match="no boundary"):
        k_of_graph(bad, S20)


def test_rejects_overweight_complement():
    # a (2,2) piece cannot embed in the complement of anything on (2,0)
    bad = GeomGraphSpec(
        name="bad",
        orbits=(Orbit("x", 1, 0, (Signature(2, 2),)),),
        edge_rule="",
    )
    with pytest.raises(ValueError, match="invalid complement signatures"):
        k_of_graph(bad, S20)


def test_orbit_field_invariants():
    with pytest.raises(ValueError):
        Orbit("x", 0, 0, ())
    with pytest.raises(ValueError):
        Orbit("x", 1, -1, ())
    with pytest.raises(ValueError):
        GeomGraphSpec(name="empty", orbits=(), edge_rule="")


def test_piece_inside_chain_values():
    assert piece_inside_chain(Signature(0, 2)) == 1
    assert piece_inside_chain(Signature(0, 3)) == 0
    assert piece_inside_chain(Signature(0, 1)) == 0
    assert piece_inside_chain(Signature(1, 1)) == 1
    assert piece_inside_chain(Signature(1, 2)) == 2
    assert piece_inside_chain(Signature(2, 1)) == 4


# ----------------------------------------------------------- reporting


def test_report_shape_and_roundtrip():
    spec = pants_graph_spec(S20)
    report = graph_report(spec, S20)
    assert set(report) == {
        "name",
        "sig",
        "k",
        "chain_search",
        "bound_cnf",
        "verdicts",
        "audit",
    }
    assert report["bound_cnf"]["pretty"] == "w^2"
    assert report["verdicts"][0]["graph"] == "pants graph"

    blob = spec.to_json()
    back = GeomGraphSpec.from_json(blob)
    assert back == spec
    assert back.to_json() == blob


def test_domains_report_mentions_failed_conditions():
    report = graph_report(graph_of_domains_spec(S20), S20)
    assert report["audit"]["conditions"]["bounded_vertex_size"] is False
    assert report["k"] == 3
