"""Fragment queries: relation decisions, strict paths, delta, gate, convexity.

Everything here runs on the torus backend, where twist decompositions
are exactly solvable for up to two distinct slopes. Expected values are
hand-computed matrices; soundness is cross-checked by replaying every
verified witness through raw matrix products (the module does this too,
but the tests repeat it independently of the Verdict plumbing).
"""

import itertools
import json
import random

import pytest

from domword.fragments import (
    DEFAULT_SLOPES,
    Fragment,
    StrictPath,
    Verdict,
    check_gate_property,
    check_weakly_convex,
    decide_R_w,
    decompose_twists,
    delta_search,
    holds_R_w,
    matrix_from_json,
    matrix_to_json,
    refine_to_strict,
)
from domword.slopes import IDENT, Slope, mat_apply, mat_inv, mat_mul, twist_matrix
from domword.torus import T_FULL, TorusBackend, annulus
from domword.words import dl, gl, invert_word

TB = TorusBackend()
A = Slope(1, 0)
B = Slope(0, 1)
LA = dl(annulus(A))
LB = dl(annulus(B))


def tw(s, n):
    return twist_matrix(s, n)


def prod(*mats):
    out = IDENT
    for m in mats:
        out = mat_mul(out, m)
    return out


@pytest.fixture
def frag():
    return Fragment(
        points={
            "e": IDENT,
            "ta3": tw(A, 3),
            "tab": prod(tw(A, 1), tw(B, 1)),
            "tb2": tw(B, 2),
        }
    )


# ------------------------------------------------------------ decompositions


def test_single_slope_decomposition_exact():
    sols, exact = decompose_twists(tw(A, 7), [A], 50)
    assert exact and sols == [(7,)]
    sols, exact = decompose_twists(tw(B, 2), [A], 50)
    assert exact and sols == []


def test_two_slope_decomposition_unique():
    h = prod(tw(A, 4), tw(B, -2))
    sols, exact = decompose_twists(h, [A, B], 50)
    assert exact and sols == [(4, -2)]


def test_two_slope_decomposition_refutes():
    # T_{1/1} fixes only 1/1, so it is no product T_A^n T_B^m unless the
    # system is consistent; the exact solver must rule it out
    h = tw(Slope(1, 1), 1)
    sols, exact = decompose_twists(h, [A, B], 50)
    assert exact and sols == []


def test_identity_and_empty():
    assert decompose_twists(IDENT, [], 50) == ([()], True)
    assert decompose_twists(tw(A, 1), [], 50) == ([], True)


def test_three_slopes_enumerated():
    h = prod(tw(A, 2), tw(B, 3), tw(A, -1))
    sols, exact = decompose_twists(h, [A, B, A], 5)
    assert not exact
    assert (2, 3, -1) in sols
    for n1, n2, n3 in sols:
        assert prod(tw(A, n1), tw(B, n2), tw(A, n3)) == h


def test_decide_merges_repeated_slopes():
    # [A, A] is one subgroup; the strict reading needs both parts nonzero
    word = (LA, LA)
    status, exps = decide_R_w(tw(A, 3), word, 50)
    assert status == "verified" and sum(exps) == 3
    status, exps = decide_R_w(tw(A, 3), word, 50, require_nonzero=True)
    assert status == "verified" and all(exps) and sum(exps) == 3


def test_decide_group_letter_folding():
    # a group letter mid-word twists the slopes after it
    g = tw(B, 1)
    word = (gl(g), LA)
    h = prod(g, tw(A, 5))
    status, exps = decide_R_w(h, word, 50)
    assert status == "verified" and exps == (5,)


def test_decide_rejects_full_domain():
    with pytest.raises(ValueError):
        decide_R_w(IDENT, (dl(T_FULL),), 50)


# ----------------------------------------------------------------- holds_R_w


def test_holds_single_twist(frag):
    v = holds_R_w(frag, "e", "ta3", (LA,))
    assert v.status == "verified"
    assert v.witness == ()


def test_holds_two_letter_midpoint(frag):
    v = holds_R_w(frag, "e", "tab", (LA, LB))
    assert v.status == "verified"
    assert v.witness == (tw(A, 1),)


def test_holds_refuted_by_moved_slope(frag):
    # T_B^2 moves the slope 1/0, so no word over A_{1/0} alone connects
    v = holds_R_w(frag, "e", "tb2", (LA,))
    assert v.status == "refuted"
    assert "moves the slope 1/0" in v.reason


def test_holds_refuted_fixed_but_no_power(frag):
    frag.points["minus"] = ((-1, 0), (0, -1))
    v = holds_R_w(frag, "e", "minus", (LA,))
    assert v.status == "refuted"
    assert "no power" in v.reason


def test_holds_unknown_within_budget():
    # three alternating letters need enumeration; the general product
    # T_A^x T_B^y T_A^z has upper-left entry 1 - xy, so [[2,3],[3,5]]
    # would force x = 1/3: never verifies, and m = 3 is never exact
    frag = Fragment(points={"e": IDENT, "g": ((2, 3), (3, 5))}, max_exp=3)
    v = holds_R_w(frag, "e", "g", (LA, LB, LA))
    assert v.status == "unknown"
    assert "up to 3" in v.reason


def test_holds_symmetry_on_samples():
    rng = random.Random(11)
    frag = Fragment(points={"e": IDENT})
    for i in range(40):
        word = tuple(
            rng.choice([LA, LB, gl(tw(A, 1)), gl(tw(B, -1))])
            for _ in range(rng.randint(1, 3))
        )
        target = IDENT
        for letter in word:
            if letter in (LA, LB):
                target = mat_mul(
                    target, tw(letter.dom.slope, rng.randint(-5, 5))
                )
            else:
                target = mat_mul(target, letter.g)
        frag.points["y"] = target
        fwd = holds_R_w(frag, "e", "y", word)
        bwd = holds_R_w(frag, "y", "e", invert_word(word, TB))
        assert fwd.status == "verified"
        assert bwd.status == "verified"


def test_verified_witness_replays(frag):
    v = holds_R_w(frag, "e", "tab", (LA, LB))
    pts = (IDENT,) + v.witness + (frag.points["tab"],)
    for (x, y), letter in zip(zip(pts, pts[1:]), (LA, LB)):
        q = mat_mul(mat_inv(x), y)
        assert TB.is_D_related(q, letter.dom)


# ------------------------------------------------------------- strict paths


def test_refine_keeps_strict_path():
    frag = Fragment(points={})
    path = (IDENT, tw(A, 2), prod(tw(A, 2), tw(B, 3)))
    out = refine_to_strict(frag, path, (LA, LB))
    assert out.word == (LA, LB)
    assert out.points == path
    assert out.flags == []


def test_refine_collapses_repeated_point():
    frag = Fragment(points={})
    path = (IDENT, IDENT, tw(B, 3))
    out = refine_to_strict(frag, path, (LA, LB))
    assert out.word == (LB,)
    assert out.points == (IDENT, tw(B, 3))


def test_refine_merges_same_domain_pair():
    frag = Fragment(points={})
    path = (IDENT, tw(A, 2), tw(A, 5))
    out = refine_to_strict(frag, path, (LA, LA))
    assert out.word == (LA,)
    assert out.points == (IDENT, tw(A, 5))


def test_refine_cancels_round_trip():
    frag = Fragment(points={})
    path = (IDENT, tw(A, 2), IDENT)
    out = refine_to_strict(frag, path, (LA, LA))
    assert out.word == ()
    assert out.points == (IDENT,)


def test_refine_drops_identity_group_letter():
    frag = Fragment(points={})
    path = (IDENT, IDENT, tw(A, 2))
    out = refine_to_strict(frag, path, (gl(IDENT), LA))
    assert out.word == (LA,)


def test_refine_rejects_wrong_path():
    frag = Fragment(points={})
    with pytest.raises(ValueError, match="step 0"):
        refine_to_strict(frag, (IDENT, tw(B, 1)), (LA,))
    with pytest.raises(ValueError, match="does not fit"):
        refine_to_strict(frag, (IDENT,), (LA,))


def test_refine_flags_full_domain_step():
    frag = Fragment(points={})
    out = refine_to_strict(frag, (IDENT, tw(A, 1)), (dl(T_FULL),))
    assert out.word == (dl(T_FULL),)
    assert any("not graded" in f for f in out.flags)


# ------------------------------------------------------------- delta search


def test_delta_single_twist(frag):
    res = delta_search(frag, "e", "ta3")
    assert res.status == "verified"
    assert res.cls.word == (LA,)


def test_delta_two_letters_and_no_shorter(frag):
    res = delta_search(frag, "e", "tab")
    assert res.status == "verified"
    assert [l.dom.slope for l in res.cls.word] == [A, B]
    for letter in (LA, LB):
        assert holds_R_w(frag, "e", "tab", (letter,)).status == "refuted"


def test_delta_same_point(frag):
    res = delta_search(frag, "e", "e")
    assert res.status == "verified"
    assert res.cls.word == ()


def test_delta_kernel_slope_found_off_pool():
    # the parabolic's own slope joins the pool even when undeclared
    s = Slope(2, 3)
    frag = Fragment(points={"e": IDENT, "g": tw(s, 4)})
    res = delta_search(frag, "e", "g")
    assert res.status == "verified"
    assert res.cls.word == (dl(annulus(s)),)


def test_delta_unknown_when_nothing_fits():
    # rotation-like element: not a twist product over the basis pool at
    # any bounded length (its trace is 0, twist products here have
    # nonzero trace patterns the solver refutes or misses)
    frag = Fragment(points={"e": IDENT, "r": ((0, 1), (-1, 0))}, max_len=1)
    res = delta_search(frag, "e", "r")
    assert res.status == "unknown"
    assert "length <= 1" in res.reason


def test_delta_strictness_excludes_padded_solutions(frag):
    # T_A^3 satisfies R over [A, B] via exponents (3, 0), but delta wants
    # every step strict, so only the one-letter class comes back
    status, _ = decide_R_w(frag.points["ta3"], (LA, LB), 50)
    assert status == "verified"
    status, _ = decide_R_w(frag.points["ta3"], (LA, LB), 50, require_nonzero=True)
    assert status == "refuted"
    res = delta_search(frag, "e", "ta3")
    assert res.cls.word == (LA,)


def test_delta_conjugation_alias_reported_ambiguous():
    # pools holding a slope orbit pair alias twist powers by length-3
    # conjugation words; the search must surface that, not pick one
    sigma = Slope(-3, 1)
    tau = Slope(-2, 1)
    assert mat_apply(tw(sigma, 1), tau) == A
    frag = Fragment(points={"e": IDENT, "x": tw(A, 3)})
    res = delta_search(frag, "e", "x", pool=[A, sigma, tau])
    assert res.status == "ambiguous"
    assert "antichain" in res.reason


def test_delta_uniqueness_over_declared_pool():
    # exponent-generic fragment over the default basis pool: every pair
    # gets at most one strictly verified class (ambiguous never appears)
    pts = {
        "e": IDENT,
        "p": tw(A, 7),
        "q": tw(B, -4),
        "r": prod(tw(A, 3), tw(B, 5)),
        "s": prod(tw(B, 2), tw(A, -6)),
    }
    frag = Fragment(points=pts)
    for x in pts:
        for y in pts:
            res = delta_search(frag, x, y)
            assert res.status in ("verified", "unknown"), (x, y, res.reason)


# ------------------------------------------------------------ gate property


def test_gate_verified_beyond_budget():
    # b = T_B^60 sits past the exponent budget, so the bounded
    # precondition accepts it as one step away, and both gate equalities
    # come back as matches
    frag = Fragment(
        points={"e": IDENT, "ta": tw(A, 1), "b": tw(B, 60)}, max_exp=50
    )
    rep = check_gate_property(frag, ["e", "ta"], "e", annulus(B), "b")
    assert rep.status == "verified"
    assert rep.per_point == {"e": "match", "ta": "match"}
    assert rep.budgets == {"max_len": 3, "max_exp": 50}


def test_gate_singleton():
    frag = Fragment(points={"e": IDENT, "b": tw(B, 60)})
    rep = check_gate_property(frag, ["e"], "e", annulus(B), "b")
    assert rep.status == "verified"
    assert rep.per_point == {"e": "match"}


def test_gate_precondition_refuted_names_witness():
    frag = Fragment(points={"e": IDENT, "ta": tw(A, 1), "b": tw(B, 5)})
    rep = check_gate_property(frag, ["e", "ta"], "e", annulus(B), "b")
    assert rep.status == "refuted"
    assert "twist^-5 about 0/1" in rep.reason
    assert "'e'" in rep.reason


def test_gate_rejects_unrelated_b():
    frag = Fragment(points={"e": IDENT, "b": tw(A, 60)})
    rep = check_gate_property(frag, ["e"], "e", annulus(B), "b")
    assert rep.status == "refuted"
    assert "not related" in rep.reason


def test_gate_requires_annular_domain():
    frag = Fragment(points={"e": IDENT})
    with pytest.raises(ValueError):
        check_gate_property(frag, ["e"], "e", T_FULL, "e")


# ------------------------------------------------------------ weak convexity


def test_convex_two_points_single_letter():
    frag = Fragment(points={"p": IDENT, "q": tw(A, 4)})
    rep = check_weakly_convex(frag, ["p", "q"])
    assert rep.status == "verified"
    assert set(rep.per_pair.values()) == {"verified"}


def test_convex_missing_midpoint():
    frag = Fragment(
        points={"p": IDENT, "r": prod(tw(A, 2), tw(B, 3))}
    )
    rep = check_weakly_convex(frag, ["p", "r"])
    assert rep.status == "unknown"
    assert "no interior witness" in rep.per_pair["p->r"]


def test_convex_ball_of_radius_two():
    # products T_A^i T_B^j with small exponents plus the generators:
    # every pair whose delta has length <= 2 threads through the ball.
    # Four pairs have differences like T_B^2 T_A^2 T_B^2, which equals
    # T_A^-1 T_B^-4 T_A^-1: two incomparable length-3 classes, so delta
    # is honestly ambiguous there and the pair stays unknown
    pts = {"e": IDENT}
    for i in (-2, 2):
        pts[f"a{i}"] = tw(A, i)
        pts[f"b{i}"] = tw(B, i)
    for i in (-2, 2):
        for j in (-2, 2):
            pts[f"m{i}{j}"] = prod(tw(A, i), tw(B, j))
    frag = Fragment(points=pts)
    rep = check_weakly_convex(frag, list(pts))
    assert "orbit" in rep.note
    for x, y in itertools.permutations(pts, 2):
        d = delta_search(frag, x, y)
        if d.status == "verified" and len(d.cls.word) <= 2:
            assert rep.per_pair[f"{x}->{y}"] == "verified"
    outcomes = sorted(rep.per_pair.values())
    assert outcomes.count("verified") == 68
    assert sum("ambiguous" in v for v in outcomes) == 4


def test_convex_report_carries_budgets():
    frag = Fragment(points={"p": IDENT, "q": tw(A, 1)}, max_len=2, max_exp=9)
    rep = check_weakly_convex(frag, ["p", "q"])
    assert rep.to_json()["budgets"] == {"max_len": 2, "max_exp": 9}


# -------------------------------------------------- serialization and misc


def test_fragment_json_round_trip(frag):
    data = json.loads(json.dumps(frag.to_json()))
    back = Fragment.from_json(data)
    assert back == frag
    assert back.slopes == DEFAULT_SLOPES


def test_fragment_json_custom_budgets():
    frag = Fragment(
        points={"e": IDENT}, max_len=2, max_exp=7, slopes=(A, Slope(1, 1))
    )
    back = Fragment.from_json(frag.to_json())
    assert back == frag


def test_matrix_json_round_trip():
    m = tw(Slope(3, 5), -2)
    assert matrix_from_json(json.loads(json.dumps(matrix_to_json(m)))) == m


def test_verdict_json_shapes(frag):
    v = holds_R_w(frag, "e", "tab", (LA, LB))
    data = v.to_json()
    assert data["status"] == "verified"
    assert data["witness"] == [matrix_to_json(tw(A, 1))]
    r = holds_R_w(frag, "e", "tb2", (LA,))
    assert r.to_json() == {"status": "refuted", "reason": r.reason}


def test_strict_path_json(frag):
    out = refine_to_strict(frag, (IDENT, tw(A, 2)), (LA,))
    data = out.to_json()
    assert data["word"] == [{"annulus": "1/0"}]
    assert data["points"] == [matrix_to_json(IDENT), matrix_to_json(tw(A, 2))]
