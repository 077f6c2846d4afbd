"""Projection scans, displacement ceilings, genericity witnesses.

The scan is cross-checked against a slow pure-Python triple loop at a
small bound; displacement soundness is sampled with freshly built group
elements that satisfy their words by construction.
"""

import itertools
import random

import pytest

from domword.farey import (
    BehrstockReport,
    behrstock_scan,
    displacement_K,
    generic_witness,
    sample_related,
    _floor_table,
)
from domword.slopes import (
    INFINITY,
    Slope,
    annular_distance,
    farey_distance,
    mat_apply,
    slopes_up_to,
    twist_matrix,
)
from domword.torus import T_FULL, annulus
from domword.words import dl, gl

A = INFINITY
B = Slope(0, 1)


# ------------------------------------------------------------------- scan


def test_floor_table_matches_scalar_distance():
    pool = slopes_up_to(3)
    T, valid = _floor_table(pool)
    for i, j, k in itertools.product(range(len(pool)), repeat=3):
        if valid[i, j] and valid[i, k]:
            assert abs(int(T[i, j]) - int(T[i, k])) == annular_distance(
                pool[i], pool[j], pool[k]
            )


def test_floor_table_diagonal_invalid():
    pool = slopes_up_to(2)
    _, valid = _floor_table(pool)
    for i in range(len(pool)):
        assert not valid[i, i]
        assert valid[i].sum() == len(pool) - 1


def test_scan_matches_brute_force_small():
    pool = slopes_up_to(2)
    best = -1
    for c1, c2, al in itertools.product(pool, repeat=3):
        if c1 == c2 or al in (c1, c2):
            continue
        v = min(annular_distance(c1, c2, al), annular_distance(c2, c1, al))
        best = max(best, v)
    rep = behrstock_scan(2)
    assert rep.C_emp == best == 1


def test_scan_monotone_and_small():
    values = [behrstock_scan(b).C_emp for b in (2, 3, 4, 6)]
    assert values == sorted(values)
    assert values[-1] <= 10


def test_scan_argmax_realizes_constant():
    rep = behrstock_scan(4)
    al, c1, c2 = rep.argmax
    assert al not in (c1, c2) and c1 != c2
    assert (
        min(annular_distance(c1, c2, al), annular_distance(c2, c1, al))
        == rep.C_emp
    )


def test_scan_rejects_tiny_bound():
    with pytest.raises(ValueError):
        behrstock_scan(1)


def test_scan_report_json():
    rep = behrstock_scan(2)
    data = rep.to_json()
    assert data["bound"] == 2
    assert data["C_emp"] == rep.C_emp
    assert set(data["argmax"]) == {"alpha", "core1", "core2"}


# ----------------------------------------------------------- displacement


def test_displacement_own_core_is_free():
    g = Slope(2, 1)
    assert displacement_K((dl(annulus(g)),), g) == 0


def test_displacement_single_crossing():
    assert displacement_K((dl(annulus(A)),), B) == 2


def test_displacement_accumulates_right_to_left():
    # trailing group letter moves the slope before the annular letter
    # charges for it
    g = twist_matrix(B, 3)
    word = (dl(annulus(A)), gl(g))
    moved = mat_apply(g, B)
    assert displacement_K(word, B) == 2 * farey_distance(moved, A)
    # without the group letter the charge is taken at B itself
    assert displacement_K((dl(annulus(A)),), B) == 2 * farey_distance(B, A)


def test_displacement_empty_word():
    assert displacement_K((), B) == 0


def test_displacement_rejects_full_domain():
    with pytest.raises(ValueError, match="no uniform bound"):
        displacement_K((dl(T_FULL),), B)


def test_displacement_bounds_sampled_orbits():
    # soundness holds for annular-letter words (each step h fixes the
    # letter's core, so it moves alpha at most 2 d(alpha, core)); the
    # group-letter rule is a coordinate change and carries no such claim
    rng = random.Random(5)
    letters = [dl(annulus(s)) for s in (A, B, Slope(1, 1), Slope(1, 2))]
    for _ in range(20):
        word = tuple(rng.choice(letters) for _ in range(rng.randint(1, 4)))
        alpha = rng.choice(slopes_up_to(3))
        bound = displacement_K(word, alpha)
        for _ in range(50):
            g = sample_related(word, rng)
            assert farey_distance(alpha, mat_apply(g, alpha)) <= bound


# -------------------------------------------------------------- witnesses


def test_witness_no_forbidden_words():
    assert generic_witness(annulus(A), []) == twist_matrix(A, 1)


def test_witness_avoids_other_annulus():
    g = generic_witness(annulus(A), [(dl(annulus(B)),)])
    assert g == twist_matrix(A, 1)


def test_witness_skips_matching_group_letter():
    u = (gl(twist_matrix(A, 1)),)
    assert generic_witness(annulus(A), [u]) == twist_matrix(A, 2)


def test_witness_avoids_two_letter_word():
    u = (dl(annulus(B)), dl(annulus(Slope(1, 1))))
    g = generic_witness(annulus(A), [u])
    assert g == twist_matrix(A, 1)


def test_witness_rejects_own_annulus():
    with pytest.raises(ValueError, match="not in W"):
        generic_witness(annulus(A), [(dl(annulus(A)),)])


def test_witness_rejects_full_letter():
    with pytest.raises(ValueError, match="not proper"):
        generic_witness(annulus(A), [(dl(T_FULL),)])


def test_witness_rejects_non_annular_domain():
    with pytest.raises(ValueError, match="proper annulus"):
        generic_witness(T_FULL, [])


def test_witness_budget_exhaustion():
    # forbid exactly the twists the budget can reach
    forbidden = [(gl(twist_matrix(A, n)),) for n in (1, 2, 3)]
    with pytest.raises(RuntimeError, match="budget 3"):
        generic_witness(annulus(A), forbidden, budget=3)


def test_witness_sound_against_decider():
    from domword.fragments import decide_R_w

    words = [
        (dl(annulus(B)),),
        (dl(annulus(Slope(1, 2))), dl(annulus(B))),
        (gl(twist_matrix(B, 2)), dl(annulus(Slope(2, 1)))),
    ]
    g = generic_witness(annulus(A), words)
    for u in words:
        assert decide_R_w(g, u, 200)[0] == "refuted"
