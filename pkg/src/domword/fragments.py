"""Finite fragments of the relational structure over the torus group.

A fragment is a finite set of named points labeled by SL(2, Z) matrices,
together with search budgets: L caps candidate word length, E caps any
twist exponent that has to be enumerated rather than solved for. The
letter relations are decided exactly where linear algebra allows it
(words with at most two distinct twist subgroups reduce to an integer
linear system since every twist generator is I plus a nilpotent), and by
bounded exponent search beyond that. Verdicts are three-valued:

* verified results are replayed through plain matrix arithmetic before
  being reported, so they are sound whatever the search did;
* refuted results carry an exact argument (a moved slope, or an
  inconsistent linear system over the full integer lattice);
* everything else is unknown, tagged with the budget that ran out.

Strictness between concrete matrices needs care: the difference of any
two labeled points is itself a group certificate, so a step that is
generic in the saturated sense never exists inside a fragment. Reports
therefore grade strictness to the declared budgets. An annular step
counts as strict when its twist exponent is nonzero, and pure group
element factorizations of a step are not treated as refinement triggers;
only structurally smaller words (here: the empty word, via repeated
points or collapsing same-domain pairs) force a refinement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .slopes import (
    IDENT,
    Matrix,
    Slope,
    mat_apply,
    mat_inv,
    mat_mul,
    twist_matrix,
    twist_nilpotent,
)
from .torus import TorusBackend, TorusDomain, annulus
from .words import (
    DomainLetter,
    GroupLetter,
    PreceqUndecided,
    ReducedClass,
    Word,
    dl,
    is_reduced,
    preceq,
    reduce_nc,
    star,
)

TB = TorusBackend()

_OPS_CAP = 400_000  # hard ceiling on enumerated linear solves per query


def matrix_to_json(m: Matrix) -> list:
    return [list(m[0]), list(m[1])]


def matrix_from_json(j) -> Matrix:
    return ((int(j[0][0]), int(j[0][1])), (int(j[1][0]), int(j[1][1])))


def letter_to_json(letter) -> dict:
    if isinstance(letter, GroupLetter):
        return {"g": matrix_to_json(letter.g)}
    d = letter.dom
    if d.rank == 1:
        return {"annulus": str(d.slope)}
    return {"rank": d.rank}


@dataclass(frozen=True)
class Verdict:
    status: str  # "verified" | "refuted" | "unknown"
    witness: tuple | None = None  # verified: the intermediate point labels
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = [matrix_to_json(m) for m in self.witness]
        if self.reason:
            out["reason"] = self.reason
        return out


# ------------------------------------------------------ twist decomposition


def _vec(m: Matrix):
    return (m[0][0], m[0][1], m[1][0], m[1][1])


def _single_exponent(h: Matrix, s: Slope):
    """The unique n with h = twist(s)^n, or None."""
    nv = _vec(twist_nilpotent(s))
    dv = _vec(((h[0][0] - 1, h[0][1]), (h[1][0], h[1][1] - 1)))
    k = next(i for i in range(4) if nv[i])
    if dv[k] % nv[k]:
        return None
    n = dv[k] // nv[k]
    return n if all(dv[i] == n * nv[i] for i in range(4)) else None


def _solve_pair(c1, c2, rhs):
    """Solve [c1 c2] x = rhs exactly over Q (4 equations, 2 unknowns).

    Returns ("unique", (x1, x2)) with Fractions, ("none", None), or
    ("line", None) when the system is consistent but underdetermined.
    """
    rows = [
        [Fraction(c1[i]), Fraction(c2[i]), Fraction(rhs[i])] for i in range(4)
    ]
    rank = 0
    for col in range(2):
        piv = next((i for i in range(rank, 4) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [x / lead for x in rows[rank]]
        for i in range(4):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    if any(not r[0] and not r[1] and r[2] for r in rows):
        return "none", None
    if rank < 2:
        return "line", None
    sol = [None, None]
    for r in rows[:2]:
        idx = 0 if r[0] else 1
        sol[idx] = r[2]
    return "unique", tuple(sol)


def decompose_twists(h: Matrix, slopes, E: int, _ops=None):
    """Integer tuples (n1..nk) with h = T1^n1 ... Tk^nk, Ti the slope twists.

    Returns (solutions, exact). When exact is True the list is complete
    over all of Z^k; otherwise enumerated positions only ran over
    |n| <= E and absence proves nothing.
    """
    if _ops is None:
        _ops = [_OPS_CAP]
    slopes = tuple(slopes)
    m = len(slopes)
    if m == 0:
        return ([()] if h == IDENT else [], True)
    if m == 1:
        n = _single_exponent(h, slopes[0])
        return ([(n,)] if n is not None else [], True)
    if m == 2 and slopes[0] != slopes[1]:
        # (I - n N1) h = I + m N2 rearranges to h - I = n*(N1 h) + m*N2
        n1 = twist_nilpotent(slopes[0])
        n2 = twist_nilpotent(slopes[1])
        diff = ((h[0][0] - 1, h[0][1]), (h[1][0], h[1][1] - 1))
        kind, sol = _solve_pair(_vec(mat_mul(n1, h)), _vec(n2), _vec(diff))
        if kind == "none":
            return ([], True)
        if kind == "unique":
            if all(x.denominator == 1 for x in sol):
                pair = (int(sol[0]), int(sol[1]))
                return ([pair], True)
            return ([], True)
        # degenerate direction: fall through to the strip enumeration
    sols = []
    for n1 in range(-E, E + 1):
        if _ops[0] <= 0:
            break
        _ops[0] -= 1
        rest = mat_mul(twist_matrix(slopes[0], -n1), h)
        sub, _ = decompose_twists(rest, slopes[1:], E, _ops)
        sols.extend((n1,) + t for t in sub)
    return (sols, False)


def _split_nonzero(n: int, parts: int):
    """n as a sum of `parts` nonzero integers, or None."""
    if parts == 1:
        return [n] if n else None
    for first in (1, -1):
        rest = _split_nonzero(n - first, parts - 1)
        if rest is not None:
            return [first] + rest
    return None


def _effective_slopes(letters):
    """Push group letters right: conjugated slopes plus the total prefix."""
    prefix = IDENT
    slopes, positions = [], []
    for i, letter in enumerate(letters):
        if isinstance(letter, GroupLetter):
            prefix = mat_mul(prefix, letter.g)
        else:
            d = letter.dom
            if d.rank != 1:
                raise ValueError("word letters must be proper nonempty domains")
            slopes.append(mat_apply(prefix, d.slope))
            positions.append(i)
    return slopes, prefix, positions


def decide_R_w(h: Matrix, letters: Word, E: int, require_nonzero: bool = False):
    """Decide h in G_d1 * ... * G_dk. Returns (status, exponents-or-None).

    `require_nonzero` asks every domain step to carry a nonzero twist,
    the budget-relative reading of a strict step.
    """
    slopes, prefix, _ = _effective_slopes(letters)
    target = mat_mul(h, mat_inv(prefix))
    # adjacent equal slopes span one subgroup; merge them for the solver
    merged, counts = [], []
    for s in slopes:
        if merged and merged[-1] == s:
            counts[-1] += 1
        else:
            merged.append(s)
            counts.append(1)
    sols, exact = decompose_twists(target, merged, E)
    for sol in sols:
        expanded = []
        ok = True
        for n, c in zip(sol, counts):
            if c == 1:
                if require_nonzero and n == 0:
                    ok = False
                    break
                expanded.append(n)
            else:
                part = _split_nonzero(n, c) if require_nonzero else [n] + [0] * (c - 1)
                if part is None:
                    ok = False
                    break
                expanded.extend(part)
        if ok:
            return "verified", tuple(expanded)
    # the solution list is complete when exact, and _split_nonzero decides
    # nonzero splittability outright, so exhaustion is a refutation
    if exact:
        return "refuted", None
    return "unknown", None


# ------------------------------------------------------------------ fragment


DEFAULT_SLOPES = (Slope(1, 0), Slope(0, 1))


@dataclass
class Fragment:
    """Named matrix-labeled points with (L, E) search budgets.

    `slopes` is the declared annular alphabet and belongs to the budget
    data: twist conjugation (T_s T_t^n T_s^-1 is the n-th twist about
    s.t) aliases every twist power by longer words as soon as the pool
    contains a slope together with one of its images, so uniqueness of
    least classes is only meaningful relative to the declared pool. The
    default basis pair is closed under no nontrivial relation of that
    shape.
    """

    points: dict
    max_len: int = 3
    max_exp: int = 50
    slopes: tuple = DEFAULT_SLOPES

    def label(self, x) -> Matrix:
        if isinstance(x, str):
            return self.points[x]
        return x

    def to_json(self) -> dict:
        return {
            "points": {k: matrix_to_json(v) for k, v in self.points.items()},
            "budgets": {"max_len": self.max_len, "max_exp": self.max_exp},
            "slopes": [str(s) for s in self.slopes],
        }

    @classmethod
    def from_json(cls, data) -> "Fragment":
        budgets = data.get("budgets", {})
        slopes = tuple(
            Slope.parse(s) for s in data.get("slopes", [])
        ) or DEFAULT_SLOPES
        return cls(
            points={k: matrix_from_json(v) for k, v in data["points"].items()},
            max_len=int(budgets.get("max_len", 3)),
            max_exp=int(budgets.get("max_exp", 50)),
            slopes=slopes,
        )


def _difference(frag: Fragment, x, y) -> Matrix:
    return mat_mul(mat_inv(frag.label(x)), frag.label(y))


def holds_R_w(frag: Fragment, x, y, word: Word) -> Verdict:
    """Does the relation of type `word` link x to y?

    Verified verdicts carry the interior points of a witnessing path and
    have been replayed through plain multiplication. Refuted verdicts
    are exact; for a single annular letter the reason names the slope
    obstruction.
    """
    h = _difference(frag, x, y)
    status, exponents = decide_R_w(h, word, frag.max_exp)
    if status == "verified":
        path = [frag.label(x)]
        it = iter(exponents)
        for letter in word:
            step = letter.g if isinstance(letter, GroupLetter) else twist_matrix(
                letter.dom.slope, next(it)
            )
            path.append(mat_mul(path[-1], step))
        assert path[-1] == frag.label(y), "witness replay failed"
        return Verdict("verified", witness=tuple(path[1:-1]))
    if status == "refuted":
        reason = "no integer solution to the exact twist system"
        if len(word) == 1 and isinstance(word[0], DomainLetter):
            s = word[0].dom.slope
            if mat_apply(h, s) != s:
                reason = f"the difference moves the slope {s}"
            else:
                reason = f"the difference fixes {s} but is no power of its twist"
        return Verdict("refuted", reason=reason)
    return Verdict(
        "unknown", reason=f"no decomposition found with exponents up to {frag.max_exp}"
    )


# ------------------------------------------------------------ strict paths


@dataclass
class StrictPath:
    word: Word
    points: tuple  # matrices, len(word) + 1
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "word": [letter_to_json(l) for l in self.word],
            "points": [matrix_to_json(p) for p in self.points],
            "flags": list(self.flags),
        }


def refine_to_strict(frag: Fragment, path, word: Word) -> StrictPath:
    """Straighten a relation path into a strict one.

    Deletes repeated points behind annular letters, drops identity group
    letters, and collapses same-domain letter pairs (keeping the outer
    points when the composite step is strict, cancelling both letters
    when the endpoints coincide). Steps over the full domain cannot be
    graded within budget and are flagged instead.
    """
    pts = [frag.label(p) for p in path]
    letters = list(word)
    if len(pts) != len(letters) + 1:
        raise ValueError("path length does not fit the word")
    for i, letter in enumerate(letters):
        q = mat_mul(mat_inv(pts[i]), pts[i + 1])
        if isinstance(letter, GroupLetter):
            if q != letter.g:
                raise ValueError(f"not a path of the given type at step {i}")
        elif not TB.is_D_related(q, letter.dom):
            raise ValueError(f"not a path of the given type at step {i}")

    flags = []
    changed = True
    while changed:
        changed = False
        for i, letter in enumerate(letters):
            if isinstance(letter, GroupLetter):
                if letter.g == IDENT:
                    del letters[i], pts[i + 1]
                    changed = True
                    break
                continue
            if letter.dom.rank == 1 and pts[i] == pts[i + 1]:
                # the empty word witnesses the step, so it was not strict
                del letters[i], pts[i + 1]
                changed = True
                break
            if (
                i + 1 < len(letters)
                and letters[i + 1] == letter
                and isinstance(letter, DomainLetter)
            ):
                if pts[i] == pts[i + 2]:
                    # cancel the pair outright
                    del letters[i : i + 2], pts[i + 1 : i + 3]
                else:
                    # composite step is still one twist about the same core
                    del letters[i + 1], pts[i + 1]
                changed = True
                break
    for i, letter in enumerate(letters):
        if isinstance(letter, DomainLetter) and letter.dom.rank == 2:
            flags.append(f"step {i}: strictness over the full domain not graded")
    return StrictPath(tuple(letters), tuple(pts), flags)


# ------------------------------------------------------------- delta search


@dataclass
class DeltaResult:
    status: str  # "verified" | "unknown" | "ambiguous"
    cls: ReducedClass | None = None
    reason: str | None = None
    checked: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "checked": self.checked}
        if self.cls is not None:
            out["word"] = [letter_to_json(l) for l in self.cls.word]
        if self.reason:
            out["reason"] = self.reason
        return out


def _fixed_slope(h: Matrix) -> Slope | None:
    """Primitive invariant slope of a parabolic, if any."""
    d = ((h[0][0] - 1, h[0][1]), (h[1][0], h[1][1] - 1))
    if d == ((0, 0), (0, 0)):
        return None
    # kernel vector of h - I
    for p, q in [(d[0][1], -d[0][0]), (d[1][1], -d[1][0])]:
        if (p, q) != (0, 0):
            if (
                d[0][0] * p + d[0][1] * q == 0
                and d[1][0] * p + d[1][1] * q == 0
            ):
                return Slope(p, q)
    return None


def _verified_candidates(h: Matrix, slopes, frag: Fragment):
    verified = []
    checked = 0
    for length in range(1, frag.max_len + 1):
        for combo in itertools.product(slopes, repeat=length):
            word = tuple(dl(annulus(s)) for s in combo)
            if not is_reduced(word, TB):
                continue
            checked += 1
            status, _ = decide_R_w(h, word, frag.max_exp, require_nonzero=True)
            if status == "verified":
                cls = reduce_nc(word, TB)
                if cls not in verified:
                    verified.append(cls)
    return verified, checked


def delta_search(frag: Fragment, a, b, pool=None) -> DeltaResult:
    """Least verified reduced word linking a to b, annular candidates only.

    Candidates are reduced words over annular letters (and nothing else:
    a bare group letter would verify for every pair and crowd out the
    informative classes). Verification asks every step for a nonzero
    twist. Candidates are drawn from the declared slope pool; only when
    nothing over the pool verifies and the difference is parabolic does
    its invariant slope join as a fallback alphabet, so a pool word
    never competes with its own conjugates. The least verified class is
    returned only when it sits below every other verified candidate,
    otherwise the antichain is reported as ambiguous.
    """
    h = _difference(frag, a, b)
    if h == IDENT:
        return DeltaResult("verified", reduce_nc((), TB), checked=1)
    slopes = list(frag.slopes if pool is None else pool)
    verified, checked = _verified_candidates(h, slopes, frag)
    if not verified:
        fix = _fixed_slope(h)
        if fix is not None and fix not in slopes:
            verified, more = _verified_candidates(h, slopes + [fix], frag)
            checked += more
    if not verified:
        return DeltaResult(
            "unknown",
            reason=f"no candidate of length <= {frag.max_len} verified",
            checked=checked,
        )
    least = []
    for cand in verified:
        try:
            if all(preceq(cand.word, other.word, TB) for other in verified):
                least.append(cand)
        except PreceqUndecided:
            continue
    if len(least) == 1:
        return DeltaResult("verified", least[0], checked=checked)
    return DeltaResult(
        "ambiguous",
        reason="verified candidates form an antichain: "
        + "; ".join(str(list(c.word)) for c in verified),
        checked=checked,
    )


# ----------------------------------------------------------- gate property


@dataclass
class GateReport:
    status: str  # "verified" | "refuted" | "unknown"
    per_point: dict = field(default_factory=dict)
    reason: str | None = None
    budgets: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "per_point": dict(self.per_point),
            "budgets": dict(self.budgets),
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def check_gate_property(
    frag: Fragment, A, a0, D: TorusDomain, b, pool=None
) -> GateReport:
    """Check that D gates every class from b into A through the basepoint.

    Precondition (checked to budget): b is D-related to a0, and no point
    of A is linked to b by a word over letters inside D; for an annular
    D those are exactly the twist powers about its core, so the check
    runs over exponents up to the budget. When it fails, the report
    names the witnessing word and point. The main check compares
    delta(b, a) with [D] * delta(a0, a) pointwise.
    """
    if D.rank != 1:
        raise ValueError("the gate domain must be annular")
    budgets = {"max_len": frag.max_len, "max_exp": frag.max_exp}
    if not TB.is_D_related(_difference(frag, a0, b), D):
        return GateReport(
            "refuted", reason="b is not related to the basepoint over the gate domain",
            budgets=budgets,
        )
    for a in A:
        q = _difference(frag, b, a)
        if q == IDENT:
            return GateReport(
                "refuted",
                reason=f"precondition fails: the empty word links b to {a!r}",
                budgets=budgets,
            )
        k = _single_exponent(q, D.slope)
        if k is not None and abs(k) <= frag.max_exp:
            return GateReport(
                "refuted",
                reason=(
                    f"precondition fails: twist^{k} about {D.slope} links b to {a!r}"
                ),
                budgets=budgets,
            )
    gate = reduce_nc((dl(D),), TB)
    per_point = {}
    overall = "verified"
    for a in A:
        lhs = delta_search(frag, b, a, pool)
        rhs_inner = delta_search(frag, a0, a, pool)
        if lhs.status != "verified" or rhs_inner.status != "verified":
            per_point[str(a)] = "unknown"
            if overall == "verified":
                overall = "unknown"
            continue
        rhs = star(gate, rhs_inner.cls, TB)
        if lhs.cls == rhs:
            per_point[str(a)] = "match"
        else:
            per_point[str(a)] = "mismatch"
            overall = "refuted"
    return GateReport(overall, per_point=per_point, budgets=budgets)


# ----------------------------------------------------------- weak convexity


@dataclass
class ConvexityReport:
    status: str  # "verified" | "unknown"
    per_pair: dict = field(default_factory=dict)
    note: str = "orbit closure replaced by the declared point set"
    budgets: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "per_pair": dict(self.per_pair),
            "note": self.note,
            "budgets": dict(self.budgets),
        }


def _strict_step_ok(x: Matrix, y: Matrix, letter) -> bool:
    q = mat_mul(mat_inv(x), y)
    if isinstance(letter, GroupLetter):
        return q == letter.g
    if letter.dom.rank != 1:
        return False
    return q != IDENT and TB.is_D_related(q, letter.dom)


def check_weakly_convex(frag: Fragment, A, pool=None) -> ConvexityReport:
    """Search strict delta-type sequences inside A for every point pair.

    A is the declared (finite) stand-in for an orbit-closed set; every
    report carries that caveat. A pair verifies when the word found by
    delta_search threads through interior points of A with every step
    strict to budget.
    """
    labels = [(str(a), frag.label(a)) for a in A]
    per_pair = {}
    overall = "verified"
    for (na, la), (nb, lb) in itertools.permutations(labels, 2):
        key = f"{na}->{nb}"
        d = delta_search(frag, la, lb, pool)
        if d.status != "verified":
            per_pair[key] = f"unknown: delta {d.status}"
            overall = "unknown"
            continue
        word = d.cls.word
        if not word:
            per_pair[key] = "verified"
            continue
        interior = len(word) - 1
        found = False
        for combo in itertools.product([l for _, l in labels], repeat=interior):
            pts = [la, *combo, lb]
            if all(
                _strict_step_ok(pts[i], pts[i + 1], word[i])
                for i in range(len(word))
            ):
                found = True
                break
        if found:
            per_pair[key] = "verified"
        else:
            per_pair[key] = "unknown: no interior witness in A"
            overall = "unknown"
    return ConvexityReport(
        overall,
        per_pair=per_pair,
        budgets={"max_len": frag.max_len, "max_exp": frag.max_exp},
    )
