"""Words over domain letters and group letters, and their rewriting.

A word is a tuple of letters. A domain letter carries a (nonempty)
backend domain; a group letter carries a backend group element. The
backend is duck-typed; it must provide

  domains: is_connected, is_empty, empty_domain, contains, orthogonal,
           join, meet, complement, boundary, decompose_connected,
           complexity_of, domain_sort_key, absorber_candidates
  group:   identity, multiply, invert, act_on_domain, is_D_related,
           is_orthogonal_g, group_sort_key

Rewriting moves:

  Rm      drop an identity group letter
  Cmp     merge two adjacent group letters
  Swp     swap two adjacent orthogonal domain letters
  Jmp     (D, g) <-> (g, g^{-1}(D)) and (g, D) <-> (g(D), g)
  AbsG    (g, D) or (D, g) -> (D) when g is D-related
  AbsF    split a D-related factor off a group letter (an inverse Cmp)
          and absorb it: (g*h, D) -> (g, D) when h is D-related
  AbsSub  (D, E) or (E, D) -> (D) when E is strictly below D
  AbsEq   (D, D) -> (D)
  C       (D, D) -> word over letters strictly below D

Two words are permutation-equivalent when Rm/Cmp/Swp/Jmp (and their
inverses, notably group-letter splits) connect them; the invariant is
the ordered product of the group letters plus the trace of the domain
letters (domain letters commute exactly when their domains are
orthogonal and distinct, and group letters commute with nothing). A
word is reduced when no permutation enables an absorption; because
splits are permutations, that includes absorptions of mere factors of
a group letter. Backends expose which factors are visible through
absorbable_suffixes/absorbable_prefixes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DomainLetter:
    dom: object

    def __repr__(self):
        return f"D({self.dom!r})"


@dataclass(frozen=True)
class GroupLetter:
    g: object

    def __repr__(self):
        return f"G({self.g!r})"


Letter = DomainLetter | GroupLetter
Word = tuple


def dl(dom) -> DomainLetter:
    return DomainLetter(dom)


def gl(g) -> GroupLetter:
    return GroupLetter(g)


def word_of_domains(*doms) -> Word:
    return tuple(DomainLetter(d) for d in doms)


class PreceqUndecided(Exception):
    """The relation could not be decided within the supported search."""


# ------------------------------------------------------------------ traces


def _letters_dependent(be, l1: Letter, l2: Letter) -> bool:
    if isinstance(l1, GroupLetter) or isinstance(l2, GroupLetter):
        return True
    if l1.dom == l2.dom:
        return True  # identical letters keep their relative order
    return not be.orthogonal(l1.dom, l2.dom)


def _closure(be, letters) -> list[list[bool]]:
    """leq[i][j] for i < j: letter i must stay before letter j."""
    n = len(letters)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _letters_dependent(be, letters[i], letters[j]):
                leq[i][j] = True
    for k in range(n):
        for i in range(k):
            if leq[i][k]:
                for j in range(k + 1, n):
                    if leq[k][j]:
                        leq[i][j] = True
    return leq


def _adjacency_able(leq, i: int, j: int) -> bool:
    return not any(leq[i][k] and leq[k][j] for k in range(i + 1, j))


def _letter_sort_key(be, letter: Letter):
    if isinstance(letter, DomainLetter):
        return (0, be.domain_sort_key(letter.dom))
    return (1, be.group_sort_key(letter.g))


def _canonical_linearization(be, letters) -> list[int]:
    leq = _closure(be, letters)
    n = len(letters)
    used = [False] * n
    order: list[int] = []
    for _ in range(n):
        best = None
        for i in range(n):
            if used[i]:
                continue
            if any(not used[p] and leq[p][i] for p in range(i)):
                continue
            key = (_letter_sort_key(be, letters[i]), i)
            if best is None or key < best:
                best = key
        order.append(best[1])
        used[best[1]] = True
    return order


def _random_linearization(be, letters, rng) -> list[int]:
    leq = _closure(be, letters)
    n = len(letters)
    used = [False] * n
    order: list[int] = []
    for _ in range(n):
        ready = [
            i
            for i in range(n)
            if not used[i] and not any(not used[p] and leq[p][i] for p in range(i))
        ]
        pick = rng.choice(ready)
        order.append(pick)
        used[pick] = True
    return order


# ------------------------------------------------------------ normal forms


def left_normal_form(word: Word, be) -> Word:
    """One group letter (the ordered product) first, then domain letters."""
    suffix = be.identity
    out: list[Letter] = []
    for letter in reversed(word):
        if isinstance(letter, GroupLetter):
            suffix = be.multiply(letter.g, suffix)
        else:
            out.append(DomainLetter(be.act_on_domain(be.invert(suffix), letter.dom)))
    out.reverse()
    if suffix != be.identity:
        return (GroupLetter(suffix),) + tuple(out)
    return tuple(out)


def right_normal_form(word: Word, be) -> Word:
    prefix = be.identity
    out: list[Letter] = []
    for letter in word:
        if isinstance(letter, GroupLetter):
            prefix = be.multiply(prefix, letter.g)
        else:
            out.append(DomainLetter(be.act_on_domain(prefix, letter.dom)))
    if prefix != be.identity:
        return tuple(out) + (GroupLetter(prefix),)
    return tuple(out)


def _split_lnf(word: Word, be):
    lnf = left_normal_form(word, be)
    if lnf and isinstance(lnf[0], GroupLetter):
        return lnf[0].g, list(lnf[1:])
    return be.identity, list(lnf)


def perm_canonical(word: Word, be) -> Word:
    """Canonical representative of the permutation class of the word."""
    g, doms = _split_lnf(word, be)
    order = _canonical_linearization(be, doms)
    out = tuple(doms[i] for i in order)
    if g != be.identity:
        return (GroupLetter(g),) + out
    return out


@dataclass(frozen=True)
class ReducedClass:
    """Canonical representative plus the audit log that produced it."""

    word: Word
    audit: tuple = field(default=(), compare=False)

    def __len__(self):
        return len(self.word)

    def domain_letters(self):
        return [l for l in self.word if isinstance(l, DomainLetter)]

    def group_term(self, be):
        for l in self.word:
            if isinstance(l, GroupLetter):
                return l.g
        return be.identity


# --------------------------------------------------------------- reduced?


def _absorption_options(be, g_term, doms):
    """All (kind, data) moves available on the normal form."""
    options = []
    if g_term != be.identity:
        for idx, letter in enumerate(doms):
            if be.is_D_related(g_term, letter.dom):
                options.append(("AbsG", idx, None))
        dom_values = [l.dom for l in doms]
        for h, idx in be.absorbable_suffixes(g_term, dom_values):
            options.append(("AbsF", idx, h))
    leq = _closure(be, doms)
    for i in range(len(doms)):
        for j in range(i + 1, len(doms)):
            if not _adjacency_able(leq, i, j):
                continue
            di, dj = doms[i].dom, doms[j].dom
            if di == dj:
                options.append(("AbsEq", i, j))
            elif be.contains(di, dj) or be.contains(dj, di):
                options.append(("AbsSub", i, j))
    return options


def is_reduced(word: Word, be) -> bool:
    for letter in word:
        if isinstance(letter, GroupLetter) and letter.g == be.identity:
            return False
        if isinstance(letter, DomainLetter) and be.is_empty(letter.dom):
            return False
    if sum(isinstance(l, GroupLetter) for l in word) > 1:
        return False  # a Jmp chain brings them together, then Cmp shortens
    g, doms = _split_lnf(word, be)
    return not _absorption_options(be, g, doms)


# ------------------------------------------------------------- reduce_nc


def _option_key(be, option):
    """Deterministic pick order: whole-letter absorption, then factors,
    then the domain pair moves, position-lexicographic within a kind."""
    kind, i, extra = option
    rank = ("AbsG", "AbsF", "AbsEq", "AbsSub").index(kind)
    if extra is None:
        tail = ()
    elif isinstance(extra, int):
        tail = (extra,)
    else:
        tail = be.group_sort_key(extra)
    return (rank, i, tail)


def _merge_pair(leq, doms, i, j, merged):
    """Bring positions i < j together and replace them by one letter.

    Letters between them split into B (not forced after i: they slide in
    front) and A (forced after i: they slide behind j). Adjacency of the
    pair guarantees both slides are legal, and no B letter can be forced
    after an A letter.
    """
    before = [doms[k] for k in range(i + 1, j) if not leq[i][k]]
    after = [doms[k] for k in range(i + 1, j) if leq[i][k]]
    return doms[:i] + before + [merged] + after + doms[j + 1 :]


def reduce_nc(word: Word, be, rng=None, keep_audit: bool = False) -> ReducedClass:
    """Reduce to the canonical representative of the word's class.

    Deterministic by default; with an rng the absorption order is
    randomized (used by the confluence checks). The audit log records
    each shortening move with the ordinal before and after it.
    """
    audit: list = []

    def lg(name, before_doms, before_g, after_doms, after_g):
        if not keep_audit:
            return
        audit.append(
            (
                name,
                _ordinal_of_parts(be, before_g, before_doms),
                _ordinal_of_parts(be, after_g, after_doms),
            )
        )

    work = list(word)
    for letter in work:
        if isinstance(letter, DomainLetter) and be.is_empty(letter.dom):
            raise ValueError("empty domain letter")
    # Rm: identity letters contribute nothing
    cleaned = [
        l for l in work if not (isinstance(l, GroupLetter) and l.g == be.identity)
    ]
    if keep_audit and len(cleaned) != len(work):
        lg("Rm", work, None, cleaned, None)
    g, doms = _split_lnf(tuple(cleaned), be)

    while True:
        options = _absorption_options(be, g, doms)
        if not options:
            break
        if rng is not None:
            order = _random_linearization(be, doms, rng)
            doms = [doms[i] for i in order]
            options = _absorption_options(be, g, doms)
            kind, i, j = options[rng.randrange(len(options))]
        else:
            kind, i, j = min(options, key=lambda o: _option_key(be, o))
        old_doms, old_g = list(doms), g
        if kind == "AbsG":
            # jump g over the prefix, then absorb it into letter i
            doms = [DomainLetter(be.act_on_domain(g, l.dom)) for l in doms[:i]] + doms[i:]
            g = be.identity
        elif kind == "AbsF":
            # split the factor off, jump it over the prefix, absorb it
            doms = [DomainLetter(be.act_on_domain(j, l.dom)) for l in doms[:i]] + doms[i:]
            g = be.multiply(g, be.invert(j))
        else:
            di, dj = doms[i].dom, doms[j].dom
            if kind == "AbsEq":
                merged = doms[i]
            else:
                merged = doms[i] if be.contains(di, dj) else doms[j]
            leq = _closure(be, doms)
            doms = _merge_pair(leq, doms, i, j, merged)
        lg(kind, old_doms, old_g, doms, g)

    order = _canonical_linearization(be, doms)
    out = tuple(doms[k] for k in order)
    if g != be.identity:
        out = (GroupLetter(g),) + out
    return ReducedClass(out, tuple(audit))


def star(c1: ReducedClass, c2: ReducedClass, be) -> ReducedClass:
    return reduce_nc(c1.word + c2.word, be)


def reduce_word(word: Word, be) -> ReducedClass:
    return reduce_nc(word, be)


def invert_word(word: Word, be) -> Word:
    out = []
    for letter in reversed(word):
        if isinstance(letter, GroupLetter):
            out.append(GroupLetter(be.invert(letter.g)))
        else:
            out.append(letter)
    return tuple(out)


# ---------------------------------------------------------------- ordinal


def _ordinal_of_parts(be, g, doms):
    from .ordinals import OrdinalCNF, natural_sum, omega_power

    try:
        terms = [
            omega_power(be.complexity_of(l.dom)) for l in doms if isinstance(l, DomainLetter)
        ]
    except ValueError:
        return None
    return natural_sum(*terms) if terms else OrdinalCNF.zero()


def ordinal_of(word: Word, be):
    """Natural sum of w^{complexity} over the domain letters."""
    from .ordinals import OrdinalCNF, natural_sum, omega_power

    terms = []
    for letter in word:
        if isinstance(letter, GroupLetter):
            continue  # group letters carry ordinal zero
        if be.is_empty(letter.dom):
            raise ValueError("empty domain letter")
        if not be.is_connected(letter.dom):
            raise ValueError("non-connected domain letter")
        terms.append(omega_power(be.complexity_of(letter.dom)))
    return natural_sum(*terms) if terms else OrdinalCNF.zero()


# --------------------------------------------------------------- moves


def apply_move(word: Word, be, move: str, pos: int, replacement: Word = ()) -> Word:
    """Apply one named move at a literal position, validating its guard."""
    w = tuple(word)

    def need(cond: bool, why: str):
        if not cond:
            raise ValueError(f"move {move} rejected: {why}")

    if move == "Rm":
        need(0 <= pos < len(w), "position out of range")
        need(isinstance(w[pos], GroupLetter) and w[pos].g == be.identity, "letter is not the identity")
        return w[:pos] + w[pos + 1 :]

    need(0 <= pos < len(w) - 1, "position out of range")
    a, b = w[pos], w[pos + 1]

    if move == "Cmp":
        need(isinstance(a, GroupLetter) and isinstance(b, GroupLetter), "needs two group letters")
        return w[:pos] + (GroupLetter(be.multiply(a.g, b.g)),) + w[pos + 2 :]

    if move == "Swp":
        need(isinstance(a, DomainLetter) and isinstance(b, DomainLetter), "needs two domain letters")
        need(be.orthogonal(a.dom, b.dom), "domains are not orthogonal")
        return w[:pos] + (b, a) + w[pos + 2 :]

    if move == "Jmp":
        if isinstance(a, DomainLetter) and isinstance(b, GroupLetter):
            moved = DomainLetter(be.act_on_domain(be.invert(b.g), a.dom))
            return w[:pos] + (b, moved) + w[pos + 2 :]
        if isinstance(a, GroupLetter) and isinstance(b, DomainLetter):
            moved = DomainLetter(be.act_on_domain(a.g, b.dom))
            return w[:pos] + (moved, a) + w[pos + 2 :]
        raise ValueError("move Jmp rejected: needs a domain letter and a group letter")

    if move == "AbsG":
        if isinstance(a, GroupLetter) and isinstance(b, DomainLetter):
            need(be.is_D_related(a.g, b.dom), "group letter is not D-related")
            return w[:pos] + (b,) + w[pos + 2 :]
        if isinstance(a, DomainLetter) and isinstance(b, GroupLetter):
            need(be.is_D_related(b.g, a.dom), "group letter is not D-related")
            return w[:pos] + (a,) + w[pos + 2 :]
        raise ValueError("move AbsG rejected: needs a domain letter and a group letter")

    if move == "AbsF":
        # the factor to absorb is passed as replacement, one group letter
        need(len(replacement) == 1 and isinstance(replacement[0], GroupLetter), "factor missing")
        h = replacement[0].g
        need(h != be.identity, "factor is trivial")
        if isinstance(a, GroupLetter) and isinstance(b, DomainLetter):
            need(be.is_D_related(h, b.dom), "factor is not D-related")
            rest = be.multiply(a.g, be.invert(h))
            return w[:pos] + (GroupLetter(rest), b) + w[pos + 2 :]
        if isinstance(a, DomainLetter) and isinstance(b, GroupLetter):
            need(be.is_D_related(h, a.dom), "factor is not D-related")
            rest = be.multiply(be.invert(h), b.g)
            return w[:pos] + (a, GroupLetter(rest)) + w[pos + 2 :]
        raise ValueError("move AbsF rejected: needs a domain letter and a group letter")

    need(isinstance(a, DomainLetter) and isinstance(b, DomainLetter), "needs two domain letters")

    if move == "AbsSub":
        need(a.dom != b.dom, "domains are equal, use AbsEq")
        if be.contains(a.dom, b.dom):
            return w[:pos] + (a,) + w[pos + 2 :]
        need(be.contains(b.dom, a.dom), "domains are incomparable")
        return w[:pos] + (b,) + w[pos + 2 :]

    if move == "AbsEq":
        need(a.dom == b.dom, "domains differ")
        return w[:pos] + (a,) + w[pos + 2 :]

    if move == "C":
        need(a.dom == b.dom, "domains differ")
        for letter in replacement:
            if isinstance(letter, DomainLetter):
                need(
                    be.contains(a.dom, letter.dom) and letter.dom != a.dom,
                    "replacement letter is not strictly below the domain",
                )
            else:
                need(be.is_D_related(letter.g, a.dom), "replacement group letter is not D-related")
        return w[:pos] + tuple(replacement) + w[pos + 2 :]

    raise ValueError(f"unknown move {move!r}")


def enumerate_reducts(word: Word, be, depth: int, c_replacements=None, cap: int = 20000):
    """Words reachable by at most `depth` moves, including permutations.

    c_replacements: callable domain -> iterable of replacement words for
    the (C) move; None disables (C).
    """
    seen = {tuple(word)}
    frontier = [tuple(word)]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for s in _successors(w, be, c_replacements):
                if s not in seen:
                    if len(seen) >= cap:
                        raise RuntimeError("reduct enumeration cap exceeded")
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
        if not frontier:
            break
    return seen


def _successors(w: Word, be, c_replacements):
    out = []
    for pos, letter in enumerate(w):
        if isinstance(letter, GroupLetter) and letter.g == be.identity:
            out.append(apply_move(w, be, "Rm", pos))
    for pos in range(len(w) - 1):
        a, b = w[pos], w[pos + 1]
        if isinstance(a, GroupLetter) and isinstance(b, GroupLetter):
            out.append(apply_move(w, be, "Cmp", pos))
        elif isinstance(a, DomainLetter) and isinstance(b, DomainLetter):
            if a.dom != b.dom and be.orthogonal(a.dom, b.dom):
                out.append(apply_move(w, be, "Swp", pos))
            if a.dom == b.dom:
                out.append(apply_move(w, be, "AbsEq", pos))
                if c_replacements is not None:
                    for rep in c_replacements(a.dom):
                        out.append(apply_move(w, be, "C", pos, rep))
            elif be.contains(a.dom, b.dom) or be.contains(b.dom, a.dom):
                out.append(apply_move(w, be, "AbsSub", pos))
        else:
            out.append(apply_move(w, be, "Jmp", pos))
            g = a.g if isinstance(a, GroupLetter) else b.g
            d = a.dom if isinstance(a, DomainLetter) else b.dom
            if be.is_D_related(g, d):
                out.append(apply_move(w, be, "AbsG", pos))
            # factor absorptions against the adjacent domain; factors
            # aimed at farther letters arise as Jmp chains
            if isinstance(a, GroupLetter):
                for h, _ in be.absorbable_suffixes(a.g, [d]):
                    out.append(apply_move(w, be, "AbsF", pos, (GroupLetter(h),)))
            else:
                for h, _ in be.absorbable_prefixes(b.g, [d]):
                    out.append(apply_move(w, be, "AbsF", pos, (GroupLetter(h),)))
    return out


# ---------------------------------------------------------------- preceq


def preceq(w1: Word, w2: Word, be, budget: int = 200_000) -> bool:
    """Is w1 obtainable from w2 by replacing domain letters with words
    strictly below them (empty allowed) and permuting?

    Complete for words whose letters are all domain letters. When the
    group terms differ, a single group-letter insertion is searched; if
    that fails the relation is undecided and an exception is raised
    rather than returning a false negative.
    """
    g1, t1 = _split_lnf(tuple(w1), be)
    g2, t2 = _split_lnf(tuple(w2), be)
    if g1 == g2:
        return _align(t1, t2, be, [budget])
    if not t2:
        return False  # no slot can change the group term
    h = be.multiply(be.invert(g2), g1)
    target = perm_canonical(tuple(t1), be)
    for p in range(len(t2)):
        if not be.is_D_related(h, t2[p].dom):
            continue
        hinv = be.invert(h)
        cand = [DomainLetter(be.act_on_domain(hinv, l.dom)) for l in t2[:p]] + t2[p + 1 :]
        if perm_canonical(tuple(cand), be) == target:
            return True
    raise PreceqUndecided("differing group terms: insertion search exhausted")


def _align(t1, t2, be, budget) -> bool:
    """Exhaustive slot assignment for domain-only letter sequences."""
    target = perm_canonical(tuple(t1), be)
    n2 = len(t2)
    for r_mask in range(1 << n2):
        slots = [k for k in range(n2) if r_mask >> k & 1]
        kept = [k for k in range(n2) if not (r_mask >> k & 1)]
        if len(t1) < len(kept):
            continue
        if _assign(t1, t2, kept, slots, 0, {k: [] for k in slots}, [], be, budget, target):
            return True
    return False


def _assign(t1, t2, kept, slots, idx, slot_letters, matched, be, budget, target) -> bool:
    budget[0] -= 1
    if budget[0] < 0:
        raise PreceqUndecided("alignment search budget exceeded")
    if idx == len(t1):
        if len(matched) != len(kept):
            return False
        return _order_check(t2, kept, slots, slot_letters, matched, be, budget, target)
    letter = t1[idx]
    # match with the next unmatched kept letter of the same value
    for k in kept:
        if k in (m[1] for m in matched):
            continue
        if t2[k].dom == letter.dom:
            matched.append((idx, k))
            if _assign(t1, t2, kept, slots, idx + 1, slot_letters, matched, be, budget, target):
                return True
            matched.pop()
            break  # kept copies of an equal letter are interchangeable
    for s in slots:
        if be.contains(t2[s].dom, letter.dom) and letter.dom != t2[s].dom:
            slot_letters[s].append(letter)
            if _assign(t1, t2, kept, slots, idx + 1, slot_letters, matched, be, budget, target):
                return True
            slot_letters[s].pop()
    return False


def _order_check(t2, kept, slots, slot_letters, matched, be, budget, target) -> bool:
    # try every ordering of every slot's letters; trace equality decides
    pools = [list(itertools.permutations(slot_letters[s])) for s in slots]
    for combo in itertools.product(*pools):
        budget[0] -= 1
        if budget[0] < 0:
            raise PreceqUndecided("alignment search budget exceeded")
        assembled: list[Letter] = []
        slot_at = dict(zip(slots, combo))
        for k in range(len(t2)):
            if k in slot_at:
                assembled.extend(slot_at[k])
            else:
                assembled.append(t2[k])
        if perm_canonical(tuple(assembled), be) == target:
            return True
    return False


# ------------------------------------------------------------------- LA


def absorber_domain(cls: ReducedClass, be):
    """Join of the connected domains whose letter star-absorbs into cls."""
    dom_values = [l.dom for l in cls.word if isinstance(l, DomainLetter)]
    total = be.empty_domain()
    for cand in be.absorber_candidates(dom_values):
        test = reduce_nc((DomainLetter(cand),) + cls.word, be)
        if test == reduce_nc(cls.word, be):
            total = be.join(total, cand)
    return total


def wreath_meet(w1: Word, w2: Word, be):
    """Meet of the absorbers: LA(w1^{-1}) ^ LA(w2)."""
    left = absorber_domain(reduce_nc(invert_word(w1, be), be), be)
    right = absorber_domain(reduce_nc(tuple(w2), be), be)
    return be.meet(left, right)


# ------------------------------------------- proper absorption (helper)


def _absorbed_properly(sub: Word, host: Word, be, left: bool, cap: int = 6000) -> bool:
    """Does host absorb sub (star equals host's class) without any AbsEq
    deleting a sub letter? `left` means sub sits to the left of host."""
    host_cls = reduce_nc(tuple(host), be)
    if not sub:
        return True
    start = tuple(
        [(l, "s") for l in sub] + [(l, "h") for l in host]
        if left
        else [(l, "h") for l in host] + [(l, "s") for l in sub]
    )
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        if all(tag == "h" for _, tag in state):
            if reduce_nc(tuple(l for l, _ in state), be) == host_cls:
                return True
            continue
        letters = [l for l, _ in state]
        leq = _closure(be, letters)
        n = len(state)
        for i in range(n):
            li, ti = state[i]
            # absorb a group letter into a domain letter it relates to;
            # it jumps over the letters in between, twisting them
            if isinstance(li, GroupLetter):
                if ti != "s":
                    continue
                for j in range(n):
                    if i == j or not isinstance(state[j][0], DomainLetter):
                        continue
                    lo, hi = min(i, j), max(i, j)
                    if any(isinstance(state[k][0], GroupLetter) for k in range(lo + 1, hi)):
                        continue
                    if be.is_D_related(li.g, state[j][0].dom):
                        nxt = _tagged_absorb(state, i, j, be)
                        if nxt not in seen and len(seen) < cap:
                            seen.add(nxt)
                            stack.append(nxt)
                continue
            for j in range(i + 1, n):
                lj, tj = state[j]
                if not isinstance(lj, DomainLetter):
                    continue
                if not _adjacency_able(leq, i, j):
                    continue
                if li.dom == lj.dom:
                    continue  # AbsEq would delete a sub letter: not proper
                if be.contains(lj.dom, li.dom):
                    keep, drop = j, i
                elif be.contains(li.dom, lj.dom):
                    keep, drop = i, j
                else:
                    continue
                if state[drop][1] == "h":
                    continue  # must not consume host letters
                nxt = _tagged_merge(state, be, min(i, j), max(i, j), state[keep])
                if nxt not in seen and len(seen) < cap:
                    seen.add(nxt)
                    stack.append(nxt)
    return False


def _tagged_merge(state, be, i, j, merged):
    letters = [l for l, _ in state]
    leq = _closure(be, letters)
    before = [state[k] for k in range(i + 1, j) if not leq[i][k]]
    after = [state[k] for k in range(i + 1, j) if leq[i][k]]
    return tuple(list(state[:i]) + before + [merged] + after + list(state[j + 1 :]))


def _tagged_absorb(state, gi, dj, be):
    # drop the group letter at gi, twisting whatever it jumps over
    g = state[gi][0].g
    out = []
    for k, (letter, tag) in enumerate(state):
        if k == gi:
            continue
        if isinstance(letter, DomainLetter) and gi < k < dj:
            out.append((DomainLetter(be.act_on_domain(g, letter.dom)), tag))
        elif isinstance(letter, DomainLetter) and dj < k < gi:
            out.append((DomainLetter(be.act_on_domain(be.invert(g), letter.dom)), tag))
        else:
            out.append((letter, tag))
    return tuple(out)


def _words_commute(a: Word, b: Word, be) -> bool:
    for la in a:
        for lb in b:
            if isinstance(la, GroupLetter) and isinstance(lb, GroupLetter):
                if be.multiply(la.g, lb.g) != be.multiply(lb.g, la.g):
                    return False
            elif isinstance(la, GroupLetter):
                if not be.is_orthogonal_g(la.g, lb.dom):
                    return False
            elif isinstance(lb, GroupLetter):
                if not be.is_orthogonal_g(lb.g, la.dom):
                    return False
            else:
                if not be.orthogonal(la.dom, lb.dom):
                    return False
    return True


def _is_commuting_word(w: Word, be) -> bool:
    for x, y in itertools.combinations(range(len(w)), 2):
        if not _words_commute((w[x],), (w[y],), be):
            return False
    return True


# --------------------------------------------- symmetric decomposition


def symmetric_decomposition(u: Word, v: Word, be):
    """Split reduced u, v as u = g u1 u' w and v = w v' v1 h with the
    commuting middle w shared, u' absorbed by v1 and v' by u1.

    Returns (g, u1, uprime, w, vprime, v1, h) as words/elements.
    """
    if not is_reduced(tuple(u), be) or not is_reduced(tuple(v), be):
        raise ValueError("inputs must be reduced words")
    gu, u0 = _split_lnf(tuple(u), be)
    v_rnf = right_normal_form(tuple(v), be)
    if v_rnf and isinstance(v_rnf[-1], GroupLetter):
        hv, v0 = v_rnf[-1].g, list(v_rnf[:-1])
    else:
        hv, v0 = be.identity, list(v_rnf)

    result = _sym_rec(tuple(u0), tuple(v0), be)
    if result is None:
        raise RuntimeError("no valid symmetric decomposition found")
    u1, up, w, vp, v1 = result
    return (gu, u1, up, w, vp, v1, hv)


def _sym_conditions(u0, v0, u1, up, w, vp, v1, be) -> bool:
    if perm_canonical(u1 + up + w, be) != perm_canonical(u0, be):
        return False
    if perm_canonical(w + vp + v1, be) != perm_canonical(v0, be):
        return False
    if not _is_commuting_word(w, be):
        return False
    if not (_words_commute(up, w, be) and _words_commute(up, vp, be) and _words_commute(w, vp, be)):
        return False
    if not _absorbed_properly(up, v1, be, left=True):
        return False
    if not _absorbed_properly(vp, u1, be, left=False):
        return False
    if not is_reduced(u1 + w + v1, be):
        return False
    return True


def _sym_rec(u0: Word, v0: Word, be, depth: int = 0):
    """Returns (u1, u', w, v', v1) or None. Words here are domain-only."""
    if is_reduced(u0 + v0, be):
        cand = (u0, (), (), (), v0)
        if _sym_conditions(u0, v0, *cand, be):
            return cand
        return None

    v0_cls = reduce_nc(v0, be)
    u0_cls = reduce_nc(u0, be)
    leq_u = _closure(be, list(u0))
    leq_v = _closure(be, list(v0))

    # letters movable to the right end of u0 that v0 absorbs
    for i in range(len(u0)):
        if any(leq_u[i][j] for j in range(i + 1, len(u0))):
            continue
        d = u0[i]
        if reduce_nc((d,) + v0, be) != v0_cls:
            continue
        rest = u0[:i] + u0[i + 1 :]
        sub = _sym_rec(rest, v0, be, depth + 1)
        if sub is None:
            continue
        u1, up, w, vp, v1 = sub
        # case (a): d rides into u' and is properly absorbed by v1
        cand = (u1, up + (d,), w, vp, v1)
        if _sym_conditions(u0, v0, *cand, be):
            return cand
        # case (b): v1 starts with d up to permutation; d joins w
        leq1 = _closure(be, list(v1))
        for k in range(len(v1)):
            if v1[k].dom != d.dom:
                continue
            if any(leq1[p][k] for p in range(k)):
                continue
            cand = (u1, up, w + (d,), vp, v1[:k] + v1[k + 1 :])
            if _sym_conditions(u0, v0, *cand, be):
                return cand
    # mirror: letters movable to the front of v0 that u0 absorbs
    for j in range(len(v0)):
        if any(leq_v[p][j] for p in range(j)):
            continue
        d = v0[j]
        if reduce_nc(u0 + (d,), be) != u0_cls:
            continue
        rest = v0[:j] + v0[j + 1 :]
        sub = _sym_rec(u0, rest, be, depth + 1)
        if sub is None:
            continue
        u1, up, w, vp, v1 = sub
        cand = (u1, up, w, (d,) + vp, v1)
        if _sym_conditions(u0, v0, *cand, be):
            return cand
        leq1 = _closure(be, list(u1))
        for k in range(len(u1)):
            if u1[k].dom != d.dom:
                continue
            if any(leq1[k][p] for p in range(k + 1, len(u1))):
                continue
            cand = (u1[:k] + u1[k + 1 :], up, w + (d,), vp, v1)
            if _sym_conditions(u0, v0, *cand, be):
                return cand
    return None


# ---------------------------------------------- triangle decomposition


def _downsets(be, letters):
    n = len(letters)
    leq = _closure(be, letters)
    out = []
    for mask in range(1 << n):
        ok = True
        for j in range(n):
            if mask >> j & 1:
                for i in range(j):
                    if leq[i][j] and not (mask >> i & 1):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(mask)
    return out


def _mask_word(letters, mask) -> Word:
    return tuple(letters[i] for i in range(len(letters)) if mask >> i & 1)


def _mask_rest(letters, mask) -> Word:
    return tuple(letters[i] for i in range(len(letters)) if not (mask >> i & 1))


def triangle_decomposition(u: Word, v: Word, be):
    """Split u = u1 a^{-1} s^{-1}, v = s b v1 and w = star(u, v) = u1 x v1
    with {a, b, x} pairwise commuting, x properly right-absorbed by s,
    a properly left-absorbed by v1 and b right-absorbed by u1.

    Returns (u1, alpha, s, beta, v1, x); alpha and beta are the words a, b.
    """
    if not is_reduced(tuple(u), be) or not is_reduced(tuple(v), be):
        raise ValueError("inputs must be reduced words")
    w_cls = reduce_nc(tuple(reduce_nc(tuple(u), be).word + reduce_nc(tuple(v), be).word), be)
    sols = _triangle_solutions(tuple(u), tuple(v), w_cls.word, be)
    if not sols:
        raise RuntimeError("no triangle decomposition found")
    # canonical pick: all solutions agree up to permutation
    keyed = sorted(sols, key=lambda parts: tuple(
        tuple(_letter_sort_key(be, l) for l in perm_canonical(p, be)) for p in parts
    ))
    return keyed[0]


def _multiset(be, word: Word):
    return tuple(sorted((_letter_sort_key(be, l) for l in word)))


def _triangle_solutions(u: Word, v: Word, w: Word, be):
    uinv = invert_word(u, be)
    ui_letters = list(uinv)
    v_letters = list(v)
    w_letters = list(w)

    # w split sites, indexed by letter multiset first (cheap) so that the
    # expensive trace comparison only runs on plausible masks
    down_by_ms: dict = {}
    for m in _downsets(be, w_letters):
        down_by_ms.setdefault(_multiset(be, _mask_word(w_letters, m)), []).append(m)
    up_by_ms: dict = {}
    for m in _upsets(be, w_letters):
        up_by_ms.setdefault(_multiset(be, _mask_word(w_letters, m)), []).append(m)

    # candidate (s, alpha, u1) splits of u^{-1} = s . alpha . u1^{-1}
    u_side = []
    for m_s in _downsets(be, ui_letters):
        s = _mask_word(ui_letters, m_s)
        rest_u = list(_mask_rest(ui_letters, m_s))
        for m_a in _downsets(be, rest_u):
            alpha = _mask_word(rest_u, m_a)
            u1 = invert_word(_mask_rest(rest_u, m_a), be)
            if _multiset(be, u1) not in down_by_ms:
                continue
            u_side.append((perm_canonical(s, be), alpha, u1))
    # candidate (s, beta, v1) splits of v = s . beta . v1
    v_side: dict = {}
    for m_s in _downsets(be, v_letters):
        s_canon = perm_canonical(_mask_word(v_letters, m_s), be)
        rest_v = list(_mask_rest(v_letters, m_s))
        for m_b in _downsets(be, rest_v):
            beta = _mask_word(rest_v, m_b)
            v1 = _mask_rest(rest_v, m_b)
            if _multiset(be, v1) not in up_by_ms:
                continue
            v_side.setdefault(s_canon, []).append((beta, v1))

    sols = []
    for s_canon, alpha, u1 in u_side:
        s = tuple(s_canon)
        for beta, v1 in v_side.get(s_canon, ()):
            sols.extend(
                _close_triangle(u1, alpha, s, beta, v1, w_letters, down_by_ms, up_by_ms, be)
            )
    # dedupe by canonical form of the parts
    seen = set()
    out = []
    for parts in sols:
        key = tuple(perm_canonical(p, be) for p in parts)
        if key not in seen:
            seen.add(key)
            out.append(parts)
    return out


def _close_triangle(u1, alpha, s, beta, v1, w_letters, down_by_ms, up_by_ms, be):
    u1_canon = perm_canonical(u1, be)
    v1_canon = perm_canonical(v1, be)
    out = []
    pre_masks = [
        m
        for m in down_by_ms.get(_multiset(be, u1), ())
        if perm_canonical(_mask_word(w_letters, m), be) == u1_canon
    ]
    if not pre_masks:
        return out
    post_masks = [
        m
        for m in up_by_ms.get(_multiset(be, v1), ())
        if perm_canonical(_mask_word(w_letters, m), be) == v1_canon
    ]
    for m_pre in pre_masks:
        for m_post in post_masks:
            if m_pre & m_post:
                continue
            x = tuple(
                w_letters[i]
                for i in range(len(w_letters))
                if not (m_pre >> i & 1) and not (m_post >> i & 1)
            )
            parts = (u1, alpha, s, beta, v1, x)
            if _triangle_conditions(*parts, be):
                out.append(parts)
    return out


def _triangle_conditions(u1, alpha, s, beta, v1, x, be) -> bool:
    if not (_words_commute(alpha, beta, be) and _words_commute(alpha, x, be) and _words_commute(beta, x, be)):
        return False
    if not _absorbed_properly(x, s, be, left=False):
        return False
    if not _absorbed_properly(alpha, v1, be, left=True):
        return False
    # beta right-absorbed by u1, not necessarily properly
    if reduce_nc(u1 + beta, be) != reduce_nc(u1, be):
        return False
    return True


def _upsets(be, letters):
    n = len(letters)
    leq = _closure(be, letters)
    out = []
    for mask in range(1 << n):
        ok = True
        for i in range(n):
            if mask >> i & 1:
                for j in range(i + 1, n):
                    if leq[i][j] and not (mask >> j & 1):
                        ok = False
                        break
            if not ok:
                break
        if ok:
            out.append(mask)
    return out
