"""Rank bounds and refined-order chain certificates.

The partial order on words compares by replacing domain letters with
words over strictly smaller domains. Its refined variant r-steps a word
w ~ v0.D down to v0.v1 where v1 uses only domain letters strictly below
D that clear the boundary of D. Chains that descend through the refined
order certify lower bounds on the foundation rank of a word, and the
theory-level rank of a surface is omega to its chain complexity.

Only certificates are produced here, never the foundation rank itself:
the order branches infinitely, so we build explicit descending chains
and verify every step against the definition.
"""

from __future__ import annotations

import itertools
import math

from .ordinals import OrdinalCNF, omega_power
from .surfaces import Signature, max_chain_length
from .words import DomainLetter, Word, is_reduced, perm_canonical


def morley_rank_theory(sig: Signature) -> OrdinalCNF:
    """Rank of the ambient theory for the full domain family, w^(3g+b-2)."""
    return omega_power(max_chain_length(sig))


def morley_upper_bound(sig: Signature, r: int) -> OrdinalCNF:
    """Rank ceiling for r-tuples: binomial(r+1, 2) * w^(3g+b-2)."""
    if r < 1:
        raise ValueError("tuple length must be at least 1")
    return omega_power(max_chain_length(sig), coeff=math.comb(r + 1, 2))


# ---------------------------------------------------------- refined order


def _movable_last(word: Word, be, i: int) -> bool:
    # letter i can be the final letter of some permutation of the word
    rest = word[:i] + word[i + 1 :]
    return perm_canonical(rest + (word[i],), be) == perm_canonical(word, be)


def _multiset_minus(whole, part):
    """Letters of `whole` left over after removing `part`, or None."""
    left = list(whole)
    for letter in part:
        try:
            left.remove(letter)
        except ValueError:
            return None
    return left


def is_refined_step(v: Word, w: Word, be) -> bool:
    """Does v sit one refined-order step below w?

    True when w ~ v0.D and v ~ v0.v1 for a domain letter D, where the
    letters of v1 are domains strictly below D, none inside boundary(D).
    """
    for i, letter in enumerate(w):
        if not isinstance(letter, DomainLetter):
            continue
        if not _movable_last(w, be, i):
            continue
        v0 = w[:i] + w[i + 1 :]
        extras = _multiset_minus(v, v0)
        if extras is None:
            continue
        d = letter.dom
        bnd = be.boundary(d)
        if not all(
            isinstance(x, DomainLetter)
            and x.dom != d
            and be.contains(d, x.dom)
            and not be.contains(bnd, x.dom)
            for x in extras
        ):
            continue
        target = perm_canonical(v, be)
        seen = set()
        for tail in itertools.permutations(extras):
            if tail in seen:
                continue
            seen.add(tail)
            if perm_canonical(v0 + tuple(tail), be) == target:
                return True
    return False


def _replacement_domain(be, d, pool_hint):
    """Largest connected domain strictly below d that clears its boundary."""
    bnd = be.boundary(d)
    cands = [
        e
        for e in be.absorber_candidates(list(pool_hint) + [d])
        if e != d and be.contains(d, e) and not be.contains(bnd, e)
    ]
    if not cands:
        return None
    return min(cands, key=lambda e: (-be.complexity_of(e), be.domain_sort_key(e)))


def descending_chain_r(word: Word, be, n: int) -> list[Word]:
    """An explicit refined-order descending chain of n steps from `word`.

    Returns the n+1 words of the chain, the input first. Each step
    either deletes a terminal annular letter or replaces a terminal
    domain letter by a run of letters strictly below it, sized so the
    remaining steps peel the run back off one letter at a time. Every
    step is checked against the definition before the chain is returned.
    """
    if n < 1:
        raise ValueError("chain length must be at least 1")
    if not is_reduced(word, be):
        raise ValueError("starting word is not reduced")
    chain = [tuple(word)]
    cur = tuple(word)
    remaining = n
    while remaining > 0:
        picks = [
            (i, l)
            for i, l in enumerate(cur)
            if isinstance(l, DomainLetter) and _movable_last(cur, be, i)
        ]
        if not picks:
            raise ValueError("no domain letter")
        i, letter = max(picks, key=lambda p: be.complexity_of(p[1].dom))
        v0 = cur[:i] + cur[i + 1 :]
        if be.complexity_of(letter.dom) == 0:
            nxt = v0
        else:
            sub = _replacement_domain(be, letter.dom, [l.dom for _, l in picks])
            if sub is None:
                # deleting the letter is still a legal step, but only
                # worth it if the rest of the word can carry the chain
                if remaining > 1 and not any(
                    isinstance(l, DomainLetter) for l in v0
                ):
                    raise ValueError(
                        "no connected domain strictly below "
                        f"{be.domain_to_json(letter.dom)} clears its "
                        "boundary in this backend"
                    )
                nxt = v0
            else:
                nxt = v0 + (DomainLetter(sub),) * (remaining - 1)
        if not is_refined_step(nxt, cur, be):
            raise AssertionError("generated step failed its own check")
        chain.append(nxt)
        cur = nxt
        remaining -= 1
    return chain
