"""Bookkeeping for compact orientable surfaces with boundary.

A surface is identified by its signature (g, b): genus and number of
boundary components. Everything downstream indexes off two quantities,
the curve-system size 3g - 3 + b and the chain complexity 3g - 2 + b.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Signature:
    g: int
    b: int

    def __post_init__(self):
        if self.g < 0 or self.b < 0:
            raise ValueError("genus and boundary count must be nonnegative")

    def __str__(self):
        return f"(g={self.g}, b={self.b})"


def euler_characteristic(sig: Signature) -> int:
    return 2 - 2 * sig.g - sig.b


def curve_system_size(sig: Signature) -> int:
    """Number of curves in a maximal curve system, 3g - 3 + b."""
    return 3 * sig.g - 3 + sig.b


def complexity(sig: Signature) -> int:
    """Length of a maximal domain chain, 3g - 2 + b."""
    return 3 * sig.g - 2 + sig.b


def is_sporadic(sig: Signature) -> bool:
    """Too small to carry a nontrivial domain lattice."""
    return (sig.g == 0 and sig.b <= 4) or (sig.g == 1 and sig.b <= 1)


def max_chain_length(sig: Signature) -> int:
    # chains need at least one essential curve
    if curve_system_size(sig) < 1:
        raise ValueError(f"sub-minimal complexity: {sig}")
    return complexity(sig)
