"""Domain lattice and mapping classes of the one-holed torus.

Curves on the one-holed torus are classified by their slope, so the
lattice is tiny: the empty domain, one annulus per slope, and the full
surface. Two distinct annuli always intersect, hence every join of two
distinct connected domains is the whole surface.

The group is SL(2, Z) acting on slopes; a matrix is related to an
annulus domain exactly when it fixes the primitive vector of the slope
(not just its line: a flip about the slope is not a power of the twist).
"""

from __future__ import annotations

from dataclasses import dataclass

from .slopes import (
    IDENT,
    Matrix,
    Slope,
    mat_apply,
    mat_inv,
    mat_mul,
)
from .surfaces import Signature


@dataclass(frozen=True, order=True)
class TorusDomain:
    rank: int  # 0 empty, 1 annulus, 2 full
    slope: Slope | None = None

    def __post_init__(self):
        if self.rank not in (0, 1, 2):
            raise ValueError("rank must be 0, 1 or 2")
        if (self.rank == 1) != (self.slope is not None):
            raise ValueError("exactly annulus domains carry a slope")

    def __repr__(self):
        if self.rank == 0:
            return "T_EMPTY"
        if self.rank == 2:
            return "T_FULL"
        return f"T_A({self.slope})"


T_EMPTY = TorusDomain(0)
T_FULL = TorusDomain(2)


def annulus(slope) -> TorusDomain:
    if isinstance(slope, str):
        slope = Slope.parse(slope)
    return TorusDomain(1, slope)


class TorusBackend:
    """Word-backend over the one-holed torus."""

    signature = Signature(1, 1)

    # -- domains

    def is_connected(self, d: TorusDomain) -> bool:
        return d.rank != 0

    def is_empty(self, d: TorusDomain) -> bool:
        return d.rank == 0

    def empty_domain(self) -> TorusDomain:
        return T_EMPTY

    def full_domain(self) -> TorusDomain:
        return T_FULL

    def contains(self, outer: TorusDomain, inner: TorusDomain) -> bool:
        if inner.rank == 0 or outer.rank == 2:
            return True
        if outer.rank == 0 or inner.rank == 2:
            return False
        return outer.slope == inner.slope

    def orthogonal(self, d1: TorusDomain, d2: TorusDomain) -> bool:
        if d1.rank == 0 or d2.rank == 0:
            return True
        if d1.rank == 2 or d2.rank == 2:
            return False  # the full surface meets every curve
        return d1.slope == d2.slope

    def join(self, d1: TorusDomain, d2: TorusDomain) -> TorusDomain:
        if d1.rank == 0:
            return d2
        if d2.rank == 0:
            return d1
        if d1 == d2:
            return d1
        return T_FULL  # distinct slopes intersect and fill

    def meet(self, d1: TorusDomain, d2: TorusDomain) -> TorusDomain:
        if d1.rank == 2:
            return d2
        if d2.rank == 2:
            return d1
        if d1 == d2:
            return d1
        return T_EMPTY

    def complement(self, d: TorusDomain) -> TorusDomain:
        if d.rank == 0:
            return T_FULL
        if d.rank == 2:
            return T_EMPTY
        return d  # an annulus is its own orthogonal complement here

    def boundary(self, d: TorusDomain) -> TorusDomain:
        return self.meet(d, self.complement(d))

    def is_transverse(self, d1: TorusDomain, d2: TorusDomain) -> bool:
        if self.orthogonal(d1, d2):
            return False
        return not self.contains(d1, d2) and not self.contains(d2, d1)

    def strongly_orthogonal(self, d1: TorusDomain, d2: TorusDomain) -> bool:
        if not self.orthogonal(d1, d2):
            return False
        if self.is_empty(d2):
            return True
        return not self.contains(self.boundary(d1), d2)

    def decompose_connected(self, d: TorusDomain) -> tuple[TorusDomain, ...]:
        return () if d.rank == 0 else (d,)

    def complexity_of(self, d: TorusDomain) -> int:
        if d.rank == 1:
            return 0
        if d.rank == 2:
            return 3 * 1 + 1 - 2
        raise ValueError("complexity is defined for connected domains")

    def domain_sort_key(self, d: TorusDomain):
        return (d.rank, d.slope if d.slope is not None else Slope(1, 0))

    def domain_to_json(self, d: TorusDomain):
        if d.rank == 0:
            return "empty"
        if d.rank == 2:
            return "full"
        return {"annulus": str(d.slope)}

    # -- group

    @property
    def identity(self) -> Matrix:
        return IDENT

    def multiply(self, a: Matrix, b: Matrix) -> Matrix:
        return mat_mul(a, b)

    def invert(self, a: Matrix) -> Matrix:
        return mat_inv(a)

    def act_on_domain(self, g: Matrix, d: TorusDomain) -> TorusDomain:
        if d.rank != 1:
            return d
        return TorusDomain(1, mat_apply(g, d.slope))

    def is_D_related(self, g: Matrix, d: TorusDomain) -> bool:
        if d.rank == 2:
            return True
        if d.rank == 0:
            return g == IDENT
        p, q = d.slope.p, d.slope.q
        return (
            g[0][0] * p + g[0][1] * q == p
            and g[1][0] * p + g[1][1] * q == q
        )

    def is_orthogonal_g(self, g: Matrix, d: TorusDomain) -> bool:
        return self.act_on_domain(g, d) == d

    def group_sort_key(self, g: Matrix):
        return g

    # -- absorbers

    def absorber_candidates(self, dom_values) -> tuple[TorusDomain, ...]:
        out = []
        for d in dom_values:
            if d.rank == 1 and d not in out:
                out.append(d)
        out.append(T_FULL)
        return tuple(out)

    def absorbable_suffixes(self, g, dom_values):
        # a matrix has no preferred factorization, so only whole letters
        # absorb here; mixed words over this backend are reduced
        # deterministically but carry no confluence guarantee
        return []

    def absorbable_prefixes(self, g, dom_values):
        return []
