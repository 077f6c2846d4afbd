"""Ordinal arithmetic below w^w in Cantor normal form.

An ordinal is a finite sum  w^{e1}*c1 + w^{e2}*c2 + ...  with exponents
strictly descending and coefficients positive. We only ever need natural
(Hessenberg) sums of such ordinals, which add coefficients exponent-wise,
so the representation is a sorted tuple of (exponent, coefficient) pairs.

>>> natural_sum(omega_power(2), omega_power(2))
OrdinalCNF(terms=((2, 2),))
>>> str(natural_sum(omega_power(1), OrdinalCNF.from_int(3)))
'w*1 + 3'
"""

from __future__ import annotations

from dataclasses import dataclass

# exponents are plain naturals; anything >= this is out of scope
_EXPONENT_CAP = 64


@dataclass(frozen=True)
class OrdinalCNF:
    """Sum of w^e * c terms, stored descending by exponent."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if exps != sorted(exps, reverse=True) or len(set(exps)) != len(exps):
            raise ValueError("terms must be strictly descending in exponent")
        for e, c in self.terms:
            if e < 0 or c <= 0:
                raise ValueError("exponents nonnegative, coefficients positive")
            if e >= _EXPONENT_CAP:
                raise ValueError("ordinal exceeds w^w scope")

    @staticmethod
    def zero() -> "OrdinalCNF":
        return OrdinalCNF(())

    @staticmethod
    def from_int(n: int) -> "OrdinalCNF":
        if n < 0:
            raise ValueError("ordinals are nonnegative")
        return OrdinalCNF(((0, n),)) if n else OrdinalCNF(())

    def is_zero(self) -> bool:
        return not self.terms

    # descending CNF compares lexicographically term by term; a missing
    # term loses to any present one
    def _cmp(self, other: "OrdinalCNF") -> int:
        for (ea, ca), (eb, cb) in zip(self.terms, other.terms):
            if ea != eb:
                return 1 if ea > eb else -1
            if ca != cb:
                return 1 if ca > cb else -1
        if len(self.terms) != len(other.terms):
            return 1 if len(self.terms) > len(other.terms) else -1
        return 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append("w" if c == 1 else f"w*{c}")
            else:
                parts.append(f"w^{e}" if c == 1 else f"w^{e}*{c}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"cnf": [[e, c] for e, c in self.terms], "pretty": str(self)}


def omega_power(e: int, coeff: int = 1) -> OrdinalCNF:
    if coeff == 0:
        return OrdinalCNF.zero()
    return OrdinalCNF(((e, coeff),))


def natural_sum(*ordinals: OrdinalCNF) -> OrdinalCNF:
    """Hessenberg sum: coefficients add exponent-wise, no absorption."""
    acc: dict[int, int] = {}
    for o in ordinals:
        for e, c in o.terms:
            acc[e] = acc.get(e, 0) + c
    return OrdinalCNF(tuple(sorted(acc.items(), reverse=True)))


def parse_ordinal(text: str) -> OrdinalCNF:
    """Inverse of str(): accepts 'w^2*3 + w*1 + 4', 'w^2', '0', '7'."""
    text = text.strip()
    if text == "0":
        return OrdinalCNF.zero()
    acc: dict[int, int] = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"bad ordinal literal: {text!r}")
        if chunk.startswith("w"):
            rest = chunk[1:]
            exp = 1
            if rest.startswith("^"):
                rest = rest[1:]
                num = ""
                while rest and rest[0].isdigit():
                    num += rest[0]
                    rest = rest[1:]
                if not num:
                    raise ValueError(f"bad ordinal literal: {text!r}")
                exp = int(num)
            coeff = 1
            if rest.startswith("*"):
                coeff = int(rest[1:])
            elif rest:
                raise ValueError(f"bad ordinal literal: {text!r}")
            acc[exp] = acc.get(exp, 0) + coeff
        else:
            acc[0] = acc.get(0, 0) + int(chunk)
    return OrdinalCNF(tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True)))
