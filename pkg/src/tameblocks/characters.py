"""Group-independent character arithmetic: generalized decomposition values
for maximal-order 2-elements, Galois orbits of the height-1 characters, and
the maximally-ordinary index test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .witt import (WittRing, CyclotomicWitt, check_defect_type, cyc_reduce,
                   minpoly_nu, zeta_power, cyc_add, cyc_scale)


@dataclass(frozen=True)
class GenDecompValue:
    """zeta^i +/- zeta^-i at level n-1, with exact integer coordinates."""

    i: int
    n: int
    defect_type: str
    coeffs: tuple  # in Z[x]/(x^(2^(n-2)) + 1)

    @property
    def level(self):
        return self.n - 1

    def reduced(self, witt: WittRing):
        return cyc_reduce(self.coeffs, witt)

    def is_integer(self):
        return all(c == 0 for c in self.coeffs[1:])

    def in_zero_pm_one(self) -> bool:
        """Exact membership in {0, 1, -1} (integer coordinates)."""
        return self.is_integer() and self.coeffs[0] in (0, 1, -1)


def gen_decomp(i: int, n: int, defect_type: str) -> GenDecompValue:
    """The cased value of the maximal-order generalized decomposition number
    attached to the i-th height-1 character."""
    check_defect_type(defect_type)
    if n < 3:
        raise UsageError("defect exponent must be >= 3")
    if not 1 <= i <= 2 ** (n - 2) - 1:
        raise UsageError(f"index i={i} out of range 1..{2 ** (n - 2) - 1}")
    level = n - 1
    zi = zeta_power(level, i)
    zmi = zeta_power(level, -i)
    if defect_type in ("D", "Q") or i % 2 == 0:
        coeffs = cyc_add(zi, zmi)
    elif i <= 2 ** (n - 3) - 1:
        coeffs = cyc_add(zi, cyc_scale(-1, zmi))
    else:
        coeffs = cyc_add(zmi, cyc_scale(-1, zi))
    return GenDecompValue(i, n, defect_type, coeffs)


@dataclass(frozen=True)
class GaloisOrbit:
    level: int
    members: tuple  # indices i of the characters in the orbit

    @property
    def size(self):
        return len(self.members)


def orbits(n: int, defect_type: str = "D"):
    """The n-2 Galois orbits partitioning indices 1..2^(n-2)-1; orbit at
    level l has the indices of 2-adic valuation n-1-l."""
    check_defect_type(defect_type)
    if n < 3:
        raise UsageError("defect exponent must be >= 3")
    out = []
    for level in range(2, n):
        members = tuple(2 ** (n - 1 - level) * (2 * u - 1)
                        for u in range(1, 2 ** (level - 2) + 1))
        out.append(GaloisOrbit(level, members))
    return out


def orbit_level(i: int, n: int) -> int:
    """Level l with i in O_l, i.e. n - 1 - v2(i)."""
    if not 1 <= i <= 2 ** (n - 2) - 1:
        raise UsageError(f"index i={i} out of range")
    v = 0
    while i % 2 == 0:
        i //= 2
        v += 1
    return n - 1 - v


def is_maximally_ordinary_index(i: int, n: int) -> bool:
    """True iff n >= 4 and the generalized decomposition value avoids
    {0, +1, -1}; operationally iff i != 2^(n-3)."""
    if n < 3:
        raise UsageError("defect exponent must be >= 3")
    if n == 3:
        return False
    if not 1 <= i <= 2 ** (n - 2) - 1:
        raise UsageError(f"index i={i} out of range")
    return i != 2 ** (n - 3)


def annihilating_minpoly(i: int, n: int, defect_type: str):
    """The nu minimal polynomial that kills gen_decomp(i, n, defect_type):
    level = orbit level of i, with the defect type only mattering at the top
    level n-1."""
    level = orbit_level(i, n)
    if level < n - 1:
        return minpoly_nu(level, "D", n)
    return minpoly_nu(level, defect_type, n)


def verify_annihilation(i: int, n: int, defect_type: str, witt: WittRing) -> bool:
    val = gen_decomp(i, n, defect_type)
    ring = CyclotomicWitt(witt, val.level)
    poly = annihilating_minpoly(i, n, defect_type)
    return ring.is_zero(poly.eval_cyc(val.reduced(witt), ring))
