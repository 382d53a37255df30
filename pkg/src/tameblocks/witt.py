"""Truncated Witt vectors W_N = Z/2^N, cyclotomic extensions, and the
q-polynomials attached to each defect type.

Polynomials are kept with exact integer coefficients (every identity in scope
lives in Z[t]); reduction mod 2^N happens at evaluation/verification time.
Cyclotomic elements are coefficient tuples in Z[x]/(x^(2^(l-1)) + 1), which is
the 2^l-th cyclotomic ring: the class of x is a primitive 2^l-th root of unity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError

DEFECT_TYPES = ("D", "SD", "Q")
DEFAULT_PRECISION = 24


def check_defect_type(defect_type: str) -> str:
    if defect_type not in DEFECT_TYPES:
        raise UsageError(f"unknown defect type {defect_type!r}; expected one of {DEFECT_TYPES}")
    return defect_type


@dataclass(frozen=True)
class WittRing:
    """Z/2^N with the 2-adic conventions used throughout."""

    N: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.N < 2:
            raise UsageError("precision N must be at least 2")

    @property
    def modulus(self) -> int:
        return 1 << self.N

    def reduce(self, a: int) -> int:
        return a % self.modulus

    def is_unit(self, a: int) -> bool:
        return a % 2 == 1

    def inv(self, a: int) -> int:
        if not self.is_unit(a):
            raise ZeroDivisionError("even element has no inverse in Z/2^N")
        return pow(a, -1, self.modulus)

    def val2(self, a: int) -> int:
        """2-adic valuation of the residue; N for zero."""
        a = self.reduce(a)
        if a == 0:
            return self.N
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        return v


# ---------------------------------------------------------------------------
# cyclotomic coefficient tuples
# ---------------------------------------------------------------------------

def cyc_dim(level: int) -> int:
    if level < 1:
        raise UsageError("cyclotomic level must be >= 1")
    return 1 << (level - 1)


def cyc_zero(level: int) -> tuple:
    return (0,) * cyc_dim(level)


def cyc_one(level: int) -> tuple:
    return (1,) + (0,) * (cyc_dim(level) - 1)


def zeta_power(level: int, k: int) -> tuple:
    """Coefficients of zeta^k where zeta = class of x, zeta^(2^(l-1)) = -1."""
    d = cyc_dim(level)
    k %= 2 * d
    sign = 1
    if k >= d:
        k -= d
        sign = -1
    coeffs = [0] * d
    coeffs[k] = sign
    return tuple(coeffs)


def cyc_add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def cyc_scale(c: int, a: tuple) -> tuple:
    return tuple(c * x for x in a)


def cyc_mul(a: tuple, b: tuple) -> tuple:
    """Negacyclic convolution: x^d = -1."""
    d = len(a)
    out = [0] * d
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            k = i + j
            if k < d:
                out[k] += x * y
            else:
                out[k - d] -= x * y
    return tuple(out)


def cyc_reduce(a: tuple, witt: WittRing) -> tuple:
    return tuple(witt.reduce(x) for x in a)


def cyc_is_zero_mod(a: tuple, witt: WittRing) -> bool:
    return all(witt.reduce(x) == 0 for x in a)


def nu_element(level: int, kind: str = "plus") -> tuple:
    """zeta + zeta^{-1} ('plus') or zeta - zeta^{-1} ('minus') at the level."""
    plus = zeta_power(level, 1)
    minus = zeta_power(level, -1)
    if kind == "plus":
        return cyc_add(plus, minus)
    if kind == "minus":
        return cyc_add(plus, cyc_scale(-1, minus))
    raise UsageError(f"unknown nu kind {kind!r}")


@dataclass(frozen=True)
class CyclotomicWitt:
    """W_N[x]/(x^(2^(l-1)) + 1): the 2^l-th cyclotomic quotient of W_N."""

    base: WittRing
    level: int

    @property
    def dim(self) -> int:
        return cyc_dim(self.level)

    def zeta(self, k: int = 1) -> tuple:
        return cyc_reduce(zeta_power(self.level, k), self.base)

    def nu(self, kind: str = "plus") -> tuple:
        return cyc_reduce(nu_element(self.level, kind), self.base)

    def add(self, a, b):
        return cyc_reduce(cyc_add(a, b), self.base)

    def mul(self, a, b):
        return cyc_reduce(cyc_mul(a, b), self.base)

    def scale(self, c, a):
        return cyc_reduce(cyc_scale(c, a), self.base)

    def is_zero(self, a) -> bool:
        return cyc_is_zero_mod(a, self.base)

    def one(self):
        return cyc_one(self.level)


# ---------------------------------------------------------------------------
# integer polynomials (ascending coefficients)
# ---------------------------------------------------------------------------

class WPoly:
    """Univariate polynomial with exact integer coefficients, ascending order.

    These are canonical lifts of elements of W_N[t]; all catalog polynomials
    (the nu minimal polynomials and their products) genuinely live in Z[t].
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0]
        self.coeffs = tuple(int(x) for x in c)

    def __eq__(self, other):
        return isinstance(other, WPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"WPoly({list(self.coeffs)})"

    def __str__(self):
        if self.coeffs == (0,):
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(f"{c:+d}")
            else:
                mono = "t" if i == 1 else f"t^{i}"
                if c == 1:
                    parts.append(f"+{mono}")
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c:+d}*{mono}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return WPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    def __sub__(self, other):
        return self + WPoly([-c for c in other.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return WPoly([other * c for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return WPoly(out)

    __rmul__ = __mul__

    def compose(self, inner: "WPoly") -> "WPoly":
        out = WPoly([0])
        for c in reversed(self.coeffs):
            out = out * inner + WPoly([c])
        return out

    def shift_mul_t(self) -> "WPoly":
        return WPoly((0,) + self.coeffs)

    def eval_int(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_cyc(self, elt: tuple, ring: CyclotomicWitt) -> tuple:
        acc = cyc_zero(ring.level)
        one = cyc_one(ring.level)
        for c in reversed(self.coeffs):
            acc = ring.add(ring.mul(acc, elt), ring.scale(c, one))
        return acc

    def mod2(self) -> tuple:
        return tuple(c % 2 for c in self.coeffs)

    def reduce_mod(self, witt: WittRing) -> tuple:
        return tuple(witt.reduce(c) for c in self.coeffs)


T_POLY = WPoly([0, 1])


# ---------------------------------------------------------------------------
# the nu minimal polynomials and q_n
# ---------------------------------------------------------------------------

def minpoly_nu(level: int, defect_type: str, n: int) -> WPoly:
    """Minimal polynomial over the fraction field of W of the level-l element
    nu_l, for the block's defect type and defect exponent n.

    Base case t at level 2; each level substitutes t^2 - 2, except the top
    level n-1 which substitutes t^2 + 2 in the semidihedral case.
    """
    check_defect_type(defect_type)
    if n < 3:
        raise UsageError(f"defect exponent n={n} must be >= 3")
    if not 2 <= level <= n - 1:
        raise UsageError(f"level {level} out of range 2..{n - 1}")
    poly = WPoly([0, 1])
    for lvl in range(3, level + 1):
        if lvl == n - 1 and defect_type == "SD":
            poly = poly.compose(WPoly([2, 0, 1]))  # t^2 + 2
        else:
            poly = poly.compose(WPoly([-2, 0, 1]))  # t^2 - 2
    return poly


def nu_value(level: int, defect_type: str, n: int) -> tuple:
    """Exact integer coordinates of nu_l at its own cyclotomic level."""
    check_defect_type(defect_type)
    kind = "minus" if (defect_type == "SD" and level == n - 1) else "plus"
    return nu_element(level, kind)


def q_poly(n: int, defect_type: str) -> WPoly:
    """Product of the nu minimal polynomials for levels 2..n-1; monic of
    degree 2^(n-2) - 1 with mod-2 image t^(2^(n-2)-1)."""
    check_defect_type(defect_type)
    if n < 3:
        raise UsageError(f"defect exponent n={n} must be >= 3")
    out = WPoly([1])
    for level in range(2, n):
        out = out * minpoly_nu(level, defect_type, n)
    return out


# ---------------------------------------------------------------------------
# exact integer resultants (Sylvester + Bareiss)
# ---------------------------------------------------------------------------

def _bareiss_det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    M = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def resultant(p: WPoly, q: WPoly) -> int:
    """Exact resultant of two integer polynomials via the Sylvester matrix."""
    dp, dq = p.degree, q.degree
    if dp == 0:
        return p.coeffs[0] ** dq
    if dq == 0:
        return q.coeffs[0] ** dp
    size = dp + dq
    rows = []
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for i in range(dq):
        rows.append([0] * i + pc + [0] * (size - dp - 1 - i))
    for i in range(dp):
        rows.append([0] * i + qc + [0] * (size - dq - 1 - i))
    return _bareiss_det(rows)


def is_power_of_two(a: int) -> bool:
    a = abs(a)
    return a != 0 and (a & (a - 1)) == 0
