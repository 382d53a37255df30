"""Arithmetic and dense linear algebra over GF(2^e).

Field elements are ints in [0, 2^e) encoding polynomials over GF(2) by their
coefficient bits, reduced modulo a fixed irreducible.  Matrices are numpy
uint16 arrays of such codes; addition is XOR, multiplication goes through
discrete log tables (size 2^e), so everything stays exact.
"""

from __future__ import annotations

import numpy as np

# One irreducible polynomial per extension degree (bitmask includes the
# leading term), e.g. 0b111 = x^2 + x + 1.
_IRREDUCIBLE = {
    1: 0b10,  # x  (placeholder; GF(2) needs no reduction)
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011011,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
}

_DTYPE = np.uint16


class GF:
    """The field GF(2^e) together with vectorized numpy helpers."""

    def __init__(self, e: int = 1):
        if e not in _IRREDUCIBLE:
            raise ValueError(f"unsupported extension degree e={e}")
        self.e = e
        self.q = 1 << e
        self.modulus = _IRREDUCIBLE[e]
        self._build_tables()

    def _build_tables(self):
        q = self.q
        if self.e == 1:
            self._exp = np.array([1], dtype=_DTYPE)
            self._log = np.array([0, 0], dtype=np.int64)
            return
        # find a generator of the multiplicative group by trial
        for g in range(2, q):
            seen = set()
            x = 1
            for _ in range(q - 1):
                seen.add(x)
                x = self._mul_slow(x, g)
            if len(seen) == q - 1:
                break
        else:  # pragma: no cover
            raise RuntimeError("no multiplicative generator found")
        exp = np.zeros(q - 1, dtype=_DTYPE)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        self._exp = exp
        self._log = log

    def _mul_slow(self, a: int, b: int) -> int:
        # carry-less multiply followed by reduction; used only to seed tables
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.e:
                a ^= self.modulus
        return r

    # -- scalar ops -------------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return 1
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF")
        if self.e == 1:
            return 1
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k else 1
        if self.e == 1:
            return 1
        return int(self._exp[(self._log[a] * k) % (self.q - 1)])

    def frobenius(self, a: int, i: int = 1) -> int:
        """a ^ (2^i), the i-fold Frobenius."""
        return self.pow(a, pow(2, i, self.q - 1) if a else 0) if a else 0

    def frobenius_inv(self, a: int, i: int = 1) -> int:
        return self.frobenius(a, (-i) % self.e) if self.e > 1 else a

    def elements(self):
        return range(self.q)

    # -- array ops --------------------------------------------------------
    def amul(self, A, B):
        """Elementwise product of two uint arrays of field codes."""
        A = np.asarray(A, dtype=_DTYPE)
        B = np.asarray(B, dtype=_DTYPE)
        if self.e == 1:
            return (A & B).astype(_DTYPE)
        out = np.zeros(np.broadcast(A, B).shape, dtype=_DTYPE)
        mask = (A != 0) & (B != 0)
        if mask.any():
            la = self._log[np.broadcast_to(A, mask.shape)[mask]]
            lb = self._log[np.broadcast_to(B, mask.shape)[mask]]
            out[mask] = self._exp[(la + lb) % (self.q - 1)]
        return out

    def ascale(self, c: int, A):
        A = np.asarray(A, dtype=_DTYPE)
        if c == 0:
            return np.zeros_like(A)
        if c == 1:
            return A.copy()
        return self.amul(np.full(A.shape, c, dtype=_DTYPE), A)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=_DTYPE)
        B = np.asarray(B, dtype=_DTYPE)
        if A.ndim != 2 or B.ndim != 2 or A.shape[1] != B.shape[0]:
            raise ValueError(f"matmul shape mismatch {A.shape} x {B.shape}")
        if self.e == 1:
            # plain integer product mod 2 is fastest here
            return ((A.astype(np.int64) @ B.astype(np.int64)) & 1).astype(_DTYPE)
        C = np.zeros((A.shape[0], B.shape[1]), dtype=_DTYPE)
        for k in range(A.shape[1]):
            C ^= self.amul(A[:, k : k + 1], B[k : k + 1, :])
        return C

    def eye(self, n: int):
        return np.eye(n, dtype=_DTYPE)

    def zeros(self, r: int, c: int):
        return np.zeros((r, c), dtype=_DTYPE)

    # -- elimination ------------------------------------------------------
    def rref(self, A):
        """Reduced row echelon form.  Returns (R, pivot column list)."""
        A = np.asarray(A, dtype=_DTYPE)
        if A.ndim != 2:
            raise ValueError("rref expects a matrix")
        if self.e == 1 and A.size >= 4096:
            P = _pack_rows(A)
            Rp, pivots = _rref_packed(P, A.shape[1])
            return _unpack_rows(Rp, A.shape[1]), pivots
        R = np.array(A, dtype=_DTYPE, copy=True)
        rows, cols = R.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            sub = R[r:, c]
            nz = np.nonzero(sub)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                R[[r, p]] = R[[p, r]]
            piv = int(R[r, c])
            if piv != 1:
                R[r] = self.ascale(self.inv(piv), R[r])
            col = R[:, c].copy()
            col[r] = 0
            hit = np.nonzero(col)[0]
            if hit.size:
                R[hit] ^= self.amul(col[hit, None], R[r][None, :])
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, A):
        A = np.asarray(A, dtype=_DTYPE)
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A):
        """Basis of the right kernel, returned as columns of a matrix."""
        A = np.asarray(A, dtype=_DTYPE)
        rows, cols = A.shape if A.ndim == 2 else (0, 0)
        if cols == 0:
            return np.zeros((0, 0), dtype=_DTYPE)
        if rows == 0:
            return self.eye(cols)
        R, pivots = self.rref(A)
        free = [c for c in range(cols) if c not in pivots]
        N = np.zeros((cols, len(free)), dtype=_DTYPE)
        for j, fc in enumerate(free):
            N[fc, j] = 1
            for i, pc in enumerate(pivots):
                N[pc, j] = R[i, fc]  # char 2: -x = x
        return N

    def inverse(self, A):
        A = np.asarray(A, dtype=_DTYPE)
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("inverse expects square matrix")
        Aug = np.concatenate([A, self.eye(n)], axis=1)
        R, pivots = self.rref(Aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix not invertible")
        return R[:, n:]

    def is_invertible(self, A):
        A = np.asarray(A, dtype=_DTYPE)
        return A.shape[0] == A.shape[1] and self.rank(A) == A.shape[0]

    def solve(self, A, b):
        """One solution x of A x = b, or None."""
        A = np.asarray(A, dtype=_DTYPE)
        b = np.asarray(b, dtype=_DTYPE).reshape(-1, 1)
        Aug = np.concatenate([A, b], axis=1)
        R, pivots = self.rref(Aug)
        if A.shape[1] in pivots:
            return None
        x = np.zeros(A.shape[1], dtype=_DTYPE)
        for i, pc in enumerate(pivots):
            x[pc] = R[i, A.shape[1]]
        return x

    def row_space(self, A):
        """Canonical (rref, zero rows dropped) basis of the row space."""
        A = np.asarray(A, dtype=_DTYPE)
        if A.size == 0:
            return A.reshape(0, A.shape[1] if A.ndim == 2 else 0)
        R, pivots = self.rref(A)
        return R[: len(pivots)]

    def char_poly(self, A):
        """Characteristic polynomial of a square matrix, ascending coefficients.

        Hessenberg reduction followed by the standard leading-minor recurrence;
        all arithmetic in the field.
        """
        A = np.array(A, dtype=_DTYPE, copy=True)
        n = A.shape[0]
        if A.shape != (n, n):
            raise ValueError("char_poly expects square matrix")
        if n == 0:
            return [1]
        H = A
        for c in range(n - 1):
            nz = [r for r in range(c + 1, n) if H[r, c]]
            if not nz:
                continue
            p = nz[0]
            if p != c + 1:
                H[[c + 1, p]] = H[[p, c + 1]]
                H[:, [c + 1, p]] = H[:, [p, c + 1]]
            inv = self.inv(int(H[c + 1, c]))
            for r in range(c + 2, n):
                if H[r, c]:
                    f = self.mul(int(H[r, c]), inv)
                    H[r] ^= self.ascale(f, H[c + 1])
                    H[:, c + 1] ^= self.ascale(f, H[:, r])
        # p_k = char poly of leading k x k block (monic, ascending coeffs)
        polys = [[1]]
        for k in range(1, n + 1):
            a = int(H[k - 1, k - 1])
            prev = polys[k - 1]
            cur = [0] + list(prev)  # x * prev
            for i, cf in enumerate(prev):
                cur[i] ^= 0 if cf == 0 or a == 0 else self.mul(a, cf)
            prod = 1
            for m in range(1, k):
                prod = self.mul(prod, int(H[k - m, k - m - 1])) if prod else 0
                if prod == 0:
                    break
                b = int(H[k - m - 1, k - 1])
                if b == 0:
                    continue
                f = self.mul(b, prod)
                for i, cf in enumerate(polys[k - m - 1]):
                    if cf:
                        cur[i] ^= self.mul(f, cf)
            polys.append(cur)
        return polys[n]


# ---------------------------------------------------------------------------
# packed GF(2) elimination (uint64 bitset rows)
# ---------------------------------------------------------------------------

def _pack_rows(A):
    rows, cols = A.shape
    words = (cols + 63) // 64
    P = np.zeros((rows, words), dtype=np.uint64)
    nz = np.nonzero(A)
    if nz[0].size:
        r, c = nz
        np.bitwise_or.at(P, (r, c // 64), np.uint64(1) << (c % 64).astype(np.uint64))
    return P


def _unpack_rows(P, cols):
    rows = P.shape[0]
    A = np.zeros((rows, cols), dtype=_DTYPE)
    for w in range(P.shape[1]):
        block = P[:, w]
        lo = w * 64
        hi = min(lo + 64, cols)
        for b in range(hi - lo):
            A[:, lo + b] = ((block >> np.uint64(b)) & np.uint64(1)).astype(_DTYPE)
    return A


def _rref_packed(P, cols):
    P = P.copy()
    rows = P.shape[0]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        w, b = c // 64, np.uint64(c % 64)
        col = (P[r:, w] >> b) & np.uint64(1)
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            P[[r, p]] = P[[p, r]]
        hits = np.nonzero((P[:, w] >> b) & np.uint64(1))[0]
        hits = hits[hits != r]
        if hits.size:
            P[hits] ^= P[r]
        pivots.append(c)
        r += 1
    return P, pivots
