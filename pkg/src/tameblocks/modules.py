"""Finite-dimensional left modules over a PresentedAlgebra and the homological
toolkit built on them: Hom/End spaces, radical and socle series, projective
covers, syzygies in both directions, Ext^1 via stable maps, stable
endomorphism dimensions, indecomposability and isomorphism testing.

All simples over these basic algebras are one-dimensional, so a module is a
tuple of vertex-space dimensions plus one matrix per arrow (target-dim x
source-dim).  Randomized searches take an explicit seed and fall back to
exhaustive enumeration below a configurable dimension threshold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, SplittingFieldError, UsageError
from .gf import GF, _DTYPE
from .quiver import PresentedAlgebra

EXHAUSTIVE_DIM = 12  # search spaces of size <= 2**EXHAUSTIVE_DIM are enumerated
RANDOM_TRIES = 200


class RepModule:
    """A representation of the quiver satisfying the completed relations."""

    def __init__(self, alg: PresentedAlgebra, dims, maps, check: bool = True):
        self.alg = alg
        self.dims = tuple(int(d) for d in dims)
        fld = alg.field
        self.maps = {}
        for i, (_, s, t) in enumerate(alg.quiver.arrows):
            m = maps.get(i)
            if m is None:
                m = fld.zeros(self.dims[t], self.dims[s])
            m = np.asarray(m, dtype=_DTYPE)
            if m.shape != (self.dims[t], self.dims[s]):
                raise UsageError(f"arrow matrix {i} has shape {m.shape}, expected "
                                 f"{(self.dims[t], self.dims[s])}")
            self.maps[i] = m
        if check:
            bad = self.failed_relation()
            if bad is not None:
                raise ConstructionError(f"relation does not vanish on module: {bad}")

    @property
    def dim(self):
        return sum(self.dims)

    def path_matrix(self, word, at_vertex=None):
        """Matrix of a path acting on the module (application order)."""
        fld = self.alg.field
        if not word:
            return fld.eye(self.dims[at_vertex])
        m = self.maps[word[0]]
        for a in word[1:]:
            m = fld.matmul(self.maps[a], m)
        return m

    def poly_matrix(self, poly):
        fld = self.alg.field
        out = fld.zeros(self.dims[poly.tgt], self.dims[poly.src])
        for w, c in poly.terms.items():
            out = out ^ fld.ascale(c, self.path_matrix(w, poly.src))
        return out

    def failed_relation(self):
        for g in self.alg.relations:
            if self.poly_matrix(g).any():
                return str(g)
        return None

    def __repr__(self):
        return f"<RepModule dims={self.dims} over {self.alg.label}>"


@dataclass
class ModMap:
    """Module homomorphism as one matrix per vertex (dst-dim x src-dim)."""

    src: RepModule
    dst: RepModule
    blocks: list

    def compose(self, other: "ModMap") -> "ModMap":
        fld = self.src.alg.field
        return ModMap(other.src, self.dst,
                      [fld.matmul(b, c) for b, c in zip(self.blocks, other.blocks)])

    def is_iso(self) -> bool:
        fld = self.src.alg.field
        if self.src.dims != self.dst.dims:
            return False
        return all(fld.is_invertible(b) for b in self.blocks)

    def to_flat(self):
        if not self.blocks:
            return np.zeros(0, dtype=_DTYPE)
        return np.concatenate([b.ravel() for b in self.blocks])


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero_module(alg):
    return RepModule(alg, [0] * alg.quiver.n_vertices, {}, check=False)


def simple_module(alg, j):
    dims = [0] * alg.quiver.n_vertices
    dims[j] = 1
    return RepModule(alg, dims, {}, check=False)


def projective_module(alg, j):
    """P_j = A e_j on the normal-form words with source j.

    Returns (module, words) where words[v] lists the basis words (application
    order) at vertex v, aligned with the module coordinates.  Cached per
    algebra.
    """
    cache = getattr(alg, "_proj_cache", None)
    if cache is None:
        cache = {}
        alg._proj_cache = cache
    if j in cache:
        return cache[j]
    nv = alg.quiver.n_vertices
    words = [[] for _ in range(nv)]
    for k, (s, w) in enumerate(alg.basis):
        if s == j:
            words[alg.tgt[k]].append(w)
    pos = {}
    for v in range(nv):
        for i, w in enumerate(words[v]):
            pos[w] = (v, i)
    dims = [len(ws) for ws in words]
    fld = alg.field
    maps = {}
    for a, (_, s, t) in enumerate(alg.quiver.arrows):
        m = fld.zeros(dims[t], dims[s])
        for i, w in enumerate(words[s]):
            for bidx, c in alg.nf(j, w + (a,)).items():
                _, bw = alg.basis[bidx]
                _, i2 = pos[bw]
                m[i2, i] = c
        maps[a] = m
    out = (RepModule(alg, dims, maps, check=False), words)
    cache[j] = out
    return out


def direct_sum(mods):
    if not mods:
        raise UsageError("empty direct sum")
    alg = mods[0].alg
    fld = alg.field
    nv = alg.quiver.n_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(nv)]
    maps = {}
    for a, (_, s, t) in enumerate(alg.quiver.arrows):
        blk = fld.zeros(dims[t], dims[s])
        ro = co = 0
        for m in mods:
            blk[ro : ro + m.dims[t], co : co + m.dims[s]] = m.maps[a]
            ro += m.dims[t]
            co += m.dims[s]
        maps[a] = blk
    return RepModule(alg, dims, maps, check=False)


def layered_module(alg, layers, check_layers=True):
    """Strict layered module: consecutive layers are connected by the unique
    arrow between matched vertices acting by 1, and nothing else.

    ``layers`` is a list of vertex-index lists, top first.  A uniserial module
    with descending composition factors (v1,..,vl) is layers [[v1],..,[vl]].
    Raises ConstructionError if the relations fail or the radical layers of
    the result differ from the prescription.
    """
    nv = alg.quiver.n_vertices
    fld = alg.field
    coords = [[] for _ in range(nv)]
    for li, layer in enumerate(layers):
        for v in layer:
            coords[v].append(li)
    dims = [len(c) for c in coords]
    index = {}
    for v in range(nv):
        for i, li in enumerate(coords[v]):
            index[(li, v)] = i
    arrow_lookup = {}
    for a, (_, s, t) in enumerate(alg.quiver.arrows):
        if (s, t) in arrow_lookup:
            raise ConstructionError("layered constructor needs at most one arrow per vertex pair")
        arrow_lookup[(s, t)] = a
    maps = {a: fld.zeros(dims[t], dims[s]) for a, (_, s, t) in enumerate(alg.quiver.arrows)}
    for li in range(len(layers) - 1):
        for v in layers[li]:
            for w in layers[li + 1]:
                a = arrow_lookup.get((v, w))
                if a is None:
                    continue
                maps[a][index[(li + 1, w)], index[(li, v)]] = 1
    try:
        M = RepModule(alg, dims, maps, check=True)
    except ConstructionError as exc:
        raise ConstructionError(
            f"layered module {layers} not realizable over {alg.label}: {exc}") from None
    if check_layers:
        got = radical_layer_vertices(M)
        want = [sorted(layer) for layer in layers]
        if got != want:
            raise ConstructionError(
                f"layered module over {alg.label}: radical layers {got} != prescribed {want}")
    return M


def uniserial_module(alg, factors):
    """Uniserial module with descending composition factors (vertex indices)."""
    return layered_module(alg, [[v] for v in factors])


# ---------------------------------------------------------------------------
# submodules / quotients
# ---------------------------------------------------------------------------

class Sub:
    """Per-vertex row-space bases (canonical rref rows) of an invariant subspace."""

    def __init__(self, mod: RepModule, rows):
        self.mod = mod
        self.rows = []
        for v, r in enumerate(rows):
            arr = np.asarray(r, dtype=_DTYPE)
            d = mod.dims[v]
            if d == 0 or arr.size == 0:
                self.rows.append(np.zeros((0, d), dtype=_DTYPE))
            else:
                self.rows.append(arr.reshape(-1, d))

    @property
    def dims(self):
        return tuple(r.shape[0] for r in self.rows)

    @property
    def dim(self):
        return sum(self.dims)

    def signature(self):
        return tuple(r.tobytes() for r in self.rows)

    def contains(self, other: "Sub") -> bool:
        fld = self.mod.alg.field
        for v in range(len(self.rows)):
            if other.rows[v].shape[0] == 0:
                continue
            stacked = np.vstack([self.rows[v], other.rows[v]])
            if fld.rank(stacked) != self.rows[v].shape[0]:
                return False
        return True


def full_sub(M: RepModule) -> Sub:
    fld = M.alg.field
    return Sub(M, [fld.eye(d) for d in M.dims])


def submodule_closure(M: RepModule, seeds) -> Sub:
    """Smallest submodule containing the given per-vertex row vectors."""
    fld = M.alg.field
    cur = []
    for v, s in enumerate(seeds):
        if len(s):
            cur.append(fld.row_space(np.asarray(s, dtype=_DTYPE).reshape(-1, M.dims[v])))
        else:
            cur.append(np.zeros((0, M.dims[v]), dtype=_DTYPE))
    changed = True
    while changed:
        changed = False
        for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
            if cur[s].shape[0] == 0:
                continue
            img = fld.matmul(M.maps[a], cur[s].T).T
            stacked = np.vstack([cur[t], img]) if cur[t].size else img
            new = fld.row_space(stacked)
            if new.shape[0] != cur[t].shape[0]:
                cur[t] = new
                changed = True
    return Sub(M, cur)


def _radical_step(M: RepModule, rows):
    """Rows spanning J * (the subspace spanned by ``rows``), inside M."""
    fld = M.alg.field
    nv = M.alg.quiver.n_vertices
    acc = [[] for _ in range(nv)]
    for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
        if rows[s].shape[0] and M.dims[t]:
            acc[t].append(fld.matmul(M.maps[a], rows[s].T).T)
    out = []
    for v in range(nv):
        if acc[v]:
            out.append(fld.row_space(np.vstack(acc[v])))
        else:
            out.append(np.zeros((0, M.dims[v]), dtype=_DTYPE))
    return out


def radical_submodule(M: RepModule) -> Sub:
    return Sub(M, _radical_step(M, full_sub(M).rows))


def radical_series(M: RepModule):
    """[M, rad M, rad^2 M, ...] as Sub objects of M, ending at 0."""
    series = [full_sub(M)]
    rows = series[0].rows
    while sum(r.shape[0] for r in rows) > 0:
        rows = _radical_step(M, rows)
        nxt = Sub(M, rows)
        if nxt.dim == series[-1].dim:
            raise ConstructionError("radical series does not descend (arrow ideal not nilpotent?)")
        series.append(nxt)
    return series


def socle_submodule(M: RepModule) -> Sub:
    fld = M.alg.field
    nv = M.alg.quiver.n_vertices
    out = []
    for v in range(nv):
        if M.dims[v] == 0:
            out.append(np.zeros((0, 0), dtype=_DTYPE))
            continue
        outgoing = [M.maps[a] for a, (_, s, _) in enumerate(M.alg.quiver.arrows) if s == v]
        if not outgoing:
            out.append(fld.eye(M.dims[v]))
            continue
        ns = fld.nullspace(np.vstack(outgoing))
        out.append(fld.row_space(ns.T) if ns.size else np.zeros((0, M.dims[v]), dtype=_DTYPE))
    return Sub(M, out)


def sub_module(S: Sub):
    """The submodule as a RepModule plus its inclusion map."""
    M = S.mod
    fld = M.alg.field
    incl = [S.rows[v].T.copy() for v in range(len(S.rows))]
    dims = S.dims
    maps = {}
    for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
        img = fld.matmul(M.maps[a], incl[s]) if dims[s] else fld.zeros(M.dims[t], 0)
        maps[a] = _coords_in_columns(fld, incl[t], img)
    U = RepModule(M.alg, dims, maps, check=False)
    return U, ModMap(U, M, incl)


def quotient_module(S: Sub):
    """The quotient module M / S plus the projection map."""
    M = S.mod
    fld = M.alg.field
    projs, sections = [], []
    for v in range(len(S.rows)):
        if S.rows[v].size:
            R, piv = fld.rref(S.rows[v])
            piv = list(piv)
        else:
            R, piv = S.rows[v], []
        free = [c for c in range(M.dims[v]) if c not in piv]
        Q = np.zeros((len(free), M.dims[v]), dtype=_DTYPE)
        for k, fc in enumerate(free):
            Q[k, fc] = 1
            for i, pc in enumerate(piv):
                Q[k, pc] = R[i, fc]
        L = np.zeros((M.dims[v], len(free)), dtype=_DTYPE)
        for k, fc in enumerate(free):
            L[fc, k] = 1
        projs.append(Q)
        sections.append(L)
    dims = [p.shape[0] for p in projs]
    maps = {}
    for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
        maps[a] = fld.matmul(projs[t], fld.matmul(M.maps[a], sections[s]))
    Q = RepModule(M.alg, dims, maps, check=False)
    return Q, ModMap(M, Q, projs)


def _coords_in_columns(fld: GF, B, V):
    """Solve B X = V where the columns of B are independent."""
    if B.shape[1] == 0:
        if V.any():
            raise ConstructionError("vector outside subspace")
        return np.zeros((0, V.shape[1]), dtype=_DTYPE)
    Aug = np.concatenate([B, V], axis=1)
    R, piv = fld.rref(Aug)
    if any(p >= B.shape[1] for p in piv):
        raise ConstructionError("vector outside subspace")
    return R[: B.shape[1], B.shape[1]:]


# ---------------------------------------------------------------------------
# hom spaces
# ---------------------------------------------------------------------------

def hom(M: RepModule, N: RepModule):
    """Basis of Hom(M, N) as a list of ModMaps."""
    if M.alg is not N.alg:
        raise UsageError("hom requires modules over the same algebra")
    fld = M.alg.field
    nv = M.alg.quiver.n_vertices
    sizes = [N.dims[v] * M.dims[v] for v in range(nv)]
    offs = np.cumsum([0] + sizes)
    total = int(offs[-1])
    if total == 0:
        return []
    rows = []
    for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
        r = N.dims[t] * M.dims[s]
        if r == 0:
            continue
        blk = np.zeros((r, total), dtype=_DTYPE)
        if sizes[t]:
            k1 = np.kron(np.eye(N.dims[t], dtype=np.int64),
                         M.maps[a].T.astype(np.int64)).astype(_DTYPE)
            blk[:, offs[t] : offs[t + 1]] ^= k1
        if sizes[s]:
            k2 = np.kron(N.maps[a].astype(np.int64),
                         np.eye(M.dims[s], dtype=np.int64)).astype(_DTYPE)
            blk[:, offs[s] : offs[s + 1]] ^= k2
        rows.append(blk)
    if rows:
        null = fld.nullspace(np.vstack(rows))
    else:
        null = fld.eye(total)
    out = []
    for k in range(null.shape[1]):
        vec = null[:, k]
        blocks = [vec[offs[v] : offs[v + 1]].reshape(N.dims[v], M.dims[v])
                  for v in range(nv)]
        out.append(ModMap(M, N, blocks))
    return out


def hom_dim(M, N):
    return len(hom(M, N))


def identity_map(M: RepModule) -> ModMap:
    fld = M.alg.field
    return ModMap(M, M, [fld.eye(d) for d in M.dims])


def map_from_combo(basis, coeffs, fld: GF) -> ModMap:
    blocks = [np.zeros_like(b) for b in basis[0].blocks]
    for c, h in zip(coeffs, basis):
        if c:
            for v in range(len(blocks)):
                blocks[v] = blocks[v] ^ fld.ascale(int(c), h.blocks[v])
    return ModMap(basis[0].src, basis[0].dst, blocks)


def end_matrix(M: RepModule, f: ModMap):
    """Block-diagonal total matrix of an endomorphism."""
    n = M.dim
    out = np.zeros((n, n), dtype=_DTYPE)
    off = 0
    for v, d in enumerate(M.dims):
        out[off : off + d, off : off + d] = f.blocks[v]
        off += d
    return out


def map_from_end_matrix(M: RepModule, big) -> ModMap:
    blocks = []
    off = 0
    for d in M.dims:
        blocks.append(np.array(big[off : off + d, off : off + d], dtype=_DTYPE))
        off += d
    return ModMap(M, M, blocks)


# ---------------------------------------------------------------------------
# tops, covers, syzygies
# ---------------------------------------------------------------------------

def top_multiplicities(M: RepModule):
    rad = radical_submodule(M)
    return tuple(M.dims[v] - rad.dims[v] for v in range(len(M.dims)))


def top_lifts(M: RepModule):
    """Vectors of M lifting a basis of M/rad M, as (vertex, vector) pairs."""
    fld = M.alg.field
    rad = radical_submodule(M)
    out = []
    for v in range(len(M.dims)):
        if M.dims[v] == 0:
            continue
        if rad.rows[v].size:
            _, piv = fld.rref(rad.rows[v])
            piv = list(piv)
        else:
            piv = []
        for fc in (c for c in range(M.dims[v]) if c not in piv):
            vec = np.zeros(M.dims[v], dtype=_DTYPE)
            vec[fc] = 1
            out.append((v, vec))
    return out


def projective_cover(M: RepModule):
    """Minimal projective cover (P, pi)."""
    if M.dim == 0:
        raise UsageError("projective cover of the zero module")
    alg = M.alg
    fld = alg.field
    lifts = top_lifts(M)
    summands = []
    pi_cols = {v: [] for v in range(alg.quiver.n_vertices)}
    for (j, u) in lifts:
        P_j, words = projective_module(alg, j)
        summands.append(P_j)
        for v in range(alg.quiver.n_vertices):
            for w in words[v]:
                col = fld.matmul(M.path_matrix(w, j), u.reshape(-1, 1)).ravel()
                pi_cols[v].append(col)
    P = direct_sum(summands)
    blocks = []
    for v in range(alg.quiver.n_vertices):
        if pi_cols[v]:
            blocks.append(np.column_stack(pi_cols[v]).astype(_DTYPE))
        else:
            blocks.append(np.zeros((M.dims[v], 0), dtype=_DTYPE))
    # per-vertex column order of direct_sum is summand-major, matching fill order
    return P, ModMap(P, M, blocks)


def kernel_module(f: ModMap):
    """Kernel of a module map, with its inclusion into the source."""
    M = f.src
    fld = M.alg.field
    incl = []
    for v in range(len(M.dims)):
        if M.dims[v] == 0:
            incl.append(np.zeros((0, 0), dtype=_DTYPE))
        elif f.blocks[v].shape[0] == 0:
            incl.append(fld.eye(M.dims[v]))
        else:
            incl.append(fld.nullspace(f.blocks[v]))
    dims = [k.shape[1] for k in incl]
    maps = {}
    for a, (_, s, t) in enumerate(M.alg.quiver.arrows):
        img = fld.matmul(M.maps[a], incl[s]) if dims[s] else fld.zeros(M.dims[t], 0)
        maps[a] = _coords_in_columns(fld, incl[t], img)
    K = RepModule(M.alg, dims, maps, check=False)
    return K, ModMap(K, M, incl)


def dual_module(M: RepModule) -> RepModule:
    """k-dual over the opposite algebra (arrow maps transpose)."""
    op = M.alg.opposite()
    maps = {a: M.maps[a].T.copy() for a in M.maps}
    return RepModule(op, M.dims, maps, check=False)


def omega(M: RepModule) -> RepModule:
    _, pi = projective_cover(M)
    K, _ = kernel_module(pi)
    return K


def omega_inv(M: RepModule) -> RepModule:
    return dual_module(omega(dual_module(M)))


def syzygy(M: RepModule, direction: str = "omega") -> RepModule:
    """Omega / Omega^{-1} with the projective-summand precondition enforced."""
    if direction not in ("omega", "omega_inv"):
        raise UsageError("direction must be 'omega' or 'omega_inv'")
    if has_projective_summand(M):
        raise UsageError("syzygy of a module with a projective summand")
    return omega(M) if direction == "omega" else omega_inv(M)


def has_projective_summand(M: RepModule, seed: int = 11) -> bool:
    """Split-projection search; exact when the cover is an isomorphism or the
    relevant Hom spaces are small enough to enumerate, sampled otherwise."""
    if M.dim == 0:
        return False
    alg = M.alg
    fld = alg.field
    P, _ = projective_cover(M)
    if P.dim == M.dim:
        return True
    tops = top_multiplicities(M)
    for j, mult in enumerate(tops):
        if mult == 0:
            continue
        P_j, _ = projective_module(alg, j)
        if P_j.dim > M.dim:
            continue
        h_in = hom(P_j, M)
        h_out = hom(M, P_j)
        if not h_in or not h_out:
            continue
        if _split_pair_exists(fld, P_j, h_in, h_out, seed):
            return True
    return False


def _split_pair_exists(fld, P, h_in, h_out, seed):
    idm = end_matrix(P, identity_map(P))
    for ci in _combo_iter(fld, len(h_in), seed):
        f = map_from_combo(h_in, ci, fld)
        for cg in _combo_iter(fld, len(h_out), seed + 1):
            g = map_from_combo(h_out, cg, fld)
            if np.array_equal(end_matrix(P, g.compose(f)), idm):
                return True
    return False


def _combo_iter(fld: GF, n: int, seed: int):
    """All nonzero coefficient tuples when small, else a seeded random sample."""
    if n == 0:
        return
    if fld.q ** n <= 2 ** EXHAUSTIVE_DIM:
        for code in range(1, fld.q ** n):
            out = []
            c = code
            for _ in range(n):
                out.append(c % fld.q)
                c //= fld.q
            yield tuple(out)
        return
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIES):
        out = tuple(rng.randrange(fld.q) for _ in range(n))
        if any(out):
            yield out


# ---------------------------------------------------------------------------
# stable homs, Ext^1
# ---------------------------------------------------------------------------

def stable_hom_dim(M: RepModule, N: RepModule) -> int:
    """dim Hom(M,N) minus the maps factoring through the cover of N (valid
    over these self-injective algebras)."""
    H = hom(M, N)
    if not H:
        return 0
    P, pi = projective_cover(N)
    through = [pi.compose(h) for h in hom(M, P)]
    fld = M.alg.field
    if through:
        flat = np.array([t.to_flat() for t in through], dtype=_DTYPE)
        rk = fld.rank(flat)
    else:
        rk = 0
    return len(H) - rk


def stable_end(M: RepModule) -> int:
    return stable_hom_dim(M, M)


def ext1(M: RepModule, N: RepModule) -> int:
    """dim Ext^1 = dim of stable maps Omega(M) -> N."""
    if M.alg is not N.alg:
        raise UsageError("ext1 requires modules over the same algebra")
    return stable_hom_dim(omega(M), N)


# ---------------------------------------------------------------------------
# series and layer data
# ---------------------------------------------------------------------------

def loewy_length(M: RepModule) -> int:
    return len(radical_series(M)) - 1 if M.dim else 0


def radical_layer_vertices(M: RepModule):
    """Vertex multiset per radical layer, top first, as sorted lists."""
    series = radical_series(M)
    layers = []
    for i in range(len(series) - 1):
        layer = []
        for v in range(len(M.dims)):
            layer.extend([v] * (series[i].dims[v] - series[i + 1].dims[v]))
        layers.append(sorted(layer))
    return layers


def socle_layer_vertices(M: RepModule):
    layers = []
    cur = M
    while cur.dim:
        soc = socle_submodule(cur)
        layers.append(sorted(
            v for v in range(len(cur.dims)) for _ in range(soc.dims[v])))
        cur, _ = quotient_module(soc)
    return layers


def is_uniserial(M: RepModule) -> bool:
    return all(len(l) == 1 for l in radical_layer_vertices(M))


def rad_power_sub(M: RepModule, k: int) -> Sub:
    series = radical_series(M)
    if k < len(series):
        return series[k]
    return Sub(M, [np.zeros((0, d), dtype=_DTYPE) for d in M.dims])


# ---------------------------------------------------------------------------
# endomorphism algebra structure
# ---------------------------------------------------------------------------

def _matrix_power(fld, A, k):
    out = fld.eye(A.shape[0])
    B = A
    while k:
        if k & 1:
            out = fld.matmul(out, B)
        B = fld.matmul(B, B)
        k >>= 1
    return out


def algebra_radical(fld: GF, mats):
    """Jacobson radical of the span of ``mats`` (a unital matrix algebra
    basis) via the characteristic-2 chain of char-poly coefficient
    conditions; each stage solves a Frobenius-twisted linear system."""
    if not mats:
        return []
    n = mats[0].shape[0]
    cur = [np.asarray(m, dtype=_DTYPE) for m in mats]
    i = 0
    while 2 ** i <= n and cur:
        coeff_idx = n - 2 ** i
        rows = []
        for y in cur:
            rows.append([fld.char_poly(fld.matmul(x, y))[coeff_idx] for x in cur])
        null = fld.nullspace(np.array(rows, dtype=_DTYPE))
        newbasis = []
        for k in range(null.shape[1]):
            x = np.zeros((n, n), dtype=_DTYPE)
            for c, m in zip(null[:, k], cur):
                lam = fld.frobenius_inv(int(c), i)
                if lam:
                    x = x ^ fld.ascale(lam, m)
            newbasis.append(x)
        cur = newbasis
        i += 1
    if not cur:
        return []
    flat = np.array([m.ravel() for m in cur], dtype=_DTYPE)
    R = fld.row_space(flat)
    n0 = mats[0].shape[0]
    return [R[k].reshape(n0, n0) for k in range(R.shape[0])]


def brute_force_radical(fld: GF, mats):
    """Oracle for tests: rad = {x : 1 + y x invertible for all y}.  Exponential
    in the dimension; only for tiny algebras."""
    if not mats:
        return []
    n = mats[0].shape[0]
    d = len(mats)
    if fld.q ** d > 2 ** 16:
        raise UsageError("brute_force_radical: algebra too large")
    elems = []
    for code in range(fld.q ** d):
        c = code
        x = np.zeros((n, n), dtype=_DTYPE)
        for j in range(d):
            if c % fld.q:
                x = x ^ fld.ascale(c % fld.q, mats[j])
            c //= fld.q
        elems.append(x)
    eye = fld.eye(n)
    rad = []
    for x in elems:
        if all(fld.is_invertible(eye ^ fld.matmul(y, x)) for y in elems):
            rad.append(x)
    flat = np.array([m.ravel() for m in rad], dtype=_DTYPE)
    R = fld.row_space(flat)
    return [R[k].reshape(n, n) for k in range(R.shape[0])]


def is_indecomposable(M: RepModule, seed: int = 23) -> bool:
    """End(M) local?  Decided via the radical of End; when End/rad has
    dimension > 1 a Fitting splitting is searched, and failure to find one is
    reported as a splitting-field problem rather than guessed."""
    if M.dim == 0:
        return False
    E = hom(M, M)
    if len(E) == 1:
        return True
    fld = M.alg.field
    mats = [end_matrix(M, f) for f in E]
    rad = algebra_radical(fld, mats)
    if len(E) - len(rad) == 1:
        return True
    n = M.dim
    candidates = list(mats)
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIES):
        x = np.zeros((n, n), dtype=_DTYPE)
        for m in mats:
            c = rng.randrange(fld.q)
            if c:
                x = x ^ fld.ascale(c, m)
        candidates.append(x)
    eye = fld.eye(n)
    for x in candidates:
        for shift in range(fld.q):
            y = x ^ fld.ascale(shift, eye) if shift else x
            p = _matrix_power(fld, y, n)
            r = fld.rank(p)
            if 0 < r < n:
                return False
    raise SplittingFieldError(
        f"End/rad has dimension {len(E) - len(rad)} > 1 and no splitting was found; "
        "retry with a larger field extension e")


def is_isomorphic(M: RepModule, N: RepModule, seed: int = 37) -> bool:
    """Search Hom(M,N) for an invertible map, after dimension prefilters."""
    if M.alg is not N.alg:
        raise UsageError("isomorphism test requires a common algebra")
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    H = hom(M, N)
    if not H:
        return False
    if not (len(H) == hom_dim(M, M) == hom_dim(N, N)):
        return False
    fld = M.alg.field
    for coeffs in _combo_iter(fld, len(H), seed):
        if map_from_combo(H, coeffs, fld).is_iso():
            return True
    return False


def nilpotency_index(fld: GF, A) -> int:
    """Least m with A^m = 0, or 0 if A is not nilpotent."""
    n = A.shape[0]
    B = fld.eye(n)
    for m in range(1, n + 1):
        B = fld.matmul(B, A)
        if not B.any():
            return m
    return 0


# ---------------------------------------------------------------------------
# prescribed submodule search
# ---------------------------------------------------------------------------

def unique_submodule_with_factors(M: RepModule, top_vertex: int, multiset):
    """The unique submodule generated at top_vertex whose per-vertex dimension
    vector equals ``multiset``; non-existence or ambiguity is an error."""
    fld = M.alg.field
    d = M.dims[top_vertex]
    if fld.q ** d > 2 ** 16:
        raise ConstructionError("submodule search space too large")
    want = tuple(multiset)
    found = {}
    for code in range(1, fld.q ** d):
        vec = np.zeros(d, dtype=_DTYPE)
        c = code
        for j in range(d):
            vec[j] = c % fld.q
            c //= fld.q
        seeds = [[] for _ in M.dims]
        seeds[top_vertex] = [vec]
        S = submodule_closure(M, seeds)
        if S.dims == want:
            found[S.signature()] = S
    if not found:
        raise ConstructionError(f"no submodule with factors {want} generated at {top_vertex}")
    if len(found) > 1:
        raise ConstructionError(
            f"submodule with factors {want} at vertex {top_vertex} is not unique "
            f"({len(found)} found)")
    return next(iter(found.values()))


# ---------------------------------------------------------------------------
# self-injectivity certificate
# ---------------------------------------------------------------------------

def selfinjectivity_certificate(alg: PresentedAlgebra):
    """Every projective must have a simple socle, with the socle vertices a
    permutation of the tops; returns the permutation."""
    perm = []
    for j in range(alg.quiver.n_vertices):
        P, _ = projective_module(alg, j)
        soc = socle_submodule(P)
        if soc.dim != 1:
            raise ConstructionError(
                f"{alg.label}: P_{j} has socle dimension {soc.dim}, not simple")
        v = next(v for v in range(len(P.dims)) if soc.dims[v])
        perm.append(v)
    if sorted(perm) != list(range(alg.quiver.n_vertices)):
        raise ConstructionError(f"{alg.label}: socle vertices {perm} are not a permutation")
    return perm
