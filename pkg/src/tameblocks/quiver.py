"""Quivers, path-algebra polynomials, and completion of a relation ideal to a
finite normal-form basis with structure constants.

Composition convention: ``f * g`` means "apply g first, then f" (function
style), matching the usual way relations like ``beta*gamma`` are written for
these algebras.  Internally a path is a tuple of arrow indices in
*application* order (first applied first), so the printed form is the
reverse of the stored tuple.

Coefficients live in GF(2^e); addition of field codes is XOR throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import CompletionError, ConventionError
from .gf import GF


@dataclass(frozen=True)
class Quiver:
    name: str
    vertices: tuple
    arrows: tuple  # of (name, src, tgt) with vertex indices

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ConventionError(f"duplicate arrow names in quiver {self.name}")
        for nm, s, t in self.arrows:
            if not (0 <= s < len(self.vertices) and 0 <= t < len(self.vertices)):
                raise ConventionError(f"arrow {nm} has undeclared endpoint")

    @property
    def n_vertices(self):
        return len(self.vertices)

    def arrow_index(self, name: str) -> int:
        for i, (nm, _, _) in enumerate(self.arrows):
            if nm == name:
                return i
        raise KeyError(name)

    def src(self, i: int) -> int:
        return self.arrows[i][1]

    def tgt(self, i: int) -> int:
        return self.arrows[i][2]

    def word_src(self, word: tuple, at_vertex: int = None) -> int:
        return self.src(word[0]) if word else at_vertex

    def word_tgt(self, word: tuple, at_vertex: int = None) -> int:
        return self.tgt(word[-1]) if word else at_vertex

    def atom(self, name: str, fld: GF) -> "NCPoly":
        i = self.arrow_index(name)
        return NCPoly(self, fld, self.src(i), self.tgt(i), {(i,): 1})

    def idempotent(self, v: int, fld: GF) -> "NCPoly":
        return NCPoly(self, fld, v, v, {(): 1})

    def atoms(self, fld: GF) -> dict:
        return {nm: self.atom(nm, fld) for nm, _, _ in self.arrows}

    def reversed(self) -> "Quiver":
        return Quiver(self.name + "^op", self.vertices,
                      tuple((nm, t, s) for nm, s, t in self.arrows))


class NCPoly:
    """Homogeneous linear combination of parallel paths (same source/target)."""

    __slots__ = ("quiver", "field", "src", "tgt", "terms")

    def __init__(self, quiver, fld, src, tgt, terms):
        self.quiver = quiver
        self.field = fld
        self.src = src
        self.tgt = tgt
        self.terms = {w: c for w, c in terms.items() if c}

    def _require_parallel(self, other):
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ConventionError(
                f"inhomogeneous combination: ({self.src}->{self.tgt}) vs ({other.src}->{other.tgt})")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._require_parallel(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) ^ c
        return NCPoly(self.quiver, self.field, self.src, self.tgt, terms)

    __radd__ = __add__
    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        # self * other = self after other (apply other first)
        if other.tgt != self.src:
            raise ConventionError(
                f"non-composable product: target {other.tgt} != source {self.src}")
        fld = self.field
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w2 + w1
                terms[w] = terms.get(w, 0) ^ fld.mul(c1, c2)
        return NCPoly(self.quiver, fld, other.src, self.tgt, terms)

    def scale(self, c: int):
        fld = self.field
        return NCPoly(self.quiver, fld, self.src, self.tgt,
                      {w: fld.mul(c, x) for w, x in self.terms.items()})

    __rmul__ = scale

    def __pow__(self, k: int):
        if self.src != self.tgt:
            raise ConventionError("power of a non-loop path")
        out = self.quiver.idempotent(self.src, self.field)
        for _ in range(k):
            out = self * out
        return out

    def is_zero(self):
        return not self.terms

    def reversed_on(self, quiver_op) -> "NCPoly":
        return NCPoly(quiver_op, self.field, self.tgt, self.src,
                      {tuple(reversed(w)): c for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        names = [a[0] for a in self.quiver.arrows]
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            body = "*".join(names[i] for i in reversed(w)) if w else f"e{self.src}"
            parts.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"<NCPoly {self.src}->{self.tgt}: {self}>"


@dataclass
class RelationIdeal:
    generators: list

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                raise ConventionError("zero relation generator")


def _order_key(word):
    return (len(word), word)


class Rewriter:
    """Confluent rewriting system on composable words (leads are monic)."""

    def __init__(self, fld: GF):
        self.field = fld
        self.rules = {}       # lead word -> tail term dict (all terms < lead)
        self._by_first = {}   # first arrow -> sorted list of leads
        self._by_last = {}

    def _reindex(self):
        self._by_first = {}
        self._by_last = {}
        for L in self.rules:
            self._by_first.setdefault(L[0], []).append(L)
            self._by_last.setdefault(L[-1], []).append(L)
        for v in self._by_first.values():
            v.sort(key=_order_key)
        for v in self._by_last.values():
            v.sort(key=_order_key)

    def add_rule(self, lead, tail):
        self.rules[lead] = tail
        self._reindex()

    def remove_rule(self, lead):
        del self.rules[lead]
        self._reindex()

    def _find_reduction(self, word):
        for i in range(len(word)):
            for L in self._by_first.get(word[i], ()):
                if len(L) <= len(word) - i and word[i : i + len(L)] == L:
                    return i, L
        return None

    def normal_form(self, terms):
        """Fully reduce a word->coeff dict; the admissible order guarantees
        termination."""
        fld = self.field
        terms = {w: c for w, c in terms.items() if c}
        stack = sorted(terms, key=_order_key)
        while stack:
            w = stack.pop()
            if w not in terms:
                continue
            hit = self._find_reduction(w)
            if hit is None:
                continue
            i, L = hit
            c = terms.pop(w)
            pre, suf = w[:i], w[i + len(L):]
            for tw, tc in self.rules[L].items():
                nw = pre + tw + suf
                nc = terms.get(nw, 0) ^ fld.mul(c, tc)
                if nc:
                    terms[nw] = nc
                    stack.append(nw)
                else:
                    terms.pop(nw, None)
        return terms

    def is_irreducible_word(self, word):
        return self._find_reduction(word) is None

    def suffix_reducible(self, word):
        """Check only suffixes ending at the last letter (for BFS extension)."""
        for L in self._by_last.get(word[-1], ()):
            if len(L) <= len(word) and word[-len(L):] == L:
                return True
        return False


def _overlap_spolys(rw: Rewriter, L1, L2):
    """S-polynomials from proper overlaps suffix(L1) == prefix(L2)."""
    out = []
    fld = rw.field
    t1, t2 = rw.rules[L1], rw.rules[L2]
    for k in range(1, min(len(L1), len(L2))):
        if L1[len(L1) - k:] == L2[:k]:
            u = L1[: len(L1) - k]
            v = L2[k:]
            terms = {}
            for w, c in t1.items():
                nw = w + v
                terms[nw] = terms.get(nw, 0) ^ c
            for w, c in t2.items():
                nw = u + w
                terms[nw] = terms.get(nw, 0) ^ c
            terms = {w: c for w, c in terms.items() if c}
            if terms:
                out.append(terms)
    return out


def complete(quiver: Quiver, ideal: RelationIdeal, fld: GF, label: str = "",
             max_rules: int = 4000, max_word_len: int = 400,
             max_basis: int = 40000) -> "PresentedAlgebra":
    """Complete the relation ideal to a confluent system and enumerate the
    finite monomial basis.  Raises CompletionError when a guard trips."""
    rw = Rewriter(fld)
    pending = deque()
    for g in ideal.generators:
        for w in g.terms:
            if quiver.word_src(w, g.src) != g.src or quiver.word_tgt(w, g.tgt) != g.tgt:
                raise ConventionError(f"{label}: relation term not parallel to generator")
        pending.append(dict(g.terms))

    steps = 0
    while pending:
        steps += 1
        if steps > 200000:
            raise CompletionError(f"{label}: completion step guard exceeded")
        terms = rw.normal_form(pending.popleft())
        if not terms:
            continue
        lead = max(terms, key=_order_key)
        if len(lead) == 0:
            raise CompletionError(f"{label}: vertex idempotent lies in the ideal")
        if len(lead) > max_word_len:
            raise CompletionError(f"{label}: rule length guard exceeded")
        lc = terms.pop(lead)
        inv = fld.inv(lc)
        tail = {w: fld.mul(inv, c) for w, c in terms.items()}
        # retire rules whose lead strictly contains the new lead
        for L2 in list(rw.rules):
            if len(L2) >= len(lead) and L2 != lead:
                if any(L2[i : i + len(lead)] == lead for i in range(len(L2) - len(lead) + 1)):
                    old_tail = rw.rules[L2]
                    rw.remove_rule(L2)
                    requeue = {L2: 1}
                    for w, c in old_tail.items():
                        requeue[w] = requeue.get(w, 0) ^ c
                    pending.append(requeue)
        rw.add_rule(lead, tail)
        if len(rw.rules) > max_rules:
            raise CompletionError(f"{label}: rule count guard exceeded")
        for L2 in list(rw.rules):
            for sp in _overlap_spolys(rw, lead, L2):
                pending.append(sp)
            if L2 != lead:
                for sp in _overlap_spolys(rw, L2, lead):
                    pending.append(sp)

    # reduce stored tails so lookups give normal forms in one pass
    for L in list(rw.rules):
        rw.rules[L] = rw.normal_form(rw.rules[L])

    # confluence certificate: every remaining overlap resolves to zero
    leads = list(rw.rules)
    for L1 in leads:
        for L2 in leads:
            for sp in _overlap_spolys(rw, L1, L2):
                if rw.normal_form(sp):
                    raise CompletionError(f"{label}: completion not confluent")

    # enumerate irreducible words breadth-first
    basis = [(v, ()) for v in range(quiver.n_vertices)]
    frontier = list(basis)
    out_arrows = {v: [i for i, (_, s, _) in enumerate(quiver.arrows) if s == v]
                  for v in range(quiver.n_vertices)}
    while frontier:
        nxt = []
        for src_v, w in frontier:
            cur_tgt = quiver.word_tgt(w, src_v)
            for a in out_arrows[cur_tgt]:
                nw = w + (a,)
                if not rw.suffix_reducible(nw):
                    nxt.append((src_v, nw))
        basis.extend(nxt)
        if len(basis) > max_basis:
            raise CompletionError(f"{label}: basis size guard exceeded (infinite quotient?)")
        frontier = nxt

    basis.sort(key=lambda b: (_order_key(b[1]), b[0]))
    return PresentedAlgebra(quiver, fld, list(ideal.generators), rw, basis, label)


class PresentedAlgebra:
    """kQ/I on its finite normal-form monomial basis."""

    def __init__(self, quiver, fld, relations, rewriter, basis, label=""):
        self.quiver = quiver
        self.field = fld
        self.relations = relations
        self.rewriter = rewriter
        self.basis = basis
        self.label = label or quiver.name
        self.index = {b: i for i, b in enumerate(basis)}
        self.src = [b[0] for b in basis]
        self.tgt = [quiver.word_tgt(w, v) for v, w in basis]
        self._mult_cache = {}
        self._opposite = None

    @property
    def dim(self):
        return len(self.basis)

    def vertex_pair_dims(self):
        """Matrix with (i, j) entry dim e_i A e_j (target i, source j)."""
        nv = self.quiver.n_vertices
        out = [[0] * nv for _ in range(nv)]
        for k in range(self.dim):
            out[self.tgt[k]][self.src[k]] += 1
        return out

    def nf(self, src_v: int, word: tuple) -> dict:
        """Normal form of a word as {basis index: coeff}."""
        terms = self.rewriter.normal_form({word: 1})
        return {self.index[(src_v, w)]: c for w, c in terms.items()}

    def trivial_index(self, v: int) -> int:
        return self.index[(v, ())]

    def mult(self, i: int, j: int) -> dict:
        """Basis product b_i * b_j (apply b_j first) as {basis index: coeff}."""
        key = (i, j)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        vj, wj = self.basis[j]
        vi, wi = self.basis[i]
        if self.tgt[j] != vi:
            out = {}
        else:
            out = self.nf(vj, wj + wi)
        self._mult_cache[key] = out
        return out

    def assoc_check(self) -> bool:
        """(ab)c == a(bc) on all basis triples."""
        fld = self.field
        n = self.dim
        for i in range(n):
            for j in range(n):
                if self.tgt[j] != self.src[i]:
                    continue
                ij = self.mult(i, j)
                for k in range(n):
                    if self.tgt[k] != self.src[j]:
                        continue
                    left = {}
                    for m, c in ij.items():
                        for r, c2 in self.mult(m, k).items():
                            left[r] = left.get(r, 0) ^ fld.mul(c, c2)
                    right = {}
                    for m, c in self.mult(j, k).items():
                        for r, c2 in self.mult(i, m).items():
                            right[r] = right.get(r, 0) ^ fld.mul(c, c2)
                    if {m: c for m, c in left.items() if c} != {m: c for m, c in right.items() if c}:
                        return False
        return True

    def opposite(self) -> "PresentedAlgebra":
        """The opposite algebra, completed on the reversed quiver."""
        if self._opposite is None:
            qop = self.quiver.reversed()
            rels = [g.reversed_on(qop) for g in self.relations]
            self._opposite = complete(qop, RelationIdeal(rels), self.field,
                                      label=self.label + "^op")
            self._opposite._opposite = self
        return self._opposite

    def __repr__(self):
        return f"<PresentedAlgebra {self.label} dim={self.dim}>"
