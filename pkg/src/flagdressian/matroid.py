"""Matroids given by explicit basis lists on the ground set {0, ..., n-1}."""
from functools import cached_property
from itertools import combinations

from . import polyhedra

MAX_N = 16


class MatroidError(ValueError):
    """Basis family violating the exchange axiom. `witness` is (B, B', i)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _mask(s):
    m = 0
    for i in s:
        m |= 1 << i
    return m


def _set(mask, n):
    return tuple(i for i in range(n) if mask >> i & 1)


def exchange_violation(bases):
    """First (B, B', i) with no j in B'-B such that B - i + j is a basis, else None."""
    bases = sorted(set(tuple(sorted(b)) for b in bases))
    bs = set(bases)
    for B in bases:
        sB = set(B)
        for B2 in bases:
            s2 = set(B2)
            for i in sorted(sB - s2):
                if not any(tuple(sorted(sB - {i} | {j})) in bs for j in s2 - sB):
                    return (B, B2, i)
    return None


class Matroid:
    def __init__(self, n, r, bases):
        self.n = n
        self.r = r
        self.bases = frozenset(tuple(sorted(b)) for b in bases)

    def __eq__(self, other):
        return isinstance(other, Matroid) and (self.n, self.r, self.bases) == (other.n, other.r, other.bases)

    def __hash__(self):
        return hash((self.n, self.r, self.bases))

    def __repr__(self):
        return "Matroid(n=%d, r=%d, %d bases)" % (self.n, self.r, len(self.bases))

    @cached_property
    def _basis_masks(self):
        return [_mask(b) for b in self.bases]

    @cached_property
    def _rank_table(self):
        masks = self._basis_masks
        return [max(bin(s & b).count("1") for b in masks) for s in range(1 << self.n)]

    def rank(self, S):
        s = _mask(S)
        if self.n <= 10:
            return self._rank_table[s]
        return max(bin(s & b).count("1") for b in self._basis_masks)

    def is_independent(self, S):
        return self.rank(S) == len(set(S))

    def loops(self):
        return frozenset(i for i in range(self.n) if not any(i in b for b in self.bases))

    def coloops(self):
        return frozenset(i for i in range(self.n) if all(i in b for b in self.bases))

    @cached_property
    def _circuits(self):
        out = []
        for k in range(1, self.r + 2):
            for S in combinations(range(self.n), k):
                if self.rank(S) < k and all(self.rank(S[:t] + S[t + 1 :]) == k - 1 for t in range(k)):
                    out.append(S)
        return frozenset(out)

    def circuits(self):
        return self._circuits

    def dual(self):
        full = set(range(self.n))
        return Matroid(self.n, self.n - self.r, [tuple(sorted(full - set(b))) for b in self.bases])

    def restrict(self, S):
        """(M|_S relabelled to 0..|S|-1, labels) where labels[k] is the original element."""
        labels = tuple(sorted(set(S)))
        k = self.rank(labels)
        pos = {e: t for t, e in enumerate(labels)}
        bases = {tuple(pos[e] for e in b if e in pos) for b in self.bases if len(set(b) & set(labels)) == k}
        return Matroid(len(labels), k, bases), labels

    def contract(self, S):
        """(M/_S on the complement, relabelled, labels)."""
        S = set(S)
        labels = tuple(i for i in range(self.n) if i not in S)
        k = self.rank(S)
        pos = {e: t for t, e in enumerate(labels)}
        bases = {tuple(pos[e] for e in b if e in pos) for b in self.bases if len(set(b) & S) == k}
        return Matroid(len(labels), self.r - k, bases), labels

    def base_vertices(self):
        return [tuple(int(i in b) for i in range(self.n)) for b in sorted(self.bases)]


def validate_matroid(n, r, bases):
    """Matroid from a candidate basis family; raises MatroidError with a witness on failure."""
    if n > MAX_N:
        raise ValueError("ground sets larger than %d are not supported" % MAX_N)
    bases = [tuple(sorted(b)) for b in bases]
    if not bases:
        raise ValueError("empty basis family")
    for b in bases:
        if len(set(b)) != r or len(b) != r:
            raise ValueError("basis %s does not have cardinality %d" % (b, r))
        if any(not 0 <= i < n for i in b):
            raise ValueError("basis %s is not a subset of the ground set" % (b,))
    w = exchange_violation(bases)
    if w is not None:
        raise MatroidError("exchange axiom fails for B=%s, B'=%s, i=%d" % w, w)
    return Matroid(n, r, bases)


def is_matroid(n, r, bases):
    try:
        validate_matroid(n, r, bases)
    except MatroidError:
        return False
    return True


def uniform(r, n):
    return Matroid(n, r, combinations(range(n), r))


def rank(M, S):
    return M.rank(S)


def circuits(M):
    return M.circuits()


def dual(M):
    return M.dual()


def restrict(M, S):
    return M.restrict(S)


def contract(M, S):
    return M.contract(S)


def _quotient_by_rank(Mq, M):
    # rk_q(B) - rk_q(A) <= rk(B) - rk(A) for all A <= B telescopes to single-element steps
    n = M.n
    for s in range(1 << n):
        A = _set(s, n)
        rq, r = Mq.rank(A), M.rank(A)
        for e in range(n):
            if not s >> e & 1:
                B = A + (e,)
                if Mq.rank(B) - rq > M.rank(B) - r:
                    return False
    return True


def _quotient_by_circuits(Mq, M):
    cq = [set(c) for c in Mq.circuits()]
    for C in M.circuits():
        C = set(C)
        covered = set()
        for D in cq:
            if D <= C:
                covered |= D
        if covered != C:
            return False
    return True


def is_quotient(Mq, M):
    """Is Mq a quotient of M (Mq <<- M)? Rank test, cross-checked by the circuit test."""
    if Mq.n != M.n:
        raise ValueError("quotient test needs a common ground set")
    a = _quotient_by_rank(Mq, M)
    b = _quotient_by_circuits(Mq, M)
    if a != b:
        raise AssertionError("rank and circuit quotient tests disagree on %r, %r" % (Mq, M))
    return a


class FlagMatroid:
    def __init__(self, constituents):
        self.constituents = tuple(constituents)

    @property
    def n(self):
        return self.constituents[0].n

    @property
    def ranks(self):
        return tuple(M.r for M in self.constituents)

    def __repr__(self):
        return "FlagMatroid(ranks=%s, n=%d)" % (self.ranks, self.n)


def validate_flag(constituents):
    cons = list(constituents)
    if not cons:
        raise ValueError("a flag needs at least one constituent")
    if len({M.n for M in cons}) != 1:
        raise ValueError("constituents live on different ground sets")
    for a, b in zip(cons, cons[1:]):
        if a.r > b.r:
            raise ValueError("ranks must weakly increase")
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            if not is_quotient(cons[i], cons[j]):
                raise MatroidError("constituent %d is not a quotient of constituent %d" % (i, j), (i, j))
    return FlagMatroid(cons)


def is_flag_matroid(constituents):
    try:
        validate_flag(constituents)
    except MatroidError:
        return False
    return True


# ---------------------------------------------------------------------------
# polytopes


def polytope_edges(points):
    """(vertices, edges) of Conv(points); edges as pairs of vertex indices."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    if len(pts) <= 1:
        return pts, []
    n = len(pts[0])
    gens = [list(p) + [1] for p in pts]
    lin, facets, _ = polyhedra.dd_from_hrep(n + 1, [], gens)
    tight = []
    for p in gens:
        tight.append(frozenset(k for k, f in enumerate(facets) if sum(int(a) * b for a, b in zip(f, p)) == 0))
    verts = [i for i in range(len(pts)) if not any(j != i and tight[i] <= tight[j] for j in range(len(pts)))]
    edges = []
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            z = tight[verts[a]] & tight[verts[b]]
            if not any(k not in (a, b) and z <= tight[verts[k]] for k in range(len(verts))):
                edges.append((a, b))
    return [pts[i] for i in verts], edges


def _homogeneous(points):
    sums = {sum(p) for p in points}
    if len(sums) > 1:
        raise ValueError("points do not have a constant coordinate sum")


def is_generalized_permutohedron(vertices):
    vertices = [tuple(v) for v in vertices]
    _homogeneous(vertices)
    verts, edges = polytope_edges(vertices)
    for a, b in edges:
        d = [x - y for x, y in zip(verts[a], verts[b])]
        nz = [x for x in d if x != 0]
        if len(nz) != 2 or nz[0] != -nz[1]:
            return False
    return True


def is_flag_base_polytope(vertices, ranks):
    vertices = [tuple(v) for v in vertices]
    if not is_generalized_permutohedron(vertices):
        return False
    n = len(vertices[0])
    target = tuple(sorted((sum(1 for r in ranks if i < r) for i in range(n)), reverse=True))
    verts, _ = polytope_edges(vertices)
    return all(tuple(sorted(v, reverse=True)) == target for v in verts)
