"""Valuated matroids: Pluecker vectors, circuits, duality, minors and
membership in projective tropical linear spaces."""
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import polyhedra
from .matroid import Matroid, MatroidError, validate_matroid
from .trop import INF, ProjPoint, min_achieved_twice, trop_rat


class ValuationError(ValueError):
    """Pluecker vector violating the exchange axiom; `witness` is (B, B', i)."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _key(B):
    return tuple(sorted(B))


class PlueckerVector:
    """A vector in T^(n choose r); only finite values are stored."""

    def __init__(self, n, r, values):
        self.n = n
        self.r = r
        vals = {}
        for B, v in dict(values).items():
            B = _key(B)
            if len(B) != r or len(set(B)) != r or any(not 0 <= i < n for i in B):
                raise ValueError("%s is not an %d-subset of range(%d)" % (B, r, n))
            v = trop_rat(v)
            if v is not INF:
                vals[B] = v
        if not vals:
            raise ValueError("a Pluecker vector needs at least one finite coordinate")
        self.values = vals

    def __getitem__(self, B):
        return self.values.get(_key(B), INF)

    def support(self):
        return frozenset(self.values)

    def subsets(self):
        return list(combinations(range(self.n), self.r))

    def as_tuple(self):
        return tuple(self[B] for B in self.subsets())

    def __eq__(self, other):
        return isinstance(other, PlueckerVector) and (self.n, self.r, self.values) == (other.n, other.r, other.values)

    def __hash__(self):
        return hash((self.n, self.r, frozenset(self.values.items())))

    def __repr__(self):
        return "%s(n=%d, r=%d, %s)" % (
            type(self).__name__,
            self.n,
            self.r,
            {B: str(v) for B, v in sorted(self.values.items())},
        )

    def normalized(self):
        m = min(self.values.values())
        return type(self)._raw(self.n, self.r, {B: v - m for B, v in self.values.items()})

    def projectively_equal(self, other):
        return (self.n, self.r) == (other.n, other.r) and self.normalized().values == other.normalized().values

    def shifted(self, c):
        return type(self)._raw(self.n, self.r, {B: v + c for B, v in self.values.items()})

    @classmethod
    def _raw(cls, n, r, values):
        obj = PlueckerVector.__new__(PlueckerVector)
        obj.n, obj.r, obj.values = n, r, dict(values)
        return obj


class ValuatedMatroid(PlueckerVector):
    """A Pluecker vector that satisfies the valuated exchange axiom."""

    matroid: Matroid

    @classmethod
    def _raw(cls, n, r, values):
        obj = ValuatedMatroid.__new__(ValuatedMatroid)
        obj.n, obj.r, obj.values = n, r, dict(values)
        obj.matroid = Matroid(n, r, values.keys())
        return obj

    @cached_property
    def circuits(self):
        return valuated_circuits(self)

    @cached_property
    def cocircuits(self):
        return valuated_circuits(dual_valuation(self))

    @cached_property
    def _tls_cells(self):
        return _coloopless_cells(self)


# ---------------------------------------------------------------------------
# the axiom


def valuation_exchange_violation(p):
    """First (B, B', i) for which no j repairs the exchange inequality, or None."""
    vals = p.values
    bases = sorted(vals)
    for B in bases:
        sB = set(B)
        for B2 in bases:
            s2 = set(B2)
            lhs = vals[B] + vals[B2]
            for i in sorted(sB - s2):
                ok = False
                for j in sorted(s2 - sB):
                    a = vals.get(_key(sB - {i} | {j}))
                    if a is None:
                        continue
                    b = vals.get(_key(s2 - {j} | {i}))
                    if b is not None and lhs >= a + b:
                        ok = True
                        break
                if not ok:
                    return (B, B2, i)
    return None


def gp_violation(p):
    """A violated Grassmann-Pluecker relation as (I, J, i), or None."""
    n, r = p.n, p.r
    subsets = list(combinations(range(n), r))
    for I in subsets:
        sI = set(I)
        for J in subsets:
            sJ = set(J)
            if len(sI & sJ) >= r - 1:
                continue
            for i in sorted(sI - sJ):
                terms = [p[I] + p[J]]
                for j in sorted(sJ - sI):
                    terms.append(p[_key(sI - {i} | {j})] + p[_key(sJ - {j} | {i})])
                if not min_achieved_twice(terms):
                    return (I, J, i)
    return None


def validate_valuated(p):
    """ValuatedMatroid from a PlueckerVector; raises ValuationError with a witness."""
    if not isinstance(p, PlueckerVector):
        raise TypeError("expected a PlueckerVector")
    w = valuation_exchange_violation(p)
    g = gp_violation(p)
    if (w is None) != (g is None):
        raise AssertionError("exchange test and Grassmann-Pluecker test disagree on %r" % (p,))
    if w is not None:
        raise ValuationError("valuated exchange fails for B=%s, B'=%s, i=%d" % w, w)
    return ValuatedMatroid._raw(p.n, p.r, p.values)


def is_valuated_matroid(p):
    try:
        validate_valuated(p)
    except ValuationError:
        return False
    return True


def valuated_matroid(n, r, values):
    return validate_valuated(PlueckerVector(n, r, values))


def trivial_valuation(M):
    return ValuatedMatroid._raw(M.n, M.r, {B: Fraction(0) for B in M.bases})


# ---------------------------------------------------------------------------
# circuits, duality, minors


def valuated_circuits(mu):
    """Valuated circuits as sorted ProjPoints (projectively deduplicated)."""
    out = set()
    for S in combinations(range(mu.n), mu.r + 1):
        vec = [INF] * mu.n
        for t, i in enumerate(S):
            vec[i] = mu[S[:t] + S[t + 1 :]]
        if any(v is not INF for v in vec):
            out.add(ProjPoint(vec))
    return sorted(out, key=_proj_sort_key)


def _proj_sort_key(P):
    return tuple((1, 0) if x is INF else (0, x) for x in P.coords)


def valuated_cocircuits(mu):
    return valuated_circuits(dual_valuation(mu))


def dual_valuation(mu):
    full = set(range(mu.n))
    vals = {_key(full - set(B)): v for B, v in mu.values.items()}
    return ValuatedMatroid._raw(mu.n, mu.n - mu.r, vals)


def _split_face(mu, S):
    S = set(S)
    best = max(len(S & set(B)) for B in mu.values)
    face = {B: v for B, v in mu.values.items() if len(S & set(B)) == best}
    inner = sorted({tuple(i for i in B if i in S) for B in face})
    outer = sorted({tuple(i for i in B if i not in S) for B in face})
    return face, inner, outer


def _relabel(values, labels, r):
    pos = {e: t for t, e in enumerate(labels)}
    vals = {tuple(pos[e] for e in B): v for B, v in values.items()}
    m = min(vals.values())
    vals = {B: v - m for B, v in vals.items()}
    return ValuatedMatroid._raw(len(labels), r, vals)


def restrict_valuated(mu, S):
    """(mu|_S relabelled to 0..|S|-1 with minimum 0, labels)."""
    labels = tuple(sorted(set(S)))
    face, inner, outer = _split_face(mu, labels)
    q0 = outer[0]
    vals = {}
    for p in inner:
        B = _key(p + q0)
        if B not in face:
            raise AssertionError("face of a valuated matroid is not a product")
        vals[p] = face[B]
    return _relabel(vals, labels, len(inner[0])), labels


def contract_valuated(mu, S):
    """(mu/_S on the complement relabelled with minimum 0, labels)."""
    S = set(S)
    labels = tuple(i for i in range(mu.n) if i not in S)
    face, inner, outer = _split_face(mu, S)
    p0 = inner[0]
    vals = {}
    for q in outer:
        B = _key(p0 + q)
        if B not in face:
            raise AssertionError("face of a valuated matroid is not a product")
        vals[q] = face[B]
    return _relabel(vals, labels, len(outer[0])), labels


def face_matroid(mu, u):
    """(Delta_mu^u as a Matroid, labels). For u with infinite entries the face
    is taken on the restriction to supp(u), so labels = sorted supp(u)."""
    u = ProjPoint(u) if not isinstance(u, ProjPoint) else u
    if len(u) != mu.n:
        raise ValueError("point has the wrong length")
    supp = sorted(u.support)
    if len(supp) == mu.n:
        nu, labels = mu, tuple(range(mu.n))
    else:
        nu, labels = restrict_valuated(mu, supp)
    uu = [u[e] for e in labels]
    vals = {B: v + sum(uu[i] for i in B) for B, v in nu.values.items()}
    m = min(vals.values())
    return Matroid(nu.n, nu.r, [B for B, v in vals.items() if v == m]), labels


# ---------------------------------------------------------------------------
# tropical linear spaces


def in_trop_linear_space(mu, u):
    u = [trop_rat(x) for x in u]
    if any(x is INF for x in u):
        raise ValueError("in_trop_linear_space expects a finite point")
    for C in mu.circuits:
        if not min_achieved_twice([c + x for c, x in zip(C, u)]):
            return False
    return True


def _method_i(mu, u):
    S = [i for i in range(mu.n) if u[i] is INF]
    if not S:
        return in_trop_linear_space(mu, u.coords)
    nu, labels = contract_valuated(mu, S)
    return in_trop_linear_space(nu, [u[e] for e in labels])


def _method_ii(mu, u):
    return all(min_achieved_twice([c + x for c, x in zip(C, u)]) for C in mu.circuits)


def _method_iii(mu, u):
    F, _ = face_matroid(dual_valuation(mu), u)
    # a rank-0 face has no coloops, so it counts as coloopless
    return not F.coloops()


def _method_iv(mu, u):
    target = u.coords
    acc = [INF] * mu.n
    for C in mu.cocircuits:
        a = None
        for c, x in zip(C, target):
            if c is INF:
                continue
            if x is INF:
                a = INF
                break
            if a is None or x - c > a:
                a = x - c
        if a is None or a is INF:
            continue
        for j, c in enumerate(C):
            if c is not INF and a + c < acc[j]:
                acc[j] = a + c
    return tuple(acc) == tuple(target)


def _coloopless_cells(mu):
    """trop(mu/loops) as Polyhedra in R^E (E = non-loops), from the dual complex of its dual."""
    loops = sorted(mu.matroid.loops())
    if loops:
        nu, labels = contract_valuated(mu, loops)
    else:
        nu, labels = mu, tuple(range(mu.n))
    dual = dual_valuation(nu)
    bases = sorted(dual.values)
    pts = [tuple(int(i in B) for i in range(nu.n)) for B in bases]
    lifts = [dual.values[B] for B in bases]
    cells = []
    for face, _ in polyhedra.lower_hull_faces(pts, lifts):
        F = [bases[k] for k in face]
        if set.intersection(*(set(B) for B in F)):
            continue  # has a coloop
        B0 = F[0]
        w0 = dual.values[B0]
        eqs, ineqs = [], []
        for B in bases:
            row = tuple(int(i in B) - int(i in B0) for i in range(nu.n))
            rhs = w0 - dual.values[B]
            if B in F:
                if B != B0:
                    eqs.append((row, rhs))
            else:
                # <u, e_B0> + w0 <= <u, e_B> + w_B
                ineqs.append((tuple(-x for x in row), dual.values[B] - w0))
        cells.append(polyhedra.Polyhedron(nu.n, ineqs, eqs))
    return loops, labels, cells


def _method_v(mu, u):
    loops, labels, cells = mu._tls_cells
    if any(u[l] is not INF for l in loops):
        return False
    sub = [u[e] for e in labels]
    S = [k for k, x in enumerate(sub) if x is not INF]
    if not S or not cells:
        return False
    cache = mu.__dict__.setdefault("_closure_cache", {})
    key = tuple(S)
    if key not in cache:
        cache[key] = polyhedra.closure_in_tropical_projective(cells, S)
    target = [sub[k] for k in S]
    return any(Q.contains(target) for Q in cache[key])


_METHODS = {"i": _method_i, "ii": _method_ii, "iii": _method_iii, "iv": _method_iv, "v": _method_v}


def in_projective_tls(mu, u, method="all"):
    """Membership of a projective point in the projective tropical linear space of mu.

    method is one of i, ii, iii, iv, v, or "all" (runs every method and
    requires them to agree).
    """
    if not isinstance(u, ProjPoint):
        u = ProjPoint(u)
    if len(u) != mu.n:
        raise ValueError("point has length %d, expected %d" % (len(u), mu.n))
    if method == "all":
        answers = {m: f(mu, u) for m, f in _METHODS.items()}
        if len(set(answers.values())) != 1:
            raise AssertionError("tropical linear space methods disagree at %r: %r" % (u, answers))
        return answers["i"]
    if method not in _METHODS:
        raise ValueError("unknown method %r (expected one of i, ii, iii, iv, v, all)" % (method,))
    return _METHODS[method](mu, u)


def tls_all_methods(mu, u):
    if not isinstance(u, ProjPoint):
        u = ProjPoint(u)
    return {m: f(mu, u) for m, f in _METHODS.items()}


def underlying(mu):
    return validate_matroid(mu.n, mu.r, mu.values.keys())


__all__ = [
    "PlueckerVector",
    "ValuatedMatroid",
    "ValuationError",
    "MatroidError",
    "validate_valuated",
    "valuated_matroid",
    "is_valuated_matroid",
    "valuated_circuits",
    "valuated_cocircuits",
    "dual_valuation",
    "restrict_valuated",
    "contract_valuated",
    "face_matroid",
    "in_trop_linear_space",
    "in_projective_tls",
]
