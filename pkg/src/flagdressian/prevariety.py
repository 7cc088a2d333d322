"""Tropical prevarieties of Grassmann-Pluecker and incidence-Pluecker relations.

The fan is built as the common refinement of the normal fans of the
polynomials, intersected with the loci where each minimum is attained twice.
Cells are kept by their type: for every polynomial the set of terms that
are minimal on the whole cell.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import polyhedra
from .linalg import rank
from .trop import INF, min_achieved_twice, trop_rat


class Infeasible:
    """A stratum with no points: some relation keeps exactly one term."""

    def __init__(self, relation):
        self.relation = relation

    def __bool__(self):
        return False

    def __repr__(self):
        return "Infeasible(%r)" % (self.relation,)


class TropPolynomial:
    """min over terms of coef + sum(power * x_var).  terms: tuple of (coef, ((var, power), ...))."""

    def __init__(self, terms, label=None):
        self.terms = tuple((trop_rat(c), tuple(sorted(m))) for c, m in terms)
        self.label = label

    def key(self):
        return frozenset(self.terms)

    def evaluate(self, x):
        out = []
        for c, mono in self.terms:
            v = c
            for var, p in mono:
                if p and x[var] is INF:
                    v = INF
                    break
                if p:
                    v = v + p * x[var]
            out.append(v)
        return out

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return "TropPolynomial(%d terms, %r)" % (len(self.terms), self.label)


class RelationSystem:
    """Variables are (block, subset) pairs; blocks carry (rank, n)."""

    def __init__(self, n, ranks, variables, polynomials):
        self.n = n
        self.ranks = tuple(ranks)
        self.variables = list(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.polynomials = list(polynomials)
        for F in self.polynomials:
            for _, mono in F.terms:
                for var, _ in mono:
                    if not 0 <= var < len(self.variables):
                        raise ValueError("polynomial refers to an undeclared variable")

    @property
    def blocks(self):
        return len(self.ranks)

    def block_variables(self, b):
        return [v for v in self.variables if v[0] == b]

    def __repr__(self):
        return "RelationSystem(ranks=%s, n=%d, %d variables, %d polynomials)" % (
            self.ranks,
            self.n,
            len(self.variables),
            len(self.polynomials),
        )


def _dedup(polys):
    seen, out = set(), []
    for F in polys:
        k = F.key()
        if k not in seen:
            seen.add(k)
            out.append(F)
    return out


def generate_relations(ranks, n):
    ranks = [int(r) for r in ranks]
    if not ranks or any(b < a for a, b in zip(ranks, ranks[1:])) or ranks[0] < 0 or ranks[-1] > n:
        raise ValueError("need 0 <= r_1 <= ... <= r_k <= n, got %s" % (ranks,))
    variables = [(b, S) for b, r in enumerate(ranks) for S in combinations(range(n), r)]
    idx = {v: i for i, v in enumerate(variables)}
    polys = []
    for b, r in enumerate(ranks):
        subsets = list(combinations(range(n), r))
        for I in subsets:
            sI = set(I)
            for J in subsets:
                sJ = set(J)
                if len(sI & sJ) >= r - 1:
                    continue
                for i in sorted(sI - sJ):
                    terms = [_mono(idx, (b, I), (b, J))]
                    for j in sorted(sJ - sI):
                        terms.append(_mono(idx, (b, _key(sI - {i} | {j})), (b, _key(sJ - {j} | {i}))))
                    polys.append(TropPolynomial(terms, ("GP", b, I, J, i)))
    for b1, r in enumerate(ranks):
        for b2 in range(b1 + 1, len(ranks)):
            s = ranks[b2]
            if r < 1 or s + 1 > n:
                continue
            for Ip in combinations(range(n), r - 1):
                sI = set(Ip)
                for Jp in combinations(range(n), s + 1):
                    sJ = set(Jp)
                    terms = [_mono(idx, (b1, _key(sI | {j})), (b2, _key(sJ - {j}))) for j in Jp if j not in sI]
                    if terms:
                        polys.append(TropPolynomial(terms, ("IP", b1, b2, Ip, Jp)))
    return RelationSystem(n, ranks, variables, _dedup(polys))


def _key(s):
    return tuple(sorted(s))


def _mono(idx, *vars_):
    m = {}
    for v in vars_:
        m[idx[v]] = m.get(idx[v], 0) + 1
    return (0, tuple(sorted(m.items())))


def _supports(sys, supports):
    if supports is None:
        return None
    supports = list(supports)
    if len(supports) != sys.blocks:
        raise ValueError("expected %d support sets, got %d" % (sys.blocks, len(supports)))
    out = []
    for b, s in enumerate(supports):
        if s is None:
            out.append(None)
            continue
        s = {_key(B) for B in s}
        if not s:
            raise ValueError("support of block %d is empty" % b)
        out.append(s)
    return out


def restrict_to_stratum(sys, supports):
    """Restrict to coordinates in the given per-block basis sets (None = full block)."""
    supports = _supports(sys, supports)
    keep = [v for v in sys.variables if supports[v[0]] is None or v[1] in supports[v[0]]]
    new_idx = {v: i for i, v in enumerate(keep)}
    old_to_new = {sys.index[v]: new_idx[v] for v in keep}
    polys = []
    for F in sys.polynomials:
        terms = []
        for c, mono in F.terms:
            if all(var in old_to_new for var, p in mono if p):
                terms.append((c, tuple((old_to_new[var], p) for var, p in mono if p)))
        if not terms:
            continue
        if len(terms) == 1:
            return Infeasible(F.label)
        polys.append(TropPolynomial(terms, F.label))
    return RelationSystem(sys.n, sys.ranks, keep, _dedup(polys))


def _point_vector(sys, point):
    point = list(point)
    if len(point) != sys.blocks:
        raise ValueError("expected %d blocks, got %d" % (sys.blocks, len(point)))
    per_block = []
    for b, (r, blk) in enumerate(zip(sys.ranks, point)):
        subsets = list(combinations(range(sys.n), r))
        if isinstance(blk, dict):
            d = {_key(B): trop_rat(v) for B, v in blk.items()}
        else:
            blk = list(blk)
            if len(blk) != len(subsets):
                raise ValueError("block %d has %d coordinates, expected %d" % (b, len(blk), len(subsets)))
            d = {S: trop_rat(v) for S, v in zip(subsets, blk)}
        per_block.append(d)
    return [per_block[b].get(S, INF) for b, S in sys.variables]


def member(sys, point):
    """Does the point (one vector or dict per block) lie on every tropical hypersurface?"""
    if isinstance(sys, Infeasible):
        return False
    x = _point_vector(sys, point)
    return all(min_achieved_twice(F.evaluate(x)) for F in sys.polynomials)


def violated_relation(sys, point):
    x = _point_vector(sys, point)
    for F in sys.polynomials:
        if not min_achieved_twice(F.evaluate(x)):
            return F
    return None


# ---------------------------------------------------------------------------
# fan engine


class _Cell:
    __slots__ = ("lin", "rays", "ineqs", "types")

    def __init__(self, lin, rays, ineqs, types):
        self.lin, self.rays, self.ineqs, self.types = lin, rays, ineqs, types


def _term_matrix(F, N):
    T = np.zeros((len(F.terms), N), dtype=np.int64)
    for k, (c, mono) in enumerate(F.terms):
        if c != 0:
            raise ValueError("the fan engine handles constant-coefficient systems only")
        for var, p in mono:
            T[k, var] += p
    return T


def _interior(cell):
    if cell.rays.shape[0] == 0:
        return np.zeros(cell.lin.shape[1], dtype=cell.lin.dtype)
    return cell.rays.sum(axis=0)


def _argmin_mask(vals):
    m = vals.min()
    mask = 0
    for k in np.flatnonzero(vals == m):
        mask |= 1 << int(k)
    return mask


def _types_at(x, mats):
    return tuple(_argmin_mask(T @ x) for T in mats)


def _compact(ineqs, rays):
    if ineqs.shape[0] == 0:
        return ineqs
    ineqs = np.unique(ineqs, axis=0)
    if rays.shape[0]:
        # rows tight on every ray never separate anything; rows tight on none must stay
        tight_all = ((ineqs @ rays.T) == 0).all(axis=1)
        ineqs = ineqs[~tight_all]
    return ineqs


def _refine(cell, T, mats):
    """Cells of cell intersected with the tropical hypersurface of the polynomial with term matrix T."""
    VL = cell.lin @ T.T
    VR = cell.rays @ T.T if cell.rays.shape[0] else np.zeros((0, T.shape[0]), dtype=VL.dtype)
    m = T.shape[0]
    # quick path: one term is minimal on the whole cell
    for a in range(m):
        dl = VL - VL[:, [a]]
        if (dl != 0).any():
            continue
        dr = VR - VR[:, [a]]
        if (dr >= 0).all():
            zero = (dr == 0).all(axis=0)
            if zero.sum() >= 2:
                return [cell]
            pairs = [(a, c) for c in range(m) if c != a]
            break
    else:
        pairs = list(combinations(range(m), 2))
    out = []
    for a, b in pairs:
        lin, rays, ineqs = cell.lin, cell.rays, cell.ineqs
        lin, rays, ineqs = polyhedra.dd_cut(lin, rays, ineqs, T[a] - T[b], equality=True)
        for c in range(m):
            if c != a and c != b:
                lin, rays, ineqs = polyhedra.dd_cut(lin, rays, ineqs, T[a] - T[c])
        ineqs = _compact(ineqs, rays)
        new = _Cell(lin, rays, ineqs, None)
        new.types = _types_at(_interior(new), mats)
        out.append(new)
    return out


def _maximal(cells):
    by_type = {}
    for c in cells:
        by_type.setdefault(c.types, c)
    cells = [by_type[t] for t in sorted(by_type)]
    if len(cells) <= 1:
        return cells
    A = np.array([c.types for c in cells], dtype=np.int64)
    keep = []
    for i in range(len(cells)):
        # cell j contains cell i iff type_j is a subset of type_i in every coordinate
        sub = ((A & A[i]) == A).all(axis=1)
        sub[i] = False
        if not sub.any():
            keep.append(cells[i])
    return keep


def _order(sys):
    """Greedy polynomial order: most variables already seen, then fewest terms."""
    polys = list(sys.polynomials)
    vars_of = [frozenset(v for _, mono in F.terms for v, _ in mono) for F in polys]
    seen = set()
    left = list(range(len(polys)))
    order = []
    while left:
        best = min(left, key=lambda k: (-len(vars_of[k] & seen), len(polys[k].terms), len(vars_of[k] - seen), k))
        order.append(best)
        seen |= vars_of[best]
        left.remove(best)
    return [polys[k] for k in order]


class PrevarietyFan(polyhedra.Fan):
    """Fan plus the cell types (argmin term sets per polynomial)."""

    system = None
    cell_types = None
    cell_cones = None


def prevariety_fan(sys, threads=1):
    """The tropical prevariety of sys as a fan (types refinement, reported modulo lineality)."""
    if isinstance(sys, Infeasible):
        raise ValueError("stratum is infeasible: %r" % (sys.relation,))
    if not sys.polynomials:
        raise ValueError("empty relation system")
    N = len(sys.variables)
    polys = _order(sys)
    mats = [_term_matrix(F, N) for F in polys]
    start = _Cell(np.eye(N, dtype=np.int64), np.zeros((0, N), dtype=np.int64), np.zeros((0, N), dtype=np.int64), ())
    cells = [start]
    pool = ThreadPoolExecutor(threads) if threads and threads > 1 else None
    try:
        for k, T in enumerate(mats):
            done = mats[: k + 1]
            if pool is None:
                parts = [_refine(c, T, done) for c in cells]
            else:
                parts = list(pool.map(lambda c: _refine(c, T, done), cells))
            new = []
            for part in parts:
                for c in part:
                    if c.types is None or len(c.types) != k + 1:
                        c.types = _types_at(_interior(c), done)
                    new.append(c)
            cells = _maximal(new)
    finally:
        if pool is not None:
            pool.shutdown()
    cones = [polyhedra.Cone.from_dd(c.lin, c.rays, c.ineqs) for c in cells]
    fan = polyhedra.assemble_fan(cones, blocks=sys.blocks)
    out = PrevarietyFan.__new__(PrevarietyFan)
    out.__dict__.update(fan.__dict__)
    out.system = sys
    out.cell_cones = cells
    out.polynomials_in_order = polys
    out.cell_types = [_fan_cell_type(out, idx, mats) for _, idx in out.cells]
    return out


def _fan_cell_type(fan, ray_idx, mats):
    x = np.zeros(fan.ambient_dim, dtype=object)
    for i in ray_idx:
        x = x + np.array(fan.rays[i], dtype=object)
    return tuple(_argmin_mask(T.astype(object) @ x) for T in mats)


def fan_cell_hrep(fan, k):
    """(equalities, inequalities) of fan cell k from its type, as integer rows (<= 0 convention)."""
    mats = [_term_matrix(F, fan.ambient_dim) for F in fan.polynomials_in_order]
    eqs, ineqs = [], []
    for T, mask in zip(mats, fan.cell_types[k]):
        A = [i for i in range(T.shape[0]) if mask >> i & 1]
        a0 = A[0]
        for a in A[1:]:
            eqs.append(tuple(int(x) for x in T[a] - T[a0]))
        for c in range(T.shape[0]):
            if c not in A:
                ineqs.append(tuple(int(x) for x in T[a0] - T[c]))
    return eqs, ineqs


def fan_contains(fan, x):
    """Is the finite point x (in the coordinates of fan.system) in the support of the fan?"""
    x = [Fraction(v) for v in x]
    return any(_in_cone(c, x) for c in fan.cell_cones)


def _in_cone(cell, x):
    """x in L + cone(R), decided by the inequality rows that cut the cone out."""
    lin, rays, ineqs = cell.lin, cell.rays, cell.ineqs
    for g in ineqs:
        if sum(int(a) * b for a, b in zip(g, x)) > 0:
            return False
    # the rows only describe the cone inside the span of its generators
    gens = [list(map(int, r)) for r in lin] + [list(map(int, r)) for r in rays]
    return rank(gens + [x]) == rank(gens) if gens else not any(x)
