"""Exact polyhedral kernel.

Everything is done with the double description method over the integers:
a cone is kept as (lineality basis, extreme rays) together with the list of
inequalities g.x <= 0 that cut it out. Rational input rows are scaled to
primitive integer rows first. Arrays are int64 while entries are small and
switch to Python-int object arrays before anything could overflow.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import numpy as np

from . import linalg

_SAFE = 1 << 62


class _EmptyType:
    __slots__ = ()

    def __repr__(self):
        return "EMPTY"

    def __bool__(self):
        return False


EMPTY = _EmptyType()


# ---------------------------------------------------------------------------
# integer double description


def _maxabs(a):
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def _prim_rows(a):
    if a.shape[0] == 0:
        return a
    if a.dtype == object:
        out = np.empty(a.shape, dtype=object)
        for i, row in enumerate(a):
            g = 0
            for x in row:
                g = gcd(g, int(x))
            g = g or 1
            out[i] = [int(x) // g for x in row]
        return out
    g = np.gcd.reduce(a, axis=1)
    g[g == 0] = 1
    return a // g[:, None]


def _int_array(rows, ncols):
    rows = [linalg.primitive(r) for r in rows]
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    arr = np.array(rows, dtype=object).reshape(len(rows), ncols)
    if _maxabs(arr) < (1 << 31):
        return arr.astype(np.int64)
    return arr


def _adjacent_pairs(Z, pos, neg):
    """Pairs (i, j), i in pos, j in neg, of adjacent extreme rays (combinatorial test)."""
    q, m = Z.shape
    if q == 0:
        if m == 2:
            return [(int(pos[0]), int(neg[0]))]
        return []
    notZ = (~Z).astype(np.int32)
    A = Z[:, pos]
    B = Z[:, neg]
    out = []
    nb = len(neg)
    step = max(1, 4096 // max(nb, 1))
    for a0 in range(0, len(pos), step):
        a1 = min(len(pos), a0 + step)
        zz = A[:, a0:a1, None] & B[:, None, :]
        zz = zz.reshape(q, -1).T.astype(np.int32)
        bad = zz @ notZ
        cnt = (bad == 0).sum(axis=1)
        for flat in np.flatnonzero(cnt == 2):
            ia, ib = divmod(int(flat), nb)
            out.append((int(pos[a0 + ia]), int(neg[ib])))
    return out


def dd_cut(lin, rays, ineqs, h, equality=False):
    """Intersect L + cone(R) with {h.x <= 0} (or {h.x = 0}).

    ineqs must be an inequality description of the current cone; it is used
    for the adjacency test and grows by h when h actually cuts.
    """
    n = h.shape[0]
    bv = max(_maxabs(lin), _maxabs(rays), 1)
    bh = max(_maxabs(h), _maxabs(ineqs), 1)
    if lin.dtype == object or rays.dtype == object or ineqs.dtype == object or 4 * n * bh * bv * bv >= _SAFE:
        lin, rays, ineqs, h = (x.astype(object) for x in (lin, rays, ineqs, h))
    hl = lin @ h
    nz = np.flatnonzero(hl != 0)
    if nz.size:
        p = int(nz[0])
        l0 = lin[p]
        c0 = hl[p]
        if not equality and c0 > 0:
            l0 = -l0
            c0 = -c0
        others = [i for i in range(lin.shape[0]) if i != p]
        new_lin = _prim_rows(c0 * lin[others] - np.outer(hl[others], l0)) if others else lin[:0]
        if rays.shape[0]:
            hr = rays @ h
            s = abs(c0)
            sg = 1 if c0 > 0 else -1
            new_rays = _prim_rows(s * rays - sg * np.outer(hr, l0))
        else:
            new_rays = rays
        if not equality:
            l0 = _prim_rows(l0[None, :])
            new_rays = np.vstack([new_rays, l0])
            ineqs = np.vstack([ineqs, h[None, :]])
        return new_lin, new_rays, ineqs
    if rays.shape[0] == 0:
        return lin, rays, ineqs
    hr = rays @ h
    pos = np.flatnonzero(hr > 0)
    neg = np.flatnonzero(hr < 0)
    zero = np.flatnonzero(hr == 0)
    if equality:
        if pos.size == 0 and neg.size == 0:
            return lin, rays, ineqs
        keep = zero
    else:
        if pos.size == 0:
            return lin, rays, ineqs
        keep = np.sort(np.concatenate([neg, zero]))
    parts = [rays[keep]]
    if pos.size and neg.size:
        Z = (ineqs @ rays.T) == 0
        Z = np.asarray(Z, dtype=bool)
        pairs = _adjacent_pairs(Z, pos, neg)
        if pairs:
            ii = [i for i, _ in pairs]
            jj = [j for _, j in pairs]
            combo = hr[ii][:, None] * rays[jj] - hr[jj][:, None] * rays[ii]
            parts.append(_prim_rows(combo))
    new_rays = np.vstack(parts) if len(parts) > 1 else parts[0]
    if not equality:
        ineqs = np.vstack([ineqs, h[None, :]])
    return lin, new_rays, ineqs


def dd_from_hrep(n, eqs, ineqs):
    """(lineality, rays, inequality rows) of {x : eqs.x = 0, ineqs.x <= 0}."""
    lin = np.eye(n, dtype=np.int64)
    rays = np.zeros((0, n), dtype=np.int64)
    cur = np.zeros((0, n), dtype=np.int64)
    E = _int_array(eqs, n)
    G = _int_array(ineqs, n)
    for h in E:
        lin, rays, cur = dd_cut(lin, rays, cur, h, equality=True)
    for h in G:
        lin, rays, cur = dd_cut(lin, rays, cur, h)
    return lin, rays, cur


def face_masks(Z):
    """All faces of a cone as bitmasks over its rays, from the tight matrix Z (ineq x ray)."""
    m = Z.shape[1]
    full = (1 << m) - 1
    gens = set()
    for row in Z:
        mask = 0
        for j in np.flatnonzero(row):
            mask |= 1 << int(j)
        if mask != full:
            gens.add(mask)
    gens = sorted(gens)
    faces = {full}
    frontier = [full]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x & g
            if y not in faces:
                faces.add(y)
                frontier.append(y)
    return faces


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _rank_int(rows):
    if not rows:
        return 0
    return linalg.rank([[int(x) for x in r] for r in rows])


# ---------------------------------------------------------------------------
# systems, cones, polyhedra


@dataclass
class AffineSystem:
    """Rows (coefficients, rhs); inequalities use the a.x <= b convention."""

    dim: int
    equalities: list = field(default_factory=list)
    inequalities: list = field(default_factory=list)

    def __post_init__(self):
        for a, _ in list(self.equalities) + list(self.inequalities):
            if len(a) != self.dim:
                raise ValueError("row of length %d in a system of dimension %d" % (len(a), self.dim))


class Cone:
    """Polyhedral cone {x : E x = 0, G x <= 0} with lazily computed generators."""

    def __init__(self, dim, equalities=(), inequalities=()):
        self.ambient_dim = dim
        self.equalities = [tuple(Fraction(x) for x in r) for r in equalities]
        self.inequalities = [tuple(Fraction(x) for x in r) for r in inequalities]
        for r in self.equalities + self.inequalities:
            if len(r) != dim:
                raise ValueError("row length does not match ambient dimension")
        self._gens = None

    @classmethod
    def from_dd(cls, lin, rays, ineqs, equalities=(), inequalities=None):
        c = cls(lin.shape[1], equalities, [tuple(int(x) for x in r) for r in ineqs] if inequalities is None else inequalities)
        c._gens = (lin, rays, ineqs)
        return c

    def _generators(self):
        if self._gens is None:
            self._gens = dd_from_hrep(self.ambient_dim, self.equalities, self.inequalities)
        return self._gens

    @property
    def lineality(self):
        return self._generators()[0]

    @property
    def rays(self):
        return self._generators()[1]

    @property
    def lineality_dim(self):
        return self.lineality.shape[0]

    @property
    def dimension(self):
        lin, rays, _ = self._generators()
        return lin.shape[0] + _rank_int([list(r) for r in rays])

    def contains(self, x):
        x = [Fraction(v) for v in x]
        return all(linalg.dot(r, x) == 0 for r in self.equalities) and all(
            linalg.dot(r, x) <= 0 for r in self.inequalities
        )

    def face_ray_sets(self):
        lin, rays, ineqs = self._generators()
        if rays.shape[0] == 0:
            return [frozenset()]
        Z = np.asarray((ineqs @ rays.T) == 0, dtype=bool) if ineqs.shape[0] else np.zeros((0, rays.shape[0]), bool)
        masks = face_masks(Z) | {0}
        return [frozenset(_bits(m)) for m in sorted(masks)]


class Polyhedron:
    """Exact rational polyhedron {x : A x <= b, E x = f}, or given by generators."""

    def __init__(self, dim, inequalities=(), equalities=()):
        self.dim_ambient = dim
        self.inequalities = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in inequalities]
        self.equalities = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in equalities]
        self._v = None
        self._has_h = True

    @classmethod
    def from_system(cls, sys):
        return cls(sys.dim, sys.inequalities, sys.equalities)

    @classmethod
    def from_generators(cls, dim, points, rays=(), lineality=()):
        p = cls(dim)
        p._has_h = False
        p._v = (
            [tuple(Fraction(x) for x in v) for v in points],
            [tuple(Fraction(x) for x in v) for v in rays],
            [tuple(Fraction(x) for x in v) for v in lineality],
        )
        return p

    # homogenization: (x, t) with t >= 0
    def _cone_rows(self):
        eqs = [list(a) + [-b] for a, b in self.equalities]
        ineqs = [[0] * self.dim_ambient + [-1]] + [list(a) + [-b] for a, b in self.inequalities]
        return eqs, ineqs

    def generators(self):
        """(points, rays, lineality) as Fraction tuples; points empty iff the polyhedron is empty."""
        if self._v is None:
            eqs, ineqs = self._cone_rows()
            lin, rays, _ = dd_from_hrep(self.dim_ambient + 1, eqs, ineqs)
            pts, rr = [], []
            for r in rays:
                t = int(r[-1])
                if t > 0:
                    pts.append(tuple(Fraction(int(x), t) for x in r[:-1]))
                else:
                    rr.append(tuple(Fraction(int(x)) for x in r[:-1]))
            ll = [tuple(Fraction(int(x)) for x in r[:-1]) for r in lin]
            self._v = (pts, rr, ll)
        return self._v

    def _ensure_h(self):
        if self._has_h:
            return
        pts, rays, lin = self._v
        n = self.dim_ambient
        eqs = [list(l) + [0] for l in lin]
        ineqs = [list(v) + [1] for v in pts] + [list(r) + [0] for r in rays]
        # polar cone {y : y.g <= 0 for generators g}
        plin, prays, _ = dd_from_hrep(n + 1, eqs, ineqs)
        eq_rows, in_rows = [], []
        for y in plin:
            a = tuple(Fraction(int(x)) for x in y[:-1])
            if any(a):
                eq_rows.append((a, Fraction(-int(y[-1]))))
        for y in prays:
            a = tuple(Fraction(int(x)) for x in y[:-1])
            if any(a):
                in_rows.append((a, Fraction(-int(y[-1]))))
        self.equalities = eq_rows
        self.inequalities = in_rows
        self._has_h = True

    def is_empty(self):
        return not self.generators()[0]

    def dimension(self):
        pts, rays, lin = self.generators()
        if not pts:
            return EMPTY
        rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]] + [list(r) for r in rays] + [list(l) for l in lin]
        return linalg.rank(rows) if rows else 0

    def contains(self, x):
        self._ensure_h()
        x = [Fraction(v) for v in x]
        return all(linalg.dot(a, x) == b for a, b in self.equalities) and all(
            linalg.dot(a, x) <= b for a, b in self.inequalities
        )

    def recession_cone(self):
        self._ensure_h()
        return Cone(self.dim_ambient, [a for a, _ in self.equalities], [a for a, _ in self.inequalities])

    def project(self, coords):
        """Image under x -> x[coords]."""
        pts, rays, lin = self.generators()
        sel = lambda v: tuple(v[i] for i in coords)
        return Polyhedron.from_generators(len(coords), [sel(p) for p in pts], [sel(r) for r in rays], [sel(l) for l in lin])

    def with_lineality(self, vectors):
        pts, rays, lin = self.generators()
        return Polyhedron.from_generators(self.dim_ambient, pts, rays, list(lin) + [tuple(v) for v in vectors])

    def __repr__(self):
        return "Polyhedron(dim=%s, ambient=%d)" % (self.dimension(), self.dim_ambient)


def feasible_dim(sys):
    """Affine dimension of the solution set of an AffineSystem, or EMPTY."""
    if not isinstance(sys, AffineSystem):
        raise TypeError("expected an AffineSystem")
    return Polyhedron.from_system(sys).dimension()


# ---------------------------------------------------------------------------
# lower hulls


def _affine_frame(points):
    """Coordinates J such that projecting onto J is injective on the affine hull."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return []
    _, piv = linalg.rref(diffs, len(base))
    return piv


def lower_hull_faces(points, lifts):
    """All faces of the coherent subdivision of the labelled points lifted by `lifts`.

    Returns a list of (frozenset of point indices, witness u) with
    argmin_i <u, points[i]> + lifts[i] equal to the label set. Sorted by
    (size, sorted labels).
    """
    points = [tuple(int(x) for x in p) for p in points]
    lifts = [Fraction(w) for w in lifts]
    if len(points) != len(lifts):
        raise ValueError("%d points but %d lifts" % (len(points), len(lifts)))
    if not points:
        return []
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise ValueError("points of different dimensions")
    groups = {}
    for i, p in enumerate(points):
        groups.setdefault(p, []).append(i)
    distinct = sorted(groups)
    active = []
    low = []
    for p in distinct:
        m = min(lifts[i] for i in groups[p])
        low.append(m)
        active.append(frozenset(i for i in groups[p] if lifts[i] == m))
    J = _affine_frame(distinct)
    d = len(J)
    if d == 0:
        return [(active[0], tuple(Fraction(0) for _ in range(n)))]
    den = 1
    for w in low:
        den = den * w.denominator // gcd(den, w.denominator)
    W = [int(w * den) for w in low]
    # cone in (c_1..c_d, c0, t):  <c, p_i> + c0 - W_i t <= 0,  -t <= 0
    rows = [[0] * (d + 1) + [-1]]
    for p, w in zip(distinct, W):
        rows.append([p[j] for j in J] + [1, -w])
    lin, rays, cur = dd_from_hrep(d + 2, [], rows)
    assert lin.shape[0] == 0, "lifted configuration cone must be pointed"
    Gp = _int_array([r for r in rows[1:]], d + 2)
    Zp = np.asarray((Gp @ rays.T) == 0, dtype=bool)  # point x ray
    Zall = np.asarray((cur @ rays.T) == 0, dtype=bool)
    tpos = [int(r[-1]) > 0 for r in rays]
    point_masks = []
    for k in range(rays.shape[0]):
        mask = 0
        for i in np.flatnonzero(Zp[:, k]):
            mask |= 1 << int(i)
        point_masks.append(mask)
    out = {}
    for fmask in face_masks(np.vstack([Zall, Zp])):
        idx = _bits(fmask)
        if not idx or not any(tpos[k] for k in idx):
            continue
        pm = -1
        for k in idx:
            pm &= point_masks[k]
        if pm == 0:
            continue
        labels = frozenset().union(*(active[i] for i in _bits(pm)))
        if labels in out:
            continue
        s = [sum(int(rays[k][c]) for k in idx) for c in range(d + 2)]
        t = s[-1]
        u = [Fraction(0)] * n
        for pos, j in enumerate(J):
            u[j] = Fraction(-s[pos], t * den)
        out[labels] = tuple(u)
    return sorted(out.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def face_at(points, lifts, u):
    """argmin_i <u, points[i]> + lifts[i] (brute force evaluation)."""
    vals = [sum(Fraction(a) * b for a, b in zip(u, p)) + Fraction(w) for p, w in zip(points, lifts)]
    m = min(vals)
    return frozenset(i for i, v in enumerate(vals) if v == m)


# ---------------------------------------------------------------------------
# tropical closures


def closure_in_tropical_projective(cells, stratum, n=None):
    """Limit sets in the stratum T_S of polyhedra living in R^n / R1.

    cells: Polyhedron objects in R^n. Returns a list of Polyhedron in R^S
    (S sorted), each including the all-ones lineality, for the cells whose
    recession cone contains a vector constant on S and strictly larger off S.
    """
    S = sorted(stratum)
    if not S:
        raise ValueError("stratum must be nonempty")
    out = []
    for P in cells:
        m = P.dim_ambient
        if n is not None and m != n:
            raise ValueError("cell in the wrong ambient space")
        if len(S) == m:
            out.append(P.with_lineality([tuple(1 for _ in range(m))]))
            continue
        if P.is_empty():
            continue
        if _admissible_direction(P, S):
            out.append(P.project(S).with_lineality([tuple(1 for _ in S)]))
    return out


def _admissible_direction(P, S):
    """Is there r in rec(P) + R1 with r_S = 0 and r_j >= 1 off S?"""
    m = P.dim_ambient
    rec = P.recession_cone()
    off = [j for j in range(m) if j not in set(S)]
    # variables (c_1..c_m, lam); r = c + lam * 1
    eqs, ineqs = [], []
    for a in rec.equalities:
        eqs.append((tuple(a) + (0,), 0))
    for a in rec.inequalities:
        ineqs.append((tuple(a) + (0,), 0))
    for i in S:
        row = [0] * (m + 1)
        row[i] = 1
        row[m] = 1
        eqs.append((tuple(row), 0))
    for j in off:
        row = [0] * (m + 1)
        row[j] = -1
        row[m] = -1
        ineqs.append((tuple(row), -1))
    return not Polyhedron(m + 1, ineqs, eqs).is_empty()


# ---------------------------------------------------------------------------
# fans


class Fan:
    """A polyhedral fan reported modulo its lineality space."""

    def __init__(self, ambient_dim, lineality, rays, cells, blocks=1):
        self.ambient_dim = ambient_dim
        self.lineality = lineality
        self.lineality_dim = len(lineality)
        self.rays = rays
        self.cells = cells  # list of (dim, tuple of ray indices), all cells incl. faces
        self.blocks = blocks
        top = max((c[0] for c in cells), default=self.lineality_dim)
        self.dim = top
        f = [0] * (top - self.lineality_dim + 1)
        for d, _ in cells:
            f[d - self.lineality_dim] += 1
        self.f_vector = f

    @property
    def projective_dim(self):
        return self.dim - self.blocks

    @property
    def projective_lineality_dim(self):
        return self.lineality_dim - self.blocks

    def maximal_cells(self):
        sets = [(d, frozenset(r)) for d, r in self.cells]
        out = []
        for d, s in sets:
            if not any(s < t for _, t in sets):
                out.append((d, tuple(sorted(s))))
        return out

    def census(self):
        out = {}
        for d, _ in self.cells:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def to_json(self, with_cells=True):
        doc = {
            "ambient_dim": self.ambient_dim,
            "dim": self.dim,
            "lineality_dim": self.lineality_dim,
            "f_vector": list(self.f_vector),
            "rays": [[str(x) for x in r] for r in self.rays],
        }
        if with_cells:
            doc["cells"] = [{"dim": d, "rays": list(r)} for d, r in self.cells]
        return doc


def _lineality_reducer(lin_rows, n):
    """Map a vector to its canonical representative modulo span(lin_rows)."""
    if not lin_rows:
        return lambda v: linalg.primitive(v)
    red, piv = linalg.rref(lin_rows, n)

    def reduce(v):
        v = [Fraction(x) for x in v]
        for row, p in zip(red, piv):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return linalg.primitive(v)

    return reduce


def assemble_fan(cones, blocks=1):
    """Fan generated by the given cones and all their faces."""
    cones = list(cones)
    if not cones:
        raise ValueError("no cones given")
    n = cones[0].ambient_dim
    if any(c.ambient_dim != n for c in cones):
        raise ValueError("cones live in different ambient spaces")
    L0 = [[int(x) for x in r] for r in cones[0].lineality]
    k = len(L0)
    for c in cones[1:]:
        L = [[int(x) for x in r] for r in c.lineality]
        if len(L) != k or linalg.rank(L0 + L) != k:
            raise ValueError("cones do not share a common lineality space")
    reduce = _lineality_reducer(L0, n)
    cells = set()
    for c in cones:
        canon = [reduce([int(x) for x in r]) for r in c.rays]
        for face in c.face_ray_sets():
            cells.add(frozenset(canon[i] for i in face))
    rays = sorted({next(iter(s)) for s in cells if len(s) == 1})
    index = {r: i for i, r in enumerate(rays)}
    out = []
    for s in cells:
        missing = [r for r in s if r not in index]
        if missing:
            raise AssertionError("cell generator is not a ray of the fan")
        idx = tuple(sorted(index[r] for r in s))
        d = k + (_rank_int([list(r) for r in s]) if s else 0)
        out.append((d, idx))
    out.sort()
    lin_canon = sorted(linalg.primitive(r) for r in linalg.rref(L0, n)[0]) if L0 else []
    return Fan(n, lin_canon, rays, out, blocks=blocks)
