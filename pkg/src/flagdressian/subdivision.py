"""Weighted point configurations, coherent subdivisions and flag matroidal certification."""
import warnings
from fractions import Fraction
from itertools import combinations, product

from . import linalg, polyhedra
from .matroid import Matroid, MatroidError, is_quotient, validate_matroid


class WeightedConfig:
    """Labelled integer points with a rational weight per label."""

    def __init__(self, labels, points, weights=None):
        self.labels = list(labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("labels must be distinct")
        self.points = {l: tuple(int(x) for x in points[l]) for l in self.labels}
        if weights is None:
            weights = {l: 0 for l in self.labels}
        self.weights = {l: Fraction(weights[l]) for l in self.labels}
        dims = {len(p) for p in self.points.values()}
        if len(dims) > 1:
            raise ValueError("points of different dimensions")
        degs = {sum(p) for p in self.points.values()}
        if len(degs) > 1:
            raise ValueError("configuration is not homogeneous")
        self.degree = degs.pop() if degs else 0
        self.dim = dims.pop() if dims else 0

    def __len__(self):
        return len(self.labels)

    def reweighted(self, weights):
        return WeightedConfig(self.labels, self.points, weights)

    def distinct_points(self):
        return sorted(set(self.points.values()))


class SubdivisionFace:
    __slots__ = ("labels", "witness")

    def __init__(self, labels, witness):
        self.labels = frozenset(labels)
        self.witness = tuple(witness)

    def __repr__(self):
        return "SubdivisionFace(%s)" % sorted(self.labels, key=repr)


class Subdivision:
    def __init__(self, config, faces):
        self.config = config
        self.faces = faces
        covered = set().union(*(f.labels for f in faces)) if faces else set()
        self.tight = covered == set(config.labels)

    def maximal_faces(self):
        return [f for f in self.faces if not any(f.labels < g.labels for g in self.faces)]

    def point_faces(self):
        """Face poset on points: each face as the set of distinct coordinates it uses."""
        pts = self.config.points
        return {frozenset(pts[l] for l in f.labels) for f in self.faces}

    def label_faces(self):
        return {f.labels for f in self.faces}


def valuated_configuration(mu):
    """Labels (B,) at e_B with weight mu(B), over the support of mu."""
    labels = [(B,) for B in sorted(mu.values)]
    pts = {l: tuple(int(i in l[0]) for i in range(mu.n)) for l in labels}
    return WeightedConfig(labels, pts, {l: mu.values[l[0]] for l in labels})


def base_configuration(F):
    """Unweighted configuration of a flag matroid (or a single matroid / list of matroids)."""
    cons = [F] if isinstance(F, Matroid) else list(getattr(F, "constituents", F))
    n = cons[0].n
    labels = list(product(*[sorted(M.bases) for M in cons]))
    pts = {l: tuple(sum(int(i in B) for B in l) for i in range(n)) for l in labels}
    return WeightedConfig(labels, pts)


def minkowski_weight(factors):
    """Minkowski sum of weighted configurations; labels are tuples of factor labels."""
    factors = list(factors)
    if not factors:
        raise ValueError("no factors")
    if len({f.dim for f in factors}) != 1:
        raise ValueError("factors live in different dimensions")
    for k, f in enumerate(factors):
        pts = f.distinct_points()
        if len(pts) > 2 and linalg.rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) == 1:
            # mixed cells of such factors need not split as the product statement expects
            warnings.warn("factor %d is a segment with %d points" % (k, len(pts)), stacklevel=2)
    labels = list(product(*[f.labels for f in factors]))
    pts, wts = {}, {}
    for l in labels:
        pts[l] = tuple(sum(f.points[x][i] for f, x in zip(factors, l)) for i in range(factors[0].dim))
        wts[l] = sum((f.weights[x] for f, x in zip(factors, l)), Fraction(0))
    return WeightedConfig(labels, pts, wts)


def flag_configuration(flag):
    """Weight mu_1 + ... + mu_k on the product of the supports; labels are tuples of bases."""
    cfg = minkowski_weight([valuated_configuration(mu) for mu in flag])
    relabel = {l: tuple(x[0] for x in l) for l in cfg.labels}
    return WeightedConfig(
        [relabel[l] for l in cfg.labels],
        {relabel[l]: cfg.points[l] for l in cfg.labels},
        {relabel[l]: cfg.weights[l] for l in cfg.labels},
    )


def subdivide(cfg):
    labels = cfg.labels
    pts = [cfg.points[l] for l in labels]
    w = [cfg.weights[l] for l in labels]
    faces = [SubdivisionFace([labels[i] for i in f], u) for f, u in polyhedra.lower_hull_faces(pts, w)]
    return Subdivision(cfg, faces)


def face_at(cfg, u):
    """Brute force argmin of w(l) + <u, a_l> (labels)."""
    labels = cfg.labels
    idx = polyhedra.face_at([cfg.points[l] for l in labels], [cfg.weights[l] for l in labels], u)
    return frozenset(labels[i] for i in idx)


# ---------------------------------------------------------------------------
# flag matroidal certification


def certify_flag_matroidal(faces, ranks, n):
    """(ok, verdicts) for faces whose labels are tuples (B_1, ..., B_k) of bases."""
    ranks = tuple(ranks)
    verdicts = []
    cache = _CERT_CACHE
    if len(cache) > 200000:
        cache.clear()
    ok = True
    for f in faces:
        labs = f.labels if isinstance(f, SubdivisionFace) else frozenset(f)
        v = _certify_face(labs, ranks, n, cache)
        v["face"] = labs
        verdicts.append(v)
        ok = ok and v["ok"]
    return ok, verdicts


_CERT_CACHE = {}


def _certify_face(labs, ranks, n, cache):
    k = len(ranks)
    proj = [sorted({l[i] for l in labs}) for i in range(k)]
    out = {"mixed": True, "matroids": True, "flag": True, "ok": False, "reason": None}
    if len(labs) != _prod(len(p) for p in proj) or set(product(*proj)) != set(labs):
        out["mixed"] = False
        out["reason"] = "face is not a product of its projections"
        return out
    mats = []
    for i, (r, P) in enumerate(zip(ranks, proj)):
        key = (n, r, tuple(P))
        if key not in cache:
            try:
                cache[key] = validate_matroid(n, r, P)
            except (MatroidError, ValueError):
                cache[key] = None
        if cache[key] is None:
            out["matroids"] = False
            out["reason"] = "factor %d is not a matroid" % i
            return out
        mats.append(cache[key])
    for i in range(k):
        for j in range(i + 1, k):
            key = ("q", mats[i], mats[j])
            if key not in cache:
                cache[key] = is_quotient(mats[i], mats[j])
            if not cache[key]:
                out["flag"] = False
                out["reason"] = "factor %d is not a quotient of factor %d" % (i, j)
                return out
    out["ok"] = True
    return out


def _prod(xs):
    p = 1
    for x in xs:
        p *= x
    return p


def flag_subdivision(flag):
    """Subdivision of the product of supports by the Minkowski weight of the flag."""
    return subdivide(flag_configuration(flag))


def is_flag_matroidal(flag):
    """Decision form: every face of the induced subdivision is a flag matroid."""
    flag = list(flag)
    ranks = [mu.r for mu in flag]
    sub = flag_subdivision(flag)
    return certify_flag_matroidal(sub.faces, ranks, flag[0].n)[0]


def theorem_a_c_to_d(flag):
    """Given a flag matroidal subdivision, check that the weights form a valuated flag matroid."""
    from .flag import quotient_by_containment
    from .valuated import validate_valuated

    flag = list(flag)
    if not is_flag_matroidal(flag):
        raise ValueError("the induced subdivision is not flag matroidal")
    valid = [validate_valuated(mu) for mu in flag]
    return all(quotient_by_containment(valid[i], valid[j]) for i in range(len(valid)) for j in range(i + 1, len(valid)))


# ---------------------------------------------------------------------------
# Cayley trick


def cayley_faces_correspond(mq, m, a=0, b=0):
    """Faces of the lift meeting both sides correspond to faces of the Minkowski subdivision."""
    from .flag import fibration_lift

    nu = fibration_lift(mq, m, a, b)
    big = subdivide(valuated_configuration(nu))
    shifted = [
        valuated_configuration(mq).reweighted({l: w + Fraction(a) for l, w in valuated_configuration(mq).weights.items()}),
        valuated_configuration(m).reweighted({l: w + Fraction(b) for l, w in valuated_configuration(m).weights.items()}),
    ]
    small = subdivide(minkowski_weight(shifted))
    images = set()
    for f in big.faces:
        top = {tuple(i - 1 for i in l[0][1:]) for l in f.labels if l[0][0] == 0}
        rest = {tuple(i - 1 for i in l[0]) for l in f.labels if l[0][0] != 0}
        if top and rest:
            images.add(frozenset(((I,), (J,)) for I in top for J in rest))
    return images == small.label_faces()


# ---------------------------------------------------------------------------
# Minkowski decompositions


def minkowski_factors(cfg, factor_labels):
    """Weights w_i on the factors with w(l) = sum_i w_i(l_i), or None.

    factor_labels: list of label lists; cfg labels must be the tuples of their product.
    """
    factor_labels = [list(f) for f in factor_labels]
    offs, k = [], 0
    for f in factor_labels:
        offs.append(k)
        k += len(f)
    pos = [{x: t for t, x in enumerate(f)} for f in factor_labels]
    rows, rhs = [], []
    for l in cfg.labels:
        row = [0] * k
        for i, x in enumerate(l):
            row[offs[i] + pos[i][x]] = 1
        rows.append(row)
        rhs.append(cfg.weights[l])
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    return [{x: sol[offs[i] + t] for t, x in enumerate(f)} for i, f in enumerate(factor_labels)]


def is_minkowski_sum(cfg, factor_labels):
    return minkowski_factors(cfg, factor_labels) is not None


def point_mixed_decomposition(sub, factors):
    """Per maximal face, a tuple of factor label subsets whose Minkowski sum has the
    same point set as the face, or None for a face with no such decomposition."""
    out = []
    for f in sub.maximal_faces():
        target = frozenset(sub.config.points[l] for l in f.labels)
        found = None
        choices = [_nonempty_subsets(F.labels) for F in factors]
        for pick in product(*choices):
            pts = set()
            for combo in product(*pick):
                pts.add(tuple(sum(F.points[x][i] for F, x in zip(factors, combo)) for i in range(factors[0].dim)))
            if pts == target:
                found = pick
                break
        out.append((f.labels, found))
    return out


def _nonempty_subsets(xs):
    xs = list(xs)
    return [c for k in range(1, len(xs) + 1) for c in combinations(xs, k)]


# ---------------------------------------------------------------------------
# the hexagon


HEX_A = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
HEX_B = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]


def _hex_name(p):
    return "".join(str(x) for x in p)


def hexagon_factors():
    wA = WeightedConfig(HEX_A, {p: p for p in HEX_A}, {p: 0 for p in HEX_A})
    wB = WeightedConfig(HEX_B, {p: p for p in HEX_B}, {(0, 1, 1): 1, (1, 0, 1): 0, (1, 1, 0): 0})
    return wA, wB


def hexagon_configuration(weights):
    """The nine-label configuration A + B; weights keyed by point name
    ('201', ..., '001+110', '100+011', '010+101')."""
    wA, wB = hexagon_factors()
    cfg = minkowski_weight([wA, wB])
    w = {}
    for l in cfg.labels:
        p = cfg.points[l]
        if p == (1, 1, 1):
            w[l] = Fraction(weights[_hex_name(l[0]) + "+" + _hex_name(l[1])])
        else:
            w[l] = Fraction(weights[_hex_name(p)])
    return cfg.reweighted(w)


HEX_W1 = {"201": 0, "210": 0, "120": 0, "021": 1, "012": 1, "102": 0, "001+110": 0, "100+011": 0, "010+101": 17}
HEX_W2 = {"201": 0, "210": 0, "120": 0, "021": 1, "012": 1, "102": 0, "001+110": 0, "100+011": 1, "010+101": 0}
