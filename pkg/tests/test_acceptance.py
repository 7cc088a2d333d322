"""Acceptance criteria 1-10. Each test records one PASS/FAIL line.

Run with pytest, or directly as a script to print the ten lines.
"""
import random
import time
from fractions import Fraction
from itertools import combinations, permutations, product

import pytest

from acceptance_log import record
from helpers import all_vectors, m4_bases
from oracles import oracle_subdivision_faces, oracle_valuated
from flagdressian import samples as smp
from flagdressian.flag import (
    affine_cone_equal_sample,
    fibration_lift,
    fibration_project,
    is_valuated_quotient,
)
from flagdressian.matroid import validate_matroid
from flagdressian.polyhedra import lower_hull_faces
from flagdressian.prevariety import generate_relations, prevariety_fan, restrict_to_stratum
from flagdressian.subdivision import (
    HEX_W1,
    HEX_W2,
    hexagon_configuration,
    hexagon_factors,
    is_minkowski_sum,
    minkowski_weight,
    point_mixed_decomposition,
    subdivide,
)
from flagdressian.characterizations import verdicts
from flagdressian.trop import INF
from flagdressian.valuated import (
    PlueckerVector,
    contract_valuated,
    dual_valuation,
    face_matroid,
    is_valuated_matroid,
    restrict_valuated,
    tls_all_methods,
    validate_valuated,
)


def _fan(ranks, n, strata=None):
    t = time.time()
    sys_ = generate_relations(ranks, n)
    if strata is not None:
        sys_ = restrict_to_stratum(sys_, strata)
    return prevariety_fan(sys_), time.time() - t


# ---------------------------------------------------------------------------
# 1-4: fans


def check_1():
    fan, dt = _fan([1, 3], 4)
    got = (fan.projective_dim, fan.projective_lineality_dim, fan.f_vector[1:])
    ok = got == (5, 3, [4, 6]) and dt < 5
    return ok, "FlDr(1,3;4) projective dim/lineality %d/%d, rays/2-cones %s, %.2fs" % (got[0], got[1], got[2], dt)


def check_2():
    fan, dt = _fan([1, 2], 4)
    got = (fan.dim, fan.lineality_dim, fan.f_vector[1:])
    ok = got == (7, 5, [10, 15]) and dt < 30
    return ok, "FlDr(1,2;4) dim/lineality %d/%d, rays/2-cones %s, %.2fs" % (got[0], got[1], got[2], dt)


def check_3():
    fan, dt = _fan([2, 3], 6, [None, m4_bases()])
    got = (fan.dim, fan.lineality_dim, fan.f_vector[1:])
    ok = got == (10, 7, [13, 21, 1]) and dt < 600
    return ok, "FlDr(U26,M4) dim/lineality %d/%d, cells %s, %.1fs" % (got[0], got[1], got[2], dt)


def check_4():
    fan, dt = _fan([1, 2, 3], 4)
    # the affine lineality contains the global all-ones line; modulo it the space is 5-dimensional
    lin = fan.lineality_dim - 1
    ok = fan.f_vector == [1, 20, 79, 78] and lin == 5 and dt < 600
    return ok, "Fl(1,2,3;4) lineality mod global line %d, f-vector %s (expected (1,20,79,78)), %.1fs" % (
        lin,
        tuple(fan.f_vector),
        dt,
    )


# ---------------------------------------------------------------------------
# 5: four descriptions of valuated flags on the exhaustive grid, reduced to symmetry classes

GRID = [0, 1, 2, INF]


def _normalize(vals):
    m = min(v for v in vals if v is not INF)
    return tuple(v if v is INF else v - m for v in vals)


def _grid_classes(ranks, n):
    """Orbit representatives of the grid under S_n and per-block shifts.

    Returns (reps, key) where key maps any grid instance to its representative.
    """
    subs = [list(combinations(range(n), r)) for r in ranks]
    perms = list(permutations(range(n)))
    maps = []
    for S in subs:
        idx = {B: i for i, B in enumerate(S)}
        maps.append([[idx[tuple(sorted(p[i] for i in B))] for B in S] for p in perms])
    blocks = []
    for S in subs:
        normed = {_normalize(v) for v in product(GRID, repeat=len(S)) if any(x is not INF for x in v)}
        blocks.append(sorted(normed, key=repr))
    canon = {}
    reps = []
    for pair in product(*blocks):
        if pair in canon:
            continue
        reps.append(pair)
        for k in range(len(perms)):
            img = tuple(tuple(v[m] for m in maps[b][k]) for b, v in enumerate(pair))
            canon.setdefault(img, pair)
    return subs, reps, canon


def _flag(subs, n, pair):
    return [PlueckerVector(n, len(S[0]), dict(zip(S, v))) for S, v in zip(subs, pair)]


def _agree(flag):
    v = verdicts(flag)
    return len(set(v.values())) == 1, v["a"]


def check_5(random_n5=1000, equiv_samples=300, seed=5):
    rng = random.Random(seed)
    n = 4
    bad, counts, classes, grid_size = [], {True: 0, False: 0}, 0, 0
    for ranks in [(1, 2), (1, 3), (2, 3)]:
        subs, reps, canon = _grid_classes(ranks, n)
        classes += len(reps)
        grid_size += _prod(4 ** len(S) - 1 for S in subs)
        verdict = {}
        for pair in reps:
            ok, v = _agree(_flag(subs, n, pair))
            verdict[pair] = v
            counts[v] += 1
            if not ok:
                bad.append((ranks, pair))
        # the reduction itself: raw grid instances agree with their class
        for _ in range(equiv_samples):
            raw = []
            for S in subs:
                while True:
                    v = tuple(rng.choice(GRID) for _ in S)
                    if any(x is not INF for x in v):
                        break
                raw.append(v)
            ok, v = _agree(_flag(subs, n, raw))
            key = canon[tuple(_normalize(x) for x in raw)]
            if not ok or v != verdict[key]:
                bad.append((ranks, tuple(raw)))
    rand_counts = {True: 0, False: 0}
    for k in range(random_n5):
        ranks = rng.choice([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4), (1, 2, 3)])
        flag = _random_flag(ranks, 5, k, rng)
        ok, v = _agree(flag)
        rand_counts[v] += 1
        if not ok:
            bad.append((ranks, flag))
    ok = not bad and min(counts.values()) > 0 and min(rand_counts.values()) > 0
    return ok, "grid %d instances in %d classes (%d in / %d out), %d raw equivariance checks, %d random n=5 (%d in / %d out), %d disagreements" % (
        grid_size,
        classes,
        counts[True],
        counts[False],
        3 * equiv_samples,
        random_n5,
        rand_counts[True],
        rand_counts[False],
        len(bad),
    )


def _prod(xs):
    p = 1
    for x in xs:
        p *= x
    return p


def _random_flag(ranks, n, k, rng):
    flag = smp.realizable_flag(ranks, n, rng)
    kind = k % 4
    if kind == 0:
        return flag
    if kind == 1:
        i = rng.randrange(len(flag))
        flag[i] = PlueckerVector(n, flag[i].r, smp.perturb(flag[i].values, rng))
        return flag
    if kind == 2:
        # valid constituents from unrelated matrices
        return [smp.random_valuated_matroid(r, n, rng) for r in ranks]
    return [PlueckerVector(n, r, smp.random_values(list(combinations(range(n), r)), rng, 0.2)) for r in ranks]


# ---------------------------------------------------------------------------
# 6: five tests for tropical linear spaces


def check_6(matroids=60, points=200, seed=6):
    rng = random.Random(seed)
    bad, total, inside = 0, 0, 0
    for k in range(matroids):
        n = rng.randint(3, 6)
        r = rng.randint(1, n - 1)
        mu = smp.random_valuated_matroid(r, n, rng, zero_prob=rng.choice([0, 0.15, 0.3]))
        for j in range(points):
            u = smp.span_point(mu, rng) if j % 2 else smp.random_proj_point(n, rng)
            if all(x is INF for x in u):
                u = smp.random_proj_point(n, rng)
            ans = tls_all_methods(mu, u)
            total += 1
            inside += ans["i"]
            if len(set(ans.values())) != 1 or (j % 2 and not ans["i"]):
                bad += 1
    ok = bad == 0 and 0 < inside < total
    return ok, "%d valuated matroids x %d points, %d in the tropical linear space, %d disagreements" % (
        matroids,
        points,
        inside,
        bad,
    )


# ---------------------------------------------------------------------------
# 7: fibration


def _in_domain(nu):
    return any(B[0] == 0 for B in nu.values) and any(B[0] != 0 for B in nu.values)


def check_7(instances=500, samples=1000, seed=7):
    rng = random.Random(seed)
    bad, notes = 0, []
    for r, n in [(1, 4), (2, 4), (1, 5)]:
        for _ in range(instances):
            mq, m = smp.realizable_flag([r, r + 1], n, rng)
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            b = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            p, q = fibration_project(fibration_lift(mq, m, a, b))
            if not (p.projectively_equal(mq) and q.projectively_equal(m)):
                bad += 1
            while True:
                nu = smp.random_valuated_matroid(r + 1, n + 1, rng)
                if _in_domain(nu):
                    break
            p, q = fibration_project(nu)
            if not fibration_lift(p, q).projectively_equal(nu):
                bad += 1
        rep = affine_cone_equal_sample(r, n, samples, random.Random(seed + r + n))
        bad += len(rep["counterexamples"])
        notes.append("(%d,%d): %d/%d members" % (r, n, rep["members"], rep["samples"]))
    return bad == 0, "%d round trips per case, cone samples %s, %d failures" % (2 * instances, ", ".join(notes), bad)


# ---------------------------------------------------------------------------
# 8: hexagon


def check_8():
    wA, wB = hexagon_factors()
    s1 = subdivide(hexagon_configuration(HEX_W1))
    s2 = subdivide(hexagon_configuration(HEX_W2))
    s0 = subdivide(minkowski_weight([wA, wB]))
    same = s1.point_faces() == s2.point_faces() == s0.point_faces()
    labels = [l for l in s1.config.labels]
    not_sum = not is_minkowski_sum(s1.config, [wA.labels, wB.labels])
    w2_sum = is_minkowski_sum(s2.config, [wA.labels, wB.labels])
    mixed = all(pick is not None for _, pick in point_mixed_decomposition(s1, [wA, wB]))
    ok = same and not_sum and w2_sum and mixed and len(labels) == 9
    return ok, "point face posets identical %s, w1 Minkowski sum %s, w2 Minkowski sum %s, w1 cells mixed %s" % (
        same,
        not not_sum,
        w2_sum,
        mixed,
    )


# ---------------------------------------------------------------------------
# 9: oracles


def check_9(configs=400, seed=9):
    bad, count = 0, 0
    for r, n in [(2, 4), (2, 5)]:
        for p in all_vectors(n, r, [0, 1, INF]):
            count += 1
            if is_valuated_matroid(p) != oracle_valuated({frozenset(B): v for B, v in p.values.items()}):
                bad += 1
    rng = random.Random(seed)
    sub_bad = 0
    for t in range(configs):
        d = rng.randint(1, 3)
        k = rng.randint(1, 12)
        pts = [tuple(rng.randint(0, 2) for _ in range(d)) for _ in range(k)]
        deg = 2 * d
        pts = [p + (deg - sum(p),) for p in pts]
        w = [rng.randint(0, 3) for _ in pts]
        got = {f for f, _ in lower_hull_faces(pts, w)}
        if got != oracle_subdivision_faces(pts, w):
            sub_bad += 1
    ok = bad == 0 and sub_bad == 0
    return ok, "%d Pluecker vectors, %d mismatches; %d configurations, %d subdivision mismatches" % (
        count,
        bad,
        configs,
        sub_bad,
    )


# ---------------------------------------------------------------------------
# 10: properties


def _properties(mu, failures):
    n = mu.n
    if not dual_valuation(dual_valuation(mu)).projectively_equal(mu):
        failures.append(("double dual", mu))
    dual = dual_valuation(mu)
    for k in range(n + 1):
        for S in combinations(range(n), k):
            rest = tuple(i for i in range(n) if i not in S)
            c, lc = contract_valuated(mu, S)
            if not rest:
                continue
            d, ld = restrict_valuated(dual, rest)
            if lc != ld or not dual_valuation(c).projectively_equal(d):
                failures.append(("minor duality", mu, S))


def _face_matroids(mu, points, failures):
    for u in points:
        if all(x is INF for x in u):
            continue
        M, labels = face_matroid(mu, u)
        try:
            validate_matroid(M.n, M.r, M.bases)
        except ValueError:
            failures.append(("face matroid", mu, u))


def _quotient_properties(mq, m, failures, method="def"):
    q = is_valuated_quotient(mq, m, method)
    if q != is_valuated_quotient(dual_valuation(m), dual_valuation(mq), method):
        failures.append(("quotient duality", mq, m))
    if q:
        lq = set(range(m.n)) - set().union(*map(set, mq.values))
        l = set(range(m.n)) - set().union(*map(set, m.values))
        cq = set.intersection(*map(set, mq.values))
        c = set.intersection(*map(set, m.values))
        if not (l <= lq and cq <= c):
            failures.append(("loop propagation", mq, m))
    return q


def check_10(random_cases=150, seed=10):
    failures = []
    valid = {}
    for n in range(1, 5):
        for r in range(0, n + 1):
            alph = [0, 1, INF] if r not in (0, n) else [0]
            vs = [validate_valuated(p) for p in all_vectors(n, r, alph) if is_valuated_matroid(p)]
            valid[(r, n)] = vs
            pts = list(product([0, 1, INF], repeat=n))
            for mu in vs:
                _properties(mu, failures)
                _face_matroids(mu, pts, failures)
    exhaustive_pairs = quotients = 0
    for n in range(1, 5):
        for r1 in range(0, n + 1):
            for r2 in range(r1, n + 1):
                for mq in valid[(r1, n)]:
                    for m in valid[(r2, n)]:
                        exhaustive_pairs += 1
                        quotients += _quotient_properties(mq, m, failures)
    rng = random.Random(seed)
    for k in range(random_cases):
        n = rng.choice([5, 6])
        r = rng.randint(1, n - 1)
        mu = smp.random_valuated_matroid(r, n, rng, zero_prob=0.25)
        _properties(mu, failures)
        _face_matroids(mu, [smp.random_proj_point(n, rng) for _ in range(20)], failures)
        r1 = rng.randint(1, r)
        mq, m = smp.realizable_flag([r1, r], n, rng, zero_prob=0.25)
        if not _quotient_properties(mq, m, failures, "all"):
            failures.append(("realizable flag rejected", mq, m))
        m2 = smp.random_valuated_matroid(r, n, rng)
        _quotient_properties(mq, m2, failures, "all")
    ok = not failures
    return ok, "exhaustive n<=4: %d valuated matroids, %d pairs (%d quotients); %d random at n=5,6; %d failures" % (
        sum(len(v) for v in valid.values()),
        exhaustive_pairs,
        quotients,
        random_cases,
        len(failures),
    )


# ---------------------------------------------------------------------------

CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8, 9: check_9, 10: check_10}


@pytest.mark.parametrize("k", sorted(CHECKS))
def test_criterion(k):
    ok, detail = CHECKS[k]()
    record(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for k in sorted(CHECKS):
        record(k, *CHECKS[k]())
