"""Random valid instances from p-adic valuations of minors of integer matrices."""
import random
from fractions import Fraction
from itertools import combinations

from .trop import INF
from .valuated import ValuatedMatroid


def _det(rows):
    """Exact integer determinant (Bareiss)."""
    m = [list(r) for r in rows]
    k = len(m)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if m[c][c] == 0:
            p = next((i for i in range(c + 1, k) if m[i][c] != 0), None)
            if p is None:
                return 0
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                m[i][j] = (m[i][j] * m[c][c] - m[i][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[k - 1][k - 1]


def _val(x, p):
    if x == 0:
        return INF
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return Fraction(v)


def _matrix(rows, n, rng, p, zero_prob):
    A = []
    for _ in range(rows):
        row = []
        for _ in range(n):
            if rng.random() < zero_prob:
                row.append(0)
            else:
                row.append(rng.choice([-3, -2, -1, 1, 2, 3]) * p ** rng.randint(0, 3))
        A.append(row)
    return A


def realizable_flag(ranks, n, rng=None, p=2, zero_prob=0.15, scale=True):
    """A valuated flag matroid [mu_1, ..., mu_k] from the row flag of a random matrix.

    mu_i(B) = val_p of the maximal minor on the first ranks[i] rows and columns B.
    Then a common torus action, a positive scaling and per-block shifts are applied.
    """
    rng = rng or random.Random()
    ranks = list(ranks)
    top = max(ranks)
    while True:
        A = _matrix(top, n, rng, p, zero_prob)
        flag = []
        for r in ranks:
            vals = {}
            for B in combinations(range(n), r):
                v = _val(_det([[A[i][j] for j in B] for i in range(r)]), p)
                if v is not INF:
                    vals[B] = v
            if not vals:
                break
            flag.append(vals)
        if len(flag) == len(ranks):
            break
    if scale:
        lam = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        u = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        out = []
        for r, vals in zip(ranks, flag):
            c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            out.append({B: lam * v + sum(u[i] for i in B) + c for B, v in vals.items()})
        flag = out
    return [ValuatedMatroid._raw(n, r, vals) for r, vals in zip(ranks, flag)]


def random_valuated_matroid(r, n, rng=None, **kw):
    return realizable_flag([r], n, rng, **kw)[0]


def random_values(subsets, rng, inf_prob=0.2, alphabet=None):
    """Arbitrary (usually invalid) values on the given subsets; never all infinite."""
    while True:
        vals = {}
        for B in subsets:
            if rng.random() < inf_prob:
                continue
            if alphabet is not None:
                vals[B] = Fraction(rng.choice(alphabet))
            else:
                vals[B] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if vals:
            return vals


def perturb(values, rng):
    """Change one finite coordinate by a random nonzero rational."""
    vals = dict(values)
    B = rng.choice(sorted(vals))
    vals[B] = vals[B] + Fraction(rng.choice([-1, 1]) * rng.randint(1, 6), rng.randint(1, 3))
    return vals


def random_proj_point(n, rng, support=None):
    if support is None:
        k = rng.randint(1, n)
        support = rng.sample(range(n), k)
    support = set(support)
    return tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 2)) if i in support else INF for i in range(n))


def span_point(mu, rng):
    """A random point of the min-plus span of the valuated cocircuits of mu."""
    cocs = mu.cocircuits
    k = rng.randint(1, min(4, len(cocs)))
    acc = [INF] * mu.n
    for C in rng.sample(cocs, k):
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
        for j, c in enumerate(C):
            if c is not INF and a + c < acc[j]:
                acc[j] = a + c
    return tuple(acc)
