from fractions import Fraction
from itertools import combinations

from flagdressian.trop import INF
from flagdressian.valuated import PlueckerVector, valuated_matroid


def pv(n, r, vals):
    """Pluecker vector from values listed in lexicographic order of the r-subsets."""
    return PlueckerVector(n, r, dict(zip(combinations(range(n), r), vals)))


def vm(n, r, vals):
    return valuated_matroid(n, r, dict(zip(combinations(range(n), r), vals)))


def zero(n, r, bases=None):
    bases = list(combinations(range(n), r)) if bases is None else bases
    return valuated_matroid(n, r, {B: 0 for B in bases})


def m4_bases():
    hyper = {(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)}
    return [B for B in combinations(range(6), 3) if B not in hyper]


def all_vectors(n, r, alphabet):
    subsets = list(combinations(range(n), r))
    from itertools import product

    for vals in product(alphabet, repeat=len(subsets)):
        if any(v is not INF for v in vals):
            yield PlueckerVector(n, r, dict(zip(subsets, vals)))


F = Fraction
