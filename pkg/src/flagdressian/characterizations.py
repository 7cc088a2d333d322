"""The four characterizations of valuated flag matroids, side by side."""
from functools import lru_cache

from .flag import quotient_by_containment, quotient_by_definition
from .prevariety import generate_relations, member
from .subdivision import is_flag_matroidal
from .valuated import ValuatedMatroid, ValuationError, valuation_exchange_violation, validate_valuated


@lru_cache(maxsize=None)
def _system(ranks, n):
    return generate_relations(list(ranks), n)


def verdict_a(flag):
    """Grassmann-Pluecker and incidence-Pluecker relations."""
    sys_ = _system(tuple(mu.r for mu in flag), flag[0].n)
    return member(sys_, [mu.values for mu in flag])


def verdict_b(flag):
    """Exchange axiom for each constituent, quotient exchange for each pair."""
    if any(valuation_exchange_violation(mu) is not None for mu in flag):
        return False
    return all(quotient_by_definition(flag[i], flag[j]) for i in range(len(flag)) for j in range(i + 1, len(flag)))


def verdict_c(flag):
    """The Minkowski weight induces a flag matroidal subdivision."""
    return is_flag_matroidal(flag)


def verdict_d(flag):
    """Valuated matroids whose cocircuits lie in the circuit prevarieties of the later ones."""
    try:
        valid = [mu if isinstance(mu, ValuatedMatroid) else validate_valuated(mu) for mu in flag]
    except ValuationError:
        return False
    return all(quotient_by_containment(valid[i], valid[j]) for i in range(len(valid)) for j in range(i + 1, len(valid)))


def verdicts(flag):
    flag = list(flag)
    return {"a": verdict_a(flag), "b": verdict_b(flag), "c": verdict_c(flag), "d": verdict_d(flag)}
