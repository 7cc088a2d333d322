"""Valuated flag matroids, valuated quotients and the fibration Dr(r+1;n+1) -> FlDr(r,r+1;n)."""
import random
from fractions import Fraction
from itertools import combinations

from .matroid import FlagMatroid, is_quotient
from .trop import min_achieved_twice
from .valuated import (
    PlueckerVector,
    ValuatedMatroid,
    ValuationError,
    dual_valuation,
    validate_valuated,
)


def _key(s):
    return tuple(sorted(s))


def _check_pair(mq, m):
    if mq.n != m.n:
        raise ValueError("quotient test needs a common ground set")
    if mq.r > m.r:
        raise ValueError("rank order violated: %d > %d" % (mq.r, m.r))


def quotient_by_definition(mq, m):
    """Exchange form: for I in supp mq, J in supp m, i in I-J there is j in J-I with
    mq(I) + m(J) >= mq(I-i+j) + m(J-j+i)."""
    for I, a in mq.values.items():
        sI = set(I)
        for J, b in m.values.items():
            sJ = set(J)
            lhs = a + b
            for i in sI - sJ:
                if not any(
                    lhs >= mq[_key(sI - {i} | {j})] + m[_key(sJ - {j} | {i})] for j in sJ - sI
                ):
                    return False
    return True


def incidence_violation(mq, m):
    """A violated incidence-Pluecker relation as (I', J'), or None."""
    n = m.n
    for Ip in combinations(range(n), mq.r - 1):
        sI = set(Ip)
        for Jp in combinations(range(n), m.r + 1):
            sJ = set(Jp)
            terms = [mq[_key(sI | {j})] + m[_key(sJ - {j})] for j in Jp if j not in sI]
            if terms and not min_achieved_twice(terms):
                return (Ip, Jp)
    return None


def quotient_by_incidence(mq, m):
    return incidence_violation(mq, m) is None


def quotient_by_containment(mq, m):
    """Every valuated cocircuit of mq lies in the circuit prevariety of m."""
    cocs = mq.cocircuits if isinstance(mq, ValuatedMatroid) else _circuits_of(dual_valuation(mq))
    circs = m.circuits if isinstance(m, ValuatedMatroid) else _circuits_of(m)
    for D in cocs:
        for C in circs:
            if not min_achieved_twice([c + d for c, d in zip(C, D)]):
                return False
    return True


def _circuits_of(mu):
    from .valuated import valuated_circuits

    return valuated_circuits(mu)


_METHODS = {"def": quotient_by_definition, "ip": quotient_by_incidence, "tls": quotient_by_containment}


def is_valuated_quotient(mq, m, method="all"):
    """Is mq a valuated quotient of m?  method: def, ip, tls or all (asserts agreement).

    Both arguments must be valuated matroids; invalid Pluecker vectors raise.
    """
    _check_pair(mq, m)
    for mu in (mq, m):
        if not isinstance(mu, ValuatedMatroid):
            validate_valuated(mu)
    if method == "all":
        answers = {k: f(mq, m) for k, f in _METHODS.items()}
        if len(set(answers.values())) != 1:
            raise AssertionError("quotient methods disagree: %r" % (answers,))
        return answers["def"]
    if method not in _METHODS:
        raise ValueError("unknown method %r (expected def, ip, tls or all)" % (method,))
    return _METHODS[method](mq, m)


def quotient_all_methods(mq, m):
    _check_pair(mq, m)
    return {k: f(mq, m) for k, f in _METHODS.items()}


class ValuatedFlag:
    def __init__(self, constituents):
        self.constituents = tuple(constituents)

    @property
    def n(self):
        return self.constituents[0].n

    @property
    def ranks(self):
        return tuple(mu.r for mu in self.constituents)

    def underlying(self):
        return FlagMatroid(mu.matroid for mu in self.constituents)

    def __repr__(self):
        return "ValuatedFlag(ranks=%s, n=%d)" % (self.ranks, self.n)


class FlagError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _check_flag_shape(flag):
    flag = list(flag)
    if not flag:
        raise ValueError("a flag needs at least one constituent")
    if len({mu.n for mu in flag}) != 1:
        raise ValueError("constituents live on different ground sets")
    for a, b in zip(flag, flag[1:]):
        if a.r > b.r:
            raise ValueError("ranks must weakly increase")
    return flag


def validate_flag(flag, method="all"):
    """ValuatedFlag, or FlagError carrying ('gp', k, witness) or ('quotient', i, j)."""
    flag = _check_flag_shape(flag)
    valid = []
    for k, p in enumerate(flag):
        try:
            valid.append(validate_valuated(p))
        except ValuationError as e:
            raise FlagError("constituent %d is not a valuated matroid: %s" % (k, e), ("gp", k, e.witness))
    for i in range(len(valid)):
        for j in range(i + 1, len(valid)):
            if not is_valuated_quotient(valid[i], valid[j], method):
                raise FlagError("constituent %d is not a valuated quotient of %d" % (i, j), ("quotient", i, j))
    out = ValuatedFlag(valid)
    for i in range(len(valid)):
        for j in range(i + 1, len(valid)):
            if not is_quotient(valid[i].matroid, valid[j].matroid):
                raise AssertionError("underlying matroids of a valuated flag do not form a flag")
    return out


def flag_dressian_member(flag, method="all"):
    try:
        validate_flag(flag, method)
    except FlagError:
        return False
    return True


def flag_dressian_witness(flag, method="all"):
    """None for members, otherwise the FlagError witness."""
    try:
        validate_flag(flag, method)
    except FlagError as e:
        return e.witness
    return None


# ---------------------------------------------------------------------------
# fibration; element 0 of the big ground set is the new element


def fibration_project(nu):
    """(mu', mu) on range(n) from nu on range(n+1); mu'(I-0) = nu(I), mu(J) = nu(J) for J avoiding 0."""
    top, rest = {}, {}
    for B, v in nu.values.items():
        if B[0] == 0:
            top[tuple(i - 1 for i in B[1:])] = v
        else:
            rest[tuple(i - 1 for i in B)] = v
    if not top:
        raise ValueError("outside the domain: every coordinate on subsets containing 0 is infinite (0 is a loop)")
    if not rest:
        raise ValueError("outside the domain: every coordinate on subsets avoiding 0 is infinite (0 is a coloop)")
    cls = ValuatedMatroid if isinstance(nu, ValuatedMatroid) else PlueckerVector
    return cls._raw(nu.n - 1, nu.r - 1, top), cls._raw(nu.n - 1, nu.r, rest)


def fibration_lift(mq, m, a=0, b=0):
    """The valuated matroid a*mq + b*m on {0} u (range(n) shifted by one)."""
    if mq.n != m.n:
        raise ValueError("common ground set required")
    if m.r - mq.r != 1:
        raise ValueError("rank difference must be 1, got %d" % (m.r - mq.r))
    a, b = Fraction(a), Fraction(b)
    vals = {}
    for I, v in mq.values.items():
        vals[(0,) + tuple(i + 1 for i in I)] = a + v
    for J, v in m.values.items():
        vals[tuple(j + 1 for j in J)] = b + v
    return validate_valuated(PlueckerVector(m.n + 1, m.r, vals))


def affine_cone_equal_sample(r, n, samples=1000, rng=None):
    """Compare the affine cones of Dr(r+1;n+1) and FlDr(r,r+1;n) on random points.

    Returns a dict with the sample count, per-side membership counts and a list
    of counterexamples (points where the two membership tests differ).
    """
    from . import samples as smp
    from .prevariety import generate_relations, member

    if not 0 <= r < n:
        raise ValueError("need 0 <= r < n")
    rng = rng or random.Random(0)
    big = generate_relations([r + 1], n + 1)
    small = generate_relations([r, r + 1], n)
    subsets = list(combinations(range(n + 1), r + 1))
    report = {"samples": 0, "members": 0, "counterexamples": []}
    for k in range(samples):
        vals = _sample_point(r, n, subsets, k, rng, smp)
        top = {tuple(i - 1 for i in B[1:]): v for B, v in vals.items() if B[0] == 0}
        rest = {tuple(i - 1 for i in B): v for B, v in vals.items() if B[0] != 0}
        x = member(big, [vals])
        y = member(small, [top, rest])
        report["samples"] += 1
        report["members"] += int(x)
        if x != y:
            report["counterexamples"].append({B: str(v) for B, v in sorted(vals.items())})
    return report


def _sample_point(r, n, subsets, k, rng, smp):
    kind = k % 6
    if kind == 0:
        return dict(smp.random_valuated_matroid(r + 1, n + 1, rng).values)
    if kind == 1:
        # 0 is a loop: nu lives on subsets avoiding 0
        mu = smp.random_valuated_matroid(r + 1, n, rng)
        return {tuple(i + 1 for i in B): v for B, v in mu.values.items()}
    if kind == 2:
        # 0 is a coloop
        if r == 0:
            return {(0,): Fraction(rng.randint(-3, 3))}
        mu = smp.random_valuated_matroid(r, n, rng)
        return {(0,) + tuple(i + 1 for i in B): v for B, v in mu.values.items()}
    if kind == 3:
        return smp.perturb(smp.random_valuated_matroid(r + 1, n + 1, rng).values, rng)
    if kind == 4:
        return smp.random_values(subsets, rng, inf_prob=rng.choice([0, 0.3, 0.6]), alphabet=[0, 1, 2])
    if rng.random() < 0.2:
        return {}
    return smp.random_values(subsets, rng, inf_prob=0.3)
