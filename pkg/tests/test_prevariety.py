import random
from fractions import Fraction
from itertools import combinations

import pytest

from flagdressian import samples as smp
from flagdressian.flag import fibration_lift
from flagdressian.prevariety import (
    Infeasible,
    fan_cell_hrep,
    fan_contains,
    generate_relations,
    member,
    prevariety_fan,
    restrict_to_stratum,
    violated_relation,
)


def test_generate_examples():
    s = generate_relations([2], 4)
    assert len(s.polynomials) == 1 and len(s.polynomials[0]) == 3
    s = generate_relations([1, 3], 4)
    assert len(s.polynomials) == 1 and len(s.polynomials[0]) == 4
    assert s.polynomials[0].label[0] == "IP"
    s = generate_relations([1, 2], 4)
    kinds = sorted(F.label[0] for F in s.polynomials)
    assert kinds == ["GP", "IP", "IP", "IP", "IP"]
    with pytest.raises(ValueError):
        generate_relations([2, 1], 4)


def test_restrict_examples():
    s = generate_relations([2], 4)
    full = restrict_to_stratum(s, [list(combinations(range(4), 2))])
    assert len(full.variables) == 6 and len(full.polynomials) == 1
    bad = restrict_to_stratum(s, [[(0, 1), (2, 3)]])
    assert isinstance(bad, Infeasible) and not bad
    assert not member(bad, [[0] * 6])


def test_member_examples():
    rng = random.Random(0)
    for ranks, n in [([2], 4), ([1, 2], 4), ([1, 2, 3], 4), ([2, 3], 5)]:
        s = generate_relations(ranks, n)
        zero = [{B: 0 for B in combinations(range(n), r)} for r in ranks]
        assert member(s, zero)
    s = generate_relations([2], 4)
    assert not member(s, [[0, 1, 0, 1, 0, 0]])
    assert violated_relation(s, [[0, 1, 0, 1, 0, 0]]) is s.polynomials[0]
    with pytest.raises(ValueError):
        member(s, [[0, 0, 0]])
    big = generate_relations([2], 5)
    for _ in range(30):
        mq, m = smp.realizable_flag([1, 2], 4, rng)
        assert member(big, [fibration_lift(mq, m, 1, -1).values])


def test_dr24_fan():
    fan = prevariety_fan(generate_relations([2], 4))
    assert (fan.dim, fan.lineality_dim, fan.f_vector) == (5, 4, [1, 3])


def test_fldr134_fan():
    fan = prevariety_fan(generate_relations([1, 3], 4))
    assert (fan.projective_dim, fan.projective_lineality_dim, fan.f_vector) == (5, 3, [1, 4, 6])


def test_fldr124_fan_and_threads():
    s = generate_relations([1, 2], 4)
    a = prevariety_fan(s)
    b = prevariety_fan(s, threads=3)
    assert (a.dim, a.lineality_dim, a.f_vector) == (7, 5, [1, 10, 15])
    assert a.rays == b.rays and sorted(a.cells) == sorted(b.cells)


def test_dr25_is_fldr124():
    fan = prevariety_fan(generate_relations([2], 5))
    assert (fan.dim, fan.lineality_dim, fan.f_vector) == (7, 5, [1, 10, 15])


def test_fan_support_matches_membership():
    rng = random.Random(1)
    for ranks, n in [([2], 4), ([1, 2], 4), ([1, 3], 4)]:
        s = generate_relations(ranks, n)
        fan = prevariety_fan(s)
        hits = 0
        for k in range(300):
            if k % 2:
                while True:
                    flag = smp.realizable_flag(ranks, n, rng, zero_prob=0)
                    x = [flag[b][S] for b, S in s.variables]
                    if all(isinstance(v, Fraction) for v in x):
                        break
            else:
                x = [Fraction(rng.randint(-2, 2)) for _ in s.variables]
            m = member(s, _blocks(s, x))
            hits += m
            assert fan_contains(fan, x) == m
        assert 0 < hits < 300


def test_cell_hrep_contains_its_rays():
    s = generate_relations([1, 2], 4)
    fan = prevariety_fan(s)
    for k, (d, idx) in enumerate(fan.cells):
        eqs, ineqs = fan_cell_hrep(fan, k)
        x = [sum(Fraction(fan.rays[i][j]) for i in idx) for j in range(fan.ambient_dim)]
        assert all(sum(a * b for a, b in zip(e, x)) == 0 for e in eqs)
        assert all(sum(a * b for a, b in zip(g, x)) <= 0 for g in ineqs)
        assert member(s, _blocks(s, x))


def test_infeasible_fan_raises():
    s = restrict_to_stratum(generate_relations([2], 4), [[(0, 1), (2, 3)]])
    with pytest.raises(ValueError):
        prevariety_fan(s)


def _blocks(s, x):
    out = [{} for _ in s.ranks]
    for (b, S), v in zip(s.variables, x):
        out[b][S] = v
    return out
