from itertools import combinations

import pytest

from helpers import m4_bases
from oracles import oracle_is_matroid, oracle_matroid_quotient
from flagdressian.matroid import (
    Matroid,
    MatroidError,
    is_flag_base_polytope,
    is_generalized_permutohedron,
    is_matroid,
    is_quotient,
    uniform,
    validate_matroid,
    validate_flag,
)
from flagdressian.subdivision import base_configuration


def test_validate_examples():
    assert validate_matroid(4, 2, list(combinations(range(4), 2))) == uniform(2, 4)
    M4 = validate_matroid(6, 3, m4_bases())
    assert len(M4.bases) == 16
    with pytest.raises(MatroidError) as e:
        validate_matroid(4, 2, [(0, 1), (2, 3)])
    assert e.value.witness == ((0, 1), (2, 3), 0)


def test_validate_input_errors():
    with pytest.raises(ValueError):
        validate_matroid(4, 2, [])
    with pytest.raises(ValueError):
        validate_matroid(4, 2, [(0, 1, 2)])


def test_all_families_on_four_elements_match_oracle():
    for r in range(0, 5):
        subsets = list(combinations(range(4), r))
        for mask in range(1, 1 << len(subsets)):
            fam = [S for k, S in enumerate(subsets) if mask >> k & 1]
            assert is_matroid(4, r, fam) == oracle_is_matroid(fam)


def test_rank_examples():
    U = uniform(2, 4)
    M4 = Matroid(6, 3, m4_bases())
    assert U.rank({0}) == 1 and U.rank(set()) == 0
    assert M4.rank({0, 1, 3}) == 2


def test_circuits():
    assert uniform(2, 4).circuits() == frozenset(combinations(range(4), 3))
    assert uniform(1, 4).circuits() == frozenset(combinations(range(4), 2))
    assert uniform(4, 4).circuits() == frozenset()
    M4 = Matroid(6, 3, m4_bases())
    assert {(0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5)} <= M4.circuits()


def test_minors_and_dual():
    M4 = Matroid(6, 3, m4_bases())
    assert M4.dual().dual() == M4
    for S in [(0,), (0, 1), (2, 4, 5)]:
        rest = tuple(i for i in range(6) if i not in S)
        c, lc = M4.contract(S)
        d, ld = M4.dual().restrict(rest)
        assert lc == ld and c.dual() == d


def test_quotient_examples():
    assert is_quotient(uniform(1, 4), uniform(2, 4))
    M4 = Matroid(6, 3, m4_bases())
    assert is_quotient(M4, M4)
    assert is_quotient(uniform(2, 6), M4)
    with pytest.raises(ValueError):
        is_quotient(uniform(1, 3), uniform(2, 4))


def test_quotient_against_oracle():
    mats = {}
    for r in range(0, 4):
        subsets = list(combinations(range(3), r))
        mats[r] = [
            Matroid(3, r, fam)
            for mask in range(1, 1 << len(subsets))
            for fam in [[S for k, S in enumerate(subsets) if mask >> k & 1]]
            if oracle_is_matroid(fam)
        ]
    for r1 in range(4):
        for r2 in range(r1, 4):
            for a in mats[r1]:
                for b in mats[r2]:
                    assert is_quotient(a, b) == oracle_matroid_quotient(a.bases, b.bases, 3)


def test_flag_validation():
    validate_flag([uniform(1, 4), uniform(2, 4), uniform(3, 4)])
    with pytest.raises(MatroidError):
        validate_flag([Matroid(4, 1, [(0,)]), Matroid(4, 2, [(1, 2)])])


def test_cuboctahedron():
    cfg = base_configuration([uniform(1, 4), uniform(3, 4)])
    pts = cfg.distinct_points()
    verts = [p for p in pts if p != (1, 1, 1, 1)]
    assert len(cfg) == 16 and len(verts) == 12
    assert is_generalized_permutohedron(verts) and is_flag_base_polytope(verts, [1, 3])
    assert is_generalized_permutohedron(pts) and is_flag_base_polytope(pts, [1, 3])


def test_truncated_tetrahedron():
    cfg = base_configuration([uniform(1, 4), uniform(2, 4)])
    assert len(cfg) == 24
    pts = cfg.distinct_points()
    assert is_generalized_permutohedron(pts) and is_flag_base_polytope(pts, [1, 2])


def test_not_permutohedra():
    # a homogeneous triangle with the edge direction (1,1,-2)
    assert not is_generalized_permutohedron([(0, 0, 2), (1, 1, 0), (2, 0, 0)])
    with pytest.raises(ValueError):
        is_generalized_permutohedron([(0, 0), (1, 0), (0, 1), (1, 1)])
    # a generalized permutohedron that is not a flag base polytope
    assert not is_flag_base_polytope([(2, 0, 0), (0, 2, 0), (0, 0, 2)], [1, 2])
