import random

import pytest

import oracles
from qrakit.errors import DimensionMismatch, InputError, NotABijection, NotAPoset, NotSubsetOfE
from qrakit.relcalc import (
    BinRel,
    PointSet,
    check_partial_order,
    complement_in,
    compose,
    converse,
    equivalence_blocks,
    graph_identities_check,
    is_downset,
    is_upset,
    relation_from_dict,
)


def random_pairs(rng, n, density=0.4):
    return {(x, y) for x in range(n) for y in range(n) if rng.random() < density}


@pytest.mark.parametrize("seed", range(20))
def test_operations_match_set_semantics(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    P, Q = random_pairs(rng, n), random_pairs(rng, n)
    R, S = BinRel.from_pairs(n, P), BinRel.from_pairs(n, Q)
    assert set(compose(R, S).pairs()) == oracles.compose(P, Q)
    assert set(converse(R).pairs()) == oracles.converse(P)
    assert set((R & S).pairs()) == P & Q
    assert set((R | S).pairs()) == P | Q
    assert set((R - S).pairs()) == P - Q
    assert (R <= S) == (P <= Q)
    assert len(R) == len(P)
    E = BinRel.from_pairs(n, P | Q)
    assert set(complement_in(R, E).pairs()) == Q - P


def test_constructors():
    assert BinRel.identity(3).pairs() == [(0, 0), (1, 1), (2, 2)]
    assert len(BinRel.full(4)) == 16 and len(BinRel.empty(4)) == 0
    assert BinRel.graph([2, 0, 1]).as_function() == (2, 0, 1)
    m = [[1, 0], [1, 1]]
    assert BinRel.from_matrix(m).matrix() == [[True, False], [True, True]]
    with pytest.raises(InputError):
        BinRel.from_pairs(2, [(0, 2)])


def test_dict_round_trip():
    R = BinRel.from_pairs(3, [(0, 1), (2, 2)])
    assert relation_from_dict(R.to_dict()) == R


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(BinRel.empty(2), BinRel.empty(3))


def test_complement_requires_subset():
    with pytest.raises(NotSubsetOfE):
        complement_in(BinRel.full(2), BinRel.identity(2))


def test_partial_order_checks():
    check_partial_order(BinRel.from_pairs(2, [(0, 0), (1, 1), (0, 1)]))
    with pytest.raises(NotAPoset):
        check_partial_order(BinRel.from_pairs(2, [(0, 0)]))
    with pytest.raises(NotAPoset):
        check_partial_order(BinRel.full(2))
    with pytest.raises(NotAPoset):
        PointSet.from_matrix([[1, 1, 0], [0, 1, 1], [0, 0, 1]])


@pytest.mark.parametrize("seed", range(10))
def test_upsets_match_subset_scan(seed):
    raw = oracles.random_contexts(seed, 1, max_e=12)[0]
    n = raw["n"]
    leq = BinRel.from_pairs(n, raw["leq"])
    E = BinRel.from_pairs(n, raw["E"])
    ups = set(oracles.brute_upsets(raw["leq"], raw["E"]))
    pairs = sorted(raw["E"])
    rng = random.Random(seed)
    for _ in range(50):
        R = {p for p in pairs if rng.random() < 0.5}
        rel = BinRel.from_pairs(n, R)
        assert is_upset(leq, E, rel) == (frozenset(R) in ups)
        down = {(y, x) for (x, y) in R}
        # the converse of an up-set is a down-set exactly when E is symmetric
        assert is_downset(leq, E, BinRel.from_pairs(n, down)) == (frozenset(R) in ups)


def test_upset_requires_subset():
    with pytest.raises(NotSubsetOfE):
        is_upset(BinRel.identity(2), BinRel.identity(2), BinRel.full(2))


def test_graph_identities():
    E = BinRel.full(3)
    R = BinRel.from_pairs(3, [(0, 1), (2, 2)])
    check = graph_identities_check([1, 2, 0], R, E)
    assert check and check.left and check.right


def test_graph_identities_reject_non_bijection():
    with pytest.raises(NotABijection):
        graph_identities_check([0, 0, 1], BinRel.empty(3), BinRel.full(3))
    with pytest.raises(NotSubsetOfE):
        graph_identities_check([1, 0], BinRel.empty(2), BinRel.identity(2))


def test_equivalence_blocks():
    E = BinRel.from_pairs(4, [(x, y) for x in (0, 2) for y in (0, 2)]
                          + [(x, y) for x in (1, 3) for y in (1, 3)])
    assert equivalence_blocks(E) == [(0, 2), (1, 3)]
