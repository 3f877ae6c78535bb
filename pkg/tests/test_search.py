import random

import pytest

import oracles
from qrakit.algebra import are_isomorphic, check_axioms, make_algebra, relabel
from qrakit.errors import BudgetExceeded, InputError
from qrakit.search import (
    SearchSpec,
    canonical_form,
    enumerate_lattices,
    enumerate_models,
    is_chain,
    model_record,
    normalize_constraint,
)
from qrakit.sugihara import sugihara_chain


def as_algebra(leq, mult, one, zero=None):
    return make_algebra(leq, mult, one, zero)


@pytest.mark.parametrize("n", range(1, 6))
def test_lattice_counts_match_oracle(n):
    assert len(enumerate_lattices(n)) == len(oracles.brute_lattices(n))


def test_lattice_counts_known_values():
    assert [len(enumerate_lattices(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 15, 53]


@pytest.mark.parametrize("n", range(1, 6))
def test_residuated_lattices_match_oracle(n):
    found = enumerate_models(SearchSpec(n, frozenset({"RL"}))).models
    brute = [as_algebra(*m) for m in oracles.brute_rl_models(n)]
    assert len(found) == len(brute)
    keys = {canonical_form(A.replace(zero=None, tilde=None, minus=None, neg=None)) for A in found}
    assert keys == {canonical_form(B) for B in brute}


@pytest.mark.parametrize("n", range(1, 6))
def test_infl_models_match_oracle(n):
    found = enumerate_models(SearchSpec(n, frozenset({"InFL"}))).models
    brute = oracles.brute_infl_models(n)
    assert len(found) == len(brute)
    for leq, mult, e, z in brute:
        B = as_algebra(leq, mult, e, z)
        assert any(A.zero is not None and are_isomorphic(A.replace(tilde=None, minus=None), B)
                   is not None for A in found)


def test_rl_count_size_six():
    assert len(enumerate_models(SearchSpec(6, frozenset({"RL"})))) == 1488


def test_models_satisfy_their_constraints():
    res = enumerate_models(SearchSpec(5, frozenset({"qRA"})))
    assert len(res) == 23
    for A in res.models:
        assert check_axioms(A)["qRA"]


def test_canonical_form_is_label_invariant():
    rng = random.Random(3)
    A = sugihara_chain(6).algebra
    for _ in range(10):
        perm = list(range(6))
        rng.shuffle(perm)
        assert canonical_form(relabel(A, perm)) == canonical_form(A)
    assert canonical_form(A) != canonical_form(sugihara_chain(6).algebra.replace(zero=0))


def test_limit_marks_partial_result():
    res = enumerate_models(SearchSpec(4, frozenset({"RL"}), limit=5))
    assert len(res) == 5 and not res.exhaustive
    assert res.summary()["exhaustive"] is False


def test_workers_do_not_change_results():
    spec = SearchSpec(5, frozenset({"InFL"}))
    one = enumerate_models(spec)
    two = enumerate_models(SearchSpec(5, frozenset({"InFL"}), workers=2))
    assert [canonical_form(A) for A in one.models] == [canonical_form(A) for A in two.models]


def test_budget_and_bad_constraint():
    with pytest.raises(BudgetExceeded):
        enumerate_models(SearchSpec(9, frozenset({"DqRA"})), max_n=8)
    with pytest.raises(InputError):
        normalize_constraint("frobenius")
    with pytest.raises(InputError):
        SearchSpec(0)
    assert normalize_constraint("tot-irr-one") == "totally_irreducible_one"


@pytest.mark.parametrize("n,expected", [(3, 1), (4, 0), (5, 1)])
def test_small_dqra_conic_irreducible(n, expected):
    spec = SearchSpec(n, frozenset({"DqRA", "conic", "totally_irreducible_one"}))
    res = enumerate_models(spec)
    assert len(res) == expected
    for A in res.models:
        assert is_chain(A)
        assert canonical_form(A) == canonical_form(sugihara_chain(n).algebra)


def test_model_record_has_report():
    res = enumerate_models(SearchSpec(3, frozenset({"DqRA"})))
    rec = model_record(res.models[0], res.reports[0])
    assert rec["report"]["DqRA"] and rec["size"] == 3
