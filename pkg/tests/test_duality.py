"""Set families, irreducible hitting sets, and the duality checks."""
import random

import pytest

from lcnf.bruteforce import classify_all, random_lcnf
from lcnf.core import LcnfFormula
from lcnf.duality import (
    DualityVerdict,
    SetFamily,
    enumerate_colmns_via_duality,
    enumerate_lmes_via_duality,
    enumerate_minimal_hitting_sets,
    is_hitting_set,
    is_irreducible_hitting_set,
    verify_duality,
)
from lcnf.errors import PreconditionError, ResourceLimitError

from conftest import WORKED_COLMNS, WORKED_LMES, WORKED_LMNS


def test_set_family_canonical_order():
    fam = SetFamily([{2}, {1, 3}, {1, 4}])
    assert fam.canonical() == [[1, 3], [1, 4], [2]]
    assert list(fam) == [frozenset({1, 3}), frozenset({1, 4}), frozenset({2})]


def test_set_family_equality_and_containment():
    fam = SetFamily([{1, 2}, {3}])
    assert fam == SetFamily([{3}, {1, 2}])
    assert fam == {frozenset({1, 2}), frozenset({3})}
    assert frozenset({3}) in fam
    assert frozenset({1}) not in fam
    assert len(fam) == 2


def test_set_family_deduplicates():
    fam = SetFamily([{1}, {1}, (1,)])
    assert len(fam) == 1


def test_set_family_universe_default_is_union():
    fam = SetFamily([{1, 2}, {4}])
    assert fam.universe == frozenset({1, 2, 4})


def test_set_family_rejects_members_outside_universe():
    with pytest.raises(ValueError):
        SetFamily([{1, 9}], universe={1, 2})


def test_set_family_complements():
    fam = SetFamily([{1, 3, 4}, {2, 3}, {2, 4}], universe={1, 2, 3, 4})
    assert fam.complements() == SetFamily([{2}, {1, 4}, {1, 3}], universe={1, 2, 3, 4})


def test_hitting_set_predicates():
    family = [{1, 2}, {2, 3, 4}]
    assert is_hitting_set({2}, family)
    assert is_hitting_set({1, 3}, family)
    assert not is_hitting_set({3}, family)
    assert is_irreducible_hitting_set({2}, family)
    assert is_irreducible_hitting_set({1, 3}, family)
    assert is_irreducible_hitting_set({1, 4}, family)
    # {1,2} hits everything but 1 has no private member
    assert is_hitting_set({1, 2}, family)
    assert not is_irreducible_hitting_set({1, 2}, family)


def test_minimal_hitting_sets_of_published_families():
    assert enumerate_minimal_hitting_sets(WORKED_LMES) == WORKED_COLMNS
    assert enumerate_minimal_hitting_sets(WORKED_COLMNS) == WORKED_LMES


def test_minimal_hitting_sets_singleton():
    assert enumerate_minimal_hitting_sets([{5}]) == {frozenset({5})}


def test_minimal_hitting_sets_empty_family_is_empty_set():
    fam = enumerate_minimal_hitting_sets([])
    assert fam == {frozenset()}


def test_minimal_hitting_sets_of_family_with_empty_member_is_none():
    fam = enumerate_minimal_hitting_sets([{1, 2}, set()])
    assert len(fam) == 0


def test_minimal_hitting_sets_limit():
    # 2x2 cross product has four transversals; a budget of three trips
    with pytest.raises(ResourceLimitError):
        enumerate_minimal_hitting_sets([{1, 2}, {3, 4}], limit=3)
    fam = enumerate_minimal_hitting_sets([{1, 2}, {3, 4}], limit=4)
    assert fam == {frozenset({1, 3}), frozenset({1, 4}),
                   frozenset({2, 3}), frozenset({2, 4})}


def random_family(rng):
    universe = list(range(1, rng.randint(2, 6) + 1))
    k = rng.randint(1, 5)
    members = []
    for _ in range(k):
        size = rng.randint(1, len(universe))
        members.append(frozenset(rng.sample(universe, size)))
    return members


def test_hitting_set_enumeration_is_sound_complete_and_involutive():
    rng = random.Random(5)
    for _ in range(120):
        members = random_family(rng)
        fam = enumerate_minimal_hitting_sets(members)
        universe = sorted(frozenset().union(*members))
        # sound: every output is an irreducible hitting set
        for h in fam:
            assert is_irreducible_hitting_set(h, members)
        # complete: check against direct subset scan
        direct = set()
        for mask in range(1 << len(universe)):
            cand = frozenset(
                universe[i] for i in range(len(universe)) if mask >> i & 1
            )
            if is_irreducible_hitting_set(cand, members):
                direct.add(cand)
        assert fam.members == frozenset(direct)
        # involutive on minimal families: dualizing twice returns the input
        minimal = [
            m for m in set(members)
            if not any(o < m for o in set(members))
        ]
        twice = enumerate_minimal_hitting_sets(enumerate_minimal_hitting_sets(minimal))
        assert twice.members == frozenset(minimal)


def test_duality_enumeration_both_directions(worked_example):
    got_co = enumerate_colmns_via_duality(worked_example, WORKED_LMES)
    assert got_co == WORKED_COLMNS
    assert got_co.universe == worked_example.active_labels
    got_lmes = enumerate_lmes_via_duality(worked_example, WORKED_COLMNS)
    assert got_lmes == WORKED_LMES


def test_duality_enumeration_gated_on_preconditions():
    shadowed = LcnfFormula.from_clauses([(1,), (1, 2), (1, 3)], [(), (1,), (2,)])
    with pytest.raises(PreconditionError):
        enumerate_colmns_via_duality(shadowed, [frozenset()])
    bare = LcnfFormula.from_clauses([(1,)])
    with pytest.raises(PreconditionError):
        enumerate_lmes_via_duality(bare, [])


def test_verify_duality_passes_on_worked_example(worked_example):
    verdict = verify_duality(worked_example, classify_all(worked_example))
    assert verdict.applicable
    assert verdict.passed
    assert all(verdict.checks().values())
    assert verdict.lmes_union == frozenset({1, 2, 3, 4})
    assert verdict.lmns_intersection == frozenset()


def test_verify_duality_not_applicable_reports_reason():
    bare = LcnfFormula.from_clauses([(1,), (2,)])
    verdict = verify_duality(bare, classify_all(bare))
    assert isinstance(verdict, DualityVerdict)
    assert not verdict.applicable
    assert not verdict.passed
    assert verdict.reason
    assert verdict.colmns_from_lmes is None


def test_verify_duality_on_unsat_collapse(phi_u):
    verdict = verify_duality(phi_u, classify_all(phi_u))
    assert verdict.applicable and verdict.passed


def test_verify_duality_random_corpus():
    passed = 0
    for seed in range(120):
        phi = random_lcnf(seed)
        report = classify_all(phi)
        verdict = verify_duality(phi, report)
        if verdict.applicable:
            assert verdict.passed, f"seed {seed}"
            passed += 1
    assert passed >= 60
