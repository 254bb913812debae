"""Exhaustive subset classification and the seeded formula generator."""
import itertools

import pytest

from lcnf.bruteforce import (
    GenerationProfile,
    SubsetStatus,
    classify_all,
    random_lcnf,
)
from lcnf.core import LcnfFormula
from lcnf.errors import ResourceLimitError

from conftest import (
    WORKED_COLMNS,
    WORKED_LMES,
    WORKED_LMNS,
    PHI_U_COLMSS,
    PHI_U_LMSS,
    PHI_U_LMUS,
    models_of,
)


def test_worked_example_families(worked_example):
    report = classify_all(worked_example)
    assert report.satisfiable
    assert report.lmes == WORKED_LMES
    assert report.lmns == WORKED_LMNS
    assert report.colmns == WORKED_COLMNS
    assert report.lmss == {frozenset({1, 2, 3, 4})}
    assert report.colmss == {frozenset()}
    assert report.lmns_exists and report.lmss_exists
    assert not report.empty_lmes
    assert report.active_labels == frozenset({1, 2, 3, 4})


def test_unsat_families_collapse(phi_u):
    report = classify_all(phi_u)
    assert not report.satisfiable
    assert report.lmus == PHI_U_LMUS
    assert report.lmes == report.lmus
    assert report.lmss == PHI_U_LMSS
    assert report.lmns == report.lmss
    assert report.colmss == PHI_U_COLMSS


def test_classification_statuses(worked_example):
    report = classify_all(worked_example)
    full = report.classification[frozenset({1, 2, 3, 4})]
    assert full == SubsetStatus(satisfiable=True, equivalent=True)
    assert report.classification[frozenset({1, 2})].equivalent
    assert not report.classification[frozenset({1})].equivalent
    assert len(report.classification) == 16


def test_no_labels_report():
    phi = LcnfFormula.from_clauses([(1,), (2,)])
    report = classify_all(phi)
    assert report.lmes == {frozenset()}
    assert report.empty_lmes
    assert not report.lmns_exists
    assert report.lmss == {frozenset()}


def test_all_labels_redundant_report():
    phi = LcnfFormula.from_clauses([(1,), (1, 2), (1, 3)], [(), (1,), (2,)])
    report = classify_all(phi)
    assert report.empty_lmes
    assert report.lmes == {frozenset()}
    assert not report.lmns_exists


def test_unsat_unlabelled_part_report():
    phi = LcnfFormula.from_clauses([(1,), (-1,), (2,)], [(), (), (1,)])
    report = classify_all(phi)
    assert not report.lmss_exists
    assert report.lmus == {frozenset()}
    assert report.lmes == {frozenset()}
    assert not report.lmns_exists


def test_label_count_guard():
    clauses = [(i,) for i in range(1, 6)]
    phi = LcnfFormula.from_clauses(clauses, [(i,) for i in range(1, 6)])
    with pytest.raises(ResourceLimitError):
        classify_all(phi, max_labels=4)
    assert classify_all(phi, max_labels=5).active_labels == frozenset(range(1, 6))


def test_variable_count_guard():
    clauses = [(i,) for i in range(1, 8)]
    phi = LcnfFormula.from_clauses(clauses, [(1,)] * 7)
    with pytest.raises(ResourceLimitError):
        classify_all(phi, max_variables=6)


def test_oracle_fallback_beyond_truth_table_width():
    # 13 variables forces the solver-backed path; families must still be right
    clauses = [(i,) for i in range(1, 14)] + [(1, 2)]
    labelling = [(1,)] * 13 + [(2,)]
    phi = LcnfFormula.from_clauses(clauses, labelling)
    report = classify_all(phi)
    # (1 v 2) is entailed by the units, so label 2 is redundant
    assert report.lmes == {frozenset({1})}
    assert report.satisfiable


def test_random_lcnf_is_deterministic_per_seed():
    a = random_lcnf(123)
    b = random_lcnf(123)
    assert a == b
    formulas = {random_lcnf(s) for s in range(30)}
    assert len(formulas) > 25


def test_random_lcnf_respects_profile_caps():
    prof = GenerationProfile(variables=3, clauses=5, labels=2, clause_labels=1)
    for seed in range(80):
        phi = random_lcnf(seed, prof)
        assert len(phi) <= 5
        assert all(abs(l) <= 3 for c in phi for l in c.literals)
        assert phi.active_labels <= frozenset({1, 2})
        assert all(len(phi.labels_of(c)) <= 1 for c in phi)


def test_random_lcnf_group_profile_is_single_label():
    prof = GenerationProfile(labelling="group", clause_labels=3)
    for seed in range(40):
        phi = random_lcnf(seed, prof)
        assert all(len(phi.labels_of(c)) <= 1 for c in phi)


def test_random_lcnf_zero_clause_labels_is_unlabelled():
    prof = GenerationProfile(clause_labels=0)
    for seed in range(20):
        assert random_lcnf(seed, prof).active_labels == frozenset()


def test_generation_profile_validates():
    with pytest.raises(ValueError):
        GenerationProfile(variables=0)
    with pytest.raises(ValueError):
        GenerationProfile(labels=7)
    with pytest.raises(ValueError):
        GenerationProfile(labelling="stripes")


def test_parallel_classification_matches_serial():
    for seed in (3, 17, 28):
        phi = random_lcnf(seed)
        serial = classify_all(phi, jobs=1)
        parallel = classify_all(phi, jobs=2)
        assert serial.lmes == parallel.lmes
        assert serial.lmus == parallel.lmus
        assert serial.lmns == parallel.lmns
        assert serial.lmss == parallel.lmss
        assert serial.classification == parallel.classification


def brute_families(phi):
    """Independent family extraction from model sets, no package helpers."""
    active = sorted(phi.active_labels)
    universe = phi.variables
    full = models_of(phi.cnf(), universe)
    status = {}
    for r in range(len(active) + 1):
        for combo in itertools.combinations(active, r):
            sub = frozenset(combo)
            ms = models_of(phi.induced(sub).cnf(), universe)
            status[sub] = (bool(ms), ms == full)
    subsets = list(status)
    lmes = {
        s for s in subsets
        if status[s][1] and not any(status[t][1] for t in subsets if t < s)
    }
    lmns = {
        s for s in subsets
        if not status[s][1] and all(status[t][1] for t in subsets if t > s)
    }
    lmus = {
        s for s in subsets
        if not status[s][0] and all(status[t][0] for t in subsets if t < s)
    }
    lmss = {
        s for s in subsets
        if status[s][0] and not any(status[t][0] for t in subsets if t > s)
    }
    return lmes, lmus, lmns, lmss


def test_classification_matches_independent_model_enumeration():
    small = GenerationProfile(variables=4, clauses=8, labels=4, clause_labels=2)
    for seed in range(40):
        phi = random_lcnf(seed, small)
        report = classify_all(phi)
        lmes, lmus, lmns, lmss = brute_families(phi)
        assert report.lmes == lmes, f"seed {seed}"
        assert report.lmus == lmus, f"seed {seed}"
        assert report.lmns == lmns, f"seed {seed}"
        assert report.lmss == lmss, f"seed {seed}"


def test_irredundant_labels_lie_in_every_minimal_equivalent_subset():
    small = GenerationProfile(variables=4, clauses=8, labels=4, clause_labels=2)
    checked = 0
    for seed in range(40):
        phi = random_lcnf(seed, small)
        report = classify_all(phi)
        active = frozenset(phi.active_labels)
        irredundant = {
            l for l in active
            if not report.classification[active - {l}].equivalent
        }
        for member in report.lmes:
            assert irredundant <= member, f"seed {seed}"
            checked += 1
    assert checked


def test_formula_irredundant_iff_whole_label_set_is_the_only_lmes():
    small = GenerationProfile(variables=4, clauses=8, labels=4, clause_labels=2)
    seen_irredundant = False
    for seed in range(60):
        phi = random_lcnf(seed, small)
        report = classify_all(phi)
        active = frozenset(phi.active_labels)
        all_irredundant = all(
            not report.classification[active - {l}].equivalent for l in active
        )
        assert all_irredundant == (report.lmes == {active}), f"seed {seed}"
        seen_irredundant = seen_irredundant or all_irredundant
    assert seen_irredundant


def test_subset_equivalent_iff_it_contains_a_minimal_equivalent_subset():
    small = GenerationProfile(variables=4, clauses=8, labels=4, clause_labels=2)
    for seed in range(40):
        phi = random_lcnf(seed, small)
        report = classify_all(phi)
        for subset, status in report.classification.items():
            covered = any(member <= subset for member in report.lmes)
            assert status.equivalent == covered, f"seed {seed}, subset {subset}"
