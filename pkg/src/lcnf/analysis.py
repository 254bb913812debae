"""Redundancy analysis: minimal and maximal label sets of a labelled formula.

Four witness kinds are computed here, all defined over subsets of a formula's
active labels:

* a minimal equivalent subset (LMES): inducing with it preserves logical
  equivalence, and dropping any of its labels breaks equivalence;
* a minimal unsatisfiable subset (LMUS): the same with unsatisfiability in
  place of equivalence (the two notions coincide on unsatisfiable formulas);
* a maximal non-equivalent subset (LMNS): inducing with it loses equivalence,
  and adding any further label restores it;
* a maximal satisfiable subset (LMSS): inducing with it stays satisfiable,
  and adding any further label makes it unsatisfiable.

Minimal sets are extracted by a deletion loop that re-tests each label's
redundancy against the current reduced formula; maximal sets by a grow loop
from a seed, finished by a maximality sweep over all absent labels.  Both are
deterministic given the formula and the label order.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .core import LcnfFormula
from .errors import PreconditionError
from .oracle import LcnfOracle


class WitnessKind(Enum):
    LMES = "lmes"
    LMUS = "lmus"
    LMNS = "lmns"
    LMSS = "lmss"
    CO_LMNS = "colmns"
    CO_LMSS = "colmss"


@dataclass(frozen=True)
class Witness:
    """A label set tagged with the kind of witness it is."""

    kind: WitnessKind
    labels: frozenset

    def __iter__(self):
        return iter(sorted(self.labels))


def _normalize_order(phi: LcnfFormula, order: Iterable[int] | None) -> list[int]:
    """Resolve a label order: the given labels first, missing ones appended
    in ascending order.  Unknown labels are rejected."""
    active = sorted(phi.active_labels)
    if order is None:
        return active
    out: list[int] = []
    for l in order:
        l = int(l)
        if l not in phi.active_labels:
            raise ValueError(f"label {l} is not active in this formula")
        if l not in out:
            out.append(l)
    out.extend(l for l in active if l not in out)
    return out


def is_label_redundant(
    phi: LcnfFormula, label: int, *, oracle: LcnfOracle | None = None
) -> bool:
    """Whether removing ``label`` preserves equivalence with ``phi``."""
    label = int(label)
    if label not in phi.active_labels:
        raise ValueError(f"label {label} is not active in this formula")
    ora = oracle if oracle is not None else LcnfOracle(phi)
    return ora.is_equivalent_subformula(phi.active_labels - {label})


def compute_lmes(
    phi: LcnfFormula,
    order: Iterable[int] | None = None,
    *,
    oracle: LcnfOracle | None = None,
) -> frozenset:
    """One minimal equivalence-preserving label set, by deletion.

    Each label is dropped if it is redundant in the current reduced
    subformula; a label kept irredundant once stays irredundant in every
    further reduction, so a single pass suffices.
    """
    ora = oracle if oracle is not None else LcnfOracle(phi)
    current = set(phi.active_labels)
    for l in _normalize_order(phi, order):
        if ora.is_equivalent_subformula(current - {l}, current):
            current.discard(l)
    return frozenset(current)


def compute_lmus(
    phi: LcnfFormula,
    order: Iterable[int] | None = None,
    *,
    oracle: LcnfOracle | None = None,
) -> frozenset:
    """One minimal unsatisfiability-preserving label set, by deletion.

    The formula must be unsatisfiable.  The result can be empty when the
    unlabelled clauses are themselves unsatisfiable.
    """
    ora = oracle if oracle is not None else LcnfOracle(phi)
    if ora.is_sat_induced(phi.active_labels):
        raise PreconditionError(
            "formula is satisfiable; no unsatisfiable label subset exists"
        )
    current = set(phi.active_labels)
    for l in _normalize_order(phi, order):
        if not ora.is_sat_induced(current - {l}):
            current.discard(l)
    return frozenset(current)


def compute_lmss(
    phi: LcnfFormula,
    seed: Iterable[int] = (),
    order: Iterable[int] | None = None,
    *,
    oracle: LcnfOracle | None = None,
) -> frozenset:
    """One maximal satisfiable label set containing ``seed``, by growing.

    Requires the unlabelled clauses (and the seed-induced subformula) to be
    satisfiable; otherwise no satisfiable label set exists at all and a
    PreconditionError is raised.
    """
    ora = oracle if oracle is not None else LcnfOracle(phi)
    seed = frozenset(int(l) for l in seed) & phi.active_labels
    if not ora.is_sat_induced(frozenset()):
        raise PreconditionError(
            "unlabelled clauses are unsatisfiable; no satisfiable label set exists"
        )
    if not ora.is_sat_induced(seed):
        raise PreconditionError("seed labels induce an unsatisfiable subformula")
    current = set(seed)
    for l in _normalize_order(phi, order):
        if l in current:
            continue
        if ora.is_sat_induced(current | {l}):
            current.add(l)
    # maximality sweep: re-check every absent label until none can be added
    changed = True
    while changed:
        changed = False
        for l in sorted(phi.active_labels - current):
            if ora.is_sat_induced(current | {l}):
                current.add(l)
                changed = True
    return frozenset(current)


def compute_lmns(
    phi: LcnfFormula,
    seed: Iterable[int] = (),
    order: Iterable[int] | None = None,
    *,
    oracle: LcnfOracle | None = None,
) -> frozenset:
    """One maximal non-equivalence-preserving label set containing ``seed``.

    Requires the seed-induced subformula to differ from the formula.  With an
    empty seed this is exactly the existence condition: no such set exists
    when there are no active labels, or when the unlabelled clauses already
    entail every clause (all labels redundant at once).
    """
    ora = oracle if oracle is not None else LcnfOracle(phi)
    seed = frozenset(int(l) for l in seed) & phi.active_labels
    if ora.is_equivalent_subformula(seed):
        if not phi.active_labels:
            raise PreconditionError(
                "no active labels: the only subformula is the formula itself"
            )
        if seed and not ora.is_equivalent_subformula(frozenset()):
            raise PreconditionError("seed labels induce an equivalent subformula")
        raise PreconditionError(
            "all labels are redundant: the unlabelled clauses entail every "
            "clause, so every subformula is equivalent"
        )
    current = set(seed)
    for l in _normalize_order(phi, order):
        if l in current:
            continue
        if not ora.is_equivalent_subformula(current | {l}):
            current.add(l)
    changed = True
    while changed:
        changed = False
        for l in sorted(phi.active_labels - current):
            if not ora.is_equivalent_subformula(current | {l}):
                current.add(l)
                changed = True
    return frozenset(current)


def complement_of(phi: LcnfFormula, labels: Iterable[int], kind: WitnessKind) -> Witness:
    """The complement of a maximal witness, tagged with the complement kind.

    The complement of a maximal non-equivalent set is a minimal set whose
    removal breaks equivalence; the complement of a maximal satisfiable set
    is a minimal correction set.  No verification is performed.
    """
    mapping = {
        WitnessKind.LMNS: WitnessKind.CO_LMNS,
        WitnessKind.LMSS: WitnessKind.CO_LMSS,
    }
    if kind not in mapping:
        raise ValueError("complement is defined for LMNS and LMSS witnesses")
    want = frozenset(int(l) for l in labels)
    return Witness(mapping[kind], phi.active_labels - want)


def max_lmss(phi: LcnfFormula, *, oracle: LcnfOracle | None = None) -> frozenset:
    """A maximum-cardinality maximal satisfiable label set.

    Exhaustive: walks subset sizes from largest to smallest and returns the
    first satisfiable label set found (lexicographically smallest at that
    size).  Any satisfiable set found this way is maximal, since every
    larger set was already checked.
    """
    ora = oracle if oracle is not None else LcnfOracle(phi)
    if not ora.is_sat_induced(frozenset()):
        raise PreconditionError(
            "unlabelled clauses are unsatisfiable; no satisfiable label set exists"
        )
    active = sorted(phi.active_labels)
    for size in range(len(active), -1, -1):
        for combo in combinations(active, size):
            if ora.is_sat_induced(combo):
                return frozenset(combo)
    raise AssertionError("unreachable: the empty label set was satisfiable")


def duality_preconditions(
    phi: LcnfFormula, *, oracle: LcnfOracle | None = None
) -> tuple[bool, str | None]:
    """Check the applicability conditions of the hitting-set duality.

    The duality between minimal equivalence-preserving sets and complements
    of maximal non-equivalent sets requires the formula to have at least one
    active label and, when unlabelled clauses are present, at least one
    irredundant label.  Returns (ok, reason-if-not).
    """
    if not phi.active_labels:
        return False, "no active labels"
    if phi.unlabelled_clauses:
        ora = oracle if oracle is not None else LcnfOracle(phi)
        for l in sorted(phi.active_labels):
            if not ora.is_equivalent_subformula(phi.active_labels - {l}):
                return True, None
        return False, "unlabelled clauses are present and every label is redundant"
    return True, None
