"""Acceptance gate: every criterion at its stated scale.

One test per criterion; each prints its PASS/FAIL line (visible with -s).
The underlying runs are shared through a module-scoped fixture so the whole
gate costs one pass over the seeded instance families.
"""

from __future__ import annotations

import pytest

from termrank.harness import acceptance_report


@pytest.fixture(scope="module")
def report():
    return {entry["criterion"]: entry for entry in acceptance_report(quick=False)}


def _announce(entry) -> None:
    tag = "PASS" if entry["ok"] else "FAIL"
    print(f"\n{tag} criterion {entry['criterion']}: {entry['detail']}")


def test_criterion_1_condition_equals_both_constructors(report):
    entry = report[1]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_2_cover_minmax_identity(report):
    entry = report[2]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_3_lift_classifications(report):
    entry = report[3]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_4_degree_subgraph_equivalence(report):
    entry = report[4]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_5_basis_matching_equivalence(report):
    entry = report[5]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_6_reduction_lattice(report):
    entry = report[6]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_7_witness_postconditions(report):
    entry = report[7]
    _announce(entry)
    assert entry["ok"], entry["detail"]


def test_criterion_8_certificate_validity(report):
    entry = report[8]
    _announce(entry)
    assert entry["ok"], entry["detail"]
