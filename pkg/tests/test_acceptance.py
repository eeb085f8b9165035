"""Acceptance suite: every headline guarantee at its full stated scale.

Each test drives one check from signrank.selftest (the same code the
`signrank selftest` subcommand runs) and prints one pass/fail line, so a
plain `pytest tests/test_acceptance.py -v` doubles as the acceptance
report. All tolerances are exact; the only nondeterminism is fixed seeds.
"""

import pytest

from signrank import selftest


def _drive(index):
    result = selftest.run_check(index)
    status = "PASS" if result.passed else "FAIL"
    print(f"[{result.index:2d}/12] {status} {result.name}: {result.detail}")
    assert result.passed, f"{result.name}: {result.detail}"


def test_criterion_01_duality_on_random_subspaces():
    _drive(1)


def test_criterion_02_two_dimensional_maximum_4n_plus_1():
    _drive(2)


def test_criterion_03_n3_spectrum_9_and_13():
    _drive(3)


def test_criterion_04_k_dimensional_minimum_3_to_k():
    _drive(4)


def test_criterion_05_hyperplane_maximum():
    _drive(5)


def test_criterion_06_single_vector_perp_formula():
    _drive(6)


def test_criterion_07_minimum_rank_2_characterization():
    _drive(7)


def test_criterion_08_exact_minimum_rank_small_patterns():
    _drive(8)


def test_criterion_09_corank2_rational_realization():
    _drive(9)


def test_criterion_10_rationalization_of_matrix_equations():
    _drive(10)


def test_criterion_11_rank3_lower_bound_witness():
    _drive(11)


def test_criterion_12_oddness_and_negation_closure():
    _drive(12)


@pytest.mark.parametrize("index", range(1, 13))
def test_check_indices_cover_every_registered_check(index):
    assert 1 <= index <= len(selftest.CHECKS)
