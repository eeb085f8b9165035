"""Rank-2 certificates, realizations, and type enumeration."""

from itertools import product
from random import Random

import pytest

from signrank.covectors import sign_vectors
from signrank.errors import BudgetExceededError
from signrank.rank2 import (
    enumerate_rank2_types,
    mr_le_2,
    realize_rank2,
    sign_set_of_type,
)
from signrank.rational import RationalMatrix, RationalSubspace, rank
from signrank.signs import SignPattern, condense, sign_of


def t1t2(n):
    from signrank.extremal import t1t2_pattern

    return t1t2_pattern(n)


class TestMrLe2:
    def test_two_row_example(self):
        assert mr_le_2(SignPattern.from_strings(["+++", "0++"])) is not None

    def test_stacked_witness(self):
        for n in (2, 3, 5):
            assert mr_le_2(t1t2(n)) is not None

    def test_identity_has_no_certificate(self):
        assert mr_le_2(SignPattern.from_strings(["+00", "0+0", "00+"])) is None

    def test_rank_one_pattern_has_no_certificate(self):
        assert mr_le_2(SignPattern.from_strings(["++", "++"])) is None
        assert mr_le_2(SignPattern.from_strings(["00", "00"])) is None

    def test_per_row_direction_case(self):
        # needs one row ascending and another descending in the same order
        pattern = SignPattern.from_strings(["++0", "+-+", "--+", "-0-", "--0"])
        cert = mr_le_2(pattern)
        assert cert is not None
        realization = realize_rank2(pattern, cert)
        assert rank(realization) == 2 and sign_of(realization) == pattern

    def test_wide_pattern_needs_budget(self):
        rng = Random(3)
        rows = [[rng.choice((-1, 1)) for _ in range(13)] for _ in range(3)]
        pattern = SignPattern.from_grid(rows)
        if condense(pattern).cols > 12:
            with pytest.raises(BudgetExceededError):
                mr_le_2(pattern)
            # with a budget it either answers or runs out, both acceptable
            try:
                mr_le_2(pattern, budget_ms=2000)
            except BudgetExceededError:
                pass

    def test_agrees_with_exhaustive_flip_search(self):
        # independent slow oracle: try every row-flip/column-sign choice and
        # ask for a common column order sorting all flipped rows ascending
        def slow_oracle(pattern):
            cond = condense(pattern)
            if cond.rows < 2:
                return False
            if any(cond.cols - r.support_size() > 1 for r in cond.row_vectors):
                return False
            grid = [r.signs() for r in cond.row_vectors]
            m, n = cond.rows, cond.cols
            for rowbits in range(1 << m):
                flipped = [
                    [(-1) ** (rowbits >> i & 1) * e for e in grid[i]] for i in range(m)
                ]
                for colbits in range(1 << n):
                    cols = [
                        tuple((-1) ** (colbits >> j & 1) * flipped[i][j] for i in range(m))
                        for j in range(n)
                    ]
                    orderable = sorted(cols)
                    if all(
                        a <= b
                        for left, right in zip(orderable, orderable[1:])
                        for a, b in zip(left, right)
                    ):
                        return True
            return False

        rng = Random(101)
        for _ in range(150):
            m = rng.randint(1, 5)
            n = rng.randint(1, 4)
            pattern = SignPattern.from_grid(
                [[rng.choice((-1, 0, 1)) for _ in range(n)] for _ in range(m)]
            )
            assert (mr_le_2(pattern) is not None) == slow_oracle(pattern)

    def test_certificate_rows_monotone_after_signing_and_ordering(self):
        rng = Random(23)
        seen = 0
        while seen < 40:
            m = rng.randint(2, 5)
            n = rng.randint(2, 5)
            pattern = SignPattern.from_grid(
                [[rng.choice((-1, 0, 1)) for _ in range(n)] for _ in range(m)]
            )
            cert = mr_le_2(pattern)
            if cert is None:
                continue
            seen += 1
            cond = cert.trace.pattern
            for i in range(cond.rows):
                row = [
                    cond.entry(i, j) * cert.signature[j] for j in cert.column_order
                ]
                ascending = all(a <= b for a, b in zip(row, row[1:]))
                descending = all(a >= b for a, b in zip(row, row[1:]))
                assert ascending or descending
                assert row.count(0) <= 1

    def test_condensed_width_bound(self):
        # a condensed pattern with rank 2 has at most twice as many rows as columns
        rng = Random(17)
        seen = 0
        while seen < 50:
            m = rng.randint(2, 6)
            n = rng.randint(2, 4)
            pattern = SignPattern.from_grid(
                [[rng.choice((-1, 0, 1)) for _ in range(n)] for _ in range(m)]
            )
            cert = mr_le_2(pattern)
            if cert is None:
                continue
            seen += 1
            cond = cert.trace.pattern
            assert cond.rows <= 2 * cond.cols


class TestRealizeRank2:
    def test_sign_and_rank_exact_randomized(self):
        rng = Random(19)
        produced = 0
        while produced < 60:
            m = rng.randint(2, 5)
            n = rng.randint(2, 5)
            pattern = SignPattern.from_grid(
                [[rng.choice((-1, 0, 1)) for _ in range(n)] for _ in range(m)]
            )
            cert = mr_le_2(pattern)
            if cert is None:
                continue
            produced += 1
            matrix = realize_rank2(pattern, cert)
            assert sign_of(matrix) == pattern
            assert rank(matrix) == 2

    def test_stacked_witness_realization(self):
        pattern = t1t2(3)
        matrix = realize_rank2(pattern, mr_le_2(pattern))
        assert matrix.shape == (6, 3)
        assert rank(matrix) == 2 and sign_of(matrix) == pattern

    def test_mismatched_certificate_rejected(self):
        good = SignPattern.from_strings(["+++", "0++"])
        other = SignPattern.from_strings(["++-", "0++"])
        cert = mr_le_2(good)
        with pytest.raises(ValueError):
            realize_rank2(other, cert)


def collect_type_sign_sets(n):
    return {frozenset(sign_set_of_type(t)) for t, _ in enumerate_rank2_types(n)}


def collect_matrix_sign_sets(n, entries=range(-3, 4)):
    """Sign sets of column spans of all small-integer n x 2 matrices.

    Deduplicates matrices by their rows up to positive scaling first; the
    sign set only depends on those.
    """
    from math import gcd

    def primitive(row):
        a, b = row
        if a == 0 and b == 0:
            return (0, 0)
        g = gcd(abs(a), abs(b))
        return (a // g, b // g)

    out = {}
    for flat in product(entries, repeat=2 * n):
        rows = [(flat[2 * i], flat[2 * i + 1]) for i in range(n)]
        key = tuple(primitive(r) for r in rows)
        if key in out:
            continue
        out[key] = None
    sets = set()
    for key in out:
        matrix = RationalMatrix([list(r) for r in key], cols=2)
        space = RationalSubspace.from_spanning(n, list(matrix.columns()))
        sets.add(frozenset(sign_vectors(space).signs))
    return sets


class TestTypeEnumeration:
    def test_n1_has_two_types(self):
        types = list(enumerate_rank2_types(1))
        assert len(types) == 2
        dims = sorted(t.dim for t, _ in types)
        assert dims == [0, 1]

    def test_degenerate_types_flagged_with_true_dimension(self):
        for t, rep in enumerate_rank2_types(3):
            assert rep.dim == t.dim
            assert t.is_degenerate == (t.num_classes < 2)
            if not t.is_degenerate:
                assert rep.dim == 2

    def test_each_type_emitted_once(self):
        for n in (2, 3):
            seen = set()
            for t, _ in enumerate_rank2_types(n):
                assert t not in seen
                seen.add(t)

    def test_completeness_against_exhaustive_small_matrices(self):
        for n in (1, 2, 3):
            assert collect_type_sign_sets(n) == collect_matrix_sign_sets(n)

    def test_direct_sign_set_matches_subspace_route(self):
        for n in (1, 2, 3):
            for t, rep in enumerate_rank2_types(n):
                assert sign_set_of_type(t) == sign_vectors(rep).signs

    def test_direct_sign_set_matches_subspace_route_sampled_n5(self):
        rng = Random(71)
        pairs = list(enumerate_rank2_types(5))
        for t, rep in rng.sample(pairs, 40):
            assert sign_set_of_type(t) == sign_vectors(rep).signs

    def test_two_dim_cardinality_bound(self):
        for n in (2, 3, 4):
            for t, _ in enumerate_rank2_types(n):
                assert len(sign_set_of_type(t)) <= 4 * n + 1

    def test_representative_entries_are_small_integers(self):
        for t, rep in enumerate_rank2_types(3):
            for row in t.representative_matrix().data:
                for e in row:
                    assert e.denominator == 1 and abs(e.numerator) <= 3

    def test_orientation_canon_lowest_nonzero_plus(self):
        for t, _ in enumerate_rank2_types(4):
            nonzero = [i for i in range(4) if t.orientations[i] != 0]
            if nonzero:
                assert t.orientations[nonzero[0]] == 1

    def test_three_singleton_classes_give_thirteen(self):
        for t, _ in enumerate_rank2_types(3):
            if t.num_classes == 3:
                assert len(sign_set_of_type(t)) == 13

    def test_all_zero_and_single_class_sizes(self):
        sizes = {}
        for t, _ in enumerate_rank2_types(2):
            sizes.setdefault(t.num_classes, set()).add(len(sign_set_of_type(t)))
        assert sizes[0] == {1}
        assert sizes[1] == {3}
        assert sizes[2] == {9}
