"""Sign vectors of subspaces: enumeration, witnesses, membership, duality."""

from fractions import Fraction
from random import Random

import pytest

from signrank.covectors import (
    member_witness,
    random_subspace,
    same_sign_dim_check,
    sign_vectors,
    verify_duality,
)
from signrank.errors import DimensionError
from signrank.rational import (
    RationalMatrix,
    RationalSubspace,
    nullspace_basis,
    orth_complement,
)
from signrank.signs import SignVector, sign_of_vector


def span(n, *vectors):
    return RationalSubspace.from_spanning(n, list(vectors))


def brute_force_plane_signs(basis_cols, n, span_range=8):
    """Sign vectors met by small integer combinations of the basis columns."""
    out = set()
    k = len(basis_cols)
    coeffs = range(-span_range, span_range + 1)

    def rec(i, acc):
        if i == k:
            out.add(sign_of_vector(acc))
            return
        for c in coeffs:
            rec(i + 1, [a + c * b for a, b in zip(acc, basis_cols[i])])

    rec(0, [Fraction(0)] * n)
    return out


class TestSignVectors:
    def test_coordinate_plane(self):
        report = sign_vectors(span(3, (1, 0, 0), (0, 1, 0)))
        assert len(report.signs) == 9
        assert all(v[2] == 0 for v in report.signs)

    def test_diagonal_line(self):
        report = sign_vectors(span(3, (1, 1, 1)))
        assert report.signs.to_strings() == ["000", "+++", "---"]

    def test_sum_zero_plane_is_thirteen(self):
        plane = nullspace_basis(RationalMatrix([[1, 1, 1]]))
        report = sign_vectors(plane)
        assert len(report.signs) == 13
        cols = [plane.basis.column(j) for j in range(plane.dim)]
        assert set(report.signs) == brute_force_plane_signs(cols, 3)

    def test_zero_subspace(self):
        report = sign_vectors(RationalSubspace.zero(4))
        assert report.signs.to_strings() == ["0000"]

    def test_full_space(self):
        assert len(sign_vectors(RationalSubspace.full(3)).signs) == 27

    def test_grid_sampler_never_escapes_enumeration(self):
        # every sign vector hit by explicit combinations must be enumerated;
        # exactness in the other direction is covered by the feasibility
        # cross-check in TestMemberWitness
        rng = Random(23)
        for _ in range(25):
            n = rng.randint(2, 4)
            k = rng.randint(1, n)
            space = random_subspace(n, k, rng)
            report = sign_vectors(space)
            cols = [space.basis.column(j) for j in range(k)]
            brute = brute_force_plane_signs(cols, n, span_range=6)
            assert brute <= set(report.signs)

    def test_witnesses_verify_exactly(self):
        rng = Random(29)
        for _ in range(30):
            n = rng.randint(1, 6)
            k = rng.randint(0, n)
            report = sign_vectors(random_subspace(n, k, rng))
            assert report.verify_witnesses()

    def test_structural_invariants_randomized(self):
        rng = Random(31)
        for _ in range(60):
            n = rng.randint(1, 6)
            k = rng.randint(0, n)
            signs = sign_vectors(random_subspace(n, k, rng)).signs
            assert len(signs) % 2 == 1
            assert signs.contains_zero()
            assert signs.is_negation_closed()

    def test_monotone_under_basis_extension(self):
        rng = Random(37)
        for _ in range(25):
            n = rng.randint(2, 5)
            k = rng.randint(1, n - 1)
            small = random_subspace(n, k, rng)
            extra = random_subspace(n, 1, rng)
            big = RationalSubspace.from_spanning(
                n,
                [small.basis.column(j) for j in range(k)]
                + [extra.basis.column(0)],
            )
            small_signs = set(sign_vectors(small).signs)
            big_signs = set(sign_vectors(big).signs)
            assert small_signs <= big_signs

    def test_cardinality_bounds_randomized(self):
        rng = Random(41)
        for _ in range(40):
            n = rng.randint(2, 6)
            k = rng.randint(1, n)
            count = len(sign_vectors(random_subspace(n, k, rng)).signs)
            assert count >= 3**k
            if k == 2:
                assert count <= 4 * n + 1
            if k == n - 1:
                assert count <= 3**n - 2 * (2**n - 1)


class TestMemberWitness:
    def test_on_the_line(self):
        line = span(3, (1, 1, 1))
        x = member_witness(line, SignVector.from_string("+++"))
        assert x is not None and line.basis.apply(x) == (x[0], x[0], x[0]) and x[0] > 0

    def test_absent_off_the_line(self):
        assert member_witness(span(3, (1, 1, 1)), SignVector.from_string("+-+")) is None

    def test_plane_witness(self):
        plane = nullspace_basis(RationalMatrix([[1, 1, 1]]))
        x = member_witness(plane, SignVector.from_string("+-0"))
        assert x is not None
        image = plane.basis.apply(x)
        assert image[0] > 0 and image[1] < 0 and image[2] == 0

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            member_witness(span(2, (1, 0)), SignVector.from_string("+"))

    def test_agrees_with_enumeration(self):
        rng = Random(43)
        for _ in range(15):
            n = rng.randint(1, 4)
            k = rng.randint(0, n)
            space = random_subspace(n, k, rng)
            enumerated = set(sign_vectors(space).signs)
            from signrank.signs import all_sign_vectors

            for s in all_sign_vectors(n):
                witness = member_witness(space, s)
                assert (witness is not None) == (s in enumerated)


class TestVerifyDuality:
    def test_diagonal_line_in_r3(self):
        check = verify_duality(span(3, (1, 1, 0)))
        assert check.ok

    def test_full_space(self):
        assert verify_duality(RationalSubspace.full(3)).ok

    def test_zero_subspace(self):
        assert verify_duality(RationalSubspace.zero(3)).ok

    def test_randomized(self):
        rng = Random(47)
        for _ in range(60):
            n = rng.randint(1, 5)
            k = rng.randint(0, n)
            check = verify_duality(random_subspace(n, k, rng))
            assert check.ok, (check.complement_only, check.perp_only)


class TestDeterminism:
    def test_reports_identical_across_calls(self):
        rng_a = Random(97)
        rng_b = Random(97)
        first = sign_vectors(random_subspace(5, 3, rng_a))
        second = sign_vectors(random_subspace(5, 3, rng_b))
        assert first.signs == second.signs
        assert first.witnesses == second.witnesses


class TestSameSignDimCheck:
    def test_equal_subspaces(self):
        a = span(2, (1, 2))
        assert same_sign_dim_check(a, a)

    def test_different_axes(self):
        assert not same_sign_dim_check(span(2, (1, 0)), span(2, (0, 1)))

    def test_different_lines_same_signs(self):
        assert same_sign_dim_check(span(2, (1, 2)), span(2, (1, 3)))

    def test_ambient_mismatch(self):
        with pytest.raises(DimensionError):
            same_sign_dim_check(span(2, (1, 0)), span(3, (1, 0, 0)))


class TestRandomSubspace:
    def test_exact_dimension_and_entry_lattice(self):
        rng = Random(53)
        for _ in range(30):
            n = rng.randint(1, 6)
            k = rng.randint(0, n)
            space = random_subspace(n, k, rng)
            assert space.dim == k and space.ambient_dim == n
            for row in space.basis.data:
                for e in row:
                    assert abs(e.numerator) <= 5 * 3 and 1 <= e.denominator <= 3

    def test_deterministic_for_seed(self):
        a = random_subspace(4, 2, Random(99)).basis
        b = random_subspace(4, 2, Random(99)).basis
        assert a == b

    def test_bad_dimension(self):
        with pytest.raises(DimensionError):
            random_subspace(2, 3, Random(0))

    def test_duality_consistency_with_complement(self):
        # sign(K) computed directly equals sign(L)^perp for K = L^perp
        from signrank.signs import set_perp

        rng = Random(59)
        for _ in range(20):
            n = rng.randint(2, 5)
            k = rng.randint(1, n - 1)
            space = random_subspace(n, k, rng)
            direct = sign_vectors(orth_complement(space)).signs
            dual = set_perp(sign_vectors(space).signs)
            assert direct == dual
