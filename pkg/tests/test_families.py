import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import euler_symbol
from seqfam.families import (
    BinarySequence,
    FamilyFormatError,
    Orientation,
    PolySpec,
    QuadraticFamilyParams,
    SequenceFamily,
    build_polynomial_family,
    build_quadratic_family,
    dual_family,
    enumerate_gms_quadratics,
    enumerate_squarefree_upto,
    format_family,
    negate_family,
    parse_family,
    read_family,
    write_family,
)
from seqfam.ntcore import find_quadratic_nonresidue, is_prime

sign_matrices = st.integers(1, 9).flatmap(
    lambda f: st.integers(1, 70).flatmap(
        lambda n: st.lists(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n), min_size=f, max_size=f)
    )
)


def quad(p, b=None, orientation=Orientation.BY_OUTER_N):
    b = find_quadratic_nonresidue(p).value if b is None else b
    return build_quadratic_family(QuadraticFamilyParams(p, b, orientation))


class TestBinarySequence:
    @given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=200))
    def test_packed_and_logical_views_agree(self, vals):
        seq = BinarySequence.from_values(vals)
        assert seq.values.tolist() == vals
        assert [seq[k] for k in range(len(vals))] == vals
        for k, v in enumerate(vals):
            assert (int(seq.words[k // 64]) >> (k % 64)) & 1 == (v < 0)

    def test_rejects_zero_entries(self):
        with pytest.raises(ValueError):
            BinarySequence.from_values([1, 0, -1])

    @settings(max_examples=200)
    @given(st.data())
    def test_xor_popcount_identity(self, data):
        n = data.draw(st.integers(1, 150))
        a = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
        b = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
        start = data.draw(st.integers(0, n - 1))
        m = data.draw(st.integers(1, n - start))
        x = BinarySequence.from_values(a).words ^ BinarySequence.from_values(b).words
        bits = np.unpackbits(x.view(np.uint8), bitorder="little")[start : start + m]
        scalar = sum(a[k] * b[k] for k in range(start, start + m))
        assert scalar == m - 2 * int(bits.sum())


class TestQuadraticFamily:
    def test_member_example(self):
        fam = quad(11, 2)
        assert fam.signs[0].tolist() == [-1, 1, 1, -1, -1]
        assert (fam.size, fam.length) == (5, 5)
        assert np.all(fam.signs != 0)

    @pytest.mark.parametrize("p", [11, 13, 19, 23])
    def test_entries_match_euler(self, p):
        b = find_quadratic_nonresidue(p).value
        fam = quad(p, b)
        h = (p - 1) // 2
        expected = [[euler_symbol(n * n - b * i * i, p) for i in range(1, h + 1)] for n in range(1, h + 1)]
        assert fam.signs.tolist() == expected

    @pytest.mark.parametrize("p", [q for q in range(11, 44) if is_prime(q)])
    def test_members_distinct(self, p):
        assert len(set(quad(p).members)) == (p - 1) // 2

    @pytest.mark.parametrize("p", [11, 13, 19, 23])
    def test_sign_symmetry_with_inverse(self, p):
        s = (-1) ** ((p + 1) // 2)
        h = (p - 1) // 2
        for b in (c for c in range(1, p) if euler_symbol(c, p) == -1):
            binv = pow(b, -1, p)
            for n in range(1, h + 1):
                for i in range(1, h + 1):
                    assert euler_symbol(n * n - b * i * i, p) == s * euler_symbol(i * i - binv * n * n, p)

    @pytest.mark.parametrize("p", [11, 19, 23])
    def test_swap_identity_for_minus_one(self, p):
        # b = -1 is its own inverse, so the inverse-free form holds exactly
        s = (-1) ** ((p + 1) // 2)
        fam = quad(p, p - 1)
        assert dual_family(fam) == (fam if s == 1 else negate_family(fam))

    def test_swap_identity_needs_inverse_in_general(self):
        # n=1, i=2, b=2 mod 11: (1-8 / 11) = +1 but (4-2 / 11) = -1
        assert euler_symbol(1 - 2 * 4, 11) == 1
        assert euler_symbol(4 - 2 * 1, 11) == -1

    @pytest.mark.parametrize("p", [11, 13])
    def test_orientations_related_by_inverse_and_sign(self, p):
        b = find_quadratic_nonresidue(p).value
        by_i = quad(p, b, Orientation.BY_OUTER_I)
        other = quad(p, pow(b, -1, p), Orientation.BY_OUTER_N)
        assert by_i == (other if p % 4 == 3 else negate_family(other))

    def test_transpose_of_orientations(self):
        assert dual_family(quad(11, 2)) == quad(11, 2, Orientation.BY_OUTER_I)

    def test_rejects_small_prime_and_residue(self):
        with pytest.raises(ValueError, match="at least 11"):
            QuadraticFamilyParams(7, 3)
        with pytest.raises(ValueError, match="residue"):
            QuadraticFamilyParams(11, 3)
        with pytest.raises(ValueError):
            QuadraticFamilyParams(12, 2)


class TestFamilyOps:
    @given(sign_matrices)
    def test_dual_is_involution(self, rows):
        fam = SequenceFamily.from_matrix(rows)
        assert dual_family(dual_family(fam)) == fam
        assert dual_family(fam).size == fam.length

    def test_dual_example(self):
        d = dual_family(SequenceFamily.from_matrix([[1, -1]]))
        assert d.signs.tolist() == [[1], [-1]]

    @given(sign_matrices)
    def test_negate_is_involution(self, rows):
        fam = SequenceFamily.from_matrix(rows)
        assert negate_family(negate_family(fam)) == fam
        assert np.array_equal(negate_family(fam).signs, -fam.signs)

    def test_negate_example(self):
        assert negate_family(SequenceFamily.from_matrix([[1, 1]])).signs.tolist() == [[-1, -1]]

    def test_duplicates_kept_and_classed(self):
        fam = SequenceFamily.from_matrix([[1, -1], [1, 1], [1, -1]])
        assert fam.size == 3
        class_of, reps = fam.equality_classes()
        assert class_of.tolist() == [0, 1, 0]
        assert reps.tolist() == [0, 1]

    def test_mismatched_lengths_rejected(self):
        with pytest.raises(ValueError):
            SequenceFamily((BinarySequence.from_values([1]), BinarySequence.from_values([1, 1])))
        with pytest.raises(ValueError):
            SequenceFamily(())


class TestPolynomials:
    def test_identity_polynomial_family(self):
        fam = build_polynomial_family(7, [PolySpec(7, (1, 0))])
        assert fam.signs[0].tolist() == [1, 1, -1, 1, -1, -1, 1]

    def test_quadratic_entry(self):
        fam = build_polynomial_family(11, [PolySpec(11, (1, 0, -2))])
        assert fam.signs[0, 0] == -1

    def test_shifted_linear_is_cyclic_shift(self):
        x = build_polynomial_family(7, [PolySpec(7, (1, 0))]).signs[0]
        x3 = build_polynomial_family(7, [PolySpec(7, (1, 3))]).signs[0]
        assert x3.tolist() == [x[(n + 3 - 1) % 7] for n in range(1, 8)]

    @pytest.mark.parametrize("p", [5, 7, 11])
    def test_zero_rule_positions(self, p):
        polys = enumerate_squarefree_upto(p, 3)
        fam = build_polynomial_family(p, polys)
        for f, row in zip(polys, fam.signs):
            roots = [n for n in range(1, p + 1) if f(n) == 0]
            assert len(roots) <= f.degree
            assert all(row[n - 1] == 1 for n in roots)
            others = [n for n in range(1, p + 1) if f(n) != 0]
            assert all(row[n - 1] == euler_symbol(f(n), p) for n in others)

    def test_gms_example(self):
        assert [f.coeffs for f in enumerate_gms_quadratics(7)] == [(1, 0, 4), (1, 0, 2), (1, 0, 1)]

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17])
    def test_gms_count_and_irreducible(self, p):
        polys = enumerate_gms_quadratics(p)
        assert len(polys) == (p - 1) // 2
        for f in polys:
            assert all(f(x) != 0 for x in range(p))

    def test_squarefree_linear(self):
        assert [f.coeffs for f in enumerate_squarefree_upto(5, 1)] == [(1, c) for c in range(5)]

    def test_squarefree_excludes_square(self):
        out = enumerate_squarefree_upto(5, 2)
        assert PolySpec(5, (1, 2, 1)) not in out
        # square-free quadratics are exactly those with nonzero discriminant
        quads = [f for f in out if f.degree == 2]
        assert len(quads) == 25 - 5
        assert all((f.coeffs[1] ** 2 - 4 * f.coeffs[2]) % 5 for f in quads)

    @pytest.mark.parametrize("p", [3, 5, 7])
    def test_squarefree_cubics_match_root_multiplicity(self, p):
        # a cubic's only possible square factor is (X - r)^2, i.e. a double root
        cubics = [f for f in enumerate_squarefree_upto(p, 3) if f.degree == 3]
        for f in cubics:
            for r in range(p):
                g = f.shift(r)
                assert not (g.coeffs[-1] == 0 and g.coeffs[-2] == 0)
        # monic square-free polynomials of degree n >= 2 over F_q number q^n - q^(n-1)
        assert len(cubics) == p**3 - p**2

    def test_squarefree_limit_and_order(self):
        out = enumerate_squarefree_upto(7, 2, limit=10)
        assert len(out) == 10
        assert [f.degree for f in out] == [1] * 7 + [2] * 3

    @pytest.mark.parametrize("p", [5, 7])
    def test_shift_preserves_squarefree(self, p):
        for f in enumerate_squarefree_upto(p, 3):
            for d in range(1, p):
                assert f.shift(d).is_squarefree()
                assert all(f.shift(d)(x) == f((x + d) % p) for x in range(p))

    def test_bad_degrees_and_empty(self):
        with pytest.raises(ValueError):
            enumerate_squarefree_upto(5, 4)
        with pytest.raises(ValueError):
            PolySpec(5, (1, 0, 0, 0, 1))
        with pytest.raises(ValueError):
            build_polynomial_family(5, [])


class TestFileFormat:
    @given(sign_matrices, st.text(alphabet="abc =()xyz0123", max_size=20))
    def test_round_trip(self, rows, label):
        fam = SequenceFamily.from_matrix(rows, label.strip())
        back = parse_family(format_family(fam))
        assert back == fam and back.label == fam.label

    def test_file_round_trip(self, tmp_path):
        fam = quad(11)
        write_family(fam, tmp_path / "f.txt")
        assert read_family(tmp_path / "f.txt") == fam
        lines = (tmp_path / "f.txt").read_text().splitlines()
        assert lines[0] == "# seqfam v1 F=5 N=5 label=quadratic p=11 b=2 by_n"
        assert lines[1] == "-++--"

    @pytest.mark.parametrize(
        "text, lineno",
        [
            ("nope\n", 1),
            ("# seqfam v1 F=2 N=3 label=x\n+++\n+-\n", 3),
            ("# seqfam v1 F=1 N=3 label=x\n+*+\n", 2),
            ("# seqfam v1 F=2 N=3 label=x\n+++\n", 2),
            ("# seqfam v1 F=a N=3 label=x\n+++\n", 1),
        ],
    )
    def test_parse_errors_name_line(self, text, lineno):
        with pytest.raises(FamilyFormatError) as info:
            parse_family(text)
        assert info.value.lineno == lineno
        assert f"line {lineno}" in str(info.value)
