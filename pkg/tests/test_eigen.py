import math
import random
from fractions import Fraction

import pytest

from diagforge.eigen import (
    all_nonzero_eigenvector,
    char_poly,
    eigenvalues,
    eigenvalues_charpoly,
    left_eigenvector,
    match_multisets,
    poly_roots,
    right_eigenvector,
)
from diagforge.matrix import DenseMatrix


def spectrum_of(a):
    return sorted(eigenvalues(a).values, key=lambda z: (z.real, z.imag))


class TestKnownSpectra:
    def test_diagonal(self):
        got = spectrum_of(DenseMatrix.diagonal_matrix([3.0, -1.0, 4.0]))
        want = [-1.0, 3.0, 4.0]
        for g, w in zip(got, want):
            assert g == pytest.approx(w, abs=1e-10)
            assert g.imag == 0.0

    def test_companion_of_cubic_with_roots_1_2_3(self):
        a = DenseMatrix([[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        got = spectrum_of(a)
        for g, w in zip(got, [1.0, 2.0, 3.0]):
            assert g == pytest.approx(w, abs=1e-8)

    def test_rotation_block_gives_conjugate_pair(self):
        a = DenseMatrix([[-2.0, -3.0], [3.0, -2.0]])
        got = spectrum_of(a)
        assert got[0] == pytest.approx(complex(-2, -3), abs=1e-10)
        assert got[1] == pytest.approx(complex(-2, 3), abs=1e-10)
        # symmetrization returns exact conjugates for real input
        assert got[0].real == got[1].real
        assert got[0].imag == -got[1].imag

    def test_constant_row_sum_matrix(self):
        a = DenseMatrix([[0.0, 1.0, 2.0], [1.0, 1.0, 1.0], [2.0, 0.0, 1.0]])
        got = spectrum_of(a)
        r5 = math.sqrt(5.0)
        want = [(-1 - r5) / 2, (-1 + r5) / 2, 3.0]
        for g, w in zip(got, want):
            assert g == pytest.approx(w, abs=1e-8)


def test_char_poly_exact_oracle():
    # (t-3)(t+1)(t+2) = t^3 - 7t - 6
    a = DenseMatrix([[3, 0, 0], [4, -1, 0], [5, 0, -2]])
    assert char_poly(a) == [1, 0, -7, -6]


def test_char_poly_exact_with_fractions():
    a = DenseMatrix([[Fraction(1, 2), Fraction(1)], [Fraction(0), Fraction(-1, 3)]])
    # (t - 1/2)(t + 1/3) = t^2 - t/6 - 1/6
    assert char_poly(a) == [1, Fraction(-1, 6), Fraction(-1, 6)]


def test_poly_roots_known_cubic():
    roots = poly_roots([1, -6, 11, -6])
    got = sorted(z.real for z in roots)
    for g, w in zip(got, [1.0, 2.0, 3.0]):
        assert g == pytest.approx(w, abs=1e-9)


def test_dual_routes_agree_on_random_integer_matrices():
    rng = random.Random(20240817)
    for _ in range(40):
        n = rng.randint(2, 6)
        a = DenseMatrix(
            [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        )
        qr = eigenvalues(a.to_float()).values
        cp = eigenvalues_charpoly(a).values
        exact = eigenvalues(a).values
        m = match_multisets(qr, cp)
        scale = max(1.0, max(abs(z) for z in qr))
        gap = min(
            (abs(x - y) for i, x in enumerate(qr) for y in qr[i + 1:]),
            default=scale,
        )
        # multiple eigenvalues cap the attainable accuracy of the float
        # routes; the exact route is immune but must agree with both
        limit = 1e-6 if gap >= 1e-3 * scale else 1e-4
        assert m.max_distance <= limit * scale
        assert match_multisets(qr, exact).max_distance <= limit * scale
        assert match_multisets(cp, exact).max_distance <= limit * scale


def test_right_eigenvector_residual():
    a = DenseMatrix([[2.0, 1.0, 0.0], [0.0, 3.0, 1.0], [1.0, 0.0, 4.0]])
    for lam in eigenvalues(a).values:
        pair = right_eigenvector(a, lam)
        assert pair.residual <= 1e-7
        av = a.to_float().matvec(pair.vector)
        for lhs, v in zip(av, pair.vector):
            assert complex(lhs) == pytest.approx(complex(lam) * complex(v), abs=1e-7)


def test_left_eigenvector_residual():
    a = DenseMatrix([[1.0, 2.0], [4.0, 3.0]])
    pair = left_eigenvector(a, 5.0, normalize="sum1")
    assert pair.residual <= 1e-8
    assert sum(pair.vector) == pytest.approx(1.0, abs=1e-12)
    # t^T A = 5 t^T
    ta = [
        sum(pair.vector[i] * a[i, j] for i in range(2)) for j in range(2)
    ]
    for lhs, t in zip(ta, pair.vector):
        assert complex(lhs) == pytest.approx(5.0 * complex(t), abs=1e-8)


def test_constant_row_sum_fast_path_returns_exact_ones():
    a = DenseMatrix([[0, 1, 2], [1, 1, 1], [2, 0, 1]])
    pair = right_eigenvector(a, 3)
    assert pair.vector == (Fraction(1), Fraction(1), Fraction(1))
    assert pair.residual == 0.0


def test_all_nonzero_eigenvector_cases():
    # diagonal, non-scalar: every eigenvector has a zero entry
    assert all_nonzero_eigenvector(DenseMatrix.diagonal_matrix([1, 2, 3])) is None
    with pytest.raises(ValueError):
        all_nonzero_eigenvector(DenseMatrix.diagonal_matrix([2, 2, 2]))
    pair = all_nonzero_eigenvector(DenseMatrix([[0, 1, 2], [1, 1, 1], [2, 0, 1]]))
    assert pair is not None
    assert min(abs(complex(v)) for v in pair.vector) > 0


def test_match_multisets_reports_worst_distance():
    m = match_multisets([1.0, 2.0], [2.0, 1.5])
    assert m.max_distance == pytest.approx(0.5)
    with pytest.raises(ValueError):
        match_multisets([1.0], [1.0, 2.0])
