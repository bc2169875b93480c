import random
from fractions import Fraction

import pytest

from diagforge.eigen import char_poly, eigenvalues, match_multisets, right_eigenvector
from diagforge.errors import FeasibilityError
from diagforge.matrix import DenseMatrix
from diagforge.similarity import (
    DiagonalTarget,
    brauer_shift,
    embed_anchor,
    set_diagonal_cs,
    similar_with_diagonal,
)

CS3 = DenseMatrix([[0, 1, 2], [1, 1, 1], [2, 0, 1]])  # row sums 3


class TestDiagonalTarget:
    def test_nonnegative_mode_rejects_negative(self):
        DiagonalTarget((1, 0, 2), mode="nonnegative")
        with pytest.raises(ValueError):
            DiagonalTarget((1, -1, 3), mode="nonnegative")

    def test_general_mode_allows_negative(self):
        t = DiagonalTarget((1, -1, 3))
        assert t.total() == 3


class TestSetDiagonalCS:
    def test_rewrite_oracle(self):
        a = DenseMatrix([[3, 0, 0], [4, -1, 0], [5, 0, -2]])  # row sums 3
        b = set_diagonal_cs(a, (0, 0, 0))
        assert b.to_lists() == [[0, 1, 2], [1, 0, 2], [2, 1, 0]]
        assert char_poly(b) == char_poly(a)

    def test_requires_constant_row_sums(self):
        with pytest.raises(ValueError, match="constant row sums"):
            set_diagonal_cs(DenseMatrix.diagonal_matrix([1, 2, 3]), (2, 2, 2))

    def test_requires_matching_trace(self):
        with pytest.raises(ValueError, match="trace mismatch"):
            set_diagonal_cs(CS3, (1, 1, 3))

    def test_diagonal_written_exactly_on_floats(self):
        a = CS3.to_float()  # trace 2
        b = set_diagonal_cs(a, (0.1, 0.2, 1.7))
        assert b.diagonal() == (0.1, 0.2, 1.7)


def test_embed_anchor_is_a_similarity():
    a = DenseMatrix([[4, 0, 4], [2, 3, 0], [0, -2, 2]])
    for anchor in range(3):
        assert char_poly(embed_anchor(a, anchor)) == char_poly(a)
    with pytest.raises(ValueError):
        embed_anchor(a, 3)


def test_embed_anchor_exposes_total_support_eigenvector():
    # for diagonal input the embedded matrix has (1,-1,...,-1) as an
    # eigenvector for the anchor entry
    m = embed_anchor(DenseMatrix.diagonal_matrix([1, 2, 3]), 0)
    v = (Fraction(1), Fraction(-1), Fraction(-1))
    mv = m.matvec(v)
    assert mv == tuple(1 * x for x in v)


class TestBrauerShift:
    def test_zero_sum_shift_preserves_spectrum(self):
        pair = right_eigenvector(CS3, 3)
        b = brauer_shift(CS3, pair, (Fraction(1), Fraction(-1, 2), Fraction(-1, 2)))
        assert char_poly(b) == char_poly(CS3)
        assert b.diagonal() != CS3.diagonal()

    def test_shift_moves_exactly_the_certified_eigenvalue(self):
        pair = right_eigenvector(CS3, 3)
        b = brauer_shift(CS3, pair, (Fraction(1), Fraction(0), Fraction(0)))
        # 3 moves to 3 + v^T q = 4, the other two stay
        got = sorted(eigenvalues(b).values, key=lambda z: z.real)
        want = sorted(
            [complex(4.0)]
            + [z for z in eigenvalues(CS3).values if abs(z - 3) > 1e-6],
            key=lambda z: z.real,
        )
        for g, w in zip(got, want):
            assert g == pytest.approx(w, abs=1e-8)

    def test_rejects_stale_eigenpair(self):
        class Stale:
            value = 3.0
            vector = (1.0, 2.0, -1.0)

        with pytest.raises(ValueError, match="residual"):
            brauer_shift(CS3, Stale(), (1.0, 0.0, 0.0))


class TestSimilarWithDiagonal:
    def test_diagonal_input_exact_oracle(self):
        b, trace = similar_with_diagonal(DenseMatrix.diagonal_matrix([1, 2, 3]), (2, 2, 2))
        assert b.to_lists() == [[2, 0, -1], [0, 2, -1], [-1, 0, 2]]
        assert [s.op for s in trace.steps] == ["embed", "scale", "rank_one"]
        assert trace.replay(DenseMatrix.diagonal_matrix([1, 2, 3])).to_lists() == b.to_lists()

    def test_constant_row_sum_input_stays_exact(self):
        b, trace = similar_with_diagonal(CS3, (2, 0, 0))
        assert b.exact
        assert b.diagonal() == (2, 0, 0)
        assert char_poly(b) == char_poly(CS3)
        assert [s.op for s in trace.steps] == ["rank_one"]

    def test_general_float_route(self):
        a = DenseMatrix(
            [[4, 1, 0, 2], [2, -1, 3, 1], [0, 5, 2, 2], [1, 1, 1, 3]]
        )
        gammas = (5, 1, 0, 2)
        assert sum(gammas) == a.trace()
        b, trace = similar_with_diagonal(a, gammas)
        assert b.diagonal() == (5.0, 1.0, 0.0, 2.0)
        m = match_multisets(eigenvalues(b).values, eigenvalues(a.to_float()).values)
        assert m.max_distance < 1e-7
        replayed = trace.replay(a)
        for i in range(4):
            for j in range(4):
                assert replayed[i, j] == pytest.approx(b[i, j], abs=1e-12)

    def test_random_float_instances(self):
        rng = random.Random(7)
        for _ in range(15):
            n = rng.randint(2, 5)
            a = DenseMatrix(
                [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
            )
            scale = max(1.0, a.max_abs())
            if a.is_scalar_matrix(tol=1e-12 * scale):
                continue
            gs = [rng.randint(-3, 3) for _ in range(n - 1)]
            gs.append(a.trace() - sum(gs))
            b, _ = similar_with_diagonal(a, tuple(gs))
            assert b.diagonal() == tuple(float(g) for g in gs)
            m = match_multisets(
                eigenvalues(b).values, eigenvalues(a.to_float()).values
            )
            assert m.max_distance < 1e-6 * scale

    def test_scalar_matrix_is_infeasible(self):
        with pytest.raises(FeasibilityError) as err:
            similar_with_diagonal(DenseMatrix.diagonal_matrix([2, 2, 2]), (1, 2, 3))
        assert err.value.condition == "scalar-input"

    def test_trace_mismatch_rejected(self):
        with pytest.raises(ValueError, match="trace mismatch"):
            similar_with_diagonal(DenseMatrix.diagonal_matrix([1, 2, 3]), (1, 1, 1))

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValueError, match="length"):
            similar_with_diagonal(DenseMatrix.diagonal_matrix([1, 2, 3]), (3, 3))
