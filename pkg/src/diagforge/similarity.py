"""Similarity constructions that prescribe the diagonal of a matrix.

The central fact: adding e q^T to a constant-row-sum matrix with
sum(q) = 0 is a similarity, so the diagonal can be rewritten freely as
long as the trace is preserved.  A general matrix is first moved into
constant-row-sum form by scaling with an eigenvector that has no zero
entries; when no such eigenvector exists (diagonal matrices are the
canonical case) an embedding trick manufactures one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import CertificationError, FeasibilityError
from .matrix import (
    DenseMatrix,
    diag_similarity,
    is_constant_row_sum,
    normalize_vector,
    rank_one_add,
)
from .scalars import is_exact, is_real, re_part, scalar_abs, to_float

TRACE_MATCH_TOL = 1e-10
SPECTRUM_CERT_TOL = 1e-7


@dataclass(frozen=True)
class DiagonalTarget:
    """Prescribed diagonal entries.

    ``mode`` is "general" (any scalars, used by the similarity
    constructions) or "nonnegative" (real entries >= 0, used by the
    nonnegative realizations).
    """

    gammas: tuple
    mode: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "gammas", normalize_vector(self.gammas))
        if self.mode not in ("general", "nonnegative"):
            raise ValueError(f"unknown mode: {self.mode}")
        if self.mode == "nonnegative":
            for g in self.gammas:
                if not is_real(g) or re_part(g) < 0:
                    raise ValueError("nonnegative mode requires real entries >= 0")

    @property
    def n(self) -> int:
        return len(self.gammas)

    def total(self):
        return sum(self.gammas)

    @property
    def exact(self) -> bool:
        return all(is_exact(g) for g in self.gammas)


def as_diagonal_target(obj, mode: str = "general") -> DiagonalTarget:
    if isinstance(obj, DiagonalTarget):
        return obj
    return DiagonalTarget(tuple(obj), mode=mode)


# ---------------------------------------------------------------------------
# trace of applied steps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    """One applied transformation: op in {"to_float", "embed", "scale",
    "rank_one"} with its payload (anchor index or vector)."""

    op: str
    data: object = None


class SimilarityTrace:
    """Ordered log of the steps that produced a construction's output.

    ``replay(A)`` re-applies the logged steps to A and returns the result;
    on the exact backend the replay reproduces the original output
    bit-identically.
    """

    def __init__(self, steps: Sequence[TraceStep]):
        self.steps = tuple(steps)

    def replay(self, A: DenseMatrix) -> DenseMatrix:
        B = A
        n = B.n
        for step in self.steps:
            if step.op == "to_float":
                B = B.to_float()
            elif step.op == "embed":
                B = embed_anchor(B, step.data)
            elif step.op == "scale":
                B = diag_similarity(B, step.data)
            elif step.op == "rank_one":
                ones = (Fraction(1),) * n if B.exact else (1.0,) * n
                B = rank_one_add(B, ones, step.data)
            else:
                raise ValueError(f"unknown trace step: {step.op}")
        return B

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __repr__(self):
        return f"SimilarityTrace({[s.op for s in self.steps]})"


# ---------------------------------------------------------------------------
# core operations
# ---------------------------------------------------------------------------


def set_diagonal_cs(
    A: DenseMatrix, gammas, tol: float = 1e-9
) -> DenseMatrix:
    """Rewrite the diagonal of a constant-row-sum matrix.

    Returns B = A + e q^T with q_i = gamma_i - a_ii.  Requires
    sum(gammas) equal to trace(A) (so that sum(q) = 0 and B is similar to
    A); B keeps the same constant row sum and has diagonal exactly
    ``gammas``.
    """
    target = as_diagonal_target(gammas)
    if target.n != A.n:
        raise ValueError("diagonal length must match matrix size")
    gs = _match_backend(target.gammas, A)
    alpha = is_constant_row_sum(A, tol=tol)
    if alpha is None:
        raise ValueError("matrix does not have constant row sums")
    diag = A.diagonal()
    q = [g - d for g, d in zip(gs, diag)]
    qsum = sum(q)
    if A.exact and all(is_exact(g) for g in gs):
        if qsum != 0:
            raise ValueError("trace mismatch: sum(gammas) != trace(A)")
    elif scalar_abs(qsum) > max(TRACE_MATCH_TOL, tol) * max(1.0, A.max_abs()):
        raise ValueError("trace mismatch: sum(gammas) != trace(A)")
    out = []
    for i in range(A.n):
        row = list(A.rows[i])
        for j in range(A.n):
            # diagonal entries are written directly: a_ii + (g_i - a_ii)
            # is g_i exactly, and spelling it out dodges float rounding
            row[j] = gs[j] if i == j else row[j] + q[j]
        out.append(row)
    return DenseMatrix(out)


def _match_backend(values: tuple, A: DenseMatrix) -> tuple:
    if A.exact:
        if not all(is_exact(v) for v in values):
            raise TypeError(
                "float diagonal target with exact matrix; convert explicitly"
            )
        return values
    return tuple(to_float(v) for v in values)


def embed_anchor(A: DenseMatrix, anchor: int = 0) -> DenseMatrix:
    """Conjugate A by S = I + (e - e_a) e_a^T (columns of ones at ``anchor``).

    S^{-1} A S replaces column ``anchor`` by the row-sum vector and then
    subtracts row ``anchor`` from every other row.  When column ``anchor``
    of A is zero off the diagonal, S^{-1} e_a has no zero entries and is an
    eigenvector of the result for a_{anchor,anchor}.
    """
    n = A.n
    if not 0 <= anchor < n:
        raise ValueError("anchor out of range")
    rows = [list(r) for r in A.rows]
    for i in range(n):
        rows[i][anchor] = sum(A.rows[i])
    base = list(rows[anchor])
    for i in range(n):
        if i != anchor:
            rows[i] = [x - y for x, y in zip(rows[i], base)]
    return DenseMatrix(rows)


def brauer_shift(
    A: DenseMatrix, pair, q, residual_tol: float = 1e-6
) -> DenseMatrix:
    """Move one eigenvalue of A by adding v q^T for an eigenvector v.

    ``pair`` is an EigenPair (or any object with ``value`` and ``vector``)
    certifying A v = lam v.  The result has the same spectrum except that
    lam becomes lam + v^T q.  The eigenpair residual is re-verified here;
    a stale or inaccurate pair is rejected.
    """
    import numpy as np

    v = tuple(pair.vector)
    lam = pair.value
    if len(v) != A.n:
        raise ValueError("eigenvector length must match matrix size")
    Af = A.to_numpy().astype(complex)
    vf = np.array([complex(to_float(x)) for x in v])
    lamf = complex(to_float(lam))
    scale = max(1.0, A.max_abs(), float(np.max(np.abs(vf))))
    residual = float(np.max(np.abs(Af @ vf - lamf * vf)))
    if residual > residual_tol * scale:
        raise ValueError(
            f"eigenpair residual {residual:.3e} too large for a reliable shift"
        )
    fam_exact = A.exact and all(is_exact(x) for x in v) and all(
        is_exact(x) for x in q
    )
    if fam_exact:
        return rank_one_add(A, v, q)
    Afl = A.to_float()
    vv = tuple(to_float(x) for x in v)
    qq = tuple(to_float(x) for x in q)
    return rank_one_add(Afl, vv, qq)


# ---------------------------------------------------------------------------
# the general construction
# ---------------------------------------------------------------------------


def similar_with_diagonal(
    A: DenseMatrix,
    gammas,
    tol: float = 1e-9,
    zero_tol: float = 1e-8,
) -> tuple[DenseMatrix, SimilarityTrace]:
    """Build B similar to A with prescribed diagonal entries.

    Requires A non-scalar and sum(gammas) = trace(A).  Three routes, tried
    in order:

    * A already has constant row sums: rewrite the diagonal in place.
    * A is diagonal (exact backend): conjugate by the anchor embedding,
      scale by the known eigenvector (1, -1, ..., -1), rewrite.
    * otherwise: find an eigenvector with no zero entries (searching
      anchor embeddings when A itself has none), scale into constant-
      row-sum form, rewrite.

    Returns (B, trace); replaying the trace on A reproduces B.  The output
    is certified internally: diagonal written exactly, eigenvalues of A
    and B matched within a relative tolerance.
    """
    target = as_diagonal_target(gammas)
    n = A.n
    if target.n != n:
        raise ValueError("diagonal length must match matrix size")
    scale = max(1.0, A.max_abs())
    if A.is_scalar_matrix(tol=1e-12 * scale):
        raise FeasibilityError(
            "scalar matrix: every similar matrix is A itself",
            condition="scalar-input",
        )
    tr = A.trace()
    total = target.total()
    exact_mode = A.exact and target.exact
    if exact_mode:
        if total != tr:
            raise ValueError("trace mismatch: sum(gammas) != trace(A)")
    else:
        if scalar_abs(to_float(total) - to_float(tr)) > max(
            TRACE_MATCH_TOL, tol
        ) * max(1.0, scalar_abs(tr), scalar_abs(total)):
            raise ValueError("trace mismatch: sum(gammas) != trace(A)")

    steps: list[TraceStep] = []

    if exact_mode and is_constant_row_sum(A) is not None:
        q = tuple(g - d for g, d in zip(target.gammas, A.diagonal()))
        B = set_diagonal_cs(A, target, tol=tol)
        steps.append(TraceStep("rank_one", q))
        return _certified(A, B, target, tol, steps)

    if exact_mode and A.is_diagonal():
        M = embed_anchor(A, 0)
        steps.append(TraceStep("embed", 0))
        d = (Fraction(1),) + (Fraction(-1),) * (n - 1)
        N = diag_similarity(M, d)
        steps.append(TraceStep("scale", d))
        q = tuple(g - x for g, x in zip(target.gammas, N.diagonal()))
        B = set_diagonal_cs(N, target, tol=tol)
        steps.append(TraceStep("rank_one", q))
        return _certified(A, B, target, tol, steps)

    # float route
    Af = A.to_float()
    gf = DiagonalTarget(tuple(to_float(g) for g in target.gammas), target.mode)
    if A.exact:
        steps.append(TraceStep("to_float"))
    M = Af
    if is_constant_row_sum(Af, tol=tol) is None:
        from .eigen import all_nonzero_eigenvector

        pair = all_nonzero_eigenvector(Af, zero_tol=zero_tol, tol=tol)
        anchor_used: Optional[int] = None
        if pair is None:
            for i in range(n):
                Mi = embed_anchor(Af, i)
                pair = all_nonzero_eigenvector(Mi, zero_tol=zero_tol, tol=tol)
                if pair is not None:
                    anchor_used = i
                    M = Mi
                    break
            else:
                raise FeasibilityError(
                    "no eigenvector with all nonzero entries found, "
                    "directly or through any anchor embedding",
                    condition="no-total-support-eigenvector",
                )
        if anchor_used is not None:
            steps.append(TraceStep("embed", anchor_used))
        d = tuple(to_float(x) for x in pair.vector)
        M = diag_similarity(M, d)
        steps.append(TraceStep("scale", d))
    q = tuple(g - x for g, x in zip(gf.gammas, M.diagonal()))
    B = set_diagonal_cs(M, gf, tol=max(tol, 1e-6))
    steps.append(TraceStep("rank_one", q))
    return _certified(A, B, target, tol, steps)


def _certified(A, B, target, tol, steps):
    from .eigen import eigenvalues, match_multisets

    # exact matrices keep the exact backend here: the engine resolves
    # their multiple eigenvalues exactly instead of at float precision
    est_a = eigenvalues(A)
    est_b = eigenvalues(B)
    lam_scale = max(1.0, max(abs(v) for v in est_a.values))
    m = match_multisets(est_b.values, est_a.values)
    gs = _match_backend(target.gammas, B)
    diag_ok = all(x == g for x, g in zip(B.diagonal(), gs))
    if not diag_ok or m.max_distance > SPECTRUM_CERT_TOL * lam_scale:
        raise CertificationError(
            "constructed matrix failed self-certification "
            f"(diag ok: {diag_ok}, spectrum distance: {m.max_distance:.3e})"
        )
    return B, SimilarityTrace(steps)
