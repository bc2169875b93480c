"""Post-hoc certification of constructed matrices.

Every check here goes through the eigenvalue engine and the matrix's
own entries; nothing is taken on trust from the construction that
produced the matrix.  Certification never raises on a bad matrix: the
result carries a verdict per requested check plus the residuals that
justify it, so callers can decide what a failure means.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .eigen import eigenvalues, match_multisets
from .matrix import DenseMatrix, row_sums
from .scalars import im_part, is_exact, is_real, re_part, scalar_abs, to_float

SPECTRUM_REL_TOL = 1e-7
DIAG_FLOAT_TOL = 1e-10
NONNEG_SLACK = 1e-12
ROW_SUM_REL_TOL = 1e-10


@dataclass(frozen=True)
class RealizationCertificate:
    """Outcome of certify().

    ``checks`` maps each requested check name ("spectrum", "diagonal",
    "nonneg", "constant_row_sums") to its verdict; ``thresholds`` to the
    tolerance it was judged against.  Residuals for checks that were not
    requested are None.  ``ok`` is the conjunction of the verdicts.
    """

    checks: dict
    thresholds: dict
    spectrum_residual: Optional[float] = None
    diag_residual: Optional[float] = None
    min_entry: Optional[float] = None
    row_sum_deviation: Optional[float] = None
    computed_spectrum: tuple = ()

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": dict(self.checks),
            "thresholds": dict(self.thresholds),
            "spectrum_residual": self.spectrum_residual,
            "diag_residual": self.diag_residual,
            "min_entry": self.min_entry,
            "row_sum_deviation": self.row_sum_deviation,
            "computed_spectrum": [
                [z.real, z.imag] for z in self.computed_spectrum
            ],
        }


def certify(
    B: DenseMatrix,
    spectrum: Optional[Sequence] = None,
    diagonal: Optional[Sequence] = None,
    nonneg: bool = False,
    constant_row_sums: bool = False,
    spectrum_tol: Optional[float] = None,
    diag_tol: Optional[float] = None,
    nonneg_slack: float = NONNEG_SLACK,
    cs_tol: Optional[float] = None,
) -> RealizationCertificate:
    """Check a matrix against spectral and structural claims.

    ``spectrum`` and ``diagonal`` are target multisets/vectors; passing
    None skips that check.  ``nonneg`` asks for entrywise nonnegativity
    (within ``nonneg_slack`` on the float backend, exactly on the exact
    backend) and ``constant_row_sums`` for equal row sums.  Spectrum
    matching uses the eigenvalue engine plus greedy closest-first
    pairing, judged against ``spectrum_tol`` (default: 1e-7 relative to
    the largest target modulus).  Never raises on a failing check.
    """
    checks: dict = {}
    thresholds: dict = {}
    spectrum_residual = diag_residual = min_entry = row_sum_deviation = None
    computed: tuple = ()

    if spectrum is not None:
        targets = list(spectrum)
        est = eigenvalues(B)
        computed = tuple(complex(to_float(z)) for z in est.values)
        if len(targets) != B.n:
            checks["spectrum"] = False
            thresholds["spectrum"] = 0.0
            spectrum_residual = float("inf")
        else:
            match = match_multisets(computed, targets)
            scale = max(1.0, max(scalar_abs(t) for t in targets))
            tol = SPECTRUM_REL_TOL * scale if spectrum_tol is None else spectrum_tol
            spectrum_residual = match.max_distance
            checks["spectrum"] = spectrum_residual <= tol
            thresholds["spectrum"] = tol

    if diagonal is not None:
        gs = list(diagonal)
        if len(gs) != B.n:
            checks["diagonal"] = False
            thresholds["diagonal"] = 0.0
            diag_residual = float("inf")
        else:
            exact = B.exact and all(is_exact(g) for g in gs)
            gaps = [scalar_abs(B[i, i] - gs[i]) for i in range(B.n)]
            diag_residual = max(gaps) if gaps else 0.0
            if exact:
                ok = all(B[i, i] == gs[i] for i in range(B.n))
                thresholds["diagonal"] = 0.0
            else:
                tol = DIAG_FLOAT_TOL if diag_tol is None else diag_tol
                ok = diag_residual <= tol * max(
                    1.0, max(scalar_abs(g) for g in gs) if gs else 1.0
                )
                thresholds["diagonal"] = tol
            checks["diagonal"] = bool(ok)

    if nonneg:
        worst_im = 0.0
        worst_re = None
        for row in B.rows:
            for v in row:
                worst_im = max(worst_im, abs(to_float(im_part(v))))
                r = re_part(v)
                worst_re = r if worst_re is None else min(worst_re, r)
        min_entry = to_float(worst_re)
        if B.exact:
            checks["nonneg"] = worst_re >= 0 and worst_im == 0.0
            thresholds["nonneg"] = 0.0
        else:
            checks["nonneg"] = min_entry >= -nonneg_slack and worst_im <= nonneg_slack
            thresholds["nonneg"] = nonneg_slack

    if constant_row_sums:
        sums = row_sums(B)
        if B.exact:
            row_sum_deviation = (
                max(to_float(scalar_abs(s - sums[0])) for s in sums) if sums else 0.0
            )
            checks["constant_row_sums"] = all(s == sums[0] for s in sums)
            thresholds["constant_row_sums"] = 0.0
        else:
            mean = sum(to_float(re_part(s)) for s in sums) / len(sums)
            row_sum_deviation = max(abs(complex(to_float(s)) - mean) for s in sums)
            tol = ROW_SUM_REL_TOL if cs_tol is None else cs_tol
            checks["constant_row_sums"] = row_sum_deviation <= tol * max(
                1.0, abs(mean)
            )
            thresholds["constant_row_sums"] = tol

    return RealizationCertificate(
        checks=checks,
        thresholds=thresholds,
        spectrum_residual=spectrum_residual,
        diag_residual=diag_residual,
        min_entry=min_entry,
        row_sum_deviation=row_sum_deviation,
        computed_spectrum=computed,
    )
