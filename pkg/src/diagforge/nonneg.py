"""Nonnegative matrices with prescribed spectrum and prescribed diagonal.

Two spectral families are handled.  "Wedge" tails (here: class F) have
Re z <= 0 and |Re z| >= |Im z|; they admit a direct block-triangular
template whose diagonal can then be rewritten freely.  "Wide wedge"
tails (class G) relax the slope to sqrt(3)|Re z| >= |Im z|; nonreal
pairs in G are realized three at a time through an explicit 3x3 form
and chained together by a block glue that shares one eigenvalue.  The
mixed case routes the F-part through the template, the rest through
the chain, and joins the two with a bridge eigenvalue whose value is
forced by the trace.

All constructions work on the exact (Fraction) backend when the inputs
are exact, so outputs can be compared entry by entry.  Feasibility of
an assignment of diagonal entries to construction slots is not
guaranteed in general; the planner searches assignments and reports
failure honestly rather than returning a wrong matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import CertificationError, FeasibilityError
from .matrix import (
    DenseMatrix,
    is_constant_row_sum,
    normalize_vector,
    permute_similarity,
)
from .scalars import (
    abs2,
    conj,
    im_part,
    is_exact,
    is_real,
    re_part,
    scalar_abs,
    to_float,
)
from .similarity import DiagonalTarget, as_diagonal_target, set_diagonal_cs

DEGENERATE_CORNER_TOL = 1e-10
PLANNER_NODE_BUDGET = 2_000_000
PLANNER_RESTARTS = 8
EXHAUSTIVE_LIMIT = 12


class SpectrumClass(str, Enum):
    SULEIMANOVA_F = "SuleimanovaF"
    SMIGOC_G = "SmigocG"
    MIXED = "Mixed"
    OUTSIDE = "Outside"


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------


class Spectrum:
    """A conjugation-closed multiset of eigenvalue targets.

    The dominant entry is the largest real element; it must dominate the
    modulus of every other entry (a necessary condition for nonnegative
    realizability, checked at construction).  The tail is stored
    normalized: real values descending, then conjugate pairs by real
    part descending, the +iy member immediately before the -iy member.
    """

    __slots__ = ("perron", "tail", "exact", "_pairs", "_reals")

    def __init__(self, values: Sequence, tol: float = 1e-9):
        vals = list(normalize_vector(values))
        if not vals:
            raise ValueError("empty spectrum")
        self.exact = all(is_exact(v) for v in vals)
        scale = max(1.0, max(scalar_abs(v) for v in vals))
        reals, pairs = _split_conjugates(vals, self.exact, tol * scale)
        if not reals:
            raise ValueError("no real element available for the dominant position")
        perron = max(reals)
        reals.remove(perron)
        self.perron = perron
        reals.sort(reverse=True)
        pairs.sort(key=lambda z: (-to_float(re_part(z)), to_float(im_part(z))))
        self._reals = tuple(reals)
        self._pairs = tuple(pairs)
        tail: list = list(reals)
        for z in pairs:
            tail.append(z)
            tail.append(conj(z))
        self.tail = tuple(tail)
        self._check_dominance(tol * scale * scale)

    def _check_dominance(self, slack: float):
        lam = self.perron
        if self.exact:
            if lam < 0:
                raise FeasibilityError(
                    "dominant eigenvalue is negative",
                    condition="perron-dominance",
                )
            for z in self.tail:
                if abs2(z) > lam * lam:
                    raise FeasibilityError(
                        f"dominant eigenvalue {lam} does not dominate |{z}|",
                        condition="perron-dominance",
                    )
        else:
            lamf = to_float(lam)
            if lamf < -slack:
                raise FeasibilityError(
                    "dominant eigenvalue is negative",
                    condition="perron-dominance",
                )
            for z in self.tail:
                if to_float(abs2(z)) > lamf * lamf + slack:
                    raise FeasibilityError(
                        f"dominant eigenvalue {lamf} does not dominate |{z}|",
                        condition="perron-dominance",
                    )

    @property
    def values(self) -> tuple:
        return (self.perron,) + self.tail

    @property
    def n(self) -> int:
        return 1 + len(self.tail)

    @property
    def tail_reals(self) -> tuple:
        return self._reals

    @property
    def tail_pairs(self) -> tuple:
        """One representative per conjugate pair, Im > 0."""
        return self._pairs

    def trace(self):
        total = self.perron + sum(self._reals)
        for z in self._pairs:
            total = total + 2 * re_part(z)
        return total

    def scale(self) -> float:
        return max(1.0, to_float(scalar_abs(self.perron)))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Spectrum(perron={self.perron!r}, tail={self.tail!r})"


def as_spectrum(obj, tol: float = 1e-9) -> Spectrum:
    if isinstance(obj, Spectrum):
        return obj
    return Spectrum(obj, tol=tol)


def _nonneg_target(gammas) -> DiagonalTarget:
    target = as_diagonal_target(gammas, mode="nonnegative")
    if target.mode != "nonnegative":
        target = DiagonalTarget(target.gammas, mode="nonnegative")
    return target


def _split_conjugates(vals: list, exact: bool, slack: float):
    """Partition into real values and +iy pair representatives."""
    reals: list = []
    upper: list = []
    lower: list = []
    for v in vals:
        if is_real(v):
            reals.append(re_part(v))
        elif not exact and abs(to_float(im_part(v))) <= slack:
            reals.append(to_float(re_part(v)))
        elif to_float(im_part(v)) > 0:
            upper.append(v)
        else:
            lower.append(v)
    if len(upper) != len(lower):
        raise ValueError("spectrum is not closed under conjugation")
    pairs = []
    for z in upper:
        want = conj(z)
        if exact:
            if want not in lower:
                raise ValueError(f"conjugate of {z} missing from spectrum")
            lower.remove(want)
            pairs.append(z)
        else:
            best = min(lower, key=lambda w: abs(complex(to_float(want)) - complex(to_float(w))))
            if abs(complex(to_float(want)) - complex(to_float(best))) > 2 * slack:
                raise ValueError(f"conjugate of {z} missing from spectrum")
            lower.remove(best)
            # symmetrize so the stored pair is an exact conjugate pair
            zc = complex(to_float(z))
            bc = complex(to_float(best))
            pairs.append(complex((zc.real + bc.real) / 2, (zc.imag - bc.imag) / 2))
    return reals, pairs


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ListClass:
    """Classification of a spectrum's tail.

    ``flags`` has one entry per tail element, aligned with
    Spectrum.tail: "F", "G-F", or "outside".  Boundaries are closed:
    equality counts as inside.
    """

    tag: SpectrumClass
    flags: tuple

    @property
    def f_count(self) -> int:
        return sum(1 for f in self.flags if f == "F")

    @property
    def gf_count(self) -> int:
        return sum(1 for f in self.flags if f == "G-F")

    def to_dict(self) -> dict:
        return {"tag": self.tag.value, "flags": list(self.flags)}


def _element_flag(z) -> str:
    x = re_part(z)
    y = im_part(z)
    if x > 0:
        return "outside"
    if x * x >= y * y:
        return "F"
    if 3 * x * x >= y * y:
        return "G-F"
    return "outside"


def classify(spectrum) -> ListClass:
    """Tag a spectrum's tail by region membership.

    SuleimanovaF: every tail element satisfies Re z <= 0, |Re z| >= |Im z|.
    SmigocG: every element satisfies the wider sqrt(3)|Re z| >= |Im z|
    bound but none the narrow one.  Mixed: both kinds present, all
    within the wide bound.  Outside: anything else.
    """
    spec = as_spectrum(spectrum)
    flags = tuple(_element_flag(z) for z in spec.tail)
    if any(f == "outside" for f in flags):
        tag = SpectrumClass.OUTSIDE
    elif all(f == "F" for f in flags):
        tag = SpectrumClass.SULEIMANOVA_F
    elif all(f == "G-F" for f in flags):
        tag = SpectrumClass.SMIGOC_G
    else:
        tag = SpectrumClass.MIXED
    return ListClass(tag=tag, flags=flags)


def check_trace(spectrum, gammas, tol: float = 1e-9) -> bool:
    """True when the diagonal sum equals the spectrum sum."""
    spec = as_spectrum(spectrum)
    target = as_diagonal_target(gammas)
    total = target.total()
    tr = spec.trace()
    if spec.exact and target.exact:
        return total == tr
    return abs(to_float(total) - to_float(tr)) <= tol * max(
        1.0, abs(to_float(tr)), abs(to_float(total))
    )


# ---------------------------------------------------------------------------
# wedge (F) template
# ---------------------------------------------------------------------------


def suleimanova_primitive(spectrum) -> DenseMatrix:
    """Block lower-triangular realization of an all-F spectrum.

    Row one is (lam1, 0, ...).  Each real tail value r contributes a row
    with lam1 - r in the first column and r on the diagonal.  Each pair
    x+-iy contributes two rows: first columns lam1 - x + y and
    lam1 - x - y, carrying the rotation block [[x, -y], [y, x]] on the
    diagonal.  Row sums are lam1 throughout; F membership makes every
    entry nonnegative.
    """
    spec = as_spectrum(spectrum)
    cls = classify(spec)
    if any(f != "F" for f in cls.flags):
        raise FeasibilityError(
            "tail leaves the |Re| >= |Im|, Re <= 0 region",
            condition="outside-F",
        )
    lam = spec.perron
    n = spec.n
    zero = Fraction(0) if spec.exact else 0.0
    rows = [[zero] * n for _ in range(n)]
    rows[0][0] = lam
    i = 1
    for r in spec.tail_reals:
        rows[i][0] = lam - r
        rows[i][i] = r
        i += 1
    for z in spec.tail_pairs:
        x, y = re_part(z), im_part(z)
        rows[i][0] = lam - x + y
        rows[i][i] = x
        rows[i][i + 1] = -y
        rows[i + 1][0] = lam - x - y
        rows[i + 1][i] = y
        rows[i + 1][i + 1] = x
        i += 2
    for k in range(1, n):
        assert rows[k][0] >= 0, "template first column went negative"
    return DenseMatrix(rows)


def realize_suleimanova(spectrum, gammas, tol: float = 1e-9) -> DenseMatrix:
    """Nonnegative matrix with an all-F spectrum and prescribed diagonal.

    Any nonnegative diagonal with the right sum is feasible: the
    template's diagonal rewrite keeps every entry nonnegative because
    each tail column gains gamma_j - Re(lambda_j) >= 0 and the first
    column loses at most lam1 - gamma_1.
    """
    spec = as_spectrum(spectrum, tol=tol)
    target = _nonneg_target(gammas)
    if target.n != spec.n:
        raise ValueError("diagonal length must match spectrum size")
    if not check_trace(spec, target, tol=tol):
        raise ValueError("trace mismatch: sum(gammas) != sum(spectrum)")
    T = suleimanova_primitive(spec)
    if not (spec.exact and target.exact):
        T = T.to_float()
        target = DiagonalTarget(
            tuple(to_float(g) for g in target.gammas), mode="nonnegative"
        )
    B = set_diagonal_cs(T, target, tol=tol)
    floor = 0 if B.exact else -1e-12 * max(1.0, B.max_abs())
    assert B.min_real_entry() >= floor, "wedge realization produced a negative entry"
    return B


# ---------------------------------------------------------------------------
# 3x3 feasibility and closed form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerfectReport:
    """Per-condition feasibility report for a 3x3 target.

    Conditions: bounds (0 <= gamma_k <= lam1), trace (sums agree),
    second_symmetric (e2 of the diagonal >= e2 of the spectrum), and
    diagonal_max (max gamma >= Re lam2).  Truthiness is the conjunction.
    """

    bounds: bool
    trace: bool
    second_symmetric: bool
    diagonal_max: bool
    margins: dict

    @property
    def ok(self) -> bool:
        return self.bounds and self.trace and self.second_symmetric and self.diagonal_max

    @property
    def failing(self) -> tuple:
        return tuple(
            name
            for name, good in (
                ("bounds", self.bounds),
                ("trace", self.trace),
                ("second_symmetric", self.second_symmetric),
                ("diagonal_max", self.diagonal_max),
            )
            if not good
        )

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "bounds": self.bounds,
            "trace": self.trace,
            "second_symmetric": self.second_symmetric,
            "diagonal_max": self.diagonal_max,
            "margins": {k: to_float(v) for k, v in self.margins.items()},
        }


def perfect_feasible(lam1, lam2, lam3, g1, g2, g3, tol: float = 1e-9) -> PerfectReport:
    """Feasibility of a 3x3 nonnegative matrix with given spectrum and diagonal.

    lam1 must be real; lam2 and lam3 must be both real or a conjugate
    pair.  Margins are reported so callers can see how close a failing
    condition was.  The test is only meaningful when lam1 dominates the
    moduli of lam2 and lam3.
    """
    vals = normalize_vector((lam1, lam2, lam3))
    lam1, lam2, lam3 = vals
    gs = normalize_vector((g1, g2, g3))
    exact = all(is_exact(v) for v in vals) and all(is_exact(g) for g in gs)
    if not is_real(lam1):
        raise ValueError("lam1 must be real")
    scale = max(1.0, to_float(scalar_abs(lam1)))
    if is_real(lam2) != is_real(lam3):
        raise ValueError("lam2, lam3 must be both real or a conjugate pair")
    if not is_real(lam2):
        mismatched = (
            conj(lam2) != lam3 if exact else scalar_abs(conj(lam2) - lam3) > tol * scale
        )
        if mismatched:
            raise ValueError("lam2, lam3 must be both real or a conjugate pair")
    for g in gs:
        if not is_real(g):
            raise ValueError("diagonal entries must be real")
    lam1 = re_part(lam1)
    gs = tuple(re_part(g) for g in gs)
    slack = 0 if exact else tol * scale

    bound_margin = min(min(gs), min(lam1 - g for g in gs))
    bounds = bound_margin >= -slack

    trace_gap = sum(gs) - (lam1 + re_part(lam2) + re_part(lam3))
    trace = (trace_gap == 0) if exact else abs(to_float(trace_gap)) <= slack

    # e2 is real by conjugation closure; lam2*lam3 = x2*x3 - im2*im3 covers
    # both cases (real: im terms vanish; pair: im2 = -im3 gives +y^2)
    x2, x3 = re_part(lam2), re_part(lam3)
    e2_lam = lam1 * x2 + lam1 * x3 + (x2 * x3 - im_part(lam2) * im_part(lam3))
    e2_g = gs[0] * gs[1] + gs[0] * gs[2] + gs[1] * gs[2]
    sym_margin = e2_g - e2_lam
    second_symmetric = sym_margin >= (0 if exact else -tol * scale * scale)

    dom_margin = max(gs) - max(x2, x3)
    diagonal_max = dom_margin >= -slack

    return PerfectReport(
        bounds=bool(bounds),
        trace=bool(trace),
        second_symmetric=bool(second_symmetric),
        diagonal_max=bool(diagonal_max),
        margins={
            "bounds": bound_margin,
            "trace": trace_gap,
            "second_symmetric": sym_margin,
            "diagonal_max": dom_margin,
        },
    )


def construct_3x3(lam1, pair, gammas, tol: float = 1e-9) -> DenseMatrix:
    """Explicit 3x3 nonnegative matrix with spectrum {lam1, z, conj(z)}.

    ``pair`` is z = x + iy with x <= 0 and sqrt(3)|x| >= |y| (the wide
    wedge; y may be 0).  The matrix is

        [[g1,             0,        lam1 - g1],
         [lam1 - g2 - p,  g2,       p        ],
         [0,              lam1-g3,  g3       ]]

    with p = (e2(gammas) - e2(spectrum)) / (lam1 - g3).  Feasibility of
    the diagonal is checked first and reported per condition.
    """
    vals = normalize_vector((lam1, pair))
    lam1, z = vals
    target = _nonneg_target(gammas)
    if target.n != 3:
        raise ValueError("exactly three diagonal entries required")
    exact = all(is_exact(v) for v in vals) and target.exact
    if not is_real(lam1):
        raise ValueError("lam1 must be real")
    lam1 = re_part(lam1)
    x = re_part(z)
    y = im_part(z)
    if y < 0:
        y = -y
    scale = max(1.0, to_float(scalar_abs(lam1)), to_float(scalar_abs(z)))
    slack = 0 if exact else tol * scale

    if x > slack or 3 * x * x < y * y - (0 if exact else tol * scale * scale):
        raise FeasibilityError(
            f"{complex(to_float(x), to_float(y))} is outside the wide wedge "
            "(Re <= 0 and 3 Re^2 >= Im^2 required)",
            condition="outside-G",
        )
    if lam1 < -slack or lam1 * lam1 < x * x + y * y - (
        0 if exact else tol * scale * scale
    ):
        raise FeasibilityError(
            "dominant eigenvalue does not dominate the pair modulus",
            condition="perron-dominance",
        )
    g1, g2, g3 = target.gammas
    trace_gap = (g1 + g2 + g3) - (lam1 + 2 * x)
    if (trace_gap != 0) if exact else abs(to_float(trace_gap)) > max(tol, 1e-10) * scale:
        raise ValueError("trace mismatch: sum(gammas) != lam1 + 2*Re(pair)")

    corner_gap = scalar_abs(lam1 - g3)
    degenerate = (g3 == lam1) if exact else to_float(corner_gap) <= DEGENERATE_CORNER_TOL * scale
    if degenerate:
        # g1 + g2 = 2x <= 0 with nonnegative entries forces the zero case
        tiny = 0 if exact else DEGENERATE_CORNER_TOL * scale
        if (
            scalar_abs(g1) <= tiny
            and scalar_abs(g2) <= tiny
            and scalar_abs(x) <= tiny
            and scalar_abs(y) <= tiny
        ):
            zero = Fraction(0) if exact else 0.0
            return DenseMatrix(
                [[zero, zero, lam1], [lam1, zero, zero], [zero, zero, lam1]]
            )
        raise FeasibilityError(
            "third diagonal entry coincides with the dominant eigenvalue "
            "outside the all-zero degenerate case",
            condition="degenerate-corner",
        )

    report = perfect_feasible(lam1, z, conj(z), g1, g2, g3, tol=tol)
    if not report.ok:
        raise FeasibilityError(
            "3x3 target fails feasibility: " + ", ".join(report.failing),
            condition=", ".join(report.failing),
            report=report,
        )

    e2_lam = 2 * lam1 * x + (x * x + y * y)
    e2_g = g1 * g2 + g1 * g3 + g2 * g3
    p = (e2_g - e2_lam) / (lam1 - g3)
    zero = Fraction(0) if exact else 0.0
    B = DenseMatrix(
        [
            [g1, zero, lam1 - g1],
            [lam1 - g2 - p, g2, p],
            [zero, lam1 - g3, g3],
        ]
    )
    floor = 0 if exact else -1e-12 * max(1.0, B.max_abs())
    if B.min_real_entry() < floor:
        raise FeasibilityError(
            "rounding pushed a boundary entry negative",
            condition="boundary",
            report=report,
        )
    return B


# ---------------------------------------------------------------------------
# glue
# ---------------------------------------------------------------------------


def _left_fixed_vector(A2: DenseMatrix, alpha, tol: float):
    """Left eigenvector of A2 for alpha, normalized to sum 1."""
    n = A2.n
    if n == 1:
        return (Fraction(1),) if A2.exact else (1.0,)
    if A2.exact:
        from .matrix import exact_nullspace

        M = (A2 - DenseMatrix.diagonal_matrix([alpha] * n)).transpose()
        basis = exact_nullspace(M)
        candidates = [v for v in basis if sum(v) != 0]
        if not candidates:
            raise ValueError("left eigenvector has zero entry sum; glue undefined")
        for v in candidates:
            s = sum(v)
            t = tuple(x / s for x in v)
            if all(is_real(x) and re_part(x) >= 0 for x in t):
                return t
        s = sum(candidates[0])
        return tuple(x / s for x in candidates[0])
    from .eigen import left_eigenvector
    from .errors import ConvergenceError

    try:
        pair = left_eigenvector(A2, to_float(alpha), tol=tol, normalize="sum1")
    except (ConvergenceError, ValueError) as exc:
        raise ValueError(f"left eigenvector computation failed: {exc}") from exc
    vec = [complex(to_float(x)) for x in pair.vector]
    # a real CS block has a real left eigenvector; drop iteration noise
    if max(abs(x.imag) for x in vec) > 1e-6 * max(abs(x) for x in vec):
        raise ValueError("left eigenvector is not real; glue undefined")
    total = sum(x.real for x in vec)
    if abs(total) < 1e-12:
        raise ValueError("left eigenvector has zero entry sum; glue undefined")
    return tuple(x.real / total for x in vec)


def _glue(A1: DenseMatrix, A2: DenseMatrix, tol: float = 1e-9):
    """Join A1 = [[A11, a],[b^T, c]] with A2 in CS_c; returns (C, t).

    C = [[A11, a t^T],[e b^T, A2]] where t is a left eigenvector of A2
    for c with entry sum 1.  The spectrum of C is the spectrum of A1
    together with the spectrum of A2 minus one copy of c.
    """
    n1 = A1.n
    if n1 < 2:
        raise ValueError("first block must be at least 2x2")
    exact = A1.exact and A2.exact
    if not exact:
        A1, A2 = A1.to_float(), A2.to_float()
    alpha = is_constant_row_sum(A2, tol=tol)
    if alpha is None:
        raise ValueError("second block must have constant row sums")
    corner = A1[n1 - 1, n1 - 1]
    if (
        (corner != alpha)
        if exact
        else scalar_abs(corner - alpha) > tol * max(1.0, scalar_abs(alpha))
    ):
        raise ValueError(
            "trailing diagonal entry of the first block must equal the "
            "row-sum constant of the second"
        )
    t = _left_fixed_vector(A2, alpha, tol)
    n2 = A2.n
    rows = []
    for i in range(n1 - 1):
        a_i = A1[i, n1 - 1]
        rows.append(list(A1.rows[i][: n1 - 1]) + [a_i * tj for tj in t])
    b = A1.rows[n1 - 1][: n1 - 1]
    for k in range(n2):
        rows.append(list(b) + list(A2.rows[k]))
    return DenseMatrix(rows), t


def smigoc_glue(A1: DenseMatrix, A2: DenseMatrix, tol: float = 1e-9) -> DenseMatrix:
    """Glue two blocks through a shared eigenvalue.

    A1's trailing diagonal entry c must equal A2's constant row sum; the
    result has A1's spectrum plus A2's spectrum with one copy of c
    removed, and diagonal (diag A1 without c, diag A2).
    """
    C, _ = _glue(A1, A2, tol=tol)
    return C


# ---------------------------------------------------------------------------
# chain of 3x3 blocks
# ---------------------------------------------------------------------------


def _chain(lam1, pairs, gammas, tol: float, level: int = 0):
    """Realize {lam1} + pairs with diagonal ``gammas``; returns (B, bridges, ts).

    Splits the last pair into a 3x3 block whose dominant eigenvalue is
    the bridge c = (lam1 + 2 sum Re of the other pairs) - sum of the
    other gammas, then recurses on the prefix with c occupying the last
    diagonal slot.  Bridges are reported outermost first, glue vectors
    aligned with them.
    """
    m = len(pairs)
    if len(gammas) != 2 * m + 1:
        raise ValueError("diagonal length must be 2 * pairs + 1")
    exact = is_exact(lam1) and all(is_exact(g) for g in gammas)
    scale = max(1.0, to_float(scalar_abs(lam1)))
    if m == 1:
        try:
            return construct_3x3(lam1, pairs[0], gammas, tol=tol), (), ()
        except FeasibilityError as exc:
            raise _at_level(exc, level) from None
    head = lam1
    for z in pairs[:-1]:
        head = head + 2 * re_part(z)
    c = head - sum(gammas[:-3])
    if c < 0:
        raise FeasibilityError(
            f"bridge value {to_float(c)} is negative",
            level=level,
            condition="bridge-negative",
        )
    if c * c < abs2(pairs[-1]) - (0 if exact else tol * scale * scale):
        raise FeasibilityError(
            f"bridge value {to_float(c)} does not dominate its pair",
            level=level,
            condition="bridge-dominance",
        )
    try:
        block = construct_3x3(c, pairs[-1], gammas[-3:], tol=tol)
    except FeasibilityError as exc:
        raise _at_level(exc, level) from None
    prefix, bridges, ts = _chain(
        lam1, pairs[:-1], tuple(gammas[:-3]) + (c,), tol, level + 1
    )
    C, t = _glue(prefix, block, tol=tol)
    return C, (c,) + bridges, (t,) + ts


def _at_level(exc: FeasibilityError, level: int) -> FeasibilityError:
    if exc.level is None:
        return FeasibilityError(
            f"level {level}: {exc}", level=level, condition=exc.condition,
            report=exc.report,
        )
    return exc


def realize_smigoc(spectrum, gammas, tol: float = 1e-9) -> DenseMatrix:
    """Realize a spectrum whose tail is nonreal wide-wedge pairs.

    The diagonal entries are consumed in the order given: the last three
    feed the outermost 3x3 block, and so on inward.  Feasibility can
    depend on that order; this function does not search, it reports the
    failing level honestly (use realize_mixed for planning).
    """
    spec = as_spectrum(spectrum, tol=tol)
    target = _nonneg_target(gammas)
    if target.n != spec.n:
        raise ValueError("diagonal length must match spectrum size")
    if spec.tail_reals:
        raise FeasibilityError(
            "tail contains real values; the pair chain needs conjugate pairs only",
            condition="real-tail",
        )
    cls = classify(spec)
    if any(f == "outside" for f in cls.flags):
        raise FeasibilityError(
            "tail leaves the wide wedge", condition="outside-class"
        )
    if not check_trace(spec, target, tol=tol):
        raise ValueError("trace mismatch: sum(gammas) != sum(spectrum)")
    gs = target.gammas
    if not (spec.exact and target.exact):
        gs = tuple(to_float(g) for g in gs)
        spec = Spectrum([to_float(v) for v in spec.values], tol=tol)
    B, _, _ = _chain(spec.perron, spec.tail_pairs, gs, tol)
    return B


# ---------------------------------------------------------------------------
# the full pipeline with assignment planning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealizationPlan:
    """Record of how a realization was assembled.

    ``assignment`` maps construction slots to positions of the caller's
    diagonal (slot k received gammas[assignment[k]]); ``permutation`` is
    the final similarity permutation that restored the caller's order.
    ``bridges`` lists bridge eigenvalues outermost first, and
    ``glue_vectors`` the left eigenvectors used at the matching joins.
    ``head_part`` is the dominant value plus the F-tail; ``chain_part``
    the nonreal wide-wedge pair representatives.
    """

    tag: SpectrumClass
    head_part: tuple
    chain_part: tuple
    assignment: tuple
    permutation: tuple
    bridges: tuple
    glue_vectors: tuple

    def to_dict(self) -> dict:
        return {
            "class": self.tag.value,
            "head_part": list(self.head_part),
            "chain_part": list(self.chain_part),
            "assignment": list(self.assignment),
            "permutation": list(self.permutation),
            "bridges": list(self.bridges),
            "glue_vectors": [list(t) for t in self.glue_vectors],
        }


def realize_mixed(
    spectrum,
    gammas,
    order: str = "auto",
    seed: Optional[int] = None,
    tol: float = 1e-9,
):
    """Nonnegative realization with prescribed spectrum and diagonal.

    Dispatches on the tail class: all-F goes through the triangular
    template, all nonreal wide-wedge pairs through the 3x3 chain, and
    the mixed case joins an F-block to the chain through a bridge
    eigenvalue c = sum of the head spectrum minus the head diagonal.

    order="keep" consumes diagonal entries exactly in the order given
    (the template/F block first, then the chain) and fails honestly if
    that assignment is infeasible.  order="auto" searches assignments:
    largest entries to the F block first, then identity, then a
    memoized backtracking search.  The output diagonal always matches
    ``gammas`` in the caller's order; the plan records the internal
    assignment and the permutation that restored it.

    Returns (B, RealizationPlan).  The output is certified internally
    (nonnegative, constant row sums, spectrum, diagonal); a
    certification failure raises CertificationError and is a bug, not
    an input problem.
    """
    if order not in ("keep", "auto"):
        raise ValueError(f"unknown order: {order}")
    spec = as_spectrum(spectrum, tol=tol)
    target = _nonneg_target(gammas)
    n = spec.n
    if target.n != n:
        raise ValueError("diagonal length must match spectrum size")
    cls = classify(spec)
    if cls.tag is SpectrumClass.OUTSIDE:
        bad = [z for z, f in zip(spec.tail, cls.flags) if f == "outside"]
        raise FeasibilityError(
            f"tail elements outside the wide wedge: {bad}",
            condition="outside-class",
        )
    if not check_trace(spec, target, tol=tol):
        raise ValueError("trace mismatch: sum(gammas) != sum(spectrum)")
    if not (spec.exact and target.exact):
        spec = Spectrum([to_float(v) for v in spec.values], tol=tol)
        target = DiagonalTarget(
            tuple(to_float(g) for g in target.gammas), mode="nonnegative"
        )
        # reclassify on the float side so routing and flags stay consistent
        cls = classify(spec)

    head_vals, chain_pairs = _split_parts(spec)
    last_error: Optional[FeasibilityError] = None
    for sigma in _assignments(cls.tag, spec, target, order, seed, tol):
        try:
            built, bridges, ts = _attempt(
                spec, cls, target, sigma, head_vals, chain_pairs, tol
            )
        except FeasibilityError as exc:
            last_error = exc
            continue
        perm = _inverse(sigma)
        B = built if perm == tuple(range(n)) else permute_similarity(built, perm)
        plan = RealizationPlan(
            tag=cls.tag,
            head_part=tuple(head_vals),
            chain_part=tuple(chain_pairs),
            assignment=sigma,
            permutation=perm,
            bridges=bridges,
            glue_vectors=ts,
        )
        _self_certify(B, spec, target, tol)
        return B, plan
    if last_error is not None:
        raise FeasibilityError(
            f"no feasible diagonal assignment found (last failure: {last_error})",
            condition=last_error.condition,
            level=last_error.level,
            report=last_error.report,
        )
    raise FeasibilityError("no assignment candidates", condition="planner")


def _split_parts(spec: Spectrum):
    """Head = dominant value + F tail elements; chain = G-F pair reps."""
    head = [spec.perron]
    head.extend(spec.tail_reals)
    chain = []
    for z in spec.tail_pairs:
        if _element_flag(z) == "F":
            head.append(z)
            head.append(conj(z))
        else:
            chain.append(z)
    return tuple(head), tuple(chain)


def _attempt(spec, cls, target, sigma, head_vals, chain_pairs, tol):
    gs = tuple(target.gammas[i] for i in sigma)
    if cls.tag is SpectrumClass.SULEIMANOVA_F:
        return realize_suleimanova(spec, gs, tol=tol), (), ()
    if cls.tag is SpectrumClass.SMIGOC_G:
        return _chain(spec.perron, chain_pairs, gs, tol)
    # mixed: head block with the bridge in its last slot, then the chain
    p = len(head_vals)
    g_head, g_chain = gs[: p - 1], gs[p - 1 :]
    sum_head = head_vals[0]
    for v in head_vals[1:]:
        sum_head = sum_head + re_part(v)
    c = sum_head - sum(g_head)
    exact = spec.exact and target.exact
    if c < 0:
        raise FeasibilityError(
            f"bridge value {to_float(c)} is negative",
            level=0,
            condition="bridge-negative",
        )
    worst = max(to_float(abs2(z)) for z in chain_pairs)
    if to_float(c) * to_float(c) < worst - (0 if exact else tol * spec.scale() ** 2):
        raise FeasibilityError(
            f"bridge value {to_float(c)} does not dominate the chain",
            level=0,
            condition="bridge-dominance",
        )
    head_spec = Spectrum(head_vals, tol=tol)
    A1 = realize_suleimanova(head_spec, tuple(g_head) + (c,), tol=tol)
    A2, bridges, ts = _chain(c, chain_pairs, g_chain, tol, level=1)
    C, t = _glue(A1, A2, tol=tol)
    return C, (c,) + bridges, (t,) + ts


def _inverse(perm: tuple) -> tuple:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def _self_certify(B, spec, target, tol):
    from .certify import certify

    cert = certify(
        B,
        spectrum=spec.values,
        diagonal=target.gammas,
        nonneg=True,
        constant_row_sums=True,
    )
    if not cert.ok:
        raise CertificationError(
            "realization failed post-hoc certification: "
            + ", ".join(k for k, v in cert.checks.items() if not v),
            certificate=cert,
        )


# ---------------------------------------------------------------------------
# assignment planner
# ---------------------------------------------------------------------------


def _assignments(tag, spec, target, order, seed, tol):
    """Yield candidate slot->position assignments, cheapest ideas first."""
    n = target.n
    identity = tuple(range(n))
    if order == "keep":
        yield identity
        return
    if tag is SpectrumClass.SULEIMANOVA_F:
        # any nonnegative assignment works; keep the caller's order
        yield identity
        return
    desc = tuple(
        sorted(range(n), key=lambda i: (-to_float(target.gammas[i]), i))
    )
    yield desc
    if identity != desc:
        yield identity
    yield from _planned_assignments(tag, spec, target, seed, tol, skip={desc, identity})


def _planned_assignments(tag, spec, target, seed, tol, skip):
    head_vals, chain_pairs = _split_parts(spec)
    p = len(head_vals)
    gam = target.gammas
    n = len(gam)
    rng = random.Random(1234567 if seed is None else seed)
    exhaustive = n <= EXHAUSTIVE_LIMIT
    restarts = 1 if exhaustive else PLANNER_RESTARTS
    for _attempt in range(restarts):
        budget = [PLANNER_NODE_BUDGET // restarts]
        seen_states: set = set()
        if tag is SpectrumClass.SMIGOC_G:
            for sigma in _search_chain(
                spec.perron, chain_pairs, tuple(range(n)), gam, tol,
                rng, budget, seen_states, shuffle=not exhaustive,
            ):
                if sigma not in skip:
                    skip.add(sigma)
                    yield sigma
        else:
            # mixed: choose the head sub-multiset first; only its sum matters
            sum_head = head_vals[0]
            for v in head_vals[1:]:
                sum_head = sum_head + re_part(v)
            seen_head: set = set()
            if exhaustive:
                picks = combinations(range(n), p - 1)
            else:
                picks = (
                    tuple(sorted(rng.sample(range(n), p - 1))) for _ in range(5000)
                )
            for head_idx in picks:
                key = tuple(sorted(to_float(gam[i]) for i in head_idx))
                if key in seen_head:
                    continue
                seen_head.add(key)
                c = sum_head - sum(gam[i] for i in head_idx)
                cf = to_float(c)
                if cf < 0 or cf * cf < max(to_float(abs2(z)) for z in chain_pairs):
                    continue
                rest = tuple(i for i in range(n) if i not in set(head_idx))
                for chain_sigma in _search_chain(
                    c, chain_pairs, rest, gam, tol, rng, budget, seen_states,
                    shuffle=not exhaustive,
                ):
                    sigma = tuple(head_idx) + chain_sigma
                    if sigma not in skip:
                        skip.add(sigma)
                        yield sigma
                if budget[0] <= 0:
                    break
        if budget[0] > 0:
            break  # space exhausted, more restarts cannot help


def _search_chain(lam1, pairs, positions, gam, tol, rng, budget, seen, shuffle):
    """DFS over which diagonal values feed which chain level.

    Levels are explored outermost first: the outer block takes three
    free values, every deeper level two (its third slot is the incoming
    bridge).  Feasibility only depends on the chosen multiset per level,
    so states are memoized on (depth, remaining multiset).
    """
    m = len(pairs)
    lam1f = to_float(lam1)
    heads = [lam1]
    for z in pairs[:-1]:
        heads.append(heads[-1] + 2 * re_part(z))
    # heads[j] = lam1 + 2*sum(Re pairs[:j]); bridge below level t uses heads[m-1-t]

    def absq(z):
        return to_float(abs2(z))

    def feasible_entry(g, cap):
        return to_float(gam[g]) <= cap + tol * max(1.0, abs(cap))

    def rec(t, remaining, incoming):
        # t-th split from the outside; pairs[m-1-t] is consumed here
        if budget[0] <= 0:
            return
        budget[0] -= 1
        if t == m - 1:
            # base: {lam1, pairs[0]} with two free values and the incoming bridge
            cap = lam1f
            if incoming is not None and to_float(incoming) > cap + tol:
                return
            if lam1f * lam1f < absq(pairs[0]) - tol:
                return
            if all(feasible_entry(g, cap) for g in remaining):
                yield (tuple(remaining),)
            return
        state = (t, lam1f, tuple(sorted(to_float(gam[g]) for g in remaining)))
        if state in seen:
            return
        take = 3 if t == 0 else 2
        rem_sum = sum(gam[g] for g in remaining)
        head = heads[m - 1 - t]
        found = False
        combos = list(combinations(range(len(remaining)), take))
        if shuffle:
            rng.shuffle(combos)
        seen_local: set = set()
        for combo in combos:
            chosen = tuple(remaining[i] for i in combo)
            key = tuple(sorted(to_float(gam[g]) for g in chosen))
            if key in seen_local:
                continue
            seen_local.add(key)
            c = head - (rem_sum - sum(gam[g] for g in chosen))
            cf = to_float(c)
            if cf < -tol:
                continue
            if cf * cf < absq(pairs[m - 1 - t]) - tol:
                continue
            if incoming is not None and to_float(incoming) > cf + tol:
                continue
            if not all(feasible_entry(g, cf) for g in chosen):
                continue
            rest = tuple(g for g in remaining if g not in set(chosen))
            for deeper in rec(t + 1, rest, c):
                found = True
                yield deeper + (chosen,)
        if not found:
            seen.add(state)

    for groups in rec(0, tuple(positions), None):
        # groups: base pair first, then levels inward-to-outward;
        # chain slots run base (0,1), level pairs, outer triple last
        sigma: list = []
        sigma.extend(groups[0])
        for grp in groups[1:]:
            sigma.extend(grp)
        yield tuple(sigma)
