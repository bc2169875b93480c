"""Dense eigenvalue engine used to certify every construction in the package.

Real exact-backend matrices go through the exact characteristic
polynomial (Faddeev-LeVerrier over rationals) split into square-free
factors, so the numeric root solver only ever sees simple roots and a
multiple eigenvalue costs no accuracy.  Float matrices follow the
classical dense recipe: balance, reduce to upper Hessenberg form with
Householder reflections, then run a shifted QR iteration (complex single
shift with Wilkinson shifts and occasional exceptional shifts).  A
second, independent route solves the characteristic polynomial with
Durand-Kerner simultaneous iteration; the routes cross-check each other
in the test suite.

Eigenvectors come from inverse iteration.  For a constant-row-sum matrix
and its row-sum eigenvalue the right eigenvector is returned as the exact
all-ones vector.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceError
from .matrix import DenseMatrix, is_constant_row_sum
from .scalars import scalar_abs, to_float

_EPS = float(np.finfo(float).eps)

# Iteration caps for the engine: total QR sweeps scale with n, inverse
# iteration is capped per call.
QR_SWEEPS_PER_EIGENVALUE = 100
INVERSE_ITERATION_CAP = 50


@dataclass(frozen=True)
class SpectrumEstimate:
    """Computed eigenvalue multiset plus a backward-error style residual."""

    values: tuple
    residual: float

    @property
    def n(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EigenPair:
    """An eigenvalue with one eigenvector and the achieved residual.

    ``side`` is "right" (A v = lam v) or "left" (t^T A = lam t^T).  The
    vector has unit max-norm unless a caller renormalizes it.
    """

    value: object
    vector: tuple
    side: str
    residual: float


def _sort_key(z: complex):
    return (-abs(z), -z.real, -z.imag)


# ---------------------------------------------------------------------------
# balance / Hessenberg / QR
# ---------------------------------------------------------------------------


def _balance(A: np.ndarray, max_passes: int = 50) -> np.ndarray:
    """Osborne balancing with radix-2 scale factors (exact similarity)."""
    B = A.copy()
    n = B.shape[0]
    for _ in range(max_passes):
        done = True
        for i in range(n):
            c = float(np.sum(np.abs(B[:, i]))) - abs(B[i, i])
            r = float(np.sum(np.abs(B[i, :]))) - abs(B[i, i])
            if c == 0.0 or r == 0.0:
                continue
            f = 1.0
            while c < r / 2.0:
                c *= 2.0
                r /= 2.0
                f *= 2.0
            while c > r * 2.0:
                c /= 2.0
                r *= 2.0
                f /= 2.0
            if f != 1.0:
                B[:, i] *= f
                B[i, :] /= f
                done = False
        if done:
            break
    return B


def _hessenberg(A: np.ndarray) -> np.ndarray:
    H = A.astype(complex).copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1 :, k]
        xnorm = float(np.linalg.norm(x))
        if xnorm == 0.0:
            continue
        a0 = x[0]
        phase = a0 / abs(a0) if a0 != 0 else 1.0
        alpha = -phase * xnorm
        v = x.copy()
        v[0] -= alpha
        vnorm = float(np.linalg.norm(v))
        if vnorm <= _EPS * xnorm:
            H[k + 2 :, k] = 0.0
            continue
        v = v / vnorm
        # P = I - 2 v v^H, applied as a similarity on the trailing block.
        H[k + 1 :, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, k:])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        H[k + 1, k] = alpha
        H[k + 2 :, k] = 0.0
    return H


def _eig2(a, b, c, d):
    t = 0.5 * (a + d)
    disc = cmath.sqrt(0.25 * (a - d) * (a - d) + b * c)
    return t + disc, t - disc


def _wilkinson_shift(a, b, c, d):
    lam1, lam2 = _eig2(a, b, c, d)
    return lam1 if abs(lam1 - d) <= abs(lam2 - d) else lam2


def _qr_values(H: np.ndarray):
    """Shifted QR on an upper Hessenberg matrix; returns (values, residual).

    Deflation is machine-precision relative to the neighboring diagonal
    so that dropping a subdiagonal entry never perturbs the matrix by
    more than roundoff; a looser threshold would split multiple
    eigenvalues by its square root.
    """
    n = H.shape[0]
    H = H.copy()
    anorm = max(float(np.max(np.sum(np.abs(H), axis=1))), 1e-300)

    def negligible(i: int) -> bool:
        s = abs(H[i - 1, i - 1]) + abs(H[i, i])
        thresh = 8.0 * _EPS * (s if s > 0.0 else anorm)
        return abs(H[i, i - 1]) <= thresh

    eigs: list = []
    neglected = 0.0
    hi = n - 1
    sweeps = 0
    stuck = 0
    cap = QR_SWEEPS_PER_EIGENVALUE * n
    while hi >= 0:
        if hi == 0:
            eigs.append(complex(H[0, 0]))
            hi -= 1
            continue
        if negligible(hi):
            neglected = max(neglected, abs(H[hi, hi - 1]))
            H[hi, hi - 1] = 0.0
            eigs.append(complex(H[hi, hi]))
            hi -= 1
            stuck = 0
            continue
        lo = hi - 1
        while lo > 0 and not negligible(lo):
            lo -= 1
        if lo > 0:
            neglected = max(neglected, abs(H[lo, lo - 1]))
            H[lo, lo - 1] = 0.0
        if hi - lo == 1:
            lam1, lam2 = _eig2(H[lo, lo], H[lo, hi], H[hi, lo], H[hi, hi])
            eigs.extend([complex(lam1), complex(lam2)])
            hi = lo - 1
            stuck = 0
            continue
        sweeps += 1
        stuck += 1
        if sweeps > cap:
            raise ConvergenceError(
                f"QR iteration did not converge within {cap} sweeps",
                partial=eigs,
            )
        if stuck % 12 == 0:
            # deterministic exceptional shift to break stagnation
            mu = H[hi, hi] + (0.75 + 0.3j) * abs(H[hi, hi - 1])
        else:
            mu = _wilkinson_shift(
                H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi]
            )
        _shifted_qr_sweep(H, lo, hi, mu)
    values = tuple(sorted(eigs, key=_sort_key))
    return values, neglected


def _shifted_qr_sweep(H: np.ndarray, lo: int, hi: int, mu: complex) -> None:
    """One explicit-shift QR step via Givens rotations on H[lo..hi]."""
    m = hi - lo + 1
    B = H[lo : hi + 1, lo : hi + 1]
    B[np.diag_indices(m)] -= mu
    rots = []
    for k in range(m - 1):
        a, b = B[k, k], B[k + 1, k]
        r = np.hypot(abs(a), abs(b))
        if r == 0.0:
            c, s = 1.0 + 0.0j, 0.0 + 0.0j
        else:
            c, s = a / r, b / r
        rots.append((c, s))
        rowk = B[k, k:].copy()
        rowk1 = B[k + 1, k:].copy()
        B[k, k:] = np.conj(c) * rowk + np.conj(s) * rowk1
        B[k + 1, k:] = -s * rowk + c * rowk1
        B[k + 1, k] = 0.0
    for k in range(m - 1):
        c, s = rots[k]
        colk = B[: k + 2, k].copy()
        colk1 = B[: k + 2, k + 1].copy()
        B[: k + 2, k] = c * colk + s * colk1
        B[: k + 2, k + 1] = -np.conj(s) * colk + np.conj(c) * colk1
    B[np.diag_indices(m)] += mu


def _symmetrize_conjugates(values: Sequence[complex], scale: float, tol: float):
    """Pair computed eigenvalues of a real matrix into exact conjugates.

    Near-real values are flattened onto the axis; the rest are paired
    greedily with the nearest conjugate partner and averaged.  Returns the
    adjusted values and the largest adjustment made.
    """
    real_thresh = max(tol * scale, 64.0 * _EPS * scale)
    out: list = []
    pool: list = []
    adjust = 0.0
    for z in values:
        if abs(z.imag) <= real_thresh:
            adjust = max(adjust, abs(z.imag))
            out.append(complex(z.real, 0.0))
        else:
            pool.append(z)
    pool.sort(key=lambda z: -abs(z.imag))
    while pool:
        z = pool.pop(0)
        if not pool:
            # parity fallback: misclassified near-real straggler
            adjust = max(adjust, abs(z.imag))
            out.append(complex(z.real, 0.0))
            break
        target = z.conjugate()
        j = min(range(len(pool)), key=lambda i: abs(pool[i] - target))
        w = pool[j]
        # the nearest candidate must actually sit near the mirror image;
        # two distinct real eigenvalues with opposite-sign imaginary noise
        # would otherwise be averaged into a fictitious pair
        if abs(w - target) > max(4.0 * abs(z.imag), real_thresh):
            adjust = max(adjust, abs(z.imag))
            out.append(complex(z.real, 0.0))
            continue
        pool.pop(j)
        x = 0.5 * (z.real + w.real)
        y = 0.5 * (abs(z.imag) + abs(w.imag))
        adjust = max(adjust, abs(z - complex(x, y if z.imag > 0 else -y)))
        adjust = max(adjust, abs(w - complex(x, y if w.imag > 0 else -y)))
        out.extend([complex(x, y), complex(x, -y)])
    return out, adjust


def eigenvalues(A: DenseMatrix, tol: float = 1e-10) -> SpectrumEstimate:
    """All eigenvalues of A with a backward-error style residual.

    Real exact-backend input goes through the exact characteristic
    polynomial and its square-free factorization, so multiple eigenvalues
    keep full accuracy (the numeric solver only ever sees simple roots).
    Float input runs balanced Hessenberg + shifted QR; the residual
    bounds the subdiagonal mass dropped during deflation plus any
    conjugate-symmetrization adjustment, both of which are backward
    perturbations of the balanced matrix.
    """
    real_input = A.is_real()
    n = A.n
    if A.exact and real_input and n >= 2:
        vals = _exact_char_roots(char_poly(A))
        scale = max(1.0, to_float(A.max_abs()))
        vals, adjust = _symmetrize_conjugates(vals, scale, tol)
        return SpectrumEstimate(tuple(sorted(vals, key=_sort_key)), adjust)
    M = A.to_numpy()
    scale = max(1.0, float(np.max(np.abs(M))) if M.size else 1.0)
    if n == 1:
        return SpectrumEstimate((complex(M[0, 0]),), 0.0)
    if n == 2:
        vals = _eig2(M[0, 0], M[0, 1], M[1, 0], M[1, 1])
        vals = [complex(v) for v in vals]
        residual = 0.0
    else:
        B = _balance(M.astype(complex))
        H = _hessenberg(B)
        vals, residual = _qr_values(H)
        vals = list(vals)
    if real_input:
        vals, adjust = _symmetrize_conjugates(vals, scale, tol)
        residual = max(residual, adjust)
    return SpectrumEstimate(tuple(sorted(vals, key=_sort_key)), residual)


# ---------------------------------------------------------------------------
# characteristic polynomial route (independent cross-check)
# ---------------------------------------------------------------------------


def char_poly(A: DenseMatrix) -> list:
    """Monic characteristic polynomial coefficients [1, c1, ..., cn].

    Faddeev-LeVerrier recurrence; exact (Fraction arithmetic) on the
    exact backend, floating point otherwise.
    """
    n = A.n
    one = Fraction(1) if A.exact else 1.0
    coeffs = [one]
    M = DenseMatrix.identity(n, exact=A.exact)
    for k in range(1, n + 1):
        AM = A @ M
        ck = -AM.trace() / k if A.exact else -AM.trace() / float(k)
        coeffs.append(ck)
        if k < n:
            M = AM + DenseMatrix.identity(n, exact=A.exact).scale(ck)
    return coeffs


def poly_roots(coeffs: Sequence, tol: float = 1e-12, max_iter: int = 500) -> list:
    """All roots of a polynomial by Durand-Kerner simultaneous iteration.

    ``coeffs`` are highest-degree first; the polynomial is normalized to
    monic internally.  Deterministic scaled roots-of-unity style starts.
    """
    cs = [complex(to_float(c)) for c in coeffs]
    while cs and cs[0] == 0:
        cs.pop(0)
    if not cs:
        raise ValueError("zero polynomial")
    lead = cs[0]
    cs = [c / lead for c in cs]
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-cs[1]]
    radius = 1.0 + max(abs(c) for c in cs[1:])
    seed = 0.4 + 0.9j
    z = [radius * seed**k for k in range(deg)]

    def horner(x: complex) -> complex:
        acc = cs[0]
        for c in cs[1:]:
            acc = acc * x + c
        return acc

    best = float("inf")
    stall = 0
    for _ in range(max_iter):
        max_step = 0.0
        for k in range(deg):
            denom = 1.0 + 0.0j
            for j in range(deg):
                if j != k:
                    denom *= z[k] - z[j]
            if denom == 0:
                z[k] += (1e-6 + 1e-6j) * (1.0 + abs(z[k]))
                max_step = 1.0
                continue
            dz = horner(z[k]) / denom
            z[k] -= dz
            max_step = max(max_step, abs(dz) / max(1.0, abs(z[k])))
        if max_step <= tol:
            return z
        if max_step < 0.7 * best:
            best = max_step
            stall = 0
        else:
            stall += 1
            # a root cluster (multiple root) plateaus at its attainable
            # accuracy; once small steps stop shrinking, more sweeps only
            # rotate the cluster members around the true value
            if stall >= 25 and max_step <= 1e-3:
                return z
    raise ConvergenceError(
        f"Durand-Kerner did not converge within {max_iter} iterations",
        partial=z,
    )


# ---------------------------------------------------------------------------
# exact polynomial algebra (square-free factorization for the exact route)
# ---------------------------------------------------------------------------


def _poly_trim(p: list) -> list:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_monic(p: Sequence) -> list:
    p = _poly_trim(list(p))
    if p[0] == 0:
        raise ValueError("zero polynomial")
    return [c / p[0] for c in p]


def _poly_deriv(p: Sequence) -> list:
    n = len(p) - 1
    if n <= 0:
        return [Fraction(0)]
    return [c * (n - k) for k, c in enumerate(p[:-1])]


def _poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    az = [Fraction(0)] * (n - len(a)) + list(a)
    bz = [Fraction(0)] * (n - len(b)) + list(b)
    return _poly_trim([x - y for x, y in zip(az, bz)])


def _poly_divmod(a: Sequence, b: Sequence):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(b) == 1 and b[0] == 0:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db or (len(a) == 1 and a[0] == 0):
        return [Fraction(0)], list(a)
    r = list(a)
    q = [Fraction(0)] * (da - db + 1)
    for k in range(da - db + 1):
        if r[k] == 0:
            continue
        coef = r[k] / b[0]
        q[k] = coef
        for j in range(db + 1):
            r[k + j] -= coef * b[j]
    rem = r[da - db + 1 :]
    return _poly_trim(q), (_poly_trim(rem) if rem else [Fraction(0)])


def _poly_gcd(a: Sequence, b: Sequence) -> list:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if len(a) == 1 and a[0] == 0:
        return a
    return _poly_monic(a)


def _squarefree_factors(p: Sequence) -> list:
    """Yun decomposition of an exact polynomial.

    Returns [(factor, multiplicity)] with monic square-free pairwise
    coprime factors; every root of p appears in exactly one factor, and
    the multiplicity-weighted factor degrees sum to deg p.
    """
    p = _poly_monic(p)
    if len(p) <= 2:
        return [(p, 1)]
    dp = _poly_deriv(p)
    g = _poly_gcd(p, dp)
    if len(g) == 1:
        return [(p, 1)]
    out = []
    w, _ = _poly_divmod(p, g)
    y, _ = _poly_divmod(dp, g)
    i = 1
    while len(w) > 1:
        z = _poly_sub(y, _poly_deriv(w))
        gi = _poly_gcd(w, z)
        if len(gi) > 1:
            out.append((gi, i))
        w, _ = _poly_divmod(w, gi)
        y, _ = _poly_divmod(z, gi)
        i += 1
    return out


def _quadratic_roots(b: Fraction, c: Fraction) -> list:
    """Roots of t^2 + bt + c with an exact discriminant sign test."""
    disc = b * b - 4 * c
    bf = to_float(b)
    if disc >= 0:
        s = math.sqrt(to_float(disc))
        r1 = (-bf - s) / 2.0 if bf >= 0 else (-bf + s) / 2.0
        if r1 == 0.0:
            return [complex(0.0), complex(-bf)]
        return [complex(r1), complex(to_float(c) / r1)]
    s = math.sqrt(to_float(-disc)) / 2.0
    return [complex(-bf / 2.0, s), complex(-bf / 2.0, -s)]


def _newton_polish(f: Sequence, z: complex, rounds: int = 3) -> complex:
    fs = [to_float(c) for c in f]
    deg = len(fs) - 1
    dfs = [c * (deg - k) for k, c in enumerate(fs[:-1])]
    for _ in range(rounds):
        fv = 0.0 + 0.0j
        for c in fs:
            fv = fv * z + c
        dv = 0.0 + 0.0j
        for c in dfs:
            dv = dv * z + c
        if dv == 0:
            break
        step = fv / dv
        z = z - step
        if abs(step) <= 4.0 * _EPS * max(1.0, abs(z)):
            break
    return z


def _exact_char_roots(coeffs: Sequence) -> list:
    """Roots of an exact real polynomial as complex floats, with multiplicity.

    Splitting into square-free factors first means the numeric solver
    only ever sees simple roots; a multiple eigenvalue is solved once at
    full accuracy and then repeated, instead of being smeared into a
    cluster of half-precision values.
    """
    out: list = []
    for f, mult in _squarefree_factors([Fraction(c) for c in coeffs]):
        deg = len(f) - 1
        if deg == 0:
            continue
        if deg == 1:
            roots = [complex(-to_float(f[1]))]
        elif deg == 2:
            roots = _quadratic_roots(f[1], f[2])
        else:
            roots = [_newton_polish(f, z) for z in poly_roots(f, tol=1e-13)]
        for r in roots:
            out.extend([r] * mult)
    return out


def eigenvalues_charpoly(A: DenseMatrix, tol: float = 1e-12) -> SpectrumEstimate:
    """Eigenvalues via the characteristic polynomial route.

    Independent of the QR path; intended as a cross-check oracle for
    moderate sizes (roughly n <= 8, where root conditioning is benign).
    """
    roots = poly_roots(char_poly(A), tol=tol)
    scale = max(1.0, A.max_abs())
    residual = 0.0
    if A.is_real():
        roots, residual = _symmetrize_conjugates(roots, scale, tol=1e-8)
    return SpectrumEstimate(tuple(sorted(roots, key=_sort_key)), residual)


# ---------------------------------------------------------------------------
# eigenvectors
# ---------------------------------------------------------------------------


def _project_out(y: np.ndarray, avoid: list) -> np.ndarray:
    for w in avoid:
        y = y - (w.conj() @ y) / (w.conj() @ w) * w
    return y


def _inverse_iteration(M: np.ndarray, lam: complex, tol: float, avoid: list):
    n = M.shape[0]
    scale = max(1.0, float(np.max(np.abs(M))))
    rng = np.random.default_rng(987654321)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if avoid:
        x = _project_out(x, avoid)
    x = x / np.linalg.norm(x)
    jitter = 0.0
    eye = np.eye(n, dtype=complex)
    for _ in range(INVERSE_ITERATION_CAP):
        shift = lam + jitter
        B = M - shift * eye
        try:
            y = np.linalg.solve(B, x)
        except np.linalg.LinAlgError:
            jitter = (jitter + _EPS * scale) * 4.0 + _EPS * scale * 1j
            continue
        if not np.all(np.isfinite(y)):
            jitter = (jitter + _EPS * scale) * 4.0 + _EPS * scale * 1j
            continue
        if avoid:
            y = _project_out(y, avoid)
        ynorm = float(np.linalg.norm(y))
        if ynorm == 0.0:
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            x = x / np.linalg.norm(x)
            continue
        x = y / ynorm
        residual = float(np.max(np.abs(M @ x - lam * x)))
        if residual <= tol * scale:
            return x, residual
    raise ConvergenceError(
        f"inverse iteration stalled at eigenvalue {lam} "
        f"(defective direction or bad shift)"
    )


def _finish_vector(M: np.ndarray, x: np.ndarray, lam: complex, normalize: str):
    idx = int(np.argmax(np.abs(x)))
    x = x / x[idx]
    if np.max(np.abs(x.imag)) <= 64.0 * _EPS * float(np.max(np.abs(x))):
        x = x.real.astype(complex)
    if normalize == "sum1":
        s = complex(np.sum(x))
        if abs(s) <= 1e-12 * len(x):
            raise ValueError("eigenvector entries sum to zero; cannot normalize")
        x = x / s
    residual = float(np.max(np.abs(M @ x - lam * x))) / max(
        1.0, float(np.max(np.abs(x)))
    )
    vec = tuple(complex(v) if v.imag != 0 else float(v.real) for v in x)
    return vec, residual


def right_eigenvector(
    A: DenseMatrix,
    lam,
    tol: float = 1e-9,
    avoid: Sequence[Sequence] = (),
    normalize: str = "max",
) -> EigenPair:
    """One right eigenvector for ``lam`` by inverse iteration.

    For a constant-row-sum matrix with lam equal to the common row sum,
    the exact all-ones vector is returned directly.
    """
    lamf = complex(to_float(lam))
    scale = max(1.0, A.max_abs())
    if not avoid:
        alpha = is_constant_row_sum(A)
        if alpha is not None and abs(complex(to_float(alpha)) - lamf) <= tol * scale:
            one = Fraction(1) if A.exact else 1.0
            vec = (one,) * A.n
            residual = float(abs(complex(to_float(alpha)) - lamf))
            if normalize == "sum1":
                vec = tuple(v / A.n for v in vec)
            return EigenPair(lam, vec, "right", residual)
    M = A.to_numpy().astype(complex)
    avoid_np = [np.array([complex(to_float(v)) for v in w]) for w in avoid]
    x, _ = _inverse_iteration(M, lamf, tol, avoid_np)
    vec, residual = _finish_vector(M, x, lamf, normalize)
    return EigenPair(lam, vec, "right", residual)


def left_eigenvector(
    A: DenseMatrix,
    lam,
    tol: float = 1e-9,
    avoid: Sequence[Sequence] = (),
    normalize: str = "max",
) -> EigenPair:
    """One left eigenvector (t^T A = lam t^T) by inverse iteration on A^T."""
    lamf = complex(to_float(lam))
    M = A.transpose().to_numpy().astype(complex)
    avoid_np = [np.array([complex(to_float(v)) for v in w]) for w in avoid]
    x, _ = _inverse_iteration(M, lamf, tol, avoid_np)
    vec, residual = _finish_vector(M, x, lamf, normalize)
    return EigenPair(lam, vec, "left", residual)


def all_nonzero_eigenvector(
    A: DenseMatrix, zero_tol: float = 1e-8, tol: float = 1e-9
) -> Optional[EigenPair]:
    """Scan eigenvalues (largest modulus first) for an eigenvector with no
    zero entries.

    An entry counts as nonzero when its modulus exceeds ``zero_tol`` times
    the vector's max-norm.  Returns None when every eigenvalue is
    exhausted; raises for a scalar matrix (every vector is an eigenvector
    and the search is meaningless).
    """
    scale = max(1.0, A.max_abs())
    if A.is_scalar_matrix(tol=1e-12 * scale):
        raise ValueError("scalar matrix: eigenvector search is degenerate")
    est = eigenvalues(A)
    groups: list[list[complex]] = []
    for lam in est.values:
        if groups and abs(lam - groups[-1][0]) <= 1e-7 * scale:
            groups[-1].append(lam)
        else:
            groups.append([lam])
    for group in groups:
        found: list[tuple] = []
        for _ in range(len(group)):
            try:
                pair = right_eigenvector(A, group[0], tol=tol, avoid=found)
            except (ConvergenceError, ValueError):
                break
            found.append(pair.vector)
            mags = [scalar_abs(v) for v in pair.vector]
            if min(mags) > zero_tol * max(mags):
                return pair
    return None


# ---------------------------------------------------------------------------
# multiset matching
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchResult:
    """Greedy minimal-distance pairing between two equal-size multisets."""

    pairs: tuple
    max_distance: float


def match_multisets(computed: Sequence, target: Sequence) -> MatchResult:
    """Pair each computed value with a target value, closest first.

    Both sequences are interpreted as complex multisets and must have the
    same length.  Returns the pairing (index_computed, index_target,
    distance) and the largest matched distance.
    """
    a = [complex(to_float(z)) for z in computed]
    b = [complex(to_float(z)) for z in target]
    if len(a) != len(b):
        raise ValueError("multiset size mismatch")
    left = set(range(len(a)))
    right = set(range(len(b)))
    pairs = []
    worst = 0.0
    while left:
        i, j, d = min(
            ((i, j, abs(a[i] - b[j])) for i in left for j in right),
            key=lambda t: t[2],
        )
        pairs.append((i, j, d))
        worst = max(worst, d)
        left.remove(i)
        right.remove(j)
    return MatchResult(tuple(pairs), worst)
