from fractions import Fraction

from diagforge.certify import certify
from diagforge.matrix import DenseMatrix
from diagforge.nonneg import realize_suleimanova

GOOD = realize_suleimanova([5, -1, -2], (1, 1, 0))  # [[1,2,2],[2,1,2],[3,2,0]]


def test_full_pass():
    cert = certify(
        GOOD,
        spectrum=[5, -1, -2],
        diagonal=(1, 1, 0),
        nonneg=True,
        constant_row_sums=True,
    )
    assert cert.ok and bool(cert)
    assert cert.checks == {
        "spectrum": True,
        "diagonal": True,
        "nonneg": True,
        "constant_row_sums": True,
    }
    assert cert.spectrum_residual < 1e-8
    assert cert.min_entry == 0


def test_only_requested_checks_run():
    cert = certify(GOOD, diagonal=(1, 1, 0))
    assert set(cert.checks) == {"diagonal"}
    assert cert.ok


def test_wrong_spectrum_fails_with_residual():
    cert = certify(GOOD, spectrum=[5, -1, -1])
    assert not cert.ok
    assert cert.checks["spectrum"] is False
    assert cert.spectrum_residual > 0.5


def test_wrong_length_target_is_a_verdict_not_an_error():
    cert = certify(GOOD, spectrum=[5, -1])
    assert not cert.ok
    cert2 = certify(GOOD, diagonal=(1, 1))
    assert not cert2.ok


def test_planted_negative_entry_fails_nonneg():
    rows = [list(r) for r in GOOD.to_float().rows]
    rows[2][2] = -0.01
    cert = certify(DenseMatrix(rows), nonneg=True)
    assert not cert.ok
    assert cert.min_entry == -0.01


def test_tiny_float_noise_is_tolerated():
    rows = [list(r) for r in GOOD.to_float().rows]
    rows[2][2] = -1e-14
    cert = certify(DenseMatrix(rows), nonneg=True)
    assert cert.checks["nonneg"] is True


def test_exact_backend_rejects_any_negative():
    rows = [list(r) for r in GOOD.rows]
    rows[2][2] = Fraction(-1, 10**9)
    cert = certify(DenseMatrix(rows), nonneg=True)
    assert not cert.ok


def test_broken_row_sums_detected():
    rows = [list(r) for r in GOOD.rows]
    rows[0][1] += 1
    cert = certify(DenseMatrix(rows), constant_row_sums=True)
    assert not cert.ok


def test_diagonal_mismatch_detected():
    cert = certify(GOOD, diagonal=(1, 1, 1))
    assert not cert.ok


def test_to_dict_serializable_fields():
    cert = certify(GOOD, spectrum=[5, -1, -2], nonneg=True)
    d = cert.to_dict()
    assert d["ok"] is True
    assert set(d["checks"]) == {"spectrum", "nonneg"}
    assert all(len(pair) == 2 for pair in d["computed_spectrum"])
    assert "thresholds" in d
