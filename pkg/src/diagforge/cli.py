"""Command line interface.

Problems arrive as JSON files; results leave as JSON on stdout or a
file.  Exit codes: 0 success, 1 failed verification verdict, 2 invalid
input, 3 infeasible construction, 4 self-certification failure (the
last one indicates a library bug, not a bad problem).

Scalar encoding in problem files: integers and floats as JSON numbers,
rationals as "p/q" strings, complex values as two-element [re, im]
arrays.  If every value is an integer or rational the whole problem
runs on the exact backend; one float switches everything to floats.
--exact insists on the exact backend and rejects float input; it also
switches output to "p/q" strings instead of floats.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .certify import certify
from .errors import CertificationError, FeasibilityError
from .matrix import DenseMatrix
from .nonneg import Spectrum, classify, realize_mixed
from .scalars import ComplexRational, exact_complex, is_exact, is_real, to_float
from .similarity import similar_with_diagonal


class ProblemError(ValueError):
    """Malformed problem file."""


# ---------------------------------------------------------------------------
# scalar and structure parsing
# ---------------------------------------------------------------------------


def parse_scalar(raw, exact_only: bool):
    if isinstance(raw, bool):
        raise ProblemError("booleans are not numbers")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        if exact_only:
            raise ProblemError(f"float {raw!r} not allowed with --exact")
        return raw
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemError(f"bad rational {raw!r}: {exc}") from None
    if isinstance(raw, list) and len(raw) == 2:
        re_v = parse_scalar(raw[0], exact_only)
        im_v = parse_scalar(raw[1], exact_only)
        if isinstance(re_v, (int, Fraction)) and isinstance(im_v, (int, Fraction)):
            return exact_complex(re_v, im_v)
        return complex(to_float(re_v), to_float(im_v))
    raise ProblemError(f"cannot parse scalar from {raw!r}")


def _coerce_section(values: list) -> list:
    """One float makes the whole section float."""
    if any(isinstance(v, (float, complex)) for v in values):
        out = []
        for v in values:
            f = to_float(v)
            out.append(f if isinstance(f, (float, complex)) else float(f))
        return out
    return values


def parse_vector(raw, name: str, exact_only: bool) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise ProblemError(f"{name!r} must be a non-empty array")
    return tuple(_coerce_section([parse_scalar(v, exact_only) for v in raw]))


def parse_matrix(raw, exact_only: bool) -> DenseMatrix:
    if not isinstance(raw, list) or not raw:
        raise ProblemError("'matrix' must be a non-empty array of rows")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != len(raw):
            raise ProblemError("'matrix' must be square, row-major")
        rows.append([parse_scalar(v, exact_only) for v in row])
    flat = _coerce_section([v for row in rows for v in row])
    n = len(raw)
    return DenseMatrix([flat[i * n : (i + 1) * n] for i in range(n)])


def load_problem(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ProblemError("problem file must be a JSON object")
    return doc


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def emit_scalar(v, exact_out: bool):
    if isinstance(v, ComplexRational):
        return [emit_scalar(v.re, exact_out), emit_scalar(v.im, exact_out)]
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        if exact_out:
            return f"{v.numerator}/{v.denominator}"
        return float(v)
    if isinstance(v, int):
        return v
    return float(v)


def emit_nested(obj, exact_out: bool):
    if isinstance(obj, dict):
        return {k: emit_nested(v, exact_out) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [emit_nested(v, exact_out) for v in obj]
    if isinstance(obj, (int, float, Fraction, complex, ComplexRational)):
        return emit_scalar(obj, exact_out)
    return obj


def emit_matrix(B: DenseMatrix, exact_out: bool):
    return [[emit_scalar(v, exact_out) for v in row] for row in B.rows]


def write_output(doc: dict, path: Optional[str]):
    text = json.dumps(doc, indent=2, allow_nan=False)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _setting(args, doc, key, default):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in doc and doc[key] is not None:
        return doc[key]
    return default


def _require_spectrum(doc, exact_only) -> tuple:
    if "spectrum" not in doc:
        raise ProblemError("'spectrum' is required for this command")
    return parse_vector(doc["spectrum"], "spectrum", exact_only)


def cmd_classify(args) -> int:
    doc = load_problem(args.input)
    values = _require_spectrum(doc, args.exact)
    tol = float(_setting(args, doc, "tol", doc.get("tolerance", 1e-9)) or 1e-9)
    spec = Spectrum(values, tol=tol)
    cls = classify(spec)
    exact_out = bool(args.exact)
    write_output(
        {
            "status": "ok",
            "class": cls.tag.value,
            "flags": list(cls.flags),
            "perron": emit_scalar(spec.perron, exact_out),
            "tail": [emit_scalar(z, exact_out) for z in spec.tail],
        },
        args.output,
    )
    return 0


def cmd_realize(args) -> int:
    doc = load_problem(args.input)
    mode = _setting(args, doc, "mode", "nonnegative")
    if mode not in ("nonnegative", "general"):
        raise ProblemError(f"unknown mode: {mode!r}")
    tol = float(_setting(args, doc, "tol", doc.get("tolerance", 1e-9)) or 1e-9)
    if "diagonal" not in doc:
        raise ProblemError("'diagonal' is required for realize")
    gammas = parse_vector(doc["diagonal"], "diagonal", args.exact)
    exact_out = bool(args.exact)

    if mode == "nonnegative":
        if "matrix" in doc:
            raise ProblemError("nonnegative mode takes 'spectrum', not 'matrix'")
        values = _require_spectrum(doc, args.exact)
        order = _setting(args, doc, "order", "auto")
        seed = _setting(args, doc, "seed", None)
        B, plan = realize_mixed(
            values, gammas, order=order, seed=None if seed is None else int(seed),
            tol=tol,
        )
        cert = certify(
            B, spectrum=values, diagonal=gammas, nonneg=True, constant_row_sums=True
        )
        out = {
            "status": "ok",
            "mode": mode,
            "matrix": emit_matrix(B, exact_out),
            "diagonal": [emit_scalar(g, exact_out) for g in gammas],
            "plan": emit_nested(plan.to_dict(), exact_out),
            "certificate": cert.to_dict(),
        }
    else:
        if "spectrum" in doc:
            raise ProblemError("general mode takes 'matrix', not 'spectrum'")
        if "matrix" not in doc:
            raise ProblemError("'matrix' is required in general mode")
        A = parse_matrix(doc["matrix"], args.exact)
        B, trace = similar_with_diagonal(A, gammas, tol=tol)
        cert = certify(B, spectrum=None, diagonal=gammas)
        out = {
            "status": "ok",
            "mode": mode,
            "matrix": emit_matrix(B, exact_out),
            "diagonal": [emit_scalar(g, exact_out) for g in gammas],
            "trace": [
                {"op": s.op, "data": emit_nested(s.data, exact_out)} for s in trace
            ],
            "certificate": cert.to_dict(),
        }
    if not cert.ok:
        raise CertificationError(
            "output failed certification", certificate=cert
        )
    write_output(out, args.output)
    return 0


def cmd_similar(args) -> int:
    doc = load_problem(args.input)
    tol = float(_setting(args, doc, "tol", doc.get("tolerance", 1e-9)) or 1e-9)
    if "matrix" not in doc:
        raise ProblemError("'matrix' is required for similar")
    if "diagonal" not in doc:
        raise ProblemError("'diagonal' is required for similar")
    A = parse_matrix(doc["matrix"], args.exact)
    gammas = parse_vector(doc["diagonal"], "diagonal", args.exact)
    B, trace = similar_with_diagonal(A, gammas, tol=tol)
    cert = certify(B, diagonal=gammas)
    exact_out = bool(args.exact)
    out = {
        "status": "ok",
        "matrix": emit_matrix(B, exact_out),
        "diagonal": [emit_scalar(g, exact_out) for g in gammas],
        "trace": [
            {"op": s.op, "data": emit_nested(s.data, exact_out)} for s in trace
        ],
        "certificate": cert.to_dict(),
    }
    if not cert.ok:
        raise CertificationError("output failed certification", certificate=cert)
    write_output(out, args.output)
    return 0


def cmd_verify(args) -> int:
    doc = load_problem(args.input)
    if "matrix" not in doc:
        raise ProblemError("'matrix' is required for verify")
    A = parse_matrix(doc["matrix"], args.exact)
    spectrum = (
        parse_vector(doc["spectrum"], "spectrum", args.exact)
        if "spectrum" in doc
        else None
    )
    diagonal = (
        parse_vector(doc["diagonal"], "diagonal", args.exact)
        if "diagonal" in doc
        else None
    )
    mode = _setting(args, doc, "mode", "general")
    nonneg = bool(doc.get("nonneg", mode == "nonnegative"))
    cs = bool(doc.get("constant_row_sums", False))
    if spectrum is None and diagonal is None and not nonneg and not cs:
        raise ProblemError("verify needs at least one target or flag to check")
    cert = certify(A, spectrum=spectrum, diagonal=diagonal, nonneg=nonneg,
                   constant_row_sums=cs)
    write_output(
        {"status": "pass" if cert.ok else "fail", "certificate": cert.to_dict()},
        args.output,
    )
    return 0 if cert.ok else 1


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagforge",
        description="construct and certify matrices with prescribed diagonals",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="problem file (JSON)")
    common.add_argument("--output", default=None, help="write the result here")
    common.add_argument("--tol", type=float, default=None, dest="tol",
                        help="numerical tolerance (default 1e-9)")
    common.add_argument("--exact", action="store_true",
                        help="require exact input; emit p/q strings")

    sub.add_parser("classify", parents=[common],
                   help="classify a spectrum's tail").set_defaults(fn=cmd_classify)

    realize = sub.add_parser("realize", parents=[common],
                             help="build a matrix with the prescribed diagonal")
    realize.add_argument("--order", choices=("keep", "auto"), default=None,
                         help="diagonal assignment policy (default auto)")
    realize.add_argument("--seed", type=int, default=None,
                         help="seed for the assignment search")
    realize.set_defaults(fn=cmd_realize)

    sub.add_parser("similar", parents=[common],
                   help="rewrite a matrix's diagonal by similarity"
                   ).set_defaults(fn=cmd_similar)

    sub.add_parser("verify", parents=[common],
                   help="certify a matrix against targets"
                   ).set_defaults(fn=cmd_verify)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FeasibilityError as exc:
        write_output(
            {
                "status": "infeasible",
                "reason": str(exc),
                "condition": exc.condition,
                "level": exc.level,
            },
            args.output,
        )
        return 3
    except CertificationError as exc:
        doc = {"status": "certification-failure", "error": str(exc)}
        if exc.certificate is not None:
            doc["certificate"] = exc.certificate.to_dict()
        write_output(doc, args.output)
        return 4
    except (ProblemError, ValueError, TypeError, KeyError) as exc:
        write_output({"status": "error", "error": str(exc)}, args.output)
        return 2


if __name__ == "__main__":
    sys.exit(main())
