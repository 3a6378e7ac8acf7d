"""Command-line front end.

All subcommands write machine-readable output to stdout (JSON by default,
CSV with ``--format csv``) and diagnostics to stderr.  Exit codes: 0 on
success, 2 on validation errors (including unknown flags and malformed
labels), 3 on numerical-tolerance failures.  k and l are parsed as exact
fractions ("3/2"), never as floats.  Output is byte-deterministic for fixed
inputs: ordering is fixed and floats are printed with 17 significant digits.

The environment variable QUADALG_MAX_DIM (default 4096) caps every
truncation dimension.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from fractions import Fraction

import numpy as np

from . import coherent, defosc, diffreal, fock3, measures, reps, spectrum
from .errors import InvalidLabelError, NumericalToleranceError
from .output import json_dumps, write_csv

DEFAULT_MAX_DIM = 4096


def _max_dim() -> int:
    raw = os.environ.get("QUADALG_MAX_DIM", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_DIM
    except ValueError:
        raise InvalidLabelError(f"QUADALG_MAX_DIM must be an integer, got {raw!r}")


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact fraction like '3/2', got {text!r}")


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex number like '1+2j', got {text!r}")


def _cutoffs(text: str) -> tuple[int, ...]:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected cutoffs like '8' or '8,8,8', got {text!r}")
    if not parts or any(p < 1 for p in parts):
        raise argparse.ArgumentTypeError("cutoffs must be positive")
    return parts


def _check_dim(dim: int) -> int:
    cap = _max_dim()
    if dim > cap:
        raise InvalidLabelError(f"dimension {dim} exceeds QUADALG_MAX_DIM = {cap}")
    if dim < 1:
        raise InvalidLabelError("dimension must be >= 1")
    return dim


def _label(args) -> reps.AlgebraLabel:
    if args.k is None or args.l is None:
        raise InvalidLabelError("--k and --l are required for this sector")
    return reps.AlgebraLabel(args.k, args.l, args.sector)


def _build_rep(args) -> reps.Representation:
    sector = args.sector
    if sector == "su2":
        if args.j is None:
            raise InvalidLabelError("--j is required for sector su2")
        return reps.su2_rep(args.j)
    if sector == "su11":
        if args.k is None:
            raise InvalidLabelError("--k is required for sector su11")
        return reps.su11_rep(args.k, _check_dim(args.dim or 8))
    label = _label(args)
    if sector == "compact":
        _check_dim(label.dim)
        return reps.compact_rep(label)
    return reps.noncompact_rep(label, _check_dim(args.dim or 16))


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (stdout text, exit code)


def _cmd_rep(args):
    rep = _build_rep(args)
    if args.format == "json":
        return json_dumps(reps.rep_to_dict(rep)) + "\n", 0
    buf = io.StringIO()
    raises = [rep.qp[n + 1, n] for n in range(rep.dim - 1)] + [0.0]
    rows = [(n, float(rep.q0[n, n]), raises[n]) for n in range(rep.dim)]
    write_csv(buf, ("n", "q0", "raise_to_next"), rows)
    return buf.getvalue(), 0


def _cmd_casimir(args):
    rep = _build_rep(args)
    report = reps.casimir_value(rep)
    struct = reps.structure_poly(rep)
    g = reps.casimir_poly(rep)
    doc = reps.rep_to_dict(rep, include_casimir=False)
    head = {k: doc[k] for k in doc if k in ("sector", "j", "k", "l", "dim")}
    head["structure_coeffs"] = [str(c) for c in struct.coeffs]
    head["casimir_poly_coeffs"] = [str(c) for c in g.poly.coeffs]
    head["convention"] = report.convention_note
    head["value"] = report.value
    head["max_deviation"] = report.max_deviation
    head["exact"] = str(report.exact_value)
    head["reference"] = str(report.reference_value)
    head["matches_reference"] = report.matches_reference
    if args.format == "json":
        return json_dumps(head) + "\n", 0
    buf = io.StringIO()
    write_csv(buf, ("field", "value"), [(k, v if not isinstance(v, list) else ";".join(v))
                                        for k, v in head.items()])
    return buf.getvalue(), 0


def _cmd_verify(args):
    cuts = args.cutoffs
    modes = 2 if args.sector in ("su2", "su11") else 3
    if len(cuts) == 1:
        cuts = cuts * modes
    if len(cuts) != modes:
        raise InvalidLabelError(f"sector {args.sector} needs {modes} cutoffs, got {len(cuts)}")
    space = fock3.FockSpace(cuts)
    if args.sector == "compact":
        ops = fock3.realize_compact(space)
    elif args.sector == "noncompact":
        ops = fock3.realize_noncompact(space)
    else:
        ops = fock3.realize_two_mode(args.sector, space)
    report = fock3.verify_realization(ops)
    doc = report.to_dict()
    doc["tol"] = args.tol
    doc["passed"] = report.max_residual <= args.tol and report.interior_count > 0
    if report.interior_count == 0:
        print("warning: no interior states at these cutoffs", file=sys.stderr)
    if args.format == "json":
        text = json_dumps(doc) + "\n"
    else:
        buf = io.StringIO()
        write_csv(buf, ("relation", "residual"), sorted(report.residuals.items()))
        text = buf.getvalue()
    return text, 0 if doc["passed"] else 3


def _cmd_diffcheck(args):
    kind = args.kind
    size = args.size
    if kind in ("su11", "noncompactQ"):
        size = _check_dim(size or 8)
    if kind == "su2":
        if args.j is None:
            raise InvalidLabelError("--j is required for kind su2")
        real = diffreal.build_realization("su2", args.j)
        rep = reps.su2_rep(args.j)
    elif kind == "su11":
        if args.k is None:
            raise InvalidLabelError("--k is required for kind su11")
        real = diffreal.build_realization("su11", args.k, size)
        rep = reps.su11_rep(args.k, size)
    else:
        sector = "compact" if kind == "compactQ" else "noncompact"
        label = reps.AlgebraLabel(args.k, args.l, sector)
        if kind == "compactQ":
            real = diffreal.build_realization(kind, label)
            rep = reps.compact_rep(label)
        else:
            real = diffreal.build_realization(kind, label, size)
            rep = reps.noncompact_rep(label, size)
    tables = diffreal.matrix_elements(real)
    agree = {
        "q0": all(tables["q0"][n][n] == diffreal.signed_square(rep.q0_diag[n])
                  for n in range(rep.dim)),
        "qp": all(tables["qp"][n + 1][n] == rep.qp_sq[n] for n in range(rep.dim - 1)),
        "qm": all(tables["qm"][n][n + 1] == rep.qp_sq[n] for n in range(rep.dim - 1)),
    }
    off_diag_clean = all(
        tables[g][m][n] == 0
        for g, offset in (("q0", 0), ("qp", 1), ("qm", -1))
        for m in range(rep.dim) for n in range(rep.dim) if m != n + offset
    )
    doc = {
        "kind": kind,
        "size": rep.dim,
        "agree": agree,
        "off_diagonal_clean": off_diag_clean,
        "equal": all(agree.values()) and off_diag_clean,
    }
    if args.format == "json":
        text = json_dumps(doc) + "\n"
    else:
        buf = io.StringIO()
        rows = [(g, "agree", str(agree[g]).lower()) for g in ("q0", "qp", "qm")]
        rows.append(("all", "equal", str(doc["equal"]).lower()))
        write_csv(buf, ("generator", "check", "result"), rows)
        text = buf.getvalue()
    return text, 0 if doc["equal"] else 3


def _cmd_coherent(args):
    label_sector = "compact" if args.family == "perelomov-c" else "noncompact"
    label = reps.AlgebraLabel(args.k, args.l, label_sector)
    cap = _max_dim()
    if args.family == "bg":
        dim = _check_dim(args.dim) if args.dim else None
        state = coherent.bg_state(label, args.param, dim=dim, max_dim=cap)
        rep = reps.noncompact_rep(label, state.truncation)
        if args.param != 0:
            resid = float(np.linalg.norm(rep.qm @ state.coeffs - args.param * state.coeffs)
                          / abs(args.param))
        else:
            resid = float(np.linalg.norm(rep.qm @ state.coeffs))
        extra = {"eigen_residual": resid}
    elif args.family == "perelomov-nc":
        state = coherent.perelomov_noncompact(label, args.param, _check_dim(args.dim or 16))
        extra = {}
    else:
        state = coherent.perelomov_compact(label, args.param,
                                           form="gamma" if args.gamma_form else "alpha")
        extra = {}
    if args.format == "csv":
        buf = io.StringIO()
        coherent.coefficients_csv(state, buf)
        return buf.getvalue(), 0
    doc = {
        "family": state.family,
        "k": str(label.k),
        "l": str(label.l),
        "parameter": state.parameter,
        "dim": state.truncation,
        "norm_constant": state.norm_constant,
        "unit_norm_error": abs(state.norm - 1.0),
        "divergence_flag": state.divergence_flag,
    }
    doc.update(extra)
    doc["provenance"] = state.provenance
    return json_dumps(doc) + "\n", 0


def _cmd_measure(args):
    spec = measures.QuadratureSpec(r_max=args.r_max, abs_tol=args.abs_tol,
                                   rel_tol=args.rel_tol)
    if args.check == "kummer":
        if args.a is None or args.b is None or args.c is None:
            raise InvalidLabelError("--a, --b and --c are required for the kummer check")
        res = measures.kummer_integral_check(args.a, args.b, args.c, spec)
        doc = {
            "a": res.a, "b": res.b, "c": res.c,
            "numeric": res.numeric, "analytic": res.analytic,
            "abs_error": res.abs_error, "rel_error": res.rel_error,
            "quadrature": {"R": res.r_max, "evals": res.evals},
        }
        if args.format == "json":
            return json_dumps(doc) + "\n", 0 if res.rel_error <= args.tol else 3
        buf = io.StringIO()
        write_csv(buf, ("a", "b", "c", "numeric", "analytic", "rel_error"),
                  [(res.a, res.b, res.c, res.numeric, res.analytic, res.rel_error)])
        return buf.getvalue(), 0 if res.rel_error <= args.tol else 3
    if args.check in ("bg-moments", "perelomov-moments"):
        label = reps.AlgebraLabel(args.k, args.l, "noncompact")
        fn = (measures.bg_moment_target if args.check == "bg-moments"
              else measures.perelomov_moment_target)
        targets = [fn(label, n) for n in range(args.max_n + 1)]
        if args.format == "json":
            doc = [{"k": str(label.k), "l": str(label.l), "n": t.n, "value": t.value,
                    "ratio_to_first": str(t.ratio_to_first)} for t in targets]
            return json_dumps(doc) + "\n", 0
        buf = io.StringIO()
        write_csv(buf, ("n", "value", "ratio_to_first"),
                  [(t.n, t.value, t.ratio_to_first) for t in targets])
        return buf.getvalue(), 0
    # resolution check
    label = reps.AlgebraLabel(args.k, args.l, "compact")
    report = measures.verify_compact_resolution(label, spec)
    code = 0 if report.max_deviation <= args.tol else 3
    if args.format == "json":
        return json_dumps(report.to_dicts()) + "\n", code
    buf = io.StringIO()
    write_csv(buf, ("k", "l", "n", "moment", "deviation", "R", "evals"),
              [(label.k, label.l, c.n, c.moment, c.deviation, c.r_max, c.evals)
               for c in report.checks])
    return buf.getvalue(), code


def _cmd_spectrum(args):
    if args.to < args.from_ or args.from_ < 0:
        raise InvalidLabelError("need 0 <= --from <= --to")
    reports = [spectrum.level_report(n) for n in range(args.from_, args.to + 1)]
    bad = [r.N for r in reports if not r.consistent]
    if args.format == "csv":
        buf = io.StringIO()
        spectrum.spectrum_csv(reports, buf)
        return buf.getvalue(), 0 if not bad else 3
    doc = [
        {
            "N": r.N, "l": str(r.l),
            "degeneracy": {"reptheory": r.degeneracy_reptheory,
                           "formula": r.degeneracy_formula,
                           "bruteforce": r.degeneracy_bruteforce},
            "partitions": {"reptheory": r.partitions_reptheory,
                           "formula": r.partitions_formula,
                           "bruteforce": r.partitions_bruteforce},
            "parts": [{"k": str(p.k), "dim": p.dim, "multiplicity": p.multiplicity}
                      for p in r.parts],
            "consistent": r.consistent,
        }
        for r in reports
    ]
    return json_dumps(doc) + "\n", 0 if not bad else 3


def _cmd_deform(args):
    if args.fermion:
        check = defosc.fermion_check()
        doc = {
            "fermion": True,
            "relations_exact": check.relations_exact,
            "nilpotent": check.nilpotent,
            "matches_deformed_rep": check.matches_deformed_rep,
            "passed": check.passed,
            "rhs_poly_coeffs": [str(c) for c in check.rhs_poly.coeffs],
        }
        code = 0 if check.passed else 3
    else:
        label = reps.AlgebraLabel(args.k, args.l, "compact")
        _check_dim(label.dim)
        osc = defosc.deform(reps.compact_rep(label))
        residuals = defosc.commutator_residuals(osc)
        worst = max(residuals.values())
        doc = {
            "k": str(label.k), "l": str(label.l), "dim": label.dim,
            "scale_sq": str(osc.scale_sq), "scale": osc.scale,
            "f_poly_coeffs": [str(c) for c in osc.f_poly.coeffs],
            "residuals": residuals,
            "tol": args.tol,
            "passed": worst <= args.tol,
        }
        code = 0 if doc["passed"] else 3
    if args.format == "json":
        return json_dumps(doc) + "\n", code
    buf = io.StringIO()
    write_csv(buf, ("field", "value"),
              [(k, ";".join(v) if isinstance(v, list) else
                json_dumps(v) if isinstance(v, dict) else v)
               for k, v in doc.items()])
    return buf.getvalue(), code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadalg",
        description="Quadratic algebras from three bosonic modes: representations, "
                    "coherent states, measures, and oscillator degeneracies.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("rep", help="build a representation and print it")
    p.add_argument("--sector", choices=("compact", "noncompact", "su2", "su11"), required=True)
    p.add_argument("--k", type=_frac)
    p.add_argument("--l", type=_frac)
    p.add_argument("--j", type=_frac)
    p.add_argument("--dim", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_rep)

    p = sub.add_parser("casimir", help="structure/Casimir polynomials and scalar value")
    p.add_argument("--sector", choices=("compact", "noncompact", "su2", "su11"), required=True)
    p.add_argument("--k", type=_frac)
    p.add_argument("--l", type=_frac)
    p.add_argument("--j", type=_frac)
    p.add_argument("--dim", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_casimir)

    p = sub.add_parser("verify", help="verify a bosonic realization on a truncated Fock space")
    p.add_argument("--sector", choices=("compact", "noncompact", "su2", "su11"), required=True)
    p.add_argument("--cutoffs", type=_cutoffs, default=(8,),
                   help="per-mode cutoffs, e.g. '8' or '8,8,8'")
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("diffcheck", help="differential realization vs matrix representation")
    p.add_argument("--kind", choices=("su2", "su11", "compactQ", "noncompactQ"), required=True)
    p.add_argument("--k", type=_frac)
    p.add_argument("--l", type=_frac)
    p.add_argument("--j", type=_frac)
    p.add_argument("--size", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_diffcheck)

    p = sub.add_parser("coherent", help="coherent-state coefficients and normalization")
    p.add_argument("--family", choices=("bg", "perelomov-nc", "perelomov-c"), required=True)
    p.add_argument("--k", type=_frac, required=True)
    p.add_argument("--l", type=_frac, required=True)
    p.add_argument("--param", type=_complex, required=True,
                   help="state parameter, e.g. '0.5' or '1+1j'")
    p.add_argument("--dim", type=int)
    p.add_argument("--gamma-form", action="store_true",
                   help="use the inverse-parameter form of the compact family")
    add_common(p)
    p.set_defaults(func=_cmd_coherent)

    p = sub.add_parser("measure", help="moment targets and resolution-of-identity checks")
    p.add_argument("--check", choices=("resolution", "kummer", "bg-moments", "perelomov-moments"),
                   default="resolution")
    p.add_argument("--k", type=_frac)
    p.add_argument("--l", type=_frac)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--abs-tol", type=float, default=1e-9)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--r-max", type=float)
    p.add_argument("--tol", type=float, default=1e-6,
                   help="acceptance threshold on deviations (exit 3 beyond)")
    add_common(p)
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("spectrum", help="level degeneracies and partition counts")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("deform", help="deformed-oscillator form of a compact representation")
    p.add_argument("--k", type=_frac)
    p.add_argument("--l", type=_frac)
    p.add_argument("--fermion", action="store_true", help="run the canonical fermion check")
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p)
    p.set_defaults(func=_cmd_deform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.func(args)
    except (InvalidLabelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
