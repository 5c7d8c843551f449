"""Command line front end.

    octeig eigen FILE [--family r+|r-] [--tol X] [--pretty] [--skip-oracle]
    octeig verify FILE [--tol X] [--pretty] [--corrupt]
    octeig oracle FILE [--pretty]
    octeig random --seed N --class C [--scale S] [--dim 2|3]

Matrix files are UTF-8 JSON: {"dim": 3, "diag": [p, m, n], "a": [8 reals],
"b": [...], "c": [...]} (2x2 files carry only "a").  Octonions are listed on the
basis (1, i, j, k, l, il, jl, kl).  Reports are JSON with 12 significant
digits, or a plain table with --pretty.

Exit codes: 0 pass, 2 parse error, 3 solver defect, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import numbers
import sys

import numpy as np

from . import embed_oracle as oracle
from .eigensolve import (
    SolverDefect,
    decompose2,
    family_residuals,
    orthogonality_residual,
    r_roots,
    spectrum3,
    three_psi_residual,
    verify_right_eigen,
)
from .generate import CLASSES, make_rng, random_herm2, random_herm3
from .hermitian import (
    Herm2,
    Herm3,
    OctMatrix,
    as_matrix,
    char_residual,
    det3,
    det3_freudenthal,
    mat_vec,
    outer,
    scale_of,
)
from .octonion import J, Octonion, phi

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEFECT = 3
EXIT_VERIFY = 4

DEFAULT_TOL = 1e-8


class MatrixFileError(ValueError):
    pass


def _real(x, what):
    if isinstance(x, bool) or not isinstance(x, numbers.Real) or not math.isfinite(x):
        raise MatrixFileError(f"{what} must be a finite real number, got {x!r}")
    return float(x)


def _octonion(x, what):
    if not isinstance(x, list) or len(x) != 8:
        raise MatrixFileError(f"{what} must be a list of 8 reals")
    return Octonion([_real(v, f"{what}[{k}]") for k, v in enumerate(x)])


def parse_matrix(data):
    """Herm2/Herm3 from the decoded JSON object of a matrix file."""
    if not isinstance(data, dict):
        raise MatrixFileError("matrix file must hold a JSON object")
    dim = data.get("dim")
    if dim not in (2, 3) or isinstance(dim, bool):
        raise MatrixFileError(f"dim must be 2 or 3, got {dim!r}")
    diag = data.get("diag")
    if not isinstance(diag, list) or len(diag) != dim:
        raise MatrixFileError(f"diag must list {dim} real numbers")
    diag = [_real(v, f"diag[{k}]") for k, v in enumerate(diag)]
    names = ("a",) if dim == 2 else ("a", "b", "c")
    offs = []
    for name in names:
        if name not in data:
            raise MatrixFileError(f"missing off-diagonal entry {name!r}")
        offs.append(_octonion(data[name], name))
    return Herm2(*diag, *offs) if dim == 2 else Herm3(*diag, *offs)


def load_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MatrixFileError(str(exc)) from exc
    return parse_matrix(data)


def matrix_to_dict(A):
    if isinstance(A, Herm2):
        return {"dim": 2, "diag": [A.p, A.m], "a": A.a.tolist()}
    return {"dim": 3, "diag": [A.p, A.m, A.n],
            "a": A.a.tolist(), "b": A.b.tolist(), "c": A.c.tolist()}


def _num(x):
    return float(f"{float(x):.12g}")


def _clean(obj):
    """Round every float to 12 significant digits for output."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, numbers.Integral):
        return int(obj)
    if isinstance(obj, numbers.Real):
        return _num(obj)
    return obj


def _tolerances(A, tol):
    s = 1.0 + scale_of(A)
    return {"eigen": 0.1 * tol * s, "decomposition": tol * s}


def _check_family(res, tols):
    return (res["eigen"] <= tols["eigen"]
            and all(res[k] <= tols["decomposition"]
                    for k in ("normalization", "orthogonality", "completeness", "reconstruction")))


def _oracle_table(A):
    return [{"value": c.value, "count": c.count} for c in oracle.spectrum_with_multiplicity(A)]


def _analytic_values(A):
    """Analytic eigenvalues expanded to the multiplicity of the real embedding."""
    if isinstance(A, Herm2):
        return sorted(l for pair in decompose2(A) for l in [pair.lam] * 8)
    return sorted(l for l in spectrum3(A).eigenvalues() for _ in range(4))


def eigen_report(A, family=None, tol=DEFAULT_TOL, with_oracle=True):
    tols = _tolerances(A, tol)
    report = {"input": matrix_to_dict(A), "dim": A.dim, "tolerance": tols}
    ok = True
    if isinstance(A, Herm2):
        pairs = decompose2(A)
        vecs = [p.v for p in pairs]
        recon = sum((p.lam * outer(p.v) for p in pairs), OctMatrix.zeros(2)) - as_matrix(A)
        comp = sum((outer(v) for v in vecs), OctMatrix.zeros(2)) - OctMatrix.identity(2)
        res = {
            "eigen": max(verify_right_eigen(A, p.v, p.lam) for p in pairs),
            "normalization": max(abs(v.norm_sq() - 1.0) for v in vecs),
            "orthogonality": max(orthogonality_residual(vecs[0], vecs[1]),
                                 orthogonality_residual(vecs[1], vecs[0])),
            "completeness": comp.max_abs(),
            "reconstruction": recon.max_abs(),
        }
        ok = _check_family(res, tols)
        report["eigenvalues"] = [p.lam for p in pairs]
        report["eigenvectors"] = [v.tolist() for v in vecs]
        report["residuals"] = res
    else:
        spec = spectrum3(A)
        report["r"] = list(r_roots(A))
        report["doubled"] = spec.doubled
        fams = spec.families if family is None else (spec.family(family),)
        out = []
        for fam in fams:
            res = family_residuals(A, fam)
            fam_ok = _check_family(res, tols)
            ok = ok and fam_ok
            out.append({"label": fam.label, "r": fam.r, "eigenvalues": list(fam.lambdas),
                        "eigenvectors": [v.tolist() for v in fam.eigvecs],
                        "residuals": res, "pass": fam_ok})
        report["families"] = out
        if len(spec.families) == 2 and family is None:
            # measured only; orthogonality is not expected across families
            f1, f2 = spec.families
            report["cross_family_orthogonality"] = max(
                orthogonality_residual(v, w) for v in f1.eigvecs for w in f2.eigvecs)
            report["cross_family_real_inner_product"] = max(
                abs(v.dagger_dot(w).real) for v in f1.eigvecs for w in f2.eigvecs)
    if with_oracle:
        report["oracle"] = {"clusters": _oracle_table(A)}
    report["pass"] = bool(ok)
    return report


def _corrupt(vecs):
    v1, v2 = vecs[0], vecs[1]
    bad = (v2 + v1 * (0.5 * J + 0.25)).normalized()
    return (v1, bad) + tuple(vecs[2:])


def verify_report(A, tol=DEFAULT_TOL, corrupt=False):
    s = 1.0 + scale_of(A)
    tols = _tolerances(A, tol)
    checks = []

    def add(name, value, limit):
        checks.append({"check": name, "residual": float(value), "tolerance": float(limit),
                       "pass": bool(value <= limit)})

    if isinstance(A, Herm3):
        add("characteristic_equation", char_residual(A), 1e-9 * (1.0 + scale_of(A) ** 3))
        add("determinant_forms", abs(det3(A) - det3_freudenthal(A)), 1e-10 * s ** 3)
        add("conjugate_determinant",
            abs(det3(A.conj()) - (det3(A) - 4.0 * phi(A.a, A.b, A.c))), 1e-10 * s ** 3)
        rA, rB = r_roots(A), r_roots(A.conj())
        add("conjugate_r_flip", max(abs(rA[0] + rB[1]), abs(rA[1] + rB[0])), 1e-10 * s ** 3)
        specA, specB = spectrum3(A), spectrum3(A.conj())
        add("conjugate_spectrum",
            max(abs(x - y) for x, y in zip(specA.eigenvalues(), specB.eigenvalues())), tols["eigen"])
        for fam in specA.families:
            vecs = _corrupt(fam.eigvecs) if corrupt else fam.eigvecs
            res = family_residuals(A, type(fam)(fam.r, fam.lambdas, vecs, fam.label))
            tag = fam.label
            add(f"{tag}.eigen_equation", res["eigen"], tols["eigen"])
            add(f"{tag}.orthogonality", res["orthogonality"], tols["decomposition"])
            add(f"{tag}.normalization", res["normalization"], tols["decomposition"])
            add(f"{tag}.completeness", res["completeness"], tols["decomposition"])
            add(f"{tag}.reconstruction", res["reconstruction"], tols["decomposition"])
            add(f"{tag}.three_psi", max(three_psi_residual(v) for v in vecs), 1e-12 * s)
    else:
        pairs = decompose2(A)
        vecs = [p.v for p in pairs]
        if corrupt:
            vecs = list(_corrupt(tuple(vecs)))
        I2 = OctMatrix.identity(2)
        P = [outer(v) for v in vecs]
        add("eigen_equation", max(verify_right_eigen(A, v, p.lam) for v, p in zip(vecs, pairs)),
            tols["eigen"])
        add("orthogonality", max(orthogonality_residual(vecs[0], vecs[1]),
                                 orthogonality_residual(vecs[1], vecs[0])), tols["decomposition"])
        add("idempotent", max(((Pk @ Pk) - Pk * v.norm_sq()).max_abs() for Pk, v in zip(P, vecs)),
            tols["decomposition"])
        add("idempotent_orthogonal", (P[0] @ P[1]).max_abs(), tols["decomposition"])
        add("two_identity", (P[0] * (1.0 / vecs[0].norm_sq()) + P[1] * (1.0 / vecs[1].norm_sq())
                             - I2).max_abs(), tols["decomposition"])
        add("associativity", max((outer(mat_vec(A, v), v) - as_matrix(A) @ Pk).max_abs()
                                 for Pk, v in zip(P, vecs)), tols["decomposition"])
        add("reconstruction", (sum((p.lam * Pk for p, Pk in zip(pairs, P)), OctMatrix.zeros(2))
                               - as_matrix(A)).max_abs(), tols["decomposition"])
    dev = _oracle_deviation(A)
    add("oracle_agreement", dev, tol * s)
    return {"input": matrix_to_dict(A), "checks": checks,
            "pass": all(c["pass"] for c in checks)}


def _oracle_deviation(A):
    analytic = np.array(_analytic_values(A))
    real = oracle.embedded_spectrum(A).eigenvalues
    return float(np.max(np.abs(analytic - real)))


def oracle_report(A, tol=DEFAULT_TOL):
    s = 1.0 + scale_of(A)
    analytic = []
    if isinstance(A, Herm2):
        for p in decompose2(A):
            analytic.append({"value": p.lam, "multiplicity": 8, "family": None})
    else:
        spec = spectrum3(A)
        mult = 8 if spec.doubled else 4
        for fam in spec.families:
            for lam in fam.lambdas:
                analytic.append({"value": lam, "multiplicity": mult, "family": fam.label})
        analytic.sort(key=lambda e: e["value"])
    dev = _oracle_deviation(A)
    return {"input": matrix_to_dict(A), "analytic": analytic,
            "oracle": _oracle_table(A), "max_deviation": dev,
            "tolerance": tol * s, "pass": bool(dev <= tol * s)}


def random_matrix_dict(seed, kind, scale=1.0, dim=3):
    rng = make_rng(seed)
    A = random_herm2(rng, kind, scale) if dim == 2 else random_herm3(rng, kind, scale)
    return matrix_to_dict(A)


def _print_json(obj, out):
    out.write(json.dumps(_clean(obj), indent=2) + "\n")


def _fmt(x):
    return f"{x:.6g}" if isinstance(x, float) else str(x)


def _pretty_eigen(rep, out):
    out.write(f"dimension {rep['dim']}\n")
    if rep["dim"] == 2:
        out.write("eigenvalues: " + ", ".join(_fmt(l) for l in rep["eigenvalues"]) + "\n")
        for k, v in rep["residuals"].items():
            out.write(f"  {k:<16} {v:.3e}\n")
    else:
        out.write("r roots: " + ", ".join(_fmt(r) for r in rep["r"]))
        out.write("  (doubled)\n" if rep["doubled"] else "\n")
        for fam in rep["families"]:
            out.write(f"family {fam['label']}  r = {_fmt(fam['r'])}\n")
            out.write("  eigenvalues: " + ", ".join(_fmt(l) for l in fam["eigenvalues"]) + "\n")
            for k, v in fam["residuals"].items():
                out.write(f"  {k:<16} {v:.3e}\n")
    if "oracle" in rep:
        out.write("oracle clusters:\n")
        for c in rep["oracle"]["clusters"]:
            out.write(f"  {c['value']:>14.9f}  x{c['count']}\n")
    out.write("PASS\n" if rep["pass"] else "FAIL\n")


def _pretty_verify(rep, out):
    width = max(len(c["check"]) for c in rep["checks"])
    for c in rep["checks"]:
        mark = "ok" if c["pass"] else "FAIL"
        out.write(f"{c['check']:<{width}}  {c['residual']:.3e}  <= {c['tolerance']:.1e}  {mark}\n")
    out.write("PASS\n" if rep["pass"] else "FAIL\n")


def _pretty_oracle(rep, out):
    out.write(f"{'analytic':>16} {'mult':>5} {'family':>7}\n")
    for e in rep["analytic"]:
        out.write(f"{e['value']:>16.10f} {e['multiplicity']:>5} {str(e['family']):>7}\n")
    out.write(f"{'oracle':>16} {'count':>5}\n")
    for c in rep["oracle"]:
        out.write(f"{c['value']:>16.10f} {c['count']:>5}\n")
    out.write(f"max deviation {rep['max_deviation']:.3e}\n")
    out.write("PASS\n" if rep["pass"] else "FAIL\n")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="octeig",
        description="Real right-eigenvalues of octonionic Hermitian matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eigen", help="eigenvalues, eigenvectors and decomposition residuals")
    p.add_argument("file")
    p.add_argument("--family", choices=("r+", "r-"))
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--skip-oracle", action="store_true",
                   help="leave out the real-embedding cluster table")

    p = sub.add_parser("verify", help="run every identity check and report a verdict table")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--corrupt", action="store_true",
                   help="perturb one eigenvector before checking (negative control)")

    p = sub.add_parser("oracle", help="analytic spectrum next to the real-embedding spectrum")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("random", help="write a seeded random matrix file to stdout")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--class", dest="kind", choices=CLASSES, required=True)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--dim", type=int, choices=(2, 3), default=3)
    return parser


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE

    if args.command == "random":
        # full precision so the file round-trips exactly
        out.write(json.dumps(random_matrix_dict(args.seed, args.kind, args.scale, args.dim)) + "\n")
        return EXIT_OK

    try:
        A = load_matrix(args.file)
    except MatrixFileError as exc:
        err.write(f"octeig: cannot read {args.file}: {exc}\n")
        return EXIT_PARSE

    try:
        if args.command == "eigen":
            rep = eigen_report(A, args.family, args.tol, with_oracle=not args.skip_oracle)
            (_pretty_eigen if args.pretty else _print_json)(rep, out)
            return EXIT_OK if rep["pass"] else EXIT_DEFECT
        if args.command == "verify":
            rep = verify_report(A, args.tol, corrupt=args.corrupt)
            (_pretty_verify if args.pretty else _print_json)(rep, out)
            return EXIT_OK if rep["pass"] else EXIT_VERIFY
        rep = oracle_report(A, args.tol)
        (_pretty_oracle if args.pretty else _print_json)(rep, out)
        return EXIT_OK if rep["pass"] else EXIT_VERIFY
    except SolverDefect as exc:
        err.write(f"octeig: solver defect: {exc}\n")
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
