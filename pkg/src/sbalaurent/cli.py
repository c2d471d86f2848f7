"""Command-line interface.

Exit codes: 0 success, 1 malformed input or usage error, 2 a mathematical
failure witness (singular square shape, vanishing linear form), 3 precision
exhausted (the offending shape is printed).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .constructor import generate
from .criterion import defect_scan, kernel_basis, min_product_scan
from .errors import InductionBroken, PrecisionExhausted, SBAError, ZeroLinearForm
from .field_kernel import QQ
from .formats import (
    FormatError,
    canonical_json,
    exact_matrix_to_list,
    make_report,
    matrix_digest,
    poly_to_list,
    pretty_json,
    read_matrix,
    write_atomic,
    write_matrix,
)
from .hankel import ShapeProfile, assemble_block, exact_rank
from .series import FailureWitness, series_matrix, star_check

EXIT_OK, EXIT_INPUT, EXIT_WITNESS, EXIT_PRECISION = 0, 1, 2, 3


def certificate_payload(cert) -> dict:
    fmt = cert.field.format
    return {
        "matrixId": cert.matrix_id,
        "field": str(cert.field),
        "maxOrder": cert.max_order,
        "extensionOrder": cert.extension_order,
        "checkedShapes": [{"shape": str(c.shape), "det": fmt(c.det)} for c in cert.checked],
    }


def witness_payload(w: FailureWitness) -> dict:
    return {
        "matrixId": w.matrix_id,
        "maxOrder": w.max_order,
        "shape": str(w.shape),
        "matrix": exact_matrix_to_list(w.matrix),
    }


def defect_payload(rep) -> dict:
    return {
        "rows": rep.rows,
        "cols": rep.cols,
        "window": rep.window,
        "c2Observed": rep.c2_observed,
        "c1Derived": rep.c1_derived,
        "records": [
            {"shape": str(r.shape), "dim": r.dim, "dirichletBound": r.dirichlet_bound, "defect": r.defect}
            for r in rep.records
        ],
    }


def _vector(xi) -> list:
    return [poly_to_list(p) for p in xi]


def minproduct_payload(rep, A) -> dict:
    return {
        "rows": A.rows,
        "cols": A.cols,
        "precision": A.precision,
        "degreeBound": rep.degree_bound,
        "searched": rep.searched,
        "minLog": rep.min_log,
        "c1Observed": rep.c1_observed,
        "witness": None if rep.witness is None else _vector(rep.witness),
        "zeroFormWitnesses": [
            {"xi": _vector(xi), "row": row, "vanishesTo": prec} for xi, row, prec in rep.zero_form_witnesses
        ],
    }


def _params_digest(params: dict) -> str:
    return "sha256:" + hashlib.sha256(canonical_json(params).encode()).hexdigest()


class _Ctx:
    def __init__(self, args):
        self.output_dir = Path(args.output_dir) if args.output_dir else None

    def path(self, p):
        p = Path(p)
        if self.output_dir is not None and not p.is_absolute():
            return self.output_dir / p
        return p

    def emit(self, report: dict, out):
        text = pretty_json(report)
        if out:
            write_atomic(self.path(out), text)
        else:
            sys.stdout.write(text)


def cmd_gen(args, ctx):
    ext = generate(args.rows, args.cols, args.max_order, QQ)
    write_matrix(ctx.path(args.out), ext.matrix)
    params = {"rows": args.rows, "cols": args.cols, "maxOrder": args.max_order, "field": "QQ"}
    payload = dict(params)
    payload["matrixId"] = matrix_digest(ext.matrix)
    payload["certificate"] = certificate_payload(ext.certificate)
    payload["rejections"] = [list(r) for r in ext.rejections]
    report_path = args.report or str(args.out) + ".report.json"
    ctx.emit(make_report("generate", payload, _params_digest(params)), report_path)
    print(f"wrote {args.rows}x{args.cols} matrix certified to order {args.max_order}: {ctx.path(args.out)}")
    return EXIT_OK


def cmd_star_check(args, ctx):
    A = read_matrix(args.input)
    res = star_check(A, args.max_order)
    payload = {"precision": A.precision, "maxOrder": args.max_order, "certified": res.ok}
    if res.ok:
        payload["certificate"] = certificate_payload(res)
    else:
        payload["witness"] = witness_payload(res)
    if args.report:
        ctx.emit(make_report("star", payload, matrix_digest(A)), args.report)
    if res.ok:
        print(f"certified: {len(res.checked)} square shapes nonsingular up to order {args.max_order}")
        return EXIT_OK
    print(f"singular square shape {res.shape}")
    print(json.dumps(exact_matrix_to_list(res.matrix)))
    return EXIT_WITNESS


def cmd_defect_scan(args, ctx):
    A = read_matrix(args.input)
    rep = defect_scan(A, args.max_sum_u, args.max_sum_v, clip=args.clip)
    ctx.emit(make_report("defect", defect_payload(rep), matrix_digest(A)), args.out)
    if args.out:
        print(f"{len(rep.records)} shapes, c2Observed={rep.c2_observed}, c1Derived={rep.c1_derived}")
    return EXIT_OK


def cmd_rank(args, ctx):
    A = read_matrix(args.input)
    block = assemble_block(A, ShapeProfile.parse(args.shape))
    print(f"rank {exact_rank(block.matrix)} of a {block.rows}x{block.cols} block")
    return EXIT_OK


def cmd_kernel(args, ctx):
    A = read_matrix(args.input)
    basis = kernel_basis(A, ShapeProfile.parse(args.shape))
    print(f"dim {len(basis)}")
    for xi in basis:
        print("(" + ", ".join(str(p) for p in xi) + ")")
    return EXIT_OK


def cmd_min_product(args, ctx):
    A = read_matrix(args.input)
    rep = min_product_scan(A, args.degree_bound)
    ctx.emit(make_report("minproduct", minproduct_payload(rep, A), matrix_digest(A)), args.out)
    if args.out:
        print(f"searched {rep.searched} vectors, minLog={rep.min_log}")
    if rep.zero_form_witnesses:
        xi, row, prec = rep.zero_form_witnesses[0]
        print(
            f"{len(rep.zero_form_witnesses)} vectors with a vanishing form, first: "
            f"({', '.join(str(p) for p in xi)}) row {row} zero to {prec} coefficients",
            file=sys.stderr,
        )
        return EXIT_WITNESS
    return EXIT_OK


def cmd_transpose(args, ctx):
    write_matrix(ctx.path(args.out), read_matrix(args.input).transpose())
    return EXIT_OK


def cmd_series(args, ctx):
    params = [p for p in args.param.split(",") if p.strip()]
    if not params:
        raise ValueError("--param needs at least one value")
    layout = "column" if args.rows else "row"
    A = series_matrix(args.family, [QQ.parse(p) for p in params], args.precision, layout)
    write_matrix(ctx.path(args.out), A)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sbalaurent", description=__doc__.splitlines()[0])
    p.add_argument("--output-dir", help="directory that relative output paths are resolved against")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="construct a certified matrix over Q")
    s.add_argument("--rows", type=int, required=True)
    s.add_argument("--cols", type=int, required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--report", help="report path (default: OUT.report.json)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("star-check", help="check every square block up to an order")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--report")
    s.set_defaults(func=cmd_star_check)

    s = sub.add_parser("defect-scan", help="dimension defects over a window of shapes")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--max-sum-u", type=int, required=True)
    s.add_argument("--max-sum-v", type=int, required=True)
    s.add_argument("--clip", action="store_true", help="skip shapes beyond the precision")
    s.add_argument("--out")
    s.set_defaults(func=cmd_defect_scan)

    for name, func, text in (
        ("rank", cmd_rank, "rank of the block Hankel matrix of a shape"),
        ("kernel", cmd_kernel, "basis of the solution space of a shape"),
    ):
        s = sub.add_parser(name, help=text)
        s.add_argument("--in", dest="input", required=True)
        s.add_argument("--shape", required=True, help='"U1,..,UN;V1,..,VM"')
        s.set_defaults(func=func)

    s = sub.add_parser("min-product", help="exhaustive product minimum (finite fields)")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--degree-bound", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_min_product)

    s = sub.add_parser("transpose", help="write the transposed matrix")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_transpose)

    s = sub.add_parser("series", help="matrix of exponential or binomial series")
    s.add_argument("--family", choices=("exp", "binomial"), required=True)
    s.add_argument("--param", required=True, help="comma-separated exact values, e.g. 1,2 or 1/2,1/3")
    s.add_argument("--precision", type=int, required=True)
    layout = s.add_mutually_exclusive_group()
    layout.add_argument("--rows", action="store_true", help="one series per row (N x 1)")
    layout.add_argument("--cols", action="store_true", help="one series per column (1 x N, default)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_series)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    ctx = _Ctx(args)
    try:
        return args.func(args, ctx)
    except PrecisionExhausted as exc:
        where = f" at shape {exc.shape}" if exc.shape is not None else ""
        print(f"precision exhausted{where}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ZeroLinearForm, InductionBroken) as exc:
        print(f"failure witness: {exc}", file=sys.stderr)
        return EXIT_WITNESS
    except (FormatError, SBAError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
